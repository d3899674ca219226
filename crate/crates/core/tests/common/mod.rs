#![allow(dead_code)]

use gaussbridge::present::GroupPresentation;
use gaussbridge::GaussDiagram;

pub fn gd(s: &str) -> GaussDiagram {
    s.parse().unwrap()
}

/// Two-chord blocks `O b- U a+ U b- O a+`, concatenated `n` times. Each
/// block ends in a tail and starts with one, so there are `n` overbridges.
pub fn kn_diagram(n: usize) -> GaussDiagram {
    let code: String = (0..n)
        .map(|i| {
            let (a, b) = (2 * i + 1, 2 * i + 2);
            format!("O{b}-U{a}+U{b}-O{a}+")
        })
        .collect();
    gd(&code)
}

/// Circulant presentation of the group of [`kn_diagram`].
pub fn kn_presentation(n: usize) -> GroupPresentation {
    let gens: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let rels: Vec<String> = (1..=n)
        .map(|i| {
            let j = i % n + 1;
            format!("a{i} a{j}^-1 a{i} a{j} a{i}^-1 a{j}^-1")
        })
        .collect();
    GroupPresentation::parse(&format!("{} | {}", gens.join(", "), rels.join(", "))).unwrap()
}

/// Two-bridge diagram with nonabelian upper group and cyclic lower group.
pub const TWO_BRIDGE: &str = "O3+O2-U1+U2-O1+O4-U3+U4-";

/// Two-bridge diagram whose sign-flipped version is trivial.
pub const FLIP_PAIR: &str = "O2-O3-U1-O4+U2-U3-O1-U4+";

/// Trefoil with two linked pairs of odd chords spliced in.
pub const PARITY_EXAMPLE: &str = "O1+O4+O5-U4+U5-U2+O3+U1+O6-O7+U6-U7+O2+U3+";
pub const TREFOIL: &str = "O1+U2+O3+U1+O2+U3+";

/// Diagrams from a fixed seed range, `n` cycling through `1..=max_n`.
pub fn random_pool(count: u64, max_n: usize) -> Vec<GaussDiagram> {
    (0..count).map(|s| GaussDiagram::random(1 + s as usize % max_n, s)).collect()
}
