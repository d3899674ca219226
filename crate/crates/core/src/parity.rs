//! Gaussian parity and the projection that erases odd chords.

use std::collections::{BTreeMap, BTreeSet};

use crate::gauss::{ChordId, GaussDiagram};
use crate::rmoves::{apply_move, MoveError, MoveInstance};

/// Chord label to parity bit.
pub type ParityAssignment = BTreeMap<ChordId, u8>;

/// A rule assigning a parity to every chord of any diagram.
pub trait Parity {
    fn assign(&self, d: &GaussDiagram) -> ParityAssignment;
}

/// Number of linked chords, mod 2.
#[derive(Clone, Copy, Debug, Default)]
pub struct GaussianParity;

impl Parity for GaussianParity {
    fn assign(&self, d: &GaussDiagram) -> ParityAssignment {
        gaussian_parity(d)
    }
}

/// Parity of each chord: endpoints strictly between its tail and head, mod 2.
pub fn gaussian_parity(d: &GaussDiagram) -> ParityAssignment {
    d.chords()
        .into_iter()
        .map(|c| {
            let (t, h) = d.positions(c).expect("listed chord");
            let between = if t < h { h - t - 1 } else { t - h - 1 };
            (c, (between % 2) as u8)
        })
        .collect()
}

pub fn odd_chords(f: &ParityAssignment) -> BTreeSet<ChordId> {
    f.iter().filter(|(_, &p)| p == 1).map(|(&c, _)| c).collect()
}

/// Deletes the odd chords, once.
pub fn project(d: &GaussDiagram) -> GaussDiagram {
    let odd = odd_chords(&gaussian_parity(d));
    d.delete_chords(&odd).expect("odd chords belong to d")
}

/// Projects until every chord is even.
pub fn project_iterated(d: &GaussDiagram) -> GaussDiagram {
    let mut cur = d.clone();
    loop {
        let next = project(&cur);
        if next.n() == cur.n() {
            return cur;
        }
        cur = next;
    }
}

/// Axiom (i): the chords taking part in an R1, R2 or R3 move have even
/// parity sum. Axiom (ii): R3 keeps each of its chords' parity. Parities
/// of inserted chords are read in the diagram after the move; the
/// forbidden overpass is not constrained.
pub fn check_axioms(d: &GaussDiagram, m: &MoveInstance, parity: &impl Parity) -> Result<bool, MoveError> {
    let after = apply_move(d, m)?;
    let before_f = parity.assign(d);
    let after_f = parity.assign(&after);
    let sum = |f: &ParityAssignment, chords: &[ChordId]| chords.iter().map(|c| f[c] as u32).sum::<u32>() % 2;
    let next = d.max_label() + 1;
    Ok(match m {
        MoveInstance::R1Insert { .. } => after_f[&next] == 0,
        MoveInstance::R1Delete { chord } => before_f[chord] == 0,
        MoveInstance::R2Insert { .. } => sum(&after_f, &[next, next + 1]) == 0,
        MoveInstance::R2Delete { first, second } => sum(&before_f, &[*first, *second]) == 0,
        MoveInstance::R3 { chords, .. } => {
            sum(&before_f, chords) == 0 && chords.iter().all(|c| before_f[c] == after_f[c])
        }
        MoveInstance::ForbiddenTailSwap { .. } => true,
    })
}
