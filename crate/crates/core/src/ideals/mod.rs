//! Elementary ideals of Alexander matrices and the rank bounds they give.

mod groebner;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foxcalc::{LaurentMatrix, LaurentPoly};
use groebner::StrongBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdealRing {
    /// `ℤ[t^±1]`
    Univariate,
    /// `ℤ[t^±1, v^±1]`
    Bivariate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityMode {
    Exact,
    UpToUnits,
    UpToUnitsAndTInversion,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideals live in different rings ({0:?} vs {1:?})")]
    RingMismatch(IdealRing, IdealRing),
}

/// Generators of an ideal, each unit-normalized, sorted and deduplicated.
/// The zero ideal has no generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealGens {
    pub ring: IdealRing,
    pub k: usize,
    generators: Vec<LaurentPoly>,
}

impl IdealGens {
    pub fn new(ring: IdealRing, k: usize, gens: impl IntoIterator<Item = LaurentPoly>) -> Self {
        let set: BTreeSet<LaurentPoly> =
            gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.normalized()).collect();
        // a unit generator makes the others redundant
        let generators = if set.contains(&LaurentPoly::one()) { vec![LaurentPoly::one()] } else { set.into_iter().collect() };
        IdealGens { ring, k, generators }
    }

    pub fn unit(ring: IdealRing, k: usize) -> Self {
        IdealGens::new(ring, k, [LaurentPoly::one()])
    }

    pub fn zero(ring: IdealRing, k: usize) -> Self {
        IdealGens { ring, k, generators: Vec::new() }
    }

    pub fn generators(&self) -> &[LaurentPoly] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn principal_generator(&self) -> Option<&LaurentPoly> {
        match self.generators.as_slice() {
            [g] => Some(g),
            _ => None,
        }
    }

    pub fn invert_t(&self) -> IdealGens {
        IdealGens::new(self.ring, self.k, self.generators.iter().map(|g| g.invert_t()))
    }

    fn basis(&self) -> StrongBasis {
        StrongBasis::of_laurent(&self.generators, self.ring == IdealRing::Bivariate)
    }

    /// `E1 = (t^2-t+1)`, with `Ē` for the bivariate ring.
    pub fn render(&self) -> String {
        let name = if self.ring == IdealRing::Bivariate { "Ē" } else { "E" };
        format!("{name}{} = {self}", self.k)
    }
}

impl fmt::Display for IdealGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "(0)");
        }
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

fn ring_of(mat: &LaurentMatrix) -> IdealRing {
    if mat.has_auxiliary() || !mat.is_univariate() {
        IdealRing::Bivariate
    } else {
        IdealRing::Univariate
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// All `s × s` minors with rows `rows`, by expansion along the last row
/// with determinants memoized on column subsets.
fn minors_for_rows(mat: &LaurentMatrix, rows: &[usize]) -> Vec<LaurentPoly> {
    let ncols = mat.ncols();
    let mut level: HashMap<u32, LaurentPoly> = HashMap::new();
    for c in 0..ncols {
        let e = mat.entry(rows[0], c);
        if !e.is_zero() {
            level.insert(1 << c, e.clone());
        }
    }
    for (depth, &r) in rows.iter().enumerate().skip(1) {
        let mut next: HashMap<u32, LaurentPoly> = HashMap::new();
        for (&mask, det) in &level {
            for c in 0..ncols {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let e = mat.entry(r, c);
                if e.is_zero() {
                    continue;
                }
                // column c sits at index `pos` of the enlarged subset
                let pos = (mask & ((1u32 << c) - 1)).count_ones() as usize;
                let term = e * det;
                let term = if (depth + pos) % 2 == 1 { -term } else { term };
                let slot = next.entry(mask | (1 << c)).or_default();
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        level = next;
    }
    level.into_values().collect()
}

/// Every nonzero `s × s` minor of `mat`.
pub fn minors(mat: &LaurentMatrix, s: usize) -> Vec<LaurentPoly> {
    if s == 0 {
        return vec![LaurentPoly::one()];
    }
    if s > mat.nrows() || s > mat.ncols() {
        return Vec::new();
    }
    combinations(mat.nrows(), s).par_iter().flat_map_iter(|rows| minors_for_rows(mat, rows)).collect()
}

/// Ideal generated by the `(m - k)`-minors, the auxiliary column included.
pub fn elementary_ideal(mat: &LaurentMatrix, k: usize, m: usize) -> IdealGens {
    let ring = ring_of(mat);
    if k >= m {
        return IdealGens::unit(ring, k);
    }
    IdealGens::new(ring, k, minors(mat, m - k))
}

pub fn is_member(p: &LaurentPoly, ideal: &IdealGens) -> bool {
    if p.is_zero() {
        return true;
    }
    if ideal.is_zero() {
        return false;
    }
    if ideal.generators.iter().any(|g| g.is_unit()) {
        return true;
    }
    if let Some(g) = ideal.principal_generator() {
        if g.normalized() == p.normalized() {
            return true;
        }
    }
    if ideal.ring == IdealRing::Univariate && !p.is_univariate() {
        let widened = IdealGens { ring: IdealRing::Bivariate, ..ideal.clone() };
        return widened.basis().contains(p);
    }
    ideal.basis().contains(p)
}

pub fn is_trivial(ideal: &IdealGens) -> bool {
    if ideal.is_zero() {
        return false;
    }
    ideal.generators.iter().any(|g| g.is_unit()) || ideal.basis().contains_one()
}

fn contained_in(a: &IdealGens, b: &IdealGens) -> bool {
    if a.is_zero() {
        return true;
    }
    if b.is_zero() {
        return false;
    }
    if b.generators.iter().any(|g| g.is_unit()) {
        return true;
    }
    let basis = b.basis();
    a.generators.iter().all(|g| basis.contains(g))
}

fn equal_up_to_units(a: &IdealGens, b: &IdealGens) -> bool {
    if a.generators == b.generators {
        return true;
    }
    match (a.principal_generator(), b.principal_generator()) {
        // principal ideals of a domain agree iff the generators are associates
        (Some(x), Some(y)) => x.normalized() == y.normalized(),
        _ => contained_in(a, b) && contained_in(b, a),
    }
}

pub fn ideal_equal(a: &IdealGens, b: &IdealGens, mode: EqualityMode) -> Result<bool, IdealError> {
    if a.ring != b.ring {
        return Err(IdealError::RingMismatch(a.ring, b.ring));
    }
    Ok(match mode {
        EqualityMode::Exact => a.generators == b.generators,
        EqualityMode::UpToUnits => equal_up_to_units(a, b),
        EqualityMode::UpToUnitsAndTInversion => equal_up_to_units(a, b) || equal_up_to_units(a, &b.invert_t()),
    })
}

/// `k + 1` for the largest `k` with a proper elementary ideal, or 1.
pub fn rank_lower_bound(mat: &LaurentMatrix, m: usize) -> usize {
    rank_lower_bound_above(mat, m, 0)
}

/// Like [`rank_lower_bound`], but indices whose bound could not exceed
/// `floor` are skipped; returns at least `floor`.
pub fn rank_lower_bound_above(mat: &LaurentMatrix, m: usize, floor: usize) -> usize {
    for k in (0..m).rev() {
        if k < floor {
            break;
        }
        if !is_trivial(&elementary_ideal(mat, k, m)) {
            return k + 1;
        }
    }
    floor.max(1)
}

/// `E_0, …, E_m`.
pub fn elementary_ideals(mat: &LaurentMatrix, m: usize) -> Vec<IdealGens> {
    (0..=m).map(|k| elementary_ideal(mat, k, m)).collect()
}
