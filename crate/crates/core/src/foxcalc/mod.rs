//! Laurent polynomials, Fox derivatives and Alexander matrices.

mod laurent;

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

pub use laurent::{Exponent, LaurentPoly, PolyParseError};

use crate::present::{FreeWord, GroupPresentation, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoxError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
}

/// Abelianization: meridional generators go to `t`, the auxiliary one to `v`.
fn abelian(s: Symbol) -> Exponent {
    match s {
        Symbol::Meridional(_) => (1, 0),
        Symbol::Aux => (0, 1),
    }
}

/// `∂w/∂g` with the abelianization applied.
pub fn fox_derivative_symbol(w: &FreeWord, g: Symbol) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let mut prefix: Exponent = (0, 0);
    for l in w.letters() {
        let (dt, dv) = abelian(l.symbol);
        if l.exp > 0 {
            if l.symbol == g {
                out.add_term(prefix, 1.into());
            }
            prefix = (prefix.0 + dt, prefix.1 + dv);
        } else {
            prefix = (prefix.0 - dt, prefix.1 - dv);
            if l.symbol == g {
                out.add_term(prefix, (-1).into());
            }
        }
    }
    out
}

/// `∂w/∂g` for a generator named in `p`.
pub fn fox_derivative(p: &GroupPresentation, w: &FreeWord, generator: &str) -> Result<LaurentPoly, FoxError> {
    let g = p.symbol_named(generator).ok_or_else(|| FoxError::UnknownGenerator(generator.to_string()))?;
    Ok(fox_derivative_symbol(w, g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub label: String,
    pub meridional: bool,
}

/// Rows are relators, columns are generators (auxiliary column last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub rows: Vec<Vec<LaurentPoly>>,
    pub columns: Vec<Column>,
}

impl LaurentMatrix {
    pub fn new(rows: Vec<Vec<LaurentPoly>>, columns: Vec<Column>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == columns.len()));
        LaurentMatrix { rows, columns }
    }

    /// Square univariate matrix with columns `a1..an`.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let n = rows.first().map_or(0, |r| r.len());
        let columns = (1..=n).map(|i| Column { label: format!("a{i}"), meridional: true }).collect();
        LaurentMatrix::new(rows, columns)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.rows[i][j]
    }

    pub fn meridional_count(&self) -> usize {
        self.columns.iter().filter(|c| c.meridional).count()
    }

    pub fn has_auxiliary(&self) -> bool {
        self.columns.iter().any(|c| !c.meridional)
    }

    pub fn is_univariate(&self) -> bool {
        self.rows.iter().flatten().all(|p| p.is_univariate())
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.columns.iter().map(|c| c.label.as_str()).collect();
        writeln!(f, "[{}]", labels.join(", "))?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Fox Jacobian of the presentation.
pub fn alexander_matrix(p: &GroupPresentation) -> LaurentMatrix {
    let symbols = p.symbols();
    let columns = symbols
        .iter()
        .map(|s| match s {
            Symbol::Meridional(i) => Column { label: p.generators[*i].clone(), meridional: true },
            Symbol::Aux => Column { label: p.auxiliary.clone().unwrap_or_default(), meridional: false },
        })
        .collect();
    let rows = p
        .relators
        .par_iter()
        .map(|r| symbols.iter().map(|&s| fox_derivative_symbol(r, s)).collect())
        .collect();
    LaurentMatrix::new(rows, columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussDiagram;
    use crate::present::{knot_group, reduced_group};

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn derivative_examples() {
        let p = GroupPresentation::parse("a, b | ").unwrap();
        let w = p.parse_word("a b a^-1").unwrap();
        assert_eq!(fox_derivative(&p, &w, "a").unwrap(), poly("1-t"));
        assert_eq!(fox_derivative(&p, &w, "b").unwrap(), poly("t"));
        let w = p.parse_word("a^-1 b a b^-1 a b^-1").unwrap();
        assert_eq!(fox_derivative(&p, &w, "a").unwrap(), poly("2-t^-1"));
        assert_eq!(fox_derivative(&p, &w, "b").unwrap(), poly("t^-1-2"));
        assert_eq!(fox_derivative(&p, &w, "c"), Err(FoxError::UnknownGenerator("c".into())));
    }

    #[test]
    fn matrix_examples() {
        let p = GroupPresentation::parse("a, b | a^-1 b a b^-1 a b^-1").unwrap();
        let m = alexander_matrix(&p);
        assert_eq!(m.rows, vec![vec![poly("2-t^-1"), poly("t^-1-2")]]);
        let m = alexander_matrix(&GroupPresentation::parse("a | ").unwrap());
        assert_eq!((m.nrows(), m.ncols()), (0, 1));
    }

    #[test]
    fn row_sums_vanish() {
        for seed in 0..50 {
            let d = GaussDiagram::random(1 + seed as usize % 8, seed);
            let a = alexander_matrix(&knot_group(&d));
            for row in &a.rows {
                let s = row.iter().fold(LaurentPoly::zero(), |acc, x| acc + x);
                assert!(s.is_zero());
            }
            let m = alexander_matrix(&reduced_group(&d));
            assert!(m.has_auxiliary() && m.meridional_count() == 2 * d.n());
            for row in &m.rows {
                let (aux, mer) = row.split_last().unwrap();
                let s = mer.iter().fold(LaurentPoly::zero(), |acc, x| acc + x);
                let total = s * poly("t-1") + aux * &poly("v-1");
                assert!(total.is_zero());
            }
        }
    }
}
