//! Strong Gröbner bases over the integers.
//!
//! Laurent ideals are handled in the polynomial ring `ℤ[t, v, u, w]` with
//! `tu - 1` and `vw - 1` adjoined, so `u` and `w` play the roles of `t⁻¹`
//! and `v⁻¹`.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::foxcalc::LaurentPoly;

/// Exponents of `[t, v, u, w]`.
pub(crate) type Mono = [u32; 4];

/// Lexicographic with `t > v > u > w`, so the inversion variables come last.
fn cmp_mono(a: &Mono, b: &Mono) -> Ordering {
    a.cmp(b)
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i].max(b[i]))
}

fn quotient(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|i| a[i] - b[i])
}

fn coprime(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Terms sorted by decreasing monomial; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    terms: Vec<(Mono, BigInt)>,
}

impl Poly {
    fn from_terms(mut terms: Vec<(Mono, BigInt)>) -> Poly {
        terms.sort_by(|a, b| cmp_mono(&b.0, &a.0));
        let mut out: Vec<(Mono, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    /// Multiplies a Laurent polynomial by a monomial so every exponent is
    /// non-negative; `t^a` with `a < 0` would also be expressible via `u`,
    /// but the unit multiple generates the same Laurent ideal.
    pub(crate) fn from_laurent(p: &LaurentPoly) -> Poly {
        let (a, b) = p.min_exponents();
        Poly::from_terms(
            p.terms().map(|(&(t, v), c)| ([(t - a) as u32, (v - b) as u32, 0, 0], c.clone())).collect(),
        )
    }

    fn constant(c: i64) -> Poly {
        Poly::from_terms(vec![([0; 4], BigInt::from(c))])
    }

    fn inversion_relation(var: usize) -> Poly {
        let mut m = [0; 4];
        m[var] = 1;
        m[var + 2] = 1;
        Poly::from_terms(vec![(m, BigInt::one()), ([0; 4], -BigInt::one())])
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    /// `self - c · x^m · g`
    fn sub_scaled(&self, c: &BigInt, m: &Mono, g: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|(gm, gc)| (std::array::from_fn::<u32, 4, _>(|i| gm[i] + m[i]), gc * c));
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, -c));
                }
                (Some((am, _)), Some((bm, _))) => match cmp_mono(am, bm) {
                    Ordering::Greater => out.push(a.next().unwrap()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m, -c));
                    }
                    Ordering::Equal => {
                        let (m, x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        let d = x - y;
                        if !d.is_zero() {
                            out.push((m, d));
                        }
                    }
                },
            }
        }
        Poly { terms: out }
    }

    /// `c1 · x^m1 · f + c2 · x^m2 · g`
    fn combine(c1: &BigInt, m1: &Mono, f: &Poly, c2: &BigInt, m2: &Mono, g: &Poly) -> Poly {
        let scaled = Poly {
            terms: f
                .terms
                .iter()
                .map(|(fm, fc)| (std::array::from_fn(|i| fm[i] + m1[i]), fc * c1))
                .filter(|(_, c): &(Mono, BigInt)| !c.is_zero())
                .collect(),
        };
        scaled.sub_scaled(&-c2, m2, g)
    }

    fn make_lc_positive(mut self) -> Poly {
        if self.terms.first().is_some_and(|(_, c)| c.is_negative()) {
            for (_, c) in self.terms.iter_mut() {
                *c = -&*c;
            }
        }
        self
    }
}

/// A strong Gröbner basis: every element's leading term is divisible, in
/// both monomial and coefficient, by the leading term of a basis element.
#[derive(Clone, Debug)]
pub(crate) struct StrongBasis {
    polys: Vec<Poly>,
}

impl StrongBasis {
    /// Basis of the Laurent ideal generated by `gens`.
    pub(crate) fn of_laurent(gens: &[LaurentPoly], bivariate: bool) -> StrongBasis {
        let mut input: Vec<Poly> = gens.iter().map(Poly::from_laurent).collect();
        input.push(Poly::inversion_relation(0));
        if bivariate {
            input.push(Poly::inversion_relation(1));
        }
        StrongBasis::compute(input)
    }

    fn compute(input: Vec<Poly>) -> StrongBasis {
        let mut basis = StrongBasis { polys: Vec::new() };
        let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
        // short inputs first keeps early reductions cheap
        let mut input = input;
        input.sort_by_key(|p| (p.terms.len(), p.terms.first().map(|t| t.0)));
        for p in input {
            basis.insert(p, &mut pairs);
        }
        while let Some((i, j)) = pairs.pop_front() {
            let (f, g) = (&basis.polys[i], &basis.polys[j]);
            let (a, b) = (f.lc().clone(), g.lc().clone());
            let (fm, gm) = (*f.lm(), *g.lm());
            let l = lcm(&fm, &gm);
            let (qf, qg) = (quotient(&l, &fm), quotient(&l, &gm));
            let mut fresh = Vec::new();
            if !(coprime(&fm, &gm) && a.gcd(&b).is_one()) {
                let c = a.lcm(&b);
                fresh.push(Poly::combine(&(&c / &a), &qf, f, &-(&c / &b), &qg, g));
            }
            if !(b.is_multiple_of(&a) || a.is_multiple_of(&b)) {
                let e = a.extended_gcd(&b);
                fresh.push(Poly::combine(&e.x, &qf, f, &e.y, &qg, g));
            }
            for p in fresh {
                basis.insert(p, &mut pairs);
            }
        }
        basis
    }

    fn insert(&mut self, p: Poly, pairs: &mut VecDeque<(usize, usize)>) {
        let r = self.reduce(&p, true);
        if r.is_zero() {
            return;
        }
        let r = r.make_lc_positive();
        let k = self.polys.len();
        self.polys.push(r);
        for i in 0..k {
            pairs.push_back((i, k));
        }
    }

    fn reducer(&self, m: &Mono, c: &BigInt) -> Option<&Poly> {
        self.polys.iter().find(|g| divides(g.lm(), m) && c.is_multiple_of(g.lc()))
    }

    /// Strong reduction. With `full`, lower terms are reduced too.
    fn reduce(&self, p: &Poly, full: bool) -> Poly {
        let mut f = p.clone();
        let mut done: Vec<(Mono, BigInt)> = Vec::new();
        while !f.is_zero() {
            let (m, c) = f.terms[0].clone();
            if let Some(g) = self.reducer(&m, &c) {
                let q = &c / g.lc();
                f = f.sub_scaled(&q, &quotient(&m, g.lm()), g);
            } else if full {
                done.push(f.terms.remove(0));
            } else {
                return f;
            }
        }
        Poly { terms: done }
    }

    pub(crate) fn contains(&self, p: &LaurentPoly) -> bool {
        self.reduce(&Poly::from_laurent(p), false).is_zero()
    }

    pub(crate) fn contains_one(&self) -> bool {
        self.reduce(&Poly::constant(1), false).is_zero()
    }

    #[cfg(test)]
    fn len(&self) -> usize {
        self.polys.len()
    }
}
