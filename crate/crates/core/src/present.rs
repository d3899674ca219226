//! Group presentations read off Gauss diagrams.
//!
//! * [`knot_group`]: one generator per arc between consecutive arrowheads,
//!   one Wirtinger relator per chord.
//! * [`reduced_group`]: one generator per arc between consecutive
//!   endpoints, an auxiliary generator `v`, two relators per chord.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::gauss::{GaussDiagram, Role};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Meridional(usize),
    Aux,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub symbol: Symbol,
    /// `+1` or `-1`.
    pub exp: i8,
}

impl Letter {
    pub fn new(symbol: Symbol, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { symbol, exp }
    }

    pub fn inverse(self) -> Letter {
        Letter { symbol: self.symbol, exp: -self.exp }
    }
}

/// A freely reduced word in the free group on the generator symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn generator(s: Symbol) -> Self {
        FreeWord(vec![Letter::new(s, 1)])
    }

    /// `s^exp`, any integer exponent.
    pub fn power(s: Symbol, exp: i32) -> Self {
        let l = Letter::new(s, if exp < 0 { -1 } else { 1 });
        FreeWord(vec![l; exp.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        FreeWord::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `w · self · w⁻¹`
    pub fn conjugated_by(&self, w: &FreeWord) -> FreeWord {
        w.concat(self).concat(&w.inverse())
    }

    pub fn occurrences(&self, s: Symbol) -> usize {
        self.0.iter().filter(|l| l.symbol == s).count()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.0.iter().any(|l| l.symbol == s)
    }

    /// Replaces every occurrence of `s` by `image`.
    pub fn substitute(&self, s: Symbol, image: &FreeWord) -> FreeWord {
        let inv = image.inverse();
        FreeWord::new(self.0.iter().flat_map(|l| {
            if l.symbol == s {
                if l.exp > 0 { image.0.clone() } else { inv.0.clone() }
            } else {
                vec![*l]
            }
        }))
    }

    pub fn map_symbols(&self, f: impl Fn(Symbol) -> Symbol) -> FreeWord {
        FreeWord::new(self.0.iter().map(|l| Letter::new(f(l.symbol), l.exp)))
    }

    /// Drops every letter with symbol `s`, then reduces.
    pub fn delete_symbol(&self, s: Symbol) -> FreeWord {
        FreeWord::new(self.0.iter().filter(|l| l.symbol != s).copied())
    }

    /// If the word is `w y w⁻¹` for a meridional generator `y`, returns `(w, y)`.
    pub fn as_meridional_conjugate(&self) -> Option<(FreeWord, Symbol)> {
        let n = self.0.len();
        if n.is_multiple_of(2) {
            return None;
        }
        let k = n / 2;
        let mid = self.0[k];
        if mid.exp != 1 || mid.symbol == Symbol::Aux {
            return None;
        }
        for i in 0..k {
            if self.0[n - 1 - i] != self.0[i].inverse() {
                return None;
            }
        }
        Some((FreeWord(self.0[..k].to_vec()), mid.symbol))
    }

    /// Cyclically reduced form.
    pub fn cyclically_reduced(&self) -> FreeWord {
        let mut v = self.0.clone();
        while v.len() >= 2 && v[0] == v[v.len() - 1].inverse() {
            v.pop();
            v.remove(0);
        }
        FreeWord(v)
    }

    /// Canonical representative of the relator class: least cyclic
    /// rotation of the cyclically reduced word or of its inverse.
    pub fn relator_normal_form(&self) -> FreeWord {
        let w = self.cyclically_reduced();
        let mut best = w.clone();
        for cand in [w.clone(), w.inverse()] {
            for r in 0..cand.len().max(1) {
                let mut v = cand.0.clone();
                let k = r.min(v.len());
                v.rotate_left(k);
                let v = FreeWord(v);
                if v < best {
                    best = v;
                }
            }
        }
        best
    }

    pub fn render(&self, names: &[String], aux: Option<&str>) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let name = |s: Symbol| match s {
            Symbol::Meridional(i) => names.get(i).cloned().unwrap_or_else(|| format!("x{i}")),
            Symbol::Aux => aux.unwrap_or("v").to_string(),
        };
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let p = (j - i) as i32 * l.exp as i32;
            parts.push(if p == 1 { name(l.symbol) } else { format!("{}^{}", name(l.symbol), p) });
            i = j;
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("presentation has no auxiliary generator")]
    NoAuxiliaryGenerator,
    #[error("cannot parse presentation: {0}")]
    Parse(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub auxiliary: Option<String>,
    pub relators: Vec<FreeWord>,
    /// Set when any single relator is a consequence of the others. True
    /// for Wirtinger presentations of classical diagrams; for non-planar
    /// Gauss diagrams the relators are independent in general.
    pub wirtinger: bool,
}

impl GroupPresentation {
    pub fn meridional_count(&self) -> usize {
        self.generators.len()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut s: Vec<Symbol> = (0..self.generators.len()).map(Symbol::Meridional).collect();
        if self.auxiliary.is_some() {
            s.push(Symbol::Aux);
        }
        s
    }

    pub fn symbol_named(&self, name: &str) -> Option<Symbol> {
        if self.auxiliary.as_deref() == Some(name) {
            return Some(Symbol::Aux);
        }
        self.generators.iter().position(|g| g == name).map(Symbol::Meridional)
    }

    pub fn render_relator(&self, w: &FreeWord) -> String {
        w.render(&self.generators, self.auxiliary.as_deref())
    }

    /// Parses `a, b, c | r1, r2` or `a, b; v | r1, r2`. Relators are words
    /// of whitespace-separated powers (`a`, `a^-1`, `b^2`, `c^{-1}`), or
    /// relations `lhs = rhs`. Surrounding `<`/`>` or `⟨`/`⟩` are optional.
    pub fn parse(text: &str) -> Result<GroupPresentation, PresentationError> {
        let err = |m: &str| PresentationError::Parse(m.to_string());
        let t = text.trim().trim_start_matches(['<', '⟨']).trim_end_matches(['>', '⟩']);
        let (gens, rels) = t.split_once('|').ok_or_else(|| err("missing '|'"))?;
        let (mer, aux) = match gens.split_once(';') {
            Some((m, a)) => (m, Some(a.trim().to_string())),
            None => (gens, None),
        };
        let generators: Vec<String> =
            mer.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        let mut p = GroupPresentation { generators, auxiliary: aux, relators: Vec::new(), wirtinger: false };
        for r in rels.split(',') {
            let r = r.trim();
            if r.is_empty() {
                continue;
            }
            let word = match r.split_once('=') {
                Some((lhs, rhs)) => p.parse_word(lhs)?.concat(&p.parse_word(rhs)?.inverse()),
                None => p.parse_word(r)?,
            };
            p.relators.push(word);
        }
        Ok(p)
    }

    /// Parses a word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<FreeWord, PresentationError> {
        let mut letters = Vec::new();
        let cleaned = text.replace(['{', '}'], "");
        let chars: Vec<char> = cleaned.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '*' || c == '·' {
                i += 1;
                continue;
            }
            if !c.is_alphabetic() {
                return Err(PresentationError::Parse(format!("unexpected {c:?} in {text:?}")));
            }
            let start = i;
            i += 1;
            // single letters followed by digits form one name (a1, a12)
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let sym = self.symbol_named(&name).ok_or_else(|| PresentationError::UnknownGenerator(name.clone()))?;
            let mut exp: i32 = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let es = i;
                if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let e: String = chars[es..i].iter().collect();
                exp = e.parse().map_err(|_| PresentationError::Parse(format!("bad exponent {e:?}")))?;
            }
            letters.extend(FreeWord::power(sym, exp).0);
        }
        Ok(FreeWord::new(letters))
    }

    /// Removes meridional generator `k`, which must no longer occur.
    fn remove_generator(&mut self, k: usize) {
        self.generators.remove(k);
        let shift = |s: Symbol| match s {
            Symbol::Meridional(i) if i > k => Symbol::Meridional(i - 1),
            other => other,
        };
        for r in self.relators.iter_mut() {
            debug_assert!(!r.contains(Symbol::Meridional(k)));
            *r = r.map_symbols(shift);
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.generators.join(", "))?;
        if let Some(a) = &self.auxiliary {
            write!(f, "; {a}")?;
        }
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_relator(r)).collect();
        if rels.is_empty() {
            write!(f, " | >")
        } else {
            write!(f, " | {}>", rels.join(", "))
        }
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Wirtinger presentation of the knot group.
///
/// Heads are numbered in order from the basepoint; head `i` separates arc
/// `a_i` from `a_{i+1}`, and the chord with head `i` gives the relation
/// `a_{i+1} = a_j^ε a_i a_j^{-ε}` where `a_j` is the arc holding its tail.
pub fn knot_group(d: &GaussDiagram) -> GroupPresentation {
    let n = d.n();
    if n == 0 {
        return GroupPresentation { generators: names("a", 1), auxiliary: None, relators: vec![], wirtinger: true };
    }
    let ep = d.endpoints();
    // arc[p]: arc index of position p (number of heads strictly before p, mod n)
    let mut arc = vec![0usize; ep.len()];
    let mut heads = 0;
    for (p, e) in ep.iter().enumerate() {
        arc[p] = heads % n;
        if e.role == Role::Head {
            heads += 1;
        }
    }
    let mut relators = Vec::with_capacity(n);
    for (p, e) in ep.iter().enumerate() {
        if e.role != Role::Head {
            continue;
        }
        let i = arc[p];
        let (tail, _) = d.positions(e.chord).expect("chord present");
        let j = arc[tail];
        let eps = e.sign.value() as i8;
        let m = |k: usize, x: i8| Letter::new(Symbol::Meridional(k), x);
        relators.push(FreeWord::new([m((i + 1) % n, 1), m(j, eps), m(i, -1), m(j, -eps)]));
    }
    GroupPresentation { generators: names("a", n), auxiliary: None, relators, wirtinger: d.is_classical() }
}

/// Presentation of the reduced virtual knot group.
///
/// Arc `a_p` ends at endpoint `p`; a chord with tail at `j`, head at `i`
/// and sign `ε` gives `a_{j+1} = v^ε a_j v^{-ε}` and
/// `a_{i+1} = a_j^ε v^{-ε} a_i v^ε a_j^{-ε}`.
pub fn reduced_group(d: &GaussDiagram) -> GroupPresentation {
    let len = d.len();
    if len == 0 {
        return GroupPresentation {
            generators: names("a", 1),
            auxiliary: Some("v".into()),
            relators: vec![],
            wirtinger: false,
        };
    }
    let ep = d.endpoints();
    let m = |k: usize, x: i8| Letter::new(Symbol::Meridional(k % len), x);
    let v = |x: i8| Letter::new(Symbol::Aux, x);
    let mut relators = Vec::with_capacity(len);
    for (h, e) in ep.iter().enumerate() {
        if e.role != Role::Head {
            continue;
        }
        let (t, _) = d.positions(e.chord).expect("chord present");
        let eps = e.sign.value() as i8;
        relators.push(FreeWord::new([m(t + 1, 1), v(eps), m(t, -1), v(-eps)]));
        relators.push(FreeWord::new([m(h + 1, 1), m(t, eps), v(-eps), m(h, -1), v(eps), m(t, -eps)]));
    }
    GroupPresentation { generators: names("a", len), auxiliary: Some("v".into()), relators, wirtinger: false }
}

/// `(G_K, G_{K*})`: the upper and lower groups.
pub fn upper_lower(d: &GaussDiagram) -> (GroupPresentation, GroupPresentation) {
    (knot_group(d), knot_group(&d.mirror()))
}

/// Quotient by the normal closure of `v`.
///
/// Relators that only conjugate one arc generator by powers of `v` become
/// `x = y`; those generators are merged.
pub fn set_v_to_one(p: &GroupPresentation) -> Result<GroupPresentation, PresentationError> {
    if p.auxiliary.is_none() {
        return Err(PresentationError::NoAuxiliaryGenerator);
    }
    let m = p.meridional_count();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut kept = Vec::new();
    for r in &p.relators {
        let merid = r.letters().iter().filter(|l| l.symbol != Symbol::Aux).count();
        let stripped = r.delete_symbol(Symbol::Aux);
        let pair = match stripped.letters() {
            [a, b] if merid == 2 && a.exp == -b.exp => Some((a.symbol, b.symbol)),
            [] if merid == 2 => None,
            _ => {
                kept.push(stripped);
                continue;
            }
        };
        if let Some((Symbol::Meridional(x), Symbol::Meridional(y))) = pair {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            let (lo, hi) = (rx.min(ry), rx.max(ry));
            parent[hi] = lo;
        }
    }
    let mut index = BTreeMap::new();
    let mut generators = Vec::new();
    for k in 0..m {
        let root = find(&mut parent, k);
        if root == k {
            index.insert(k, generators.len());
            generators.push(p.generators[k].clone());
        }
    }
    let mut roots = vec![0; m];
    for (k, slot) in roots.iter_mut().enumerate() {
        *slot = index[&find(&mut parent, k)];
    }
    let relators = kept
        .iter()
        .map(|w| {
            w.map_symbols(|s| match s {
                Symbol::Meridional(k) => Symbol::Meridional(roots[k]),
                Symbol::Aux => unreachable!("aux removed"),
            })
        })
        .collect();
    Ok(GroupPresentation { generators, auxiliary: None, relators, wirtinger: false })
}

/// Removes generators defined by relators of the form `x = w y w⁻¹`.
///
/// At each step the candidate whose generator occurs least often in the
/// other relators is taken (ties: earliest relator, earliest letter). When
/// the `wirtinger` flag is set, one relator is dropped at the end.
pub fn eliminate_conjugation_generators(p: &GroupPresentation) -> GroupPresentation {
    let mut p = p.clone();
    loop {
        let mut best: Option<((usize, usize, usize), usize, FreeWord)> = None;
        for (ri, r) in p.relators.iter().enumerate() {
            let letters = r.letters();
            for (pos, l) in letters.iter().enumerate() {
                let Symbol::Meridional(x) = l.symbol else { continue };
                if r.occurrences(l.symbol) != 1 {
                    continue;
                }
                // r = u x^e s  ~  x^e (s u) = 1
                let rest = FreeWord::new(letters[pos + 1..].iter().chain(letters[..pos].iter()).copied());
                let solution = if l.exp > 0 { rest.inverse() } else { rest };
                if solution.as_meridional_conjugate().is_none() {
                    continue;
                }
                let cost: usize = p
                    .relators
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != ri)
                    .map(|(_, w)| w.occurrences(l.symbol))
                    .sum();
                let rank = (cost, ri, pos);
                if best.as_ref().is_none_or(|(b, _, _)| rank < *b) {
                    best = Some((rank, x, solution));
                }
            }
        }
        let Some(((_, ri, _), x, solution)) = best else { break };
        p.relators.remove(ri);
        for r in p.relators.iter_mut() {
            *r = r.substitute(Symbol::Meridional(x), &solution);
        }
        p.remove_generator(x);
    }
    if p.wirtinger && !p.relators.is_empty() {
        // longest cyclic word goes, earliest on ties
        let drop = p
            .relators
            .iter()
            .enumerate()
            .max_by_key(|(i, r)| (r.cyclically_reduced().len(), std::cmp::Reverse(*i)))
            .map(|(i, _)| i)
            .unwrap();
        p.relators.remove(drop);
        p.wirtinger = false;
    }
    p
}

/// Tietze contraction: every relator `x y⁻¹` with `x ≠ y` identifies the
/// two generators and is removed; trivial relators are dropped.
pub fn merge_trivial_relators(p: &GroupPresentation) -> GroupPresentation {
    let mut p = p.clone();
    loop {
        p.relators.retain(|r| !r.cyclically_reduced().is_empty());
        let found = p.relators.iter().enumerate().find_map(|(ri, r)| {
            match r.cyclically_reduced().letters() {
                [a, b] if a.exp == -b.exp && a.symbol != b.symbol => match (a.symbol, b.symbol) {
                    (Symbol::Meridional(x), Symbol::Meridional(y)) => Some((ri, x.min(y), x.max(y))),
                    _ => None,
                },
                _ => None,
            }
        });
        let Some((ri, keep, drop)) = found else { return p };
        p.relators.remove(ri);
        for r in p.relators.iter_mut() {
            *r = r.substitute(Symbol::Meridional(drop), &FreeWord::generator(Symbol::Meridional(keep)));
        }
        p.remove_generator(drop);
    }
}

/// [`equivalent_up_to_relabeling`] after [`merge_trivial_relators`] on both sides.
pub fn equivalent_after_merging(p: &GroupPresentation, q: &GroupPresentation) -> bool {
    equivalent_up_to_relabeling(&merge_trivial_relators(p), &merge_trivial_relators(q))
}

/// Whether two presentations agree after renaming meridional generators,
/// with relators compared as cyclic words up to inversion. Trivial
/// relators are ignored.
pub fn equivalent_up_to_relabeling(p: &GroupPresentation, q: &GroupPresentation) -> bool {
    let m = p.meridional_count();
    if m != q.meridional_count() || p.auxiliary.is_some() != q.auxiliary.is_some() {
        return false;
    }
    let normal = |rels: &[FreeWord]| {
        let mut v: Vec<FreeWord> =
            rels.iter().map(|r| r.relator_normal_form()).filter(|r| !r.is_empty()).collect();
        v.sort();
        v
    };
    let target = normal(&q.relators);
    if normal(&p.relators).len() != target.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        let mapped: Vec<FreeWord> = p
            .relators
            .iter()
            .map(|r| {
                r.map_symbols(|s| match s {
                    Symbol::Meridional(k) => Symbol::Meridional(perm[k]),
                    Symbol::Aux => Symbol::Aux,
                })
            })
            .collect();
        if normal(&mapped) == target {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gd(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn words_reduce_and_substitute() {
        let p = GroupPresentation::parse("a, b | ").unwrap();
        let w = p.parse_word("a b b^-1 a^-1 b").unwrap();
        assert_eq!(p.render_relator(&w), "b");
        let c = p.parse_word("a b a^-1").unwrap();
        assert_eq!(c.as_meridional_conjugate(), Some((p.parse_word("a").unwrap(), Symbol::Meridional(1))));
        assert!(p.parse_word("a b^-1 a^-1").unwrap().as_meridional_conjugate().is_none());
        let s = p.parse_word("b a").unwrap().substitute(Symbol::Meridional(1), &c);
        assert_eq!(p.render_relator(&s), "a b");
        assert_eq!(p.render_relator(&p.parse_word("a^2 b^{-1} a a").unwrap()), "a^2 b^-1 a^2");
    }

    #[test]
    fn unknot_groups() {
        let g = knot_group(&GaussDiagram::empty());
        assert_eq!((g.meridional_count(), g.relators.len()), (1, 0));
        let r = reduced_group(&GaussDiagram::empty());
        assert_eq!((r.meridional_count(), r.relators.len(), r.auxiliary.as_deref()), (1, 0, Some("v")));
        assert_eq!(set_v_to_one(&r).unwrap(), GroupPresentation { wirtinger: false, ..g.clone() });
        let (u, l) = upper_lower(&GaussDiagram::empty());
        assert_eq!(u, l);
    }

    #[test]
    fn counts_match_chords() {
        for seed in 0..20 {
            let d = GaussDiagram::random(1 + seed as usize % 6, seed);
            assert_eq!(knot_group(&d).relators.len(), d.n());
            assert_eq!(reduced_group(&d).relators.len(), 2 * d.n());
            assert_eq!(reduced_group(&d).meridional_count(), 2 * d.n());
        }
    }

    #[test]
    fn kink_groups() {
        let d = gd("O1+U1+");
        let g = knot_group(&d);
        assert_eq!(g.meridional_count(), 1);
        let r = reduced_group(&d);
        assert_eq!((r.meridional_count(), r.relators.len()), (2, 2));
        assert!(equivalent_up_to_relabeling(&set_v_to_one(&r).unwrap(), &g));
    }

    #[test]
    fn virtual_trefoil_groups() {
        let d = gd("O1+O2+U1+U2+");
        let g = knot_group(&d);
        assert_eq!((g.meridional_count(), g.relators.len()), (2, 2));
        let e = eliminate_conjugation_generators(&g);
        assert!(e.meridional_count() <= d.bridge_count());
        assert!(!e.wirtinger);
        let q = set_v_to_one(&reduced_group(&d)).unwrap();
        assert!(equivalent_up_to_relabeling(&q, &g));
    }

    #[test]
    fn set_v_recovers_knot_group_on_random_diagrams() {
        for seed in 0..40 {
            let d = GaussDiagram::random(1 + seed as usize % 5, seed);
            let q = set_v_to_one(&reduced_group(&d)).unwrap();
            assert!(equivalent_after_merging(&q, &knot_group(&d)), "{d}");
            let e = eliminate_conjugation_generators(&knot_group(&d));
            assert!(e.meridional_count() <= d.bridge_count().max(1), "{d}");
        }
    }

    #[test]
    fn degenerate_head_relator_merges() {
        let d = gd("U1-U2-O2-O1-");
        let q = set_v_to_one(&reduced_group(&d)).unwrap();
        assert!(!equivalent_up_to_relabeling(&q, &knot_group(&d)));
        assert!(equivalent_after_merging(&q, &knot_group(&d)));
        assert_eq!(merge_trivial_relators(&q).to_string(), "<a1 | >");
    }

    #[test]
    fn set_v_requires_aux() {
        assert_eq!(set_v_to_one(&knot_group(&gd("O1+U1+"))), Err(PresentationError::NoAuxiliaryGenerator));
    }

    #[test]
    fn free_presentation_is_a_fixpoint() {
        let p = GroupPresentation::parse("a | ").unwrap();
        assert_eq!(eliminate_conjugation_generators(&p), p);
    }

    #[test]
    fn parse_relations_and_render() {
        let p = GroupPresentation::parse("<a,b,c,d | b=c a c^-1, c=a^-1 b a>").unwrap();
        assert_eq!(p.relators.len(), 2);
        assert_eq!(p.render_relator(&p.relators[0]), "b c a^-1 c^-1");
        assert!(matches!(GroupPresentation::parse("a | x"), Err(PresentationError::UnknownGenerator(_))));
        assert_eq!(p.to_string(), "<a, b, c, d | b c a^-1 c^-1, c a^-1 b^-1 a>");
    }
}
