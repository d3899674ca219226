mod common;

use std::collections::BTreeSet;

use common::*;
use gaussbridge::foxcalc::{alexander_matrix, LaurentMatrix, LaurentPoly};
use gaussbridge::ideals::{elementary_ideal, ideal_equal, minors, EqualityMode, IdealGens};
use gaussbridge::parity::{gaussian_parity, GaussianParity};
use gaussbridge::present::{eliminate_conjugation_generators, knot_group, reduced_group, GroupPresentation};
use gaussbridge::report::{compute_report, revalidate};
use gaussbridge::search::{explore, replay, SearchBudget};
use gaussbridge::{apply_move, enumerate_moves, GaussDiagram, MoveBounds, MoveInstance, MoveSet};

fn ideals_of(p: &GroupPresentation, upto: usize) -> Vec<IdealGens> {
    let mat = alexander_matrix(p);
    let m = p.meridional_count();
    (0..=upto).map(|k| elementary_ideal(&mat, k, m)).collect()
}

fn same_ideals(a: &[IdealGens], b: &[IdealGens]) -> bool {
    a.iter().zip(b).all(|(x, y)| ideal_equal(x, y, EqualityMode::UpToUnits).unwrap())
}

/// Determinant by the permutation expansion.
fn leibniz(mat: &LaurentMatrix, rows: &[usize], cols: &[usize]) -> LaurentPoly {
    fn go(mat: &LaurentMatrix, rows: &[usize], cols: &mut Vec<usize>, acc: LaurentPoly, sign: bool, out: &mut LaurentPoly) {
        let Some((&r, rest)) = rows.split_first() else {
            *out = if sign { &*out - &acc } else { &*out + &acc };
            return;
        };
        for i in 0..cols.len() {
            let c = cols.remove(i);
            let e = mat.entry(r, c);
            if !e.is_zero() {
                go(mat, rest, cols, &acc * e, sign ^ (i % 2 == 1), out);
            }
            cols.insert(i, c);
        }
    }
    let mut out = LaurentPoly::zero();
    go(mat, rows, &mut cols.to_vec(), LaurentPoly::one(), false, &mut out);
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn normalized_set(ps: impl IntoIterator<Item = LaurentPoly>) -> BTreeSet<LaurentPoly> {
    ps.into_iter().filter(|p| !p.is_zero()).map(|p| p.normalized()).collect()
}

#[test]
fn minors_match_permutation_expansion_and_nest() {
    for d in random_pool(40, 4) {
        for p in [knot_group(&d), reduced_group(&d)] {
            let mat = alexander_matrix(&p);
            let (r, c) = (mat.nrows(), mat.ncols());
            let mut lower = normalized_set([LaurentPoly::one()]);
            for s in 1..=r.min(c).min(4) {
                let oracle = normalized_set(
                    subsets(r, s).iter().flat_map(|rows| subsets(c, s).into_iter().map(move |cols| (rows.clone(), cols))).map(|(rows, cols)| leibniz(&mat, &rows, &cols)),
                );
                assert_eq!(normalized_set(minors(&mat, s)), oracle, "{d} s={s}");
                // first-row expansion writes every s-minor over (s-1)-minors,
                // so the larger-index ideal contains the smaller one
                for rows in subsets(r, s) {
                    for cols in subsets(c, s) {
                        let mut expansion = LaurentPoly::zero();
                        for (j, &col) in cols.iter().enumerate() {
                            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != col).collect();
                            let sub = leibniz(&mat, &rows[1..], &rest);
                            let term = mat.entry(rows[0], col) * &sub;
                            expansion = if j % 2 == 1 { &expansion - &term } else { &expansion + &term };
                            if !term.is_zero() {
                                assert!(lower.contains(&sub.normalized()), "{d} s={s} j={j}");
                            }
                        }
                        assert_eq!(expansion, leibniz(&mat, &rows, &cols));
                    }
                }
                lower = oracle;
            }
        }
    }
}

#[test]
fn top_ideal_vanishes_for_knot_groups() {
    for d in random_pool(120, 8) {
        let p = knot_group(&d);
        let mat = alexander_matrix(&p);
        assert!(elementary_ideal(&mat, 0, p.meridional_count()).is_zero(), "{d}");
    }
}

#[test]
fn elimination_preserves_ideals() {
    for d in random_pool(80, 6) {
        let p = knot_group(&d);
        let e = eliminate_conjugation_generators(&p);
        let m = p.meridional_count();
        assert!(same_ideals(&ideals_of(&p, m), &ideals_of(&e, m)), "{d}");
    }
    for d in random_pool(40, 3) {
        let p = reduced_group(&d);
        let e = eliminate_conjugation_generators(&p);
        let m = p.meridional_count();
        assert!(same_ideals(&ideals_of(&p, m), &ideals_of(&e, m)), "{d}");
    }
}

fn eliminated_ideals(p: GroupPresentation, upto: usize) -> Vec<IdealGens> {
    ideals_of(&eliminate_conjugation_generators(&p), upto)
}

fn check_move_invariance(d: &GaussDiagram, moves: impl IntoIterator<Item = MoveInstance>) {
    let upto = 2 * d.n() + 4;
    let knot = eliminated_ideals(knot_group(d), upto);
    let reduced = eliminated_ideals(reduced_group(d), upto);
    for m in moves {
        let e = apply_move(d, &m).unwrap();
        assert!(same_ideals(&knot, &eliminated_ideals(knot_group(&e), upto)), "{d} {m:?}");
        if !matches!(m, MoveInstance::ForbiddenTailSwap { .. }) {
            assert!(same_ideals(&reduced, &eliminated_ideals(reduced_group(&e), upto)), "{d} {m:?}");
        }
    }
}

#[test]
fn moves_preserve_group_ideals() {
    // knot-group ideals are welded invariants, reduced-group ideals virtual ones
    for d in random_pool(24, 3) {
        check_move_invariance(&d, enumerate_moves(&d, MoveSet::Welded, MoveBounds { max_chords: d.n() + 1 }));
    }
}

#[test]
fn third_moves_preserve_group_ideals() {
    // R3 needs three mutually linked chords, rare in small random diagrams,
    // so collect them from one-move neighbourhoods
    let mut found: Vec<GaussDiagram> = Vec::new();
    let r3_moves = |d: &GaussDiagram| -> Vec<MoveInstance> {
        enumerate_moves(d, MoveSet::Virtual, MoveBounds { max_chords: d.n() })
            .into_iter()
            .filter(|m| matches!(m, MoveInstance::R3 { .. }))
            .collect()
    };
    'outer: for d in random_pool(1000, 5) {
        let around = enumerate_moves(&d, MoveSet::Virtual, MoveBounds { max_chords: d.n() + 2 });
        for e in std::iter::once(d.clone()).chain(around.iter().map(|m| apply_move(&d, m).unwrap())) {
            if e.n() <= 6 && !r3_moves(&e).is_empty() && found.iter().all(|f| f.canonical_key() != e.canonical_key()) {
                found.push(e);
                if found.len() == 30 {
                    break 'outer;
                }
            }
        }
    }
    found.extend([gd(TREFOIL), gd("O1+U2+O2+U3+O3+U1+")]);
    let mut count = 0;
    for d in &found {
        let moves = r3_moves(d);
        count += moves.len();
        check_move_invariance(d, moves);
    }
    assert!(count >= 30, "only {count} R3 instances exercised");
}

#[test]
fn forbidden_move_can_change_reduced_group() {
    let d = gd(TWO_BRIDGE).mirror();
    let w = explore(&d, MoveSet::Welded, SearchBudget::default_for(&d));
    assert!(w.trivialized);
    let upto = 8;
    let before = eliminated_ideals(reduced_group(&d), upto);
    let after = eliminated_ideals(reduced_group(&GaussDiagram::empty()), upto);
    assert!(!same_ideals(&before, &after));
}

#[test]
fn r3_slides_endpoints_only() {
    for d in random_pool(200, 6) {
        for m in enumerate_moves(&d, MoveSet::Virtual, MoveBounds { max_chords: d.n() }) {
            let MoveInstance::R3 { chords, .. } = &m else { continue };
            let e = apply_move(&d, &m).unwrap();
            assert_eq!(e.chords(), d.chords());
            for c in d.chords() {
                assert_eq!(e.sign_of(c), d.sign_of(c));
            }
            let (f, g) = (gaussian_parity(&d), gaussian_parity(&e));
            assert!(chords.iter().all(|c| f[c] == g[c]));
            assert_ne!(chords.iter().filter(|c| f[c] == 1).count(), 1);
            assert_ne!(chords.iter().filter(|c| f[c] == 1).count(), 3);
        }
    }
}

#[test]
fn r2_pairs_have_equal_parity() {
    for d in random_pool(200, 6) {
        let f = gaussian_parity(&d);
        for m in enumerate_moves(&d, MoveSet::Virtual, MoveBounds { max_chords: d.n() + 2 }) {
            if let MoveInstance::R2Delete { first, second } = m {
                assert_eq!(f[&first], f[&second]);
            }
            assert!(gaussbridge::parity::check_axioms(&d, &m, &GaussianParity).unwrap());
        }
    }
}

#[test]
fn connected_sum_has_additive_cut() {
    let pool = random_pool(30, 4);
    for pair in pool.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let sums = GaussDiagram::all_connected_sums(a, b);
        assert!(sums.iter().all(|(_, _, s)| s.n() == a.n() + b.n()));
        let best = sums.iter().map(|(_, _, s)| s.bridge_count()).min().unwrap();
        let additive = if a.is_empty() || b.is_empty() { a.bridge_count().max(b.bridge_count()) } else { a.bridge_count() + b.bridge_count() };
        assert!(best <= additive, "{a} # {b}");
    }
}

#[test]
fn welded_search_reaches_at_least_as_far() {
    for d in random_pool(30, 3) {
        let budget = SearchBudget { max_chords: d.n() + 1, max_depth: 3, max_states: 200_000 };
        let v = explore(&d, MoveSet::Virtual, budget);
        let w = explore(&d, MoveSet::Welded, budget);
        assert!(w.min_bridge_found <= v.min_bridge_found, "{d}");
        assert!(!v.trivialized || w.trivialized, "{d}");
        if !w.trivialized {
            assert!(w.states_visited >= v.states_visited, "{d}");
        }
        for r in [&v, &w] {
            let end = replay(&d, &r.witness).unwrap();
            assert_eq!(end.bridge_count(), r.min_bridge_found);
        }
    }
}

#[test]
fn search_is_monotone_in_budget() {
    for d in random_pool(20, 3) {
        let mut grid = Vec::new();
        for max_chords in [d.n(), d.n() + 1, d.n() + 2] {
            for max_depth in [1, 2, 3] {
                for max_states in [50, 500, 50_000] {
                    let b = SearchBudget { max_chords, max_depth, max_states };
                    grid.push((b, explore(&d, MoveSet::Virtual, b).min_bridge_found));
                }
            }
        }
        for (a, x) in &grid {
            for (b, y) in &grid {
                let larger = b.max_depth >= a.max_depth && b.max_states >= a.max_states && b.max_chords >= a.max_chords;
                // the chord cap only widens the search while the state cap does not bind
                if larger && (b.max_chords == a.max_chords || b.max_states == 50_000) {
                    assert!(y <= x, "{d} {a:?}->{x} {b:?}->{y}");
                }
            }
        }
    }
}

#[test]
fn reports_revalidate_and_are_deterministic() {
    for d in random_pool(30, 5) {
        let small = SearchBudget { max_chords: d.n() + 1, max_depth: 2, max_states: 2_000 };
        let large = SearchBudget { max_chords: d.n() + 2, max_depth: 4, max_states: 200_000 };
        let a = compute_report(&d, small, 2);
        revalidate(&a).unwrap();
        assert_eq!(compute_report(&d, small, 2), a);
        let b = compute_report(&d, large, 3);
        revalidate(&b).unwrap();
        assert!(a.vb_lower <= a.vb_upper && a.wb_lower <= a.wb_upper && a.wb_upper <= a.vb_upper);
        assert!(b.vb_lower >= a.vb_lower && b.vb_upper <= a.vb_upper, "{d}");
        assert!(b.wb_lower >= a.wb_lower && b.wb_upper <= a.wb_upper, "{d}");
    }
}
