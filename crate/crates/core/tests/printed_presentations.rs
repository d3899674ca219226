mod common;

use common::kn_presentation;
use gaussbridge::foxcalc::{alexander_matrix, LaurentPoly};
use gaussbridge::ideals::{elementary_ideal, ideal_equal, is_trivial, rank_lower_bound, EqualityMode, IdealGens, IdealRing};
use gaussbridge::present::{eliminate_conjugation_generators, equivalent_up_to_relabeling, GroupPresentation};

fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn principal(s: &str) -> IdealGens {
    IdealGens::new(IdealRing::Univariate, 0, [poly(s)])
}

fn same(a: &IdealGens, b: &IdealGens, mode: EqualityMode) -> bool {
    ideal_equal(a, b, mode).unwrap()
}

#[test]
fn three_generator_example_has_rank_three() {
    let p = GroupPresentation::parse("a, b, c | a^-1 c^-1 a^-1 c a c, b^-1 a^-1 b^-1 a b a, c^-1 b^-1 c^-1 b c b").unwrap();
    let a = alexander_matrix(&p);
    let e1 = elementary_ideal(&a, 1, 3);
    let e2 = elementary_ideal(&a, 2, 3);
    assert!(same(&e1, &principal("t^4-2t^3+3t^2-2t+1"), EqualityMode::UpToUnits), "{e1}");
    assert!(same(&e2, &principal("t^2-t+1"), EqualityMode::UpToUnits), "{e2}");
    assert!(!is_trivial(&e2));
    assert!(elementary_ideal(&a, 0, 3).is_zero());
    assert_eq!(rank_lower_bound(&a, 3), 3);
}

#[test]
fn four_generator_relations_reduce_to_one_relator() {
    let p = GroupPresentation::parse("a, b, c, d | b = c a c^-1, c = a^-1 b a, d = a c a^-1, a = c^-1 d c").unwrap();
    let printed = GroupPresentation::parse("a, b | a^-1 b a b^-1 a b^-1").unwrap();
    let mut flagged = p.clone();
    flagged.wirtinger = true;
    let e = eliminate_conjugation_generators(&flagged);
    assert_eq!((e.meridional_count(), e.relators.len()), (2, 1), "{e}");
    assert!(equivalent_up_to_relabeling(&e, &printed), "{e}");
    // without dropping a relator the group is unchanged and so is E1
    let full = eliminate_conjugation_generators(&p);
    assert_eq!((full.meridional_count(), full.relators.len()), (2, 2));
    let ideals = [
        elementary_ideal(&alexander_matrix(&p), 1, 4),
        elementary_ideal(&alexander_matrix(&full), 1, 2),
        elementary_ideal(&alexander_matrix(&e), 1, 2),
        elementary_ideal(&alexander_matrix(&printed), 1, 2),
    ];
    for i in &ideals {
        assert!(same(i, &principal("1-2t"), EqualityMode::UpToUnits), "{i}");
    }
}

#[test]
fn kn_matrices_are_circulant() {
    for n in 2..=8 {
        let a = alexander_matrix(&kn_presentation(n));
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j {
                    poly("2-t")
                } else if j == (i + 1) % n {
                    poly("t-2")
                } else {
                    LaurentPoly::zero()
                };
                assert_eq!(a.entry(i, j), &expected, "n={n} ({i},{j})");
            }
        }
        let top = elementary_ideal(&a, n - 1, n);
        assert!(top.principal_generator().is_some(), "{top}");
        assert!(same(&top, &principal("1-2t"), EqualityMode::UpToUnitsAndTInversion));
        assert!(!same(&top, &principal("1-2t"), EqualityMode::UpToUnits));
        assert_eq!(rank_lower_bound(&a, n), n);
    }
}

#[test]
fn two_generator_counterexample_ideal() {
    let p = GroupPresentation::parse("a, b | a^2 b^-1 a b a^-2 b^-1").unwrap();
    let e1 = elementary_ideal(&alexander_matrix(&p), 1, 2);
    assert!(same(&e1, &principal("1+t-t^2"), EqualityMode::UpToUnits), "{e1}");
    assert!(!is_trivial(&e1));
}

#[test]
fn four_relation_counterexample_group_keeps_all_relators() {
    // the four relations are independent: the one-relator quotient above is
    // a proper quotient, and the full group has a non-principal E1
    let q = GroupPresentation::parse("a, b, c, d | b = d^-1 a d, c = a^-1 b a, d = a^-1 c a, a = b d b^-1").unwrap();
    let direct = elementary_ideal(&alexander_matrix(&q), 1, 4);
    let expected = IdealGens::new(IdealRing::Univariate, 1, [poly("5"), poly("t-3")]);
    assert!(same(&direct, &expected, EqualityMode::UpToUnits), "{direct}");
    assert!(!is_trivial(&direct));
    assert!(!same(&direct, &principal("1+t-t^2"), EqualityMode::UpToUnits));
    let full = eliminate_conjugation_generators(&q);
    assert_eq!((full.meridional_count(), full.relators.len()), (2, 2));
    let e1 = elementary_ideal(&alexander_matrix(&full), 1, 2);
    assert!(same(&e1, &expected, EqualityMode::UpToUnits), "{e1}");
    assert_eq!(rank_lower_bound(&alexander_matrix(&q), 4), 2);
}
