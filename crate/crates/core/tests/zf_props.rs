//! Properties of equality, membership and the set constructions on random
//! hereditarily finite trees, against a canonical-form oracle.

use proptest::prelude::*;

use vml_core::zf::{eq_v, literal, mem_v, numeral, pair_v, sq_v, subset_v, sum_v, unpair_v, Budget, VSet, Verdict};

#[derive(Clone, Debug)]
struct T(Vec<T>);

/// Sorted, deduplicated nesting: equal iff the sets are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Canon(Vec<Canon>);

fn canon(t: &T) -> Canon {
    let mut kids: Vec<Canon> = t.0.iter().map(canon).collect();
    kids.sort();
    kids.dedup();
    Canon(kids)
}

fn set(t: &T) -> VSet {
    VSet::from_children(t.0.iter().map(set).collect())
}

fn tree() -> impl Strategy<Value = T> {
    Just(T(vec![])).prop_recursive(4, 32, 4, |inner| prop::collection::vec(inner, 0..4).prop_map(T))
}

/// Trees drawn from a tiny pool, so equal pairs are common.
fn near_tree() -> impl Strategy<Value = T> {
    let leaf = Just(T(vec![]));
    leaf.prop_recursive(3, 12, 3, |inner| prop::collection::vec(inner, 0..3).prop_map(T))
}

fn budget() -> Budget {
    Budget::default()
}

fn decided(v: Verdict) -> bool {
    match v {
        Verdict::Holds(_) => true,
        Verdict::Fails(_) => false,
        Verdict::Unknown(i) => panic!("undecided on a finite set: {i:?}"),
    }
}

proptest! {
    #[test]
    fn eq_matches_oracle(a in near_tree(), b in near_tree()) {
        prop_assert_eq!(decided(eq_v(&set(&a), &set(&b), &budget())), canon(&a) == canon(&b));
    }

    #[test]
    fn eq_is_reflexive_across_presentations(a in tree()) {
        let mut rev = a.clone();
        rev.0.reverse();
        let mut doubled = a.clone();
        doubled.0.extend(a.0.iter().cloned());
        let b = budget();
        prop_assert!(eq_v(&set(&a), &set(&rev), &b).is_holds());
        prop_assert!(eq_v(&set(&a), &set(&doubled), &b).is_holds());
    }

    #[test]
    fn eq_is_symmetric(a in near_tree(), b in near_tree()) {
        let bud = budget();
        prop_assert_eq!(decided(eq_v(&set(&a), &set(&b), &bud)), decided(eq_v(&set(&b), &set(&a), &bud)));
    }

    #[test]
    fn eq_is_transitive(a in near_tree(), b in near_tree(), c in near_tree()) {
        let bud = budget();
        let (x, y, z) = (set(&a), set(&b), set(&c));
        if decided(eq_v(&x, &y, &bud)) && decided(eq_v(&y, &z, &bud)) {
            prop_assert!(eq_v(&x, &z, &bud).is_holds());
        }
    }

    #[test]
    fn membership_matches_oracle(x in near_tree(), alpha in tree()) {
        let want = alpha.0.iter().any(|c| canon(c) == canon(&x));
        prop_assert_eq!(decided(mem_v(&set(&x), &set(&alpha), &budget())), want);
    }

    #[test]
    fn membership_respects_equality(x in near_tree(), y in near_tree(), alpha in tree()) {
        let bud = budget();
        if canon(&x) == canon(&y) {
            prop_assert_eq!(
                decided(mem_v(&set(&x), &set(&alpha), &bud)),
                decided(mem_v(&set(&y), &set(&alpha), &bud))
            );
        }
    }

    #[test]
    fn witnesses_point_at_equal_children(x in near_tree(), alpha in tree()) {
        let bud = budget();
        let a = set(&alpha);
        if let Some(k) = mem_v(&set(&x), &a, &bud).first_witness() {
            prop_assert!(eq_v(&a.child(k).unwrap(), &set(&x), &bud).is_holds());
        }
    }

    #[test]
    fn subset_is_antisymmetric(a in near_tree(), b in near_tree()) {
        let bud = budget();
        let (x, y) = (set(&a), set(&b));
        let both = decided(subset_v(&x, &y, &bud)) && decided(subset_v(&y, &x, &bud));
        prop_assert_eq!(both, decided(eq_v(&x, &y, &bud)));
    }

    #[test]
    fn pairing(a in near_tree(), b in near_tree(), c in near_tree(), d in near_tree()) {
        let bud = budget();
        let same = decided(eq_v(&pair_v(&set(&a), &set(&b)), &pair_v(&set(&c), &set(&d)), &bud));
        prop_assert_eq!(same, canon(&a) == canon(&c) && canon(&b) == canon(&d));
    }

    #[test]
    fn unpair_inverts_pair(a in tree(), b in tree()) {
        let bud = budget();
        let (x, y) = unpair_v(&pair_v(&set(&a), &set(&b)), &bud).unwrap();
        prop_assert!(eq_v(&x, &set(&a), &bud).is_holds());
        prop_assert!(eq_v(&y, &set(&b), &bud).is_holds());
    }

    #[test]
    fn squash_is_zero_or_one(a in tree()) {
        let bud = budget();
        let want = if a.0.is_empty() { numeral(0) } else { numeral(1) };
        prop_assert!(eq_v(&sq_v(&set(&a)), &want, &bud).is_holds());
    }

    #[test]
    fn sums_tag_their_sides(a in tree(), b in tree(), x in near_tree()) {
        let bud = budget();
        let s = sum_v(&set(&a), &set(&b));
        let left = pair_v(&numeral(0), &set(&x));
        let right = pair_v(&numeral(1), &set(&x));
        let want_l = a.0.iter().any(|c| canon(c) == canon(&x));
        let want_r = b.0.iter().any(|c| canon(c) == canon(&x));
        prop_assert_eq!(decided(mem_v(&left, &s, &bud)), want_l);
        prop_assert_eq!(decided(mem_v(&right, &s, &bud)), want_r);
    }

    #[test]
    fn literals_round_trip(a in tree()) {
        let x = set(&a);
        let back = literal::parse(&literal::print(&x)).unwrap();
        prop_assert!(eq_v(&x, &back, &budget()).is_holds());
    }

    #[test]
    fn structural_equality_implies_equal_digests(a in tree()) {
        let (x, y) = (set(&a), set(&a));
        prop_assert!(x.structurally_equal(&y));
        prop_assert_eq!(x.digest(), y.digest());
    }

    /// More fuel never flips a definitive verdict, and a small budget is
    /// never wrong, only undecided.
    #[test]
    fn fuel_monotone(a in tree(), b in tree(), fuel in 0u64..40) {
        let small = eq_v(&set(&a), &set(&b), &Budget::new(fuel, 16));
        let big = eq_v(&set(&a), &set(&b), &Budget::new(100_000, 16));
        let truth = canon(&a) == canon(&b);
        prop_assert_eq!(decided(big), truth);
        match small {
            Verdict::Holds(_) => prop_assert!(truth),
            Verdict::Fails(_) => prop_assert!(!truth),
            Verdict::Unknown(_) => {}
        }
    }
}

#[test]
fn numerals_are_distinct() {
    let b = budget();
    for m in 0..=32 {
        for n in 0..=32 {
            assert_eq!(eq_v(&numeral(m), &numeral(n), &b).is_holds(), m == n);
        }
    }
}
