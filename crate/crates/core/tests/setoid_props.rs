//! κ, families and universe decoding against counting oracles.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vml_core::setoid::{
    check_equivalence, check_family_laws, check_kappa_pi_iso, check_kappa_sigma_iso, check_vfamily_ext, kappa, Family,
    Setoid,
};
use vml_core::universe::{check_mem_u, decode, fin_code, CodeFam, UCode, UEnv};
use vml_core::zf::{atoms, eq_v, numeral, pi_v, sigma_v, Budget, Key, KeySpace, VFamily, VSet};

fn budget() -> Budget {
    Budget::default()
}

/// Pool of small sets: numerals 0..4 and one two-member set, presented twice.
fn pool() -> Vec<VSet> {
    let mut p: Vec<VSet> = (0..4).map(numeral).collect();
    p.push(VSet::from_children(vec![numeral(0), numeral(2)]));
    p.push(VSet::from_children(vec![numeral(2), numeral(0), numeral(0)]));
    p
}

/// Index of the pool member a set equals; pool entries 4 and 5 coincide.
fn class_of(i: usize) -> usize {
    if i == 5 {
        4
    } else {
        i
    }
}

fn distinct(classes: impl IntoIterator<Item = usize>) -> usize {
    let mut v: Vec<usize> = classes.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// A finite set given by pool indices.
fn from_indices(ix: &[usize]) -> VSet {
    let p = pool();
    VSet::from_table(
        atoms(ix.len())
            .into_iter()
            .zip(ix.iter().map(|&i| p[i].clone()))
            .collect(),
    )
}

/// Base indices and, per base class, fiber indices.
fn extensional_family() -> impl Strategy<Value = (Vec<usize>, Vec<Vec<usize>>)> {
    (
        prop::collection::vec(0usize..6, 0..5),
        prop::collection::vec(prop::collection::vec(0usize..6, 0..4), 6),
    )
}

fn build(base: &[usize], fibers: &[Vec<usize>]) -> (VSet, VFamily) {
    let a = from_indices(base);
    let entries = atoms(base.len())
        .into_iter()
        .zip(base)
        .map(|(k, &i)| (k, from_indices(&fibers[class_of(i)])))
        .collect();
    let g = VFamily::table(&a, entries).unwrap();
    (a, g)
}

proptest! {
    #[test]
    fn kappa_is_an_equivalence_with_oracle_classes(ix in prop::collection::vec(0usize..6, 0..7)) {
        let s = kappa(&from_indices(&ix));
        let b = budget();
        prop_assert!(check_equivalence(&s, &b).is_holds());
        prop_assert_eq!(s.classes(&b).unwrap().len(), distinct(ix.iter().map(|&i| class_of(i))));
    }

    #[test]
    fn kappa_commutes_with_sigma((base, fibers) in extensional_family()) {
        let (a, g) = build(&base, &fibers);
        let b = budget();
        prop_assert!(check_kappa_sigma_iso(&a, &g, &b).is_holds());
        // classes of κ(σ(a, g)): one per base class and fiber class
        let want: usize = {
            let mut cs: Vec<usize> = base.iter().map(|&i| class_of(i)).collect();
            cs.sort_unstable();
            cs.dedup();
            cs.iter().map(|&c| distinct(fibers[c].iter().map(|&i| class_of(i)))).sum()
        };
        prop_assert_eq!(kappa(&sigma_v(&a, &g)).classes(&b).unwrap().len(), want);
    }

    #[test]
    fn kappa_commutes_with_pi((base, fibers) in extensional_family()) {
        let (a, g) = build(&base, &fibers);
        let b = budget();
        prop_assert!(check_kappa_pi_iso(&a, &g, &b).is_holds());
        // extensional functions: one choice of fiber class per base class
        let want: usize = {
            let mut cs: Vec<usize> = base.iter().map(|&i| class_of(i)).collect();
            cs.sort_unstable();
            cs.dedup();
            cs.iter().map(|&c| distinct(fibers[c].iter().map(|&i| class_of(i)))).product()
        };
        let p = pi_v(&a, &g, &b).unwrap();
        prop_assert_eq!(kappa(&p).classes(&b).unwrap().len(), want);
    }

    #[test]
    fn kappa_families_obey_the_laws((base, fibers) in extensional_family()) {
        let (_, g) = build(&base, &fibers);
        let b = budget();
        prop_assert!(check_vfamily_ext(&g, &b).is_holds());
        prop_assert!(check_family_laws(&Family::kappa(&g), &b).is_holds());
    }

    /// Equal base members with unequal fibers break extensionality.
    #[test]
    fn non_extensional_tables_are_caught(f1 in prop::collection::vec(0usize..6, 0..4), f2 in prop::collection::vec(0usize..6, 0..4)) {
        let a = from_indices(&[4, 5]);
        let g = VFamily::table(&a, vec![(Key::Atom(0), from_indices(&f1)), (Key::Atom(1), from_indices(&f2))]).unwrap();
        let b = budget();
        let equal = distinct(f1.iter().map(|&i| class_of(i))) == distinct(f2.iter().map(|&i| class_of(i)))
            && f1.iter().all(|&i| f2.iter().any(|&j| class_of(i) == class_of(j)));
        prop_assert_eq!(check_vfamily_ext(&g, &b).is_holds(), equal);
    }

    #[test]
    fn partitions_have_their_blocks(sizes in prop::collection::vec(1usize..4, 0..5)) {
        let mut next = 0u64;
        let blocks: Vec<Vec<Key>> = sizes
            .iter()
            .map(|&n| (0..n).map(|_| { next += 1; Key::Atom(next) }).collect())
            .collect();
        let s = Setoid::partition(blocks.clone());
        let b = budget();
        prop_assert!(check_equivalence(&s, &b).is_holds());
        prop_assert_eq!(s.classes(&b).unwrap(), blocks);
    }

    #[test]
    fn decoded_sizes_match_counting(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (code, n) = random_code(&mut rng, 3);
        match decode(&code, UEnv::new(0)).unwrap() {
            KeySpace::Finite(ks) => prop_assert_eq!(ks.len(), n, "{}", code),
            other => prop_assert!(false, "{code} decoded to {other:?}"),
        }
    }

    /// Finite sets of pool members are in V_0 with a certificate of any
    /// size at least their number of classes.
    #[test]
    fn finite_sets_have_certificates(ix in prop::collection::vec(0usize..6, 0..5), extra in 0usize..3) {
        let x = from_indices(&ix);
        let classes = distinct(ix.iter().map(|&i| class_of(i)));
        let b = budget();
        if classes == 0 {
            prop_assert!(check_mem_u(&x, 0, &UCode::N0, &b).is_holds());
        } else {
            prop_assert!(check_mem_u(&x, 0, &fin_code(classes + extra), &b).is_holds());
            if classes > 1 {
                prop_assert!(check_mem_u(&x, 0, &fin_code(classes - 1), &b).is_fails());
            }
        }
    }
}

/// A finite code and the number of keys it should decode to.
fn random_code(rng: &mut ChaCha8Rng, depth: u32) -> (UCode, usize) {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        let n = rng.gen_range(0..4);
        return (fin_code(n), n);
    }
    match rng.gen_range(0..4) {
        0 => {
            let (a, m) = random_code(rng, depth - 1);
            let (b, n) = random_code(rng, depth - 1);
            (UCode::plus(a, b), m + n)
        }
        1 => {
            let (a, m) = random_code(rng, depth - 1);
            let (b, n) = random_code(rng, depth - 1);
            (UCode::times(a, b), m * n)
        }
        2 => {
            // dependent sum over a table family
            let (a, _) = random_code(rng, depth - 1);
            let KeySpace::Finite(keys) = decode(&a, UEnv::new(0)).unwrap() else {
                unreachable!()
            };
            let mut total = 0;
            let mut entries = Vec::new();
            for k in keys {
                let (c, n) = random_code(rng, depth - 1);
                total += n;
                entries.push((k, c));
            }
            (UCode::sigma(a, CodeFam::table(entries)), total)
        }
        _ => {
            // functions into a small constant codomain
            let (a, m) = random_code(rng, (depth - 1).min(1));
            let n = rng.gen_range(0..3);
            (UCode::pi(a, CodeFam::constant(fin_code(n))), n.pow(m as u32))
        }
    }
}

#[test]
fn equal_presentations_have_equal_kappa_sigma() {
    let b = budget();
    let (a1, g1) = build(&[4, 0], &vec![vec![1, 2]; 6]);
    let (a2, g2) = build(&[5, 0, 0], &vec![vec![2, 1, 1]; 6]);
    assert!(eq_v(&sigma_v(&a1, &g1), &sigma_v(&a2, &g2), &b).is_holds());
}
