//! Iterative sets `sup(A, f)` and the set-theoretic constructions on them.

mod bisim;
mod construct;
mod key;
pub mod literal;
mod verdict;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::universe::{self, UEnv};

pub use bisim::{eq_v, mem_v, numeral_of, numeral_verdict, subset_v};
pub use construct::{
    id_v, inl_v, inr_v, natv, numeral, pair_v, pi_v, sigma_v, sq_v, sum_v, unpair_v, VFamily, PI_TABLE_LIMIT,
};
pub use key::{atoms, Key};
pub use verdict::{all_of, Budget, Incomplete, Verdict, DEFAULT_FUEL, DEFAULT_NAT_BOUND};

/// Index type of a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KeySpace {
    /// Sorted, duplicate-free keys.
    Finite(Vec<Key>),
    /// `numeral(0), numeral(1), ...`
    Naturals,
    /// Well-founded code trees of a small universe.
    Trees(UEnv),
    /// Keys produced by a lazy generator.
    Generated,
}

impl KeySpace {
    pub fn finite(mut keys: Vec<Key>) -> KeySpace {
        keys.sort();
        keys.dedup();
        KeySpace::Finite(keys)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, KeySpace::Finite(_))
    }
}

/// Set-theoretic rank, used to refute equalities cheaply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank {
    Fin(u64),
    /// At least omega.
    Infinite,
    /// Not known for a lazily generated set.
    Unknown,
}

impl Rank {
    fn succ_of_max(ranks: impl IntoIterator<Item = Rank>) -> Rank {
        let mut best = 0;
        let mut any = false;
        for r in ranks {
            match r {
                Rank::Fin(n) => {
                    best = best.max(n);
                    any = true;
                }
                Rank::Infinite => return Rank::Infinite,
                Rank::Unknown => return Rank::Unknown,
            }
        }
        if any {
            Rank::Fin(best + 1)
        } else {
            Rank::Fin(0)
        }
    }

    /// Whether two ranks are known to differ.
    pub fn refutes(self, other: Rank) -> bool {
        match (self, other) {
            (Rank::Fin(a), Rank::Fin(b)) => a != b,
            (Rank::Fin(_), Rank::Infinite) | (Rank::Infinite, Rank::Fin(_)) => true,
            _ => false,
        }
    }
}

/// Lazy branching for sets over infinite (or very large) index types.
///
/// `describe` must determine the set: two generators with the same
/// description produce the same keys and children.
pub trait Generator: Send + Sync {
    fn describe(&self) -> String;
    fn contains(&self, key: &Key) -> bool;
    /// Keys in a fixed order, truncated by the probe bound; `true` when complete.
    fn keys_up_to(&self, bound: u64) -> (Vec<Key>, bool);
    fn child(&self, key: &Key) -> Option<VSet>;
    fn rank(&self) -> Rank {
        Rank::Unknown
    }
    /// Decides membership without enumerating keys, when the construction allows it.
    fn member(&self, _x: &VSet, _budget: &Budget) -> Option<Verdict> {
        None
    }
    /// A set every child is equal to, when the construction guarantees one.
    fn uniform_child(&self) -> Option<VSet> {
        None
    }
}

#[derive(Clone)]
pub enum ChildMap {
    Table(Vec<(Key, VSet)>),
    /// Child at `numeral(n)` is `nV(n)`.
    NumeralGen,
    /// Child at each code tree is its embedding.
    UnivGen(UEnv),
    Rule(Arc<dyn Generator>),
}

impl fmt::Debug for ChildMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChildMap::Table(t) => f.debug_tuple("Table").field(t).finish(),
            ChildMap::NumeralGen => write!(f, "NumeralGen"),
            ChildMap::UnivGen(e) => write!(f, "UnivGen({})", e.level),
            ChildMap::Rule(g) => write!(f, "Rule({})", g.describe()),
        }
    }
}

struct Node {
    space: KeySpace,
    children: ChildMap,
    rank: OnceLock<Rank>,
    digest: OnceLock<u64>,
}

/// An iterative set `sup(A, f)`; cheap to clone.
#[derive(Clone)]
pub struct VSet(Arc<Node>);

impl fmt::Debug for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", literal::print(self))
    }
}

impl fmt::Display for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", literal::print(self))
    }
}

/// `sup(space, children)`.
pub fn mk_sup(space: KeySpace, children: ChildMap) -> Result<VSet> {
    match (&space, &children) {
        (KeySpace::Finite(ks), ChildMap::Table(t)) => {
            if ks.len() != t.len() || ks.iter().zip(t).any(|(k, (tk, _))| k != tk) {
                return Err(Error::DomainMismatch);
            }
        }
        (KeySpace::Naturals, ChildMap::NumeralGen) => {}
        (KeySpace::Trees(a), ChildMap::UnivGen(b)) if a == b => {}
        (KeySpace::Generated, ChildMap::Rule(_)) => {}
        _ => return Err(Error::DomainMismatch),
    }
    Ok(VSet::raw(space, children))
}

impl VSet {
    fn raw(space: KeySpace, children: ChildMap) -> VSet {
        VSet(Arc::new(Node {
            space,
            children,
            rank: OnceLock::new(),
            digest: OnceLock::new(),
        }))
    }

    /// Set from a child table; keys are sorted, a repeated key keeps its first child.
    pub fn from_table(mut table: Vec<(Key, VSet)>) -> VSet {
        table.sort_by(|a, b| a.0.cmp(&b.0));
        table.dedup_by(|b, a| a.0 == b.0);
        let keys = table.iter().map(|(k, _)| k.clone()).collect();
        VSet::raw(KeySpace::Finite(keys), ChildMap::Table(table))
    }

    /// Set whose children are `xs`, indexed by atoms in order.
    pub fn from_children(xs: Vec<VSet>) -> VSet {
        VSet::from_table(
            xs.into_iter()
                .enumerate()
                .map(|(i, x)| (Key::Atom(i as u64), x))
                .collect(),
        )
    }

    pub fn lazy(generator: Arc<dyn Generator>) -> VSet {
        VSet::raw(KeySpace::Generated, ChildMap::Rule(generator))
    }

    pub fn empty() -> VSet {
        static EMPTY: OnceLock<VSet> = OnceLock::new();
        EMPTY.get_or_init(|| VSet::from_table(Vec::new())).clone()
    }

    pub fn singleton(x: VSet) -> VSet {
        VSet::from_children(vec![x])
    }

    pub fn space(&self) -> &KeySpace {
        &self.0.space
    }

    pub fn children(&self) -> &ChildMap {
        &self.0.children
    }

    pub fn table(&self) -> Option<&[(Key, VSet)]> {
        match &self.0.children {
            ChildMap::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.table().is_some()
    }

    pub fn is_natv(&self) -> bool {
        matches!(self.0.children, ChildMap::NumeralGen)
    }

    pub fn ptr_eq(&self, other: &VSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn contains_key(&self, key: &Key) -> bool {
        match &self.0.children {
            ChildMap::Table(t) => t.binary_search_by(|(k, _)| k.cmp(key)).is_ok(),
            ChildMap::NumeralGen => matches!(key, Key::Numeral(_)),
            ChildMap::UnivGen(env) => universe::is_tree_key(key, *env),
            ChildMap::Rule(g) => g.contains(key),
        }
    }

    /// `self ▶ key`.
    pub fn child(&self, key: &Key) -> Result<VSet> {
        let found = match &self.0.children {
            ChildMap::Table(t) => t.binary_search_by(|(k, _)| k.cmp(key)).ok().map(|i| t[i].1.clone()),
            ChildMap::NumeralGen => match key {
                Key::Numeral(n) => Some(numeral(*n)),
                _ => None,
            },
            ChildMap::UnivGen(env) => universe::tree_child(key, *env),
            ChildMap::Rule(g) => g.child(key),
        };
        found.ok_or_else(|| Error::KeyOutOfRange(key.clone()))
    }

    /// Keys in order, truncated at the probe bound for infinite spaces.
    pub fn keys_up_to(&self, bound: u64) -> (Vec<Key>, bool) {
        match &self.0.children {
            ChildMap::Table(t) => (t.iter().map(|(k, _)| k.clone()).collect(), true),
            ChildMap::NumeralGen => ((0..=bound).map(Key::Numeral).collect(), false),
            ChildMap::UnivGen(env) => (universe::sample_tree_keys(*env, bound), false),
            ChildMap::Rule(g) => g.keys_up_to(bound),
        }
    }

    /// Children paired with their keys, truncated as in `keys_up_to`.
    pub fn members_up_to(&self, bound: u64) -> (Vec<(Key, VSet)>, bool) {
        if let Some(t) = self.table() {
            return (t.to_vec(), true);
        }
        let (keys, complete) = self.keys_up_to(bound);
        let members = keys
            .into_iter()
            .filter_map(|k| self.child(&k).ok().map(|c| (k, c)))
            .collect();
        (members, complete)
    }

    pub fn rank(&self) -> Rank {
        *self.0.rank.get_or_init(|| match &self.0.children {
            ChildMap::Table(t) => Rank::succ_of_max(t.iter().map(|(_, c)| c.rank())),
            ChildMap::NumeralGen | ChildMap::UnivGen(_) => Rank::Infinite,
            ChildMap::Rule(g) => g.rank(),
        })
    }

    /// Structural hash; equal for identical presentations, not a bisimulation invariant.
    pub fn digest(&self) -> u64 {
        *self.0.digest.get_or_init(|| {
            let mut h = DefaultHasher::new();
            match &self.0.children {
                ChildMap::Table(t) => {
                    0u8.hash(&mut h);
                    for (k, c) in t {
                        k.hash(&mut h);
                        c.digest().hash(&mut h);
                    }
                }
                ChildMap::NumeralGen => 1u8.hash(&mut h),
                ChildMap::UnivGen(env) => {
                    2u8.hash(&mut h);
                    env.level.hash(&mut h);
                }
                ChildMap::Rule(g) => {
                    3u8.hash(&mut h);
                    g.describe().hash(&mut h);
                }
            }
            h.finish()
        })
    }

    /// Identical presentation (same keys, structurally identical children).
    pub fn structurally_equal(&self, other: &VSet) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        if self.digest() != other.digest() {
            return false;
        }
        match (&self.0.children, &other.0.children) {
            (ChildMap::Table(a), ChildMap::Table(b)) => {
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|((ka, ca), (kb, cb))| ka == kb && ca.structurally_equal(cb))
            }
            (ChildMap::NumeralGen, ChildMap::NumeralGen) => true,
            (ChildMap::UnivGen(a), ChildMap::UnivGen(b)) => a == b,
            (ChildMap::Rule(a), ChildMap::Rule(b)) => a.describe() == b.describe(),
            _ => false,
        }
    }

    /// Description of a lazy generator, if this set is one.
    pub fn generator(&self) -> Option<&Arc<dyn Generator>> {
        match &self.0.children {
            ChildMap::Rule(g) => Some(g),
            _ => None,
        }
    }
}

pub fn index_of(v: &VSet) -> KeySpace {
    v.space().clone()
}

pub fn elem_at(v: &VSet, k: &Key) -> Result<VSet> {
    v.child(k)
}

pub fn rank_of(v: &VSet) -> Rank {
    v.rank()
}

pub fn digest_of(v: &VSet) -> u64 {
    v.digest()
}

/// Generic lazy set from closures; the description names the construction.
pub struct FnGenerator<C, K, E>
where
    C: Fn(&Key) -> bool + Send + Sync,
    K: Fn(u64) -> (Vec<Key>, bool) + Send + Sync,
    E: Fn(&Key) -> Option<VSet> + Send + Sync,
{
    pub description: String,
    pub contains: C,
    pub keys: K,
    pub child: E,
    pub rank: Rank,
}

impl<C, K, E> Generator for FnGenerator<C, K, E>
where
    C: Fn(&Key) -> bool + Send + Sync,
    K: Fn(u64) -> (Vec<Key>, bool) + Send + Sync,
    E: Fn(&Key) -> Option<VSet> + Send + Sync,
{
    fn describe(&self) -> String {
        self.description.clone()
    }
    fn contains(&self, key: &Key) -> bool {
        (self.contains)(key)
    }
    fn keys_up_to(&self, bound: u64) -> (Vec<Key>, bool) {
        (self.keys)(bound)
    }
    fn child(&self, key: &Key) -> Option<VSet> {
        if (self.contains)(key) {
            (self.child)(key)
        } else {
            None
        }
    }
    fn rank(&self) -> Rank {
        self.rank
    }
}

/// Interned numerals so repeated numerals share structure.
fn numeral_table() -> &'static Mutex<Vec<VSet>> {
    static TABLE: OnceLock<Mutex<Vec<VSet>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![VSet::empty()]))
}

pub(crate) fn interned_numeral(n: u64) -> VSet {
    const INTERN_LIMIT: u64 = 4096;
    let mut table = numeral_table().lock().unwrap_or_else(|e| e.into_inner());
    if n < INTERN_LIMIT {
        while table.len() as u64 <= n {
            let prev = table.last().cloned().unwrap_or_else(VSet::empty);
            table.push(VSet::singleton(prev));
        }
        return table[n as usize].clone();
    }
    let mut v = table.last().cloned().unwrap_or_else(VSet::empty);
    for _ in table.len() as u64 - 1..n {
        v = VSet::singleton(v);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mk_sup_checks_domain() {
        let e = mk_sup(KeySpace::Finite(vec![]), ChildMap::Table(vec![])).unwrap();
        assert_eq!(e.rank(), Rank::Fin(0));
        let one = mk_sup(
            KeySpace::Finite(vec![Key::Atom(0)]),
            ChildMap::Table(vec![(Key::Atom(0), VSet::empty())]),
        )
        .unwrap();
        assert_eq!(one.rank(), Rank::Fin(1));
        let bad = mk_sup(KeySpace::Finite(vec![Key::Atom(1)]), ChildMap::Table(vec![]));
        assert_eq!(bad.unwrap_err(), Error::DomainMismatch);
        assert!(mk_sup(KeySpace::Naturals, ChildMap::NumeralGen).unwrap().is_natv());
        assert!(mk_sup(KeySpace::Finite(vec![]), ChildMap::NumeralGen).is_err());
    }

    #[test]
    fn index_and_elements() {
        let one = VSet::singleton(VSet::empty());
        assert_eq!(index_of(&one), KeySpace::Finite(vec![Key::Atom(0)]));
        let two = elem_at(&natv(), &Key::Numeral(2)).unwrap();
        assert!(two.structurally_equal(&VSet::singleton(one.clone())));
        assert_eq!(
            elem_at(&VSet::empty(), &Key::Atom(0)).unwrap_err(),
            Error::KeyOutOfRange(Key::Atom(0))
        );
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_of(&VSet::empty()), Rank::Fin(0));
        for n in 0..=10 {
            assert_eq!(rank_of(&numeral(n)), Rank::Fin(n));
        }
        assert_eq!(rank_of(&natv()), Rank::Infinite);
        assert_eq!(rank_of(&VSet::singleton(natv())), Rank::Infinite);
    }

    #[test]
    fn digests_follow_structure() {
        let a = VSet::from_children(vec![VSet::empty(), numeral(1)]);
        let b = VSet::from_children(vec![VSet::empty(), VSet::singleton(VSet::empty())]);
        assert_eq!(digest_of(&a), digest_of(&b));
        assert!(a.structurally_equal(&b));
        let c = VSet::from_children(vec![numeral(1), VSet::empty()]);
        assert!(!a.structurally_equal(&c));
    }
}
