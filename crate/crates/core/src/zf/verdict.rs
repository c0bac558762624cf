use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{Key, VSet};

/// Default recursion budget for a single top-level equality or membership question.
pub const DEFAULT_FUEL: u64 = 10_000;
/// Default numeral probe limit for quantifications over infinite index types.
pub const DEFAULT_NAT_BOUND: u64 = 16;

/// Why a check stopped short of a definitive answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Incomplete {
    pub fuel: u64,
    pub nat_bound: u64,
    /// Every probe up to `nat_bound` passed and nothing else was inconclusive.
    pub bounded: bool,
}

/// Three-valued answer to a semantic question.
///
/// `Holds` and `Fails` are definitive: no larger budget can change them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds(Vec<Key>),
    Fails(String),
    Unknown(Incomplete),
}

impl Verdict {
    pub fn holds() -> Verdict {
        Verdict::Holds(Vec::new())
    }

    pub fn witness(key: Key) -> Verdict {
        Verdict::Holds(vec![key])
    }

    pub fn fails(reason: impl Into<String>) -> Verdict {
        Verdict::Fails(reason.into())
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn is_definitive(&self) -> bool {
        !self.is_unknown()
    }

    /// Holds, or failed to be refuted by any probe within the numeral bound.
    pub fn passes(&self) -> bool {
        match self {
            Verdict::Holds(_) => true,
            Verdict::Unknown(i) => i.bounded,
            Verdict::Fails(_) => false,
        }
    }

    pub fn first_witness(&self) -> Option<&Key> {
        match self {
            Verdict::Holds(w) => w.first(),
            _ => None,
        }
    }

    /// Conjunction. A failure on either side wins; otherwise incompleteness is kept.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails(r), _) | (_, Verdict::Fails(r)) => Verdict::Fails(r),
            (Verdict::Unknown(a), Verdict::Unknown(b)) => Verdict::Unknown(Incomplete {
                fuel: a.fuel.max(b.fuel),
                nat_bound: a.nat_bound.max(b.nat_bound),
                bounded: a.bounded && b.bounded,
            }),
            (Verdict::Unknown(a), _) | (_, Verdict::Unknown(a)) => Verdict::Unknown(a),
            (Verdict::Holds(mut a), Verdict::Holds(b)) => {
                a.extend(b);
                Verdict::Holds(a)
            }
        }
    }

    /// Lazy conjunction: `next` is not evaluated once `self` has failed.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        if self.is_fails() {
            self
        } else {
            self.and(next())
        }
    }

    /// Negation of a definitive verdict; `Unknown` stays unknown (and loses boundedness).
    pub fn negate(self, reason: impl Into<String>) -> Verdict {
        match self {
            Verdict::Holds(_) => Verdict::Fails(reason.into()),
            Verdict::Fails(_) => Verdict::holds(),
            Verdict::Unknown(i) => Verdict::Unknown(Incomplete { bounded: false, ..i }),
        }
    }

    /// Marks the verdict as resting on a truncated quantification.
    pub fn bounded_by(self, budget: &Budget) -> Verdict {
        match self {
            Verdict::Holds(_) => Verdict::Unknown(budget.bounded()),
            other => other,
        }
    }

    /// Short label used in reports: `holds`, `holds-bounded(n)`, `fails`, `unknown(fuel)`.
    pub fn label(&self) -> String {
        match self {
            Verdict::Holds(_) => "holds".into(),
            Verdict::Fails(_) => "fails".into(),
            Verdict::Unknown(i) if i.bounded => format!("holds-bounded({})", i.nat_bound),
            Verdict::Unknown(i) => format!("unknown({})", i.fuel),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Fails(r) => write!(f, "fails: {r}"),
            other => write!(f, "{}", other.label()),
        }
    }
}

/// Conjunction over a sequence, stopping at the first failure.
pub fn all_of<I>(items: I) -> Verdict
where
    I: IntoIterator<Item = Verdict>,
{
    let mut acc = Verdict::holds();
    for v in items {
        acc = acc.and(v);
        if acc.is_fails() {
            break;
        }
    }
    acc
}

type CacheEntry = (VSet, VSet, bool, u64);

/// Memo of definitive equality verdicts, keyed by the digests of both sides.
///
/// Entries keep the sets themselves so a hit is confirmed structurally before use.
#[derive(Default)]
pub struct VerdictCache {
    map: HashMap<(u64, u64), Vec<CacheEntry>>,
    len: usize,
}

const CACHE_LIMIT: usize = 1 << 20;

impl VerdictCache {
    /// Cached answer and the fuel it cost.
    pub(crate) fn get(&self, x: &VSet, y: &VSet) -> Option<(bool, u64)> {
        let bucket = self.map.get(&(x.digest(), y.digest()))?;
        bucket
            .iter()
            .find(|(a, b, _, _)| a.structurally_equal(x) && b.structurally_equal(y))
            .map(|e| (e.2, e.3))
    }

    pub(crate) fn insert(&mut self, x: &VSet, y: &VSet, equal: bool, cost: u64) {
        if self.len >= CACHE_LIMIT {
            self.map.clear();
            self.len = 0;
        }
        self.map
            .entry((x.digest(), y.digest()))
            .or_default()
            .push((x.clone(), y.clone(), equal, cost));
        self.len += 1;
    }
}

/// Computation budget for semantic checks.
///
/// `fuel` bounds the recursive equality steps of one top-level question and
/// `nat_bound` the numeral probes used on infinite index types. Clones share
/// the verdict cache, which only ever holds definitive answers.
#[derive(Clone)]
pub struct Budget {
    pub fuel: u64,
    pub nat_bound: u64,
    cache: Arc<Mutex<VerdictCache>>,
}

impl Budget {
    pub fn new(fuel: u64, nat_bound: u64) -> Budget {
        Budget {
            fuel,
            nat_bound,
            cache: Arc::new(Mutex::new(VerdictCache::default())),
        }
    }

    /// Same limits, fresh cache.
    pub fn detached(&self) -> Budget {
        Budget::new(self.fuel, self.nat_bound)
    }

    pub fn with_fuel(&self, fuel: u64) -> Budget {
        Budget::new(fuel, self.nat_bound)
    }

    pub fn exhausted(&self) -> Incomplete {
        Incomplete {
            fuel: self.fuel,
            nat_bound: self.nat_bound,
            bounded: false,
        }
    }

    pub fn bounded(&self) -> Incomplete {
        Incomplete {
            fuel: self.fuel,
            nat_bound: self.nat_bound,
            bounded: true,
        }
    }

    pub fn unknown(&self) -> Verdict {
        Verdict::Unknown(self.exhausted())
    }

    pub(crate) fn cache(&self) -> std::sync::MutexGuard<'_, VerdictCache> {
        self.cache.lock().unwrap_or_else(|e| e.into_inner())
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(DEFAULT_FUEL, DEFAULT_NAT_BOUND)
    }
}

impl fmt::Debug for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Budget")
            .field("fuel", &self.fuel)
            .field("nat_bound", &self.nat_bound)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_prefers_failure_then_incompleteness() {
        let b = Budget::default();
        let u = Verdict::Unknown(b.bounded());
        assert!(Verdict::holds().and(Verdict::fails("x")).is_fails());
        assert!(u.clone().and(Verdict::fails("x")).is_fails());
        assert_eq!(Verdict::holds().and(u.clone()), u);
        let mixed = u.and(b.unknown());
        assert!(matches!(mixed, Verdict::Unknown(i) if !i.bounded));
    }

    #[test]
    fn labels() {
        let b = Budget::new(7, 3);
        assert_eq!(Verdict::holds().label(), "holds");
        assert_eq!(Verdict::Unknown(b.bounded()).label(), "holds-bounded(3)");
        assert_eq!(b.unknown().label(), "unknown(7)");
    }
}
