//! Bisimulation equality, membership and inclusion with explicit budgets.

use super::{literal, numeral, Budget, ChildMap, Incomplete, Key, Rank, VSet, Verdict};
use crate::universe;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tri {
    T,
    F,
    U(Incomplete),
}

impl Tri {
    fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::F, _) | (_, Tri::F) => Tri::F,
            (Tri::U(a), Tri::U(b)) => Tri::U(merge(a, b)),
            (Tri::U(a), Tri::T) | (Tri::T, Tri::U(a)) => Tri::U(a),
            (Tri::T, Tri::T) => Tri::T,
        }
    }

    fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::T, _) | (_, Tri::T) => Tri::T,
            (Tri::U(a), Tri::U(b)) => Tri::U(Incomplete {
                bounded: a.bounded || b.bounded,
                ..merge(a, b)
            }),
            (Tri::U(a), Tri::F) | (Tri::F, Tri::U(a)) => Tri::U(a),
            (Tri::F, Tri::F) => Tri::F,
        }
    }
}

/// Probed members of a set, collapsed to a single one when the generator
/// guarantees all children are equal; the collapsed list is complete.
fn class_members(x: &VSet, bound: u64) -> (Vec<(Key, VSet)>, bool) {
    let (ms, complete) = x.members_up_to(bound);
    if !complete && !ms.is_empty() {
        if let Some(u) = x.generator().and_then(|g| g.uniform_child()) {
            return (vec![(ms[0].0.clone(), u)], true);
        }
    }
    (ms, complete)
}

fn merge(a: Incomplete, b: Incomplete) -> Incomplete {
    Incomplete {
        fuel: a.fuel.max(b.fuel),
        nat_bound: a.nat_bound.max(b.nat_bound),
        bounded: a.bounded && b.bounded,
    }
}

/// State of one top-level question: the fuel left to spend.
pub(crate) struct Run<'a> {
    budget: &'a Budget,
    remaining: u64,
}

impl<'a> Run<'a> {
    pub(crate) fn new(budget: &'a Budget) -> Run<'a> {
        Run {
            budget,
            remaining: budget.fuel,
        }
    }

    fn exhausted(&self) -> Tri {
        Tri::U(self.budget.exhausted())
    }

    fn bounded(&self) -> Tri {
        Tri::U(self.budget.bounded())
    }

    pub(crate) fn eq(&mut self, x: &VSet, y: &VSet, depth: u32) -> Tri {
        if x.ptr_eq(y) {
            return Tri::T;
        }
        if x.rank().refutes(y.rank()) {
            return Tri::F;
        }
        if let (ChildMap::Table(a), ChildMap::Table(b)) = (x.children(), y.children()) {
            if x.structurally_equal(y) {
                return Tri::T;
            }
            return self.eq_tables(x, y, a, b, depth);
        }
        if self.remaining == 0 {
            return self.exhausted();
        }
        self.remaining -= 1;
        match (x.children(), y.children()) {
            (ChildMap::NumeralGen, ChildMap::NumeralGen) => Tri::T,
            (ChildMap::UnivGen(a), ChildMap::UnivGen(b)) => {
                if a == b {
                    Tri::T
                } else {
                    self.exhausted()
                }
            }
            // A finite set has finitely many distinct members; natV and each
            // universe have infinitely many.
            (ChildMap::Table(_), ChildMap::NumeralGen | ChildMap::UnivGen(_))
            | (ChildMap::NumeralGen | ChildMap::UnivGen(_), ChildMap::Table(_)) => Tri::F,
            (ChildMap::Rule(a), ChildMap::Rule(b)) if a.describe() == b.describe() => Tri::T,
            (ChildMap::UnivGen(_), _) | (_, ChildMap::UnivGen(_)) => self.exhausted(),
            (ChildMap::NumeralGen, _) => self.against_natv(y, depth),
            (_, ChildMap::NumeralGen) => self.against_natv(x, depth),
            _ => self.bisim_probed(x, y, depth),
        }
    }

    /// Finite case. Cached answers are charged the fuel they originally cost,
    /// so a hit never answers a question the budget could not have.
    fn eq_tables(&mut self, x: &VSet, y: &VSet, a: &[(Key, VSet)], b: &[(Key, VSet)], depth: u32) -> Tri {
        if depth > 0 {
            if let Some((equal, cost)) = self.budget.cache().get(x, y) {
                if cost > self.remaining {
                    return self.exhausted();
                }
                self.remaining -= cost;
                return if equal { Tri::T } else { Tri::F };
            }
        }
        if self.remaining == 0 {
            return self.exhausted();
        }
        let before = self.remaining;
        self.remaining -= 1;
        let r = self.bisim_tables(a, b, depth);
        if depth > 0 && matches!(r, Tri::T | Tri::F) {
            self.budget.cache().insert(x, y, r == Tri::T, before - self.remaining);
        }
        r
    }

    fn bisim_tables(&mut self, a: &[(Key, VSet)], b: &[(Key, VSet)], depth: u32) -> Tri {
        let m = b.len();
        let mut memo: Vec<Option<Tri>> = vec![None; a.len() * m];
        let mut acc = Tri::T;
        for (i, (_, xa)) in a.iter().enumerate() {
            let mut found = Tri::F;
            for (j, (_, yb)) in b.iter().enumerate() {
                let r = self.eq(xa, yb, depth + 1);
                memo[i * m + j] = Some(r);
                found = found.or(r);
                if found == Tri::T {
                    break;
                }
            }
            acc = acc.and(found);
            if acc == Tri::F {
                return Tri::F;
            }
        }
        for (j, (_, yb)) in b.iter().enumerate() {
            let mut found = Tri::F;
            for (i, (_, xa)) in a.iter().enumerate() {
                let r = match memo[i * m + j] {
                    Some(r) => r,
                    None => self.eq(xa, yb, depth + 1),
                };
                found = found.or(r);
                if found == Tri::T {
                    break;
                }
            }
            acc = acc.and(found);
            if acc == Tri::F {
                return Tri::F;
            }
        }
        acc
    }

    /// `natv` against a lazily generated set: every member must be a numeral,
    /// and every probed numeral must occur.
    fn against_natv(&mut self, other: &VSet, depth: u32) -> Tri {
        let bound = self.budget.nat_bound;
        let (members, complete) = class_members(other, bound);
        let mut seen = vec![false; bound as usize + 1];
        let mut acc = Tri::T;
        for (_, c) in &members {
            match self.numeral(c, depth + 1) {
                Tri::F => return Tri::F,
                Tri::U(i) => acc = acc.and(Tri::U(i)),
                Tri::T => {
                    if let Rank::Fin(n) = c.rank() {
                        if n <= bound {
                            seen[n as usize] = true;
                        }
                    }
                }
            }
        }
        if complete {
            // finitely many members cannot exhaust the numerals
            return Tri::F;
        }
        if seen.iter().all(|s| *s) {
            acc.and(self.bounded())
        } else {
            acc.and(self.exhausted())
        }
    }

    fn bisim_probed(&mut self, x: &VSet, y: &VSet, depth: u32) -> Tri {
        let bound = self.budget.nat_bound;
        let (xs, xc) = class_members(x, bound);
        let (ys, yc) = class_members(y, bound);
        let fwd = self.covered(&xs, &ys, yc, depth);
        if fwd == Tri::F {
            return Tri::F;
        }
        let bwd = self.covered(&ys, &xs, xc, depth);
        let r = fwd.and(bwd);
        if r == Tri::T && !(xc && yc) {
            self.bounded()
        } else {
            r
        }
    }

    /// Every element of `from` equals some element of `to`.
    fn covered(&mut self, from: &[(Key, VSet)], to: &[(Key, VSet)], to_complete: bool, depth: u32) -> Tri {
        let mut acc = Tri::T;
        for (_, a) in from {
            let mut found = Tri::F;
            for (_, b) in to {
                found = found.or(self.eq(a, b, depth + 1));
                if found == Tri::T {
                    break;
                }
            }
            if found == Tri::F && !to_complete {
                found = self.exhausted();
            }
            acc = acc.and(found);
            if acc == Tri::F {
                return Tri::F;
            }
        }
        acc
    }

    /// Whether `x` is some numeral (the one of its rank).
    pub(crate) fn numeral(&mut self, x: &VSet, depth: u32) -> Tri {
        match x.rank() {
            Rank::Fin(r) => self.eq(x, &numeral(r), depth),
            Rank::Infinite => Tri::F,
            Rank::Unknown => self.exhausted(),
        }
    }

    pub(crate) fn mem(&mut self, x: &VSet, alpha: &VSet) -> (Tri, Option<Key>) {
        match alpha.children() {
            ChildMap::NumeralGen => {
                let r = self.numeral(x, 0);
                let w = match (r, x.rank()) {
                    (Tri::T, Rank::Fin(n)) => Some(Key::Numeral(n)),
                    _ => None,
                };
                (r, w)
            }
            ChildMap::Table(t) => {
                let mut acc = Tri::F;
                for (k, c) in t {
                    let r = self.eq(x, c, 0);
                    if r == Tri::T {
                        return (Tri::T, Some(k.clone()));
                    }
                    acc = acc.or(r);
                }
                (acc, None)
            }
            ChildMap::UnivGen(_) | ChildMap::Rule(_) => {
                let bound = self.budget.nat_bound;
                let (members, complete) = class_members(alpha, bound);
                let mut acc = Tri::F;
                for (k, c) in &members {
                    let r = self.eq(x, c, 0);
                    if r == Tri::T {
                        return (Tri::T, Some(k.clone()));
                    }
                    acc = acc.or(r);
                }
                if acc == Tri::F && !complete {
                    acc = self.exhausted();
                }
                (acc, None)
            }
        }
    }
}

fn to_verdict(r: Tri, fail: impl FnOnce() -> String) -> Verdict {
    match r {
        Tri::T => Verdict::holds(),
        Tri::F => Verdict::Fails(fail()),
        Tri::U(i) => Verdict::Unknown(i),
    }
}

/// Bisimulation equality `x =_V y`.
pub fn eq_v(x: &VSet, y: &VSet, budget: &Budget) -> Verdict {
    let r = Run::new(budget).eq(x, y, 0);
    to_verdict(r, || {
        format!("{} is not equal to {}", literal::brief(x), literal::brief(y))
    })
}

/// Membership `x ∈_V alpha`; a positive verdict carries the least witness key.
pub fn mem_v(x: &VSet, alpha: &VSet, budget: &Budget) -> Verdict {
    match alpha.children() {
        ChildMap::UnivGen(env) => return universe::univ_member(x, *env, budget),
        ChildMap::Rule(g) => {
            if let Some(v) = g.member(x, budget) {
                return v;
            }
        }
        _ => {}
    }
    let (r, w) = Run::new(budget).mem(x, alpha);
    match (r, w) {
        (Tri::T, Some(k)) => Verdict::witness(k),
        (r, _) => to_verdict(r, || {
            format!("{} is not a member of {}", literal::brief(x), literal::brief(alpha))
        }),
    }
}

/// Inclusion: every member of `alpha` is a member of `beta`.
pub fn subset_v(alpha: &VSet, beta: &VSet, budget: &Budget) -> Verdict {
    let (members, complete) = class_members(alpha, budget.nat_bound);
    let mut acc = Verdict::holds();
    for (k, c) in members {
        let v = match mem_v(&c, beta, budget) {
            Verdict::Fails(_) => Verdict::Fails(format!(
                "member at {k} of {} is not in {}",
                literal::brief(alpha),
                literal::brief(beta)
            )),
            v => v,
        };
        acc = acc.and(v);
        if acc.is_fails() {
            return acc;
        }
    }
    let acc = match acc {
        Verdict::Holds(_) => Verdict::holds(),
        other => other,
    };
    if complete {
        acc
    } else {
        acc.bounded_by(budget)
    }
}

/// Three-valued numeral recognition.
pub fn numeral_verdict(v: &VSet, budget: &Budget) -> Result<Option<u64>, Incomplete> {
    match Run::new(budget).numeral(v, 0) {
        Tri::T => match v.rank() {
            Rank::Fin(n) => Ok(Some(n)),
            _ => Ok(None),
        },
        Tri::F => Ok(None),
        Tri::U(i) => Err(i),
    }
}

/// The `n` with `v =_V nV(n)`, if there is one and it can be decided.
pub fn numeral_of(v: &VSet, budget: &Budget) -> Option<u64> {
    numeral_verdict(v, budget).ok().flatten()
}

#[cfg(test)]
mod tests {
    use super::super::{natv, pair_v};
    use super::*;

    fn e() -> VSet {
        VSet::empty()
    }
    fn s(xs: Vec<VSet>) -> VSet {
        VSet::from_children(xs)
    }

    #[test]
    fn equality_examples() {
        let b = Budget::default();
        assert!(eq_v(&e(), &e(), &b).is_holds());
        let dup = s(vec![e(), e()]);
        assert!(eq_v(&s(vec![e()]), &dup, &b).is_holds());
        assert!(eq_v(&s(vec![e()]), &e(), &b).is_fails());
        for w in 0..6 {
            let table = s((0..w).map(numeral).collect());
            assert!(eq_v(&natv(), &table, &b).is_fails());
        }
        assert!(eq_v(&natv(), &natv(), &b).is_holds());
    }

    #[test]
    fn membership_examples() {
        let b = Budget::default();
        assert_eq!(mem_v(&e(), &s(vec![e()]), &b), Verdict::witness(Key::Atom(0)));
        assert!(mem_v(&e(), &e(), &b).is_fails());
        assert_eq!(mem_v(&numeral(3), &natv(), &b), Verdict::witness(Key::Numeral(3)));
        assert!(mem_v(&s(vec![e(), numeral(1)]), &natv(), &b).is_fails());
        assert!(mem_v(&natv(), &natv(), &b).is_fails());
    }

    #[test]
    fn least_witness_is_reported() {
        let b = Budget::default();
        let alpha = s(vec![numeral(1), e(), e()]);
        assert_eq!(mem_v(&e(), &alpha, &b), Verdict::witness(Key::Atom(1)));
    }

    #[test]
    fn subset_examples() {
        let b = Budget::default();
        assert!(subset_v(&e(), &numeral(4), &b).is_holds());
        assert!(subset_v(&s(vec![e()]), &s(vec![s(vec![e()])]), &b).is_fails());
        let a = s(vec![e(), numeral(2), pair_v(&e(), &numeral(1))]);
        assert!(subset_v(&a, &a, &b).is_holds());
    }

    #[test]
    fn numeral_recognition() {
        let b = Budget::default();
        assert_eq!(numeral_of(&s(vec![s(vec![e()])]), &b), Some(2));
        assert_eq!(numeral_of(&s(vec![e(), s(vec![e()])]), &b), None);
        assert_eq!(numeral_of(&natv(), &b), None);
    }

    #[test]
    fn squash_of_natv_is_one() {
        let b = Budget::default();
        let sq = crate::zf::sq_v(&crate::zf::natv());
        assert!(eq_v(&sq, &numeral(1), &b).is_holds());
        assert!(eq_v(&numeral(1), &sq, &b).is_holds());
        assert!(eq_v(&sq, &numeral(2), &b).is_fails());
        assert!(eq_v(&sq, &crate::zf::natv(), &b).is_fails());
        assert!(mem_v(&e(), &sq, &b).is_holds());
        assert!(subset_v(&sq, &numeral(1), &b).is_holds());
        assert!(subset_v(&sq, &numeral(2), &b).is_fails());
    }

    #[test]
    fn zero_fuel_is_unknown_but_cheap_refutations_stay_definitive() {
        let b = Budget::new(0, 4);
        assert!(eq_v(&s(vec![e()]), &s(vec![e(), e()]), &b).is_unknown());
        assert!(eq_v(&numeral(1), &numeral(2), &b).is_fails());
        assert!(eq_v(&e(), &e(), &b).is_holds());
    }
}
