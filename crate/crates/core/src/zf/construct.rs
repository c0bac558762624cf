//! Pairs, numerals and the set-theoretic type constructions.

use std::sync::{Arc, OnceLock};

use super::{eq_v, interned_numeral, mem_v, Budget, ChildMap, Generator, Key, KeySpace, Rank, VSet, Verdict};
use crate::error::{Error, Result};

/// Upper bound on the number of function tables `pi_v` will enumerate.
pub const PI_TABLE_LIMIT: usize = 4096;

/// `<a, b> = {{a}, {a, b}}`.
pub fn pair_v(a: &VSet, b: &VSet) -> VSet {
    VSet::from_children(vec![
        VSet::singleton(a.clone()),
        VSet::from_children(vec![a.clone(), b.clone()]),
    ])
}

fn decided(v: Verdict) -> Result<bool> {
    match v {
        Verdict::Holds(_) => Ok(true),
        Verdict::Fails(_) => Ok(false),
        Verdict::Unknown(i) => Err(Error::undecided(i)),
    }
}

/// Representatives of the `=_V` classes among the members of a finite set.
fn classes(v: &VSet, budget: &Budget) -> Result<Vec<VSet>> {
    let (members, complete) = v.members_up_to(budget.nat_bound);
    if !complete {
        return Err(Error::NotAPair);
    }
    let mut reps: Vec<VSet> = Vec::new();
    for (_, c) in members {
        let mut seen = false;
        for r in &reps {
            if decided(eq_v(r, &c, budget))? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(c);
        }
        if reps.len() > 2 {
            return Err(Error::NotAPair);
        }
    }
    Ok(reps)
}

/// Components of an ordered pair, up to `=_V`.
pub fn unpair_v(p: &VSet, budget: &Budget) -> Result<(VSet, VSet)> {
    let outer = classes(p, budget)?;
    match outer.as_slice() {
        [c] => match classes(c, budget)?.as_slice() {
            [a] => Ok((a.clone(), a.clone())),
            _ => Err(Error::NotAPair),
        },
        [c1, c2] => {
            let k1 = classes(c1, budget)?;
            let k2 = classes(c2, budget)?;
            let (single, double) = match (k1.len(), k2.len()) {
                (1, 2) => (k1, k2),
                (2, 1) => (k2, k1),
                _ => return Err(Error::NotAPair),
            };
            let a = single[0].clone();
            if decided(eq_v(&double[0], &a, budget))? {
                Ok((a, double[1].clone()))
            } else if decided(eq_v(&double[1], &a, budget))? {
                Ok((a, double[0].clone()))
            } else {
                Err(Error::NotAPair)
            }
        }
        _ => Err(Error::NotAPair),
    }
}

/// `nV(n)`: `nV(0) = ∅`, `nV(n+1) = {nV(n)}`.
pub fn numeral(n: u64) -> VSet {
    interned_numeral(n)
}

/// `natV = sup(N, nV)`.
pub fn natv() -> VSet {
    static NATV: OnceLock<VSet> = OnceLock::new();
    NATV.get_or_init(|| super::mk_sup(KeySpace::Naturals, ChildMap::NumeralGen).expect("natv is well formed"))
        .clone()
}

type AssignFn = Arc<dyn Fn(&Key) -> Option<VSet> + Send + Sync>;

#[derive(Clone)]
enum Assign {
    Table(Vec<(Key, VSet)>),
    Const(VSet),
    Fn { description: String, f: AssignFn },
}

/// A map `g` from the keys of `base` to sets (`g : κ(base) → 𝕍`).
#[derive(Clone)]
pub struct VFamily {
    pub base: VSet,
    assign: Assign,
}

impl VFamily {
    /// Total table over the (finite) keys of `base`.
    pub fn table(base: &VSet, mut entries: Vec<(Key, VSet)>) -> Result<VFamily> {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let keys = match base.space() {
            KeySpace::Finite(ks) => ks,
            _ => return Err(Error::InfiniteUnsupported("family table".into())),
        };
        if keys.len() != entries.len() || keys.iter().zip(&entries).any(|(k, (e, _))| k != e) {
            return Err(Error::DomainMismatch);
        }
        Ok(VFamily {
            base: base.clone(),
            assign: Assign::Table(entries),
        })
    }

    pub fn constant(base: &VSet, value: VSet) -> VFamily {
        VFamily {
            base: base.clone(),
            assign: Assign::Const(value),
        }
    }

    /// Family given by a rule; `description` must determine the rule.
    pub fn from_fn(
        base: &VSet,
        description: impl Into<String>,
        f: impl Fn(&Key) -> Option<VSet> + Send + Sync + 'static,
    ) -> VFamily {
        VFamily {
            base: base.clone(),
            assign: Assign::Fn {
                description: description.into(),
                f: Arc::new(f),
            },
        }
    }

    /// Builds a table by evaluating `f` on every key when the base is finite,
    /// otherwise keeps `f` as a rule.
    pub fn tabulate(
        base: &VSet,
        description: impl Into<String>,
        f: impl Fn(&Key) -> Option<VSet> + Send + Sync + 'static,
    ) -> Result<VFamily> {
        if let Some(t) = base.table() {
            let mut entries = Vec::with_capacity(t.len());
            for (k, _) in t {
                let v = f(k).ok_or_else(|| Error::KeyOutOfRange(k.clone()))?;
                entries.push((k.clone(), v));
            }
            return VFamily::table(base, entries);
        }
        Ok(VFamily::from_fn(base, description, f))
    }

    pub fn at(&self, key: &Key) -> Result<VSet> {
        if !self.base.contains_key(key) {
            return Err(Error::KeyOutOfRange(key.clone()));
        }
        let found = match &self.assign {
            Assign::Table(t) => t.binary_search_by(|(k, _)| k.cmp(key)).ok().map(|i| t[i].1.clone()),
            Assign::Const(v) => Some(v.clone()),
            Assign::Fn { f, .. } => f(key),
        };
        found.ok_or_else(|| Error::KeyOutOfRange(key.clone()))
    }

    pub fn describe(&self) -> String {
        match &self.assign {
            Assign::Table(t) => {
                let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k}:{:x}", v.digest())).collect();
                format!("[{}]", parts.join(","))
            }
            Assign::Const(v) => format!("const {:x}", v.digest()),
            Assign::Fn { description, .. } => description.clone(),
        }
    }

    /// Entries over the probe window of the base.
    pub fn entries_up_to(&self, bound: u64) -> (Vec<(Key, VSet)>, bool) {
        let (keys, complete) = self.base.keys_up_to(bound);
        let entries = keys
            .into_iter()
            .filter_map(|k| self.at(&k).ok().map(|v| (k, v)))
            .collect();
        (entries, complete)
    }
}

struct SigmaGen {
    base: VSet,
    fam: VFamily,
}

impl Generator for SigmaGen {
    fn describe(&self) -> String {
        format!("sigma({:x},{})", self.base.digest(), self.fam.describe())
    }

    fn contains(&self, key: &Key) -> bool {
        match key.as_pair() {
            Some((y, u)) => self.base.contains_key(y) && self.fam.at(y).map(|g| g.contains_key(u)).unwrap_or(false),
            None => false,
        }
    }

    fn keys_up_to(&self, bound: u64) -> (Vec<Key>, bool) {
        let (ys, mut complete) = self.base.keys_up_to(bound);
        let mut fibers = Vec::with_capacity(ys.len());
        for y in ys {
            if let Ok(g) = self.fam.at(&y) {
                let (us, c) = g.keys_up_to(bound);
                complete &= c;
                fibers.push((y, us));
            }
        }
        if complete {
            let out = fibers
                .into_iter()
                .flat_map(|(y, us)| us.into_iter().map(move |u| Key::pair(y.clone(), u)))
                .collect();
            return (out, true);
        }
        // Truncated: walk the diagonals so nested infinite sums stay at
        // bound² probes instead of bound^depth.
        let cap = (bound.max(1) * bound.max(1)) as usize;
        let total: usize = fibers.iter().map(|(_, us)| us.len()).sum();
        let mut out = Vec::with_capacity(total.min(cap));
        let longest = fibers.iter().map(|(_, us)| us.len()).max().unwrap_or(0);
        'diag: for s in 0..fibers.len() + longest {
            for (i, (y, us)) in fibers.iter().enumerate().take(s + 1) {
                if let Some(u) = us.get(s - i) {
                    if out.len() == cap {
                        break 'diag;
                    }
                    out.push(Key::pair(y.clone(), u.clone()));
                }
            }
        }
        (out, false)
    }

    fn child(&self, key: &Key) -> Option<VSet> {
        let (y, u) = key.as_pair()?;
        let g = self.fam.at(y).ok()?;
        Some(pair_v(&self.base.child(y).ok()?, &g.child(u).ok()?))
    }

    fn member(&self, x: &VSet, budget: &Budget) -> Option<Verdict> {
        Some(sigma_member(&self.base, &self.fam, x, budget))
    }
}

/// `x ∈ sigmaV(a, g)`: the first component picks the fiber, which does not
/// depend on the witness since `g` respects `κ(a)`.
fn sigma_member(base: &VSet, fam: &VFamily, x: &VSet, budget: &Budget) -> Verdict {
    let (p, q) = match unpair_v(x, budget) {
        Ok(pq) => pq,
        Err(Error::UndecidedEquality { .. }) => return budget.unknown(),
        Err(_) => return Verdict::fails("not an ordered pair"),
    };
    let y = match mem_v(&p, base, budget) {
        Verdict::Holds(w) => w.into_iter().next().expect("membership witness"),
        other => return other,
    };
    let fiber = match fam.at(&y) {
        Ok(f) => f,
        Err(e) => return Verdict::fails(e.to_string()),
    };
    match mem_v(&q, &fiber, budget) {
        Verdict::Holds(w) => Verdict::witness(Key::pair(y, w.into_iter().next().expect("witness"))),
        other => other,
    }
}

/// `sigmaV(a, g) = sup((Σ y : #a) #g(y), u ↦ <a ▶ π1 u, g(π1 u) ▶ π2 u>)`.
///
/// Materialized when the base and all fibers are finite, lazy otherwise.
pub fn sigma_v(a: &VSet, g: &VFamily) -> VSet {
    if let Some(t) = a.table() {
        let mut table = Vec::new();
        let mut finite = true;
        for (y, ay) in t {
            let Ok(fiber) = g.at(y) else { continue };
            match fiber.table() {
                Some(ft) => {
                    for (u, gu) in ft {
                        table.push((Key::pair(y.clone(), u.clone()), pair_v(ay, gu)));
                    }
                }
                None => {
                    finite = false;
                    break;
                }
            }
        }
        if finite {
            return VSet::from_table(table);
        }
    }
    VSet::lazy(Arc::new(SigmaGen {
        base: a.clone(),
        fam: g.clone(),
    }))
}

/// `piV(a, g)`: one child per extensional choice function, namely its graph.
pub fn pi_v(a: &VSet, g: &VFamily, budget: &Budget) -> Result<VSet> {
    let Some(base) = a.table() else {
        return Err(Error::InfiniteUnsupported("pi".into()));
    };
    let mut fibers = Vec::with_capacity(base.len());
    for (x, _) in base {
        let fiber = g.at(x)?;
        if fiber.table().is_none() {
            return Err(Error::InfiniteUnsupported("pi fiber".into()));
        }
        fibers.push(fiber);
    }
    // group the base into kernel classes; choices at non-representatives
    // must agree with the representative's value
    let mut rep_of: Vec<usize> = Vec::with_capacity(base.len());
    for i in 0..base.len() {
        let mut rep = i;
        for j in 0..i {
            if rep_of[j] == j && decided(eq_v(&base[i].1, &base[j].1, budget))? {
                rep = j;
                break;
            }
        }
        rep_of.push(rep);
    }
    let mut tables: Vec<Vec<Option<Key>>> = vec![vec![None; base.len()]];
    for r in 0..base.len() {
        if rep_of[r] != r {
            continue;
        }
        let mut next = Vec::new();
        let rep_fiber = fibers[r].table().expect("finite fiber");
        for (u, gu) in rep_fiber {
            // allowed values at each other member of the class
            let mut options: Vec<(usize, Vec<Key>)> = Vec::new();
            for x in (r + 1)..base.len() {
                if rep_of[x] != r {
                    continue;
                }
                let mut ok = Vec::new();
                for (v, gv) in fibers[x].table().expect("finite fiber") {
                    if decided(eq_v(gu, gv, budget))? {
                        ok.push(v.clone());
                    }
                }
                options.push((x, ok));
            }
            for partial in &tables {
                let mut acc = vec![partial.clone()];
                acc.iter_mut().for_each(|t| t[r] = Some(u.clone()));
                for (x, ok) in &options {
                    let mut grown = Vec::with_capacity(acc.len() * ok.len());
                    for t in &acc {
                        for v in ok {
                            let mut t2 = t.clone();
                            t2[*x] = Some(v.clone());
                            grown.push(t2);
                        }
                    }
                    acc = grown;
                }
                next.extend(acc);
                if next.len() > PI_TABLE_LIMIT {
                    return Err(Error::TooLarge(format!(
                        "more than {PI_TABLE_LIMIT} extensional functions"
                    )));
                }
            }
        }
        tables = next;
    }
    let mut children = Vec::with_capacity(tables.len());
    for t in tables {
        let mut entries = Vec::with_capacity(base.len());
        let mut graph = Vec::with_capacity(base.len());
        for (i, choice) in t.into_iter().enumerate() {
            let u = choice.expect("total table");
            let (x, ax) = &base[i];
            graph.push((x.clone(), pair_v(ax, &fibers[i].child(&u)?)));
            entries.push((x.clone(), u));
        }
        let key = Key::fun_table(entries).expect("base keys are distinct");
        children.push((key, VSet::from_table(graph)));
    }
    Ok(VSet::from_table(children))
}

/// `idV(a, x, y) = sup(a ▶ x =_V a ▶ y, λu. a ▶ x)`, with the proposition
/// reified as a one- or zero-key index.
pub fn id_v(a: &VSet, x: &Key, y: &Key, budget: &Budget) -> Result<VSet> {
    let ax = a.child(x)?;
    let ay = a.child(y)?;
    if decided(eq_v(&ax, &ay, budget))? {
        Ok(VSet::singleton(ax))
    } else {
        Ok(VSet::empty())
    }
}

struct SqGen(VSet);

impl Generator for SqGen {
    fn describe(&self) -> String {
        format!("sq({:x})", self.0.digest())
    }
    fn contains(&self, key: &Key) -> bool {
        self.0.contains_key(key)
    }
    fn keys_up_to(&self, bound: u64) -> (Vec<Key>, bool) {
        self.0.keys_up_to(bound)
    }
    fn child(&self, key: &Key) -> Option<VSet> {
        self.0.contains_key(key).then(VSet::empty)
    }
    fn uniform_child(&self) -> Option<VSet> {
        Some(VSet::empty())
    }
    fn rank(&self) -> Rank {
        let (keys, complete) = self.0.keys_up_to(0);
        if !keys.is_empty() {
            Rank::Fin(1)
        } else if complete {
            Rank::Fin(0)
        } else {
            Rank::Unknown
        }
    }
}

/// `Sq(sup(A, f)) = sup(A, λx.∅)`.
pub fn sq_v(alpha: &VSet) -> VSet {
    match alpha.table() {
        Some(t) => VSet::from_table(t.iter().map(|(k, _)| (k.clone(), VSet::empty())).collect()),
        None => VSet::lazy(Arc::new(SqGen(alpha.clone()))),
    }
}

pub fn inl_v(a: &VSet) -> VSet {
    pair_v(&numeral(0), a)
}

pub fn inr_v(b: &VSet) -> VSet {
    pair_v(&numeral(1), b)
}

struct SumGen(VSet, VSet);

impl Generator for SumGen {
    fn describe(&self) -> String {
        format!("sum({:x},{:x})", self.0.digest(), self.1.digest())
    }
    fn contains(&self, key: &Key) -> bool {
        match key {
            Key::Inl(k) => self.0.contains_key(k),
            Key::Inr(k) => self.1.contains_key(k),
            _ => false,
        }
    }
    fn keys_up_to(&self, bound: u64) -> (Vec<Key>, bool) {
        let (l, cl) = self.0.keys_up_to(bound);
        let (r, cr) = self.1.keys_up_to(bound);
        let mut out: Vec<Key> = l.into_iter().map(Key::inl).collect();
        out.extend(r.into_iter().map(Key::inr));
        (out, cl && cr)
    }
    fn child(&self, key: &Key) -> Option<VSet> {
        match key {
            Key::Inl(k) => self.0.child(k).ok().map(|v| inl_v(&v)),
            Key::Inr(k) => self.1.child(k).ok().map(|v| inr_v(&v)),
            _ => None,
        }
    }
    fn member(&self, x: &VSet, budget: &Budget) -> Option<Verdict> {
        Some(sum_member(&self.0, &self.1, x, budget))
    }
}

fn sum_member(alpha: &VSet, beta: &VSet, x: &VSet, budget: &Budget) -> Verdict {
    let (tag, v) = match unpair_v(x, budget) {
        Ok(tv) => tv,
        Err(Error::UndecidedEquality { .. }) => return budget.unknown(),
        Err(_) => return Verdict::fails("not a tagged value"),
    };
    let (side, wrap): (&VSet, fn(Key) -> Key) = match super::numeral_verdict(&tag, budget) {
        Ok(Some(0)) => (alpha, Key::inl),
        Ok(Some(1)) => (beta, Key::inr),
        Ok(_) => return Verdict::fails("tag is neither 0 nor 1"),
        Err(i) => return Verdict::Unknown(i),
    };
    match mem_v(&v, side, budget) {
        Verdict::Holds(w) => Verdict::witness(wrap(w.into_iter().next().expect("witness"))),
        other => other,
    }
}

/// Tagged disjoint union: `inl(k) ↦ <0̄, α▶k>`, `inr(k) ↦ <1̄, β▶k>`.
pub fn sum_v(alpha: &VSet, beta: &VSet) -> VSet {
    match (alpha.table(), beta.table()) {
        (Some(l), Some(r)) => {
            let mut table: Vec<(Key, VSet)> = l.iter().map(|(k, v)| (Key::inl(k.clone()), inl_v(v))).collect();
            table.extend(r.iter().map(|(k, v)| (Key::inr(k.clone()), inr_v(v))));
            VSet::from_table(table)
        }
        _ => VSet::lazy(Arc::new(SumGen(alpha.clone(), beta.clone()))),
    }
}
