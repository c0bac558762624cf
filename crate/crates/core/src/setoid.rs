//! Setoids, extensional maps, proof-irrelevant families and subsetoids, and
//! the functor κ sending `sup(A, f)` to the setoid `(A, =_f)`.
//!
//! Proofs of base equalities are erased: a transport is indexed by the pair
//! of keys it connects and may only be requested when they are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::zf::{eq_v, mem_v, pi_v, sigma_v, Budget, Key, KeySpace, VFamily, VSet, Verdict};

type EqFn = Arc<dyn Fn(&Key, &Key, &Budget) -> Verdict + Send + Sync>;
type MapFn = Arc<dyn Fn(&Key) -> Option<Key> + Send + Sync>;
type FiberFn = Arc<dyn Fn(&Key) -> Result<Setoid> + Send + Sync>;
type TransportFn = Arc<dyn Fn(&Key, &Key, &Budget) -> Result<SetoidMap> + Send + Sync>;

#[derive(Clone, Debug)]
pub enum Carrier {
    Finite(Vec<Key>),
    Naturals,
    /// The keys of an infinite set, probed through the set itself.
    Keys(VSet),
}

/// A carrier with an equivalence relation decided up to a budget.
#[derive(Clone)]
pub struct Setoid {
    carrier: Carrier,
    eq: EqFn,
    origin: Option<VSet>,
}

impl fmt::Debug for Setoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Setoid").field("carrier", &self.carrier).finish()
    }
}

/// `Ok(true)` for Holds, `Ok(false)` for Fails, the verdict itself otherwise.
pub fn decided(v: Verdict) -> std::result::Result<bool, Verdict> {
    match v {
        Verdict::Holds(_) => Ok(true),
        Verdict::Fails(_) => Ok(false),
        u => Err(u),
    }
}

/// Drops witnesses so long conjunctions stay small.
fn quiet(v: Verdict) -> Verdict {
    match v {
        Verdict::Holds(_) => Verdict::holds(),
        other => other,
    }
}

fn bool_verdict(b: bool, reason: impl FnOnce() -> String) -> Verdict {
    if b {
        Verdict::holds()
    } else {
        Verdict::Fails(reason())
    }
}

impl Setoid {
    pub fn new(mut keys: Vec<Key>, eq: impl Fn(&Key, &Key, &Budget) -> Verdict + Send + Sync + 'static) -> Setoid {
        keys.sort();
        keys.dedup();
        Setoid {
            carrier: Carrier::Finite(keys),
            eq: Arc::new(eq),
            origin: None,
        }
    }

    /// Equality is key identity.
    pub fn discrete(keys: Vec<Key>) -> Setoid {
        Setoid::new(keys, |a, b, _| bool_verdict(a == b, || format!("{a} and {b} differ")))
    }

    /// All keys are equal.
    pub fn codiscrete(keys: Vec<Key>) -> Setoid {
        Setoid::new(keys, |_, _, _| Verdict::holds())
    }

    /// Keys grouped into the given blocks; equal iff in the same block.
    pub fn partition(blocks: Vec<Vec<Key>>) -> Setoid {
        let mut block_of = BTreeMap::new();
        for (i, b) in blocks.iter().enumerate() {
            for k in b {
                block_of.insert(k.clone(), i);
            }
        }
        let keys = block_of.keys().cloned().collect();
        Setoid::new(keys, move |a, b, _| {
            bool_verdict(block_of.get(a) == block_of.get(b), || {
                format!("{a} and {b} are in different blocks")
            })
        })
    }

    /// The standard setoid of natural numbers.
    pub fn naturals() -> Setoid {
        Setoid {
            carrier: Carrier::Naturals,
            eq: Arc::new(|a, b, _| bool_verdict(a == b, || format!("{a} and {b} differ"))),
            origin: None,
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn origin(&self) -> Option<&VSet> {
        self.origin.as_ref()
    }

    pub fn keys(&self) -> Option<&[Key]> {
        match &self.carrier {
            Carrier::Finite(ks) => Some(ks),
            _ => None,
        }
    }

    fn finite_keys(&self, what: &str) -> Result<&[Key]> {
        self.keys().ok_or_else(|| Error::InfiniteUnsupported(what.to_string()))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.carrier, Carrier::Finite(_))
    }

    pub fn len(&self) -> Option<usize> {
        self.keys().map(<[Key]>::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn contains(&self, k: &Key) -> bool {
        match &self.carrier {
            Carrier::Finite(ks) => ks.binary_search(k).is_ok(),
            Carrier::Naturals => matches!(k, Key::Numeral(_)),
            Carrier::Keys(v) => v.contains_key(k),
        }
    }

    pub fn keys_up_to(&self, bound: u64) -> (Vec<Key>, bool) {
        match &self.carrier {
            Carrier::Finite(ks) => (ks.clone(), true),
            Carrier::Naturals => ((0..=bound).map(Key::Numeral).collect(), false),
            Carrier::Keys(v) => v.keys_up_to(bound),
        }
    }

    pub fn eq(&self, a: &Key, b: &Key, budget: &Budget) -> Verdict {
        (self.eq)(a, b, budget)
    }

    /// Equivalence classes of a finite carrier, in key order.
    pub fn classes(&self, budget: &Budget) -> std::result::Result<Vec<Vec<Key>>, Verdict> {
        let Some(keys) = self.keys() else {
            return Err(budget.unknown());
        };
        let mut classes: Vec<Vec<Key>> = Vec::new();
        'keys: for k in keys {
            for c in classes.iter_mut() {
                if decided(self.eq(&c[0], k, budget))? {
                    c.push(k.clone());
                    continue 'keys;
                }
            }
            classes.push(vec![k.clone()]);
        }
        Ok(classes)
    }
}

/// Reflexivity, symmetry and transitivity over the carrier (probed when infinite).
pub fn check_equivalence(s: &Setoid, budget: &Budget) -> Verdict {
    let (keys, complete) = s.keys_up_to(budget.nat_bound);
    let mut acc = Verdict::holds();
    let mut table = vec![vec![None; keys.len()]; keys.len()];
    for (i, a) in keys.iter().enumerate() {
        for (j, b) in keys.iter().enumerate() {
            table[i][j] = match decided(s.eq(a, b, budget)) {
                Ok(x) => Some(x),
                Err(u) => {
                    acc = acc.and(u);
                    None
                }
            };
        }
    }
    let n = keys.len();
    for i in 0..n {
        if table[i][i] == Some(false) {
            return Verdict::fails(format!("not reflexive at {}", keys[i]));
        }
        for j in 0..n {
            if table[i][j] == Some(true) && table[j][i] == Some(false) {
                return Verdict::fails(format!("not symmetric at {}, {}", keys[i], keys[j]));
            }
            for k in 0..n {
                if table[i][j] == Some(true) && table[j][k] == Some(true) && table[i][k] == Some(false) {
                    return Verdict::fails(format!("not transitive at {}, {}, {}", keys[i], keys[j], keys[k]));
                }
            }
        }
    }
    if complete {
        acc
    } else {
        acc.bounded_by(budget)
    }
}

/// `κ(α) = (A, =_f)`: keys of α, equal when their children are `=_V`.
pub fn kappa(alpha: &VSet) -> Setoid {
    let carrier = match alpha.space() {
        KeySpace::Finite(ks) => Carrier::Finite(ks.clone()),
        KeySpace::Naturals => Carrier::Naturals,
        _ => Carrier::Keys(alpha.clone()),
    };
    let a = alpha.clone();
    Setoid {
        carrier,
        eq: Arc::new(move |x, y, budget| match (a.child(x), a.child(y)) {
            (Ok(cx), Ok(cy)) => quiet(eq_v(&cx, &cy, budget)),
            _ => Verdict::fails(format!("{x} or {y} is not a key")),
        }),
        origin: Some(alpha.clone()),
    }
}

#[derive(Clone)]
enum MapRule {
    Table(BTreeMap<Key, Key>),
    Fn(MapFn),
}

/// A function between carriers; extensionality is checked separately.
#[derive(Clone)]
pub struct SetoidMap {
    pub dom: Setoid,
    pub cod: Setoid,
    rule: MapRule,
}

impl fmt::Debug for SetoidMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            MapRule::Table(t) => f.debug_map().entries(t.iter()).finish(),
            MapRule::Fn(_) => write!(f, "<rule>"),
        }
    }
}

impl SetoidMap {
    /// Total table on a finite domain with values in the codomain.
    pub fn from_table(dom: &Setoid, cod: &Setoid, entries: Vec<(Key, Key)>) -> Result<SetoidMap> {
        let keys = dom.finite_keys("map table")?;
        let table: BTreeMap<Key, Key> = entries.into_iter().collect();
        if table.len() != keys.len() || keys.iter().any(|k| !table.contains_key(k)) {
            return Err(Error::DomainMismatch);
        }
        if let Some(bad) = table.values().find(|v| !cod.contains(v)) {
            return Err(Error::KeyOutOfRange(bad.clone()));
        }
        Ok(SetoidMap {
            dom: dom.clone(),
            cod: cod.clone(),
            rule: MapRule::Table(table),
        })
    }

    pub fn from_fn(dom: &Setoid, cod: &Setoid, f: impl Fn(&Key) -> Option<Key> + Send + Sync + 'static) -> SetoidMap {
        SetoidMap {
            dom: dom.clone(),
            cod: cod.clone(),
            rule: MapRule::Fn(Arc::new(f)),
        }
    }

    pub fn identity(s: &Setoid) -> SetoidMap {
        SetoidMap::from_fn(s, s, |k| Some(k.clone()))
    }

    pub fn constant(dom: &Setoid, cod: &Setoid, value: Key) -> SetoidMap {
        SetoidMap::from_fn(dom, cod, move |_| Some(value.clone()))
    }

    pub fn apply(&self, x: &Key) -> Result<Key> {
        if !self.dom.contains(x) {
            return Err(Error::KeyOutOfRange(x.clone()));
        }
        let y = match &self.rule {
            MapRule::Table(t) => t.get(x).cloned(),
            MapRule::Fn(f) => f(x),
        };
        y.ok_or_else(|| Error::KeyOutOfRange(x.clone()))
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &SetoidMap) -> SetoidMap {
        let f = self.clone();
        let g2 = g.clone();
        SetoidMap::from_fn(&g.dom, &self.cod, move |x| f.apply(&g2.apply(x).ok()?).ok())
    }

    /// The table of a map on a finite domain.
    pub fn entries(&self) -> Result<Vec<(Key, Key)>> {
        let keys = self.dom.finite_keys("map entries")?;
        keys.iter().map(|k| Ok((k.clone(), self.apply(k)?))).collect()
    }
}

fn apply_verdict(f: &SetoidMap, x: &Key) -> std::result::Result<Key, Verdict> {
    f.apply(x).map_err(|e| Verdict::fails(format!("map undefined: {e}")))
}

/// `x = y ⟹ f(x) = f(y)`, brute force over the (probed) domain.
pub fn check_extensional(f: &SetoidMap, budget: &Budget) -> Verdict {
    let (keys, complete) = f.dom.keys_up_to(budget.nat_bound);
    let mut images = Vec::with_capacity(keys.len());
    for k in &keys {
        match apply_verdict(f, k) {
            Ok(y) => images.push(y),
            Err(v) => return v,
        }
    }
    let mut acc = Verdict::holds();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            match decided(f.dom.eq(&keys[i], &keys[j], budget)) {
                Ok(false) => continue,
                Ok(true) => {}
                Err(u) => {
                    acc = acc.and(u);
                    continue;
                }
            }
            match decided(f.cod.eq(&images[i], &images[j], budget)) {
                Ok(true) => {}
                Ok(false) => {
                    return Verdict::fails(format!(
                        "{} = {} but their images {} and {} differ",
                        keys[i], keys[j], images[i], images[j]
                    ))
                }
                Err(u) => acc = acc.and(u),
            }
        }
    }
    if complete {
        acc
    } else {
        acc.bounded_by(budget)
    }
}

/// Pointwise equality `f =_ext g` of maps with the same domain and codomain.
pub fn ext_eq(f: &SetoidMap, g: &SetoidMap, budget: &Budget) -> Verdict {
    let (keys, complete) = f.dom.keys_up_to(budget.nat_bound);
    let mut acc = Verdict::holds();
    for k in &keys {
        let (a, b) = match (apply_verdict(f, k), apply_verdict(g, k)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(v), _) | (_, Err(v)) => return v,
        };
        acc = acc.and(quiet(f.cod.eq(&a, &b, budget)).negate_fail(|| format!("maps differ at {k}: {a} vs {b}")));
        if acc.is_fails() {
            return acc;
        }
    }
    if complete {
        acc
    } else {
        acc.bounded_by(budget)
    }
}

trait NegateFail {
    fn negate_fail(self, reason: impl FnOnce() -> String) -> Verdict;
}

impl NegateFail for Verdict {
    /// Replaces the failure reason.
    fn negate_fail(self, reason: impl FnOnce() -> String) -> Verdict {
        match self {
            Verdict::Fails(_) => Verdict::Fails(reason()),
            other => other,
        }
    }
}

/// Checks that `f` and `g` are extensional and mutually inverse.
pub fn check_iso(f: &SetoidMap, g: &SetoidMap, budget: &Budget) -> Verdict {
    check_extensional(f, budget)
        .and_then(|| check_extensional(g, budget))
        .and_then(|| ext_eq(&g.after(f), &SetoidMap::identity(&f.dom), budget))
        .and_then(|| ext_eq(&f.after(g), &SetoidMap::identity(&g.dom), budget))
}

/// `g : κ(base) → 𝕍` respects equality of base keys.
pub fn check_vfamily_ext(g: &VFamily, budget: &Budget) -> Verdict {
    let (entries, complete) = g.entries_up_to(budget.nat_bound);
    let base = kappa(&g.base);
    let mut acc = Verdict::holds();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let (x, gx) = &entries[i];
            let (y, gy) = &entries[j];
            match decided(base.eq(x, y, budget)) {
                Ok(false) => continue,
                Ok(true) => {}
                Err(u) => {
                    acc = acc.and(u);
                    continue;
                }
            }
            match quiet(eq_v(gx, gy, budget)) {
                Verdict::Fails(r) => {
                    return Verdict::fails(format!("{x} = {y} in the base but their values differ: {r}"))
                }
                v => acc = acc.and(v),
            }
        }
    }
    if complete {
        acc
    } else {
        acc.bounded_by(budget)
    }
}

/// The map `κ(α) → κ(β)` induced by `α =_V β`: each key goes to the least key
/// of β whose child equals its own.
pub fn kappa_transport(alpha: &VSet, beta: &VSet, budget: &Budget) -> Result<SetoidMap> {
    match eq_v(alpha, beta, budget) {
        Verdict::Holds(_) => {}
        Verdict::Fails(r) => return Err(Error::NotEqual(r)),
        Verdict::Unknown(_) => return Err(Error::NotEqual("undecided within budget".into())),
    }
    let (dom, cod) = (kappa(alpha), kappa(beta));
    if alpha.is_natv() && beta.is_natv() {
        return Ok(SetoidMap::identity(&dom));
    }
    let witness = {
        let (a, b, budget) = (alpha.clone(), beta.clone(), budget.clone());
        move |x: &Key| -> Option<Key> { mem_v(&a.child(x).ok()?, &b, &budget).first_witness().cloned() }
    };
    match dom.keys() {
        Some(keys) => {
            let mut entries = Vec::with_capacity(keys.len());
            for k in keys {
                let y = witness(k).ok_or_else(|| Error::NotEqual(format!("no match for {k}")))?;
                entries.push((k.clone(), y));
            }
            SetoidMap::from_table(&dom, &cod, entries)
        }
        None => Ok(SetoidMap::from_fn(&dom, &cod, witness)),
    }
}

/// Setoids indexed by a setoid, with transports along base equalities.
#[derive(Clone)]
pub struct Family {
    pub base: Setoid,
    fiber: FiberFn,
    transport: TransportFn,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family").field("base", &self.base).finish()
    }
}

impl Family {
    pub fn new(
        base: &Setoid,
        fiber: impl Fn(&Key) -> Result<Setoid> + Send + Sync + 'static,
        transport: impl Fn(&Key, &Key, &Budget) -> Result<SetoidMap> + Send + Sync + 'static,
    ) -> Family {
        Family {
            base: base.clone(),
            fiber: Arc::new(fiber),
            transport: Arc::new(transport),
        }
    }

    /// The same setoid everywhere, with identity transports.
    pub fn constant(base: &Setoid, s: &Setoid) -> Family {
        let (s1, s2) = (s.clone(), s.clone());
        Family::new(
            base,
            move |_| Ok(s1.clone()),
            move |_, _, _| Ok(SetoidMap::identity(&s2)),
        )
    }

    /// `κ ∘ g`: fibers `κ(g(x))`, transports `κ(p)`.
    pub fn kappa(g: &VFamily) -> Family {
        let (g1, g2) = (g.clone(), g.clone());
        Family::new(
            &kappa(&g.base),
            move |x| Ok(kappa(&g1.at(x)?)),
            move |x, y, budget| kappa_transport(&g2.at(x)?, &g2.at(y)?, budget),
        )
    }

    pub fn fiber(&self, x: &Key) -> Result<Setoid> {
        if !self.base.contains(x) {
            return Err(Error::KeyOutOfRange(x.clone()));
        }
        (self.fiber)(x)
    }

    /// `F(p) : F(x) → F(y)`; only defined when `x = y` holds in the base.
    pub fn transport(&self, x: &Key, y: &Key, budget: &Budget) -> Result<SetoidMap> {
        match self.base.eq(x, y, budget) {
            Verdict::Holds(_) => (self.transport)(x, y, budget),
            Verdict::Fails(r) => Err(Error::NotEqual(r)),
            Verdict::Unknown(i) => Err(Error::undecided(i)),
        }
    }
}

fn verdict_of<T>(r: Result<T>) -> std::result::Result<T, Verdict> {
    r.map_err(|e| match e {
        Error::UndecidedEquality { fuel, nat_bound } => Verdict::Unknown(crate::zf::Incomplete {
            fuel,
            nat_bound,
            bounded: false,
        }),
        e => Verdict::fails(e.to_string()),
    })
}

/// Identity, functoriality, and invertibility of the transports, plus
/// extensionality of each transport.
pub fn check_family_laws(f: &Family, budget: &Budget) -> Verdict {
    if !f.base.is_finite() {
        return Verdict::fails("family laws need a finite base");
    }
    let classes = match f.base.classes(budget) {
        Ok(c) => c,
        Err(v) => return v,
    };
    let mut acc = Verdict::holds();
    for class in &classes {
        let mut t: BTreeMap<(usize, usize), SetoidMap> = BTreeMap::new();
        for (i, x) in class.iter().enumerate() {
            for (j, y) in class.iter().enumerate() {
                match verdict_of(f.transport(x, y, budget)) {
                    Ok(m) => {
                        t.insert((i, j), m);
                    }
                    Err(v) => return v,
                }
            }
        }
        for (i, x) in class.iter().enumerate() {
            let id = SetoidMap::identity(&t[&(i, i)].dom);
            let law = quiet(check_extensional(&t[&(i, i)], budget))
                .and_then(|| ext_eq(&t[&(i, i)], &id, budget))
                .negate_fail(|| format!("transport at ({x}, {x}) is not the identity"));
            acc = acc.and(law);
            if acc.is_fails() {
                return acc;
            }
            for (j, y) in class.iter().enumerate() {
                acc = acc.and(quiet(check_extensional(&t[&(i, j)], budget)));
                for (k, z) in class.iter().enumerate() {
                    let composed = t[&(j, k)].after(&t[&(i, j)]);
                    acc = acc.and(
                        ext_eq(&composed, &t[&(i, k)], budget)
                            .negate_fail(|| format!("transports along {x} = {y} = {z} do not compose")),
                    );
                    if acc.is_fails() {
                        return acc;
                    }
                }
            }
        }
    }
    acc
}

/// `x ↦ F(g(x))`, transports `(x, y) ↦ F(g x, g y)`.
pub fn family_compose(f: &Family, g: &SetoidMap) -> Family {
    let (f1, f2, g1, g2) = (f.clone(), f.clone(), g.clone(), g.clone());
    Family::new(
        &g.dom,
        move |x| f1.fiber(&g1.apply(x)?),
        move |x, y, budget| f2.transport(&g2.apply(x)?, &g2.apply(y)?, budget),
    )
}

/// `Σ(A, F)`: pairs `⟨x, u⟩`, with `⟨x,u⟩ = ⟨y,v⟩` iff `x = y` and `F(x,y)(u) = v`.
pub fn sigma_setoid(a: &Setoid, f: &Family) -> Result<Setoid> {
    let base = a.finite_keys("sigma setoid")?;
    let mut keys = Vec::new();
    for x in base {
        for u in f.fiber(x)?.finite_keys("sigma setoid fiber")? {
            keys.push(Key::pair(x.clone(), u.clone()));
        }
    }
    let f = f.clone();
    Ok(Setoid::new(keys, move |p, q, budget| {
        let (Some((x, u)), Some((y, v))) = (p.as_pair(), q.as_pair()) else {
            return Verdict::fails("not a dependent pair");
        };
        match decided(f.base.eq(x, y, budget)) {
            Ok(true) => {}
            Ok(false) => return Verdict::fails(format!("first components {x} and {y} differ")),
            Err(u) => return u,
        }
        let moved = match verdict_of(f.transport(x, y, budget).and_then(|t| t.apply(u))) {
            Ok(m) => m,
            Err(v) => return v,
        };
        match verdict_of(f.fiber(y)) {
            Ok(fy) => quiet(fy.eq(&moved, v, budget)),
            Err(v) => v,
        }
    }))
}

fn dependent_tables(a: &Setoid, f: &Family, limit: usize) -> Result<Vec<Vec<(Key, Key)>>> {
    let base = a.finite_keys("pi setoid")?;
    let mut tables: Vec<Vec<(Key, Key)>> = vec![vec![]];
    for x in base {
        let fiber = f.fiber(x)?;
        let fiber = fiber.finite_keys("pi setoid fiber")?;
        let mut next = Vec::with_capacity(tables.len() * fiber.len());
        for t in &tables {
            for u in fiber {
                let mut t2 = t.clone();
                t2.push((x.clone(), u.clone()));
                next.push(t2);
            }
        }
        if next.len() > limit {
            return Err(Error::TooLarge("pi setoid".into()));
        }
        tables = next;
    }
    Ok(tables)
}

/// Global elements `t` of F: `x = y ⟹ F(x,y)(t(x)) = t(y)`.
pub fn is_global_element(f: &Family, t: &Key, budget: &Budget) -> Verdict {
    let keys = match f.base.keys() {
        Some(k) => k.to_vec(),
        None => return Verdict::fails("global elements need a finite base"),
    };
    let mut acc = Verdict::holds();
    for x in &keys {
        let Some(tx) = t.apply(x) else {
            return Verdict::fails(format!("table has no value at {x}"));
        };
        match f.fiber(x) {
            Ok(fx) if fx.contains(tx) => {}
            _ => return Verdict::fails(format!("value {tx} at {x} is not in the fiber")),
        }
        for y in &keys {
            match decided(f.base.eq(x, y, budget)) {
                Ok(true) => {}
                Ok(false) => continue,
                Err(u) => {
                    acc = acc.and(u);
                    continue;
                }
            }
            let ty = t.apply(y).expect("checked on its own turn").clone();
            let moved = match verdict_of(f.transport(x, y, budget).and_then(|m| m.apply(tx))) {
                Ok(m) => m,
                Err(v) => return v,
            };
            let fy = match verdict_of(f.fiber(y)) {
                Ok(s) => s,
                Err(v) => return v,
            };
            acc = acc.and(
                quiet(fy.eq(&moved, &ty, budget))
                    .negate_fail(|| format!("transport of the value at {x} differs from the value at {y}")),
            );
            if acc.is_fails() {
                return acc;
            }
        }
    }
    acc
}

/// `Π(A, F)`: the global elements, equal when pointwise equal.
pub fn pi_setoid(a: &Setoid, f: &Family, budget: &Budget) -> Result<Setoid> {
    let mut keys = Vec::new();
    for t in dependent_tables(a, f, crate::zf::PI_TABLE_LIMIT * 4)? {
        let k = Key::fun_table(t).expect("distinct base keys");
        match is_global_element(f, &k, budget) {
            Verdict::Holds(_) => keys.push(k),
            Verdict::Fails(_) => {}
            Verdict::Unknown(i) => return Err(Error::undecided(i)),
        }
    }
    let f = f.clone();
    Ok(Setoid::new(keys, move |s, t, budget| {
        let Key::FunTable(entries) = s else {
            return Verdict::fails("not a function table");
        };
        let mut acc = Verdict::holds();
        for (x, sx) in entries {
            let Some(tx) = t.apply(x) else {
                return Verdict::fails(format!("table has no value at {x}"));
            };
            let fx = match verdict_of(f.fiber(x)) {
                Ok(s) => s,
                Err(v) => return v,
            };
            acc = acc.and(quiet(fx.eq(sx, tx, budget)));
            if acc.is_fails() {
                return acc;
            }
        }
        acc
    }))
}

/// `A × B` with componentwise equality.
pub fn prod_setoid(a: &Setoid, b: &Setoid) -> Result<Setoid> {
    let constant = Family::constant(a, b);
    sigma_setoid(a, &constant)
}

/// `[A → B]`: extensional function tables, equal when pointwise equal.
pub fn exp_setoid(a: &Setoid, b: &Setoid, budget: &Budget) -> Result<Setoid> {
    pi_setoid(a, &Family::constant(a, b), budget)
}

/// A setoid `δ` with an injective map into an ambient setoid.
#[derive(Clone, Debug)]
pub struct SubSetoid {
    pub delta: Setoid,
    pub incl: SetoidMap,
}

impl SubSetoid {
    /// Sub-setoid checked for injectivity of the inclusion.
    pub fn new(incl: SetoidMap, budget: &Budget) -> Result<SubSetoid> {
        let s = SubSetoid {
            delta: incl.dom.clone(),
            incl,
        };
        match check_injective(&s, budget) {
            Verdict::Fails(r) => Err(Error::PremiseFails(format!("inclusion not injective: {r}"))),
            Verdict::Unknown(i) => Err(Error::undecided(i)),
            Verdict::Holds(_) => Ok(s),
        }
    }

    /// The keys of the ambient setoid, with the inherited equality.
    pub fn of_keys(ambient: &Setoid, keys: Vec<Key>) -> Result<SubSetoid> {
        let amb = ambient.clone();
        let delta = Setoid::new(keys.clone(), move |x, y, b| amb.eq(x, y, b));
        let incl = SetoidMap::from_table(&delta, ambient, keys.into_iter().map(|k| (k.clone(), k)).collect())?;
        Ok(SubSetoid { delta, incl })
    }

    pub fn ambient(&self) -> &Setoid {
        &self.incl.cod
    }
}

/// `δ(x) = δ(y) ⟺ ι(x) = ι(y)`.
pub fn check_injective(s: &SubSetoid, budget: &Budget) -> Verdict {
    let keys = match s.delta.keys() {
        Some(k) => k.to_vec(),
        None => return Verdict::fails("subsetoid needs a finite carrier"),
    };
    let mut acc = check_extensional(&s.incl, budget);
    for x in &keys {
        for y in &keys {
            let (ix, iy) = match (apply_verdict(&s.incl, x), apply_verdict(&s.incl, y)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(v), _) | (_, Err(v)) => return v,
            };
            match (
                decided(s.ambient().eq(&ix, &iy, budget)),
                decided(s.delta.eq(x, y, budget)),
            ) {
                (Ok(true), Ok(false)) => {
                    return Verdict::fails(format!("{x} and {y} differ but are included as equal"))
                }
                (Err(u), _) | (_, Err(u)) => acc = acc.and(u),
                _ => {}
            }
        }
    }
    acc
}

/// `a ∈ S`: some `s` with `a = ι(s)`; the least such `s` is the witness.
pub fn sub_member(a: &Key, s: &SubSetoid, budget: &Budget) -> Verdict {
    let Some(keys) = s.delta.keys() else {
        return Verdict::fails("subsetoid needs a finite carrier");
    };
    let mut acc = Verdict::fails(format!("{a} is not in the subsetoid"));
    for k in keys {
        let ik = match apply_verdict(&s.incl, k) {
            Ok(i) => i,
            Err(v) => return v,
        };
        match s.ambient().eq(a, &ik, budget) {
            Verdict::Holds(_) => return Verdict::witness(k.clone()),
            Verdict::Fails(_) => {}
            u => acc = u,
        }
    }
    acc
}

/// `S ⊆ T`: every ambient element in S is in T.
pub fn sub_subseteq(s: &SubSetoid, t: &SubSetoid, budget: &Budget) -> Verdict {
    let (keys, complete) = s.ambient().keys_up_to(budget.nat_bound);
    let mut acc = Verdict::holds();
    for x in &keys {
        match sub_member(x, s, budget) {
            Verdict::Fails(_) => continue,
            Verdict::Unknown(i) => {
                acc = acc.and(Verdict::Unknown(i));
                continue;
            }
            Verdict::Holds(_) => {}
        }
        acc =
            acc.and(quiet(sub_member(x, t, budget)).negate_fail(|| format!("{x} is in the first but not the second")));
        if acc.is_fails() {
            return acc;
        }
    }
    if complete {
        acc
    } else {
        acc.bounded_by(budget)
    }
}

/// The mediating map `f : δS → δT` with `ι_T ∘ f = ι_S`, found by unique choice.
pub fn mediating_map(s: &SubSetoid, t: &SubSetoid, budget: &Budget) -> std::result::Result<SetoidMap, Verdict> {
    let Some(keys) = s.delta.keys() else {
        return Err(Verdict::fails("subsetoid needs a finite carrier"));
    };
    let mut entries = Vec::with_capacity(keys.len());
    for k in keys {
        let ik = apply_verdict(&s.incl, k)?;
        match sub_member(&ik, t, budget) {
            Verdict::Holds(w) => entries.push((k.clone(), w[0].clone())),
            other => return Err(other),
        }
    }
    SetoidMap::from_table(&s.delta, &t.delta, entries).map_err(|e| Verdict::fails(e.to_string()))
}

/// `S ⊆ T` read as the existence of the mediating map; also verifies it.
pub fn sub_subseteq_by_map(s: &SubSetoid, t: &SubSetoid, budget: &Budget) -> Verdict {
    match mediating_map(s, t, budget) {
        Ok(f) => quiet(check_extensional(&f, budget)).and_then(|| ext_eq(&t.incl.after(&f), &s.incl, budget)),
        Err(v) => v,
    }
}

pub fn sub_equiv(s: &SubSetoid, t: &SubSetoid, budget: &Budget) -> Verdict {
    sub_subseteq(s, t, budget).and_then(|| sub_subseteq(t, s, budget))
}

/// `F*`: fibers `δ(F(x))`, transports the mediating isomorphisms between
/// equal subsetoids.
pub fn family_from_sub(base: &Setoid, f: impl Fn(&Key) -> Result<SubSetoid> + Send + Sync + 'static) -> Family {
    let f = Arc::new(f);
    let f2 = f.clone();
    Family::new(
        base,
        move |x| Ok(f(x)?.delta),
        move |x, y, budget| {
            let (sx, sy) = (f2(x)?, f2(y)?);
            mediating_map(&sx, &sy, budget).map_err(|v| match v {
                Verdict::Unknown(i) => Error::undecided(i),
                v => Error::PremiseFails(v.to_string()),
            })
        },
    )
}

/// Extensionality of a subsetoid-valued map: equal base keys give equivalent subsetoids.
pub fn check_sub_family_ext(base: &Setoid, f: &dyn Fn(&Key) -> Result<SubSetoid>, budget: &Budget) -> Verdict {
    let classes = match base.classes(budget) {
        Ok(c) => c,
        Err(v) => return v,
    };
    let mut acc = Verdict::holds();
    for class in classes {
        for x in &class {
            for y in &class {
                let (sx, sy) = match (verdict_of(f(x)), verdict_of(f(y))) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(v), _) | (_, Err(v)) => return v,
                };
                acc = acc.and(sub_equiv(&sx, &sy, budget));
                if acc.is_fails() {
                    return acc;
                }
            }
        }
    }
    acc
}

/// Equality of parameterizations `(I, f) = (I', f')`: `I =_V I'` and
/// `f(x) =_V f'(p(x))` along the transport `p`.
pub fn par_eq(p1: (&VSet, &VFamily), p2: (&VSet, &VFamily), budget: &Budget) -> Verdict {
    let (i1, f1) = p1;
    let (i2, f2) = p2;
    let t = match kappa_transport(i1, i2, budget) {
        Ok(t) => t,
        Err(Error::NotEqual(r)) => {
            return match eq_v(i1, i2, budget) {
                u @ Verdict::Unknown(_) => u,
                _ => Verdict::fails(format!("index sets differ: {r}")),
            }
        }
        Err(e) => return Verdict::fails(e.to_string()),
    };
    let (keys, complete) = i1.keys_up_to(budget.nat_bound);
    let mut acc = Verdict::holds();
    for x in &keys {
        let y = match apply_verdict(&t, x) {
            Ok(y) => y,
            Err(v) => return v,
        };
        let (a, b) = match (verdict_of(f1.at(x)), verdict_of(f2.at(&y))) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(v), _) | (_, Err(v)) => return v,
        };
        acc = acc.and(quiet(eq_v(&a, &b, budget)).negate_fail(|| format!("values at {x} and {y} differ")));
        if acc.is_fails() {
            return acc;
        }
    }
    if complete {
        acc
    } else {
        acc.bounded_by(budget)
    }
}

/// Identity on keys between two setoids on the same carrier, with a search
/// back from the second when the carriers differ.
fn key_iso(from: &Setoid, to: &Setoid, budget: &Budget) -> std::result::Result<(SetoidMap, SetoidMap), Verdict> {
    let (fk, tk) = match (from.keys(), to.keys()) {
        (Some(a), Some(b)) => (a.to_vec(), b.to_vec()),
        _ => return Err(Verdict::fails("iso check needs finite carriers")),
    };
    let mut forward = Vec::with_capacity(fk.len());
    for k in &fk {
        if !to.contains(k) {
            return Err(Verdict::fails(format!("{k} has no counterpart")));
        }
        forward.push((k.clone(), k.clone()));
    }
    let mut backward = Vec::with_capacity(tk.len());
    for k in &tk {
        let mut found = None;
        for j in &fk {
            if decided(to.eq(j, k, budget))? {
                found = Some(j.clone());
                break;
            }
        }
        let j = found.ok_or_else(|| Verdict::fails(format!("{k} is not reached")))?;
        backward.push((k.clone(), j));
    }
    let f = SetoidMap::from_table(from, to, forward).map_err(|e| Verdict::fails(e.to_string()))?;
    let g = SetoidMap::from_table(to, from, backward).map_err(|e| Verdict::fails(e.to_string()))?;
    Ok((f, g))
}

/// `κ(σ(a, g)) ≅ Σ(κ(a), κ ∘ g)`.
pub fn check_kappa_sigma_iso(a: &VSet, g: &VFamily, budget: &Budget) -> Verdict {
    let lhs = kappa(&sigma_v(a, g));
    let rhs = match verdict_of(sigma_setoid(&kappa(a), &Family::kappa(g))) {
        Ok(s) => s,
        Err(v) => return v,
    };
    match key_iso(&lhs, &rhs, budget) {
        Ok((f, h)) => check_iso(&f, &h, budget),
        Err(v) => v,
    }
}

/// `κ(π(a, g)) ≅ Π(κ(a), κ ∘ g)`.
pub fn check_kappa_pi_iso(a: &VSet, g: &VFamily, budget: &Budget) -> Verdict {
    let lhs = match verdict_of(pi_v(a, g, budget)) {
        Ok(p) => kappa(&p),
        Err(v) => return v,
    };
    let rhs = match verdict_of(pi_setoid(&kappa(a), &Family::kappa(g), budget)) {
        Ok(s) => s,
        Err(v) => return v,
    };
    match key_iso(&lhs, &rhs, budget) {
        Ok((f, h)) => check_iso(&f, &h, budget),
        Err(v) => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zf::{atoms, natv, numeral};

    fn b() -> Budget {
        Budget::default()
    }

    fn two_empties() -> VSet {
        VSet::from_children(vec![VSet::empty(), VSet::empty()])
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&VSet::empty()).len(), Some(0));
        let k = kappa(&two_empties());
        assert!(k.eq(&Key::Atom(0), &Key::Atom(1), &b()).is_holds());
        let n = kappa(&natv());
        assert!(n.eq(&Key::Numeral(3), &Key::Numeral(3), &b()).is_holds());
        assert!(n.eq(&Key::Numeral(3), &Key::Numeral(4), &b()).is_fails());
        assert!(check_equivalence(&n, &b()).passes());
    }

    #[test]
    fn transport_picks_matching_keys() {
        let t = kappa_transport(&two_empties(), &VSet::singleton(VSet::empty()), &b()).unwrap();
        assert_eq!(t.apply(&Key::Atom(0)).unwrap(), Key::Atom(0));
        assert_eq!(t.apply(&Key::Atom(1)).unwrap(), Key::Atom(0));
        let id = kappa_transport(&two_empties(), &two_empties(), &b()).unwrap();
        assert!(ext_eq(&id, &SetoidMap::identity(&kappa(&two_empties())), &b()).is_holds());
        assert!(matches!(
            kappa_transport(&numeral(1), &numeral(2), &b()),
            Err(Error::NotEqual(_))
        ));
    }

    #[test]
    fn extensionality() {
        let a = kappa(&two_empties());
        let d = Setoid::discrete(atoms(2));
        assert!(check_extensional(&SetoidMap::constant(&a, &d, Key::Atom(1)), &b()).is_holds());
        assert!(check_extensional(&SetoidMap::identity(&a), &b()).is_holds());
        let bad = SetoidMap::identity(&a);
        let bad = SetoidMap::from_table(&a, &d, bad.entries().unwrap()).unwrap();
        let v = check_extensional(&bad, &b());
        assert!(v.is_fails(), "{v}");
    }

    #[test]
    fn exponents() {
        let d2 = Setoid::discrete(atoms(2));
        let c2 = Setoid::codiscrete(atoms(2));
        let empty = Setoid::discrete(vec![]);
        assert_eq!(exp_setoid(&empty, &d2, &b()).unwrap().len(), Some(1));
        assert_eq!(exp_setoid(&d2, &d2, &b()).unwrap().len(), Some(4));
        let e = exp_setoid(&c2, &d2, &b()).unwrap();
        assert_eq!(e.classes(&b()).unwrap().len(), 2);
        assert!(check_equivalence(&e, &b()).is_holds());
    }

    #[test]
    fn broken_transport_is_caught() {
        let base = Setoid::discrete(atoms(1));
        let fiber = Setoid::discrete(atoms(2));
        let f2 = fiber.clone();
        let broken = Family::new(
            &base,
            move |_| Ok(fiber.clone()),
            move |_, _, _| {
                SetoidMap::from_table(
                    &f2,
                    &f2,
                    vec![(Key::Atom(0), Key::Atom(1)), (Key::Atom(1), Key::Atom(0))],
                )
            },
        );
        assert!(check_family_laws(&broken, &b()).is_fails());
        let ok = Family::constant(&base, &Setoid::discrete(atoms(2)));
        assert!(check_family_laws(&ok, &b()).is_holds());
    }

    #[test]
    fn kappa_families_obey_laws() {
        let a = VSet::from_children(vec![numeral(1), numeral(1), numeral(0)]);
        let g = VFamily::tabulate(&a, "t", |k| {
            Some(match k {
                Key::Atom(2) => VSet::empty(),
                _ => VSet::from_children(vec![numeral(0), numeral(0), numeral(1)]),
            })
        })
        .unwrap();
        assert!(check_vfamily_ext(&g, &b()).is_holds());
        assert!(check_family_laws(&Family::kappa(&g), &b()).is_holds());
        assert!(check_kappa_sigma_iso(&a, &g, &b()).is_holds());
        assert!(check_kappa_pi_iso(&a, &g, &b()).is_holds());
    }

    #[test]
    fn subsetoids() {
        let amb = Setoid::partition(vec![vec![Key::Atom(0), Key::Atom(1)], vec![Key::Atom(2)]]);
        let s = SubSetoid::of_keys(&amb, vec![Key::Atom(0)]).unwrap();
        let t = SubSetoid::of_keys(&amb, vec![Key::Atom(1), Key::Atom(2)]).unwrap();
        let none = SubSetoid::of_keys(&amb, vec![]).unwrap();
        assert!(sub_subseteq(&s, &s, &b()).is_holds());
        assert!(sub_subseteq(&none, &t, &b()).is_holds());
        assert!(sub_subseteq(&s, &t, &b()).is_holds());
        assert!(sub_subseteq(&t, &s, &b()).is_fails());
        assert!(sub_subseteq_by_map(&s, &t, &b()).is_holds());
        assert!(sub_subseteq_by_map(&t, &s, &b()).is_fails());
        assert_eq!(sub_member(&Key::Atom(0), &t, &b()).first_witness(), Some(&Key::Atom(1)));
    }

    #[test]
    fn parameterizations() {
        let i = two_empties();
        let f = VFamily::constant(&i, numeral(2));
        assert!(par_eq((&i, &f), (&i, &f), &b()).is_holds());
        let j = VSet::singleton(VSet::empty());
        let g = VFamily::constant(&j, numeral(2));
        assert!(par_eq((&i, &f), (&j, &g), &b()).is_holds());
        let h = VFamily::constant(&j, numeral(3));
        assert!(par_eq((&i, &f), (&j, &h), &b()).is_fails());
    }
}
