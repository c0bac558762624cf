//! Superuniverse codes `Uo`/`To`, small set universes `sV = W(Uo, To)`, their
//! embedding into `V`, and the hierarchy `V_k = uV(I_k, F_k)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::zf::{eq_v, mk_sup, natv, Budget, ChildMap, Generator, Key, KeySpace, Rank, VSet, Verdict};

/// Upper bound on the size of a decoded finite key space.
pub const DECODE_LIMIT: usize = 4096;

/// Level environment `(I_k, F_k)`: level 0 is the empty family, level `k+1`
/// is the codes of level `k` together with their decoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UEnv {
    pub level: u32,
}

impl UEnv {
    pub fn new(level: u32) -> UEnv {
        UEnv { level }
    }

    fn below(self) -> Option<UEnv> {
        self.level.checked_sub(1).map(UEnv::new)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UCode {
    N0,
    N1,
    N,
    Ix,
    /// A code of the level below.
    Lft(Box<UCode>),
    Plus(Box<UCode>, Box<UCode>),
    Times(Box<UCode>, Box<UCode>),
    Sigma(Box<UCode>, CodeFam),
    Pi(Box<UCode>, CodeFam),
    W(Box<UCode>, CodeFam),
}

/// Family of codes over the decoding of a base code.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CodeFam {
    Table(Vec<(Key, UCode)>),
    Const(Box<UCode>),
    /// `x ↦ lft(x)`, over the base `ix`.
    Lift,
}

impl UCode {
    pub fn lft(c: UCode) -> UCode {
        UCode::Lft(Box::new(c))
    }
    pub fn plus(a: UCode, b: UCode) -> UCode {
        UCode::Plus(Box::new(a), Box::new(b))
    }
    pub fn times(a: UCode, b: UCode) -> UCode {
        UCode::Times(Box::new(a), Box::new(b))
    }
    pub fn sigma(a: UCode, f: CodeFam) -> UCode {
        UCode::Sigma(Box::new(a), f)
    }
    pub fn pi(a: UCode, f: CodeFam) -> UCode {
        UCode::Pi(Box::new(a), f)
    }
    pub fn w(a: UCode, f: CodeFam) -> UCode {
        UCode::W(Box::new(a), f)
    }

    /// Code of the small universe `sV_j` as seen from level `level > j`.
    pub fn universe(j: u32, level: u32) -> Option<UCode> {
        if j >= level {
            return None;
        }
        let mut c = UCode::w(UCode::Ix, CodeFam::Lift);
        for _ in j + 1..level {
            c = UCode::lft(c);
        }
        Some(c)
    }

    pub fn to_key(&self) -> Key {
        let tag = |t: u64, k: Key| Key::pair(Key::Atom(t), k);
        match self {
            UCode::N0 => Key::Atom(0),
            UCode::N1 => Key::Atom(1),
            UCode::N => Key::Atom(2),
            UCode::Ix => Key::Atom(3),
            UCode::Lft(c) => tag(4, c.to_key()),
            UCode::Plus(a, b) => tag(5, Key::pair(a.to_key(), b.to_key())),
            UCode::Times(a, b) => tag(6, Key::pair(a.to_key(), b.to_key())),
            UCode::Sigma(a, f) => tag(7, Key::pair(a.to_key(), f.to_key())),
            UCode::Pi(a, f) => tag(8, Key::pair(a.to_key(), f.to_key())),
            UCode::W(a, f) => tag(9, Key::pair(a.to_key(), f.to_key())),
        }
    }

    pub fn from_key(k: &Key) -> Option<UCode> {
        match k {
            Key::Atom(0) => Some(UCode::N0),
            Key::Atom(1) => Some(UCode::N1),
            Key::Atom(2) => Some(UCode::N),
            Key::Atom(3) => Some(UCode::Ix),
            Key::Pair(t, body) => {
                let Key::Atom(t) = **t else { return None };
                if t == 4 {
                    return Some(UCode::lft(UCode::from_key(body)?));
                }
                let (a, b) = body.as_pair()?;
                let a = UCode::from_key(a)?;
                match t {
                    5 => Some(UCode::plus(a, UCode::from_key(b)?)),
                    6 => Some(UCode::times(a, UCode::from_key(b)?)),
                    7 => Some(UCode::sigma(a, CodeFam::from_key(b)?)),
                    8 => Some(UCode::pi(a, CodeFam::from_key(b)?)),
                    9 => Some(UCode::w(a, CodeFam::from_key(b)?)),
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

impl CodeFam {
    pub fn constant(c: UCode) -> CodeFam {
        CodeFam::Const(Box::new(c))
    }

    pub fn table(mut entries: Vec<(Key, UCode)>) -> CodeFam {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        CodeFam::Table(entries)
    }

    fn to_key(&self) -> Key {
        match self {
            CodeFam::Table(t) => Key::FunTable(t.iter().map(|(k, c)| (k.clone(), c.to_key())).collect()),
            CodeFam::Const(c) => Key::pair(Key::Atom(100), c.to_key()),
            CodeFam::Lift => Key::Atom(101),
        }
    }

    fn from_key(k: &Key) -> Option<CodeFam> {
        match k {
            Key::FunTable(t) => t
                .iter()
                .map(|(k, c)| Some((k.clone(), UCode::from_key(c)?)))
                .collect::<Option<Vec<_>>>()
                .map(CodeFam::Table),
            Key::Pair(t, c) if **t == Key::Atom(100) => Some(CodeFam::constant(UCode::from_key(c)?)),
            Key::Atom(101) => Some(CodeFam::Lift),
            _ => None,
        }
    }

    fn at(&self, x: &Key) -> Result<UCode> {
        match self {
            CodeFam::Table(t) => t
                .binary_search_by(|(k, _)| k.cmp(x))
                .map(|i| t[i].1.clone())
                .map_err(|_| Error::IllFormedCode(format!("family has no entry at {x}"))),
            CodeFam::Const(c) => Ok((**c).clone()),
            CodeFam::Lift => UCode::from_key(x)
                .map(UCode::lft)
                .ok_or_else(|| Error::IllFormedCode(format!("{x} is not a code"))),
        }
    }
}

impl fmt::Display for UCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UCode::N0 => write!(f, "n0"),
            UCode::N1 => write!(f, "n1"),
            UCode::N => write!(f, "n"),
            UCode::Ix => write!(f, "ix"),
            UCode::Lft(c) => write!(f, "lft({c})"),
            UCode::Plus(a, b) => write!(f, "plus({a}, {b})"),
            UCode::Times(a, b) => write!(f, "times({a}, {b})"),
            UCode::Sigma(a, g) => write!(f, "sigma({a}, {g})"),
            UCode::Pi(a, g) => write!(f, "pi({a}, {g})"),
            UCode::W(a, g) => write!(f, "w({a}, {g})"),
        }
    }
}

impl fmt::Display for CodeFam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeFam::Table(t) => {
                write!(f, "[")?;
                for (i, (k, c)) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{k}: {c}")?;
                }
                write!(f, "]")
            }
            CodeFam::Const(c) => write!(f, "const {c}"),
            CodeFam::Lift => write!(f, "lft"),
        }
    }
}

/// Code with exactly `n` decoded keys.
pub fn fin_code(n: usize) -> UCode {
    match n {
        0 => UCode::N0,
        1 => UCode::N1,
        _ => UCode::plus(fin_code(n - 1), UCode::N1),
    }
}

/// `To(c)` at the given level.
pub fn decode(c: &UCode, env: UEnv) -> Result<KeySpace> {
    match c {
        UCode::N0 => Ok(KeySpace::Finite(vec![])),
        UCode::N1 => Ok(KeySpace::Finite(vec![Key::Atom(0)])),
        UCode::N => Ok(KeySpace::Naturals),
        // I_0 is empty; above level 0 the index type is the codes of the level below
        UCode::Ix => match env.level {
            0 => Ok(KeySpace::Finite(vec![])),
            _ => Err(Error::InfiniteUnsupported("ix".into())),
        },
        UCode::Lft(inner) => match env.below() {
            Some(lower) => decode(inner, lower),
            None => Err(Error::IllFormedCode("lft at level 0".into())),
        },
        UCode::Plus(a, b) => {
            let l = decode_finite(a, env, "plus")?;
            let r = decode_finite(b, env, "plus")?;
            let mut keys: Vec<Key> = l.into_iter().map(Key::inl).collect();
            keys.extend(r.into_iter().map(Key::inr));
            limited(keys)
        }
        UCode::Times(a, b) => {
            let l = decode_finite(a, env, "times")?;
            let r = decode_finite(b, env, "times")?;
            let mut keys = Vec::new();
            for x in &l {
                for y in &r {
                    keys.push(Key::pair(x.clone(), y.clone()));
                }
            }
            limited(keys)
        }
        UCode::Sigma(a, g) => {
            let base = decode_finite(a, env, "sigma")?;
            let mut keys = Vec::new();
            for x in base {
                for u in decode_finite(&g.at(&x)?, env, "sigma")? {
                    keys.push(Key::pair(x.clone(), u));
                    if keys.len() > DECODE_LIMIT {
                        return Err(Error::TooLarge("sigma code".into()));
                    }
                }
            }
            limited(keys)
        }
        UCode::Pi(a, g) => {
            let base = decode_finite(a, env, "pi")?;
            let mut tables: Vec<Vec<(Key, Key)>> = vec![vec![]];
            for x in base {
                let fiber = decode_finite(&g.at(&x)?, env, "pi")?;
                let mut next = Vec::with_capacity(tables.len() * fiber.len());
                for t in &tables {
                    for u in &fiber {
                        let mut t2 = t.clone();
                        t2.push((x.clone(), u.clone()));
                        next.push(t2);
                    }
                }
                if next.len() > DECODE_LIMIT {
                    return Err(Error::TooLarge("pi code".into()));
                }
                tables = next;
            }
            limited(
                tables
                    .into_iter()
                    .map(|t| Key::fun_table(t).expect("distinct base keys"))
                    .collect(),
            )
        }
        UCode::W(a, g) => {
            if **a == UCode::Ix && *g == CodeFam::Lift {
                return match env.below() {
                    Some(lower) => Ok(KeySpace::Trees(lower)),
                    None => Ok(KeySpace::Finite(vec![])),
                };
            }
            // finite only when every constructor is nullary
            let base = decode_finite(a, env, "w")?;
            let mut leaves = Vec::new();
            let mut branching = false;
            for x in base {
                if decode_finite(&g.at(&x)?, env, "w")?.is_empty() {
                    leaves.push(Key::pair(x, Key::FunTable(vec![])));
                } else {
                    branching = true;
                }
            }
            if branching && !leaves.is_empty() {
                return Err(Error::InfiniteUnsupported("w".into()));
            }
            limited(if branching { vec![] } else { leaves })
        }
    }
}

fn limited(keys: Vec<Key>) -> Result<KeySpace> {
    if keys.len() > DECODE_LIMIT {
        return Err(Error::TooLarge("decoded code".into()));
    }
    Ok(KeySpace::finite(keys))
}

fn decode_finite(c: &UCode, env: UEnv, what: &str) -> Result<Vec<Key>> {
    match decode(c, env)? {
        KeySpace::Finite(ks) => Ok(ks),
        _ => Err(Error::InfiniteUnsupported(format!("{what} over an infinite code"))),
    }
}

/// Branching of a code tree over the decoded keys of its code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branches {
    Table(Vec<(Key, SvTree)>),
    /// `k ↦` the tree of `nV(k)`; only over the naturals.
    Numerals,
    Const(Box<SvTree>),
    /// `s ↦ lift(s)`, over the trees of a lower level.
    UnivLift,
}

/// Element `sup(code, branches)` of `sV = W(Uo, To)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvTree {
    pub code: UCode,
    pub branches: Branches,
}

impl SvTree {
    pub fn leaf() -> SvTree {
        SvTree {
            code: UCode::N0,
            branches: Branches::Table(vec![]),
        }
    }

    /// Tree whose embedding is `nV(n)`.
    pub fn numeral(n: u64) -> SvTree {
        let mut t = SvTree::leaf();
        for _ in 0..n {
            t = SvTree {
                code: UCode::N1,
                branches: Branches::Table(vec![(Key::Atom(0), t)]),
            };
        }
        t
    }

    pub fn natv() -> SvTree {
        SvTree {
            code: UCode::N,
            branches: Branches::Numerals,
        }
    }

    pub fn to_key(&self) -> Key {
        let b = match &self.branches {
            Branches::Table(t) => Key::FunTable(t.iter().map(|(k, s)| (k.clone(), s.to_key())).collect()),
            Branches::Numerals => Key::Atom(200),
            Branches::Const(t) => Key::pair(Key::Atom(201), t.to_key()),
            Branches::UnivLift => Key::Atom(202),
        };
        Key::pair(self.code.to_key(), b)
    }

    pub fn from_key(k: &Key) -> Option<SvTree> {
        let (c, b) = k.as_pair()?;
        let code = UCode::from_key(c)?;
        let branches = match b {
            Key::FunTable(t) => Branches::Table(
                t.iter()
                    .map(|(k, s)| Some((k.clone(), SvTree::from_key(s)?)))
                    .collect::<Option<Vec<_>>>()?,
            ),
            Key::Atom(200) => Branches::Numerals,
            Key::Atom(202) => Branches::UnivLift,
            Key::Pair(t, s) if **t == Key::Atom(201) => Branches::Const(Box::new(SvTree::from_key(s)?)),
            _ => return None,
        };
        Some(SvTree { code, branches })
    }

    /// Checks the branching is total over the decoded keys, recursively.
    pub fn well_formed(&self, env: UEnv) -> Result<()> {
        let space = decode(&self.code, env)?;
        match (&self.branches, &space) {
            (Branches::Table(t), KeySpace::Finite(ks)) => {
                if t.len() != ks.len() || t.iter().zip(ks).any(|((a, _), b)| a != b) {
                    return Err(Error::IllFormedCode("branches do not match the decoded keys".into()));
                }
                t.iter().try_for_each(|(_, s)| s.well_formed(env))
            }
            (Branches::Numerals, KeySpace::Naturals) => Ok(()),
            (Branches::Const(s), _) => s.well_formed(env),
            (Branches::UnivLift, KeySpace::Trees(_)) => Ok(()),
            _ => Err(Error::IllFormedCode("branch form does not fit the code".into())),
        }
    }

    /// The same tree one level up: every code `c` becomes `lft(c)`.
    pub fn lift(&self) -> SvTree {
        let branches = match &self.branches {
            Branches::Table(t) => Branches::Table(t.iter().map(|(k, s)| (k.clone(), s.lift())).collect()),
            Branches::Numerals => Branches::Numerals,
            Branches::Const(s) => Branches::Const(Box::new(s.lift())),
            Branches::UnivLift => Branches::UnivLift,
        };
        SvTree {
            code: UCode::lft(self.code.clone()),
            branches,
        }
    }
}

struct ConstEmb {
    space: KeySpace,
    child: VSet,
}

impl Generator for ConstEmb {
    fn describe(&self) -> String {
        format!("const({:?},{:x})", self.space, self.child.digest())
    }
    fn contains(&self, key: &Key) -> bool {
        match &self.space {
            KeySpace::Finite(ks) => ks.binary_search(key).is_ok(),
            KeySpace::Naturals => matches!(key, Key::Numeral(_)),
            KeySpace::Trees(env) => is_tree_key(key, *env),
            KeySpace::Generated => false,
        }
    }
    fn keys_up_to(&self, bound: u64) -> (Vec<Key>, bool) {
        match &self.space {
            KeySpace::Finite(ks) => (ks.clone(), true),
            KeySpace::Naturals => ((0..=bound).map(Key::Numeral).collect(), false),
            KeySpace::Trees(env) => (sample_tree_keys(*env, bound), false),
            KeySpace::Generated => (vec![], false),
        }
    }
    fn child(&self, _key: &Key) -> Option<VSet> {
        Some(self.child.clone())
    }
    fn rank(&self) -> Rank {
        match self.child.rank() {
            Rank::Fin(n) => Rank::Fin(n + 1),
            r => r,
        }
    }
}

/// `emb(sup(A, f)) = sup(To A, emb ∘ f)`.
pub fn emb(t: &SvTree, env: UEnv) -> Result<VSet> {
    let space = decode(&t.code, env)?;
    match (&t.branches, space) {
        (Branches::Table(tab), KeySpace::Finite(ks)) => {
            if tab.len() != ks.len() {
                return Err(Error::IllFormedCode("branches do not match the decoded keys".into()));
            }
            let mut children = Vec::with_capacity(tab.len());
            for (k, s) in tab {
                children.push((k.clone(), emb(s, env)?));
            }
            mk_sup(KeySpace::Finite(ks), ChildMap::Table(children))
        }
        (Branches::Numerals, KeySpace::Naturals) => Ok(natv()),
        (Branches::UnivLift, KeySpace::Trees(lower)) => Ok(u_v(lower)),
        (Branches::Const(s), KeySpace::Finite(ks)) => {
            let c = emb(s, env)?;
            Ok(VSet::from_table(ks.into_iter().map(|k| (k, c.clone())).collect()))
        }
        (Branches::Const(s), space) => Ok(VSet::lazy(Arc::new(ConstEmb {
            space,
            child: emb(s, env)?,
        }))),
        _ => Err(Error::IllFormedCode("branch form does not fit the code".into())),
    }
}

/// `uV(I_k, F_k) = sup(sV, emb)`.
pub fn u_v(env: UEnv) -> VSet {
    mk_sup(KeySpace::Trees(env), ChildMap::UnivGen(env)).expect("universe is well formed")
}

/// `V_k`.
pub fn v_k(k: u32) -> VSet {
    u_v(UEnv::new(k))
}

pub fn is_tree_key(key: &Key, env: UEnv) -> bool {
    SvTree::from_key(key).is_some_and(|t| t.well_formed(env).is_ok())
}

pub fn tree_child(key: &Key, env: UEnv) -> Option<VSet> {
    let t = SvTree::from_key(key)?;
    t.well_formed(env).ok()?;
    emb(&t, env).ok()
}

/// A few trees used when a universe has to be probed: numerals up to the bound and `natv`.
pub fn sample_tree_keys(_env: UEnv, bound: u64) -> Vec<Key> {
    let mut keys: Vec<Key> = (0..=bound).map(|n| SvTree::numeral(n).to_key()).collect();
    keys.push(SvTree::natv().to_key());
    keys
}

/// A tree embedding to `x`, built from `x`'s own structure.
///
/// `Err` carries the reason no tree exists (`Fails`) or could not be found
/// within budget (`Unknown`).
pub fn reify(x: &VSet, env: UEnv, budget: &Budget) -> std::result::Result<SvTree, Verdict> {
    match x.children() {
        ChildMap::NumeralGen => Ok(SvTree::natv()),
        ChildMap::UnivGen(inner) => match UCode::universe(inner.level, env.level) {
            Some(code) => Ok(SvTree {
                code,
                branches: Branches::UnivLift,
            }),
            None => Err(Verdict::fails(format!(
                "universe {} is not a member of universe {}",
                inner.level, env.level
            ))),
        },
        ChildMap::Table(_) | ChildMap::Rule(_) => {
            let reps = class_reps(x, budget)?;
            let mut branches = Vec::with_capacity(reps.len());
            let code = fin_code(reps.len());
            let keys = match decode(&code, env) {
                Ok(KeySpace::Finite(ks)) => ks,
                _ => return Err(Verdict::fails("finite code did not decode")),
            };
            for (k, r) in keys.into_iter().zip(&reps) {
                branches.push((k, reify(r, env, budget)?));
            }
            Ok(SvTree {
                code,
                branches: Branches::Table(branches),
            })
        }
    }
}

/// Representatives of the `=_V` classes of members of a set with finitely many keys.
fn class_reps(x: &VSet, budget: &Budget) -> std::result::Result<Vec<VSet>, Verdict> {
    let (members, complete) = x.members_up_to(budget.nat_bound);
    if !complete {
        // infinitely many keys, but one class
        return match (x.generator().and_then(|g| g.uniform_child()), members.is_empty()) {
            (Some(c), false) => Ok(vec![c]),
            _ => Err(budget.unknown()),
        };
    }
    let mut reps: Vec<VSet> = Vec::new();
    for (_, c) in members {
        let mut seen = false;
        for r in &reps {
            match eq_v(r, &c, budget) {
                Verdict::Holds(_) => {
                    seen = true;
                    break;
                }
                Verdict::Fails(_) => {}
                u @ Verdict::Unknown(_) => return Err(u),
            }
        }
        if !seen {
            reps.push(c);
        }
    }
    Ok(reps)
}

/// `x ∈ V_k`, with the tree as witness key.
pub fn univ_member(x: &VSet, env: UEnv, budget: &Budget) -> Verdict {
    match reify(x, env, budget) {
        Ok(t) => Verdict::witness(t.to_key()),
        Err(v) => v,
    }
}

/// Certificate-carrying membership in `V_k`: a tree with top code `cert`
/// whose branches reach every member class of `alpha`.
pub fn check_mem_u(alpha: &VSet, k: u32, cert: &UCode, budget: &Budget) -> Verdict {
    let env = UEnv::new(k);
    let space = match decode(cert, env) {
        Ok(s) => s,
        Err(Error::InfiniteUnsupported(_)) | Err(Error::TooLarge(_)) => return budget.unknown(),
        Err(e) => return Verdict::fails(e.to_string()),
    };
    let tree = match space {
        KeySpace::Naturals => SvTree {
            code: cert.clone(),
            branches: Branches::Numerals,
        },
        KeySpace::Trees(_) => SvTree {
            code: cert.clone(),
            branches: Branches::UnivLift,
        },
        KeySpace::Finite(ks) => {
            let reps = match class_reps(alpha, budget) {
                Ok(r) => r,
                Err(v) => return v,
            };
            let Some(assign) = surjection(&ks, alpha, &reps, budget) else {
                return Verdict::fails(format!(
                    "code {cert} decodes to {} keys, cannot cover {} member classes",
                    ks.len(),
                    reps.len()
                ));
            };
            let mut branches = Vec::with_capacity(ks.len());
            let mut trees: Vec<Option<SvTree>> = vec![None; reps.len()];
            for (key, class) in ks.into_iter().zip(assign) {
                if trees[class].is_none() {
                    match reify(&reps[class], env, budget) {
                        Ok(t) => trees[class] = Some(t),
                        Err(v) => return v,
                    }
                }
                branches.push((key, trees[class].clone().expect("reified")));
            }
            SvTree {
                code: cert.clone(),
                branches: Branches::Table(branches),
            }
        }
        KeySpace::Generated => return budget.unknown(),
    };
    let embedded = match emb(&tree, env) {
        Ok(v) => v,
        Err(e) => return Verdict::fails(e.to_string()),
    };
    match eq_v(&embedded, alpha, budget) {
        Verdict::Holds(_) => Verdict::witness(tree.to_key()),
        other => other,
    }
}

/// Assigns each decoded key a member class so that every class is hit.
/// Keys that are also keys of `alpha` go to their own class.
fn surjection(keys: &[Key], alpha: &VSet, reps: &[VSet], budget: &Budget) -> Option<Vec<usize>> {
    if reps.is_empty() {
        return keys.is_empty().then(Vec::new);
    }
    if keys.len() < reps.len() {
        return None;
    }
    let class_of = |k: &Key| -> Option<usize> {
        let c = alpha.child(k).ok()?;
        reps.iter().position(|r| eq_v(r, &c, budget).is_holds())
    };
    let mut assign: Vec<Option<usize>> = keys.iter().map(class_of).collect();
    let mut covered = vec![false; reps.len()];
    for c in assign.iter().flatten() {
        covered[*c] = true;
    }
    for slot in assign.iter_mut().filter(|s| s.is_none()) {
        *slot = Some(covered.iter().position(|c| !c).unwrap_or(0));
        covered[slot.expect("assigned")] = true;
    }
    if covered.iter().all(|c| *c) {
        return Some(assign.into_iter().map(|c| c.expect("assigned")).collect());
    }
    // fall back to a plain index surjection
    Some((0..keys.len()).map(|i| i.min(reps.len() - 1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zf::{mem_v, numeral, subset_v};

    fn env(k: u32) -> UEnv {
        UEnv::new(k)
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode(&UCode::N0, env(0)).unwrap(), KeySpace::Finite(vec![]));
        assert_eq!(
            decode(&UCode::plus(UCode::N1, UCode::N1), env(0)).unwrap(),
            KeySpace::Finite(vec![Key::inl(Key::Atom(0)), Key::inr(Key::Atom(0))])
        );
        assert_eq!(
            decode(&UCode::sigma(UCode::N1, CodeFam::constant(UCode::N1)), env(0)).unwrap(),
            KeySpace::Finite(vec![Key::pair(Key::Atom(0), Key::Atom(0))])
        );
        assert_eq!(decode(&UCode::Ix, env(0)).unwrap(), KeySpace::Finite(vec![]));
        assert!(matches!(
            decode(&UCode::lft(UCode::N), env(0)),
            Err(Error::IllFormedCode(_))
        ));
        assert_eq!(decode(&UCode::lft(UCode::N), env(1)).unwrap(), KeySpace::Naturals);
        assert_eq!(
            decode(&UCode::universe(0, 1).unwrap(), env(1)).unwrap(),
            KeySpace::Trees(env(0))
        );
    }

    #[test]
    fn finite_w_codes() {
        let leaf_only = UCode::w(UCode::N1, CodeFam::constant(UCode::N0));
        assert_eq!(
            decode(&leaf_only, env(0)).unwrap().clone(),
            KeySpace::Finite(vec![Key::pair(Key::Atom(0), Key::FunTable(vec![]))])
        );
        let no_base = UCode::w(UCode::N1, CodeFam::constant(UCode::N1));
        assert_eq!(decode(&no_base, env(0)).unwrap(), KeySpace::Finite(vec![]));
        let nat_like = UCode::w(
            UCode::plus(UCode::N1, UCode::N1),
            CodeFam::table(vec![
                (Key::inl(Key::Atom(0)), UCode::N0),
                (Key::inr(Key::Atom(0)), UCode::N1),
            ]),
        );
        assert!(matches!(decode(&nat_like, env(0)), Err(Error::InfiniteUnsupported(_))));
    }

    #[test]
    fn code_keys_round_trip() {
        let codes = vec![
            UCode::N0,
            UCode::lft(UCode::N),
            UCode::pi(UCode::N1, CodeFam::table(vec![(Key::Atom(0), UCode::N)])),
            UCode::w(UCode::Ix, CodeFam::Lift),
            UCode::sigma(fin_code(3), CodeFam::constant(UCode::N1)),
        ];
        for c in codes {
            assert_eq!(UCode::from_key(&c.to_key()), Some(c));
        }
        let t = SvTree::numeral(3).lift();
        assert_eq!(SvTree::from_key(&t.to_key()), Some(t));
    }

    #[test]
    fn embedding_examples() {
        let b = Budget::default();
        assert!(eq_v(&emb(&SvTree::leaf(), env(0)).unwrap(), &VSet::empty(), &b).is_holds());
        let one = SvTree {
            code: UCode::N1,
            branches: Branches::Const(Box::new(SvTree::leaf())),
        };
        assert!(eq_v(&emb(&one, env(0)).unwrap(), &numeral(1), &b).is_holds());
        for k in 0..=8 {
            assert!(eq_v(&emb(&SvTree::numeral(k), env(0)).unwrap(), &numeral(k), &b).is_holds());
        }
        assert!(emb(&SvTree::natv(), env(0)).unwrap().is_natv());
    }

    #[test]
    fn hierarchy_membership() {
        let b = Budget::default();
        assert!(mem_v(&VSet::empty(), &v_k(0), &b).is_holds());
        assert!(mem_v(&natv(), &v_k(0), &b).is_holds());
        assert!(mem_v(&v_k(0), &v_k(1), &b).is_holds());
        assert!(mem_v(&v_k(1), &v_k(1), &b).is_fails());
        assert!(mem_v(&v_k(0), &v_k(0), &b).is_fails());
        assert!(mem_v(&VSet::singleton(v_k(0)), &v_k(0), &b).is_fails());
        assert!(mem_v(&VSet::singleton(v_k(0)), &v_k(2), &b).is_holds());
        let w = mem_v(&v_k(0), &v_k(2), &b);
        let t = SvTree::from_key(w.first_witness().unwrap()).unwrap();
        assert!(eq_v(&emb(&t, env(2)).unwrap(), &v_k(0), &b).is_holds());
    }

    #[test]
    fn reified_trees_embed_back() {
        let b = Budget::default();
        let x = VSet::from_children(vec![numeral(2), natv(), numeral(2), VSet::empty()]);
        let t = reify(&x, env(0), &b).unwrap();
        t.well_formed(env(0)).unwrap();
        assert!(eq_v(&emb(&t, env(0)).unwrap(), &x, &b).is_holds());
    }

    #[test]
    fn certificates() {
        let b = Budget::default();
        assert!(check_mem_u(&VSet::empty(), 0, &UCode::N0, &b).is_holds());
        assert!(check_mem_u(&natv(), 0, &UCode::N, &b).is_holds());
        assert!(check_mem_u(&numeral(1), 0, &UCode::N0, &b).is_fails());
        let bool_set = VSet::from_children(vec![numeral(0), numeral(1)]);
        assert!(check_mem_u(&bool_set, 0, &fin_code(2), &b).is_holds());
        assert!(check_mem_u(&bool_set, 0, &UCode::N1, &b).is_fails());
        assert!(check_mem_u(&v_k(0), 1, &UCode::universe(0, 1).unwrap(), &b).is_holds());
        // squashing natV leaves one member class
        let sq_nat = crate::zf::sq_v(&natv());
        assert!(check_mem_u(&sq_nat, 0, &UCode::N1, &b).is_holds());
        assert!(mem_v(&sq_nat, &v_k(0), &b).is_holds());
    }

    #[test]
    fn cumulativity_on_small_sets() {
        let b = Budget::default();
        for x in [
            VSet::empty(),
            numeral(3),
            natv(),
            VSet::from_children(vec![natv(), numeral(1)]),
        ] {
            assert!(mem_v(&x, &v_k(0), &b).is_holds());
            assert!(mem_v(&x, &v_k(1), &b).is_holds());
        }
        let t = SvTree::numeral(2);
        let lifted = t.lift();
        assert_eq!(decode(&lifted.code, env(1)).unwrap(), decode(&t.code, env(0)).unwrap());
        assert!(eq_v(&emb(&lifted, env(1)).unwrap(), &emb(&t, env(0)).unwrap(), &b).is_holds());
        let small = VSet::from_children(vec![VSet::empty(), numeral(1)]);
        assert!(subset_v(&small, &v_k(1), &b).is_holds());
    }
}
