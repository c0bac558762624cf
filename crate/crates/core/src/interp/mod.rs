//! The set-theoretic interpretation. A context is a set; its keys are the
//! points of `κ(Γ)`. Types and terms are evaluated pointwise, substitutions
//! map points to points.
//!
//! Points of `Γ ▷ A` are keys `pair(x, u)` with `x` a point of `Γ` and `u` a
//! key of `A(x)`, since the extended context is `sigmaV(Γ, A)`.

mod check;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::syntax::{expand_in, sub_cod, Ctx, Sub, Tm, Ty};
use crate::universe::{decode, v_k, CodeFam, UCode, UEnv};
use crate::zf::{
    eq_v, id_v, inl_v, inr_v, mem_v, natv, numeral, numeral_verdict, pair_v, pi_v, sigma_v, sq_v, sum_v, unpair_v,
    Budget, FnGenerator, Key, KeySpace, Rank, VFamily, VSet, Verdict,
};

pub use check::{check_judgment, CheckConfig, Checker};

/// The single point of the empty context.
pub fn unit_point() -> Key {
    Key::Atom(0)
}

type TyMemo = HashMap<(Ctx, Ty, Key), VSet>;

/// Evaluator with memo tables. Clones share the memo tables and the
/// equality cache of the budget.
#[derive(Clone)]
pub struct Interp {
    pub budget: Budget,
    ctxs: Arc<Mutex<HashMap<Ctx, VSet>>>,
    tys: Arc<Mutex<TyMemo>>,
    /// Whether two contexts are known to differ, per transport.
    apart: Arc<Mutex<HashMap<(Ctx, Ctx), bool>>>,
}

const TY_MEMO_LIMIT: usize = 1 << 16;

/// Key witnessing a membership, or the reason there is none.
fn witness(v: Verdict, what: impl FnOnce() -> String) -> Result<Key> {
    match v {
        Verdict::Holds(w) => w.into_iter().next().ok_or_else(|| Error::PremiseFails(what())),
        Verdict::Fails(r) => Err(Error::PremiseFails(format!("{}: {r}", what()))),
        Verdict::Unknown(i) => Err(Error::undecided(i)),
    }
}

fn split_point(x: &Key) -> Result<(Key, Key)> {
    x.as_pair()
        .map(|(a, b)| (a.clone(), b.clone()))
        .ok_or_else(|| Error::KeyOutOfRange(x.clone()))
}

fn split_ctx(g: &Ctx) -> Result<(Ctx, Ty)> {
    match g {
        Ctx::Ext(h, a) => Ok(((**h).clone(), (**a).clone())),
        _ => Err(Error::Scope(format!("{g} has no last type"))),
    }
}

fn cod(f: &Sub, dom: &Ctx) -> Result<Ctx> {
    sub_cod(f, dom).map_err(Error::Scope)
}

impl Interp {
    pub fn new(budget: Budget) -> Interp {
        Interp {
            budget,
            ctxs: Arc::default(),
            tys: Arc::default(),
            apart: Arc::default(),
        }
    }

    fn decided(&self, v: Verdict) -> Result<bool> {
        match v {
            Verdict::Holds(_) => Ok(true),
            Verdict::Fails(_) => Ok(false),
            Verdict::Unknown(i) => Err(Error::undecided(i)),
        }
    }

    pub fn ctx(&self, g: &Ctx) -> Result<VSet> {
        if let Some(v) = self.ctxs.lock().unwrap_or_else(|e| e.into_inner()).get(g) {
            return Ok(v.clone());
        }
        let v = match g {
            Ctx::Empty => VSet::singleton(VSet::empty()),
            Ctx::Ext(h, a) => {
                let base = self.ctx(h)?;
                let fam = match base.table() {
                    Some(t) => {
                        let mut entries = Vec::with_capacity(t.len());
                        for (x, _) in t {
                            entries.push((x.clone(), self.ty(h, a, x)?));
                        }
                        VFamily::table(&base, entries)?
                    }
                    None => {
                        let (me, h, a) = (self.clone(), (**h).clone(), (**a).clone());
                        VFamily::from_fn(&base, format!("{h} |- {a}"), move |x| me.ty(&h, &a, x).ok())
                    }
                };
                sigma_v(&base, &fam)
            }
            Ctx::Ref(n) => return Err(Error::Scope(format!("unresolved context `{n}`"))),
        };
        self.ctxs
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(g.clone(), v.clone());
        Ok(v)
    }

    /// Points of `κ(Γ)` up to the probe bound; `true` when complete.
    pub fn points(&self, g: &Ctx) -> Result<(Vec<Key>, bool)> {
        Ok(self.ctx(g)?.keys_up_to(self.budget.nat_bound))
    }

    /// The family `x ↦ A(x)` over the keys of `base`, tabulated when finite.
    fn family(
        &self,
        g: &Ctx,
        a: &Ty,
        base: &VSet,
        at: impl Fn(&Key) -> Key + Send + Sync + 'static,
    ) -> Result<VFamily> {
        match base.table() {
            Some(t) => {
                let mut entries = Vec::with_capacity(t.len());
                for (u, _) in t {
                    entries.push((u.clone(), self.ty(g, a, &at(u))?));
                }
                VFamily::table(base, entries)
            }
            None => {
                let (me, g, a) = (self.clone(), g.clone(), a.clone());
                let desc = format!("{g} |- {a} @ {:x}", base.digest());
                Ok(VFamily::from_fn(base, desc, move |u| me.ty(&g, &a, &at(u)).ok()))
            }
        }
    }

    /// `A(x)`.
    pub fn ty(&self, g: &Ctx, a: &Ty, x: &Key) -> Result<VSet> {
        let memo_key = (g.clone(), a.clone(), x.clone());
        if let Some(v) = self.tys.lock().unwrap_or_else(|e| e.into_inner()).get(&memo_key) {
            return Ok(v.clone());
        }
        let v = self.ty_uncached(g, a, x)?;
        let mut memo = self.tys.lock().unwrap_or_else(|e| e.into_inner());
        if memo.len() >= TY_MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(memo_key, v.clone());
        Ok(v)
    }

    fn ty_uncached(&self, g: &Ctx, a: &Ty, x: &Key) -> Result<VSet> {
        Ok(match a {
            Ty::Nat => natv(),
            Ty::N0 => VSet::empty(),
            Ty::U(k) => v_k(*k),
            Ty::Pi(dom, body) | Ty::Sigma(dom, body) => {
                let ax = self.ty(g, dom, x)?;
                let ext = g.clone().ext((**dom).clone());
                let x0 = x.clone();
                let fam = self.family(&ext, body, &ax, move |u| Key::pair(x0.clone(), u.clone()))?;
                if matches!(a, Ty::Pi(..)) {
                    pi_v(&ax, &fam, &self.budget)?
                } else {
                    sigma_v(&ax, &fam)
                }
            }
            Ty::Id(t, s, r) => {
                let ax = self.ty(g, t, x)?;
                let ks = witness(mem_v(&self.tm(g, s, x)?, &ax, &self.budget), || {
                    format!("left side of {a} is not an element")
                })?;
                let kr = witness(mem_v(&self.tm(g, r, x)?, &ax, &self.budget), || {
                    format!("right side of {a} is not an element")
                })?;
                id_v(&ax, &ks, &kr, &self.budget)?
            }
            Ty::Sum(l, r) => sum_v(&self.ty(g, l, x)?, &self.ty(g, r, x)?),
            Ty::Br(t) => sq_v(&self.ty(g, t, x)?),
            Ty::Sub(t, f) => self.ty(&cod(f, g)?, t, &self.sub(g, f, x)?)?,
            Ty::Ref(n) => return Err(Error::Scope(format!("unresolved type `{n}`"))),
        })
    }

    /// `a(x)`.
    pub fn tm(&self, g: &Ctx, t: &Tm, x: &Key) -> Result<VSet> {
        let b = &self.budget;
        Ok(match t {
            Tm::Var => {
                let (h, a) = split_ctx(g)?;
                let (x0, u) = split_point(x)?;
                self.ty(&h, &a, &x0)?.child(&u)?
            }
            Tm::Lam(a, _, body) => {
                let ax = self.ty(g, a, x)?;
                let ext = g.clone().ext((**a).clone());
                match ax.table() {
                    Some(t) => {
                        let mut graph = Vec::with_capacity(t.len());
                        for (u, au) in t {
                            graph.push((
                                u.clone(),
                                pair_v(au, &self.tm(&ext, body, &Key::pair(x.clone(), u.clone()))?),
                            ));
                        }
                        VSet::from_table(graph)
                    }
                    None => {
                        let (me, ax2, ax3, x0, body) =
                            (self.clone(), ax.clone(), ax.clone(), x.clone(), (**body).clone());
                        let ax4 = ax.clone();
                        VSet::lazy(Arc::new(FnGenerator {
                            description: format!("lam {ext} |- {body} @ {x}"),
                            contains: move |u: &Key| ax2.contains_key(u),
                            keys: move |n| ax3.keys_up_to(n),
                            child: move |u: &Key| {
                                let v = me.tm(&ext, &body, &Key::pair(x0.clone(), u.clone())).ok()?;
                                Some(pair_v(&ax4.child(u).ok()?, &v))
                            },
                            rank: Rank::Unknown,
                        }))
                    }
                }
            }
            Tm::App(a, bt, c, arg) => {
                let pv = self.ty(g, &Ty::pi((**a).clone(), (**bt).clone()), x)?;
                let f = witness(mem_v(&self.tm(g, c, x)?, &pv, b), || {
                    "applied term is not a function of the stated type".into()
                })?;
                let ax = self.ty(g, a, x)?;
                let y = witness(mem_v(&self.tm(g, arg, x)?, &ax, b), || {
                    "argument is not in the domain".into()
                })?;
                let u = f.apply(&y).ok_or_else(|| Error::KeyOutOfRange(y.clone()))?;
                let ext = g.clone().ext((**a).clone());
                self.ty(&ext, bt, &Key::pair(x.clone(), y.clone()))?.child(u)?
            }
            Tm::Pr(l, r) => pair_v(&self.tm(g, l, x)?, &self.tm(g, r, x)?),
            Tm::Pr1(c) => unpair_v(&self.tm(g, c, x)?, b)?.0,
            Tm::Pr2(c) => unpair_v(&self.tm(g, c, x)?, b)?.1,
            Tm::Rr(a) => self.tm(g, a, x)?,
            Tm::Zero => numeral(0),
            Tm::Succ(a) => VSet::singleton(self.tm(g, a, x)?),
            Tm::Rec(c, d, e, n) => {
                let m = match numeral_verdict(&self.tm(g, n, x)?, b) {
                    Ok(Some(m)) => m,
                    Ok(None) => return Err(Error::PremiseFails("recursion argument is not a numeral".into())),
                    Err(i) => return Err(Error::undecided(i)),
                };
                let gn = g.clone().ext(Ty::Nat);
                let gnc = gn.clone().ext((**c).clone());
                let mut v = self.tm(g, d, x)?;
                for k in 0..m {
                    let p = Key::pair(x.clone(), Key::Numeral(k));
                    let y = witness(mem_v(&v, &self.ty(&gn, c, &p)?, b), || {
                        format!("recursion step {k} leaves the motive")
                    })?;
                    v = self.tm(&gnc, e, &Key::pair(p, y))?;
                }
                v
            }
            Tm::R0(..) => return Err(Error::PremiseFails("N0 has no elements".into())),
            Tm::Lf(_, _, a) => inl_v(&self.tm(g, a, x)?),
            Tm::Rg(_, _, a) => inr_v(&self.tm(g, a, x)?),
            Tm::SumRec(a, bt, _, d, e, c) => {
                let s = sum_v(&self.ty(g, a, x)?, &self.ty(g, bt, x)?);
                let w = witness(mem_v(&self.tm(g, c, x)?, &s, b), || {
                    "scrutinee is not in the sum".into()
                })?;
                match w {
                    Key::Inl(u) => self.tm(&g.clone().ext((**a).clone()), d, &Key::pair(x.clone(), *u))?,
                    Key::Inr(u) => self.tm(&g.clone().ext((**bt).clone()), e, &Key::pair(x.clone(), *u))?,
                    other => return Err(Error::KeyOutOfRange(other)),
                }
            }
            Tm::BrIn(_) => VSet::empty(),
            Tm::Wh(a, _, k, body) => {
                let ax = self.ty(g, a, x)?;
                let w = witness(mem_v(&self.tm(g, k, x)?, &sq_v(&ax), b), || {
                    "eliminated term is not in the bracket type".into()
                })?;
                let ext = g.clone().ext((**a).clone());
                let at = |u: &Key| self.tm(&ext, body, &Key::pair(x.clone(), u.clone()));
                let v = at(&w)?;
                let (keys, complete) = ax.keys_up_to(b.nat_bound);
                for u in keys {
                    if !self.decided(eq_v(&v, &at(&u)?, b))? {
                        return Err(Error::PremiseFails("body of wh is not constant".into()));
                    }
                }
                if !complete {
                    return Err(Error::undecided(b.exhausted()));
                }
                v
            }
            Tm::Sub(a, f) => self.tm(&cod(f, g)?, a, &self.sub(g, f, x)?)?,
            Tm::Ty(a) => self.ty(g, a, x)?,
            Tm::Ref(n) => return Err(Error::Scope(format!("unresolved term `{n}`"))),
        })
    }

    /// `f(x)`, a point of the codomain of `f`.
    pub fn sub(&self, g: &Ctx, f: &Sub, x: &Key) -> Result<Key> {
        match f {
            Sub::Id(_) => Ok(x.clone()),
            Sub::Comp(f, h) => {
                let mid = cod(h, g)?;
                let y = self.sub(g, h, x)?;
                self.sub(&mid, f, &y)
            }
            Sub::Down(_) => Ok(split_point(x)?.0),
            Sub::Pair(h, a, t) => {
                let d = cod(h, g)?;
                let y = self.sub(g, h, x)?;
                let w = witness(mem_v(&self.tm(g, t, x)?, &self.ty(&d, a, &y)?, &self.budget), || {
                    "paired term is not in the stated type".into()
                })?;
                Ok(Key::pair(y, w))
            }
            Sub::Phi(from, to) => {
                let (gs, ds) = (self.ctx(from)?, self.ctx(to)?);
                // An undecided global equality (infinite contexts) leaves the
                // transport pointwise: it is defined wherever a witness exists.
                let pair = ((**from).clone(), (**to).clone());
                let cached = self.apart.lock().unwrap_or_else(|e| e.into_inner()).get(&pair).copied();
                let apart = match cached {
                    Some(b) => b,
                    None => {
                        let b = eq_v(&gs, &ds, &self.budget).is_fails();
                        self.apart.lock().unwrap_or_else(|e| e.into_inner()).insert(pair, b);
                        b
                    }
                };
                if apart {
                    return Err(Error::PremiseFails(format!("{from} and {to} are not equal")));
                }
                witness(mem_v(&gs.child(x)?, &ds, &self.budget), || {
                    "transport found no point".into()
                })
            }
            Sub::Ref(n) => Err(Error::Scope(format!("unresolved substitution `{n}`"))),
            other => {
                let e = expand_in(other, g).expect("derived substitution");
                self.sub(g, &e, x)
            }
        }
    }

    /// A universe code for the type denoted by `t` at `x`, when `t` is a
    /// type built from coded formers.
    pub fn code_of_tm(&self, g: &Ctx, t: &Tm, x: &Key, level: u32) -> Result<Option<UCode>> {
        match t {
            Tm::Ty(a) => self.code_of_ty(g, a, x, level),
            Tm::Sub(t, f) => self.code_of_tm(&cod(f, g)?, t, &self.sub(g, f, x)?, level),
            _ => Ok(None),
        }
    }

    pub fn code_of_ty(&self, g: &Ctx, a: &Ty, x: &Key, level: u32) -> Result<Option<UCode>> {
        let inhabited = |v: VSet| -> Result<UCode> {
            let (keys, _) = v.keys_up_to(0);
            Ok(if keys.is_empty() { UCode::N0 } else { UCode::N1 })
        };
        Ok(match a {
            Ty::Nat => Some(UCode::N),
            Ty::N0 => Some(UCode::N0),
            Ty::U(j) => UCode::universe(*j, level),
            Ty::Sum(l, r) => match (self.code_of_ty(g, l, x, level)?, self.code_of_ty(g, r, x, level)?) {
                (Some(cl), Some(cr)) => Some(UCode::plus(cl, cr)),
                _ => None,
            },
            Ty::Pi(dom, body) | Ty::Sigma(dom, body) => {
                let Some(cd) = self.code_of_ty(g, dom, x, level)? else {
                    return Ok(None);
                };
                let KeySpace::Finite(decoded) = decode(&cd, UEnv::new(level))? else {
                    return Ok(None);
                };
                let ax = self.ty(g, dom, x)?;
                let (keys, _) = ax.keys_up_to(0);
                let ext = g.clone().ext((**dom).clone());
                let mut entries = Vec::with_capacity(decoded.len());
                for d in decoded {
                    let u = if ax.contains_key(&d) {
                        d.clone()
                    } else {
                        match keys.first() {
                            Some(k) => k.clone(),
                            None => return Ok(None),
                        }
                    };
                    match self.code_of_ty(&ext, body, &Key::pair(x.clone(), u), level)? {
                        Some(c) => entries.push((d, c)),
                        None => return Ok(None),
                    }
                }
                let fam = CodeFam::table(entries);
                Some(if matches!(a, Ty::Pi(..)) {
                    UCode::pi(cd, fam)
                } else {
                    UCode::sigma(cd, fam)
                })
            }
            Ty::Id(..) => Some(inhabited(self.ty(g, a, x)?)?),
            Ty::Br(t) => Some(inhabited(self.ty(g, t, x)?)?),
            Ty::Sub(t, f) => self.code_of_ty(&cod(f, g)?, t, &self.sub(g, f, x)?, level)?,
            Ty::Ref(_) => None,
        })
    }
}
