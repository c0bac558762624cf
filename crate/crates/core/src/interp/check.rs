//! Judgment checking: each judgment form becomes a quantification over the
//! points of its context.
//!
//! Every judgment also checks its presuppositions (context validity, the
//! types involved), so a judgment that holds has all of them holding too.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::Interp;
use crate::error::Error;
use crate::syntax::{sub_cod, well_scoped, Ctx, Judg, Sub, Tm, Ty};
use crate::universe::{check_mem_u, univ_member, UEnv};
use crate::zf::{eq_v, mem_v, Budget, Key, VSet, Verdict, DEFAULT_FUEL, DEFAULT_NAT_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub fuel: u64,
    pub nat_bound: u64,
    pub trace: bool,
}

impl Default for CheckConfig {
    fn default() -> CheckConfig {
        CheckConfig {
            fuel: DEFAULT_FUEL,
            nat_bound: DEFAULT_NAT_BOUND,
            trace: false,
        }
    }
}

impl CheckConfig {
    pub fn budget(&self) -> Budget {
        Budget::new(self.fuel, self.nat_bound)
    }
}

/// Checks a single judgment with fresh caches.
pub fn check_judgment(j: &Judg, cfg: &CheckConfig) -> Verdict {
    Checker::new(cfg).check(j)
}

type Memo<K, V> = Arc<Mutex<HashMap<K, V>>>;

/// Judgment checker; verdicts for contexts and types are memoized, so one
/// checker should be reused across related judgments.
#[derive(Clone)]
pub struct Checker {
    pub interp: Interp,
    trace: bool,
    ctx_ok: Memo<Ctx, Verdict>,
    ty_ok: Memo<(Ctx, Ty), Verdict>,
    classes: Memo<Ctx, Result<Vec<usize>, Verdict>>,
}

/// Budget exhaustion and unsupported infinite constructions are not
/// refutations.
fn from_err(e: Error, budget: &Budget) -> Verdict {
    match e {
        Error::UndecidedEquality { .. } | Error::InfiniteUnsupported(_) | Error::TooLarge(_) => budget.unknown(),
        other => Verdict::fails(other.to_string()),
    }
}

fn quiet(v: Verdict) -> Verdict {
    match v {
        Verdict::Holds(_) => Verdict::holds(),
        other => other,
    }
}

impl Checker {
    pub fn new(cfg: &CheckConfig) -> Checker {
        Checker {
            interp: Interp::new(cfg.budget()),
            trace: cfg.trace,
            ctx_ok: Arc::default(),
            ty_ok: Arc::default(),
            classes: Arc::default(),
        }
    }

    fn budget(&self) -> &Budget {
        &self.interp.budget
    }

    pub fn check(&self, j: &Judg) -> Verdict {
        if let Err(e) = well_scoped(j) {
            return Verdict::fails(format!("scope error: {e}"));
        }
        let v = match j {
            Judg::CtxValid(g) => self.ctx_valid(g),
            Judg::CtxEq(g, d) => self.ctx_valid(g).and_then(|| self.ctx_valid(d)).and_then(|| {
                match (self.interp.ctx(g), self.interp.ctx(d)) {
                    (Ok(a), Ok(b)) => quiet(eq_v(&a, &b, self.budget())),
                    (Err(e), _) | (_, Err(e)) => from_err(e, self.budget()),
                }
            }),
            Judg::IsTy(g, a) => self.is_ty(g, a),
            Judg::TyEq(g, a, b) => self.is_ty(g, a).and_then(|| self.is_ty(g, b)).and_then(|| {
                self.forall(g, |x| {
                    let (va, vb) = (self.interp.ty(g, a, x)?, self.interp.ty(g, b, x)?);
                    Ok(quiet(eq_v(&va, &vb, self.budget())))
                })
            }),
            Judg::Elt(g, t, a) => self.elt(g, t, a),
            Judg::EltEq(g, s, t, a) => self.elt(g, s, a).and_then(|| self.elt(g, t, a)).and_then(|| {
                self.forall(g, |x| {
                    let (vs, vt) = (self.interp.tm(g, s, x)?, self.interp.tm(g, t, x)?);
                    Ok(quiet(eq_v(&vs, &vt, self.budget())))
                })
            }),
            Judg::IsSub(f, g, d) => self.is_sub(f, g, d),
            Judg::SubEq(f, h, g, d) => self.is_sub(f, g, d).and_then(|| self.is_sub(h, g, d)).and_then(|| {
                let ds = match self.interp.ctx(d) {
                    Ok(s) => s,
                    Err(e) => return from_err(e, self.budget()),
                };
                self.forall(g, |x| {
                    let (y1, y2) = (self.interp.sub(g, f, x)?, self.interp.sub(g, h, x)?);
                    Ok(quiet(eq_v(&ds.child(&y1)?, &ds.child(&y2)?, self.budget())))
                })
            }),
        };
        if self.trace {
            eprintln!("{j}: {v}");
        }
        v
    }

    /// Conjunction over the points of `g`; bounded when the points were truncated.
    fn forall(&self, g: &Ctx, f: impl Fn(&Key) -> Result<Verdict, Error>) -> Verdict {
        let (points, complete) = match self.interp.points(g) {
            Ok(p) => p,
            Err(e) => return from_err(e, self.budget()),
        };
        let mut acc = Verdict::holds();
        for x in &points {
            let v = f(x).unwrap_or_else(|e| from_err(e, self.budget()));
            if self.trace {
                eprintln!("  at {x}: {v}");
            }
            acc = acc.and(v);
            if acc.is_fails() {
                return acc;
            }
        }
        if complete {
            acc
        } else {
            acc.bounded_by(self.budget())
        }
    }

    /// For each probed point, the index of the first point in its `κ(Γ)` class.
    fn classes(&self, g: &Ctx) -> Result<Vec<usize>, Verdict> {
        if let Some(c) = self.classes.lock().unwrap_or_else(|e| e.into_inner()).get(g) {
            return c.clone();
        }
        let compute = || -> Result<Vec<usize>, Verdict> {
            let set = self.interp.ctx(g).map_err(|e| from_err(e, self.budget()))?;
            let (members, _) = set.members_up_to(self.budget().nat_bound);
            let mut rep = Vec::with_capacity(members.len());
            for i in 0..members.len() {
                let mut r = i;
                for j in 0..i {
                    if rep[j] != j {
                        continue;
                    }
                    match eq_v(&members[i].1, &members[j].1, self.budget()) {
                        Verdict::Holds(_) => {
                            r = j;
                            break;
                        }
                        Verdict::Fails(_) => {}
                        u => return Err(u),
                    }
                }
                rep.push(r);
            }
            Ok(rep)
        };
        let c = compute();
        self.classes
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(g.clone(), c.clone());
        c
    }

    /// `x ~ x'` in `κ(Γ)` implies `v(x) =_V v(x')`, for a pointwise-defined `v`.
    fn extensional(&self, g: &Ctx, what: &str, v: impl Fn(&Key) -> Result<VSet, Error>) -> Verdict {
        let reps = match self.classes(g) {
            Ok(r) => r,
            Err(v) => return v,
        };
        let (points, complete) = match self.interp.points(g) {
            Ok(p) => p,
            Err(e) => return from_err(e, self.budget()),
        };
        let mut acc = Verdict::holds();
        for (i, &r) in reps.iter().enumerate() {
            if r == i {
                continue;
            }
            let step = match (v(&points[i]), v(&points[r])) {
                (Ok(a), Ok(b)) => quiet(eq_v(&a, &b, self.budget()))
                    .negate_fail(|| format!("{what} is not extensional: {} and {} differ", points[i], points[r])),
                (Err(e), _) | (_, Err(e)) => from_err(e, self.budget()),
            };
            acc = acc.and(step);
            if acc.is_fails() {
                return acc;
            }
        }
        if complete {
            acc
        } else {
            acc.bounded_by(self.budget())
        }
    }

    pub fn ctx_valid(&self, g: &Ctx) -> Verdict {
        if let Some(v) = self.ctx_ok.lock().unwrap_or_else(|e| e.into_inner()).get(g) {
            return v.clone();
        }
        let v = match g {
            Ctx::Empty => Verdict::holds(),
            Ctx::Ext(h, a) => self.is_ty(h, a),
            Ctx::Ref(n) => Verdict::fails(format!("unresolved context `{n}`")),
        }
        .and_then(|| match self.interp.ctx(g) {
            Ok(_) => Verdict::holds(),
            Err(e) => from_err(e, self.budget()),
        });
        self.ctx_ok
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(g.clone(), v.clone());
        v
    }

    pub fn is_ty(&self, g: &Ctx, a: &Ty) -> Verdict {
        let memo = (g.clone(), a.clone());
        if let Some(v) = self.ty_ok.lock().unwrap_or_else(|e| e.into_inner()).get(&memo) {
            return v.clone();
        }
        let v = self
            .ctx_valid(g)
            .and_then(|| self.forall(g, |x| self.interp.ty(g, a, x).map(|_| Verdict::holds())))
            .and_then(|| self.extensional(g, "type", |x| self.interp.ty(g, a, x)));
        self.ty_ok
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(memo, v.clone());
        v
    }

    fn elt(&self, g: &Ctx, t: &Tm, a: &Ty) -> Verdict {
        self.is_ty(g, a)
            .and_then(|| {
                self.forall(g, |x| {
                    let v = self.interp.tm(g, t, x)?;
                    Ok(quiet(match a {
                        Ty::U(k) => match self.interp.code_of_tm(g, t, x, *k)? {
                            Some(code) => check_mem_u(&v, *k, &code, self.budget()),
                            None => univ_member(&v, UEnv::new(*k), self.budget()),
                        },
                        _ => mem_v(&v, &self.interp.ty(g, a, x)?, self.budget()),
                    }))
                })
            })
            .and_then(|| self.extensional(g, "term", |x| self.interp.tm(g, t, x)))
    }

    fn is_sub(&self, f: &Sub, g: &Ctx, d: &Ctx) -> Verdict {
        self.ctx_valid(g).and_then(|| self.ctx_valid(d)).and_then(|| {
            let sets = sub_cod(f, g)
                .map_err(Error::Scope)
                .and_then(|c| Ok((self.interp.ctx(&c)?, c, self.interp.ctx(d)?)));
            let (cs, c, ds) = match sets {
                Ok(s) => s,
                Err(e) => return from_err(e, self.budget()),
            };
            self.forall(g, |x| {
                let y = self.interp.sub(g, f, x)?;
                if !ds.contains_key(&y) {
                    return Ok(Verdict::fails(format!("{y} is not a point of {d}")));
                }
                if c == *d {
                    return Ok(Verdict::holds());
                }
                // the codomain is presented differently: the point must mean the same
                Ok(quiet(eq_v(&cs.child(&y)?, &ds.child(&y)?, self.budget())))
            })
            .and_then(|| {
                self.extensional(g, "substitution", |x| {
                    let y = self.interp.sub(g, f, x)?;
                    ds.child(&y)
                })
            })
        })
    }
}

trait NegateFail {
    fn negate_fail(self, reason: impl FnOnce() -> String) -> Verdict;
}

impl NegateFail for Verdict {
    fn negate_fail(self, reason: impl FnOnce() -> String) -> Verdict {
        match self {
            Verdict::Fails(_) => Verdict::fails(reason()),
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_judgment;

    fn check(src: &str) -> Verdict {
        check_judgment(&parse_judgment(src).unwrap(), &CheckConfig::default())
    }

    #[test]
    fn closed_judgments() {
        assert!(check("(judg elt (ctx) zero nat)").is_holds());
        assert!(check("(judg ty-eq (ctx) nat n0)").is_fails());
        assert!(check("(judg elt (ctx) (pi n0 n0) (u 0))").is_holds());
        assert!(check("(judg elt (ctx) nat (u 0))").passes());
        assert!(check("(judg elt (ctx) (u 0) (u 0))").is_fails());
        assert!(check("(judg elt (ctx) (u 0) (u 1))").is_holds());
    }

    #[test]
    fn nat_contexts_are_bounded() {
        let v = check("(judg elt (ctx nat) (succ var) nat)");
        assert_eq!(v.label(), "holds-bounded(16)");
        assert!(check("(judg elt-eq (ctx nat) var zero nat)").is_fails());
    }

    #[test]
    fn empty_context_has_one_point() {
        assert!(check("(judg ctx (ctx))").is_holds());
        assert!(check("(judg ctx (ctx n0 nat))").is_holds());
        assert!(check("(judg elt (ctx n0) (r0 nat var) nat)").is_holds());
    }
}
