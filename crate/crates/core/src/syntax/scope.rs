//! Scope checking. Variables are nameless, so the only static error is a
//! `var` (or a binder-opening substitution) used where the context has no
//! last type. Whether two contexts agree is a semantic question and is left
//! to the checker.

use super::{Ctx, Judg, Sub, Tm, Ty};

pub type ScopeResult<T> = Result<T, String>;

fn split(g: &Ctx, what: &str) -> ScopeResult<(Ctx, Ty)> {
    match g {
        Ctx::Ext(h, a) => Ok(((**h).clone(), (**a).clone())),
        Ctx::Empty => Err(format!("{what} used in the empty context")),
        Ctx::Ref(n) => Err(format!("unresolved context `{n}`")),
    }
}

pub fn check_ctx(g: &Ctx) -> ScopeResult<()> {
    match g {
        Ctx::Empty => Ok(()),
        Ctx::Ext(h, a) => {
            check_ctx(h)?;
            check_ty(h, a)
        }
        Ctx::Ref(n) => Err(format!("unresolved context `{n}`")),
    }
}

pub fn check_ty(g: &Ctx, a: &Ty) -> ScopeResult<()> {
    match a {
        Ty::Pi(x, y) | Ty::Sigma(x, y) => {
            check_ty(g, x)?;
            check_ty(&g.clone().ext((**x).clone()), y)
        }
        Ty::Id(x, s, t) => {
            check_ty(g, x)?;
            check_tm(g, s)?;
            check_tm(g, t)
        }
        Ty::Nat | Ty::N0 | Ty::U(_) => Ok(()),
        Ty::Sum(x, y) => {
            check_ty(g, x)?;
            check_ty(g, y)
        }
        Ty::Br(x) => check_ty(g, x),
        Ty::Sub(x, f) => check_ty(&sub_cod(f, g)?, x),
        Ty::Ref(n) => Err(format!("unresolved type `{n}`")),
    }
}

pub fn check_tm(g: &Ctx, t: &Tm) -> ScopeResult<()> {
    let ext = |a: &Ty| g.clone().ext(a.clone());
    match t {
        Tm::Var => split(g, "var").map(|_| ()),
        Tm::Zero => Ok(()),
        Tm::Lam(a, b, body) => {
            check_ty(g, a)?;
            check_ty(&ext(a), b)?;
            check_tm(&ext(a), body)
        }
        Tm::App(a, b, c, x) => {
            check_ty(g, a)?;
            check_ty(&ext(a), b)?;
            check_tm(g, c)?;
            check_tm(g, x)
        }
        Tm::Pr(x, y) => {
            check_tm(g, x)?;
            check_tm(g, y)
        }
        Tm::Pr1(x) | Tm::Pr2(x) | Tm::Rr(x) | Tm::Succ(x) | Tm::BrIn(x) => check_tm(g, x),
        Tm::Rec(c, d, e, n) => {
            let gn = ext(&Ty::Nat);
            check_ty(&gn, c)?;
            check_tm(g, d)?;
            check_tm(&gn.clone().ext((**c).clone()), e)?;
            check_tm(g, n)
        }
        Tm::R0(c, x) => {
            check_ty(&ext(&Ty::N0), c)?;
            check_tm(g, x)
        }
        Tm::Lf(a, b, x) | Tm::Rg(a, b, x) => {
            check_ty(g, a)?;
            check_ty(g, b)?;
            check_tm(g, x)
        }
        Tm::SumRec(a, b, c, d, e, x) => {
            check_ty(g, a)?;
            check_ty(g, b)?;
            check_ty(&ext(&Ty::sum((**a).clone(), (**b).clone())), c)?;
            check_tm(&ext(a), d)?;
            check_tm(&ext(b), e)?;
            check_tm(g, x)
        }
        Tm::Wh(a, b, k, body) => {
            check_ty(g, a)?;
            check_ty(g, b)?;
            check_tm(g, k)?;
            check_tm(&ext(a), body)
        }
        Tm::Sub(x, f) => check_tm(&sub_cod(f, g)?, x),
        Tm::Ty(a) => check_ty(g, a),
        Tm::Ref(n) => Err(format!("unresolved term `{n}`")),
    }
}

/// Codomain of `f` applied in context `dom`, scope-checking everything
/// inside `f` on the way.
pub fn sub_cod(f: &Sub, dom: &Ctx) -> ScopeResult<Ctx> {
    match f {
        Sub::Id(d) => {
            check_ctx(d)?;
            Ok((**d).clone())
        }
        Sub::Comp(f, g) => sub_cod(f, &sub_cod(g, dom)?),
        Sub::Down(a) => {
            let (h, _) = split(dom, "down")?;
            check_ty(&h, a)?;
            Ok(h)
        }
        Sub::Pair(f, a, x) => {
            let c = sub_cod(f, dom)?;
            check_ty(&c, a)?;
            check_tm(dom, x)?;
            Ok(c.ext((**a).clone()))
        }
        Sub::Phi(g, d) => {
            check_ctx(g)?;
            check_ctx(d)?;
            Ok((**d).clone())
        }
        Sub::Els(a, x) => {
            check_ty(dom, a)?;
            check_tm(dom, x)?;
            Ok(dom.clone().ext((**a).clone()))
        }
        Sub::Lift(a, h) => {
            let (d, _) = split(dom, "lift")?;
            let c = sub_cod(h, &d)?;
            check_ty(&c, a)?;
            Ok(c.ext((**a).clone()))
        }
        Sub::StepSub(g) => {
            split(dom, "stepsub")?;
            check_ctx(g)?;
            Ok(g.clone().ext(Ty::Nat))
        }
        Sub::SumSubLf(a, b) | Sub::SumSubRg(a, b) => {
            let (h, _) = split(dom, "sum substitution")?;
            check_ty(&h, a)?;
            check_ty(&h, b)?;
            Ok(h.ext(Ty::sum((**a).clone(), (**b).clone())))
        }
        Sub::PrX(a) | Sub::PrY(a) => {
            let (h, _) = split(dom, "projection substitution")?;
            let (h, _) = split(&h, "projection substitution")?;
            check_ty(&h, a)?;
            Ok(h.ext((**a).clone()))
        }
        Sub::BrSb(a) => {
            let (h, _) = split(dom, "brsb")?;
            check_ty(&h, a)?;
            Ok(h.ext(Ty::br((**a).clone())))
        }
        Sub::Ref(n) => Err(format!("unresolved substitution `{n}`")),
    }
}

/// The domain a substitution determines on its own, if any.
pub fn infer_ctx_of_sub(f: &Sub) -> Option<Ctx> {
    match f {
        Sub::Id(g) | Sub::Phi(g, _) => Some((**g).clone()),
        Sub::Comp(_, g) => infer_ctx_of_sub(g),
        Sub::Pair(f, _, _) => infer_ctx_of_sub(f),
        Sub::StepSub(g) => Some(g.clone().ext(Ty::Nat)),
        _ => None,
    }
}

pub fn well_scoped(j: &Judg) -> ScopeResult<()> {
    match j {
        Judg::CtxValid(g) => check_ctx(g),
        Judg::CtxEq(g, d) => {
            check_ctx(g)?;
            check_ctx(d)
        }
        Judg::IsTy(g, a) => {
            check_ctx(g)?;
            check_ty(g, a)
        }
        Judg::TyEq(g, a, b) => {
            check_ctx(g)?;
            check_ty(g, a)?;
            check_ty(g, b)
        }
        Judg::Elt(g, x, a) => {
            check_ctx(g)?;
            check_tm(g, x)?;
            check_ty(g, a)
        }
        Judg::EltEq(g, x, y, a) => {
            check_ctx(g)?;
            check_tm(g, x)?;
            check_tm(g, y)?;
            check_ty(g, a)
        }
        Judg::IsSub(f, g, d) => {
            check_ctx(g)?;
            check_ctx(d)?;
            sub_cod(f, g).map(|_| ())
        }
        Judg::SubEq(f, h, g, d) => {
            check_ctx(g)?;
            check_ctx(d)?;
            sub_cod(f, g)?;
            sub_cod(h, g).map(|_| ())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_needs_a_binder() {
        assert!(check_tm(&Ctx::Empty, &Tm::Var).is_err());
        assert!(check_tm(&Ctx::of([Ty::Nat]), &Tm::Var).is_ok());
        let lam = Tm::lam(Ty::Nat, Ty::Nat, Tm::succ(Tm::Var));
        assert!(check_tm(&Ctx::Empty, &lam).is_ok());
        let bad = Tm::Var.sub(Sub::down(Ty::Nat));
        assert!(check_tm(&Ctx::of([Ty::Nat]), &bad).is_err());
        assert!(check_tm(&Ctx::of([Ty::Nat, Ty::Nat]), &bad).is_ok());
    }

    #[test]
    fn codomains() {
        let g = Ctx::of([Ty::Nat]);
        assert_eq!(sub_cod(&Sub::step_sub(Ctx::Empty), &g).unwrap(), g);
        let lift = Sub::lift(Ty::N0, Sub::down(Ty::Nat));
        let dom = Ctx::of([Ty::Nat, Ty::N0.sub(Sub::down(Ty::Nat))]);
        assert_eq!(sub_cod(&lift, &dom).unwrap(), Ctx::of([Ty::N0]));
        assert_eq!(infer_ctx_of_sub(&Sub::step_sub(Ctx::Empty)), Some(g));
    }
}
