//! The rule catalog. Each rule comes with a generator producing instances
//! (premises and conclusion); hidden typed arguments of a rule appear as
//! extra well-formedness premises.

use super::gen::*;
use crate::syntax::{Ctx, Judg, Sub, Tm, Ty};

#[derive(Clone, Debug)]
pub struct Instance {
    pub premises: Vec<Judg>,
    pub conclusion: Judg,
}

fn inst(premises: Vec<Judg>, conclusion: Judg) -> Instance {
    Instance { premises, conclusion }
}

#[derive(Clone, Copy)]
pub struct Rule {
    pub name: &'static str,
    pub group: &'static str,
    /// Whether instances may mention `Nat`.
    pub nat: bool,
    pub gen: fn(&mut Gen) -> Instance,
}

impl std::fmt::Debug for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rule({})", self.name)
    }
}

fn ctx_ok(g: &Ctx) -> Judg {
    Judg::CtxValid(g.clone())
}
fn ctx_eq(g: &Ctx, d: &Ctx) -> Judg {
    Judg::CtxEq(g.clone(), d.clone())
}
fn is_ty(g: &Ctx, a: &Ty) -> Judg {
    Judg::IsTy(g.clone(), a.clone())
}
fn ty_eq(g: &Ctx, a: &Ty, b: &Ty) -> Judg {
    Judg::TyEq(g.clone(), a.clone(), b.clone())
}
fn elt(g: &Ctx, t: &Tm, a: &Ty) -> Judg {
    Judg::Elt(g.clone(), t.clone(), a.clone())
}
fn elt_eq(g: &Ctx, s: &Tm, t: &Tm, a: &Ty) -> Judg {
    Judg::EltEq(g.clone(), s.clone(), t.clone(), a.clone())
}
/// `f : g → d`.
fn is_sub(f: &Sub, g: &Ctx, d: &Ctx) -> Judg {
    Judg::IsSub(f.clone(), g.clone(), d.clone())
}
fn sub_eq(f: &Sub, h: &Sub, g: &Ctx, d: &Ctx) -> Judg {
    Judg::SubEq(f.clone(), h.clone(), g.clone(), d.clone())
}

fn ext(g: &Ctx, a: &Ty) -> Ctx {
    g.clone().ext(a.clone())
}
fn down(a: &Ty) -> Sub {
    Sub::down(a.clone())
}
fn ts(a: &Ty, f: &Sub) -> Ty {
    a.clone().sub(f.clone())
}
fn tms(t: &Tm, f: &Sub) -> Tm {
    t.clone().sub(f.clone())
}
fn els(a: &Ty, t: &Tm) -> Sub {
    Sub::els(a.clone(), t.clone())
}
fn comp(f: &Sub, g: &Sub) -> Sub {
    Sub::comp(f.clone(), g.clone())
}
fn lift(a: &Ty, h: &Sub) -> Sub {
    Sub::lift(a.clone(), h.clone())
}
fn phi(g: &Ctx, d: &Ctx) -> Sub {
    Sub::phi(g.clone(), d.clone())
}
fn id(g: &Ctx) -> Sub {
    Sub::id(g.clone())
}

macro_rules! rule {
    ($name:expr, $group:expr, $gen:expr) => {
        Rule {
            name: $name,
            group: $group,
            nat: false,
            gen: $gen,
        }
    };
    ($name:expr, $group:expr, nat, $gen:expr) => {
        Rule {
            name: $name,
            group: $group,
            nat: true,
            gen: $gen,
        }
    };
}

// Shared setups.

/// `f : Δ → Γ` for a random `Γ`.
fn any_sub(x: &mut Gen) -> (Ctx, Ctx, Sub) {
    let g = x.ctx();
    let (d, f) = x.sub_to(&g);
    (g, d, f)
}

/// `Γ`, a type `A`, an element `a`.
fn typed(x: &mut Gen) -> (Ctx, Ty, Tm) {
    let g = x.ctx();
    let (a, t) = x.typed_term(&g);
    (g, a, t)
}

/// `Γ ⊢ A`, `Γ ▷ A ⊢ B` with a section `b`.
fn family(x: &mut Gen) -> (Ctx, Ty, Ty, Tm) {
    let g = x.ctx();
    let a = if x.chance(0.8) { x.typed_term(&g).0 } else { x.ty(&g) };
    let (b, body) = x.fam(&g, &a);
    (g, a, b, body)
}

/// A type in `Γ ▷ A'` whose transport back along `Γ▷A == Γ▷A'` is `b`.
fn transported(x: &mut Gen, g: &Ctx, a: &Ty, a2: &Ty, b: &Ty) -> Ty {
    if x.chance(0.5) {
        b.clone()
    } else {
        ts(b, &phi(&ext(g, a2), &ext(g, a)))
    }
}

fn tm_transported(x: &mut Gen, g: &Ctx, a: &Ty, a2: &Ty, t: &Tm) -> Tm {
    if x.chance(0.5) {
        t.clone()
    } else {
        tms(t, &phi(&ext(g, a2), &ext(g, a)))
    }
}

/// `A`, `B` and an element of `A + B` in `Γ`.
fn sum_setup(x: &mut Gen) -> (Ctx, Ty, Ty, Tm) {
    let g = x.ctx();
    if x.chance(0.25) {
        // a variable of type Bool = unit + unit, when there is one
        let vs: Vec<_> = vars(&g, false)
            .into_iter()
            .filter(|v| v.base == Some(bool_ty()))
            .collect();
        if let Some(v) = vs.first() {
            return (g, unit(), unit(), v.tm.clone());
        }
    }
    let (a, s) = x.typed_term(&g);
    let (b, t) = x.typed_term(&g);
    let c = if x.chance(0.5) {
        Tm::lf(a.clone(), b.clone(), s)
    } else {
        Tm::rg(a.clone(), b.clone(), t)
    };
    (g, a, b, c)
}

/// A motive over `Γ ▷ A + B` with branches in `Γ ▷ A` and `Γ ▷ B`.
fn sum_motive(x: &mut Gen, g: &Ctx, a: &Ty, b: &Ty) -> (Ty, Tm, Tm) {
    let s = Ty::sum(a.clone(), b.clone());
    let s_down = ts(&s, &down(&s));
    let (da, db) = (down(a), down(b));
    let inl = Tm::lf(ts(a, &da), ts(b, &da), Tm::Var);
    let inr = Tm::rg(ts(a, &db), ts(b, &db), Tm::Var);
    match x.below(3) {
        0 => {
            let d = x.elt(&ext(g, a), &bool_ty());
            let e = x.elt(&ext(g, b), &bool_ty());
            (bool_ty(), d, e)
        }
        1 => (Ty::id(s_down.clone(), Tm::Var, Tm::Var), Tm::rr(inl), Tm::rr(inr)),
        _ => (s_down, inl, inr),
    }
}

/// `Γ ⊢ A`, `Γ ⊢ B`, `k : Br A` and `b : B[↓A]` in `Γ ▷ A`.
fn br_setup(x: &mut Gen) -> (Ctx, Ty, Ty, Tm, Tm) {
    let g = x.ctx();
    let (a, t) = x.typed_term(&g);
    let k = match x.below(3) {
        0 => Tm::Zero,
        _ => Tm::brin(t),
    };
    let ga = ext(&g, &a);
    let (b, body) = match x.below(4) {
        0 => (Ty::br(a.clone()), Tm::brin(Tm::Var)),
        1 => (a.clone(), Tm::Var),
        _ => {
            let (b, e) = x.typed_term(&g);
            let e = if x.chance(0.5) { x.elt(&ga, &b) } else { e.sub(down(&a)) };
            (b, e)
        }
    };
    (g, a, b, k, body)
}

/// `b[prx] == b[pry]`: the body does not depend on its argument.
fn br_const(g: &Ctx, a: &Ty, b: &Ty, body: &Tm) -> Judg {
    let ad = ts(a, &down(a));
    let gaa = ext(&ext(g, a), &ad);
    elt_eq(
        &gaa,
        &tms(body, &Sub::pr_x(a.clone())),
        &tms(body, &Sub::pr_y(a.clone())),
        &ts(&ts(b, &down(a)), &down(&ad)),
    )
}

/// A type that has a code in `U k`, optionally mentioning `Nat`.
fn small_ty(x: &mut Gen, g: &Ctx) -> Ty {
    if x.chance(0.1) {
        return Ty::Nat;
    }
    x.ty(g)
}

fn code(a: &Ty) -> Tm {
    Tm::ty(a.clone())
}

fn level(x: &mut Gen) -> u32 {
    x.below(2) as u32
}

fn presuppositions() -> Vec<Rule> {
    vec![
        rule!("ctx-eq-pre-l", "presupposition", |x| {
            let g = x.ctx();
            let d = x.ctx_variant(&g);
            inst(vec![ctx_eq(&g, &d)], ctx_ok(&g))
        }),
        rule!("ctx-eq-pre-r", "presupposition", |x| {
            let g = x.ctx();
            let d = x.ctx_variant(&g);
            inst(vec![ctx_eq(&g, &d)], ctx_ok(&d))
        }),
        rule!("sub-pre-dom", "presupposition", |x| {
            let (g, d, f) = any_sub(x);
            inst(vec![is_sub(&f, &d, &g)], ctx_ok(&d))
        }),
        rule!("sub-pre-cod", "presupposition", |x| {
            let (g, d, f) = any_sub(x);
            inst(vec![is_sub(&f, &d, &g)], ctx_ok(&g))
        }),
        rule!("ty-pre-ctx", "presupposition", |x| {
            let g = x.ctx();
            let a = x.ty(&g);
            inst(vec![is_ty(&g, &a)], ctx_ok(&g))
        }),
        rule!("tyeq-pre-l", "presupposition", |x| {
            let g = x.ctx();
            let (a, b) = x.eq_tys(&g);
            inst(vec![ty_eq(&g, &a, &b)], is_ty(&g, &a))
        }),
        rule!("tyeq-pre-r", "presupposition", |x| {
            let g = x.ctx();
            let (a, b) = x.eq_tys(&g);
            inst(vec![ty_eq(&g, &a, &b)], is_ty(&g, &b))
        }),
        rule!("elt-pre-ty", "presupposition", |x| {
            let (g, a, t) = typed(x);
            inst(vec![elt(&g, &t, &a)], is_ty(&g, &a))
        }),
        rule!("subeq-pre-l", "presupposition", |x| {
            let g = x.ctx();
            let (d, f, h) = x.eq_subs(&g);
            inst(vec![sub_eq(&f, &h, &d, &g)], is_sub(&f, &d, &g))
        }),
        rule!("subeq-pre-r", "presupposition", |x| {
            let g = x.ctx();
            let (d, f, h) = x.eq_subs(&g);
            inst(vec![sub_eq(&f, &h, &d, &g)], is_sub(&h, &d, &g))
        }),
        rule!("elteq-pre-l", "presupposition", |x| {
            let g = x.ctx();
            let (a, s, t) = x.eq_tms(&g);
            inst(vec![elt_eq(&g, &s, &t, &a)], elt(&g, &s, &a))
        }),
        rule!("elteq-pre-r", "presupposition", |x| {
            let g = x.ctx();
            let (a, s, t) = x.eq_tms(&g);
            inst(vec![elt_eq(&g, &s, &t, &a)], elt(&g, &t, &a))
        }),
    ]
}

fn structural() -> Vec<Rule> {
    vec![
        rule!("ctx-refl", "equality", |x| {
            let g = x.ctx();
            inst(vec![ctx_ok(&g)], ctx_eq(&g, &g))
        }),
        rule!("ctx-sym", "equality", |x| {
            let g = x.ctx();
            let d = x.ctx_variant(&g);
            inst(vec![ctx_eq(&g, &d)], ctx_eq(&d, &g))
        }),
        rule!("ctx-tra", "equality", |x| {
            let g = x.ctx();
            let d = x.ctx_variant(&g);
            let e = x.ctx_variant(&g);
            inst(vec![ctx_eq(&g, &d), ctx_eq(&d, &e)], ctx_eq(&g, &e))
        }),
        rule!("sub-refl", "equality", |x| {
            let (g, d, f) = any_sub(x);
            inst(vec![is_sub(&f, &d, &g)], sub_eq(&f, &f, &d, &g))
        }),
        rule!("sub-sym", "equality", |x| {
            let g = x.ctx();
            let (d, f, h) = x.eq_subs(&g);
            inst(vec![sub_eq(&f, &h, &d, &g)], sub_eq(&h, &f, &d, &g))
        }),
        rule!("sub-tra", "equality", |x| {
            let g = x.ctx();
            let (d, f, h) = x.eq_subs(&g);
            let k = x.sub_variant(&d, &g, &f);
            inst(
                vec![sub_eq(&f, &h, &d, &g), sub_eq(&h, &k, &d, &g)],
                sub_eq(&f, &k, &d, &g),
            )
        }),
        rule!("id-sub", "equality", |x| {
            let g = x.ctx();
            inst(vec![ctx_ok(&g)], is_sub(&id(&g), &g, &g))
        }),
        rule!("comp-sub", "equality", |x| {
            let p = x.ctx();
            let (d, f) = x.sub_to(&p);
            let (g, h) = x.sub_to(&d);
            inst(
                vec![is_sub(&h, &g, &d), is_sub(&f, &d, &p)],
                is_sub(&comp(&f, &h), &g, &p),
            )
        }),
        rule!("comp-id-r", "equality", |x| {
            let (d, g, f) = any_sub(x);
            inst(vec![is_sub(&f, &g, &d)], sub_eq(&comp(&f, &id(&g)), &f, &g, &d))
        }),
        rule!("comp-id-l", "equality", |x| {
            let (d, g, f) = any_sub(x);
            inst(vec![is_sub(&f, &g, &d)], sub_eq(&comp(&id(&d), &f), &f, &g, &d))
        }),
        rule!("comp-assoc", "equality", |x| {
            let xi = x.ctx();
            let (p, f) = x.sub_to(&xi);
            let (d, h) = x.sub_to(&p);
            let (g, k) = x.sub_to(&d);
            inst(
                vec![is_sub(&k, &g, &d), is_sub(&h, &d, &p), is_sub(&f, &p, &xi)],
                sub_eq(&comp(&comp(&f, &h), &k), &comp(&f, &comp(&h, &k)), &g, &xi),
            )
        }),
        rule!("comp-cong", "equality", |x| {
            let p = x.ctx();
            let (d, f, f2) = x.eq_subs(&p);
            let (g, h, h2) = x.eq_subs(&d);
            inst(
                vec![sub_eq(&h, &h2, &g, &d), sub_eq(&f, &f2, &d, &p)],
                sub_eq(&comp(&f, &h), &comp(&f2, &h2), &g, &p),
            )
        }),
        rule!("subst-trp", "equality", |x| {
            let g = x.ctx();
            let d = x.ctx_variant(&g);
            inst(vec![ctx_eq(&g, &d)], is_sub(&phi(&g, &d), &g, &d))
        }),
        rule!("subst-trp-irr", "equality", |x| {
            let g = x.ctx();
            let d = x.ctx_variant(&g);
            inst(
                vec![ctx_eq(&g, &d), ctx_eq(&g, &d)],
                sub_eq(&phi(&g, &d), &phi(&g, &d), &g, &d),
            )
        }),
        rule!("subst-trp-id", "equality", |x| {
            let g = x.ctx();
            inst(vec![ctx_eq(&g, &g)], sub_eq(&phi(&g, &g), &id(&g), &g, &g))
        }),
        rule!("subst-trp-fun", "equality", |x| {
            let g = x.ctx();
            let d = x.ctx_variant(&g);
            let p = x.ctx_variant(&g);
            inst(
                vec![ctx_eq(&g, &d), ctx_eq(&d, &p), ctx_eq(&g, &p)],
                sub_eq(&comp(&phi(&d, &p), &phi(&g, &d)), &phi(&g, &p), &g, &p),
            )
        }),
        rule!("tyrefl", "equality", |x| {
            let g = x.ctx();
            let a = x.ty(&g);
            inst(vec![is_ty(&g, &a)], ty_eq(&g, &a, &a))
        }),
        rule!("tysym", "equality", |x| {
            let g = x.ctx();
            let (a, b) = x.eq_tys(&g);
            inst(vec![ty_eq(&g, &a, &b)], ty_eq(&g, &b, &a))
        }),
        rule!("tytra", "equality", |x| {
            let g = x.ctx();
            let (a, b) = x.eq_tys(&g);
            let c = if x.chance(0.5) { ts(&a, &id(&g)) } else { b.clone() };
            inst(vec![ty_eq(&g, &a, &b), ty_eq(&g, &b, &c)], ty_eq(&g, &a, &c))
        }),
        rule!("tmrefl", "equality", |x| {
            let (g, a, t) = typed(x);
            inst(vec![elt(&g, &t, &a)], elt_eq(&g, &t, &t, &a))
        }),
        rule!("tmsym", "equality", |x| {
            let g = x.ctx();
            let (a, s, t) = x.eq_tms(&g);
            inst(vec![elt_eq(&g, &s, &t, &a)], elt_eq(&g, &t, &s, &a))
        }),
        rule!("tmtra", "equality", |x| {
            let g = x.ctx();
            let (a, s, t, u) = x.eq_tms3(&g);
            inst(
                vec![elt_eq(&g, &s, &t, &a), elt_eq(&g, &t, &u, &a)],
                elt_eq(&g, &s, &u, &a),
            )
        }),
        rule!("elttyeq", "equality", |x| {
            let g = x.ctx();
            let (a, b) = x.eq_tys(&g);
            let t = x.elt(&g, &a);
            inst(vec![elt(&g, &t, &a), ty_eq(&g, &a, &b)], elt(&g, &t, &b))
        }),
        rule!("elteqtyeq", "equality", |x| {
            let g = x.ctx();
            let (a, s, t) = x.eq_tms(&g);
            let (a, b) = match equal_type_pairs().into_iter().find(|(p, _)| *p == a) {
                Some(pair) if x.chance(0.7) => pair,
                _ => (a.clone(), ts(&a, &id(&g))),
            };
            inst(vec![elt_eq(&g, &s, &t, &a), ty_eq(&g, &a, &b)], elt_eq(&g, &s, &t, &b))
        }),
        rule!("ty-subst", "substitution", |x| {
            let (g, d, f) = any_sub(x);
            let a = x.ty(&g);
            inst(vec![is_ty(&g, &a), is_sub(&f, &d, &g)], is_ty(&d, &ts(&a, &f)))
        }),
        rule!("tyeq-subst", "substitution", |x| {
            let (g, d, f) = any_sub(x);
            let (a, b) = x.eq_tys(&g);
            inst(
                vec![ty_eq(&g, &a, &b), is_sub(&f, &d, &g)],
                ty_eq(&d, &ts(&a, &f), &ts(&b, &f)),
            )
        }),
        rule!("tyeq-subst2", "substitution", |x| {
            let g = x.ctx();
            let (d, f, h) = x.eq_subs(&g);
            let a = x.ty(&g);
            inst(
                vec![is_ty(&g, &a), sub_eq(&f, &h, &d, &g)],
                ty_eq(&d, &ts(&a, &f), &ts(&a, &h)),
            )
        }),
        rule!("tysubst-id", "substitution", |x| {
            let g = x.ctx();
            let a = x.ty(&g);
            inst(vec![is_ty(&g, &a)], ty_eq(&g, &ts(&a, &id(&g)), &a))
        }),
        rule!("tysubst-com", "substitution", |x| {
            let (g, d, f) = any_sub(x);
            let (p, h) = x.sub_to(&d);
            let a = x.ty(&g);
            inst(
                vec![is_ty(&g, &a), is_sub(&h, &p, &d), is_sub(&f, &d, &g)],
                ty_eq(&p, &ts(&a, &comp(&f, &h)), &ts(&ts(&a, &f), &h)),
            )
        }),
        rule!("elt-subst", "substitution", |x| {
            let (g, d, f) = any_sub(x);
            let (a, t) = x.typed_term(&g);
            inst(
                vec![elt(&g, &t, &a), is_sub(&f, &d, &g)],
                elt(&d, &tms(&t, &f), &ts(&a, &f)),
            )
        }),
        rule!("elteq-subst", "substitution", |x| {
            let (g, d, f) = any_sub(x);
            let (a, s, t) = x.eq_tms(&g);
            inst(
                vec![elt_eq(&g, &s, &t, &a), is_sub(&f, &d, &g)],
                elt_eq(&d, &tms(&s, &f), &tms(&t, &f), &ts(&a, &f)),
            )
        }),
        rule!("elteq-subst2", "substitution", |x| {
            let g = x.ctx();
            let (d, f, h) = x.eq_subs(&g);
            let (a, t) = x.typed_term(&g);
            inst(
                vec![elt(&g, &t, &a), sub_eq(&f, &h, &d, &g)],
                elt_eq(&d, &tms(&t, &f), &tms(&t, &h), &ts(&a, &f)),
            )
        }),
        rule!("eltsubst-id", "substitution", |x| {
            let (g, a, t) = typed(x);
            inst(vec![elt(&g, &t, &a)], elt_eq(&g, &tms(&t, &id(&g)), &t, &a))
        }),
        rule!("eltsubst-com", "substitution", |x| {
            let (g, d, f) = any_sub(x);
            let (p, h) = x.sub_to(&d);
            let (a, t) = x.typed_term(&g);
            let fh = comp(&f, &h);
            inst(
                vec![elt(&g, &t, &a), is_sub(&h, &p, &d), is_sub(&f, &d, &g)],
                elt_eq(&p, &tms(&t, &fh), &tms(&tms(&t, &f), &h), &ts(&a, &fh)),
            )
        }),
    ]
}

fn extension() -> Vec<Rule> {
    vec![
        rule!("ctx-empty", "extension", |_| inst(vec![], ctx_ok(&Ctx::Empty))),
        rule!("ctx-ext", "extension", |x| {
            let g = x.ctx();
            let a = x.ty(&g);
            inst(vec![is_ty(&g, &a)], ctx_ok(&ext(&g, &a)))
        }),
        rule!("ext-eq'", "extension", |x| {
            let g = x.ctx();
            let (a, b) = x.eq_tys(&g);
            inst(
                vec![is_ty(&g, &a), is_ty(&g, &b), ty_eq(&g, &a, &b)],
                ctx_eq(&ext(&g, &a), &ext(&g, &b)),
            )
        }),
        rule!("ext-eq''", "extension", |x| {
            let g = x.ctx();
            let d = x.ctx_variant(&g);
            let (a, b) = x.eq_tys(&g);
            inst(
                vec![
                    is_ty(&g, &a),
                    is_ty(&d, &b),
                    ctx_eq(&g, &d),
                    ty_eq(&g, &a, &ts(&b, &phi(&g, &d))),
                ],
                ctx_eq(&ext(&g, &a), &ext(&d, &b)),
            )
        }),
        rule!("down", "extension", |x| {
            let g = x.ctx();
            let a = x.ty(&g);
            inst(vec![is_ty(&g, &a)], is_sub(&down(&a), &ext(&g, &a), &g))
        }),
        rule!("down-cong", "extension", |x| {
            let g = x.ctx();
            let d = x.ctx_variant(&g);
            let (a, b) = x.eq_tys(&g);
            let (ga, db) = (ext(&g, &a), ext(&d, &b));
            inst(
                vec![
                    is_ty(&g, &a),
                    is_ty(&d, &b),
                    ctx_eq(&g, &d),
                    ty_eq(&g, &a, &ts(&b, &phi(&g, &d))),
                ],
                sub_eq(
                    &comp(&phi(&g, &d), &down(&a)),
                    &comp(&down(&b), &phi(&ga, &db)),
                    &ga,
                    &d,
                ),
            )
        }),
        rule!("asm", "extension", |x| {
            let g = x.ctx();
            let a = x.ty(&g);
            inst(vec![is_ty(&g, &a)], elt(&ext(&g, &a), &Tm::Var, &ts(&a, &down(&a))))
        }),
        rule!("asm-cong", "extension", |x| {
            let g = x.ctx();
            let d = x.ctx_variant(&g);
            let (a, b) = x.eq_tys(&g);
            let (ga, db) = (ext(&g, &a), ext(&d, &b));
            inst(
                vec![
                    is_ty(&g, &a),
                    is_ty(&d, &b),
                    ctx_eq(&g, &d),
                    ty_eq(&g, &a, &ts(&b, &phi(&g, &d))),
                ],
                elt_eq(&ga, &Tm::Var, &tms(&Tm::Var, &phi(&ga, &db)), &ts(&a, &down(&a))),
            )
        }),
        rule!("ext", "extension", |x| {
            let (g, d, f) = any_sub(x);
            let a = x.ty(&g);
            let t = x.elt(&d, &a);
            let p = Sub::pair(f.clone(), a.clone(), t.clone());
            inst(
                vec![is_sub(&f, &d, &g), is_ty(&g, &a), elt(&d, &t, &ts(&a, &f))],
                is_sub(&p, &d, &ext(&g, &a)),
            )
        }),
        rule!("ext-irr", "extension", |x| {
            let (g, d, f) = any_sub(x);
            let a = x.ty(&g);
            let t = x.elt(&d, &a);
            let p = Sub::pair(f.clone(), a.clone(), t.clone());
            inst(
                vec![is_sub(&f, &d, &g), is_ty(&g, &a), elt(&d, &t, &ts(&a, &f))],
                sub_eq(&p, &p, &d, &ext(&g, &a)),
            )
        }),
        rule!("ext-cong", "extension", |x| {
            let g = x.ctx();
            let (d, f, h) = x.eq_subs(&g);
            let (a, s, t) = x.eq_tms(&d);
            inst(
                vec![
                    sub_eq(&f, &h, &d, &g),
                    is_ty(&g, &a),
                    elt(&d, &s, &ts(&a, &f)),
                    elt(&d, &t, &ts(&a, &h)),
                    elt_eq(&d, &s, &t, &ts(&a, &f)),
                ],
                sub_eq(
                    &Sub::pair(f.clone(), a.clone(), s.clone()),
                    &Sub::pair(h.clone(), a.clone(), t.clone()),
                    &d,
                    &ext(&g, &a),
                ),
            )
        }),
        rule!("ext-prop1", "extension", |x| {
            let (g, d, f) = any_sub(x);
            let a = x.ty(&g);
            let t = x.elt(&d, &a);
            let p = Sub::pair(f.clone(), a.clone(), t.clone());
            inst(
                vec![is_sub(&f, &d, &g), is_ty(&g, &a), elt(&d, &t, &ts(&a, &f))],
                sub_eq(&comp(&down(&a), &p), &f, &d, &g),
            )
        }),
        rule!("ext-prop2", "extension", |x| {
            let (g, d, f) = any_sub(x);
            let a = x.ty(&g);
            let t = x.elt(&d, &a);
            let p = Sub::pair(f.clone(), a.clone(), t.clone());
            inst(
                vec![is_sub(&f, &d, &g), is_ty(&g, &a), elt(&d, &t, &ts(&a, &f))],
                elt_eq(&d, &tms(&Tm::Var, &p), &t, &ts(&a, &f)),
            )
        }),
        rule!("ext-prop3", "extension", |x| {
            let g = x.ctx();
            let a = x.ty(&g);
            let ga = ext(&g, &a);
            let ad = ts(&a, &down(&a));
            inst(
                vec![is_ty(&g, &a), elt(&ga, &Tm::Var, &ad)],
                sub_eq(&Sub::pair(down(&a), a.clone(), Tm::Var), &id(&ga), &ga, &ga),
            )
        }),
        rule!("ext-comp", "extension", |x| {
            let (g, d, f) = any_sub(x);
            let (th, h) = x.sub_to(&d);
            let a = x.ty(&g);
            let t = x.elt(&d, &a);
            let fh = comp(&f, &h);
            inst(
                vec![
                    is_sub(&h, &th, &d),
                    is_sub(&f, &d, &g),
                    is_ty(&g, &a),
                    elt(&d, &t, &ts(&a, &f)),
                    elt(&th, &tms(&t, &h), &ts(&a, &fh)),
                ],
                sub_eq(
                    &comp(&Sub::pair(f.clone(), a.clone(), t.clone()), &h),
                    &Sub::pair(fh.clone(), a.clone(), tms(&t, &h)),
                    &th,
                    &ext(&g, &a),
                ),
            )
        }),
        rule!("els", "extension", |x| {
            let (g, a, t) = typed(x);
            inst(vec![elt(&g, &t, &a)], is_sub(&els(&a, &t), &g, &ext(&g, &a)))
        }),
        rule!("els-exp", "extension", |x| {
            let (g, a, t) = typed(x);
            inst(
                vec![elt(&g, &t, &a)],
                sub_eq(&els(&a, &t), &Sub::pair(id(&g), a.clone(), t.clone()), &g, &ext(&g, &a)),
            )
        }),
        rule!("qq", "extension", |x| {
            let (g, d, h) = any_sub(x);
            let a = x.ty(&g);
            inst(
                vec![is_ty(&g, &a), is_sub(&h, &d, &g)],
                is_sub(&lift(&a, &h), &ext(&d, &ts(&a, &h)), &ext(&g, &a)),
            )
        }),
        rule!("qq-exp", "extension", |x| {
            let (g, d, h) = any_sub(x);
            let a = x.ty(&g);
            let ah = ts(&a, &h);
            let dah = ext(&d, &ah);
            let hd = comp(&h, &down(&ah));
            inst(
                vec![is_ty(&g, &a), is_sub(&h, &d, &g), elt(&dah, &Tm::Var, &ts(&a, &hd))],
                sub_eq(
                    &lift(&a, &h),
                    &Sub::pair(hd.clone(), a.clone(), Tm::Var),
                    &dah,
                    &ext(&g, &a),
                ),
            )
        }),
    ]
}

fn pi_rules() -> Vec<Rule> {
    fn app(a: &Ty, b: &Ty, c: &Tm, t: &Tm) -> Tm {
        Tm::app(a.clone(), b.clone(), c.clone(), t.clone())
    }
    fn lam(a: &Ty, b: &Ty, body: &Tm) -> Tm {
        Tm::lam(a.clone(), b.clone(), body.clone())
    }
    /// A function: a lambda, or a closed element of a Π type.
    fn fun(x: &mut Gen) -> (Ctx, Ty, Ty, Tm) {
        if x.chance(0.3) {
            let g = x.ctx();
            let (a, b) = (bool_ty(), bool_ty());
            let c = x.elt(&g, &pi_bool());
            (g, a, b, c)
        } else {
            let (g, a, b, body) = family(x);
            let c = lam(&a, &b, &body);
            (g, a, b, c)
        }
    }
    vec![
        rule!("Pi-f", "Pi", |x| {
            let (g, a, b, _) = family(x);
            inst(vec![is_ty(&g, &a), is_ty(&ext(&g, &a), &b)], is_ty(&g, &Ty::pi(a, b)))
        }),
        rule!("Pi-i", "Pi", |x| {
            let (g, a, b, body) = family(x);
            inst(
                vec![is_ty(&g, &a), is_ty(&ext(&g, &a), &b), elt(&ext(&g, &a), &body, &b)],
                elt(&g, &lam(&a, &b, &body), &Ty::pi(a, b)),
            )
        }),
        rule!("Pi-e", "Pi", |x| {
            let (g, a, b, c) = fun(x);
            let t = x.elt(&g, &a);
            inst(
                vec![
                    is_ty(&g, &a),
                    is_ty(&ext(&g, &a), &b),
                    elt(&g, &c, &Ty::pi(a.clone(), b.clone())),
                    elt(&g, &t, &a),
                ],
                elt(&g, &app(&a, &b, &c, &t), &ts(&b, &els(&a, &t))),
            )
        }),
        rule!("Pi-beta-gen", "Pi", |x| {
            let (g, a, b, body) = family(x);
            let t = x.elt(&g, &a);
            let l = lam(&a, &b, &body);
            inst(
                vec![
                    is_ty(&g, &a),
                    is_ty(&ext(&g, &a), &b),
                    elt(&g, &l, &Ty::pi(a.clone(), b.clone())),
                    elt(&g, &t, &a),
                ],
                elt_eq(
                    &g,
                    &app(&a, &b, &l, &t),
                    &tms(&body, &els(&a, &t)),
                    &ts(&b, &els(&a, &t)),
                ),
            )
        }),
        rule!("Pi-eta-eq-gen", "Pi", |x| {
            let (g, a, b, c) = fun(x);
            let ga = ext(&g, &a);
            let ad = ts(&a, &down(&a));
            let bl = ts(&b, &lift(&a, &down(&a)));
            let cd = tms(&c, &down(&a));
            inst(
                vec![
                    elt(&g, &c, &Ty::pi(a.clone(), b.clone())),
                    elt(&ga, &Tm::Var, &ad),
                    elt(&ga, &cd, &Ty::pi(ad.clone(), bl.clone())),
                ],
                elt_eq(&g, &lam(&a, &b, &app(&ad, &bl, &cd, &Tm::Var)), &c, &Ty::pi(a, b)),
            )
        }),
        rule!("Pi-f-sub", "Pi", |x| {
            let (g, a, b, _) = family(x);
            let (d, h) = x.sub_to(&g);
            inst(
                vec![is_ty(&g, &a), is_ty(&ext(&g, &a), &b), is_sub(&h, &d, &g)],
                ty_eq(
                    &d,
                    &ts(&Ty::pi(a.clone(), b.clone()), &h),
                    &Ty::pi(ts(&a, &h), ts(&b, &lift(&a, &h))),
                ),
            )
        }),
        rule!("lambda-sub", "Pi", |x| {
            let (g, a, b, body) = family(x);
            let (d, h) = x.sub_to(&g);
            let q = lift(&a, &h);
            let pi = Ty::pi(a.clone(), b.clone());
            inst(
                vec![
                    is_ty(&g, &a),
                    is_ty(&ext(&g, &a), &b),
                    elt(&ext(&g, &a), &body, &b),
                    is_sub(&h, &d, &g),
                ],
                elt_eq(
                    &d,
                    &tms(&lam(&a, &b, &body), &h),
                    &lam(&ts(&a, &h), &ts(&b, &q), &tms(&body, &q)),
                    &ts(&pi, &h),
                ),
            )
        }),
        rule!("Pi-e-sub-gen", "Pi", |x| {
            let (g, a, b, c) = fun(x);
            let t = x.elt(&g, &a);
            let (d, h) = x.sub_to(&g);
            let (ah, bq) = (ts(&a, &h), ts(&b, &lift(&a, &h)));
            let pi = Ty::pi(a.clone(), b.clone());
            inst(
                vec![
                    is_ty(&g, &a),
                    is_ty(&ext(&g, &a), &b),
                    elt(&g, &c, &pi),
                    elt(&g, &t, &a),
                    is_sub(&h, &d, &g),
                    elt(&d, &tms(&c, &h), &Ty::pi(ah.clone(), bq.clone())),
                    elt(&d, &tms(&t, &h), &ah),
                ],
                elt_eq(
                    &d,
                    &tms(&app(&a, &b, &c, &t), &h),
                    &app(&ah, &bq, &tms(&c, &h), &tms(&t, &h)),
                    &ts(&ts(&b, &els(&a, &t)), &h),
                ),
            )
        }),
        rule!("Pi-f-cong", "Pi", |x| {
            let g = x.ctx();
            let (a, a2) = x.eq_tys(&g);
            let (b, _) = x.fam(&g, &a);
            let b2 = transported(x, &g, &a, &a2, &b);
            let (ga, ga2) = (ext(&g, &a), ext(&g, &a2));
            inst(
                vec![
                    ty_eq(&g, &a, &a2),
                    is_ty(&ga, &b),
                    is_ty(&ga2, &b2),
                    ty_eq(&ga, &b, &ts(&b2, &phi(&ga, &ga2))),
                ],
                ty_eq(&g, &Ty::pi(a, b), &Ty::pi(a2, b2)),
            )
        }),
        rule!("Pi-xi", "Pi", |x| {
            let (g, a, b, body) = family(x);
            let ga = ext(&g, &a);
            let body2 = if x.chance(0.5) {
                tms(&body, &id(&ga))
            } else {
                x.elt(&ga, &b)
            };
            inst(
                vec![is_ty(&g, &a), is_ty(&ga, &b), elt_eq(&ga, &body, &body2, &b)],
                elt_eq(&g, &lam(&a, &b, &body), &lam(&a, &b, &body2), &Ty::pi(a, b)),
            )
        }),
        rule!("Pi-e-cong", "Pi", |x| {
            let (g, a, b, c) = fun(x);
            let c2 = if x.chance(0.5) {
                tms(&c, &id(&g))
            } else {
                x.elt(&g, &Ty::pi(a.clone(), b.clone()))
            };
            let t = x.elt(&g, &a);
            let t2 = if x.chance(0.5) { tms(&t, &id(&g)) } else { x.elt(&g, &a) };
            let pi = Ty::pi(a.clone(), b.clone());
            inst(
                vec![
                    is_ty(&g, &a),
                    is_ty(&ext(&g, &a), &b),
                    elt(&g, &c, &pi),
                    elt(&g, &c2, &pi),
                    elt_eq(&g, &c, &c2, &pi),
                    elt(&g, &t, &a),
                    elt(&g, &t2, &a),
                    elt_eq(&g, &t, &t2, &a),
                ],
                elt_eq(&g, &app(&a, &b, &c, &t), &app(&a, &b, &c2, &t2), &ts(&b, &els(&a, &t))),
            )
        }),
    ]
}

fn id_rules() -> Vec<Rule> {
    fn idt(a: &Ty, s: &Tm, t: &Tm) -> Ty {
        Ty::id(a.clone(), s.clone(), t.clone())
    }
    vec![
        rule!("ID", "Id", |x| {
            let (g, a, s) = typed(x);
            let t = x.elt(&g, &a);
            inst(
                vec![is_ty(&g, &a), elt(&g, &s, &a), elt(&g, &t, &a)],
                is_ty(&g, &idt(&a, &s, &t)),
            )
        }),
        rule!("ID-i", "Id", |x| {
            let (g, a, s) = typed(x);
            inst(
                vec![is_ty(&g, &a), elt(&g, &s, &a)],
                elt(&g, &Tm::rr(s.clone()), &idt(&a, &s, &s)),
            )
        }),
        rule!("ID-e", "Id", |x| {
            let (g, a, s) = typed(x);
            let t = if x.chance(0.5) { s.clone() } else { x.elt(&g, &a) };
            let p = if x.chance(0.8) {
                Tm::rr(s.clone())
            } else {
                Tm::rr(t.clone())
            };
            inst(
                vec![
                    is_ty(&g, &a),
                    elt(&g, &s, &a),
                    elt(&g, &t, &a),
                    elt(&g, &p, &idt(&a, &s, &t)),
                ],
                elt_eq(&g, &s, &t, &a),
            )
        }),
        rule!("ID-uip", "Id", |x| {
            let g = x.ctx();
            let (a, s, s2) = x.eq_tms(&g);
            let p = if x.chance(0.5) { Tm::rr(s2) } else { s.clone() };
            inst(
                vec![is_ty(&g, &a), elt(&g, &s, &a), elt(&g, &p, &idt(&a, &s, &s))],
                elt_eq(&g, &p, &Tm::rr(s.clone()), &idt(&a, &s, &s)),
            )
        }),
        rule!("ID-sub-gen", "Id", |x| {
            let (g, a, s) = typed(x);
            let t = x.elt(&g, &a);
            let (d, h) = x.sub_to(&g);
            let ah = ts(&a, &h);
            inst(
                vec![
                    is_ty(&g, &a),
                    is_sub(&h, &d, &g),
                    elt(&g, &s, &a),
                    elt(&g, &t, &a),
                    elt(&d, &tms(&s, &h), &ah),
                    elt(&d, &tms(&t, &h), &ah),
                ],
                ty_eq(&d, &ts(&idt(&a, &s, &t), &h), &idt(&ah, &tms(&s, &h), &tms(&t, &h))),
            )
        }),
        rule!("rr-sub", "Id", |x| {
            let (g, a, s) = typed(x);
            let (d, h) = x.sub_to(&g);
            inst(
                vec![is_sub(&h, &d, &g), is_ty(&g, &a), elt(&g, &s, &a)],
                elt_eq(
                    &d,
                    &tms(&Tm::rr(s.clone()), &h),
                    &Tm::rr(tms(&s, &h)),
                    &ts(&idt(&a, &s, &s), &h),
                ),
            )
        }),
        rule!("ID-cong", "Id", |x| {
            let g = x.ctx();
            let (a, a2) = x.eq_tys(&g);
            let s = x.elt(&g, &a);
            let t = x.elt(&g, &a);
            let s2 = if x.chance(0.5) { tms(&s, &id(&g)) } else { s.clone() };
            let t2 = if x.chance(0.5) { x.elt(&g, &a) } else { t.clone() };
            inst(
                vec![
                    elt(&g, &s, &a),
                    elt(&g, &s2, &a2),
                    elt(&g, &t, &a),
                    elt(&g, &t2, &a2),
                    ty_eq(&g, &a, &a2),
                    elt_eq(&g, &s, &s2, &a),
                    elt_eq(&g, &t, &t2, &a),
                ],
                ty_eq(&g, &idt(&a, &s, &t), &idt(&a2, &s2, &t2)),
            )
        }),
        rule!("rr-cong", "Id", |x| {
            let g = x.ctx();
            let (a, s, t) = x.eq_tms(&g);
            inst(
                vec![elt(&g, &s, &a), elt_eq(&g, &s, &t, &a)],
                elt_eq(&g, &Tm::rr(s.clone()), &Tm::rr(t.clone()), &idt(&a, &s, &s)),
            )
        }),
    ]
}

fn sigma_rules() -> Vec<Rule> {
    /// `Γ, A, B` with `a : A` and `b : B[els a]`.
    fn sig(x: &mut Gen) -> (Ctx, Ty, Ty, Tm, Tm) {
        let (g, a, b, body) = family(x);
        let s = x.elt(&g, &a);
        let t = tms(&body, &els(&a, &s));
        (g, a, b, s, t)
    }
    /// An element of a Σ type.
    fn pairish(x: &mut Gen) -> (Ctx, Ty, Ty, Tm) {
        if x.chance(0.3) {
            let g = x.ctx();
            let (a, b) = (bool_ty(), Ty::id(bool_ty(), Tm::Var, tt()));
            let c = x.elt(&g, &sig_dep());
            (g, a, b, c)
        } else {
            let (g, a, b, s, t) = sig(x);
            (g, a, b, Tm::pr(s, t))
        }
    }
    fn sg(a: &Ty, b: &Ty) -> Ty {
        Ty::sigma(a.clone(), b.clone())
    }
    fn wf(g: &Ctx, a: &Ty, b: &Ty) -> Vec<Judg> {
        vec![is_ty(g, a), is_ty(&ext(g, a), b)]
    }
    vec![
        rule!("Sigma-f", "Sigma", |x| {
            let (g, a, b, _) = family(x);
            inst(wf(&g, &a, &b), is_ty(&g, &sg(&a, &b)))
        }),
        rule!("Sigma-i", "Sigma", |x| {
            let (g, a, b, s, t) = sig(x);
            let mut p = wf(&g, &a, &b);
            p.extend([elt(&g, &s, &a), elt(&g, &t, &ts(&b, &els(&a, &s)))]);
            inst(p, elt(&g, &Tm::pr(s, t), &sg(&a, &b)))
        }),
        rule!("Sigma-e-1", "Sigma", |x| {
            let (g, a, b, c) = pairish(x);
            let mut p = wf(&g, &a, &b);
            p.push(elt(&g, &c, &sg(&a, &b)));
            inst(p, elt(&g, &Tm::pr1(c), &a))
        }),
        rule!("Sigma-e-2", "Sigma", |x| {
            let (g, a, b, c) = pairish(x);
            let mut p = wf(&g, &a, &b);
            let c1 = Tm::pr1(c.clone());
            p.extend([elt(&g, &c, &sg(&a, &b)), elt(&g, &c1, &a)]);
            inst(p, elt(&g, &Tm::pr2(c), &ts(&b, &els(&a, &c1))))
        }),
        rule!("Sigma-c-1", "Sigma", |x| {
            let (g, a, b, s, t) = sig(x);
            let pr = Tm::pr(s.clone(), t.clone());
            let mut p = wf(&g, &a, &b);
            p.extend([
                elt(&g, &s, &a),
                elt(&g, &t, &ts(&b, &els(&a, &s))),
                elt(&g, &pr, &sg(&a, &b)),
            ]);
            inst(p, elt_eq(&g, &Tm::pr1(pr), &s, &a))
        }),
        rule!("Sigma-c-2", "Sigma", |x| {
            let (g, a, b, s, t) = sig(x);
            let pr = Tm::pr(s.clone(), t.clone());
            let bs = ts(&b, &els(&a, &s));
            let mut p = wf(&g, &a, &b);
            p.extend([elt(&g, &s, &a), elt(&g, &t, &bs), elt(&g, &pr, &sg(&a, &b))]);
            inst(p, elt_eq(&g, &Tm::pr2(pr), &t, &bs))
        }),
        rule!("Sigma-c-eta", "Sigma", |x| {
            let (g, a, b, c) = pairish(x);
            let mut p = wf(&g, &a, &b);
            p.push(elt(&g, &c, &sg(&a, &b)));
            inst(
                p,
                elt_eq(&g, &c, &Tm::pr(Tm::pr1(c.clone()), Tm::pr2(c.clone())), &sg(&a, &b)),
            )
        }),
        rule!("Sigma-f-cong", "Sigma", |x| {
            let g = x.ctx();
            let (a, a2) = x.eq_tys(&g);
            let (b, _) = x.fam(&g, &a);
            let b2 = transported(x, &g, &a, &a2, &b);
            let (ga, ga2) = (ext(&g, &a), ext(&g, &a2));
            inst(
                vec![
                    ty_eq(&g, &a, &a2),
                    is_ty(&ga, &b),
                    is_ty(&ga2, &b2),
                    ty_eq(&ga, &b, &ts(&b2, &phi(&ga, &ga2))),
                ],
                ty_eq(&g, &sg(&a, &b), &sg(&a2, &b2)),
            )
        }),
        rule!("pr-cong", "Sigma", |x| {
            let (g, a, b, s, t) = sig(x);
            let s2 = if x.chance(0.5) { tms(&s, &id(&g)) } else { x.elt(&g, &a) };
            let t2 = if x.chance(0.5) { tms(&t, &id(&g)) } else { t.clone() };
            let bs = ts(&b, &els(&a, &s));
            let mut p = wf(&g, &a, &b);
            p.extend([
                elt(&g, &s, &a),
                elt(&g, &t, &bs),
                elt_eq(&g, &s, &s2, &a),
                elt_eq(&g, &t, &t2, &bs),
            ]);
            inst(p, elt_eq(&g, &Tm::pr(s, t), &Tm::pr(s2, t2), &sg(&a, &b)))
        }),
        rule!("pr1-cong", "Sigma", |x| {
            let (g, a, b, c) = pairish(x);
            let c2 = if x.chance(0.6) {
                tms(&c, &id(&g))
            } else {
                Tm::pr(Tm::pr1(c.clone()), Tm::pr2(c.clone()))
            };
            let s = sg(&a, &b);
            let mut p = wf(&g, &a, &b);
            p.extend([elt(&g, &c, &s), elt(&g, &c2, &s), elt_eq(&g, &c, &c2, &s)]);
            inst(p, elt_eq(&g, &Tm::pr1(c), &Tm::pr1(c2), &a))
        }),
        rule!("pr2-cong", "Sigma", |x| {
            let (g, a, b, c) = pairish(x);
            let c2 = if x.chance(0.6) {
                tms(&c, &id(&g))
            } else {
                Tm::pr(Tm::pr1(c.clone()), Tm::pr2(c.clone()))
            };
            let s = sg(&a, &b);
            let c1 = Tm::pr1(c.clone());
            let mut p = wf(&g, &a, &b);
            p.extend([
                elt(&g, &c, &s),
                elt(&g, &c2, &s),
                elt_eq(&g, &c, &c2, &s),
                elt(&g, &c1, &a),
            ]);
            inst(p, elt_eq(&g, &Tm::pr2(c), &Tm::pr2(c2), &ts(&b, &els(&a, &c1))))
        }),
        rule!("Sigma-f-sub", "Sigma", |x| {
            let (g, a, b, _) = family(x);
            let (d, h) = x.sub_to(&g);
            let mut p = wf(&g, &a, &b);
            p.push(is_sub(&h, &d, &g));
            inst(
                p,
                ty_eq(&d, &ts(&sg(&a, &b), &h), &sg(&ts(&a, &h), &ts(&b, &lift(&a, &h)))),
            )
        }),
        rule!("pr-sub", "Sigma", |x| {
            let (g, a, b, s, t) = sig(x);
            let (d, h) = x.sub_to(&g);
            let mut p = wf(&g, &a, &b);
            p.extend([is_sub(&h, &d, &g), elt(&g, &s, &a), elt(&g, &t, &ts(&b, &els(&a, &s)))]);
            inst(
                p,
                elt_eq(
                    &d,
                    &tms(&Tm::pr(s.clone(), t.clone()), &h),
                    &Tm::pr(tms(&s, &h), tms(&t, &h)),
                    &ts(&sg(&a, &b), &h),
                ),
            )
        }),
        rule!("pr1-sub", "Sigma", |x| {
            let (g, a, b, c) = pairish(x);
            let (d, h) = x.sub_to(&g);
            let sh = sg(&ts(&a, &h), &ts(&b, &lift(&a, &h)));
            let mut p = wf(&g, &a, &b);
            p.extend([is_sub(&h, &d, &g), elt(&g, &c, &sg(&a, &b)), elt(&d, &tms(&c, &h), &sh)]);
            inst(
                p,
                elt_eq(&d, &tms(&Tm::pr1(c.clone()), &h), &Tm::pr1(tms(&c, &h)), &ts(&a, &h)),
            )
        }),
        rule!("pr2-sub", "Sigma", |x| {
            let (g, a, b, c) = pairish(x);
            let (d, h) = x.sub_to(&g);
            let (ah, bq) = (ts(&a, &h), ts(&b, &lift(&a, &h)));
            let c1h = tms(&Tm::pr1(c.clone()), &h);
            let mut p = wf(&g, &a, &b);
            p.extend([
                is_sub(&h, &d, &g),
                elt(&g, &c, &sg(&a, &b)),
                elt(&d, &tms(&c, &h), &sg(&ah, &bq)),
                elt(&d, &c1h, &ah),
            ]);
            inst(
                p,
                elt_eq(
                    &d,
                    &tms(&Tm::pr2(c.clone()), &h),
                    &Tm::pr2(tms(&c, &h)),
                    &ts(&bq, &els(&ah, &c1h)),
                ),
            )
        }),
    ]
}

fn nat_rules() -> Vec<Rule> {
    fn rec(c: &Ty, d: &Tm, e: &Tm, n: &Tm) -> Tm {
        Tm::rec(c.clone(), d.clone(), e.clone(), n.clone())
    }
    /// Premises typing a recursor's motive, base and step.
    fn motive_ok(g: &Ctx, c: &Ty, d: &Tm, e: &Tm) -> Vec<Judg> {
        let gn = ext(g, &Ty::Nat);
        vec![
            is_ty(&gn, c),
            elt(g, d, &ts(c, &els(&Ty::Nat, &Tm::Zero))),
            elt(&ext(&gn, c), e, &ts(&ts(c, &Sub::step_sub(g.clone())), &down(c))),
        ]
    }
    vec![
        rule!("Nat", "Nat", nat, |x| {
            let g = x.nat_ctx();
            inst(vec![ctx_ok(&g)], is_ty(&g, &Ty::Nat))
        }),
        rule!("Nat-i-0", "Nat", nat, |x| {
            let g = x.nat_ctx();
            inst(vec![ctx_ok(&g)], elt(&g, &Tm::Zero, &Ty::Nat))
        }),
        rule!("Nat-i-s", "Nat", nat, |x| {
            let g = x.nat_ctx();
            let n = x.nat_tm(&g);
            inst(vec![elt(&g, &n, &Ty::Nat)], elt(&g, &Tm::succ(n), &Ty::Nat))
        }),
        rule!("Nat-e", "Nat", nat, |x| {
            let g = x.nat_ctx();
            let (c, d, e) = x.motive(&g);
            let n = x.nat_tm(&g);
            let mut p = motive_ok(&g, &c, &d, &e);
            p.push(elt(&g, &n, &Ty::Nat));
            inst(p, elt(&g, &rec(&c, &d, &e, &n), &ts(&c, &els(&Ty::Nat, &n))))
        }),
        rule!("Nat-c-0", "Nat", nat, |x| {
            let g = x.nat_ctx();
            let (c, d, e) = x.motive(&g);
            inst(
                motive_ok(&g, &c, &d, &e),
                elt_eq(&g, &rec(&c, &d, &e, &Tm::Zero), &d, &ts(&c, &els(&Ty::Nat, &Tm::Zero))),
            )
        }),
        rule!("Nat-c-s", "Nat", nat, |x| {
            let g = x.nat_ctx();
            let (c, d, e) = x.motive(&g);
            let n = x.nat_tm(&g);
            let mut p = motive_ok(&g, &c, &d, &e);
            p.push(elt(&g, &n, &Ty::Nat));
            let step = Sub::pair(els(&Ty::Nat, &n), c.clone(), rec(&c, &d, &e, &n));
            inst(
                p,
                elt_eq(
                    &g,
                    &rec(&c, &d, &e, &Tm::succ(n.clone())),
                    &tms(&e, &step),
                    &ts(&c, &els(&Ty::Nat, &Tm::succ(n))),
                ),
            )
        }),
        rule!("Nat-i-s-cong", "Nat", nat, |x| {
            let g = x.nat_ctx();
            let n = x.nat_tm(&g);
            let m = if x.chance(0.6) { tms(&n, &id(&g)) } else { x.nat_tm(&g) };
            inst(
                vec![elt_eq(&g, &n, &m, &Ty::Nat)],
                elt_eq(&g, &Tm::succ(n), &Tm::succ(m), &Ty::Nat),
            )
        }),
        rule!("Rec-cong", "Nat", nat, |x| {
            let g = x.nat_ctx();
            let (c, d, e) = x.motive(&g);
            let gn = ext(&g, &Ty::Nat);
            let c2 = if x.chance(0.5) { ts(&c, &id(&gn)) } else { c.clone() };
            let d2 = if x.chance(0.5) { tms(&d, &id(&g)) } else { d.clone() };
            let e2 = e.clone();
            let n = x.nat_tm(&g);
            let n2 = if x.chance(0.5) { tms(&n, &id(&g)) } else { n.clone() };
            let (gnc, gnc2) = (ext(&gn, &c), ext(&gn, &c2));
            let mut p = motive_ok(&g, &c, &d, &e);
            p.extend(motive_ok(&g, &c2, &d2, &e2));
            p.extend([
                elt(&g, &n, &Ty::Nat),
                elt(&g, &n2, &Ty::Nat),
                ty_eq(&gn, &c, &c2),
                elt_eq(&g, &d, &d2, &ts(&c, &els(&Ty::Nat, &Tm::Zero))),
                elt_eq(
                    &gnc,
                    &e,
                    &tms(&e2, &phi(&gnc, &gnc2)),
                    &ts(&ts(&c, &Sub::step_sub(g.clone())), &down(&c)),
                ),
                elt_eq(&g, &n, &n2, &Ty::Nat),
            ]);
            inst(
                p,
                elt_eq(
                    &g,
                    &rec(&c, &d, &e, &n),
                    &rec(&c2, &d2, &e2, &n2),
                    &ts(&c, &els(&Ty::Nat, &n)),
                ),
            )
        }),
        rule!("Nat-sub", "Nat", nat, |x| {
            let g = x.nat_ctx();
            let (d, h) = x.sub_to(&g);
            inst(vec![is_sub(&h, &d, &g)], ty_eq(&d, &ts(&Ty::Nat, &h), &Ty::Nat))
        }),
        rule!("Nat-i-0-sub", "Nat", nat, |x| {
            let g = x.nat_ctx();
            let (d, h) = x.sub_to(&g);
            inst(
                vec![is_sub(&h, &d, &g)],
                elt_eq(&d, &tms(&Tm::Zero, &h), &Tm::Zero, &Ty::Nat),
            )
        }),
        rule!("Nat-i-s-sub", "Nat", nat, |x| {
            let g = x.nat_ctx();
            let (d, h) = x.sub_to(&g);
            let n = x.nat_tm(&g);
            inst(
                vec![is_sub(&h, &d, &g), elt(&g, &n, &Ty::Nat)],
                elt_eq(&d, &tms(&Tm::succ(n.clone()), &h), &Tm::succ(tms(&n, &h)), &Ty::Nat),
            )
        }),
        rule!("Rec-sub", "Nat", nat, |x| {
            let g = x.nat_ctx();
            let (c, d, e) = x.motive(&g);
            let n = x.nat_tm(&g);
            let (dd, h) = x.sub_to(&g);
            let qn = lift(&Ty::Nat, &h);
            let ch = ts(&c, &qn);
            let qc = lift(&c, &qn);
            let (d2, e2) = (tms(&d, &h), tms(&e, &qc));
            let dn = ext(&dd, &ts(&Ty::Nat, &h));
            let mut p = motive_ok(&g, &c, &d, &e);
            p.extend([
                elt(&g, &n, &Ty::Nat),
                is_sub(&h, &dd, &g),
                is_ty(&dn, &ch),
                elt(&dd, &d2, &ts(&ch, &els(&Ty::Nat, &Tm::Zero))),
                elt(
                    &ext(&dn, &ch),
                    &e2,
                    &ts(&ts(&ch, &Sub::step_sub(dd.clone())), &down(&ch)),
                ),
            ]);
            inst(
                p,
                elt_eq(
                    &dd,
                    &tms(&rec(&c, &d, &e, &n), &h),
                    &rec(&ch, &d2, &e2, &tms(&n, &h)),
                    &ts(&ts(&c, &els(&Ty::Nat, &n)), &h),
                ),
            )
        }),
    ]
}

fn empty_rules() -> Vec<Rule> {
    /// A context with an `N0` variable, or one without (then vacuous).
    fn n0_ctx(x: &mut Gen) -> (Ctx, Tm) {
        match x.below(4) {
            0 => (Ctx::of([Ty::N0]), Tm::Var),
            1 => (Ctx::of([bool_ty(), Ty::N0]), Tm::Var),
            2 => (Ctx::of([Ty::N0, bool_ty()]), Tm::Var.sub(down(&bool_ty()))),
            _ => (x.ctx(), Tm::Zero),
        }
    }
    fn motive(x: &mut Gen, g: &Ctx) -> Ty {
        let gn = ext(g, &Ty::N0);
        if x.chance(0.3) {
            Ty::id(Ty::N0.sub(down(&Ty::N0)), Tm::Var, Tm::Var)
        } else {
            x.ty(&gn)
        }
    }
    vec![
        rule!("N0", "N0", |x| {
            let g = x.ctx();
            inst(vec![ctx_ok(&g)], is_ty(&g, &Ty::N0))
        }),
        rule!("N0-e", "N0", |x| {
            let (g, c) = n0_ctx(x);
            let m = motive(x, &g);
            inst(
                vec![is_ty(&ext(&g, &Ty::N0), &m), elt(&g, &c, &Ty::N0)],
                elt(&g, &Tm::r0(m.clone(), c.clone()), &ts(&m, &els(&Ty::N0, &c))),
            )
        }),
        rule!("R0-cong'", "N0", |x| {
            let (g, c) = n0_ctx(x);
            let m = motive(x, &g);
            let gn = ext(&g, &Ty::N0);
            let m2 = if x.chance(0.5) { ts(&m, &id(&gn)) } else { x.ty(&gn) };
            let c2 = tms(&c, &id(&g));
            inst(
                vec![
                    ty_eq(&gn, &m, &m2),
                    elt(&g, &c, &Ty::N0),
                    elt(&g, &c2, &Ty::N0),
                    elt_eq(&g, &c, &c2, &Ty::N0),
                ],
                elt_eq(
                    &g,
                    &Tm::r0(m.clone(), c.clone()),
                    &Tm::r0(m2, c2),
                    &ts(&m, &els(&Ty::N0, &c)),
                ),
            )
        }),
        rule!("N0-sub", "N0", |x| {
            let (g, d, h) = any_sub(x);
            inst(vec![is_sub(&h, &d, &g)], ty_eq(&d, &ts(&Ty::N0, &h), &Ty::N0))
        }),
        rule!("R0-sub", "N0", |x| {
            let (g, c) = n0_ctx(x);
            let m = motive(x, &g);
            let (d, h) = x.sub_to(&g);
            let ch = tms(&c, &h);
            inst(
                vec![
                    is_sub(&h, &d, &g),
                    is_ty(&ext(&g, &Ty::N0), &m),
                    elt(&g, &c, &Ty::N0),
                    elt(&d, &ch, &ts(&Ty::N0, &h)),
                ],
                elt_eq(
                    &d,
                    &tms(&Tm::r0(m.clone(), c.clone()), &h),
                    &Tm::r0(ts(&m, &lift(&Ty::N0, &h)), ch),
                    &ts(&ts(&m, &els(&Ty::N0, &c)), &h),
                ),
            )
        }),
    ]
}

fn sum_rules() -> Vec<Rule> {
    fn sum(a: &Ty, b: &Ty) -> Ty {
        Ty::sum(a.clone(), b.clone())
    }
    fn sumrec(a: &Ty, b: &Ty, c: &Ty, d: &Tm, e: &Tm, t: &Tm) -> Tm {
        Tm::sumrec(a.clone(), b.clone(), c.clone(), d.clone(), e.clone(), t.clone())
    }
    fn branches_ok(g: &Ctx, a: &Ty, b: &Ty, c: &Ty, d: &Tm, e: &Tm) -> Vec<Judg> {
        vec![
            is_ty(g, a),
            is_ty(g, b),
            is_ty(&ext(g, &sum(a, b)), c),
            elt(&ext(g, a), d, &ts(c, &Sub::sum_sub_lf(a.clone(), b.clone()))),
            elt(&ext(g, b), e, &ts(c, &Sub::sum_sub_rg(a.clone(), b.clone()))),
        ]
    }
    vec![
        rule!("Sum", "Sum", |x| {
            let (g, a, b, _) = sum_setup(x);
            inst(vec![is_ty(&g, &a), is_ty(&g, &b)], is_ty(&g, &sum(&a, &b)))
        }),
        rule!("lf-pf", "Sum", |x| {
            let (g, a, s) = typed(x);
            let b = x.ty(&g);
            inst(
                vec![is_ty(&g, &a), is_ty(&g, &b), elt(&g, &s, &a)],
                elt(&g, &Tm::lf(a.clone(), b.clone(), s), &sum(&a, &b)),
            )
        }),
        rule!("rg-pf", "Sum", |x| {
            let (g, b, t) = typed(x);
            let a = x.ty(&g);
            inst(
                vec![is_ty(&g, &a), is_ty(&g, &b), elt(&g, &t, &b)],
                elt(&g, &Tm::rg(a.clone(), b.clone(), t), &sum(&a, &b)),
            )
        }),
        rule!("Sum-e", "Sum", |x| {
            let (g, a, b, t) = sum_setup(x);
            let (c, d, e) = sum_motive(x, &g, &a, &b);
            let mut p = branches_ok(&g, &a, &b, &c, &d, &e);
            p.push(elt(&g, &t, &sum(&a, &b)));
            inst(
                p,
                elt(&g, &sumrec(&a, &b, &c, &d, &e, &t), &ts(&c, &els(&sum(&a, &b), &t))),
            )
        }),
        rule!("Sum-c1", "Sum", |x| {
            let (g, a, s) = typed(x);
            let b = x.ty(&g);
            let (c, d, e) = sum_motive(x, &g, &a, &b);
            let l = Tm::lf(a.clone(), b.clone(), s.clone());
            let mut p = branches_ok(&g, &a, &b, &c, &d, &e);
            p.extend([elt(&g, &s, &a), elt(&g, &l, &sum(&a, &b))]);
            inst(
                p,
                elt_eq(
                    &g,
                    &sumrec(&a, &b, &c, &d, &e, &l),
                    &tms(&d, &els(&a, &s)),
                    &ts(&c, &els(&sum(&a, &b), &l)),
                ),
            )
        }),
        rule!("Sum-c2", "Sum", |x| {
            let (g, b, t) = typed(x);
            let a = x.ty(&g);
            let (c, d, e) = sum_motive(x, &g, &a, &b);
            let r = Tm::rg(a.clone(), b.clone(), t.clone());
            let mut p = branches_ok(&g, &a, &b, &c, &d, &e);
            p.extend([elt(&g, &t, &b), elt(&g, &r, &sum(&a, &b))]);
            inst(
                p,
                elt_eq(
                    &g,
                    &sumrec(&a, &b, &c, &d, &e, &r),
                    &tms(&e, &els(&b, &t)),
                    &ts(&c, &els(&sum(&a, &b), &r)),
                ),
            )
        }),
        rule!("Sum-cong", "Sum", |x| {
            let g = x.ctx();
            let (a, a2) = x.eq_tys(&g);
            let (b, b2) = x.eq_tys(&g);
            inst(
                vec![ty_eq(&g, &a, &a2), ty_eq(&g, &b, &b2)],
                ty_eq(&g, &sum(&a, &b), &sum(&a2, &b2)),
            )
        }),
        rule!("lf-cong", "Sum", |x| {
            let g = x.ctx();
            let (a, s, s2) = x.eq_tms(&g);
            let b = x.ty(&g);
            inst(
                vec![is_ty(&g, &a), is_ty(&g, &b), elt(&g, &s, &a), elt_eq(&g, &s, &s2, &a)],
                elt_eq(
                    &g,
                    &Tm::lf(a.clone(), b.clone(), s),
                    &Tm::lf(a.clone(), b.clone(), s2),
                    &sum(&a, &b),
                ),
            )
        }),
        rule!("rg-cong", "Sum", |x| {
            let g = x.ctx();
            let (b, t, t2) = x.eq_tms(&g);
            let a = x.ty(&g);
            inst(
                vec![is_ty(&g, &a), is_ty(&g, &b), elt(&g, &t, &b), elt_eq(&g, &t, &t2, &b)],
                elt_eq(
                    &g,
                    &Tm::rg(a.clone(), b.clone(), t),
                    &Tm::rg(a.clone(), b.clone(), t2),
                    &sum(&a, &b),
                ),
            )
        }),
        rule!("Sum-rec-cong", "Sum", |x| {
            let (g, a, b, t) = sum_setup(x);
            let (c, d, e) = sum_motive(x, &g, &a, &b);
            let a2 = if x.chance(0.5) { ts(&a, &id(&g)) } else { a.clone() };
            let b2 = if x.chance(0.5) { ts(&b, &id(&g)) } else { b.clone() };
            let (s, s2) = (sum(&a, &b), sum(&a2, &b2));
            let c2 = transported(x, &g, &s, &s2, &c);
            let d2 = tm_transported(x, &g, &a, &a2, &d);
            let e2 = tm_transported(x, &g, &b, &b2, &e);
            let t2 = if x.chance(0.5) { tms(&t, &id(&g)) } else { t.clone() };
            let (gs, gs2) = (ext(&g, &s), ext(&g, &s2));
            let (ga, ga2, gb, gb2) = (ext(&g, &a), ext(&g, &a2), ext(&g, &b), ext(&g, &b2));
            let mut p = branches_ok(&g, &a, &b, &c, &d, &e);
            p.extend(branches_ok(&g, &a2, &b2, &c2, &d2, &e2));
            p.extend([
                elt(&g, &t, &s),
                elt(&g, &t2, &s2),
                ty_eq(&g, &a, &a2),
                ty_eq(&g, &b, &b2),
                ty_eq(&gs, &c, &ts(&c2, &phi(&gs, &gs2))),
                elt_eq(
                    &ga,
                    &d,
                    &tms(&d2, &phi(&ga, &ga2)),
                    &ts(&c, &Sub::sum_sub_lf(a.clone(), b.clone())),
                ),
                elt_eq(
                    &gb,
                    &e,
                    &tms(&e2, &phi(&gb, &gb2)),
                    &ts(&c, &Sub::sum_sub_rg(a.clone(), b.clone())),
                ),
                elt_eq(&g, &t, &t2, &s),
            ]);
            inst(
                p,
                elt_eq(
                    &g,
                    &sumrec(&a, &b, &c, &d, &e, &t),
                    &sumrec(&a2, &b2, &c2, &d2, &e2, &t2),
                    &ts(&c, &els(&s, &t)),
                ),
            )
        }),
        rule!("Sum-sub", "Sum", |x| {
            let (g, a, b, _) = sum_setup(x);
            let (d, h) = x.sub_to(&g);
            inst(
                vec![is_sub(&h, &d, &g), is_ty(&g, &a), is_ty(&g, &b)],
                ty_eq(&d, &ts(&sum(&a, &b), &h), &sum(&ts(&a, &h), &ts(&b, &h))),
            )
        }),
        rule!("lf-sub", "Sum", |x| {
            let (g, a, s) = typed(x);
            let b = x.ty(&g);
            let (d, h) = x.sub_to(&g);
            inst(
                vec![is_sub(&h, &d, &g), is_ty(&g, &a), is_ty(&g, &b), elt(&g, &s, &a)],
                elt_eq(
                    &d,
                    &tms(&Tm::lf(a.clone(), b.clone(), s.clone()), &h),
                    &Tm::lf(ts(&a, &h), ts(&b, &h), tms(&s, &h)),
                    &ts(&sum(&a, &b), &h),
                ),
            )
        }),
        rule!("rg-sub", "Sum", |x| {
            let (g, b, t) = typed(x);
            let a = x.ty(&g);
            let (d, h) = x.sub_to(&g);
            inst(
                vec![is_sub(&h, &d, &g), is_ty(&g, &a), is_ty(&g, &b), elt(&g, &t, &b)],
                elt_eq(
                    &d,
                    &tms(&Tm::rg(a.clone(), b.clone(), t.clone()), &h),
                    &Tm::rg(ts(&a, &h), ts(&b, &h), tms(&t, &h)),
                    &ts(&sum(&a, &b), &h),
                ),
            )
        }),
        rule!("Sum-rec-sub", "Sum", |x| {
            let (g, a, b, t) = sum_setup(x);
            let (c, d, e) = sum_motive(x, &g, &a, &b);
            let (dd, h) = x.sub_to(&g);
            let s = sum(&a, &b);
            let mut p = branches_ok(&g, &a, &b, &c, &d, &e);
            p.extend([is_sub(&h, &dd, &g), elt(&g, &t, &s)]);
            inst(
                p,
                elt_eq(
                    &dd,
                    &tms(&sumrec(&a, &b, &c, &d, &e, &t), &h),
                    &sumrec(
                        &ts(&a, &h),
                        &ts(&b, &h),
                        &ts(&c, &lift(&s, &h)),
                        &tms(&d, &lift(&a, &h)),
                        &tms(&e, &lift(&b, &h)),
                        &tms(&t, &h),
                    ),
                    &ts(&ts(&c, &els(&s, &t)), &h),
                ),
            )
        }),
    ]
}

fn universe_rules() -> Vec<Rule> {
    fn u(k: u32) -> Ty {
        Ty::U(k)
    }
    vec![
        rule!("U-k", "U", |x| {
            let g = x.ctx();
            let k = level(x);
            inst(vec![ctx_ok(&g)], is_ty(&g, &u(k)))
        }),
        rule!("U-TO-DO", "U", nat, |x| {
            let g = x.ctx();
            let k = level(x);
            let a = if x.chance(0.2) { u(0) } else { small_ty(x, &g) };
            inst(vec![elt(&g, &code(&a), &u(k))], is_ty(&g, &a))
        }),
        rule!("U-nat-", "U", nat, |x| {
            let g = x.ctx();
            let k = level(x);
            inst(vec![ctx_ok(&g)], elt(&g, &code(&Ty::Nat), &u(k)))
        }),
        rule!("U-N0-", "U", |x| {
            let g = x.ctx();
            let k = level(x);
            inst(vec![ctx_ok(&g)], elt(&g, &code(&Ty::N0), &u(k)))
        }),
        rule!("U-pi-", "U", |x| {
            let (g, a, b, _) = family(x);
            let k = level(x);
            inst(
                vec![elt(&g, &code(&a), &u(k)), elt(&ext(&g, &a), &code(&b), &u(k))],
                elt(&g, &code(&Ty::pi(a, b)), &u(k)),
            )
        }),
        rule!("U-sigma-", "U", |x| {
            let (g, a, b, _) = family(x);
            let k = level(x);
            inst(
                vec![elt(&g, &code(&a), &u(k)), elt(&ext(&g, &a), &code(&b), &u(k))],
                elt(&g, &code(&Ty::sigma(a, b)), &u(k)),
            )
        }),
        rule!("U-Sum-", "U", nat, |x| {
            let g = x.ctx();
            let a = small_ty(x, &g);
            let b = small_ty(x, &g);
            let k = level(x);
            inst(
                vec![elt(&g, &code(&a), &u(k)), elt(&g, &code(&b), &u(k))],
                elt(&g, &code(&Ty::sum(a, b)), &u(k)),
            )
        }),
        rule!("U-ID-", "U", |x| {
            let (g, a, s) = typed(x);
            let t = x.elt(&g, &a);
            let k = level(x);
            inst(
                vec![elt(&g, &code(&a), &u(k)), elt(&g, &s, &a), elt(&g, &t, &a)],
                elt(&g, &code(&Ty::id(a.clone(), s, t)), &u(k)),
            )
        }),
        rule!("Cu-1a-", "U", |x| {
            let g = x.ctx();
            let k = level(x);
            inst(vec![ctx_ok(&g)], elt(&g, &code(&u(k)), &u(k + 1)))
        }),
        rule!("Cu-1b-", "U", nat, |x| {
            let g = x.ctx();
            let k = level(x);
            let a = if x.chance(0.2) && k > 0 { u(0) } else { small_ty(x, &g) };
            inst(vec![elt(&g, &code(&a), &u(k))], elt(&g, &code(&a), &u(k + 1)))
        }),
        rule!("U-sub-", "U", |x| {
            let (g, d, h) = any_sub(x);
            let k = level(x);
            inst(vec![is_sub(&h, &d, &g)], ty_eq(&d, &ts(&u(k), &h), &u(k)))
        }),
        rule!("U-eq-refl1", "U", |x| {
            let g = x.ctx();
            let (a, b) = x.eq_tys(&g);
            let k = level(x);
            inst(
                vec![elt(&g, &code(&a), &u(k)), elt(&g, &code(&b), &u(k)), ty_eq(&g, &a, &b)],
                elt_eq(&g, &code(&a), &code(&b), &u(k)),
            )
        }),
        rule!("U-eq-refl2", "U", |x| {
            let g = x.ctx();
            let (a, b) = if x.chance(0.7) {
                x.eq_tys(&g)
            } else {
                (x.ty(&g), x.ty(&g))
            };
            let k = level(x);
            inst(vec![elt_eq(&g, &code(&a), &code(&b), &u(k))], ty_eq(&g, &a, &b))
        }),
    ]
}

fn bracket_rules() -> Vec<Rule> {
    fn wh(a: &Ty, b: &Ty, k: &Tm, body: &Tm) -> Tm {
        Tm::wh(a.clone(), b.clone(), k.clone(), body.clone())
    }
    fn br(a: &Ty) -> Ty {
        Ty::br(a.clone())
    }
    fn elim_ok(g: &Ctx, a: &Ty, b: &Ty, k: &Tm, body: &Tm) -> Vec<Judg> {
        vec![
            is_ty(g, a),
            is_ty(g, b),
            elt(g, k, &br(a)),
            elt(&ext(g, a), body, &ts(b, &down(a))),
            br_const(g, a, b, body),
        ]
    }
    vec![
        rule!("Br-f", "Br", |x| {
            let g = x.ctx();
            let a = x.ty(&g);
            inst(vec![is_ty(&g, &a)], is_ty(&g, &br(&a)))
        }),
        rule!("Br-intro", "Br", |x| {
            let (g, a, t) = typed(x);
            inst(vec![is_ty(&g, &a), elt(&g, &t, &a)], elt(&g, &Tm::brin(t), &br(&a)))
        }),
        rule!("Br-e", "Br", |x| {
            let (g, a, b, k, body) = br_setup(x);
            inst(elim_ok(&g, &a, &b, &k, &body), elt(&g, &wh(&a, &b, &k, &body), &b))
        }),
        rule!("Br-beta", "Br", |x| {
            let (g, a, b, _, body) = br_setup(x);
            let t = x.elt(&g, &a);
            let k = Tm::brin(t.clone());
            let mut p = elim_ok(&g, &a, &b, &k, &body);
            p.push(elt(&g, &t, &a));
            inst(p, elt_eq(&g, &wh(&a, &b, &k, &body), &tms(&body, &els(&a, &t)), &b))
        }),
        rule!("Br-eta", "Br", |x| {
            let (g, a, b, k, _) = br_setup(x);
            let ba = br(&a);
            let gb = ext(&g, &ba);
            let body = match x.below(3) {
                0 => Tm::Var,
                _ => x.elt(&gb, &b),
            };
            let b = if body == Tm::Var { ba.clone() } else { b };
            let body_a = tms(&body, &Sub::br_sb(a.clone()));
            inst(
                vec![
                    is_ty(&g, &a),
                    is_ty(&g, &b),
                    elt(&g, &k, &ba),
                    elt(&gb, &body, &ts(&b, &down(&ba))),
                    elt(&ext(&g, &a), &body_a, &ts(&b, &down(&a))),
                ],
                elt_eq(&g, &wh(&a, &b, &k, &body_a), &tms(&body, &els(&ba, &k)), &b),
            )
        }),
        rule!("Br-eqty", "Br", |x| {
            let (g, a, s) = typed(x);
            let t = x.elt(&g, &a);
            let (s, t) = (Tm::brin(s), if x.chance(0.3) { Tm::Zero } else { Tm::brin(t) });
            inst(
                vec![elt(&g, &s, &br(&a)), elt(&g, &t, &br(&a))],
                elt_eq(&g, &s, &t, &br(&a)),
            )
        }),
        rule!("Br-cong", "Br", |x| {
            let g = x.ctx();
            let (a, a2) = x.eq_tys(&g);
            inst(vec![ty_eq(&g, &a, &a2)], ty_eq(&g, &br(&a), &br(&a2)))
        }),
        rule!("Br-e-cong", "Br", |x| {
            let (g, a, b, k, body) = br_setup(x);
            let a2 = if x.chance(0.5) { ts(&a, &id(&g)) } else { a.clone() };
            let b2 = if x.chance(0.5) { ts(&b, &id(&g)) } else { b.clone() };
            let k2 = if x.chance(0.5) {
                tms(&k, &id(&g))
            } else {
                Tm::brin(x.elt(&g, &a))
            };
            let body2 = tm_transported(x, &g, &a, &a2, &body);
            let (ga, ga2) = (ext(&g, &a), ext(&g, &a2));
            let mut p = elim_ok(&g, &a, &b, &k, &body);
            p.extend(elim_ok(&g, &a2, &b2, &k2, &body2));
            p.extend([
                ty_eq(&g, &a, &a2),
                ty_eq(&g, &b, &b2),
                elt_eq(&g, &k, &k2, &br(&a)),
                elt_eq(&ga, &body, &tms(&body2, &phi(&ga, &ga2)), &ts(&b, &down(&a))),
            ]);
            inst(p, elt_eq(&g, &wh(&a, &b, &k, &body), &wh(&a2, &b2, &k2, &body2), &b))
        }),
        rule!("Br-sub", "Br", |x| {
            let (g, d, h) = any_sub(x);
            let a = x.ty(&g);
            inst(
                vec![is_sub(&h, &d, &g), is_ty(&g, &a)],
                ty_eq(&d, &ts(&br(&a), &h), &br(&ts(&a, &h))),
            )
        }),
        rule!("br-sub", "Br", |x| {
            let (g, a, t) = typed(x);
            let (d, h) = x.sub_to(&g);
            inst(
                vec![is_sub(&h, &d, &g), is_ty(&g, &a), elt(&g, &t, &a)],
                elt_eq(
                    &d,
                    &tms(&Tm::brin(t.clone()), &h),
                    &Tm::brin(tms(&t, &h)),
                    &ts(&br(&a), &h),
                ),
            )
        }),
        rule!("Br-e-sub", "Br", |x| {
            let (g, a, b, k, body) = br_setup(x);
            let (d, h) = x.sub_to(&g);
            let mut p = elim_ok(&g, &a, &b, &k, &body);
            p.push(is_sub(&h, &d, &g));
            inst(
                p,
                elt_eq(
                    &d,
                    &tms(&wh(&a, &b, &k, &body), &h),
                    &wh(&ts(&a, &h), &ts(&b, &h), &tms(&k, &h), &tms(&body, &lift(&a, &h))),
                    &ts(&b, &h),
                ),
            )
        }),
        rule!("U-br-", "Br", |x| {
            let g = x.ctx();
            let a = x.ty(&g);
            let k = level(x);
            inst(vec![elt(&g, &code(&a), &Ty::U(k))], elt(&g, &code(&br(&a)), &Ty::U(k)))
        }),
    ]
}

/// Every rule, in display order.
pub fn catalog() -> Vec<Rule> {
    let mut rules = presuppositions();
    for group in [
        structural(),
        extension(),
        pi_rules(),
        id_rules(),
        sigma_rules(),
        nat_rules(),
        empty_rules(),
        sum_rules(),
        universe_rules(),
        bracket_rules(),
    ] {
        rules.extend(group);
    }
    rules
}

/// A deliberately unsound rule, used as a negative control: from two
/// booleans conclude that they are equal.
pub fn broken_rule() -> Rule {
    rule!("broken-control", "control", |x| {
        let g = x.inhabited_ctx();
        inst(
            vec![elt(&g, &tt(), &bool_ty()), elt(&g, &ff(), &bool_ty())],
            elt_eq(&g, &tt(), &ff(), &bool_ty()),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::well_scoped;
    use std::collections::HashSet;

    #[test]
    fn catalog_names_are_unique() {
        let rules = catalog();
        assert_eq!(rules.len(), 155);
        let names: HashSet<_> = rules.iter().map(|r| r.name).collect();
        assert_eq!(names.len(), rules.len());
    }

    #[test]
    fn generated_instances_are_well_scoped() {
        for r in catalog() {
            for seed in 0..10 {
                let i = (r.gen)(&mut Gen::new(seed, r.nat));
                for j in i.premises.iter().chain([&i.conclusion]) {
                    assert!(well_scoped(j).is_ok(), "{}: {} ({:?})", r.name, j, well_scoped(j));
                }
            }
        }
    }
}
