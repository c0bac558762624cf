//! Abstract syntax of the explicit-substitution calculus: contexts, types,
//! terms, substitutions and the eight judgment forms.
//!
//! Variables are nameless: `var` is the last variable, and older variables
//! are reached by substituting along `down`. Proof arguments of the rules are
//! not part of the syntax; the checker recomputes them.

mod parse;
mod print;
mod scope;
mod sexp;

pub use parse::{parse_file, parse_judgment, parse_tm, parse_ty, parse_ty_or_tm, resolve, Phrase};
pub use print::{print_file, print_judgment};
pub use scope::{check_ctx, check_tm, check_ty, infer_ctx_of_sub, sub_cod, well_scoped};
pub use sexp::{Pos, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ctx {
    Empty,
    Ext(Box<Ctx>, Box<Ty>),
    Ref(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ty {
    Pi(Box<Ty>, Box<Ty>),
    Sigma(Box<Ty>, Box<Ty>),
    Id(Box<Ty>, Box<Tm>, Box<Tm>),
    Nat,
    N0,
    Sum(Box<Ty>, Box<Ty>),
    U(u32),
    Br(Box<Ty>),
    Sub(Box<Ty>, Box<Sub>),
    Ref(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tm {
    Var,
    Lam(Box<Ty>, Box<Ty>, Box<Tm>),
    App(Box<Ty>, Box<Ty>, Box<Tm>, Box<Tm>),
    Pr(Box<Tm>, Box<Tm>),
    Pr1(Box<Tm>),
    Pr2(Box<Tm>),
    Rr(Box<Tm>),
    Zero,
    Succ(Box<Tm>),
    Rec(Box<Ty>, Box<Tm>, Box<Tm>, Box<Tm>),
    R0(Box<Ty>, Box<Tm>),
    Lf(Box<Ty>, Box<Ty>, Box<Tm>),
    Rg(Box<Ty>, Box<Ty>, Box<Tm>),
    SumRec(Box<Ty>, Box<Ty>, Box<Ty>, Box<Tm>, Box<Tm>, Box<Tm>),
    BrIn(Box<Tm>),
    Wh(Box<Ty>, Box<Ty>, Box<Tm>, Box<Tm>),
    Sub(Box<Tm>, Box<Sub>),
    /// A type used as an element of a universe.
    Ty(Box<Ty>),
    Ref(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sub {
    Id(Box<Ctx>),
    /// `f ⌢ g`: first `g`, then `f`.
    Comp(Box<Sub>, Box<Sub>),
    /// `↓A : Γ ▷ A → Γ`.
    Down(Box<Ty>),
    /// `⟨f, a⟩ : Δ → Γ ▷ A` for `f : Δ → Γ`.
    Pair(Box<Sub>, Box<Ty>, Box<Tm>),
    /// Transport `φ : Γ → Δ` along `Γ == Δ`.
    Phi(Box<Ctx>, Box<Ctx>),
    /// `els(a) : Γ → Γ ▷ A`.
    Els(Box<Ty>, Box<Tm>),
    /// `↑(A, h) : Δ ▷ A[h] → Γ ▷ A`.
    Lift(Box<Ty>, Box<Sub>),
    /// Successor on the last variable of `Γ ▷ Nat`.
    StepSub(Box<Ctx>),
    SumSubLf(Box<Ty>, Box<Ty>),
    SumSubRg(Box<Ty>, Box<Ty>),
    /// `Γ ▷ A ▷ A[↓A] → Γ ▷ A`, keeping the outer copy.
    PrX(Box<Ty>),
    /// `Γ ▷ A ▷ A[↓A] → Γ ▷ A`, keeping the inner copy.
    PrY(Box<Ty>),
    /// `Γ ▷ A → Γ ▷ Br(A)`.
    BrSb(Box<Ty>),
    Ref(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Judg {
    CtxValid(Ctx),
    CtxEq(Ctx, Ctx),
    IsTy(Ctx, Ty),
    TyEq(Ctx, Ty, Ty),
    Elt(Ctx, Tm, Ty),
    EltEq(Ctx, Tm, Tm, Ty),
    /// `f : Γ → Δ`.
    IsSub(Sub, Ctx, Ctx),
    SubEq(Sub, Sub, Ctx, Ctx),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Def {
    Ctx(Ctx),
    Ty(Ty),
    Tm(Tm),
    Sub(Sub),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Def { name: String, def: Def },
    Judg { judg: Judg, pos: Pos },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SourceFile {
    pub items: Vec<Item>,
}

fn b<T>(x: T) -> Box<T> {
    Box::new(x)
}

impl Ctx {
    pub fn ext(self, a: Ty) -> Ctx {
        Ctx::Ext(b(self), b(a))
    }

    /// `⟨⟩ ▷ A₁ ▷ ... ▷ Aₙ`.
    pub fn of(tys: impl IntoIterator<Item = Ty>) -> Ctx {
        tys.into_iter().fold(Ctx::Empty, Ctx::ext)
    }

    pub fn depth(&self) -> usize {
        match self {
            Ctx::Ext(g, _) => 1 + g.depth(),
            _ => 0,
        }
    }
}

impl Ty {
    pub fn pi(a: Ty, bt: Ty) -> Ty {
        Ty::Pi(b(a), b(bt))
    }
    pub fn sigma(a: Ty, bt: Ty) -> Ty {
        Ty::Sigma(b(a), b(bt))
    }
    pub fn id(a: Ty, x: Tm, y: Tm) -> Ty {
        Ty::Id(b(a), b(x), b(y))
    }
    pub fn sum(a: Ty, bt: Ty) -> Ty {
        Ty::Sum(b(a), b(bt))
    }
    pub fn br(a: Ty) -> Ty {
        Ty::Br(b(a))
    }
    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, f: Sub) -> Ty {
        Ty::Sub(b(self), b(f))
    }
}

impl Tm {
    pub fn lam(a: Ty, bt: Ty, body: Tm) -> Tm {
        Tm::Lam(b(a), b(bt), b(body))
    }
    pub fn app(a: Ty, bt: Ty, c: Tm, x: Tm) -> Tm {
        Tm::App(b(a), b(bt), b(c), b(x))
    }
    pub fn pr(x: Tm, y: Tm) -> Tm {
        Tm::Pr(b(x), b(y))
    }
    pub fn pr1(c: Tm) -> Tm {
        Tm::Pr1(b(c))
    }
    pub fn pr2(c: Tm) -> Tm {
        Tm::Pr2(b(c))
    }
    pub fn rr(x: Tm) -> Tm {
        Tm::Rr(b(x))
    }
    pub fn succ(x: Tm) -> Tm {
        Tm::Succ(b(x))
    }
    /// `s(s(...(0)))`.
    pub fn num(n: u64) -> Tm {
        (0..n).fold(Tm::Zero, |t, _| Tm::succ(t))
    }
    pub fn rec(c: Ty, d: Tm, e: Tm, n: Tm) -> Tm {
        Tm::Rec(b(c), b(d), b(e), b(n))
    }
    pub fn r0(c: Ty, x: Tm) -> Tm {
        Tm::R0(b(c), b(x))
    }
    pub fn lf(a: Ty, bt: Ty, x: Tm) -> Tm {
        Tm::Lf(b(a), b(bt), b(x))
    }
    pub fn rg(a: Ty, bt: Ty, y: Tm) -> Tm {
        Tm::Rg(b(a), b(bt), b(y))
    }
    pub fn sumrec(a: Ty, bt: Ty, c: Ty, d: Tm, e: Tm, x: Tm) -> Tm {
        Tm::SumRec(b(a), b(bt), b(c), b(d), b(e), b(x))
    }
    pub fn brin(x: Tm) -> Tm {
        Tm::BrIn(b(x))
    }
    pub fn wh(a: Ty, bt: Ty, k: Tm, body: Tm) -> Tm {
        Tm::Wh(b(a), b(bt), b(k), b(body))
    }
    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, f: Sub) -> Tm {
        Tm::Sub(b(self), b(f))
    }
    pub fn ty(a: Ty) -> Tm {
        Tm::Ty(b(a))
    }
}

impl Sub {
    pub fn id(g: Ctx) -> Sub {
        Sub::Id(b(g))
    }
    /// `f ⌢ g`.
    pub fn comp(f: Sub, g: Sub) -> Sub {
        Sub::Comp(b(f), b(g))
    }
    pub fn down(a: Ty) -> Sub {
        Sub::Down(b(a))
    }
    pub fn pair(f: Sub, a: Ty, x: Tm) -> Sub {
        Sub::Pair(b(f), b(a), b(x))
    }
    pub fn phi(g: Ctx, d: Ctx) -> Sub {
        Sub::Phi(b(g), b(d))
    }
    pub fn els(a: Ty, x: Tm) -> Sub {
        Sub::Els(b(a), b(x))
    }
    pub fn lift(a: Ty, h: Sub) -> Sub {
        Sub::Lift(b(a), b(h))
    }
    pub fn step_sub(g: Ctx) -> Sub {
        Sub::StepSub(b(g))
    }
    pub fn sum_sub_lf(a: Ty, bt: Ty) -> Sub {
        Sub::SumSubLf(b(a), b(bt))
    }
    pub fn sum_sub_rg(a: Ty, bt: Ty) -> Sub {
        Sub::SumSubRg(b(a), b(bt))
    }
    pub fn pr_x(a: Ty) -> Sub {
        Sub::PrX(b(a))
    }
    pub fn pr_y(a: Ty) -> Sub {
        Sub::PrY(b(a))
    }
    pub fn br_sb(a: Ty) -> Sub {
        Sub::BrSb(b(a))
    }

    /// The `⟨·,·⟩`/composition normal form of a derived substitution, as
    /// given by its expansion rule; `None` for primitive forms.
    ///
    /// `Els` needs its domain context to name `id_Γ`; see [`expand_in`].
    pub fn expand(&self) -> Option<Sub> {
        let a_down = |a: &Ty| a.clone().sub(Sub::down(a.clone()));
        Some(match self {
            // ↑(A,h) == ⟨h ⌢ ↓(A[h]), v_{A[h]}⟩
            Sub::Lift(a, h) => Sub::pair(
                Sub::comp((**h).clone(), Sub::down((**a).clone().sub((**h).clone()))),
                (**a).clone(),
                Tm::Var,
            ),
            Sub::StepSub(_) => Sub::pair(Sub::down(Ty::Nat), Ty::Nat, Tm::succ(Tm::Var)),
            Sub::SumSubLf(a, bt) => {
                let down = Sub::down((**a).clone());
                Sub::pair(
                    down.clone(),
                    Ty::sum((**a).clone(), (**bt).clone()),
                    Tm::lf((**a).clone().sub(down.clone()), (**bt).clone().sub(down), Tm::Var),
                )
            }
            Sub::SumSubRg(a, bt) => {
                let down = Sub::down((**bt).clone());
                Sub::pair(
                    down.clone(),
                    Ty::sum((**a).clone(), (**bt).clone()),
                    Tm::rg((**a).clone().sub(down.clone()), (**bt).clone().sub(down), Tm::Var),
                )
            }
            Sub::PrX(a) => Sub::down(a_down(a)),
            Sub::PrY(a) => Sub::pair(
                Sub::comp(Sub::down((**a).clone()), Sub::down(a_down(a))),
                (**a).clone(),
                Tm::Var,
            ),
            Sub::BrSb(a) => Sub::pair(Sub::down((**a).clone()), Ty::br((**a).clone()), Tm::brin(Tm::Var)),
            _ => return None,
        })
    }
}

/// Expansion of a derived substitution whose domain is `dom`.
pub fn expand_in(f: &Sub, dom: &Ctx) -> Option<Sub> {
    match f {
        // els(a) == ⟨id_Γ, a⟩
        Sub::Els(a, x) => Some(Sub::pair(Sub::id(dom.clone()), (**a).clone(), (**x).clone())),
        other => other.expand(),
    }
}

impl Judg {
    pub fn ctx(&self) -> &Ctx {
        match self {
            Judg::CtxValid(g)
            | Judg::CtxEq(g, _)
            | Judg::IsTy(g, _)
            | Judg::TyEq(g, _, _)
            | Judg::Elt(g, _, _)
            | Judg::EltEq(g, _, _, _)
            | Judg::IsSub(_, g, _)
            | Judg::SubEq(_, _, g, _) => g,
        }
    }

    /// The form keyword used in source files.
    pub fn form(&self) -> &'static str {
        match self {
            Judg::CtxValid(_) => "ctx",
            Judg::CtxEq(..) => "ctx-eq",
            Judg::IsTy(..) => "ty",
            Judg::TyEq(..) => "ty-eq",
            Judg::Elt(..) => "elt",
            Judg::EltEq(..) => "elt-eq",
            Judg::IsSub(..) => "sub",
            Judg::SubEq(..) => "sub-eq",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders() {
        assert_eq!(Tm::num(2), Tm::succ(Tm::succ(Tm::Zero)));
        assert_eq!(Ctx::of([Ty::Nat, Ty::N0]).depth(), 2);
        let e = expand_in(&Sub::els(Ty::Nat, Tm::Zero), &Ctx::Empty).unwrap();
        assert_eq!(e, Sub::pair(Sub::id(Ctx::Empty), Ty::Nat, Tm::Zero));
        let l = Sub::lift(Ty::Nat, Sub::id(Ctx::Empty)).expand().unwrap();
        assert!(matches!(l, Sub::Pair(..)));
        assert_eq!(Sub::down(Ty::Nat).expand(), None);
    }
}
