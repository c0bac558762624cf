//! Instance generators: small finite contexts, types with known elements,
//! equal-but-differently-presented pairs, and substitutions between them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::{Ctx, Sub, Tm, Ty};

pub fn unit() -> Ty {
    Ty::id(Ty::Nat, Tm::Zero, Tm::Zero)
}

pub fn bool_ty() -> Ty {
    Ty::sum(unit(), unit())
}

pub fn tt() -> Tm {
    Tm::lf(unit(), unit(), Tm::rr(Tm::Zero))
}

pub fn ff() -> Tm {
    Tm::rg(unit(), unit(), Tm::rr(Tm::Zero))
}

pub fn br_bool() -> Ty {
    Ty::br(bool_ty())
}

/// `Sum(unit, Bool)`.
pub fn three() -> Ty {
    Ty::sum(unit(), bool_ty())
}

/// `Σ(Bool, Id(Bool, v, tt))`, a genuinely dependent sum with one element.
pub fn sig_dep() -> Ty {
    Ty::sigma(bool_ty(), Ty::id(bool_ty(), Tm::Var, tt()))
}

pub fn pi_bool() -> Ty {
    Ty::pi(bool_ty(), bool_ty())
}

/// Negation on `Bool`, as a term in a context ending in `Bool`.
pub fn not_body() -> Tm {
    Tm::sumrec(unit(), unit(), bool_ty(), ff(), tt(), Tm::Var)
}

/// A type of the closed pool with its known elements.
pub fn closed_pool(nat: bool) -> Vec<(Ty, Vec<Tm>)> {
    let mut pool = vec![
        (unit(), vec![Tm::rr(Tm::Zero), Tm::Zero]),
        (bool_ty(), vec![tt(), ff()]),
        (br_bool(), vec![Tm::brin(tt()), Tm::brin(ff()), Tm::Zero]),
        (Ty::N0, vec![]),
        (Ty::sum(unit(), Ty::N0), vec![Tm::lf(unit(), Ty::N0, Tm::Zero)]),
        (
            three(),
            vec![
                Tm::lf(unit(), bool_ty(), Tm::Zero),
                Tm::rg(unit(), bool_ty(), tt()),
                Tm::rg(unit(), bool_ty(), ff()),
            ],
        ),
        (
            Ty::sigma(bool_ty(), unit()),
            vec![Tm::pr(tt(), Tm::rr(Tm::Zero)), Tm::pr(ff(), Tm::Zero)],
        ),
        (sig_dep(), vec![Tm::pr(tt(), Tm::rr(tt()))]),
        (
            pi_bool(),
            vec![
                Tm::lam(bool_ty(), bool_ty(), Tm::Var),
                Tm::lam(bool_ty(), bool_ty(), ff()),
                Tm::lam(bool_ty(), bool_ty(), not_body()),
            ],
        ),
        (
            Ty::pi(Ty::N0, bool_ty()),
            vec![Tm::lam(Ty::N0, bool_ty(), Tm::r0(bool_ty(), Tm::Var))],
        ),
    ];
    if nat {
        pool.push((
            Ty::Nat,
            vec![
                Tm::Zero,
                Tm::num(1),
                Tm::num(3),
                Tm::rec(Ty::Nat, Tm::num(1), Tm::succ(Tm::Var), Tm::num(2)),
            ],
        ));
    }
    pool
}

/// Closed types that are equal as sets but presented differently.
pub fn equal_type_pairs() -> Vec<(Ty, Ty)> {
    vec![
        (unit(), br_bool()),
        (unit(), Ty::pi(Ty::N0, bool_ty())),
        (bool_ty(), Ty::sum(unit(), br_bool())),
        (bool_ty(), Ty::sum(br_bool(), unit())),
        (br_bool(), Ty::br(three())),
        (Ty::N0, Ty::id(bool_ty(), tt(), ff())),
        (Ty::N0, Ty::sigma(Ty::N0, bool_ty())),
        (pi_bool(), Ty::pi(Ty::sum(unit(), br_bool()), bool_ty())),
        (Ty::sigma(bool_ty(), unit()), Ty::sigma(bool_ty(), br_bool())),
    ]
}

/// Closed terms that are equal, with a type they inhabit.
pub fn equal_term_pairs() -> Vec<(Ty, Tm, Tm)> {
    let id = Tm::lam(bool_ty(), bool_ty(), Tm::Var);
    let not = Tm::lam(bool_ty(), bool_ty(), not_body());
    vec![
        (unit(), Tm::rr(Tm::Zero), Tm::Zero),
        (bool_ty(), tt(), Tm::lf(unit(), unit(), Tm::Zero)),
        (br_bool(), Tm::brin(tt()), Tm::brin(ff())),
        (bool_ty(), tt(), Tm::app(bool_ty(), bool_ty(), id, tt())),
        (bool_ty(), ff(), Tm::app(bool_ty(), bool_ty(), not.clone(), tt())),
        (
            Ty::sigma(bool_ty(), unit()),
            Tm::pr(tt(), Tm::rr(Tm::Zero)),
            Tm::pr(tt(), Tm::Zero),
        ),
        (unit(), Tm::Zero, Tm::pr1(Tm::pr(Tm::Zero, tt()))),
        (
            pi_bool(),
            not,
            Tm::lam(
                bool_ty(),
                bool_ty(),
                Tm::sumrec(unit(), unit(), bool_ty(), ff(), tt(), Tm::Var),
            ),
        ),
    ]
}

/// A variable of a context: the term, its type in that context, and the
/// declared type when that is closed.
#[derive(Clone, Debug)]
pub struct VarInfo {
    pub tm: Tm,
    pub ty: Ty,
    pub base: Option<Ty>,
}

fn ctx_types(g: &Ctx) -> Vec<Ty> {
    let mut tys = Vec::new();
    let mut c = g;
    while let Ctx::Ext(h, a) = c {
        tys.push((**a).clone());
        c = h;
    }
    tys.reverse();
    tys
}

/// Every variable of `g`, innermost first.
pub fn vars(g: &Ctx, nat: bool) -> Vec<VarInfo> {
    let tys = ctx_types(g);
    let closed: Vec<Ty> = closed_pool(nat).into_iter().map(|(t, _)| t).chain([Ty::Nat]).collect();
    let mut out = Vec::new();
    for i in (0..tys.len()).rev() {
        let mut tm = Tm::Var;
        let mut ty = tys[i].clone().sub(Sub::down(tys[i].clone()));
        for later in &tys[i + 1..] {
            tm = tm.sub(Sub::down(later.clone()));
            ty = ty.sub(Sub::down(later.clone()));
        }
        let base = closed.contains(&tys[i]).then(|| tys[i].clone());
        out.push(VarInfo { tm, ty, base });
    }
    out
}

pub struct Gen {
    pub rng: ChaCha8Rng,
    /// Whether `Nat` may appear.
    pub nat: bool,
}

impl Gen {
    pub fn new(seed: u64, nat: bool) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            nat,
        }
    }

    pub fn pick<T: Clone>(&mut self, xs: &[T]) -> T {
        xs.choose(&mut self.rng).expect("non-empty choice").clone()
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..n)
    }

    /// A small finite context.
    pub fn ctx(&mut self) -> Ctx {
        let d = Ty::id(bool_ty(), Tm::Var, tt());
        let mut pool = vec![
            Ctx::Empty,
            Ctx::Empty,
            Ctx::of([bool_ty()]),
            Ctx::of([bool_ty(), d]),
            Ctx::of([br_bool()]),
            Ctx::of([Ty::N0]),
            Ctx::of([unit(), three()]),
        ];
        if self.nat {
            pool.push(Ctx::of([Ty::Nat]));
        }
        self.pick(&pool)
    }

    /// A context with at least one point.
    pub fn inhabited_ctx(&mut self) -> Ctx {
        loop {
            let g = self.ctx();
            if !ctx_types(&g).contains(&Ty::N0) {
                return g;
            }
        }
    }

    /// Typed terms available in `g`: closed elements and variables.
    pub fn terms(&self, g: &Ctx) -> Vec<(Ty, Tm)> {
        let mut out = Vec::new();
        for (t, es) in closed_pool(self.nat) {
            out.extend(es.into_iter().map(|e| (t.clone(), e)));
        }
        for v in vars(g, self.nat) {
            out.push((v.ty.clone(), v.tm.clone()));
            out.push((Ty::id(v.ty.clone(), v.tm.clone(), v.tm.clone()), Tm::rr(v.tm.clone())));
            if let Some(b) = &v.base {
                out.push((b.clone(), v.tm.clone()));
            }
        }
        out
    }

    /// A type valid in `g` together with an element, when one is known.
    pub fn typed_term(&mut self, g: &Ctx) -> (Ty, Tm) {
        let ts = self.terms(g);
        self.pick(&ts)
    }

    /// A type valid in `g`.
    pub fn ty(&mut self, g: &Ctx) -> Ty {
        if self.chance(0.15) {
            return Ty::N0;
        }
        self.typed_term(g).0
    }

    /// An element of `a` in `g`; an arbitrary term when none is known.
    pub fn elt(&mut self, g: &Ctx, a: &Ty) -> Tm {
        let cands: Vec<Tm> = self
            .terms(g)
            .into_iter()
            .filter(|(t, _)| t == a)
            .map(|(_, e)| e)
            .collect();
        if cands.is_empty() {
            self.pick(&[Tm::Zero, tt()])
        } else {
            self.pick(&cands)
        }
    }

    /// A type in `g ▷ a` with a known section.
    pub fn fam(&mut self, g: &Ctx, a: &Ty) -> (Ty, Tm) {
        let ga = g.clone().ext(a.clone());
        let a_down = a.clone().sub(Sub::down(a.clone()));
        match self.below(5) {
            0 => (Ty::id(a_down.clone(), Tm::Var, Tm::Var), Tm::rr(Tm::Var)),
            1 => (a_down, Tm::Var),
            2 => {
                let x = self.elt(g, a).sub(Sub::down(a.clone()));
                (Ty::id(a_down, Tm::Var, x), Tm::rr(Tm::Var))
            }
            _ => {
                let (t, e) = self.typed_term(&ga);
                (t, e)
            }
        }
    }

    /// An equal pair of types valid in `g`.
    pub fn eq_tys(&mut self, g: &Ctx) -> (Ty, Ty) {
        match self.below(4) {
            0 => {
                let a = self.ty(g);
                (a.clone(), a.sub(Sub::id(g.clone())))
            }
            1 => {
                let a = self.ty(g);
                (a.clone(), a)
            }
            _ => {
                let (a, b) = self.pick(&equal_type_pairs());
                if self.chance(0.5) {
                    (a, b)
                } else {
                    (b, a)
                }
            }
        }
    }

    /// Equal terms of a common type in `g`.
    pub fn eq_tms(&mut self, g: &Ctx) -> (Ty, Tm, Tm) {
        match self.below(4) {
            0 => {
                let (a, t) = self.typed_term(g);
                (a, t.clone(), t.sub(Sub::id(g.clone())))
            }
            1 => {
                let (a, t) = self.typed_term(g);
                (a, t.clone(), t)
            }
            _ => {
                let (a, s, t) = self.pick(&equal_term_pairs());
                if self.chance(0.5) {
                    (a, s, t)
                } else {
                    (a, t, s)
                }
            }
        }
    }

    /// Three equal terms.
    pub fn eq_tms3(&mut self, g: &Ctx) -> (Ty, Tm, Tm, Tm) {
        let (a, s, t) = self.eq_tms(g);
        let u = if self.chance(0.5) {
            s.clone().sub(Sub::id(g.clone()))
        } else {
            t.clone()
        };
        (a, s, t, u)
    }

    /// The same context with some types replaced by equal ones.
    pub fn ctx_variant(&mut self, g: &Ctx) -> Ctx {
        let pairs = equal_type_pairs();
        let tys = ctx_types(g)
            .into_iter()
            .map(|t| {
                let alts: Vec<Ty> = pairs
                    .iter()
                    .filter_map(|(a, b)| {
                        if *a == t {
                            Some(b.clone())
                        } else if *b == t {
                            Some(a.clone())
                        } else {
                            None
                        }
                    })
                    .collect();
                if !alts.is_empty() && self.chance(0.6) {
                    self.pick(&alts)
                } else {
                    t
                }
            })
            .collect::<Vec<_>>();
        Ctx::of(tys)
    }

    /// A substitution into `g`: returns its domain and the substitution.
    pub fn sub_to(&mut self, g: &Ctx) -> (Ctx, Sub) {
        self.sub_to_depth(g, 2)
    }

    fn sub_to_depth(&mut self, g: &Ctx, depth: u32) -> (Ctx, Sub) {
        let choice = if depth == 0 { self.below(2) } else { self.below(7) };
        match (choice, g) {
            (0, _) => (g.clone(), Sub::id(g.clone())),
            (1, _) => {
                let x = self.ty(g);
                (g.clone().ext(x.clone()), Sub::down(x))
            }
            (2, Ctx::Ext(h, x)) => {
                let a = self.elt(h, x);
                ((**h).clone(), Sub::els((**x).clone(), a))
            }
            (3, Ctx::Ext(h, x)) => {
                let (d, f) = self.sub_to_depth(h, depth - 1);
                let a = self.elt(&d, x);
                (d, Sub::pair(f, (**x).clone(), a))
            }
            (4, _) => {
                let (d1, g1) = self.sub_to_depth(g, depth - 1);
                let (d2, f1) = self.sub_to_depth(&d1, depth - 1);
                (d2, Sub::comp(g1, f1))
            }
            (5, _) => {
                let d = self.ctx_variant(g);
                (d.clone(), Sub::phi(d, g.clone()))
            }
            (6, Ctx::Ext(h, x)) => {
                let (d, f) = self.sub_to_depth(h, depth - 1);
                (d.ext((**x).clone().sub(f.clone())), Sub::lift((**x).clone(), f))
            }
            _ => (g.clone(), Sub::id(g.clone())),
        }
    }

    /// A substitution `f : Δ → g` and an equal one.
    pub fn eq_subs(&mut self, g: &Ctx) -> (Ctx, Sub, Sub) {
        let (d, f) = self.sub_to(g);
        let f2 = self.sub_variant(&d, g, &f);
        (d, f, f2)
    }

    pub fn sub_variant(&mut self, d: &Ctx, g: &Ctx, f: &Sub) -> Sub {
        match (self.below(5), f) {
            (0, _) => Sub::comp(f.clone(), Sub::id(d.clone())),
            (1, _) => Sub::comp(Sub::id(g.clone()), f.clone()),
            (2, Sub::Els(a, t)) => Sub::pair(Sub::id(d.clone()), (**a).clone(), (**t).clone()),
            (2, Sub::Id(_)) if matches!(g, Ctx::Ext(..)) => {
                let Ctx::Ext(_, x) = g else { unreachable!() };
                Sub::pair(Sub::down((**x).clone()), (**x).clone(), Tm::Var)
            }
            (3, _) => Sub::comp(Sub::phi(g.clone(), g.clone()), f.clone()),
            (4, Sub::Lift(..)) => f.expand().expect("lift expands"),
            _ => f.clone(),
        }
    }

    /// A numeral-valued term in `g` (a `Nat` context).
    pub fn nat_tm(&mut self, g: &Ctx) -> Tm {
        let mut cands = vec![Tm::Zero, Tm::num(1), Tm::num(2), Tm::num(3)];
        for v in vars(g, true) {
            if v.base == Some(Ty::Nat) {
                cands.push(v.tm.clone());
                cands.push(Tm::succ(v.tm));
            }
        }
        self.pick(&cands)
    }

    /// Contexts for `Nat` rules.
    pub fn nat_ctx(&mut self) -> Ctx {
        self.pick(&[Ctx::Empty, Ctx::Empty, Ctx::of([bool_ty()]), Ctx::of([Ty::Nat])])
    }

    /// A motive over `Γ ▷ Nat` with a base case and step.
    pub fn motive(&mut self, g: &Ctx) -> (Ty, Tm, Tm) {
        let c_nat = Ty::Nat;
        match self.below(4) {
            0 => (c_nat, Tm::Zero, Tm::succ(Tm::Var)),
            1 => {
                let d = self.nat_tm(g);
                (Ty::Nat, d, Tm::succ(Tm::succ(Tm::Var)))
            }
            2 => {
                // a parity bit
                let c = bool_ty();
                (c, tt(), Tm::sumrec(unit(), unit(), bool_ty(), ff(), tt(), Tm::Var))
            }
            _ => {
                // Id(Nat, n, n) with the proof recomputed at each step
                let c = Ty::id(Ty::Nat, Tm::Var, Tm::Var);
                let n_in_e = Tm::Var.sub(Sub::down(c.clone()));
                (c, Tm::rr(Tm::Zero), Tm::rr(Tm::succ(n_in_e)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_choices() {
        let mut a = Gen::new(7, false);
        let mut b = Gen::new(7, false);
        for _ in 0..20 {
            let g = a.ctx();
            assert_eq!(g, b.ctx());
            assert_eq!(a.sub_to(&g), b.sub_to(&g));
        }
    }

    #[test]
    fn variables_are_weakened() {
        let g = Ctx::of([bool_ty(), unit()]);
        let vs = vars(&g, false);
        assert_eq!(vs.len(), 2);
        assert_eq!(vs[1].tm, Tm::Var.sub(Sub::down(unit())));
        assert_eq!(vs[1].base, Some(bool_ty()));
    }
}
