//! Printing back to the concrete syntax. `parse ∘ print` is the identity on
//! resolved ASTs.

use std::fmt;

use super::{Ctx, Def, Item, Judg, SourceFile, Sub, Tm, Ty};

/// Writes `(head a b ...)`.
fn list(f: &mut fmt::Formatter<'_>, head: &str, args: &[&dyn fmt::Display]) -> fmt::Result {
    write!(f, "({head}")?;
    for a in args {
        write!(f, " {a}")?;
    }
    write!(f, ")")
}

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Chains ending in the empty context print flat.
        let mut tys = Vec::new();
        let mut g = self;
        while let Ctx::Ext(h, a) = g {
            tys.push(&**a);
            g = h;
        }
        match g {
            Ctx::Empty => {
                write!(f, "(ctx")?;
                for a in tys.iter().rev() {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Ctx::Ref(n) => {
                let mut s = n.clone();
                for a in tys.iter().rev() {
                    s = format!("(ext {s} {a})");
                }
                write!(f, "{s}")
            }
            Ctx::Ext(..) => unreachable!(),
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Pi(a, b) => list(f, "pi", &[a, b]),
            Ty::Sigma(a, b) => list(f, "sigma", &[a, b]),
            Ty::Id(a, x, y) => list(f, "id", &[a, x, y]),
            Ty::Nat => write!(f, "nat"),
            Ty::N0 => write!(f, "n0"),
            Ty::Sum(a, b) => list(f, "sum", &[a, b]),
            Ty::U(k) => list(f, "u", &[k]),
            Ty::Br(a) => list(f, "br", &[a]),
            Ty::Sub(a, s) => list(f, "tysub", &[a, s]),
            Ty::Ref(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for Tm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tm::Var => write!(f, "var"),
            Tm::Zero => write!(f, "zero"),
            Tm::Lam(a, b, t) => list(f, "lam", &[a, b, t]),
            Tm::App(a, b, c, t) => list(f, "app", &[a, b, c, t]),
            Tm::Pr(x, y) => list(f, "pr", &[x, y]),
            Tm::Pr1(c) => list(f, "pr1", &[c]),
            Tm::Pr2(c) => list(f, "pr2", &[c]),
            Tm::Rr(x) => list(f, "rr", &[x]),
            Tm::Succ(x) => list(f, "succ", &[x]),
            Tm::Rec(c, d, e, n) => list(f, "rec", &[c, d, e, n]),
            Tm::R0(c, x) => list(f, "r0", &[c, x]),
            Tm::Lf(a, b, x) => list(f, "lf", &[a, b, x]),
            Tm::Rg(a, b, y) => list(f, "rg", &[a, b, y]),
            Tm::SumRec(a, b, c, d, e, x) => list(f, "sumrec", &[a, b, c, d, e, x]),
            Tm::BrIn(x) => list(f, "brin", &[x]),
            Tm::Wh(a, b, k, t) => list(f, "wh", &[a, b, k, t]),
            Tm::Sub(t, s) => list(f, "tmsub", &[t, s]),
            Tm::Ty(a) => write!(f, "{a}"),
            Tm::Ref(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for Sub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sub::Id(g) => list(f, "idsub", &[g]),
            Sub::Comp(a, b) => list(f, "comp", &[a, b]),
            Sub::Down(a) => list(f, "down", &[a]),
            Sub::Pair(s, a, x) => list(f, "spair", &[s, a, x]),
            Sub::Phi(g, d) => list(f, "phi", &[g, d]),
            Sub::Els(a, x) => list(f, "els", &[a, x]),
            Sub::Lift(a, h) => list(f, "lift", &[a, h]),
            Sub::StepSub(g) => list(f, "stepsub", &[g]),
            Sub::SumSubLf(a, b) => list(f, "sumlf", &[a, b]),
            Sub::SumSubRg(a, b) => list(f, "sumrg", &[a, b]),
            Sub::PrX(a) => list(f, "prx", &[a]),
            Sub::PrY(a) => list(f, "pry", &[a]),
            Sub::BrSb(a) => list(f, "brsb", &[a]),
            Sub::Ref(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for Judg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(judg {}", self.form())?;
        match self {
            Judg::CtxValid(g) => write!(f, " {g}")?,
            Judg::CtxEq(g, d) => write!(f, " {g} {d}")?,
            Judg::IsTy(g, a) => write!(f, " {g} {a}")?,
            Judg::TyEq(g, a, b) => write!(f, " {g} {a} {b}")?,
            Judg::Elt(g, x, a) => write!(f, " {g} {x} {a}")?,
            Judg::EltEq(g, x, y, a) => write!(f, " {g} {x} {y} {a}")?,
            Judg::IsSub(s, g, d) => write!(f, " {s} {g} {d}")?,
            Judg::SubEq(s, t, g, d) => write!(f, " {s} {t} {g} {d}")?,
        }
        write!(f, ")")
    }
}

pub fn print_judgment(j: &Judg) -> String {
    j.to_string()
}

pub fn print_file(file: &SourceFile) -> String {
    let mut out = String::new();
    for it in &file.items {
        match it {
            Item::Def { name, def } => {
                let (sort, body) = match def {
                    Def::Ctx(g) => ("ctx", g.to_string()),
                    Def::Ty(a) => ("ty", a.to_string()),
                    Def::Tm(t) => ("tm", t.to_string()),
                    Def::Sub(s) => ("sub", s.to_string()),
                };
                out.push_str(&format!("(def {name} {sort} {body})\n"));
            }
            Item::Judg { judg, .. } => {
                out.push_str(&judg.to_string());
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse_judgment;
    use super::*;

    #[test]
    fn contexts_print_flat() {
        let g = Ctx::of([Ty::Nat, Ty::br(Ty::N0)]);
        assert_eq!(g.to_string(), "(ctx nat (br n0))");
        assert_eq!(Ctx::Ref("g".into()).ext(Ty::Nat).to_string(), "(ext g nat)");
    }

    #[test]
    fn round_trip() {
        for src in [
            "(judg elt (ctx) zero nat)",
            "(judg elt (ctx nat) (tmsub var (spair (down nat) nat (succ var))) nat)",
            "(judg ty-eq (ctx) (pi nat (id nat var var)) (sigma n0 (u 2)))",
            "(judg sub-eq (lift nat (idsub (ctx))) (pry n0) (ctx nat) (ctx nat))",
            "(judg elt (ctx) (pi n0 n0) (u 0))",
        ] {
            let j = parse_judgment(src).unwrap();
            assert_eq!(print_judgment(&j), src);
        }
    }
}
