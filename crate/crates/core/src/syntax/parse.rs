//! Sort-directed parsing of s-expressions into the AST, and resolution of
//! `def` names.

use std::collections::HashMap;

use super::sexp::{read_all, Pos, Sexp, SyntaxError};
use super::{Ctx, Def, Item, Judg, SourceFile, Sub, Tm, Ty};

type PResult<T> = Result<T, SyntaxError>;

const TY_HEADS: &[&str] = &["pi", "sigma", "id", "sum", "u", "br", "tysub"];
const TY_ATOMS: &[&str] = &["nat", "n0"];
const KEYWORDS: &[&str] = &[
    "pi", "sigma", "id", "nat", "n0", "sum", "u", "br", "tysub", "var", "zero", "succ", "lam", "app", "pr", "pr1",
    "pr2", "rr", "rec", "r0", "lf", "rg", "sumrec", "brin", "wh", "tmsub", "ctx", "ext", "idsub", "comp", "down",
    "spair", "phi", "els", "lift", "stepsub", "sumlf", "sumrg", "prx", "pry", "brsb", "def", "judg",
];

fn err<T>(pos: Pos, msg: impl Into<String>) -> PResult<T> {
    Err(SyntaxError::new(pos, msg))
}

fn name_of(s: &Sexp) -> Option<&str> {
    match s {
        Sexp::Atom(a, _) if !KEYWORDS.contains(&a.as_str()) && a.parse::<u64>().is_err() => Some(a),
        _ => None,
    }
}

/// Splits `(head args...)`, checking the argument count.
fn form<'a>(s: &'a Sexp, what: &str) -> PResult<(&'a str, &'a [Sexp], Pos)> {
    match s {
        Sexp::List(items, pos) => match items.first() {
            Some(Sexp::Atom(h, _)) => Ok((h.as_str(), &items[1..], *pos)),
            _ => err(*pos, format!("expected a {what} form")),
        },
        Sexp::Atom(a, pos) => err(*pos, format!("expected a {what}, found `{a}`")),
    }
}

fn arity(head: &str, args: &[Sexp], n: usize, pos: Pos) -> PResult<()> {
    if args.len() == n {
        Ok(())
    } else {
        err(pos, format!("`{head}` takes {n} arguments, found {}", args.len()))
    }
}

pub fn ctx(s: &Sexp) -> PResult<Ctx> {
    if let Some(n) = name_of(s) {
        return Ok(Ctx::Ref(n.to_string()));
    }
    let (head, args, pos) = form(s, "context")?;
    match head {
        "ctx" => Ok(Ctx::of(args.iter().map(ty).collect::<PResult<Vec<_>>>()?)),
        "ext" => {
            arity(head, args, 2, pos)?;
            Ok(ctx(&args[0])?.ext(ty(&args[1])?))
        }
        _ => err(pos, format!("unknown context form `{head}`")),
    }
}

pub fn ty(s: &Sexp) -> PResult<Ty> {
    if let Sexp::Atom(a, pos) = s {
        return match a.as_str() {
            "nat" => Ok(Ty::Nat),
            "n0" => Ok(Ty::N0),
            _ => match name_of(s) {
                Some(n) => Ok(Ty::Ref(n.to_string())),
                None => err(*pos, format!("expected a type, found `{a}`")),
            },
        };
    }
    let (head, args, pos) = form(s, "type")?;
    let n = |k| arity(head, args, k, pos);
    Ok(match head {
        "pi" => {
            n(2)?;
            Ty::pi(ty(&args[0])?, ty(&args[1])?)
        }
        "sigma" => {
            n(2)?;
            Ty::sigma(ty(&args[0])?, ty(&args[1])?)
        }
        "id" => {
            n(3)?;
            Ty::id(ty(&args[0])?, tm(&args[1])?, tm(&args[2])?)
        }
        "sum" => {
            n(2)?;
            Ty::sum(ty(&args[0])?, ty(&args[1])?)
        }
        "u" => {
            n(1)?;
            match &args[0] {
                Sexp::Atom(k, p) => Ty::U(
                    k.parse()
                        .or_else(|_| err(*p, "universe level must be a natural number"))?,
                ),
                other => return err(other.pos(), "universe level must be a natural number"),
            }
        }
        "br" => {
            n(1)?;
            Ty::br(ty(&args[0])?)
        }
        "tysub" => {
            n(2)?;
            ty(&args[0])?.sub(sub(&args[1])?)
        }
        _ => return err(pos, format!("unknown type form `{head}`")),
    })
}

pub fn tm(s: &Sexp) -> PResult<Tm> {
    if let Sexp::Atom(a, pos) = s {
        return match a.as_str() {
            "var" => Ok(Tm::Var),
            "zero" => Ok(Tm::Zero),
            _ if TY_ATOMS.contains(&a.as_str()) => Ok(Tm::ty(ty(s)?)),
            _ => match name_of(s) {
                Some(n) => Ok(Tm::Ref(n.to_string())),
                None => err(*pos, format!("expected a term, found `{a}`")),
            },
        };
    }
    let (head, args, pos) = form(s, "term")?;
    if TY_HEADS.contains(&head) {
        return Ok(Tm::ty(ty(s)?));
    }
    let n = |k| arity(head, args, k, pos);
    Ok(match head {
        "succ" => {
            n(1)?;
            Tm::succ(tm(&args[0])?)
        }
        "lam" => {
            n(3)?;
            Tm::lam(ty(&args[0])?, ty(&args[1])?, tm(&args[2])?)
        }
        "app" => {
            n(4)?;
            Tm::app(ty(&args[0])?, ty(&args[1])?, tm(&args[2])?, tm(&args[3])?)
        }
        "pr" => {
            n(2)?;
            Tm::pr(tm(&args[0])?, tm(&args[1])?)
        }
        "pr1" => {
            n(1)?;
            Tm::pr1(tm(&args[0])?)
        }
        "pr2" => {
            n(1)?;
            Tm::pr2(tm(&args[0])?)
        }
        "rr" => {
            n(1)?;
            Tm::rr(tm(&args[0])?)
        }
        "rec" => {
            n(4)?;
            Tm::rec(ty(&args[0])?, tm(&args[1])?, tm(&args[2])?, tm(&args[3])?)
        }
        "r0" => {
            n(2)?;
            Tm::r0(ty(&args[0])?, tm(&args[1])?)
        }
        "lf" => {
            n(3)?;
            Tm::lf(ty(&args[0])?, ty(&args[1])?, tm(&args[2])?)
        }
        "rg" => {
            n(3)?;
            Tm::rg(ty(&args[0])?, ty(&args[1])?, tm(&args[2])?)
        }
        "sumrec" => {
            n(6)?;
            Tm::sumrec(
                ty(&args[0])?,
                ty(&args[1])?,
                ty(&args[2])?,
                tm(&args[3])?,
                tm(&args[4])?,
                tm(&args[5])?,
            )
        }
        "brin" => {
            n(1)?;
            Tm::brin(tm(&args[0])?)
        }
        "wh" => {
            n(4)?;
            Tm::wh(ty(&args[0])?, ty(&args[1])?, tm(&args[2])?, tm(&args[3])?)
        }
        "tmsub" => {
            n(2)?;
            tm(&args[0])?.sub(sub(&args[1])?)
        }
        _ => return err(pos, format!("unknown term form `{head}`")),
    })
}

pub fn sub(s: &Sexp) -> PResult<Sub> {
    if let Some(n) = name_of(s) {
        return Ok(Sub::Ref(n.to_string()));
    }
    let (head, args, pos) = form(s, "substitution")?;
    let n = |k| arity(head, args, k, pos);
    Ok(match head {
        "idsub" => {
            n(1)?;
            Sub::id(ctx(&args[0])?)
        }
        "comp" => {
            n(2)?;
            Sub::comp(sub(&args[0])?, sub(&args[1])?)
        }
        "down" => {
            n(1)?;
            Sub::down(ty(&args[0])?)
        }
        "spair" => {
            n(3)?;
            Sub::pair(sub(&args[0])?, ty(&args[1])?, tm(&args[2])?)
        }
        "phi" => {
            n(2)?;
            Sub::phi(ctx(&args[0])?, ctx(&args[1])?)
        }
        "els" => {
            n(2)?;
            Sub::els(ty(&args[0])?, tm(&args[1])?)
        }
        "lift" => {
            n(2)?;
            Sub::lift(ty(&args[0])?, sub(&args[1])?)
        }
        "stepsub" => {
            n(1)?;
            Sub::step_sub(ctx(&args[0])?)
        }
        "sumlf" => {
            n(2)?;
            Sub::sum_sub_lf(ty(&args[0])?, ty(&args[1])?)
        }
        "sumrg" => {
            n(2)?;
            Sub::sum_sub_rg(ty(&args[0])?, ty(&args[1])?)
        }
        "prx" => {
            n(1)?;
            Sub::pr_x(ty(&args[0])?)
        }
        "pry" => {
            n(1)?;
            Sub::pr_y(ty(&args[0])?)
        }
        "brsb" => {
            n(1)?;
            Sub::br_sb(ty(&args[0])?)
        }
        _ => return err(pos, format!("unknown substitution form `{head}`")),
    })
}

fn judg(args: &[Sexp], pos: Pos) -> PResult<Judg> {
    let Some(Sexp::Atom(f, _)) = args.first() else {
        return err(pos, "expected a judgment form after `judg`");
    };
    let a = &args[1..];
    let n = |k: usize| {
        if a.len() == k {
            Ok(())
        } else {
            err(pos, format!("judgment `{f}` takes {k} arguments, found {}", a.len()))
        }
    };
    Ok(match f.as_str() {
        "ctx" => {
            n(1)?;
            Judg::CtxValid(ctx(&a[0])?)
        }
        "ctx-eq" => {
            n(2)?;
            Judg::CtxEq(ctx(&a[0])?, ctx(&a[1])?)
        }
        "ty" => {
            n(2)?;
            Judg::IsTy(ctx(&a[0])?, ty(&a[1])?)
        }
        "ty-eq" => {
            n(3)?;
            Judg::TyEq(ctx(&a[0])?, ty(&a[1])?, ty(&a[2])?)
        }
        "elt" => {
            n(3)?;
            Judg::Elt(ctx(&a[0])?, tm(&a[1])?, ty(&a[2])?)
        }
        "elt-eq" => {
            n(4)?;
            Judg::EltEq(ctx(&a[0])?, tm(&a[1])?, tm(&a[2])?, ty(&a[3])?)
        }
        "sub" => {
            n(3)?;
            Judg::IsSub(sub(&a[0])?, ctx(&a[1])?, ctx(&a[2])?)
        }
        "sub-eq" => {
            n(4)?;
            Judg::SubEq(sub(&a[0])?, sub(&a[1])?, ctx(&a[2])?, ctx(&a[3])?)
        }
        other => return err(pos, format!("unknown judgment form `{other}`")),
    })
}

fn item(s: &Sexp) -> PResult<Item> {
    let (head, args, pos) = form(s, "top-level")?;
    match head {
        "judg" => Ok(Item::Judg {
            judg: judg(args, pos)?,
            pos,
        }),
        "def" => {
            arity(head, args, 3, pos)?;
            let Some(name) = name_of(&args[0]) else {
                return err(args[0].pos(), "definition name must be a non-keyword symbol");
            };
            let def = match &args[1] {
                Sexp::Atom(k, _) if k == "ctx" => Def::Ctx(ctx(&args[2])?),
                Sexp::Atom(k, _) if k == "ty" => Def::Ty(ty(&args[2])?),
                Sexp::Atom(k, _) if k == "tm" => Def::Tm(tm(&args[2])?),
                Sexp::Atom(k, _) if k == "sub" => Def::Sub(sub(&args[2])?),
                other => return err(other.pos(), "definition sort must be ctx, ty, tm or sub"),
            };
            Ok(Item::Def {
                name: name.to_string(),
                def,
            })
        }
        _ => err(pos, format!("expected `judg` or `def`, found `{head}`")),
    }
}

pub fn parse_file(src: &str) -> PResult<SourceFile> {
    let items = read_all(src)?.iter().map(item).collect::<PResult<Vec<_>>>()?;
    Ok(SourceFile { items })
}

fn single(src: &str) -> PResult<Sexp> {
    let mut xs = read_all(src)?;
    match xs.len() {
        1 => Ok(xs.remove(0)),
        0 => err(Pos { line: 1, col: 1 }, "empty input"),
        _ => err(xs[1].pos(), "trailing input"),
    }
}

pub fn parse_judgment(src: &str) -> PResult<Judg> {
    let s = single(src)?;
    match item(&s)? {
        Item::Judg { judg, .. } => Ok(judg),
        Item::Def { .. } => err(s.pos(), "expected a judgment"),
    }
}

pub fn parse_ty(src: &str) -> PResult<Ty> {
    ty(&single(src)?)
}

pub fn parse_tm(src: &str) -> PResult<Tm> {
    tm(&single(src)?)
}

/// A closed expression given to the evaluator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Phrase {
    Ty(Ty),
    Tm(Tm),
}

/// Types are read as types; everything else as a term.
pub fn parse_ty_or_tm(src: &str) -> PResult<Phrase> {
    let s = single(src)?;
    let is_ty = match &s {
        Sexp::Atom(a, _) => TY_ATOMS.contains(&a.as_str()),
        Sexp::List(items, _) => matches!(items.first(), Some(Sexp::Atom(h, _)) if TY_HEADS.contains(&h.as_str())),
    };
    if is_ty {
        Ok(Phrase::Ty(ty(&s)?))
    } else {
        Ok(Phrase::Tm(tm(&s)?))
    }
}

#[derive(Default)]
struct Defs {
    ctx: HashMap<String, Ctx>,
    ty: HashMap<String, Ty>,
    tm: HashMap<String, Tm>,
    sub: HashMap<String, Sub>,
}

/// Unknown name, reported with the judgment it occurs in.
type RResult<T> = Result<T, String>;

impl Defs {
    fn ctx(&self, g: &Ctx) -> RResult<Ctx> {
        Ok(match g {
            Ctx::Empty => Ctx::Empty,
            Ctx::Ext(g, a) => self.ctx(g)?.ext(self.ty(a)?),
            Ctx::Ref(n) => self
                .ctx
                .get(n)
                .cloned()
                .ok_or_else(|| format!("unknown context `{n}`"))?,
        })
    }

    fn ty(&self, a: &Ty) -> RResult<Ty> {
        Ok(match a {
            Ty::Pi(x, y) => Ty::pi(self.ty(x)?, self.ty(y)?),
            Ty::Sigma(x, y) => Ty::sigma(self.ty(x)?, self.ty(y)?),
            Ty::Id(x, s, t) => Ty::id(self.ty(x)?, self.tm(s)?, self.tm(t)?),
            Ty::Nat => Ty::Nat,
            Ty::N0 => Ty::N0,
            Ty::Sum(x, y) => Ty::sum(self.ty(x)?, self.ty(y)?),
            Ty::U(k) => Ty::U(*k),
            Ty::Br(x) => Ty::br(self.ty(x)?),
            Ty::Sub(x, f) => self.ty(x)?.sub(self.sub(f)?),
            Ty::Ref(n) => self.ty.get(n).cloned().ok_or_else(|| format!("unknown type `{n}`"))?,
        })
    }

    fn tm(&self, a: &Tm) -> RResult<Tm> {
        Ok(match a {
            Tm::Var => Tm::Var,
            Tm::Zero => Tm::Zero,
            Tm::Lam(x, y, t) => Tm::lam(self.ty(x)?, self.ty(y)?, self.tm(t)?),
            Tm::App(x, y, c, t) => Tm::app(self.ty(x)?, self.ty(y)?, self.tm(c)?, self.tm(t)?),
            Tm::Pr(s, t) => Tm::pr(self.tm(s)?, self.tm(t)?),
            Tm::Pr1(c) => Tm::pr1(self.tm(c)?),
            Tm::Pr2(c) => Tm::pr2(self.tm(c)?),
            Tm::Rr(t) => Tm::rr(self.tm(t)?),
            Tm::Succ(t) => Tm::succ(self.tm(t)?),
            Tm::Rec(c, d, e, t) => Tm::rec(self.ty(c)?, self.tm(d)?, self.tm(e)?, self.tm(t)?),
            Tm::R0(c, t) => Tm::r0(self.ty(c)?, self.tm(t)?),
            Tm::Lf(x, y, t) => Tm::lf(self.ty(x)?, self.ty(y)?, self.tm(t)?),
            Tm::Rg(x, y, t) => Tm::rg(self.ty(x)?, self.ty(y)?, self.tm(t)?),
            Tm::SumRec(x, y, c, d, e, t) => Tm::sumrec(
                self.ty(x)?,
                self.ty(y)?,
                self.ty(c)?,
                self.tm(d)?,
                self.tm(e)?,
                self.tm(t)?,
            ),
            Tm::BrIn(t) => Tm::brin(self.tm(t)?),
            Tm::Wh(x, y, k, t) => Tm::wh(self.ty(x)?, self.ty(y)?, self.tm(k)?, self.tm(t)?),
            Tm::Sub(t, f) => self.tm(t)?.sub(self.sub(f)?),
            Tm::Ty(x) => Tm::ty(self.ty(x)?),
            Tm::Ref(n) => match (self.tm.get(n), self.ty.get(n)) {
                (Some(t), _) => t.clone(),
                (None, Some(x)) => Tm::ty(x.clone()),
                _ => return Err(format!("unknown term `{n}`")),
            },
        })
    }

    fn sub(&self, f: &Sub) -> RResult<Sub> {
        Ok(match f {
            Sub::Id(g) => Sub::id(self.ctx(g)?),
            Sub::Comp(f, g) => Sub::comp(self.sub(f)?, self.sub(g)?),
            Sub::Down(a) => Sub::down(self.ty(a)?),
            Sub::Pair(f, a, t) => Sub::pair(self.sub(f)?, self.ty(a)?, self.tm(t)?),
            Sub::Phi(g, d) => Sub::phi(self.ctx(g)?, self.ctx(d)?),
            Sub::Els(a, t) => Sub::els(self.ty(a)?, self.tm(t)?),
            Sub::Lift(a, h) => Sub::lift(self.ty(a)?, self.sub(h)?),
            Sub::StepSub(g) => Sub::step_sub(self.ctx(g)?),
            Sub::SumSubLf(a, c) => Sub::sum_sub_lf(self.ty(a)?, self.ty(c)?),
            Sub::SumSubRg(a, c) => Sub::sum_sub_rg(self.ty(a)?, self.ty(c)?),
            Sub::PrX(a) => Sub::pr_x(self.ty(a)?),
            Sub::PrY(a) => Sub::pr_y(self.ty(a)?),
            Sub::BrSb(a) => Sub::br_sb(self.ty(a)?),
            Sub::Ref(n) => self
                .sub
                .get(n)
                .cloned()
                .ok_or_else(|| format!("unknown substitution `{n}`"))?,
        })
    }

    fn judg(&self, j: &Judg) -> RResult<Judg> {
        Ok(match j {
            Judg::CtxValid(g) => Judg::CtxValid(self.ctx(g)?),
            Judg::CtxEq(g, d) => Judg::CtxEq(self.ctx(g)?, self.ctx(d)?),
            Judg::IsTy(g, a) => Judg::IsTy(self.ctx(g)?, self.ty(a)?),
            Judg::TyEq(g, a, c) => Judg::TyEq(self.ctx(g)?, self.ty(a)?, self.ty(c)?),
            Judg::Elt(g, t, a) => Judg::Elt(self.ctx(g)?, self.tm(t)?, self.ty(a)?),
            Judg::EltEq(g, s, t, a) => Judg::EltEq(self.ctx(g)?, self.tm(s)?, self.tm(t)?, self.ty(a)?),
            Judg::IsSub(f, g, d) => Judg::IsSub(self.sub(f)?, self.ctx(g)?, self.ctx(d)?),
            Judg::SubEq(f, h, g, d) => Judg::SubEq(self.sub(f)?, self.sub(h)?, self.ctx(g)?, self.ctx(d)?),
        })
    }
}

/// Expands every `def` name; definitions may use earlier definitions.
pub fn resolve(file: &SourceFile) -> Result<Vec<(Judg, Pos)>, SyntaxError> {
    let mut defs = Defs::default();
    let mut out = Vec::new();
    for it in &file.items {
        match it {
            Item::Def { name, def } => {
                let r = match def {
                    Def::Ctx(g) => defs.ctx(g).map(|g| {
                        defs.ctx.insert(name.clone(), g);
                    }),
                    Def::Ty(a) => defs.ty(a).map(|a| {
                        defs.ty.insert(name.clone(), a);
                    }),
                    Def::Tm(t) => defs.tm(t).map(|t| {
                        defs.tm.insert(name.clone(), t);
                    }),
                    Def::Sub(f) => defs.sub(f).map(|f| {
                        defs.sub.insert(name.clone(), f);
                    }),
                };
                r.map_err(|m| SyntaxError::new(Pos::default(), format!("in definition of `{name}`: {m}")))?;
            }
            Item::Judg { judg, pos } => {
                let j = defs.judg(judg).map_err(|m| SyntaxError::new(*pos, m))?;
                out.push((j, *pos));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_example() {
        let j = parse_judgment("(judg elt (ctx) zero nat)").unwrap();
        assert_eq!(j, Judg::Elt(Ctx::Empty, Tm::Zero, Ty::Nat));
    }

    #[test]
    fn types_in_term_position() {
        let j = parse_judgment("(judg elt (ctx) (pi n0 n0) (u 0))").unwrap();
        assert_eq!(j, Judg::Elt(Ctx::Empty, Tm::ty(Ty::pi(Ty::N0, Ty::N0)), Ty::U(0)));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_file("(judg elt").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (1, 10));
        let e = parse_file("(judg elt (ctx)\n  (bogus) nat)").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (2, 3));
        assert!(parse_file("(judg ty (ctx) (u x))").is_err());
        assert!(parse_file("(judg ty (ctx) (pi nat))").is_err());
    }

    #[test]
    fn definitions_resolve() {
        let f = parse_file(
            "(def unit ty (id nat zero zero))\n(def bool ty (sum unit unit))\n(def g ctx (ctx bool))\n(judg ty g bool)",
        )
        .unwrap();
        let js = resolve(&f).unwrap();
        let unit = Ty::id(Ty::Nat, Tm::Zero, Tm::Zero);
        let bool_ty = Ty::sum(unit.clone(), unit);
        assert_eq!(js[0].0, Judg::IsTy(Ctx::of([bool_ty.clone()]), bool_ty));
        let bad = parse_file("(judg ty (ctx) missing)").unwrap();
        assert!(resolve(&bad).is_err());
    }
}
