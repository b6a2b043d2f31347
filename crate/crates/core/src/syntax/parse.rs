//! Scope-checked parsing of the concrete syntax.
//!
//! Every name must be bound: term variables by the context or an enclosing
//! binder, interval variables likewise. Split payloads are read in the scope
//! contracted along their clause, so a payload may only mention
//! representative interval variables. The `*_open` entry points accept any
//! identifier as a free variable, for standalone snippets.

use thiserror::Error;

use crate::cof::{forall_elim, Branch, Cof, IExpr};
use crate::name::Name;
use crate::nf::{HitKind, Ne, NeTp, Nf, NfTp, Split, UpTag};
use crate::syntax::ast::{Tm, Tp};
use crate::syntax::ctx::{Ctx, CtxEntry};
use crate::syntax::decl::{Decl, Item, NfBody};
use crate::syntax::sexp::{read_all, Pos, Sexp};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("`{0}` is not an interval expression")]
    NotInterval(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

type Result<T> = std::result::Result<T, ParseError>;

fn syntax<T>(pos: Pos, msg: impl Into<String>) -> Result<T> {
    Err(ParseError { pos, kind: ParseErrorKind::Syntax(msg.into()) })
}

const RESERVED: &[&str] = &[
    "0", "1", "true", "false", "base", "bool", "wbool", "s1", "S1", "U", "top", "bot",
];

/// Names in scope while parsing.
#[derive(Clone, Debug, Default)]
struct Scope {
    tms: Vec<Name>,
    dims: Vec<Name>,
    open: bool,
}

impl Scope {
    fn open() -> Self {
        Scope { open: true, ..Scope::default() }
    }

    fn of_ctx(ctx: &Ctx) -> Self {
        let mut s = Scope::default();
        for e in ctx.entries() {
            match e {
                CtxEntry::TmBind(x, _) => s.tms.push(x.clone()),
                CtxEntry::IBind(i) => s.dims.push(i.clone()),
                CtxEntry::CofAssume(_) => {}
            }
        }
        s
    }

    fn with_tm(&self, x: &Name) -> Scope {
        let mut s = self.clone();
        s.tms.push(x.clone());
        s
    }

    fn with_dim(&self, i: &Name) -> Scope {
        let mut s = self.clone();
        s.dims.retain(|d| d != i);
        s.dims.push(i.clone());
        s
    }

    /// The scope a split payload on `branch` is read in.
    fn contract(&self, branch: &Branch) -> Scope {
        let (_, kept) = branch.contraction(&self.dims);
        Scope { tms: self.tms.clone(), dims: kept, open: self.open }
    }
}

fn atom(s: &Sexp) -> Option<&str> {
    s.atom()
}

fn form<'a>(s: &'a Sexp, what: &str) -> Result<(&'a str, &'a [Sexp])> {
    match s {
        Sexp::List(xs, _) => match xs.first().and_then(Sexp::atom) {
            Some(h) => Ok((h, &xs[1..])),
            None => syntax(s.pos(), format!("expected {what}")),
        },
        Sexp::Atom(a, p) => syntax(*p, format!("expected {what}, found `{a}`")),
    }
}

fn arity(s: &Sexp, args: &[Sexp], n: usize, shape: &str) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        syntax(s.pos(), format!("expected `{shape}`"))
    }
}

fn binder(s: &Sexp) -> Result<Name> {
    match s {
        Sexp::Atom(a, p) => {
            if RESERVED.contains(&a.as_str()) || a.parse::<i64>().is_ok() {
                syntax(*p, format!("`{a}` cannot be bound"))
            } else {
                Ok(Name::new(a))
            }
        }
        Sexp::List(_, p) => syntax(*p, "expected a name"),
    }
}

fn iexpr(sc: &Scope, s: &Sexp) -> Result<IExpr> {
    match s {
        Sexp::Atom(a, p) => match a.as_str() {
            "0" => Ok(IExpr::Zero),
            "1" => Ok(IExpr::One),
            _ if a.parse::<i64>().is_ok() || RESERVED.contains(&a.as_str()) => {
                Err(ParseError { pos: *p, kind: ParseErrorKind::NotInterval(a.clone()) })
            }
            _ => {
                let n = Name::new(a);
                if sc.dims.contains(&n) || sc.open {
                    Ok(IExpr::Var(n))
                } else if sc.tms.contains(&n) {
                    Err(ParseError { pos: *p, kind: ParseErrorKind::NotInterval(a.clone()) })
                } else {
                    Err(ParseError { pos: *p, kind: ParseErrorKind::Unbound(a.clone()) })
                }
            }
        },
        Sexp::List(..) => Err(ParseError {
            pos: s.pos(),
            kind: ParseErrorKind::NotInterval(s.to_string()),
        }),
    }
}

fn cof(sc: &Scope, s: &Sexp) -> Result<Cof> {
    if let Some(a) = atom(s) {
        return match a {
            "top" => Ok(Cof::top()),
            "bot" => Ok(Cof::bot()),
            _ => syntax(s.pos(), format!("expected a cofibration, found `{a}`")),
        };
    }
    let (head, args) = form(s, "a cofibration")?;
    match head {
        "=" => {
            arity(s, args, 2, "(= r s)")?;
            Ok(Cof::Eq(iexpr(sc, &args[0])?, iexpr(sc, &args[1])?))
        }
        "and" => Ok(Cof::Meet(args.iter().map(|a| cof(sc, a)).collect::<Result<_>>()?)),
        "or" => Ok(Cof::Join(args.iter().map(|a| cof(sc, a)).collect::<Result<_>>()?)),
        "forall" => {
            arity(s, args, 2, "(forall i φ)")?;
            let i = binder(&args[0])?;
            let body = cof(&sc.with_dim(&i), &args[1])?;
            Ok(forall_elim(&i, &body))
        }
        _ => syntax(s.pos(), format!("unknown cofibration form `{head}`")),
    }
}

/// A split clause: a conjunction of equations.
fn branch(sc: &Scope, s: &Sexp) -> Result<Branch> {
    fn atoms(c: &Cof, out: &mut Vec<(IExpr, IExpr)>) -> bool {
        match c {
            Cof::Eq(a, b) => {
                out.push((a.clone(), b.clone()));
                true
            }
            Cof::Meet(cs) => cs.iter().all(|c| atoms(c, out)),
            Cof::Join(_) => false,
        }
    }
    let c = cof(sc, s)?;
    let mut out = Vec::new();
    if !atoms(&c, &mut out) {
        return syntax(s.pos(), "a split clause must be a conjunction of equations");
    }
    let b = Branch::from_atoms(out.iter().map(|(a, b)| (a, b)));
    if !b.is_consistent() {
        return syntax(s.pos(), "a split clause must be consistent");
    }
    Ok(b)
}

fn tm_var(sc: &Scope, s: &Sexp, a: &str) -> Result<Name> {
    let n = Name::new(a);
    if sc.tms.contains(&n) || sc.open {
        Ok(n)
    } else {
        Err(ParseError { pos: s.pos(), kind: ParseErrorKind::Unbound(a.to_string()) })
    }
}

fn tp(sc: &Scope, s: &Sexp) -> Result<Tp> {
    if let Some(a) = atom(s) {
        return match a {
            "bool" => Ok(Tp::Bool),
            "wbool" => Ok(Tp::WBool),
            "s1" | "S1" => Ok(Tp::S1),
            "U" => Ok(Tp::U),
            _ => syntax(s.pos(), format!("expected a type, found `{a}`")),
        };
    }
    let (head, args) = form(s, "a type")?;
    match head {
        "pi" | "sigma" => {
            arity(s, args, 3, &format!("({head} x A B)"))?;
            let x = binder(&args[0])?;
            let a = tp(sc, &args[1])?;
            let b = tp(&sc.with_tm(&x), &args[2])?;
            Ok(if head == "pi" {
                Tp::Pi(x, Box::new(a), Box::new(b))
            } else {
                Tp::Sigma(x, Box::new(a), Box::new(b))
            })
        }
        "->" | "*" => {
            arity(s, args, 2, &format!("({head} A B)"))?;
            let x = Name::new("_");
            let a = Box::new(tp(sc, &args[0])?);
            let b = Box::new(tp(sc, &args[1])?);
            Ok(if head == "->" { Tp::Pi(x, a, b) } else { Tp::Sigma(x, a, b) })
        }
        "El" => {
            arity(s, args, 1, "(El t)")?;
            Ok(Tp::El(Box::new(tm(sc, &args[0])?)))
        }
        "path" => match args.len() {
            3 => Ok(Tp::Path(
                Name::new("_"),
                Box::new(tp(sc, &args[0])?),
                Box::new(tm(sc, &args[1])?),
                Box::new(tm(sc, &args[2])?),
            )),
            4 => {
                let i = binder(&args[0])?;
                Ok(Tp::Path(
                    i.clone(),
                    Box::new(tp(&sc.with_dim(&i), &args[1])?),
                    Box::new(tm(sc, &args[2])?),
                    Box::new(tm(sc, &args[3])?),
                ))
            }
            _ => syntax(s.pos(), "expected `(path i A t s)` or `(path A t s)`"),
        },
        "Glue" => {
            arity(s, args, 4, "(Glue φ B A e)")?;
            Ok(Tp::Glue {
                cof: cof(sc, &args[0])?,
                base: Box::new(tp(sc, &args[1])?),
                fiber: Box::new(tp(sc, &args[2])?),
                equiv: Box::new(tm(sc, &args[3])?),
            })
        }
        "cases" => {
            let bs = args
                .iter()
                .map(|b| {
                    let xs = pair(b, "(φ A)")?;
                    Ok((cof(sc, &xs[0])?, tp(sc, &xs[1])?))
                })
                .collect::<Result<_>>()?;
            Ok(Tp::Split(bs))
        }
        _ => syntax(s.pos(), format!("unknown type form `{head}`")),
    }
}

fn pair<'a>(s: &'a Sexp, shape: &str) -> Result<&'a [Sexp]> {
    match s.list() {
        Some(xs) if xs.len() == 2 => Ok(xs),
        _ => syntax(s.pos(), format!("expected `{shape}`")),
    }
}

fn tm(sc: &Scope, s: &Sexp) -> Result<Tm> {
    if let Some(a) = atom(s) {
        return match a {
            "true" => Ok(Tm::True),
            "false" => Ok(Tm::False),
            "base" => Ok(Tm::Base),
            _ if RESERVED.contains(&a) || a.parse::<i64>().is_ok() => {
                syntax(s.pos(), format!("expected a term, found `{a}`"))
            }
            _ => Ok(Tm::Var(tm_var(sc, s, a)?)),
        };
    }
    let (head, args) = form(s, "a term")?;
    let b = |t: Tm| Box::new(t);
    match head {
        "lam" => {
            arity(s, args, 2, "(lam x t)")?;
            let x = binder(&args[0])?;
            Ok(Tm::Lam(x.clone(), b(tm(&sc.with_tm(&x), &args[1])?)))
        }
        "app" => {
            if args.len() < 2 {
                return syntax(s.pos(), "expected `(app f a ...)`");
            }
            let mut acc = tm(sc, &args[0])?;
            for a in &args[1..] {
                acc = Tm::App(b(acc), b(tm(sc, a)?));
            }
            Ok(acc)
        }
        "pair" => {
            arity(s, args, 2, "(pair a b)")?;
            Ok(Tm::Pair(b(tm(sc, &args[0])?), b(tm(sc, &args[1])?)))
        }
        "fst" | "snd" | "unglue" => {
            arity(s, args, 1, &format!("({head} t)"))?;
            let t = b(tm(sc, &args[0])?);
            Ok(match head {
                "fst" => Tm::Fst(t),
                "snd" => Tm::Snd(t),
                _ => Tm::Unglue(t),
            })
        }
        "if" => {
            arity(s, args, 5, "(if x P b t f)")?;
            let x = binder(&args[0])?;
            Ok(Tm::If {
                var: x.clone(),
                motive: Box::new(tp(&sc.with_tm(&x), &args[1])?),
                scrut: b(tm(sc, &args[2])?),
                on_true: b(tm(sc, &args[3])?),
                on_false: b(tm(sc, &args[4])?),
            })
        }
        "code" => {
            arity(s, args, 1, "(code A)")?;
            Ok(Tm::Code(Box::new(tp(sc, &args[0])?)))
        }
        "plam" => {
            arity(s, args, 2, "(plam i t)")?;
            let i = binder(&args[0])?;
            Ok(Tm::PLam(i.clone(), b(tm(&sc.with_dim(&i), &args[1])?)))
        }
        "papp" => {
            arity(s, args, 2, "(papp p r)")?;
            let p = tm(sc, &args[0])?;
            Ok(Tm::PApp(b(p), iexpr(sc, &args[1])?))
        }
        "hcomp" => {
            arity(s, args, 6, "(hcomp A r s φ i t)")?;
            let i = binder(&args[4])?;
            Ok(Tm::HComp {
                tp: Box::new(tp(sc, &args[0])?),
                src: iexpr(sc, &args[1])?,
                dst: iexpr(sc, &args[2])?,
                cof: cof(sc, &args[3])?,
                var: i.clone(),
                tube: b(tm(&sc.with_dim(&i), &args[5])?),
            })
        }
        "coe" => {
            arity(s, args, 5, "(coe i A r s t)")?;
            let i = binder(&args[0])?;
            Ok(Tm::Coe {
                var: i.clone(),
                tp: Box::new(tp(&sc.with_dim(&i), &args[1])?),
                src: iexpr(sc, &args[2])?,
                dst: iexpr(sc, &args[3])?,
                arg: b(tm(sc, &args[4])?),
            })
        }
        "glue" => {
            arity(s, args, 3, "(glue φ b a)")?;
            Ok(Tm::GlueIntro(cof(sc, &args[0])?, b(tm(sc, &args[1])?), b(tm(sc, &args[2])?)))
        }
        "loop" => {
            arity(s, args, 1, "(loop r)")?;
            Ok(Tm::Loop(iexpr(sc, &args[0])?))
        }
        "s1-elim" => {
            arity(s, args, 6, "(s1-elim x P t b i l)")?;
            let x = binder(&args[0])?;
            let i = binder(&args[4])?;
            Ok(Tm::S1Elim {
                var: x.clone(),
                motive: Box::new(tp(&sc.with_tm(&x), &args[1])?),
                scrut: b(tm(sc, &args[2])?),
                base: b(tm(sc, &args[3])?),
                dim: i.clone(),
                loop_case: b(tm(&sc.with_dim(&i), &args[5])?),
            })
        }
        "cases" => {
            let bs = args
                .iter()
                .map(|x| {
                    let xs = pair(x, "(φ t)")?;
                    Ok((cof(sc, &xs[0])?, tm(sc, &xs[1])?))
                })
                .collect::<Result<_>>()?;
            Ok(Tm::Split(bs))
        }
        _ => syntax(s.pos(), format!("unknown term form `{head}`")),
    }
}

fn split<X>(sc: &Scope, s: &Sexp, leaf: impl Fn(&Scope, &Sexp) -> Result<X>) -> Result<Split<X>> {
    let (head, args) = form(s, "a split")?;
    if head != "split" || args.is_empty() {
        return syntax(s.pos(), "expected `(split φ (ψ payload) ...)`");
    }
    let dom = cof(sc, &args[0])?;
    let mut branches = Vec::new();
    for x in &args[1..] {
        let xs = pair(x, "(ψ payload)")?;
        let b = branch(sc, &xs[0])?;
        let payload = leaf(&sc.contract(&b), &xs[1])?;
        branches.push((b, payload));
    }
    Ok(Split::new(dom, branches))
}

fn netp(sc: &Scope, s: &Sexp) -> Result<NeTp> {
    let (head, args) = form(s, "a neutral type `(El e)`")?;
    if head != "El" {
        return syntax(s.pos(), "expected a neutral type `(El e)`");
    }
    arity(s, args, 1, "(El e)")?;
    Ok(NeTp(ne(sc, &args[0])?))
}

fn ne(sc: &Scope, s: &Sexp) -> Result<Ne> {
    if let Some(a) = atom(s) {
        if RESERVED.contains(&a) {
            return syntax(s.pos(), format!("expected a neutral, found `{a}`"));
        }
        return Ok(Ne::Var(tm_var(sc, s, a)?));
    }
    let (head, args) = form(s, "a neutral")?;
    let b = |t| Box::new(t);
    match head {
        "app" => {
            if args.len() < 2 {
                return syntax(s.pos(), "expected `(app e a ...)`");
            }
            let mut acc = ne(sc, &args[0])?;
            for a in &args[1..] {
                acc = Ne::App(b(acc), Box::new(nf(sc, a)?));
            }
            Ok(acc)
        }
        "fst" | "snd" => {
            arity(s, args, 1, &format!("({head} e)"))?;
            let e = b(ne(sc, &args[0])?);
            Ok(if head == "fst" { Ne::Fst(e) } else { Ne::Snd(e) })
        }
        "if" => {
            arity(s, args, 5, "(if x P e t f)")?;
            let x = binder(&args[0])?;
            Ok(Ne::If {
                var: x.clone(),
                motive: Box::new(nftp(&sc.with_tm(&x), &args[1])?),
                scrut: b(ne(sc, &args[2])?),
                on_true: Box::new(nf(sc, &args[3])?),
                on_false: Box::new(nf(sc, &args[4])?),
            })
        }
        "papp" => {
            arity(s, args, 2, "(papp e r)")?;
            let p = ne(sc, &args[0])?;
            Ok(Ne::PApp(b(p), iexpr(sc, &args[1])?))
        }
        "unglue" => {
            arity(s, args, 2, "(unglue φ e)")?;
            Ok(Ne::Unglue(cof(sc, &args[0])?, b(ne(sc, &args[1])?)))
        }
        "s1-elim" => {
            arity(s, args, 6, "(s1-elim x P e b i l)")?;
            let x = binder(&args[0])?;
            let i = binder(&args[4])?;
            Ok(Ne::S1Elim {
                var: x.clone(),
                motive: Box::new(nftp(&sc.with_tm(&x), &args[1])?),
                scrut: b(ne(sc, &args[2])?),
                base: Box::new(nf(sc, &args[3])?),
                dim: i.clone(),
                loop_case: Box::new(nf(&sc.with_dim(&i), &args[5])?),
            })
        }
        "star" => {
            arity(s, args, 1, "(star φ)")?;
            Ok(Ne::Star(cof(sc, &args[0])?))
        }
        _ => syntax(s.pos(), format!("unknown neutral form `{head}`")),
    }
}

fn tag(sc: &Scope, s: &Sexp) -> Result<UpTag> {
    match atom(s) {
        Some("bool") => Ok(UpTag::Bool),
        Some("wbool") => Ok(UpTag::WBool),
        Some("s1" | "S1") => Ok(UpTag::S1),
        Some(a) => syntax(s.pos(), format!("`{a}` is not a type with stabilized neutrals")),
        None => Ok(UpTag::El(netp(sc, s)?)),
    }
}

fn hit(s: &Sexp) -> Result<HitKind> {
    match atom(s) {
        Some("wbool") => Ok(HitKind::WBool),
        Some("s1" | "S1") => Ok(HitKind::S1),
        _ => syntax(s.pos(), "expected `wbool` or `s1`"),
    }
}

fn nf(sc: &Scope, s: &Sexp) -> Result<Nf> {
    if let Some(a) = atom(s) {
        return match a {
            "true" => Ok(Nf::True),
            "false" => Ok(Nf::False),
            "base" => Ok(Nf::Base),
            _ => syntax(
                s.pos(),
                format!("expected a normal form, found `{a}`; neutrals are written `(up tag e backup)`"),
            ),
        };
    }
    let (head, args) = form(s, "a normal form")?;
    let b = |t| Box::new(t);
    match head {
        "lam" => {
            arity(s, args, 2, "(lam x t)")?;
            let x = binder(&args[0])?;
            Ok(Nf::Lam(x.clone(), b(nf(&sc.with_tm(&x), &args[1])?)))
        }
        "pair" => {
            arity(s, args, 2, "(pair a b)")?;
            Ok(Nf::Pair(b(nf(sc, &args[0])?), b(nf(sc, &args[1])?)))
        }
        "code" => {
            arity(s, args, 1, "(code A)")?;
            Ok(Nf::Code(Box::new(nftp(sc, &args[0])?)))
        }
        "plam" => {
            arity(s, args, 2, "(plam i t)")?;
            let i = binder(&args[0])?;
            Ok(Nf::PLam(i.clone(), b(nf(&sc.with_dim(&i), &args[1])?)))
        }
        "glue" => {
            arity(s, args, 3, "(glue φ b split)")?;
            Ok(Nf::Glue {
                cof: cof(sc, &args[0])?,
                base: b(nf(sc, &args[1])?),
                fiber: split(sc, &args[2], nf)?,
            })
        }
        "loop" => {
            arity(s, args, 1, "(loop r)")?;
            Ok(Nf::Loop(iexpr(sc, &args[0])?))
        }
        "hcomp" => {
            arity(s, args, 6, "(hcomp wbool|s1 r s φ i split)")?;
            let i = binder(&args[4])?;
            Ok(Nf::HCompVal {
                kind: hit(&args[0])?,
                src: iexpr(sc, &args[1])?,
                dst: iexpr(sc, &args[2])?,
                cof: cof(sc, &args[3])?,
                var: i.clone(),
                tube: split(&sc.with_dim(&i), &args[5], nf)?,
            })
        }
        "hcomp-stuck" => {
            arity(s, args, 7, "(hcomp-stuck (El e) r s φ i tube backup)")?;
            let i = binder(&args[4])?;
            Ok(Nf::HCompStuck {
                tp: netp(sc, &args[0])?,
                src: iexpr(sc, &args[1])?,
                dst: iexpr(sc, &args[2])?,
                cof: cof(sc, &args[3])?,
                var: i.clone(),
                tube: split(&sc.with_dim(&i), &args[5], nf)?,
                backup: split(sc, &args[6], nf)?,
            })
        }
        "coe-stuck" => {
            arity(s, args, 6, "(coe-stuck i (El e) r s t backup)")?;
            let i = binder(&args[0])?;
            Ok(Nf::CoeStuck {
                var: i.clone(),
                tp: netp(&sc.with_dim(&i), &args[1])?,
                src: iexpr(sc, &args[2])?,
                dst: iexpr(sc, &args[3])?,
                arg: b(nf(sc, &args[4])?),
                backup: split(sc, &args[5], nf)?,
            })
        }
        "up" => {
            arity(s, args, 3, "(up tag e backup)")?;
            Ok(Nf::Up {
                tag: tag(sc, &args[0])?,
                ne: ne(sc, &args[1])?,
                backup: split(sc, &args[2], nf)?,
            })
        }
        _ => syntax(s.pos(), format!("unknown normal form `{head}`")),
    }
}

fn nftp(sc: &Scope, s: &Sexp) -> Result<NfTp> {
    if let Some(a) = atom(s) {
        return match a {
            "bool" => Ok(NfTp::Bool),
            "wbool" => Ok(NfTp::WBool),
            "s1" | "S1" => Ok(NfTp::S1),
            "U" => Ok(NfTp::U),
            _ => syntax(s.pos(), format!("expected a normal type, found `{a}`")),
        };
    }
    let (head, args) = form(s, "a normal type")?;
    let b = |t| Box::new(t);
    match head {
        "pi" | "sigma" => {
            arity(s, args, 3, &format!("({head} x A B)"))?;
            let x = binder(&args[0])?;
            let a = b(nftp(sc, &args[1])?);
            let c = b(nftp(&sc.with_tm(&x), &args[2])?);
            Ok(if head == "pi" { NfTp::Pi(x, a, c) } else { NfTp::Sigma(x, a, c) })
        }
        "->" | "*" => {
            arity(s, args, 2, &format!("({head} A B)"))?;
            let x = Name::new("_");
            let a = b(nftp(sc, &args[0])?);
            let c = b(nftp(sc, &args[1])?);
            Ok(if head == "->" { NfTp::Pi(x, a, c) } else { NfTp::Sigma(x, a, c) })
        }
        "path" => match args.len() {
            3 => Ok(NfTp::Path(
                Name::new("_"),
                b(nftp(sc, &args[0])?),
                Box::new(nf(sc, &args[1])?),
                Box::new(nf(sc, &args[2])?),
            )),
            4 => {
                let i = binder(&args[0])?;
                Ok(NfTp::Path(
                    i.clone(),
                    b(nftp(&sc.with_dim(&i), &args[1])?),
                    Box::new(nf(sc, &args[2])?),
                    Box::new(nf(sc, &args[3])?),
                ))
            }
            _ => syntax(s.pos(), "expected `(path i A t s)` or `(path A t s)`"),
        },
        "Glue" => {
            arity(s, args, 4, "(Glue φ B fiber equiv)")?;
            Ok(NfTp::Glue {
                cof: cof(sc, &args[0])?,
                base: b(nftp(sc, &args[1])?),
                fiber: split(sc, &args[2], nftp)?,
                equiv: split(sc, &args[3], nf)?,
            })
        }
        "up" => {
            arity(s, args, 2, "(up (El e) backup)")?;
            Ok(NfTp::Up { tp: netp(sc, &args[0])?, backup: split(sc, &args[1], nftp)? })
        }
        _ => syntax(s.pos(), format!("unknown normal type form `{head}`")),
    }
}

fn ctx(s: &Sexp) -> Result<Ctx> {
    let (head, args) = form(s, "`(ctx ...)`")?;
    if head != "ctx" {
        return syntax(s.pos(), "expected `(ctx ...)`");
    }
    let mut c = Ctx::new();
    for e in args {
        let sc = Scope::of_ctx(&c);
        let (h, xs) = form(e, "a context entry")?;
        c = match h {
            "tm" => {
                arity(e, xs, 2, "(tm x A)")?;
                c.with_tm(binder(&xs[0])?, tp(&sc, &xs[1])?)
            }
            "dim" => {
                arity(e, xs, 1, "(dim i)")?;
                let i = binder(&xs[0])?;
                if c.has_dim(&i) {
                    return syntax(e.pos(), format!("interval variable `{i}` bound twice"));
                }
                c.with_dim(i)
            }
            "cof" => {
                arity(e, xs, 1, "(cof φ)")?;
                c.with_cof(cof(&sc, &xs[0])?)
            }
            _ => return syntax(e.pos(), format!("unknown context entry `{h}`")),
        };
    }
    Ok(c)
}

fn nf_body(c: &Ctx, s: &Sexp) -> Result<NfBody> {
    let sc = Scope::of_ctx(c);
    if s.head() == Some("split") {
        Ok(NfBody::Split(split(&sc, s, nf)?))
    } else {
        Ok(NfBody::Plain(nf(&sc, s)?))
    }
}

fn decl(s: &Sexp) -> Result<Decl> {
    let (head, args) = form(s, "a declaration")?;
    match head {
        "def" => {
            arity(s, args, 4, "(def NAME (ctx ...) TYPE TERM)")?;
            let c = ctx(&args[1])?;
            let sc = Scope::of_ctx(&c);
            Ok(Decl::Def {
                name: binder(&args[0])?,
                tp: tp(&sc, &args[2])?,
                tm: tm(&sc, &args[3])?,
                ctx: c,
            })
        }
        "nf" => {
            arity(s, args, 4, "(nf NAME (ctx ...) TYPE BODY)")?;
            let c = ctx(&args[1])?;
            let sc = Scope::of_ctx(&c);
            Ok(Decl::Nf {
                name: binder(&args[0])?,
                tp: tp(&sc, &args[2])?,
                body: nf_body(&c, &args[3])?,
                ctx: c,
            })
        }
        "assert-eq-nf" => {
            arity(s, args, 4, "(assert-eq-nf (ctx ...) TYPE NF NF)")?;
            let c = ctx(&args[0])?;
            let sc = Scope::of_ctx(&c);
            Ok(Decl::AssertEqNf {
                tp: tp(&sc, &args[1])?,
                lhs: nf_body(&c, &args[2])?,
                rhs: nf_body(&c, &args[3])?,
                ctx: c,
            })
        }
        "assert-cof" => {
            arity(s, args, 2, "(assert-cof (hyps ...) φ)")?;
            let (h, hs) = form(&args[0], "`(hyps ...)`")?;
            if h != "hyps" {
                return syntax(args[0].pos(), "expected `(hyps ...)`");
            }
            let sc = Scope::open();
            Ok(Decl::AssertCof {
                hyps: hs.iter().map(|x| cof(&sc, x)).collect::<Result<_>>()?,
                goal: cof(&sc, &args[1])?,
            })
        }
        _ => syntax(s.pos(), format!("unknown declaration `{head}`")),
    }
}

fn read(src: &str) -> Result<Vec<Sexp>> {
    read_all(src).map_err(|e| ParseError { pos: e.pos, kind: ParseErrorKind::Syntax(e.message) })
}

fn read_one(src: &str) -> Result<Sexp> {
    let mut forms = read(src)?;
    match forms.len() {
        1 => Ok(forms.pop().unwrap()),
        0 => syntax(Pos { line: 1, col: 1 }, "empty input"),
        _ => syntax(forms[1].pos(), "expected a single form"),
    }
}

/// Parses a file of declarations.
pub fn parse_decls(src: &str) -> Result<Vec<Item>> {
    read(src)?
        .iter()
        .map(|s| Ok(Item { pos: s.pos(), decl: decl(s)? }))
        .collect()
}

/// Parses an interval expression; every identifier is a variable.
pub fn parse_iexpr(src: &str) -> Result<IExpr> {
    iexpr(&Scope::open(), &read_one(src)?)
}

/// Parses a cofibration; every identifier is an interval variable.
pub fn parse_cof(src: &str) -> Result<Cof> {
    cof(&Scope::open(), &read_one(src)?)
}

/// Parses a raw term in `ctx`.
pub fn parse_tm(ctx: &Ctx, src: &str) -> Result<Tm> {
    tm(&Scope::of_ctx(ctx), &read_one(src)?)
}

/// Parses a raw term with every free identifier accepted as a variable.
pub fn parse_tm_open(src: &str) -> Result<Tm> {
    tm(&Scope::open(), &read_one(src)?)
}

pub fn parse_tp(ctx: &Ctx, src: &str) -> Result<Tp> {
    tp(&Scope::of_ctx(ctx), &read_one(src)?)
}

/// Parses a normal form in `ctx`.
pub fn parse_nf(ctx: &Ctx, src: &str) -> Result<Nf> {
    nf(&Scope::of_ctx(ctx), &read_one(src)?)
}

pub fn parse_nftp(ctx: &Ctx, src: &str) -> Result<NfTp> {
    nftp(&Scope::of_ctx(ctx), &read_one(src)?)
}

/// Parses a context `(ctx ...)`.
pub fn parse_ctx(src: &str) -> Result<Ctx> {
    ctx(&read_one(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda() {
        let t = parse_tm_open("(lam x x)").unwrap();
        assert_eq!(t, Tm::Lam(Name::new("x"), Box::new(Tm::var("x"))));
    }

    #[test]
    fn path_application_round_trips() {
        let t = parse_tm_open("(papp p 0)").unwrap();
        assert_eq!(t.to_string(), "(papp p 0)");
    }

    #[test]
    fn rejects_non_interval() {
        let e = parse_tm_open("(papp p 2)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NotInterval("2".into()));
        assert!(e.to_string().contains("not an interval expression"));
    }

    #[test]
    fn reports_unbound_names_with_position() {
        let e = parse_tm(&Ctx::new(), "(lam x\n  (app x y))").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unbound("y".into()));
        assert_eq!(e.pos, Pos { line: 2, col: 10 });
    }

    #[test]
    fn forall_is_eliminated() {
        let c = parse_cof("(forall i (or (= i j) (= k 1)))").unwrap();
        assert_eq!(c.to_string(), "(or bot (= k 1))");
    }

    #[test]
    fn split_payloads_use_the_contracted_scope() {
        let c = parse_ctx("(ctx (dim i) (dim j))").unwrap();
        let ok = "(glue (or (= i 0) (= i j)) true (split (or (= i 0) (= i j)) ((= 0 i) (loop j)) ((= i j) (loop i))))";
        assert!(parse_nf(&c, ok).is_ok());
        let bad = "(glue (= i j) true (split (= i j) ((= i j) (loop j))))";
        assert_eq!(parse_nf(&c, bad).unwrap_err().kind, ParseErrorKind::Unbound("j".into()));
    }

    #[test]
    fn sugar_only_for_anonymous_binders() {
        let c = Ctx::new();
        for src in ["(-> bool bool)", "(pi x bool bool)", "(path bool true false)", "(path i bool true true)"] {
            assert_eq!(parse_tp(&c, src).unwrap().to_string(), src);
        }
    }
}
