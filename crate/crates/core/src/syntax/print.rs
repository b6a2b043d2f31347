//! Concrete syntax for terms, normal forms, and declarations.
//!
//! Output is a single s-expression per term; declarations put the type and
//! body on their own lines. Non-dependent function, pair, and path types are
//! written with `->`, `*`, and the short `path` form exactly when their
//! binder is `_`, so printing followed by parsing is the identity.

use std::fmt::{self, Display, Formatter};

use crate::nf::{HitKind, Ne, NeTp, Nf, NfTp, Split, UpTag};
use crate::syntax::ast::{Tm, Tp};
use crate::syntax::ctx::{Ctx, CtxEntry};
use crate::syntax::decl::{Decl, NfBody};

fn is_anon(x: &crate::name::Name) -> bool {
    x.as_str() == "_"
}

impl Display for Tp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Tp::Pi(x, a, b) if is_anon(x) => write!(f, "(-> {a} {b})"),
            Tp::Pi(x, a, b) => write!(f, "(pi {x} {a} {b})"),
            Tp::Sigma(x, a, b) if is_anon(x) => write!(f, "(* {a} {b})"),
            Tp::Sigma(x, a, b) => write!(f, "(sigma {x} {a} {b})"),
            Tp::Bool => f.write_str("bool"),
            Tp::WBool => f.write_str("wbool"),
            Tp::S1 => f.write_str("s1"),
            Tp::U => f.write_str("U"),
            Tp::El(t) => write!(f, "(El {t})"),
            Tp::Path(i, a, t, s) if is_anon(i) => write!(f, "(path {a} {t} {s})"),
            Tp::Path(i, a, t, s) => write!(f, "(path {i} {a} {t} {s})"),
            Tp::Glue { cof, base, fiber, equiv } => write!(f, "(Glue {cof} {base} {fiber} {equiv})"),
            Tp::Split(bs) => {
                f.write_str("(cases")?;
                for (phi, a) in bs {
                    write!(f, " ({phi} {a})")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Display for Tm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Tm::Var(x) => write!(f, "{x}"),
            Tm::Lam(x, b) => write!(f, "(lam {x} {b})"),
            Tm::App(g, a) => write!(f, "(app {g} {a})"),
            Tm::Pair(a, b) => write!(f, "(pair {a} {b})"),
            Tm::Fst(p) => write!(f, "(fst {p})"),
            Tm::Snd(p) => write!(f, "(snd {p})"),
            Tm::True => f.write_str("true"),
            Tm::False => f.write_str("false"),
            Tm::If { var, motive, scrut, on_true, on_false } => {
                write!(f, "(if {var} {motive} {scrut} {on_true} {on_false})")
            }
            Tm::Code(a) => write!(f, "(code {a})"),
            Tm::PLam(i, b) => write!(f, "(plam {i} {b})"),
            Tm::PApp(p, r) => write!(f, "(papp {p} {r})"),
            Tm::HComp { tp, src, dst, cof, var, tube } => {
                write!(f, "(hcomp {tp} {src} {dst} {cof} {var} {tube})")
            }
            Tm::Coe { var, tp, src, dst, arg } => write!(f, "(coe {var} {tp} {src} {dst} {arg})"),
            Tm::GlueIntro(phi, b, a) => write!(f, "(glue {phi} {b} {a})"),
            Tm::Unglue(g) => write!(f, "(unglue {g})"),
            Tm::Base => f.write_str("base"),
            Tm::Loop(r) => write!(f, "(loop {r})"),
            Tm::S1Elim { var, motive, scrut, base, dim, loop_case } => {
                write!(f, "(s1-elim {var} {motive} {scrut} {base} {dim} {loop_case})")
            }
            Tm::Split(bs) => {
                f.write_str("(cases")?;
                for (phi, t) in bs {
                    write!(f, " ({phi} {t})")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl<X: Display> Display for Split<X> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "(split {}", self.dom)?;
        for (b, x) in &self.branches {
            write!(f, " ({} {x})", b.to_cof())?;
        }
        f.write_str(")")
    }
}

impl Display for NeTp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "(El {})", self.0)
    }
}

impl Display for UpTag {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            UpTag::Bool => f.write_str("bool"),
            UpTag::WBool => f.write_str("wbool"),
            UpTag::S1 => f.write_str("s1"),
            UpTag::El(tp) => write!(f, "{tp}"),
        }
    }
}

impl Display for HitKind {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HitKind::WBool => "wbool",
            HitKind::S1 => "s1",
        })
    }
}

impl Display for Nf {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Nf::Lam(x, b) => write!(f, "(lam {x} {b})"),
            Nf::Pair(a, b) => write!(f, "(pair {a} {b})"),
            Nf::True => f.write_str("true"),
            Nf::False => f.write_str("false"),
            Nf::Code(a) => write!(f, "(code {a})"),
            Nf::PLam(i, b) => write!(f, "(plam {i} {b})"),
            Nf::Glue { cof, base, fiber } => write!(f, "(glue {cof} {base} {fiber})"),
            Nf::Base => f.write_str("base"),
            Nf::Loop(r) => write!(f, "(loop {r})"),
            Nf::HCompVal { kind, src, dst, cof, var, tube } => {
                write!(f, "(hcomp {kind} {src} {dst} {cof} {var} {tube})")
            }
            Nf::HCompStuck { tp, src, dst, cof, var, tube, backup } => {
                write!(f, "(hcomp-stuck {tp} {src} {dst} {cof} {var} {tube} {backup})")
            }
            Nf::CoeStuck { var, tp, src, dst, arg, backup } => {
                write!(f, "(coe-stuck {var} {tp} {src} {dst} {arg} {backup})")
            }
            Nf::Up { tag, ne, backup } => write!(f, "(up {tag} {ne} {backup})"),
        }
    }
}

impl Display for Ne {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Ne::Var(x) => write!(f, "{x}"),
            Ne::App(g, a) => write!(f, "(app {g} {a})"),
            Ne::Fst(p) => write!(f, "(fst {p})"),
            Ne::Snd(p) => write!(f, "(snd {p})"),
            Ne::If { var, motive, scrut, on_true, on_false } => {
                write!(f, "(if {var} {motive} {scrut} {on_true} {on_false})")
            }
            Ne::PApp(p, r) => write!(f, "(papp {p} {r})"),
            Ne::Unglue(phi, g) => write!(f, "(unglue {phi} {g})"),
            Ne::S1Elim { var, motive, scrut, base, dim, loop_case } => {
                write!(f, "(s1-elim {var} {motive} {scrut} {base} {dim} {loop_case})")
            }
            Ne::Star(phi) => write!(f, "(star {phi})"),
        }
    }
}

impl Display for NfTp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            NfTp::Pi(x, a, b) if is_anon(x) => write!(f, "(-> {a} {b})"),
            NfTp::Pi(x, a, b) => write!(f, "(pi {x} {a} {b})"),
            NfTp::Sigma(x, a, b) if is_anon(x) => write!(f, "(* {a} {b})"),
            NfTp::Sigma(x, a, b) => write!(f, "(sigma {x} {a} {b})"),
            NfTp::Bool => f.write_str("bool"),
            NfTp::WBool => f.write_str("wbool"),
            NfTp::S1 => f.write_str("s1"),
            NfTp::U => f.write_str("U"),
            NfTp::Path(i, a, t, s) if is_anon(i) => write!(f, "(path {a} {t} {s})"),
            NfTp::Path(i, a, t, s) => write!(f, "(path {i} {a} {t} {s})"),
            NfTp::Glue { cof, base, fiber, equiv } => write!(f, "(Glue {cof} {base} {fiber} {equiv})"),
            NfTp::Up { tp, backup } => write!(f, "(up {tp} {backup})"),
        }
    }
}

impl Display for NfBody {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            NfBody::Plain(t) => write!(f, "{t}"),
            NfBody::Split(s) => write!(f, "{s}"),
        }
    }
}

impl Display for CtxEntry {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            CtxEntry::TmBind(x, a) => write!(f, "(tm {x} {a})"),
            CtxEntry::IBind(i) => write!(f, "(dim {i})"),
            CtxEntry::CofAssume(phi) => write!(f, "(cof {phi})"),
        }
    }
}

impl Display for Ctx {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str("(ctx")?;
        for e in self.entries() {
            write!(f, " {e}")?;
        }
        f.write_str(")")
    }
}

impl Display for Decl {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Def { name, ctx, tp, tm } => write!(f, "(def {name} {ctx}\n  {tp}\n  {tm})"),
            Decl::Nf { name, ctx, tp, body } => write!(f, "(nf {name} {ctx}\n  {tp}\n  {body})"),
            Decl::AssertEqNf { ctx, tp, lhs, rhs } => {
                write!(f, "(assert-eq-nf {ctx}\n  {tp}\n  {lhs}\n  {rhs})")
            }
            Decl::AssertCof { hyps, goal } => {
                f.write_str("(assert-cof (hyps")?;
                for h in hyps {
                    write!(f, " {h}")?;
                }
                write!(f, ") {goal})")
            }
        }
    }
}

/// Prints a sequence of declarations separated by blank lines.
pub fn print_decls<'a>(decls: impl IntoIterator<Item = &'a Decl>) -> String {
    let mut out = String::new();
    for d in decls {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&d.to_string());
        out.push('\n');
    }
    out
}
