//! Inclusion of normal and neutral forms into raw syntax.

use thiserror::Error;

use crate::nf::{HitKind, Ne, NeTp, NfTp, Nf, Split, UpTag};
use crate::syntax::ast::{Tm, Tp};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("collapsed neutral `(star {0})` outside a stabilized position")]
    StarUnguarded(String),
}

type Result<T> = std::result::Result<T, EmbedError>;

fn split_tm(sp: &Split<Nf>) -> Result<Tm> {
    let bs = sp
        .branches
        .iter()
        .map(|(b, x)| Ok((b.to_cof(), embed(x)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Tm::Split(bs))
}

fn split_tp(sp: &Split<NfTp>) -> Result<Tp> {
    let bs = sp
        .branches
        .iter()
        .map(|(b, x)| Ok((b.to_cof(), embed_nftp(x)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Tp::Split(bs))
}

fn bx<T>(r: Result<T>) -> Result<Box<T>> {
    r.map(Box::new)
}

/// Erases normal-form markers. A stabilized neutral embeds as its neutral,
/// except a collapsed one, which is equal to its backup; split payloads
/// become case splits over their clauses.
pub fn embed(t: &Nf) -> Result<Tm> {
    Ok(match t {
        Nf::Lam(x, b) => Tm::Lam(x.clone(), bx(embed(b))?),
        Nf::Pair(a, b) => Tm::Pair(bx(embed(a))?, bx(embed(b))?),
        Nf::True => Tm::True,
        Nf::False => Tm::False,
        Nf::Base => Tm::Base,
        Nf::Loop(r) => Tm::Loop(r.clone()),
        Nf::Code(a) => Tm::Code(bx(embed_nftp(a))?),
        Nf::PLam(i, b) => Tm::PLam(i.clone(), bx(embed(b))?),
        Nf::Glue { cof, base, fiber } => {
            Tm::GlueIntro(cof.clone(), bx(embed(base))?, Box::new(split_tm(fiber)?))
        }
        Nf::HCompVal { kind, src, dst, cof, var, tube } => Tm::HComp {
            tp: Box::new(match kind {
                HitKind::WBool => Tp::WBool,
                HitKind::S1 => Tp::S1,
            }),
            src: src.clone(),
            dst: dst.clone(),
            cof: cof.clone(),
            var: var.clone(),
            tube: Box::new(split_tm(tube)?),
        },
        Nf::HCompStuck { tp, src, dst, cof, var, tube, .. } => Tm::HComp {
            tp: Box::new(Tp::El(bx(embed_ne(&tp.0))?)),
            src: src.clone(),
            dst: dst.clone(),
            cof: cof.clone(),
            var: var.clone(),
            tube: Box::new(split_tm(tube)?),
        },
        Nf::CoeStuck { var, tp, src, dst, arg, .. } => Tm::Coe {
            var: var.clone(),
            tp: Box::new(Tp::El(bx(embed_ne(&tp.0))?)),
            src: src.clone(),
            dst: dst.clone(),
            arg: bx(embed(arg))?,
        },
        Nf::Up { ne: Ne::Star(_), backup, .. } => split_tm(backup)?,
        Nf::Up { ne, .. } => embed_ne(ne)?,
    })
}

pub fn embed_ne(e: &Ne) -> Result<Tm> {
    Ok(match e {
        Ne::Var(x) => Tm::Var(x.clone()),
        Ne::App(f, a) => Tm::App(bx(embed_ne(f))?, bx(embed(a))?),
        Ne::Fst(p) => Tm::Fst(bx(embed_ne(p))?),
        Ne::Snd(p) => Tm::Snd(bx(embed_ne(p))?),
        Ne::If { var, motive, scrut, on_true, on_false } => Tm::If {
            var: var.clone(),
            motive: bx(embed_nftp(motive))?,
            scrut: bx(embed_ne(scrut))?,
            on_true: bx(embed(on_true))?,
            on_false: bx(embed(on_false))?,
        },
        Ne::PApp(p, r) => Tm::PApp(bx(embed_ne(p))?, r.clone()),
        Ne::Unglue(_, g) => Tm::Unglue(bx(embed_ne(g))?),
        Ne::S1Elim { var, motive, scrut, base, dim, loop_case } => Tm::S1Elim {
            var: var.clone(),
            motive: bx(embed_nftp(motive))?,
            scrut: bx(embed_ne(scrut))?,
            base: bx(embed(base))?,
            dim: dim.clone(),
            loop_case: bx(embed(loop_case))?,
        },
        Ne::Star(phi) => return Err(EmbedError::StarUnguarded(phi.to_string())),
    })
}

pub fn embed_nftp(t: &NfTp) -> Result<Tp> {
    Ok(match t {
        NfTp::Pi(x, a, b) => Tp::Pi(x.clone(), bx(embed_nftp(a))?, bx(embed_nftp(b))?),
        NfTp::Sigma(x, a, b) => Tp::Sigma(x.clone(), bx(embed_nftp(a))?, bx(embed_nftp(b))?),
        NfTp::Bool => Tp::Bool,
        NfTp::WBool => Tp::WBool,
        NfTp::S1 => Tp::S1,
        NfTp::U => Tp::U,
        NfTp::Path(i, a, t0, t1) => {
            Tp::Path(i.clone(), bx(embed_nftp(a))?, bx(embed(t0))?, bx(embed(t1))?)
        }
        NfTp::Glue { cof, base, fiber, equiv } => Tp::Glue {
            cof: cof.clone(),
            base: bx(embed_nftp(base))?,
            fiber: Box::new(split_tp(fiber)?),
            equiv: Box::new(split_tm(equiv)?),
        },
        NfTp::Up { tp: NeTp(Ne::Star(_)), backup } => split_tp(backup)?,
        NfTp::Up { tp, .. } => Tp::El(bx(embed_ne(&tp.0))?),
    })
}

/// The type a stabilized neutral was tagged with.
pub fn embed_tag(tag: &UpTag) -> Result<Tp> {
    Ok(match tag {
        UpTag::Bool => Tp::Bool,
        UpTag::WBool => Tp::WBool,
        UpTag::S1 => Tp::S1,
        UpTag::El(tp) => Tp::El(bx(embed_ne(&tp.0))?),
    })
}
