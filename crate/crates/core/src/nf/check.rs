//! Well-formedness of normal and neutral forms.
//!
//! Normal forms are checked against raw types, which are first put in weak
//! head form. Neutrals synthesize a raw type together with their frontier.
//! Contexts are cofibration-free: a form under an assumption is a split,
//! checked payload by payload in the contracted context.
//!
//! Equational premises are discharged by normal-form equality when both
//! sides are normal forms and by the bounded conversion oracle otherwise.
//! An inconclusive verdict is recorded as a warning, or rejected in strict
//! mode.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cof::{cof_eq, dnf, forall_elim, Branch, Cof, DimMap, IExpr};
use crate::engine::canon::open_binder;
use crate::engine::convert::whnf_tp;
use crate::engine::eq::{eq_nf_in, eq_nftp_in};
use crate::engine::subst::{names_nf, names_nftp, rename_nf, rename_nftp, DimSub};
use crate::engine::{
    bounded_convert_at, bounded_convert_tp, embed, embed_ne, embed_nftp, eq_nf, subst_i_nf, ConvVerdict,
    DimScope, EmbedError, UnknownReason,
};
use crate::name::Name;
use crate::nf::frontier::up_domain;
use crate::nf::{HitKind, Ne, NeTp, Nf, NfTp, Split, UpTag};
use crate::syntax::ast::{Tm, Tp};
use crate::syntax::ctx::Ctx;
use crate::syntax::subst::{subst_i_tp, subst_tp, Subst};

pub const DEFAULT_FUEL: u32 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckErrorKind {
    /// No rule builds this form at this type.
    RuleMismatch,
    /// A frontier recorded in the term differs from the computed one.
    FrontierMismatch,
    /// A stabilizer of a stuck composition or coercion covers the wrong
    /// domain.
    BackupDomainMismatch,
    SideConditionFailed,
    SideConditionUnknown,
    /// A split's clauses are not the decomposition of its domain.
    WrongShape,
    OverlapDisagreement,
    Unbound,
    StarUnguarded,
}

impl CheckErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckErrorKind::RuleMismatch => "rule-mismatch",
            CheckErrorKind::FrontierMismatch => "frontier-mismatch",
            CheckErrorKind::BackupDomainMismatch => "backup-domain-mismatch",
            CheckErrorKind::SideConditionFailed => "side-condition-failed",
            CheckErrorKind::SideConditionUnknown => "side-condition-unknown",
            CheckErrorKind::WrongShape => "wrong-shape",
            CheckErrorKind::OverlapDisagreement => "overlap-disagreement",
            CheckErrorKind::Unbound => "unbound",
            CheckErrorKind::StarUnguarded => "star-unguarded",
        }
    }
}

impl fmt::Display for CheckErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq, Serialize)]
#[error("{kind} at {path}: {message}")]
pub struct CheckError {
    pub kind: CheckErrorKind,
    /// Slash-separated position inside the checked form.
    pub path: String,
    pub message: String,
}

/// A side condition the conversion oracle could not decide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub path: String,
    pub reason: UnknownReason,
    pub message: String,
}

type Result<T> = std::result::Result<T, CheckError>;

/// Split payloads that can be restricted to a smaller scope and compared.
pub trait Payload: Clone {
    fn restrict(&self, sub: &DimSub) -> Self;
    fn agree(scope: &DimScope, a: &Self, b: &Self) -> bool;
}

impl Payload for Nf {
    fn restrict(&self, sub: &DimSub) -> Self {
        sub.nf(self)
    }

    fn agree(scope: &DimScope, a: &Self, b: &Self) -> bool {
        eq_nf_in(scope, a, b)
    }
}

impl Payload for NfTp {
    fn restrict(&self, sub: &DimSub) -> Self {
        sub.nftp(self)
    }

    fn agree(scope: &DimScope, a: &Self, b: &Self) -> bool {
        eq_nftp_in(scope, a, b)
    }
}

/// The payload of the clause `own` restricted to its overlap with `other`,
/// with the scope of the overlap.
fn restrict<X: Payload>(dims: &[Name], own: &Branch, other: &Branch, x: &X) -> Option<(Vec<Name>, X)> {
    let (map, kept) = own.contraction(dims);
    let meet = other.subst_map(&map);
    if !meet.is_consistent() {
        return None;
    }
    let (m, inner) = meet.contraction(&kept);
    Some((inner.clone(), x.restrict(&DimSub::new(m, kept, inner))))
}

pub struct Checker {
    pub strict: bool,
    pub fuel: u32,
    pub warnings: Vec<Warning>,
    path: Vec<String>,
}

impl Default for Checker {
    fn default() -> Self {
        Checker::new(false, DEFAULT_FUEL)
    }
}

impl Checker {
    pub fn new(strict: bool, fuel: u32) -> Self {
        Checker { strict, fuel, warnings: Vec::new(), path: Vec::new() }
    }

    fn path(&self) -> String {
        if self.path.is_empty() {
            "/".into()
        } else {
            self.path.join("/")
        }
    }

    fn err(&self, kind: CheckErrorKind, message: impl Into<String>) -> CheckError {
        CheckError { kind, path: self.path(), message: message.into() }
    }

    fn err_at(&mut self, seg: impl Into<String>, kind: CheckErrorKind, message: impl Into<String>) -> CheckError {
        self.path.push(seg.into());
        let e = self.err(kind, message);
        self.path.pop();
        e
    }

    pub fn at<T>(&mut self, seg: impl Into<String>, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        self.path.push(seg.into());
        let out = f(self);
        self.path.pop();
        out
    }

    fn whnf(&self, ctx: &Ctx, ty: &Tp) -> Tp {
        whnf_tp(ctx, ty, self.fuel, true)
    }

    fn embed(&self, t: &Nf) -> Result<Tm> {
        embed(t).map_err(|e| self.embed_err(e))
    }

    fn embed_ne(&self, e: &Ne) -> Result<Tm> {
        embed_ne(e).map_err(|e| self.embed_err(e))
    }

    fn embed_err(&self, e: EmbedError) -> CheckError {
        self.err(CheckErrorKind::StarUnguarded, e.to_string())
    }

    /// Records the outcome of an equational premise.
    fn verdict(&mut self, v: ConvVerdict, what: impl FnOnce() -> String) -> Result<()> {
        match v {
            ConvVerdict::Yes => Ok(()),
            ConvVerdict::No => Err(self.err(CheckErrorKind::SideConditionFailed, what())),
            ConvVerdict::Unknown(reason) => {
                if self.strict {
                    let kebab = serde_json::to_value(reason).ok();
                    let why = kebab.as_ref().and_then(|v| v.as_str()).unwrap_or("unknown");
                    Err(self.err(CheckErrorKind::SideConditionUnknown, format!("{} ({why})", what())))
                } else {
                    self.warnings.push(Warning { path: self.path(), reason, message: what() });
                    Ok(())
                }
            }
        }
    }

    /// `found` must be the type `expected`.
    fn same_tp(&mut self, ctx: &Ctx, expected: &Tp, found: &Tp) -> Result<()> {
        match bounded_convert_tp(ctx, expected, found, self.fuel) {
            ConvVerdict::No => Err(self.err(
                CheckErrorKind::RuleMismatch,
                format!("expected type `{expected}`, found `{found}`"),
            )),
            v => self.verdict(v, || format!("type `{found}` against `{expected}`")),
        }
    }

    fn fresh_tm_name(ctx: &Ctx, x: &Name, taken: &BTreeSet<Name>) -> Name {
        if ctx.binds(x) {
            x.fresh_against(|n| ctx.binds(n) || taken.contains(n))
        } else {
            x.clone()
        }
    }

    fn open_tm(ctx: &Ctx, x: &Name, body: &Nf) -> (Name, Nf) {
        let mut taken = BTreeSet::new();
        names_nf(body, &mut taken);
        let y = Self::fresh_tm_name(ctx, x, &taken);
        let body = if &y == x { body.clone() } else { rename_nf(body, x, &y) };
        (y, body)
    }

    fn open_tm_tp(ctx: &Ctx, x: &Name, body: &NfTp) -> (Name, NfTp) {
        let mut taken = BTreeSet::new();
        names_nftp(body, &mut taken);
        let y = Self::fresh_tm_name(ctx, x, &taken);
        let body = if &y == x { body.clone() } else { rename_nftp(body, x, &y) };
        (y, body)
    }

    /// Goes under an interval binder: a name for it that is not in scope and
    /// the renaming to apply to the body.
    fn open_dim(ctx: &Ctx, i: &Name) -> (Name, Option<DimSub>) {
        open_binder(&DimScope::of(ctx), i)
    }

    // Normal forms.

    pub fn nf(&mut self, ctx: &Ctx, t: &Nf, ty: &Tp) -> Result<()> {
        let ty = self.whnf(ctx, ty);
        match (t, &ty) {
            (Nf::Lam(x, body), Tp::Pi(y, dom, cod)) => {
                let (x, body) = Self::open_tm(ctx, x, body);
                let cod = subst_tp(cod, y, &Tm::Var(x.clone()));
                let inner = ctx.with_tm(x, (**dom).clone());
                self.at("lam", |c| c.nf(&inner, &body, &cod))
            }
            (Nf::Pair(a, b), Tp::Sigma(x, ta, tb)) => {
                self.at("fst", |c| c.nf(ctx, a, ta))?;
                let a = self.embed(a)?;
                let tb = subst_tp(tb, x, &a);
                self.at("snd", |c| c.nf(ctx, b, &tb))
            }
            (Nf::True | Nf::False, Tp::Bool | Tp::WBool) => Ok(()),
            (Nf::Base | Nf::Loop(_), Tp::S1) => Ok(()),
            (Nf::Code(a), Tp::U) => self.at("code", |c| c.nftp(ctx, a)),
            (Nf::PLam(i, body), Tp::Path(j, line, t0, t1)) => self.plam(ctx, i, body, j, line, t0, t1),
            (Nf::Glue { cof, base, fiber }, Tp::Glue { cof: psi, base: b_tp, fiber: a_tp, equiv }) => {
                if !cof_eq(&[], cof, psi) {
                    return Err(self.err(
                        CheckErrorKind::RuleMismatch,
                        format!("glue over `{cof}` at a Glue type over `{psi}`"),
                    ));
                }
                self.at("glue.base", |c| c.nf(ctx, base, b_tp))?;
                let base = self.embed(base)?;
                self.split(ctx, cof, fiber, "glue.fiber", |c, cx, _, map, a| {
                    let sub = Subst::dims(map.clone());
                    c.nf(cx, a, &sub.tp(a_tp))?;
                    let lhs = sub.tm(&base);
                    let rhs = Tm::apply_equiv(sub.tm(equiv), c.embed(a)?);
                    let v = bounded_convert_at(cx, &lhs, &rhs, &sub.tp(b_tp), c.fuel);
                    c.verdict(v, || format!("glued base `{lhs}` against `{rhs}`"))
                })
            }
            (Nf::HCompVal { kind, src, cof, var, tube, .. }, Tp::WBool | Tp::S1) => {
                let want = if ty == Tp::WBool { HitKind::WBool } else { HitKind::S1 };
                if *kind != want {
                    return Err(self.err(
                        CheckErrorKind::RuleMismatch,
                        format!("hcomp value of `{kind}` at type `{ty}`"),
                    ));
                }
                self.tube(ctx, src, cof, var, tube, &ty)
            }
            (Nf::HCompStuck { tp, src, dst, cof, var, tube, backup }, _) => {
                let psi = self.at("hcomp-stuck.type", |c| c.netp(ctx, tp))?;
                let el = Tp::El(Box::new(self.embed_ne(&tp.0)?));
                self.same_tp(ctx, &el, &ty)?;
                self.tube(ctx, src, cof, var, tube, &el)?;
                let raw = Tm::HComp {
                    tp: Box::new(el.clone()),
                    src: src.clone(),
                    dst: dst.clone(),
                    cof: cof.clone(),
                    var: var.clone(),
                    tube: Box::new(self.embed_split(tube)?),
                };
                self.stabilizer(ctx, &psi, backup, "hcomp-stuck.backup", &raw, &ty)
            }
            (Nf::CoeStuck { var, tp, src, dst, arg, backup }, _) => {
                let (k, ren) = Self::open_dim(ctx, var);
                let tp = match ren {
                    Some(r) => r.netp(tp),
                    None => tp.clone(),
                };
                let inner = ctx.with_dim(k.clone());
                let psi = self.at("coe-stuck.line", |c| c.netp(&inner, &tp))?;
                let line = Tp::El(Box::new(self.embed_ne(&tp.0)?));
                self.same_tp(ctx, &subst_i_tp(&line, &k, dst), &ty)?;
                let src_tp = subst_i_tp(&line, &k, src);
                self.at("coe-stuck.arg", |c| c.nf(ctx, arg, &src_tp))?;
                let raw = Tm::Coe {
                    var: k.clone(),
                    tp: Box::new(line),
                    src: src.clone(),
                    dst: dst.clone(),
                    arg: Box::new(self.embed(arg)?),
                };
                let dom = forall_elim(&k, &psi);
                self.stabilizer(ctx, &dom, backup, "coe-stuck.backup", &raw, &ty)
            }
            (Nf::Up { tag, ne, backup }, _) => self.up(ctx, tag, ne, backup, &ty),
            _ => Err(self.err(CheckErrorKind::RuleMismatch, format!("`{t}` is not a normal form of type `{ty}`"))),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn plam(&mut self, ctx: &Ctx, i: &Name, body: &Nf, j: &Name, line: &Tp, t0: &Tm, t1: &Tm) -> Result<()> {
        let (k, ren) = Self::open_dim(ctx, i);
        let body = match ren {
            Some(r) => r.nf(body),
            None => body.clone(),
        };
        let inner = ctx.with_dim(k.clone());
        let kv = IExpr::Var(k.clone());
        let fam = subst_i_tp(line, j, &kv);
        self.at("plam", |c| c.nf(&inner, &body, &fam))?;
        for (end, want) in [(IExpr::Zero, t0), (IExpr::One, t1)] {
            let got = subst_i_nf(&inner, &body, &k, &end);
            let got = self.embed(&got)?;
            let at_end = subst_i_tp(line, j, &end);
            let v = bounded_convert_at(ctx, &got, want, &at_end, self.fuel);
            self.at(format!("boundary.{end}"), |c| {
                c.verdict(v, || format!("path boundary `{got}` against `{want}`"))
            })?;
        }
        Ok(())
    }

    fn embed_split(&self, sp: &Split<Nf>) -> Result<Tm> {
        let bs = sp
            .branches
            .iter()
            .map(|(b, x)| Ok((b.to_cof(), self.embed(x)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tm::Split(bs))
    }

    /// A composition tube over `(var = src) ∨ cof`, each payload at `ty`.
    fn tube(&mut self, ctx: &Ctx, src: &IExpr, cof: &Cof, var: &Name, tube: &Split<Nf>, ty: &Tp) -> Result<()> {
        let (k, ren) = Self::open_dim(ctx, var);
        let tube = match ren {
            Some(r) => r.split(tube, |r, x| r.nf(x)),
            None => tube.clone(),
        };
        let inner = ctx.with_dim(k.clone());
        let dom = Cof::join([Cof::eq(IExpr::Var(k), src.clone()), cof.clone()]);
        self.split(&inner, &dom, &tube, "tube", |c, cx, _, map, x| c.nf(cx, x, &Subst::dims(map.clone()).tp(ty)))
    }

    /// The stabilizer of a stuck composition or coercion: over `dom`, each
    /// payload at `ty` and equal there to `raw`.
    fn stabilizer(&mut self, ctx: &Ctx, dom: &Cof, backup: &Split<Nf>, seg: &str, raw: &Tm, ty: &Tp) -> Result<()> {
        if !cof_eq(&[], dom, &backup.dom) {
            return Err(self.err_at(seg, CheckErrorKind::BackupDomainMismatch, format!("stabilizer is over `{}` but must cover `{dom}`", backup.dom)));
        }
        self.split(ctx, dom, backup, seg, |c, cx, _, map, b| {
            let sub = Subst::dims(map.clone());
            let ty = sub.tp(ty);
            c.nf(cx, b, &ty)?;
            let lhs = c.embed(b)?;
            let rhs = sub.tm(raw);
            let v = bounded_convert_at(cx, &lhs, &rhs, &ty, c.fuel);
            c.verdict(v, || format!("stabilizer `{lhs}` against `{rhs}`"))
        })
    }

    fn up(&mut self, ctx: &Ctx, tag: &UpTag, ne: &Ne, backup: &Split<Nf>, ty: &Tp) -> Result<()> {
        match (tag, ty) {
            (UpTag::Bool, Tp::Bool) | (UpTag::WBool, Tp::WBool) | (UpTag::S1, Tp::S1) => {}
            (UpTag::El(n), Tp::El(_)) => {
                self.at("up.type", |c| c.netp(ctx, n))?;
                let el = Tp::El(Box::new(self.embed_ne(&n.0)?));
                self.same_tp(ctx, &el, ty)?;
            }
            (_, Tp::U) => {
                return Err(self.err(CheckErrorKind::RuleMismatch, "no neutral-to-normal conversion at the universe"))
            }
            (_, Tp::Pi(..) | Tp::Sigma(..) | Tp::Path(..) | Tp::Glue { .. }) => {
                return Err(self.err(
                    CheckErrorKind::RuleMismatch,
                    format!("neutrals are not normal forms of type `{ty}`"),
                ))
            }
            _ => {
                return Err(self.err(CheckErrorKind::RuleMismatch, format!("a `{tag}` neutral at type `{ty}`")))
            }
        }
        let dom = up_domain(tag, ne);
        if !cof_eq(&[], &dom, &backup.dom) {
            return Err(self.err_at("up.backup", CheckErrorKind::FrontierMismatch, format!("backup is over `{}` but the frontier is `{dom}`", backup.dom)));
        }
        if let Ne::Star(phi) = ne {
            if !DimScope::of(ctx).holds(phi) {
                return Err(self.err_at("up.ne", CheckErrorKind::SideConditionFailed, format!("the collapsed neutral needs `{phi}` to hold")));
            }
            return self.split(ctx, &dom, backup, "up.backup", |c, cx, _, map, b| {
                c.nf(cx, b, &Subst::dims(map.clone()).tp(ty))
            });
        }
        let (found, _) = self.at("up.ne", |c| c.ne(ctx, ne))?;
        self.same_tp(ctx, ty, &found)?;
        let lhs = self.embed_ne(ne)?;
        self.split(ctx, &dom, backup, "up.backup", |c, cx, _, map, b| {
            let sub = Subst::dims(map.clone());
            let ty = sub.tp(ty);
            c.nf(cx, b, &ty)?;
            let lhs = sub.tm(&lhs);
            let rhs = c.embed(b)?;
            let v = bounded_convert_at(cx, &lhs, &rhs, &ty, c.fuel);
            c.verdict(v, || format!("destabilized `{lhs}` against backup `{rhs}`"))
        })
    }

    // Splits.

    /// Checks a split over `dom`: its clauses must be the canonical
    /// decomposition of `dom`, each payload must pass `leaf` in its
    /// contracted context, and payloads must agree where clauses overlap.
    pub fn split<X: Payload>(
        &mut self,
        ctx: &Ctx,
        dom: &Cof,
        sp: &Split<X>,
        seg: &str,
        mut leaf: impl FnMut(&mut Self, &Ctx, &Branch, &DimMap, &X) -> Result<()>,
    ) -> Result<()> {
        self.at(seg, |c| {
            if !cof_eq(&[], dom, &sp.dom) {
                return Err(c.err(
                    CheckErrorKind::WrongShape,
                    format!("split over `{}` where `{dom}` is required", sp.dom),
                ));
            }
            let want = dnf(&sp.dom);
            let have: Vec<&Branch> = sp.branches.iter().map(|(b, _)| b).collect();
            if want.len() != have.len() || want.iter().zip(&have).any(|(w, h)| w != *h) {
                let show = |bs: &mut dyn Iterator<Item = &Branch>| {
                    bs.map(|b| b.to_cof().to_string()).collect::<Vec<_>>().join(" ")
                };
                return Err(c.err(
                    CheckErrorKind::WrongShape,
                    format!(
                        "clauses [{}] are not the decomposition [{}] of `{}`",
                        show(&mut have.iter().copied()),
                        show(&mut want.iter()),
                        sp.dom
                    ),
                ));
            }
            for (b, x) in &sp.branches {
                let (cx, map) = ctx.contract(b);
                c.at(format!("{}", b.to_cof()), |c| leaf(c, &cx, b, &map, x))?;
            }
            let dims = ctx.dims();
            for (n, (b1, x1)) in sp.branches.iter().enumerate() {
                for (b2, x2) in &sp.branches[n + 1..] {
                    let Some((scope, y1)) = restrict(&dims, b1, b2, x1) else { continue };
                    let Some((scope2, y2)) = restrict(&dims, b2, b1, x2) else { continue };
                    debug_assert_eq!(scope, scope2);
                    if !X::agree(&DimScope::new(scope), &y1, &y2) {
                        return Err(c.err(
                            CheckErrorKind::OverlapDisagreement,
                            format!("payloads on `{}` and `{}` differ where both hold", b1.to_cof(), b2.to_cof()),
                        ));
                    }
                }
            }
            Ok(())
        })
    }

    // Neutrals.

    /// Synthesizes the type and frontier of a neutral.
    pub fn ne(&mut self, ctx: &Ctx, e: &Ne) -> Result<(Tp, Cof)> {
        match e {
            Ne::Var(x) => match ctx.lookup(x) {
                Some(ty) => Ok((ty.clone(), Cof::bot())),
                None => Err(self.err(CheckErrorKind::Unbound, format!("unbound variable `{x}`"))),
            },
            Ne::App(f, a) => {
                let (ft, phi) = self.at("app.fn", |c| c.ne(ctx, f))?;
                match self.whnf(ctx, &ft) {
                    Tp::Pi(x, dom, cod) => {
                        self.at("app.arg", |c| c.nf(ctx, a, &dom))?;
                        let a = self.embed(a)?;
                        Ok((subst_tp(&cod, &x, &a), phi))
                    }
                    other => Err(self.err(CheckErrorKind::RuleMismatch, format!("applying a neutral of type `{other}`"))),
                }
            }
            Ne::Fst(p) | Ne::Snd(p) => {
                let (pt, phi) = self.at("proj", |c| c.ne(ctx, p))?;
                match self.whnf(ctx, &pt) {
                    Tp::Sigma(x, a, b) => {
                        if matches!(e, Ne::Fst(_)) {
                            Ok((*a, phi))
                        } else {
                            let first = Tm::Fst(Box::new(self.embed_ne(p)?));
                            Ok((subst_tp(&b, &x, &first), phi))
                        }
                    }
                    other => Err(self.err(CheckErrorKind::RuleMismatch, format!("projecting from type `{other}`"))),
                }
            }
            Ne::If { var, motive, scrut, on_true, on_false } => {
                let (st, phi) = self.at("if.scrut", |c| c.ne(ctx, scrut))?;
                let st = self.whnf(ctx, &st);
                if st != Tp::Bool {
                    return Err(self.err(CheckErrorKind::RuleMismatch, format!("if on a neutral of type `{st}`")));
                }
                let (x, motive) = Self::open_tm_tp(ctx, var, motive);
                self.at("if.motive", |c| c.nftp(&ctx.with_tm(x.clone(), Tp::Bool), &motive))?;
                let m = embed_nftp(&motive).map_err(|e| self.embed_err(e))?;
                self.at("if.true", |c| c.nf(ctx, on_true, &subst_tp(&m, &x, &Tm::True)))?;
                self.at("if.false", |c| c.nf(ctx, on_false, &subst_tp(&m, &x, &Tm::False)))?;
                Ok((subst_tp(&m, &x, &self.embed_ne(scrut)?), phi))
            }
            Ne::PApp(p, r) => {
                let (pt, phi) = self.at("papp", |c| c.ne(ctx, p))?;
                match self.whnf(ctx, &pt) {
                    Tp::Path(i, a, _, _) => Ok((
                        subst_i_tp(&a, &i, r),
                        Cof::join([phi, Cof::eq(r.clone(), IExpr::Zero), Cof::eq(r.clone(), IExpr::One)]),
                    )),
                    other => Err(self.err(CheckErrorKind::RuleMismatch, format!("path application at type `{other}`"))),
                }
            }
            Ne::Unglue(psi, g) => {
                let (gt, phi) = self.at("unglue", |c| c.ne(ctx, g))?;
                match whnf_tp(ctx, &gt, self.fuel, false) {
                    Tp::Glue { cof, base, .. } => {
                        if !cof_eq(&[], psi, &cof) {
                            return Err(self.err(
                                CheckErrorKind::FrontierMismatch,
                                format!("unglue records `{psi}` but the Glue type is over `{cof}`"),
                            ));
                        }
                        Ok((*base, Cof::join([phi, psi.clone()])))
                    }
                    other => Err(self.err(CheckErrorKind::RuleMismatch, format!("unglue at type `{other}`"))),
                }
            }
            Ne::S1Elim { var, motive, scrut, base, dim, loop_case } => {
                let (st, phi) = self.at("s1-elim.scrut", |c| c.ne(ctx, scrut))?;
                let st = self.whnf(ctx, &st);
                if st != Tp::S1 {
                    return Err(self.err(CheckErrorKind::RuleMismatch, format!("circle elimination at type `{st}`")));
                }
                let (x, motive) = Self::open_tm_tp(ctx, var, motive);
                self.at("s1-elim.motive", |c| c.nftp(&ctx.with_tm(x.clone(), Tp::S1), &motive))?;
                let m = embed_nftp(&motive).map_err(|e| self.embed_err(e))?;
                self.at("s1-elim.base", |c| c.nf(ctx, base, &subst_tp(&m, &x, &Tm::Base)))?;
                let (k, ren) = Self::open_dim(ctx, dim);
                let loop_case = match ren {
                    Some(r) => r.nf(loop_case),
                    None => (**loop_case).clone(),
                };
                let inner = ctx.with_dim(k.clone());
                let at_loop = subst_tp(&m, &x, &Tm::Loop(IExpr::Var(k.clone())));
                self.at("s1-elim.loop", |c| c.nf(&inner, &loop_case, &at_loop))?;
                for end in [IExpr::Zero, IExpr::One] {
                    let got = subst_i_nf(&inner, &loop_case, &k, &end);
                    if !eq_nf(ctx, &got, base) {
                        return Err(self.err_at(format!("s1-elim.loop.{end}"), CheckErrorKind::SideConditionFailed, format!("loop case is `{got}` at {end}, not the base case `{base}`")));
                    }
                }
                Ok((subst_tp(&m, &x, &self.embed_ne(scrut)?), phi))
            }
            Ne::Star(phi) => Err(self.err(
                CheckErrorKind::StarUnguarded,
                format!("`(star {phi})` may only appear directly under `up`"),
            )),
        }
    }

    /// Checks a neutral type `El(C)`: `C` must be a neutral code. Returns
    /// its frontier.
    pub fn netp(&mut self, ctx: &Ctx, t: &NeTp) -> Result<Cof> {
        let (ty, phi) = self.ne(ctx, &t.0)?;
        match self.whnf(ctx, &ty) {
            Tp::U => Ok(phi),
            other => Err(self.err(CheckErrorKind::RuleMismatch, format!("`El` of a neutral of type `{other}`"))),
        }
    }

    // Types.

    pub fn nftp(&mut self, ctx: &Ctx, t: &NfTp) -> Result<()> {
        match t {
            NfTp::Pi(x, a, b) | NfTp::Sigma(x, a, b) => {
                self.at("dom", |c| c.nftp(ctx, a))?;
                let a = embed_nftp(a).map_err(|e| self.embed_err(e))?;
                let (x, b) = Self::open_tm_tp(ctx, x, b);
                self.at("cod", |c| c.nftp(&ctx.with_tm(x, a), &b))
            }
            NfTp::Bool | NfTp::WBool | NfTp::S1 | NfTp::U => Ok(()),
            NfTp::Path(i, line, t0, t1) => {
                let (k, ren) = Self::open_dim(ctx, i);
                let line = match ren {
                    Some(r) => r.nftp(line),
                    None => (**line).clone(),
                };
                self.at("path.line", |c| c.nftp(&ctx.with_dim(k.clone()), &line))?;
                let fam = embed_nftp(&line).map_err(|e| self.embed_err(e))?;
                self.at("path.0", |c| c.nf(ctx, t0, &subst_i_tp(&fam, &k, &IExpr::Zero)))?;
                self.at("path.1", |c| c.nf(ctx, t1, &subst_i_tp(&fam, &k, &IExpr::One)))
            }
            NfTp::Glue { cof, base, fiber, equiv } => {
                self.at("Glue.base", |c| c.nftp(ctx, base))?;
                let b = embed_nftp(base).map_err(|e| self.embed_err(e))?;
                self.split(ctx, cof, fiber, "Glue.fiber", |c, cx, _, _, a| c.nftp(cx, a))?;
                self.split(ctx, cof, equiv, "Glue.equiv", |c, cx, clause, map, e| {
                    let Nf::Pair(f, _) = e else {
                        return Err(c.err(
                            CheckErrorKind::RuleMismatch,
                            "an equivalence is written `(pair f witness)`",
                        ));
                    };
                    let Some(a) = fiber.get(clause) else {
                        return Err(c.err(CheckErrorKind::WrongShape, "fiber and equivalence splits differ"));
                    };
                    let a = embed_nftp(a).map_err(|e| c.embed_err(e))?;
                    let b = Subst::dims(map.clone()).tp(&b);
                    c.at("fn", |c| c.nf(cx, f, &Tp::arrow(a, b)))
                })
            }
            NfTp::Up { tp, backup } => {
                let dom = match &tp.0 {
                    Ne::Star(phi) => {
                        if !DimScope::of(ctx).holds(phi) {
                            return Err(self.err(
                                CheckErrorKind::SideConditionFailed,
                                format!("the collapsed neutral needs `{phi}` to hold"),
                            ));
                        }
                        phi.clone()
                    }
                    _ => self.at("up.type", |c| c.netp(ctx, tp))?,
                };
                if !cof_eq(&[], &dom, &backup.dom) {
                    return Err(self.err(
                        CheckErrorKind::FrontierMismatch,
                        format!("backup is over `{}` but the frontier is `{dom}`", backup.dom),
                    ));
                }
                let lhs = match &tp.0 {
                    Ne::Star(_) => None,
                    ne => Some(Tp::El(Box::new(self.embed_ne(ne)?))),
                };
                self.split(ctx, &dom, backup, "up.backup", |c, cx, _, map, a| {
                    c.nftp(cx, a)?;
                    let Some(lhs) = &lhs else { return Ok(()) };
                    let lhs = Subst::dims(map.clone()).tp(lhs);
                    let rhs = embed_nftp(a).map_err(|e| c.embed_err(e))?;
                    let v = bounded_convert_tp(cx, &lhs, &rhs, c.fuel);
                    c.verdict(v, || format!("destabilized `{lhs}` against backup `{rhs}`"))
                })
            }
        }
    }
}

pub fn check_nf(ctx: &Ctx, t: &Nf, ty: &Tp) -> std::result::Result<Vec<Warning>, CheckError> {
    let mut c = Checker::default();
    c.nf(ctx, t, ty)?;
    Ok(c.warnings)
}

pub fn check_ne(ctx: &Ctx, e: &Ne) -> std::result::Result<(Tp, Cof), CheckError> {
    Checker::default().ne(ctx, e)
}

pub fn check_nftp(ctx: &Ctx, t: &NfTp) -> std::result::Result<Vec<Warning>, CheckError> {
    let mut c = Checker::default();
    c.nftp(ctx, t)?;
    Ok(c.warnings)
}

pub fn check_netp(ctx: &Ctx, t: &NeTp) -> std::result::Result<Cof, CheckError> {
    Checker::default().netp(ctx, t)
}

/// Checks a split of normal forms over `dom`, each payload at `ty`.
pub fn check_split(ctx: &Ctx, dom: &Cof, sp: &Split<Nf>, ty: &Tp) -> std::result::Result<Vec<Warning>, CheckError> {
    let mut c = Checker::default();
    c.split(ctx, dom, sp, "split", |c, cx, _, map, x| c.nf(cx, x, &Subst::dims(map.clone()).tp(ty)))?;
    Ok(c.warnings)
}
