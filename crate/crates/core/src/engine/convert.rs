//! A fuel-bounded conversion check on raw terms.
//!
//! Terms are put in weak head form using the computation rules of the
//! calculus (β for functions, pairs, booleans, paths, and the circle; path
//! endpoints read off the type; `loop` at an endpoint; compositions and
//! coercions that are degenerate; glue and unglue; case-split selection;
//! codes and decodings), then compared with η for functions, pairs, and
//! paths. A context with cofibration assumptions is first split along the
//! canonical decomposition of its hypotheses and each piece contracted.
//!
//! `Yes` and `No` are definitive; anything the rules cannot decide within
//! the fuel budget is `Unknown`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cof::{cof_eq, dnf, entails, Cof, IExpr};
use crate::name::Name;
use crate::syntax::ast::{Tm, Tp};
use crate::syntax::ctx::Ctx;
use crate::syntax::subst::{alpha_eq_tm, alpha_eq_tp, free_tm, free_tp, subst_i_tm, subst_i_tp, subst_tm, subst_tp, Subst};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnknownReason {
    FuelExhausted,
    UnorientedEquation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvVerdict {
    Yes,
    No,
    Unknown(UnknownReason),
}

use ConvVerdict::{No, Unknown, Yes};

const UNORIENTED: ConvVerdict = Unknown(UnknownReason::UnorientedEquation);
const OUT_OF_FUEL: ConvVerdict = Unknown(UnknownReason::FuelExhausted);

impl ConvVerdict {
    /// Conjunction for injective formers: a definite difference in a
    /// component is a definite difference overall.
    fn and(self, other: impl FnOnce() -> ConvVerdict) -> ConvVerdict {
        match self {
            No => No,
            Yes => other(),
            Unknown(r) => match other() {
                No => No,
                Unknown(UnknownReason::FuelExhausted) => OUT_OF_FUEL,
                _ => Unknown(r),
            },
        }
    }

    /// Conjunction for spines of neutrals: only agreement is conclusive.
    fn and_weak(self, other: impl FnOnce() -> ConvVerdict) -> ConvVerdict {
        match self {
            Yes => match other() {
                No => UNORIENTED,
                v => v,
            },
            No => UNORIENTED,
            u => u,
        }
    }

    /// Combines the verdicts on the pieces of a covering of the context.
    fn cover(vs: impl IntoIterator<Item = ConvVerdict>) -> ConvVerdict {
        let mut acc = Yes;
        for v in vs {
            acc = match (acc, v) {
                (No, _) | (_, No) => return No,
                (Unknown(UnknownReason::FuelExhausted), _) | (_, Unknown(UnknownReason::FuelExhausted)) => OUT_OF_FUEL,
                (Unknown(r), _) | (_, Unknown(r)) => Unknown(r),
                (Yes, Yes) => Yes,
            };
        }
        acc
    }
}

/// Whether `a` and `b` are judgmentally equal in `ctx`, within `fuel` steps.
pub fn bounded_convert(ctx: &Ctx, a: &Tm, b: &Tm, fuel: u32) -> ConvVerdict {
    let mut c = Conv::new(fuel);
    let ty = c.infer(ctx, a).or_else(|| c.infer(ctx, b));
    c.tm(ctx, a, b, ty.as_ref())
}

/// As [`bounded_convert`], at a known type.
pub fn bounded_convert_at(ctx: &Ctx, a: &Tm, b: &Tm, ty: &Tp, fuel: u32) -> ConvVerdict {
    Conv::new(fuel).tm(ctx, a, b, Some(ty))
}

pub fn bounded_convert_tp(ctx: &Ctx, a: &Tp, b: &Tp, fuel: u32) -> ConvVerdict {
    Conv::new(fuel).tp(ctx, a, b)
}

/// Weak head form of a raw term, within `fuel` steps.
pub fn whnf(ctx: &Ctx, t: &Tm, fuel: u32) -> Tm {
    Conv::new(fuel).whnf(ctx, t)
}

/// Weak head form of a raw type. Glue types whose cofibration holds are
/// replaced by their fiber when `collapse_glue` is set.
pub fn whnf_tp(ctx: &Ctx, t: &Tp, fuel: u32, collapse_glue: bool) -> Tp {
    Conv::new(fuel).whnf_tp(ctx, t, collapse_glue)
}

/// The type of a raw term when it can be read off without checking.
pub fn infer(ctx: &Ctx, t: &Tm, fuel: u32) -> Option<Tp> {
    Conv::new(fuel).infer(ctx, t)
}

/// The type given to binders introduced while comparing terms whose type is
/// not known. It never reduces, so nothing is learned from it.
fn opaque_tp() -> Tp {
    Tp::Split(Vec::new())
}

struct Conv {
    left: u32,
    exhausted: bool,
}

impl Conv {
    fn new(fuel: u32) -> Self {
        Conv { left: fuel, exhausted: false }
    }

    fn tick(&mut self) -> bool {
        if self.left == 0 {
            self.exhausted = true;
            false
        } else {
            self.left -= 1;
            true
        }
    }

    fn holds(ctx: &Ctx, phi: &Cof) -> bool {
        entails(&ctx.cof_hyps(), phi)
    }

    /// Runs `f` on each piece of the canonical decomposition of the
    /// context's hypotheses, with the context contracted along it.
    fn cover(
        &mut self,
        ctx: &Ctx,
        mut f: impl FnMut(&mut Self, &Ctx, &Subst) -> ConvVerdict,
    ) -> ConvVerdict {
        let branches = dnf(&Cof::Meet(ctx.cof_hyps()));
        let mut vs = Vec::with_capacity(branches.len());
        for b in &branches {
            let (c, map) = ctx.contract(b);
            let v = f(self, &c, &Subst::dims(map));
            if v == No {
                return No;
            }
            vs.push(v);
        }
        ConvVerdict::cover(vs)
    }

    fn avoid(ctx: &Ctx, a: &Tm, b: &Tm) -> BTreeSet<Name> {
        let mut s = ctx.names();
        s.extend(free_tm(a));
        s.extend(free_tm(b));
        s
    }

    fn whnf_tp(&mut self, ctx: &Ctx, t: &Tp, collapse_glue: bool) -> Tp {
        let mut t = t.clone();
        loop {
            if !self.tick() {
                return t;
            }
            t = match t {
                Tp::El(c) => match self.whnf(ctx, &c) {
                    Tm::Code(a) => *a,
                    c => return Tp::El(Box::new(c)),
                },
                Tp::Split(bs) => match bs.iter().find(|(phi, _)| Self::holds(ctx, phi)) {
                    Some((_, a)) => a.clone(),
                    None => return Tp::Split(bs),
                },
                Tp::Glue { cof, fiber, .. } if collapse_glue && Self::holds(ctx, &cof) => *fiber,
                other => return other,
            };
        }
    }

    fn whnf(&mut self, ctx: &Ctx, t: &Tm) -> Tm {
        let mut t = t.clone();
        loop {
            if !self.tick() {
                return t;
            }
            t = match t {
                Tm::App(f, a) => match self.whnf(ctx, &f) {
                    Tm::Lam(x, body) => subst_tm(&body, &x, &a),
                    f => return Tm::App(Box::new(f), a),
                },
                Tm::Fst(p) => match self.whnf(ctx, &p) {
                    Tm::Pair(a, _) => *a,
                    p => return Tm::Fst(Box::new(p)),
                },
                Tm::Snd(p) => match self.whnf(ctx, &p) {
                    Tm::Pair(_, b) => *b,
                    p => return Tm::Snd(Box::new(p)),
                },
                Tm::If { var, motive, scrut, on_true, on_false } => match self.whnf(ctx, &scrut) {
                    Tm::True => *on_true,
                    Tm::False => *on_false,
                    s => {
                        return Tm::If { var, motive, scrut: Box::new(s), on_true, on_false };
                    }
                },
                Tm::PApp(p, r) => {
                    let p = self.whnf(ctx, &p);
                    if let Tm::PLam(i, body) = &p {
                        subst_i_tm(body, i, &r)
                    } else if r.is_endpoint() {
                        match self.infer(ctx, &p).map(|ty| self.whnf_tp(ctx, &ty, true)) {
                            Some(Tp::Path(_, _, t0, t1)) => {
                                if r == IExpr::Zero {
                                    *t0
                                } else {
                                    *t1
                                }
                            }
                            _ => return Tm::PApp(Box::new(p), r),
                        }
                    } else {
                        return Tm::PApp(Box::new(p), r);
                    }
                }
                Tm::Loop(r) if r.is_endpoint() => Tm::Base,
                Tm::S1Elim { var, motive, scrut, base, dim, loop_case } => {
                    match self.whnf(ctx, &scrut) {
                        Tm::Base => *base,
                        Tm::Loop(r) => subst_i_tm(&loop_case, &dim, &r),
                        s => {
                            return Tm::S1Elim { var, motive, scrut: Box::new(s), base, dim, loop_case };
                        }
                    }
                }
                Tm::HComp { tp, src, dst, cof, var, tube } => {
                    let covered = Cof::join([Cof::eq(src.clone(), dst.clone()), cof.clone()]);
                    if Self::holds(ctx, &covered) {
                        subst_i_tm(&tube, &var, &dst)
                    } else if let Some(k) = self.strict_bool_cap(ctx, &tp, &src, &cof, &var, &tube) {
                        k
                    } else {
                        return Tm::HComp { tp, src, dst, cof, var, tube };
                    }
                }
                Tm::Coe { var, tp, src, dst, arg } => {
                    let closed = matches!(
                        self.whnf_tp(&ctx.with_dim(var.clone()), &tp, false),
                        Tp::Bool | Tp::WBool | Tp::S1 | Tp::U
                    );
                    // Lines through parameter-free types are constant, so
                    // coercion along them does nothing.
                    if closed || src == dst || Self::holds(ctx, &Cof::eq(src.clone(), dst.clone())) {
                        *arg
                    } else {
                        return Tm::Coe { var, tp, src, dst, arg };
                    }
                }
                Tm::GlueIntro(phi, b, a) => {
                    if Self::holds(ctx, &phi) {
                        *a
                    } else {
                        return Tm::GlueIntro(phi, b, a);
                    }
                }
                Tm::Unglue(g) => {
                    let g = self.whnf(ctx, &g);
                    if let Tm::GlueIntro(_, b, _) = g {
                        *b
                    } else {
                        let ty = self.infer(ctx, &g).map(|ty| self.whnf_tp(ctx, &ty, false));
                        match ty {
                            Some(Tp::Glue { cof, equiv, .. }) if Self::holds(ctx, &cof) => {
                                Tm::apply_equiv(*equiv, g)
                            }
                            _ => return Tm::Unglue(Box::new(g)),
                        }
                    }
                }
                Tm::Code(a) => match self.whnf_tp(ctx, &a, true) {
                    Tp::El(c) => *c,
                    _ => return Tm::Code(a),
                },
                Tm::Split(bs) => match bs.iter().find(|(phi, _)| Self::holds(ctx, phi)) {
                    Some((_, u)) => u.clone(),
                    None => return Tm::Split(bs),
                },
                other => return other,
            };
        }
    }

    /// Strict booleans: a composition of a constant constructor is that
    /// constructor.
    fn strict_bool_cap(
        &mut self,
        ctx: &Ctx,
        tp: &Tp,
        src: &IExpr,
        cof: &Cof,
        var: &Name,
        tube: &Tm,
    ) -> Option<Tm> {
        if self.whnf_tp(ctx, tp, true) != Tp::Bool {
            return None;
        }
        let inner = ctx
            .with_dim(var.clone())
            .with_cof(Cof::join([Cof::eq(IExpr::Var(var.clone()), src.clone()), cof.clone()]));
        self.constant_bool(&inner, tube)
    }

    fn constant_bool(&mut self, ctx: &Ctx, t: &Tm) -> Option<Tm> {
        match self.whnf(ctx, t) {
            k @ (Tm::True | Tm::False) => Some(k),
            Tm::Split(bs) if !bs.is_empty() => {
                let mut out = None;
                for (phi, u) in &bs {
                    let k = self.constant_bool(&ctx.with_cof(phi.clone()), u)?;
                    if out.as_ref().is_some_and(|o| *o != k) {
                        return None;
                    }
                    out = Some(k);
                }
                out
            }
            _ => None,
        }
    }

    fn infer(&mut self, ctx: &Ctx, t: &Tm) -> Option<Tp> {
        if !self.tick() {
            return None;
        }
        match t {
            Tm::Var(x) => ctx.lookup(x).cloned(),
            Tm::App(f, a) => {
                let ft = self.infer(ctx, f)?;
                match self.whnf_tp(ctx, &ft, true) {
                    Tp::Pi(x, _, b) => Some(subst_tp(&b, &x, a)),
                    _ => None,
                }
            }
            Tm::Fst(p) => match self.infer(ctx, p).map(|ty| self.whnf_tp(ctx, &ty, true))? {
                Tp::Sigma(_, a, _) => Some(*a),
                _ => None,
            },
            Tm::Snd(p) => match self.infer(ctx, p).map(|ty| self.whnf_tp(ctx, &ty, true))? {
                Tp::Sigma(x, _, b) => Some(subst_tp(&b, &x, &Tm::Fst(p.clone()))),
                _ => None,
            },
            Tm::PApp(p, r) => match self.infer(ctx, p).map(|ty| self.whnf_tp(ctx, &ty, true))? {
                Tp::Path(i, a, _, _) => Some(subst_i_tp(&a, &i, r)),
                _ => None,
            },
            Tm::If { var, motive, scrut, .. } | Tm::S1Elim { var, motive, scrut, .. } => {
                Some(subst_tp(motive, var, scrut))
            }
            Tm::Unglue(g) => match self.infer(ctx, g).map(|ty| self.whnf_tp(ctx, &ty, false))? {
                Tp::Glue { base, .. } => Some(*base),
                _ => None,
            },
            Tm::HComp { tp, .. } => Some((**tp).clone()),
            Tm::Coe { var, tp, dst, .. } => Some(subst_i_tp(tp, var, dst)),
            Tm::Base | Tm::Loop(_) => Some(Tp::S1),
            Tm::Code(_) => Some(Tp::U),
            _ => None,
        }
    }

    fn tm(&mut self, ctx: &Ctx, a: &Tm, b: &Tm, ty: Option<&Tp>) -> ConvVerdict {
        if !self.tick() {
            return OUT_OF_FUEL;
        }
        if ctx.has_cofs() {
            return self.cover(ctx, |c, cx, s| {
                let ty = ty.map(|t| s.tp(t));
                c.tm(cx, &s.tm(a), &s.tm(b), ty.as_ref())
            });
        }
        if alpha_eq_tm(a, b) {
            return Yes;
        }
        let a = self.whnf(ctx, a);
        let b = self.whnf(ctx, b);
        if alpha_eq_tm(&a, &b) {
            return Yes;
        }
        if self.exhausted {
            return OUT_OF_FUEL;
        }
        let ty = ty.map(|t| self.whnf_tp(ctx, t, true));
        self.tm_whnf(ctx, &a, &b, ty.as_ref())
    }

    fn pi_parts(ty: Option<&Tp>, z: &Name) -> (Tp, Option<Tp>) {
        match ty {
            Some(Tp::Pi(x, a, b)) => ((**a).clone(), Some(subst_tp(b, x, &Tm::Var(z.clone())))),
            _ => (opaque_tp(), None),
        }
    }

    fn path_line(ty: Option<&Tp>, k: &Name) -> Option<Tp> {
        match ty {
            Some(Tp::Path(i, a, _, _)) => Some(subst_i_tp(a, i, &IExpr::Var(k.clone()))),
            _ => None,
        }
    }

    fn tm_whnf(&mut self, ctx: &Ctx, a: &Tm, b: &Tm, ty: Option<&Tp>) -> ConvVerdict {
        let avoid = || Self::avoid(ctx, a, b);
        match (a, b) {
            (Tm::Split(bs), _) => {
                let vs: Vec<_> = bs
                    .iter()
                    .map(|(phi, u)| self.tm(&ctx.with_cof(phi.clone()), u, b, ty))
                    .collect();
                ConvVerdict::cover(vs)
            }
            (_, Tm::Split(_)) => self.tm_whnf(ctx, b, a, ty),
            (Tm::Lam(x, s), Tm::Lam(y, t)) => {
                let z = x.fresh_in(&avoid());
                let (dom, cod) = Self::pi_parts(ty, &z);
                let zt = Tm::Var(z.clone());
                self.tm(&ctx.with_tm(z.clone(), dom), &subst_tm(s, x, &zt), &subst_tm(t, y, &zt), cod.as_ref())
            }
            (Tm::Lam(x, s), other) | (other, Tm::Lam(x, s)) => {
                let z = x.fresh_in(&avoid());
                let (dom, cod) = Self::pi_parts(ty, &z);
                let zt = Tm::Var(z.clone());
                let applied = Tm::app(other.clone(), zt.clone());
                self.tm(&ctx.with_tm(z.clone(), dom), &subst_tm(s, x, &zt), &applied, cod.as_ref())
            }
            (Tm::Pair(a1, a2), Tm::Pair(b1, b2)) => {
                let (ta, tb) = match ty {
                    Some(Tp::Sigma(x, ta, tb)) => (Some((**ta).clone()), Some(subst_tp(tb, x, a1))),
                    _ => (None, None),
                };
                self.tm(ctx, a1, b1, ta.as_ref()).and(|| self.tm(ctx, a2, b2, tb.as_ref()))
            }
            (Tm::Pair(a1, a2), other) | (other, Tm::Pair(a1, a2)) => {
                let (ta, tb) = match ty {
                    Some(Tp::Sigma(x, ta, tb)) => (Some((**ta).clone()), Some(subst_tp(tb, x, a1))),
                    _ => (None, None),
                };
                let o1 = Tm::Fst(Box::new(other.clone()));
                let o2 = Tm::Snd(Box::new(other.clone()));
                self.tm(ctx, a1, &o1, ta.as_ref()).and(|| self.tm(ctx, a2, &o2, tb.as_ref()))
            }
            (Tm::PLam(i, s), Tm::PLam(j, t)) => {
                let k = i.fresh_in(&avoid());
                let kv = IExpr::Var(k.clone());
                let line = Self::path_line(ty, &k);
                self.tm(&ctx.with_dim(k.clone()), &subst_i_tm(s, i, &kv), &subst_i_tm(t, j, &kv), line.as_ref())
            }
            (Tm::PLam(i, s), other) | (other, Tm::PLam(i, s)) => {
                let k = i.fresh_in(&avoid());
                let kv = IExpr::Var(k.clone());
                let line = Self::path_line(ty, &k);
                let applied = Tm::PApp(Box::new(other.clone()), kv.clone());
                self.tm(&ctx.with_dim(k.clone()), &subst_i_tm(s, i, &kv), &applied, line.as_ref())
            }
            (Tm::True, Tm::True) | (Tm::False, Tm::False) | (Tm::Base, Tm::Base) => Yes,
            (Tm::True, Tm::False) | (Tm::False, Tm::True) => No,
            (Tm::Loop(r), Tm::Loop(s)) => {
                if r == s {
                    Yes
                } else {
                    No
                }
            }
            (Tm::Base, Tm::Loop(_)) | (Tm::Loop(_), Tm::Base) => No,
            (Tm::Code(x), Tm::Code(y)) => self.tp(ctx, x, y),
            (Tm::GlueIntro(phi, b1, a1), Tm::GlueIntro(psi, b2, a2)) => {
                if !cof_eq(&ctx.cof_hyps(), phi, psi) {
                    return UNORIENTED;
                }
                let under = ctx.with_cof(phi.clone());
                self.tm(ctx, b1, b2, None).and_weak(|| self.tm(&under, a1, a2, None))
            }
            _ => self.spine(ctx, a, b),
        }
    }

    /// Congruence on stuck terms.
    fn spine(&mut self, ctx: &Ctx, a: &Tm, b: &Tm) -> ConvVerdict {
        match (a, b) {
            (Tm::Var(x), Tm::Var(y)) if x == y => Yes,
            (Tm::App(f, x), Tm::App(g, y)) => {
                let dom = self.infer(ctx, f).map(|t| self.whnf_tp(ctx, &t, true));
                let dom = match dom {
                    Some(Tp::Pi(_, d, _)) => Some(*d),
                    _ => None,
                };
                self.tm(ctx, f, g, None).and_weak(|| self.tm(ctx, x, y, dom.as_ref()))
            }
            (Tm::Fst(p), Tm::Fst(q)) | (Tm::Snd(p), Tm::Snd(q)) | (Tm::Unglue(p), Tm::Unglue(q)) => {
                self.tm(ctx, p, q, None).and_weak(|| Yes)
            }
            (Tm::PApp(p, r), Tm::PApp(q, s)) if r == s => self.tm(ctx, p, q, None).and_weak(|| Yes),
            (
                Tm::If { var: x, motive: m1, scrut: s1, on_true: t1, on_false: f1 },
                Tm::If { var: y, motive: m2, scrut: s2, on_true: t2, on_false: f2 },
            ) => {
                let z = x.fresh_in(&Self::avoid(ctx, a, b));
                let zt = Tm::Var(z.clone());
                let m1z = subst_tp(m1, x, &zt);
                let m2z = subst_tp(m2, y, &zt);
                self.tp(&ctx.with_tm(z, Tp::Bool), &m1z, &m2z)
                    .and_weak(|| self.tm(ctx, s1, s2, Some(&Tp::Bool)))
                    .and_weak(|| self.tm(ctx, t1, t2, None))
                    .and_weak(|| self.tm(ctx, f1, f2, None))
            }
            (
                Tm::S1Elim { var: x, motive: m1, scrut: s1, base: b1, dim: d1, loop_case: l1 },
                Tm::S1Elim { var: y, motive: m2, scrut: s2, base: b2, dim: d2, loop_case: l2 },
            ) => {
                let avoid = Self::avoid(ctx, a, b);
                let z = x.fresh_in(&avoid);
                let k = d1.fresh_in(&avoid);
                let zt = Tm::Var(z.clone());
                let kv = IExpr::Var(k.clone());
                let m1z = subst_tp(m1, x, &zt);
                let m2z = subst_tp(m2, y, &zt);
                self.tp(&ctx.with_tm(z, Tp::S1), &m1z, &m2z)
                    .and_weak(|| self.tm(ctx, s1, s2, Some(&Tp::S1)))
                    .and_weak(|| self.tm(ctx, b1, b2, None))
                    .and_weak(|| {
                        self.tm(&ctx.with_dim(k.clone()), &subst_i_tm(l1, d1, &kv), &subst_i_tm(l2, d2, &kv), None)
                    })
            }
            (
                Tm::HComp { tp: t1, src: r1, dst: s1, cof: c1, var: v1, tube: u1 },
                Tm::HComp { tp: t2, src: r2, dst: s2, cof: c2, var: v2, tube: u2 },
            ) if r1 == r2 && s1 == s2 && cof_eq(&ctx.cof_hyps(), c1, c2) => {
                let k = v1.fresh_in(&Self::avoid(ctx, a, b));
                let kv = IExpr::Var(k.clone());
                let under = ctx
                    .with_dim(k.clone())
                    .with_cof(Cof::join([Cof::eq(kv.clone(), r1.clone()), c1.clone()]));
                self.tp(ctx, t1, t2).and_weak(|| {
                    self.tm(&under, &subst_i_tm(u1, v1, &kv), &subst_i_tm(u2, v2, &kv), Some(t1))
                })
            }
            (
                Tm::Coe { var: v1, tp: t1, src: r1, dst: s1, arg: x1 },
                Tm::Coe { var: v2, tp: t2, src: r2, dst: s2, arg: x2 },
            ) if r1 == r2 && s1 == s2 => {
                let k = v1.fresh_in(&Self::avoid(ctx, a, b));
                let kv = IExpr::Var(k.clone());
                let line1 = subst_i_tp(t1, v1, &kv);
                let line2 = subst_i_tp(t2, v2, &kv);
                let src_tp = subst_i_tp(t1, v1, r1);
                self.tp(&ctx.with_dim(k), &line1, &line2)
                    .and_weak(|| self.tm(ctx, x1, x2, Some(&src_tp)))
            }
            _ => UNORIENTED,
        }
    }

    fn tp(&mut self, ctx: &Ctx, a: &Tp, b: &Tp) -> ConvVerdict {
        if !self.tick() {
            return OUT_OF_FUEL;
        }
        if ctx.has_cofs() {
            return self.cover(ctx, |c, cx, s| c.tp(cx, &s.tp(a), &s.tp(b)));
        }
        if alpha_eq_tp(a, b) {
            return Yes;
        }
        let a = self.whnf_tp(ctx, a, true);
        let b = self.whnf_tp(ctx, b, true);
        if alpha_eq_tp(&a, &b) {
            return Yes;
        }
        if self.exhausted {
            return OUT_OF_FUEL;
        }
        let fresh = |x: &Name| {
            let mut s = ctx.names();
            s.extend(free_tp(&a));
            s.extend(free_tp(&b));
            x.fresh_in(&s)
        };
        match (&a, &b) {
            (Tp::Split(bs), _) => {
                let vs: Vec<_> =
                    bs.iter().map(|(phi, u)| self.tp(&ctx.with_cof(phi.clone()), u, &b)).collect();
                ConvVerdict::cover(vs)
            }
            (_, Tp::Split(_)) => self.tp(ctx, &b, &a),
            (Tp::Pi(x, a1, b1), Tp::Pi(y, a2, b2)) | (Tp::Sigma(x, a1, b1), Tp::Sigma(y, a2, b2)) => {
                let z = fresh(x);
                let zt = Tm::Var(z.clone());
                let (b1z, b2z) = (subst_tp(b1, x, &zt), subst_tp(b2, y, &zt));
                self.tp(ctx, a1, a2).and(|| self.tp(&ctx.with_tm(z, (**a1).clone()), &b1z, &b2z))
            }
            (Tp::El(x), Tp::El(y)) => self.tm(ctx, x, y, Some(&Tp::U)).and_weak(|| Yes),
            (Tp::El(_), _) | (_, Tp::El(_)) => UNORIENTED,
            (Tp::Path(i, a1, x0, x1), Tp::Path(j, a2, y0, y1)) => {
                let k = fresh(i);
                let kv = IExpr::Var(k.clone());
                let line = subst_i_tp(a1, i, &kv);
                let v = self.tp(&ctx.with_dim(k), &line, &subst_i_tp(a2, j, &kv));
                let a0 = subst_i_tp(a1, i, &IExpr::Zero);
                let a1t = subst_i_tp(a1, i, &IExpr::One);
                v.and(|| self.tm(ctx, x0, y0, Some(&a0))).and(|| self.tm(ctx, x1, y1, Some(&a1t)))
            }
            (
                Tp::Glue { cof: c1, base: b1, fiber: f1, equiv: e1 },
                Tp::Glue { cof: c2, base: b2, fiber: f2, equiv: e2 },
            ) => {
                if !cof_eq(&ctx.cof_hyps(), c1, c2) {
                    return UNORIENTED;
                }
                let under = ctx.with_cof(c1.clone());
                self.tp(ctx, b1, b2)
                    .and_weak(|| self.tp(&under, f1, f2))
                    .and_weak(|| self.tm(&under, e1, e2, None))
            }
            (Tp::Glue { .. }, _) | (_, Tp::Glue { .. }) => UNORIENTED,
            _ => {
                if std::mem::discriminant(&a) == std::mem::discriminant(&b) {
                    Yes
                } else {
                    No
                }
            }
        }
    }
}
