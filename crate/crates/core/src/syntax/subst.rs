//! Free names, capture-avoiding substitution, and α-equivalence on raw syntax.
//!
//! Binders are named. Term variables and interval variables are
//! distinguished by syntactic position, but freshness is always checked
//! against both, so a renamed binder never collides with either kind.

use std::collections::{BTreeMap, BTreeSet};

use crate::cof::{Cof, DimMap, IExpr};
use crate::name::Name;
use crate::syntax::ast::{Tm, Tp};

fn fv_iexpr(e: &IExpr, bound: &[Name], out: &mut BTreeSet<Name>) {
    if let IExpr::Var(n) = e {
        if !bound.contains(n) {
            out.insert(n.clone());
        }
    }
}

fn fv_cof(c: &Cof, bound: &[Name], out: &mut BTreeSet<Name>) {
    for n in c.dims() {
        if !bound.contains(&n) {
            out.insert(n);
        }
    }
}

fn fv_tm_in(t: &Tm, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match t {
        Tm::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Tm::Lam(x, b) | Tm::PLam(x, b) => {
            bound.push(x.clone());
            fv_tm_in(b, bound, out);
            bound.pop();
        }
        Tm::App(a, b) | Tm::Pair(a, b) => {
            fv_tm_in(a, bound, out);
            fv_tm_in(b, bound, out);
        }
        Tm::Fst(a) | Tm::Snd(a) | Tm::Unglue(a) => fv_tm_in(a, bound, out),
        Tm::True | Tm::False | Tm::Base => {}
        Tm::If { var, motive, scrut, on_true, on_false } => {
            bound.push(var.clone());
            fv_tp_in(motive, bound, out);
            bound.pop();
            fv_tm_in(scrut, bound, out);
            fv_tm_in(on_true, bound, out);
            fv_tm_in(on_false, bound, out);
        }
        Tm::Code(a) => fv_tp_in(a, bound, out),
        Tm::PApp(p, r) => {
            fv_tm_in(p, bound, out);
            fv_iexpr(r, bound, out);
        }
        Tm::HComp { tp, src, dst, cof, var, tube } => {
            fv_tp_in(tp, bound, out);
            fv_iexpr(src, bound, out);
            fv_iexpr(dst, bound, out);
            fv_cof(cof, bound, out);
            bound.push(var.clone());
            fv_tm_in(tube, bound, out);
            bound.pop();
        }
        Tm::Coe { var, tp, src, dst, arg } => {
            bound.push(var.clone());
            fv_tp_in(tp, bound, out);
            bound.pop();
            fv_iexpr(src, bound, out);
            fv_iexpr(dst, bound, out);
            fv_tm_in(arg, bound, out);
        }
        Tm::GlueIntro(phi, b, a) => {
            fv_cof(phi, bound, out);
            fv_tm_in(b, bound, out);
            fv_tm_in(a, bound, out);
        }
        Tm::Loop(r) => fv_iexpr(r, bound, out),
        Tm::S1Elim { var, motive, scrut, base, dim, loop_case } => {
            bound.push(var.clone());
            fv_tp_in(motive, bound, out);
            bound.pop();
            fv_tm_in(scrut, bound, out);
            fv_tm_in(base, bound, out);
            bound.push(dim.clone());
            fv_tm_in(loop_case, bound, out);
            bound.pop();
        }
        Tm::Split(bs) => {
            for (phi, t) in bs {
                fv_cof(phi, bound, out);
                fv_tm_in(t, bound, out);
            }
        }
    }
}

fn fv_tp_in(t: &Tp, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match t {
        Tp::Pi(x, a, b) | Tp::Sigma(x, a, b) => {
            fv_tp_in(a, bound, out);
            bound.push(x.clone());
            fv_tp_in(b, bound, out);
            bound.pop();
        }
        Tp::Bool | Tp::WBool | Tp::S1 | Tp::U => {}
        Tp::El(c) => fv_tm_in(c, bound, out),
        Tp::Path(i, a, t0, t1) => {
            bound.push(i.clone());
            fv_tp_in(a, bound, out);
            bound.pop();
            fv_tm_in(t0, bound, out);
            fv_tm_in(t1, bound, out);
        }
        Tp::Glue { cof, base, fiber, equiv } => {
            fv_cof(cof, bound, out);
            fv_tp_in(base, bound, out);
            fv_tp_in(fiber, bound, out);
            fv_tm_in(equiv, bound, out);
        }
        Tp::Split(bs) => {
            for (phi, a) in bs {
                fv_cof(phi, bound, out);
                fv_tp_in(a, bound, out);
            }
        }
    }
}

/// Free names (term and interval) of a raw term.
pub fn free_tm(t: &Tm) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    fv_tm_in(t, &mut Vec::new(), &mut out);
    out
}

/// Free names (term and interval) of a raw type.
pub fn free_tp(t: &Tp) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    fv_tp_in(t, &mut Vec::new(), &mut out);
    out
}

/// A simultaneous, capture-avoiding substitution of terms for term variables
/// and interval expressions for interval variables.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    tms: BTreeMap<Name, Tm>,
    dims: DimMap,
    range: BTreeSet<Name>,
}

impl Subst {
    pub fn new(tms: BTreeMap<Name, Tm>, dims: DimMap) -> Self {
        let mut range = BTreeSet::new();
        for t in tms.values() {
            range.extend(free_tm(t));
        }
        for e in dims.values() {
            if let IExpr::Var(n) = e {
                range.insert(n.clone());
            }
        }
        Subst { tms, dims, range }
    }

    pub fn tm_var(x: Name, u: Tm) -> Self {
        Subst::new(BTreeMap::from([(x, u)]), DimMap::new())
    }

    pub fn dim(i: Name, r: IExpr) -> Self {
        Subst::new(BTreeMap::new(), DimMap::from([(i, r)]))
    }

    pub fn dims(map: DimMap) -> Self {
        Subst::new(BTreeMap::new(), map)
    }

    pub fn is_empty(&self) -> bool {
        self.tms.is_empty() && self.dims.is_empty()
    }

    fn binds(&self, x: &Name) -> bool {
        self.tms.contains_key(x) || self.dims.contains_key(x)
    }

    /// Adjusts the substitution for a binder `x` whose scope has free names
    /// `body_fv`, returning the (possibly renamed) binder.
    fn under(&self, x: &Name, body_fv: impl FnOnce() -> BTreeSet<Name>, is_dim: bool) -> (Name, Subst) {
        if !self.binds(x) && !self.range.contains(x) {
            return (x.clone(), self.clone());
        }
        let mut inner = self.clone();
        inner.tms.remove(x);
        inner.dims.remove(x);
        if !self.range.contains(x) {
            return (x.clone(), inner);
        }
        let fv = body_fv();
        let fresh = x.fresh_against(|n| {
            self.range.contains(n) || fv.contains(n) || self.binds(n)
        });
        if is_dim {
            inner.dims.insert(x.clone(), IExpr::Var(fresh.clone()));
        } else {
            inner.tms.insert(x.clone(), Tm::Var(fresh.clone()));
        }
        inner.range.insert(fresh.clone());
        (fresh, inner)
    }

    pub fn iexpr(&self, e: &IExpr) -> IExpr {
        e.subst_map(&self.dims)
    }

    pub fn cof(&self, c: &Cof) -> Cof {
        c.subst_map(&self.dims)
    }

    pub fn tm(&self, t: &Tm) -> Tm {
        if self.is_empty() {
            return t.clone();
        }
        let b = |x: &Tm| Box::new(self.tm(x));
        match t {
            Tm::Var(x) => self.tms.get(x).cloned().unwrap_or_else(|| t.clone()),
            Tm::Lam(x, body) => {
                let (x2, s) = self.under(x, || free_tm(body), false);
                Tm::Lam(x2, Box::new(s.tm(body)))
            }
            Tm::PLam(i, body) => {
                let (i2, s) = self.under(i, || free_tm(body), true);
                Tm::PLam(i2, Box::new(s.tm(body)))
            }
            Tm::App(f, a) => Tm::App(b(f), b(a)),
            Tm::Pair(x, y) => Tm::Pair(b(x), b(y)),
            Tm::Fst(p) => Tm::Fst(b(p)),
            Tm::Snd(p) => Tm::Snd(b(p)),
            Tm::Unglue(g) => Tm::Unglue(b(g)),
            Tm::True => Tm::True,
            Tm::False => Tm::False,
            Tm::Base => Tm::Base,
            Tm::If { var, motive, scrut, on_true, on_false } => {
                let (v2, s) = self.under(var, || free_tp(motive), false);
                Tm::If {
                    var: v2,
                    motive: Box::new(s.tp(motive)),
                    scrut: b(scrut),
                    on_true: b(on_true),
                    on_false: b(on_false),
                }
            }
            Tm::Code(a) => Tm::Code(Box::new(self.tp(a))),
            Tm::PApp(p, r) => Tm::PApp(b(p), self.iexpr(r)),
            Tm::HComp { tp, src, dst, cof, var, tube } => {
                let (v2, s) = self.under(var, || free_tm(tube), true);
                Tm::HComp {
                    tp: Box::new(self.tp(tp)),
                    src: self.iexpr(src),
                    dst: self.iexpr(dst),
                    cof: self.cof(cof),
                    var: v2,
                    tube: Box::new(s.tm(tube)),
                }
            }
            Tm::Coe { var, tp, src, dst, arg } => {
                let (v2, s) = self.under(var, || free_tp(tp), true);
                Tm::Coe {
                    var: v2,
                    tp: Box::new(s.tp(tp)),
                    src: self.iexpr(src),
                    dst: self.iexpr(dst),
                    arg: b(arg),
                }
            }
            Tm::GlueIntro(phi, x, y) => Tm::GlueIntro(self.cof(phi), b(x), b(y)),
            Tm::Loop(r) => Tm::Loop(self.iexpr(r)),
            Tm::S1Elim { var, motive, scrut, base, dim, loop_case } => {
                let (v2, s) = self.under(var, || free_tp(motive), false);
                let (d2, s2) = self.under(dim, || free_tm(loop_case), true);
                Tm::S1Elim {
                    var: v2,
                    motive: Box::new(s.tp(motive)),
                    scrut: b(scrut),
                    base: b(base),
                    dim: d2,
                    loop_case: Box::new(s2.tm(loop_case)),
                }
            }
            Tm::Split(bs) => {
                Tm::Split(bs.iter().map(|(phi, t)| (self.cof(phi), self.tm(t))).collect())
            }
        }
    }

    pub fn tp(&self, t: &Tp) -> Tp {
        if self.is_empty() {
            return t.clone();
        }
        match t {
            Tp::Pi(x, a, body) | Tp::Sigma(x, a, body) => {
                let (x2, s) = self.under(x, || free_tp(body), false);
                let a2 = Box::new(self.tp(a));
                let b2 = Box::new(s.tp(body));
                if matches!(t, Tp::Pi(..)) {
                    Tp::Pi(x2, a2, b2)
                } else {
                    Tp::Sigma(x2, a2, b2)
                }
            }
            Tp::Bool | Tp::WBool | Tp::S1 | Tp::U => t.clone(),
            Tp::El(c) => Tp::El(Box::new(self.tm(c))),
            Tp::Path(i, a, t0, t1) => {
                let (i2, s) = self.under(i, || free_tp(a), true);
                Tp::Path(i2, Box::new(s.tp(a)), Box::new(self.tm(t0)), Box::new(self.tm(t1)))
            }
            Tp::Glue { cof, base, fiber, equiv } => Tp::Glue {
                cof: self.cof(cof),
                base: Box::new(self.tp(base)),
                fiber: Box::new(self.tp(fiber)),
                equiv: Box::new(self.tm(equiv)),
            },
            Tp::Split(bs) => {
                Tp::Split(bs.iter().map(|(phi, a)| (self.cof(phi), self.tp(a))).collect())
            }
        }
    }
}

/// `t[u/x]`.
pub fn subst_tm(t: &Tm, x: &Name, u: &Tm) -> Tm {
    Subst::tm_var(x.clone(), u.clone()).tm(t)
}

/// `t[r/i]`. Raw substitution does not reduce.
pub fn subst_i_tm(t: &Tm, i: &Name, r: &IExpr) -> Tm {
    Subst::dim(i.clone(), r.clone()).tm(t)
}

pub fn subst_tp(t: &Tp, x: &Name, u: &Tm) -> Tp {
    Subst::tm_var(x.clone(), u.clone()).tp(t)
}

pub fn subst_i_tp(t: &Tp, i: &Name, r: &IExpr) -> Tp {
    Subst::dim(i.clone(), r.clone()).tp(t)
}

/// Pairs of binders in scope, innermost last.
#[derive(Default)]
struct AlphaEnv {
    pairs: Vec<(Name, Name)>,
}

impl AlphaEnv {
    fn names(&self, x: &Name, y: &Name) -> bool {
        for (l, r) in self.pairs.iter().rev() {
            if l == x || r == y {
                return l == x && r == y;
            }
        }
        x == y
    }

    fn iexpr(&self, a: &IExpr, b: &IExpr) -> bool {
        match (a, b) {
            (IExpr::Var(x), IExpr::Var(y)) => self.names(x, y),
            _ => a == b,
        }
    }

    fn cof(&self, a: &Cof, b: &Cof) -> bool {
        match (a, b) {
            (Cof::Eq(a1, a2), Cof::Eq(b1, b2)) => self.iexpr(a1, b1) && self.iexpr(a2, b2),
            (Cof::Meet(xs), Cof::Meet(ys)) | (Cof::Join(xs), Cof::Join(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.cof(x, y))
            }
            _ => false,
        }
    }

    fn bind<R>(&mut self, x: &Name, y: &Name, f: impl FnOnce(&mut Self) -> R) -> R {
        self.pairs.push((x.clone(), y.clone()));
        let r = f(self);
        self.pairs.pop();
        r
    }

    fn tm(&mut self, a: &Tm, b: &Tm) -> bool {
        match (a, b) {
            (Tm::Var(x), Tm::Var(y)) => self.names(x, y),
            (Tm::Lam(x, s), Tm::Lam(y, t)) | (Tm::PLam(x, s), Tm::PLam(y, t)) => {
                self.bind(x, y, |e| e.tm(s, t))
            }
            (Tm::App(f1, a1), Tm::App(f2, a2)) | (Tm::Pair(f1, a1), Tm::Pair(f2, a2)) => {
                self.tm(f1, f2) && self.tm(a1, a2)
            }
            (Tm::Fst(x), Tm::Fst(y)) | (Tm::Snd(x), Tm::Snd(y)) | (Tm::Unglue(x), Tm::Unglue(y)) => {
                self.tm(x, y)
            }
            (Tm::True, Tm::True) | (Tm::False, Tm::False) | (Tm::Base, Tm::Base) => true,
            (
                Tm::If { var: v1, motive: m1, scrut: s1, on_true: t1, on_false: f1 },
                Tm::If { var: v2, motive: m2, scrut: s2, on_true: t2, on_false: f2 },
            ) => {
                self.bind(v1, v2, |e| e.tp(m1, m2))
                    && self.tm(s1, s2)
                    && self.tm(t1, t2)
                    && self.tm(f1, f2)
            }
            (Tm::Code(x), Tm::Code(y)) => self.tp(x, y),
            (Tm::PApp(p, r), Tm::PApp(q, s)) => self.tm(p, q) && self.iexpr(r, s),
            (
                Tm::HComp { tp: a1, src: r1, dst: s1, cof: c1, var: v1, tube: t1 },
                Tm::HComp { tp: a2, src: r2, dst: s2, cof: c2, var: v2, tube: t2 },
            ) => {
                self.tp(a1, a2)
                    && self.iexpr(r1, r2)
                    && self.iexpr(s1, s2)
                    && self.cof(c1, c2)
                    && self.bind(v1, v2, |e| e.tm(t1, t2))
            }
            (
                Tm::Coe { var: v1, tp: a1, src: r1, dst: s1, arg: t1 },
                Tm::Coe { var: v2, tp: a2, src: r2, dst: s2, arg: t2 },
            ) => {
                self.bind(v1, v2, |e| e.tp(a1, a2))
                    && self.iexpr(r1, r2)
                    && self.iexpr(s1, s2)
                    && self.tm(t1, t2)
            }
            (Tm::GlueIntro(c1, b1, a1), Tm::GlueIntro(c2, b2, a2)) => {
                self.cof(c1, c2) && self.tm(b1, b2) && self.tm(a1, a2)
            }
            (Tm::Loop(r), Tm::Loop(s)) => self.iexpr(r, s),
            (
                Tm::S1Elim { var: v1, motive: m1, scrut: s1, base: b1, dim: d1, loop_case: l1 },
                Tm::S1Elim { var: v2, motive: m2, scrut: s2, base: b2, dim: d2, loop_case: l2 },
            ) => {
                self.bind(v1, v2, |e| e.tp(m1, m2))
                    && self.tm(s1, s2)
                    && self.tm(b1, b2)
                    && self.bind(d1, d2, |e| e.tm(l1, l2))
            }
            (Tm::Split(xs), Tm::Split(ys)) => {
                xs.len() == ys.len()
                    && xs
                        .iter()
                        .zip(ys)
                        .all(|((c1, t1), (c2, t2))| self.cof(c1, c2) && self.tm(t1, t2))
            }
            _ => false,
        }
    }

    fn tp(&mut self, a: &Tp, b: &Tp) -> bool {
        match (a, b) {
            (Tp::Pi(x, a1, b1), Tp::Pi(y, a2, b2)) | (Tp::Sigma(x, a1, b1), Tp::Sigma(y, a2, b2)) => {
                self.tp(a1, a2) && self.bind(x, y, |e| e.tp(b1, b2))
            }
            (Tp::Bool, Tp::Bool) | (Tp::WBool, Tp::WBool) | (Tp::S1, Tp::S1) | (Tp::U, Tp::U) => true,
            (Tp::El(x), Tp::El(y)) => self.tm(x, y),
            (Tp::Path(i, a1, s1, t1), Tp::Path(j, a2, s2, t2)) => {
                self.bind(i, j, |e| e.tp(a1, a2)) && self.tm(s1, s2) && self.tm(t1, t2)
            }
            (
                Tp::Glue { cof: c1, base: b1, fiber: a1, equiv: e1 },
                Tp::Glue { cof: c2, base: b2, fiber: a2, equiv: e2 },
            ) => self.cof(c1, c2) && self.tp(b1, b2) && self.tp(a1, a2) && self.tm(e1, e2),
            (Tp::Split(xs), Tp::Split(ys)) => {
                xs.len() == ys.len()
                    && xs
                        .iter()
                        .zip(ys)
                        .all(|((c1, t1), (c2, t2))| self.cof(c1, c2) && self.tp(t1, t2))
            }
            _ => false,
        }
    }
}

/// α-equivalence of raw terms. Interval and cofibration leaves are compared
/// syntactically, not modulo the face lattice.
pub fn alpha_eq_tm(a: &Tm, b: &Tm) -> bool {
    AlphaEnv::default().tm(a, b)
}

pub fn alpha_eq_tp(a: &Tp, b: &Tp) -> bool {
    AlphaEnv::default().tp(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(x: &str, b: Tm) -> Tm {
        Tm::Lam(Name::new(x), Box::new(b))
    }

    #[test]
    fn alpha_examples() {
        assert!(alpha_eq_tm(&lam("x", Tm::var("x")), &lam("y", Tm::var("y"))));
        assert!(alpha_eq_tm(&lam("x", Tm::var("f")), &lam("y", Tm::var("f"))));
        assert!(!alpha_eq_tm(&lam("x", Tm::var("x")), &lam("y", Tm::var("x"))));
        assert!(!alpha_eq_tm(&Tm::Loop(IExpr::Zero), &Tm::Base));
    }

    #[test]
    fn subst_examples() {
        let t = Tm::app(Tm::var("f"), Tm::var("x"));
        assert_eq!(subst_tm(&t, &Name::new("x"), &Tm::True), Tm::app(Tm::var("f"), Tm::True));

        let p = Tm::PApp(Box::new(Tm::var("p")), IExpr::var("i"));
        assert_eq!(
            subst_i_tm(&p, &Name::new("i"), &IExpr::Zero),
            Tm::PApp(Box::new(Tm::var("p")), IExpr::Zero)
        );

        let split = Tm::Split(vec![(
            Cof::eq(IExpr::var("i"), IExpr::Zero),
            Tm::Loop(IExpr::var("i")),
        )]);
        assert_eq!(
            subst_i_tm(&split, &Name::new("i"), &IExpr::var("j")),
            Tm::Split(vec![(Cof::eq(IExpr::var("j"), IExpr::Zero), Tm::Loop(IExpr::var("j")))])
        );
    }

    #[test]
    fn substitution_avoids_capture() {
        // (λy. x y)[y/x] must not capture.
        let t = lam("y", Tm::app(Tm::var("x"), Tm::var("y")));
        let r = subst_tm(&t, &Name::new("x"), &Tm::var("y"));
        let expected = lam("z", Tm::app(Tm::var("y"), Tm::var("z")));
        assert!(alpha_eq_tm(&r, &expected), "{r:?}");

        // (plam i (loop j))[i/j] renames the bound dimension.
        let t = Tm::PLam(Name::new("i"), Box::new(Tm::Loop(IExpr::var("j"))));
        let r = subst_i_tm(&t, &Name::new("j"), &IExpr::var("i"));
        match r {
            Tm::PLam(k, body) => {
                assert_ne!(k.as_str(), "i");
                assert_eq!(*body, Tm::Loop(IExpr::var("i")));
            }
            other => panic!("{other:?}"),
        }
    }
}
