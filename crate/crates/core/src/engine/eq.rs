//! Equality of normal forms: canonicalize, then compare structurally.
//!
//! Binders are compared up to renaming, interval expressions up to the
//! context's hypotheses, cofibrations extensionally, and splits branch by
//! branch in their contracted scopes.

use std::collections::BTreeSet;

use crate::cof::{cof_eq, Cof, DimMap, IExpr};
use crate::engine::canon::{canon_in, canon_ne_in, canon_tp_in};
use crate::engine::subst::{names_ne, names_nf, names_nftp, rename_nf, rename_nftp, DimSub};
use crate::engine::DimScope;
use crate::name::Name;
use crate::nf::{Ne, NeTp, Nf, NfTp, Split, UpTag};
use crate::syntax::ctx::Ctx;

/// Whether two normal forms are equal. Both are expected to check at the
/// same type; canonical forms at types with η are constructor-headed, so the
/// comparison needs no type information.
pub fn eq_nf(ctx: &Ctx, a: &Nf, b: &Nf) -> bool {
    let s = DimScope::of(ctx);
    eq_nf_in(&s, a, b)
}

pub fn eq_nftp(ctx: &Ctx, a: &NfTp, b: &NfTp) -> bool {
    let s = DimScope::of(ctx);
    Cmp.tp(&s, &canon_tp_in(&s, a), &canon_tp_in(&s, b))
}

pub fn eq_ne(ctx: &Ctx, a: &Ne, b: &Ne) -> bool {
    let s = DimScope::of(ctx);
    Cmp.ne(&s, &canon_ne_in(&s, a), &canon_ne_in(&s, b))
}

pub(crate) fn eq_nftp_in(s: &DimScope, a: &NfTp, b: &NfTp) -> bool {
    Cmp.tp(s, &canon_tp_in(s, a), &canon_tp_in(s, b))
}

pub(crate) fn eq_nf_in(s: &DimScope, a: &Nf, b: &Nf) -> bool {
    Cmp.nf(s, &canon_in(s, a), &canon_in(s, b))
}

/// Structural comparison of canonical forms.
struct Cmp;

/// Renames interval binders `i` (in `a`) and `j` (in `b`) to a common name.
fn align_dims(s: &DimScope, i: &Name, j: &Name, avoid: &BTreeSet<Name>) -> (Name, DimSub, DimSub) {
    let k = if i == j && !s.dims.contains(i) {
        i.clone()
    } else {
        i.fresh_against(|n| s.dims.contains(n) || avoid.contains(n))
    };
    let mk = |from: &Name| {
        let mut src: Vec<Name> = s.dims.iter().filter(|d| *d != from).cloned().collect();
        src.push(from.clone());
        let mut tgt = s.dims.clone();
        tgt.push(k.clone());
        let mut map = DimMap::new();
        if from != &k {
            map.insert(from.clone(), IExpr::Var(k.clone()));
        }
        DimSub::new(map, src, tgt)
    };
    (k.clone(), mk(i), mk(j))
}

fn fresh_tm(x: &Name, y: &Name, avoid: &BTreeSet<Name>) -> Option<Name> {
    (x != y).then(|| x.fresh_against(|n| n == x || n == y || avoid.contains(n)))
}

impl Cmp {
    fn iexpr(&self, s: &DimScope, r: &IExpr, q: &IExpr) -> bool {
        r == q || s.holds(&Cof::eq(r.clone(), q.clone()))
    }

    fn cof(&self, s: &DimScope, a: &Cof, b: &Cof) -> bool {
        cof_eq(&s.hyps, a, b)
    }

    fn split<X>(&self, s: &DimScope, a: &Split<X>, b: &Split<X>, f: impl Fn(&DimScope, &X, &X) -> bool) -> bool {
        if !self.cof(s, &a.dom, &b.dom) || a.branches.len() != b.branches.len() {
            return false;
        }
        a.branches.iter().zip(&b.branches).all(|((ba, xa), (bb, xb))| {
            if ba != bb {
                return false;
            }
            let (sc, _) = s.contract(ba);
            f(&sc, xa, xb)
        })
    }

    fn tube(&self, s: &DimScope, v: &Name, a: &Split<Nf>, w: &Name, b: &Split<Nf>) -> bool {
        let mut avoid = BTreeSet::new();
        for (_, x) in a.branches.iter().chain(&b.branches) {
            names_nf(x, &mut avoid);
        }
        let (k, ra, rb) = align_dims(s, v, w, &avoid);
        let a = ra.split(a, |r, x| r.nf(x));
        let b = rb.split(b, |r, x| r.nf(x));
        self.split(&s.with_dim(&k), &a, &b, |sc, x, y| self.nf(sc, x, y))
    }

    fn nf(&self, s: &DimScope, a: &Nf, b: &Nf) -> bool {
        match (a, b) {
            (Nf::Lam(x, ba), Nf::Lam(y, bb)) => {
                let mut avoid = BTreeSet::new();
                names_nf(ba, &mut avoid);
                names_nf(bb, &mut avoid);
                match fresh_tm(x, y, &avoid) {
                    None => self.nf(s, ba, bb),
                    Some(z) => self.nf(s, &rename_nf(ba, x, &z), &rename_nf(bb, y, &z)),
                }
            }
            (Nf::Pair(a1, a2), Nf::Pair(b1, b2)) => self.nf(s, a1, b1) && self.nf(s, a2, b2),
            (Nf::True, Nf::True) | (Nf::False, Nf::False) | (Nf::Base, Nf::Base) => true,
            (Nf::Loop(r), Nf::Loop(q)) => self.iexpr(s, r, q),
            (Nf::Code(x), Nf::Code(y)) => self.tp(s, x, y),
            (Nf::PLam(i, ba), Nf::PLam(j, bb)) => {
                let mut avoid = BTreeSet::new();
                names_nf(ba, &mut avoid);
                names_nf(bb, &mut avoid);
                let (k, ra, rb) = align_dims(s, i, j, &avoid);
                self.nf(&s.with_dim(&k), &ra.nf(ba), &rb.nf(bb))
            }
            (
                Nf::Glue { cof: c1, base: b1, fiber: f1 },
                Nf::Glue { cof: c2, base: b2, fiber: f2 },
            ) => {
                self.cof(s, c1, c2)
                    && self.nf(s, b1, b2)
                    && self.split(s, f1, f2, |sc, x, y| self.nf(sc, x, y))
            }
            (
                Nf::HCompVal { kind: k1, src: r1, dst: s1, cof: c1, var: v1, tube: t1 },
                Nf::HCompVal { kind: k2, src: r2, dst: s2, cof: c2, var: v2, tube: t2 },
            ) => {
                k1 == k2
                    && self.iexpr(s, r1, r2)
                    && self.iexpr(s, s1, s2)
                    && self.cof(s, c1, c2)
                    && self.tube(s, v1, t1, v2, t2)
            }
            (
                Nf::HCompStuck { tp: a1, src: r1, dst: s1, cof: c1, var: v1, tube: t1, backup: k1 },
                Nf::HCompStuck { tp: a2, src: r2, dst: s2, cof: c2, var: v2, tube: t2, backup: k2 },
            ) => {
                self.ne(s, &a1.0, &a2.0)
                    && self.iexpr(s, r1, r2)
                    && self.iexpr(s, s1, s2)
                    && self.cof(s, c1, c2)
                    && self.tube(s, v1, t1, v2, t2)
                    && self.split(s, k1, k2, |sc, x, y| self.nf(sc, x, y))
            }
            (
                Nf::CoeStuck { var: v1, tp: a1, src: r1, dst: s1, arg: t1, backup: k1 },
                Nf::CoeStuck { var: v2, tp: a2, src: r2, dst: s2, arg: t2, backup: k2 },
            ) => {
                let mut avoid = BTreeSet::new();
                names_ne(&a1.0, &mut avoid);
                names_ne(&a2.0, &mut avoid);
                let (k, ra, rb) = align_dims(s, v1, v2, &avoid);
                self.ne(&s.with_dim(&k), &ra.netp(a1).0, &rb.netp(a2).0)
                    && self.iexpr(s, r1, r2)
                    && self.iexpr(s, s1, s2)
                    && self.nf(s, t1, t2)
                    && self.split(s, k1, k2, |sc, x, y| self.nf(sc, x, y))
            }
            (
                Nf::Up { tag: g1, ne: e1, backup: k1 },
                Nf::Up { tag: g2, ne: e2, backup: k2 },
            ) => {
                self.tag(s, g1, g2)
                    && self.ne(s, e1, e2)
                    && self.split(s, k1, k2, |sc, x, y| self.nf(sc, x, y))
            }
            _ => false,
        }
    }

    fn tag(&self, s: &DimScope, a: &UpTag, b: &UpTag) -> bool {
        match (a, b) {
            (UpTag::El(x), UpTag::El(y)) => self.netp(s, x, y),
            _ => a == b,
        }
    }

    fn netp(&self, s: &DimScope, a: &NeTp, b: &NeTp) -> bool {
        self.ne(s, &a.0, &b.0)
    }

    fn ne(&self, s: &DimScope, a: &Ne, b: &Ne) -> bool {
        match (a, b) {
            (Ne::Var(x), Ne::Var(y)) => x == y,
            (Ne::App(f, x), Ne::App(g, y)) => self.ne(s, f, g) && self.nf(s, x, y),
            (Ne::Fst(p), Ne::Fst(q)) | (Ne::Snd(p), Ne::Snd(q)) => self.ne(s, p, q),
            (
                Ne::If { var: x, motive: m1, scrut: e1, on_true: t1, on_false: f1 },
                Ne::If { var: y, motive: m2, scrut: e2, on_true: t2, on_false: f2 },
            ) => {
                self.motive(s, x, m1, y, m2)
                    && self.ne(s, e1, e2)
                    && self.nf(s, t1, t2)
                    && self.nf(s, f1, f2)
            }
            (Ne::PApp(p, r), Ne::PApp(q, t)) => self.ne(s, p, q) && self.iexpr(s, r, t),
            (Ne::Unglue(c1, g1), Ne::Unglue(c2, g2)) => self.cof(s, c1, c2) && self.ne(s, g1, g2),
            (
                Ne::S1Elim { var: x, motive: m1, scrut: e1, base: b1, dim: d1, loop_case: l1 },
                Ne::S1Elim { var: y, motive: m2, scrut: e2, base: b2, dim: d2, loop_case: l2 },
            ) => {
                let mut avoid = BTreeSet::new();
                names_nf(l1, &mut avoid);
                names_nf(l2, &mut avoid);
                let (k, ra, rb) = align_dims(s, d1, d2, &avoid);
                self.motive(s, x, m1, y, m2)
                    && self.ne(s, e1, e2)
                    && self.nf(s, b1, b2)
                    && self.nf(&s.with_dim(&k), &ra.nf(l1), &rb.nf(l2))
            }
            (Ne::Star(c1), Ne::Star(c2)) => self.cof(s, c1, c2),
            _ => false,
        }
    }

    fn motive(&self, s: &DimScope, x: &Name, a: &NfTp, y: &Name, b: &NfTp) -> bool {
        let mut avoid = BTreeSet::new();
        names_nftp(a, &mut avoid);
        names_nftp(b, &mut avoid);
        match fresh_tm(x, y, &avoid) {
            None => self.tp(s, a, b),
            Some(z) => self.tp(s, &rename_nftp(a, x, &z), &rename_nftp(b, y, &z)),
        }
    }

    fn tp(&self, s: &DimScope, a: &NfTp, b: &NfTp) -> bool {
        match (a, b) {
            (NfTp::Pi(x, a1, b1), NfTp::Pi(y, a2, b2))
            | (NfTp::Sigma(x, a1, b1), NfTp::Sigma(y, a2, b2)) => {
                self.tp(s, a1, a2)
                    && self.motive(s, x, b1, y, b2)
            }
            (NfTp::Bool, NfTp::Bool)
            | (NfTp::WBool, NfTp::WBool)
            | (NfTp::S1, NfTp::S1)
            | (NfTp::U, NfTp::U) => true,
            (NfTp::Path(i, a1, x0, x1), NfTp::Path(j, a2, y0, y1)) => {
                let mut avoid = BTreeSet::new();
                names_nftp(a1, &mut avoid);
                names_nftp(a2, &mut avoid);
                let (k, ra, rb) = align_dims(s, i, j, &avoid);
                self.tp(&s.with_dim(&k), &ra.nftp(a1), &rb.nftp(a2))
                    && self.nf(s, x0, y0)
                    && self.nf(s, x1, y1)
            }
            (
                NfTp::Glue { cof: c1, base: b1, fiber: f1, equiv: e1 },
                NfTp::Glue { cof: c2, base: b2, fiber: f2, equiv: e2 },
            ) => {
                self.cof(s, c1, c2)
                    && self.tp(s, b1, b2)
                    && self.split(s, f1, f2, |sc, x, y| self.tp(sc, x, y))
                    && self.split(s, e1, e2, |sc, x, y| self.nf(sc, x, y))
            }
            (NfTp::Up { tp: t1, backup: k1 }, NfTp::Up { tp: t2, backup: k2 }) => {
                self.netp(s, t1, t2) && self.split(s, k1, k2, |sc, x, y| self.tp(sc, x, y))
            }
            _ => false,
        }
    }
}
