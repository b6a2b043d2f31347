//! Interval substitution on normal forms.
//!
//! [`DimSub`] carries the source and target interval scopes so that split
//! payloads, which live in contracted scopes, can be reindexed. The raw
//! traversal here performs no decay; [`subst_i_nf`] follows it with
//! [`canon`](super::canon::canon) so that every destabilized neutral is
//! replaced.

use std::collections::BTreeSet;

use crate::cof::{dnf, Cof, DimMap, IExpr};
use crate::engine::canon::{canon_in, canon_tp_in};
use crate::engine::DimScope;
use crate::name::Name;
use crate::nf::{Ne, NeTp, Nf, NfTp, Split, UpTag};
use crate::syntax::ctx::Ctx;

/// A simultaneous interval substitution from `src` scope to `tgt` scope.
#[derive(Clone, Debug)]
pub struct DimSub {
    map: DimMap,
    src: Vec<Name>,
    tgt: Vec<Name>,
}

impl DimSub {
    pub fn new(map: DimMap, src: Vec<Name>, tgt: Vec<Name>) -> Self {
        DimSub { map, src, tgt }
    }

    /// `i := r` over `scope`; the target scope drops `i` unless `r` is `i`.
    pub fn single(scope: &[Name], i: &Name, r: &IExpr) -> Self {
        let mut map = DimMap::new();
        if r.as_var() == Some(i) {
            return DimSub { map, src: scope.to_vec(), tgt: scope.to_vec() };
        }
        map.insert(i.clone(), r.clone());
        let tgt = scope.iter().filter(|d| *d != i).cloned().collect();
        DimSub { map, src: scope.to_vec(), tgt }
    }

    /// Renames the innermost variable `from` of `scope` to `to`.
    pub fn rename_last(scope: &[Name], from: &Name, to: &Name) -> Self {
        let mut map = DimMap::new();
        if from != to {
            map.insert(from.clone(), IExpr::Var(to.clone()));
        }
        let tgt = scope.iter().map(|d| if d == from { to.clone() } else { d.clone() }).collect();
        DimSub { map, src: scope.to_vec(), tgt }
    }

    pub fn target(&self) -> &[Name] {
        &self.tgt
    }

    pub fn iexpr(&self, e: &IExpr) -> IExpr {
        e.subst_map(&self.map)
    }

    pub fn cof(&self, c: &Cof) -> Cof {
        c.subst_map(&self.map)
    }

    fn in_range(&self, i: &Name) -> bool {
        self.map.values().any(|e| e.as_var() == Some(i))
    }

    /// Goes under an interval binder, renaming it when it would clash with
    /// the target scope.
    fn bind(&self, i: &Name) -> (Name, DimSub) {
        let mut inner = self.clone();
        inner.map.remove(i);
        let new_i = if self.tgt.contains(i) || self.in_range(i) {
            i.fresh_against(|n| self.tgt.contains(n) || self.src.contains(n) || self.in_range(n))
        } else {
            i.clone()
        };
        if &new_i != i {
            inner.map.insert(i.clone(), IExpr::Var(new_i.clone()));
        }
        inner.src.retain(|d| d != i);
        inner.src.push(i.clone());
        inner.tgt.push(new_i.clone());
        (new_i, inner)
    }

    /// Reindexes a split along this substitution. The result is over the
    /// substituted domain and follows its canonical decomposition; each
    /// target clause takes its payload from the first source clause it
    /// refines.
    pub fn split<X>(&self, sp: &Split<X>, mut f: impl FnMut(&DimSub, &X) -> X) -> Split<X> {
        let dom = self.cof(&sp.dom);
        let mut branches = Vec::new();
        for target in dnf(&dom) {
            let source = sp
                .branches
                .iter()
                .find(|(b, _)| target.satisfies(&b.subst_map(&self.map)));
            let Some((b, x)) = source else { continue };
            let (_, src_kept) = b.contraction(&self.src);
            let (_, tgt_kept) = target.contraction(&self.tgt);
            let mut map = DimMap::new();
            for v in &src_kept {
                let img = target.rep(&self.iexpr(&IExpr::Var(v.clone())), &self.tgt);
                if img != IExpr::Var(v.clone()) {
                    map.insert(v.clone(), img);
                }
            }
            let inner = DimSub { map, src: src_kept, tgt: tgt_kept };
            branches.push((target, f(&inner, x)));
        }
        Split::new(dom, branches)
    }

    pub fn nf(&self, t: &Nf) -> Nf {
        match t {
            Nf::Lam(x, b) => Nf::Lam(x.clone(), Box::new(self.nf(b))),
            Nf::Pair(a, b) => Nf::Pair(Box::new(self.nf(a)), Box::new(self.nf(b))),
            Nf::True => Nf::True,
            Nf::False => Nf::False,
            Nf::Base => Nf::Base,
            Nf::Code(a) => Nf::Code(Box::new(self.nftp(a))),
            Nf::PLam(i, b) => {
                let (i2, inner) = self.bind(i);
                Nf::PLam(i2, Box::new(inner.nf(b)))
            }
            Nf::Glue { cof, base, fiber } => Nf::Glue {
                cof: self.cof(cof),
                base: Box::new(self.nf(base)),
                fiber: self.split(fiber, |s, x| s.nf(x)),
            },
            Nf::Loop(r) => Nf::Loop(self.iexpr(r)),
            Nf::HCompVal { kind, src, dst, cof, var, tube } => {
                let (v2, inner) = self.bind(var);
                Nf::HCompVal {
                    kind: *kind,
                    src: self.iexpr(src),
                    dst: self.iexpr(dst),
                    cof: self.cof(cof),
                    var: v2,
                    tube: inner.split(tube, |s, x| s.nf(x)),
                }
            }
            Nf::HCompStuck { tp, src, dst, cof, var, tube, backup } => {
                let (v2, inner) = self.bind(var);
                Nf::HCompStuck {
                    tp: self.netp(tp),
                    src: self.iexpr(src),
                    dst: self.iexpr(dst),
                    cof: self.cof(cof),
                    var: v2,
                    tube: inner.split(tube, |s, x| s.nf(x)),
                    backup: self.split(backup, |s, x| s.nf(x)),
                }
            }
            Nf::CoeStuck { var, tp, src, dst, arg, backup } => {
                let (v2, inner) = self.bind(var);
                Nf::CoeStuck {
                    var: v2,
                    tp: inner.netp(tp),
                    src: self.iexpr(src),
                    dst: self.iexpr(dst),
                    arg: Box::new(self.nf(arg)),
                    backup: self.split(backup, |s, x| s.nf(x)),
                }
            }
            Nf::Up { tag, ne, backup } => Nf::Up {
                tag: self.tag(tag),
                ne: self.ne(ne),
                backup: self.split(backup, |s, x| s.nf(x)),
            },
        }
    }

    fn tag(&self, tag: &UpTag) -> UpTag {
        match tag {
            UpTag::El(tp) => UpTag::El(self.netp(tp)),
            other => other.clone(),
        }
    }

    pub fn netp(&self, t: &NeTp) -> NeTp {
        NeTp(self.ne(&t.0))
    }

    pub fn ne(&self, e: &Ne) -> Ne {
        match e {
            Ne::Var(x) => Ne::Var(x.clone()),
            Ne::App(f, a) => Ne::App(Box::new(self.ne(f)), Box::new(self.nf(a))),
            Ne::Fst(p) => Ne::Fst(Box::new(self.ne(p))),
            Ne::Snd(p) => Ne::Snd(Box::new(self.ne(p))),
            Ne::If { var, motive, scrut, on_true, on_false } => Ne::If {
                var: var.clone(),
                motive: Box::new(self.nftp(motive)),
                scrut: Box::new(self.ne(scrut)),
                on_true: Box::new(self.nf(on_true)),
                on_false: Box::new(self.nf(on_false)),
            },
            Ne::PApp(p, r) => Ne::PApp(Box::new(self.ne(p)), self.iexpr(r)),
            Ne::Unglue(phi, g) => Ne::Unglue(self.cof(phi), Box::new(self.ne(g))),
            Ne::S1Elim { var, motive, scrut, base, dim, loop_case } => {
                let (d2, inner) = self.bind(dim);
                Ne::S1Elim {
                    var: var.clone(),
                    motive: Box::new(self.nftp(motive)),
                    scrut: Box::new(self.ne(scrut)),
                    base: Box::new(self.nf(base)),
                    dim: d2,
                    loop_case: Box::new(inner.nf(loop_case)),
                }
            }
            Ne::Star(phi) => Ne::Star(self.cof(phi)),
        }
    }

    pub fn nftp(&self, t: &NfTp) -> NfTp {
        match t {
            NfTp::Pi(x, a, b) => NfTp::Pi(x.clone(), Box::new(self.nftp(a)), Box::new(self.nftp(b))),
            NfTp::Sigma(x, a, b) => {
                NfTp::Sigma(x.clone(), Box::new(self.nftp(a)), Box::new(self.nftp(b)))
            }
            NfTp::Bool => NfTp::Bool,
            NfTp::WBool => NfTp::WBool,
            NfTp::S1 => NfTp::S1,
            NfTp::U => NfTp::U,
            NfTp::Path(i, a, t0, t1) => {
                let (i2, inner) = self.bind(i);
                NfTp::Path(i2, Box::new(inner.nftp(a)), Box::new(self.nf(t0)), Box::new(self.nf(t1)))
            }
            NfTp::Glue { cof, base, fiber, equiv } => NfTp::Glue {
                cof: self.cof(cof),
                base: Box::new(self.nftp(base)),
                fiber: self.split(fiber, |s, x| s.nftp(x)),
                equiv: self.split(equiv, |s, x| s.nf(x)),
            },
            NfTp::Up { tp, backup } => NfTp::Up {
                tp: self.netp(tp),
                backup: self.split(backup, |s, x| s.nftp(x)),
            },
        }
    }
}

/// `t[r/i]` with destabilization: the substituted form is canonicalized so
/// that every neutral whose frontier became true decays.
pub fn subst_i_nf(ctx: &Ctx, t: &Nf, i: &Name, r: &IExpr) -> Nf {
    let scope = DimScope::of(ctx);
    let sub = DimSub::single(&scope.dims, i, r);
    let target = DimScope {
        dims: sub.target().to_vec(),
        hyps: scope.hyps.iter().map(|h| sub.cof(h)).collect(),
    };
    canon_in(&target, &sub.nf(t))
}

pub fn subst_i_nftp(ctx: &Ctx, t: &NfTp, i: &Name, r: &IExpr) -> NfTp {
    let scope = DimScope::of(ctx);
    let sub = DimSub::single(&scope.dims, i, r);
    let target = DimScope {
        dims: sub.target().to_vec(),
        hyps: scope.hyps.iter().map(|h| sub.cof(h)).collect(),
    };
    canon_tp_in(&target, &sub.nftp(t))
}

/// Renames free occurrences of the term variable `from` to `to`, which must
/// not occur in `t`.
pub fn rename_nf(t: &Nf, from: &Name, to: &Name) -> Nf {
    let r = |u: &Nf| Box::new(rename_nf(u, from, to));
    match t {
        Nf::Lam(x, _) if x == from => t.clone(),
        Nf::Lam(x, b) => Nf::Lam(x.clone(), r(b)),
        Nf::Pair(a, b) => Nf::Pair(r(a), r(b)),
        Nf::True | Nf::False | Nf::Base | Nf::Loop(_) => t.clone(),
        Nf::Code(a) => Nf::Code(Box::new(rename_nftp(a, from, to))),
        Nf::PLam(i, b) => Nf::PLam(i.clone(), r(b)),
        Nf::Glue { cof, base, fiber } => Nf::Glue {
            cof: cof.clone(),
            base: r(base),
            fiber: fiber.map(|_, x| rename_nf(x, from, to)),
        },
        Nf::HCompVal { kind, src, dst, cof, var, tube } => Nf::HCompVal {
            kind: *kind,
            src: src.clone(),
            dst: dst.clone(),
            cof: cof.clone(),
            var: var.clone(),
            tube: tube.map(|_, x| rename_nf(x, from, to)),
        },
        Nf::HCompStuck { tp, src, dst, cof, var, tube, backup } => Nf::HCompStuck {
            tp: NeTp(rename_ne(&tp.0, from, to)),
            src: src.clone(),
            dst: dst.clone(),
            cof: cof.clone(),
            var: var.clone(),
            tube: tube.map(|_, x| rename_nf(x, from, to)),
            backup: backup.map(|_, x| rename_nf(x, from, to)),
        },
        Nf::CoeStuck { var, tp, src, dst, arg, backup } => Nf::CoeStuck {
            var: var.clone(),
            tp: NeTp(rename_ne(&tp.0, from, to)),
            src: src.clone(),
            dst: dst.clone(),
            arg: r(arg),
            backup: backup.map(|_, x| rename_nf(x, from, to)),
        },
        Nf::Up { tag, ne, backup } => Nf::Up {
            tag: match tag {
                UpTag::El(tp) => UpTag::El(NeTp(rename_ne(&tp.0, from, to))),
                other => other.clone(),
            },
            ne: rename_ne(ne, from, to),
            backup: backup.map(|_, x| rename_nf(x, from, to)),
        },
    }
}

pub fn rename_ne(e: &Ne, from: &Name, to: &Name) -> Ne {
    match e {
        Ne::Var(x) if x == from => Ne::Var(to.clone()),
        Ne::Var(_) | Ne::Star(_) => e.clone(),
        Ne::App(f, a) => Ne::App(Box::new(rename_ne(f, from, to)), Box::new(rename_nf(a, from, to))),
        Ne::Fst(p) => Ne::Fst(Box::new(rename_ne(p, from, to))),
        Ne::Snd(p) => Ne::Snd(Box::new(rename_ne(p, from, to))),
        Ne::If { var, motive, scrut, on_true, on_false } => Ne::If {
            var: var.clone(),
            motive: Box::new(if var == from { (**motive).clone() } else { rename_nftp(motive, from, to) }),
            scrut: Box::new(rename_ne(scrut, from, to)),
            on_true: Box::new(rename_nf(on_true, from, to)),
            on_false: Box::new(rename_nf(on_false, from, to)),
        },
        Ne::PApp(p, r) => Ne::PApp(Box::new(rename_ne(p, from, to)), r.clone()),
        Ne::Unglue(phi, g) => Ne::Unglue(phi.clone(), Box::new(rename_ne(g, from, to))),
        Ne::S1Elim { var, motive, scrut, base, dim, loop_case } => Ne::S1Elim {
            var: var.clone(),
            motive: Box::new(if var == from { (**motive).clone() } else { rename_nftp(motive, from, to) }),
            scrut: Box::new(rename_ne(scrut, from, to)),
            base: Box::new(rename_nf(base, from, to)),
            dim: dim.clone(),
            loop_case: Box::new(rename_nf(loop_case, from, to)),
        },
    }
}

pub fn rename_nftp(t: &NfTp, from: &Name, to: &Name) -> NfTp {
    let r = |u: &NfTp| Box::new(rename_nftp(u, from, to));
    match t {
        NfTp::Pi(x, a, b) if x == from => NfTp::Pi(x.clone(), r(a), b.clone()),
        NfTp::Pi(x, a, b) => NfTp::Pi(x.clone(), r(a), r(b)),
        NfTp::Sigma(x, a, b) if x == from => NfTp::Sigma(x.clone(), r(a), b.clone()),
        NfTp::Sigma(x, a, b) => NfTp::Sigma(x.clone(), r(a), r(b)),
        NfTp::Bool | NfTp::WBool | NfTp::S1 | NfTp::U => t.clone(),
        NfTp::Path(i, a, t0, t1) => NfTp::Path(
            i.clone(),
            r(a),
            Box::new(rename_nf(t0, from, to)),
            Box::new(rename_nf(t1, from, to)),
        ),
        NfTp::Glue { cof, base, fiber, equiv } => NfTp::Glue {
            cof: cof.clone(),
            base: r(base),
            fiber: fiber.map(|_, x| rename_nftp(x, from, to)),
            equiv: equiv.map(|_, x| rename_nf(x, from, to)),
        },
        NfTp::Up { tp, backup } => NfTp::Up {
            tp: NeTp(rename_ne(&tp.0, from, to)),
            backup: backup.map(|_, x| rename_nftp(x, from, to)),
        },
    }
}

/// Every name occurring in `t`, bound or free, term or interval. Used to
/// pick names that cannot be captured.
pub fn names_nf(t: &Nf, out: &mut BTreeSet<Name>) {
    match t {
        Nf::Lam(x, b) => {
            out.insert(x.clone());
            names_nf(b, out);
        }
        Nf::Pair(a, b) => {
            names_nf(a, out);
            names_nf(b, out);
        }
        Nf::True | Nf::False | Nf::Base => {}
        Nf::Loop(r) => names_iexpr(r, out),
        Nf::Code(a) => names_nftp(a, out),
        Nf::PLam(i, b) => {
            out.insert(i.clone());
            names_nf(b, out);
        }
        Nf::Glue { cof, base, fiber } => {
            cof.collect_dims(out);
            names_nf(base, out);
            names_split(fiber, out, names_nf);
        }
        Nf::HCompVal { src, dst, cof, var, tube, .. } => {
            names_iexpr(src, out);
            names_iexpr(dst, out);
            cof.collect_dims(out);
            out.insert(var.clone());
            names_split(tube, out, names_nf);
        }
        Nf::HCompStuck { tp, src, dst, cof, var, tube, backup } => {
            names_ne(&tp.0, out);
            names_iexpr(src, out);
            names_iexpr(dst, out);
            cof.collect_dims(out);
            out.insert(var.clone());
            names_split(tube, out, names_nf);
            names_split(backup, out, names_nf);
        }
        Nf::CoeStuck { var, tp, src, dst, arg, backup } => {
            out.insert(var.clone());
            names_ne(&tp.0, out);
            names_iexpr(src, out);
            names_iexpr(dst, out);
            names_nf(arg, out);
            names_split(backup, out, names_nf);
        }
        Nf::Up { tag, ne, backup } => {
            if let UpTag::El(tp) = tag {
                names_ne(&tp.0, out);
            }
            names_ne(ne, out);
            names_split(backup, out, names_nf);
        }
    }
}

fn names_iexpr(r: &IExpr, out: &mut BTreeSet<Name>) {
    if let IExpr::Var(n) = r {
        out.insert(n.clone());
    }
}

fn names_split<X>(sp: &Split<X>, out: &mut BTreeSet<Name>, f: fn(&X, &mut BTreeSet<Name>)) {
    sp.dom.collect_dims(out);
    for (_, x) in &sp.branches {
        f(x, out);
    }
}

pub fn names_ne(e: &Ne, out: &mut BTreeSet<Name>) {
    match e {
        Ne::Var(x) => {
            out.insert(x.clone());
        }
        Ne::App(f, a) => {
            names_ne(f, out);
            names_nf(a, out);
        }
        Ne::Fst(p) | Ne::Snd(p) => names_ne(p, out),
        Ne::If { var, motive, scrut, on_true, on_false } => {
            out.insert(var.clone());
            names_nftp(motive, out);
            names_ne(scrut, out);
            names_nf(on_true, out);
            names_nf(on_false, out);
        }
        Ne::PApp(p, r) => {
            names_ne(p, out);
            names_iexpr(r, out);
        }
        Ne::Unglue(phi, g) => {
            phi.collect_dims(out);
            names_ne(g, out);
        }
        Ne::S1Elim { var, motive, scrut, base, dim, loop_case } => {
            out.insert(var.clone());
            names_nftp(motive, out);
            names_ne(scrut, out);
            names_nf(base, out);
            out.insert(dim.clone());
            names_nf(loop_case, out);
        }
        Ne::Star(phi) => phi.collect_dims(out),
    }
}

pub fn names_nftp(t: &NfTp, out: &mut BTreeSet<Name>) {
    match t {
        NfTp::Pi(x, a, b) | NfTp::Sigma(x, a, b) => {
            out.insert(x.clone());
            names_nftp(a, out);
            names_nftp(b, out);
        }
        NfTp::Bool | NfTp::WBool | NfTp::S1 | NfTp::U => {}
        NfTp::Path(i, a, t0, t1) => {
            out.insert(i.clone());
            names_nftp(a, out);
            names_nf(t0, out);
            names_nf(t1, out);
        }
        NfTp::Glue { cof, base, fiber, equiv } => {
            cof.collect_dims(out);
            names_nftp(base, out);
            names_split(fiber, out, names_nftp);
            names_split(equiv, out, names_nf);
        }
        NfTp::Up { tp, backup } => {
            names_ne(&tp.0, out);
            names_split(backup, out, names_nftp);
        }
    }
}
