//! Directed decay rewriting.
//!
//! A rewrite step replaces a node by something strictly smaller in the node
//! count of [`size_nf`]: a stabilized neutral whose frontier holds becomes
//! its backup payload, `loop` at an endpoint becomes `base`, a composition
//! whose tube covers the target becomes the tube at the target, a stuck
//! composition or coercion whose type line destabilizes becomes its
//! stabilizer, and glue data whose cofibration holds collapses to the fiber.
//! Every step is checked against the metric and counted.

use std::cell::RefCell;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::cof::{forall_elim, Cof, DimMap, IExpr};
use crate::engine::subst::DimSub;
use crate::engine::DimScope;
use crate::name::Name;
use crate::nf::frontier::up_domain;
use crate::nf::{frontier_netp, Ne, NeTp, Nf, NfTp, Split, UpTag};
use crate::syntax::ctx::Ctx;

/// Rule-order choices, used to test that the result does not depend on them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strategy {
    /// Rewrite subterms before the node itself.
    pub innermost: bool,
    /// When a stuck composition could fire both its stabilizer and its tube,
    /// prefer the stabilizer.
    pub stabilizer_first: bool,
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy { innermost: true, stabilizer_first: true }
    }
}

/// Process-wide rewrite counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CanonStats {
    pub steps: usize,
    /// Steps that failed to decrease the size metric.
    pub violations: usize,
}

static STEPS: AtomicUsize = AtomicUsize::new(0);
static VIOLATIONS: AtomicUsize = AtomicUsize::new(0);

thread_local! {
    static LOG: RefCell<Option<Vec<(usize, usize)>>> = const { RefCell::new(None) };
}

impl CanonStats {
    pub fn current() -> CanonStats {
        CanonStats {
            steps: STEPS.load(Ordering::Relaxed),
            violations: VIOLATIONS.load(Ordering::Relaxed),
        }
    }
}

/// Runs `f`, returning the `(before, after)` sizes of every rewrite step
/// taken on this thread meanwhile.
pub fn record_steps<R>(f: impl FnOnce() -> R) -> (R, Vec<(usize, usize)>) {
    let saved = LOG.with(|l| l.borrow_mut().replace(Vec::new()));
    let r = f();
    let log = LOG.with(|l| std::mem::replace(&mut *l.borrow_mut(), saved)).unwrap_or_default();
    LOG.with(|l| {
        if let Some(outer) = l.borrow_mut().as_mut() {
            outer.extend(log.iter().copied());
        }
    });
    (r, log)
}

fn note(before: usize, after: usize) {
    STEPS.fetch_add(1, Ordering::Relaxed);
    if after >= before {
        VIOLATIONS.fetch_add(1, Ordering::Relaxed);
    }
    debug_assert!(after < before, "rewrite step grew the term: {before} -> {after}");
    LOG.with(|l| {
        if let Some(v) = l.borrow_mut().as_mut() {
            v.push((before, after));
        }
    });
}

pub fn size_nf(t: &Nf) -> usize {
    1 + match t {
        Nf::Lam(_, b) | Nf::PLam(_, b) => size_nf(b),
        Nf::Pair(a, b) => size_nf(a) + size_nf(b),
        Nf::True | Nf::False | Nf::Base => 0,
        Nf::Loop(_) => 1,
        Nf::Code(a) => size_nftp(a),
        Nf::Glue { cof, base, fiber } => cof.size() + size_nf(base) + size_split(fiber, size_nf),
        Nf::HCompVal { cof, tube, .. } => 2 + cof.size() + size_split(tube, size_nf),
        Nf::HCompStuck { tp, cof, tube, backup, .. } => {
            2 + size_ne(&tp.0) + cof.size() + size_split(tube, size_nf) + size_split(backup, size_nf)
        }
        Nf::CoeStuck { tp, arg, backup, .. } => {
            2 + size_ne(&tp.0) + size_nf(arg) + size_split(backup, size_nf)
        }
        Nf::Up { tag, ne, backup } => {
            let t = match tag {
                UpTag::El(tp) => size_ne(&tp.0),
                _ => 0,
            };
            t + size_ne(ne) + size_split(backup, size_nf)
        }
    }
}

pub fn size_ne(e: &Ne) -> usize {
    1 + match e {
        Ne::Var(_) => 0,
        Ne::App(f, a) => size_ne(f) + size_nf(a),
        Ne::Fst(p) | Ne::Snd(p) => size_ne(p),
        Ne::If { motive, scrut, on_true, on_false, .. } => {
            size_nftp(motive) + size_ne(scrut) + size_nf(on_true) + size_nf(on_false)
        }
        Ne::PApp(p, _) => 1 + size_ne(p),
        Ne::Unglue(phi, g) => phi.size() + size_ne(g),
        Ne::S1Elim { motive, scrut, base, loop_case, .. } => {
            size_nftp(motive) + size_ne(scrut) + size_nf(base) + size_nf(loop_case)
        }
        Ne::Star(phi) => phi.size(),
    }
}

pub fn size_nftp(t: &NfTp) -> usize {
    1 + match t {
        NfTp::Pi(_, a, b) | NfTp::Sigma(_, a, b) => size_nftp(a) + size_nftp(b),
        NfTp::Bool | NfTp::WBool | NfTp::S1 | NfTp::U => 0,
        NfTp::Path(_, a, t0, t1) => size_nftp(a) + size_nf(t0) + size_nf(t1),
        NfTp::Glue { cof, base, fiber, equiv } => {
            cof.size() + size_nftp(base) + size_split(fiber, size_nftp) + size_split(equiv, size_nf)
        }
        NfTp::Up { tp, backup } => size_ne(&tp.0) + size_split(backup, size_nftp),
    }
}

fn size_split<X>(sp: &Split<X>, f: fn(&X) -> usize) -> usize {
    1 + sp.branches.iter().map(|(_, x)| f(x)).sum::<usize>()
}

/// The payload of a split at a point where the context entails one of its
/// clauses.
pub(crate) fn select<X: Clone>(scope: &DimScope, sp: &Split<X>) -> Option<X> {
    if let Some(x) = sp.total() {
        return Some(x.clone());
    }
    sp.branches
        .iter()
        .find(|(b, _)| scope.holds(&b.to_cof()))
        .map(|(_, x)| x.clone())
}

/// Prepares to go under the interval binder `var`: picks a name not in
/// scope and returns the renaming to apply to the body, if any.
pub(crate) fn open_binder(scope: &DimScope, var: &Name) -> (Name, Option<DimSub>) {
    let fresh = scope.fresh(var);
    if &fresh == var {
        return (fresh, None);
    }
    let mut src: Vec<Name> = scope.dims.iter().filter(|d| *d != var).cloned().collect();
    src.push(var.clone());
    let mut tgt = scope.dims.clone();
    tgt.push(fresh.clone());
    let mut map = DimMap::new();
    map.insert(var.clone(), IExpr::Var(fresh.clone()));
    (fresh, Some(DimSub::new(map, src, tgt)))
}

/// The tube of a composition at `r`, when the context covers that point.
pub(crate) fn tube_at(scope: &DimScope, var: &Name, tube: &Split<Nf>, r: &IExpr) -> Option<Nf> {
    let (v, ren) = open_binder(scope, var);
    let tube = match ren {
        Some(s) => s.split(tube, |s, x| s.nf(x)),
        None => tube.clone(),
    };
    let inner = scope.with_dim(&v);
    let sub = DimSub::single(&inner.dims, &v, r);
    let at = sub.split(&tube, |s, x| s.nf(x));
    select(scope, &at)
}

struct Canon {
    strat: Strategy,
}

impl Canon {
    fn nf(&self, s: &DimScope, t: &Nf) -> Nf {
        if !self.strat.innermost {
            if let Some(u) = self.step(s, t) {
                note(size_nf(t), size_nf(&u));
                return self.nf(s, &u);
            }
        }
        let c = self.nf_children(s, t);
        match self.step(s, &c) {
            Some(u) => {
                note(size_nf(&c), size_nf(&u));
                self.nf(s, &u)
            }
            None => c,
        }
    }

    fn step(&self, s: &DimScope, t: &Nf) -> Option<Nf> {
        match t {
            Nf::Up { tag, ne, backup } if s.holds(&up_domain(tag, ne)) => select(s, backup),
            Nf::Loop(r) if r.is_endpoint() => Some(Nf::Base),
            Nf::HCompVal { src, dst, cof, var, tube, .. } => {
                let covered = Cof::join([Cof::eq(src.clone(), dst.clone()), cof.clone()]);
                if s.holds(&covered) {
                    tube_at(s, var, tube, dst)
                } else {
                    None
                }
            }
            Nf::HCompStuck { tp, src, dst, cof, var, tube, backup } => {
                let stab = || {
                    if s.holds(&frontier_netp(tp)) {
                        select(s, backup)
                    } else {
                        None
                    }
                };
                let cap = || {
                    let covered = Cof::join([Cof::eq(src.clone(), dst.clone()), cof.clone()]);
                    if s.holds(&covered) {
                        tube_at(s, var, tube, dst)
                    } else {
                        None
                    }
                };
                if self.strat.stabilizer_first {
                    stab().or_else(cap)
                } else {
                    cap().or_else(stab)
                }
            }
            Nf::CoeStuck { var, tp, src, dst, arg, backup } => {
                let stab = || {
                    if s.holds(&forall_elim(var, &frontier_netp(tp))) {
                        select(s, backup)
                    } else {
                        None
                    }
                };
                let refl = || s.holds(&Cof::eq(src.clone(), dst.clone())).then(|| (**arg).clone());
                if self.strat.stabilizer_first {
                    stab().or_else(refl)
                } else {
                    refl().or_else(stab)
                }
            }
            Nf::Glue { cof, fiber, .. } if s.holds(cof) => select(s, fiber),
            _ => None,
        }
    }

    fn split<X>(&self, s: &DimScope, sp: &Split<X>, f: impl Fn(&DimScope, &X) -> X) -> Split<X> {
        Split {
            dom: sp.dom.clone(),
            branches: sp
                .branches
                .iter()
                .map(|(b, x)| {
                    let (sc, _) = s.contract(b);
                    (b.clone(), f(&sc, x))
                })
                .collect(),
        }
    }

    /// Canonicalizes a tube: goes under `var`, renaming it away from the
    /// scope if needed.
    fn tube(&self, s: &DimScope, var: &Name, tube: &Split<Nf>) -> (Name, Split<Nf>) {
        let (v, ren) = open_binder(s, var);
        let tube = match ren {
            Some(r) => r.split(tube, |r, x| r.nf(x)),
            None => tube.clone(),
        };
        let inner = s.with_dim(&v);
        let out = self.split(&inner, &tube, |sc, x| self.nf(sc, x));
        (v, out)
    }

    fn nf_children(&self, s: &DimScope, t: &Nf) -> Nf {
        match t {
            Nf::Lam(x, b) => Nf::Lam(x.clone(), Box::new(self.nf(s, b))),
            Nf::Pair(a, b) => Nf::Pair(Box::new(self.nf(s, a)), Box::new(self.nf(s, b))),
            Nf::True | Nf::False | Nf::Base | Nf::Loop(_) => t.clone(),
            Nf::Code(a) => Nf::Code(Box::new(self.tp(s, a))),
            Nf::PLam(i, b) => {
                let (i2, ren) = open_binder(s, i);
                let b = match ren {
                    Some(r) => r.nf(b),
                    None => (**b).clone(),
                };
                Nf::PLam(i2.clone(), Box::new(self.nf(&s.with_dim(&i2), &b)))
            }
            Nf::Glue { cof, base, fiber } => Nf::Glue {
                cof: cof.clone(),
                base: Box::new(self.nf(s, base)),
                fiber: self.split(s, fiber, |sc, x| self.nf(sc, x)),
            },
            Nf::HCompVal { kind, src, dst, cof, var, tube } => {
                let (v, tube) = self.tube(s, var, tube);
                Nf::HCompVal {
                    kind: *kind,
                    src: src.clone(),
                    dst: dst.clone(),
                    cof: cof.clone(),
                    var: v,
                    tube,
                }
            }
            Nf::HCompStuck { tp, src, dst, cof, var, tube, backup } => {
                let (v, tube) = self.tube(s, var, tube);
                Nf::HCompStuck {
                    tp: NeTp(self.ne(s, &tp.0)),
                    src: src.clone(),
                    dst: dst.clone(),
                    cof: cof.clone(),
                    var: v,
                    tube,
                    backup: self.split(s, backup, |sc, x| self.nf(sc, x)),
                }
            }
            Nf::CoeStuck { var, tp, src, dst, arg, backup } => {
                let (v, ren) = open_binder(s, var);
                let tp = match ren {
                    Some(r) => r.netp(tp),
                    None => tp.clone(),
                };
                Nf::CoeStuck {
                    var: v.clone(),
                    tp: NeTp(self.ne(&s.with_dim(&v), &tp.0)),
                    src: src.clone(),
                    dst: dst.clone(),
                    arg: Box::new(self.nf(s, arg)),
                    backup: self.split(s, backup, |sc, x| self.nf(sc, x)),
                }
            }
            Nf::Up { tag, ne, backup } => Nf::Up {
                tag: match tag {
                    UpTag::El(tp) => UpTag::El(NeTp(self.ne(s, &tp.0))),
                    other => other.clone(),
                },
                ne: self.ne(s, ne),
                backup: self.split(s, backup, |sc, x| self.nf(sc, x)),
            },
        }
    }

    fn ne(&self, s: &DimScope, e: &Ne) -> Ne {
        match e {
            Ne::Var(_) | Ne::Star(_) => e.clone(),
            Ne::App(f, a) => Ne::App(Box::new(self.ne(s, f)), Box::new(self.nf(s, a))),
            Ne::Fst(p) => Ne::Fst(Box::new(self.ne(s, p))),
            Ne::Snd(p) => Ne::Snd(Box::new(self.ne(s, p))),
            Ne::If { var, motive, scrut, on_true, on_false } => Ne::If {
                var: var.clone(),
                motive: Box::new(self.tp(s, motive)),
                scrut: Box::new(self.ne(s, scrut)),
                on_true: Box::new(self.nf(s, on_true)),
                on_false: Box::new(self.nf(s, on_false)),
            },
            Ne::PApp(p, r) => Ne::PApp(Box::new(self.ne(s, p)), r.clone()),
            Ne::Unglue(phi, g) => Ne::Unglue(phi.clone(), Box::new(self.ne(s, g))),
            Ne::S1Elim { var, motive, scrut, base, dim, loop_case } => {
                let (d, ren) = open_binder(s, dim);
                let lc = match ren {
                    Some(r) => r.nf(loop_case),
                    None => (**loop_case).clone(),
                };
                Ne::S1Elim {
                    var: var.clone(),
                    motive: Box::new(self.tp(s, motive)),
                    scrut: Box::new(self.ne(s, scrut)),
                    base: Box::new(self.nf(s, base)),
                    dim: d.clone(),
                    loop_case: Box::new(self.nf(&s.with_dim(&d), &lc)),
                }
            }
        }
    }

    fn tp(&self, s: &DimScope, t: &NfTp) -> NfTp {
        if !self.strat.innermost {
            if let Some(u) = self.tp_step(s, t) {
                note(size_nftp(t), size_nftp(&u));
                return self.tp(s, &u);
            }
        }
        let c = self.tp_children(s, t);
        match self.tp_step(s, &c) {
            Some(u) => {
                note(size_nftp(&c), size_nftp(&u));
                self.tp(s, &u)
            }
            None => c,
        }
    }

    fn tp_step(&self, s: &DimScope, t: &NfTp) -> Option<NfTp> {
        match t {
            NfTp::Up { tp, backup } if s.holds(&frontier_netp(tp)) => select(s, backup),
            NfTp::Glue { cof, fiber, .. } if s.holds(cof) => select(s, fiber),
            _ => None,
        }
    }

    fn tp_children(&self, s: &DimScope, t: &NfTp) -> NfTp {
        match t {
            NfTp::Pi(x, a, b) => NfTp::Pi(x.clone(), Box::new(self.tp(s, a)), Box::new(self.tp(s, b))),
            NfTp::Sigma(x, a, b) => {
                NfTp::Sigma(x.clone(), Box::new(self.tp(s, a)), Box::new(self.tp(s, b)))
            }
            NfTp::Bool | NfTp::WBool | NfTp::S1 | NfTp::U => t.clone(),
            NfTp::Path(i, a, t0, t1) => {
                let (i2, ren) = open_binder(s, i);
                let a = match ren {
                    Some(r) => r.nftp(a),
                    None => (**a).clone(),
                };
                NfTp::Path(
                    i2.clone(),
                    Box::new(self.tp(&s.with_dim(&i2), &a)),
                    Box::new(self.nf(s, t0)),
                    Box::new(self.nf(s, t1)),
                )
            }
            NfTp::Glue { cof, base, fiber, equiv } => NfTp::Glue {
                cof: cof.clone(),
                base: Box::new(self.tp(s, base)),
                fiber: self.split(s, fiber, |sc, x| self.tp(sc, x)),
                equiv: self.split(s, equiv, |sc, x| self.nf(sc, x)),
            },
            NfTp::Up { tp, backup } => NfTp::Up {
                tp: NeTp(self.ne(s, &tp.0)),
                backup: self.split(s, backup, |sc, x| self.tp(sc, x)),
            },
        }
    }
}

pub(crate) fn canon_in(scope: &DimScope, t: &Nf) -> Nf {
    Canon { strat: Strategy::default() }.nf(scope, t)
}

pub(crate) fn canon_tp_in(scope: &DimScope, t: &NfTp) -> NfTp {
    Canon { strat: Strategy::default() }.tp(scope, t)
}

pub(crate) fn canon_ne_in(scope: &DimScope, e: &Ne) -> Ne {
    Canon { strat: Strategy::default() }.ne(scope, e)
}

/// Rewrites `t` to its canonical representative.
pub fn canon(ctx: &Ctx, t: &Nf) -> Nf {
    canon_in(&DimScope::of(ctx), t)
}

pub fn canon_nftp(ctx: &Ctx, t: &NfTp) -> NfTp {
    canon_tp_in(&DimScope::of(ctx), t)
}

/// [`canon`] under an explicit rule order.
pub fn canon_with(ctx: &Ctx, t: &Nf, strat: Strategy) -> Nf {
    Canon { strat }.nf(&DimScope::of(ctx), t)
}
