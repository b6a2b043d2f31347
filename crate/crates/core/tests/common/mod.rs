//! Shared oracles and generators for the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cubnf::cof::{Branch, Cof, IExpr};
use cubnf::engine::{DimScope, DimSub};
use cubnf::name::Name;
use cubnf::nf::frontier::up_domain;
use cubnf::nf::{frontier_netp, HitKind, Ne, NeTp, Nf, NfTp, Split, UpTag};
use cubnf::syntax::{parse_ctx, Ctx};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(xs: &[&str]) -> Vec<Name> {
    xs.iter().map(|x| Name::new(x)).collect()
}

// Cofibration oracle.
//
// A world sends every interval variable to 0, 1, or one of n generic points,
// where n is the number of variables. Every consistent pattern of equalities
// among the variables and the endpoints shows up in some world, so
// quantifying over worlds decides entailment for equational cofibrations.

const MAX_ORACLE_VARS: usize = 4;

fn value(world: &[(Name, usize)], e: &IExpr) -> usize {
    match e {
        IExpr::Zero => 0,
        IExpr::One => 1,
        IExpr::Var(n) => world.iter().find(|(m, _)| m == n).map(|(_, v)| *v).expect("variable in world"),
    }
}

pub fn eval(world: &[(Name, usize)], phi: &Cof) -> bool {
    match phi {
        Cof::Eq(r, s) => value(world, r) == value(world, s),
        Cof::Meet(cs) => cs.iter().all(|c| eval(world, c)),
        Cof::Join(cs) => cs.iter().any(|c| eval(world, c)),
    }
}

/// Every world over `vars`.
pub fn worlds(vars: &[Name]) -> Vec<Vec<(Name, usize)>> {
    assert!(vars.len() <= MAX_ORACLE_VARS, "the oracle enumerates worlds and is meant for few variables");
    let base = vars.len() + 2;
    let total = base.pow(vars.len() as u32);
    (0..total)
        .map(|mut code| {
            vars.iter()
                .map(|v| {
                    let d = code % base;
                    code /= base;
                    (v.clone(), d)
                })
                .collect()
        })
        .collect()
}

fn vars_of(cofs: &[&Cof]) -> Vec<Name> {
    let mut out = BTreeSet::new();
    for c in cofs {
        c.collect_dims(&mut out);
    }
    out.into_iter().collect()
}

pub fn oracle_entails(hyps: &[Cof], goal: &Cof) -> bool {
    let mut all: Vec<&Cof> = hyps.iter().collect();
    all.push(goal);
    worlds(&vars_of(&all))
        .iter()
        .all(|w| !hyps.iter().all(|h| eval(w, h)) || eval(w, goal))
}

/// Whether `hyps` entail `phi` for every value of `i`, with `i` ranging over
/// the extended variable set.
pub fn oracle_entails_forall(hyps: &[Cof], i: &Name, phi: &Cof) -> bool {
    let mut all: Vec<&Cof> = hyps.iter().collect();
    all.push(phi);
    let mut vars = vars_of(&all);
    if !vars.contains(i) {
        vars.push(i.clone());
    }
    worlds(&vars)
        .iter()
        .all(|w| !hyps.iter().all(|h| eval(w, h)) || eval(w, phi))
}

// Cofibration generators.

pub fn iexprs(vars: &[Name]) -> Vec<IExpr> {
    let mut out = vec![IExpr::Zero, IExpr::One];
    out.extend(vars.iter().cloned().map(IExpr::Var));
    out
}

/// `top`, `bot`, and every equation between distinct terms.
pub fn atoms(vars: &[Name]) -> Vec<Cof> {
    let es = iexprs(vars);
    let mut out = vec![Cof::top(), Cof::bot()];
    for (n, a) in es.iter().enumerate() {
        for b in &es[n + 1..] {
            out.push(Cof::eq(a.clone(), b.clone()));
        }
    }
    out
}

/// Binary meets and joins of the given cofibrations.
fn combine(xs: &[Cof], ys: &[Cof]) -> Vec<Cof> {
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            out.push(Cof::meet([x.clone(), y.clone()]));
            out.push(Cof::join([x.clone(), y.clone()]));
        }
    }
    out
}

/// Every cofibration over `vars` with connective depth at most 1.
pub fn depth_one(vars: &[Name]) -> Vec<Cof> {
    let a = atoms(vars);
    let mut out = a.clone();
    out.extend(combine(&a, &a));
    out
}

/// Every cofibration with connective depth exactly 2: a binary connective
/// with a depth-1 argument and an argument of depth at most 1. Equations
/// are taken between variables and endpoints in one fixed orientation, so
/// the family is free of trivial duplicates.
pub fn depth_two(vars: &[Name]) -> Vec<Cof> {
    let a = atoms(vars);
    let d1 = combine(&a, &a);
    let mut upto1 = a;
    upto1.extend(d1.iter().cloned());
    let mut out = Vec::new();
    for x in &d1 {
        for y in &upto1 {
            out.push(Cof::meet([x.clone(), y.clone()]));
            out.push(Cof::join([x.clone(), y.clone()]));
        }
    }
    out
}

pub fn random_cof(rng: &mut impl Rng, vars: &[Name], depth: u32) -> Cof {
    let es = iexprs(vars);
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => Cof::top(),
            1 => Cof::bot(),
            _ => Cof::eq(es.choose(rng).unwrap().clone(), es.choose(rng).unwrap().clone()),
        };
    }
    let n = rng.gen_range(0..=3);
    let args: Vec<Cof> = (0..n).map(|_| random_cof(rng, vars, depth - 1)).collect();
    if rng.gen_bool(0.5) {
        Cof::Meet(args)
    } else {
        Cof::Join(args)
    }
}

// Normal-form generators.
//
// Terms are generated at a handful of closed and neutral types in a fixed
// context, always well typed. They include forms that are not yet in
// canonical shape (a loop at an endpoint, a collapsed neutral, a composition
// whose tube already covers its target) so that decay has work to do.

pub const GEN_CTX: &str = "(ctx (dim i) (dim j) \
    (tm p (path s1 base base)) \
    (tm q (path bool true false)) \
    (tm b bool) (tm c s1) (tm w wbool) \
    (tm A U) (tm a (El A)))";

pub fn gen_ctx() -> Ctx {
    parse_ctx(GEN_CTX).expect("generator context parses")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenTy {
    Bool,
    S1,
    WBool,
    ElA,
    Pair,
}

impl GenTy {
    pub const ALL: [GenTy; 5] = [GenTy::Bool, GenTy::S1, GenTy::WBool, GenTy::ElA, GenTy::Pair];

    pub fn concrete(self) -> &'static str {
        match self {
            GenTy::Bool => "bool",
            GenTy::S1 => "s1",
            GenTy::WBool => "wbool",
            GenTy::ElA => "(El A)",
            GenTy::Pair => "(* s1 bool)",
        }
    }
}

pub struct NfGen<'r, R: Rng> {
    pub rng: &'r mut R,
    /// Interval variables in scope.
    pub dims: Vec<Name>,
    fresh: usize,
}

impl<'r, R: Rng> NfGen<'r, R> {
    pub fn new(rng: &'r mut R, dims: Vec<Name>) -> Self {
        NfGen { rng, dims, fresh: 0 }
    }

    fn iexpr(&mut self) -> IExpr {
        let es = iexprs(&self.dims);
        es.choose(self.rng).unwrap().clone()
    }

    fn var_iexpr(&mut self) -> IExpr {
        match self.dims.choose(self.rng) {
            Some(d) if self.rng.gen_bool(0.8) => IExpr::Var(d.clone()),
            _ => self.iexpr(),
        }
    }

    fn cof(&mut self) -> Cof {
        let d = self.rng.gen_range(0..=2);
        random_cof(self.rng, &self.dims.clone(), d)
    }

    /// A split over `dom` whose payloads are `x` read in each contracted
    /// scope, so the payloads agree wherever clauses overlap.
    fn constant_split(&self, dom: Cof, x: &Nf) -> Split<Nf> {
        let scope = DimScope::new(self.dims.clone());
        let branches = cubnf::cof::dnf(&dom)
            .into_iter()
            .map(|b| {
                let (inner, map) = scope.contract(&b);
                (b, DimSub::new(map, self.dims.clone(), inner.dims).nf(x))
            })
            .collect();
        Split::new(dom, branches)
    }

    fn backup_of_path_app(&self, r: &IExpr, at0: Nf, at1: Nf) -> Split<Nf> {
        let dom = Cof::join([Cof::bot(), Cof::eq(r.clone(), IExpr::Zero), Cof::eq(r.clone(), IExpr::One)]);
        let branches = cubnf::cof::dnf(&dom)
            .into_iter()
            .map(|b| {
                let x = if b.holds(r, &IExpr::Zero) { at0.clone() } else { at1.clone() };
                (b, x)
            })
            .collect();
        Split::new(dom, branches)
    }

    /// A term with no free interval variable other than those in scope,
    /// that mentions none of them: safe to reuse in any contracted scope.
    fn closed(&mut self, ty: GenTy) -> Nf {
        match ty {
            GenTy::Bool | GenTy::WBool => {
                if self.rng.gen_bool(0.5) {
                    Nf::True
                } else {
                    Nf::False
                }
            }
            GenTy::S1 => Nf::Base,
            GenTy::ElA => Nf::up(UpTag::El(NeTp(Ne::var("A"))), Ne::var("a")),
            GenTy::Pair => Nf::Pair(Box::new(Nf::Base), Box::new(Nf::True)),
        }
    }

    pub fn nf(&mut self, ty: GenTy, depth: u32) -> Nf {
        let leaf = depth == 0;
        match ty {
            GenTy::Bool => match self.rng.gen_range(0..if leaf { 3 } else { 6 }) {
                0 => Nf::True,
                1 => Nf::False,
                2 => Nf::up(UpTag::Bool, Ne::var("b")),
                3 => {
                    let r = self.var_iexpr();
                    let backup = self.backup_of_path_app(&r, Nf::True, Nf::False);
                    Nf::Up { tag: UpTag::Bool, ne: Ne::var("q").papp(r), backup }
                }
                4 => {
                    let x = self.nf(GenTy::Bool, depth - 1);
                    Nf::Up { tag: UpTag::Bool, ne: Ne::Star(Cof::top()), backup: Split::leaf(x) }
                }
                _ => {
                    // if on a variable, with branches from the generator
                    let t = self.nf(GenTy::Bool, depth - 1);
                    let f = self.nf(GenTy::Bool, depth - 1);
                    let ne = Ne::If {
                        var: Name::new("x"),
                        motive: Box::new(NfTp::Bool),
                        scrut: Box::new(Ne::var("b")),
                        on_true: Box::new(t),
                        on_false: Box::new(f),
                    };
                    Nf::up(UpTag::Bool, ne)
                }
            },
            GenTy::S1 => match self.rng.gen_range(0..if leaf { 3 } else { 6 }) {
                0 => Nf::Base,
                1 => Nf::Loop(self.var_iexpr()),
                2 => Nf::up(UpTag::S1, Ne::var("c")),
                3 => {
                    let r = self.var_iexpr();
                    let backup = self.backup_of_path_app(&r, Nf::Base, Nf::Base);
                    Nf::Up { tag: UpTag::S1, ne: Ne::var("p").papp(r), backup }
                }
                4 => self.hcomp(HitKind::S1, depth),
                _ => {
                    let x = self.nf(GenTy::S1, depth - 1);
                    Nf::Up { tag: UpTag::S1, ne: Ne::Star(Cof::top()), backup: Split::leaf(x) }
                }
            },
            GenTy::WBool => match self.rng.gen_range(0..if leaf { 3 } else { 4 }) {
                0 => Nf::True,
                1 => Nf::False,
                2 => Nf::up(UpTag::WBool, Ne::var("w")),
                _ => self.hcomp(HitKind::WBool, depth),
            },
            GenTy::ElA => {
                if leaf || self.rng.gen_bool(0.5) {
                    self.closed(GenTy::ElA)
                } else {
                    self.hcomp_stuck(depth)
                }
            }
            GenTy::Pair => Nf::Pair(
                Box::new(self.nf(GenTy::S1, depth.saturating_sub(1))),
                Box::new(self.nf(GenTy::Bool, depth.saturating_sub(1))),
            ),
        }
    }

    fn binder(&mut self) -> Name {
        self.fresh += 1;
        Name::new(&format!("k{}", self.fresh))
    }

    /// A composition value with a tube that is constant in the binder.
    fn hcomp(&mut self, kind: HitKind, depth: u32) -> Nf {
        let ty = if kind == HitKind::S1 { GenTy::S1 } else { GenTy::WBool };
        let src = self.iexpr();
        let dst = self.iexpr();
        let cof = self.cof();
        let var = self.binder();
        let x = if depth > 0 && self.rng.gen_bool(0.5) { self.nf(ty, depth - 1) } else { self.closed(ty) };
        let tube = self.tube(&var, &src, &cof, &x);
        Nf::HCompVal { kind, src, dst, cof, var, tube }
    }

    fn tube(&mut self, var: &Name, src: &IExpr, cof: &Cof, x: &Nf) -> Split<Nf> {
        let dom = Cof::join([Cof::eq(IExpr::Var(var.clone()), src.clone()), cof.clone()]);
        self.dims.push(var.clone());
        let sp = self.constant_split(dom, x);
        self.dims.pop();
        sp
    }

    fn hcomp_stuck(&mut self, depth: u32) -> Nf {
        let src = self.iexpr();
        let dst = self.iexpr();
        let cof = self.cof();
        let var = self.binder();
        let x = self.nf(GenTy::ElA, depth.saturating_sub(1));
        let tube = self.tube(&var, &src, &cof, &x);
        Nf::HCompStuck {
            tp: NeTp(Ne::var("A")),
            src,
            dst,
            cof,
            var,
            tube,
            backup: Split::new(frontier_netp(&NeTp(Ne::var("A"))), vec![]),
        }
    }
}

/// Whether any stabilized or stuck node in `t` has a domain that holds in
/// its scope: a form that should already have decayed.
pub fn has_entailed_frontier(scope: &DimScope, t: &Nf) -> bool {
    let split_any = |scope: &DimScope, sp: &Split<Nf>| {
        sp.branches.iter().any(|(b, x)| has_entailed_frontier(&scope.contract(b).0, x))
    };
    match t {
        Nf::True | Nf::False | Nf::Base => false,
        Nf::Loop(r) => r.is_endpoint(),
        Nf::Lam(_, b) => has_entailed_frontier(scope, b),
        Nf::Pair(a, b) => has_entailed_frontier(scope, a) || has_entailed_frontier(scope, b),
        Nf::PLam(i, b) => has_entailed_frontier(&scope.with_dim(i), b),
        Nf::Code(_) => false,
        Nf::Up { tag, ne, backup } => scope.holds(&up_domain(tag, ne)) || split_any(scope, backup),
        Nf::HCompVal { src, dst, cof, var, tube, .. } => {
            scope.holds(&Cof::join([Cof::eq(src.clone(), dst.clone()), cof.clone()]))
                || split_any(&scope.with_dim(var), tube)
        }
        Nf::HCompStuck { tp, src, dst, cof, var, tube, backup } => {
            scope.holds(&Cof::join([Cof::eq(src.clone(), dst.clone()), cof.clone()]))
                || scope.holds(&frontier_netp(tp))
                || split_any(&scope.with_dim(var), tube)
                || split_any(scope, backup)
        }
        Nf::CoeStuck { var, tp, src, dst, arg, backup } => {
            scope.holds(&Cof::eq(src.clone(), dst.clone()))
                || scope.holds(&cubnf::cof::forall_elim(var, &frontier_netp(tp)))
                || has_entailed_frontier(scope, arg)
                || split_any(scope, backup)
        }
        Nf::Glue { cof, base, fiber } => {
            scope.holds(cof) || has_entailed_frontier(scope, base) || split_any(scope, fiber)
        }
    }
}

/// Every branch of a canonical decomposition, for tests that walk splits.
pub fn branches_of(phi: &Cof) -> Vec<Branch> {
    cubnf::cof::dnf(phi)
}
