//! Normal and neutral forms.
//!
//! Neutrals carry a frontier of instability, computed by [`frontier`] rather
//! than stored. Normal forms that wrap a neutral carry a backup over that
//! frontier, decomposed up front into a [`Split`].

pub mod check;
pub mod frontier;
pub mod smart;

use crate::cof::{Branch, Cof, IExpr};
use crate::name::Name;

pub use check::{check_ne, check_netp, check_nf, check_nftp, check_split, CheckError, CheckErrorKind, Checker, Warning};
pub use frontier::{frontier, frontier_netp};
pub use smart::{mk_coe_stuck, mk_hcomp_stuck, mk_up, mk_up_tp};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Ne {
    Var(Name),
    App(Box<Ne>, Box<Nf>),
    Fst(Box<Ne>),
    Snd(Box<Ne>),
    If {
        var: Name,
        motive: Box<NfTp>,
        scrut: Box<Ne>,
        on_true: Box<Nf>,
        on_false: Box<Nf>,
    },
    PApp(Box<Ne>, IExpr),
    /// Unglue of a neutral of type `Glue^φ(…)`; `φ` is recorded here so the
    /// frontier is a function of the term alone.
    Unglue(Cof, Box<Ne>),
    S1Elim {
        var: Name,
        motive: Box<NfTp>,
        scrut: Box<Ne>,
        base: Box<Nf>,
        dim: Name,
        loop_case: Box<Nf>,
    },
    /// The collapsed neutral, well-formed only where its frontier holds.
    Star(Cof),
}

/// A neutral type `El(C)` for a neutral code `C`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NeTp(pub Ne);

/// The types at which a neutral may be stabilized into a normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum UpTag {
    Bool,
    WBool,
    S1,
    El(NeTp),
}

/// Higher inductive types whose compositions are values.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HitKind {
    WBool,
    S1,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Nf {
    Lam(Name, Box<Nf>),
    Pair(Box<Nf>, Box<Nf>),
    True,
    False,
    Code(Box<NfTp>),
    PLam(Name, Box<Nf>),
    Glue {
        cof: Cof,
        base: Box<Nf>,
        fiber: Split<Nf>,
    },
    Base,
    Loop(IExpr),
    /// `hcomp` as a value of a higher inductive type. The tube is split over
    /// `(var = src) ∨ cof` in the context extended by `var`.
    HCompVal {
        kind: HitKind,
        src: IExpr,
        dst: IExpr,
        cof: Cof,
        var: Name,
        tube: Split<Nf>,
    },
    /// `hcomp` stuck on a neutral type, with a stabilizer over the type's
    /// frontier.
    HCompStuck {
        tp: NeTp,
        src: IExpr,
        dst: IExpr,
        cof: Cof,
        var: Name,
        tube: Split<Nf>,
        backup: Split<Nf>,
    },
    /// `coe` stuck on a neutral type line `var. tp`, with a stabilizer over
    /// `∀var. frontier(tp)`.
    CoeStuck {
        var: Name,
        tp: NeTp,
        src: IExpr,
        dst: IExpr,
        arg: Box<Nf>,
        backup: Split<Nf>,
    },
    /// A stabilized neutral `↑(ne, backup)`.
    Up {
        tag: UpTag,
        ne: Ne,
        backup: Split<Nf>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NfTp {
    Pi(Name, Box<NfTp>, Box<NfTp>),
    Sigma(Name, Box<NfTp>, Box<NfTp>),
    Bool,
    WBool,
    S1,
    U,
    Path(Name, Box<NfTp>, Box<Nf>, Box<Nf>),
    Glue {
        cof: Cof,
        base: Box<NfTp>,
        fiber: Split<NfTp>,
        equiv: Split<Nf>,
    },
    Up {
        tp: NeTp,
        backup: Split<NfTp>,
    },
}

/// A normal form under a cofibration, decomposed along the canonical
/// disjunctive normal form of its domain.
///
/// Each branch is a conjunctive clause; its payload lives in the context
/// contracted along that clause (non-representative interval variables
/// removed and replaced by their representatives). The empty split is the
/// only inhabitant over `bot`; over `top` there is a single payload under the
/// empty clause.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Split<X> {
    pub dom: Cof,
    pub branches: Vec<(Branch, X)>,
}

impl<X> Split<X> {
    pub fn new(dom: Cof, mut branches: Vec<(Branch, X)>) -> Self {
        branches.sort_by(|a, b| a.0.cmp(&b.0));
        Split { dom, branches }
    }

    pub fn empty() -> Self {
        Split { dom: Cof::bot(), branches: Vec::new() }
    }

    /// The split over `top` with a single payload.
    pub fn leaf(x: X) -> Self {
        Split { dom: Cof::top(), branches: vec![(Branch::top(), x)] }
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    /// The payload of the unconditional branch, present exactly when the
    /// split is over a true cofibration.
    pub fn total(&self) -> Option<&X> {
        self.branches.iter().find(|(b, _)| b.is_top()).map(|(_, x)| x)
    }

    pub fn get(&self, branch: &Branch) -> Option<&X> {
        self.branches.iter().find(|(b, _)| b == branch).map(|(_, x)| x)
    }

    pub fn map<Y>(&self, mut f: impl FnMut(&Branch, &X) -> Y) -> Split<Y> {
        Split {
            dom: self.dom.clone(),
            branches: self.branches.iter().map(|(b, x)| (b.clone(), f(b, x))).collect(),
        }
    }
}

impl Ne {
    pub fn var(name: &str) -> Ne {
        Ne::Var(Name::new(name))
    }

    pub fn papp(self, r: IExpr) -> Ne {
        Ne::PApp(Box::new(self), r)
    }

    pub fn app(self, a: Nf) -> Ne {
        Ne::App(Box::new(self), Box::new(a))
    }

    /// The innermost head of the eliminator spine.
    pub fn head(&self) -> &Ne {
        match self {
            Ne::App(h, _) | Ne::Fst(h) | Ne::Snd(h) | Ne::PApp(h, _) | Ne::Unglue(_, h) => h.head(),
            Ne::If { scrut, .. } | Ne::S1Elim { scrut, .. } => scrut.head(),
            Ne::Var(_) | Ne::Star(_) => self,
        }
    }
}

impl Nf {
    /// A variable or other neutral of a stable type, with an empty backup.
    pub fn up(tag: UpTag, ne: Ne) -> Nf {
        Nf::Up { tag, ne, backup: Split::empty() }
    }
}
