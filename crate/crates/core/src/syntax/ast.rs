use crate::cof::{Cof, IExpr};
use crate::name::Name;

/// Raw types.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tp {
    Pi(Name, Box<Tp>, Box<Tp>),
    Sigma(Name, Box<Tp>, Box<Tp>),
    Bool,
    /// Booleans whose homogeneous compositions are values.
    WBool,
    S1,
    U,
    El(Box<Tm>),
    /// Dependent path type; `Name` binds in the family only.
    Path(Name, Box<Tp>, Box<Tm>, Box<Tm>),
    /// `Glue^φ(B, A, e)`. `A` and `e` are only meaningful under `φ`.
    Glue {
        cof: Cof,
        base: Box<Tp>,
        fiber: Box<Tp>,
        equiv: Box<Tm>,
    },
    Split(Vec<(Cof, Tp)>),
}

/// Raw terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tm {
    Var(Name),
    Lam(Name, Box<Tm>),
    App(Box<Tm>, Box<Tm>),
    Pair(Box<Tm>, Box<Tm>),
    Fst(Box<Tm>),
    Snd(Box<Tm>),
    True,
    False,
    If {
        var: Name,
        motive: Box<Tp>,
        scrut: Box<Tm>,
        on_true: Box<Tm>,
        on_false: Box<Tm>,
    },
    /// The code `⌈A⌉ : U`.
    Code(Box<Tp>),
    PLam(Name, Box<Tm>),
    PApp(Box<Tm>, IExpr),
    HComp {
        tp: Box<Tp>,
        src: IExpr,
        dst: IExpr,
        cof: Cof,
        var: Name,
        tube: Box<Tm>,
    },
    Coe {
        var: Name,
        tp: Box<Tp>,
        src: IExpr,
        dst: IExpr,
        arg: Box<Tm>,
    },
    GlueIntro(Cof, Box<Tm>, Box<Tm>),
    Unglue(Box<Tm>),
    Base,
    Loop(IExpr),
    S1Elim {
        var: Name,
        motive: Box<Tp>,
        scrut: Box<Tm>,
        base: Box<Tm>,
        dim: Name,
        loop_case: Box<Tm>,
    },
    /// Cofibration case split `[φ₁ ↪ t₁; …]`; the empty split lives under `bot`.
    Split(Vec<(Cof, Tm)>),
}

impl Tm {
    pub fn var(name: &str) -> Tm {
        Tm::Var(Name::new(name))
    }

    pub fn app(f: Tm, a: Tm) -> Tm {
        Tm::App(Box::new(f), Box::new(a))
    }

    /// Applies an equivalence as a function: `e(a)` is `fst(e) a`.
    pub fn apply_equiv(e: Tm, a: Tm) -> Tm {
        Tm::app(Tm::Fst(Box::new(e)), a)
    }
}

impl Tp {
    pub fn arrow(a: Tp, b: Tp) -> Tp {
        Tp::Pi(Name::new("_"), Box::new(a), Box::new(b))
    }
}
