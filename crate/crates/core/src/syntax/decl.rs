use crate::cof::Cof;
use crate::name::Name;
use crate::nf::{Nf, Split};
use crate::syntax::ast::{Tm, Tp};
use crate::syntax::ctx::Ctx;
use crate::syntax::sexp::Pos;

/// The body of an `nf` declaration. A context with cofibration assumptions
/// requires a split over their conjunction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NfBody {
    Plain(Nf),
    Split(Split<Nf>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decl {
    Def {
        name: Name,
        ctx: Ctx,
        tp: Tp,
        tm: Tm,
    },
    Nf {
        name: Name,
        ctx: Ctx,
        tp: Tp,
        body: NfBody,
    },
    AssertEqNf {
        ctx: Ctx,
        tp: Tp,
        lhs: NfBody,
        rhs: NfBody,
    },
    AssertCof {
        hyps: Vec<Cof>,
        goal: Cof,
    },
}

impl Decl {
    pub fn name(&self) -> Option<&Name> {
        match self {
            Decl::Def { name, .. } | Decl::Nf { name, .. } => Some(name),
            _ => None,
        }
    }

    /// A short label for reports: the declared name, or the form's keyword.
    pub fn label(&self) -> String {
        match self {
            Decl::Def { name, .. } | Decl::Nf { name, .. } => name.to_string(),
            Decl::AssertEqNf { .. } => "assert-eq-nf".into(),
            Decl::AssertCof { .. } => "assert-cof".into(),
        }
    }
}

/// A declaration with the position of its opening parenthesis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Item {
    pub pos: Pos,
    pub decl: Decl,
}
