use std::collections::BTreeSet;

use crate::cof::{Branch, Cof, DimMap};
use crate::name::Name;
use crate::syntax::ast::Tp;
use crate::syntax::subst::Subst;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CtxEntry {
    TmBind(Name, Tp),
    IBind(Name),
    CofAssume(Cof),
}

/// A telescope of term variables, interval variables, and cofibration
/// assumptions.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Ctx {
    entries: Vec<CtxEntry>,
}

impl Ctx {
    pub fn new() -> Self {
        Ctx::default()
    }

    pub fn from_entries(entries: Vec<CtxEntry>) -> Self {
        Ctx { entries }
    }

    pub fn entries(&self) -> &[CtxEntry] {
        &self.entries
    }

    pub fn with_tm(&self, x: Name, tp: Tp) -> Ctx {
        let mut c = self.clone();
        c.entries.push(CtxEntry::TmBind(x, tp));
        c
    }

    pub fn with_dim(&self, i: Name) -> Ctx {
        let mut c = self.clone();
        c.entries.push(CtxEntry::IBind(i));
        c
    }

    pub fn with_cof(&self, phi: Cof) -> Ctx {
        let mut c = self.clone();
        c.entries.push(CtxEntry::CofAssume(phi));
        c
    }

    /// The type of the innermost binding of `x`.
    pub fn lookup(&self, x: &Name) -> Option<&Tp> {
        self.entries.iter().rev().find_map(|e| match e {
            CtxEntry::TmBind(y, tp) if y == x => Some(tp),
            _ => None,
        })
    }

    pub fn has_dim(&self, i: &Name) -> bool {
        self.entries.iter().any(|e| matches!(e, CtxEntry::IBind(j) if j == i))
    }

    /// Interval variables in binding order.
    pub fn dims(&self) -> Vec<Name> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                CtxEntry::IBind(i) => Some(i.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn cof_hyps(&self) -> Vec<Cof> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                CtxEntry::CofAssume(phi) => Some(phi.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn has_cofs(&self) -> bool {
        self.entries.iter().any(|e| matches!(e, CtxEntry::CofAssume(_)))
    }

    /// Every name bound by the context, term or interval.
    pub fn names(&self) -> BTreeSet<Name> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                CtxEntry::TmBind(x, _) | CtxEntry::IBind(x) => Some(x.clone()),
                CtxEntry::CofAssume(_) => None,
            })
            .collect()
    }

    pub fn binds(&self, x: &Name) -> bool {
        self.entries.iter().any(|e| match e {
            CtxEntry::TmBind(y, _) | CtxEntry::IBind(y) => y == x,
            CtxEntry::CofAssume(_) => false,
        })
    }

    /// A variant of `x` not bound in this context.
    pub fn fresh(&self, x: &Name) -> Name {
        x.fresh_against(|n| self.binds(n))
    }

    /// The context without its cofibration assumptions.
    pub fn without_cofs(&self) -> Ctx {
        Ctx {
            entries: self
                .entries
                .iter()
                .filter(|e| !matches!(e, CtxEntry::CofAssume(_)))
                .cloned()
                .collect(),
        }
    }

    /// Applies an interval substitution to every entry, removing the
    /// interval variables it moves.
    pub fn subst_dims(&self, map: &DimMap) -> Ctx {
        let sub = Subst::dims(map.clone());
        let entries = self
            .entries
            .iter()
            .filter_map(|e| match e {
                CtxEntry::IBind(i) if map.get(i).is_some_and(|r| r.as_var() != Some(i)) => None,
                CtxEntry::IBind(i) => Some(CtxEntry::IBind(i.clone())),
                CtxEntry::TmBind(x, tp) => Some(CtxEntry::TmBind(x.clone(), sub.tp(tp))),
                CtxEntry::CofAssume(phi) => Some(CtxEntry::CofAssume(phi.subst_map(map))),
            })
            .collect();
        Ctx { entries }
    }

    /// Contracts the context along a consistent branch: non-representative
    /// interval variables are removed and substituted by their
    /// representatives, and cofibration assumptions are dropped.
    pub fn contract(&self, branch: &Branch) -> (Ctx, DimMap) {
        let (map, _) = branch.contraction(&self.dims());
        (self.without_cofs().subst_dims(&map), map)
    }
}
