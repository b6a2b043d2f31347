//! Interval substitution with destabilization, directed decay rewriting,
//! equality of normal forms, embedding into raw terms, and the bounded
//! conversion oracle used for side conditions.

pub mod canon;
pub mod convert;
pub mod embed;
pub mod eq;
pub mod subst;

use crate::cof::{entails, Branch, Cof, DimMap};
use crate::name::Name;
use crate::syntax::ctx::Ctx;

pub use canon::{canon, canon_nftp, canon_with, size_nf, CanonStats, Strategy};
pub use convert::{bounded_convert, bounded_convert_at, bounded_convert_tp, ConvVerdict, UnknownReason};
pub use embed::{embed, embed_ne, embed_nftp, EmbedError};
pub use eq::{eq_ne, eq_nf, eq_nftp};
pub use subst::{subst_i_nf, subst_i_nftp, DimSub};

/// The interval part of a context: interval variables in binding order and
/// the cofibration hypotheses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimScope {
    pub dims: Vec<Name>,
    pub hyps: Vec<Cof>,
}

impl DimScope {
    pub fn new(dims: Vec<Name>) -> Self {
        DimScope { dims, hyps: Vec::new() }
    }

    pub fn of(ctx: &Ctx) -> Self {
        DimScope { dims: ctx.dims(), hyps: ctx.cof_hyps() }
    }

    pub fn holds(&self, phi: &Cof) -> bool {
        entails(&self.hyps, phi)
    }

    pub fn with_dim(&self, i: &Name) -> DimScope {
        let mut s = self.clone();
        s.dims.retain(|d| d != i);
        s.dims.push(i.clone());
        s
    }

    /// A variant of `i` not in scope.
    pub fn fresh(&self, i: &Name) -> Name {
        i.fresh_against(|n| self.dims.contains(n))
    }

    /// The scope seen by a split payload on `branch`, with the contraction
    /// that produced it.
    pub fn contract(&self, branch: &Branch) -> (DimScope, DimMap) {
        let (map, kept) = branch.contraction(&self.dims);
        let hyps = self.hyps.iter().map(|h| h.subst_map(&map)).collect();
        (DimScope { dims: kept, hyps }, map)
    }
}
