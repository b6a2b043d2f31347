//! Smart constructors: build a stabilized or stuck form, or return the value
//! it is equal to when the context already makes it unstable.

use thiserror::Error;

use crate::cof::{cof_eq, forall_elim, Cof, IExpr};
use crate::engine::canon::{select, tube_at};
use crate::engine::DimScope;
use crate::name::Name;
use crate::nf::frontier::{frontier_netp, up_domain};
use crate::nf::{Ne, NeTp, Nf, NfTp, Split, UpTag};
use crate::syntax::ctx::Ctx;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SmartError {
    #[error("backup is over `{found}` but must cover `{expected}`")]
    BackupDomainMismatch { expected: Cof, found: Cof },
    #[error("the context entails `{0}` but the backup has no payload there")]
    MissingPayload(Cof),
}

type Result<T> = std::result::Result<T, SmartError>;

fn covers<X>(scope: &DimScope, expected: &Cof, backup: &Split<X>) -> Result<()> {
    if cof_eq(&scope.hyps, expected, &backup.dom) {
        Ok(())
    } else {
        Err(SmartError::BackupDomainMismatch { expected: expected.clone(), found: backup.dom.clone() })
    }
}

fn pick<X: Clone>(scope: &DimScope, dom: &Cof, backup: &Split<X>) -> Result<X> {
    select(scope, backup).ok_or_else(|| SmartError::MissingPayload(dom.clone()))
}

/// `↑(ne, backup)`, or the backup's value when the neutral's frontier holds.
pub fn mk_up(ctx: &Ctx, tag: UpTag, ne: Ne, backup: Split<Nf>) -> Result<Nf> {
    let scope = DimScope::of(ctx);
    let dom = up_domain(&tag, &ne);
    covers(&scope, &dom, &backup)?;
    if scope.holds(&dom) {
        pick(&scope, &dom, &backup)
    } else {
        Ok(Nf::Up { tag, ne, backup })
    }
}

/// The neutral type `El(tp)` stabilized by `backup`.
pub fn mk_up_tp(ctx: &Ctx, tp: NeTp, backup: Split<NfTp>) -> Result<NfTp> {
    let scope = DimScope::of(ctx);
    let dom = frontier_netp(&tp);
    covers(&scope, &dom, &backup)?;
    if scope.holds(&dom) {
        pick(&scope, &dom, &backup)
    } else {
        Ok(NfTp::Up { tp, backup })
    }
}

/// A composition stuck on a neutral type. Collapses to the tube at `dst`
/// when `(src = dst) ∨ cof` holds, and to the stabilizer when the type's
/// frontier holds.
#[allow(clippy::too_many_arguments)]
pub fn mk_hcomp_stuck(
    ctx: &Ctx,
    tp: NeTp,
    src: IExpr,
    dst: IExpr,
    cof: Cof,
    var: Name,
    tube: Split<Nf>,
    backup: Split<Nf>,
) -> Result<Nf> {
    let scope = DimScope::of(ctx);
    let dom = frontier_netp(&tp);
    covers(&scope, &dom, &backup)?;
    let cap = Cof::join([Cof::eq(src.clone(), dst.clone()), cof.clone()]);
    if scope.holds(&cap) {
        return tube_at(&scope, &var, &tube, &dst).ok_or(SmartError::MissingPayload(cap));
    }
    if scope.holds(&dom) {
        return pick(&scope, &dom, &backup);
    }
    Ok(Nf::HCompStuck { tp, src, dst, cof, var, tube, backup })
}

/// A coercion along a neutral type line. The stabilizer covers the
/// frontier of the line quantified over `var`.
pub fn mk_coe_stuck(
    ctx: &Ctx,
    var: Name,
    tp: NeTp,
    src: IExpr,
    dst: IExpr,
    arg: Nf,
    backup: Split<Nf>,
) -> Result<Nf> {
    let scope = DimScope::of(ctx);
    let dom = forall_elim(&var, &frontier_netp(&tp));
    covers(&scope, &dom, &backup)?;
    if scope.holds(&Cof::eq(src.clone(), dst.clone())) {
        return Ok(arg);
    }
    if scope.holds(&dom) {
        return pick(&scope, &dom, &backup);
    }
    Ok(Nf::CoeStuck { var, tp, src, dst, arg: Box::new(arg), backup })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cof::Branch;

    fn ctx_i() -> Ctx {
        Ctx::new().with_dim(Name::new("i"))
    }

    #[test]
    fn variable_stays_wrapped() {
        let t = mk_up(&ctx_i(), UpTag::Bool, Ne::var("x"), Split::empty()).unwrap();
        assert_eq!(t, Nf::up(UpTag::Bool, Ne::var("x")));
    }

    #[test]
    fn star_returns_backup() {
        let t = mk_up(&ctx_i(), UpTag::Bool, Ne::Star(Cof::top()), Split::leaf(Nf::True)).unwrap();
        assert_eq!(t, Nf::True);
    }

    #[test]
    fn wrong_backup_domain() {
        let e = Ne::var("p").papp(IExpr::var("i"));
        let err = mk_up(&ctx_i(), UpTag::Bool, e, Split::empty()).unwrap_err();
        assert!(matches!(err, SmartError::BackupDomainMismatch { .. }));
    }

    #[test]
    fn idempotent() {
        let e = Ne::var("p").papp(IExpr::var("i"));
        let i = IExpr::var("i");
        let backup = Split::new(
            frontier_netp(&NeTp(e.clone())),
            vec![(Branch::atom(&IExpr::Zero, &i), Nf::True), (Branch::atom(&IExpr::One, &i), Nf::False)],
        );
        let once = mk_up(&ctx_i(), UpTag::Bool, e, backup).unwrap();
        let Nf::Up { tag, ne, backup } = once.clone() else { panic!("expected a stabilized neutral") };
        assert_eq!(mk_up(&ctx_i(), tag, ne, backup).unwrap(), once);
    }

    #[test]
    fn degenerate_hcomp_is_its_tube() {
        let tube = Split::new(
            Cof::join([Cof::eq(IExpr::var("k"), IExpr::Zero), Cof::bot()]),
            vec![(Branch::atom(&IExpr::Zero, &IExpr::var("k")), Nf::True)],
        );
        let tp = NeTp(Ne::var("A"));
        let t = mk_hcomp_stuck(&ctx_i(), tp, IExpr::Zero, IExpr::Zero, Cof::bot(), Name::new("k"), tube, Split::empty());
        assert_eq!(t.unwrap(), Nf::True);
    }
}
