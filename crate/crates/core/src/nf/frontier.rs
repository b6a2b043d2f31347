use crate::cof::{Cof, IExpr};
use crate::nf::{Ne, NeTp, UpTag};

/// The frontier of instability of a neutral.
///
/// Variables are never unstable. Path application adds the boundary of its
/// interval argument, unglue adds the glue cofibration, and the remaining
/// eliminators inherit the frontier of the neutral they eliminate.
pub fn frontier(e: &Ne) -> Cof {
    match e {
        Ne::Var(_) => Cof::bot(),
        Ne::App(f, _) => frontier(f),
        Ne::Fst(p) | Ne::Snd(p) => frontier(p),
        Ne::If { scrut, .. } | Ne::S1Elim { scrut, .. } => frontier(scrut),
        Ne::PApp(p, r) => Cof::join([
            frontier(p),
            Cof::eq(r.clone(), IExpr::Zero),
            Cof::eq(r.clone(), IExpr::One),
        ]),
        Ne::Unglue(phi, g) => Cof::join([frontier(g), phi.clone()]),
        Ne::Star(phi) => phi.clone(),
    }
}

pub fn frontier_netp(t: &NeTp) -> Cof {
    frontier(&t.0)
}

/// The domain a stabilized neutral's backup must cover: the neutral's
/// frontier, joined with the type's frontier when the type is itself neutral.
pub fn up_domain(tag: &UpTag, ne: &Ne) -> Cof {
    match tag {
        UpTag::El(tp) => Cof::join([frontier_netp(tp), frontier(ne)]),
        _ => frontier(ne),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cof::{cof_eq, IExpr};
    use crate::nf::Nf;

    #[test]
    fn variables_are_never_unstable() {
        assert_eq!(frontier(&Ne::var("x")), Cof::bot());
    }

    #[test]
    fn path_application_records_the_boundary() {
        let p = Ne::var("p").papp(IExpr::var("i"));
        assert_eq!(
            frontier(&p),
            Cof::join([
                Cof::bot(),
                Cof::eq(IExpr::var("i"), IExpr::Zero),
                Cof::eq(IExpr::var("i"), IExpr::One)
            ])
        );
    }

    #[test]
    fn application_leaves_the_frontier_alone() {
        let inner = Ne::var("p").papp(IExpr::var("i"));
        let e = inner.clone().app(Nf::True);
        assert_eq!(frontier(&e), frontier(&inner));
    }

    #[test]
    fn unglue_joins_the_glue_cofibration() {
        let phi = Cof::eq(IExpr::var("i"), IExpr::var("j"));
        let g = Ne::var("g").papp(IExpr::var("k"));
        let e = Ne::Unglue(phi.clone(), Box::new(g.clone()));
        assert_eq!(frontier(&e), Cof::join([frontier(&g), phi.clone()]));
        assert!(cof_eq(&[], &frontier(&e), &Cof::join([phi, Cof::boundary(&IExpr::var("k"))])));
    }
}
