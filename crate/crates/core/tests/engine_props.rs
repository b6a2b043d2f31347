mod common;

use common::*;
use cubnf::cof::{DimMap, IExpr};
use cubnf::engine::canon::record_steps;
use cubnf::engine::subst::rename_nf;
use cubnf::engine::{canon, canon_with, eq_nf, subst_i_nf, Strategy as Rules};
use cubnf::name::Name;
use cubnf::nf::{check_nf, Nf};
use cubnf::syntax::parse_tp;
use proptest::prelude::*;

fn arb_term() -> impl Strategy<Value = (GenTy, Nf)> {
    (any::<u64>(), 0usize..GenTy::ALL.len()).prop_map(|(seed, n)| {
        let ty = GenTy::ALL[n];
        (ty, NfGen::new(&mut rng(seed), names(&["i", "j"])).nf(ty, 3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_terms_check((ty, t) in arb_term()) {
        let ctx = gen_ctx();
        let tp = parse_tp(&ctx, ty.concrete()).unwrap();
        let warnings = check_nf(&ctx, &t, &tp).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(warnings.is_empty(), "{:?}", warnings);
    }

    #[test]
    fn canon_is_idempotent_and_shrinks((_, t) in arb_term()) {
        let ctx = gen_ctx();
        let (once, log) = record_steps(|| canon(&ctx, &t));
        prop_assert_eq!(canon(&ctx, &once), once.clone());
        prop_assert!(log.iter().all(|(before, after)| after < before));
        prop_assert!(!has_entailed_frontier(&cubnf::engine::DimScope::of(&ctx), &once));
    }

    #[test]
    fn rule_order_does_not_matter((_, t) in arb_term()) {
        let ctx = gen_ctx();
        let base = canon(&ctx, &t);
        for innermost in [false, true] {
            for stabilizer_first in [false, true] {
                prop_assert_eq!(canon_with(&ctx, &t, Rules { innermost, stabilizer_first }), base.clone());
            }
        }
    }

    #[test]
    fn substitutions_commute((ty, t) in arb_term()) {
        let ctx = gen_ctx();
        let (i, j) = (Name::new("i"), Name::new("j"));
        let ci = ctx.subst_dims(&DimMap::from([(i.clone(), IExpr::Zero)]));
        let cj = ctx.subst_dims(&DimMap::from([(j.clone(), IExpr::One)]));
        let a = subst_i_nf(&ci, &subst_i_nf(&ctx, &t, &i, &IExpr::Zero), &j, &IExpr::One);
        let b = subst_i_nf(&cj, &subst_i_nf(&ctx, &t, &j, &IExpr::One), &i, &IExpr::Zero);
        let both = ci.subst_dims(&DimMap::from([(j, IExpr::One)]));
        prop_assert!(eq_nf(&both, &a, &b), "{} against {} at {:?}", a, b, ty);
    }

    #[test]
    fn substitution_then_equality_is_stable((_, t) in arb_term()) {
        // Substituting a variable for itself only canonicalizes: generated
        // branches can carry stuck forms whose cofibration became trivial.
        let ctx = gen_ctx();
        let i = Name::new("i");
        let same = subst_i_nf(&ctx, &t, &i, &IExpr::Var(i.clone()));
        prop_assert!(eq_nf(&ctx, &same, &canon(&ctx, &t)), "{} against {}", same, t);
    }

    #[test]
    fn equality_ignores_bound_names((_, t) in arb_term()) {
        let ctx = gen_ctx();
        let lam = Nf::Lam(Name::new("y"), Box::new(t.clone()));
        let renamed = Nf::Lam(Name::new("z"), Box::new(rename_nf(&t, &Name::new("y"), &Name::new("z"))));
        prop_assert!(eq_nf(&ctx, &lam, &renamed));
    }
}

#[test]
fn distinct_constructors_differ() {
    let ctx = gen_ctx();
    assert!(!eq_nf(&ctx, &Nf::True, &Nf::False));
    assert!(!eq_nf(&ctx, &Nf::Loop(IExpr::var("i")), &Nf::Loop(IExpr::var("j"))));
}
