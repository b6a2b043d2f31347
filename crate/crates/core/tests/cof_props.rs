mod common;

use common::*;
use cubnf::cof::{cof_eq, dnf, entails, forall_elim, is_inconsistent, Cof, IExpr};
use cubnf::name::Name;
use proptest::prelude::*;

fn arb_cof(vars: &'static [&'static str], depth: u32) -> impl Strategy<Value = Cof> {
    any::<u64>().prop_map(move |seed| random_cof(&mut rng(seed), &names(vars), depth))
}

const V3: &[&str] = &["i", "j", "k"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn entails_matches_oracle(h in arb_cof(V3, 3), g in arb_cof(V3, 3)) {
        prop_assert_eq!(entails(&[h.clone()], &g), oracle_entails(&[h], &g));
    }

    #[test]
    fn equal_cofibrations_share_their_decomposition(phi in arb_cof(V3, 3), psi in arb_cof(V3, 3)) {
        if cof_eq(&[], &phi, &psi) {
            prop_assert_eq!(dnf(&phi), dnf(&psi));
        }
        // Trivial rewrites never change the decomposition.
        let padded = Cof::join([Cof::meet([phi.clone(), Cof::top()]), Cof::bot()]);
        prop_assert_eq!(dnf(&padded), dnf(&phi));
    }

    #[test]
    fn decomposition_is_a_fixed_point(phi in arb_cof(V3, 3)) {
        let back = Cof::join(dnf(&phi).iter().map(|b| b.to_cof()));
        prop_assert!(cof_eq(&[], &back, &phi));
        prop_assert_eq!(dnf(&back), dnf(&phi));
    }

    #[test]
    fn clauses_are_consistent_and_irredundant(phi in arb_cof(V3, 3)) {
        let bs = dnf(&phi);
        for (n, a) in bs.iter().enumerate() {
            prop_assert!(a.is_consistent());
            for (m, b) in bs.iter().enumerate() {
                prop_assert!(n == m || !a.satisfies(b), "{} absorbs {}", b.to_cof(), a.to_cof());
            }
        }
    }

    #[test]
    fn forall_is_the_weakest_quantifier_free_bound(phi in arb_cof(V3, 3), h in arb_cof(&["j", "k"], 2)) {
        let i = Name::new("i");
        let q = forall_elim(&i, &phi);
        prop_assert!(!q.mentions(&i));
        prop_assert!(entails(&[q.clone()], &phi));
        prop_assert_eq!(entails(&[h.clone()], &q), oracle_entails_forall(&[h], &i, &phi));
    }

    #[test]
    fn substitution_preserves_entailment(h in arb_cof(V3, 2), g in arb_cof(V3, 2), r in 0usize..4) {
        let target = [IExpr::Zero, IExpr::One, IExpr::var("j"), IExpr::var("k")][r].clone();
        let i = Name::new("i");
        if entails(&[h.clone()], &g) {
            prop_assert!(entails(&[h.subst(&i, &target)], &g.subst(&i, &target)));
        }
    }
}

#[test]
fn endpoints_are_distinct() {
    assert!(is_inconsistent(&[Cof::eq(IExpr::Zero, IExpr::One)]));
    assert!(cof_eq(&[], &Cof::eq(IExpr::Zero, IExpr::One), &Cof::bot()));
}

#[test]
fn transitivity_through_a_chain() {
    let v = |s: &str| IExpr::var(s);
    let hyps = [Cof::eq(v("i"), v("j")), Cof::eq(v("j"), v("k")), Cof::eq(v("k"), IExpr::One)];
    assert!(entails(&hyps, &Cof::eq(v("i"), IExpr::One)));
    assert!(oracle_entails(&hyps, &Cof::eq(v("i"), IExpr::One)));
}

#[test]
fn oracle_worlds_cover_every_pattern() {
    // Two variables: each is 0, 1, or one of two generic points.
    assert_eq!(worlds(&names(&["i", "j"])).len(), 16);
}
