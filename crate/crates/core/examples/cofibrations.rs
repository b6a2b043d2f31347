// Deciding cofibrations: entailment, the canonical disjunctive form, and
// eliminating a universally quantified interval variable.

use cubnf::syntax::parse_cof;
use cubnf::{dnf, entails, forall_elim, Name};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let hyps = [parse_cof("(= i j)")?, parse_cof("(= j 0)")?];
    let goal = parse_cof("(= i 0)")?;
    assert!(entails(&hyps, &goal));
    println!("(= i j), (= j 0) entail (= i 0)");

    // The boundary of i is not true on its own.
    let boundary = parse_cof("(or (= i 0) (= i 1))")?;
    assert!(!entails(&[], &boundary));

    let phi = parse_cof("(or (= i 0) (and (= j 1) (= i j)))")?;
    for clause in dnf(&phi) {
        println!("clause {}", clause.to_cof());
    }

    // Nothing about i survives quantification over i.
    let q = forall_elim(&Name::new("i"), &parse_cof("(or (= i 0) (= j 1))")?);
    assert_eq!(q.to_string(), "(or bot (= j 1))");
    println!("forall i. (i = 0) or (j = 1)  ~>  {q}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
