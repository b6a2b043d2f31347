// The frontier of instability of a neutral: where it may stop being
// neutral after an interval substitution.

use cubnf::nf::{frontier, Ne};
use cubnf::{cof_eq, Cof, IExpr};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = Ne::var("x");
    assert_eq!(frontier(&x), Cof::bot());

    // p @ i decays at either end of i.
    let i = IExpr::var("i");
    let pi = Ne::var("p").papp(i.clone());
    assert!(cof_eq(&[], &frontier(&pi), &Cof::boundary(&i)));
    println!("frontier of (papp p i) is {}", frontier(&pi));

    // Applying the result inherits the frontier of the function.
    let applied = Ne::var("f").papp(i.clone()).app(cubnf::nf::Nf::True);
    println!("frontier of (app (papp f i) true) is {}", frontier(&applied));

    let phi = Cof::eq(i, IExpr::var("j"));
    let g = Ne::Unglue(phi.clone(), Box::new(x));
    assert!(cof_eq(&[], &frontier(&g), &phi));
    println!("frontier of (unglue {phi} x) is {}", frontier(&g));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
