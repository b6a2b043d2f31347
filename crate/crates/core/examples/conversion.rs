// The bounded conversion oracle on raw terms. It answers yes, no, or
// unknown, with a reason when it gives up.

use cubnf::engine::{bounded_convert, ConvVerdict, UnknownReason};
use cubnf::syntax::{parse_ctx, parse_tm};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = parse_ctx("(ctx (tm p (path bool true false)) (tm f (-> bool bool)) (tm g (-> bool bool)))")?;
    let tm = |s: &str| parse_tm(&ctx, s);

    let v = bounded_convert(&ctx, &tm("(papp p 0)")?, &tm("true")?, 1000);
    assert_eq!(v, ConvVerdict::Yes);

    let v = bounded_convert(&ctx, &tm("(app (lam x x) false)")?, &tm("true")?, 1000);
    assert_eq!(v, ConvVerdict::No);

    // Two different variables applied to the same argument: not decided.
    let v = bounded_convert(&ctx, &tm("(app f true)")?, &tm("(app g true)")?, 1000);
    assert!(matches!(v, ConvVerdict::Unknown(UnknownReason::UnorientedEquation)));

    let v = bounded_convert(&ctx, &tm("(papp p 1)")?, &tm("false")?, 0);
    println!("with no fuel: {v:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
