// Checking a normal form against its type, and reading the error when the
// backup of a stabilized neutral has the wrong domain.

use cubnf::nf::{check_nf, CheckErrorKind};
use cubnf::syntax::{parse_ctx, parse_nf, parse_tp};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = parse_ctx("(ctx (tm p (path bool true false)) (dim i))")?;
    let ty = parse_tp(&ctx, "bool")?;

    let good = parse_nf(
        &ctx,
        "(up bool (papp p i) (split (or (= i 0) (= i 1)) ((= i 0) true) ((= i 1) false)))",
    )?;
    let warnings = check_nf(&ctx, &good, &ty)?;
    assert!(warnings.is_empty());
    println!("accepted {good}");

    let bad = parse_nf(&ctx, "(up bool (papp p i) (split (= i 0) ((= i 0) true)))")?;
    let err = check_nf(&ctx, &bad, &ty).unwrap_err();
    assert_eq!(err.kind, CheckErrorKind::FrontierMismatch);
    println!("rejected: {} at {}: {}", err.kind, err.path, err.message);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
