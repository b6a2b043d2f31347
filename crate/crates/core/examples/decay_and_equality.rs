// Equality of normal forms: both sides decay to canonical shape and are
// then compared up to renaming of bound variables.

use cubnf::engine::{canon, eq_nf};
use cubnf::syntax::{parse_ctx, parse_nf};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = parse_ctx("(ctx (dim i) (tm A U) (tm a (El A)))")?;
    let base = parse_nf(&ctx, "base")?;
    for r in ["0", "1"] {
        let l = parse_nf(&ctx, &format!("(loop {r})"))?;
        assert!(eq_nf(&ctx, &l, &base));
        println!("(loop {r}) = base");
    }
    assert!(!eq_nf(&ctx, &parse_nf(&ctx, "(loop i)")?, &base));

    // A composition from i to i is its tube at i.
    let stuck = parse_nf(
        &ctx,
        "(hcomp-stuck (El A) i i bot k (split (= k i) ((= i k) (up (El A) a (split bot)))) (split bot))",
    )?;
    println!("{stuck}\n  ~> {}", canon(&ctx, &stuck));

    let a = parse_nf(&ctx, "(lam x (plam j (loop j)))")?;
    let b = parse_nf(&ctx, "(lam y (plam k (loop k)))")?;
    assert!(eq_nf(&ctx, &a, &b));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
