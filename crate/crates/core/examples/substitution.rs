// Interval substitution into normal forms. Neutrals whose frontier becomes
// true are replaced by their backups, so the result is normal again.

use cubnf::engine::subst_i_nf;
use cubnf::nf::check_nf;
use cubnf::syntax::{parse_ctx, parse_nf, parse_tp};
use cubnf::{IExpr, Name};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = parse_ctx("(ctx (tm p (path bool true false)) (dim i) (dim j))")?;
    let ty = parse_tp(&ctx, "bool")?;
    let t = parse_nf(
        &ctx,
        "(up bool (papp p i) (split (or (= i 0) (= i 1)) ((= i 0) true) ((= i 1) false)))",
    )?;
    let i = Name::new("i");
    for r in [IExpr::Zero, IExpr::One, IExpr::var("j")] {
        let out = subst_i_nf(&ctx, &t, &i, &r);
        let mut map = cubnf::cof::DimMap::new();
        map.insert(i.clone(), r.clone());
        check_nf(&ctx.subst_dims(&map), &out, &ty)?;
        println!("[{r}/i]  {out}");
    }
    assert_eq!(subst_i_nf(&ctx, &t, &i, &IExpr::One).to_string(), "false");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
