// Building stabilized neutrals with the smart constructors, which return the
// backup as soon as the frontier holds.

use cubnf::nf::smart::SmartError;
use cubnf::nf::{mk_up, Ne, Nf, Split, UpTag};
use cubnf::syntax::Ctx;
use cubnf::{Branch, Cof, IExpr, Name};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = Ctx::new().with_dim(Name::new("i"));
    let i = IExpr::var("i");
    let backup = Split::new(
        Cof::boundary(&i),
        vec![(Branch::atom(&IExpr::Zero, &i), Nf::True), (Branch::atom(&IExpr::One, &i), Nf::False)],
    );
    let t = mk_up(&ctx, UpTag::Bool, Ne::var("p").papp(i.clone()), backup)?;
    println!("stabilized: {t}");

    // At an endpoint the frontier holds and the backup takes over.
    let at0 = Split::new(Cof::boundary(&IExpr::Zero), vec![(Branch::top(), Nf::True)]);
    let t0 = mk_up(&ctx, UpTag::Bool, Ne::var("p").papp(IExpr::Zero), at0)?;
    assert_eq!(t0, Nf::True);
    println!("at 0: {t0}");

    let collapsed = mk_up(&ctx, UpTag::S1, Ne::Star(Cof::top()), Split::leaf(Nf::Loop(i.clone())))?;
    assert_eq!(collapsed, Nf::Loop(i));

    let err = mk_up(&ctx, UpTag::Bool, Ne::var("p").papp(IExpr::var("i")), Split::empty()).unwrap_err();
    assert!(matches!(err, SmartError::BackupDomainMismatch { .. }));
    println!("refused: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
