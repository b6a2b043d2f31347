// Parsing and printing declarations. Printing uses sugar only where it
// reads back to the same tree.

use cubnf::syntax::{parse_decls, print_decls, Decl};

const SOURCE: &str = "
(nf swap (ctx (tm p (* bool wbool))) (* wbool bool)
  (pair (up wbool (snd p) (split bot)) (up bool (fst p) (split bot))))
(assert-cof (hyps (= i j) (= j 0)) (forall k (or (= i 0) (= k 1))))
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let items = parse_decls(SOURCE)?;
    let printed = print_decls(items.iter().map(|it| &it.decl));
    print!("{printed}");
    let again = parse_decls(&printed)?;
    let a: Vec<&Decl> = items.iter().map(|it| &it.decl).collect();
    let b: Vec<&Decl> = again.iter().map(|it| &it.decl).collect();
    assert_eq!(a, b);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
