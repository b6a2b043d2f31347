// A declaration under a cofibration assumption is a split over it. Clauses
// are read in contracted scopes and must agree where they overlap.

use cubnf::cli::commands::{check_source, CheckOptions};

const SOURCE: &str = "
(nf agree (ctx (dim i) (dim j) (cof (or (= i 0) (= i j)))) s1
  (split (or (= i 0) (= i j)) ((= i 0) (loop j)) ((= i j) (loop i))))

(nf disagree (ctx (dim i) (dim j) (cof (or (= i 0) (= i j)))) bool
  (split (or (= i 0) (= i j)) ((= i 0) true) ((= i j) false)))
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = check_source("splits", SOURCE, CheckOptions::default());
    for d in &report.decls {
        println!("{}: {:?}", d.label, d.status.kind().unwrap_or("ok"));
    }
    assert!(!report.decls[0].status.is_error());
    assert_eq!(report.decls[1].status.kind(), Some("overlap-disagreement"));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
