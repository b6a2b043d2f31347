// Checking declaration files the way `cubnf check --json` does.

use std::path::PathBuf;

use cubnf::cli::commands::{check_files, CheckOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/positive");
    let files = vec![dir.join("path_app_frontier.cub"), dir.join("circle_base.cub")];
    let report = check_files(&files, CheckOptions::default());
    assert_eq!(report.exit_code(), 0);
    println!("{}", report.to_json());

    let strict = CheckOptions { strict: true, ..CheckOptions::default() };
    let opaque = check_files(&[dir.join("hcomp_stuck_opaque.cub")], strict);
    assert_eq!(opaque.exit_code(), 1);
    print!("{}", opaque.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
