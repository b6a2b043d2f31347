use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "cubnf", version, about = "Check normal forms of Cartesian cubical type theory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every declaration in the given files.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Treat undecided side conditions as errors.
        #[arg(long)]
        strict: bool,
        /// Step budget for the conversion oracle.
        #[arg(long, env = "CUBNF_FUEL", default_value_t = crate::nf::check::DEFAULT_FUEL)]
        fuel: u32,
        #[arg(long)]
        json: bool,
    },
    /// Cofibration queries.
    Cof {
        #[command(subcommand)]
        query: CofQuery,
        #[arg(long, global = true)]
        json: bool,
    },
    /// Substitute an interval expression for an interval variable in a
    /// named normal form and print the result.
    Subst {
        file: PathBuf,
        name: String,
        dim: String,
        /// `0`, `1`, or another interval variable of the context.
        expr: String,
        #[arg(long, env = "CUBNF_FUEL", default_value_t = crate::nf::check::DEFAULT_FUEL)]
        fuel: u32,
    },
    /// Decide whether two named normal forms are equal.
    Eq { file: PathBuf, lhs: String, rhs: String },
}

#[derive(Subcommand, Debug)]
pub enum CofQuery {
    /// Whether the hypotheses entail the goal (the last argument).
    Entails {
        #[arg(required = true, num_args = 1..)]
        cofs: Vec<String>,
    },
    /// Whether two cofibrations are equal.
    Eq { lhs: String, rhs: String },
    /// Eliminate a universal quantifier over an interval variable.
    Forall { dim: String, cof: String },
    /// The canonical disjunctive normal form, one clause per line.
    Dnf { cof: String },
}
