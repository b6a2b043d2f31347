//! Raw syntax: terms, types, contexts, substitution, and the concrete
//! s-expression format shared by raw terms, normal forms, and declarations.

pub mod ast;
pub mod ctx;
pub mod decl;
pub mod parse;
pub mod print;
pub mod sexp;
pub mod subst;

pub use ast::{Tm, Tp};
pub use ctx::{Ctx, CtxEntry};
pub use decl::{Decl, NfBody};
pub use parse::{
    parse_cof, parse_ctx, parse_decls, parse_iexpr, parse_nf, parse_nftp, parse_tm, parse_tm_open, parse_tp, ParseError,
    ParseErrorKind,
};
pub use print::print_decls;
pub use subst::{alpha_eq_tm, alpha_eq_tp, subst_i_tm, subst_i_tp, subst_tm, subst_tp};
