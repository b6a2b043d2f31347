use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::cof::{cof_eq, dnf, entails, forall_elim, simplify, Cof, DimMap, IExpr};
use crate::engine::convert::infer;
use crate::engine::{bounded_convert_tp, eq_nf, subst_i_nf, ConvVerdict};
use crate::name::Name;
use crate::nf::{CheckError, Checker, Nf, Split};
use crate::syntax::decl::{Decl, Item, NfBody};
use crate::syntax::subst::{alpha_eq_tp, subst_i_tp, Subst};
use crate::syntax::{parse_cof, parse_decls, parse_iexpr, Ctx, ParseError, Tp};

use super::args::CofQuery;
use super::report::{DeclReport, FileReport, Report, Status};

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("no `nf` declaration named `{0}`")]
    UnknownName(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Check(#[from] CheckError),
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub strict: bool,
    pub fuel: u32,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { strict: false, fuel: crate::nf::check::DEFAULT_FUEL }
    }
}

const ASSERTION_FAILED: &str = "assertion-failed";

/// Checks a declaration body. A context with cofibration assumptions needs
/// a split over their conjunction, checked in the contracted contexts.
fn check_body(c: &mut Checker, ctx: &Ctx, tp: &Tp, body: &NfBody) -> Result<(), CheckError> {
    match body {
        NfBody::Plain(t) if !ctx.has_cofs() => c.nf(ctx, t, tp),
        NfBody::Split(sp) if ctx.has_cofs() => {
            let dom = Cof::Meet(ctx.cof_hyps());
            c.split(&ctx.without_cofs(), &dom, sp, "body", |c, cx, _, map, x| {
                c.nf(cx, x, &Subst::dims(map.clone()).tp(tp))
            })
        }
        NfBody::Plain(_) => Err(CheckError {
            kind: crate::nf::CheckErrorKind::WrongShape,
            path: "/".into(),
            message: "the context has cofibration assumptions, so the body must be a split over them".into(),
        }),
        NfBody::Split(_) => Err(CheckError {
            kind: crate::nf::CheckErrorKind::WrongShape,
            path: "/".into(),
            message: "a split body needs cofibration assumptions in the context".into(),
        }),
    }
}

fn bodies_equal(ctx: &Ctx, a: &NfBody, b: &NfBody) -> bool {
    match (a, b) {
        (NfBody::Plain(a), NfBody::Plain(b)) => eq_nf(ctx, a, b),
        (NfBody::Split(a), NfBody::Split(b)) => splits_equal(ctx, a, b),
        _ => false,
    }
}

fn splits_equal(ctx: &Ctx, a: &Split<Nf>, b: &Split<Nf>) -> bool {
    a.branches.len() == b.branches.len()
        && a.branches.iter().zip(&b.branches).all(|((ba, x), (bb, y))| {
            let (cx, _) = ctx.contract(ba);
            ba == bb && eq_nf(&cx, x, y)
        })
}

/// Checks one declaration.
pub fn check_decl(decl: &Decl, opts: CheckOptions) -> Status {
    let mut c = Checker::new(opts.strict, opts.fuel);
    let outcome = match decl {
        Decl::Def { ctx, tp, tm, .. } => match infer(ctx, tm, opts.fuel) {
            Some(found) if bounded_convert_tp(ctx, &found, tp, opts.fuel) == ConvVerdict::No => {
                return Status::error(
                    crate::nf::CheckErrorKind::RuleMismatch.as_str(),
                    "/",
                    format!("the term has type `{found}`, not `{tp}`"),
                );
            }
            _ => Ok(()),
        },
        Decl::Nf { ctx, tp, body, .. } => check_body(&mut c, ctx, tp, body),
        Decl::AssertEqNf { ctx, tp, lhs, rhs } => {
            let checked = c
                .at("lhs", |c| check_body(c, ctx, tp, lhs))
                .and_then(|_| c.at("rhs", |c| check_body(c, ctx, tp, rhs)));
            match checked {
                Ok(()) if !bodies_equal(ctx, lhs, rhs) => {
                    return Status::error(ASSERTION_FAILED, "/", format!("`{lhs}` and `{rhs}` are not equal"));
                }
                other => other,
            }
        }
        Decl::AssertCof { hyps, goal } => {
            if !entails(hyps, goal) {
                let hs: Vec<String> = hyps.iter().map(|h| h.to_string()).collect();
                return Status::error(
                    ASSERTION_FAILED,
                    "/",
                    format!("[{}] does not entail `{goal}`", hs.join(", ")),
                );
            }
            Ok(())
        }
    };
    match outcome {
        Ok(()) => Status::from_warnings(c.warnings),
        Err(e) => Status::from_check(e),
    }
}

/// Parses and checks a whole file. A parse error is reported as a single
/// failing entry.
pub fn check_source(file: &str, src: &str, opts: CheckOptions) -> FileReport {
    let decls = match parse_decls(src) {
        Ok(items) => items
            .iter()
            .map(|Item { pos, decl }| DeclReport {
                label: decl.label(),
                line: pos.line,
                col: pos.col,
                status: check_decl(decl, opts),
            })
            .collect(),
        Err(e) => vec![DeclReport {
            label: "parse".into(),
            line: e.pos.line,
            col: e.pos.col,
            status: Status::error("parse-error", "/", e.kind.to_string()),
        }],
    };
    FileReport { file: file.to_string(), decls }
}

pub fn check_files(files: &[PathBuf], opts: CheckOptions) -> Report {
    let reports = files
        .iter()
        .map(|path| {
            let name = path.display().to_string();
            match std::fs::read_to_string(path) {
                Ok(src) => check_source(&name, &src, opts),
                Err(e) => FileReport {
                    file: name,
                    decls: vec![DeclReport {
                        label: "read".into(),
                        line: 0,
                        col: 0,
                        status: Status::error("io-error", "/", e.to_string()),
                    }],
                },
            }
        })
        .collect();
    Report::new(reports)
}

/// Answers a cofibration query; JSON output wraps the answer in
/// `{"result": ...}`.
pub fn cof_query(query: &CofQuery, json: bool) -> Result<String, CliError> {
    let value = match query {
        CofQuery::Entails { cofs } => {
            let mut parsed = cofs.iter().map(|s| parse_cof(s)).collect::<Result<Vec<_>, _>>()?;
            let goal = parsed.pop().expect("clap requires a goal");
            serde_json::Value::Bool(entails(&parsed, &goal))
        }
        CofQuery::Eq { lhs, rhs } => serde_json::Value::Bool(cof_eq(&[], &parse_cof(lhs)?, &parse_cof(rhs)?)),
        CofQuery::Forall { dim, cof } => {
            let i = dim_name(dim)?;
            serde_json::Value::String(simplify(&forall_elim(&i, &parse_cof(cof)?)).to_string())
        }
        CofQuery::Dnf { cof } => serde_json::Value::Array(
            dnf(&parse_cof(cof)?)
                .iter()
                .map(|b| serde_json::Value::String(b.to_cof().to_string()))
                .collect(),
        ),
    };
    Ok(if json {
        serde_json::json!({ "result": value }).to_string()
    } else {
        match value {
            serde_json::Value::String(s) => s,
            serde_json::Value::Array(xs) => {
                xs.iter().filter_map(|x| x.as_str()).collect::<Vec<_>>().join("\n")
            }
            other => other.to_string(),
        }
    })
}

fn dim_name(s: &str) -> Result<Name, CliError> {
    match parse_iexpr(s)? {
        IExpr::Var(n) => Ok(n),
        _ => Err(CliError::Invalid(format!("`{s}` is not an interval variable"))),
    }
}

fn find_nf<'a>(items: &'a [Item], name: &str) -> Result<(&'a Ctx, &'a Tp, &'a NfBody), CliError> {
    items
        .iter()
        .find_map(|it| match &it.decl {
            Decl::Nf { name: n, ctx, tp, body } if n.as_str() == name => Some((ctx, tp, body)),
            _ => None,
        })
        .ok_or_else(|| CliError::UnknownName(name.to_string()))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// `t[r/i]` for the named declaration `t`, re-checked in the substituted
/// context. Returns the printed result.
pub fn subst_named(src: &str, name: &str, dim: &str, expr: &str, fuel: u32) -> Result<String, CliError> {
    let items = parse_decls(src)?;
    let (ctx, tp, body) = find_nf(&items, name)?;
    let NfBody::Plain(t) = body else {
        return Err(CliError::Invalid("subst needs a declaration without cofibration assumptions".into()));
    };
    let mut c = Checker::new(false, fuel);
    c.nf(ctx, t, tp)?;
    let i = dim_name(dim)?;
    if !ctx.has_dim(&i) {
        return Err(CliError::Invalid(format!("`{i}` is not an interval variable of `{name}`")));
    }
    let r = parse_iexpr(expr)?;
    if let IExpr::Var(j) = &r {
        if j == &i || !ctx.has_dim(j) {
            return Err(CliError::Invalid(format!("`{j}` is not another interval variable of `{name}`")));
        }
    }
    let out = subst_i_nf(ctx, t, &i, &r);
    let mut map = DimMap::new();
    map.insert(i.clone(), r.clone());
    let target = ctx.subst_dims(&map);
    c.nf(&target, &out, &subst_i_tp(tp, &i, &r))?;
    Ok(out.to_string())
}

/// Whether two named declarations have equal bodies. They must share their
/// context and type.
pub fn eq_named(src: &str, lhs: &str, rhs: &str) -> Result<bool, CliError> {
    let items = parse_decls(src)?;
    let (c1, t1, b1) = find_nf(&items, lhs)?;
    let (c2, t2, b2) = find_nf(&items, rhs)?;
    if c1 != c2 || !alpha_eq_tp(t1, t2) {
        return Err(CliError::Invalid(format!("`{lhs}` and `{rhs}` have different contexts or types")));
    }
    Ok(bodies_equal(c1, b1, b2))
}

pub fn subst_file(path: &Path, name: &str, dim: &str, expr: &str, fuel: u32) -> Result<String, CliError> {
    subst_named(&read(path)?, name, dim, expr, fuel)
}

pub fn eq_file(path: &Path, lhs: &str, rhs: &str) -> Result<bool, CliError> {
    eq_named(&read(path)?, lhs, rhs)
}
