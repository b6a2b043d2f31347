//! The acceptance suite: one pass/fail line per criterion. Exits non-zero
//! when any criterion fails.

mod common;

use std::cell::Cell;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use cubnf::cli::commands::{check_source, CheckOptions};
use cubnf::cof::{cof_eq, entails, forall_elim, Cof, DimMap, IExpr};
use cubnf::engine::canon::record_steps;
use cubnf::engine::{bounded_convert_at, canon, embed, eq_nf, subst_i_nf, CanonStats, ConvVerdict, DimScope};
use cubnf::name::Name;
use cubnf::nf::{check_ne, check_nf, frontier, HitKind, Ne, NeTp, Nf, NfTp, Split, UpTag};
use cubnf::syntax::decl::{Decl, NfBody};
use cubnf::syntax::subst::subst_i_tm;
use cubnf::syntax::{parse_decls, parse_tp, print_decls, Ctx, CtxEntry, Tp};

use common::*;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_dir(kind: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(kind)
}

fn corpus_files(kind: &str) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir(kind))
        .expect("corpus directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "cub"))
        .collect();
    files.sort();
    files
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

// 1. Cofibration solver against the world-enumeration oracle.

fn cof_solver() -> Verdict {
    let vars = names(&["i", "j"]);
    let d1 = depth_one(&vars);
    let d2 = depth_two(&vars);
    let atoms = atoms(&vars);
    let pairs = Cell::new(0usize);
    let check = |hyps: &[Cof], goal: &Cof| -> Result<(), String> {
        pairs.set(pairs.get() + 1);
        let (got, want) = (entails(hyps, goal), oracle_entails(hyps, goal));
        ensure(got == want, || format!("entails({hyps:?}, {goal}) = {got}, oracle says {want}"))
    };
    for h in &d1 {
        for g in &d1 {
            check(std::slice::from_ref(h), g)?;
        }
    }
    for phi in &d2 {
        check(&[], phi)?;
        for a in &atoms {
            check(std::slice::from_ref(phi), a)?;
            check(std::slice::from_ref(a), phi)?;
        }
    }
    let exhaustive = pairs.get();

    let vars3 = names(&["i", "j", "k"]);
    let mut r = rng(0xC0F1);
    for _ in 0..10_000 {
        let n = rand::Rng::gen_range(&mut r, 0..=2);
        let hyps: Vec<Cof> = (0..n).map(|_| random_cof(&mut r, &vars3, 3)).collect();
        let goal = random_cof(&mut r, &vars3, 3);
        check(&hyps, &goal)?;
    }
    Ok(format!("{exhaustive} exhaustive pairs over 2 variables, {} random over 3", pairs.get() - exhaustive))
}

// 2. Quantifier elimination against the oracle over the extended variables.

fn forall_characterization() -> Verdict {
    let vars = names(&["i", "j"]);
    let i = Name::new("i");
    let mut family = depth_one(&vars);
    family.extend(depth_two(&vars));
    let hyp_family = atoms(&names(&["j"]));
    let mut n = 0;
    for phi in &family {
        let q = forall_elim(&i, phi);
        ensure(!q.mentions(&i), || format!("forall_elim(i, {phi}) = {q} still mentions i"))?;
        for h in &hyp_family {
            n += 1;
            let hyps = std::slice::from_ref(h);
            let (got, want) = (entails(hyps, &q), oracle_entails_forall(hyps, &i, phi));
            ensure(got == want, || format!("[{h}] |- forall i. {phi}: solver {got}, oracle {want}"))?;
        }
    }
    Ok(format!("{n} quantified entailments"))
}

// 3. Rule coverage corpus.

fn walk_nf(t: &Nf, seen: &mut BTreeSet<&'static str>) {
    let split = |sp: &Split<Nf>, seen: &mut BTreeSet<&'static str>| {
        for (_, x) in &sp.branches {
            walk_nf(x, seen);
        }
    };
    match t {
        Nf::True | Nf::False => {
            seen.insert("bool-value");
        }
        Nf::Base => {
            seen.insert("base");
        }
        Nf::Loop(_) => {
            seen.insert("loop");
        }
        Nf::Lam(_, b) => {
            seen.insert("lam");
            walk_nf(b, seen);
        }
        Nf::Pair(a, b) => {
            seen.insert("pair");
            walk_nf(a, seen);
            walk_nf(b, seen);
        }
        Nf::Code(a) => {
            seen.insert("code");
            walk_nftp(a, seen);
        }
        Nf::PLam(_, b) => {
            seen.insert("plam");
            walk_nf(b, seen);
        }
        Nf::Glue { base, fiber, .. } => {
            seen.insert("glue");
            walk_nf(base, seen);
            split(fiber, seen);
        }
        Nf::HCompVal { kind, tube, .. } => {
            seen.insert(match kind {
                HitKind::WBool => "hcomp-wbool",
                HitKind::S1 => "hcomp-s1",
            });
            split(tube, seen);
        }
        Nf::HCompStuck { tp, tube, backup, .. } => {
            seen.insert("hcomp-stuck");
            walk_ne(&tp.0, seen);
            split(tube, seen);
            split(backup, seen);
        }
        Nf::CoeStuck { tp, arg, backup, .. } => {
            seen.insert("coe-stuck");
            if !cof_eq(&[], &backup.dom, &Cof::bot()) {
                seen.insert("coe-stuck-forall");
            }
            walk_ne(&tp.0, seen);
            walk_nf(arg, seen);
            split(backup, seen);
        }
        Nf::Up { tag, ne, backup } => {
            seen.insert(match tag {
                UpTag::Bool => "up-bool",
                UpTag::WBool => "up-wbool",
                UpTag::S1 => "up-s1",
                UpTag::El(_) => "up-el",
            });
            if let UpTag::El(n) = tag {
                walk_ne(&n.0, seen);
            }
            walk_ne(ne, seen);
            split(backup, seen);
        }
    }
}

fn walk_ne(e: &Ne, seen: &mut BTreeSet<&'static str>) {
    match e {
        Ne::Var(_) => {
            seen.insert("var");
        }
        Ne::App(f, a) => {
            seen.insert("app");
            walk_ne(f, seen);
            walk_nf(a, seen);
        }
        Ne::Fst(p) | Ne::Snd(p) => {
            seen.insert("proj");
            walk_ne(p, seen);
        }
        Ne::If { motive, scrut, on_true, on_false, .. } => {
            seen.insert("if");
            walk_nftp(motive, seen);
            walk_ne(scrut, seen);
            walk_nf(on_true, seen);
            walk_nf(on_false, seen);
        }
        Ne::PApp(p, _) => {
            seen.insert("papp");
            walk_ne(p, seen);
        }
        Ne::Unglue(_, g) => {
            seen.insert("unglue");
            walk_ne(g, seen);
        }
        Ne::S1Elim { motive, scrut, base, loop_case, .. } => {
            seen.insert("s1-elim");
            walk_nftp(motive, seen);
            walk_ne(scrut, seen);
            walk_nf(base, seen);
            walk_nf(loop_case, seen);
        }
        Ne::Star(_) => {
            seen.insert("star");
        }
    }
}

fn walk_nftp(t: &NfTp, seen: &mut BTreeSet<&'static str>) {
    match t {
        NfTp::Pi(_, a, b) | NfTp::Sigma(_, a, b) => {
            walk_nftp(a, seen);
            walk_nftp(b, seen);
        }
        NfTp::Path(_, a, t0, t1) => {
            walk_nftp(a, seen);
            walk_nf(t0, seen);
            walk_nf(t1, seen);
        }
        NfTp::Glue { base, fiber, equiv, .. } => {
            seen.insert("Glue");
            walk_nftp(base, seen);
            for (_, a) in &fiber.branches {
                walk_nftp(a, seen);
            }
            for (_, e) in &equiv.branches {
                walk_nf(e, seen);
            }
        }
        NfTp::Up { tp, backup } => {
            seen.insert("up-type");
            walk_ne(&tp.0, seen);
            for (_, a) in &backup.branches {
                walk_nftp(a, seen);
            }
        }
        NfTp::Bool | NfTp::WBool | NfTp::S1 | NfTp::U => {}
    }
}

fn walk_tp(t: &Tp, seen: &mut BTreeSet<&'static str>) {
    match t {
        Tp::Pi(..) => seen.insert("Pi"),
        Tp::Sigma(..) => seen.insert("Sigma"),
        Tp::Path(..) => seen.insert("Path"),
        Tp::U => seen.insert("U"),
        Tp::El(_) => seen.insert("El"),
        Tp::Glue { .. } => seen.insert("Glue-type"),
        _ => false,
    };
}

const RULES: &[&str] = &[
    "Pi", "Sigma", "Path", "U", "El", "lam", "pair", "proj", "app", "var", "bool-value", "if", "code",
    "up-type", "plam", "papp", "star", "up-bool", "up-wbool", "up-s1", "up-el", "hcomp-stuck", "coe-stuck",
    "coe-stuck-forall", "hcomp-wbool", "base", "loop", "s1-elim", "hcomp-s1", "Glue", "Glue-type", "glue",
    "unglue", "split", "split-overlap",
];

fn corpus() -> Verdict {
    let opts = CheckOptions::default();
    let mut seen = BTreeSet::new();
    let mut positive = 0;
    for f in corpus_files("positive") {
        let src = read(&f);
        let report = check_source(&f.display().to_string(), &src, opts);
        for d in &report.decls {
            ensure(!d.status.is_error(), || format!("{}:{} {} rejected: {:?}", f.display(), d.line, d.label, d.status))?;
            positive += 1;
        }
        for item in parse_decls(&src).map_err(|e| e.to_string())? {
            let (tp, bodies) = match &item.decl {
                Decl::Nf { tp, body, .. } => (tp, vec![body]),
                Decl::AssertEqNf { tp, lhs, rhs, .. } => (tp, vec![lhs, rhs]),
                _ => continue,
            };
            walk_tp(tp, &mut seen);
            for b in bodies {
                match b {
                    NfBody::Plain(t) => walk_nf(t, &mut seen),
                    NfBody::Split(sp) => {
                        seen.insert("split");
                        let overlaps = sp.branches.iter().enumerate().any(|(n, (b1, _))| {
                            sp.branches[n + 1..].iter().any(|(b2, _)| b1.meet(b2).is_consistent())
                        });
                        if overlaps {
                            seen.insert("split-overlap");
                        }
                        for (_, x) in &sp.branches {
                            walk_nf(x, &mut seen);
                        }
                    }
                }
            }
            if let Decl::Nf { ctx, .. } = &item.decl {
                for e in ctx.entries() {
                    if let CtxEntry::TmBind(_, ty) = e {
                        walk_tp(ty, &mut seen);
                    }
                }
            }
        }
    }
    ensure(positive >= 30, || format!("only {positive} positive declarations"))?;
    let missing: Vec<&str> = RULES.iter().copied().filter(|r| !seen.contains(r)).collect();
    ensure(missing.is_empty(), || format!("no positive declaration exercises {missing:?}"))?;

    let mut negative = 0;
    for f in corpus_files("negative") {
        let src = read(&f);
        let want = src
            .lines()
            .find_map(|l| l.strip_prefix("; expect: "))
            .ok_or_else(|| format!("{} has no `; expect:` line", f.display()))?
            .trim()
            .to_string();
        let report = check_source(&f.display().to_string(), &src, opts);
        let kinds: Vec<&str> = report.decls.iter().filter_map(|d| d.status.kind()).collect();
        ensure(kinds == [want.as_str()], || format!("{}: expected [{want}], got {kinds:?}", f.display()))?;
        negative += 1;
    }
    ensure(negative >= 15, || format!("only {negative} negative declarations"))?;
    Ok(format!("{positive} positive declarations covering {} rules, {negative} negative", RULES.len()))
}

// 4. Frontier annotations.

fn frontiers() -> Verdict {
    let (i, j) = (IExpr::var("i"), IExpr::var("j"));
    ensure(frontier(&Ne::var("x")) == Cof::bot(), || "a variable is unstable".into())?;

    let inner = Ne::var("p").papp(j.clone());
    let phi = frontier(&inner);
    let outer = Ne::PApp(Box::new(inner.clone()), i.clone());
    let want = Cof::join([phi.clone(), Cof::eq(i.clone(), IExpr::Zero), Cof::eq(i.clone(), IExpr::One)]);
    ensure(frontier(&outer) == want, || format!("path application: {} against {want}", frontier(&outer)))?;

    let psi = Cof::eq(i.clone(), j.clone());
    let g = Ne::Unglue(psi.clone(), Box::new(inner.clone()));
    let want = Cof::join([phi.clone(), psi.clone()]);
    ensure(frontier(&g) == want, || format!("unglue: {} against {want}", frontier(&g)))?;

    // The checker synthesizes the same frontiers.
    let ctx = cubnf::syntax::parse_ctx(
        "(ctx (dim i) (dim j) (tm p (path (path bool true true) (plam k true) (plam k true))) \
         (tm g (Glue (= i j) bool bool (pair (lam x x) true))))",
    )
    .map_err(|e| e.to_string())?;
    let pij = Ne::PApp(Box::new(Ne::var("p").papp(j.clone())), i.clone());
    let (_, got) = check_ne(&ctx, &pij).map_err(|e| e.to_string())?;
    ensure(cof_eq(&[], &got, &frontier(&pij)), || format!("checker frontier {got}"))?;
    let ug = Ne::Unglue(psi.clone(), Box::new(Ne::var("g")));
    let (_, got) = check_ne(&ctx, &ug).map_err(|e| e.to_string())?;
    ensure(got == Cof::join([Cof::bot(), psi]), || format!("checker unglue frontier {got}"))?;
    Ok("variable, path application, unglue".into())
}

// 5. Decay and equality.

fn star_wrap(t: &Nf, tag: UpTag) -> Nf {
    Nf::Up { tag, ne: Ne::Star(Cof::top()), backup: Split::leaf(t.clone()) }
}

/// Variants of `t` that must be equal to it.
fn variants(ty: GenTy, t: &Nf, ctx: &Ctx) -> Vec<Nf> {
    let mut out = vec![t.clone(), canon(ctx, t)];
    match ty {
        GenTy::Bool => out.push(star_wrap(t, UpTag::Bool)),
        GenTy::S1 => out.push(star_wrap(t, UpTag::S1)),
        GenTy::WBool => out.push(star_wrap(t, UpTag::WBool)),
        GenTy::ElA => out.push(star_wrap(t, UpTag::El(NeTp(Ne::var("A"))))),
        GenTy::Pair => {}
    }
    if ty == GenTy::S1 {
        // A degenerate composition is its tube at the target.
        let k = Name::new("k0");
        let dom = Cof::eq(IExpr::Var(k.clone()), IExpr::var("i"));
        let branch = cubnf::cof::dnf(&dom).remove(0);
        out.push(Nf::HCompVal {
            kind: HitKind::S1,
            src: IExpr::var("i"),
            dst: IExpr::var("i"),
            cof: Cof::bot(),
            var: k,
            tube: Split::new(dom, vec![(branch, t.clone())]),
        });
    }
    out
}

fn decay_and_equality() -> Verdict {
    let empty = Ctx::new();
    ensure(eq_nf(&empty, &Nf::Loop(IExpr::Zero), &Nf::Base), || "loop 0 is not base".into())?;
    ensure(eq_nf(&empty, &Nf::Loop(IExpr::One), &Nf::Base), || "loop 1 is not base".into())?;
    let ci = Ctx::new().with_dim(Name::new("i"));
    ensure(!eq_nf(&ci, &Nf::Loop(IExpr::var("i")), &Nf::Base), || "loop i equals base".into())?;
    let backup = Nf::Loop(IExpr::var("i"));
    ensure(canon(&ci, &star_wrap(&backup, UpTag::S1)) == backup, || "the collapsed neutral keeps its wrapper".into())?;

    let k = Name::new("k");
    let tube_dom = Cof::join([Cof::eq(IExpr::Var(k.clone()), IExpr::var("i")), Cof::bot()]);
    let payload = Nf::up(UpTag::El(NeTp(Ne::var("A"))), Ne::var("a"));
    let stuck = Nf::HCompStuck {
        tp: NeTp(Ne::var("A")),
        src: IExpr::var("i"),
        dst: IExpr::var("i"),
        cof: Cof::bot(),
        var: k,
        tube: Split::new(tube_dom.clone(), cubnf::cof::dnf(&tube_dom).into_iter().map(|b| (b, payload.clone())).collect()),
        backup: Split::new(Cof::bot(), vec![]),
    };
    ensure(canon(&ci, &stuck) == payload, || format!("degenerate composition canonicalizes to {}", canon(&ci, &stuck)))?;

    let ctx = gen_ctx();
    let mut r = rng(0xDECA);
    let mut forms = 0;
    let mut by_type: Vec<(GenTy, Vec<Vec<Nf>>)> = Vec::new();
    for ty in GenTy::ALL {
        let mut groups = Vec::new();
        for _ in 0..80 {
            let t = NfGen::new(&mut r, names(&["i", "j"])).nf(ty, 3);
            let vs = variants(ty, &t, &ctx);
            forms += vs.len();
            groups.push(vs);
        }
        by_type.push((ty, groups));
    }
    for (ty, groups) in &by_type {
        for vs in groups {
            for a in vs {
                ensure(eq_nf(&ctx, a, a), || format!("{a} is not equal to itself"))?;
                for b in vs {
                    ensure(eq_nf(&ctx, a, b), || format!("{a} and its variant {b} differ at {ty:?}"))?;
                }
            }
        }
        let reps: Vec<&Nf> = groups.iter().map(|g| &g[0]).collect();
        for a in &reps {
            for b in &reps {
                let ab = eq_nf(&ctx, a, b);
                ensure(ab == eq_nf(&ctx, b, a), || format!("equality of {a} and {b} is not symmetric"))?;
                if ab {
                    for c in &reps {
                        if eq_nf(&ctx, b, c) {
                            ensure(eq_nf(&ctx, a, c), || format!("transitivity fails through {b}"))?;
                        }
                    }
                }
                // Congruence under pairing, abstraction, and stabilization.
                let x = Nf::True;
                let pa = Nf::Pair(Box::new((*a).clone()), Box::new(x.clone()));
                let pb = Nf::Pair(Box::new((*b).clone()), Box::new(x));
                let la = Nf::Lam(Name::new("y"), Box::new((*a).clone()));
                let lb = Nf::Lam(Name::new("y"), Box::new((*b).clone()));
                ensure(eq_nf(&ctx, &pa, &pb) == ab, || format!("pairing changes equality of {a} and {b}"))?;
                ensure(eq_nf(&ctx, &la, &lb) == ab, || format!("abstraction changes equality of {a} and {b}"))?;
                // Agreement with conversion on the embeddings where decided.
                let ty = parse_tp(&ctx, ty.concrete()).map_err(|e| e.to_string())?;
                let v = bounded_convert_at(&ctx, &embed(a).map_err(|e| e.to_string())?, &embed(b).map_err(|e| e.to_string())?, &ty, 1000);
                ensure(!(ab && v == ConvVerdict::No) && !(!ab && v == ConvVerdict::Yes), || {
                    format!("eq_nf says {ab} for {a} and {b}, conversion says {v:?}")
                })?;
            }
        }
        for g in groups {
            let a = &g[0];
            let b = &g[g.len() - 1];
            let wrap = |t: &Nf| Nf::Up {
                tag: UpTag::Bool,
                ne: Ne::If {
                    var: Name::new("x"),
                    motive: Box::new(NfTp::Bool),
                    scrut: Box::new(Ne::var("b")),
                    on_true: Box::new(t.clone()),
                    on_false: Box::new(Nf::False),
                },
                backup: Split::new(Cof::bot(), vec![]),
            };
            if *ty == GenTy::Bool {
                ensure(eq_nf(&ctx, &wrap(a), &wrap(b)), || format!("congruence under `if` fails for {a}"))?;
            }
        }
    }
    ensure(forms >= 1000, || format!("only {forms} generated forms"))?;
    Ok(format!("{forms} generated forms"))
}

// 6. Substitution coherence.

fn mentions_papp(t: &Nf) -> bool {
    t.to_string().contains("(papp ")
}

fn substitution() -> Verdict {
    let ctx = gen_ctx();
    let i = Name::new("i");
    let targets = [IExpr::Zero, IExpr::One, IExpr::var("j")];
    let mut r = rng(0x5B57);
    let mut terms = 0;
    let mut attempts = 0;
    while terms < 1000 {
        attempts += 1;
        ensure(attempts < 20_000, || "the generator rarely produces path applications".into())?;
        let ty = *rand::seq::SliceRandom::choose(&GenTy::ALL[..], &mut r).unwrap();
        let t = NfGen::new(&mut r, names(&["i", "j"])).nf(ty, 3);
        if !mentions_papp(&t) {
            continue;
        }
        terms += 1;
        let tp = parse_tp(&ctx, ty.concrete()).map_err(|e| e.to_string())?;
        check_nf(&ctx, &t, &tp).map_err(|e| format!("generated {t} does not check: {e}"))?;
        let raw = embed(&t).map_err(|e| e.to_string())?;
        for r in &targets {
            let out = subst_i_nf(&ctx, &t, &i, r);
            let mut map = DimMap::new();
            map.insert(i.clone(), r.clone());
            let target = ctx.subst_dims(&map);
            check_nf(&target, &out, &tp).map_err(|e| format!("{t}[{r}/i] = {out} does not check: {e}"))?;
            ensure(!has_entailed_frontier(&DimScope::of(&target), &out), || {
                format!("{t}[{r}/i] = {out} keeps a neutral whose frontier holds")
            })?;
            let lhs = embed(&out).map_err(|e| e.to_string())?;
            let rhs = subst_i_tm(&raw, &i, r);
            let v = bounded_convert_at(&target, &lhs, &rhs, &tp, 1000);
            ensure(v == ConvVerdict::Yes, || format!("{t}[{r}/i] = {out} against the raw substitution: {v:?}"))?;
        }
    }
    Ok(format!("{terms} terms at i:=0, i:=1, i:=j"))
}

// 7. Termination instrumentation.

fn termination() -> Verdict {
    let ctx = gen_ctx();
    let mut r = rng(0x7E57);
    let (_, log) = record_steps(|| {
        for _ in 0..500 {
            let ty = *rand::seq::SliceRandom::choose(&GenTy::ALL[..], &mut r).unwrap();
            let t = NfGen::new(&mut r, names(&["i", "j"])).nf(ty, 4);
            let once = canon(&ctx, &t);
            assert_eq!(canon(&ctx, &once), once, "canonical forms are fixed points");
            for e in [IExpr::Zero, IExpr::One, IExpr::var("j")] {
                let _ = subst_i_nf(&ctx, &t, &Name::new("i"), &e);
            }
        }
    });
    let bad: Vec<&(usize, usize)> = log.iter().filter(|(b, a)| a >= b).collect();
    ensure(bad.is_empty(), || format!("rewrite steps that did not shrink: {bad:?}"))?;
    let stats = CanonStats::current();
    ensure(stats.violations == 0, || format!("{} violations over the whole run", stats.violations))?;
    ensure(stats.steps > 0, || "no rewrite step was taken".into())?;
    Ok(format!("{} steps in this pass, {} over the whole run", log.len(), stats.steps))
}

// 8. Round trip and byte-stable JSON.

fn round_trip() -> Verdict {
    let mut files = corpus_files("positive");
    files.extend(corpus_files("negative"));
    let mut decls = 0;
    for f in &files {
        let src = read(f);
        let Ok(items) = parse_decls(&src) else { continue };
        let printed = print_decls(items.iter().map(|it| &it.decl));
        let again = parse_decls(&printed).map_err(|e| format!("{}: printed form does not parse: {e}", f.display()))?;
        let a: Vec<&Decl> = items.iter().map(|it| &it.decl).collect();
        let b: Vec<&Decl> = again.iter().map(|it| &it.decl).collect();
        ensure(a == b, || format!("{}: parse(print(d)) differs from d", f.display()))?;
        ensure(print_decls(b.iter().copied()) == printed, || format!("{}: printing is not stable", f.display()))?;
        decls += a.len();
    }
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_cubnf"))
            .arg("check")
            .arg("--json")
            .args(&files)
            .output()
            .map_err(|e| e.to_string())
    };
    let (first, second) = (run()?, run()?);
    ensure(!first.stdout.is_empty(), || "no JSON output".into())?;
    ensure(first.stdout == second.stdout, || "JSON output differs between runs".into())?;
    serde_json::from_slice::<serde_json::Value>(&first.stdout).map_err(|e| e.to_string())?;
    Ok(format!("{decls} declarations, {} bytes of JSON", first.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("cofibration solver agrees with the oracle", cof_solver),
        ("quantifier elimination characterization", forall_characterization),
        ("rule coverage corpus", corpus),
        ("frontier annotations", frontiers),
        ("decay and equality", decay_and_equality),
        ("substitution coherence", substitution),
        ("termination instrumentation", termination),
        ("round trip and stable JSON", round_trip),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {}: pass  {name} ({detail}; {secs:.1}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
