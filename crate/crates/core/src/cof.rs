//! Interval expressions, cofibrations, and the decision procedures of the
//! Cartesian face lattice.
//!
//! An interval expression is a variable or one of the two endpoints. A
//! cofibration is built from equations between interval expressions with
//! finite meets and joins; `top` is the empty meet and `bot` the empty join.
//! There is no negation.
//!
//! Entailment is decided by putting formulas into disjunctive normal form.
//! Each disjunct ([`Branch`]) is a conjunction of equations, kept as the
//! congruence closure of its atoms. Transitivity of interval equality is not
//! an axiom anywhere, but it follows from extensionality: under `i = j` and
//! `j = 0` the substitution that realizes the first equation turns the
//! second into `i = 0`. The closure is therefore sound and complete for
//! conjunctive clauses, and the disjunctive step is complete because every
//! clause has a generic point (the contraction that identifies each class
//! with its representative) at which a disjunction holds only if one of its
//! disjuncts does.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::name::Name;

/// A simultaneous substitution of interval expressions for interval variables.
pub type DimMap = BTreeMap<Name, IExpr>;

/// An interval expression: an endpoint or an interval variable.
///
/// The derived order is `0 < 1 < variables (by name)`, which is the order used
/// to orient atoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IExpr {
    Zero,
    One,
    Var(Name),
}

impl IExpr {
    pub fn var(name: &str) -> Self {
        IExpr::Var(Name::new(name))
    }

    pub fn is_endpoint(&self) -> bool {
        matches!(self, IExpr::Zero | IExpr::One)
    }

    pub fn as_var(&self) -> Option<&Name> {
        match self {
            IExpr::Var(n) => Some(n),
            _ => None,
        }
    }

    pub fn subst(&self, i: &Name, r: &IExpr) -> IExpr {
        match self {
            IExpr::Var(j) if j == i => r.clone(),
            _ => self.clone(),
        }
    }

    pub fn subst_map(&self, map: &DimMap) -> IExpr {
        match self {
            IExpr::Var(j) => map.get(j).cloned().unwrap_or_else(|| self.clone()),
            _ => self.clone(),
        }
    }
}

/// Replaces the interval variable `i` by `r` in `e`.
pub fn isubst(e: &IExpr, i: &Name, r: &IExpr) -> IExpr {
    e.subst(i, r)
}

/// A cofibration formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Cof {
    Eq(IExpr, IExpr),
    Meet(Vec<Cof>),
    Join(Vec<Cof>),
}

impl Cof {
    pub fn top() -> Self {
        Cof::Meet(Vec::new())
    }

    pub fn bot() -> Self {
        Cof::Join(Vec::new())
    }

    pub fn eq(r: IExpr, s: IExpr) -> Self {
        Cof::Eq(r, s)
    }

    pub fn meet(cs: impl IntoIterator<Item = Cof>) -> Self {
        Cof::Meet(cs.into_iter().collect())
    }

    pub fn join(cs: impl IntoIterator<Item = Cof>) -> Self {
        Cof::Join(cs.into_iter().collect())
    }

    /// `(r = 0) ∨ (r = 1)`, the boundary of a point on the interval.
    pub fn boundary(r: &IExpr) -> Self {
        Cof::join([Cof::eq(r.clone(), IExpr::Zero), Cof::eq(r.clone(), IExpr::One)])
    }

    pub fn subst(&self, i: &Name, r: &IExpr) -> Cof {
        match self {
            Cof::Eq(a, b) => Cof::Eq(a.subst(i, r), b.subst(i, r)),
            Cof::Meet(cs) => Cof::Meet(cs.iter().map(|c| c.subst(i, r)).collect()),
            Cof::Join(cs) => Cof::Join(cs.iter().map(|c| c.subst(i, r)).collect()),
        }
    }

    pub fn subst_map(&self, map: &DimMap) -> Cof {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Cof::Eq(a, b) => Cof::Eq(a.subst_map(map), b.subst_map(map)),
            Cof::Meet(cs) => Cof::Meet(cs.iter().map(|c| c.subst_map(map)).collect()),
            Cof::Join(cs) => Cof::Join(cs.iter().map(|c| c.subst_map(map)).collect()),
        }
    }

    pub fn collect_dims(&self, out: &mut BTreeSet<Name>) {
        match self {
            Cof::Eq(a, b) => {
                for e in [a, b] {
                    if let IExpr::Var(n) = e {
                        out.insert(n.clone());
                    }
                }
            }
            Cof::Meet(cs) | Cof::Join(cs) => cs.iter().for_each(|c| c.collect_dims(out)),
        }
    }

    pub fn dims(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_dims(&mut out);
        out
    }

    pub fn mentions(&self, i: &Name) -> bool {
        match self {
            Cof::Eq(a, b) => a.as_var() == Some(i) || b.as_var() == Some(i),
            Cof::Meet(cs) | Cof::Join(cs) => cs.iter().any(|c| c.mentions(i)),
        }
    }

    /// Number of nodes, used by the rewriting size metric.
    pub fn size(&self) -> usize {
        match self {
            Cof::Eq(..) => 1,
            Cof::Meet(cs) | Cof::Join(cs) => 1 + cs.iter().map(Cof::size).sum::<usize>(),
        }
    }
}

/// Substitutes `r` for `i` in every atom of `phi`. Does not simplify.
pub fn csubst(phi: &Cof, i: &Name, r: &IExpr) -> Cof {
    phi.subst(i, r)
}

struct UnionFind {
    parent: BTreeMap<IExpr, IExpr>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind { parent: BTreeMap::new() }
    }

    fn find(&mut self, x: &IExpr) -> IExpr {
        let mut root = x.clone();
        while let Some(p) = self.parent.get(&root) {
            if *p == root {
                break;
            }
            root = p.clone();
        }
        let mut cur = x.clone();
        while cur != root {
            let next = self.parent.insert(cur.clone(), root.clone()).unwrap_or_else(|| root.clone());
            cur = next;
        }
        self.parent.entry(root.clone()).or_insert_with(|| root.clone());
        root
    }

    fn union(&mut self, a: &IExpr, b: &IExpr) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

/// A conjunctive clause of the face lattice, stored as the congruence closure
/// of its equations.
///
/// Atoms are derived from the closure: each non-trivial class contributes
/// `(min, x)` for every other member `x`, so two clauses with the same closure
/// have identical atoms. Reflexive atoms never appear.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Branch {
    atoms: Vec<(IExpr, IExpr)>,
    classes: Vec<Vec<IExpr>>,
    consistent: bool,
}

impl Branch {
    pub fn top() -> Self {
        Branch { atoms: Vec::new(), classes: Vec::new(), consistent: true }
    }

    pub fn from_atoms<'a>(atoms: impl IntoIterator<Item = (&'a IExpr, &'a IExpr)>) -> Self {
        let mut uf = UnionFind::new();
        let mut elems = BTreeSet::new();
        for (a, b) in atoms {
            if a == b {
                continue;
            }
            elems.insert(a.clone());
            elems.insert(b.clone());
            uf.union(a, b);
        }
        let mut groups: BTreeMap<IExpr, Vec<IExpr>> = BTreeMap::new();
        for e in &elems {
            let root = uf.find(e);
            groups.entry(root).or_default().push(e.clone());
        }
        let mut classes: Vec<Vec<IExpr>> = groups.into_values().filter(|c| c.len() > 1).collect();
        for c in &mut classes {
            c.sort();
        }
        classes.sort();
        let consistent = !classes
            .iter()
            .any(|c| c.contains(&IExpr::Zero) && c.contains(&IExpr::One));
        let mut atoms: Vec<(IExpr, IExpr)> = classes
            .iter()
            .flat_map(|c| c[1..].iter().map(move |x| (c[0].clone(), x.clone())))
            .collect();
        atoms.sort();
        Branch { atoms, classes, consistent }
    }

    pub fn atom(a: &IExpr, b: &IExpr) -> Self {
        Branch::from_atoms([(a, b)])
    }

    pub fn atoms(&self) -> &[(IExpr, IExpr)] {
        &self.atoms
    }

    pub fn classes(&self) -> &[Vec<IExpr>] {
        &self.classes
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn is_top(&self) -> bool {
        self.atoms.is_empty()
    }

    fn class_of(&self, x: &IExpr) -> Option<&Vec<IExpr>> {
        self.classes.iter().find(|c| c.binary_search(x).is_ok())
    }

    /// Whether `a = b` holds in the closure.
    pub fn holds(&self, a: &IExpr, b: &IExpr) -> bool {
        a == b || matches!(self.class_of(a), Some(c) if c.binary_search(b).is_ok())
    }

    /// Whether every atom of `other` holds here. An inconsistent branch
    /// satisfies everything.
    pub fn satisfies(&self, other: &Branch) -> bool {
        !self.consistent || other.atoms.iter().all(|(a, b)| self.holds(a, b))
    }

    pub fn meet(&self, other: &Branch) -> Branch {
        Branch::from_atoms(self.atoms.iter().chain(other.atoms.iter()).map(|(a, b)| (a, b)))
    }

    pub fn subst_map(&self, map: &DimMap) -> Branch {
        let atoms: Vec<(IExpr, IExpr)> =
            self.atoms.iter().map(|(a, b)| (a.subst_map(map), b.subst_map(map))).collect();
        Branch::from_atoms(atoms.iter().map(|(a, b)| (a, b)))
    }

    pub fn mentions(&self, i: &Name) -> bool {
        self.atoms.iter().any(|(a, b)| a.as_var() == Some(i) || b.as_var() == Some(i))
    }

    /// The representative of `x`'s class relative to an ordered scope: an
    /// endpoint if the class has one, otherwise the member bound earliest.
    pub fn rep(&self, x: &IExpr, scope: &[Name]) -> IExpr {
        let Some(class) = self.class_of(x) else {
            return x.clone();
        };
        if class.contains(&IExpr::Zero) {
            return IExpr::Zero;
        }
        if class.contains(&IExpr::One) {
            return IExpr::One;
        }
        let pos = |e: &IExpr| match e {
            IExpr::Var(n) => scope.iter().position(|s| s == n).unwrap_or(usize::MAX),
            _ => usize::MAX,
        };
        class
            .iter()
            .min_by(|a, b| pos(a).cmp(&pos(b)).then_with(|| a.cmp(b)))
            .cloned()
            .unwrap_or_else(|| x.clone())
    }

    /// The contraction realizing this branch over `scope`: the substitution
    /// sending each variable to its representative, and the scope that
    /// remains after removing the non-representatives.
    pub fn contraction(&self, scope: &[Name]) -> (DimMap, Vec<Name>) {
        let mut map = DimMap::new();
        let mut kept = Vec::new();
        for v in scope {
            let e = IExpr::Var(v.clone());
            let r = self.rep(&e, scope);
            if r == e {
                kept.push(v.clone());
            } else {
                map.insert(v.clone(), r);
            }
        }
        (map, kept)
    }

    pub fn to_cof(&self) -> Cof {
        let mut eqs: Vec<Cof> =
            self.atoms.iter().map(|(a, b)| Cof::Eq(a.clone(), b.clone())).collect();
        if eqs.len() == 1 {
            eqs.pop().unwrap()
        } else {
            Cof::Meet(eqs)
        }
    }
}

fn normalize(mut branches: Vec<Branch>) -> Vec<Branch> {
    branches.retain(|b| b.consistent);
    branches.sort();
    branches.dedup();
    let keep: Vec<bool> = branches
        .iter()
        .enumerate()
        .map(|(i, b)| {
            !branches
                .iter()
                .enumerate()
                .any(|(j, c)| i != j && b.satisfies(c))
        })
        .collect();
    branches
        .into_iter()
        .zip(keep)
        .filter_map(|(b, k)| k.then_some(b))
        .collect()
}

/// Canonical disjunctive normal form: consistent, irredundant clauses in
/// sorted order. Two formulas are equal in the face lattice exactly when
/// their normal forms coincide.
pub fn dnf(phi: &Cof) -> Vec<Branch> {
    match phi {
        Cof::Eq(a, b) => normalize(vec![Branch::atom(a, b)]),
        Cof::Meet(cs) => {
            let mut acc = vec![Branch::top()];
            for c in cs {
                let d = dnf(c);
                let mut next = Vec::with_capacity(acc.len() * d.len());
                for x in &acc {
                    for y in &d {
                        next.push(x.meet(y));
                    }
                }
                acc = normalize(next);
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        Cof::Join(cs) => normalize(cs.iter().flat_map(dnf).collect()),
    }
}

/// The formula read back from its normal form.
pub fn simplify(phi: &Cof) -> Cof {
    let mut bs: Vec<Cof> = dnf(phi).iter().map(Branch::to_cof).collect();
    if bs.len() == 1 {
        bs.pop().unwrap()
    } else {
        Cof::Join(bs)
    }
}

/// Whether the conjunction of `hyps` entails `goal`.
pub fn entails(hyps: &[Cof], goal: &Cof) -> bool {
    let h = dnf(&Cof::Meet(hyps.to_vec()));
    if h.is_empty() {
        return true;
    }
    let g = dnf(goal);
    h.iter().all(|b| g.iter().any(|c| b.satisfies(c)))
}

/// Whether `phi` holds outright.
pub fn is_true(phi: &Cof) -> bool {
    entails(&[], phi)
}

/// Whether `hyps` are contradictory.
pub fn is_inconsistent(hyps: &[Cof]) -> bool {
    dnf(&Cof::Meet(hyps.to_vec())).is_empty()
}

/// Extensional equality of cofibrations under hypotheses.
pub fn cof_eq(hyps: &[Cof], phi: &Cof, psi: &Cof) -> bool {
    let mut h1 = hyps.to_vec();
    h1.push(phi.clone());
    let mut h2 = hyps.to_vec();
    h2.push(psi.clone());
    entails(&h1, psi) && entails(&h2, phi)
}

/// Eliminates `∀i. phi` into a formula that does not mention `i`.
///
/// Meets and joins are mapped through; an equation not involving `i` is kept;
/// `i = i` becomes `top`; any other equation involving `i` becomes `bot`,
/// since no proper face covers the whole interval.
pub fn forall_elim(i: &Name, phi: &Cof) -> Cof {
    match phi {
        Cof::Meet(cs) => Cof::Meet(cs.iter().map(|c| forall_elim(i, c)).collect()),
        Cof::Join(cs) => Cof::Join(cs.iter().map(|c| forall_elim(i, c)).collect()),
        Cof::Eq(r, s) => {
            let ri = r.as_var() == Some(i);
            let si = s.as_var() == Some(i);
            match (ri, si) {
                (false, false) => phi.clone(),
                (true, true) => Cof::top(),
                _ => Cof::bot(),
            }
        }
    }
}

impl fmt::Display for IExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IExpr::Zero => f.write_str("0"),
            IExpr::One => f.write_str("1"),
            IExpr::Var(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for Cof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cof::Eq(a, b) => write!(f, "(= {a} {b})"),
            Cof::Meet(cs) if cs.is_empty() => f.write_str("top"),
            Cof::Join(cs) if cs.is_empty() => f.write_str("bot"),
            Cof::Meet(cs) | Cof::Join(cs) => {
                f.write_str(if matches!(self, Cof::Meet(_)) { "(and" } else { "(or" })?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cof())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> IExpr {
        IExpr::var(s)
    }

    fn eq(a: IExpr, b: IExpr) -> Cof {
        Cof::eq(a, b)
    }

    #[test]
    fn simplify_reads_back_the_normal_form() {
        let phi = Cof::join([Cof::bot(), Cof::eq(IExpr::var("j"), IExpr::One)]);
        assert_eq!(simplify(&phi).to_string(), "(= 1 j)");
        assert_eq!(simplify(&Cof::meet([])).to_string(), "top");
        assert!(cof_eq(&[], &simplify(&phi), &phi));
    }

    #[test]
    fn isubst_examples() {
        let i = Name::new("i");
        assert_eq!(isubst(&v("i"), &i, &IExpr::Zero), IExpr::Zero);
        assert_eq!(isubst(&IExpr::One, &i, &v("j")), IExpr::One);
        assert_eq!(isubst(&v("j"), &i, &IExpr::Zero), v("j"));
    }

    #[test]
    fn csubst_examples() {
        let i = Name::new("i");
        let phi = Cof::join([eq(v("i"), IExpr::Zero), eq(v("i"), v("j"))]);
        assert_eq!(
            csubst(&phi, &i, &v("j")),
            Cof::join([eq(v("j"), IExpr::Zero), eq(v("j"), v("j"))])
        );
        assert_eq!(csubst(&Cof::top(), &i, &IExpr::Zero), Cof::top());
        assert_eq!(csubst(&eq(v("i"), IExpr::One), &i, &IExpr::One), eq(IExpr::One, IExpr::One));
    }

    #[test]
    fn dnf_examples() {
        assert!(dnf(&Cof::bot()).is_empty());
        let d = dnf(&Cof::join([eq(IExpr::Zero, IExpr::One), eq(v("i"), IExpr::Zero)]));
        assert_eq!(d, vec![Branch::atom(&v("i"), &IExpr::Zero)]);
        let d = dnf(&Cof::meet([
            eq(v("i"), IExpr::Zero),
            Cof::join([eq(v("j"), IExpr::One), Cof::top()]),
        ]));
        assert_eq!(d, vec![Branch::atom(&IExpr::Zero, &v("i"))]);
        assert_eq!(dnf(&Cof::top()), vec![Branch::top()]);
    }

    #[test]
    fn branch_atoms_are_oriented_and_closed() {
        let b = Branch::from_atoms([(&v("j"), &v("i")), (&v("j"), &IExpr::Zero)]);
        assert_eq!(
            b.atoms(),
            &[(IExpr::Zero, v("i")), (IExpr::Zero, v("j"))]
        );
        assert!(b.holds(&v("i"), &IExpr::Zero));
        assert!(b.is_consistent());
        let bad = Branch::from_atoms([(&v("i"), &IExpr::Zero), (&v("i"), &IExpr::One)]);
        assert!(!bad.is_consistent());
        assert!(Branch::atom(&v("i"), &v("i")).is_top());
    }

    #[test]
    fn entails_examples() {
        assert!(entails(&[], &Cof::top()));
        assert!(entails(
            &[eq(v("i"), v("j")), eq(v("j"), IExpr::Zero)],
            &eq(v("i"), IExpr::Zero)
        ));
        assert!(!entails(
            &[Cof::join([eq(v("i"), IExpr::Zero), eq(v("i"), IExpr::One)])],
            &eq(v("i"), IExpr::Zero)
        ));
        assert!(entails(&[Cof::bot()], &eq(IExpr::Zero, IExpr::One)));
    }

    #[test]
    fn cof_eq_examples() {
        assert!(cof_eq(&[], &eq(IExpr::Zero, IExpr::One), &Cof::bot()));
        let phi = eq(v("i"), IExpr::Zero);
        let psi = Cof::join([eq(v("j"), v("k")), eq(v("i"), IExpr::One)]);
        assert!(cof_eq(
            &[],
            &Cof::meet([phi.clone(), psi.clone()]),
            &Cof::meet([psi, phi])
        ));
        assert!(!cof_eq(&[], &eq(v("i"), IExpr::Zero), &eq(v("i"), IExpr::One)));
    }

    #[test]
    fn forall_elim_examples() {
        let i = Name::new("i");
        assert_eq!(forall_elim(&i, &eq(v("j"), IExpr::Zero)), eq(v("j"), IExpr::Zero));
        assert_eq!(forall_elim(&i, &eq(v("i"), v("i"))), Cof::top());
        assert_eq!(forall_elim(&i, &eq(v("i"), IExpr::Zero)), Cof::bot());
        assert_eq!(
            forall_elim(&i, &Cof::join([eq(v("i"), v("j")), eq(v("k"), IExpr::One)])),
            Cof::join([Cof::bot(), eq(v("k"), IExpr::One)])
        );
    }

    #[test]
    fn representative_prefers_endpoints_then_earliest_binding() {
        let scope = [Name::new("j"), Name::new("i")];
        let b = Branch::atom(&v("i"), &v("j"));
        assert_eq!(b.rep(&v("i"), &scope), v("j"));
        let (map, kept) = b.contraction(&scope);
        assert_eq!(kept, vec![Name::new("j")]);
        assert_eq!(map.get("i"), Some(&v("j")));
        let b0 = Branch::from_atoms([(&v("i"), &v("j")), (&v("i"), &IExpr::One)]);
        assert_eq!(b0.rep(&v("j"), &scope), IExpr::One);
    }

    #[test]
    fn display_round_shapes() {
        assert_eq!(Cof::top().to_string(), "top");
        assert_eq!(Cof::bot().to_string(), "bot");
        assert_eq!(
            Cof::join([eq(v("i"), IExpr::Zero), Cof::top()]).to_string(),
            "(or (= i 0) top)"
        );
    }
}
