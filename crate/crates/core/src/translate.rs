//! Translations of frameworks into G3 theories, and checks that the models
//! of each theory are exactly the complete labellings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::af::{enumerate_complete, ArgumentId, Framework, Label, Labelling};
use crate::error::{Error, Result};
use crate::g3::{ThreeVal, World};
use crate::pred::{
    enumerate_interps, r_decidedness, Domain, InterpOptions, PredFormula, PredInterp, Term,
};
use crate::prop::{enumerate_models, eval_world, value, PropAssignment, PropFormula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoryKind {
    DeltaProp,
    Theta0,
    Theta1,
    Instantiated,
    DeltaPred,
    OA,
    Star,
}

impl fmt::Display for TheoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoryKind::DeltaProp => "delta-prop",
            TheoryKind::Theta0 => "theta0",
            TheoryKind::Theta1 => "theta1",
            TheoryKind::Instantiated => "instantiated",
            TheoryKind::DeltaPred => "delta-pred",
            TheoryKind::OA => "o-a",
            TheoryKind::Star => "star",
        })
    }
}

/// Named formulas of one kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory<F> {
    kind: TheoryKind,
    entries: Vec<(String, F)>,
}

impl<F> Theory<F> {
    pub fn new(kind: TheoryKind) -> Self {
        Theory {
            kind,
            entries: Vec::new(),
        }
    }

    /// Appends an entry. Names must be unique.
    pub fn push(&mut self, name: impl Into<String>, f: F) -> Result<()> {
        let name = name.into();
        if self.entries.iter().any(|(n, _)| *n == name) {
            return Err(Error::DuplicateName(name));
        }
        self.entries.push((name, f));
        Ok(())
    }

    pub fn kind(&self) -> TheoryKind {
        self.kind
    }

    pub fn entries(&self) -> &[(String, F)] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&F> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &F> {
        self.entries.iter().map(|(_, f)| f)
    }

    pub fn map<G>(&self, mut f: impl FnMut(&F) -> G) -> Theory<G> {
        Theory {
            kind: self.kind,
            entries: self.entries.iter().map(|(n, x)| (n.clone(), f(x))).collect(),
        }
    }

    fn with_kind(mut self, kind: TheoryKind) -> Self {
        self.kind = kind;
        self
    }
}

/// One `name: formula` line per entry.
impl<F: fmt::Display> fmt::Display for Theory<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, x) in &self.entries {
            writeln!(f, "{name}: {x}")?;
        }
        Ok(())
    }
}

pub fn label_to_value(l: Label) -> ThreeVal {
    match l {
        Label::In => ThreeVal::TT,
        Label::Out => ThreeVal::FF,
        Label::Und => ThreeVal::FT,
    }
}

pub fn value_to_label(v: ThreeVal) -> Label {
    match v {
        ThreeVal::TT => Label::In,
        ThreeVal::FF => Label::Out,
        ThreeVal::FT => Label::Und,
    }
}

/// `h_λ`.
pub fn labelling_to_assignment(lab: &Labelling) -> PropAssignment {
    lab.iter()
        .map(|(a, l)| (a.as_str().to_string(), label_to_value(l)))
        .collect()
}

/// `λ_h`. Atoms that are not argument names are rejected.
pub fn assignment_to_labelling(h: &PropAssignment) -> Result<Labelling> {
    h.iter()
        .map(|(a, v)| Ok((ArgumentId::new(a)?, value_to_label(v))))
        .collect()
}

fn atom(a: &ArgumentId) -> PropFormula {
    PropFormula::atom(a.as_str())
}

/// `Δ_A`: clauses `a1[x]`, `a2[x]`, `b1[x]`, `b2[x]` for every argument.
pub fn delta_prop(f: &Framework) -> Theory<PropFormula> {
    use PropFormula as P;
    let mut th = Theory::new(TheoryKind::DeltaProp);
    for x in f.arguments() {
        let attackers: Vec<&ArgumentId> = f.attackers(x).collect();
        let all_out = P::conj(attackers.iter().map(|y| P::neg(atom(y))));
        let some_in = P::disj(attackers.iter().map(|y| atom(y)));
        let entries = [
            ("a1", P::imp(atom(x), P::or(P::N, all_out.clone()))),
            ("a2", P::imp(all_out, P::or(P::N, atom(x)))),
            ("b1", P::imp(P::neg(atom(x)), P::or(P::N, some_in.clone()))),
            ("b2", P::imp(some_in, P::or(P::neg(atom(x)), P::N))),
        ];
        for (tag, phi) in entries {
            th.push(format!("{tag}[{x}]"), phi).expect("argument names are unique");
        }
    }
    th
}

/// Set comparison between the labellings a theory produces and the
/// complete labellings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub framework: String,
    pub models: usize,
    pub labellings: usize,
    pub matched: Vec<Labelling>,
    /// Labellings read off models that are not complete.
    pub unmatched_models: Vec<Labelling>,
    /// Complete labellings no model produces.
    pub unmatched_labellings: Vec<Labelling>,
}

impl CorrespondenceReport {
    pub fn new(
        f: &Framework,
        models: usize,
        from_models: BTreeSet<Labelling>,
        expected: BTreeSet<Labelling>,
    ) -> Self {
        CorrespondenceReport {
            framework: f.to_string(),
            models,
            labellings: expected.len(),
            matched: from_models.intersection(&expected).cloned().collect(),
            unmatched_models: from_models.difference(&expected).cloned().collect(),
            unmatched_labellings: expected.difference(&from_models).cloned().collect(),
        }
    }

    pub fn is_match(&self) -> bool {
        self.unmatched_models.is_empty() && self.unmatched_labellings.is_empty()
    }
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} models, {} complete labellings, {} matched -> {}",
            self.framework,
            self.models,
            self.labellings,
            self.matched.len(),
            if self.is_match() { "MATCH" } else { "MISMATCH" }
        )?;
        for l in &self.unmatched_models {
            writeln!(f, "  model only: {l}")?;
        }
        for l in &self.unmatched_labellings {
            writeln!(f, "  labelling only: {l}")?;
        }
        Ok(())
    }
}

fn argument_atoms(f: &Framework) -> Vec<String> {
    f.arguments().iter().map(|a| a.as_str().to_string()).collect()
}

fn formulas(th: &Theory<PropFormula>) -> Vec<PropFormula> {
    th.formulas().cloned().collect()
}

/// Models of `Δ_A` against `enumerate_complete`.
pub fn verify_thm2(f: &Framework) -> CorrespondenceReport {
    let models = enumerate_models(&formulas(&delta_prop(f)), &argument_atoms(f))
        .expect("Δ_A only mentions arguments");
    let from_models = models
        .iter()
        .map(|h| assignment_to_labelling(h).expect("atoms are argument names"))
        .collect();
    CorrespondenceReport::new(f, models.len(), from_models, to_set(enumerate_complete(f)))
}

fn to_set(v: Vec<Labelling>) -> BTreeSet<Labelling> {
    v.into_iter().collect()
}

/// `⋀_x (x ∨ ¬x)`, the definable stand-in for `n`.
pub fn defined_n(f: &Framework) -> PropFormula {
    PropFormula::conj(
        f.arguments()
            .iter()
            .map(|x| PropFormula::or(atom(x), PropFormula::neg(atom(x)))),
    )
}

/// `(Θ⁰, Θ¹)`: `Θ⁰` has `x ↔ ⋀_{yRx} ¬y` per argument; `Θ¹` is `Δ_A` with
/// `n` replaced by [`defined_n`].
pub fn theta(f: &Framework) -> (Theory<PropFormula>, Theory<PropFormula>) {
    let mut t0 = Theory::new(TheoryKind::Theta0);
    for x in f.arguments() {
        let all_out = PropFormula::conj(f.attackers(x).map(|y| PropFormula::neg(atom(y))));
        t0.push(format!("theta0[{x}]"), PropFormula::iff(atom(x), all_out))
            .expect("argument names are unique");
    }
    let n = defined_n(f);
    let t1 = delta_prop(f)
        .map(|phi| phi.replace_n(&n))
        .with_kind(TheoryKind::Theta1);
    (t0, t1)
}

/// Outcome of the two-case analysis that eliminates `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    /// Stable labellings against two-valued `Θ⁰` models.
    pub stable: CorrespondenceReport,
    /// Non-stable complete labellings against `Θ¹` models where the
    /// defined `n` is `(f,t)`.
    pub non_stable: CorrespondenceReport,
    /// Union of both routes against all complete labellings.
    pub union: CorrespondenceReport,
}

impl ThetaReport {
    pub fn is_match(&self) -> bool {
        self.stable.is_match() && self.non_stable.is_match() && self.union.is_match()
    }
}

pub fn verify_theta(f: &Framework) -> ThetaReport {
    let atoms = argument_atoms(f);
    let (t0, t1) = theta(f);
    let n = defined_n(f);
    let lab = |h: &PropAssignment| assignment_to_labelling(h).expect("atoms are argument names");

    let m0 = enumerate_models(&formulas(&t0), &atoms).expect("closed over arguments");
    let stable_models: BTreeSet<Labelling> =
        m0.iter().filter(|h| h.is_two_valued()).map(lab).collect();

    let m1 = enumerate_models(&formulas(&t1), &atoms).expect("closed over arguments");
    let undecided_models: BTreeSet<Labelling> = m1
        .iter()
        .filter(|h| value(&n, h).expect("closed over arguments") == ThreeVal::FT)
        .map(lab)
        .collect();

    let complete = enumerate_complete(f);
    let (stable, non_stable): (Vec<_>, Vec<_>) =
        complete.iter().cloned().partition(Labelling::is_two_valued);
    let union_models: BTreeSet<Labelling> =
        stable_models.union(&undecided_models).cloned().collect();
    ThetaReport {
        stable: CorrespondenceReport::new(f, stable_models.len(), stable_models, to_set(stable)),
        non_stable: CorrespondenceReport::new(
            f,
            undecided_models.len(),
            undecided_models,
            to_set(non_stable),
        ),
        union: CorrespondenceReport::new(f, union_models.len(), union_models, to_set(complete)),
    }
}

fn check_substitution(
    f: &Framework,
    subst: &BTreeMap<ArgumentId, PropFormula>,
) -> Result<()> {
    for (target, phi) in subst {
        if !f.contains(target) {
            return Err(Error::UndeclaredArgument(target.to_string()));
        }
        for a in phi.atoms() {
            let Ok(id) = ArgumentId::new(a.as_str()) else {
                continue;
            };
            let identity = subst.get(&id) == Some(&PropFormula::Atom(a.clone()));
            if f.contains(&id) && !identity {
                return Err(Error::SubstitutionCollision {
                    target: target.to_string(),
                    atom: a,
                });
            }
        }
    }
    Ok(())
}

/// `Δ_A` with each substituted argument replaced by its formula.
pub fn instantiate(
    f: &Framework,
    subst: &BTreeMap<ArgumentId, PropFormula>,
) -> Result<Theory<PropFormula>> {
    check_substitution(f, subst)?;
    let map: BTreeMap<String, PropFormula> = subst
        .iter()
        .map(|(a, phi)| (a.as_str().to_string(), phi.clone()))
        .collect();
    Ok(delta_prop(f)
        .map(|phi| phi.substitute(&map))
        .with_kind(TheoryKind::Instantiated))
}

/// Atoms of an instantiated theory: unsubstituted arguments followed by
/// the atoms of the substituted formulas.
pub fn instantiated_atoms(
    f: &Framework,
    subst: &BTreeMap<ArgumentId, PropFormula>,
) -> Vec<String> {
    let mut atoms: Vec<String> = f
        .arguments()
        .iter()
        .filter(|a| !subst.contains_key(*a))
        .map(|a| a.as_str().to_string())
        .collect();
    let extra: BTreeSet<String> = subst.values().flat_map(PropFormula::atoms).collect();
    for a in extra {
        if !atoms.contains(&a) {
            atoms.push(a);
        }
    }
    atoms
}

/// Distinct labellings of the original arguments read off the models of
/// the instantiated theory. A substituted argument takes the status of
/// its formula.
pub fn instantiation_patterns(
    f: &Framework,
    subst: &BTreeMap<ArgumentId, PropFormula>,
) -> Result<BTreeSet<Labelling>> {
    let th = instantiate(f, subst)?;
    let atoms = instantiated_atoms(f, subst);
    let models = enumerate_models(&formulas(&th), &atoms)?;
    models
        .iter()
        .map(|h| {
            f.arguments()
                .iter()
                .map(|a| {
                    let v = match subst.get(a) {
                        Some(phi) => value(phi, h)?,
                        None => h.get(a.as_str()).expect("argument atoms are assigned"),
                    };
                    Ok((a.clone(), value_to_label(v)))
                })
                .collect()
        })
        .collect()
}

fn var(v: &str) -> Term {
    Term::var(v)
}

/// `(A1)`–`(B2)` plus `∀x∀y(xRy ∨ ¬xRy)`.
pub fn delta_pred(_f: &Framework) -> Theory<PredFormula> {
    use PredFormula as P;
    let in_x = || P::In(var("X"));
    let in_y = || P::In(var("Y"));
    let yrx = || P::R(var("Y"), var("X"));
    let all_out = || P::forall("Y", P::imp(yrx(), P::neg(in_y())));
    let some_in = || P::exists("Y", P::and(yrx(), in_y()));
    let mut th = Theory::new(TheoryKind::DeltaPred);
    let entries = [
        ("decided", r_decidedness()),
        ("A1", P::forall("X", P::imp(in_x(), P::or(P::N, all_out())))),
        ("A2", P::forall("X", P::imp(all_out(), P::or(P::N, in_x())))),
        ("B1", P::forall("X", P::imp(P::neg(in_x()), P::or(P::N, some_in())))),
        ("B2", P::forall("X", P::imp(some_in(), P::or(P::N, P::neg(in_x()))))),
    ];
    for (name, phi) in entries {
        th.push(name, phi).expect("fixed names");
    }
    th
}

fn domain_of(f: &Framework) -> Domain {
    Domain::new(f.arguments().iter().map(|a| a.as_str().to_string()))
        .expect("frameworks are nonempty with unique names")
}

fn relation_of(f: &Framework) -> BTreeSet<(String, String)> {
    f.attacks()
        .iter()
        .map(|(x, y)| (x.as_str().to_string(), y.as_str().to_string()))
        .collect()
}

fn interp_labelling(f: &Framework, m: &PredInterp) -> Labelling {
    f.arguments()
        .iter()
        .map(|a| (a.clone(), value_to_label(m.in_of(a.as_str()).expect("domain is S"))))
        .collect()
}

/// Interpretations of `delta_pred` over the domain `S` with `R` pinned to
/// the attacks, against `enumerate_complete`.
pub fn verify_thm42(f: &Framework) -> CorrespondenceReport {
    let th: Vec<PredFormula> = delta_pred(f).formulas().cloned().collect();
    let opts = InterpOptions {
        r_decided: true,
        fixed_r: Some(relation_of(f)),
    };
    let ms = enumerate_interps(&domain_of(f), &th, &opts).expect("closed theory over S");
    let from_models = ms.iter().map(|m| interp_labelling(f, m)).collect();
    CorrespondenceReport::new(f, ms.len(), from_models, to_set(enumerate_complete(f)))
}

fn listing_var(i: usize) -> String {
    format!("X{}", i + 1)
}

/// `⋀_{(i,j)∈R} x_i R x_j`, the positive listing alone. It only bounds the
/// relation from below; [`p_a`] is what `o_a` uses.
pub fn p_a_listed(f: &Framework) -> PredFormula {
    let args = f.arguments();
    PredFormula::conj(f.attacks().iter().map(|(x, y)| {
        let (i, j) = (
            args.iter().position(|a| a == x).unwrap(),
            args.iter().position(|a| a == y).unwrap(),
        );
        PredFormula::R(var(&listing_var(i)), var(&listing_var(j)))
    }))
}

/// `P_A`, listing `x_i R x_j` for attacks and `¬ x_i R x_j` for the other
/// pairs, so that it pins the relation exactly.
pub fn p_a(f: &Framework) -> PredFormula {
    let args = f.arguments();
    let mut lits = Vec::new();
    for (i, x) in args.iter().enumerate() {
        for (j, y) in args.iter().enumerate() {
            let r = PredFormula::R(var(&listing_var(i)), var(&listing_var(j)));
            lits.push(if f.attacks_pair(x, y) {
                r
            } else {
                PredFormula::neg(r)
            });
        }
    }
    PredFormula::conj(lits)
}

/// `O_A`: decidedness of `=` and `R`, then
/// `∃x_1..x_n (∀y ⋁ y = x_i ∧ D(V) ∧ P_A)` where `D(V)` says the `x_i`
/// are distinct.
pub fn o_a(f: &Framework) -> PredFormula {
    use PredFormula as P;
    let n = f.len();
    let vars: Vec<String> = (0..n).map(listing_var).collect();
    let covers = P::forall(
        "Y",
        P::disj(vars.iter().map(|v| P::Eq(var("Y"), var(v)))),
    );
    let mut distinct = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            distinct.push(P::neg(P::Eq(var(&vars[i]), var(&vars[j]))));
        }
    }
    let mut body = P::conj([covers, P::conj(distinct), p_a(f)]);
    for v in vars.iter().rev() {
        body = P::exists(v, body);
    }
    let eq_decided = P::forall(
        "X",
        P::forall(
            "Y",
            P::or(
                P::Eq(var("X"), var("Y")),
                P::neg(P::Eq(var("X"), var("Y"))),
            ),
        ),
    );
    P::conj([eq_decided, r_decidedness(), body])
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Models of `delta_pred ∪ {o_a}` over the domain `S` with `R` ranging
/// over every decided relation. Each model is read back through every
/// renaming `σ` of `S` that carries the attacks onto the model's `R`.
pub fn verify_oa(f: &Framework) -> CorrespondenceReport {
    let mut th: Vec<PredFormula> = delta_pred(f).formulas().cloned().collect();
    th.push(o_a(f));
    let d = domain_of(f);
    let opts = InterpOptions {
        r_decided: true,
        fixed_r: None,
    };
    let ms = enumerate_interps(&d, &th, &opts).expect("closed theory over S");
    let args = f.arguments();
    let perms = permutations(args.len());
    let mut from_models = BTreeSet::new();
    for m in &ms {
        let rel = m.relation();
        for sigma in &perms {
            let name = |i: usize| d.elements()[sigma[i]].clone();
            let image: BTreeSet<(String, String)> = f
                .attacks()
                .iter()
                .map(|(x, y)| {
                    let (i, j) = (f.index_of(x).unwrap(), f.index_of(y).unwrap());
                    (name(i), name(j))
                })
                .collect();
            if image == rel {
                let lab = args
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (a.clone(), value_to_label(m.in_of(&name(i)).unwrap())))
                    .collect();
                from_models.insert(lab);
            }
        }
    }
    CorrespondenceReport::new(f, ms.len(), from_models, to_set(enumerate_complete(f)))
}

/// Whether `t ⊨ φ` for every model of `Δ_A`.
pub fn holds_in_all_models(f: &Framework, phi: &PropFormula) -> Result<bool> {
    let models = enumerate_models(&formulas(&delta_prop(f)), &argument_atoms(f))?;
    for h in &models {
        if !eval_world(World::T, phi, h)? {
            return Ok(false);
        }
    }
    Ok(true)
}
