//! Axiomatic frames and the disjunctive, conjunctive and ADF encodings.
//!
//! Encodings that need extra points name them through [`AuxId`]. Those
//! names contain brackets, so they can never clash with a user argument.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::af::{enumerate_complete, enumerate_stable, ArgumentId, Framework, Label, Labelling};
use crate::error::{Error, Result};
use crate::g3::{ThreeVal, World};
use crate::pred::{compile, Domain, PredFormula, Tables, Term};
use crate::prop::PropFormula;

pub type Relation = BTreeSet<(ArgumentId, ArgumentId)>;

/// Largest `|S0|^2` [`aaf_extensions`] will enumerate relations over.
pub const MAX_AAF_PAIRS: usize = 20;

/// `(S0, Ψ)`: a set of points plus a classical constraint on `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomaticFrame {
    s0: Vec<ArgumentId>,
    psi: PredFormula,
}

impl AxiomaticFrame {
    pub fn new(s0: impl IntoIterator<Item = ArgumentId>, psi: PredFormula) -> Result<Self> {
        let mut s0: Vec<ArgumentId> = s0.into_iter().collect();
        s0.sort();
        if let Some(w) = s0.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateName(w[0].to_string()));
        }
        if s0.is_empty() {
            return Err(Error::EmptyFramework);
        }
        check_classical(&psi)?;
        if let Some(v) = psi.free_vars().into_iter().next() {
            return Err(Error::OpenFormula(v));
        }
        for c in psi.constants() {
            if !s0.iter().any(|a| a.as_str() == c) {
                return Err(Error::UnknownElement(c));
            }
        }
        Ok(AxiomaticFrame { s0, psi })
    }

    pub fn s0(&self) -> &[ArgumentId] {
        &self.s0
    }

    pub fn psi(&self) -> &PredFormula {
        &self.psi
    }
}

fn check_classical(f: &PredFormula) -> Result<()> {
    if f.mentions_in() {
        return Err(Error::NotClassical("In"));
    }
    if f.mentions_n() {
        return Err(Error::NotClassical("the constant n"));
    }
    Ok(())
}

fn domain_of(s0: &[ArgumentId]) -> Result<Domain> {
    Domain::new(s0.iter().map(|a| a.as_str().to_string()))
}

fn relation_table(s0: &[ArgumentId], r: &Relation) -> Result<Vec<ThreeVal>> {
    let n = s0.len();
    let idx = |a: &ArgumentId| {
        s0.iter()
            .position(|b| b == a)
            .ok_or_else(|| Error::UnknownElement(a.to_string()))
    };
    let mut table = vec![ThreeVal::FF; n * n];
    for (x, y) in r {
        table[idx(x)? * n + idx(y)?] = ThreeVal::TT;
    }
    Ok(table)
}

/// Classical truth of a closed `R`/`=` formula in the structure `(s0, r)`.
pub fn classical_eval(f: &PredFormula, s0: &[ArgumentId], r: &Relation) -> Result<bool> {
    check_classical(f)?;
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::OpenFormula(v));
    }
    let domain = domain_of(s0)?;
    let c = compile(f, &domain, &[])?;
    let r_val = relation_table(s0, r)?;
    let in_val = vec![ThreeVal::FF; s0.len()];
    // At the final world negation and implication only look at that
    // world, and a decided relation looks the same everywhere.
    Ok(c.eval(
        World::S,
        Tables {
            n: s0.len(),
            in_val: &in_val,
            r_val: &r_val,
        },
        &mut Vec::new(),
    ))
}

/// One model of `Ψ` with the complete labellings of its network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AafModel {
    pub relation: Relation,
    pub labellings: Vec<Labelling>,
}

/// Every relation over `S0` satisfying `Ψ`, in lexicographic order, each
/// paired with the complete labellings of `(S0, r)`.
pub fn aaf_extensions(af: &AxiomaticFrame) -> Result<Vec<AafModel>> {
    let n = af.s0.len();
    if n * n > MAX_AAF_PAIRS {
        return Err(Error::GuardExceeded {
            unknowns: n * n,
            limit: MAX_AAF_PAIRS,
        });
    }
    let domain = domain_of(&af.s0)?;
    let c = compile(&af.psi, &domain, &[])?;
    let pairs: Vec<(ArgumentId, ArgumentId)> = af
        .s0
        .iter()
        .flat_map(|x| af.s0.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let in_val = vec![ThreeVal::FF; n];
    let mut r_val = vec![ThreeVal::FF; n * n];
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        for (i, slot) in r_val.iter_mut().enumerate() {
            *slot = if mask >> i & 1 == 1 {
                ThreeVal::TT
            } else {
                ThreeVal::FF
            };
        }
        let tables = Tables {
            n,
            in_val: &in_val,
            r_val: &r_val,
        };
        if !c.eval(World::S, tables, &mut Vec::new()) {
            continue;
        }
        let relation: Relation = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p.clone())
            .collect();
        let f = Framework::new(af.s0.iter().cloned(), relation.iter().cloned())?;
        out.push(AafModel {
            relation,
            labellings: enumerate_complete(&f),
        });
    }
    out.sort_by(|a, b| a.relation.cmp(&b.relation));
    Ok(out)
}

/// Names of the points an encoding adds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AuxId {
    /// `α(y,Y,z)`: out exactly when `y` is in.
    Alpha {
        member: ArgumentId,
        group: BTreeSet<ArgumentId>,
        target: ArgumentId,
    },
    /// `β(Y,z)`: in exactly when all of `Y` are in.
    Beta {
        group: BTreeSet<ArgumentId>,
        target: ArgumentId,
    },
    /// `β(x)`: stands for `¬x`.
    Not(ArgumentId),
    /// `γ(x,d)`: stands for the disjunct `d` of `F(x)`.
    Gamma { x: ArgumentId, disjunct: String },
    /// `δ(x,d,y)`: stands for `¬y` inside the disjunct `d`.
    Delta {
        x: ArgumentId,
        disjunct: String,
        atom: ArgumentId,
    },
}

fn group_str(g: &BTreeSet<ArgumentId>) -> String {
    let names: Vec<&str> = g.iter().map(|a| a.as_str()).collect();
    format!("{{{}}}", names.join(","))
}

impl fmt::Display for AuxId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuxId::Alpha {
                member,
                group,
                target,
            } => write!(f, "alpha({member},{},{target})", group_str(group)),
            AuxId::Beta { group, target } => write!(f, "beta({},{target})", group_str(group)),
            AuxId::Not(x) => write!(f, "beta({x})"),
            AuxId::Gamma { x, disjunct } => write!(f, "gamma({x},{disjunct})"),
            AuxId::Delta { x, disjunct, atom } => write!(f, "delta({x},{disjunct},{atom})"),
        }
    }
}

impl AuxId {
    pub fn id(&self) -> ArgumentId {
        ArgumentId::auxiliary(self.to_string())
    }
}

/// A framework produced by an encoding, with the points to project onto.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Encoding {
    pub framework: Framework,
    pub projection: BTreeSet<ArgumentId>,
}

impl Encoding {
    /// `E ∩ S0` for every complete labelling `E`, deduplicated.
    pub fn projected_extensions(&self) -> Vec<Labelling> {
        self.project_all(enumerate_complete(&self.framework))
    }

    /// Projections of the labellings without `und`.
    pub fn projected_two_valued(&self) -> Vec<Labelling> {
        self.project_all(enumerate_stable(&self.framework))
    }

    fn project_all(&self, labs: Vec<Labelling>) -> Vec<Labelling> {
        let set: BTreeSet<Labelling> = labs.iter().map(|l| l.project(&self.projection)).collect();
        set.into_iter().collect()
    }
}

#[derive(Default)]
struct Builder {
    args: BTreeSet<ArgumentId>,
    attacks: BTreeSet<(ArgumentId, ArgumentId)>,
}

impl Builder {
    fn point(&mut self, a: ArgumentId) -> ArgumentId {
        self.args.insert(a.clone());
        a
    }

    fn attack(&mut self, x: &ArgumentId, y: &ArgumentId) {
        self.attacks.insert((x.clone(), y.clone()));
    }

    /// `Y ⊸ target` through `y ↠ α(y) ↠ hub ↠ target`.
    fn joint(&mut self, group: &BTreeSet<ArgumentId>, target: &ArgumentId, hub: ArgumentId) {
        let hub = self.point(hub);
        for y in group {
            let alpha = self.point(
                AuxId::Alpha {
                    member: y.clone(),
                    group: group.clone(),
                    target: target.clone(),
                }
                .id(),
            );
            self.attack(y, &alpha);
            self.attack(&alpha, &hub);
        }
        self.attack(&hub, target);
    }

    fn finish(self, projection: BTreeSet<ArgumentId>) -> Result<Encoding> {
        Ok(Encoding {
            framework: Framework::new(self.args, self.attacks)?,
            projection,
        })
    }
}

fn declared(s: &[ArgumentId], a: &ArgumentId) -> Result<()> {
    if s.contains(a) {
        Ok(())
    } else {
        Err(Error::UndeclaredArgument(a.to_string()))
    }
}

fn sorted_unique(s: impl IntoIterator<Item = ArgumentId>) -> Result<Vec<ArgumentId>> {
    let mut v: Vec<ArgumentId> = s.into_iter().collect();
    v.sort();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateName(w[0].to_string()));
    }
    if v.is_empty() {
        return Err(Error::EmptyFramework);
    }
    Ok(v)
}

/// Attacks `z ⊸ Y`: `z` in forces at least one of `Y` out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjunctiveNet {
    s: Vec<ArgumentId>,
    dattacks: BTreeSet<(ArgumentId, BTreeSet<ArgumentId>)>,
}

impl DisjunctiveNet {
    pub fn new(
        s: impl IntoIterator<Item = ArgumentId>,
        dattacks: impl IntoIterator<Item = (ArgumentId, BTreeSet<ArgumentId>)>,
    ) -> Result<Self> {
        let s = sorted_unique(s)?;
        let mut set = BTreeSet::new();
        for (z, ys) in dattacks {
            declared(&s, &z)?;
            if ys.is_empty() {
                return Err(Error::EmptyGroup(format!("{z} -> {{}}")));
            }
            for y in &ys {
                declared(&s, y)?;
            }
            set.insert((z, ys));
        }
        Ok(DisjunctiveNet { s, dattacks: set })
    }

    pub fn arguments(&self) -> &[ArgumentId] {
        &self.s
    }

    pub fn dattacks(&self) -> &BTreeSet<(ArgumentId, BTreeSet<ArgumentId>)> {
        &self.dattacks
    }

    /// Pairs `(z, y)` with `z ⊸ Y` and `y ∈ Y`.
    pub fn allowed_pairs(&self) -> Relation {
        self.dattacks
            .iter()
            .flat_map(|(z, ys)| ys.iter().map(move |y| (z.clone(), y.clone())))
            .collect()
    }
}

/// `⋀_{z⊸Y} ⋁_{y∈Y} zRy`.
pub fn disjunctive_psi(dn: &DisjunctiveNet) -> PredFormula {
    PredFormula::conj(dn.dattacks.iter().map(|(z, ys)| {
        PredFormula::disj(ys.iter().map(|y| PredFormula::r_c(z.as_str(), y.as_str())))
    }))
}

/// `∀X∀Y (XRY → ⋁ (X=z ∧ Y=y))` over the allowed pairs.
pub fn frame_constraint(dn: &DisjunctiveNet) -> PredFormula {
    let (x, y) = (Term::var("X"), Term::var("Y"));
    let allowed = PredFormula::disj(dn.allowed_pairs().iter().map(|(z, w)| {
        PredFormula::and(
            PredFormula::Eq(x.clone(), Term::con(z.as_str())),
            PredFormula::Eq(y.clone(), Term::con(w.as_str())),
        )
    }));
    PredFormula::forall(
        "X",
        PredFormula::forall(
            "Y",
            PredFormula::imp(PredFormula::R(x.clone(), y.clone()), allowed),
        ),
    )
}

pub fn encode_disjunctive(dn: &DisjunctiveNet) -> Result<AxiomaticFrame> {
    let psi = PredFormula::and(disjunctive_psi(dn), frame_constraint(dn));
    AxiomaticFrame::new(dn.s.iter().cloned(), psi)
}

/// Attacks `Y ⊸ z`: all of `Y` in forces `z` out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjunctiveNet {
    s0: Vec<ArgumentId>,
    cattacks: BTreeSet<(BTreeSet<ArgumentId>, ArgumentId)>,
}

impl ConjunctiveNet {
    pub fn new(
        s0: impl IntoIterator<Item = ArgumentId>,
        cattacks: impl IntoIterator<Item = (BTreeSet<ArgumentId>, ArgumentId)>,
    ) -> Result<Self> {
        let s0 = sorted_unique(s0)?;
        let mut set = BTreeSet::new();
        for (ys, z) in cattacks {
            declared(&s0, &z)?;
            if ys.is_empty() {
                return Err(Error::EmptyGroup(format!("{{}} -> {z}")));
            }
            for y in &ys {
                declared(&s0, y)?;
            }
            set.insert((ys, z));
        }
        Ok(ConjunctiveNet { s0, cattacks: set })
    }

    pub fn arguments(&self) -> &[ArgumentId] {
        &self.s0
    }

    pub fn cattacks(&self) -> &BTreeSet<(BTreeSet<ArgumentId>, ArgumentId)> {
        &self.cattacks
    }
}

pub fn encode_conjunctive(cn: &ConjunctiveNet) -> Result<Encoding> {
    let mut b = Builder::default();
    for a in &cn.s0 {
        b.point(a.clone());
    }
    for (ys, z) in &cn.cattacks {
        let hub = AuxId::Beta {
            group: ys.clone(),
            target: z.clone(),
        };
        b.joint(ys, z, hub.id());
    }
    b.finish(cn.s0.iter().cloned().collect())
}

/// Acceptance condition of one ADF node as a set of (partial) vectors
/// over its parents. `None` entries are "don't care".
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Acceptance {
    parents: Vec<ArgumentId>,
    delta: BTreeSet<Vec<Option<bool>>>,
}

impl Acceptance {
    /// Always accepted.
    pub fn top() -> Self {
        Acceptance {
            parents: Vec::new(),
            delta: [Vec::new()].into_iter().collect(),
        }
    }

    pub fn parents(&self) -> &[ArgumentId] {
        &self.parents
    }

    pub fn delta(&self) -> &BTreeSet<Vec<Option<bool>>> {
        &self.delta
    }

    fn holds(&self, value: &dyn Fn(&ArgumentId) -> bool) -> bool {
        self.delta.iter().any(|v| {
            v.iter()
                .zip(&self.parents)
                .all(|(e, p)| e.is_none_or(|b| value(p) == b))
        })
    }

    fn disjunct_name(&self, v: &[Option<bool>]) -> String {
        let lits: Vec<String> = v
            .iter()
            .zip(&self.parents)
            .filter_map(|(e, p)| e.map(|b| if b { p.to_string() } else { format!("~{p}") }))
            .collect();
        if lits.is_empty() {
            "true".into()
        } else {
            lits.join("&")
        }
    }

    /// `F(x)` as a DNF formula over the parents.
    pub fn to_formula(&self) -> PropFormula {
        PropFormula::disj(self.delta.iter().map(|v| {
            PropFormula::conj(v.iter().zip(&self.parents).filter_map(|(e, p)| {
                e.map(|b| {
                    let a = PropFormula::atom(p.as_str());
                    if b {
                        a
                    } else {
                        PropFormula::neg(a)
                    }
                })
            }))
        }))
    }
}

/// An abstract dialectical framework with conditions in DNF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdfNet {
    s: Vec<ArgumentId>,
    conditions: BTreeMap<ArgumentId, Acceptance>,
}

impl AdfNet {
    /// Every argument starts with `F(x) = ⊤`.
    pub fn new(s: impl IntoIterator<Item = ArgumentId>) -> Result<Self> {
        let s = sorted_unique(s)?;
        let conditions = s.iter().map(|a| (a.clone(), Acceptance::top())).collect();
        Ok(AdfNet { s, conditions })
    }

    pub fn arguments(&self) -> &[ArgumentId] {
        &self.s
    }

    pub fn condition(&self, x: &ArgumentId) -> Option<&Acceptance> {
        self.conditions.get(x)
    }

    pub fn set_condition(
        &mut self,
        x: &ArgumentId,
        parents: Vec<ArgumentId>,
        delta: impl IntoIterator<Item = Vec<Option<bool>>>,
    ) -> Result<()> {
        declared(&self.s, x)?;
        let mut seen = BTreeSet::new();
        for p in &parents {
            declared(&self.s, p)?;
            if !seen.insert(p) {
                return Err(Error::DuplicateName(p.to_string()));
            }
        }
        let mut set = BTreeSet::new();
        for v in delta {
            if v.len() != parents.len() {
                return Err(Error::VectorSize {
                    arg: x.to_string(),
                    expected: parents.len(),
                    got: v.len(),
                });
            }
            set.insert(v);
        }
        self.conditions
            .insert(x.clone(), Acceptance { parents, delta: set });
        Ok(())
    }

    /// Sets `F(x)` from a formula in DNF over declared arguments. The
    /// parents are the atoms of the formula, sorted.
    pub fn set_dnf(&mut self, x: &ArgumentId, f: &PropFormula) -> Result<()> {
        let not_dnf = || Error::NotDnf(x.to_string());
        let parents: Vec<ArgumentId> = f
            .atoms()
            .into_iter()
            .map(ArgumentId::new)
            .collect::<Result<_>>()?;
        let mut disjuncts = Vec::new();
        flatten_or(f, &mut disjuncts);
        let mut delta = Vec::new();
        'next: for d in disjuncts {
            let mut lits = Vec::new();
            flatten_and(d, &mut lits);
            let mut v = vec![None; parents.len()];
            for l in lits {
                let (name, b) = match l {
                    PropFormula::Top => continue,
                    PropFormula::Bot => continue 'next,
                    PropFormula::Atom(a) => (a, true),
                    PropFormula::Neg(inner) => match inner.as_ref() {
                        PropFormula::Atom(a) => (a, false),
                        _ => return Err(not_dnf()),
                    },
                    _ => return Err(not_dnf()),
                };
                let i = parents
                    .iter()
                    .position(|p| p.as_str() == name)
                    .ok_or_else(not_dnf)?;
                match v[i] {
                    Some(prev) if prev != b => continue 'next,
                    _ => v[i] = Some(b),
                }
            }
            delta.push(v);
        }
        self.set_condition(x, parents, delta)
    }

    /// Truth of `F(x)` under a total two-valued assignment.
    pub fn accepts(&self, x: &ArgumentId, value: &dyn Fn(&ArgumentId) -> bool) -> bool {
        self.conditions.get(x).is_none_or(|c| c.holds(value))
    }
}

fn flatten_or<'a>(f: &'a PropFormula, out: &mut Vec<&'a PropFormula>) {
    match f {
        PropFormula::Or(a, b) => {
            flatten_or(a, out);
            flatten_or(b, out);
        }
        _ => out.push(f),
    }
}

fn flatten_and<'a>(f: &'a PropFormula, out: &mut Vec<&'a PropFormula>) {
    match f {
        PropFormula::And(a, b) => {
            flatten_and(a, out);
            flatten_and(b, out);
        }
        _ => out.push(f),
    }
}

/// The `β/γ/δ` gadget: `x` is in exactly when some disjunct of `F(x)`
/// holds.
pub fn encode_adf(adf: &AdfNet) -> Result<Encoding> {
    let mut b = Builder::default();
    for a in &adf.s {
        b.point(a.clone());
    }
    for x in &adf.s {
        let cond = &adf.conditions[x];
        if cond.delta.iter().any(|v| v.iter().all(Option::is_none)) {
            continue;
        }
        let not_x = b.point(AuxId::Not(x.clone()).id());
        b.attack(&not_x, x);
        for v in &cond.delta {
            let name = cond.disjunct_name(v);
            let mut group = BTreeSet::new();
            for (e, p) in v.iter().zip(&cond.parents) {
                match e {
                    Some(true) => {
                        group.insert(p.clone());
                    }
                    Some(false) => {
                        let d = b.point(
                            AuxId::Delta {
                                x: x.clone(),
                                disjunct: name.clone(),
                                atom: p.clone(),
                            }
                            .id(),
                        );
                        b.attack(p, &d);
                        group.insert(d);
                    }
                    None => {}
                }
            }
            let hub = AuxId::Gamma {
                x: x.clone(),
                disjunct: name,
            };
            b.joint(&group, &not_x, hub.id());
        }
    }
    b.finish(adf.s.iter().cloned().collect())
}

/// Assignments satisfying `⋀ (x ↔ F(x))`, by brute force over `2^|S|`.
pub fn adf_two_valued_models(adf: &AdfNet) -> Vec<Labelling> {
    let n = adf.s.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let value = |a: &ArgumentId| {
            let i = adf.s.binary_search(a).expect("parent is declared");
            mask >> i & 1 == 1
        };
        if adf.s.iter().all(|x| adf.accepts(x, &value) == value(x)) {
            out.push(
                adf.s
                    .iter()
                    .map(|x| (x.clone(), if value(x) { Label::In } else { Label::Out }))
                    .collect::<Labelling>(),
            );
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::{arg, check_complete};
    use crate::syntax::{parse_pred, parse_prop};

    fn ids(names: &[&str]) -> Vec<ArgumentId> {
        names.iter().map(|n| arg(n)).collect()
    }

    fn rel(pairs: &[(&str, &str)]) -> Relation {
        pairs.iter().map(|(x, y)| (arg(x), arg(y))).collect()
    }

    fn set(names: &[&str]) -> BTreeSet<ArgumentId> {
        names.iter().map(|n| arg(n)).collect()
    }

    #[test]
    fn no_self_attack_on_empty_relation() {
        let f = parse_pred("~exists X (R(X,X))").unwrap();
        assert!(classical_eval(&f, &ids(&["a"]), &Relation::new()).unwrap());
    }

    #[test]
    fn unattacked_point_missing_in_two_cycle() {
        let f = parse_pred("exists Y (forall Z (~R(Z,Y)))").unwrap();
        let r = rel(&[("a", "b"), ("b", "a")]);
        assert!(!classical_eval(&f, &ids(&["a", "b"]), &r).unwrap());
    }

    #[test]
    fn classical_rejects_in_and_n() {
        let f = parse_pred("In(a)").unwrap();
        assert_eq!(
            classical_eval(&f, &ids(&["a"]), &Relation::new()),
            Err(Error::NotClassical("In"))
        );
        let f = parse_pred("#n").unwrap();
        assert!(AxiomaticFrame::new(ids(&["a"]), f).is_err());
    }

    fn two_element_psi() -> PredFormula {
        parse_pred(
            "forall X (X = a | X = b) & a != b & exists X (forall Y (~R(Y,X))) \
             & ~R(a,a) & ~R(b,b)",
        )
        .unwrap()
    }

    #[test]
    fn two_element_example() {
        let psi = two_element_psi();
        assert!(classical_eval(&psi, &ids(&["a", "b"]), &rel(&[("a", "b")])).unwrap());
        let af = AxiomaticFrame::new(ids(&["a", "b"]), psi).unwrap();
        let models = aaf_extensions(&af).unwrap();
        let rels: Vec<Relation> = models.iter().map(|m| m.relation.clone()).collect();
        assert_eq!(
            rels,
            vec![Relation::new(), rel(&[("a", "b")]), rel(&[("b", "a")])]
        );
        let exts: BTreeSet<Labelling> = models
            .iter()
            .flat_map(|m| m.labellings.iter().cloned())
            .collect();
        let expected: BTreeSet<Labelling> = [
            Labelling::from_pairs(&[("a", Label::In), ("b", Label::In)]),
            Labelling::from_pairs(&[("a", Label::In), ("b", Label::Out)]),
            Labelling::from_pairs(&[("a", Label::Out), ("b", Label::In)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(exts, expected);
    }

    #[test]
    fn bottom_has_no_models() {
        let af = AxiomaticFrame::new(ids(&["a", "b"]), PredFormula::Bot).unwrap();
        assert!(aaf_extensions(&af).unwrap().is_empty());
    }

    #[test]
    fn one_element_constraint() {
        let psi = parse_pred("~exists X (R(X,X)) & exists Y (forall Z (~R(Z,Y)))").unwrap();
        let af = AxiomaticFrame::new(ids(&["a"]), psi).unwrap();
        let models = aaf_extensions(&af).unwrap();
        assert_eq!(models.len(), 1);
        assert!(models[0].relation.is_empty());
        assert_eq!(
            models[0].labellings,
            vec![Labelling::from_pairs(&[("a", Label::In)])]
        );
    }

    #[test]
    fn aaf_guard() {
        let af = AxiomaticFrame::new(ids(&["a", "b", "c", "d", "e"]), PredFormula::Top).unwrap();
        assert_eq!(
            aaf_extensions(&af),
            Err(Error::GuardExceeded {
                unknowns: 25,
                limit: MAX_AAF_PAIRS
            })
        );
    }

    #[test]
    fn disjunctive_single_attack() {
        let dn = DisjunctiveNet::new(ids(&["y1", "y2", "z"]), [(arg("z"), set(&["y1", "y2"]))])
            .unwrap();
        let af = encode_disjunctive(&dn).unwrap();
        let models = aaf_extensions(&af).unwrap();
        let rels: Vec<Relation> = models.iter().map(|m| m.relation.clone()).collect();
        assert_eq!(
            rels,
            vec![
                rel(&[("z", "y1")]),
                rel(&[("z", "y1"), ("z", "y2")]),
                rel(&[("z", "y2")]),
            ]
        );
        for m in &models {
            for l in &m.labellings {
                if l.label("z") == Label::In {
                    assert!(l.label("y1") == Label::Out || l.label("y2") == Label::Out);
                }
            }
        }
    }

    #[test]
    fn disjunctive_empty_allows_only_empty_relation() {
        let dn = DisjunctiveNet::new(ids(&["a", "b"]), []).unwrap();
        assert_eq!(disjunctive_psi(&dn), PredFormula::Top);
        let models = aaf_extensions(&encode_disjunctive(&dn).unwrap()).unwrap();
        assert_eq!(models.len(), 1);
        assert!(models[0].relation.is_empty());
    }

    #[test]
    fn empty_groups_rejected() {
        assert!(matches!(
            DisjunctiveNet::new(ids(&["z"]), [(arg("z"), BTreeSet::new())]),
            Err(Error::EmptyGroup(_))
        ));
        assert!(matches!(
            ConjunctiveNet::new(ids(&["z"]), [(BTreeSet::new(), arg("z"))]),
            Err(Error::EmptyGroup(_))
        ));
    }

    fn aux(name: &str) -> ArgumentId {
        ArgumentId::auxiliary(name.to_string())
    }

    #[test]
    fn conjunctive_gadget_all_in() {
        let cn = ConjunctiveNet::new(ids(&["y1", "y2", "z"]), [(set(&["y1", "y2"]), arg("z"))])
            .unwrap();
        let enc = encode_conjunctive(&cn).unwrap();
        assert_eq!(enc.framework.len(), 6);
        assert!(enc
            .framework
            .attacks_pair(&arg("y1"), &aux("alpha(y1,{y1,y2},z)")));
        assert!(enc
            .framework
            .attacks_pair(&aux("beta({y1,y2},z)"), &arg("z")));
        let labs = enumerate_complete(&enc.framework);
        assert_eq!(labs.len(), 1);
        let l = &labs[0];
        assert_eq!(l.get(&aux("alpha(y1,{y1,y2},z)")), Some(Label::Out));
        assert_eq!(l.get(&aux("alpha(y2,{y1,y2},z)")), Some(Label::Out));
        assert_eq!(l.get(&aux("beta({y1,y2},z)")), Some(Label::In));
        assert_eq!(l.label("z"), Label::Out);
    }

    #[test]
    fn conjunctive_gadget_one_member_out() {
        // An extra ordinary attack w -> y1 is a one-element group.
        let cn = ConjunctiveNet::new(
            ids(&["w", "y1", "y2", "z"]),
            [
                (set(&["y1", "y2"]), arg("z")),
                (set(&["w"]), arg("y1")),
            ],
        )
        .unwrap();
        let enc = encode_conjunctive(&cn).unwrap();
        let labs = enumerate_complete(&enc.framework);
        assert_eq!(labs.len(), 1);
        let l = &labs[0];
        assert_eq!(l.label("y1"), Label::Out);
        assert_eq!(l.get(&aux("alpha(y1,{y1,y2},z)")), Some(Label::In));
        assert_eq!(l.get(&aux("beta({y1,y2},z)")), Some(Label::Out));
        assert_eq!(l.label("z"), Label::In);
    }

    #[test]
    fn projection_drops_exactly_auxiliary_points() {
        let cn = ConjunctiveNet::new(ids(&["a", "b"]), [(set(&["a", "b"]), arg("a"))]).unwrap();
        let enc = encode_conjunctive(&cn).unwrap();
        let aux: BTreeSet<ArgumentId> = enc
            .framework
            .arguments()
            .iter()
            .filter(|a| a.is_auxiliary())
            .cloned()
            .collect();
        assert_eq!(aux.len(), 3);
        assert!(enc.projection.is_disjoint(&aux));
        assert_eq!(enc.projection.len() + aux.len(), enc.framework.len());
    }

    fn fig12() -> AdfNet {
        let mut adf = AdfNet::new(ids(&["a", "b", "c", "x"])).unwrap();
        adf.set_dnf(&arg("x"), &parse_prop("a & ~b | c").unwrap())
            .unwrap();
        adf
    }

    #[test]
    fn fig12_all_in_is_a_model() {
        let adf = fig12();
        let all_in = Labelling::from_pairs(&[
            ("a", Label::In),
            ("b", Label::In),
            ("c", Label::In),
            ("x", Label::In),
        ]);
        assert_eq!(adf_two_valued_models(&adf), vec![all_in.clone()]);
        assert_eq!(encode_adf(&adf).unwrap().projected_two_valued(), vec![all_in]);
    }

    #[test]
    fn fig12_gadget_shape() {
        let enc = encode_adf(&fig12()).unwrap();
        let f = &enc.framework;
        assert!(f.attacks_pair(&aux("beta(x)"), &arg("x")));
        assert!(f.attacks_pair(&arg("b"), &aux("delta(x,a&~b,b)")));
        assert!(f.attacks_pair(&aux("gamma(x,a&~b)"), &aux("beta(x)")));
        assert!(f.attacks_pair(&aux("gamma(x,c)"), &aux("beta(x)")));
        assert!(f.contains(&aux("alpha(delta(x,a&~b,b),{a,delta(x,a&~b,b)},beta(x))")));
    }

    #[test]
    fn empty_delta_forces_out() {
        let mut adf = AdfNet::new(ids(&["a", "x"])).unwrap();
        adf.set_condition(&arg("x"), ids(&["a"]), []).unwrap();
        for l in encode_adf(&adf).unwrap().projected_extensions() {
            assert_eq!(l.label("x"), Label::Out);
        }
        for l in adf_two_valued_models(&adf) {
            assert_eq!(l.label("x"), Label::Out);
        }
        assert!(!encode_adf(&adf).unwrap().projected_two_valued().is_empty());
    }

    #[test]
    fn full_delta_forces_in() {
        let mut adf = AdfNet::new(ids(&["a", "x"])).unwrap();
        adf.set_condition(
            &arg("x"),
            ids(&["a"]),
            [vec![Some(true)], vec![Some(false)]],
        )
        .unwrap();
        let models = adf_two_valued_models(&adf);
        assert!(!models.is_empty());
        assert!(models.iter().all(|l| l.label("x") == Label::In));
        assert_eq!(encode_adf(&adf).unwrap().projected_two_valued(), models);
    }

    #[test]
    fn vector_size_checked() {
        let mut adf = AdfNet::new(ids(&["a", "x"])).unwrap();
        assert_eq!(
            adf.set_condition(&arg("x"), ids(&["a"]), [vec![]]),
            Err(Error::VectorSize {
                arg: "x".into(),
                expected: 1,
                got: 0
            })
        );
    }

    #[test]
    fn dnf_shape_enforced() {
        let mut adf = AdfNet::new(ids(&["a", "b", "x"])).unwrap();
        let f = parse_prop("a & (b | ~a)").unwrap();
        assert_eq!(adf.set_dnf(&arg("x"), &f), Err(Error::NotDnf("x".into())));
        let f = parse_prop("false").unwrap();
        adf.set_dnf(&arg("x"), &f).unwrap();
        assert!(adf.condition(&arg("x")).unwrap().delta().is_empty());
    }

    #[test]
    fn aaf_pairs_are_sound() {
        let af = AxiomaticFrame::new(ids(&["a", "b"]), two_element_psi()).unwrap();
        for m in aaf_extensions(&af).unwrap() {
            assert!(classical_eval(af.psi(), af.s0(), &m.relation).unwrap());
            let f = Framework::new(af.s0().iter().cloned(), m.relation.iter().cloned()).unwrap();
            for l in &m.labellings {
                assert!(check_complete(&f, l).unwrap().is_complete());
            }
        }
    }
}
