//! Higher-level networks: nodes plus formula units over `R`, with attacks
//! between any two units, translated by the starred clauses and solved by
//! exhaustive search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::af::{is_token, ArgumentId, Framework};
use crate::error::{Error, Result};
use crate::g3::{Odometer, ThreeVal};
use crate::pred::{compile, pred_value, Compiled, Domain, PredFormula, PredInterp, Tables, Term};
use crate::translate::{Theory, TheoryKind};

/// An argument of a higher-level network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unit {
    Node(ArgumentId),
    Wff { name: String, formula: PredFormula },
}

impl Unit {
    pub fn name(&self) -> &str {
        match self {
            Unit::Node(a) => a.as_str(),
            Unit::Wff { name, .. } => name,
        }
    }

    /// `In(x)` for a node, the formula itself for a wff.
    pub fn in_form(&self) -> PredFormula {
        match self {
            Unit::Node(a) => PredFormula::in_c(a.as_str()),
            Unit::Wff { formula, .. } => formula.clone(),
        }
    }

    pub fn out_form(&self) -> PredFormula {
        PredFormula::neg(self.in_form())
    }
}

/// Name of the unit standing for the atom `xRy`.
pub fn r_unit_name(x: &str, y: &str) -> String {
    format!("r({x},{y})")
}

/// Splits `r(x,y)` into its two element names.
pub fn parse_r_unit(name: &str) -> Option<(&str, &str)> {
    let inner = name.strip_prefix("r(")?.strip_suffix(')')?;
    let (x, y) = inner.split_once(',')?;
    let (x, y) = (x.trim(), y.trim());
    (is_token(x) && is_token(y)).then_some((x, y))
}

/// `(S ∪ W, R')`: nodes, named closed formulas, and attacks among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherNetwork {
    nodes: Vec<ArgumentId>,
    wffs: Vec<(String, PredFormula)>,
    hattacks: BTreeSet<(String, String)>,
}

impl HigherNetwork {
    pub fn new(nodes: impl IntoIterator<Item = ArgumentId>) -> Result<Self> {
        let mut ns: Vec<ArgumentId> = Vec::new();
        for n in nodes {
            if ns.contains(&n) {
                return Err(Error::DuplicateName(n.to_string()));
            }
            ns.push(n);
        }
        if ns.is_empty() {
            return Err(Error::EmptyFramework);
        }
        ns.sort();
        Ok(HigherNetwork {
            nodes: ns,
            wffs: Vec::new(),
            hattacks: BTreeSet::new(),
        })
    }

    /// The framework as a network with no wffs.
    pub fn from_framework(f: &Framework) -> Self {
        let mut hn = HigherNetwork::new(f.arguments().iter().cloned()).expect("valid framework");
        for (x, y) in f.attacks() {
            hn.hattacks.insert((x.to_string(), y.to_string()));
        }
        hn
    }

    pub fn nodes(&self) -> &[ArgumentId] {
        &self.nodes
    }

    pub fn wffs(&self) -> &[(String, PredFormula)] {
        &self.wffs
    }

    pub fn hattacks(&self) -> &BTreeSet<(String, String)> {
        &self.hattacks
    }

    fn is_node(&self, name: &str) -> bool {
        self.nodes.iter().any(|n| n.as_str() == name)
    }

    fn has_unit(&self, name: &str) -> bool {
        self.is_node(name) || self.wffs.iter().any(|(n, _)| n == name)
    }

    /// Adds a closed formula unit whose constants are nodes.
    pub fn add_wff(&mut self, name: &str, formula: PredFormula) -> Result<()> {
        if self.has_unit(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        if !formula.is_closed() {
            return Err(Error::OpenWff(name.to_string()));
        }
        if let Some(c) = formula.constants().into_iter().find(|c| !self.is_node(c)) {
            return Err(Error::UndeclaredArgument(c));
        }
        self.wffs.push((name.to_string(), formula));
        Ok(())
    }

    /// Registers the unit `r(x,y)` if absent and returns its name.
    pub fn add_r_unit(&mut self, x: &str, y: &str) -> Result<String> {
        let name = r_unit_name(x, y);
        if !self.has_unit(&name) {
            self.add_wff(&name, PredFormula::r_c(x, y))?;
        }
        Ok(name)
    }

    fn resolve(&mut self, name: &str) -> Result<String> {
        if self.has_unit(name) {
            return Ok(name.to_string());
        }
        match parse_r_unit(name) {
            Some((x, y)) => self.add_r_unit(x, y),
            None => Err(Error::UndeclaredUnit(name.to_string())),
        }
    }

    /// Adds an attack. `r(x,y)` endpoints are registered on the fly.
    pub fn add_attack(&mut self, from: &str, to: &str) -> Result<()> {
        let from = self.resolve(from)?;
        let to = self.resolve(to)?;
        self.hattacks.insert((from, to));
        Ok(())
    }

    pub fn unit(&self, name: &str) -> Option<Unit> {
        if let Some(n) = self.nodes.iter().find(|n| n.as_str() == name) {
            return Some(Unit::Node(n.clone()));
        }
        self.wffs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(n, f)| Unit::Wff {
                name: n.clone(),
                formula: f.clone(),
            })
    }

    /// Nodes first, then wffs in insertion order.
    pub fn units(&self) -> Vec<Unit> {
        self.nodes
            .iter()
            .map(|n| Unit::Node(n.clone()))
            .chain(self.wffs.iter().map(|(n, f)| Unit::Wff {
                name: n.clone(),
                formula: f.clone(),
            }))
            .collect()
    }

    fn domain(&self) -> Domain {
        Domain::new(self.nodes.iter().map(|n| n.as_str().to_string())).expect("nonempty nodes")
    }

    fn declared_attackers(&self, target: &str) -> Vec<Unit> {
        self.hattacks
            .iter()
            .filter(|(_, t)| t == target)
            .map(|(a, _)| self.unit(a).expect("attack endpoints are declared"))
            .collect()
    }
}

/// The formula expressing that `attacker` attacks `target`.
pub fn attack_formula(attacker: &Unit, target: &Unit) -> PredFormula {
    let lhs = match (attacker, target) {
        (Unit::Node(x), Unit::Node(y)) => {
            PredFormula::and(PredFormula::in_c(x.as_str()), PredFormula::r_c(x.as_str(), y.as_str()))
        }
        _ => attacker.in_form(),
    };
    PredFormula::imp(lhs, target.out_form())
}

/// Which node-to-node attacks the starred clauses consider.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JointAttacks {
    /// Every node attacks every node by `In(y) ∧ yRx`.
    #[default]
    Implicit,
    /// Only the declared attacks, each read as `In(y) ∧ yRx`.
    Declared,
}

/// Shape of the `a2` clause of a wff unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WffSupport {
    /// `⋀_Y (Y out → n ∨ ψ)`; nothing when `ψ` is unattacked.
    #[default]
    PerAttacker,
    /// `(⋀_Y Y out) → n ∨ ψ`, forcing an unattacked `ψ` in.
    Aggregate,
}

/// How the solver ranges over `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RMode {
    /// Every pair three-valued.
    #[default]
    Free,
    /// Decided and equal to the declared node-to-node attacks.
    Pinned,
    /// Three-valued on pairs the theory mentions, `(f,f)` elsewhere.
    Mentioned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StarOptions {
    pub joint: JointAttacks,
    pub wff_support: WffSupport,
    pub r_mode: RMode,
    /// Refuse searches with more three-valued unknowns than this.
    pub max_unknowns: usize,
}

impl Default for StarOptions {
    fn default() -> Self {
        StarOptions {
            joint: JointAttacks::Implicit,
            wff_support: WffSupport::PerAttacker,
            r_mode: RMode::Free,
            max_unknowns: 14,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A1,
    A2,
    B1,
    B2,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A1, Family::A2, Family::B1, Family::B2];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::A1 => "a1",
            Family::A2 => "a2",
            Family::B1 => "b1",
            Family::B2 => "b2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An attacker as it appears in the clauses of one target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackerForm {
    pub in_form: PredFormula,
    pub out_form: PredFormula,
}

fn attackers_of(hn: &HigherNetwork, target: &Unit, joint: JointAttacks) -> Vec<AttackerForm> {
    let joint_form = |y: &str, x: &str| AttackerForm {
        in_form: PredFormula::and(PredFormula::in_c(y), PredFormula::r_c(y, x)),
        out_form: PredFormula::or(
            PredFormula::neg(PredFormula::in_c(y)),
            PredFormula::neg(PredFormula::r_c(y, x)),
        ),
    };
    let plain = |u: &Unit| AttackerForm {
        in_form: u.in_form(),
        out_form: u.out_form(),
    };
    let declared = hn.declared_attackers(target.name());
    match target {
        Unit::Node(x) => {
            let mut out = Vec::new();
            if joint == JointAttacks::Implicit {
                out.extend(hn.nodes.iter().map(|y| joint_form(y.as_str(), x.as_str())));
            }
            for u in &declared {
                match u {
                    Unit::Node(y) if joint == JointAttacks::Declared => {
                        out.push(joint_form(y.as_str(), x.as_str()))
                    }
                    Unit::Node(_) => {}
                    Unit::Wff { .. } => out.push(plain(u)),
                }
            }
            out
        }
        Unit::Wff { .. } => declared.iter().map(plain).collect(),
    }
}

/// The starred clauses of one unit.
fn unit_clauses(
    target: &Unit,
    attackers: &[AttackerForm],
    opts: &StarOptions,
) -> [(Family, PredFormula); 4] {
    use PredFormula as P;
    let (t_in, t_out) = (target.in_form(), target.out_form());
    let all_out = || P::conj(attackers.iter().map(|y| y.out_form.clone()));
    let some_in = || P::disj(attackers.iter().map(|y| y.in_form.clone()));
    let a2 = match (target, opts.wff_support) {
        (Unit::Wff { .. }, WffSupport::PerAttacker) => P::conj(
            attackers
                .iter()
                .map(|y| P::imp(y.out_form.clone(), P::or(P::N, t_in.clone()))),
        ),
        _ => P::imp(all_out(), P::or(P::N, t_in.clone())),
    };
    [
        (Family::A1, P::imp(t_in.clone(), P::or(P::N, all_out()))),
        (Family::A2, a2),
        (Family::B1, P::imp(t_out.clone(), P::or(P::N, some_in()))),
        (Family::B2, P::imp(some_in(), P::or(P::N, t_out))),
    ]
}

/// Clauses `a1[W]`, `a2[W]`, `b1[W]`, `b2[W]` for every unit `W`.
pub fn star_theory(hn: &HigherNetwork, opts: &StarOptions) -> Theory<PredFormula> {
    let mut th = Theory::new(TheoryKind::Star);
    for u in hn.units() {
        let atts = attackers_of(hn, &u, opts.joint);
        for (fam, phi) in unit_clauses(&u, &atts, opts) {
            th.push(format!("{fam}[{}]", u.name()), phi)
                .expect("unit names are unique");
        }
    }
    th
}

/// Canonical text of a formula modulo associativity, commutativity and
/// idempotence of `∧` and `∨`.
pub fn ac_normal(f: &PredFormula) -> String {
    fn flatten<'a>(f: &'a PredFormula, and: bool, out: &mut Vec<&'a PredFormula>) {
        match (f, and) {
            (PredFormula::And(a, b), true) | (PredFormula::Or(a, b), false) => {
                flatten(a, and, out);
                flatten(b, and, out);
            }
            _ => out.push(f),
        }
    }
    match f {
        PredFormula::And(..) | PredFormula::Or(..) => {
            let and = matches!(f, PredFormula::And(..));
            let mut parts = Vec::new();
            flatten(f, and, &mut parts);
            let set: BTreeSet<String> = parts.into_iter().map(ac_normal).collect();
            if set.len() == 1 {
                return set.into_iter().next().unwrap();
            }
            let items: Vec<String> = set.into_iter().collect();
            format!("{}({})", if and { "&" } else { "|" }, items.join(", "))
        }
        PredFormula::Neg(a) => format!("~{}", ac_normal(a)),
        PredFormula::Imp(a, b) => format!("->({}, {})", ac_normal(a), ac_normal(b)),
        PredFormula::Forall(v, a) => format!("forall {v} ({})", ac_normal(a)),
        PredFormula::Exists(v, a) => format!("exists {v} ({})", ac_normal(a)),
        atom => atom.to_string(),
    }
}

/// One (family, target form, attacker form) triple, in [`ac_normal`] text.
pub type Incidence = (Family, String, String);

/// Target/attacker incidences of the starred clauses. `a1` and `a2` pair
/// the target's in form with each attacker's out form; `b1` and `b2` pair
/// the target's out form with each attacker's in form.
pub fn star_incidence(hn: &HigherNetwork, opts: &StarOptions) -> BTreeSet<Incidence> {
    let mut out = BTreeSet::new();
    for u in hn.units() {
        let (t_in, t_out) = (ac_normal(&u.in_form()), ac_normal(&u.out_form()));
        for y in attackers_of(hn, &u, opts.joint) {
            let (y_in, y_out) = (ac_normal(&y.in_form), ac_normal(&y.out_form));
            out.insert((Family::A1, t_in.clone(), y_out.clone()));
            out.insert((Family::A2, t_in.clone(), y_out));
            out.insert((Family::B1, t_out.clone(), y_in.clone()));
            out.insert((Family::B2, t_out.clone(), y_in));
        }
    }
    out
}

/// Reads one single-attacker clause `X → (n ∨ Y)` back into an incidence.
/// For `a1`/`b1` the target is `X`; for `a2`/`b2` it is `Y`.
pub fn row_incidence(family: Family, row: &PredFormula) -> Option<Incidence> {
    let PredFormula::Imp(lhs, rhs) = row else {
        return None;
    };
    let mut parts = Vec::new();
    fn flatten_or(f: &PredFormula, out: &mut Vec<PredFormula>) {
        match f {
            PredFormula::Or(a, b) => {
                flatten_or(a, out);
                flatten_or(b, out);
            }
            _ => out.push(f.clone()),
        }
    }
    flatten_or(rhs, &mut parts);
    let before = parts.len();
    parts.retain(|p| *p != PredFormula::N);
    if parts.len() == before || parts.is_empty() {
        return None;
    }
    let rest = ac_normal(&PredFormula::disj(parts));
    let lhs = ac_normal(lhs);
    Some(match family {
        Family::A1 | Family::B1 => (family, lhs, rest),
        Family::A2 | Family::B2 => (family, rest, lhs),
    })
}

/// An interpretation together with the status of every wff unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedModel {
    pub interp: PredInterp,
    pub wff_status: BTreeMap<String, ThreeVal>,
}

impl GeneralizedModel {
    pub fn in_of(&self, node: &str) -> Option<ThreeVal> {
        self.interp.in_of(node)
    }

    pub fn r_of(&self, x: &str, y: &str) -> Option<ThreeVal> {
        self.interp.r_of(x, y)
    }

    pub fn status(&self, wff: &str) -> Option<ThreeVal> {
        self.wff_status.get(wff).copied()
    }
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    In(usize),
    R(usize),
}

struct Search {
    n: usize,
    slots: Vec<Slot>,
    /// `checks[d]`: clauses whose atoms are all assigned once `d` slots are.
    checks: Vec<Vec<Compiled>>,
    in_val: Vec<ThreeVal>,
    r_val: Vec<ThreeVal>,
    r_decided: bool,
}

fn term_elems(t: &Term, dom: &Domain) -> Vec<usize> {
    match t {
        Term::Const(c) => vec![dom.index_of(c).expect("constants are nodes")],
        Term::Var(_) => (0..dom.len()).collect(),
    }
}

/// In and R cells a formula can read.
fn cells(f: &PredFormula, dom: &Domain) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let n = dom.len();
    let (mut ins, mut rs) = (BTreeSet::new(), BTreeSet::new());
    f.visit(&mut |g| match g {
        PredFormula::In(t) => ins.extend(term_elems(t, dom)),
        PredFormula::R(a, b) => {
            for i in term_elems(a, dom) {
                for j in term_elems(b, dom) {
                    rs.insert(i * n + j);
                }
            }
        }
        _ => {}
    });
    (ins, rs)
}

impl Search {
    fn new(hn: &HigherNetwork, opts: &StarOptions) -> Result<Search> {
        let dom = hn.domain();
        let n = dom.len();
        let theory = star_theory(hn, opts);
        let deps: Vec<_> = theory.formulas().map(|f| cells(f, &dom)).collect();

        let mut r_val = vec![ThreeVal::FF; n * n];
        let r_slots: Vec<usize> = match opts.r_mode {
            RMode::Free => (0..n * n).collect(),
            RMode::Pinned => {
                for (x, y) in &hn.hattacks {
                    if let (Some(i), Some(j)) = (dom.index_of(x), dom.index_of(y)) {
                        r_val[i * n + j] = ThreeVal::TT;
                    }
                }
                Vec::new()
            }
            RMode::Mentioned => {
                let mentioned: BTreeSet<usize> =
                    deps.iter().flat_map(|(_, rs)| rs.iter().copied()).collect();
                mentioned.into_iter().collect()
            }
        };
        let unknowns = n + r_slots.len() + hn.wffs.len();
        if unknowns > opts.max_unknowns {
            return Err(Error::GuardExceeded {
                unknowns,
                limit: opts.max_unknowns,
            });
        }

        let slots: Vec<Slot> = (0..n)
            .map(Slot::In)
            .chain(r_slots.iter().copied().map(Slot::R))
            .collect();
        let mut position_in = vec![usize::MAX; n];
        let mut position_r = vec![usize::MAX; n * n];
        for (k, s) in slots.iter().enumerate() {
            match *s {
                Slot::In(i) => position_in[i] = k,
                Slot::R(c) => position_r[c] = k,
            }
        }
        let mut checks = vec![Vec::new(); slots.len() + 1];
        for (f, (ins, rs)) in theory.formulas().zip(&deps) {
            let last = ins
                .iter()
                .map(|&i| position_in[i])
                .chain(rs.iter().map(|&c| position_r[c]).filter(|&k| k != usize::MAX))
                .map(|k| k + 1)
                .max()
                .unwrap_or(0);
            checks[last].push(compile(f, &dom, &[])?);
        }
        Ok(Search {
            n,
            slots,
            checks,
            in_val: vec![ThreeVal::FF; n],
            r_val,
            r_decided: opts.r_mode == RMode::Pinned,
        })
    }

    fn tables(&self) -> Tables<'_> {
        Tables {
            n: self.n,
            in_val: &self.in_val,
            r_val: &self.r_val,
        }
    }

    fn set(&mut self, slot: Slot, v: ThreeVal) {
        match slot {
            Slot::In(i) => self.in_val[i] = v,
            Slot::R(c) => self.r_val[c] = v,
        }
    }

    /// Depth-first over slots in order; returns false if stopped.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&Search) -> bool) -> bool {
        if !self.checks[depth].iter().all(|c| c.holds(self.tables())) {
            return true;
        }
        if depth == self.slots.len() {
            return visit(self);
        }
        let slot = self.slots[depth];
        for v in ThreeVal::ALL {
            self.set(slot, v);
            if !self.run(depth + 1, visit) {
                return false;
            }
        }
        true
    }
}

fn to_model(hn: &HigherNetwork, s: &Search) -> GeneralizedModel {
    let dom = hn.domain();
    let el = |k: usize| dom.elements()[k].clone();
    let r = (0..s.n * s.n)
        .map(|k| ((el(k / s.n), el(k % s.n)), s.r_val[k]))
        .collect();
    let ins = (0..s.n).map(|k| (el(k), s.in_val[k])).collect();
    let interp = PredInterp::new(dom.clone(), &ins, &r, s.r_decided).expect("values fit the domain");
    let wff_status = hn
        .wffs
        .iter()
        .map(|(name, f)| (name.clone(), pred_value(f, &interp).expect("closed wff")))
        .collect();
    GeneralizedModel { interp, wff_status }
}

/// Streams the models of the starred theory in enumeration order (`In` by
/// node, then `R` pairs row-major, each `FF < FT < TT`). Stop by returning
/// false.
pub fn for_each_higher_model(
    hn: &HigherNetwork,
    opts: &StarOptions,
    mut visit: impl FnMut(&GeneralizedModel) -> bool,
) -> Result<()> {
    let mut search = Search::new(hn, opts)?;
    search.run(0, &mut |s| visit(&to_model(hn, s)));
    Ok(())
}

/// All models of the starred theory.
pub fn solve_higher(hn: &HigherNetwork, opts: &StarOptions) -> Result<Vec<GeneralizedModel>> {
    let mut out = Vec::new();
    for_each_higher_model(hn, opts, |m| {
        out.push(m.clone());
        true
    })?;
    Ok(out)
}

/// [`solve_higher`] by plain enumeration of every candidate.
pub fn solve_higher_brute(
    hn: &HigherNetwork,
    opts: &StarOptions,
) -> Result<Vec<GeneralizedModel>> {
    let mut search = Search::new(hn, opts)?;
    let all: Vec<Compiled> = search.checks.iter().flatten().cloned().collect();
    let mut out = Vec::new();
    let mut odo = Odometer::new(search.slots.len(), 3);
    while let Some(digits) = odo.next_digits() {
        let digits = digits.to_vec();
        for (k, d) in digits.into_iter().enumerate() {
            search.set(search.slots[k], ThreeVal::ALL[d]);
        }
        if all.iter().all(|c| c.holds(search.tables())) {
            out.push(to_model(hn, &search));
        }
        odo.advance();
    }
    Ok(out)
}
