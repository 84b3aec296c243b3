//! Abstract argumentation frameworks and complete (Caminada) labellings.
//!
//! A labelling assigns every argument one of `in`, `out`, `und`. It is
//! complete when, at every argument `x`:
//!
//! * C1: `x` is `in` iff every attacker of `x` is `out`,
//! * C2: `x` is `out` iff some attacker of `x` is `in`,
//! * C3: `x` is `und` iff no attacker is `in` and some attacker is `und`.
//!
//! An unattacked argument is therefore always `in` (the empty conjunction
//! of C1 is true).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Name of an argument.
///
/// User-supplied names are tokens over `[a-zA-Z0-9_]`. Auxiliary points
/// created by the encoders carry structured names containing punctuation,
/// so they can never collide with a user name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_token(&name) {
            Ok(ArgumentId(name))
        } else {
            Err(Error::InvalidName(name))
        }
    }

    /// Auxiliary point; see [`crate::encode::AuxId`].
    pub(crate) fn auxiliary(name: String) -> Self {
        debug_assert!(!is_token(&name));
        ArgumentId(name)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True for points introduced by an encoding rather than by the user.
    pub fn is_auxiliary(&self) -> bool {
        !is_token(&self.0)
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for ArgumentId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Shorthand for building ids from literals in tests and fixtures.
///
/// Panics on an invalid name.
pub fn arg(name: &str) -> ArgumentId {
    ArgumentId::new(name).expect("valid argument name")
}

/// A finite argumentation network `(S, R)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Framework {
    arguments: Vec<ArgumentId>,
    attacks: BTreeSet<(ArgumentId, ArgumentId)>,
}

impl Framework {
    /// Builds a framework. Arguments are sorted by name; duplicate
    /// arguments are rejected, duplicate attacks are merged.
    pub fn new(
        arguments: impl IntoIterator<Item = ArgumentId>,
        attacks: impl IntoIterator<Item = (ArgumentId, ArgumentId)>,
    ) -> Result<Self> {
        let mut args: Vec<ArgumentId> = Vec::new();
        let mut seen = BTreeSet::new();
        for a in arguments {
            if !seen.insert(a.clone()) {
                return Err(Error::DuplicateName(a.0));
            }
            args.push(a);
        }
        if args.is_empty() {
            return Err(Error::EmptyFramework);
        }
        args.sort();
        let mut atts = BTreeSet::new();
        for (x, y) in attacks {
            for end in [&x, &y] {
                if !seen.contains(end) {
                    return Err(Error::UndeclaredArgument(end.0.clone()));
                }
            }
            atts.insert((x, y));
        }
        Ok(Framework {
            arguments: args,
            attacks: atts,
        })
    }

    /// Convenience constructor from string slices.
    pub fn from_names(arguments: &[&str], attacks: &[(&str, &str)]) -> Result<Self> {
        let args = arguments
            .iter()
            .map(|a| ArgumentId::new(*a))
            .collect::<Result<Vec<_>>>()?;
        let atts = attacks
            .iter()
            .map(|(x, y)| Ok((ArgumentId::new(*x)?, ArgumentId::new(*y)?)))
            .collect::<Result<Vec<_>>>()?;
        Framework::new(args, atts)
    }

    pub fn arguments(&self) -> &[ArgumentId] {
        &self.arguments
    }

    pub fn attacks(&self) -> &BTreeSet<(ArgumentId, ArgumentId)> {
        &self.attacks
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn contains(&self, a: &ArgumentId) -> bool {
        self.arguments.binary_search(a).is_ok()
    }

    pub fn index_of(&self, a: &ArgumentId) -> Option<usize> {
        self.arguments.binary_search(a).ok()
    }

    pub fn attacks_pair(&self, x: &ArgumentId, y: &ArgumentId) -> bool {
        self.attacks.contains(&(x.clone(), y.clone()))
    }

    /// Attackers of `x`, in argument order.
    pub fn attackers<'a>(&'a self, x: &'a ArgumentId) -> impl Iterator<Item = &'a ArgumentId> + 'a {
        self.attacks
            .iter()
            .filter(move |(_, t)| t == x)
            .map(|(s, _)| s)
    }

    /// Attacker indices per argument index.
    pub(crate) fn attacker_table(&self) -> Vec<Vec<usize>> {
        let mut table = vec![Vec::new(); self.arguments.len()];
        for (x, y) in &self.attacks {
            let (xi, yi) = (self.index_of(x).unwrap(), self.index_of(y).unwrap());
            table[yi].push(xi);
        }
        table
    }
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<&str> = self.arguments.iter().map(|a| a.as_str()).collect();
        let atts: Vec<String> = self
            .attacks
            .iter()
            .map(|(x, y)| format!("{x}->{y}"))
            .collect();
        write!(f, "({{{}}}, {{{}}})", args.join(","), atts.join(","))
    }
}

/// Caminada label. The derived order `In < Out < Und` is the
/// enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    In,
    Out,
    Und,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::In, Label::Out, Label::Und];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::In => "in",
            Label::Out => "out",
            Label::Und => "und",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A total map from arguments to labels.
///
/// Ordering compares labels argument by argument in name order, which is
/// the lexicographic order used for every enumeration in this crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Labelling(BTreeMap<ArgumentId, Label>);

impl Labelling {
    pub fn new(map: BTreeMap<ArgumentId, Label>) -> Self {
        Labelling(map)
    }

    /// Labelling from string/label pairs. Panics on invalid names.
    pub fn from_pairs(pairs: &[(&str, Label)]) -> Self {
        Labelling(pairs.iter().map(|(a, l)| (arg(a), *l)).collect())
    }

    pub fn get(&self, a: &ArgumentId) -> Option<Label> {
        self.0.get(a).copied()
    }

    /// Label of the argument named `name`. Panics if absent.
    pub fn label(&self, name: &str) -> Label {
        self.0[&arg(name)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ArgumentId, Label)> {
        self.0.iter().map(|(a, l)| (a, *l))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_map(&self) -> &BTreeMap<ArgumentId, Label> {
        &self.0
    }

    pub fn with_label(&self, label: Label) -> BTreeSet<ArgumentId> {
        self.iter()
            .filter(|(_, l)| *l == label)
            .map(|(a, _)| a.clone())
            .collect()
    }

    /// The extension `{x : λ(x) = in}`.
    pub fn extension(&self) -> BTreeSet<ArgumentId> {
        self.with_label(Label::In)
    }

    pub fn is_two_valued(&self) -> bool {
        self.0.values().all(|l| *l != Label::Und)
    }

    /// Keeps only the given arguments.
    pub fn project(&self, keep: &BTreeSet<ArgumentId>) -> Labelling {
        Labelling(
            self.0
                .iter()
                .filter(|(a, _)| keep.contains(*a))
                .map(|(a, l)| (a.clone(), *l))
                .collect(),
        )
    }
}

impl FromIterator<(ArgumentId, Label)> for Labelling {
    fn from_iter<I: IntoIterator<Item = (ArgumentId, Label)>>(iter: I) -> Self {
        Labelling(iter.into_iter().collect())
    }
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(a, l)| format!("{a}:{l}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// One of the labelling conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Condition {
    C1,
    C2,
    C3,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Outcome of [`check_complete`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessCheck {
    pub violations: Vec<(ArgumentId, Condition)>,
}

impl CompletenessCheck {
    pub fn is_complete(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, a: &str, c: Condition) -> bool {
        self.violations.iter().any(|(x, k)| x.as_str() == a && *k == c)
    }
}

/// The label C1-C3 force on an argument, given its attackers' labels.
fn forced_label(attacker_labels: impl Iterator<Item = Label>) -> Label {
    let mut some_und = false;
    for l in attacker_labels {
        match l {
            Label::In => return Label::Out,
            Label::Und => some_und = true,
            Label::Out => {}
        }
    }
    if some_und {
        Label::Und
    } else {
        Label::In
    }
}

/// Checks C1-C3 at every argument.
pub fn check_complete(f: &Framework, lab: &Labelling) -> Result<CompletenessCheck> {
    for a in lab.0.keys() {
        if !f.contains(a) {
            return Err(Error::ForeignLabel(a.0.clone()));
        }
    }
    let mut violations = Vec::new();
    for x in &f.arguments {
        let lx = lab.get(x).ok_or_else(|| Error::PartialLabelling(x.0.clone()))?;
        let mut all_out = true;
        let mut some_in = false;
        let mut some_und = false;
        for y in f.attackers(x) {
            let ly = lab.get(y).ok_or_else(|| Error::PartialLabelling(y.0.clone()))?;
            all_out &= ly == Label::Out;
            some_in |= ly == Label::In;
            some_und |= ly == Label::Und;
        }
        if (lx == Label::In) != all_out {
            violations.push((x.clone(), Condition::C1));
        }
        if (lx == Label::Out) != some_in {
            violations.push((x.clone(), Condition::C2));
        }
        if (lx == Label::Und) != (!some_in && some_und) {
            violations.push((x.clone(), Condition::C3));
        }
    }
    Ok(CompletenessCheck { violations })
}

/// All complete labellings, in lexicographic order.
pub fn enumerate_complete(f: &Framework) -> Vec<Labelling> {
    LabellingSearch::new(f).run(&Label::ALL)
}

/// All complete labellings without `und`, i.e. the stable ones.
pub fn enumerate_stable(f: &Framework) -> Vec<Labelling> {
    LabellingSearch::new(f).run(&[Label::In, Label::Out])
}

/// Literal generate-and-test over all `3^|S|` labellings.
///
/// Kept as an independent reference for [`enumerate_complete`]; it is only
/// practical for small frameworks.
pub fn enumerate_complete_brute(f: &Framework) -> Vec<Labelling> {
    let n = f.len();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let lab: Labelling = f
            .arguments
            .iter()
            .zip(&digits)
            .map(|(a, d)| (a.clone(), Label::ALL[*d]))
            .collect();
        if check_complete(f, &lab).map(|c| c.is_complete()).unwrap_or(false) {
            out.push(lab);
        }
        // odometer, last argument fastest so the output is lexicographic
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Exhaustive backtracking over labellings. An argument's conditions are
/// checked as soon as it and all of its attackers carry a label, so every
/// partial labelling that already violates C1-C3 is cut.
struct LabellingSearch<'a> {
    f: &'a Framework,
    attackers: Vec<Vec<usize>>,
    order: Vec<usize>,
    /// `checks[k]`: arguments whose conditions become decidable once the
    /// k-th argument of `order` is labelled.
    checks: Vec<Vec<usize>>,
}

impl<'a> LabellingSearch<'a> {
    fn new(f: &'a Framework) -> Self {
        let attackers = f.attacker_table();
        let order = search_order(f, &attackers);
        let mut pos = vec![0; f.len()];
        for (k, &x) in order.iter().enumerate() {
            pos[x] = k;
        }
        let mut checks = vec![Vec::new(); f.len()];
        for x in 0..f.len() {
            let depth = attackers[x].iter().map(|&y| pos[y]).fold(pos[x], usize::max);
            checks[depth].push(x);
        }
        LabellingSearch {
            f,
            attackers,
            order,
            checks,
        }
    }

    fn run(&self, domain: &[Label]) -> Vec<Labelling> {
        let mut labels = vec![Label::In; self.f.len()];
        let mut out = Vec::new();
        self.descend(0, domain, &mut labels, &mut out);
        out.sort();
        out
    }

    fn descend(&self, k: usize, domain: &[Label], labels: &mut [Label], out: &mut Vec<Labelling>) {
        if k == self.order.len() {
            out.push(
                self.f
                    .arguments
                    .iter()
                    .cloned()
                    .zip(labels.iter().copied())
                    .collect(),
            );
            return;
        }
        let x = self.order[k];
        for &l in domain {
            labels[x] = l;
            let ok = self.checks[k]
                .iter()
                .all(|&z| forced_label(self.attackers[z].iter().map(|&y| labels[y])) == labels[z]);
            if ok {
                self.descend(k + 1, domain, labels, out);
            }
        }
    }
}

/// Attackers before the arguments they attack where possible; cycles are
/// broken at the argument with the fewest unplaced attackers, preferring
/// user arguments over auxiliary points, then by name.
fn search_order(f: &Framework, attackers: &[Vec<usize>]) -> Vec<usize> {
    let n = f.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let pick = (0..n)
            .filter(|&x| !placed[x])
            .min_by_key(|&x| {
                let pending = attackers[x].iter().filter(|&&y| !placed[y] && y != x).count();
                (pending, f.arguments[x].is_auxiliary(), x)
            })
            .expect("an unplaced argument remains");
        placed[pick] = true;
        order.push(pick);
    }
    order
}

/// Stable, grounded and preferred labellings among a complete set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub stable: Vec<Labelling>,
    pub grounded: Labelling,
    pub preferred: Vec<Labelling>,
}

/// Classifies the complete labellings of one framework.
pub fn classify(labs: &[Labelling]) -> Result<Classification> {
    if labs.is_empty() {
        return Err(Error::NoLabellings);
    }
    let ins: Vec<BTreeSet<ArgumentId>> = labs.iter().map(Labelling::extension).collect();
    let stable = labs.iter().filter(|l| l.is_two_valued()).cloned().collect();
    let minimal: Vec<usize> = (0..labs.len())
        .filter(|&i| !(0..labs.len()).any(|j| ins[j].is_subset(&ins[i]) && ins[j] != ins[i]))
        .collect();
    if minimal.len() != 1 {
        return Err(Error::GroundedNotUnique(minimal.len()));
    }
    let preferred = (0..labs.len())
        .filter(|&i| !(0..labs.len()).any(|j| ins[i].is_subset(&ins[j]) && ins[j] != ins[i]))
        .map(|i| labs[i].clone())
        .collect();
    Ok(Classification {
        stable,
        grounded: labs[minimal[0]].clone(),
        preferred,
    })
}

/// `(subset, R ∩ subset²)`.
pub fn restrict(f: &Framework, subset: &BTreeSet<ArgumentId>) -> Result<Framework> {
    if subset.is_empty() {
        return Err(Error::EmptyRestriction);
    }
    if let Some(a) = subset.iter().find(|a| !f.contains(a)) {
        return Err(Error::UndeclaredArgument(a.0.clone()));
    }
    let attacks = f
        .attacks
        .iter()
        .filter(|(x, y)| subset.contains(x) && subset.contains(y))
        .cloned();
    Framework::new(subset.iter().cloned(), attacks)
}
