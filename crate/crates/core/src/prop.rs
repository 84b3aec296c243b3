//! Propositional G3 over the frame `t < s`, with the constant `n` valued
//! `(⊥,⊤)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::g3::{Odometer, ThreeVal, World};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropFormula {
    Atom(String),
    /// The constant `n`: false at `t`, true at `s`.
    N,
    Top,
    Bot,
    Neg(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Imp(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        PropFormula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: PropFormula) -> Self {
        PropFormula::Neg(Box::new(a))
    }

    pub fn and(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Imp(Box::new(a), Box::new(b))
    }

    /// `(a → b) ∧ (b → a)`.
    pub fn iff(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::and(PropFormula::imp(a.clone(), b.clone()), PropFormula::imp(b, a))
    }

    /// Left-nested conjunction; `⊤` when empty.
    pub fn conj(items: impl IntoIterator<Item = PropFormula>) -> Self {
        items
            .into_iter()
            .reduce(PropFormula::and)
            .unwrap_or(PropFormula::Top)
    }

    /// Left-nested disjunction; `⊥` when empty.
    pub fn disj(items: impl IntoIterator<Item = PropFormula>) -> Self {
        items
            .into_iter()
            .reduce(PropFormula::or)
            .unwrap_or(PropFormula::Bot)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            PropFormula::Atom(a) => {
                out.insert(a.clone());
            }
            PropFormula::N | PropFormula::Top | PropFormula::Bot => {}
            PropFormula::Neg(a) => a.collect_atoms(out),
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn mentions_n(&self) -> bool {
        match self {
            PropFormula::N => true,
            PropFormula::Atom(_) | PropFormula::Top | PropFormula::Bot => false,
            PropFormula::Neg(a) => a.mentions_n(),
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
                a.mentions_n() || b.mentions_n()
            }
        }
    }

    /// Replaces atoms by formulas. Atoms without an entry are kept.
    pub fn substitute(&self, subst: &BTreeMap<String, PropFormula>) -> PropFormula {
        self.map_leaves(&|leaf| match leaf {
            PropFormula::Atom(a) => subst.get(a).cloned(),
            _ => None,
        })
    }

    /// Replaces every occurrence of `n` by `def`.
    pub fn replace_n(&self, def: &PropFormula) -> PropFormula {
        self.map_leaves(&|leaf| matches!(leaf, PropFormula::N).then(|| def.clone()))
    }

    fn map_leaves(&self, f: &dyn Fn(&PropFormula) -> Option<PropFormula>) -> PropFormula {
        match self {
            PropFormula::Neg(a) => PropFormula::neg(a.map_leaves(f)),
            PropFormula::And(a, b) => PropFormula::and(a.map_leaves(f), b.map_leaves(f)),
            PropFormula::Or(a, b) => PropFormula::or(a.map_leaves(f), b.map_leaves(f)),
            PropFormula::Imp(a, b) => PropFormula::imp(a.map_leaves(f), b.map_leaves(f)),
            leaf => f(leaf).unwrap_or_else(|| leaf.clone()),
        }
    }
}

/// Assignment `h` of truth profiles to atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PropAssignment(BTreeMap<String, ThreeVal>);

impl PropAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(&str, ThreeVal)]) -> Self {
        PropAssignment(pairs.iter().map(|(a, v)| (a.to_string(), *v)).collect())
    }

    pub fn set(&mut self, atom: impl Into<String>, v: ThreeVal) {
        self.0.insert(atom.into(), v);
    }

    pub fn get(&self, atom: &str) -> Option<ThreeVal> {
        self.0.get(atom).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, ThreeVal)> {
        self.0.iter().map(|(a, v)| (a.as_str(), *v))
    }

    pub fn is_two_valued(&self) -> bool {
        self.0.values().all(|v| v.is_decided())
    }
}

impl FromIterator<(String, ThreeVal)> for PropAssignment {
    fn from_iter<I: IntoIterator<Item = (String, ThreeVal)>>(iter: I) -> Self {
        PropAssignment(iter.into_iter().collect())
    }
}

/// `w ⊨_h f`.
pub fn eval_world(w: World, f: &PropFormula, h: &PropAssignment) -> Result<bool> {
    Ok(match f {
        PropFormula::Atom(a) => h.get(a).ok_or_else(|| Error::UnassignedAtom(a.clone()))?.at(w),
        PropFormula::N => ThreeVal::FT.at(w),
        PropFormula::Top => true,
        PropFormula::Bot => false,
        PropFormula::And(a, b) => eval_world(w, a, h)? && eval_world(w, b, h)?,
        PropFormula::Or(a, b) => eval_world(w, a, h)? || eval_world(w, b, h)?,
        PropFormula::Neg(a) => {
            let mut ok = true;
            for &v in w.successors() {
                ok &= !eval_world(v, a, h)?;
            }
            ok
        }
        PropFormula::Imp(a, b) => {
            let mut ok = true;
            for &v in w.successors() {
                ok &= !eval_world(v, a, h)? || eval_world(v, b, h)?;
            }
            ok
        }
    })
}

/// The profile `(t ⊨ f, s ⊨ f)`.
pub fn value(f: &PropFormula, h: &PropAssignment) -> Result<ThreeVal> {
    let t = eval_world(World::T, f, h)?;
    let s = eval_world(World::S, f, h)?;
    Ok(ThreeVal::from_worlds(t, s).expect("persistence: t ⊨ A implies s ⊨ A"))
}

/// Every assignment over `atoms` under which each theory member holds at
/// `t`, in odometer order (last atom fastest, `FF < FT < TT`).
pub fn enumerate_models(theory: &[PropFormula], atoms: &[String]) -> Result<Vec<PropAssignment>> {
    let mut out = Vec::new();
    for_each_assignment(atoms, |h| {
        for phi in theory {
            if !eval_world(World::T, phi, h)? {
                return Ok(());
            }
        }
        out.push(h.clone());
        Ok(())
    })?;
    Ok(out)
}

fn for_each_assignment(
    atoms: &[String],
    mut visit: impl FnMut(&PropAssignment) -> Result<()>,
) -> Result<()> {
    let mut odo = Odometer::new(atoms.len(), 3);
    let mut h = PropAssignment::new();
    while let Some(digits) = odo.next_digits() {
        for (a, d) in atoms.iter().zip(digits) {
            h.set(a.clone(), ThreeVal::ALL[*d]);
        }
        visit(&h)?;
        odo.advance();
    }
    Ok(())
}

/// Result of [`is_valid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// First falsifying assignment in enumeration order.
    Invalid(PropAssignment),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Validity in G3: truth at `t` under every assignment to the formula's
/// atoms. `n` keeps its fixed profile.
pub fn is_valid(f: &PropFormula) -> Validity {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let mut counter = None;
    for_each_assignment(&atoms, |h| {
        if counter.is_none() && !eval_world(World::T, f, h)? {
            counter = Some(h.clone());
        }
        Ok(())
    })
    .expect("every atom is assigned");
    match counter {
        None => Validity::Valid,
        Some(h) => Validity::Invalid(h),
    }
}
