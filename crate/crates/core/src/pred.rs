//! Finite-domain predicate G3 with constant domain over the predicates
//! `In`, `R` and identity `=`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::g3::{Odometer, ThreeVal, World};

/// Finite ordered set of element names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Domain(Vec<String>);

impl Domain {
    pub fn new(elements: impl IntoIterator<Item = impl Into<String>>) -> Result<Self> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let mut seen = BTreeSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return Err(Error::DuplicateName(e.clone()));
            }
        }
        Ok(Domain(elements))
    }

    pub fn elements(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|e| e == name)
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    pub fn con(name: &str) -> Self {
        Term::Const(name.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PredFormula {
    In(Term),
    R(Term, Term),
    Eq(Term, Term),
    N,
    Top,
    Bot,
    Neg(Box<PredFormula>),
    And(Box<PredFormula>, Box<PredFormula>),
    Or(Box<PredFormula>, Box<PredFormula>),
    Imp(Box<PredFormula>, Box<PredFormula>),
    Forall(String, Box<PredFormula>),
    Exists(String, Box<PredFormula>),
}

impl PredFormula {
    /// `In(c)` for a constant.
    pub fn in_c(c: &str) -> Self {
        PredFormula::In(Term::con(c))
    }

    /// `R(x,y)` for constants.
    pub fn r_c(x: &str, y: &str) -> Self {
        PredFormula::R(Term::con(x), Term::con(y))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: PredFormula) -> Self {
        PredFormula::Neg(Box::new(a))
    }

    pub fn and(a: PredFormula, b: PredFormula) -> Self {
        PredFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PredFormula, b: PredFormula) -> Self {
        PredFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: PredFormula, b: PredFormula) -> Self {
        PredFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: PredFormula, b: PredFormula) -> Self {
        PredFormula::and(PredFormula::imp(a.clone(), b.clone()), PredFormula::imp(b, a))
    }

    pub fn forall(v: &str, body: PredFormula) -> Self {
        PredFormula::Forall(v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: PredFormula) -> Self {
        PredFormula::Exists(v.to_string(), Box::new(body))
    }

    /// Left-nested conjunction; `⊤` when empty.
    pub fn conj(items: impl IntoIterator<Item = PredFormula>) -> Self {
        items
            .into_iter()
            .reduce(PredFormula::and)
            .unwrap_or(PredFormula::Top)
    }

    /// Left-nested disjunction; `⊥` when empty.
    pub fn disj(items: impl IntoIterator<Item = PredFormula>) -> Self {
        items
            .into_iter()
            .reduce(PredFormula::or)
            .unwrap_or(PredFormula::Bot)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn term(t: &Term, bound: &[String], out: &mut BTreeSet<String>) {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        }
        fn go(f: &PredFormula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                PredFormula::In(t) => term(t, bound, out),
                PredFormula::R(a, b) | PredFormula::Eq(a, b) => {
                    term(a, bound, out);
                    term(b, bound, out);
                }
                PredFormula::N | PredFormula::Top | PredFormula::Bot => {}
                PredFormula::Neg(a) => go(a, bound, out),
                PredFormula::And(a, b) | PredFormula::Or(a, b) | PredFormula::Imp(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                PredFormula::Forall(v, a) | PredFormula::Exists(v, a) => {
                    bound.push(v.clone());
                    go(a, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            let mut add = |t: &Term| {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            };
            match f {
                PredFormula::In(t) => add(t),
                PredFormula::R(a, b) | PredFormula::Eq(a, b) => {
                    add(a);
                    add(b);
                }
                _ => {}
            }
        });
        out
    }

    pub fn mentions_in(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, PredFormula::In(_)));
        found
    }

    pub fn mentions_n(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, PredFormula::N));
        found
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut dyn FnMut(&PredFormula)) {
        f(self);
        match self {
            PredFormula::Neg(a) | PredFormula::Forall(_, a) | PredFormula::Exists(_, a) => {
                a.visit(f)
            }
            PredFormula::And(a, b) | PredFormula::Or(a, b) | PredFormula::Imp(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }
}

/// Truth profiles of `In` and `R` over a domain. Equality is identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PredInterp {
    domain: Domain,
    in_val: Vec<ThreeVal>,
    r_val: Vec<ThreeVal>,
    r_decided: bool,
}

impl PredInterp {
    /// Everything `FF`, `R` decided.
    pub fn empty(domain: Domain) -> Self {
        let n = domain.len();
        PredInterp {
            domain,
            in_val: vec![ThreeVal::FF; n],
            r_val: vec![ThreeVal::FF; n * n],
            r_decided: true,
        }
    }

    pub fn new(
        domain: Domain,
        in_val: &BTreeMap<String, ThreeVal>,
        r_val: &BTreeMap<(String, String), ThreeVal>,
        r_decided: bool,
    ) -> Result<Self> {
        let mut m = PredInterp::empty(domain);
        m.r_decided = r_decided;
        for (e, v) in in_val {
            let i = m.domain.require(e)?;
            m.in_val[i] = *v;
        }
        for ((x, y), v) in r_val {
            let (i, j) = (m.domain.require(x)?, m.domain.require(y)?);
            if r_decided && !v.is_decided() {
                return Err(Error::UndecidedPair(x.clone(), y.clone()));
            }
            m.r_val[i * m.domain.len() + j] = *v;
        }
        Ok(m)
    }

    /// Decided interpretation of `R` from a relation, `In` all `FF`.
    pub fn with_relation(domain: Domain, rel: &BTreeSet<(String, String)>) -> Result<Self> {
        let r = rel
            .iter()
            .map(|p| (p.clone(), ThreeVal::TT))
            .collect::<BTreeMap<_, _>>();
        PredInterp::new(domain, &BTreeMap::new(), &r, true)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn r_decided(&self) -> bool {
        self.r_decided
    }

    pub fn in_of(&self, e: &str) -> Option<ThreeVal> {
        self.domain.index_of(e).map(|i| self.in_val[i])
    }

    pub fn r_of(&self, x: &str, y: &str) -> Option<ThreeVal> {
        let n = self.domain.len();
        Some(self.r_val[self.domain.index_of(x)? * n + self.domain.index_of(y)?])
    }

    pub fn set_in(&mut self, e: &str, v: ThreeVal) -> Result<()> {
        let i = self.domain.require(e)?;
        self.in_val[i] = v;
        Ok(())
    }

    pub fn set_r(&mut self, x: &str, y: &str, v: ThreeVal) -> Result<()> {
        if self.r_decided && !v.is_decided() {
            return Err(Error::UndecidedPair(x.to_string(), y.to_string()));
        }
        let n = self.domain.len();
        let k = self.domain.require(x)? * n + self.domain.require(y)?;
        self.r_val[k] = v;
        Ok(())
    }

    /// `In` profiles in domain order.
    pub fn in_values(&self) -> impl Iterator<Item = (&str, ThreeVal)> {
        self.domain.0.iter().map(String::as_str).zip(self.in_val.iter().copied())
    }

    /// `R` profiles, row-major in domain order.
    pub fn r_values(&self) -> impl Iterator<Item = ((&str, &str), ThreeVal)> {
        let d = &self.domain.0;
        let n = d.len();
        self.r_val
            .iter()
            .enumerate()
            .map(move |(k, v)| ((d[k / n].as_str(), d[k % n].as_str()), *v))
    }

    /// Pairs whose `R` profile is `TT`.
    pub fn relation(&self) -> BTreeSet<(String, String)> {
        self.r_values()
            .filter(|(_, v)| *v == ThreeVal::TT)
            .map(|((x, y), _)| (x.to_string(), y.to_string()))
            .collect()
    }
}

/// Variable assignment `v`.
pub type Valuation = BTreeMap<String, String>;

#[derive(Debug, Clone, Copy)]
pub(crate) enum CTerm {
    /// Index into the environment stack.
    Var(usize),
    Elem(usize),
}

/// A formula with names resolved to indices.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    In(CTerm),
    R(CTerm, CTerm),
    Eq(CTerm, CTerm),
    N,
    Const(bool),
    Neg(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Imp(Box<Compiled>, Box<Compiled>),
    Forall(Box<Compiled>),
    Exists(Box<Compiled>),
}

pub(crate) fn compile(f: &PredFormula, domain: &Domain, outer: &[String]) -> Result<Compiled> {
    fn term(t: &Term, domain: &Domain, scope: &[String]) -> Result<CTerm> {
        match t {
            Term::Var(v) => scope
                .iter()
                .rposition(|s| s == v)
                .map(CTerm::Var)
                .ok_or_else(|| Error::UnboundVariable(v.clone())),
            Term::Const(c) => domain.require(c).map(CTerm::Elem),
        }
    }
    fn go(f: &PredFormula, domain: &Domain, scope: &mut Vec<String>) -> Result<Compiled> {
        let bin = |a: &PredFormula, b: &PredFormula, scope: &mut Vec<String>| -> Result<_> {
            Ok((Box::new(go(a, domain, scope)?), Box::new(go(b, domain, scope)?)))
        };
        Ok(match f {
            PredFormula::In(t) => Compiled::In(term(t, domain, scope)?),
            PredFormula::R(a, b) => Compiled::R(term(a, domain, scope)?, term(b, domain, scope)?),
            PredFormula::Eq(a, b) => Compiled::Eq(term(a, domain, scope)?, term(b, domain, scope)?),
            PredFormula::N => Compiled::N,
            PredFormula::Top => Compiled::Const(true),
            PredFormula::Bot => Compiled::Const(false),
            PredFormula::Neg(a) => Compiled::Neg(Box::new(go(a, domain, scope)?)),
            PredFormula::And(a, b) => {
                let (a, b) = bin(a, b, scope)?;
                Compiled::And(a, b)
            }
            PredFormula::Or(a, b) => {
                let (a, b) = bin(a, b, scope)?;
                Compiled::Or(a, b)
            }
            PredFormula::Imp(a, b) => {
                let (a, b) = bin(a, b, scope)?;
                Compiled::Imp(a, b)
            }
            PredFormula::Forall(v, a) | PredFormula::Exists(v, a) => {
                scope.push(v.clone());
                let body = go(a, domain, scope);
                scope.pop();
                let body = Box::new(body?);
                if matches!(f, PredFormula::Forall(..)) {
                    Compiled::Forall(body)
                } else {
                    Compiled::Exists(body)
                }
            }
        })
    }
    let mut scope = outer.to_vec();
    go(f, domain, &mut scope)
}

/// Raw profile tables an evaluation reads from.
#[derive(Clone, Copy)]
pub(crate) struct Tables<'a> {
    pub n: usize,
    pub in_val: &'a [ThreeVal],
    pub r_val: &'a [ThreeVal],
}

impl<'a> From<&'a PredInterp> for Tables<'a> {
    fn from(m: &'a PredInterp) -> Self {
        Tables {
            n: m.domain.len(),
            in_val: &m.in_val,
            r_val: &m.r_val,
        }
    }
}

impl Compiled {
    pub(crate) fn eval(&self, w: World, m: Tables<'_>, env: &mut Vec<usize>) -> bool {
        let el = |t: &CTerm, env: &Vec<usize>| match *t {
            CTerm::Var(i) => env[i],
            CTerm::Elem(e) => e,
        };
        match self {
            Compiled::In(t) => m.in_val[el(t, env)].at(w),
            Compiled::R(a, b) => m.r_val[el(a, env) * m.n + el(b, env)].at(w),
            Compiled::Eq(a, b) => el(a, env) == el(b, env),
            Compiled::N => w == World::S,
            Compiled::Const(b) => *b,
            Compiled::And(a, b) => a.eval(w, m, env) && b.eval(w, m, env),
            Compiled::Or(a, b) => a.eval(w, m, env) || b.eval(w, m, env),
            Compiled::Neg(a) => w.successors().iter().all(|&v| !a.eval(v, m, env)),
            Compiled::Imp(a, b) => w
                .successors()
                .iter()
                .all(|&v| !a.eval(v, m, env) || b.eval(v, m, env)),
            Compiled::Forall(a) => w.successors().iter().all(|&v| {
                (0..m.n).all(|d| {
                    env.push(d);
                    let ok = a.eval(v, m, env);
                    env.pop();
                    ok
                })
            }),
            Compiled::Exists(a) => (0..m.n).any(|d| {
                env.push(d);
                let ok = a.eval(w, m, env);
                env.pop();
                ok
            }),
        }
    }

    /// Truth at `t` of a closed formula.
    pub(crate) fn holds(&self, m: Tables<'_>) -> bool {
        self.eval(World::T, m, &mut Vec::new())
    }
}

/// `w ⊨_v f` in `m`.
pub fn eval_pred(w: World, f: &PredFormula, m: &PredInterp, v: &Valuation) -> Result<bool> {
    let names: Vec<String> = v.keys().cloned().collect();
    let mut env = Vec::with_capacity(names.len() + 4);
    for e in v.values() {
        env.push(m.domain.require(e)?);
    }
    let c = compile(f, &m.domain, &names)?;
    Ok(c.eval(w, m.into(), &mut env))
}

/// Profile of a closed formula.
pub fn pred_value(f: &PredFormula, m: &PredInterp) -> Result<ThreeVal> {
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::OpenFormula(v));
    }
    let c = compile(f, &m.domain, &[])?;
    let mut env = Vec::new();
    let t = c.eval(World::T, m.into(), &mut env);
    let s = c.eval(World::S, m.into(), &mut env);
    Ok(ThreeVal::from_worlds(t, s).expect("persistence: t ⊨ A implies s ⊨ A"))
}

/// How `R` ranges in [`enumerate_interps`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InterpOptions {
    pub r_decided: bool,
    /// Pins `R` to this relation (decided).
    pub fixed_r: Option<BTreeSet<(String, String)>>,
}

/// All interpretations over `d` satisfying every theory member at `t`.
///
/// Relations vary slowest (row-major pairs, `FF < FT < TT`), then `In` in
/// domain order. Members without `In` are tested once per relation.
pub fn enumerate_interps(
    d: &Domain,
    theory: &[PredFormula],
    opts: &InterpOptions,
) -> Result<Vec<PredInterp>> {
    let mut out = Vec::new();
    for_each_interp(d, theory, opts, |m| {
        out.push(m.clone());
        true
    })?;
    Ok(out)
}

/// Streaming form of [`enumerate_interps`]; stop by returning false.
pub fn for_each_interp(
    d: &Domain,
    theory: &[PredFormula],
    opts: &InterpOptions,
    mut visit: impl FnMut(&PredInterp) -> bool,
) -> Result<()> {
    for f in theory {
        if let Some(v) = f.free_vars().into_iter().next() {
            return Err(Error::OpenFormula(v));
        }
    }
    let (r_only, with_in): (Vec<_>, Vec<_>) = theory.iter().partition(|f| !f.mentions_in());
    let r_only = r_only
        .into_iter()
        .map(|f| compile(f, d, &[]))
        .collect::<Result<Vec<_>>>()?;
    let with_in = with_in
        .into_iter()
        .map(|f| compile(f, d, &[]))
        .collect::<Result<Vec<_>>>()?;

    let n = d.len();
    let mut m = PredInterp::empty(d.clone());
    m.r_decided = opts.r_decided || opts.fixed_r.is_some();
    let r_choices: &[ThreeVal] = if m.r_decided {
        &ThreeVal::DECIDED
    } else {
        &ThreeVal::ALL
    };
    let mut r_odo = match &opts.fixed_r {
        Some(rel) => {
            for (x, y) in rel {
                m.set_r(x, y, ThreeVal::TT)?;
            }
            Odometer::new(0, 1)
        }
        None => Odometer::new(n * n, r_choices.len()),
    };
    while let Some(rd) = r_odo.next_digits() {
        if opts.fixed_r.is_none() {
            for (k, &digit) in rd.iter().enumerate() {
                m.r_val[k] = r_choices[digit];
            }
        }
        if r_only.iter().all(|c| c.holds((&m).into())) {
            let mut in_odo = Odometer::new(n, 3);
            while let Some(id) = in_odo.next_digits() {
                for (k, &digit) in id.iter().enumerate() {
                    m.in_val[k] = ThreeVal::ALL[digit];
                }
                if with_in.iter().all(|c| c.holds((&m).into())) && !visit(&m) {
                    return Ok(());
                }
                in_odo.advance();
            }
        }
        r_odo.advance();
    }
    Ok(())
}

fn x() -> Term {
    Term::var("X")
}

/// `W(a) = ∀x(x≠a → aRx)`: `a` attacks everything else.
pub fn attacks_all(a: &str) -> PredFormula {
    PredFormula::forall(
        "X",
        PredFormula::imp(
            PredFormula::neg(PredFormula::Eq(x(), Term::con(a))),
            PredFormula::R(Term::con(a), x()),
        ),
    )
}

/// `∀x(x≠a → xRa)`: everything else attacks `a`.
pub fn attacked_by_all(a: &str) -> PredFormula {
    PredFormula::forall(
        "X",
        PredFormula::imp(
            PredFormula::neg(PredFormula::Eq(x(), Term::con(a))),
            PredFormula::R(x(), Term::con(a)),
        ),
    )
}

/// `J(a,b) = ∀x(aRx ↔ bRx)`.
pub fn same_targets(a: &str, b: &str) -> PredFormula {
    PredFormula::forall(
        "X",
        PredFormula::iff(
            PredFormula::R(Term::con(a), x()),
            PredFormula::R(Term::con(b), x()),
        ),
    )
}

/// `J(a) = ∀x(aRx ↔ xRx)`: `a` attacks exactly the self-attackers.
pub fn j_self(a: &str) -> PredFormula {
    PredFormula::forall(
        "X",
        PredFormula::iff(PredFormula::R(Term::con(a), x()), PredFormula::R(x(), x())),
    )
}

/// `∀x∀y(xRy ∨ ¬xRy)`.
pub fn r_decidedness() -> PredFormula {
    let (a, b) = (Term::var("X"), Term::var("Y"));
    PredFormula::forall(
        "X",
        PredFormula::forall(
            "Y",
            PredFormula::or(
                PredFormula::R(a.clone(), b.clone()),
                PredFormula::neg(PredFormula::R(a, b)),
            ),
        ),
    )
}
