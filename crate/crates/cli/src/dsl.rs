//! The fact language for networks.
//!
//! One fact per `.`; `#` starts a comment that runs to the end of the line.
//!
//! ```text
//! arg(a). arg(b).
//! att(a, b).            # also att(a, phi) and att(a, r(b,c))
//! wff(phi, "exists X (~R(X,X))").
//! inst(a, "p | ~p").
//! datt(z, [y1, y2]).  catt([y1, y2], z).
//! acc(x, "a & ~b | c").
//! psi "forall X (~R(X,X))".
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use attneg_core::{
    parse_pred, parse_prop, AdfNet, ArgumentId, AxiomaticFrame, ConjunctiveNet,
    DisjunctiveNet, Framework, HigherNetwork, PredFormula, PropFormula,
};

use crate::error::CliError;

/// An attack endpoint: a name, or the atom `r(x,y)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Endpoint {
    Name(String),
    R(String, String),
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Name(n) => f.write_str(n),
            Endpoint::R(x, y) => write!(f, "r({x},{y})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fact {
    Arg(String),
    Att(Endpoint, Endpoint),
    Wff(String, PredFormula),
    Inst(String, PropFormula),
    Datt(String, Vec<String>),
    Catt(Vec<String>, String),
    Acc(String, PropFormula),
    Psi(PredFormula),
}

fn list(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Arg(a) => write!(f, "arg({a})."),
            Fact::Att(x, y) => write!(f, "att({x}, {y})."),
            Fact::Wff(n, phi) => write!(f, "wff({n}, \"{phi}\")."),
            Fact::Inst(a, phi) => write!(f, "inst({a}, \"{phi}\")."),
            Fact::Datt(z, ys) => write!(f, "datt({z}, {}).", list(ys)),
            Fact::Catt(ys, z) => write!(f, "catt({}, {z}).", list(ys)),
            Fact::Acc(x, phi) => write!(f, "acc({x}, \"{phi}\")."),
            Fact::Psi(phi) => write!(f, "psi \"{phi}\"."),
        }
    }
}

/// What kind of network a document describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    /// Arguments and plain attacks, optionally with an instantiation.
    Plain,
    /// Wff units or attacks on/by `r(x,y)` atoms.
    Higher,
    Axiomatic,
    Disjunctive,
    Conjunctive,
    Adf,
}

impl Species {
    pub fn as_str(self) -> &'static str {
        match self {
            Species::Plain => "plain",
            Species::Higher => "higher",
            Species::Axiomatic => "axiomatic",
            Species::Disjunctive => "disjunctive",
            Species::Conjunctive => "conjunctive",
            Species::Adf => "adf",
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A parsed and checked document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    facts: Vec<Fact>,
    species: Species,
}

/// Canonical text, one fact per line.
pub fn serialize(doc: &InputDocument) -> String {
    doc.facts.iter().map(|f| format!("{f}\n")).collect()
}

impl InputDocument {
    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn species(&self) -> Species {
        self.species
    }

    fn args(&self) -> impl Iterator<Item = &String> {
        self.facts.iter().filter_map(|f| match f {
            Fact::Arg(a) => Some(a),
            _ => None,
        })
    }

    fn arg_ids(&self) -> Result<Vec<ArgumentId>, CliError> {
        Ok(self
            .args()
            .map(ArgumentId::new)
            .collect::<Result<Vec<_>, _>>()?)
    }

    fn plain_attacks(&self) -> Vec<(ArgumentId, ArgumentId)> {
        self.facts
            .iter()
            .filter_map(|f| match f {
                Fact::Att(Endpoint::Name(x), Endpoint::Name(y)) => {
                    Some((id(x), id(y)))
                }
                _ => None,
            })
            .collect()
    }

    pub fn framework(&self) -> Result<Framework, CliError> {
        Ok(Framework::new(self.arg_ids()?, self.plain_attacks())?)
    }

    pub fn substitution(&self) -> BTreeMap<ArgumentId, PropFormula> {
        self.facts
            .iter()
            .filter_map(|f| match f {
                Fact::Inst(a, phi) => Some((id(a), phi.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn higher_network(&self) -> Result<HigherNetwork, CliError> {
        let mut hn = HigherNetwork::new(self.arg_ids()?)?;
        for f in &self.facts {
            if let Fact::Wff(n, phi) = f {
                hn.add_wff(n, phi.clone())?;
            }
        }
        for f in &self.facts {
            if let Fact::Att(x, y) = f {
                hn.add_attack(&x.to_string(), &y.to_string())?;
            }
        }
        Ok(hn)
    }

    pub fn axiomatic_frame(&self) -> Result<AxiomaticFrame, CliError> {
        let psi = self
            .facts
            .iter()
            .find_map(|f| match f {
                Fact::Psi(p) => Some(p.clone()),
                _ => None,
            })
            .unwrap_or(PredFormula::Top);
        Ok(AxiomaticFrame::new(self.arg_ids()?, psi)?)
    }

    /// `datt` facts, with each plain attack `z -> y` read as `z ⊸ {y}`.
    pub fn disjunctive_net(&self) -> Result<DisjunctiveNet, CliError> {
        let mut atts: Vec<(ArgumentId, BTreeSet<ArgumentId>)> = self
            .plain_attacks()
            .into_iter()
            .map(|(x, y)| (x, [y].into()))
            .collect();
        for f in &self.facts {
            if let Fact::Datt(z, ys) = f {
                atts.push((id(z), ys.iter().map(|y| id(y)).collect()));
            }
        }
        Ok(DisjunctiveNet::new(self.arg_ids()?, atts)?)
    }

    /// `catt` facts, with each plain attack `y -> z` read as `{y} ⊸ z`.
    pub fn conjunctive_net(&self) -> Result<ConjunctiveNet, CliError> {
        let mut atts: Vec<(BTreeSet<ArgumentId>, ArgumentId)> = self
            .plain_attacks()
            .into_iter()
            .map(|(y, z)| ([y].into(), z))
            .collect();
        for f in &self.facts {
            if let Fact::Catt(ys, z) = f {
                atts.push((ys.iter().map(|y| id(y)).collect(), id(z)));
            }
        }
        Ok(ConjunctiveNet::new(self.arg_ids()?, atts)?)
    }

    /// `acc` facts. Arguments without one are always accepted; a plain
    /// framework becomes the net with `F(x) = ⋀ ¬y` over its attackers.
    pub fn adf_net(&self) -> Result<AdfNet, CliError> {
        let mut adf = AdfNet::new(self.arg_ids()?)?;
        if self.species == Species::Plain {
            let f = self.framework()?;
            for x in f.arguments() {
                let parents: Vec<ArgumentId> = f.attackers(x).cloned().collect();
                let all_out = vec![Some(false); parents.len()];
                adf.set_condition(x, parents, [all_out])?;
            }
        }
        for f in &self.facts {
            if let Fact::Acc(x, phi) = f {
                adf.set_dnf(&id(x), phi)?;
            }
        }
        Ok(adf)
    }
}

fn id(name: &str) -> ArgumentId {
    ArgumentId::new(name).expect("names are checked by the parser")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    Punct(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(_) => f.write_str("a string"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, CliError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    let err = |p: Pos, msg: String| CliError::Syntax {
        line: p.line,
        col: p.col,
        msg,
    };
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '(' | ')' | '[' | ']' | ',' | '.' => {
                bump(&mut chars);
                out.push((Tok::Punct(c), pos));
            }
            '"' => {
                bump(&mut chars);
                let mut s = String::new();
                loop {
                    match bump(&mut chars) {
                        None => return Err(err(pos, "unterminated string".into())),
                        Some('"') => break,
                        Some('\\') => match bump(&mut chars) {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            _ => return Err(err(pos, "bad escape in string".into())),
                        },
                        Some(c) => s.push(c),
                    }
                }
                out.push((Tok::Str(s), pos));
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_')
                {
                    s.push(bump(&mut chars).unwrap());
                }
                out.push((Tok::Ident(s), pos));
            }
            other => return Err(err(pos, format!("unexpected character {other:?}"))),
        }
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn fail<T>(&self, msg: String) -> Result<T, CliError> {
        let p = self.pos();
        Err(CliError::Syntax {
            line: p.line,
            col: p.col,
            msg,
        })
    }

    fn punct(&mut self, c: char) -> Result<(), CliError> {
        if *self.peek() == Tok::Punct(c) {
            self.next();
            Ok(())
        } else {
            self.fail(format!("expected `{c}`, found {}", self.peek()))
        }
    }

    fn ident(&mut self) -> Result<String, CliError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => self.fail(format!("expected a name, found {t}")),
        }
    }

    /// A formula string, parsed with `parse`. Errors point into the string.
    fn formula<F>(
        &mut self,
        parse: fn(&str) -> attneg_core::Result<F>,
    ) -> Result<F, CliError> {
        match self.peek().clone() {
            Tok::Str(s) => {
                let p = self.pos();
                self.next();
                parse(&s).map_err(|e| match e {
                    attneg_core::Error::Parse { col, msg } => CliError::Syntax {
                        line: p.line,
                        col: p.col + col,
                        msg: format!("in formula: {msg}"),
                    },
                    other => CliError::Syntax {
                        line: p.line,
                        col: p.col,
                        msg: other.to_string(),
                    },
                })
            }
            t => self.fail(format!("expected a quoted formula, found {t}")),
        }
    }

    fn names(&mut self) -> Result<Vec<String>, CliError> {
        self.punct('[')?;
        let mut out = Vec::new();
        if *self.peek() != Tok::Punct(']') {
            loop {
                out.push(self.ident()?);
                if *self.peek() == Tok::Punct(',') {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.punct(']')?;
        Ok(out)
    }

    fn endpoint(&mut self) -> Result<Endpoint, CliError> {
        let name = self.ident()?;
        if name == "r" && *self.peek() == Tok::Punct('(') {
            self.next();
            let x = self.ident()?;
            self.punct(',')?;
            let y = self.ident()?;
            self.punct(')')?;
            Ok(Endpoint::R(x, y))
        } else {
            Ok(Endpoint::Name(name))
        }
    }

    fn fact(&mut self) -> Result<Fact, CliError> {
        let head = self.ident()?;
        if head == "psi" {
            let f = self.formula(parse_pred)?;
            self.punct('.')?;
            return Ok(Fact::Psi(f));
        }
        self.punct('(')?;
        let fact = match head.as_str() {
            "arg" => Fact::Arg(self.ident()?),
            "att" => {
                let x = self.endpoint()?;
                self.punct(',')?;
                Fact::Att(x, self.endpoint()?)
            }
            "wff" | "inst" | "acc" => {
                let n = self.ident()?;
                self.punct(',')?;
                match head.as_str() {
                    "wff" => Fact::Wff(n, self.formula(parse_pred)?),
                    "inst" => Fact::Inst(n, self.formula(parse_prop)?),
                    _ => Fact::Acc(n, self.formula(parse_prop)?),
                }
            }
            "datt" => {
                let z = self.ident()?;
                self.punct(',')?;
                Fact::Datt(z, self.names()?)
            }
            "catt" => {
                let ys = self.names()?;
                self.punct(',')?;
                Fact::Catt(ys, self.ident()?)
            }
            _ => {
                self.i -= 2;
                return self.fail(format!("unknown fact `{head}`"));
            }
        };
        self.punct(')')?;
        self.punct('.')?;
        Ok(fact)
    }
}

/// Parses and checks a document.
pub fn parse(text: &str) -> Result<InputDocument, CliError> {
    let mut p = Parser {
        toks: lex(text)?,
        i: 0,
    };
    let mut facts = Vec::new();
    while *p.peek() != Tok::End {
        let pos = p.pos();
        facts.push((p.fact()?, pos));
    }
    let species = check(&facts)?;
    Ok(InputDocument {
        facts: facts.into_iter().map(|(f, _)| f).collect(),
        species,
    })
}

fn at(p: Pos, fact: &Fact, msg: String) -> CliError {
    CliError::Fact {
        line: p.line,
        col: p.col,
        fact: fact.to_string(),
        msg,
    }
}

fn check(facts: &[(Fact, Pos)]) -> Result<Species, CliError> {
    let mut args = BTreeSet::new();
    let mut wffs = BTreeSet::new();
    for (f, p) in facts {
        let fresh = |n: &String, args: &BTreeSet<String>, wffs: &BTreeSet<String>| {
            if args.contains(n) || wffs.contains(n) {
                Err(at(*p, f, format!("`{n}` is declared twice")))
            } else {
                Ok(())
            }
        };
        match f {
            Fact::Arg(a) => {
                fresh(a, &args, &wffs)?;
                ArgumentId::new(a.as_str()).map_err(|e| at(*p, f, e.to_string()))?;
                args.insert(a.clone());
            }
            Fact::Wff(n, _) => {
                fresh(n, &args, &wffs)?;
                wffs.insert(n.clone());
            }
            _ => {}
        }
    }
    let need = |n: &String, p: Pos, f: &Fact| {
        if args.contains(n) {
            Ok(())
        } else {
            Err(at(p, f, format!("`{n}` is not a declared argument")))
        }
    };
    let mut kinds: Vec<(Species, Pos, &Fact)> = Vec::new();
    let mut seen_acc = BTreeSet::new();
    let mut seen_inst = BTreeSet::new();
    for (f, p) in facts {
        let p = *p;
        match f {
            Fact::Arg(_) => {}
            Fact::Wff(_, phi) => {
                for c in phi.constants() {
                    need(&c, p, f)?;
                }
                kinds.push((Species::Higher, p, f));
            }
            Fact::Att(x, y) => {
                let mut higher = false;
                for e in [x, y] {
                    match e {
                        Endpoint::Name(n) if wffs.contains(n) => higher = true,
                        Endpoint::Name(n) => need(n, p, f)?,
                        Endpoint::R(a, b) => {
                            need(a, p, f)?;
                            need(b, p, f)?;
                            higher = true;
                        }
                    }
                }
                if higher {
                    kinds.push((Species::Higher, p, f));
                }
            }
            Fact::Inst(a, _) => {
                need(a, p, f)?;
                if !seen_inst.insert(a) {
                    return Err(at(p, f, format!("second instantiation of `{a}`")));
                }
                kinds.push((Species::Plain, p, f));
            }
            Fact::Datt(z, ys) | Fact::Catt(ys, z) => {
                need(z, p, f)?;
                if ys.is_empty() {
                    return Err(at(p, f, "attack group is empty".into()));
                }
                for y in ys {
                    need(y, p, f)?;
                }
                let s = if matches!(f, Fact::Datt(..)) {
                    Species::Disjunctive
                } else {
                    Species::Conjunctive
                };
                kinds.push((s, p, f));
            }
            Fact::Acc(x, phi) => {
                need(x, p, f)?;
                for a in phi.atoms() {
                    need(&a, p, f)?;
                }
                if !seen_acc.insert(x) {
                    return Err(at(p, f, format!("second acceptance condition for `{x}`")));
                }
                kinds.push((Species::Adf, p, f));
            }
            Fact::Psi(phi) => {
                if kinds.iter().any(|(s, ..)| *s == Species::Axiomatic) {
                    return Err(at(p, f, "only one psi clause is allowed".into()));
                }
                for c in phi.constants() {
                    need(&c, p, f)?;
                }
                kinds.push((Species::Axiomatic, p, f));
            }
        }
    }
    let mut species = Species::Plain;
    let mut first: Option<(Pos, &Fact)> = None;
    for (s, p, f) in kinds {
        match first {
            None => {
                species = s;
                first = Some((p, f));
            }
            Some((fp, ff)) if s != species => {
                return Err(at(
                    p,
                    f,
                    format!(
                        "mixes a {s} fact with the {species} fact `{ff}` at line {}",
                        fp.line
                    ),
                ))
            }
            _ => {}
        }
    }
    // Plain attacks fit every species except these two.
    if matches!(species, Species::Axiomatic | Species::Adf) {
        if let Some((f, p)) = facts
            .iter()
            .find(|(f, _)| matches!(f, Fact::Att(Endpoint::Name(_), Endpoint::Name(_))))
        {
            return Err(at(*p, f, format!("plain attacks cannot appear in a {species} network")));
        }
    }
    Ok(species)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycle() {
        let doc = parse("arg(a). arg(b). att(a,b). att(b,a).").unwrap();
        assert_eq!(doc.species(), Species::Plain);
        let f = doc.framework().unwrap();
        assert_eq!(f.to_string(), "({a,b}, {a->b,b->a})");
    }

    #[test]
    fn wff_network() {
        let doc = parse("arg(a).\nwff(phi, \"exists X (~R(X,X))\").\natt(a, phi).\n").unwrap();
        assert_eq!(doc.species(), Species::Higher);
        let hn = doc.higher_network().unwrap();
        assert_eq!(hn.wffs().len(), 1);
    }

    #[test]
    fn attack_on_r_atom() {
        let doc = parse("arg(a). arg(c). arg(d). att(a, r(c,d)).").unwrap();
        assert_eq!(doc.species(), Species::Higher);
        let hn = doc.higher_network().unwrap();
        assert!(hn.unit("r(c,d)").is_some());
        assert!(hn
            .hattacks()
            .contains(&("a".to_string(), "r(c,d)".to_string())));
    }

    #[test]
    fn comments_and_positions() {
        let err = parse("# nets\narg(a).\natt(a, b).\n").unwrap_err();
        match err {
            CliError::Fact { line, col, fact, .. } => {
                assert_eq!((line, col), (3, 1));
                assert_eq!(fact, "att(a, b).");
            }
            other => panic!("{other:?}"),
        }
        let err = parse("arg(a).\n  arg(a b).").unwrap_err();
        assert!(matches!(err, CliError::Syntax { line: 2, col: 9, .. }), "{err:?}");
    }

    #[test]
    fn formula_errors_point_into_the_string() {
        let err = parse("arg(a). inst(a, \"p &\").").unwrap_err();
        match err {
            CliError::Syntax { line, col, .. } => assert_eq!((line, col), (1, 21)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mixed_species_rejected() {
        let err = parse("arg(a). arg(b). datt(a, [b]).\ncatt([a], b).").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("catt([a], b)."), "{msg}");
        assert!(parse("arg(a). arg(b). att(a,b). psi \"true\".").is_err());
        assert!(parse("arg(a). arg(b). att(a,b). catt([a], b).").is_ok());
    }

    #[test]
    fn unknown_fact_named() {
        let err = parse("arg(a). foo(a).").unwrap_err();
        assert!(err.to_string().contains("unknown fact `foo`"));
    }

    #[test]
    fn serialize_is_canonical() {
        let doc = parse("arg(a).arg(b). att( a , r(a,b) ). datt(a,[b]). ").unwrap_err();
        assert!(matches!(doc, CliError::Fact { .. }));
        let doc = parse("arg(a).arg(b). att( a , r(a,b) ).").unwrap();
        assert_eq!(serialize(&doc), "arg(a).\narg(b).\natt(a, r(a,b)).\n");
        assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
    }

    #[test]
    fn adf_from_acc() {
        let doc = parse("arg(a). arg(b). arg(c). arg(x). acc(x, \"a & ~b | c\").").unwrap();
        assert_eq!(doc.species(), Species::Adf);
        let adf = doc.adf_net().unwrap();
        assert_eq!(adf.condition(&id("x")).unwrap().delta().len(), 2);
    }
}
