//! Text syntax for formulas.
//!
//! Connectives, tightest first: `~`, `&`, `|`, `->` (right associative),
//! `<->` (expanded to two implications). `&` and `|` associate to the left.
//! `#n` is the constant n; `true` and `false` are ⊤ and ⊥.
//!
//! Predicate formulas add `In(t)`, `R(t,t)`, `t = t`, `t != t`,
//! `forall X (...)` and `exists X (...)`. Terms starting with an uppercase
//! letter are variables, all others are constants.

use std::fmt;

use crate::error::{Error, Result};
use crate::pred::{PredFormula, Term};
use crate::prop::PropFormula;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    N,
    LParen,
    RParen,
    Comma,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Eq,
    Neq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s:?}"),
            Tok::N => f.write_str("'#n'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Not => f.write_str("'~'"),
            Tok::And => f.write_str("'&'"),
            Tok::Or => f.write_str("'|'"),
            Tok::Imp => f.write_str("'->'"),
            Tok::Iff => f.write_str("'<->'"),
            Tok::Eq => f.write_str("'='"),
            Tok::Neq => f.write_str("'!='"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

/// Tokens with 1-based character columns.
fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else if rest.starts_with("!=") {
            (Tok::Neq, 2)
        } else if rest.starts_with("#n") {
            (Tok::N, 2)
        } else {
            match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                ',' => (Tok::Comma, 1),
                '~' => (Tok::Not, 1),
                '&' => (Tok::And, 1),
                '|' => (Tok::Or, 1),
                '=' => (Tok::Eq, 1),
                c if c.is_ascii_alphanumeric() || c == '_' => {
                    let end = chars[i..]
                        .iter()
                        .position(|c| !(c.is_ascii_alphanumeric() || *c == '_'))
                        .map_or(chars.len(), |k| i + k);
                    (Tok::Ident(chars[i..end].iter().collect()), end - i)
                }
                c => {
                    return Err(Error::Parse {
                        col,
                        msg: format!("unexpected character {c:?}"),
                    })
                }
            }
        };
        if tok == Tok::N && chars.get(i + 2).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            return Err(Error::Parse {
                col,
                msg: "'#' must be followed by 'n'".into(),
            });
        }
        out.push((tok, col));
        i += len;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

const KEYWORDS: [&str; 4] = ["true", "false", "forall", "exists"];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    pred: bool,
}

/// AST shared by both grammars during parsing.
enum Node {
    Atom(String),
    In(Term),
    R(Term, Term),
    Eq(Term, Term),
    N,
    Top,
    Bot,
    Neg(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Imp(Box<Node>, Box<Node>),
    Forall(String, Box<Node>),
    Exists(String, Box<Node>),
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            col: self.col(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected {t}, found {}", self.peek()))
        }
    }

    fn formula(&mut self) -> Result<Node> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.formula()?;
            return Ok(iff_node(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Node> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Node::Imp(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Node> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Node::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Node::And(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Node::Neg(Box::new(self.unary()?)))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::N => {
                self.bump();
                Ok(Node::N)
            }
            Tok::Ident(id) => match id.as_str() {
                "true" => {
                    self.bump();
                    Ok(Node::Top)
                }
                "false" => {
                    self.bump();
                    Ok(Node::Bot)
                }
                "forall" | "exists" if self.pred => self.quantifier(id == "forall"),
                _ if self.pred => self.pred_atom(),
                _ if KEYWORDS.contains(&id.as_str()) => {
                    self.fail(format!("{id:?} is reserved"))
                }
                _ => {
                    self.bump();
                    Ok(Node::Atom(id))
                }
            },
            t => self.fail(format!("expected a formula, found {t}")),
        }
    }

    fn quantifier(&mut self, universal: bool) -> Result<Node> {
        self.bump();
        let mut vars = Vec::new();
        while let Tok::Ident(v) = self.peek().clone() {
            if !is_variable(&v) {
                return self.fail(format!("quantified variable {v:?} must start uppercase"));
            }
            self.bump();
            vars.push(v);
        }
        if vars.is_empty() {
            return self.fail("expected a variable after the quantifier");
        }
        let mut body = self.unary()?;
        for v in vars.into_iter().rev() {
            body = if universal {
                Node::Forall(v, Box::new(body))
            } else {
                Node::Exists(v, Box::new(body))
            };
        }
        Ok(body)
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Ident(id) if !KEYWORDS.contains(&id.as_str()) => {
                self.bump();
                Ok(if is_variable(&id) {
                    Term::Var(id)
                } else {
                    Term::Const(id)
                })
            }
            t => self.fail(format!("expected a term, found {t}")),
        }
    }

    fn pred_atom(&mut self) -> Result<Node> {
        let Tok::Ident(id) = self.peek().clone() else {
            unreachable!()
        };
        let next = &self.toks[self.pos + 1].0;
        if (id == "In" || id == "R") && *next == Tok::LParen {
            self.bump();
            self.bump();
            let a = self.term()?;
            let node = if id == "In" {
                Node::In(a)
            } else {
                self.expect(Tok::Comma)?;
                Node::R(a, self.term()?)
            };
            self.expect(Tok::RParen)?;
            return Ok(node);
        }
        let a = self.term()?;
        match self.peek() {
            Tok::Eq => {
                self.bump();
                Ok(Node::Eq(a, self.term()?))
            }
            Tok::Neq => {
                self.bump();
                Ok(Node::Neg(Box::new(Node::Eq(a, self.term()?))))
            }
            _ => {
                self.fail(format!(
                    "expected '=' or '!=' after term {}, found {}",
                    term_text(&a),
                    self.peek()
                ))
            }
        }
    }
}

fn iff_node(a: Node, b: Node) -> Node {
    // Rebuilt from the converted form to duplicate without Clone on Node.
    fn dup(n: &Node) -> Node {
        match n {
            Node::Atom(a) => Node::Atom(a.clone()),
            Node::In(t) => Node::In(t.clone()),
            Node::R(a, b) => Node::R(a.clone(), b.clone()),
            Node::Eq(a, b) => Node::Eq(a.clone(), b.clone()),
            Node::N => Node::N,
            Node::Top => Node::Top,
            Node::Bot => Node::Bot,
            Node::Neg(a) => Node::Neg(Box::new(dup(a))),
            Node::And(a, b) => Node::And(Box::new(dup(a)), Box::new(dup(b))),
            Node::Or(a, b) => Node::Or(Box::new(dup(a)), Box::new(dup(b))),
            Node::Imp(a, b) => Node::Imp(Box::new(dup(a)), Box::new(dup(b))),
            Node::Forall(v, a) => Node::Forall(v.clone(), Box::new(dup(a))),
            Node::Exists(v, a) => Node::Exists(v.clone(), Box::new(dup(a))),
        }
    }
    let ab = Node::Imp(Box::new(dup(&a)), Box::new(dup(&b)));
    Node::And(Box::new(ab), Box::new(Node::Imp(Box::new(b), Box::new(a))))
}

fn is_variable(id: &str) -> bool {
    id.starts_with(|c: char| c.is_ascii_uppercase())
}

fn parse_node(src: &str, pred: bool) -> Result<Node> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        pred,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.fail(format!("unexpected {} after formula", p.peek()));
    }
    Ok(f)
}

pub fn parse_prop(src: &str) -> Result<PropFormula> {
    fn conv(n: Node) -> PropFormula {
        match n {
            Node::Atom(a) => PropFormula::Atom(a),
            Node::N => PropFormula::N,
            Node::Top => PropFormula::Top,
            Node::Bot => PropFormula::Bot,
            Node::Neg(a) => PropFormula::neg(conv(*a)),
            Node::And(a, b) => PropFormula::and(conv(*a), conv(*b)),
            Node::Or(a, b) => PropFormula::or(conv(*a), conv(*b)),
            Node::Imp(a, b) => PropFormula::imp(conv(*a), conv(*b)),
            _ => unreachable!("predicate syntax is rejected in propositional mode"),
        }
    }
    parse_node(src, false).map(conv)
}

pub fn parse_pred(src: &str) -> Result<PredFormula> {
    fn conv(n: Node) -> PredFormula {
        match n {
            Node::Atom(_) => unreachable!("bare atoms are rejected in predicate mode"),
            Node::In(t) => PredFormula::In(t),
            Node::R(a, b) => PredFormula::R(a, b),
            Node::Eq(a, b) => PredFormula::Eq(a, b),
            Node::N => PredFormula::N,
            Node::Top => PredFormula::Top,
            Node::Bot => PredFormula::Bot,
            Node::Neg(a) => PredFormula::neg(conv(*a)),
            Node::And(a, b) => PredFormula::and(conv(*a), conv(*b)),
            Node::Or(a, b) => PredFormula::or(conv(*a), conv(*b)),
            Node::Imp(a, b) => PredFormula::imp(conv(*a), conv(*b)),
            Node::Forall(v, a) => PredFormula::Forall(v, Box::new(conv(*a))),
            Node::Exists(v, a) => PredFormula::Exists(v, Box::new(conv(*a))),
        }
    }
    parse_node(src, true).map(conv)
}

// Printing. Binding strength: 1 `->`, 2 `|`, 3 `&`, 4 everything else.

fn prop_rank(f: &PropFormula) -> u8 {
    match f {
        PropFormula::Imp(..) => 1,
        PropFormula::Or(..) => 2,
        PropFormula::And(..) => 3,
        _ => 4,
    }
}

fn pred_rank(f: &PredFormula) -> u8 {
    match f {
        PredFormula::Imp(..) => 1,
        PredFormula::Or(..) => 2,
        PredFormula::And(..) => 3,
        _ => 4,
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, paren: bool, inner: &dyn fmt::Display) -> fmt::Result {
    if paren {
        write!(f, "({inner})")
    } else {
        write!(f, "{inner}")
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &PropFormula, op: &str, b: &PropFormula, r: u8| {
            // Left-associative operators need the right operand wrapped at equal rank;
            // `->` is right-associative, so the left one instead.
            let (lp, rp) = if r == 1 {
                (prop_rank(a) <= r, prop_rank(b) < r)
            } else {
                (prop_rank(a) < r, prop_rank(b) <= r)
            };
            wrap(f, lp, a)?;
            write!(f, " {op} ")?;
            wrap(f, rp, b)
        };
        match self {
            PropFormula::Atom(a) => f.write_str(a),
            PropFormula::N => f.write_str("#n"),
            PropFormula::Top => f.write_str("true"),
            PropFormula::Bot => f.write_str("false"),
            PropFormula::Neg(a) => {
                f.write_str("~")?;
                wrap(f, prop_rank(a) < 4, a)
            }
            PropFormula::And(a, b) => bin(f, a, "&", b, 3),
            PropFormula::Or(a, b) => bin(f, a, "|", b, 2),
            PropFormula::Imp(a, b) => bin(f, a, "->", b, 1),
        }
    }
}

fn term_text(t: &Term) -> &str {
    match t {
        Term::Var(s) | Term::Const(s) => s,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(term_text(self))
    }
}

impl fmt::Display for PredFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &PredFormula, op: &str, b: &PredFormula, r: u8| {
            let (lp, rp) = if r == 1 {
                (pred_rank(a) <= r, pred_rank(b) < r)
            } else {
                (pred_rank(a) < r, pred_rank(b) <= r)
            };
            wrap(f, lp, a)?;
            write!(f, " {op} ")?;
            wrap(f, rp, b)
        };
        match self {
            PredFormula::In(t) => write!(f, "In({t})"),
            PredFormula::R(a, b) => write!(f, "R({a},{b})"),
            PredFormula::Eq(a, b) => write!(f, "{a} = {b}"),
            PredFormula::N => f.write_str("#n"),
            PredFormula::Top => f.write_str("true"),
            PredFormula::Bot => f.write_str("false"),
            PredFormula::Neg(a) => match &**a {
                PredFormula::Eq(x, y) => write!(f, "{x} != {y}"),
                a => {
                    f.write_str("~")?;
                    wrap(f, pred_rank(a) < 4, a)
                }
            },
            PredFormula::And(a, b) => bin(f, a, "&", b, 3),
            PredFormula::Or(a, b) => bin(f, a, "|", b, 2),
            PredFormula::Imp(a, b) => bin(f, a, "->", b, 1),
            PredFormula::Forall(v, a) => write!(f, "forall {v} ({a})"),
            PredFormula::Exists(v, a) => write!(f, "exists {v} ({a})"),
        }
    }
}
