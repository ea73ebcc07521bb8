//! Propositional formulas and truth-table entailment.

use std::collections::BTreeSet;
use std::fmt;

use super::LearningError;

/// Largest number of variables a truth table may range over.
pub const MAX_PROP_VARS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropExpr {
    Var(String),
    Not(Box<PropExpr>),
    And(Box<PropExpr>, Box<PropExpr>),
    Or(Box<PropExpr>, Box<PropExpr>),
    Implies(Box<PropExpr>, Box<PropExpr>),
}

impl PropExpr {
    pub fn var(name: impl Into<String>) -> Self {
        PropExpr::Var(name.into())
    }

    pub fn not(inner: PropExpr) -> Self {
        PropExpr::Not(Box::new(inner))
    }

    pub fn and(l: PropExpr, r: PropExpr) -> Self {
        PropExpr::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: PropExpr, r: PropExpr) -> Self {
        PropExpr::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: PropExpr, r: PropExpr) -> Self {
        PropExpr::Implies(Box::new(l), Box::new(r))
    }

    /// Left-nested conjunction; `None` when empty.
    pub fn and_all<I: IntoIterator<Item = PropExpr>>(parts: I) -> Option<Self> {
        parts.into_iter().reduce(PropExpr::and)
    }

    pub fn size(&self) -> usize {
        match self {
            PropExpr::Var(_) => 1,
            PropExpr::Not(e) => 1 + e.size(),
            PropExpr::And(l, r) | PropExpr::Or(l, r) | PropExpr::Implies(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            PropExpr::Var(v) => {
                out.insert(v.clone());
            }
            PropExpr::Not(e) => e.vars(out),
            PropExpr::And(l, r) | PropExpr::Or(l, r) | PropExpr::Implies(l, r) => {
                l.vars(out);
                r.vars(out);
            }
        }
    }

    pub fn eval(&self, value: &impl Fn(&str) -> bool) -> bool {
        match self {
            PropExpr::Var(v) => value(v),
            PropExpr::Not(e) => !e.eval(value),
            PropExpr::And(l, r) => l.eval(value) && r.eval(value),
            PropExpr::Or(l, r) => l.eval(value) || r.eval(value),
            PropExpr::Implies(l, r) => !l.eval(value) || r.eval(value),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            PropExpr::Implies(..) => 0,
            PropExpr::Or(..) => 1,
            PropExpr::And(..) => 2,
            PropExpr::Not(_) | PropExpr::Var(_) => 3,
        }
    }
}

impl fmt::Display for PropExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |f: &mut fmt::Formatter<'_>, e: &PropExpr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            PropExpr::Var(v) => write!(f, "{v}"),
            PropExpr::Not(e) => {
                write!(f, "!")?;
                sub(f, e, 3)
            }
            PropExpr::And(l, r) => {
                sub(f, l, 2)?;
                write!(f, " & ")?;
                sub(f, r, 3)
            }
            PropExpr::Or(l, r) => {
                sub(f, l, 1)?;
                write!(f, " | ")?;
                sub(f, r, 2)
            }
            PropExpr::Implies(l, r) => {
                sub(f, l, 1)?;
                write!(f, " -> ")?;
                sub(f, r, 0)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '!' => {
                chars.next();
                out.push(Tok::Not);
            }
            '&' => {
                chars.next();
                out.push(Tok::And);
            }
            '|' => {
                chars.next();
                out.push(Tok::Or);
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some((_, '>')) => out.push(Tok::Arrow),
                    _ => return Err(format!("expected '->' at column {}", i + 1)),
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(name));
            }
            c => return Err(format!("unexpected character '{c}' at column {}", i + 1)),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<PropExpr, String> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            Ok(PropExpr::implies(lhs, self.implication()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<PropExpr, String> {
        let mut e = self.conjunction()?;
        while self.eat(&Tok::Or) {
            e = PropExpr::or(e, self.conjunction()?);
        }
        Ok(e)
    }

    fn conjunction(&mut self) -> Result<PropExpr, String> {
        let mut e = self.unary()?;
        while self.eat(&Tok::And) {
            e = PropExpr::and(e, self.unary()?);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<PropExpr, String> {
        if self.eat(&Tok::Not) {
            return Ok(PropExpr::not(self.unary()?));
        }
        if self.eat(&Tok::LParen) {
            let e = self.implication()?;
            if !self.eat(&Tok::RParen) {
                return Err("expected ')'".into());
            }
            return Ok(e);
        }
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(PropExpr::Var(name))
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

pub fn parse_prop(text: &str) -> Result<PropExpr, LearningError> {
    let toks = lex(text).map_err(LearningError::Input)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.implication().map_err(LearningError::Input)?;
    if p.pos != p.toks.len() {
        return Err(LearningError::Input(format!("trailing input in '{text}'")));
    }
    Ok(e)
}

/// One formula per non-empty line; `#` starts a comment.
pub fn parse_prop_theory(text: &str) -> Result<Vec<PropExpr>, LearningError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_prop)
        .collect()
}

/// Truth table over a fixed variable list, one bit per valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    words: Vec<u64>,
}

pub(crate) struct TruthTable {
    vars: Vec<String>,
    words: usize,
    tail_mask: u64,
}

impl TruthTable {
    pub fn new(vars: Vec<String>) -> Result<Self, LearningError> {
        if vars.len() > MAX_PROP_VARS {
            return Err(LearningError::Input(format!(
                "{} variables exceed the truth-table limit of {MAX_PROP_VARS}",
                vars.len()
            )));
        }
        let rows = 1usize << vars.len();
        let words = rows.div_ceil(64);
        let tail_mask = if rows >= 64 { u64::MAX } else { (1u64 << rows) - 1 };
        Ok(TruthTable {
            vars,
            words,
            tail_mask,
        })
    }

    pub fn ones(&self) -> Column {
        let mut words = vec![u64::MAX; self.words];
        *words.last_mut().unwrap() &= self.tail_mask;
        Column { words }
    }

    fn var_column(&self, idx: usize) -> Column {
        const PATTERNS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        let words = (0..self.words)
            .map(|w| {
                let word = if idx < 6 {
                    PATTERNS[idx]
                } else if (w >> (idx - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                };
                if w + 1 == self.words {
                    word & self.tail_mask
                } else {
                    word
                }
            })
            .collect();
        Column { words }
    }

    pub fn column(&self, e: &PropExpr) -> Column {
        match e {
            PropExpr::Var(v) => match self.vars.iter().position(|x| x == v) {
                Some(i) => self.var_column(i),
                None => panic!("variable {v} outside the truth table"),
            },
            PropExpr::Not(inner) => {
                let mut c = self.column(inner);
                for w in &mut c.words {
                    *w = !*w;
                }
                *c.words.last_mut().unwrap() &= self.tail_mask;
                c
            }
            PropExpr::And(l, r) => self.zip(l, r, |a, b| a & b),
            PropExpr::Or(l, r) => self.zip(l, r, |a, b| a | b),
            PropExpr::Implies(l, r) => self.zip(l, r, |a, b| !a | b),
        }
    }

    fn zip(&self, l: &PropExpr, r: &PropExpr, op: impl Fn(u64, u64) -> u64) -> Column {
        let mut a = self.column(l);
        let b = self.column(r);
        for (x, y) in a.words.iter_mut().zip(&b.words) {
            *x = op(*x, *y);
        }
        *a.words.last_mut().unwrap() &= self.tail_mask;
        a
    }

    pub fn meet(&self, acc: &mut Column, e: &PropExpr) {
        let c = self.column(e);
        for (x, y) in acc.words.iter_mut().zip(&c.words) {
            *x &= *y;
        }
    }

    /// Every valuation in `theory` satisfies `e`.
    pub fn implies(&self, theory: &Column, e: &PropExpr) -> bool {
        let c = self.column(e);
        theory.words.iter().zip(&c.words).all(|(t, x)| t & !x == 0)
    }
}
