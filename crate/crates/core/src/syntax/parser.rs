//! Recursive-descent parser for the ASCII formula grammar:
//!
//! ```text
//! formula := unit { "&&" unit }
//! unit    := "!" unit | { "K[" AGENT "]" } axiom | "(" formula ")"
//! axiom   := concept "<=" concept | NAME "(" NAME ")" | NAME "(" NAME "," NAME ")"
//! concept := cunit { "&" cunit }
//! cunit   := "Top" | NAME | "some" NAME "." cunit | "(" concept ")"
//! ```
//!
//! A K-prefix may also govern a parenthesized EL formula, `K[1] (A(a) && !B(a))`.
//! `(` is ambiguous between a concept and a formula group; the axiom reading
//! is tried first and the parser backtracks on failure.

use thiserror::Error;

use super::{AgentWord, Concept, ElAxiom, ElFormula, ElkFormula, RESERVED_PREFIX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("outside the supported fragment: {0}")]
    Fragment(String),
}

impl SyntaxError {
    fn with_line_offset(self, offset: usize) -> Self {
        match self {
            SyntaxError::Parse {
                line,
                column,
                message,
            } => SyntaxError::Parse {
                line: line + offset,
                column,
                message,
            },
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    AndAnd,
    Amp,
    Bang,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Le,
    Comma,
    Dot,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) | Tok::Number(s) => format!("'{s}'"),
        Tok::AndAnd => "'&&'".into(),
        Tok::Amp => "'&'".into(),
        Tok::Bang => "'!'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBracket => "'['".into(),
        Tok::RBracket => "']'".into(),
        Tok::LBrace => "'{'".into(),
        Tok::RBrace => "'}'".into(),
        Tok::Le => "'<='".into(),
        Tok::Comma => "','".into(),
        Tok::Dot => "'.'".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start_col = col;
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line,
                column: start_col,
            })
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let begin = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[begin..i].iter().collect();
            col += i - begin;
            let tok = if word.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                Tok::Number(word)
            } else {
                Tok::Ident(word)
            };
            push(&mut out, tok);
            continue;
        }
        let two = (c, chars.get(i + 1).copied());
        let (tok, width) = match two {
            ('&', Some('&')) => (Tok::AndAnd, 2),
            ('<', Some('=')) => (Tok::Le, 2),
            ('&', _) => (Tok::Amp, 1),
            ('!', _) => (Tok::Bang, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            (',', _) => (Tok::Comma, 1),
            ('.', _) => (Tok::Dot, 1),
            _ => {
                return Err(SyntaxError::Parse {
                    line,
                    column: col,
                    message: format!("unexpected character '{c}'"),
                })
            }
        };
        push(&mut out, tok);
        i += width;
        col += width;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Failure carrying the token index it was detected at, so that the
/// furthest-reaching alternative wins when backtracking.
#[derive(Debug)]
struct Failure {
    at: usize,
    error: SyntaxError,
}

type PResult<T> = Result<T, Failure>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, SyntaxError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[idx].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let t = &self.toks[self.pos];
        Err(Failure {
            at: self.pos,
            error: SyntaxError::Parse {
                line: t.line,
                column: t.column,
                message: message.into(),
            },
        })
    }

    fn fragment<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(Failure {
            at: self.pos,
            error: SyntaxError::Fragment(message.into()),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                describe(&tok),
                describe(self.peek())
            ))
        }
    }

    fn expect_end(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(format!("unexpected {}", describe(self.peek())))
        }
    }

    fn name(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                if matches!(s.as_str(), "Top" | "Bottom" | "some") {
                    return self.error(format!("keyword '{s}' cannot be used as a {what}"));
                }
                if s.starts_with(RESERVED_PREFIX) {
                    return self.error(format!(
                        "names starting with '{RESERVED_PREFIX}' are reserved"
                    ));
                }
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected a {what}, found {}", describe(&other))),
        }
    }

    /// Runs `first`; on failure rewinds and runs `second`. When both fail the
    /// error that got further into the input is reported.
    fn either<T>(
        &mut self,
        first: impl FnOnce(&mut Self) -> PResult<T>,
        second: impl FnOnce(&mut Self) -> PResult<T>,
    ) -> PResult<T> {
        let start = self.pos;
        match first(self) {
            Ok(v) => Ok(v),
            Err(e1) => {
                if matches!(e1.error, SyntaxError::Fragment(_)) {
                    return Err(e1);
                }
                self.pos = start;
                match second(self) {
                    Ok(v) => Ok(v),
                    Err(e2) => Err(if e2.at >= e1.at { e2 } else { e1 }),
                }
            }
        }
    }

    // ---- concepts ----

    fn concept(&mut self) -> PResult<Concept> {
        let mut c = self.concept_unit()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.concept_unit()?;
            c = Concept::conj(c, rhs);
        }
        Ok(c)
    }

    fn concept_unit(&mut self) -> PResult<Concept> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "Top" => {
                self.bump();
                Ok(Concept::Top)
            }
            Tok::Ident(s) if s == "Bottom" => {
                self.fragment("'Bottom' is not allowed in EL input")
            }
            Tok::Ident(s) if s == "some" => {
                self.bump();
                let role = self.name("role name")?;
                self.expect(Tok::Dot)?;
                let filler = self.concept_unit()?;
                Ok(Concept::exists(role, filler))
            }
            Tok::Ident(_) => Ok(Concept::Name(self.name("concept name")?)),
            Tok::LParen => {
                self.bump();
                let c = self.concept()?;
                self.expect(Tok::RParen)?;
                Ok(c)
            }
            Tok::LBrace => self.fragment("nominals are not allowed in EL input"),
            other => self.error(format!("expected a concept, found {}", describe(&other))),
        }
    }

    // ---- axioms ----

    fn axiom(&mut self) -> PResult<ElAxiom> {
        if matches!(self.peek(), Tok::Ident(s) if !matches!(s.as_str(), "Top" | "Bottom" | "some"))
            && *self.peek_at(1) == Tok::LParen
        {
            let pred = self.name("concept or role name")?;
            self.expect(Tok::LParen)?;
            let first = self.name("individual name")?;
            if *self.peek() == Tok::Comma {
                self.bump();
                let second = self.name("individual name")?;
                self.expect(Tok::RParen)?;
                return Ok(ElAxiom::role_assertion(pred, first, second));
            }
            self.expect(Tok::RParen)?;
            return Ok(ElAxiom::concept_assertion(pred, first));
        }
        let lhs = self.concept()?;
        self.expect(Tok::Le)?;
        let rhs = self.concept()?;
        Ok(ElAxiom::inclusion(lhs, rhs))
    }

    // ---- EL formulas (bodies under K) ----

    fn el_formula(&mut self) -> PResult<ElFormula> {
        let mut f = self.el_unit()?;
        while *self.peek() == Tok::AndAnd {
            self.bump();
            let rhs = self.el_unit()?;
            f = ElFormula::and(f, rhs);
        }
        Ok(f)
    }

    fn el_unit(&mut self) -> PResult<ElFormula> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(ElFormula::not(self.el_unit()?))
            }
            Tok::Ident(s) if s == "K" && *self.peek_at(1) == Tok::LBracket => self.fragment(
                "a K-operator may not occur inside an EL formula governed by K or negation",
            ),
            Tok::LParen => self.either(
                |p| p.axiom().map(ElFormula::Lit),
                |p| {
                    p.bump();
                    let f = p.el_formula()?;
                    p.expect(Tok::RParen)?;
                    Ok(f)
                },
            ),
            _ => self.axiom().map(ElFormula::Lit),
        }
    }

    // ---- ELK formulas ----

    fn formula(&mut self) -> PResult<ElkFormula> {
        let mut f = self.unit()?;
        while *self.peek() == Tok::AndAnd {
            self.bump();
            let rhs = self.unit()?;
            f = ElkFormula::and(f, rhs);
        }
        Ok(f)
    }

    fn k_prefix(&mut self) -> PResult<AgentWord> {
        let mut agents = Vec::new();
        while matches!(self.peek(), Tok::Ident(s) if s == "K") && *self.peek_at(1) == Tok::LBracket
        {
            self.bump();
            self.bump();
            let agent = match self.bump() {
                Tok::Ident(s) | Tok::Number(s) => s,
                other => {
                    self.pos -= 1;
                    return self.error(format!("expected an agent, found {}", describe(&other)));
                }
            };
            self.expect(Tok::RBracket)?;
            agents.push(agent);
        }
        Ok(AgentWord(agents))
    }

    fn unit(&mut self) -> PResult<ElkFormula> {
        if *self.peek() == Tok::Bang {
            self.bump();
            return Ok(ElkFormula::not(self.unit()?));
        }
        let prefix = self.k_prefix()?;
        if !prefix.is_empty() {
            let body = self.el_unit()?;
            return Ok(ElkFormula::known(prefix, body));
        }
        if *self.peek() == Tok::LParen {
            return self.either(
                |p| p.axiom().map(ElkFormula::axiom),
                |p| {
                    p.bump();
                    let f = p.formula()?;
                    p.expect(Tok::RParen)?;
                    Ok(f)
                },
            );
        }
        self.axiom().map(ElkFormula::axiom)
    }
}

fn run<T>(text: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> Result<T, SyntaxError> {
    let mut p = Parser::new(text)?;
    let v = f(&mut p).map_err(|e| e.error)?;
    p.expect_end().map_err(|e| e.error)?;
    Ok(v)
}

/// Parses one formula.
pub fn parse_formula(text: &str) -> Result<ElkFormula, SyntaxError> {
    run(text, Parser::formula)
}

pub fn parse_axiom(text: &str) -> Result<ElAxiom, SyntaxError> {
    run(text, Parser::axiom)
}

pub fn parse_concept(text: &str) -> Result<Concept, SyntaxError> {
    run(text, Parser::concept)
}

/// Parses a formula file: one conjunct per non-empty line, joined by an
/// implicit `&&`. `#` starts a comment.
pub fn parse_formula_file(text: &str) -> Result<ElkFormula, SyntaxError> {
    let mut parts = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if is_blank(line) {
            continue;
        }
        parts.push(parse_formula(line).map_err(|e| e.with_line_offset(idx))?);
    }
    ElkFormula::and_all(parts).ok_or_else(|| SyntaxError::Parse {
        line: 1,
        column: 1,
        message: "empty formula file".into(),
    })
}

/// Parses an ontology file: one EL axiom per non-empty line.
pub fn parse_ontology(text: &str) -> Result<Vec<ElAxiom>, SyntaxError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if is_blank(line) {
            continue;
        }
        out.push(parse_axiom(line).map_err(|e| e.with_line_offset(idx))?);
    }
    Ok(out)
}

fn is_blank(line: &str) -> bool {
    let content = line.split('#').next().unwrap_or("");
    content.trim().is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{ElLiteral, HasSignature};

    fn name(s: &str) -> Concept {
        Concept::name(s)
    }

    #[test]
    fn crepe_inclusion() {
        let f = parse_formula("Crepe <= some contains . Flour").unwrap();
        assert_eq!(
            f,
            ElkFormula::axiom(ElAxiom::inclusion(
                name("Crepe"),
                Concept::exists("contains", name("Flour"))
            ))
        );
    }

    #[test]
    fn nested_k_prefix() {
        let f = parse_formula("K[1] K[2] (A <= B)").unwrap();
        assert_eq!(
            f,
            ElkFormula::known(
                AgentWord::new(["1", "2"]),
                ElFormula::Lit(ElAxiom::inclusion(name("A"), name("B")))
            )
        );
    }

    #[test]
    fn incomplete_inclusion_is_a_parse_error() {
        let err = parse_formula("A <= ").unwrap_err();
        assert!(matches!(err, SyntaxError::Parse { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn reasoner_internal_constructors_are_rejected() {
        assert!(matches!(
            parse_formula("A <= Bottom"),
            Err(SyntaxError::Fragment(_))
        ));
        assert!(matches!(
            parse_formula("{a} <= A"),
            Err(SyntaxError::Fragment(_))
        ));
        assert!(parse_formula("__N1 <= A").is_err());
    }

    #[test]
    fn negation_between_k_operators_is_rejected() {
        assert!(matches!(
            parse_formula("!K[1] (!K[2] (A <= B))"),
            Err(SyntaxError::Fragment(_))
        ));
    }

    #[test]
    fn parenthesized_concept_versus_group() {
        let f = parse_formula("(A & B) <= C").unwrap();
        assert_eq!(
            f,
            ElkFormula::axiom(ElAxiom::inclusion(
                Concept::conj(name("A"), name("B")),
                name("C")
            ))
        );
        let g = parse_formula("(A <= B) && !(B <= C)").unwrap();
        assert_eq!(g.to_string(), "A <= B && !(B <= C)");
    }

    #[test]
    fn precedence_of_connectives() {
        let f = parse_formula("some r . A & B <= C").unwrap();
        assert_eq!(
            f,
            ElkFormula::axiom(ElAxiom::inclusion(
                Concept::conj(Concept::exists("r", name("A")), name("B")),
                name("C")
            ))
        );
        let g = parse_formula("!A(a) && B(a)").unwrap();
        assert!(matches!(g, ElkFormula::And(..)));
    }

    #[test]
    fn k_body_may_be_a_literal_conjunction() {
        let f = parse_formula("K[ana] (A(a) && !(A <= B))").unwrap();
        let ElkFormula::Ax { prefix, body } = f else {
            panic!("expected an axiom")
        };
        assert_eq!(prefix, AgentWord::new(["ana"]));
        assert_eq!(
            body.as_literals().unwrap(),
            vec![
                ElLiteral::new(ElAxiom::concept_assertion("A", "a"), true),
                ElLiteral::new(ElAxiom::inclusion(name("A"), name("B")), false),
            ]
        );
    }

    #[test]
    fn file_with_comments_and_lines() {
        let text = "# ontology\nA(a)\n\nK[1] (A <= B)  # known\n!K[2] B(a)\n";
        let f = parse_formula_file(text).unwrap();
        assert_eq!(f.to_string(), "A(a) && K[1] A <= B && !K[2] B(a)");
        let err = parse_formula_file("A(a)\nA <=\n").unwrap_err();
        assert!(matches!(err, SyntaxError::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn ontology_file() {
        let o = parse_ontology("BrazilianSinger(Caetano)\nBossaNova <= BrazilianMusicStyle\n")
            .unwrap();
        assert_eq!(o.len(), 2);
        assert!(o.signature().individuals.contains("Caetano"));
    }
}
