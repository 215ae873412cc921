//! The sentential language: formula ASTs, the text grammar, and the
//! qubit-count and disjunction-expansion functions.
//!
//! Grammar: atoms are `[a-z][a-z0-9_]*`; keywords `not`, `snot`, `and`,
//! `or`; parentheses group. Prefix operators bind tightest, `and` binds
//! tighter than `or`, both binaries associate to the left.

use std::collections::BTreeSet;
use std::fmt;

/// Formula of the language: atoms, negation, square root of negation,
/// conjunction, and the derived disjunction.
///
/// Disjunction is kept as a surface node so reports can echo the user's
/// formula; evaluation first rewrites it via [`Formula::expand_disjunction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Atom(String),
    Neg(Box<Formula>),
    SqrtNeg(Box<Formula>),
    Conj(Box<Formula>, Box<Formula>),
    Disj(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }

    // Constructor named for the connective, not arithmetic negation.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(sub: Formula) -> Self {
        Formula::Neg(Box::new(sub))
    }

    pub fn sqrt_neg(sub: Formula) -> Self {
        Formula::SqrtNeg(Box::new(sub))
    }

    pub fn conj(left: Formula, right: Formula) -> Self {
        Formula::Conj(Box::new(left), Box::new(right))
    }

    pub fn disj(left: Formula, right: Formula) -> Self {
        Formula::Disj(Box::new(left), Box::new(right))
    }

    /// Width of the formula's meaning: 1 per atom occurrence plus 1 per
    /// binary connective (each conjunction adds a target qubit).
    pub fn qubit_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(sub) | Formula::SqrtNeg(sub) => sub.qubit_count(),
            Formula::Conj(l, r) | Formula::Disj(l, r) => l.qubit_count() + r.qubit_count() + 1,
        }
    }

    /// Rewrites every disjunction, bottom-up, to ¬(¬α ∧ ¬β). The result
    /// has the same qubit count and no Disj node.
    pub fn expand_disjunction(&self) -> Formula {
        match self {
            Formula::Atom(_) => self.clone(),
            Formula::Neg(sub) => Formula::neg(sub.expand_disjunction()),
            Formula::SqrtNeg(sub) => Formula::sqrt_neg(sub.expand_disjunction()),
            Formula::Conj(l, r) => {
                Formula::conj(l.expand_disjunction(), r.expand_disjunction())
            }
            Formula::Disj(l, r) => Formula::neg(Formula::conj(
                Formula::neg(l.expand_disjunction()),
                Formula::neg(r.expand_disjunction()),
            )),
        }
    }

    /// Whether any subformula is a square root of negation; such
    /// formulas have no truth-functional probability rule.
    pub fn contains_sqrt_neg(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::SqrtNeg(_) => true,
            Formula::Neg(sub) => sub.contains_sqrt_neg(),
            Formula::Conj(l, r) | Formula::Disj(l, r) => {
                l.contains_sqrt_neg() || r.contains_sqrt_neg()
            }
        }
    }

    /// Distinct atom names, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Neg(sub) | Formula::SqrtNeg(sub) => sub.collect_atoms(out),
            Formula::Conj(l, r) | Formula::Disj(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) => 4,
            Formula::Neg(_) | Formula::SqrtNeg(_) => 3,
            Formula::Conj(..) => 2,
            Formula::Disj(..) => 1,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Prints in the concrete grammar; `parse(format(f))` returns `f`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Neg(sub) => {
                f.write_str("not ")?;
                sub.write_child(f, 3)
            }
            Formula::SqrtNeg(sub) => {
                f.write_str("snot ")?;
                sub.write_child(f, 3)
            }
            Formula::Conj(l, r) => {
                l.write_child(f, 2)?;
                f.write_str(" and ")?;
                // The parser folds to the left, so a right-nested
                // conjunction must keep its parentheses.
                r.write_child(f, 3)
            }
            Formula::Disj(l, r) => {
                l.write_child(f, 1)?;
                f.write_str(" or ")?;
                r.write_child(f, 2)
            }
        }
    }
}

/// Rejection of an input string, with the byte offset of the offending
/// token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Ident(String),
    Not,
    Snot,
    And,
    Or,
    LParen,
    RParen,
}

struct Token {
    kind: TokenKind,
    position: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                tokens.push(Token {
                    kind: TokenKind::LParen,
                    position: i,
                });
                i += 1;
            }
            b')' => {
                tokens.push(Token {
                    kind: TokenKind::RParen,
                    position: i,
                });
                i += 1;
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase()
                        || bytes[i].is_ascii_digit()
                        || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                let kind = match word {
                    "not" => TokenKind::Not,
                    "snot" => TokenKind::Snot,
                    "and" => TokenKind::And,
                    "or" => TokenKind::Or,
                    _ => TokenKind::Ident(word.to_string()),
                };
                tokens.push(Token {
                    kind,
                    position: start,
                });
            }
            _ => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character {:?}", text[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.cursor).map(|t| &t.kind)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|t| t.position)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<TokenKind> {
        let token = self.tokens.get(self.cursor)?;
        self.cursor += 1;
        Some(token.kind.clone())
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError {
            position: self.position(),
            message: message.to_string(),
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while self.peek() == Some(&TokenKind::Or) {
            self.bump();
            let right = self.conjunction()?;
            left = Formula::disj(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.prefix()?;
        while self.peek() == Some(&TokenKind::And) {
            self.bump();
            let right = self.prefix()?;
            left = Formula::conj(left, right);
        }
        Ok(left)
    }

    fn prefix(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(TokenKind::Not) => {
                self.bump();
                Ok(Formula::neg(self.prefix()?))
            }
            Some(TokenKind::Snot) => {
                self.bump();
                Ok(Formula::sqrt_neg(self.prefix()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(TokenKind::Ident(_)) => {
                let Some(TokenKind::Ident(name)) = self.bump() else {
                    unreachable!()
                };
                Ok(Formula::Atom(name))
            }
            Some(TokenKind::LParen) => {
                self.bump();
                let inner = self.disjunction()?;
                if self.peek() == Some(&TokenKind::RParen) {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(self.error("expected `)`"))
                }
            }
            Some(_) => Err(self.error("expected a formula")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a formula in the concrete grammar.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end: text.len(),
    };
    let formula = parser.disjunction()?;
    if parser.peek().is_some() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(formula)
}
