//! Concrete syntax for game terms.
//!
//! Operators from loosest to tightest binding, all binary ones left-associative:
//!
//! ```text
//! term    := choice1
//! choice1 := choice2 { "+" choice2 }      first player's choice
//! choice2 := par { "&" par }              second player's choice
//! par     := seq { "||" seq }             parallel play
//! seq     := unary { ";" unary }          composition
//! unary   := primary { "^d" }             dual
//! primary := atomName | "1" | "(" term ")"
//! ```
//!
//! `1` is the idle game.

use std::fmt;

use thiserror::Error;

use crate::term::{Atom, Term};

/// 1-based line and column of a character in the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourcePosition {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{position}: unexpected {found}, expected one of: {}", expected.join(", "))]
    Syntax {
        position: SourcePosition,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("{position}: unknown character {character:?}")]
    UnknownCharacter { position: SourcePosition, character: char },
}

impl ParseError {
    pub fn position(&self) -> SourcePosition {
        match self {
            ParseError::Syntax { position, .. } | ParseError::UnknownCharacter { position, .. } => *position,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    One,
    LParen,
    RParen,
    Plus,
    Amp,
    Par,
    Semi,
    DualMark,
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("atom `{name}`"),
            Token::One => "`1`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Plus => "`+`".into(),
            Token::Amp => "`&`".into(),
            Token::Par => "`||`".into(),
            Token::Semi => "`;`".into(),
            Token::DualMark => "`^d`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, SourcePosition)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let position = SourcePosition { line, column };
        let width = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => 1,
            '(' => push(&mut out, Token::LParen, position, 1),
            ')' => push(&mut out, Token::RParen, position, 1),
            '+' => push(&mut out, Token::Plus, position, 1),
            '&' => push(&mut out, Token::Amp, position, 1),
            ';' => push(&mut out, Token::Semi, position, 1),
            '|' if chars.get(i + 1) == Some(&'|') => push(&mut out, Token::Par, position, 2),
            '^' if chars.get(i + 1) == Some(&'d') => push(&mut out, Token::DualMark, position, 2),
            '1' if !chars.get(i + 1).is_some_and(|n| n.is_ascii_alphanumeric() || *n == '_') => {
                push(&mut out, Token::One, position, 1)
            }
            c if c.is_ascii_lowercase() => {
                let len = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .count();
                let name: String = chars[i..i + len].iter().collect();
                push(&mut out, Token::Ident(name), position, len)
            }
            _ => return Err(ParseError::UnknownCharacter { position, character: c }),
        };
        i += width;
        column += width;
    }
    out.push((Token::Eof, SourcePosition { line, column }));
    Ok(out)
}

fn push(out: &mut Vec<(Token, SourcePosition)>, token: Token, position: SourcePosition, width: usize) -> usize {
    out.push((token, position));
    width
}

struct Parser {
    tokens: Vec<(Token, SourcePosition)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (token, position) = &self.tokens[self.pos];
        ParseError::Syntax {
            position: *position,
            found: token.describe(),
            expected: expected.to_vec(),
        }
    }

    fn binary(
        &mut self,
        op: Token,
        operand: fn(&mut Parser) -> Result<Term, ParseError>,
        build: fn(Term, Term) -> Term,
    ) -> Result<Term, ParseError> {
        let mut left = operand(self)?;
        while *self.peek() == op {
            self.bump();
            let right = operand(self)?;
            left = build(left, right);
        }
        Ok(left)
    }

    fn choice1(&mut self) -> Result<Term, ParseError> {
        self.binary(Token::Plus, Parser::choice2, Term::choice1)
    }

    fn choice2(&mut self) -> Result<Term, ParseError> {
        self.binary(Token::Amp, Parser::par, Term::choice2)
    }

    fn par(&mut self) -> Result<Term, ParseError> {
        self.binary(Token::Par, Parser::seq, Term::parallel)
    }

    fn seq(&mut self) -> Result<Term, ParseError> {
        self.binary(Token::Semi, Parser::unary, Term::compose)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        let mut term = self.primary()?;
        while *self.peek() == Token::DualMark {
            self.bump();
            term = Term::dual(term);
        }
        Ok(term)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                // The tokenizer only produces identifier-shaped names.
                Ok(Term::Atom(Atom::new(name).expect("tokenizer yields valid identifiers")))
            }
            Token::One => {
                self.bump();
                Ok(Term::Idle)
            }
            Token::LParen => {
                self.bump();
                let inner = self.choice1()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(&["`)`", "`+`", "`&`", "`||`", "`;`", "`^d`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&["atom", "`1`", "`(`"])),
        }
    }
}

/// Parses a term in the concrete syntax.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut parser = Parser { tokens: tokenize(text)?, pos: 0 };
    let term = parser.choice1()?;
    if *parser.peek() != Token::Eof {
        return Err(parser.error(&["end of input", "`+`", "`&`", "`||`", "`;`", "`^d`"]));
    }
    Ok(term)
}

fn precedence(t: &Term) -> u8 {
    match t {
        Term::Choice1(..) => 1,
        Term::Choice2(..) => 2,
        Term::Parallel(..) => 3,
        Term::Compose(..) => 4,
        Term::Dual(..) => 5,
        Term::Idle | Term::Atom(_) => 6,
    }
}

/// Prints a term with the fewest parentheses that parse back to the same tree.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Idle => out.push('1'),
        Term::Atom(a) => out.push_str(a.name()),
        Term::Dual(inner) => {
            write_operand(inner, precedence(inner) < 5, out);
            out.push_str("^d");
        }
        Term::Compose(l, r) => write_binary(t, l, r, " ; ", out),
        Term::Parallel(l, r) => write_binary(t, l, r, " || ", out),
        Term::Choice2(l, r) => write_binary(t, l, r, " & ", out),
        Term::Choice1(l, r) => write_binary(t, l, r, " + ", out),
    }
}

fn write_binary(t: &Term, l: &Term, r: &Term, op: &str, out: &mut String) {
    let p = precedence(t);
    write_operand(l, precedence(l) < p, out);
    out.push_str(op);
    write_operand(r, precedence(r) <= p, out);
}

fn write_operand(t: &Term, parenthesize: bool, out: &mut String) {
    if parenthesize {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}
