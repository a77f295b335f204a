//! Bracket notation for nested oval arrangements.
//!
//! ```text
//! scheme := term ("+" term)*
//! term   := INT sign? ("<" scheme ">")?
//! sign   := "^+" | "^-"            (signed mode only)
//! ```
//!
//! `INT` copies of an oval, each enclosing its own copy of the bracketed
//! scheme. `"0"` is the empty arrangement. `⊔`, `⟨` and `⟩` are accepted as
//! aliases for `+`, `<` and `>`; whitespace is ignored.

use std::fmt;

use thiserror::Error;

/// Upper bound on the number of ovals a single notation string may expand to.
pub const MAX_OVALS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Character offset (0-based) into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedChar(char),
    ExpectedInteger,
    IntegerOverflow,
    SignNotAllowed,
    TrailingInput,
    TooManyOvals,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::ExpectedInteger => write!(f, "expected an integer"),
            ParseErrorKind::IntegerOverflow => write!(f, "integer overflow"),
            ParseErrorKind::SignNotAllowed => write!(f, "orientation sign not allowed here"),
            ParseErrorKind::TrailingInput => write!(f, "trailing input"),
            ParseErrorKind::TooManyOvals => write!(f, "scheme expands to more than {MAX_OVALS} ovals"),
        }
    }
}

/// One oval together with everything it encloses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oval {
    /// `+1` or `-1`; always `+1` for unsigned notation.
    pub sign: i8,
    pub inner: Vec<Oval>,
}

impl Oval {
    pub fn count(&self) -> usize {
        1 + count_ovals(&self.inner)
    }
}

pub fn count_ovals(forest: &[Oval]) -> usize {
    forest.iter().map(Oval::count).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Plus,
    Open,
    Close,
    Sign(i8),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '⊔' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '<' | '⟨' => {
                toks.push((i, Tok::Open));
                i += 1;
            }
            '>' | '⟩' => {
                toks.push((i, Tok::Close));
                i += 1;
            }
            '^' => {
                let sign = match chars.get(i + 1) {
                    Some('+') => 1,
                    Some('-') => -1,
                    Some(&other) => {
                        return Err(ParseError { position: i + 1, kind: ParseErrorKind::UnexpectedChar(other) })
                    }
                    None => return Err(ParseError { position: i + 1, kind: ParseErrorKind::UnexpectedEnd }),
                };
                toks.push((i, Tok::Sign(sign)));
                i += 2;
            }
            '0'..='9' => {
                let start = i;
                let mut value: u64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    let digit = chars[i].to_digit(10).unwrap() as u64;
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(digit))
                        .ok_or(ParseError { position: start, kind: ParseErrorKind::IntegerOverflow })?;
                    i += 1;
                }
                toks.push((start, Tok::Int(value)));
            }
            other => return Err(ParseError { position: i, kind: ParseErrorKind::UnexpectedChar(other) }),
        }
    }
    Ok(toks)
}

struct Parser {
    chars: Vec<char>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    signed: bool,
    ovals: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|&(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(p, _)| p)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.offset(), kind }
    }

    fn scheme(&mut self, mult: u64) -> Result<Vec<Oval>, ParseError> {
        let mut forest = self.term(mult)?;
        while self.peek() == Some(Tok::Plus) {
            self.pos += 1;
            forest.extend(self.term(mult)?);
        }
        Ok(forest)
    }

    // `mult` is the number of copies the enclosing brackets will make of this
    // term; it only feeds the expansion-size guard.
    fn term(&mut self, mult: u64) -> Result<Vec<Oval>, ParseError> {
        let count = match self.peek() {
            Some(Tok::Int(n)) => n,
            Some(_) => return Err(self.error(ParseErrorKind::ExpectedInteger)),
            None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
        };
        let count_pos = self.offset();
        self.pos += 1;
        let mut sign = 1;
        if let Some(Tok::Sign(s)) = self.peek() {
            if !self.signed {
                return Err(self.error(ParseErrorKind::SignNotAllowed));
            }
            sign = s;
            self.pos += 1;
        }
        let copies = count.checked_mul(mult).filter(|&c| c <= MAX_OVALS as u64);
        let copies = copies.ok_or(ParseError { position: count_pos, kind: ParseErrorKind::TooManyOvals })?;
        self.ovals += copies as usize;
        if self.ovals > MAX_OVALS {
            return Err(ParseError { position: count_pos, kind: ParseErrorKind::TooManyOvals });
        }
        let inner = if self.peek() == Some(Tok::Open) {
            self.pos += 1;
            let inner = self.scheme(copies.max(1))?;
            match self.peek() {
                Some(Tok::Close) => self.pos += 1,
                Some(_) => {
                    let p = self.offset();
                    return Err(ParseError { position: p, kind: ParseErrorKind::UnexpectedChar(self.chars[p]) });
                }
                None => return Err(self.error(ParseErrorKind::UnexpectedEnd)),
            }
            inner
        } else {
            Vec::new()
        };
        Ok((0..count).map(|_| Oval { sign, inner: inner.clone() }).collect())
    }
}

fn parse_forest(text: &str, signed: bool) -> Result<Vec<Oval>, ParseError> {
    let toks = tokenize(text)?;
    let chars: Vec<char> = text.chars().collect();
    let end = chars.len();
    let mut parser = Parser { chars, toks, pos: 0, end, signed, ovals: 0 };
    let forest = parser.scheme(1)?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error(ParseErrorKind::TrailingInput));
    }
    Ok(forest)
}

/// Parses unsigned notation into a forest of ovals.
pub fn parse(text: &str) -> Result<Vec<Oval>, ParseError> {
    parse_forest(text, false)
}

/// Parses notation where each term may carry an orientation suffix `^+`/`^-`.
pub fn parse_signed(text: &str) -> Result<Vec<Oval>, ParseError> {
    parse_forest(text, true)
}

/// Renders a forest back to notation, grouping identical terms.
/// Term order follows the forest's order; no canonicalization happens here.
pub fn render(forest: &[Oval], signed: bool) -> String {
    if forest.is_empty() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < forest.len() {
        let mut j = i + 1;
        while j < forest.len() && forest[j] == forest[i] {
            j += 1;
        }
        let o = &forest[i];
        let mut s = (j - i).to_string();
        if signed {
            s.push_str(if o.sign < 0 { "^-" } else { "^+" });
        }
        if !o.inner.is_empty() {
            s.push('<');
            s.push_str(&render(&o.inner, signed));
            s.push('>');
        }
        parts.push(s);
        i = j;
    }
    parts.join("+")
}
