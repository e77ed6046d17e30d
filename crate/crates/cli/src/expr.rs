//! Ring expressions.
//!
//! ```text
//! ring := term ("x" term)*
//! term := "Z" digits | "GF(" digits ")" | "M(" digits "," term ")" | identifier | "table:" path
//! ```
//!
//! Whitespace between tokens is ignored. The inner term of `M(..)` must be a
//! Galois field. Identifiers name builtin rings; they end at the first
//! character outside `[A-Za-z0-9_]`, so separate them from `x` with spaces.

use std::fmt;
use std::path::PathBuf;

use homweight::ring::{ex5_5_spec, prime_power, Limits, TableRingSpec, EX5_5_NAME};
use homweight::Ring;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    ZMod(u64),
    GF(u64),
    Mat(u64, u64),
    Builtin(String),
    TableFile(PathBuf),
}

/// A product of one or more terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingExpr(pub Vec<Term>);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("ring expression error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::ZMod(n) => write!(f, "Z{n}"),
            Term::GF(q) => write!(f, "GF({q})"),
            Term::Mat(m, q) => write!(f, "M({m},GF({q}))"),
            Term::Builtin(name) => f.write_str(name),
            Term::TableFile(path) => write!(f, "table:{}", path.display()),
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Term::to_string).collect();
        f.write_str(&parts.join(" x "))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected `{token}`"))
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected digits");
        }
        let digits = &self.rest()[..len];
        let value = digits.parse().or_else(|_| self.err("number too large"))?;
        self.pos += len;
        Ok(value)
    }

    fn field_order(&mut self) -> Result<u64, ParseError> {
        self.expect("GF(")?;
        let start = self.pos;
        let q = self.number()?;
        if prime_power(q).is_none() {
            self.pos = start;
            return self.err(format!("{q} is not a prime power"));
        }
        self.expect(")")?;
        Ok(q)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        if rest.starts_with("table:") {
            self.pos += "table:".len();
            let len = self.rest().find(char::is_whitespace).unwrap_or(self.rest().len());
            if len == 0 {
                return self.err("expected a path after `table:`");
            }
            let path = PathBuf::from(&self.rest()[..len]);
            self.pos += len;
            return Ok(Term::TableFile(path));
        }
        if rest.starts_with("GF(") {
            return Ok(Term::GF(self.field_order()?));
        }
        if rest.starts_with("M(") {
            self.pos += 2;
            let m = self.number()?;
            if m == 0 {
                return self.err("matrix dimension must be at least 1");
            }
            self.expect(",")?;
            self.skip_ws();
            if !self.rest().starts_with("GF(") {
                return self.err("matrix entries must come from a field GF(q)");
            }
            let q = self.field_order()?;
            self.expect(")")?;
            return Ok(Term::Mat(m, q));
        }
        if rest.starts_with('Z') && rest[1..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
            let n = self.number()?;
            if n < 2 {
                return self.err("Z_N needs N >= 2");
            }
            return Ok(Term::ZMod(n));
        }
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 || !rest.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            return self.err("expected a ring term");
        }
        let name = rest[..len].to_string();
        self.pos += len;
        Ok(Term::Builtin(name))
    }
}

impl std::str::FromStr for RingExpr {
    type Err = ParseError;

    fn from_str(src: &str) -> Result<Self, ParseError> {
        let mut p = Parser { src, pos: 0 };
        let mut terms = vec![p.term()?];
        loop {
            p.skip_ws();
            if p.rest().is_empty() {
                break;
            }
            if !p.eat("x") {
                return p.err("expected `x` or end of input");
            }
            terms.push(p.term()?);
        }
        Ok(RingExpr(terms))
    }
}

/// Failure to turn an expression into a ring.
#[derive(Debug, Error)]
pub enum BuildError {
    #[error("unknown builtin ring `{0}` (known: {EX5_5_NAME})")]
    UnknownBuiltin(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid table file {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Ring(#[from] homweight::Error),
}

impl RingExpr {
    /// Number of elements, when it can be known without reading files.
    pub fn expected_size(&self) -> Option<u128> {
        self.0.iter().try_fold(1u128, |acc, t| {
            let s = match t {
                Term::ZMod(n) | Term::GF(n) => *n as u128,
                Term::Mat(m, q) => (*q as u128).checked_pow((m * m).try_into().ok()?)?,
                Term::Builtin(name) if name == EX5_5_NAME => 16,
                _ => return None,
            };
            acc.checked_mul(s)
        })
    }

    pub fn build(&self, limits: &Limits) -> Result<Ring, BuildError> {
        if let Some(size) = self.expected_size() {
            if size > limits.max_size as u128 {
                return Err(homweight::Error::ResourceLimit {
                    what: self.to_string(),
                    needed: size,
                    limit: limits.max_size,
                }
                .into());
            }
        }
        let factors = self
            .0
            .iter()
            .map(|t| build_term(t, limits))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(limits.product(&factors)?)
    }
}

fn build_term(term: &Term, limits: &Limits) -> Result<Ring, BuildError> {
    Ok(match term {
        Term::ZMod(n) => limits.zmod(*n as usize)?,
        Term::GF(q) => limits.gf(*q)?,
        Term::Mat(m, q) => limits.matrix_ring(*m as usize, &limits.gf(*q)?)?,
        Term::Builtin(name) if name == EX5_5_NAME => limits.table_ring(&ex5_5_spec())?,
        Term::Builtin(name) => return Err(BuildError::UnknownBuiltin(name.clone())),
        Term::TableFile(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| BuildError::Io {
                path: path.clone(),
                source,
            })?;
            let spec: TableRingSpec = serde_json::from_str(&text).map_err(|source| BuildError::Json {
                path: path.clone(),
                source,
            })?;
            limits.table_ring(&spec)?
        }
    })
}
