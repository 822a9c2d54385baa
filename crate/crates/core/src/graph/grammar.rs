use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Textual description of a countable graph.
///
/// ```text
/// spec := rado | empty | complete
///       | gnp(p=<float in (0,1)>,seed=<u64>)
///       | cliques(<uint>)
///       | complement(<spec>)
///       | union(<spec>,<spec>)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    Rado,
    Empty,
    Complete,
    Gnp { p: f64, seed: u64 },
    Cliques(u64),
    Complement(Box<GraphSpec>),
    Union(Box<GraphSpec>, Box<GraphSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown generator `{name}` at position {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("parse error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnknownGenerator { position, .. } | ParseError::Syntax { position, .. } => *position,
        }
    }
}

impl GraphSpec {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(spec)
    }

    pub fn complement(self) -> Self {
        GraphSpec::Complement(Box::new(self))
    }

    pub fn union(left: Self, right: Self) -> Self {
        GraphSpec::Union(Box::new(left), Box::new(right))
    }

    /// Removes double complements, recursively.
    pub fn normalized(&self) -> GraphSpec {
        match self {
            GraphSpec::Complement(inner) => match inner.normalized() {
                GraphSpec::Complement(x) => *x,
                other => other.complement(),
            },
            GraphSpec::Union(l, r) => GraphSpec::union(l.normalized(), r.normalized()),
            other => other.clone(),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Rado => f.write_str("rado"),
            GraphSpec::Empty => f.write_str("empty"),
            GraphSpec::Complete => f.write_str("complete"),
            GraphSpec::Gnp { p, seed } => write!(f, "gnp(p={p},seed={seed})"),
            GraphSpec::Cliques(k) => write!(f, "cliques({k})"),
            GraphSpec::Complement(inner) => write!(f, "complement({inner})"),
            GraphSpec::Union(l, r) => write!(f, "union({l},{r})"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphSpec::parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && pred(self.src[self.pos]) {
            self.pos += 1;
        }
        // Only ASCII bytes are accepted by every predicate used here.
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn ident(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_').to_string();
        (start, name)
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit()).to_string();
        if digits.is_empty() {
            return Err(self.error("expected an unsigned integer"));
        }
        digits.parse().map_err(|_| ParseError::Syntax {
            position: start,
            message: format!("integer `{digits}` does not fit in 64 bits"),
        })
    }

    fn float(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let text = self.take_while(|c| c.is_ascii_digit() || matches!(c, b'.' | b'e' | b'E' | b'-' | b'+')).to_string();
        text.parse::<f64>()
            .map_err(|_| ParseError::Syntax { position: start, message: format!("expected a float, found `{text}`") })
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        let (at, name) = self.ident();
        if name == word {
            Ok(())
        } else {
            Err(ParseError::Syntax { position: at, message: format!("expected `{word}`") })
        }
    }

    fn spec(&mut self) -> Result<GraphSpec, ParseError> {
        let (at, name) = self.ident();
        match name.as_str() {
            "rado" => Ok(GraphSpec::Rado),
            "empty" => Ok(GraphSpec::Empty),
            "complete" => Ok(GraphSpec::Complete),
            "gnp" => {
                self.expect(b'(')?;
                self.keyword("p")?;
                self.expect(b'=')?;
                self.skip_ws();
                let p_at = self.pos;
                let p = self.float()?;
                if !(p > 0.0 && p < 1.0) {
                    return Err(ParseError::Syntax {
                        position: p_at,
                        message: format!("edge probability {p} is not in (0,1)"),
                    });
                }
                self.expect(b',')?;
                self.keyword("seed")?;
                self.expect(b'=')?;
                let seed = self.uint()?;
                self.expect(b')')?;
                Ok(GraphSpec::Gnp { p, seed })
            }
            "cliques" => {
                self.expect(b'(')?;
                self.skip_ws();
                let k_at = self.pos;
                let k = self.uint()?;
                if k == 0 {
                    return Err(ParseError::Syntax { position: k_at, message: "clique size must be positive".into() });
                }
                self.expect(b')')?;
                Ok(GraphSpec::Cliques(k))
            }
            "complement" => {
                self.expect(b'(')?;
                let inner = self.spec()?;
                self.expect(b')')?;
                Ok(inner.complement())
            }
            "union" => {
                self.expect(b'(')?;
                let left = self.spec()?;
                self.expect(b',')?;
                let right = self.spec()?;
                self.expect(b')')?;
                Ok(GraphSpec::union(left, right))
            }
            "" => Err(ParseError::Syntax { position: at, message: "expected a generator".into() }),
            _ => Err(ParseError::UnknownGenerator { name, position: at }),
        }
    }
}
