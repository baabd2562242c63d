//! Text and JSON forms of polynomials.
//!
//! The grammar accepts `x`, `a`, integer literals, `+ - * / ^` and
//! parentheses. Division is only by nonzero rational constants, which covers
//! literals such as `1/6`. A factor may follow another without `*`, so `3x^2`
//! and `2(x + a)` parse as products. Whitespace is ignored.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::gcd::reduce_rational;
use crate::{Error, Fp, FpPoly, QPoly, QaPoly, Rational, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    X,
    A,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some((i, ch)) = chars.next() {
        let tok = match ch {
            c if c.is_whitespace() => continue,
            '0'..='9' => {
                let mut end = i + 1;
                while let Some(&(j, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = j + 1;
                    chars.next();
                }
                Token::Int(s[i..end].parse().expect("digits"))
            }
            'x' => Token::X,
            'a' => Token::A,
            '+' => Token::Plus,
            '-' | '\u{2212}' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            other => return Err(Error::Parse(format!("unexpected character '{other}' at {i}"))),
        };
        out.push(tok);
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<QaPoly> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QaPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let den = self.unary()?;
                    let c = den
                        .to_rational()
                        .filter(|q| q.degree() == Some(0))
                        .ok_or_else(|| Error::Parse(format!("cannot divide by {den}")))?;
                    acc = acc.map_coeffs(|p| p.scale(&c.coeff(0).recip()));
                }
                Some(Token::Int(_) | Token::X | Token::A | Token::Open) => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<QaPoly> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QaPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.next() {
            Some(Token::Int(e)) => {
                let e = u32::try_from(e).map_err(|_| Error::Parse("exponent too large".into()))?;
                Ok(base.pow(e))
            }
            _ => Err(Error::Parse("'^' needs a nonnegative integer exponent".into())),
        }
    }

    fn atom(&mut self) -> Result<QaPoly> {
        match self.next() {
            Some(Token::Int(v)) => Ok(QaPoly::constant(QPoly::constant(Rational::from_integer(v)))),
            Some(Token::X) => Ok(QaPoly::x()),
            Some(Token::A) => Ok(QaPoly::param()),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses a polynomial in `x` whose coefficients may involve `a`.
pub fn parse_family(s: &str) -> Result<QaPoly> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input after token {}", p.pos)));
    }
    Ok(out)
}

/// Parses a rational polynomial in `x`.
pub fn parse_rational(s: &str) -> Result<QPoly> {
    parse_family(s)?
        .to_rational()
        .ok_or_else(|| Error::Parse(format!("'{s}' depends on the parameter a")))
}

/// Parses a polynomial in `x` and reduces it modulo the prime `p`.
pub fn parse_mod_p(s: &str, p: u64) -> Result<FpPoly> {
    let q = parse_rational(s)?;
    reduce_rational_poly(&q, p)
}

/// Reduces a rational polynomial mod p; fails when p divides a denominator.
pub fn reduce_rational_poly(q: &QPoly, p: u64) -> Result<FpPoly> {
    Fp::new(0, p)?;
    let coeffs = q
        .coeffs()
        .iter()
        .map(|c| reduce_rational(c, p).ok_or_else(|| Error::Domain(format!("{c} has no image in F{p}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(FpPoly::new(coeffs))
}

/// Parses a polynomial in the parameter `a` alone.
pub fn parse_param_coeff(s: &str) -> Result<QPoly> {
    let p = parse_family(s)?;
    if p.deg() > 0 {
        return Err(Error::Parse(format!("'{s}' must not contain x")));
    }
    Ok(p.coeff(0))
}

/// A polynomial over any of the supported rings.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPoly {
    Q(QPoly),
    Fp(FpPoly, u64),
    Qa(QaPoly),
}

/// JSON form: `{"ring": "Q" | "Fp" | "Qa", "p": prime or absent, "coeffs": [...]}`
/// with coefficient strings in ascending degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub coeffs: Vec<String>,
}

impl AnyPoly {
    pub fn to_json(&self) -> PolyJson {
        match self {
            AnyPoly::Q(q) => PolyJson {
                ring: "Q".into(),
                p: None,
                coeffs: q.coeffs().iter().map(|c| c.to_string()).collect(),
            },
            AnyPoly::Fp(f, p) => PolyJson {
                ring: "Fp".into(),
                p: Some(*p),
                coeffs: f.coeffs().iter().map(|c| c.value().to_string()).collect(),
            },
            AnyPoly::Qa(f) => PolyJson {
                ring: "Qa".into(),
                p: None,
                coeffs: f.coeffs().iter().map(|c| c.display_var("a")).collect(),
            },
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let parse_const = |s: &str| -> Result<Rational> {
            let c = parse_param_coeff(s)?;
            if c.deg() > 0 {
                return Err(Error::Parse(format!("coefficient '{s}' must be a number")));
            }
            Ok(c.coeff(0))
        };
        match (j.ring.as_str(), j.p) {
            ("Q", None) => Ok(AnyPoly::Q(QPoly::new(
                j.coeffs.iter().map(|s| parse_const(s)).collect::<Result<_>>()?,
            ))),
            ("Fp", Some(p)) => {
                let q = QPoly::new(j.coeffs.iter().map(|s| parse_const(s)).collect::<Result<_>>()?);
                Ok(AnyPoly::Fp(reduce_rational_poly(&q, p)?, p))
            }
            ("Qa", None) => Ok(AnyPoly::Qa(QaPoly::new(
                j.coeffs.iter().map(|s| parse_param_coeff(s)).collect::<Result<_>>()?,
            ))),
            (ring, p) => Err(Error::Parse(format!("unsupported ring {ring} with p = {p:?}"))),
        }
    }
}

impl std::fmt::Display for AnyPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnyPoly::Q(q) => write!(f, "{q}"),
            AnyPoly::Fp(p, _) => write!(f, "{p}"),
            AnyPoly::Qa(p) => write!(f, "{p}"),
        }
    }
}
