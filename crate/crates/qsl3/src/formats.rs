//! Text and JSON serializations.

use std::str::FromStr;

use qsl3_core::bqd::Bqd;
use qsl3_core::tensor::TensorMap;
use qsl3_core::{Field, Monomial, MultiPoly, PolyContext};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected `{found}` at byte {pos}")]
    Unexpected { found: char, pos: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("bad coefficient `{0}`")]
    BadCoefficient(String),
    #[error("bad exponent `{0}`")]
    BadExponent(String),
}

struct Lexer<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.s[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.s[self.pos..].chars().next().filter(|&c| f(c)) {
            self.pos += c.len_utf8();
        }
        &self.s[start..self.pos]
    }

    /// Contents of a balanced `( ... )` group, the opening parenthesis already consumed.
    fn group(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        let mut depth = 1;
        for (i, c) in self.s[start..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos = start + i + 1;
                        return Ok(&self.s[start..start + i]);
                    }
                }
                _ => {}
            }
        }
        Err(ParseError::UnexpectedEnd)
    }
}

/// Parses the printed form of a polynomial: `c*v^e*w + ... - ...`, with
/// non-literal coefficients in parentheses.
pub fn parse_poly<F>(ctx: &PolyContext<F>, s: &str) -> Result<MultiPoly<F>, ParseError>
where
    F: Field + FromStr,
{
    let mut lx = Lexer { s, pos: 0 };
    let coeff_ctx = ctx.coeff_context();
    let parse_coeff = |text: &str| text.parse::<F>().map_err(|_| ParseError::BadCoefficient(text.to_string()));
    let mut out = MultiPoly::zero(ctx);
    let mut first = true;
    loop {
        let mut negative = false;
        match lx.peek() {
            None if first => return Err(ParseError::UnexpectedEnd),
            None => break,
            Some('+') if !first => {
                lx.bump();
            }
            Some('-') => {
                lx.bump();
                negative = true;
            }
            Some(c) if !first => return Err(ParseError::Unexpected { found: c, pos: lx.pos }),
            _ => {}
        }
        first = false;
        let mut coeff = F::one(coeff_ctx);
        let mut mono = Monomial::one(ctx.vars().len());
        let mut factors = 0;
        loop {
            match lx.peek() {
                Some('(') => {
                    lx.bump();
                    coeff = coeff.mul(&parse_coeff(lx.group()?)?);
                }
                Some(c) if c.is_ascii_digit() => {
                    let text = lx.take_while(|c| c.is_ascii_digit() || c == '/');
                    coeff = coeff.mul(&parse_coeff(text)?);
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let name = lx.take_while(|c| c.is_alphanumeric() || c == '_');
                    let Some(v) = ctx.var_index(name) else {
                        // a named scalar such as `j` in Q(j)
                        let c = name.parse::<F>().map_err(|_| ParseError::UnknownVariable(name.to_string()))?;
                        coeff = coeff.mul(&c);
                        factors += 1;
                        if lx.peek() == Some('*') {
                            lx.bump();
                            continue;
                        }
                        break;
                    };
                    let mut e = 1;
                    if lx.peek() == Some('^') {
                        lx.bump();
                        let text = lx.take_while(|c| c.is_ascii_digit());
                        e = text.parse().map_err(|_| ParseError::BadExponent(text.to_string()))?;
                    }
                    mono.0[v] += e;
                }
                Some(c) => return Err(ParseError::Unexpected { found: c, pos: lx.pos }),
                None => return Err(ParseError::UnexpectedEnd),
            }
            factors += 1;
            if lx.peek() == Some('*') {
                lx.bump();
            } else {
                break;
            }
        }
        debug_assert!(factors > 0);
        if negative {
            coeff = coeff.neg();
        }
        out.add_term(mono, coeff);
    }
    Ok(out)
}

pub fn scalar<F: Field>(x: &F) -> String {
    x.to_string()
}

/// Signatures plus the row-major entry list.
pub fn tensor_map_json<F: Field>(m: &TensorMap<F>) -> Value {
    let mat = m.matrix();
    json!({
        "domain": m.domain().to_string(),
        "codomain": m.codomain().to_string(),
        "rows": mat.rows().to_string(),
        "cols": mat.cols().to_string(),
        "entries": mat.entries().iter().map(scalar).collect::<Vec<_>>(),
    })
}

pub fn bqd_json<F: Field>(b: &Bqd<F>) -> Value {
    json!({
        "A": tensor_map_json(&b.cap_a),
        "a": tensor_map_json(&b.a),
        "B": tensor_map_json(&b.cap_b),
        "b": tensor_map_json(&b.b),
        "C": tensor_map_json(&b.cap_c),
        "c": tensor_map_json(&b.c),
        "D": tensor_map_json(&b.cap_d),
        "d": tensor_map_json(&b.d),
        "omega": scalar(&b.omega),
        "q": scalar(&b.q),
    })
}
