//! Text format for polynomials: rational coefficients, `^` powers, `*`
//! products, variables by name, e.g. `2*a2^2 + 2*a0^2 - 1`.
//! Parser and printer round-trip.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::scalar::ExactScalar;

use super::{Monomial, MonomialOrder, PolyError, Polynomial, Universe};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(ExactScalar),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(Token, usize)>, PolyError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push((Token::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Token::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Token::Star, i));
                i += 1;
            }
            '^' => {
                out.push((Token::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Token::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // optional `/den` makes a rational literal
                let mut text = String::from(&input[start..i]);
                if i < bytes.len() && bytes[i] == b'/' {
                    let mut j = i + 1;
                    let den_start = j;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == den_start {
                        return Err(PolyError::Parse { msg: "expected denominator digits".into(), pos: i });
                    }
                    text.push('/');
                    text.push_str(&input[den_start..j]);
                    i = j;
                }
                let value = ExactScalar::parse(&text)
                    .map_err(|e| PolyError::Parse { msg: e.to_string(), pos: start })?;
                out.push((Token::Number(value), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Token::Name(input[start..i].to_string()), start));
            }
            _ => return Err(PolyError::Parse { msg: format!("unexpected character `{c}`"), pos: i }),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    universe: &'a Universe,
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|(_, p)| *p).unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut negate = false;
        // leading sign
        loop {
            match self.peek() {
                Some(Token::Minus) => {
                    negate = !negate;
                    self.bump();
                }
                Some(Token::Plus) => {
                    self.bump();
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                // juxtaposition is not accepted: every product is explicit
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let pos = self.here();
        let base = match self.bump() {
            Some(Token::Number(c)) => Polynomial::constant(self.universe, c),
            Some(Token::Name(name)) => Polynomial::var_named(self.universe, &name)?,
            Some(Token::Minus) => {
                let f = self.factor()?;
                return Ok(f.neg());
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => inner,
                    _ => return Err(PolyError::Parse { msg: "expected `)`".into(), pos: self.here() }),
                }
            }
            _ => return Err(PolyError::Parse { msg: "expected coefficient, variable or `(`".into(), pos }),
        };
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let pos = self.here();
            match self.bump() {
                Some(Token::Number(e)) if e.is_integer() && !e.is_negative() => {
                    let exp: u32 = e
                        .numer()
                        .try_into()
                        .map_err(|_| PolyError::Parse { msg: "exponent too large".into(), pos })?;
                    Ok(base.pow(exp))
                }
                _ => Err(PolyError::Parse { msg: "expected non-negative integer exponent".into(), pos }),
            }
        } else {
            Ok(base)
        }
    }
}

impl Polynomial {
    /// Parses the textual polynomial format over the given universe.
    pub fn parse(universe: &Universe, input: &str) -> Result<Polynomial, PolyError> {
        let tokens = lex(input)?;
        if tokens.is_empty() {
            return Err(PolyError::Parse { msg: "empty input".into(), pos: 0 });
        }
        let mut p = Parser { tokens, pos: 0, universe, input_len: input.len() };
        let poly = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(PolyError::Parse { msg: "trailing input".into(), pos: p.here() });
        }
        Ok(poly)
    }

    /// Renders the polynomial with terms sorted descending under `order`.
    pub fn render(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(order).iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&render_term(m, &mag, self.universe()));
        }
        out
    }
}

fn render_term(m: &Monomial, mag: &ExactScalar, universe: &Universe) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() || m.is_unit() {
        parts.push(mag.to_string());
    }
    for (var, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(universe.name(var).to_string()),
            _ => parts.push(format!("{}^{}", universe.name(var), e)),
        }
    }
    parts.join("*")
}

impl core::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.render(&MonomialOrder::Lex))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VariableUniverse;

    #[test]
    fn parse_print_round_trip() {
        let u = VariableUniverse::new(&["a2", "a0", "c2"]).unwrap();
        let text = "2*a2^2 + 2*a0^2 - 1";
        let p = Polynomial::parse(&u, text).unwrap();
        assert_eq!(p.render(&MonomialOrder::Lex), text);
        let again = Polynomial::parse(&u, &p.render(&MonomialOrder::Lex)).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn rational_coefficients_and_parens() {
        let u = VariableUniverse::new(&["x", "y"]).unwrap();
        let p = Polynomial::parse(&u, "1/2*(x + y)^2 - x*y").unwrap();
        let q = Polynomial::parse(&u, "1/2*x^2 + 1/2*y^2").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_unknown_variables_and_garbage() {
        let u = VariableUniverse::new(&["x"]).unwrap();
        assert!(Polynomial::parse(&u, "x + z").is_err());
        assert!(Polynomial::parse(&u, "x ^ -2").is_err());
        assert!(Polynomial::parse(&u, "1.5*x").is_err());
    }
}
