//! Text grammar for elements:
//!
//! ```text
//! expr   ::= [sign] term (sign term)*
//! term   ::= [rational] factor*            (at least one of the two)
//! factor ::= ("alpha" | "beta" | "gamma" | "psi" index) ["^" exponent]
//! ```
//!
//! Whitespace is ignored, `*` may separate factors, and the Unicode minus sign
//! is accepted for `-`.

use num_bigint::BigInt;
use num_traits::One;

use super::element::Element;
use super::monomial::{Genus, Var};
use crate::error::{Error, Result};
use crate::scalar::QScalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Slash,
    Caret,
    Star,
    Plus,
    Minus,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("ascii digits")));
            }
            _ if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let mut name: String = chars[start..i].iter().collect();
                if name == "psi" {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        name.push(chars[i]);
                        i += 1;
                    }
                }
                out.push(Tok::Name(name));
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    g: Genus,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        match self.bump() {
            Some(Tok::Num(n)) => u32::try_from(n)
                .ok()
                .filter(|&e| e <= 1024)
                .ok_or_else(|| Error::Parse(format!("{what} too large"))),
            _ => Err(Error::Parse(format!("expected {what}"))),
        }
    }

    fn factor(&mut self, name: &str) -> Result<Element> {
        let base = if name == "gamma" {
            Element::gamma(self.g)
        } else {
            let v = Var::parse(name).map_err(|e| Error::Parse(e.to_string()))?;
            Element::var(self.g, v).map_err(|e| Error::Parse(e.to_string()))?
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.small_int("exponent")?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut coeff: Option<QScalar> = None;
        if let Some(Tok::Num(n)) = self.peek().cloned() {
            self.pos += 1;
            let mut c = QScalar::from_integer(n);
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                match self.bump() {
                    Some(Tok::Num(d)) if d != BigInt::from(0) => c /= QScalar::from_integer(d),
                    _ => return Err(Error::Parse("expected nonzero denominator".into())),
                }
            }
            coeff = Some(c);
        }
        let mut acc = Element::constant(self.g, coeff.clone().unwrap_or_else(QScalar::one));
        let mut nfactors = 0;
        loop {
            match self.peek().cloned() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Name(n)) => {
                            acc = &acc * &self.factor(&n)?;
                            nfactors += 1;
                        }
                        _ => return Err(Error::Parse("expected factor after `*`".into())),
                    }
                }
                Some(Tok::Name(n)) => {
                    self.pos += 1;
                    acc = &acc * &self.factor(&n)?;
                    nfactors += 1;
                }
                _ => break,
            }
        }
        if coeff.is_none() && nfactors == 0 {
            return Err(Error::Parse(match self.peek() {
                Some(t) => format!("unexpected token {t:?}"),
                None => "unexpected end of input".into(),
            }));
        }
        Ok(acc)
    }
}

/// Parses an element of the descendent algebra at genus `g`.
pub fn parse_element(g: Genus, s: &str) -> Result<Element> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        g,
    };
    let mut total = Element::zero(g);
    let mut first = true;
    while p.pos < toks.len() {
        let neg = match p.peek() {
            Some(Tok::Plus) => {
                p.pos += 1;
                false
            }
            Some(Tok::Minus) => {
                p.pos += 1;
                true
            }
            _ if first => false,
            Some(t) => return Err(Error::Parse(format!("expected `+` or `-`, found {t:?}"))),
            None => unreachable!(),
        };
        let t = p.term()?;
        total = if neg { &total - &t } else { &total + &t };
        first = false;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;
    use crate::scalar::{q, qfrac};

    fn g2() -> Genus {
        Genus::new(2).unwrap()
    }

    #[test]
    fn parses_examples() {
        let e = parse_element(g2(), "1/2 alpha^2 + 1/2 beta").unwrap();
        assert_eq!(e.coeff(&Monomial::new(2, 0, 0)), qfrac(1, 2));
        assert_eq!(e.coeff(&Monomial::new(0, 1, 0)), qfrac(1, 2));
        let gm = parse_element(g2(), "-2 psi1 psi3 - 2 psi2 psi4").unwrap();
        assert_eq!(gm, Element::gamma(g2()));
        assert_eq!(parse_element(g2(), "gamma").unwrap(), gm);
        assert_eq!(
            parse_element(g2(), "\u{2212}2psi1*psi3 −2 psi2psi4").unwrap(),
            gm
        );
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "1/2 alpha^2 + 1/2 beta",
            "-2 psi1 psi3 - 2 psi2 psi4",
            "-3",
            "alpha beta - 7/5 psi1 psi2",
        ] {
            let e = parse_element(g2(), s).unwrap();
            assert_eq!(parse_element(g2(), &e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn signs_and_constants() {
        assert_eq!(
            parse_element(g2(), "-4").unwrap(),
            Element::constant(g2(), q(-4))
        );
        assert_eq!(
            parse_element(g2(), "psi2 psi1").unwrap().to_string(),
            "-psi1 psi2"
        );
        assert!(parse_element(g2(), "gamma^3").unwrap().is_zero());
    }

    #[test]
    fn rejects_malformed() {
        for s in [
            "",
            "alpha +",
            "delta",
            "psi5",
            "1/0 alpha",
            "alpha ^",
            "alpha beta )",
            "2 3",
            "psi",
        ] {
            assert!(
                matches!(parse_element(g2(), s), Err(Error::Parse(_))),
                "{s}"
            );
        }
    }
}
