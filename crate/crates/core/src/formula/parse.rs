//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Precedence, loosest first: `<->`, `->` (right associative), `\/`, `/\`,
//! `(+)` and `(-)`, `(.)`, then the prefix operators `!`, `D[r]`, `N[r]`.

use thiserror::Error;

use super::{Formula, Kind};
use crate::kernel::{UnitError, UnitRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("scalar at byte {pos}: {source}")]
    Scalar { pos: usize, source: UnitError },
    #[error("variable index 0 at byte {pos}; variables start at v1")]
    ZeroVariable { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Scalar { pos, .. } | ParseError::ZeroVariable { pos } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Var(usize),
    Bang,
    Delta(UnitRational),
    Nabla(UnitRational),
    Const(UnitRational),
    LParen,
    RParen,
    Iff,
    Implies,
    Join,
    Meet,
    Oplus,
    Ominus,
    Odot,
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Var(_) => "variable",
        Tok::Bang => "`!`",
        Tok::Delta(_) => "`D[..]`",
        Tok::Nabla(_) => "`N[..]`",
        Tok::Const(_) => "`C[..]`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::Iff => "`<->`",
        Tok::Implies => "`->`",
        Tok::Join => "`\\/`",
        Tok::Meet => "`/\\`",
        Tok::Oplus => "`(+)`",
        Tok::Ominus => "`(-)`",
        Tok::Odot => "`(.)`",
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let rest = &text[i..];
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let fixed: &[(&str, Tok)] = &[
            ("<->", Tok::Iff),
            ("->", Tok::Implies),
            ("\\/", Tok::Join),
            ("/\\", Tok::Meet),
            ("(+)", Tok::Oplus),
            ("(-)", Tok::Ominus),
            ("(.)", Tok::Odot),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("!", Tok::Bang),
        ];
        if let Some((s, t)) = fixed.iter().find(|(s, _)| rest.starts_with(s)) {
            out.push((i, t.clone()));
            i += s.len();
            continue;
        }
        match c {
            b'v' => {
                let digits = rest[1..].bytes().take_while(u8::is_ascii_digit).count();
                if digits == 0 {
                    return Err(syntax(i, "expected digits after `v`"));
                }
                let index: usize = rest[1..=digits].parse().map_err(|_| syntax(i, "variable index too large"))?;
                if index == 0 {
                    return Err(ParseError::ZeroVariable { pos: i });
                }
                out.push((i, Tok::Var(index)));
                i += 1 + digits;
            }
            b'D' | b'N' | b'C' if rest[1..].starts_with('[') => {
                let close = rest.find(']').ok_or_else(|| syntax(i, "unterminated scalar, expected `]`"))?;
                let literal = &rest[2..close];
                let scalar_pos = i + 2;
                let r: UnitRational = literal.trim().parse().map_err(|e| match e {
                    UnitError::Parse(p) => syntax(scalar_pos, p.to_string()),
                    other => ParseError::Scalar { pos: scalar_pos, source: other },
                })?;
                out.push((
                    i,
                    match c {
                        b'D' => Tok::Delta(r),
                        b'N' => Tok::Nabla(r),
                        _ => Tok::Const(r),
                    },
                ));
                i += close + 1;
            }
            _ => {
                let ch = rest.chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.imp()?;
            lhs = Formula::new(Kind::Iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.imp()?;
            return Ok(Formula::new(Kind::Implies(lhs, rhs)));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conj()?;
        while self.eat(&Tok::Join) {
            let rhs = self.conj()?;
            lhs = Formula::new(Kind::Join(lhs, rhs));
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.sum()?;
        while self.eat(&Tok::Meet) {
            let rhs = self.sum()?;
            lhs = Formula::new(Kind::Meet(lhs, rhs));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.prod()?;
        loop {
            if self.eat(&Tok::Oplus) {
                let rhs = self.prod()?;
                lhs = Formula::new(Kind::Oplus(lhs, rhs));
            } else if self.eat(&Tok::Ominus) {
                let rhs = self.prod()?;
                lhs = Formula::new(Kind::Ominus(lhs, rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn prod(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Odot) {
            let rhs = self.unary()?;
            lhs = Formula::new(Kind::Odot(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Bang) => {
                self.at += 1;
                Ok(self.unary()?.not())
            }
            Some(Tok::Delta(r)) => {
                self.at += 1;
                Ok(Formula::delta(r, &self.unary()?))
            }
            Some(Tok::Nabla(r)) => {
                self.at += 1;
                Ok(Formula::nabla(r, &self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Var(i)) => {
                self.at += 1;
                Ok(Formula::var(i))
            }
            Some(Tok::Const(r)) => {
                self.at += 1;
                Ok(Formula::constant(r))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.pos(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(t) => Err(syntax(pos, format!("expected a formula, found {}", describe(&t)))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses a formula from its ASCII syntax.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let f = p.iff()?;
    if let Some(t) = p.peek() {
        return Err(syntax(p.pos(), format!("unexpected {} after formula", describe(t))));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &str) -> UnitRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_examples() {
        let v1 = Formula::var(1);
        assert_eq!(parse("v1 -> v1").unwrap(), v1.implies(&v1));
        assert_eq!(parse("D[1/2] v1").unwrap(), Formula::delta(u("1/2"), &v1));
        assert_eq!(parse("!v1 (+) v2").unwrap(), v1.not().oplus(&Formula::var(2)));
    }

    #[test]
    fn precedence_and_associativity() {
        let (a, b, c) = (Formula::var(1), Formula::var(2), Formula::var(3));
        assert_eq!(parse("v1 -> v2 -> v3").unwrap(), a.implies(&b.implies(&c)));
        assert_eq!(parse("v1 \\/ v2 /\\ v3").unwrap(), a.join(&b.meet(&c)));
        assert_eq!(parse("v1 (+) v2 (.) v3").unwrap(), a.oplus(&b.odot(&c)));
        assert_eq!(parse("v1 (-) v2 (+) v3").unwrap(), a.ominus(&b).oplus(&c));
        assert_eq!(parse("v1 <-> v2 <-> v3").unwrap(), a.iff(&b).iff(&c));
        assert_eq!(parse("!v1 -> v2").unwrap(), a.not().implies(&b));
        assert_eq!(parse("N[0.5]D[1]v1").unwrap(), Formula::nabla(u("1/2"), &Formula::delta(u("1"), &a)));
        assert_eq!(parse("((v1))").unwrap(), a);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("v0").unwrap_err(), ParseError::ZeroVariable { pos: 0 });
        let e = parse("v1 -> D[3/2] v1").unwrap_err();
        assert!(matches!(e, ParseError::Scalar { pos: 8, .. }), "{e:?}");
        assert_eq!(parse("v1 -> ").unwrap_err().position(), 6);
        assert_eq!(parse("(v1").unwrap_err().position(), 3);
        assert_eq!(parse("v1 v2").unwrap_err().position(), 3);
        assert_eq!(parse("v1 & v2").unwrap_err().position(), 3);
        assert!(matches!(parse("C[abc]").unwrap_err(), ParseError::Syntax { pos: 2, .. }));
        assert!(matches!(parse("D[1/2 v1").unwrap_err(), ParseError::Syntax { .. }));
        assert!(parse("").is_err());
    }
}
