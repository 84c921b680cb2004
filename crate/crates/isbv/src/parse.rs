//! Parser for the polynomial input grammar.
//!
//! ```text
//! expression ::= ['-'] term (('+'|'-') term)*
//! term       ::= factor ('*' factor)*
//! factor     ::= integer | variable | variable '^' positive-integer
//!              | '(' expression ')'
//! variable   ::= [a-zA-Z][a-zA-Z0-9_']*
//! ```
//!
//! Whitespace is ignored. Division is rejected with a dedicated error.
//! `parse_poly(grammar_text(f)) == f` for every polynomial with integer
//! coefficients, which covers everything a model file stores.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeff::Domain;
use crate::error::AlgebraError;
use crate::poly::Polynomial;
use crate::vars::VariableSet;

pub fn parse_poly(
    text: &str,
    vars: &Arc<VariableSet>,
    domain: Domain,
) -> Result<Polynomial, AlgebraError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        vars,
        domain,
    };
    p.skip_ws();
    let poly = p.expression()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: &'a Arc<VariableSet>,
    domain: Domain,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<Polynomial, AlgebraError> {
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            negate = true;
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                Some(b'/') => return Err(AlgebraError::DivisionInInput { pos: self.pos }),
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                Some(b'/') => return Err(AlgebraError::DivisionInInput { pos: self.pos }),
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, AlgebraError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.err("expected a factor, found end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expression()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Polynomial::constant(self.vars, self.domain.from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.variable_name();
                let idx = self
                    .vars
                    .index_of(&name)
                    .ok_or(AlgebraError::UnknownVariable {
                        name: name.clone(),
                        pos: start,
                    })?;
                self.skip_ws();
                let mut exp = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let n = self.integer()?;
                    let digits = n.to_u32_digits();
                    if digits.0 == num_bigint::Sign::NoSign || digits.1.len() > 1 {
                        return Err(self.err("exponent must be a positive machine-size integer"));
                    }
                    exp = digits.1[0];
                    if exp == 0 {
                        return Err(self.err("exponent must be positive"));
                    }
                }
                let v = Polynomial::var(self.vars, idx, self.domain);
                Ok(v.pow(exp))
            }
            Some(b'/') => Err(AlgebraError::DivisionInInput { pos: self.pos }),
            Some(c) => Err(self.err(&format!("unexpected character `{}`", c as char))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse::<BigInt>().unwrap())
    }

    fn variable_name(&mut self) -> String {
        let start = self.pos;
        self.pos += 1; // leading letter checked by the caller
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::MonomialOrder;
    use crate::vars::BlockKind;

    fn table_ring() -> Arc<VariableSet> {
        VariableSet::new(&[
            ("base", BlockKind::Base, &["s", "t"]),
            (
                "x",
                BlockKind::Projective,
                &["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"],
            ),
        ])
        .unwrap()
    }

    #[test]
    fn parses_table_rows() {
        let vs = table_ring();
        let f = parse_poly("x0*x5 - x1*x2", &vs, Domain::Rational).unwrap();
        assert_eq!(f.num_terms(), 2);
        let g = parse_poly("s^2*x2^2 + 4*x0*x8 - x4^2", &vs, Domain::Rational).unwrap();
        assert_eq!(g.num_terms(), 3);
        let degrees: Vec<u32> = g.terms().map(|(m, _)| m.total_degree()).collect();
        let mut sorted = degrees.clone();
        sorted.sort();
        assert_eq!(sorted, vec![2, 2, 4]);
    }

    #[test]
    fn zero_literal_is_empty_map() {
        let vs = table_ring();
        let z = parse_poly("0", &vs, Domain::Rational).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn primes_in_variable_names() {
        let vs = VariableSet::simple(&["u", "v", "u'", "v'"]);
        let f = parse_poly("u*v' - u'*v", &vs, Domain::Rational).unwrap();
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn division_is_rejected_with_position() {
        let vs = table_ring();
        match parse_poly("x0/x1", &vs, Domain::Rational) {
            Err(AlgebraError::DivisionInInput { pos }) => assert_eq!(pos, 2),
            other => panic!("expected division error, got {:?}", other),
        }
    }

    #[test]
    fn unknown_variable_reports_name_and_position() {
        let vs = table_ring();
        match parse_poly("x0 + q2", &vs, Domain::Rational) {
            Err(AlgebraError::UnknownVariable { name, pos }) => {
                assert_eq!(name, "q2");
                assert_eq!(pos, 5);
            }
            other => panic!("expected unknown-variable error, got {:?}", other),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let vs = table_ring();
        assert!(matches!(
            parse_poly("x0 + ", &vs, Domain::Rational),
            Err(AlgebraError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("(x0", &vs, Domain::Rational),
            Err(AlgebraError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x0^0", &vs, Domain::Rational),
            Err(AlgebraError::Syntax { .. })
        ));
    }

    #[test]
    fn print_parse_roundtrip() {
        let vs = table_ring();
        let order = MonomialOrder::GrevLex;
        for text in [
            "x0*x5 - x1*x2",
            "4*t^2*x0^2 + s^2*x1*x2 - x3*x4",
            "s^2*t^2*x0*x5 - t^2*x3*x4 + 4*x7*x8",
            "-x0 + 3",
            "0",
        ] {
            let f = parse_poly(text, &vs, Domain::Rational).unwrap();
            let printed = f.grammar_text(&order).unwrap();
            let reparsed = parse_poly(&printed, &vs, Domain::Rational).unwrap();
            assert_eq!(f, reparsed, "round trip failed for {}", text);
        }
    }

    #[test]
    fn unary_minus_and_groups() {
        let vs = table_ring();
        let f = parse_poly("-x0*(x1 - x2)", &vs, Domain::Rational).unwrap();
        let g = parse_poly("x0*x2 - x0*x1", &vs, Domain::Rational).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parses_over_fp() {
        let vs = table_ring();
        let f = parse_poly("5*x0 + 1", &vs, Domain::fp(3).unwrap()).unwrap();
        let g = parse_poly("2*x0 + 1", &vs, Domain::fp(3).unwrap()).unwrap();
        assert_eq!(f, g);
    }
}
