//! Recursive-descent parser for polynomial and operator literals.
//!
//! Grammar: integers and rationals (`3`, `-5/2`), the coupling symbol `b`,
//! the formal count `N`, generators `p<k>`, derivatives `d<k>`, coordinates
//! `x<k>`, the operators `+ - * ^`, and parentheses. Products of operator
//! symbols multiply as operators (derivatives reorder past multiplications
//! with the product rule), so `d1*p1` parses to `p1*d1 + 1`.
//!
//! Printing any value of this crate and parsing it back reproduces the
//! value exactly.

use crate::error::{CoreError, Result};
use crate::pdiffop::PDiffOp;
use crate::ppoly::{PMono, PPoly};
use crate::rat::Rat;
use crate::scalar::BetaScalar;
use crate::xpoly::XPoly;

#[derive(Clone, Debug, PartialEq)]
enum Ast {
    Num(Rat),
    Beta,
    FormalN,
    P(u32),
    D(u32),
    X(u32),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> CoreError {
        CoreError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().map_err(|_| self.err("number too large"))
    }

    fn parse_expr(&mut self) -> Result<Ast> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = Ast::Add(Box::new(acc), Box::new(rhs));
                }
                Some(b'-') => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = Ast::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Ast> {
        let mut acc = self.parse_factor()?;
        while let Some(b'*') = self.peek() {
            self.bump();
            let rhs = self.parse_factor()?;
            acc = Ast::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Ast> {
        if let Some(b'-') = self.peek() {
            self.bump();
            let inner = self.parse_factor()?;
            return Ok(Ast::Neg(Box::new(inner)));
        }
        let mut base = self.parse_atom()?;
        if let Some(b'^') = self.peek() {
            self.bump();
            let e = self.parse_uint()?;
            if e > u32::MAX as u64 {
                return Err(self.err("exponent too large"));
            }
            base = Ast::Pow(Box::new(base), e as u32);
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => Err(self.err("expected closing parenthesis")),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_uint()?;
                if let Some(b'/') = self.peek() {
                    self.bump();
                    let den = self.parse_uint()?;
                    if den == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    Ok(Ast::Num(Rat::new((num as i64).into(), (den as i64).into())))
                } else {
                    Ok(Ast::Num(Rat::from_integer((num as i64).into())))
                }
            }
            Some(b'b') => {
                self.bump();
                Ok(Ast::Beta)
            }
            Some(b'N') => {
                self.bump();
                Ok(Ast::FormalN)
            }
            Some(b'p') => {
                self.bump();
                let k = self.parse_uint()?;
                Ok(Ast::P(k as u32))
            }
            Some(b'd') => {
                self.bump();
                let k = self.parse_uint()?;
                if k == 0 {
                    return Err(self.err("no derivative in the zero mode"));
                }
                Ok(Ast::D(k as u32))
            }
            Some(b'x') => {
                self.bump();
                let k = self.parse_uint()?;
                if k == 0 {
                    return Err(self.err("coordinates are indexed from one"));
                }
                Ok(Ast::X(k as u32))
            }
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn parse_ast(text: &str) -> Result<Ast> {
    let mut p = Parser::new(text);
    let ast = p.parse_expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(ast)
}

fn max_x_index(ast: &Ast) -> u32 {
    match ast {
        Ast::X(k) => *k,
        Ast::Neg(a) | Ast::Pow(a, _) => max_x_index(a),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => {
            max_x_index(a).max(max_x_index(b))
        }
        _ => 0,
    }
}

fn has_symbol(ast: &Ast, want_x: bool, want_d: bool) -> bool {
    match ast {
        Ast::X(_) => want_x,
        Ast::D(_) => want_d,
        Ast::Neg(a) | Ast::Pow(a, _) => has_symbol(a, want_x, want_d),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => {
            has_symbol(a, want_x, want_d) || has_symbol(b, want_x, want_d)
        }
        _ => false,
    }
}

fn eval_xpoly(ast: &Ast, nvars: usize) -> Result<XPoly> {
    Ok(match ast {
        Ast::Num(r) => XPoly::constant(nvars, BetaScalar::from_rat(r.clone())),
        Ast::Beta => XPoly::constant(nvars, BetaScalar::beta()),
        Ast::FormalN => XPoly::constant(nvars, BetaScalar::formal_n()),
        Ast::X(k) => {
            if *k as usize > nvars {
                return Err(CoreError::Parse {
                    pos: 0,
                    msg: format!("x{} exceeds the variable count {}", k, nvars),
                });
            }
            XPoly::var(nvars, *k as usize)
        }
        Ast::P(_) | Ast::D(_) => {
            return Err(CoreError::Parse {
                pos: 0,
                msg: "generator symbols in a coordinate polynomial".into(),
            })
        }
        Ast::Neg(a) => -&eval_xpoly(a, nvars)?,
        Ast::Add(a, b) => &eval_xpoly(a, nvars)? + &eval_xpoly(b, nvars)?,
        Ast::Sub(a, b) => &eval_xpoly(a, nvars)? - &eval_xpoly(b, nvars)?,
        Ast::Mul(a, b) => &eval_xpoly(a, nvars)? * &eval_xpoly(b, nvars)?,
        Ast::Pow(a, e) => {
            let base = eval_xpoly(a, nvars)?;
            let mut acc = XPoly::one(nvars);
            for _ in 0..*e {
                acc = &acc * &base;
            }
            acc
        }
    })
}

fn eval_ppoly(ast: &Ast) -> Result<PPoly> {
    Ok(match ast {
        Ast::Num(r) => PPoly::constant(BetaScalar::from_rat(r.clone())),
        Ast::Beta => PPoly::constant(BetaScalar::beta()),
        Ast::FormalN => PPoly::constant(BetaScalar::formal_n()),
        Ast::P(k) => PPoly::gen(*k),
        Ast::X(_) | Ast::D(_) => {
            return Err(CoreError::Parse {
                pos: 0,
                msg: "coordinate or derivative symbols in a generator polynomial".into(),
            })
        }
        Ast::Neg(a) => -&eval_ppoly(a)?,
        Ast::Add(a, b) => &eval_ppoly(a)? + &eval_ppoly(b)?,
        Ast::Sub(a, b) => &eval_ppoly(a)? - &eval_ppoly(b)?,
        Ast::Mul(a, b) => &eval_ppoly(a)? * &eval_ppoly(b)?,
        Ast::Pow(a, e) => {
            let base = eval_ppoly(a)?;
            let mut acc = PPoly::one();
            for _ in 0..*e {
                acc = &acc * &base;
            }
            acc
        }
    })
}

fn eval_pdiffop(ast: &Ast) -> Result<PDiffOp> {
    Ok(match ast {
        Ast::Num(r) => PDiffOp::scalar(BetaScalar::from_rat(r.clone())),
        Ast::Beta => PDiffOp::scalar(BetaScalar::beta()),
        Ast::FormalN => PDiffOp::scalar(BetaScalar::formal_n()),
        Ast::P(k) => PDiffOp::mult_by(&PPoly::gen(*k)),
        Ast::D(k) => PDiffOp::term(
            BetaScalar::one(),
            0,
            PMono::one(),
            PMono::single(*k),
        ),
        Ast::X(_) => {
            return Err(CoreError::Parse {
                pos: 0,
                msg: "coordinate symbols in an operator".into(),
            })
        }
        Ast::Neg(a) => eval_pdiffop(a)?.scale(&BetaScalar::from_int(-1)),
        Ast::Add(a, b) => eval_pdiffop(a)?.add(&eval_pdiffop(b)?),
        Ast::Sub(a, b) => eval_pdiffop(a)?.sub(&eval_pdiffop(b)?),
        Ast::Mul(a, b) => eval_pdiffop(a)?.mul(&eval_pdiffop(b)?),
        Ast::Pow(a, e) => {
            let base = eval_pdiffop(a)?;
            let mut acc = PDiffOp::identity();
            for _ in 0..*e {
                acc = acc.mul(&base);
            }
            acc
        }
    })
}

/// A parsed literal, classified by the symbols it uses.
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Coordinates(XPoly),
    Generators(PPoly),
    Operator(PDiffOp),
}

/// Parse a literal and classify it: coordinate symbols give a coordinate
/// polynomial, derivative symbols an operator, anything else a generator
/// polynomial.
pub fn parse_poly(text: &str) -> Result<Parsed> {
    let ast = parse_ast(text)?;
    if has_symbol(&ast, true, false) {
        if has_symbol(&ast, false, true) {
            return Err(CoreError::Parse {
                pos: 0,
                msg: "coordinates and derivatives cannot mix".into(),
            });
        }
        let n = max_x_index(&ast) as usize;
        return Ok(Parsed::Coordinates(eval_xpoly(&ast, n)?));
    }
    if has_symbol(&ast, false, true) {
        return Ok(Parsed::Operator(eval_pdiffop(&ast)?));
    }
    Ok(Parsed::Generators(eval_ppoly(&ast)?))
}

/// Parse a coordinate polynomial with an explicit variable count.
pub fn parse_xpoly(text: &str, nvars: usize) -> Result<XPoly> {
    eval_xpoly(&parse_ast(text)?, nvars)
}

/// Parse a generator polynomial.
pub fn parse_ppoly(text: &str) -> Result<PPoly> {
    eval_ppoly(&parse_ast(text)?)
}

/// Parse an operator literal.
pub fn parse_pdiffop(text: &str) -> Result<PDiffOp> {
    eval_pdiffop(&parse_ast(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn basic_literals() {
        // the quadratic elementary numerator
        let e2_num = parse_ppoly("p1^2 - p2").unwrap();
        assert_eq!(
            e2_num,
            &(&PPoly::gen(1) * &PPoly::gen(1)) - &PPoly::gen(2)
        );
        // normalization merges equal monomials
        let x = parse_xpoly("x1*x2 + x2*x1", 2).unwrap();
        assert_eq!(
            x,
            (&XPoly::var(2, 1) * &XPoly::var(2, 2)).scale_rat(&rat_int(2))
        );
        // scaled zero-mode term
        let op = parse_ppoly("(1+2*b)*p0").unwrap();
        assert_eq!(op, PPoly::gen(0).scale(&crate::scalar::bpoly(&[1, 2])));
    }

    #[test]
    fn operator_product_reorders() {
        let lhs = parse_pdiffop("d1*p1").unwrap();
        let rhs = parse_pdiffop("p1*d1 + 1").unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn classification() {
        assert!(matches!(parse_poly("x1 - x2"), Ok(Parsed::Coordinates(_))));
        assert!(matches!(parse_poly("p1*p2"), Ok(Parsed::Generators(_))));
        assert!(matches!(parse_poly("p2*d1"), Ok(Parsed::Operator(_))));
        assert!(parse_poly("x1*d1").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_ppoly("p1 + + p2") {
            Err(CoreError::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected a parse error, got {:?}", other),
        }
        assert!(parse_ppoly("d0").is_err());
        assert!(parse_ppoly("1/0").is_err());
        assert!(parse_ppoly("p1 p2").is_err());
    }

    #[test]
    fn round_trip_printed_forms() {
        for text in [
            "p3 + 2*p1^2 - 1/2*p2",
            "(1 + 2*b)*p2 - b^2*p1",
            "3/2*b*N^2*p0^2*p1",
        ] {
            let v = parse_ppoly(text).unwrap();
            let printed = v.to_string();
            assert_eq!(parse_ppoly(&printed).unwrap(), v, "printed {:?}", printed);
        }
        let op = parse_pdiffop("p2*d1^2 + (1+b)*p1*p1*d2").unwrap();
        assert_eq!(parse_pdiffop(&op.to_string()).unwrap(), op);
    }
}
