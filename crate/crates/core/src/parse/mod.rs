//! Element literals and term expressions.
//!
//! Both share one grammar: integers, `X`, `n`, `+ - * / ^` and parentheses,
//! with `^` binding tightest, then unary minus, then `* /`, then `+ -`.
//! Exponents are non-negative integers or affine forms `a*n+b`.

mod expr;
mod lexer;

use num_bigint::BigUint;

pub use expr::{parse_term_expression, EvalError, Exponent, Literal, Node, TermExpression};

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::order::OrderedHemiring;

/// Parses element text in structure `s`.
pub fn parse_element_in<S: OrderedHemiring + ?Sized>(s: &S, text: &str) -> std::result::Result<S::Elem, ParseError> {
    let expr = TermExpression::parse(text)?;
    if expr.mentions_index() {
        let pos = text.find('n').unwrap_or(0);
        return Err(ParseError::syntax(pos, "the index variable n cannot appear in an element"));
    }
    let lit = expr.evaluate_literal(None).map_err(|e| match e {
        EvalError::DivisionByZero { position } => {
            ParseError::new(ParseErrorKind::NonCanonicalizable, position, "zero denominator")
        }
        EvalError::TooExpensive(msg) => ParseError::syntax(0, msg),
        EvalError::FreeIndex => ParseError::syntax(0, "free index variable"),
    })?;
    s.from_literal(&lit)
}

/// Evaluates `expr` at index `n` in structure `s`.
pub fn evaluate_term<S: OrderedHemiring + ?Sized>(expr: &TermExpression, n: &BigUint, s: &S) -> Result<S::Elem> {
    let lit = expr.evaluate_literal(Some(n)).map_err(|e| match e {
        EvalError::DivisionByZero { .. } => Error::DivisionByZero,
        EvalError::TooExpensive(msg) => Error::TooExpensive(msg),
        EvalError::FreeIndex => Error::NotApplicable("free index variable".into()),
    })?;
    Ok(s.from_literal(&lit)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{rat, IntegerPolynomial, RationalField, RationalFunction, Z1pElem, Z1pRing, ZxField};

    #[test]
    fn element_examples() {
        assert_eq!(parse_element_in(&RationalField, "(-7)/8").unwrap(), rat(-7, 8));
        let f = parse_element_in(&ZxField, "(3*X^2+1)/(X-2)").unwrap();
        assert_eq!(f.num(), &IntegerPolynomial::from_i64(&[1, 0, 3]));
        assert_eq!(f.den(), &IntegerPolynomial::from_i64(&[-2, 1]));
        let z = Z1pRing::new(2).unwrap();
        assert_eq!(parse_element_in(&z, "5/8").unwrap(), Z1pElem { m: 5.into(), n: 3 });
    }

    #[test]
    fn element_errors() {
        assert_eq!(
            parse_element_in(&RationalField, "X+1").unwrap_err().kind,
            ParseErrorKind::WrongStructure
        );
        let err = parse_element_in(&RationalField, "3/0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NonCanonicalizable);
        assert_eq!(err.position, 1);
        let z = Z1pRing::new(2).unwrap();
        assert_eq!(parse_element_in(&z, "1/3").unwrap_err().kind, ParseErrorKind::WrongStructure);
        assert_eq!(parse_element_in(&RationalField, "n").unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(parse_element_in(&RationalField, "1 +").unwrap_err().position, 3);
    }

    #[test]
    fn term_evaluation_in_zx() {
        let e = parse_term_expression("(1/X)^n").unwrap();
        let v = evaluate_term(&e, &BigUint::from(2u32), &ZxField).unwrap();
        assert_eq!(v, RationalFunction::x().pow(2).invert().unwrap());
    }

    #[test]
    fn render_parse_round_trip() {
        for text in ["(3*X^2+1)/(X-2)", "2/(5*X)", "X-1000", "-2*X+1", "1/X^5", "X/(X-1)"] {
            let f = parse_element_in(&ZxField, text).unwrap();
            assert_eq!(f.to_string(), text);
        }
    }
}
