//! Expression parsing and exact simplification into a sum of pairwise
//! incommensurable absurd numbers.

mod parser;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::canon::{AbsurdNumber, Approximation, ArithmeticError, Commensurability, Config};
use crate::numkernel::Rational;

/// Abstract syntax of the input language. `sqrt(x)` parses as `Pow(x, 1/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at byte {pos}")]
    Syntax { pos: usize },
    #[error("exponent does not evaluate to a rational constant")]
    NonRationalExponent,
    #[error("indeterminate (0/0)")]
    Indeterminate,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot divide by a multi-term sum")]
    UnsupportedDenominator,
    #[error("cannot take a fractional power of a multi-term sum")]
    UnsupportedRadicand,
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

/// A sum of pairwise incommensurable nonzero absurd numbers, in a fixed
/// order; the empty sum is zero. Equality of values is structural equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumOfAbsurds {
    terms: Vec<AbsurdNumber>,
}

impl SumOfAbsurds {
    pub fn zero() -> Self {
        SumOfAbsurds { terms: Vec::new() }
    }

    pub fn from_absurd(a: AbsurdNumber) -> Self {
        if a.is_zero() {
            Self::zero()
        } else {
            SumOfAbsurds { terms: vec![a] }
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::from_absurd(AbsurdNumber::from_rational(r))
    }

    /// Merges commensurate terms, drops zeros, and fixes the order.
    pub fn from_terms(terms: Vec<AbsurdNumber>, cfg: &Config) -> Self {
        let mut merged: Vec<AbsurdNumber> = Vec::new();
        'outer: for t in terms {
            if t.is_zero() {
                continue;
            }
            for i in 0..merged.len() {
                if let Commensurability::Commensurate(sum) = merged[i].add(&t, cfg) {
                    if sum.is_zero() {
                        merged.remove(i);
                    } else {
                        merged[i] = sum;
                    }
                    continue 'outer;
                }
            }
            merged.push(t);
        }
        merged.sort_by(|a, b| term_key(a).cmp(&term_key(b)));
        SumOfAbsurds { terms: merged }
    }

    pub fn terms(&self) -> &[AbsurdNumber] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The sum as one absurd number, when it has at most one term.
    pub fn single(&self) -> Option<AbsurdNumber> {
        match self.terms.len() {
            0 => Some(AbsurdNumber::zero()),
            1 => Some(self.terms[0].clone()),
            _ => None,
        }
    }

    /// The sum as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        let single = self.single()?;
        single.is_rational().then(|| single.coefficient().clone())
    }

    pub fn neg(&self) -> Self {
        SumOfAbsurds { terms: self.terms.iter().map(AbsurdNumber::neg).collect() }
    }

    pub fn add(&self, other: &Self, cfg: &Config) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(terms, cfg)
    }

    pub fn sub(&self, other: &Self, cfg: &Config) -> Self {
        self.add(&other.neg(), cfg)
    }

    pub fn mul(&self, other: &Self, cfg: &Config) -> Self {
        let mut products = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                products.push(a.mul(b, cfg));
            }
        }
        Self::from_terms(products, cfg)
    }

    /// Multiplies every term by one absurd number.
    pub fn scale(&self, m: &AbsurdNumber, cfg: &Config) -> Self {
        Self::from_terms(self.terms.iter().map(|t| t.mul(m, cfg)).collect(), cfg)
    }

    pub fn pow(&self, alpha: &Rational, cfg: &Config) -> Result<Self, ExprError> {
        if let Some(single) = self.single() {
            let powered = single.pow(alpha, cfg).map_err(|e| match e {
                ArithmeticError::ZeroToNegativePower => ExprError::DivisionByZero,
                other => ExprError::Arithmetic(other),
            })?;
            return Ok(Self::from_absurd(powered));
        }
        if !alpha.denom().is_one() {
            return Err(ExprError::UnsupportedRadicand);
        }
        let k = alpha
            .numer()
            .to_i64()
            .filter(|k| k.unsigned_abs() <= 4096)
            .ok_or(ExprError::Arithmetic(ArithmeticError::ExponentTooLarge))?;
        let mut acc = Self::from_rational(&Rational::from_integer(BigInt::from(1)));
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(self, cfg);
        }
        if k < 0 {
            let single = acc.single().ok_or(ExprError::UnsupportedDenominator)?;
            let inverted = single.pow(&-Rational::from_integer(BigInt::from(1)), cfg)?;
            return Ok(Self::from_absurd(inverted));
        }
        Ok(acc)
    }

    pub fn equals(&self, other: &Self, cfg: &Config) -> bool {
        self.sub(other, cfg).is_zero()
    }

    /// Sum of the terms' interval evaluations; errors add up.
    pub fn eval_approx(&self, precision_bits: u32) -> Approximation {
        let mut value = Rational::zero();
        let mut error = Rational::zero();
        for t in &self.terms {
            let a = t.eval_approx(precision_bits);
            value += a.value;
            error += a.error;
        }
        Approximation { value, error }
    }
}

/// Deterministic ordering: by factor list, then by coefficient; rational
/// terms (empty factor lists) come first.
fn term_key(a: &AbsurdNumber) -> (Vec<(BigUint, Rational)>, Rational) {
    let factors = a
        .factors()
        .iter()
        .map(|f| (f.base().clone(), f.exponent().clone()))
        .collect();
    (factors, a.coefficient().clone())
}

impl fmt::Display for SumOfAbsurds {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(w, "0");
        }
        let joined: Vec<String> = self.terms.iter().map(|t| t.canonical_string()).collect();
        write!(w, "{}", joined.join(" + "))
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    parser::parse(src)
}

pub fn simplify(e: &Expr, cfg: &Config) -> Result<SumOfAbsurds, ExprError> {
    match e {
        Expr::Number(r) => Ok(SumOfAbsurds::from_rational(r)),
        Expr::Neg(x) => Ok(simplify(x, cfg)?.neg()),
        Expr::Add(a, b) => Ok(simplify(a, cfg)?.add(&simplify(b, cfg)?, cfg)),
        Expr::Sub(a, b) => Ok(simplify(a, cfg)?.sub(&simplify(b, cfg)?, cfg)),
        Expr::Mul(a, b) => Ok(simplify(a, cfg)?.mul(&simplify(b, cfg)?, cfg)),
        Expr::Div(a, b) => {
            let num = simplify(a, cfg)?;
            let den = simplify(b, cfg)?;
            if den.is_zero() {
                return Err(if num.is_zero() {
                    ExprError::Indeterminate
                } else {
                    ExprError::DivisionByZero
                });
            }
            let d = den.single().ok_or(ExprError::UnsupportedDenominator)?;
            let inv = d.pow(&-Rational::from_integer(BigInt::from(1)), cfg)?;
            Ok(num.scale(&inv, cfg))
        }
        Expr::Pow(b, e) => {
            let alpha = simplify(e, cfg)?
                .as_rational()
                .ok_or(ExprError::NonRationalExponent)?;
            simplify(b, cfg)?.pow(&alpha, cfg)
        }
    }
}

/// Parses and simplifies in one step.
pub fn evaluate(src: &str, cfg: &Config) -> Result<SumOfAbsurds, ExprError> {
    simplify(&parse(src)?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::rational;

    fn cfg() -> Config {
        Config::default()
    }

    fn eval(src: &str) -> SumOfAbsurds {
        evaluate(src, &cfg()).unwrap_or_else(|e| panic!("{src}: {e}"))
    }

    fn eval_err(src: &str) -> ExprError {
        evaluate(src, &cfg()).expect_err(src)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(eval("2+3*4^(1/2)").as_rational(), Some(rational(8, 1)));
        assert_eq!(eval("-2^2").as_rational(), Some(rational(-4, 1)));
        assert_eq!(eval("(-2)^2").as_rational(), Some(rational(4, 1)));
        assert_eq!(eval("2^3^2").as_rational(), Some(rational(512, 1)));
        assert_eq!(eval("8/4/2").as_rational(), Some(rational(1, 1)));
        assert_eq!(eval("2-3-4").as_rational(), Some(rational(-5, 1)));
        assert_eq!(eval("-2*3").as_rational(), Some(rational(-6, 1)));
        assert_eq!(eval("2^-2").as_rational(), Some(rational(1, 4)));
    }

    #[test]
    fn sqrt_desugars_to_half_power() {
        assert_eq!(eval("sqrt(2)*sqrt(2)").as_rational(), Some(rational(2, 1)));
        assert_eq!(eval("sqrt(8)").to_string(), "2/1*2^1/2");
        assert!(eval("sqrt(2)").equals(&eval("2^(1/2)"), &cfg()));
    }

    #[test]
    fn surd_differences_cancel() {
        assert!(eval("sqrt(12)-2*sqrt(3)").is_zero());
        assert!(eval("sqrt(2)+sqrt(3)-sqrt(3)-sqrt(2)").is_zero());
        assert!(eval("(sqrt(2)+sqrt(3))*(sqrt(2)-sqrt(3))+1").is_zero());
    }

    #[test]
    fn sums_keep_incommensurate_terms_sorted() {
        let s = eval("sqrt(3)+1/2+sqrt(2)");
        assert_eq!(s.terms().len(), 3);
        assert_eq!(s.to_string(), "1/2 + 1/1*2^1/2 + 1/1*3^1/2");
        let square = eval("(1+sqrt(2))^2");
        assert_eq!(square.to_string(), "3/1 + 2/1*2^1/2");
    }

    #[test]
    fn division_by_sums_and_zero() {
        assert_eq!(eval_err("2/(3-3)"), ExprError::DivisionByZero);
        assert_eq!(eval_err("(2-2)/(3-3)"), ExprError::Indeterminate);
        assert_eq!(eval_err("0/0"), ExprError::Indeterminate);
        assert_eq!(eval_err("1/(1+sqrt(2))"), ExprError::UnsupportedDenominator);
        assert_eq!(eval_err("0^-1"), ExprError::DivisionByZero);
        assert_eq!(eval("0^0").as_rational(), Some(rational(1, 1)));
    }

    #[test]
    fn exponent_restrictions() {
        assert_eq!(eval_err("2^sqrt(2)"), ExprError::NonRationalExponent);
        assert_eq!(eval_err("2^(1+sqrt(2))"), ExprError::NonRationalExponent);
        assert_eq!(eval_err("sqrt(1+sqrt(2))"), ExprError::UnsupportedRadicand);
        assert_eq!(
            eval_err("(-2)^(1/2)"),
            ExprError::Arithmetic(ArithmeticError::NegativeBaseFractionalPower)
        );
        assert_eq!(eval("(-2)^3").as_rational(), Some(rational(-8, 1)));
        assert_eq!(eval("(1+sqrt(2))^0").as_rational(), Some(rational(1, 1)));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(eval_err("2**3"), ExprError::Syntax { pos: 2 });
        assert_eq!(eval_err("2 3"), ExprError::Syntax { pos: 2 });
        assert_eq!(eval_err("sqet(2)"), ExprError::Syntax { pos: 0 });
        assert_eq!(eval_err(""), ExprError::Syntax { pos: 0 });
        assert_eq!(eval_err("(1+2"), ExprError::Syntax { pos: 4 });
        assert_eq!(eval_err("1+2)"), ExprError::Syntax { pos: 3 });
        assert_eq!(eval_err("2^"), ExprError::Syntax { pos: 2 });
    }

    #[test]
    fn quadratic_identity_expansion() {
        // (Fibonacci-style) golden ratio check: x = (1+sqrt(5))/2 satisfies
        // x^2 - x - 1 = 0.
        assert!(eval("((1+sqrt(5))/2)^2 - (1+sqrt(5))/2 - 1").is_zero());
    }

    #[test]
    fn display_form_strings_reparse_to_the_same_value() {
        let strings = [
            "2^(4/3)*3^(-2/3)*5^(-2/3)*7^(2/3)",
            "2/15*2^(1/3)*3^(1/3)*5^(1/3)*7^(2/3)",
            "14/15*(30/7)^(1/3)",
            "1/15*11760^(1/3)",
            "11760^(1/3)/15",
            "2/15*1470^(1/3)",
            "-(28/15)^(2/3)",
            "225^(-1/3)*784^(1/3)",
        ];
        let reference = eval("(28/15)^(2/3)");
        for s in strings {
            let parsed = eval(s);
            let target = if s.starts_with('-') { reference.neg() } else { reference.clone() };
            assert!(parsed.equals(&target, &cfg()), "{s} drifted");
        }
    }
}
