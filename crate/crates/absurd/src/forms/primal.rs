//! Primal display forms: the signed prime-exponent map obtained by full
//! factorization, the pure/proper/tight/loose window variants, and the
//! single minimal-integer-base form built on the proper window.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::canon::{AbsurdNumber, Config};
use crate::numkernel::{factor_full, unsigned_parts, Rational};

use super::{integer_pow, sort_terms, DisplayForm, FormError, FormKind, FormTerm, Layout};

/// Signed prime-exponent map of a value. Radicands that resist the factoring
/// budget stay as opaque composite keys and clear `complete`.
pub(super) struct Primal {
    pub negative: bool,
    pub exps: BTreeMap<BigUint, Rational>,
    pub complete: bool,
}

pub(super) fn primal_exponents(a: &AbsurdNumber, cfg: &Config) -> Primal {
    debug_assert!(!a.is_zero());
    let mut p = Primal {
        negative: a.coefficient().is_negative(),
        exps: BTreeMap::new(),
        complete: true,
    };
    let (num, den) = unsigned_parts(a.coefficient());
    p.add_integer(&num, &Rational::one(), cfg);
    p.add_integer(&den, &(-Rational::one()), cfg);
    for f in a.factors() {
        p.add_integer(f.base(), f.exponent(), cfg);
    }
    p.exps.retain(|_, e| !e.is_zero());
    p
}

impl Primal {
    fn add_integer(&mut self, n: &BigUint, scale: &Rational, cfg: &Config) {
        if n.is_one() {
            return;
        }
        match factor_full(n, cfg.factor_budget()) {
            Some(fs) => {
                for (prime, mult) in fs {
                    let e = self.exps.entry(prime).or_insert_with(Rational::zero);
                    *e += scale * Rational::from_integer(BigInt::from(mult));
                }
            }
            None => {
                self.complete = false;
                let e = self.exps.entry(n.clone()).or_insert_with(Rational::zero);
                *e += scale;
            }
        }
    }
}

#[derive(Clone, Copy)]
pub(super) enum Window {
    Full,
    Proper,
    Tight,
    Loose,
}

/// Applies the window: for each base the integer shift that puts the
/// remaining exponent inside the window moves into the coefficient.
pub(super) fn windowed(p: &Primal, w: Window) -> (Rational, Vec<(BigUint, Rational)>) {
    let mut coefficient = if p.negative { -Rational::one() } else { Rational::one() };
    let mut terms = Vec::new();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for (base, e) in &p.exps {
        let shift: BigInt = match w {
            Window::Full => BigInt::zero(),
            Window::Proper => e.floor().to_integer(),
            Window::Tight => (e - &half).ceil().to_integer(),
            Window::Loose => e.trunc().to_integer(),
        };
        if !shift.is_zero() {
            coefficient *= integer_pow(base, &shift);
        }
        let adjusted = e - Rational::from_integer(shift);
        if !adjusted.is_zero() {
            terms.push((base.clone(), adjusted));
        }
    }
    if let Window::Loose = w {
        loose_fixups(&mut coefficient, &mut terms);
        terms.retain(|(_, e)| !e.is_zero());
    }
    (coefficient, terms)
}

/// A positive-exponent radicand dividing the coefficient's denominator (or a
/// negative one dividing its numerator) absorbs one copy of the base and
/// flips to the other side. One pass suffices: each absorption only sheds
/// factors from the coefficient, so no new divisibility can appear.
fn loose_fixups(coefficient: &mut Rational, terms: &mut [(BigUint, Rational)]) {
    for (base, e) in terms.iter_mut() {
        let b = Rational::from_integer(BigInt::from(base.clone()));
        if e.is_positive() && (coefficient.denom().magnitude() % &*base).is_zero() {
            *coefficient *= &b;
            *e -= Rational::one();
        } else if e.is_negative() && (coefficient.numer().magnitude() % &*base).is_zero() {
            *coefficient /= &b;
            *e += Rational::one();
        }
    }
}

pub(super) fn primal_form(
    a: &AbsurdNumber,
    cfg: &Config,
    window: Window,
    kind: FormKind,
) -> Result<DisplayForm, FormError> {
    if a.is_zero() {
        return Ok(DisplayForm::plain(kind, a.coefficient()));
    }
    let primal = primal_exponents(a, cfg);
    let (coefficient, windowed_terms) = windowed(&primal, window);
    let mut terms: Vec<FormTerm> = windowed_terms
        .into_iter()
        .map(|(base, exponent)| FormTerm {
            base: Rational::from_integer(BigInt::from(base)),
            exponent,
        })
        .collect();
    sort_terms(&mut terms);
    let form = DisplayForm { kind, coefficient, terms, layout: Layout::Product };
    if primal.complete {
        Ok(form)
    } else {
        Err(FormError::FactoringBudgetExhausted { partial: form })
    }
}

/// Unifies every fractional power of the proper primal form at the common
/// exponent denominator, then divides out the gcd of the unified integer
/// exponents; the remaining radicand is the least integer whose proper
/// rational power equals the irrational part.
pub(super) fn single_min_int_base(
    a: &AbsurdNumber,
    cfg: &Config,
) -> Result<DisplayForm, FormError> {
    let kind = FormKind::SingleMinIntBaseProper;
    if a.is_zero() || a.is_rational() {
        return Ok(DisplayForm::plain(kind, a.coefficient()));
    }
    let primal = primal_exponents(a, cfg);
    let (coefficient, terms) = windowed(&primal, Window::Proper);
    debug_assert!(!terms.is_empty());
    let l = terms
        .iter()
        .fold(BigInt::one(), |acc, (_, e)| acc.lcm(e.denom()));
    let unified: Vec<(BigUint, BigInt)> = terms
        .iter()
        .map(|(b, e)| {
            let t = e * Rational::from_integer(l.clone());
            debug_assert!(t.denom().is_one());
            (b.clone(), t.to_integer())
        })
        .collect();
    let g = unified.iter().fold(BigInt::zero(), |acc, (_, t)| acc.gcd(t));
    let mut radicand = BigUint::one();
    for (b, t) in &unified {
        let k = (t / &g).to_u32().expect("display exponent too large");
        radicand *= b.pow(k);
    }
    let form = DisplayForm {
        kind,
        coefficient,
        terms: vec![FormTerm {
            base: Rational::from_integer(BigInt::from(radicand)),
            exponent: Rational::new(g, l),
        }],
        layout: Layout::Product,
    };
    if primal.complete {
        Ok(form)
    } else {
        Err(FormError::FactoringBudgetExhausted { partial: form })
    }
}
