//! Coprime square-free display forms: primes from a windowed primal form are
//! grouped by exact exponent and multiplied, so bases stay coprime and
//! square-free while exponents stay distinct. The rational-base variants
//! additionally merge a positive/negative exponent pair into one rational
//! base.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::canon::{AbsurdNumber, Config};
use crate::numkernel::Rational;

use super::primal::{primal_exponents, windowed, Window};
use super::{rat_pow, sort_terms, DisplayForm, FormError, FormKind, FormTerm, Layout};

pub(super) fn coprime_sqfree(
    a: &AbsurdNumber,
    kind: FormKind,
    cfg: &Config,
) -> Result<DisplayForm, FormError> {
    use FormKind::*;
    let window = match kind {
        CoprimeSqfreeIntDistinct | CoprimeSqfreeRatProper => Window::Full,
        CoprimeSqfreeIntProper => Window::Proper,
        CoprimeSqfreeIntTight | CoprimeSqfreeRatTight => Window::Tight,
        CoprimeSqfreeIntLoose => Window::Loose,
        _ => panic!("not a coprime square-free kind: {kind:?}"),
    };
    if a.is_zero() {
        return Ok(DisplayForm::plain(kind, a.coefficient()));
    }
    let primal = primal_exponents(a, cfg);
    let (mut coefficient, windowed_terms) = windowed(&primal, window);
    let groups = group_by_exponent(windowed_terms);
    let grouped = match kind {
        CoprimeSqfreeRatProper => {
            let merged = merge_sign_pairs(groups);
            let floored = floor_extract(merged, &mut coefficient);
            regroup(floored)
        }
        CoprimeSqfreeRatTight => regroup(merge_sign_pairs(groups)),
        _ => groups,
    };
    let mut terms: Vec<FormTerm> = grouped
        .into_iter()
        .map(|(base, exponent)| FormTerm { base, exponent })
        .collect();
    sort_terms(&mut terms);
    let form = DisplayForm { kind, coefficient, terms, layout: Layout::Product };
    if primal.complete {
        Ok(form)
    } else {
        Err(FormError::FactoringBudgetExhausted { partial: form })
    }
}

/// Multiplies together all bases sharing an exact exponent. Inputs are
/// pairwise coprime, so the products stay coprime and square-free.
fn group_by_exponent(terms: Vec<(BigUint, Rational)>) -> Vec<(Rational, Rational)> {
    let mut groups: BTreeMap<Rational, BigUint> = BTreeMap::new();
    for (base, e) in terms {
        let slot = groups.entry(e).or_insert_with(BigUint::one);
        *slot *= base;
    }
    groups
        .into_iter()
        .map(|(e, b)| (Rational::from_integer(BigInt::from(b)), e))
        .collect()
}

/// Combines the bases of a +e/-e exponent pair into one rational base at the
/// positive exponent. Exponents are distinct, so each magnitude has at most
/// one base on each side.
fn merge_sign_pairs(groups: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    let mut by_magnitude: BTreeMap<Rational, (Option<Rational>, Option<Rational>)> =
        BTreeMap::new();
    for (base, e) in groups {
        let slot = by_magnitude.entry(e.abs()).or_default();
        if e.is_positive() {
            slot.0 = Some(base);
        } else {
            slot.1 = Some(base);
        }
    }
    by_magnitude
        .into_iter()
        .map(|(mag, sides)| match sides {
            (Some(p), Some(n)) => (p / n, mag),
            (Some(p), None) => (p, mag),
            (None, Some(n)) => (n, -mag),
            (None, None) => unreachable!(),
        })
        .collect()
}

/// Moves the integer part of each exponent into the coefficient.
fn floor_extract(
    terms: Vec<(Rational, Rational)>,
    coefficient: &mut Rational,
) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for (base, e) in terms {
        let whole = e.floor().to_integer();
        if !whole.is_zero() {
            *coefficient *= rat_pow(&base, &whole);
        }
        let frac = e - Rational::from_integer(whole);
        if !frac.is_zero() {
            out.push((base, frac));
        }
    }
    out
}

/// Re-merges bases whose exponents collided after an adjustment.
fn regroup(terms: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    let mut groups: BTreeMap<Rational, Rational> = BTreeMap::new();
    for (base, e) in terms {
        let slot = groups.entry(e).or_insert_with(Rational::one);
        *slot *= base;
    }
    groups.into_iter().map(|(e, b)| (b, e)).collect()
}
