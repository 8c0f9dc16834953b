//! Display forms that never factor: perfect-power folding of the canonical
//! representation yields a single radicand (or one per ratio side) whose
//! root extraction is the only number theory involved.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::canon::{AbsurdNumber, Config};
use crate::numkernel::{
    gcd_rational, max_perfect_power, max_perfect_power_rational, max_reciprocal_root,
    unsigned_parts, Rational,
};

use super::{integer_pow, rat_pow, sort_terms, DisplayForm, FormKind, FormTerm, Layout};

fn sign_unit(a: &AbsurdNumber) -> Rational {
    if a.coefficient().is_negative() {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Divides out gamma, the gcd of all exponents with the coefficient folded
/// in as exponent-1 content: |a| == r^gamma with r a positive rational given
/// by integer powers of the coefficient and bases.
fn gamma_fold(a: &AbsurdNumber) -> (Rational, Rational) {
    let mut gamma: Option<Rational> = None;
    for f in a.factors() {
        gamma = Some(match gamma {
            Some(g) => gcd_rational(&g, f.exponent()),
            None => f.exponent().clone(),
        });
    }
    let mut gamma = gamma.expect("an irrational value has factors");
    let c = a.coefficient().abs();
    if !c.is_one() {
        gamma = gcd_rational(&gamma, &Rational::one());
    }
    let mut r = if c.is_one() {
        Rational::one()
    } else {
        let k = Rational::one() / &gamma;
        debug_assert!(k.denom().is_one());
        rat_pow(&c, &k.to_integer())
    };
    for f in a.factors() {
        let k = f.exponent() / &gamma;
        debug_assert!(k.denom().is_one());
        r *= integer_pow(f.base(), &k.to_integer());
    }
    (r, gamma)
}

/// Single positive power of a positive rational that is not a perfect power.
pub(super) fn imperfect_single(a: &AbsurdNumber, cfg: &Config) -> DisplayForm {
    let kind = FormKind::ImperfectSingle;
    if a.is_zero() || a.is_rational() {
        return DisplayForm::plain(kind, a.coefficient());
    }
    let (r, gamma) = gamma_fold(a);
    let (root, k) = max_perfect_power_rational(&r, cfg.primality_fast_path());
    let exponent = gamma * Rational::from_integer(BigInt::from(k));
    DisplayForm {
        kind,
        coefficient: sign_unit(a),
        terms: vec![FormTerm { base: root, exponent }],
        layout: Layout::Product,
    }
}

/// Single power of a positive rational with a unit-fraction exponent whose
/// denominator is as small as possible.
pub(super) fn max_reciprocal_single(a: &AbsurdNumber, cfg: &Config) -> DisplayForm {
    let _ = cfg;
    let kind = FormKind::MaxReciprocalSingle;
    if a.is_zero() || a.is_rational() {
        return DisplayForm::plain(kind, a.coefficient());
    }
    let (r, gamma) = gamma_fold(a);
    let (radicand, d) = max_reciprocal_root(&r, &gamma);
    if d == 1 {
        // The whole power collapsed to a rational; unreachable for an
        // irrational input, kept as a safety net.
        return DisplayForm::plain(kind, &(sign_unit(a) * radicand));
    }
    DisplayForm {
        kind,
        coefficient: sign_unit(a),
        terms: vec![FormTerm { base: radicand, exponent: Rational::new(BigInt::one(), d.into()) }],
        layout: Layout::Product,
    }
}

/// Signed-exponent split of a canonical value into numerator and denominator
/// sides, each unified into a single integer power base^exponent with the
/// base imperfect and the exponent positive.
pub(super) struct RatioSides {
    pub num: Option<(BigUint, Rational)>,
    pub den: Option<(BigUint, Rational)>,
}

pub(super) fn ratio_sides(a: &AbsurdNumber, cfg: &Config) -> RatioSides {
    debug_assert!(!a.is_zero() && !a.is_rational());
    let (mut n_res, mut d_res) = unsigned_parts(a.coefficient());
    let mut num_powers: Vec<(BigUint, Rational)> = Vec::new();
    let mut den_powers: Vec<(BigUint, Rational)> = Vec::new();
    for f in a.factors() {
        // Recover the signed exponent: fold the coefficient's copies of this
        // base back in.
        let mut s = f.exponent().clone();
        while (&n_res % f.base()).is_zero() {
            n_res /= f.base();
            s += Rational::one();
        }
        while (&d_res % f.base()).is_zero() {
            d_res /= f.base();
            s -= Rational::one();
        }
        debug_assert!(!s.is_zero());
        if s.is_positive() {
            num_powers.push((f.base().clone(), s));
        } else {
            den_powers.push((f.base().clone(), -s));
        }
    }
    RatioSides {
        num: unify_side(num_powers, n_res, cfg),
        den: unify_side(den_powers, d_res, cfg),
    }
}

/// Unifies one side's powers and leftover integer into m^gamma, then strips
/// the maximal perfect power out of m so the base is imperfect.
fn unify_side(
    powers: Vec<(BigUint, Rational)>,
    residual: BigUint,
    cfg: &Config,
) -> Option<(BigUint, Rational)> {
    if powers.is_empty() && residual.is_one() {
        return None;
    }
    let mut gamma = powers
        .iter()
        .map(|(_, e)| e.clone())
        .reduce(|g, e| gcd_rational(&g, &e))
        .unwrap_or_else(Rational::one);
    if !residual.is_one() {
        gamma = gcd_rational(&gamma, &Rational::one());
    }
    let mut m = BigUint::one();
    if !residual.is_one() {
        let k = Rational::one() / &gamma;
        debug_assert!(k.denom().is_one());
        m *= residual.pow(k.to_integer().to_u32().expect("display exponent too large"));
    }
    for (b, e) in &powers {
        let k = e / &gamma;
        debug_assert!(k.denom().is_one());
        m *= b.pow(k.to_integer().to_u32().expect("display exponent too large"));
    }
    let pp = max_perfect_power(&m, cfg.primality_fast_path());
    Some((pp.root, gamma * Rational::from_integer(BigInt::from(pp.exponent))))
}

/// Ratio of two positive rational powers of imperfect positive integers.
pub(super) fn imperfect_ratio(a: &AbsurdNumber, cfg: &Config) -> DisplayForm {
    let kind = FormKind::ImperfectRatio;
    if a.is_zero() || a.is_rational() {
        return DisplayForm::plain(kind, a.coefficient());
    }
    let sides = ratio_sides(a, cfg);
    let mut terms = Vec::new();
    if let Some((m, e)) = sides.num {
        terms.push(FormTerm { base: Rational::from_integer(BigInt::from(m)), exponent: e });
    }
    if let Some((m, e)) = sides.den {
        terms.push(FormTerm { base: Rational::from_integer(BigInt::from(m)), exponent: -e });
    }
    sort_terms(&mut terms);
    DisplayForm { kind, coefficient: sign_unit(a), terms, layout: Layout::Product }
}

/// Ratio of two unit-fraction powers of positive integers, denominators
/// minimal.
pub(super) fn max_reciprocal_ratio(a: &AbsurdNumber, cfg: &Config) -> DisplayForm {
    let kind = FormKind::MaxReciprocalRatio;
    if a.is_zero() || a.is_rational() {
        return DisplayForm::plain(kind, a.coefficient());
    }
    let sides = ratio_sides(a, cfg);
    let mut terms = Vec::new();
    let mut push = |m: BigUint, e: Rational, negate: bool| {
        let (radicand, d) = max_reciprocal_root(&Rational::from_integer(BigInt::from(m)), &e);
        let mut exponent = Rational::new(BigInt::one(), d.into());
        if negate {
            exponent = -exponent;
        }
        terms.push(FormTerm { base: radicand, exponent });
    };
    if let Some((m, e)) = sides.num {
        push(m, e, false);
    }
    if let Some((m, e)) = sides.den {
        push(m, e, true);
    }
    sort_terms(&mut terms);
    DisplayForm { kind, coefficient: sign_unit(a), terms, layout: Layout::Product }
}

/// Rational coefficient times one proper fractional power of an imperfect
/// positive integer, computed without any factoring: the denominator side is
/// rationalized into the numerator and the two powers are unified at their
/// common exponent denominator.
pub(super) fn single_int_imperfect_base(a: &AbsurdNumber, cfg: &Config) -> DisplayForm {
    let kind = FormKind::SingleIntImperfectBase;
    if a.is_zero() || a.is_rational() {
        return DisplayForm::plain(kind, a.coefficient());
    }
    let sides = ratio_sides(a, cfg);
    let mut coefficient = sign_unit(a);
    let mut powers: Vec<(BigUint, Rational)> = Vec::new();
    if let Some((m, e)) = sides.num {
        let whole = e.floor().to_integer();
        if !whole.is_zero() {
            coefficient *= integer_pow(&m, &whole);
        }
        let frac = e - Rational::from_integer(whole);
        if !frac.is_zero() {
            powers.push((m, frac));
        }
    }
    if let Some((m, e)) = sides.den {
        let whole = e.floor().to_integer();
        if !whole.is_zero() {
            coefficient /= integer_pow(&m, &whole);
        }
        let frac = e - Rational::from_integer(whole);
        if !frac.is_zero() {
            // Rationalize: multiply through by m^(1 - frac).
            coefficient /= Rational::from_integer(BigInt::from(m.clone()));
            powers.push((m, Rational::one() - frac));
        }
    }
    if powers.is_empty() {
        return DisplayForm::plain(kind, &coefficient);
    }
    let l = powers.iter().fold(BigInt::one(), |acc, (_, e)| acc.lcm(e.denom()));
    let unified: Vec<(BigUint, BigInt)> = powers
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
    DisplayForm {
        kind,
        coefficient,
        terms: vec![FormTerm {
            base: Rational::from_integer(BigInt::from(radicand)),
            exponent: Rational::new(g, l),
        }],
        layout: Layout::Product,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::rational;

    fn cfg() -> Config {
        Config::default()
    }

    fn power(num: i64, den: i64, en: i64, ed: i64) -> AbsurdNumber {
        AbsurdNumber::normalize_power(&rational(num, den), &rational(en, ed), &cfg()).unwrap()
    }

    fn table1() -> AbsurdNumber {
        power(28, 15, 2, 3)
    }

    #[test]
    fn imperfect_single_reassembles_rational_radicand() {
        let f = imperfect_single(&table1(), &cfg());
        assert_eq!(f.render_text(), "(28/15)^(2/3)");
    }

    #[test]
    fn imperfect_single_absorbs_coefficient_into_radicand() {
        // (48/5)*(3/5)^(1/3) == (24/5)^(4/3): the coefficient folds in at
        // exponent 1 and the maximal perfect power comes back out.
        let a = power(3, 5, 1, 3).mul(&AbsurdNumber::from_rational(&rational(48, 5)), &cfg());
        let f = imperfect_single(&a, &cfg());
        assert_eq!(f.render_text(), "(24/5)^(4/3)");
    }

    #[test]
    fn imperfect_single_tenth_root_example() {
        // 29^(31/10)/2^(1/10) == (29^31/2)^(1/10)
        let a = power(29, 1, 31, 10).mul(&power(2, 1, -1, 10), &cfg());
        let f = imperfect_single(&a, &cfg());
        assert_eq!(
            f.render_text(),
            "(2159424054808578564166497528588784562372597429/2)^(1/10)"
        );
    }

    #[test]
    fn imperfect_ratio_table_row() {
        let f = imperfect_ratio(&table1(), &cfg());
        assert_eq!(f.render_text(), "15^(-2/3)*28^(2/3)");
        assert_eq!(f.with_layout(Layout::Ratio).render_text(), "28^(2/3)/15^(2/3)");
    }

    #[test]
    fn imperfect_ratio_strips_side_perfect_powers() {
        // 9*2^(2/3): the unified numerator radicand 2^2*9^3 = 54^2 is a
        // perfect square, so the base reduces to 54 at exponent 2/3.
        let a = power(2, 1, 2, 3).mul(&AbsurdNumber::from_rational(&rational(9, 1)), &cfg());
        let f = imperfect_ratio(&a, &cfg());
        assert_eq!(f.render_text(), "54^(2/3)");
    }

    #[test]
    fn imperfect_ratio_mixed_roots() {
        // 2^(3/4)*7^(1/4) / (3^(2/3)*5^(1/3)) == 56^(1/4)/45^(1/3)
        let a = power(2, 1, 3, 4)
            .mul(&power(7, 1, 1, 4), &cfg())
            .mul(&power(3, 1, -2, 3), &cfg())
            .mul(&power(5, 1, -1, 3), &cfg());
        let f = imperfect_ratio(&a, &cfg());
        assert_eq!(f.with_layout(Layout::Ratio).render_text(), "56^(1/4)/45^(1/3)");
    }

    #[test]
    fn max_reciprocal_single_table_row() {
        let f = max_reciprocal_single(&table1(), &cfg());
        assert_eq!(f.render_text(), "(784/225)^(1/3)");
    }

    #[test]
    fn max_reciprocal_single_shrinks_denominator() {
        // (9/4)^(1/4) == (3/2)^(1/2); (8/27)^(1/2) is already maximal.
        let f = max_reciprocal_single(&power(9, 4, 1, 4), &cfg());
        assert_eq!(f.render_text(), "(3/2)^(1/2)");
        let f = max_reciprocal_single(&power(8, 27, 1, 2), &cfg());
        assert_eq!(f.render_text(), "(8/27)^(1/2)");
    }

    #[test]
    fn max_reciprocal_single_unifies_mixed_ratio() {
        // 56^(1/4)/45^(1/3) == (175616/4100625)^(1/12)
        let a = power(56, 1, 1, 4).mul(&power(45, 1, -1, 3), &cfg());
        let f = max_reciprocal_single(&a, &cfg());
        assert_eq!(f.render_text(), "(175616/4100625)^(1/12)");
    }

    #[test]
    fn max_reciprocal_ratio_table_row() {
        let f = max_reciprocal_ratio(&table1(), &cfg());
        assert_eq!(f.render_text(), "225^(-1/3)*784^(1/3)");
        assert_eq!(f.with_layout(Layout::Ratio).render_text(), "784^(1/3)/225^(1/3)");
    }

    #[test]
    fn single_int_imperfect_base_table_row() {
        let f = single_int_imperfect_base(&table1(), &cfg());
        assert_eq!(f.render_text(), "1/15*11760^(1/3)");
        assert_eq!(f.with_layout(Layout::Ratio).render_text(), "11760^(1/3)/15");
    }

    #[test]
    fn single_int_imperfect_base_rationalizes() {
        // 1/sqrt(2) == 2^(1/2)/2
        let f = single_int_imperfect_base(&power(2, 1, -1, 2), &cfg());
        assert_eq!(f.with_layout(Layout::Ratio).render_text(), "2^(1/2)/2");
        // sqrt(2) stays as is
        let f = single_int_imperfect_base(&power(2, 1, 1, 2), &cfg());
        assert_eq!(f.render_text(), "2^(1/2)");
    }

    #[test]
    fn rational_values_render_plain() {
        let six_fifths = AbsurdNumber::from_rational(&rational(6, 5));
        for conv in [
            imperfect_single,
            imperfect_ratio,
            max_reciprocal_single,
            max_reciprocal_ratio,
            single_int_imperfect_base,
        ] {
            assert_eq!(conv(&six_fifths, &cfg()).render_text(), "6/5");
        }
    }

    #[test]
    fn negative_values_keep_sign() {
        let f = imperfect_single(&table1().neg(), &cfg());
        assert_eq!(f.render_text(), "-(28/15)^(2/3)");
    }
}
