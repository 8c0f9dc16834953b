//! Display-form conversions from the canonical representation: primal forms
//! (full prime factorization), coprime square-free groupings, imperfect-power
//! and maximal-reciprocal forms (no factorization), single-radicand forms,
//! plus rendering, a size metric, and most-concise selection.

mod imperfect;
mod primal;
mod render;
mod sqfree;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::canon::{AbsurdNumber, Approximation, Config, Interval};
use crate::numkernel::{
    exact_rational_root, factor_full, is_integer, max_perfect_power, max_perfect_power_rational,
    Rational,
};

pub use render::{render_latex, render_text};

/// One display-form family per Table row: four primal windows, six coprime
/// square-free variants, four perfect-power-based forms, and two
/// single-integer-radicand forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormKind {
    PurePrimal,
    ProperPrimal,
    TightBalancedPrimal,
    LooseBalancedPrimal,
    CoprimeSqfreeIntDistinct,
    CoprimeSqfreeIntProper,
    CoprimeSqfreeIntTight,
    CoprimeSqfreeIntLoose,
    CoprimeSqfreeRatProper,
    CoprimeSqfreeRatTight,
    ImperfectSingle,
    ImperfectRatio,
    MaxReciprocalSingle,
    MaxReciprocalRatio,
    SingleMinIntBaseProper,
    SingleIntImperfectBase,
}

impl FormKind {
    pub const ALL: [FormKind; 16] = [
        FormKind::PurePrimal,
        FormKind::ProperPrimal,
        FormKind::TightBalancedPrimal,
        FormKind::LooseBalancedPrimal,
        FormKind::CoprimeSqfreeIntDistinct,
        FormKind::CoprimeSqfreeIntProper,
        FormKind::CoprimeSqfreeIntTight,
        FormKind::CoprimeSqfreeIntLoose,
        FormKind::CoprimeSqfreeRatProper,
        FormKind::CoprimeSqfreeRatTight,
        FormKind::ImperfectSingle,
        FormKind::ImperfectRatio,
        FormKind::MaxReciprocalSingle,
        FormKind::MaxReciprocalRatio,
        FormKind::SingleMinIntBaseProper,
        FormKind::SingleIntImperfectBase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormKind::PurePrimal => "pure_primal",
            FormKind::ProperPrimal => "proper_primal",
            FormKind::TightBalancedPrimal => "tight_balanced_primal",
            FormKind::LooseBalancedPrimal => "loose_balanced_primal",
            FormKind::CoprimeSqfreeIntDistinct => "coprime_sqfree_int_distinct",
            FormKind::CoprimeSqfreeIntProper => "coprime_sqfree_int_proper",
            FormKind::CoprimeSqfreeIntTight => "coprime_sqfree_int_tight",
            FormKind::CoprimeSqfreeIntLoose => "coprime_sqfree_int_loose",
            FormKind::CoprimeSqfreeRatProper => "coprime_sqfree_rat_proper",
            FormKind::CoprimeSqfreeRatTight => "coprime_sqfree_rat_tight",
            FormKind::ImperfectSingle => "imperfect_single",
            FormKind::ImperfectRatio => "imperfect_ratio",
            FormKind::MaxReciprocalSingle => "max_reciprocal_single",
            FormKind::MaxReciprocalRatio => "max_reciprocal_ratio",
            FormKind::SingleMinIntBaseProper => "single_min_int_base_proper",
            FormKind::SingleIntImperfectBase => "single_int_imperfect_base",
        }
    }

    pub fn from_name(s: &str) -> Option<FormKind> {
        FormKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Whether the conversion requires full integer factorization (and can
    /// therefore exhaust the factoring budget).
    pub fn needs_factoring(self) -> bool {
        !matches!(
            self,
            FormKind::ImperfectSingle
                | FormKind::ImperfectRatio
                | FormKind::MaxReciprocalSingle
                | FormKind::MaxReciprocalRatio
                | FormKind::SingleIntImperfectBase
        )
    }
}

/// How negative exponents are presented: as a denominator or inline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Product,
    Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormTerm {
    pub base: Rational,
    pub exponent: Rational,
}

/// A rendered-family view of an absurd number: exactly the same value, laid
/// out per the form kind's rules. Conversions default to product layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplayForm {
    pub kind: FormKind,
    pub coefficient: Rational,
    pub terms: Vec<FormTerm>,
    pub layout: Layout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub kind: FormKind,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    /// Some radicand resisted the factoring budget. The carried form is
    /// numerically correct but may violate the kind's structural guarantees
    /// (an unfactored composite stands in for its primes).
    #[error("factoring budget exhausted")]
    FactoringBudgetExhausted { partial: DisplayForm },
}

impl DisplayForm {
    fn plain(kind: FormKind, coefficient: &Rational) -> Self {
        DisplayForm { kind, coefficient: coefficient.clone(), terms: Vec::new(), layout: Layout::Product }
    }

    pub fn with_layout(mut self, layout: Layout) -> Self {
        self.layout = layout;
        self
    }

    pub fn render_text(&self) -> String {
        render::render_text(self)
    }

    pub fn render_latex(&self) -> String {
        render::render_latex(self)
    }

    pub fn size(&self) -> usize {
        self.render_text().len()
    }

    /// Interval evaluation of the displayed value; same error guarantee as
    /// [`AbsurdNumber::eval_approx`].
    pub fn eval_approx(&self, precision_bits: u32) -> Approximation {
        assert!(precision_bits >= 53, "precision below f64 is not supported");
        if self.coefficient.is_zero() {
            return Approximation { value: Rational::zero(), error: Rational::zero() };
        }
        let work = precision_bits + 16;
        let mut acc = Interval::point(&self.coefficient.abs());
        for t in &self.terms {
            acc = acc.mul(&Interval::pow_rational(&t.base, &t.exponent, work)).round_out(work);
        }
        if self.coefficient.is_negative() {
            acc = acc.neg();
        }
        acc.to_approximation()
    }

    /// Machine checks of the kind-specific structural constraints. Square-free
    /// verification factors the bases, so it is intended for test corpora.
    pub fn check_kind_invariants(&self, cfg: &Config) -> Result<(), String> {
        use FormKind::*;
        let fail = |m: String| Err(m);
        if self.coefficient.is_zero() {
            return if self.terms.is_empty() { Ok(()) } else { fail("zero keeps terms".into()) };
        }
        for t in &self.terms {
            if !t.base.is_positive() {
                return fail(format!("base {} not positive", t.base));
            }
            if t.exponent.is_zero() {
                return fail(format!("zero exponent on base {}", t.base));
            }
        }
        for w in self.terms.windows(2) {
            let a = (w[0].base.numer(), w[0].base.denom());
            let b = (w[1].base.numer(), w[1].base.denom());
            if a >= b {
                return fail("bases not strictly increasing".into());
            }
        }
        let integer_bases = |terms: &[FormTerm]| terms.iter().all(|t| is_integer(&t.base));
        let unit_coefficient = self.terms.is_empty() || self.coefficient.abs().is_one();
        match self.kind {
            PurePrimal | CoprimeSqfreeIntDistinct | ImperfectRatio | MaxReciprocalRatio => {
                if !unit_coefficient {
                    return fail(format!("{:?} carries a rational coefficient", self.kind));
                }
            }
            ImperfectSingle | MaxReciprocalSingle => {
                if !unit_coefficient {
                    return fail(format!("{:?} carries a rational coefficient", self.kind));
                }
                if self.terms.len() > 1 {
                    return fail("more than one radicand".into());
                }
            }
            _ => {}
        }
        let window_ok = |e: &Rational| match self.kind {
            ProperPrimal | CoprimeSqfreeIntProper | CoprimeSqfreeRatProper
            | SingleMinIntBaseProper | SingleIntImperfectBase => {
                e.is_positive() && *e < Rational::one()
            }
            TightBalancedPrimal | CoprimeSqfreeIntTight | CoprimeSqfreeRatTight => {
                let half = Rational::new(BigInt::one(), 2.into());
                *e > -half.clone() && *e <= half
            }
            LooseBalancedPrimal | CoprimeSqfreeIntLoose => {
                e.abs() < Rational::one() && !e.is_zero()
            }
            _ => true,
        };
        for t in &self.terms {
            if !window_ok(&t.exponent) {
                return fail(format!("exponent {} outside the {:?} window", t.exponent, self.kind));
            }
        }
        match self.kind {
            PurePrimal | ProperPrimal | TightBalancedPrimal | LooseBalancedPrimal => {
                if !integer_bases(&self.terms) {
                    return fail("primal base not an integer".into());
                }
                for t in &self.terms {
                    let b = t.base.numer().magnitude();
                    if !crate::numkernel::is_probable_prime(b) {
                        return fail(format!("primal base {} not prime", b));
                    }
                }
            }
            CoprimeSqfreeIntDistinct | CoprimeSqfreeIntProper | CoprimeSqfreeIntTight
            | CoprimeSqfreeIntLoose | CoprimeSqfreeRatProper | CoprimeSqfreeRatTight => {
                if matches!(
                    self.kind,
                    CoprimeSqfreeIntDistinct | CoprimeSqfreeIntProper | CoprimeSqfreeIntTight
                        | CoprimeSqfreeIntLoose
                ) && !integer_bases(&self.terms)
                {
                    return fail("square-free base not an integer".into());
                }
                let contents: Vec<_> = self
                    .terms
                    .iter()
                    .map(|t| t.base.numer().magnitude() * t.base.denom().magnitude())
                    .collect();
                for i in 0..contents.len() {
                    for j in i + 1..contents.len() {
                        if !contents[i].gcd(&contents[j]).is_one() {
                            return fail("square-free bases share a factor".into());
                        }
                    }
                }
                for c in &contents {
                    if c.is_one() {
                        continue;
                    }
                    let fs = factor_full(c, cfg.factor_budget())
                        .ok_or_else(|| "could not verify square-freeness".to_string())?;
                    if fs.iter().any(|(_, m)| *m > 1) {
                        return fail(format!("base content {} not square-free", c));
                    }
                }
                let mut exps: Vec<_> = self.terms.iter().map(|t| t.exponent.clone()).collect();
                exps.sort();
                exps.dedup();
                if exps.len() != self.terms.len() {
                    return fail("exponents not distinct".into());
                }
            }
            ImperfectSingle => {
                for t in &self.terms {
                    if !t.exponent.is_positive() {
                        return fail("imperfect-power exponent not positive".into());
                    }
                    let (_, k) = max_perfect_power_rational(&t.base, cfg.primality_fast_path());
                    if k != 1 {
                        return fail(format!("base {} is a perfect power", t.base));
                    }
                }
            }
            ImperfectRatio => {
                for t in &self.terms {
                    if !is_integer(&t.base) {
                        return fail("ratio base not an integer".into());
                    }
                    let pp = max_perfect_power(t.base.numer().magnitude(), cfg.primality_fast_path());
                    if pp.exponent != 1 {
                        return fail(format!("base {} is a perfect power", t.base));
                    }
                }
            }
            MaxReciprocalSingle | MaxReciprocalRatio => {
                for t in &self.terms {
                    let e = t.exponent.abs();
                    if e.is_one() && self.kind == FormKind::MaxReciprocalRatio {
                        continue; // integer side of a ratio
                    }
                    if !e.numer().is_one() {
                        return fail(format!("exponent {} not a unit fraction", t.exponent));
                    }
                    // Maximality: no prime divisor of d admits a d'-th root.
                    let d = e.denom().to_u32().ok_or("exponent denominator too large")?;
                    for (q, _) in crate::numkernel::factor_small(d) {
                        if exact_rational_root(&t.base, q).is_some() {
                            return fail(format!("radicand {} is a perfect {}th power", t.base, q));
                        }
                    }
                }
            }
            SingleMinIntBaseProper | SingleIntImperfectBase => {
                if self.terms.len() > 1 {
                    return fail("more than one radicand".into());
                }
                for t in &self.terms {
                    if !is_integer(&t.base) {
                        return fail("radicand not an integer".into());
                    }
                    let pp = max_perfect_power(t.base.numer().magnitude(), cfg.primality_fast_path());
                    if pp.exponent != 1 {
                        return fail(format!("radicand {} is a perfect power", t.base));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn size_of(f: &DisplayForm) -> SizeReport {
    SizeReport { kind: f.kind, size: f.size() }
}

pub fn to_pure_primal(a: &AbsurdNumber, cfg: &Config) -> Result<DisplayForm, FormError> {
    primal::primal_form(a, cfg, primal::Window::Full, FormKind::PurePrimal)
}

pub fn to_proper_primal(a: &AbsurdNumber, cfg: &Config) -> Result<DisplayForm, FormError> {
    primal::primal_form(a, cfg, primal::Window::Proper, FormKind::ProperPrimal)
}

pub fn to_tight_balanced_primal(a: &AbsurdNumber, cfg: &Config) -> Result<DisplayForm, FormError> {
    primal::primal_form(a, cfg, primal::Window::Tight, FormKind::TightBalancedPrimal)
}

pub fn to_loose_balanced_primal(a: &AbsurdNumber, cfg: &Config) -> Result<DisplayForm, FormError> {
    primal::primal_form(a, cfg, primal::Window::Loose, FormKind::LooseBalancedPrimal)
}

/// `kind` must be one of the six coprime square-free variants.
pub fn to_coprime_sqfree(
    a: &AbsurdNumber,
    kind: FormKind,
    cfg: &Config,
) -> Result<DisplayForm, FormError> {
    sqfree::coprime_sqfree(a, kind, cfg)
}

pub fn to_imperfect_single(a: &AbsurdNumber, cfg: &Config) -> DisplayForm {
    imperfect::imperfect_single(a, cfg)
}

pub fn to_imperfect_ratio(a: &AbsurdNumber, cfg: &Config) -> DisplayForm {
    imperfect::imperfect_ratio(a, cfg)
}

pub fn to_max_reciprocal_single(a: &AbsurdNumber, cfg: &Config) -> DisplayForm {
    imperfect::max_reciprocal_single(a, cfg)
}

pub fn to_max_reciprocal_ratio(a: &AbsurdNumber, cfg: &Config) -> DisplayForm {
    imperfect::max_reciprocal_ratio(a, cfg)
}

pub fn to_single_min_int_base(a: &AbsurdNumber, cfg: &Config) -> Result<DisplayForm, FormError> {
    primal::single_min_int_base(a, cfg)
}

pub fn to_single_int_imperfect_base(a: &AbsurdNumber, cfg: &Config) -> DisplayForm {
    imperfect::single_int_imperfect_base(a, cfg)
}

pub fn convert(a: &AbsurdNumber, kind: FormKind, cfg: &Config) -> Result<DisplayForm, FormError> {
    use FormKind::*;
    match kind {
        PurePrimal => to_pure_primal(a, cfg),
        ProperPrimal => to_proper_primal(a, cfg),
        TightBalancedPrimal => to_tight_balanced_primal(a, cfg),
        LooseBalancedPrimal => to_loose_balanced_primal(a, cfg),
        CoprimeSqfreeIntDistinct | CoprimeSqfreeIntProper | CoprimeSqfreeIntTight
        | CoprimeSqfreeIntLoose | CoprimeSqfreeRatProper | CoprimeSqfreeRatTight => {
            to_coprime_sqfree(a, kind, cfg)
        }
        ImperfectSingle => Ok(to_imperfect_single(a, cfg)),
        ImperfectRatio => Ok(to_imperfect_ratio(a, cfg)),
        MaxReciprocalSingle => Ok(to_max_reciprocal_single(a, cfg)),
        MaxReciprocalRatio => Ok(to_max_reciprocal_ratio(a, cfg)),
        SingleMinIntBaseProper => to_single_min_int_base(a, cfg),
        SingleIntImperfectBase => Ok(to_single_int_imperfect_base(a, cfg)),
    }
}

/// The set usually containing the most concise rendering: the single
/// minimal-integer-base form plus all coprime square-free variants.
pub fn recommended_kinds() -> [FormKind; 7] {
    [
        FormKind::SingleMinIntBaseProper,
        FormKind::CoprimeSqfreeIntDistinct,
        FormKind::CoprimeSqfreeIntProper,
        FormKind::CoprimeSqfreeIntTight,
        FormKind::CoprimeSqfreeIntLoose,
        FormKind::CoprimeSqfreeRatProper,
        FormKind::CoprimeSqfreeRatTight,
    ]
}

/// Tie-break ranking for equal sizes: the minimal-integer-base form wins,
/// then the coprime square-free variants, then everything else.
fn priority(kind: FormKind) -> usize {
    use FormKind::*;
    match kind {
        SingleMinIntBaseProper => 0,
        CoprimeSqfreeIntDistinct => 1,
        CoprimeSqfreeIntProper => 2,
        CoprimeSqfreeIntTight => 3,
        CoprimeSqfreeIntLoose => 4,
        CoprimeSqfreeRatProper => 5,
        CoprimeSqfreeRatTight => 6,
        PurePrimal => 7,
        ProperPrimal => 8,
        TightBalancedPrimal => 9,
        LooseBalancedPrimal => 10,
        ImperfectSingle => 11,
        ImperfectRatio => 12,
        MaxReciprocalSingle => 13,
        MaxReciprocalRatio => 14,
        SingleIntImperfectBase => 15,
    }
}

/// Converts every requested kind, skipping conversions that exhaust the
/// factoring budget, and returns the smallest rendering plus all size
/// reports. If every requested kind exhausts the budget, falls back to the
/// single-integer-imperfect-base form, which never factors.
pub fn most_concise(
    a: &AbsurdNumber,
    kinds: &[FormKind],
    cfg: &Config,
) -> (DisplayForm, Vec<SizeReport>) {
    assert!(!kinds.is_empty(), "most_concise requires at least one kind");
    let mut reports = Vec::new();
    let mut best: Option<(usize, usize, DisplayForm)> = None;
    for &kind in kinds {
        let Ok(form) = convert(a, kind, cfg) else { continue };
        let size = form.size();
        reports.push(SizeReport { kind, size });
        let rank = (size, priority(kind));
        if best.as_ref().map_or(true, |(s, p, _)| rank < (*s, *p)) {
            best = Some((size, priority(kind), form));
        }
    }
    match best {
        Some((_, _, form)) => (form, reports),
        None => {
            let form = to_single_int_imperfect_base(a, cfg);
            reports.push(size_of(&form));
            (form, reports)
        }
    }
}

/// Raises a rational to a (small) integer power.
pub(crate) fn rat_pow(r: &Rational, k: &BigInt) -> Rational {
    let e = i32::try_from(k).expect("display exponent too large");
    r.pow(e)
}

/// base^k as a rational, for a big unsigned base and signed integer k.
pub(crate) fn integer_pow(base: &num_bigint::BigUint, k: &BigInt) -> Rational {
    let mag = k.magnitude().to_u32().expect("display exponent too large");
    let p = BigInt::from(base.pow(mag));
    if k.is_negative() {
        Rational::new(BigInt::one(), p)
    } else {
        Rational::from_integer(p)
    }
}

/// Sorts terms by base, comparing (numerator, denominator) pairs.
pub(crate) fn sort_terms(terms: &mut [FormTerm]) {
    terms.sort_by(|a, b| {
        (a.base.numer(), a.base.denom()).cmp(&(b.base.numer(), b.base.denom()))
    });
}
