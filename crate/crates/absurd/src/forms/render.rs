//! Plain-text and LaTeX rendering of display forms.
//!
//! The text grammar round-trips through the expression parser: `*` joins
//! factors, `^` binds tighter, fractional and negative exponents are
//! parenthesized, rational bases are parenthesized, and the ratio layout
//! prints negative-exponent factors under a single `/` whose denominator is
//! parenthesized only when it is itself a product.

use num_traits::{One, Signed};

use crate::numkernel::{is_integer, Rational};

use super::{DisplayForm, FormTerm, Layout};

pub fn render_text(f: &DisplayForm) -> String {
    match f.layout {
        Layout::Product => render_product(f),
        Layout::Ratio => render_ratio(f),
    }
}

fn rational_text(r: &Rational) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn base_text(b: &Rational) -> String {
    if is_integer(b) {
        b.numer().to_string()
    } else {
        format!("({}/{})", b.numer(), b.denom())
    }
}

fn power_text(t: &FormTerm) -> String {
    let b = base_text(&t.base);
    let e = &t.exponent;
    if e.is_one() {
        b
    } else if is_integer(e) {
        if e.is_negative() {
            format!("{}^({})", b, e.numer())
        } else {
            format!("{}^{}", b, e.numer())
        }
    } else {
        format!("{}^({}/{})", b, e.numer(), e.denom())
    }
}

fn render_product(f: &DisplayForm) -> String {
    let sign = if f.coefficient.is_negative() { "-" } else { "" };
    let c = f.coefficient.abs();
    let mut parts = Vec::new();
    if f.terms.is_empty() || !c.is_one() {
        parts.push(rational_text(&c));
    }
    parts.extend(f.terms.iter().map(power_text));
    format!("{}{}", sign, parts.join("*"))
}

fn render_ratio(f: &DisplayForm) -> String {
    let sign = if f.coefficient.is_negative() { "-" } else { "" };
    let c = f.coefficient.abs();
    let mut num = Vec::new();
    let mut den = Vec::new();
    if !c.numer().is_one() || f.terms.iter().all(|t| !t.exponent.is_positive()) {
        num.push(c.numer().to_string());
    }
    if !c.denom().is_one() {
        den.push(c.denom().to_string());
    }
    for t in &f.terms {
        if t.exponent.is_positive() {
            num.push(power_text(t));
        } else {
            den.push(power_text(&FormTerm {
                base: t.base.clone(),
                exponent: -t.exponent.clone(),
            }));
        }
    }
    let num_s = if num.is_empty() { "1".to_string() } else { num.join("*") };
    if den.is_empty() {
        return format!("{}{}", sign, num_s);
    }
    let den_s = if den.len() == 1 {
        den.remove(0)
    } else {
        format!("({})", den.join("*"))
    };
    format!("{}{}/{}", sign, num_s, den_s)
}

pub fn render_latex(f: &DisplayForm) -> String {
    match f.layout {
        Layout::Product => latex_product(f),
        Layout::Ratio => latex_ratio(f),
    }
}

fn latex_rational(r: &Rational) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn latex_power(t: &FormTerm) -> String {
    let e = &t.exponent;
    let b = if is_integer(&t.base) {
        t.base.numer().to_string()
    } else {
        format!("\\left({}\\right)", latex_rational(&t.base))
    };
    if e.is_one() {
        b
    } else if *e == Rational::new(1.into(), 2.into()) {
        let inner = if is_integer(&t.base) {
            t.base.numer().to_string()
        } else {
            latex_rational(&t.base)
        };
        format!("\\sqrt{{{}}}", inner)
    } else if is_integer(e) {
        format!("{}^{{{}}}", b, e.numer())
    } else {
        format!("{}^{{{}/{}}}", b, e.numer(), e.denom())
    }
}

fn latex_product(f: &DisplayForm) -> String {
    let sign = if f.coefficient.is_negative() { "-" } else { "" };
    let c = f.coefficient.abs();
    let mut parts = Vec::new();
    if f.terms.is_empty() || !c.is_one() {
        parts.push(latex_rational(&c));
    }
    parts.extend(f.terms.iter().map(latex_power));
    format!("{}{}", sign, parts.join("\\,"))
}

fn latex_ratio(f: &DisplayForm) -> String {
    let sign = if f.coefficient.is_negative() { "-" } else { "" };
    let c = f.coefficient.abs();
    let mut num = Vec::new();
    let mut den = Vec::new();
    if !c.numer().is_one() || f.terms.iter().all(|t| !t.exponent.is_positive()) {
        num.push(c.numer().to_string());
    }
    if !c.denom().is_one() {
        den.push(c.denom().to_string());
    }
    for t in &f.terms {
        if t.exponent.is_positive() {
            num.push(latex_power(t));
        } else {
            den.push(latex_power(&FormTerm {
                base: t.base.clone(),
                exponent: -t.exponent.clone(),
            }));
        }
    }
    let num_s = if num.is_empty() { "1".to_string() } else { num.join("\\,") };
    if den.is_empty() {
        return format!("{}{}", sign, num_s);
    }
    format!("{}\\frac{{{}}}{{{}}}", sign, num_s, den.join("\\,"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormKind;
    use crate::numkernel::rational;

    fn form(coefficient: Rational, terms: Vec<(Rational, Rational)>, layout: Layout) -> DisplayForm {
        DisplayForm {
            kind: FormKind::PurePrimal,
            coefficient,
            terms: terms
                .into_iter()
                .map(|(base, exponent)| FormTerm { base, exponent })
                .collect(),
            layout,
        }
    }

    #[test]
    fn plain_rationals() {
        assert_eq!(render_text(&form(rational(0, 1), vec![], Layout::Product)), "0");
        assert_eq!(render_text(&form(rational(-7, 3), vec![], Layout::Product)), "-7/3");
        assert_eq!(render_text(&form(rational(-7, 3), vec![], Layout::Ratio)), "-7/3");
        assert_eq!(render_text(&form(rational(1, 1), vec![], Layout::Ratio)), "1");
    }

    #[test]
    fn unit_coefficient_is_omitted_with_terms() {
        let f = form(rational(1, 1), vec![(rational(2, 1), rational(1, 2))], Layout::Product);
        assert_eq!(render_text(&f), "2^(1/2)");
        let f = form(rational(-1, 1), vec![(rational(2, 1), rational(1, 2))], Layout::Product);
        assert_eq!(render_text(&f), "-2^(1/2)");
    }

    #[test]
    fn exponent_one_renders_bare_base() {
        let f = form(rational(1, 1), vec![(rational(6, 1), rational(1, 1))], Layout::Product);
        assert_eq!(render_text(&f), "6");
    }

    #[test]
    fn integer_exponents() {
        let f = form(
            rational(1, 1),
            vec![(rational(2, 1), rational(3, 1)), (rational(5, 1), rational(-1, 1))],
            Layout::Product,
        );
        assert_eq!(render_text(&f), "2^3*5^(-1)");
        assert_eq!(render_text(&f.clone().with_layout(Layout::Ratio)), "2^3/5");
    }

    #[test]
    fn ratio_numerator_is_never_parenthesized() {
        // -3/2 * 2^(1/2) in ratio layout
        let f = form(rational(-3, 2), vec![(rational(2, 1), rational(1, 2))], Layout::Ratio);
        assert_eq!(render_text(&f), "-3*2^(1/2)/2");
    }

    #[test]
    fn ratio_with_no_numerator_terms_keeps_unit_numerator() {
        let f = form(rational(1, 1), vec![(rational(15, 1), rational(-2, 3))], Layout::Ratio);
        assert_eq!(render_text(&f), "1/15^(2/3)");
    }

    #[test]
    fn latex_uses_frac_and_sqrt() {
        let f = form(
            rational(2, 15),
            vec![(rational(2, 1), rational(1, 2)), (rational(7, 15), rational(2, 3))],
            Layout::Product,
        );
        assert_eq!(
            render_latex(&f),
            "\\frac{2}{15}\\,\\sqrt{2}\\,\\left(\\frac{7}{15}\\right)^{2/3}"
        );
        let f = form(rational(1, 15), vec![(rational(11760, 1), rational(1, 3))], Layout::Ratio);
        assert_eq!(render_latex(&f), "\\frac{11760^{1/3}}{15}");
    }
}
