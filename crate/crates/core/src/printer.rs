//! Shared textual normal form for polynomial-like values.
//!
//! Terms are rendered as `coefficient*monomial` joined with signed
//! separators, leading term first. Coefficients that are polynomials in `b`
//! or `N` with more than one term are parenthesized so the printed form
//! round-trips through the parser: `(1 + 2*b)*p2 - 1/2*p1^2`.

use std::fmt;

use crate::rat::{rat_display, rat_is_negative, rat_int};
use crate::scalar::BetaScalar;

/// Write a sequence of `(coefficient, monomial)` pairs. An empty monomial
/// string stands for the constant term.
pub fn fmt_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (BetaScalar, String)>,
{
    let mut wrote = false;
    for (coeff, mono) in terms {
        if coeff.is_zero() {
            continue;
        }
        let (body, neg) = render_coeff_mono(&coeff, &mono);
        if !wrote {
            if neg {
                write!(f, "-")?;
            }
            wrote = true;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        write!(f, "{}", body)?;
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}

/// Render one term without its outer sign; returns `(body, is_negative)`.
fn render_coeff_mono(coeff: &BetaScalar, mono: &str) -> (String, bool) {
    if let Some(r) = coeff.as_rat() {
        let neg = rat_is_negative(&r);
        let mag = if neg { -r } else { r };
        if mono.is_empty() {
            return (rat_display(&mag), neg);
        }
        if mag == rat_int(1) {
            return (mono.to_string(), neg);
        }
        return (format!("{}*{}", rat_display(&mag), mono), neg);
    }
    // Polynomial coefficient: factor out a leading minus only when every
    // printed term would be negative; otherwise parenthesize as-is.
    let s = coeff.to_string();
    let single = coeff.iter().count() == 1;
    if mono.is_empty() {
        if single {
            return (s.trim_start_matches('-').to_string(), s.starts_with('-'));
        }
        return (format!("({})", s), false);
    }
    if single {
        let neg = s.starts_with('-');
        let body = s.trim_start_matches('-');
        return (format!("{}*{}", body, mono), neg);
    }
    (format!("({})*{}", s, mono), false)
}
