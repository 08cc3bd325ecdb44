//! Exact fractions and their decimal rendering.

use std::fmt;

use num_rational::Ratio as NumRatio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Reduced signed rational used for probabilities and coefficients.
pub type Rational = NumRatio<i128>;

/// An unreduced count ratio such as links found over links available.
///
/// A zero denominator marks a degenerate score (nothing to find); it renders
/// as 0 and [`Ratio::is_degenerate`] reports it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ratio {
    pub numerator: u64,
    pub denominator: u64,
}

impl Ratio {
    pub const fn new(numerator: u64, denominator: u64) -> Self {
        Ratio {
            numerator,
            denominator,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.denominator == 0
    }

    /// `None` when degenerate.
    pub fn to_rational(&self) -> Option<Rational> {
        (!self.is_degenerate())
            .then(|| Rational::new(self.numerator as i128, self.denominator as i128))
    }

    /// Same value as fractions, so 2/4 equals 1/2. Degenerate ratios are
    /// only equal to each other.
    pub fn same_value(&self, other: &Ratio) -> bool {
        self.to_rational() == other.to_rational()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_degenerate() {
            0.0
        } else {
            self.numerator as f64 / self.denominator as f64
        }
    }

    /// Decimal with `digits` places, rounding half away from zero.
    pub fn render(&self, digits: u32) -> String {
        match self.to_rational() {
            Some(r) => render_rational(&r, digits),
            None => render_rational(&Rational::zero(), digits),
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Rounds `value` to `digits` decimal places, half away from zero.
pub fn round_scaled(value: &Rational, digits: u32) -> i128 {
    let scale = 10i128.pow(digits);
    let num = value.numer().abs() * scale;
    let den = *value.denom();
    let rounded = (2 * num + den) / (2 * den);
    if value.is_negative() {
        -rounded
    } else {
        rounded
    }
}

pub fn render_rational(value: &Rational, digits: u32) -> String {
    let scaled = round_scaled(value, digits);
    let sign = if scaled < 0 { "-" } else { "" };
    let scaled = scaled.abs();
    if digits == 0 {
        return format!("{sign}{scaled}");
    }
    let scale = 10i128.pow(digits);
    format!(
        "{sign}{}.{:0width$}",
        scaled / scale,
        scaled % scale,
        width = digits as usize
    )
}

pub fn rational_to_f64(value: &Rational) -> f64 {
    *value.numer() as f64 / *value.denom() as f64
}

/// Parses a finite decimal string such as `.85` or `-0.125` exactly.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 30 {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer: i128 = if digits.is_empty() {
        0
    } else {
        digits.parse().ok()?
    };
    let r = Rational::new(numer, 10i128.pow(frac.len() as u32));
    Some(if negative { -r } else { r })
}
