//! Exact rational helpers.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used for every exact quantity in the crate.
pub type Rational = BigRational;

/// `n / d` as a reduced rational. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`; the result is reduced. `None` on malformed input
/// or a zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Decimal rendering rounded half away from zero to `places` fractional
/// digits, with trailing zeros trimmed (`71/5` renders as `14.2`).
pub fn to_decimal(r: &Rational, places: usize) -> String {
    let negative = r.is_negative();
    let abs = r.abs();
    let scale = num_traits::pow(BigInt::from(10u8), places);
    let scaled = abs.numer() * &scale;
    let (mut q, rem) = scaled.div_rem(abs.denom());
    if rem * 2u8 >= *abs.denom() {
        q += 1u8;
    }
    let (int_part, frac_part) = q.div_rem(&scale);

    let mut out = String::new();
    if negative && !q.is_zero() {
        out.push('-');
    }
    let _ = write!(out, "{int_part}");
    if places > 0 && !frac_part.is_zero() {
        let mut digits = alloc::format!("{frac_part:0>places$}");
        while digits.ends_with('0') {
            digits.pop();
        }
        out.push('.');
        out.push_str(&digits);
    }
    out
}

/// Nearest `f64`; only for display and float-mode comparisons.
pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge operands: shift both down before dividing.
            let bits = r.numer().bits().max(r.denom().bits());
            let shift = bits.saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}
