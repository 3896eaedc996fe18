//! Numeric scalars shared by the set-function tables and extensions.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = num_rational::Ratio<i128>;

/// Ordered field elements used as table values: `f64` or exact rationals.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    /// Equality up to rounding for floats, exact for rationals.
    fn close(&self, other: &Self) -> bool;
    /// `self <= other` up to rounding for floats, exact for rationals.
    fn le_close(&self, other: &Self) -> bool;
    fn is_exact() -> bool;
}

const FLOAT_SLACK: f64 = 1e-9;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn close(&self, other: &Self) -> bool {
        let scale = 1.0_f64.max(f64::abs(*self)).max(f64::abs(*other));
        f64::abs(self - other) <= FLOAT_SLACK * scale
    }
    fn le_close(&self, other: &Self) -> bool {
        let scale = 1.0_f64.max(f64::abs(*self)).max(f64::abs(*other));
        *self <= *other + FLOAT_SLACK * scale
    }
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        Rational::from_integer(1)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v as i128)
    }
    fn to_f64(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn close(&self, other: &Self) -> bool {
        self == other
    }
    fn le_close(&self, other: &Self) -> bool {
        self <= other
    }
    fn is_exact() -> bool {
        true
    }
}

/// Rational from a numerator/denominator pair.
pub fn ratio(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// Formats a float with 12 significant digits, trimming trailing zeros.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-5..=15).contains(&mag) {
        let s = format!("{:.11e}", v);
        let (mant, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let mant = trim_zeros(mant);
        return format!("{mant}e{exp}");
    }
    let decimals = (11 - mag).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, v))
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".to_string()
        } else {
            t.to_string()
        }
    } else {
        s.to_string()
    }
}

/// Formats an exact rational as `p/q`, or `p` for integers.
pub fn fmt_rational(v: &Rational) -> String {
    if *v.denom() == 1 {
        format!("{}", v.numer())
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Formats any scalar: rationals exactly, floats with 12 significant digits.
pub fn fmt_scalar<T: Scalar>(v: &T) -> String {
    let any: &dyn std::any::Any = v;
    if let Some(r) = any.downcast_ref::<Rational>() {
        fmt_rational(r)
    } else {
        fmt_f64(v.to_f64())
    }
}

/// Parses `p/q`, an integer, or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().ok()?;
        let q: i128 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Ok(i) = s.parse::<i128>() {
        return Some(Rational::from_integer(i));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.')?;
    if fp.len() > 18 || !fp.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let ip: i128 = if ip.is_empty() { 0 } else { ip.parse().ok()? };
    let den = 10i128.pow(fp.len() as u32);
    let fr: i128 = if fp.is_empty() { 0 } else { fp.parse().ok()? };
    let v = Rational::new(ip * den + fr, den);
    Some(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(fmt_f64(0.75), "0.75");
        assert_eq!(fmt_f64(2f64.sqrt()), "1.41421356237");
        assert_eq!(fmt_f64(-3.0), "-3");
        assert_eq!(fmt_rational(&ratio(3, 4)), "3/4");
        assert_eq!(fmt_scalar(&ratio(6, 3)), "2");
    }

    #[test]
    fn parses() {
        assert_eq!(parse_rational("3/4"), Some(ratio(3, 4)));
        assert_eq!(parse_rational("-1.25"), Some(ratio(-5, 4)));
        assert_eq!(parse_rational("7"), Some(ratio(7, 1)));
        assert_eq!(parse_rational("1e3"), None);
    }
}
