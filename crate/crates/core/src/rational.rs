//! Exact rational arithmetic helpers. Ground-truth paths (Cheeger constants,
//! expansion ratios, density thresholds) never compare floats.

use num::rational::Ratio;
use num::{BigRational, ToPrimitive, Zero};
use serde::Serialize;

/// The rational type used for all exact graph quantities. Everything this
/// crate measures fits comfortably in i64 numerators and denominators.
pub type Rat = Ratio<i64>;

pub fn rat(num: i64, den: i64) -> Rat {
    Ratio::new(num, den)
}

/// Serializable numerator/denominator pair, always in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RatRepr {
    pub num: i64,
    pub den: i64,
}

impl From<Rat> for RatRepr {
    fn from(r: Rat) -> Self {
        RatRepr {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl From<&Rat> for RatRepr {
    fn from(r: &Rat) -> Self {
        (*r).into()
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("i64 ratio always converts")
}

/// serde helper: serialize a [`Rat`] field as a `{num, den}` pair.
pub fn serialize_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    RatRepr::from(r).serialize(s)
}

pub fn big_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::INFINITY)
}

/// Parse a decimal or fraction literal ("1.5", "0.003375", "2", "3/2") into
/// an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    if let Some((a, b)) = s.split_once('/') {
        let num: i64 = a.trim().parse().map_err(|e| format!("bad numerator {a:?}: {e}"))?;
        let den: i64 = b.trim().parse().map_err(|e| format!("bad denominator {b:?}: {e}"))?;
        if den == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Ratio::new(num, den));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1i64, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if frac_part.len() > 15 {
        return Err(format!("{s:?} has too many decimal digits for exact i64 arithmetic"));
    }
    let int_val: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|e| format!("bad integer part {int_part:?}: {e}"))?
    };
    let mut num = int_val;
    let mut den = 1i64;
    for ch in frac_part.chars() {
        let d = ch.to_digit(10).ok_or_else(|| format!("bad digit {ch:?} in {s:?}"))? as i64;
        num = num
            .checked_mul(10)
            .and_then(|n| n.checked_add(d))
            .ok_or_else(|| format!("{s:?} overflows i64"))?;
        den = den.checked_mul(10).ok_or_else(|| format!("{s:?} overflows i64"))?;
    }
    Ok(Ratio::new(sign * num, den))
}

/// Smallest integer L >= 0 with 2^L * alpha >= 1, i.e. ceil(log2(1/alpha)).
/// Exact; requires alpha > 0.
pub fn ceil_log2_inverse(alpha: &Rat) -> u32 {
    assert!(*alpha > Rat::zero(), "alpha must be positive");
    let one = Rat::from_integer(1);
    let two = Rat::from_integer(2);
    let mut level = 0u32;
    let mut acc = *alpha;
    while acc < one {
        acc *= two;
        level += 1;
        assert!(level < 64, "alpha too small");
    }
    level
}

/// floor(r * k) for a nonnegative rational and a count.
pub fn floor_times(r: &Rat, k: usize) -> usize {
    let scaled = *r * Rat::from_integer(k as i64);
    scaled.floor().to_integer().max(0) as usize
}

/// ceil(r * k) for a nonnegative rational and a count.
pub fn ceil_times(r: &Rat, k: usize) -> usize {
    let scaled = *r * Rat::from_integer(k as i64);
    scaled.ceil().to_integer().max(0) as usize
}
