//! Scalar abstraction: every algorithm in this crate runs either in exact
//! rational arithmetic (`Rat`) or in `f64`, selected by the input's
//! exactness tag. Tolerances are interpreted as exact-zero in the rational
//! instance.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Complex value over a scalar.
pub type Cx<T> = Complex<T>;

pub trait Scalar:
    Clone + PartialEq + PartialOrd + Debug + Display + Num + Signed + 'static
{
    /// True for arithmetic domains where equality is decidable and every
    /// operation is exact.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;
    fn ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Exact rational image of this value, when one exists. Finite floats
    /// are dyadic rationals, so this is total on the values the crate
    /// actually handles.
    fn to_exact(&self) -> Option<Rat>;

    /// |a - b| <= tol, with tol treated as zero in exact arithmetic.
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.clone() - other.clone()).abs().to_f64() <= tol
        }
    }

    /// a >= -tol, with tol treated as zero in exact arithmetic.
    fn nonneg_within(&self, tol: f64) -> bool {
        if Self::EXACT {
            !self.is_negative()
        } else {
            self.to_f64() >= -tol
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_exact(&self) -> Option<Rat> {
        Rat::from_float(*self)
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_exact(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

/// Mean of a slice.
pub fn mean<T: Scalar>(values: &[T]) -> T {
    let sum = values.iter().fold(T::zero(), |acc, v| acc + v.clone());
    sum / T::from_int(values.len() as i64)
}

/// Sum of a slice.
pub fn sum<T: Scalar>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, v| acc + v.clone())
}

/// Parse a decimal literal ("-1.25", "3", "2e3") into an exact rational.
pub fn rat_from_decimal(text: &str) -> Result<Rat> {
    let t = text.trim();
    let bad = || Error::Json(format!("not a decimal number: {t:?}"));
    let (mantissa, exp10) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(bad());
    }
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = frac_part.len() as i64 - exp10;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rat::new(numer, ten.pow(scale as u32))
    } else {
        Rat::from_integer(numer * ten.pow((-scale) as u32))
    };
    Ok(value)
}

/// Parse "p/q" or a decimal literal into an exact rational.
pub fn rat_from_str(text: &str) -> Result<Rat> {
    let t = text.trim();
    if let Some(pos) = t.find('/') {
        let p: BigInt = t[..pos]
            .trim()
            .parse()
            .map_err(|_| Error::Json(format!("bad rational {t:?}")))?;
        let q: BigInt = t[pos + 1..]
            .trim()
            .parse()
            .map_err(|_| Error::Json(format!("bad rational {t:?}")))?;
        if q.is_zero() {
            return Err(Error::Json(format!("zero denominator in {t:?}")));
        }
        Ok(Rat::new(p, q))
    } else {
        rat_from_decimal(t)
    }
}

/// Try to recover a small rational p/q (q <= max_den) close to x.
/// Used to snap numeric search witnesses back onto exact values.
pub fn snap_to_rational(x: f64, max_den: i64, tol: f64) -> Option<Rat> {
    for den in 1..=max_den {
        let num = (x * den as f64).round();
        if num.abs() > 1e15 {
            return None;
        }
        if (num / den as f64 - x).abs() <= tol {
            return Some(Rat::new(BigInt::from(num as i64), BigInt::from(den)));
        }
    }
    None
}

/// Complex conjugate for generic scalar complex values.
pub fn conj<T: Scalar>(z: &Cx<T>) -> Cx<T> {
    Cx::new(z.re.clone(), -z.im.clone())
}

/// True when the imaginary part vanishes (exactly, or within tol).
pub fn is_real<T: Scalar>(z: &Cx<T>, tol: f64) -> bool {
    z.im.close_to(&T::zero(), tol)
}

pub fn cx_to_f64<T: Scalar>(z: &Cx<T>) -> Cx<f64> {
    Cx::new(z.re.to_f64(), z.im.to_f64())
}

/// Descending order on complex values: by real part, then imaginary part.
pub fn cmp_cx_desc<T: Scalar>(a: &Cx<T>, b: &Cx<T>) -> std::cmp::Ordering {
    match b.re.partial_cmp(&a.re) {
        Some(std::cmp::Ordering::Equal) | None => b
            .im
            .partial_cmp(&a.im)
            .unwrap_or(std::cmp::Ordering::Equal),
        Some(ord) => ord,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(rat_from_decimal("-1.25").unwrap(), Rat::ratio(-5, 4));
        assert_eq!(rat_from_decimal("3").unwrap(), Rat::from_int(3));
        assert_eq!(rat_from_decimal("2e3").unwrap(), Rat::from_int(2000));
        assert_eq!(rat_from_decimal("0.1").unwrap(), Rat::ratio(1, 10));
        assert_eq!(rat_from_decimal("1.5e-2").unwrap(), Rat::ratio(3, 200));
    }

    #[test]
    fn rational_string_parsing() {
        assert_eq!(rat_from_str("11/2").unwrap(), Rat::ratio(11, 2));
        assert_eq!(rat_from_str("-4/6").unwrap(), Rat::ratio(-2, 3));
        assert!(rat_from_str("1/0").is_err());
    }

    #[test]
    fn snapping_recovers_thirds() {
        let x = 2.0 / 3.0 + 1e-12;
        assert_eq!(snap_to_rational(x, 48, 1e-9).unwrap(), Rat::ratio(2, 3));
        assert_eq!(snap_to_rational(0.0, 48, 1e-9).unwrap(), Rat::zero());
    }
}
