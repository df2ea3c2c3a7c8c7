//! Circulant realizations via the inverse DFT, the closed-form first-row
//! coefficients, and the 3×3 realizer that exists under the Loewy–London
//! conditions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Cx, Scalar};
use crate::spectrum::{order_conjugate_pairs, pairing_achievable, Spectrum, CONJ_TOL};

/// Round-off clamp: a coefficient below -NEG_CLAMP is a hard error, one in
/// [-NEG_CLAMP, 0) is rounded up to 0.
pub const NEG_CLAMP: f64 = 1e-12;
const IMAG_RESIDUE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Forward computes F·v with f_kj = ω^{kj} (0-based); inverse computes
/// (1/n)·F̄·v. The round trip is the identity within 1e-12.
pub fn dft_apply(direction: Direction, v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    let sign = match direction {
        Direction::Forward => 1.0,
        Direction::Inverse => -1.0,
    };
    let scale = match direction {
        Direction::Forward => 1.0,
        Direction::Inverse => 1.0 / n as f64,
    };
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, x) in v.iter().enumerate() {
                let theta = sign * std::f64::consts::TAU * (k * j) as f64 / n as f64;
                acc += x * Complex64::new(theta.cos(), theta.sin());
            }
            acc * scale
        })
        .collect()
}

/// The n×n circulant whose row i is the first row cyclically shifted right
/// i times. Imaginary parts above tolerance signal a non-conjugate-closed
/// input spectrum.
pub fn circulant_from_first_row(c: &[Complex64]) -> Result<Matrix<f64>> {
    let worst = c.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if worst > IMAG_RESIDUE_TOL {
        return Err(Error::ImaginaryResidue(worst));
    }
    let row: Vec<f64> = c.iter().map(|z| z.re).collect();
    Ok(circulant_from_reals(&row))
}

/// Circulant over any scalar from an already-real first row.
pub fn circulant_from_reals<T: Scalar>(row: &[T]) -> Matrix<T> {
    let n = row.len();
    Matrix::from_fn(n, n, |i, j| row[(j + n - i) % n].clone())
}

fn pairing_satisfied(s: &Spectrum<f64>) -> bool {
    let n = s.n();
    let v = s.values();
    for j in 2..=(n + 1) / 2 {
        let a = &v[j - 1];
        let b = &v[n - j + 1];
        if (a.re - b.re).abs() > 1e-9 || (a.im + b.im).abs() > 1e-9 {
            return false;
        }
    }
    true
}

/// Closed-form first-row coefficient c_k for an ordered spectrum with the
/// mirrored conjugate pairing, with λ₁ replaced by μ. Odd and even lengths
/// use their respective displayed forms.
pub fn ck_formula(s: &Spectrum<f64>, mu: f64, k: usize) -> Result<f64> {
    let n = s.n();
    if !pairing_satisfied(s) {
        return Err(Error::PairingNotAchievable(
            "input spectrum is not in mirrored conjugate-pair order".into(),
        ));
    }
    let v = s.values();
    let m = if n % 2 == 1 { (n - 1) / 2 } else { (n - 2) / 2 };
    let mut acc = mu;
    for j in 2..=m + 1 {
        let theta = std::f64::consts::TAU * (k * (j - 1)) as f64 / n as f64;
        acc += 2.0 * (v[j - 1].re * theta.cos() + v[j - 1].im * theta.sin());
    }
    if n % 2 == 0 {
        let middle = v[m + 1];
        if middle.im.abs() > 1e-9 {
            return Err(Error::PairingNotAchievable(
                "self-paired middle value must be real for an even-length list".into(),
            ));
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * middle.re;
    }
    Ok(acc / n as f64)
}

/// Odd-length variant with μ eliminated via μ = −Σ_{j≥2} λ_j; agrees with
/// `ck_formula` at that μ to round-off.
pub fn ck_formula_zero_mu(s: &Spectrum<f64>, k: usize) -> Result<f64> {
    let n = s.n();
    if n % 2 == 0 {
        return Err(Error::Inapplicable(
            "the eliminated-μ form is stated for odd lengths only".into(),
        ));
    }
    if !pairing_satisfied(s) {
        return Err(Error::PairingNotAchievable(
            "input spectrum is not in mirrored conjugate-pair order".into(),
        ));
    }
    let v = s.values();
    let m = (n - 1) / 2;
    let mut acc = 0.0;
    for j in 2..=m + 1 {
        let theta = std::f64::consts::TAU * (k * (j - 1)) as f64 / n as f64;
        acc += 2.0 * ((theta.cos() - 1.0) * v[j - 1].re + v[j - 1].im * theta.sin());
    }
    Ok(acc / n as f64)
}

/// Preconditions shared by the Suleimanova-type circulant realization:
/// mirrored pairing achievable, tail inside Re ≤ 0 with |Re| ≥ |Im|, and a
/// nonnegative total.
pub(crate) fn suleimanova_preconditions<T: Scalar>(s: &Spectrum<T>) -> Result<()> {
    for v in s.tail() {
        if v.re > T::zero() {
            return Err(Error::Inapplicable(format!(
                "tail value {} + {}i has positive real part",
                v.re, v.im
            )));
        }
        if v.re.abs() < v.im.abs() {
            return Err(Error::Inapplicable(format!(
                "tail value {} + {}i leaves the region |Re| >= |Im|",
                v.re, v.im
            )));
        }
    }
    if !pairing_achievable(s) {
        return Err(Error::PairingNotAchievable(
            "values cannot be arranged into mirrored conjugate pairs".into(),
        ));
    }
    let total = s.sum();
    if !total.im.close_to(&T::zero(), CONJ_TOL) {
        return Err(Error::NotConjugateClosed("sum has an imaginary part".into()));
    }
    if total.re < T::zero() && !total.re.close_to(&T::zero(), NEG_CLAMP) {
        return Err(Error::Inapplicable(format!(
            "the values sum to {} < 0",
            total.re
        )));
    }
    Ok(())
}

/// Circulant realization of a Suleimanova-type list (complex, or real as
/// the degenerate case): builds c_k with μ = −Σ_{j≥2} λ_j, clamps
/// round-off, and adds the (Σλ/n)·eeᵀ shift.
pub fn realize_complex_suleimanova(s: &Spectrum<f64>) -> Result<Matrix<f64>> {
    suleimanova_preconditions(s)?;
    let ordered = order_conjugate_pairs(s)?;
    let n = s.n();
    let tail_sum: f64 = ordered.values().iter().skip(1).map(|v| v.re).sum();
    let mu = -tail_sum;
    let alpha = ordered.perron() + tail_sum; // Σλ
    let mut row = Vec::with_capacity(n);
    for k in 0..n {
        let c = ck_formula(&ordered, mu, k)?;
        if c < -NEG_CLAMP {
            return Err(Error::NegativeCoefficient { index: k, value: c });
        }
        row.push(c.max(0.0) + alpha / n as f64);
    }
    Ok(circulant_from_reals(&row))
}

// ── The 3×3 realizer under the Loewy–London conditions ─────────────

/// The four conditions: conjugate closure, Perron dominance, nonnegative
/// sum, and (Σλ)² ≤ 3·Σλ². Exact arithmetic on rational inputs.
pub(crate) fn loewy_london_ok<T: Scalar>(s: &Spectrum<T>) -> Result<bool> {
    if s.n() != 3 {
        return Err(Error::Dimension(format!(
            "the n=3 condition set received {} values",
            s.n()
        )));
    }
    if !s.is_conjugate_closed() || !s.perron_dominant() {
        return Ok(false);
    }
    let total = s.sum();
    if total.re < T::zero() {
        return Ok(false);
    }
    // Σλ² is real for a conjugate-closed list.
    let sum_sq = s
        .values()
        .iter()
        .fold(Cx::new(T::zero(), T::zero()), |acc, v| {
            acc + v.clone() * v.clone()
        });
    let lhs = total.re.clone() * total.re.clone();
    let rhs = T::from_int(3) * sum_sq.re;
    Ok(lhs <= rhs || lhs.close_to(&rhs, 1e-9))
}

/// True when the list has the shape {λ₁, a+bi, a−bi} (b may be zero).
pub fn conjugate_pair_shape<T: Scalar>(s: &Spectrum<T>) -> bool {
    s.n() == 3 && {
        let tail = s.tail();
        tail[0].re.close_to(&tail[1].re, CONJ_TOL)
            && tail[0].im.close_to(&(-tail[1].im.clone()), CONJ_TOL)
    }
}

/// Inverse-DFT circulant for {λ₁, a+bi, a−bi}; nonnegativity of the first
/// row is implied by the n=3 condition set (equivalently λ₁ − a ≥ √3·|b|),
/// and is still verified entry by entry.
pub fn realize_3x3(s: &Spectrum<f64>) -> Result<Matrix<f64>> {
    if !loewy_london_ok(s)? {
        return Err(Error::Inapplicable(
            "the n=3 realizability conditions do not hold".into(),
        ));
    }
    if !conjugate_pair_shape(s) {
        return Err(Error::Inapplicable(
            "the two non-Perron values are not a conjugate pair".into(),
        ));
    }
    let ordered = order_conjugate_pairs(s)?;
    let lambda: Vec<Complex64> = ordered
        .values()
        .iter()
        .map(|v| Complex64::new(v.re, v.im))
        .collect();
    let c = dft_apply(Direction::Inverse, &lambda);
    let worst_imag = c.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if worst_imag > IMAG_RESIDUE_TOL {
        return Err(Error::ImaginaryResidue(worst_imag));
    }
    let mut row = Vec::with_capacity(3);
    for (k, z) in c.iter().enumerate() {
        if z.re < -NEG_CLAMP {
            return Err(Error::NegativeCoefficient {
                index: k,
                value: z.re,
            });
        }
        row.push(z.re.max(0.0));
    }
    Ok(circulant_from_reals(&row))
}

// ── Exact special cases (used to keep rational pipelines rational) ──

/// circ((α+β)/2, (α−β)/2): realizes {α, β} exactly when α ≥ |β|.
pub fn exact_pair_circulant<T: Scalar>(alpha: &T, beta: &T) -> Option<Matrix<T>> {
    let half = T::ratio(1, 2);
    let c0 = (alpha.clone() + beta.clone()) * half.clone();
    let c1 = (alpha.clone() - beta.clone()) * half;
    if c0 < T::zero() || c1 < T::zero() {
        return None;
    }
    Some(circulant_from_reals(&[c0, c1]))
}

/// circ((λ₁+2a)/3, (λ₁−a)/3, (λ₁−a)/3): realizes {λ₁, a, a} exactly when
/// λ₁ + 2a ≥ 0 and λ₁ ≥ a.
pub fn exact_equal_pair_circulant_3<T: Scalar>(lambda1: &T, a: &T) -> Option<Matrix<T>> {
    let third = T::ratio(1, 3);
    let c0 = (lambda1.clone() + T::from_int(2) * a.clone()) * third.clone();
    let c1 = (lambda1.clone() - a.clone()) * third;
    if c0 < T::zero() || c1 < T::zero() {
        return None;
    }
    Some(circulant_from_reals(&[c0, c1.clone(), c1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_dft_on_example_pair() {
        let c = dft_apply(Direction::Inverse, &[cx(2.0, 0.0), cx(-1.0, 1.0), cx(-1.0, -1.0)]);
        let s3 = 3.0_f64.sqrt() / 3.0;
        assert!((c[0].re - 0.0).abs() < 1e-12);
        assert!((c[1].re - (1.0 + s3)).abs() < 1e-12);
        assert!((c[2].re - (1.0 - s3)).abs() < 1e-12);
        for z in &c {
            assert!(z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn flat_spectrum_gives_constant_row() {
        let c = dft_apply(Direction::Inverse, &[cx(6.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)]);
        for z in &c {
            assert!((z.re - 2.0).abs() < 1e-12 && z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn dft_round_trip_is_identity() {
        let v = vec![cx(0.3, -1.2), cx(2.0, 0.5), cx(-0.7, 0.1), cx(1.0, 1.0), cx(0.0, -2.0)];
        let w = dft_apply(Direction::Inverse, &dft_apply(Direction::Forward, &v));
        for (a, b) in v.iter().zip(w.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn circulant_row_pattern() {
        let m = circulant_from_reals(&[1.0, 2.0, 3.0]);
        assert_eq!(m.row(0), &[1.0, 2.0, 3.0]);
        assert_eq!(m.row(1), &[3.0, 1.0, 2.0]);
        assert_eq!(m.row(2), &[2.0, 3.0, 1.0]);
        let two = circulant_from_reals(&[0.0, 1.0]);
        assert_eq!(two.row(1), &[1.0, 0.0]);
    }

    #[test]
    fn imaginary_residue_is_rejected() {
        assert!(circulant_from_first_row(&[cx(1.0, 0.5), cx(0.0, -0.5)]).is_err());
    }

    #[test]
    fn ck_matches_the_inverse_dft_fixture() {
        let s = Spectrum::new(vec![cx(2.0, 0.0), cx(-1.0, 1.0), cx(-1.0, -1.0)]).unwrap();
        let c0 = ck_formula(&s, 2.0, 0).unwrap();
        let c1 = ck_formula(&s, 2.0, 1).unwrap();
        let s3 = 3.0_f64.sqrt() / 3.0;
        assert!(c0.abs() < 1e-12);
        assert!((c1 - (1.0 + s3)).abs() < 1e-12);
    }

    #[test]
    fn ck_zero_mu_agrees_for_odd_lengths() {
        let s = Spectrum::new(vec![
            cx(4.0, 0.0),
            cx(-1.0, 1.0),
            cx(-0.5, 0.25),
            cx(-0.5, -0.25),
            cx(-1.0, -1.0),
        ])
        .unwrap();
        let ordered = order_conjugate_pairs(&s).unwrap();
        let mu = -ordered.values().iter().skip(1).map(|v| v.re).sum::<f64>();
        for k in 0..5 {
            let a = ck_formula(&ordered, mu, k).unwrap();
            let b = ck_formula_zero_mu(&ordered, k).unwrap();
            assert!((a - b).abs() <= 1e-12, "k={k}: {a} vs {b}");
        }
    }

    #[test]
    fn realize_small_real_pair() {
        let s = Spectrum::new(vec![cx(1.0, 0.0), cx(-1.0, 0.0)]).unwrap();
        let m = realize_complex_suleimanova(&s).unwrap();
        assert_eq!(m.row(0), &[0.0, 1.0]);
        assert_eq!(m.row(1), &[1.0, 0.0]);
    }

    #[test]
    fn realize_five_value_example() {
        let s = Spectrum::new(vec![
            cx(6.0, 0.0),
            cx(-1.0, 1.0),
            cx(-1.0, -1.0),
            cx(-1.0, -1.0),
            cx(-1.0, 1.0),
        ])
        .unwrap();
        let m = realize_complex_suleimanova(&s).unwrap();
        assert!(m.min_entry() >= 0.0);
        for i in 0..5 {
            let sum: f64 = m.row(i).iter().sum();
            assert!((sum - 6.0).abs() < 1e-10);
        }
    }

    #[test]
    fn realize_rejects_region_violations() {
        let s = Spectrum::new(vec![cx(2.0, 0.0), cx(-1.0, 2.0), cx(-1.0, -2.0)]).unwrap();
        assert!(realize_complex_suleimanova(&s).is_err());
    }

    #[test]
    fn lolo_realizer_on_flat_triple() {
        let s = Spectrum::new(vec![cx(3.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)]).unwrap();
        let m = realize_3x3(&s).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((m[(i, j)] - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lolo_realizer_rejects_distinct_reals() {
        let s = Spectrum::new(vec![cx(6.0, 0.0), cx(5.0, 0.0), cx(1.0, 0.0)]).unwrap();
        assert!(realize_3x3(&s).is_err());
    }

    #[test]
    fn exact_pair_matches_the_direct_sum_block() {
        let m = exact_pair_circulant(&Rat::from_int(6), &Rat::from_int(5)).unwrap();
        assert_eq!(m[(0, 0)], Rat::ratio(11, 2));
        assert_eq!(m[(0, 1)], Rat::ratio(1, 2));
        assert!(exact_pair_circulant(&Rat::from_int(1), &Rat::from_int(-2)).is_none());
    }
}
