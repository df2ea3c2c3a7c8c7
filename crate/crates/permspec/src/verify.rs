//! Independent certification of constructed matrices: structural properties
//! and spectrum matching by characteristic-polynomial coefficients, with no
//! external eigensolver.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Cx, Scalar};
use crate::spectrum::Spectrum;

/// Tolerances used by `certify`; the rational instance treats every check
/// as exact regardless of these values.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub nonneg: f64,
    pub permutative: f64,
    pub row_sum: f64,
    pub symmetry: f64,
    pub spectral: f64,
    pub imag: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            nonneg: 1e-12,
            permutative: 1e-10,
            row_sum: 1e-10,
            symmetry: 1e-12,
            spectral: 1e-8,
            imag: 1e-10,
        }
    }
}

/// Verification record for one (matrix, spectrum) pair.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub n: usize,
    pub nonneg: bool,
    pub min_entry: f64,
    pub permutative: bool,
    pub row_sum_constant: bool,
    pub row_sum: Option<f64>,
    pub symmetric: bool,
    pub circulant: bool,
    pub spectral_residual: f64,
    pub diag: Vec<f64>,
    pub exact: bool,
    pub tolerances: Tolerances,
}

impl Certificate {
    /// Full structural pass: nonnegative, permutative, constant row sums,
    /// and the spectral match. The contract for the closed-form
    /// constructors.
    pub fn pass(&self) -> bool {
        self.nonneg && self.permutative && self.row_sum_constant && self.spectral_ok()
    }

    /// The matrix is a nonnegative realizer of the target spectrum.
    /// Direct sums of permutative blocks are valid realizations without
    /// being permutative (or row-sum constant) as a whole.
    pub fn valid_realization(&self) -> bool {
        self.nonneg && self.spectral_ok()
    }

    pub fn spectral_ok(&self) -> bool {
        self.spectral_residual <= self.tolerances.spectral
    }
}

/// Every row is a permutation of the first row.
///
/// Floating entries are grouped into equivalence classes by a 1e-10
/// absolute gap before the multiset comparison; adversarial near-ties can
/// defeat the grouping, which is acceptable at desk scale.
pub fn is_permutative<T: Scalar>(m: &Matrix<T>) -> bool {
    is_permutative_tol(m, Tolerances::default().permutative)
}

pub fn is_permutative_tol<T: Scalar>(m: &Matrix<T>, tol: f64) -> bool {
    if !m.is_square() || m.nrows() == 0 {
        return false;
    }
    let sorted_row = |i: usize| {
        let mut row: Vec<T> = m.row(i).to_vec();
        row.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        row
    };
    let first = sorted_row(0);
    for i in 1..m.nrows() {
        let row = sorted_row(i);
        if !first.iter().zip(row.iter()).all(|(a, b)| a.close_to(b, tol)) {
            return false;
        }
    }
    true
}

/// (is_constant, α): whether all rows sum to the same constant.
pub fn row_sums<T: Scalar>(m: &Matrix<T>) -> (bool, Option<T>) {
    row_sums_tol(m, Tolerances::default().row_sum)
}

pub fn row_sums_tol<T: Scalar>(m: &Matrix<T>, tol: f64) -> (bool, Option<T>) {
    if m.nrows() == 0 {
        return (false, None);
    }
    let sums: Vec<T> = (0..m.nrows())
        .map(|i| m.row(i).iter().fold(T::zero(), |a, v| a + v.clone()))
        .collect();
    let first = sums[0].clone();
    if sums.iter().all(|s| s.close_to(&first, tol)) {
        (true, Some(first))
    } else {
        (false, None)
    }
}

/// Entry pattern check: row i equals the first row cyclically shifted
/// right i times.
pub fn is_circulant<T: Scalar>(m: &Matrix<T>, tol: f64) -> bool {
    if !m.is_square() || m.nrows() == 0 {
        return false;
    }
    let n = m.nrows();
    for i in 1..n {
        for j in 0..n {
            if !m[(i, j)].close_to(&m[(0, (j + n - i) % n)], tol) {
                return false;
            }
        }
    }
    true
}

/// Monic characteristic polynomial coefficients by the Faddeev–LeVerrier
/// recurrence, ascending degree: `coeffs[k]` multiplies λ^k and
/// `coeffs[n] = 1`. Exact on rationals.
pub fn char_poly_coeffs<T: Scalar>(m: &Matrix<T>) -> Result<Vec<T>> {
    if !m.is_square() {
        return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
    }
    let n = m.nrows();
    if n > 64 {
        return Err(Error::Dimension(format!("n = {n} exceeds the desk-scale cap of 64")));
    }
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    if n == 0 {
        return Ok(coeffs);
    }
    let mut work = m.clone();
    for k in 1..=n {
        let c = -(work.trace() / T::from_int(k as i64));
        coeffs[n - k] = c.clone();
        if k < n {
            for i in 0..n {
                work[(i, i)] = work[(i, i)].clone() + c.clone();
            }
            work = m.mul(&work);
        }
    }
    Ok(coeffs)
}

/// Monic polynomial with the spectrum's values as roots, by expanding the
/// product of linear factors; imaginary residue above tolerance (exactly
/// nonzero, for rationals) is an error.
pub fn vieta_coeffs<T: Scalar>(s: &Spectrum<T>) -> Result<Vec<T>> {
    vieta_coeffs_tol(s, Tolerances::default().imag)
}

pub fn vieta_coeffs_tol<T: Scalar>(s: &Spectrum<T>, tol: f64) -> Result<Vec<T>> {
    let mut poly: Vec<Cx<T>> = vec![Cx::new(T::one(), T::zero())];
    for root in s.values() {
        let mut next: Vec<Cx<T>> = vec![Cx::new(T::zero(), T::zero()); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + c.clone();
            next[k] = next[k].clone() - c.clone() * root.clone();
        }
        poly = next;
    }
    let mut out = Vec::with_capacity(poly.len());
    for c in &poly {
        if !c.im.close_to(&T::zero(), tol) {
            return Err(Error::ImaginaryResidue(c.im.to_f64()));
        }
        out.push(c.re.clone());
    }
    Ok(out)
}

/// Max relative coefficient difference, denominator max(1, |coef|).
pub fn coeff_residual<T: Scalar>(got: &[T], want: &[T]) -> f64 {
    assert_eq!(got.len(), want.len());
    got.iter()
        .zip(want.iter())
        .map(|(g, w)| {
            let denom = w.abs().to_f64().max(1.0);
            (g.clone() - w.clone()).abs().to_f64() / denom
        })
        .fold(0.0, f64::max)
}

/// Aggregate certification of a constructed matrix against its target
/// spectrum. The spectral check compares `char_poly_coeffs(m)` with
/// `vieta_coeffs(s)` coefficientwise.
pub fn certify<T: Scalar>(m: &Matrix<T>, s: &Spectrum<T>, tol: Tolerances) -> Result<Certificate> {
    if !m.is_square() || m.nrows() != s.n() {
        return Err(Error::Dimension(format!(
            "matrix is {}x{} but the spectrum has {} values",
            m.nrows(),
            m.ncols(),
            s.n()
        )));
    }
    let min_entry = m.min_entry();
    let nonneg = min_entry.nonneg_within(tol.nonneg);
    let permutative = is_permutative_tol(m, tol.permutative);
    let (row_sum_constant, row_sum) = row_sums_tol(m, tol.row_sum);
    let symmetric = m.is_symmetric(tol.symmetry);
    let circulant = is_circulant(m, tol.permutative);
    let got = char_poly_coeffs(m)?;
    let want = vieta_coeffs_tol(s, tol.imag)?;
    let spectral_residual = if T::EXACT {
        if got == want {
            0.0
        } else {
            coeff_residual(&got, &want).max(f64::MIN_POSITIVE)
        }
    } else {
        // The trace recurrence in f64 carries absolute error on the order
        // of ‖A‖ⁿ·ε, which can dominate small low-order coefficients.
        // Finite floats are dyadic rationals, so when the fast residual
        // misses the threshold the comparison is redone exactly.
        let fast = coeff_residual(&got, &want);
        if fast <= tol.spectral {
            fast
        } else {
            exact_residual_of_floats(m, s).unwrap_or(fast)
        }
    };
    Ok(Certificate {
        n: m.nrows(),
        nonneg,
        min_entry: min_entry.to_f64(),
        permutative,
        row_sum_constant,
        row_sum: row_sum.map(|v| v.to_f64()),
        symmetric,
        circulant,
        spectral_residual,
        diag: m.diagonal().iter().map(|v| v.to_f64()).collect(),
        exact: T::EXACT,
        tolerances: tol,
    })
}

/// Dyadic-exact recomputation of the spectral residual for floating
/// inputs. Returns none when the spectrum values are not exactly
/// conjugate-closed (the exact expansion then has a nonzero imaginary
/// part and the fast residual stands).
fn exact_residual_of_floats<T: Scalar>(m: &Matrix<T>, s: &Spectrum<T>) -> Option<f64> {
    let exact_m = Matrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        m[(i, j)].to_exact().unwrap_or_else(crate::scalar::Rat::zero)
    });
    if (0..m.nrows()).any(|i| (0..m.ncols()).any(|j| m[(i, j)].to_exact().is_none())) {
        return None;
    }
    let values: Option<Vec<Cx<crate::scalar::Rat>>> = s
        .values()
        .iter()
        .map(|v| Some(Cx::new(v.re.to_exact()?, v.im.to_exact()?)))
        .collect();
    let exact_s = Spectrum::new(values?).ok()?;
    let got = char_poly_coeffs(&exact_m).ok()?;
    let want = vieta_coeffs_tol(&exact_s, 0.0).ok()?;
    if got == want {
        Some(0.0)
    } else {
        Some(coeff_residual(&got, &want).max(f64::MIN_POSITIVE))
    }
}

/// Evaluate the monic polynomial (ascending coefficients) at x.
pub fn eval_poly(coeffs: &[f64], x: Cx<f64>) -> Cx<f64> {
    let mut acc = Cx::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * x + Cx::new(*c, 0.0);
    }
    acc
}

/// Newton-refine the target values against the matrix's characteristic
/// polynomial and report per-root residuals. The targets are prescribed,
/// so they double as initial guesses; this is reporting machinery, not a
/// general eigensolver.
pub fn newton_root_residuals<T: Scalar>(m: &Matrix<T>, s: &Spectrum<T>) -> Result<Vec<f64>> {
    let coeffs: Vec<f64> = char_poly_coeffs(m)?.iter().map(|c| c.to_f64()).collect();
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let scale = m.inf_norm().max(1.0);
    Ok(s.values()
        .iter()
        .map(|root| {
            let mut x = Cx::new(root.re.to_f64(), root.im.to_f64());
            for _ in 0..20 {
                let f = eval_poly(&coeffs, x);
                let d = eval_poly(&deriv, x);
                if d.norm() < 1e-300 {
                    break;
                }
                let step = f / d;
                x -= step;
                if step.norm() < 1e-15 * scale {
                    break;
                }
            }
            (x - Cx::new(root.re.to_f64(), root.im.to_f64())).norm()
        })
        .collect())
}

/// Polynomial product (ascending coefficients): used for the direct-sum
/// coefficient-convolution identity.
pub fn poly_mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mat_i64;
    use crate::scalar::Rat;

    #[test]
    fn char_poly_frozen_fixtures() {
        // swap matrix: λ² − 1
        let m = mat_i64::<Rat>(&[&[0, 1], &[1, 0]]);
        let c = char_poly_coeffs(&m).unwrap();
        assert_eq!(
            c,
            vec![Rat::from_int(-1), Rat::from_int(0), Rat::from_int(1)]
        );
        // λ³ − 13λ − 12 = (λ−4)(λ+1)(λ+3)
        let p1 = mat_i64::<Rat>(&[&[0, 1, 3], &[1, 0, 3], &[3, 1, 0]]);
        let c = char_poly_coeffs(&p1).unwrap();
        assert_eq!(
            c,
            vec![
                Rat::from_int(-12),
                Rat::from_int(-13),
                Rat::from_int(0),
                Rat::from_int(1)
            ]
        );
        // diag(6,5,1): (λ−6)(λ−5)(λ−1)
        let d = mat_i64::<Rat>(&[&[6, 0, 0], &[0, 5, 0], &[0, 0, 1]]);
        let c = char_poly_coeffs(&d).unwrap();
        assert_eq!(
            c,
            vec![
                Rat::from_int(-30),
                Rat::from_int(41),
                Rat::from_int(-12),
                Rat::from_int(1)
            ]
        );
    }

    #[test]
    fn vieta_frozen_fixtures() {
        let s = Spectrum::from_reals(vec![
            Rat::from_int(4),
            Rat::from_int(-1),
            Rat::from_int(-3),
        ])
        .unwrap();
        assert_eq!(
            vieta_coeffs(&s).unwrap(),
            vec![
                Rat::from_int(-12),
                Rat::from_int(-13),
                Rat::from_int(0),
                Rat::from_int(1)
            ]
        );
        let s = Spectrum::new(vec![Cx::new(Rat::from_int(1), Rat::from_int(0))]).unwrap();
        assert_eq!(
            vieta_coeffs(&s).unwrap(),
            vec![Rat::from_int(-1), Rat::from_int(1)]
        );
        // {2, −1±i}: λ³ − 2λ − 4
        let s = Spectrum::new(vec![
            Cx::new(Rat::from_int(2), Rat::from_int(0)),
            Cx::new(Rat::from_int(-1), Rat::from_int(1)),
            Cx::new(Rat::from_int(-1), Rat::from_int(-1)),
        ])
        .unwrap();
        assert_eq!(
            vieta_coeffs(&s).unwrap(),
            vec![
                Rat::from_int(-4),
                Rat::from_int(-2),
                Rat::from_int(0),
                Rat::from_int(1)
            ]
        );
    }

    #[test]
    fn vieta_rejects_unbalanced_imaginary_parts() {
        let s = Spectrum::new(vec![
            Cx::new(Rat::from_int(3), Rat::from_int(0)),
            Cx::new(Rat::from_int(-1), Rat::from_int(1)),
            Cx::new(Rat::from_int(-1), Rat::from_int(2)),
        ])
        .unwrap();
        assert!(vieta_coeffs(&s).is_err());
    }

    #[test]
    fn permutative_checks() {
        assert!(is_permutative(&mat_i64::<Rat>(&[&[1, 0], &[0, 1]])));
        assert!(!is_permutative(&mat_i64::<Rat>(&[&[1, 2], &[1, 1]])));
        let p1 = mat_i64::<Rat>(&[&[0, 1, 3], &[1, 0, 3], &[3, 1, 0]]);
        assert!(is_permutative(&p1));
    }

    #[test]
    fn row_sum_checks() {
        let (ok, alpha) = row_sums(&mat_i64::<Rat>(&[&[0, 0], &[0, 0]]));
        assert!(ok);
        assert_eq!(alpha.unwrap(), Rat::from_int(0));
        let (ok, _) = row_sums(&mat_i64::<Rat>(&[&[1, 0], &[0, 2]]));
        assert!(!ok);
    }

    #[test]
    fn certify_identity_pair() {
        let m = mat_i64::<Rat>(&[&[1, 0], &[0, 1]]);
        let s = Spectrum::from_reals(vec![Rat::from_int(1), Rat::from_int(1)]).unwrap();
        let cert = certify(&m, &s, Tolerances::default()).unwrap();
        assert!(cert.pass());
        assert_eq!(cert.spectral_residual, 0.0);
        assert!(cert.symmetric);
    }

    #[test]
    fn certify_dimension_mismatch() {
        let m = mat_i64::<Rat>(&[&[1, 0], &[0, 1]]);
        let s = Spectrum::from_reals(vec![Rat::from_int(1)]).unwrap();
        assert!(certify(&m, &s, Tolerances::default()).is_err());
    }

    #[test]
    fn circulant_pattern() {
        let c = mat_i64::<Rat>(&[&[1, 2, 3], &[3, 1, 2], &[2, 3, 1]]);
        assert!(is_circulant(&c, 0.0));
        let not = mat_i64::<Rat>(&[&[1, 2, 3], &[2, 1, 3], &[2, 3, 1]]);
        assert!(!is_circulant(&not, 0.0));
    }

    #[test]
    fn transpose_has_same_char_poly() {
        let m = mat_i64::<Rat>(&[&[1, 7, 0], &[2, 0, 1], &[5, 1, 1]]);
        assert_eq!(
            char_poly_coeffs(&m).unwrap(),
            char_poly_coeffs(&m.transpose()).unwrap()
        );
    }
}
