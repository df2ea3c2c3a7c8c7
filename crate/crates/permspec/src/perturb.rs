//! Spectral rank-one and rank-r perturbation primitives.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

const EIGEN_RESIDUAL_TOL: f64 = 1e-9;
const GRAM_DET_TOL: f64 = 1e-10;
const ORTHO_TOL: f64 = 1e-10;
const SYM_TOL: f64 = 1e-12;

/// Eigenvector columns x₁..x_r with their eigenvalues λ₁..λ_r (diagonal Ω).
#[derive(Clone, Debug)]
pub struct EigenPairSet<T: Scalar> {
    x: Matrix<T>,
    omega: Vec<T>,
}

impl<T: Scalar> EigenPairSet<T> {
    /// Validates rank(X) = r (Gram-determinant proxy) and A·xᵢ ≈ λᵢ·xᵢ with
    /// relative residual at most 1e-9·‖A‖∞.
    pub fn new(a: &Matrix<T>, x: Matrix<T>, omega: Vec<T>) -> Result<Self> {
        if x.ncols() != omega.len() || x.nrows() != a.nrows() || !a.is_square() {
            return Err(Error::Dimension(format!(
                "A is {}x{}, X is {}x{}, Ω has {} values",
                a.nrows(),
                a.ncols(),
                x.nrows(),
                x.ncols(),
                omega.len()
            )));
        }
        let gram = x.transpose().mul(&x);
        let det = gram.det().to_f64();
        if det.abs() <= GRAM_DET_TOL {
            return Err(Error::RankDeficient(det));
        }
        let scale = a.inf_norm().max(1.0);
        for (i, lambda) in omega.iter().enumerate() {
            let col: Vec<T> = (0..x.nrows()).map(|r| x[(r, i)].clone()).collect();
            let av = a.mul_vec(&col);
            let residual = av
                .iter()
                .zip(col.iter())
                .map(|(got, v)| (got.clone() - lambda.clone() * v.clone()).abs().to_f64())
                .fold(0.0, f64::max);
            if residual > EIGEN_RESIDUAL_TOL * scale {
                return Err(Error::NotAnEigenvector {
                    residual: residual / scale,
                    tol: EIGEN_RESIDUAL_TOL,
                });
            }
        }
        Ok(EigenPairSet { x, omega })
    }

    pub fn x(&self) -> &Matrix<T> {
        &self.x
    }

    pub fn omega(&self) -> &[T] {
        &self.omega
    }

    pub fn rank(&self) -> usize {
        self.omega.len()
    }

    /// Ω + C·X, the small r×r matrix whose eigenvalues replace Ω's.
    pub fn updated_block(&self, c: &Matrix<T>) -> Matrix<T> {
        let mut block = c.mul(&self.x);
        for (i, lambda) in self.omega.iter().enumerate() {
            block[(i, i)] = block[(i, i)].clone() + lambda.clone();
        }
        block
    }
}

/// Rank-one update A + v·qᵀ. Replaces the eigenvalue carried by v with
/// λ + vᵀq and leaves the rest of the spectrum unchanged.
pub fn brauer_update<T: Scalar>(a: &Matrix<T>, v: &[T], q: &[T]) -> Result<Matrix<T>> {
    let n = a.nrows();
    if !a.is_square() || v.len() != n || q.len() != n {
        return Err(Error::Dimension(format!(
            "A is {}x{}, v has {} entries, q has {}",
            a.nrows(),
            a.ncols(),
            v.len(),
            q.len()
        )));
    }
    // The eigenvalue is recovered from A·v at the largest component of v.
    let av = a.mul_vec(v);
    let pivot = (0..n)
        .max_by(|&i, &j| {
            v[i].abs()
                .partial_cmp(&v[j].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("non-empty vector");
    if v[pivot].is_zero() {
        return Err(Error::NotAnEigenvector {
            residual: f64::INFINITY,
            tol: EIGEN_RESIDUAL_TOL,
        });
    }
    let lambda = av[pivot].clone() / v[pivot].clone();
    let scale = a.inf_norm().max(1.0);
    let residual = av
        .iter()
        .zip(v.iter())
        .map(|(got, vi)| (got.clone() - lambda.clone() * vi.clone()).abs().to_f64())
        .fold(0.0, f64::max);
    if T::EXACT {
        if residual != 0.0 {
            return Err(Error::NotAnEigenvector {
                residual: residual / scale,
                tol: 0.0,
            });
        }
    } else if residual > EIGEN_RESIDUAL_TOL * scale {
        return Err(Error::NotAnEigenvector {
            residual: residual / scale,
            tol: EIGEN_RESIDUAL_TOL,
        });
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        a[(i, j)].clone() + v[i].clone() * q[j].clone()
    }))
}

/// Rank-r update A + X·C for an r×n matrix C. The spectrum becomes
/// (spectrum of Ω + C·X) ∪ {λ_{r+1}, …, λ_n}.
pub fn rado_update<T: Scalar>(
    a: &Matrix<T>,
    pairs: &EigenPairSet<T>,
    c: &Matrix<T>,
) -> Result<Matrix<T>> {
    let n = a.nrows();
    if c.nrows() != pairs.rank() || c.ncols() != n || pairs.x().nrows() != n {
        return Err(Error::Dimension(format!(
            "C is {}x{}, expected {}x{}",
            c.nrows(),
            c.ncols(),
            pairs.rank(),
            n
        )));
    }
    Ok(a.add(&pairs.x().mul(c)))
}

/// Symmetric rank-r update A + X·C·Xᵀ with orthonormal eigenvector columns
/// X and symmetric C. The spectrum becomes (spectrum of Ω + C) ∪ rest.
/// The result is mirrored from its upper triangle so that symmetric inputs
/// produce a bitwise-symmetric output.
pub fn symmetric_rado_update<T: Scalar>(
    a: &Matrix<T>,
    x: &Matrix<T>,
    omega: &[T],
    c: &Matrix<T>,
) -> Result<Matrix<T>> {
    let n = a.nrows();
    let r = omega.len();
    if x.nrows() != n || x.ncols() != r || c.nrows() != r || c.ncols() != r {
        return Err(Error::Dimension(format!(
            "X is {}x{}, C is {}x{}, expected {}x{} and {}x{}",
            x.nrows(),
            x.ncols(),
            c.nrows(),
            c.ncols(),
            n,
            r,
            r,
            r
        )));
    }
    let asym = a.max_asymmetry();
    if asym > SYM_TOL {
        return Err(Error::NotSymmetric(asym));
    }
    let casym = c.max_asymmetry();
    if casym > SYM_TOL {
        return Err(Error::NotSymmetric(casym));
    }
    let gram = x.transpose().mul(&x);
    let id = Matrix::<T>::identity(r);
    let dev = gram.sub(&id).max_abs();
    if dev > ORTHO_TOL {
        return Err(Error::NotOrthonormal(dev));
    }
    EigenPairSet::new(a, x.clone(), omega.to_vec())?;

    let xc = x.mul(c);
    let update = xc.mul(&x.transpose());
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let val = a[(i, j)].clone() + update[(i, j)].clone();
            out[(i, j)] = val.clone();
            if i != j {
                out[(j, i)] = val;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mat_i64;
    use crate::scalar::Rat;
    use crate::spectrum::Spectrum;
    use crate::verify::{char_poly_coeffs, poly_mul, vieta_coeffs};

    fn ones<T: Scalar>(n: usize) -> Vec<T> {
        vec![T::one(); n]
    }

    #[test]
    fn brauer_reproduces_the_suleimanova_seed() {
        // Initial matrix C for Γ = {4,−1,−3} with α = 0, then q = (−4,1,3).
        let c = mat_i64::<Rat>(&[&[4, 0, 0], &[5, -1, 0], &[7, 0, -3]]);
        let q = vec![Rat::from_int(-4), Rat::from_int(1), Rat::from_int(3)];
        let p1 = brauer_update(&c, &ones::<Rat>(3), &q).unwrap();
        assert_eq!(p1, mat_i64::<Rat>(&[&[0, 1, 3], &[1, 0, 3], &[3, 1, 0]]));
    }

    #[test]
    fn brauer_zero_perturbation_is_identity() {
        let a = mat_i64::<Rat>(&[&[2, 1], &[1, 2]]);
        let out = brauer_update(&a, &ones::<Rat>(2), &[Rat::from_int(0), Rat::from_int(0)])
            .unwrap();
        assert_eq!(out, a);
    }

    #[test]
    fn brauer_rejects_non_eigenvectors() {
        let a = mat_i64::<Rat>(&[&[1, 2], &[0, 1]]);
        // e is not an eigenvector of this matrix (row sums 3 and 1)
        assert!(brauer_update(&a, &ones::<Rat>(2), &[Rat::from_int(1), Rat::from_int(0)])
            .is_err());
    }

    #[test]
    fn brauer_shifts_exactly_one_eigenvalue() {
        // A in CS_7 (row sums 7): char(A + e qᵀ)(x)·(x − 7) == char(A)(x)·(x − 7 − Σq)
        let a = mat_i64::<Rat>(&[&[3, 2, 2], &[0, 5, 2], &[1, 1, 5]]);
        let q = vec![Rat::from_int(2), Rat::from_int(-1), Rat::from_int(4)];
        let shifted = brauer_update(&a, &ones::<Rat>(3), &q).unwrap();
        let total: Rat = q.iter().cloned().sum();
        let lhs = poly_mul(
            &char_poly_coeffs(&shifted).unwrap(),
            &[-Rat::from_int(7), Rat::from_int(1)],
        );
        let rhs = poly_mul(
            &char_poly_coeffs(&a).unwrap(),
            &[-(Rat::from_int(7) + total), Rat::from_int(1)],
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rado_with_zero_c_is_identity() {
        let a = mat_i64::<Rat>(&[&[1, 1], &[1, 1]]);
        let pairs = EigenPairSet::new(
            &a,
            Matrix::from_fn(2, 1, |_, _| Rat::from_int(1)),
            vec![Rat::from_int(2)],
        )
        .unwrap();
        let c = Matrix::<Rat>::zeros(1, 2);
        assert_eq!(rado_update(&a, &pairs, &c).unwrap(), a);
    }

    #[test]
    fn rank_one_rado_is_bitwise_brauer() {
        let a = mat_i64::<Rat>(&[&[3, 2, 2], &[0, 5, 2], &[1, 1, 5]]);
        let q = vec![Rat::ratio(1, 2), Rat::from_int(-2), Rat::ratio(7, 3)];
        let pairs = EigenPairSet::new(
            &a,
            Matrix::from_fn(3, 1, |_, _| Rat::from_int(1)),
            vec![Rat::from_int(7)],
        )
        .unwrap();
        let c = Matrix::from_fn(1, 3, |_, j| q[j].clone());
        assert_eq!(
            rado_update(&a, &pairs, &c).unwrap(),
            brauer_update(&a, &ones::<Rat>(3), &q).unwrap()
        );
    }

    #[test]
    fn symmetric_rado_spectrum_identity() {
        // A = diag of two swap blocks, X = normalized block indicators.
        let a = mat_i64::<f64>(&[
            &[0, 5, 0, 0],
            &[5, 0, 0, 0],
            &[0, 0, 0, 5],
            &[0, 0, 5, 0],
        ]);
        let s = 0.5_f64.sqrt();
        let x = Matrix::from_fn(4, 2, |i, j| if i / 2 == j { s } else { 0.0 });
        let omega = vec![5.0, 5.0];
        let c = mat_i64::<f64>(&[&[1, 2], &[2, 1]]);
        let p = symmetric_rado_update(&a, &x, &omega, &c).unwrap();
        assert_eq!(p.max_asymmetry(), 0.0);
        // char(P)·char(Ω) == char(Ω+C)·char(A)
        let omega_m = mat_i64::<f64>(&[&[5, 0], &[0, 5]]);
        let omega_c = omega_m.add(&c);
        let lhs = poly_mul(
            &char_poly_coeffs(&p).unwrap(),
            &char_poly_coeffs(&omega_m).unwrap(),
        );
        let rhs = poly_mul(
            &char_poly_coeffs(&omega_c).unwrap(),
            &char_poly_coeffs(&a).unwrap(),
        );
        for (l, r) in lhs.iter().zip(rhs.iter()) {
            assert!((l - r).abs() <= 1e-9 * (1.0 + r.abs()));
        }
    }

    #[test]
    fn symmetric_rado_rejects_asymmetry() {
        let a = mat_i64::<f64>(&[&[0, 1], &[2, 0]]);
        let x = Matrix::from_fn(2, 1, |_, _| 0.5_f64.sqrt());
        assert!(symmetric_rado_update(&a, &x, &[1.0], &mat_i64::<f64>(&[&[1]])).is_err());
    }

    #[test]
    fn rado_example_spectrum_via_vieta() {
        // Block-diagonal CS blocks with known e-eigenpairs, then the block
        // shift; the result must carry the predicted spectrum exactly.
        let p1 = mat_i64::<Rat>(&[&[0, 1, 3], &[1, 0, 3], &[3, 1, 0]]);
        let a = Matrix::block_diag(&[&p1, &p1]);
        let mut x = Matrix::<Rat>::zeros(6, 2);
        for i in 0..3 {
            x[(i, 0)] = Rat::from_int(1);
            x[(i + 3, 1)] = Rat::from_int(1);
        }
        let pairs = EigenPairSet::new(&a, x.clone(), vec![Rat::from_int(4); 2]).unwrap();
        // C = (B − 4I)·Xᵀ/3 for B = [[4,2],[2,4]] moves {4,4} to {6,2}.
        let b_minus = mat_i64::<Rat>(&[&[0, 2], &[2, 0]]);
        let c = b_minus.mul(&x.transpose()).scale(&Rat::ratio(1, 3));
        let p = rado_update(&a, &pairs, &c).unwrap();
        let target = Spectrum::from_reals(vec![
            Rat::from_int(6),
            Rat::from_int(2),
            Rat::from_int(-1),
            Rat::from_int(-1),
            Rat::from_int(-3),
            Rat::from_int(-3),
        ])
        .unwrap();
        assert_eq!(
            char_poly_coeffs(&p).unwrap(),
            vieta_coeffs(&target).unwrap()
        );
    }
}
