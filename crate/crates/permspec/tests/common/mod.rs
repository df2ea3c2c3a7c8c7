//! Shared test support: an independent characteristic-polynomial oracle
//! (fraction-free elimination + Lagrange interpolation, deliberately a
//! different algorithm from the library's trace recurrence), an exact
//! quadratic extension field for the √3-valued golden matrix, seeded
//! generators for the property suites, and the printed golden fixtures.

#![allow(dead_code)]

use num_complex::Complex64;
use permspec::matrix::Matrix;
use permspec::scalar::{rat_from_str, Rat, Scalar};
use rand::Rng;

// ── Minimal field abstraction for the oracle ────────────────────────

pub trait TField: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl TField for Rat {
    fn zero() -> Self {
        <Rat as num_traits::Zero>::zero()
    }
    fn one() -> Self {
        <Rat as num_traits::One>::one()
    }
    fn from_i64(v: i64) -> Self {
        Rat::from_int(v)
    }
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn div(&self, o: &Self) -> Self {
        self.clone() / o.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Exact arithmetic in Q(√3): values a + b·√3 with rational a, b.
#[derive(Clone, Debug, PartialEq)]
pub struct Quad3 {
    pub a: Rat,
    pub b: Rat,
}

impl Quad3 {
    pub fn rational(a: Rat) -> Self {
        Quad3 {
            a,
            b: TField::zero(),
        }
    }

    pub fn sqrt3(coeff: Rat) -> Self {
        Quad3 {
            a: TField::zero(),
            b: coeff,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * 3.0_f64.sqrt()
    }

    /// The rational part, provided the √3 part vanishes.
    pub fn as_rational(&self) -> Option<Rat> {
        if TField::is_zero(&self.b) {
            Some(self.a.clone())
        } else {
            None
        }
    }
}

impl TField for Quad3 {
    fn zero() -> Self {
        Quad3::rational(TField::zero())
    }
    fn one() -> Self {
        Quad3::rational(TField::one())
    }
    fn from_i64(v: i64) -> Self {
        Quad3::rational(Rat::from_int(v))
    }
    fn add(&self, o: &Self) -> Self {
        Quad3 {
            a: self.a.clone() + o.a.clone(),
            b: self.b.clone() + o.b.clone(),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Quad3 {
            a: self.a.clone() - o.a.clone(),
            b: self.b.clone() - o.b.clone(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let three = Rat::from_int(3);
        Quad3 {
            a: self.a.clone() * o.a.clone() + three * self.b.clone() * o.b.clone(),
            b: self.a.clone() * o.b.clone() + self.b.clone() * o.a.clone(),
        }
    }
    fn div(&self, o: &Self) -> Self {
        // 1/(a + b√3) = (a − b√3)/(a² − 3b²); the norm vanishes only at 0.
        let three = Rat::from_int(3);
        let norm = o.a.clone() * o.a.clone() - three * o.b.clone() * o.b.clone();
        assert!(!TField::is_zero(&norm), "division by zero in Q(√3)");
        Quad3 {
            a: (self.a.clone() * o.a.clone()
                - Rat::from_int(3) * self.b.clone() * o.b.clone())
                / norm.clone(),
            b: (self.b.clone() * o.a.clone() - self.a.clone() * o.b.clone()) / norm,
        }
    }
    fn neg(&self) -> Self {
        Quad3 {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        TField::is_zero(&self.a) && TField::is_zero(&self.b)
    }
}

/// Exact determinant by Gaussian elimination with exact division.
pub fn det_field<F: TField>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        let d = a[col][col].clone();
        det = det.mul(&d);
        for r in (col + 1)..n {
            let factor = a[r][col].div(&d);
            for j in col..n {
                let s = a[col][j].mul(&factor);
                a[r][j] = a[r][j].sub(&s);
            }
        }
    }
    det
}

/// Independent characteristic-polynomial oracle: evaluates det(xI − A) at
/// x = 0, 1, …, n and Lagrange-interpolates the coefficients (ascending
/// degree, monic). Exact over any `TField`.
pub fn char_poly_oracle<F: TField>(m: &[Vec<F>]) -> Vec<F> {
    let n = m.len();
    let mut samples: Vec<(F, F)> = Vec::with_capacity(n + 1);
    for t in 0..=(n as i64) {
        let x = F::from_i64(t);
        let shifted: Vec<Vec<F>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            x.sub(&m[i][j])
                        } else {
                            m[i][j].neg()
                        }
                    })
                    .collect()
            })
            .collect();
        samples.push((x, det_field(&shifted)));
    }
    lagrange_interpolate(&samples)
}

fn lagrange_interpolate<F: TField>(samples: &[(F, F)]) -> Vec<F> {
    let n = samples.len();
    let mut coeffs = vec![F::zero(); n];
    for (t, (xt, yt)) in samples.iter().enumerate() {
        // basis polynomial Π_{s≠t} (x − x_s) / (x_t − x_s)
        let mut basis = vec![F::one()];
        let mut denom = F::one();
        for (s, (xs, _)) in samples.iter().enumerate() {
            if s == t {
                continue;
            }
            let mut next = vec![F::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] = next[k + 1].add(c);
                next[k] = next[k].sub(&c.mul(xs));
            }
            basis = next;
            denom = denom.mul(&xt.sub(xs));
        }
        let scale = yt.div(&denom);
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] = coeffs[k].add(&c.mul(&scale));
        }
    }
    coeffs
}

/// Oracle over a library rational matrix.
pub fn char_poly_oracle_rat(m: &Matrix<Rat>) -> Vec<Rat> {
    let rows: Vec<Vec<Rat>> = (0..m.nrows()).map(|i| m.row(i).to_vec()).collect();
    char_poly_oracle(&rows)
}

/// Oracle over f64 (for floating cross-checks).
pub fn char_poly_oracle_f64(m: &Matrix<f64>) -> Vec<f64> {
    let rows: Vec<Vec<Rf>> = (0..m.nrows())
        .map(|i| m.row(i).iter().map(|&v| Rf(v)).collect())
        .collect();
    char_poly_oracle(&rows).into_iter().map(|v| v.0).collect()
}

/// f64 wrapped as a TField (approximate, for cross-checks only).
#[derive(Clone, Debug, PartialEq)]
pub struct Rf(pub f64);

impl TField for Rf {
    fn zero() -> Self {
        Rf(0.0)
    }
    fn one() -> Self {
        Rf(1.0)
    }
    fn from_i64(v: i64) -> Self {
        Rf(v as f64)
    }
    fn add(&self, o: &Self) -> Self {
        Rf(self.0 + o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rf(self.0 - o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Rf(self.0 * o.0)
    }
    fn div(&self, o: &Self) -> Self {
        Rf(self.0 / o.0)
    }
    fn neg(&self) -> Self {
        Rf(-self.0)
    }
    fn is_zero(&self) -> bool {
        self.0.abs() < 1e-300
    }
}

/// Integer polynomial product (ascending coefficients) for building exact
/// target polynomials in tests.
pub fn poly_mul_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// ── Fixture parsing ─────────────────────────────────────────────────

/// Parse a whitespace matrix fixture with entries like "2/3" or "-1".
pub fn rat_matrix(rows: &[&str]) -> Matrix<Rat> {
    let data: Vec<Vec<Rat>> = rows
        .iter()
        .map(|row| {
            row.split_whitespace()
                .map(|tok| rat_from_str(tok).expect("fixture token"))
                .collect()
        })
        .collect();
    Matrix::from_rows(data).expect("fixture shape")
}

pub fn rat_vec(tokens: &str) -> Vec<Rat> {
    tokens
        .split_whitespace()
        .map(|tok| rat_from_str(tok).expect("fixture token"))
        .collect()
}

// ── Printed golden matrices ─────────────────────────────────────────

/// The printed 12×12 block realization for {10,4,2,0,−1⁴,−3⁴}.
pub fn printed_block_12() -> Matrix<Rat> {
    rat_matrix(&[
        "0 1 3  0 0 0  2/3 2/3 2/3  4/3 4/3 4/3",
        "1 0 3  0 0 0  2/3 2/3 2/3  4/3 4/3 4/3",
        "3 1 0  0 0 0  2/3 2/3 2/3  4/3 4/3 4/3",
        "0 0 0  0 1 3  2/3 2/3 2/3  4/3 4/3 4/3",
        "0 0 0  1 0 3  2/3 2/3 2/3  4/3 4/3 4/3",
        "0 0 0  3 1 0  2/3 2/3 2/3  4/3 4/3 4/3",
        "2/3 2/3 2/3  0 0 0  0 1 3  4/3 4/3 4/3",
        "2/3 2/3 2/3  0 0 0  1 0 3  4/3 4/3 4/3",
        "2/3 2/3 2/3  0 0 0  3 1 0  4/3 4/3 4/3",
        "4/3 4/3 4/3  0 0 0  2/3 2/3 2/3  0 1 3",
        "4/3 4/3 4/3  0 0 0  2/3 2/3 2/3  1 0 3",
        "4/3 4/3 4/3  0 0 0  2/3 2/3 2/3  3 1 0",
    ])
}

/// The printed symmetric 8×8 realization for {8,6,3,3,−5⁴}.
pub fn printed_symmetric_8() -> Matrix<Rat> {
    rat_matrix(&[
        "0 5 1 1  1/4 1/4 1/4 1/4",
        "5 0 1 1  1/4 1/4 1/4 1/4",
        "1 1 0 5  1/4 1/4 1/4 1/4",
        "1 1 5 0  1/4 1/4 1/4 1/4",
        "1/4 1/4 1/4 1/4  0 5 1 1",
        "1/4 1/4 1/4 1/4  5 0 1 1",
        "1/4 1/4 1/4 1/4  1 1 0 5",
        "1/4 1/4 1/4 1/4  1 1 5 0",
    ])
}

/// The printed 9×9 realization for {3,2,1,−1±i,−1±i,−1±i} in exact Q(√3):
/// diagonal blocks circ(0, 1−√3/3, 1+√3/3) and (1/3)·eeᵀ blocks at the
/// printed positions (1,3), (2,3), (3,2).
pub fn printed_block_9_quad() -> Vec<Vec<Quad3>> {
    let z = || Quad3::zero();
    let third = Quad3::rational(Rat::ratio(1, 3));
    let lo = Quad3 {
        a: Rat::from_int(1),
        b: Rat::ratio(-1, 3),
    }; // 1 − √3/3
    let hi = Quad3 {
        a: Rat::from_int(1),
        b: Rat::ratio(1, 3),
    }; // 1 + √3/3
    let p1 = vec![
        vec![z(), lo.clone(), hi.clone()],
        vec![hi.clone(), z(), lo.clone()],
        vec![lo.clone(), hi.clone(), z()],
    ];
    let mut out = vec![vec![Quad3::zero(); 9]; 9];
    let put_block = |out: &mut Vec<Vec<Quad3>>, bi: usize, bj: usize, block: &dyn Fn(usize, usize) -> Quad3| {
        for i in 0..3 {
            for j in 0..3 {
                out[3 * bi + i][3 * bj + j] = block(i, j);
            }
        }
    };
    for d in 0..3 {
        let p1c = p1.clone();
        put_block(&mut out, d, d, &move |i, j| p1c[i][j].clone());
    }
    for (bi, bj) in [(0, 2), (1, 2), (2, 1)] {
        let t = third.clone();
        put_block(&mut out, bi, bj, &move |_, _| t.clone());
    }
    out
}

// ── Seeded generators for the property suites ───────────────────────

/// Real Suleimanova-type list: λ₁ > 0, negative tail, Σ ≥ 0.
pub fn gen_real_suleimanova<R: Rng>(rng: &mut R, n: usize, force_zero_sum: bool) -> Vec<f64> {
    let tail: Vec<f64> = (0..n - 1).map(|_| -rng.gen_range(0.01..1.0)).collect();
    let neg_sum: f64 = -tail.iter().sum::<f64>();
    let lambda1 = if force_zero_sum {
        neg_sum
    } else {
        neg_sum + rng.gen_range(0.0..0.8)
    };
    let mut out = vec![lambda1];
    out.extend(tail);
    out
}

/// Conjugate-closed complex Suleimanova-type list (as a value multiset),
/// Σ ≥ 0, tail inside Re ≤ 0, |Re| ≥ |Im|. Real tail values come in equal
/// pairs (plus one loose value when the length forces a self-paired slot)
/// so the mirrored ordering exists.
pub fn gen_complex_suleimanova<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    assert!(n >= 2);
    let mut tail: Vec<Complex64> = Vec::new();
    let mut slots = n - 1;
    // odd tail length needs one self-paired real value
    if slots % 2 == 1 {
        tail.push(Complex64::new(-rng.gen_range(0.01..1.0), 0.0));
        slots -= 1;
    }
    while slots > 0 {
        if rng.gen_bool(0.65) {
            let re: f64 = -rng.gen_range(0.01..1.0);
            let im = rng.gen_range(0.0..re.abs());
            tail.push(Complex64::new(re, im));
            tail.push(Complex64::new(re, -im));
        } else {
            let v = -rng.gen_range(0.01..1.0);
            tail.push(Complex64::new(v, 0.0));
            tail.push(Complex64::new(v, 0.0));
        }
        slots -= 2;
    }
    let mu: f64 = -tail.iter().map(|z| z.re).sum::<f64>();
    let lambda1 = mu + rng.gen_range(0.0..0.5);
    let mut out = vec![Complex64::new(lambda1, 0.0)];
    out.extend(tail);
    out
}

/// Conjugate-pair triple {λ₁, a±bi} passing all four n=3 conditions.
pub fn gen_lolo_pass<R: Rng>(rng: &mut R) -> (f64, f64, f64) {
    loop {
        let lambda1 = rng.gen_range(0.5..6.0);
        let a = rng.gen_range(-lambda1 / 2.0..lambda1);
        let bmax = ((lambda1 - a) / 3.0_f64.sqrt()).min((lambda1 * lambda1 - a * a).max(0.0).sqrt());
        if bmax <= 1e-9 {
            continue;
        }
        let b = rng.gen_range(0.0..bmax);
        return (lambda1, a, b);
    }
}

/// Conjugate-pair triple failing ONLY the quadratic condition: conjugate
/// closure, Perron dominance, and Σ ≥ 0 all hold, but (λ₁−a)² < 3b².
pub fn gen_lolo_fail_quadratic<R: Rng>(rng: &mut R) -> (f64, f64, f64) {
    loop {
        let lambda1 = rng.gen_range(0.5..6.0);
        // λ1 + 2a > 0 strictly so the b-window is nonempty
        let a = rng.gen_range(-lambda1 / 2.0 * 0.98..lambda1 * 0.99);
        let lo = (lambda1 - a) / 3.0_f64.sqrt();
        let hi = (lambda1 * lambda1 - a * a).max(0.0).sqrt();
        if lo * 1.0001 >= hi {
            continue;
        }
        let b = rng.gen_range(lo * 1.0001..hi);
        return (lambda1, a, b);
    }
}
