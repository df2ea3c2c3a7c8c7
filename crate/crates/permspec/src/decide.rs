//! Realizability condition checks, the 3×3 permutative non-realizability
//! decision, and the strategy dispatcher.

use crate::circulant;
use crate::construct::{self, Method};
use crate::error::{Error, Result};
use crate::matrix::{AnyMatrix, Matrix};
use crate::scalar::{snap_to_rational, Cx, Rat, Scalar};
use crate::spectrum::{classify, AnySpectrum, Spectrum, SpectrumTag};
use crate::verify::{certify, Certificate, Tolerances};

// ── Condition checks ────────────────────────────────────────────────

/// All real, λ₁ > 0, λᵢ < 0 for i ≥ 2, and Σλ ≥ 0.
pub fn check_real_suleimanova<T: Scalar>(s: &Spectrum<T>) -> bool {
    classify(s).tag == SpectrumTag::RealSuleimanova && !s.sum().re.is_negative()
}

/// Mirrored conjugate pairing achievable, tail inside Re ≤ 0 with
/// |Re| ≥ |Im|, and Σλ ≥ 0. Real lists qualify as the degenerate case.
pub fn check_complex_suleimanova<T: Scalar>(s: &Spectrum<T>) -> bool {
    circulant::suleimanova_preconditions(s).is_ok()
}

/// The four n=3 realizability conditions, exact on rational inputs.
pub fn check_loewy_london<T: Scalar>(s: &Spectrum<T>) -> Result<bool> {
    circulant::loewy_london_ok(s)
}

/// Greedy deterministic search for a partition into triples that each pass
/// the n=3 conditions. Returns the triples or none.
pub fn check_triple_partition<T: Scalar>(s: &Spectrum<T>) -> Option<Vec<Vec<Cx<T>>>> {
    if s.n() % 3 != 0 {
        return None;
    }
    let mut values = s.values().to_vec();
    values.sort_by(crate::scalar::cmp_cx_desc);
    let mut triples = Vec::new();
    if split_triples(&values, &mut triples) {
        Some(triples)
    } else {
        None
    }
}

fn split_triples<T: Scalar>(remaining: &[Cx<T>], acc: &mut Vec<Vec<Cx<T>>>) -> bool {
    if remaining.is_empty() {
        return true;
    }
    let lead = remaining[0].clone();
    let rest = &remaining[1..];
    for i in 0..rest.len() {
        for j in (i + 1)..rest.len() {
            let candidate = vec![lead.clone(), rest[i].clone(), rest[j].clone()];
            let Ok(spec) = Spectrum::new(candidate.clone()) else {
                continue;
            };
            if !matches!(check_loewy_london(&spec), Ok(true)) {
                continue;
            }
            let mut next: Vec<Cx<T>> = Vec::with_capacity(rest.len() - 2);
            for (k, v) in rest.iter().enumerate() {
                if k != i && k != j {
                    next.push(v.clone());
                }
            }
            acc.push(candidate);
            if split_triples(&next, acc) {
                return true;
            }
            acc.pop();
        }
    }
    false
}

// ── Diagonal-constrained feasibility (the Perfect condition set) ────

/// Necessary and sufficient conditions for a 3×3 nonnegative matrix with
/// spectrum λ (sorted descending) and diagonal d (sorted descending,
/// nonnegative):
///
///   (1) d₁ + d₂ + d₃ = λ₁ + λ₂ + λ₃
///   (2) d₁d₂ + d₁d₃ + d₂d₃ ≥ λ₁λ₂ + λ₁λ₃ + λ₂λ₃
///   (3) λ₂ ≤ d₁ ≤ λ₁
///
/// The cited inequality set is not stated in full where it is used, so the
/// authority for this formula is exhaustive agreement with the independent
/// search oracle `brute_force_diag3`. Under the trace constraint, (3) is
/// equivalent to d₁·(e₂(d) − e₂(λ)) ≥ e₃(d) − e₃(λ): the vertex value of
/// the cycle-sum bound in the oracle's reduction.
pub fn perfect_diag3_check<T: Scalar>(lam: &[T; 3], d: &[T; 3]) -> Result<bool> {
    if d[2].is_negative() {
        return Err(Error::Inapplicable(format!(
            "diagonal entry {} is negative",
            d[2]
        )));
    }
    if lam[0] < lam[1] || lam[1] < lam[2] || d[0] < d[1] || d[1] < d[2] {
        return Err(Error::Inapplicable(
            "inputs must be sorted in descending order".into(),
        ));
    }
    let sum_d = d[0].clone() + d[1].clone() + d[2].clone();
    let sum_l = lam[0].clone() + lam[1].clone() + lam[2].clone();
    if !sum_d.close_to(&sum_l, 1e-9) {
        return Ok(false);
    }
    let e2_d = d[0].clone() * d[1].clone() + d[0].clone() * d[2].clone() + d[1].clone() * d[2].clone();
    let e2_l = lam[0].clone() * lam[1].clone()
        + lam[0].clone() * lam[2].clone()
        + lam[1].clone() * lam[2].clone();
    if e2_d < e2_l && !e2_d.close_to(&e2_l, 1e-9) {
        return Ok(false);
    }
    let d1_high = d[0] <= lam[0] || d[0].close_to(&lam[0], 1e-9);
    let d1_low = d[0] >= lam[1] || d[0].close_to(&lam[1], 1e-9);
    Ok(d1_high && d1_low)
}

/// Independent search oracle for the same question. Off-diagonal entries
/// are reduced to pair products p = m₁₂m₂₁, q = m₁₃m₃₁, r = m₂₃m₃₂ and
/// the two 3-cycle products u, v with u·v = p·q·r; coefficient matching
/// forces p + q + r = e₂(d) − e₂(λ) and u + v = T(p,q,r), and u, v ≥ 0
/// exist iff T ≥ 0 and T² ≥ 4pqr. The oracle scans a grid over the
/// (p, q) simplex (vertices included) and reports whether any point is
/// feasible.
pub fn brute_force_diag3(lam: [f64; 3], d: [f64; 3], grid_steps: usize) -> bool {
    let sum_d = d[0] + d[1] + d[2];
    let sum_l = lam[0] + lam[1] + lam[2];
    if (sum_d - sum_l).abs() > 1e-9 {
        return false;
    }
    let e2_d = d[0] * d[1] + d[0] * d[2] + d[1] * d[2];
    let e2_l = lam[0] * lam[1] + lam[0] * lam[2] + lam[1] * lam[2];
    let delta2 = e2_d - e2_l;
    if delta2 < -1e-12 {
        return false;
    }
    let delta2 = delta2.max(0.0);
    let e3_d = d[0] * d[1] * d[2];
    let e3_l = lam[0] * lam[1] * lam[2];
    let t_at = |p: f64, q: f64, r: f64| d[0] * r + d[1] * q + d[2] * p - e3_d + e3_l;

    let steps = grid_steps.max(1);
    for i in 0..=steps {
        let p = delta2 * i as f64 / steps as f64;
        for j in 0..=(steps - i) {
            let q = delta2 * j as f64 / steps as f64;
            let r = (delta2 - p - q).max(0.0);
            let t = t_at(p, q, r);
            if t >= -1e-12 && t * t >= 4.0 * p * q * r - 1e-12 {
                return true;
            }
        }
    }
    false
}

// ── Brute force over 3×3 permutative patterns ───────────────────────

/// Result of the grid search for one (row-2, row-3) permutation pattern.
#[derive(Clone, Debug)]
pub struct PatternResult {
    pub row2: [usize; 3],
    pub row3: [usize; 3],
    pub min_residual: f64,
    pub best: [f64; 3],
}

#[derive(Clone, Debug)]
pub struct BruteForceReport {
    pub lambda: [f64; 3],
    pub patterns: Vec<PatternResult>,
    pub min_residual: f64,
    pub witness: Option<([f64; 3], [usize; 3], [usize; 3])>,
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn pattern_residual(x: [f64; 3], row2: &[usize; 3], row3: &[usize; 3], t: [f64; 3]) -> f64 {
    let m = [
        [x[0], x[1], x[2]],
        [x[row2[0]], x[row2[1]], x[row2[2]]],
        [x[row3[0]], x[row3[1]], x[row3[2]]],
    ];
    let tr = m[0][0] + m[1][1] + m[2][2];
    let e2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    (tr - t[0]).abs() + (e2 - t[1]).abs() + (det - t[2]).abs()
}

/// Enumerates all 36 permutation patterns for rows 2 and 3 of a candidate
/// first row (a, b, c) with a + b + c = λ₁, grid-searches the simplex at
/// the coarse step, refines by compass descent to the fine step, and
/// reports a witness (residual < 1e-8) or the per-pattern minima.
pub fn brute_force_3x3(lam_in: [f64; 3]) -> BruteForceReport {
    brute_force_3x3_with(lam_in, 1e-2, 1e-6)
}

pub fn brute_force_3x3_with(lam_in: [f64; 3], coarse: f64, fine: f64) -> BruteForceReport {
    let mut lam = lam_in;
    lam.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let lambda1 = lam[0];
    let targets = [
        lam[0] + lam[1] + lam[2],
        lam[0] * lam[1] + lam[0] * lam[2] + lam[1] * lam[2],
        lam[0] * lam[1] * lam[2],
    ];

    let mut patterns = Vec::with_capacity(36);
    let mut global_min = f64::INFINITY;
    let mut witness = None;

    let steps = (lambda1 / coarse).ceil().max(1.0) as usize;
    for row2 in &PERMS {
        for row3 in &PERMS {
            let mut best = (f64::INFINITY, [0.0f64; 3]);
            for i in 0..=steps {
                let a = (lambda1 * i as f64 / steps as f64).min(lambda1);
                for j in 0..=(steps - i) {
                    let b = (lambda1 * j as f64 / steps as f64).min(lambda1 - a);
                    let c = lambda1 - a - b;
                    let res = pattern_residual([a, b, c], row2, row3, targets);
                    if res < best.0 {
                        best = (res, [a, b, c]);
                    }
                }
            }
            // Compass refinement down to the fine step.
            let mut step = coarse;
            let mut x = [best.1[0], best.1[1]];
            let mut val = best.0;
            while step > fine {
                let mut improved = false;
                for (dx, dy) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                    let a = (x[0] + dx).clamp(0.0, lambda1);
                    let b = (x[1] + dy).clamp(0.0, lambda1 - a);
                    let res = pattern_residual([a, b, lambda1 - a - b], row2, row3, targets);
                    if res < val {
                        val = res;
                        x = [a, b];
                        improved = true;
                    }
                }
                if !improved {
                    step /= 2.0;
                }
            }
            let best_point = [x[0], x[1], lambda1 - x[0] - x[1]];
            if val < global_min {
                global_min = val;
                if val < 1e-8 {
                    witness = Some((best_point, *row2, *row3));
                }
            }
            patterns.push(PatternResult {
                row2: *row2,
                row3: *row3,
                min_residual: val,
                best: best_point,
            });
        }
    }
    BruteForceReport {
        lambda: lam,
        patterns,
        min_residual: global_min,
        witness,
    }
}

/// Turn a brute-force witness point into a matrix, snapping to small
/// rationals when that reproduces the spectrum exactly.
pub fn witness_matrix(report: &BruteForceReport, target: &AnySpectrum) -> Option<(AnyMatrix, Certificate)> {
    let (point, row2, row3) = report.witness.as_ref()?;
    let build_f64 = |x: &[f64; 3]| -> Matrix<f64> {
        Matrix::from_rows(vec![
            vec![x[0], x[1], x[2]],
            vec![x[row2[0]], x[row2[1]], x[row2[2]]],
            vec![x[row3[0]], x[row3[1]], x[row3[2]]],
        ])
        .expect("fixed shape")
    };
    if let AnySpectrum::Exact(exact_target) = target {
        let snapped: Option<Vec<Rat>> = point
            .iter()
            .map(|&v| snap_to_rational(v, 48, 1e-5))
            .collect();
        if let Some(vals) = snapped {
            let m = Matrix::from_rows(vec![
                vec![vals[0].clone(), vals[1].clone(), vals[2].clone()],
                vec![
                    vals[row2[0]].clone(),
                    vals[row2[1]].clone(),
                    vals[row2[2]].clone(),
                ],
                vec![
                    vals[row3[0]].clone(),
                    vals[row3[1]].clone(),
                    vals[row3[2]].clone(),
                ],
            ])
            .expect("fixed shape");
            if let Ok(cert) = certify(&m, exact_target, Tolerances::default()) {
                if cert.pass() {
                    return Some((AnyMatrix::Exact(m), cert));
                }
            }
        }
    }
    let m = build_f64(point);
    let cert = certify(&m, &target.to_f64(), Tolerances::default()).ok()?;
    if cert.pass() {
        Some((AnyMatrix::Float(m), cert))
    } else {
        None
    }
}

// ── Decision assembly ───────────────────────────────────────────────

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Realizable,
    NotPermutativelyRealizable3,
    Unknown,
    Invalid,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Realizable => "realizable",
            Verdict::NotPermutativelyRealizable3 => "not-permutatively-realizable-3",
            Verdict::Unknown => "unknown",
            Verdict::Invalid => "invalid-spectrum",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Attempt {
    pub method: &'static str,
    pub outcome: String,
}

#[derive(Clone, Debug)]
pub struct DiagCase {
    pub shape: &'static str,
    pub refuted: bool,
    pub exact: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct BruteSummary {
    pub min_residual: f64,
    pub pattern_minima: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct SideWitness {
    pub label: String,
    pub matrix: AnyMatrix,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub method: Option<Method>,
    pub witness: Option<AnyMatrix>,
    pub certificate: Option<Certificate>,
    pub attempts: Vec<Attempt>,
    pub case_analysis: Option<Vec<DiagCase>>,
    pub brute_force: Option<BruteSummary>,
    pub side_witness: Option<SideWitness>,
    pub detail: String,
}

impl Decision {
    fn unknown(detail: String, attempts: Vec<Attempt>) -> Self {
        Decision {
            verdict: Verdict::Unknown,
            method: None,
            witness: None,
            certificate: None,
            attempts,
            case_analysis: None,
            brute_force: None,
            side_witness: None,
            detail,
        }
    }
}

/// Certify in the common arithmetic domain of matrix and spectrum.
pub fn certify_any(m: &AnyMatrix, s: &AnySpectrum, tol: Tolerances) -> Result<Certificate> {
    match (m, s) {
        (AnyMatrix::Exact(m), AnySpectrum::Exact(s)) => certify(m, s, tol),
        _ => certify(&m.to_f64(), &s.to_f64(), tol),
    }
}

fn attempt_method(
    s: &AnySpectrum,
    method: Method,
    attempts: &mut Vec<Attempt>,
    run: impl FnOnce() -> Result<AnyMatrix>,
) -> Option<(AnyMatrix, Certificate)> {
    let accepts = |cert: &Certificate| {
        if method == Method::DirectSum {
            cert.valid_realization()
        } else {
            cert.pass()
        }
    };
    match run() {
        Ok(matrix) => match certify_any(&matrix, s, Tolerances::default()) {
            Ok(cert) if accepts(&cert) => {
                attempts.push(Attempt {
                    method: method.as_str(),
                    outcome: "constructed and certified".into(),
                });
                Some((matrix, cert))
            }
            Ok(cert) => {
                attempts.push(Attempt {
                    method: method.as_str(),
                    outcome: format!(
                        "constructed but failed certification (residual {:.3e})",
                        cert.spectral_residual
                    ),
                });
                None
            }
            Err(e) => {
                attempts.push(Attempt {
                    method: method.as_str(),
                    outcome: format!("constructed but certification errored: {e}"),
                });
                None
            }
        },
        Err(e) => {
            attempts.push(Attempt {
                method: method.as_str(),
                outcome: format!("inapplicable: {e}"),
            });
            None
        }
    }
}

/// Strategy dispatcher: Suleimanova, circulant, the n=3 realizer, the
/// triple-partition direct sum, the block composition, then a general
/// direct-sum fallback; 3-value real lists additionally run the
/// permutative existence analysis.
pub fn decide(s: &AnySpectrum) -> Decision {
    let f = s.to_f64();
    let class = match s {
        AnySpectrum::Exact(e) => classify(e),
        AnySpectrum::Float(fs) => classify(fs),
    };
    if class.tag == SpectrumTag::Invalid {
        return Decision {
            verdict: Verdict::Invalid,
            method: None,
            witness: None,
            certificate: None,
            attempts: Vec::new(),
            case_analysis: None,
            brute_force: None,
            side_witness: None,
            detail: class.detail,
        };
    }

    let mut attempts: Vec<Attempt> = Vec::new();

    if s.n() == 1 {
        let lambda = f.perron();
        if lambda >= 0.0 {
            let matrix = match s {
                AnySpectrum::Exact(e) => {
                    AnyMatrix::Exact(Matrix::from_fn(1, 1, |_, _| e.perron()))
                }
                AnySpectrum::Float(fs) => {
                    AnyMatrix::Float(Matrix::from_fn(1, 1, |_, _| fs.perron()))
                }
            };
            let cert = certify_any(&matrix, s, Tolerances::default()).ok();
            return Decision {
                verdict: Verdict::Realizable,
                method: Some(Method::Trivial),
                witness: Some(matrix),
                certificate: cert,
                attempts,
                case_analysis: None,
                brute_force: None,
                side_witness: None,
                detail: class.detail,
            };
        }
        return Decision::unknown(
            "a 1-value list with a negative entry has no nonnegative realizer; refutations beyond n=3 are out of scope".into(),
            attempts,
        );
    }

    let realizable = |method: Method,
                      witness: AnyMatrix,
                      cert: Certificate,
                      attempts: Vec<Attempt>,
                      detail: String| Decision {
        verdict: Verdict::Realizable,
        method: Some(method),
        witness: Some(witness),
        certificate: Some(cert),
        attempts,
        case_analysis: None,
        brute_force: None,
        side_witness: None,
        detail,
    };

    // 1. real Suleimanova
    let applicable = match s {
        AnySpectrum::Exact(e) => check_real_suleimanova(e),
        AnySpectrum::Float(fs) => check_real_suleimanova(fs),
    };
    if applicable {
        if let Some((m, cert)) = attempt_method(s, Method::Suleimanova, &mut attempts, || {
            construct::realize_suleimanova_any(s)
        }) {
            return realizable(Method::Suleimanova, m, cert, attempts, class.detail);
        }
    } else {
        attempts.push(Attempt {
            method: Method::Suleimanova.as_str(),
            outcome: "condition check failed".into(),
        });
    }

    // 2. complex Suleimanova circulant
    if let Some((m, cert)) = attempt_method(s, Method::Circulant, &mut attempts, || {
        construct::realize_circulant_any(s)
    }) {
        return realizable(Method::Circulant, m, cert, attempts, class.detail);
    }

    // 3. n = 3 conjugate-pair realizer
    if s.n() == 3 {
        if let Some((m, cert)) = attempt_method(s, Method::Lolo3, &mut attempts, || {
            construct::realize_lolo3_any(s)
        }) {
            return realizable(Method::Lolo3, m, cert, attempts, class.detail);
        }
    }

    // 4. triple-partition direct sum
    let triples = match s {
        AnySpectrum::Exact(e) => check_triple_partition(e).map(|t| t.len()),
        AnySpectrum::Float(fs) => check_triple_partition(fs).map(|t| t.len()),
    };
    if triples.is_some() {
        if let Some((m, cert)) = attempt_method(s, Method::DirectSum, &mut attempts, || {
            construct::realize_direct_sum_any(s).and_then(|(m, sizes)| {
                if sizes.iter().all(|&k| k == 3) {
                    Ok(m)
                } else {
                    Err(Error::Inapplicable(
                        "triples pass the condition check but are not all constructible".into(),
                    ))
                }
            })
        }) {
            return realizable(Method::DirectSum, m, cert, attempts, class.detail);
        }
    } else if s.n() % 3 == 0 {
        attempts.push(Attempt {
            method: Method::DirectSum.as_str(),
            outcome: "no triple partition passes the n=3 conditions".into(),
        });
    }

    // 5. block composition
    if let Some((m, cert)) = attempt_method(s, Method::Block, &mut attempts, || {
        construct::realize_block_any(s, false).map(|o| o.matrix)
    }) {
        return realizable(Method::Block, m, cert, attempts, class.detail);
    }

    // n = 3 real lists: the permutative existence analysis dominates. A
    // list failing the n=3 conditions has no nonnegative realizer at all,
    // permutative or otherwise.
    if s.n() == 3 && f.as_reals().is_some() {
        if !matches!(check_loewy_london(&f), Ok(true)) {
            return Decision {
                verdict: Verdict::NotPermutativelyRealizable3,
                method: None,
                witness: None,
                certificate: None,
                attempts,
                case_analysis: None,
                brute_force: None,
                side_witness: None,
                detail: "the n=3 realizability conditions fail, so no nonnegative realizer exists"
                    .into(),
            };
        }
        if let Ok(mut d) = permutative3_exists(s) {
            d.attempts = [attempts, d.attempts].concat();
            return d;
        }
    }

    // 6. general direct-sum fallback (block sizes 1, 2, 3)
    if let Some((m, cert)) = attempt_method(s, Method::DirectSum, &mut attempts, || {
        construct::realize_direct_sum_any(s).map(|(m, _)| m)
    }) {
        return realizable(Method::DirectSum, m, cert, attempts, class.detail);
    }

    Decision::unknown(
        format!(
            "no sufficient condition applies ({}); the conditions are sufficient, not necessary",
            class.detail
        ),
        attempts,
    )
}

/// The n=3 permutative existence analysis: constructors first, then the
/// diagonal case analysis (necessary conditions per diagonal shape), then
/// the pattern brute force, cross-validated.
pub fn permutative3_exists(s: &AnySpectrum) -> Result<Decision> {
    let f = s.to_f64();
    if s.n() != 3 {
        return Err(Error::Dimension(format!(
            "the permutative existence analysis is for 3 values, got {}",
            s.n()
        )));
    }
    let reals = f
        .as_reals()
        .ok_or_else(|| Error::Inapplicable("the analysis needs a real list".into()))?;
    if !matches!(check_loewy_london(&f), Ok(true)) {
        return Err(Error::Inapplicable(
            "the list is not realizable at all (n=3 conditions fail)".into(),
        ));
    }

    let mut attempts: Vec<Attempt> = Vec::new();

    // Constructors that yield permutative witnesses.
    let construct_attempts: [(Method, fn(&AnySpectrum) -> Result<AnyMatrix>); 4] = [
        (Method::Suleimanova, construct::realize_suleimanova_any),
        (Method::Circulant, construct::realize_circulant_any),
        (Method::Lolo3, construct::realize_lolo3_any),
        (Method::Mean, construct::realize_mean_any),
    ];
    for (method, run) in construct_attempts {
        if let Some((m, cert)) = attempt_method(s, method, &mut attempts, || run(s)) {
            return Ok(Decision {
                verdict: Verdict::Realizable,
                method: Some(method),
                witness: Some(m),
                certificate: Some(cert),
                attempts,
                case_analysis: None,
                brute_force: None,
                side_witness: None,
                detail: "a closed-form permutative realizer exists".into(),
            });
        }
    }

    let mut lam = [reals[0], reals[1], reals[2]];
    lam.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let cases = diagonal_case_analysis(lam);
    let all_refuted = cases.iter().all(|c| c.refuted);

    let report = brute_force_3x3(lam);
    let summary = BruteSummary {
        min_residual: report.min_residual,
        pattern_minima: report.patterns.iter().map(|p| p.min_residual).collect(),
    };

    if let Some((matrix, cert)) = witness_matrix(&report, s) {
        return Ok(Decision {
            verdict: Verdict::Realizable,
            method: Some(Method::BruteForce),
            witness: Some(matrix),
            certificate: Some(cert),
            attempts,
            case_analysis: Some(cases),
            brute_force: Some(summary),
            side_witness: None,
            detail: "the pattern search found a certified witness".into(),
        });
    }

    // Side evidence: the list may still be the spectrum of a direct sum of
    // permutative blocks even when no permutative realizer exists.
    let side_witness = construct::realize_direct_sum_any(s)
        .ok()
        .and_then(|(m, sizes)| {
            let cert = certify_any(&m, s, Tolerances::default()).ok()?;
            if cert.valid_realization() {
                Some(SideWitness {
                    label: format!(
                        "direct sum of permutative blocks of sizes {:?}",
                        sizes
                    ),
                    matrix: m,
                    certificate: cert,
                })
            } else {
                None
            }
        });

    if all_refuted && report.min_residual > 1e-3 {
        return Ok(Decision {
            verdict: Verdict::NotPermutativelyRealizable3,
            method: None,
            witness: None,
            certificate: None,
            attempts,
            case_analysis: Some(cases),
            brute_force: Some(summary),
            side_witness,
            detail: "every diagonal shape is refuted and the pattern search found no witness"
                .into(),
        });
    }

    Ok(Decision {
        verdict: Verdict::Unknown,
        method: None,
        witness: None,
        certificate: None,
        attempts,
        case_analysis: Some(cases),
        brute_force: Some(summary),
        side_witness,
        detail: "the case analysis is inconclusive and no witness was found".into(),
    })
}

/// Diagonal shapes of a 3×3 permutative candidate with first row (a,b,c):
/// row sums force a+b+c = λ₁ and the trace forces the diagonal sum Σλ.
fn diagonal_case_analysis(lam: [f64; 3]) -> Vec<DiagCase> {
    let lambda1 = lam[0];
    let trace = lam[0] + lam[1] + lam[2];
    let mut cases = Vec::new();

    // (x,x,x): x = Σλ/3 and x must be one of the nonnegative row values.
    {
        let x = trace / 3.0;
        if !(0.0..=lambda1).contains(&x) {
            cases.push(DiagCase {
                shape: "(x,x,x)",
                refuted: true,
                exact: true,
                detail: format!("x = Σλ/3 = {x} escapes [0, λ1]"),
            });
        } else {
            let pass = perfect_f64(lam, sorted3([x, x, x]));
            cases.push(DiagCase {
                shape: "(x,x,x)",
                refuted: !pass,
                exact: true,
                detail: format!(
                    "x = {x}; the diagonal conditions {}",
                    if pass { "hold" } else { "fail" }
                ),
            });
        }
    }

    // (x,x,y): 2x + y = Σλ with y = Σλ − 2x and the remaining row value
    // t = λ1 + x − Σλ; all of x, y, t lie in [0, λ1].
    {
        let lo = (trace - lambda1).max(0.0);
        let hi = (trace / 2.0).min(lambda1);
        if lo > hi + 1e-12 {
            cases.push(DiagCase {
                shape: "(x,x,y)",
                refuted: true,
                exact: true,
                detail: format!("no x satisfies the range constraints [{lo}, {hi}]"),
            });
        } else if (hi - lo).abs() <= 1e-12 {
            let x = lo;
            let y = trace - 2.0 * x;
            let pass = perfect_f64(lam, sorted3([x, x, y]));
            cases.push(DiagCase {
                shape: "(x,x,y)",
                refuted: !pass,
                exact: true,
                detail: format!(
                    "forced x = {x}, y = {y}; the diagonal conditions {}",
                    if pass { "hold" } else { "fail" }
                ),
            });
        } else {
            let samples = 2000;
            let mut witness_x = None;
            for k in 0..=samples {
                let x = lo + (hi - lo) * k as f64 / samples as f64;
                let y = trace - 2.0 * x;
                if y < -1e-12 {
                    continue;
                }
                if perfect_f64(lam, sorted3([x, x, y.max(0.0)])) {
                    witness_x = Some(x);
                    break;
                }
            }
            cases.push(DiagCase {
                shape: "(x,x,y)",
                refuted: witness_x.is_none(),
                exact: false,
                detail: match witness_x {
                    Some(x) => format!("the diagonal conditions hold near x = {x}"),
                    None => format!(
                        "no sampled x in [{lo}, {hi}] satisfies the diagonal conditions"
                    ),
                },
            });
        }
    }

    // (x,y,z) all distinct: the diagonal uses all three row values, so the
    // trace equals the row sum: Σλ = λ1.
    {
        if (trace - lambda1).abs() > 1e-12 {
            cases.push(DiagCase {
                shape: "(x,y,z)",
                refuted: true,
                exact: true,
                detail: format!("trace Σλ = {trace} differs from the row sum λ1 = {lambda1}"),
            });
        } else {
            let samples = 60;
            let mut found = None;
            'outer: for i in 0..=samples {
                for j in 0..=(samples - i) {
                    let a = lambda1 * i as f64 / samples as f64;
                    let b = lambda1 * j as f64 / samples as f64;
                    let c = lambda1 - a - b;
                    if perfect_f64(lam, sorted3([a, b, c])) {
                        found = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
            cases.push(DiagCase {
                shape: "(x,y,z)",
                refuted: found.is_none(),
                exact: false,
                detail: match found {
                    Some(p) => format!("the diagonal conditions hold near {p:?}"),
                    None => "no sampled diagonal satisfies the conditions".into(),
                },
            });
        }
    }
    cases
}

fn sorted3(mut v: [f64; 3]) -> [f64; 3] {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

fn perfect_f64(lam: [f64; 3], d: [f64; 3]) -> bool {
    if d[2] < 0.0 {
        return false;
    }
    matches!(perfect_diag3_check(&lam, &d), Ok(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn rs(values: &[i64]) -> Spectrum<Rat> {
        Spectrum::from_reals(values.iter().map(|&v| Rat::from_int(v)).collect()).unwrap()
    }

    fn any(values: &[i64]) -> AnySpectrum {
        AnySpectrum::Exact(rs(values))
    }

    #[test]
    fn real_suleimanova_check_examples() {
        assert!(check_real_suleimanova(&rs(&[4, -1, -3])));
        assert!(!check_real_suleimanova(&rs(&[1, -2]))); // sum −1
        assert!(check_real_suleimanova(&rs(&[5, -1, -1, -1]))); // sum 2
    }

    #[test]
    fn complex_suleimanova_check_examples() {
        let ok = Spectrum::new(vec![
            Cx::new(Rat::from_int(2), Rat::from_int(0)),
            Cx::new(Rat::from_int(-1), Rat::from_int(1)),
            Cx::new(Rat::from_int(-1), Rat::from_int(-1)),
        ])
        .unwrap();
        assert!(check_complex_suleimanova(&ok));
        let bad_region = Spectrum::new(vec![
            Cx::new(Rat::from_int(2), Rat::from_int(0)),
            Cx::new(Rat::from_int(-1), Rat::from_int(2)),
            Cx::new(Rat::from_int(-1), Rat::from_int(-2)),
        ])
        .unwrap();
        assert!(!check_complex_suleimanova(&bad_region));
        let sum_zero = Spectrum::new(vec![
            Cx::new(Rat::from_int(3), Rat::from_int(0)),
            Cx::new(Rat::from_int(-1), Rat::from_int(1)),
            Cx::new(Rat::from_int(-1), Rat::from_int(-1)),
            Cx::new(Rat::from_int(-1), Rat::from_int(0)),
        ])
        .unwrap();
        assert!(check_complex_suleimanova(&sum_zero));
    }

    #[test]
    fn loewy_london_examples() {
        assert!(check_loewy_london(&rs(&[6, 5, 1])).unwrap()); // 144 ≤ 186
        assert!(check_loewy_london(&rs(&[1, 1, 1])).unwrap()); // boundary 9 ≤ 9
        let bad = Spectrum::new(vec![
            Cx::new(1.0, 0.0),
            Cx::new(-0.9, 0.95),
            Cx::new(-0.9, -0.95),
        ])
        .unwrap();
        assert!(!check_loewy_london(&bad).unwrap());
        assert!(check_loewy_london(&rs(&[1, 1])).is_err());
    }

    #[test]
    fn triple_partition_examples() {
        let t = check_triple_partition(&rs(&[6, 5, 1, 2, -1, -1])).unwrap();
        assert_eq!(t.len(), 2);
        let first: Vec<f64> = t[0].iter().map(|v| v.re.to_f64()).collect();
        assert_eq!(first, vec![6.0, 5.0, 1.0]);
        assert!(check_triple_partition(&rs(&[3, 0, 0])).is_some());
        assert!(check_triple_partition(&rs(&[1, -1, -1])).is_none());
    }

    #[test]
    fn perfect_check_lemma_fixtures() {
        let lam = [Rat::from_int(6), Rat::from_int(5), Rat::from_int(1)];
        let d444 = [Rat::from_int(4), Rat::from_int(4), Rat::from_int(4)];
        assert!(!perfect_diag3_check(&lam, &d444).unwrap());
        let d660 = [Rat::from_int(6), Rat::from_int(6), Rat::from_int(0)];
        assert!(!perfect_diag3_check(&lam, &d660).unwrap());
        let d633 = [Rat::from_int(6), Rat::from_int(3), Rat::from_int(3)];
        assert!(perfect_diag3_check(&lam, &d633).unwrap());
        // negative diagonal is an error
        let dneg = [Rat::from_int(6), Rat::from_int(3), Rat::from_int(-1)];
        assert!(perfect_diag3_check(&lam, &dneg).is_err());
    }

    #[test]
    fn diag_oracle_agrees_on_the_lemma_fixtures() {
        assert!(!brute_force_diag3([6.0, 5.0, 1.0], [4.0, 4.0, 4.0], 64));
        assert!(!brute_force_diag3([6.0, 5.0, 1.0], [6.0, 6.0, 0.0], 64));
        assert!(brute_force_diag3([6.0, 5.0, 1.0], [6.0, 3.0, 3.0], 64));
    }

    #[test]
    fn brute_force_finds_flat_witness() {
        // (1,1,1) solves every pattern for {3,0,0}; other points such as
        // (3,0,0) solve some patterns too, so only certification is pinned.
        let report = brute_force_3x3([3.0, 0.0, 0.0]);
        assert!(report.min_residual < 1e-8);
        let (m, cert) = witness_matrix(&report, &any(&[3, 0, 0])).unwrap();
        assert!(cert.pass());
        assert!(m.is_exact());
    }

    #[test]
    fn brute_force_witness_for_suleimanova_triple() {
        let report = brute_force_3x3([4.0, -1.0, -3.0]);
        assert!(report.min_residual < 1e-8);
        let target = any(&[4, -1, -3]);
        let (m, cert) = witness_matrix(&report, &target).unwrap();
        assert!(cert.pass());
        assert!(m.is_exact());
    }

    #[test]
    fn decide_trivial_singleton() {
        let d = decide(&any(&[1]));
        assert_eq!(d.verdict, Verdict::Realizable);
        assert_eq!(d.method, Some(Method::Trivial));
    }

    #[test]
    fn decide_suleimanova_pair() {
        let d = decide(&any(&[1, -1]));
        assert_eq!(d.verdict, Verdict::Realizable);
        assert_eq!(d.method, Some(Method::Suleimanova));
    }

    #[test]
    fn decide_invalid() {
        let s = AnySpectrum::Exact(
            Spectrum::new(vec![
                Cx::new(Rat::from_int(1), Rat::from_int(0)),
                Cx::new(Rat::from_int(-5), Rat::from_int(0)),
                Cx::new(Rat::from_int(-5), Rat::from_int(0)),
            ])
            .unwrap(),
        );
        assert_eq!(decide(&s).verdict, Verdict::Invalid);
    }

    #[test]
    fn decide_mean_list_routes_through_block() {
        let d = decide(&any(&[10, 4, 2, 0]));
        assert_eq!(d.verdict, Verdict::Realizable);
        assert_eq!(d.method, Some(Method::Block));
    }
}
