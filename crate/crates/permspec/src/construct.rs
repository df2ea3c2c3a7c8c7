//! Closed-form permutative realizing-matrix constructors, and the
//! recursive planner that assembles them into block realizations.

use num_traits::Zero;

use crate::circulant;
use crate::error::{Error, Result};
use crate::matrix::{AnyMatrix, Matrix};
use crate::scalar::{cmp_cx_desc, mean, sum, Cx, Rat, Scalar};
use crate::spectrum::{
    classify, enumerate_partitions, AnySpectrum, Partition, Spectrum, SpectrumTag, CONJ_TOL,
};
use crate::verify::{certify, Tolerances};

pub use crate::spectrum::Partition as BlockPartition;

/// Construction method labels used in decisions and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Trivial,
    Suleimanova,
    Circulant,
    Lolo3,
    Mean,
    Block,
    DirectSum,
    BruteForce,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Trivial => "trivial",
            Method::Suleimanova => "suleimanova",
            Method::Circulant => "circulant",
            Method::Lolo3 => "lolo3",
            Method::Mean => "mean",
            Method::Block => "block",
            Method::DirectSum => "direct-sum",
            Method::BruteForce => "brute-force",
        }
    }
}

// ── Closed-form constructors ────────────────────────────────────────

/// Realizer for a real Suleimanova-type list with nonnegative sum: builds
/// the initial matrix C, the rank-one direction q, the flat shift r, and
/// returns C + e(qᵀ + rᵀ). The output is permutative nonnegative with
/// constant row sums λ₁ and constant diagonal Σλ/n.
pub fn suleimanova_matrix<T: Scalar>(s: &Spectrum<T>) -> Result<Matrix<T>> {
    let class = classify(s);
    if class.tag != SpectrumTag::RealSuleimanova {
        return Err(Error::Inapplicable(format!(
            "expected a real Suleimanova-type list, found {}: {}",
            class.tag.as_str(),
            class.detail
        )));
    }
    let lambda1 = s.perron();
    let tail: Vec<T> = s.tail().iter().map(|v| v.re.clone()).collect();
    let n = s.n();
    let alpha = lambda1.clone() + sum(&tail);
    if alpha < T::zero() {
        return Err(Error::Inapplicable(format!(
            "the values sum to {alpha} < 0"
        )));
    }

    let mut c = Matrix::<T>::zeros(n, n);
    c[(0, 0)] = lambda1.clone() - alpha.clone();
    for (k, lam) in tail.iter().enumerate() {
        c[(k + 1, 0)] = lambda1.clone() - alpha.clone() - lam.clone();
        c[(k + 1, k + 1)] = lam.clone();
    }
    let mut q = Vec::with_capacity(n);
    q.push(alpha.clone() - lambda1.clone());
    for lam in &tail {
        q.push(-lam.clone());
    }
    let shift = alpha / T::from_int(n as i64);
    Ok(Matrix::from_fn(n, n, |i, j| {
        c[(i, j)].clone() + q[j].clone() + shift.clone()
    }))
}

/// The one-row-modification pattern: row k (k ≥ 2) equals the first row
/// except entry (k,1) = a₁₁ − λ_k and entry (k,k) = a₁k + λ_k. Spectrum is
/// {Σ a₁j, λ₂, …, λ_n}; nonnegativity is not required at this level.
pub fn mlanda_matrix<T: Scalar>(first_row: &[T], tail: &[T]) -> Result<Matrix<T>> {
    let n = first_row.len();
    if tail.len() + 1 != n {
        return Err(Error::Dimension(format!(
            "first row has {} entries but the tail has {}",
            n,
            tail.len()
        )));
    }
    let mut m = Matrix::<T>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = first_row[j].clone();
    }
    for k in 1..n {
        for j in 0..n {
            m[(k, j)] = first_row[j].clone();
        }
        m[(k, 0)] = first_row[0].clone() - tail[k - 1].clone();
        m[(k, k)] = first_row[k].clone() + tail[k - 1].clone();
    }
    Ok(m)
}

/// Constant-diagonal permutative realizer: a₁₁ = mean(s) with
/// a₁k = a₁₁ − λ_k, requiring a₁₁ ≥ 0 and a₁₁ − λ_k ≥ 0 for k ≥ 2.
pub fn permutative_from_mean<T: Scalar>(s: &Spectrum<T>) -> Result<Matrix<T>> {
    let reals = s
        .as_reals()
        .ok_or_else(|| Error::Inapplicable("the constant-diagonal pattern needs a real list".into()))?;
    let mut tail: Vec<T> = Vec::with_capacity(reals.len() - 1);
    for (i, v) in reals.iter().enumerate() {
        if i != s.perron_index() {
            tail.push(v.clone());
        }
    }
    let a11 = mean(&reals);
    if a11 < T::zero() {
        return Err(Error::Inapplicable(format!(
            "a11 = mean = {a11} < 0"
        )));
    }
    let mut first_row = vec![a11.clone()];
    for (k, lam) in tail.iter().enumerate() {
        let entry = a11.clone() - lam.clone();
        if entry < T::zero() {
            return Err(Error::Inapplicable(format!(
                "a11 - λ{} = {} - {} = {} < 0",
                k + 2,
                a11,
                lam,
                entry
            )));
        }
        first_row.push(entry);
    }
    mlanda_matrix(&first_row, &tail)
}

/// Block assembly P = A + X·C·Xᵀ computed exactly: diagonal block (i,i) is
/// gamma1 + ((B_ii − λ)/(p+1))·eeᵀ and off-diagonal block (i,j) is
/// (B_ij/(p+1))·eeᵀ.
pub fn assemble_block<T: Scalar>(gamma1: &Matrix<T>, b: &Matrix<T>, aux: &T) -> Matrix<T> {
    let m = gamma1.nrows();
    let r = b.nrows();
    let n = r * m;
    let inv = T::one() / T::from_int(m as i64);
    Matrix::from_fn(n, n, |row, col| {
        let (bi, bj) = (row / m, col / m);
        let (ii, jj) = (row % m, col % m);
        if bi == bj {
            gamma1[(ii, jj)].clone() + (b[(bi, bj)].clone() - aux.clone()) * inv.clone()
        } else {
            b[(bi, bj)].clone() * inv.clone()
        }
    })
}

// ── Planner: exact-or-floating realization dispatch ─────────────────

/// Scalar-specific hooks for the constructions that may leave the exact
/// domain (circulant realizations go through cos/sin except in the small
/// closed-form cases).
pub trait PlanScalar: Scalar {
    fn wrap(m: Matrix<Self>) -> AnyMatrix;
    fn circulant_realize(s: &Spectrum<Self>) -> Result<AnyMatrix>;
    fn lolo3_realize(s: &Spectrum<Self>) -> Result<AnyMatrix>;
}

impl PlanScalar for f64 {
    fn wrap(m: Matrix<f64>) -> AnyMatrix {
        AnyMatrix::Float(m)
    }

    fn circulant_realize(s: &Spectrum<f64>) -> Result<AnyMatrix> {
        circulant::realize_complex_suleimanova(s).map(AnyMatrix::Float)
    }

    fn lolo3_realize(s: &Spectrum<f64>) -> Result<AnyMatrix> {
        circulant::realize_3x3(s).map(AnyMatrix::Float)
    }
}

impl PlanScalar for Rat {
    fn wrap(m: Matrix<Rat>) -> AnyMatrix {
        AnyMatrix::Exact(m)
    }

    fn circulant_realize(s: &Spectrum<Rat>) -> Result<AnyMatrix> {
        circulant::suleimanova_preconditions(s)?;
        if let Some(m) = exact_circulant_special_case(s) {
            return Ok(AnyMatrix::Exact(m));
        }
        circulant::realize_complex_suleimanova(&s.to_f64()).map(AnyMatrix::Float)
    }

    fn lolo3_realize(s: &Spectrum<Rat>) -> Result<AnyMatrix> {
        if !circulant::loewy_london_ok(s)? {
            return Err(Error::Inapplicable(
                "the n=3 realizability conditions do not hold".into(),
            ));
        }
        if let Some(m) = exact_circulant_special_case(s) {
            return Ok(AnyMatrix::Exact(m));
        }
        circulant::realize_3x3(&s.to_f64()).map(AnyMatrix::Float)
    }
}

/// Rational circulants exist in closed form for n ≤ 2 and for the n = 3
/// equal-real-pair shape; everything else needs the trigonometric path.
fn exact_circulant_special_case(s: &Spectrum<Rat>) -> Option<Matrix<Rat>> {
    let reals = s.as_reals()?;
    let lambda1 = s.perron();
    match s.n() {
        1 => {
            if reals[0] >= Rat::zero() {
                Some(Matrix::from_fn(1, 1, |_, _| reals[0].clone()))
            } else {
                None
            }
        }
        2 => {
            let other = &s.tail()[0].re;
            circulant::exact_pair_circulant(&lambda1, other)
        }
        3 => {
            let tail = s.tail();
            if tail[0].re == tail[1].re {
                circulant::exact_equal_pair_circulant_3(&lambda1, &tail[0].re)
            } else {
                None
            }
        }
        _ => None,
    }
}

fn promote_pair(a: &AnyMatrix, b: &AnyMatrix) -> (AnyMatrix, AnyMatrix) {
    match (a, b) {
        (AnyMatrix::Exact(_), AnyMatrix::Exact(_)) => (a.clone(), b.clone()),
        _ => (AnyMatrix::Float(a.to_f64()), AnyMatrix::Float(b.to_f64())),
    }
}

fn any_is_symmetric(m: &AnyMatrix) -> bool {
    match m {
        AnyMatrix::Exact(m) => m.is_symmetric(0.0),
        AnyMatrix::Float(m) => m.is_symmetric(1e-12),
    }
}

/// A feasible block partition with its realized pieces.
pub struct BlockPlan<T: Scalar> {
    pub partition: Partition<T>,
    pub gamma: AnyMatrix,
    pub gamma_method: Method,
    pub b: AnyMatrix,
}

/// Realize a (p+1)×(p+1) permutative nonnegative matrix with spectrum `g`
/// and Perron eigenvector e. Tries, in order: the Suleimanova constructor,
/// the circulant realization, the constant-diagonal mean pattern, the
/// symmetric 3×3 patterns (symmetric mode), and, when `allow_block`, the
/// recursive block composition on a strictly smaller list.
pub fn realize_gamma<T: PlanScalar>(
    g: &Spectrum<T>,
    allow_block: bool,
    require_symmetric: bool,
) -> Result<(AnyMatrix, Method)> {
    let mut reasons: Vec<String> = Vec::new();
    let keep = |m: AnyMatrix, tag: Method, reasons: &mut Vec<String>| -> Option<(AnyMatrix, Method)> {
        if !require_symmetric || any_is_symmetric(&m) {
            Some((m, tag))
        } else {
            reasons.push(format!("{}: realizer is not symmetric", tag.as_str()));
            None
        }
    };

    match suleimanova_matrix(g) {
        Ok(m) => {
            if let Some(hit) = keep(T::wrap(m), Method::Suleimanova, &mut reasons) {
                return Ok(hit);
            }
        }
        Err(e) => reasons.push(format!("suleimanova: {e}")),
    }
    match T::circulant_realize(g) {
        Ok(m) => {
            if let Some(hit) = keep(m, Method::Circulant, &mut reasons) {
                return Ok(hit);
            }
        }
        Err(e) => reasons.push(format!("circulant: {e}")),
    }
    match permutative_from_mean(g) {
        Ok(m) => {
            if let Some(hit) = keep(T::wrap(m), Method::Mean, &mut reasons) {
                return Ok(hit);
            }
        }
        Err(e) => reasons.push(format!("mean: {e}")),
    }
    if require_symmetric && g.n() == 3 {
        if let Some(m) = symmetric_pattern_for(g) {
            return Ok((T::wrap(m), Method::Mean));
        }
    }
    if allow_block && g.n() >= 4 {
        match realize_block(g, require_symmetric) {
            Ok(plan) => {
                let m = assemble_plan(&plan)?;
                if let Some(hit) = keep(m, Method::Block, &mut reasons) {
                    return Ok(hit);
                }
            }
            Err(e) => reasons.push(format!("block: {e}")),
        }
    }
    Err(Error::Inapplicable(format!(
        "no realizer applies: {}",
        reasons.join("; ")
    )))
}

/// Match a 3-value spectrum against the symmetric patterns and return the
/// matching construction when the entry formulas stay nonnegative.
fn symmetric_pattern_for<T: Scalar>(g: &Spectrum<T>) -> Option<Matrix<T>> {
    let reals = g.as_reals()?;
    let lambda1 = g.perron();
    let mut tail: Vec<T> = Vec::new();
    for (i, v) in reals.iter().enumerate() {
        if i != g.perron_index() {
            tail.push(v.clone());
        }
    }
    if tail[0] == tail[1] {
        symmetric_pattern_3(&SymPattern3 {
            tag: PatternTag::Iii,
            lambda1,
            lambda2: tail[0].clone(),
        })
        .ok()
    } else if tail[0].clone() + tail[1].clone() == T::zero() {
        let lambda2 = if tail[0] > tail[1] {
            tail[0].clone()
        } else {
            tail[1].clone()
        };
        symmetric_pattern_3(&SymPattern3 {
            tag: PatternTag::Ii,
            lambda1,
            lambda2,
        })
        .ok()
    } else {
        None
    }
}

/// Realize an r×r permutative nonnegative matrix with spectrum `s` and
/// constant diagonal mean(s): the mean pattern directly, or the recursive
/// block composition (whose output always carries constant diagonal equal
/// to the mean of its spectrum).
pub fn realize_constant_diag<T: PlanScalar>(
    s: &Spectrum<T>,
    require_symmetric: bool,
) -> Result<AnyMatrix> {
    let mut reasons: Vec<String> = Vec::new();
    match permutative_from_mean(s) {
        Ok(m) => {
            if !require_symmetric || m.is_symmetric(if T::EXACT { 0.0 } else { 1e-12 }) {
                return Ok(T::wrap(m));
            }
            reasons.push("mean: realizer is not symmetric".into());
        }
        Err(e) => reasons.push(format!("mean: {e}")),
    }
    if s.n() >= 4 {
        match realize_block(s, require_symmetric) {
            Ok(plan) => return assemble_plan(&plan),
            Err(e) => reasons.push(format!("block: {e}")),
        }
    }
    Err(Error::Inapplicable(format!(
        "no constant-diagonal realizer applies: {}",
        reasons.join("; ")
    )))
}

/// First feasible partition in the deterministic search order, with its
/// realized Γ₁ and B matrices.
pub fn find_block_plan<T: PlanScalar>(
    s: &Spectrum<T>,
    require_symmetric: bool,
) -> Result<BlockPlan<T>> {
    let mut reasons: Vec<String> = Vec::new();
    for partition in enumerate_partitions(s) {
        let Ok(gamma_spec) = partition.gamma1() else {
            continue;
        };
        // The auxiliary value must be Γ₁'s Perron entry; otherwise the
        // realizer's constant row sum would not be λ.
        if !gamma_spec.perron().close_to(&partition.aux_perron, CONJ_TOL) {
            reasons.push(format!(
                "partition r={}: aux {} is dominated inside Γ₁",
                partition.copies,
                partition.aux_perron.to_f64()
            ));
            continue;
        }
        let allow_block = partition.copies >= 2;
        let gamma = match realize_gamma(&gamma_spec, allow_block, require_symmetric) {
            Ok(g) => g,
            Err(e) => {
                reasons.push(format!("partition r={}: Γ₁ {}", partition.copies, e));
                continue;
            }
        };
        let b = match realize_constant_diag(&partition.lambda0, require_symmetric) {
            Ok(b) => b,
            Err(e) => {
                reasons.push(format!("partition r={}: Λ₀ {}", partition.copies, e));
                continue;
            }
        };
        return Ok(BlockPlan {
            partition,
            gamma: gamma.0,
            gamma_method: gamma.1,
            b,
        });
    }
    if reasons.is_empty() {
        reasons.push("no structurally valid partition exists".into());
    }
    Err(Error::Inapplicable(format!(
        "no feasible partition: {}",
        reasons.join("; ")
    )))
}

/// The deterministic partition search: descending r, lexicographic Λ₁ from
/// the descending-sorted tail, first feasible partition wins. Feasibility
/// means Γ₁ and Λ₀ are both constructible.
pub fn find_partition<T: PlanScalar>(s: &Spectrum<T>) -> Option<Partition<T>> {
    find_block_plan(s, false).ok().map(|plan| plan.partition)
}

fn assemble_plan<T: PlanScalar>(plan: &BlockPlan<T>) -> Result<AnyMatrix> {
    let (gamma, b) = promote_pair(&plan.gamma, &plan.b);
    match (&gamma, &b) {
        (AnyMatrix::Exact(g), AnyMatrix::Exact(bb)) => {
            let aux = rat_of(&plan.partition.aux_perron)?;
            Ok(AnyMatrix::Exact(assemble_block(g, bb, &aux)))
        }
        _ => {
            let g = gamma.to_f64();
            let bb = b.to_f64();
            Ok(AnyMatrix::Float(assemble_block(
                &g,
                &bb,
                &plan.partition.aux_perron.to_f64(),
            )))
        }
    }
}

fn rat_of<T: Scalar>(v: &T) -> Result<Rat> {
    if !T::EXACT {
        return Err(Error::Inapplicable(
            "internal: exact assembly requested from a floating value".into(),
        ));
    }
    crate::scalar::rat_from_str(&v.to_string())
}

/// Full block realization of `s` (Λ = Λ₀ ∪ r·Λ₁ through Γ₁ and B).
pub fn realize_block<T: PlanScalar>(s: &Spectrum<T>, require_symmetric: bool) -> Result<BlockPlan<T>> {
    find_block_plan(s, require_symmetric)
}

/// Public block constructor over an explicit partition and Γ₁ realizer.
/// Certifies the realizer against Γ₁, builds B for Λ₀, and assembles.
pub fn block_construct<T: PlanScalar>(
    partition: &Partition<T>,
    gamma1_realizer: &Matrix<T>,
) -> Result<AnyMatrix> {
    let gamma_spec = partition.gamma1()?;
    let cert = certify(gamma1_realizer, &gamma_spec, Tolerances::default())?;
    if !cert.pass() {
        return Err(Error::CertificationFailed(format!(
            "Γ₁ realizer: nonneg={} permutative={} row_sum_constant={} residual={:.3e}",
            cert.nonneg, cert.permutative, cert.row_sum_constant, cert.spectral_residual
        )));
    }
    let b = realize_constant_diag(&partition.lambda0, false)
        .map_err(|e| Error::Inapplicable(format!("B is not constructible: {e}")))?;
    let plan = BlockPlan {
        partition: partition.clone(),
        gamma: T::wrap(gamma1_realizer.clone()),
        gamma_method: Method::Block,
        b,
    };
    assemble_plan(&plan)
}

/// Symmetric variant: both inputs must be symmetric and so must B.
pub fn symmetric_block_construct<T: PlanScalar>(
    partition: &Partition<T>,
    gamma1_realizer: &Matrix<T>,
) -> Result<AnyMatrix> {
    let tol = if T::EXACT { 0.0 } else { 1e-12 };
    if !gamma1_realizer.is_symmetric(tol) {
        return Err(Error::NotSymmetric(gamma1_realizer.max_asymmetry()));
    }
    let gamma_spec = partition.gamma1()?;
    let cert = certify(gamma1_realizer, &gamma_spec, Tolerances::default())?;
    if !cert.pass() {
        return Err(Error::CertificationFailed(
            "Γ₁ realizer does not certify against Γ₁".into(),
        ));
    }
    let b = realize_constant_diag(&partition.lambda0, true)
        .map_err(|e| Error::Inapplicable(format!("symmetric B is not constructible: {e}")))?;
    if !any_is_symmetric(&b) {
        return Err(Error::NotSymmetric(b.to_f64().max_asymmetry()));
    }
    let plan = BlockPlan {
        partition: partition.clone(),
        gamma: T::wrap(gamma1_realizer.clone()),
        gamma_method: Method::Block,
        b,
    };
    assemble_plan(&plan)
}

// ── Symmetric 3×3 patterns ──────────────────────────────────────────

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternTag {
    /// [[a,a,b],[a,b,a],[b,a,a]] with a=(λ₁+λ₂)/3, b=(λ₁−2λ₂)/3;
    /// realizes {λ₁, λ₂, −λ₂} (assigned by verification).
    Ii,
    /// [[a,b,b],[b,a,b],[b,b,a]] with a=(λ₁+2λ₂)/3, b=(λ₁−λ₂)/3;
    /// realizes {λ₁, λ₂, λ₂}.
    Iii,
}

#[derive(Clone, Debug)]
pub struct SymPattern3<T> {
    pub tag: PatternTag,
    pub lambda1: T,
    pub lambda2: T,
}

impl<T: Scalar> SymPattern3<T> {
    /// The target multiset this pattern realizes.
    pub fn target(&self) -> Vec<T> {
        match self.tag {
            PatternTag::Ii => vec![
                self.lambda1.clone(),
                self.lambda2.clone(),
                -self.lambda2.clone(),
            ],
            PatternTag::Iii => vec![
                self.lambda1.clone(),
                self.lambda2.clone(),
                self.lambda2.clone(),
            ],
        }
    }
}

/// Build the symmetric 3×3 pattern; errors when an entry formula goes
/// negative.
pub fn symmetric_pattern_3<T: Scalar>(pattern: &SymPattern3<T>) -> Result<Matrix<T>> {
    let third = T::ratio(1, 3);
    let (a, b) = match pattern.tag {
        PatternTag::Ii => (
            (pattern.lambda1.clone() + pattern.lambda2.clone()) * third.clone(),
            (pattern.lambda1.clone() - T::from_int(2) * pattern.lambda2.clone()) * third,
        ),
        PatternTag::Iii => (
            (pattern.lambda1.clone() + T::from_int(2) * pattern.lambda2.clone()) * third.clone(),
            (pattern.lambda1.clone() - pattern.lambda2.clone()) * third,
        ),
    };
    if a < T::zero() || b < T::zero() {
        return Err(Error::Inapplicable(format!(
            "pattern entries a = {a}, b = {b} must be nonnegative"
        )));
    }
    let rows = match pattern.tag {
        PatternTag::Ii => vec![
            vec![a.clone(), a.clone(), b.clone()],
            vec![a.clone(), b.clone(), a.clone()],
            vec![b, a.clone(), a],
        ],
        PatternTag::Iii => vec![
            vec![a.clone(), b.clone(), b.clone()],
            vec![b.clone(), a.clone(), b.clone()],
            vec![b.clone(), b, a],
        ],
    };
    Matrix::from_rows(rows)
}

/// Block-diagonal concatenation; the spectrum is the multiset union.
pub fn direct_sum<T: Scalar>(blocks: &[Matrix<T>]) -> Result<Matrix<T>> {
    if blocks.iter().any(|b| !b.is_square()) {
        return Err(Error::Dimension("direct sum of non-square blocks".into()));
    }
    let refs: Vec<&Matrix<T>> = blocks.iter().collect();
    Ok(Matrix::block_diag(&refs))
}

// ── Direct-sum planner (blocks of size 1, 2, 3) ─────────────────────

/// One realized block of a direct-sum decomposition.
pub struct SumBlock<T: Scalar> {
    pub values: Vec<Cx<T>>,
    pub matrix: AnyMatrix,
}

/// Deterministic backtracking search for a decomposition into circulant-
/// realizable blocks: conjugate-pair triples satisfying the n=3
/// conditions, real pairs {α, β} with α ≥ |β|, and nonnegative singletons.
pub fn realize_direct_sum<T: PlanScalar>(s: &Spectrum<T>) -> Result<Vec<SumBlock<T>>> {
    let mut values = s.values().to_vec();
    values.sort_by(cmp_cx_desc);
    let mut blocks = Vec::new();
    if search_sum_blocks(&values, &mut blocks) {
        Ok(blocks)
    } else {
        Err(Error::Inapplicable(
            "no decomposition into realizable blocks of size 1..3".into(),
        ))
    }
}

fn search_sum_blocks<T: PlanScalar>(
    remaining: &[Cx<T>],
    blocks: &mut Vec<SumBlock<T>>,
) -> bool {
    if remaining.is_empty() {
        return true;
    }
    let lead = remaining[0].clone();
    if !crate::scalar::is_real(&lead, CONJ_TOL) {
        return false;
    }
    let rest: Vec<Cx<T>> = remaining[1..].to_vec();

    // Triples {lead, z, conj z} first.
    for i in 0..rest.len() {
        for j in (i + 1)..rest.len() {
            let zi = &rest[i];
            let zj = &rest[j];
            let conjugates =
                zi.re.close_to(&zj.re, CONJ_TOL) && zi.im.close_to(&(-zj.im.clone()), CONJ_TOL);
            if !conjugates {
                continue;
            }
            let Ok(triple) = Spectrum::new(vec![lead.clone(), zi.clone(), zj.clone()]) else {
                continue;
            };
            let Ok(m) = T::lolo3_realize(&triple) else {
                continue;
            };
            let mut next: Vec<Cx<T>> = Vec::with_capacity(rest.len() - 2);
            for (k, v) in rest.iter().enumerate() {
                if k != i && k != j {
                    next.push(v.clone());
                }
            }
            blocks.push(SumBlock {
                values: triple.values().to_vec(),
                matrix: m,
            });
            if search_sum_blocks(&next, blocks) {
                return true;
            }
            blocks.pop();
        }
    }

    // Real pairs {lead, β} with lead ≥ |β|.
    for i in 0..rest.len() {
        if !crate::scalar::is_real(&rest[i], CONJ_TOL) {
            continue;
        }
        let beta = rest[i].re.clone();
        let Some(m) = circulant::exact_pair_circulant(&lead.re, &beta) else {
            continue;
        };
        let mut next: Vec<Cx<T>> = Vec::with_capacity(rest.len() - 1);
        for (k, v) in rest.iter().enumerate() {
            if k != i {
                next.push(v.clone());
            }
        }
        blocks.push(SumBlock {
            values: vec![lead.clone(), rest[i].clone()],
            matrix: T::wrap(m),
        });
        if search_sum_blocks(&next, blocks) {
            return true;
        }
        blocks.pop();
    }

    // Singleton [lead] with lead ≥ 0.
    if !lead.re.is_negative() {
        let m = Matrix::from_fn(1, 1, |_, _| lead.re.clone());
        blocks.push(SumBlock {
            values: vec![lead.clone()],
            matrix: T::wrap(m),
        });
        if search_sum_blocks(&rest, blocks) {
            return true;
        }
        blocks.pop();
    }
    false
}

/// Combine realized blocks into the full direct-sum matrix, promoting to
/// floating arithmetic when any block needs it.
pub fn combine_sum_blocks<T: Scalar>(blocks: &[SumBlock<T>]) -> Result<AnyMatrix> {
    if blocks.iter().all(|b| b.matrix.is_exact()) {
        let mats: Vec<Matrix<Rat>> = blocks
            .iter()
            .map(|b| b.matrix.as_exact().unwrap().clone())
            .collect();
        Ok(AnyMatrix::Exact(direct_sum(&mats)?))
    } else {
        let mats: Vec<Matrix<f64>> = blocks.iter().map(|b| b.matrix.to_f64()).collect();
        Ok(AnyMatrix::Float(direct_sum(&mats)?))
    }
}

// ── AnySpectrum entry points ────────────────────────────────────────

pub fn realize_suleimanova_any(s: &AnySpectrum) -> Result<AnyMatrix> {
    match s {
        AnySpectrum::Exact(s) => suleimanova_matrix(s).map(AnyMatrix::Exact),
        AnySpectrum::Float(s) => suleimanova_matrix(s).map(AnyMatrix::Float),
    }
}

pub fn realize_mean_any(s: &AnySpectrum) -> Result<AnyMatrix> {
    match s {
        AnySpectrum::Exact(s) => permutative_from_mean(s).map(AnyMatrix::Exact),
        AnySpectrum::Float(s) => permutative_from_mean(s).map(AnyMatrix::Float),
    }
}

pub fn realize_circulant_any(s: &AnySpectrum) -> Result<AnyMatrix> {
    match s {
        AnySpectrum::Exact(s) => Rat::circulant_realize(s),
        AnySpectrum::Float(s) => f64::circulant_realize(s),
    }
}

pub fn realize_lolo3_any(s: &AnySpectrum) -> Result<AnyMatrix> {
    match s {
        AnySpectrum::Exact(s) => Rat::lolo3_realize(s),
        AnySpectrum::Float(s) => f64::lolo3_realize(s),
    }
}

pub struct BlockOutcome {
    pub matrix: AnyMatrix,
    pub copies: usize,
    pub block_size: usize,
    pub aux_perron: f64,
    pub gamma_method: Method,
}

pub fn realize_block_any(s: &AnySpectrum, symmetric: bool) -> Result<BlockOutcome> {
    match s {
        AnySpectrum::Exact(s) => {
            let plan = realize_block(s, symmetric)?;
            let matrix = assemble_plan(&plan)?;
            Ok(BlockOutcome {
                matrix,
                copies: plan.partition.copies,
                block_size: plan.partition.lambda1.len() + 1,
                aux_perron: plan.partition.aux_perron.to_f64(),
                gamma_method: plan.gamma_method,
            })
        }
        AnySpectrum::Float(s) => {
            let plan = realize_block(s, symmetric)?;
            let matrix = assemble_plan(&plan)?;
            Ok(BlockOutcome {
                matrix,
                copies: plan.partition.copies,
                block_size: plan.partition.lambda1.len() + 1,
                aux_perron: plan.partition.aux_perron.to_f64(),
                gamma_method: plan.gamma_method,
            })
        }
    }
}

pub fn realize_direct_sum_any(s: &AnySpectrum) -> Result<(AnyMatrix, Vec<usize>)> {
    match s {
        AnySpectrum::Exact(s) => {
            let blocks = realize_direct_sum(s)?;
            let sizes = blocks.iter().map(|b| b.values.len()).collect();
            Ok((combine_sum_blocks(&blocks)?, sizes))
        }
        AnySpectrum::Float(s) => {
            let blocks = realize_direct_sum(s)?;
            let sizes = blocks.iter().map(|b| b.values.len()).collect();
            Ok((combine_sum_blocks(&blocks)?, sizes))
        }
    }
}
