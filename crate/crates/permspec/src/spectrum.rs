//! Spectrum representation, parsing, normalization, and structural
//! classification.

use crate::error::{Error, Result};
use crate::scalar::{cmp_cx_desc, conj, is_real, mean, rat_from_decimal, rat_from_str, Cx, Rat, Scalar};

/// Tolerance for conjugate matching on floating input.
pub const CONJ_TOL: f64 = 1e-12;

/// An ordered list of complex values with a designated Perron entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    values: Vec<Cx<T>>,
    perron_index: usize,
}

impl<T: Scalar> Spectrum<T> {
    /// Build from complex values; the Perron index is the position of the
    /// largest real value (ties broken by input order).
    pub fn new(values: Vec<Cx<T>>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        let mut perron: Option<usize> = None;
        for (i, v) in values.iter().enumerate() {
            if is_real(v, CONJ_TOL) {
                match perron {
                    None => perron = Some(i),
                    Some(p) if values[p].re < v.re => perron = Some(i),
                    _ => {}
                }
            }
        }
        let perron_index = perron.ok_or(Error::NoRealPerron)?;
        Ok(Spectrum {
            values,
            perron_index,
        })
    }

    pub fn from_reals(values: Vec<T>) -> Result<Self> {
        Self::new(values.into_iter().map(|v| Cx::new(v, T::zero())).collect())
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Cx<T>] {
        &self.values
    }

    pub fn perron_index(&self) -> usize {
        self.perron_index
    }

    /// The designated Perron value (real part; imaginary part is zero).
    pub fn perron(&self) -> T {
        self.values[self.perron_index].re.clone()
    }

    /// Values with the Perron entry removed, in input order.
    pub fn tail(&self) -> Vec<Cx<T>> {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.perron_index)
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn sum(&self) -> Cx<T> {
        self.values
            .iter()
            .fold(Cx::new(T::zero(), T::zero()), |acc, v| acc + v.clone())
    }

    /// Real projections of all values, provided every entry is real.
    pub fn as_reals(&self) -> Option<Vec<T>> {
        if self.values.iter().all(|v| is_real(v, CONJ_TOL)) {
            Some(self.values.iter().map(|v| v.re.clone()).collect())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> Spectrum<f64> {
        Spectrum {
            values: self
                .values
                .iter()
                .map(|v| Cx::new(v.re.to_f64(), v.im.to_f64()))
                .collect(),
            perron_index: self.perron_index,
        }
    }

    /// Multiset closure under complex conjugation.
    pub fn is_conjugate_closed(&self) -> bool {
        let mut used = vec![false; self.values.len()];
        for i in 0..self.values.len() {
            if used[i] || is_real(&self.values[i], CONJ_TOL) {
                continue;
            }
            let want = conj(&self.values[i]);
            let partner = (0..self.values.len()).find(|&j| {
                j != i
                    && !used[j]
                    && self.values[j].re.close_to(&want.re, CONJ_TOL)
                    && self.values[j].im.close_to(&want.im, CONJ_TOL)
            });
            match partner {
                Some(j) => {
                    used[i] = true;
                    used[j] = true;
                }
                None => return false,
            }
        }
        true
    }

    /// Perron dominance: the designated real value is >= |λ_j| for all j.
    pub fn perron_dominant(&self) -> bool {
        let p = self.perron().to_f64();
        self.values
            .iter()
            .map(|v| cx_abs_f64(v))
            .all(|a| p >= a - 1e-9)
    }
}

fn cx_abs_f64<T: Scalar>(z: &Cx<T>) -> f64 {
    let re = z.re.to_f64();
    let im = z.im.to_f64();
    (re * re + im * im).sqrt()
}

/// Spectrum with a run-time arithmetic domain.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySpectrum {
    Exact(Spectrum<Rat>),
    Float(Spectrum<f64>),
}

impl AnySpectrum {
    pub fn n(&self) -> usize {
        match self {
            AnySpectrum::Exact(s) => s.n(),
            AnySpectrum::Float(s) => s.n(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnySpectrum::Exact(_))
    }

    pub fn to_f64(&self) -> Spectrum<f64> {
        match self {
            AnySpectrum::Exact(s) => s.to_f64(),
            AnySpectrum::Float(s) => s.clone(),
        }
    }
}

// ── Parsing ─────────────────────────────────────────────────────────

/// Parse a spectrum JSON document: `{"values": [[re, im], ...]}` with an
/// optional `"exact": true` flag. Entries are decimal numbers, or "p/q"
/// strings in exact mode.
pub fn parse_spectrum(text: &str, force_exact: bool) -> Result<AnySpectrum> {
    let doc: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Json("spectrum document must be an object".into()))?;
    let exact = force_exact
        || obj
            .get("exact")
            .and_then(|v| v.as_bool())
            .unwrap_or(false);
    let values = obj
        .get("values")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Json("missing \"values\" array".into()))?;
    if values.is_empty() {
        return Err(Error::EmptySpectrum);
    }

    if exact {
        let mut out = Vec::with_capacity(values.len());
        for (i, entry) in values.iter().enumerate() {
            let (re, im) = entry_parts(entry, i)?;
            out.push(Cx::new(json_rat(&re, i)?, json_rat(&im, i)?));
        }
        Ok(AnySpectrum::Exact(Spectrum::new(out)?))
    } else {
        let mut out = Vec::with_capacity(values.len());
        for (i, entry) in values.iter().enumerate() {
            let (re, im) = entry_parts(entry, i)?;
            let (re, im) = (json_f64(&re, i)?, json_f64(&im, i)?);
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::NonFinite(i));
            }
            out.push(Cx::new(re, im));
        }
        Ok(AnySpectrum::Float(Spectrum::new(out)?))
    }
}

fn entry_parts(
    entry: &serde_json::Value,
    index: usize,
) -> Result<(serde_json::Value, serde_json::Value)> {
    match entry {
        serde_json::Value::Array(pair) if pair.len() == 2 => {
            Ok((pair[0].clone(), pair[1].clone()))
        }
        serde_json::Value::Number(_) | serde_json::Value::String(_) => {
            Ok((entry.clone(), serde_json::Value::from(0)))
        }
        _ => Err(Error::Json(format!(
            "values[{index}] must be a [re, im] pair or a real number"
        ))),
    }
}

pub(crate) fn json_rat(v: &serde_json::Value, index: usize) -> Result<Rat> {
    match v {
        serde_json::Value::Number(n) => rat_from_decimal(&n.to_string()),
        serde_json::Value::String(s) => rat_from_str(s),
        _ => Err(Error::Json(format!("values[{index}] is not a number"))),
    }
}

pub(crate) fn json_f64(v: &serde_json::Value, index: usize) -> Result<f64> {
    match v {
        serde_json::Value::Number(n) => n
            .as_f64()
            .or_else(|| n.to_string().parse().ok())
            .ok_or(Error::NonFinite(index)),
        serde_json::Value::String(s) => Ok(rat_from_str(s)?.to_f64()),
        _ => Err(Error::Json(format!("values[{index}] is not a number"))),
    }
}

// ── Classification ──────────────────────────────────────────────────

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumTag {
    RealSuleimanova,
    ComplexSuleimanova,
    RealGeneral,
    ComplexGeneral,
    Invalid,
}

impl SpectrumTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumTag::RealSuleimanova => "real-suleimanova",
            SpectrumTag::ComplexSuleimanova => "complex-suleimanova",
            SpectrumTag::RealGeneral => "real-general",
            SpectrumTag::ComplexGeneral => "complex-general",
            SpectrumTag::Invalid => "invalid",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumClass {
    pub tag: SpectrumTag,
    pub detail: String,
}

/// Structural classification. `Invalid` is a value, not an error.
pub fn classify<T: Scalar>(s: &Spectrum<T>) -> SpectrumClass {
    if !s.is_conjugate_closed() {
        return SpectrumClass {
            tag: SpectrumTag::Invalid,
            detail: "multiset is not closed under complex conjugation".into(),
        };
    }
    if !s.perron_dominant() {
        return SpectrumClass {
            tag: SpectrumTag::Invalid,
            detail: "designated Perron value does not dominate the moduli".into(),
        };
    }
    let tail = s.tail();
    match s.as_reals() {
        Some(_) => {
            let lambda1_pos = s.perron() > T::zero();
            let tail_negative = tail.iter().all(|v| v.re < T::zero());
            if lambda1_pos && tail_negative {
                SpectrumClass {
                    tag: SpectrumTag::RealSuleimanova,
                    detail: "real list with positive Perron value and negative tail".into(),
                }
            } else {
                SpectrumClass {
                    tag: SpectrumTag::RealGeneral,
                    detail: "real list outside the Suleimanova shape".into(),
                }
            }
        }
        None => {
            let region = tail.iter().all(|v| {
                !v.re.is_positive() && v.re.abs() >= v.im.abs()
            });
            if region && pairing_achievable(s) {
                SpectrumClass {
                    tag: SpectrumTag::ComplexSuleimanova,
                    detail: "conjugate-paired tail inside Re<=0, |Re|>=|Im|".into(),
                }
            } else {
                SpectrumClass {
                    tag: SpectrumTag::ComplexGeneral,
                    detail: if region {
                        "tail in the Suleimanova region but pair ordering not achievable".into()
                    } else {
                        "tail leaves the Suleimanova region".into()
                    },
                }
            }
        }
    }
}

// ── Conjugate-pair ordering ─────────────────────────────────────────

/// Group equal values (exact, or within tol) into (representative, count).
fn group_values<T: Scalar>(values: &[Cx<T>], tol: f64) -> Vec<(Cx<T>, usize)> {
    let mut groups: Vec<(Cx<T>, usize)> = Vec::new();
    for v in values {
        match groups
            .iter_mut()
            .find(|(rep, _)| rep.re.close_to(&v.re, tol) && rep.im.close_to(&v.im, tol))
        {
            Some((_, count)) => *count += 1,
            None => groups.push((v.clone(), 1)),
        }
    }
    groups
}

struct PairingPlan<T> {
    /// First-half entries for positions j = 2..=m+1, to be mirrored.
    first_half: Vec<Cx<T>>,
    /// Self-paired middle value (even n only).
    middle: Option<Cx<T>>,
}

fn build_pairing<T: Scalar>(s: &Spectrum<T>) -> Result<PairingPlan<T>> {
    let tail = s.tail();
    let n = s.n();
    let mut complex_groups: Vec<(Cx<T>, usize)> = Vec::new();
    let mut real_groups: Vec<(T, usize)> = Vec::new();
    for (rep, count) in group_values(&tail, CONJ_TOL) {
        if is_real(&rep, CONJ_TOL) {
            real_groups.push((rep.re, count));
        } else {
            complex_groups.push((rep, count));
        }
    }

    // Complex values must come in conjugate-matched groups.
    let mut units: Vec<(Cx<T>, usize)> = Vec::new();
    let mut consumed = vec![false; complex_groups.len()];
    for i in 0..complex_groups.len() {
        if consumed[i] {
            continue;
        }
        let (rep, count) = complex_groups[i].clone();
        let want = conj(&rep);
        let j = (0..complex_groups.len()).find(|&j| {
            j != i
                && !consumed[j]
                && complex_groups[j].0.re.close_to(&want.re, CONJ_TOL)
                && complex_groups[j].0.im.close_to(&want.im, CONJ_TOL)
        });
        let Some(j) = j else {
            return Err(Error::NotConjugateClosed(format!(
                "no conjugate partner for {} + {}i",
                rep.re, rep.im
            )));
        };
        if complex_groups[j].1 != count {
            return Err(Error::NotConjugateClosed(format!(
                "multiplicity mismatch for the conjugate pair at {} ± {}i",
                rep.re,
                rep.im.abs()
            )));
        }
        consumed[i] = true;
        consumed[j] = true;
        let oriented = if rep.im.is_positive() { rep } else { conj(&rep) };
        units.push((oriented, count));
    }

    // Real tail values pair with equal partners; an even-length input keeps
    // exactly one odd-multiplicity value for the self-paired middle slot.
    let mut middle: Option<Cx<T>> = None;
    let mut odd: Vec<T> = Vec::new();
    for (v, count) in &real_groups {
        if count % 2 == 1 {
            odd.push(v.clone());
        }
        if count / 2 > 0 {
            units.push((Cx::new(v.clone(), T::zero()), count / 2));
        }
    }
    if n % 2 == 0 {
        if odd.len() != 1 {
            return Err(Error::PairingNotAchievable(format!(
                "{} real values have odd multiplicity; an even-length list needs exactly one",
                odd.len()
            )));
        }
        middle = Some(Cx::new(odd.pop().unwrap(), T::zero()));
    } else if !odd.is_empty() {
        return Err(Error::PairingNotAchievable(format!(
            "real value {} has odd multiplicity in an odd-length list",
            odd[0]
        )));
    }

    units.sort_by(|a, b| cmp_cx_desc(&a.0, &b.0));
    let mut first_half = Vec::new();
    for (rep, count) in units {
        for _ in 0..count {
            first_half.push(rep.clone());
        }
    }
    Ok(PairingPlan { first_half, middle })
}

/// Whether the mirrored conjugate-pair ordering exists for this list.
pub fn pairing_achievable<T: Scalar>(s: &Spectrum<T>) -> bool {
    build_pairing(s).is_ok()
}

/// Reorder so that the Perron value comes first and values[n-j+1] is the
/// conjugate of values[j-1] (0-based) for j = 2..=⌊(n+1)/2⌋.
///
/// All-real lists that cannot mirror-pair (distinct values) are returned in
/// stable input order with the Perron value first; a list with unpairable
/// complex entries is an error.
pub fn order_conjugate_pairs<T: Scalar>(s: &Spectrum<T>) -> Result<Spectrum<T>> {
    match build_pairing(s) {
        Ok(plan) => {
            let n = s.n();
            let mut out: Vec<Cx<T>> = vec![Cx::new(T::zero(), T::zero()); n];
            out[0] = Cx::new(s.perron(), T::zero());
            for (k, v) in plan.first_half.iter().enumerate() {
                let j = k + 2; // 1-based slot
                out[j - 1] = v.clone();
                out[n + 1 - j] = conj(v);
            }
            if let Some(mid) = plan.middle {
                out[n / 2] = mid;
            }
            Spectrum::new(out)
        }
        Err(e) => {
            if s.as_reals().is_some() {
                let mut out = vec![s.values[s.perron_index].clone()];
                out.extend(s.tail());
                Spectrum::new(out)
            } else {
                Err(e)
            }
        }
    }
}

// ── Partitions for the block composition ────────────────────────────

/// A decomposition Λ = Λ₀ ∪ Λ₁ ∪ … ∪ Λ₁ (`copies` copies) with the
/// auxiliary Perron value λ for the block construction.
#[derive(Clone, Debug)]
pub struct Partition<T> {
    pub lambda0: Spectrum<T>,
    pub lambda1: Vec<Cx<T>>,
    pub copies: usize,
    pub aux_perron: T,
}

impl<T: Scalar> Partition<T> {
    /// Multiset(Λ₀) ⊎ copies·multiset(Λ₁) must equal the parent's multiset,
    /// with 0 <= aux_perron <= λ₁ and aux_perron = mean(Λ₀).
    pub fn validate_against(&self, parent: &Spectrum<T>) -> Result<()> {
        let mut rebuilt: Vec<Cx<T>> = self.lambda0.values().to_vec();
        for _ in 0..self.copies {
            rebuilt.extend(self.lambda1.iter().cloned());
        }
        if !same_multiset(&rebuilt, parent.values(), CONJ_TOL) {
            return Err(Error::Inapplicable(
                "partition does not reassemble the parent spectrum".into(),
            ));
        }
        if self.aux_perron.is_negative() || self.aux_perron > parent.perron() {
            return Err(Error::Inapplicable(
                "auxiliary Perron value escapes [0, λ1]".into(),
            ));
        }
        let reals = self
            .lambda0
            .as_reals()
            .ok_or_else(|| Error::Inapplicable("Λ0 must be a real list".into()))?;
        if !self.aux_perron.close_to(&mean(&reals), CONJ_TOL) {
            return Err(Error::Inapplicable(
                "auxiliary Perron value is not mean(Λ0)".into(),
            ));
        }
        Ok(())
    }

    pub fn gamma1(&self) -> Result<Spectrum<T>> {
        let mut values = vec![Cx::new(self.aux_perron.clone(), T::zero())];
        values.extend(self.lambda1.iter().cloned());
        Spectrum::new(values)
    }
}

pub fn same_multiset<T: Scalar>(a: &[Cx<T>], b: &[Cx<T>], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for v in a {
        for (j, w) in b.iter().enumerate() {
            if !used[j] && w.re.close_to(&v.re, tol) && w.im.close_to(&v.im, tol) {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Enumerate structurally valid partitions in the deterministic search
/// order: descending r, then the distinct Λ₁ multisets drawn from the
/// descending-sorted tail in lexicographic order. Feasibility beyond the
/// multiset/shape constraints (constructibility of Γ₁ and Λ₀) is the
/// caller's business.
pub fn enumerate_partitions<T: Scalar>(s: &Spectrum<T>) -> Vec<Partition<T>> {
    let n = s.n();
    let mut out = Vec::new();
    let mut tail_groups = group_values(&s.tail(), CONJ_TOL);
    tail_groups.sort_by(|a, b| cmp_cx_desc(&a.0, &b.0));

    let mut rs: Vec<usize> = (1..=n / 2).filter(|r| n % r == 0).collect();
    rs.sort_unstable_by(|a, b| b.cmp(a));
    for r in rs {
        let p = n / r - 1;
        debug_assert!(p >= 1);
        let mut chosen: Vec<usize> = Vec::new();
        collect_multisets(&tail_groups, r, p, 0, &mut chosen, &mut |counts| {
            if let Some(part) = assemble_partition(s, &tail_groups, counts, r) {
                out.push(part);
            }
        });
    }
    out
}

/// Recursively pick `remaining` elements from groups[idx..] (at most
/// avail/r of each so that r copies stay removable), invoking `emit` with
/// per-group counts. Lexicographic over the descending value order.
fn collect_multisets<T: Scalar>(
    groups: &[(Cx<T>, usize)],
    copies: usize,
    remaining: usize,
    idx: usize,
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        let mut counts = vec![0usize; groups.len()];
        for &g in chosen.iter() {
            counts[g] += 1;
        }
        emit(&counts);
        return;
    }
    if idx >= groups.len() {
        return;
    }
    let already = chosen.iter().filter(|&&g| g == idx).count();
    let avail = groups[idx].1 / copies;
    let max_take = avail.saturating_sub(already).min(remaining);
    for take in (0..=max_take).rev() {
        for _ in 0..take {
            chosen.push(idx);
        }
        collect_multisets(groups, copies, remaining - take, idx + 1, chosen, emit);
        for _ in 0..take {
            chosen.pop();
        }
    }
}

fn assemble_partition<T: Scalar>(
    s: &Spectrum<T>,
    groups: &[(Cx<T>, usize)],
    counts: &[usize],
    r: usize,
) -> Option<Partition<T>> {
    let mut lambda1: Vec<Cx<T>> = Vec::new();
    for (g, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            lambda1.push(groups[g].0.clone());
        }
    }
    // Λ0 = parent minus r copies of Λ1 (the Perron value is never drawn).
    let mut remaining: Vec<Cx<T>> = s.tail();
    for (g, &c) in counts.iter().enumerate() {
        let need = c * r;
        let mut removed = 0;
        remaining.retain(|v| {
            if removed < need
                && v.re.close_to(&groups[g].0.re, CONJ_TOL)
                && v.im.close_to(&groups[g].0.im, CONJ_TOL)
            {
                removed += 1;
                false
            } else {
                true
            }
        });
        if removed < need {
            return None;
        }
    }
    let mut lambda0_values = vec![Cx::new(s.perron(), T::zero())];
    lambda0_values.extend(remaining);
    if lambda0_values.len() != r {
        return None;
    }
    if lambda0_values.iter().any(|v| !is_real(v, CONJ_TOL)) {
        return None;
    }
    let lambda0 = Spectrum::new(lambda0_values).ok()?;
    let reals = lambda0.as_reals()?;
    let aux = mean(&reals);
    if aux.is_negative() || aux > s.perron() {
        return None;
    }
    Some(Partition {
        lambda0,
        lambda1,
        copies: r,
        aux_perron: aux,
    })
}
