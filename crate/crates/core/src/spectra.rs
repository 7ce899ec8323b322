//! Assembled spectra of the four supported models.
//!
//! Interior (Steklov) models:
//! * `Disk2` - unit disk, potential `t(-y dx + x dy)`; modes `(k, ±)` with
//!   eigenvalue `Q'(1) + k` from the radial engine.
//! * `Ball4` - unit 4-ball, rotational potential of strength `t`; modes
//!   `(p1, p2)` with `k = p1 + p2`, multiplicity `k + 1`, and a closed-form
//!   eigenvalue as a ratio of two exponential sums.
//!
//! Boundary (magnetic Laplacian) models:
//! * `Circle` - eigenvalues `(k ± t)^2`.
//! * `Sphere3` - eigenvalues `k(k+2) + 2(p1-p2)t + t^2`, multiplicity
//!   `k + 1` per `(p1, p2)`, so a full degree-k cluster carries `(k+1)^2`.
//!
//! Tables are sorted by value with a deterministic label tie-break, and a
//! pairing helper aligns an interior spectrum with the square roots of its
//! boundary counterpart rank by rank.

use serde::Serialize;

use crate::error::{Result, SpectralError};
use crate::numeric::compensated_sum;
use crate::oracle::{oracle_steklov_value, OracleConfig};
use crate::radial::{steklov_eigenvalue, RadialOdeParams, Sign};

/// Below this field strength the closed-form ratio for the 4-ball is 0/0 to
/// working precision and the ODE oracle takes over.
pub const BALL4_SMALL_T: f64 = 1e-3;

/// Relative cancellation level at which the closed form is abandoned.
const FG_CANCEL_TOL: f64 = 1e-8;

/// Largest bidegree sum routed through the integer Taylor expansion of the
/// closed form; keeps every intermediate product comfortably inside `i128`
/// (worst case near 1e31 against a 1.7e38 limit).
const TAYLOR_MAX_DEGREE: u32 = 12;

/// Field strength beyond which the two exponential halves of the closed form
/// no longer cancel and direct evaluation is accurate past 1e-10.
const TAYLOR_MAX_FIELD: f64 = 10.0;

/// Retained Taylor terms; the weight `t^n / (2^n n!)` at `n = 120`,
/// `t = 10` is below 1e-110, far past convergence.
const TAYLOR_TERMS: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Disk2,
    Ball4,
    Circle,
    Sphere3,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Disk2 => "disk2",
            Model::Ball4 => "ball4",
            Model::Circle => "circle",
            Model::Sphere3 => "sphere3",
        }
    }

    /// Boundary model paired with an interior one.
    pub fn boundary(self) -> Option<Model> {
        match self {
            Model::Disk2 => Some(Model::Circle),
            Model::Ball4 => Some(Model::Sphere3),
            _ => None,
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Mode indices: Fourier index and orientation on 2-dimensional models,
/// bidegree on 4-dimensional ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ModeIndex {
    Angular { k: u32, sign: Sign },
    Bidegree { p1: u32, p2: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ModeLabel {
    pub model: Model,
    pub index: ModeIndex,
}

impl std::fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.index {
            ModeIndex::Angular { k, sign } => {
                write!(f, "{} k={}{}", self.model, k, sign.as_str())
            }
            ModeIndex::Bidegree { p1, p2 } => {
                write!(f, "{} (p1,p2)=({},{})", self.model, p1, p2)
            }
        }
    }
}

impl ModeLabel {
    /// Degree of the mode: k for angular labels, p1+p2 for bidegrees.
    pub fn degree(&self) -> u32 {
        match self.index {
            ModeIndex::Angular { k, .. } => k,
            ModeIndex::Bidegree { p1, p2 } => p1 + p2,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectrumEntry {
    pub label: ModeLabel,
    pub value: f64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumTable {
    pub model: Model,
    pub t: f64,
    pub k_max: u32,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    fn sorted(model: Model, t: f64, k_max: u32, mut entries: Vec<SpectrumEntry>) -> Self {
        entries.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.label.cmp(&b.label)));
        SpectrumTable {
            model,
            t,
            k_max,
            entries,
        }
    }

    pub fn min_value(&self) -> Option<f64> {
        self.entries.first().map(|e| e.value)
    }

    /// Values repeated by multiplicity, ascending.
    pub fn expanded_values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for e in &self.entries {
            for _ in 0..e.multiplicity {
                out.push(e.value);
            }
        }
        out
    }

    /// Smallest value among the two topmost degree levels. Sorted values
    /// below this floor cannot be displaced by modes beyond `k_max`.
    fn truncation_floor(&self) -> f64 {
        let lo = self.k_max.saturating_sub(1);
        self.entries
            .iter()
            .filter(|e| e.label.degree() >= lo)
            .map(|e| e.value)
            .fold(f64::INFINITY, f64::min)
    }
}

fn angular_label(model: Model, k: u32, sign: Sign) -> ModeLabel {
    ModeLabel {
        model,
        index: ModeIndex::Angular { k, sign },
    }
}

fn bidegree_label(model: Model, p1: u32, p2: u32) -> ModeLabel {
    ModeLabel {
        model,
        index: ModeIndex::Bidegree { p1, p2 },
    }
}

// ---------------------------------------------------------------------------
// Disk and circle
// ---------------------------------------------------------------------------

/// Steklov spectrum of the unit disk up to Fourier index `k_max`. The k = 0
/// mode appears once; each k >= 1 contributes both orientations.
pub fn disk_steklov_spectrum(t: f64, k_max: u32) -> Result<SpectrumTable> {
    let mut entries = Vec::with_capacity(2 * k_max as usize + 1);
    for k in 0..=k_max {
        let signs: &[Sign] = if k == 0 {
            &[Sign::Plus]
        } else {
            &[Sign::Minus, Sign::Plus]
        };
        for &sign in signs {
            let label = angular_label(Model::Disk2, k, sign);
            let params = RadialOdeParams::disk_mode(k, sign, t)?;
            let value =
                steklov_eigenvalue(&params).map_err(|e| e.for_mode(label.to_string()))?;
            entries.push(SpectrumEntry {
                label,
                value,
                multiplicity: 1,
            });
        }
    }
    Ok(SpectrumTable::sorted(Model::Disk2, t, k_max, entries))
}

/// Magnetic Laplacian spectrum of the unit circle: `(k ± t)^2`.
pub fn circle_laplacian_spectrum(t: f64, k_max: u32) -> SpectrumTable {
    let mut entries = Vec::with_capacity(2 * k_max as usize + 1);
    for k in 0..=k_max {
        let signs: &[Sign] = if k == 0 {
            &[Sign::Plus]
        } else {
            &[Sign::Minus, Sign::Plus]
        };
        for &sign in signs {
            let base = k as f64 + sign.factor() * t;
            entries.push(SpectrumEntry {
                label: angular_label(Model::Circle, k, sign),
                value: base * base,
                multiplicity: 1,
            });
        }
    }
    SpectrumTable::sorted(Model::Circle, t, k_max, entries)
}

/// First Steklov eigenvalue of the disk, scanning Fourier modes until the
/// running minimum is safely below everything that follows. The minimizing
/// index grows like `t`, so the scan tracks the field strength.
pub fn disk_first_eigenvalue(t: f64) -> Result<f64> {
    let ta = t.abs();
    let params = RadialOdeParams::disk_mode(0, Sign::Plus, t)?;
    let mut best = steklov_eigenvalue(&params)?;
    let k_cap = (ta + 10.0 * ta.sqrt() + 50.0).ceil() as u32;
    let mut clear_rounds = 0u32;
    for k in 1..=k_cap {
        let mut level_min = f64::INFINITY;
        for sign in [Sign::Minus, Sign::Plus] {
            let params = RadialOdeParams::disk_mode(k, sign, t)?;
            let value = steklov_eigenvalue(&params)?;
            level_min = level_min.min(value);
        }
        best = best.min(level_min);
        // Eigenvalues grow linearly in k past the minimizing index; five
        // consecutive clear levels beyond k = t end the scan.
        if k as f64 > ta && level_min > best + 3.0 {
            clear_rounds += 1;
            if clear_rounds >= 5 {
                break;
            }
        } else {
            clear_rounds = 0;
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// 4-ball and 3-sphere
// ---------------------------------------------------------------------------

fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|v| v as f64).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    (factorial(n) / factorial(k)) / factorial(n - k)
}

/// `F(p1, p2, t) = e^{t/2} sum_{j<=p1} (2j - k + t - 2)(k-j)! C(p1,j) (-t)^j`
/// with `k = p1 + p2`; numerator of the closed-form eigenvalue.
pub(crate) fn fg_numerator_half(p1: u32, p2: u32, t: f64) -> f64 {
    let k = p1 + p2;
    let sum = compensated_sum((0..=p1).map(|j| {
        (2.0 * j as f64 - k as f64 + t - 2.0)
            * factorial(k - j)
            * binomial(p1, j)
            * (-t).powi(j as i32)
    }));
    (0.5 * t).exp() * sum
}

/// `G(p1, p2, t) = e^{t/2} sum_{j<=p1} (k-j)! C(p1,j) (-t)^j`; denominator
/// half, equal to the boundary value of one exponential branch.
pub(crate) fn fg_denominator_half(p1: u32, p2: u32, t: f64) -> f64 {
    let k = p1 + p2;
    let sum = compensated_sum(
        (0..=p1).map(|j| factorial(k - j) * binomial(p1, j) * (-t).powi(j as i32)),
    );
    (0.5 * t).exp() * sum
}

fn factorial_int(n: u32) -> i128 {
    (1..=n as i128).product()
}

fn binomial_int(n: u32, k: u32) -> i128 {
    factorial_int(n) / factorial_int(k) / factorial_int(n - k)
}

/// Weights `(k - j)! C(p, j)` of one exponential branch, exact in `i128`.
fn branch_weights(p: u32, k: u32) -> Vec<i128> {
    (0..=p)
        .map(|j| factorial_int(k - j) * binomial_int(p, j))
        .collect()
}

/// Coefficients in `t` of one branch polynomial,
/// `sum_j w_j (-u)^j ((2j - k - 2) + u)` with `u = s t`, exact in `i128`.
/// Without the eigenvalue factor the branch is just `sum_j w_j (-u)^j`.
fn branch_polynomial(weights: &[i128], k: u32, s: i128, eigen_factor: bool) -> Vec<i128> {
    let deg = weights.len() - 1 + usize::from(eigen_factor);
    let mut coeff = vec![0i128; deg + 1];
    for (j, &w) in weights.iter().enumerate() {
        let sign: i128 = if j % 2 == 0 { 1 } else { -1 };
        if eigen_factor {
            coeff[j] += sign * (2 * j as i128 - k as i128 - 2) * w;
            coeff[j + 1] += sign * w;
        } else {
            coeff[j] += sign * w;
        }
    }
    if s < 0 {
        for c in coeff.iter_mut().skip(1).step_by(2) {
            *c = -*c;
        }
    }
    coeff
}

/// Integer Taylor coefficients of `e^{t/2} S1(t) - e^{-t/2} S2(t)` in the
/// basis `t^n / (2^n n!)`:
/// `c_n = sum_m 2^m n!/(n-m)! (S1_m - (-1)^{n-m} S2_m)`.
/// The subtraction that ruins direct floating evaluation near t = 0 happens
/// here between exact integers, so the leading digits survive.
fn exponential_difference_taylor(s1: &[i128], s2: &[i128], terms: usize) -> Vec<i128> {
    let deg = s1.len().max(s2.len()) - 1;
    (0..terms)
        .map(|n| {
            let mut c = 0i128;
            let mut scale = 1i128; // 2^m * n! / (n - m)!
            for m in 0..=deg.min(n) {
                let a = s1.get(m).copied().unwrap_or(0);
                let b = s2.get(m).copied().unwrap_or(0);
                let parity: i128 = if (n - m) % 2 == 0 { 1 } else { -1 };
                c += scale * (a - parity * b);
                scale *= 2 * (n - m) as i128;
            }
            c
        })
        .collect()
}

/// Closed-form eigenvalue through the exact Taylor expansion of
/// `num(t) / den(t)`; immune to the small-t cancellation of the direct
/// halves because the integer coefficients already encode the difference.
fn ball4_sigma_taylor(p1: u32, p2: u32, t: f64) -> Result<f64> {
    let k = p1 + p2;
    let w1 = branch_weights(p1, k);
    let w2 = branch_weights(p2, k);
    let num_c = exponential_difference_taylor(
        &branch_polynomial(&w1, k, 1, true),
        &branch_polynomial(&w2, k, -1, true),
        TAYLOR_TERMS,
    );
    let den_c = exponential_difference_taylor(
        &branch_polynomial(&w1, k, 1, false),
        &branch_polynomial(&w2, k, -1, false),
        TAYLOR_TERMS,
    );
    if t == 0.0 {
        // Leading nonzero coefficients carry the classical limit exactly.
        let lead = den_c
            .iter()
            .position(|&c| c != 0)
            .ok_or_else(|| SpectralError::CancellationLoss { t })?;
        return Ok(num_c[lead] as f64 / den_c[lead] as f64);
    }
    let mut num = 0.0;
    let mut den = 0.0;
    let mut weight = 1.0; // t^n / (2^n n!)
    for n in 0..TAYLOR_TERMS {
        num += num_c[n] as f64 * weight;
        den += den_c[n] as f64 * weight;
        weight *= t / (2.0 * (n + 1) as f64);
    }
    if den == 0.0 {
        return Err(SpectralError::CancellationLoss { t });
    }
    Ok(num / den)
}

/// Closed-form Steklov eigenvalue of the 4-ball mode `(p1, p2)`:
/// `(F(p1,p2,t) - F(p2,p1,-t)) / (G(p1,p2,t) - G(p2,p1,-t))`.
/// Small bidegrees at moderate field strength go through an exact integer
/// Taylor expansion of the ratio; elsewhere the halves are evaluated
/// directly, and severe cancellation is reported rather than returned as a
/// wrong number.
pub fn ball4_sigma_closed_form(p1: u32, p2: u32, t: f64) -> Result<f64> {
    let k = p1 + p2;
    if k > 150 {
        return Err(SpectralError::InvalidParams(format!(
            "bidegree sum {k} too large for the factorial closed form"
        )));
    }
    if k <= TAYLOR_MAX_DEGREE && t.abs() <= TAYLOR_MAX_FIELD {
        return ball4_sigma_taylor(p1, p2, t);
    }
    let num = fg_numerator_half(p1, p2, t) - fg_numerator_half(p2, p1, -t);
    let den = fg_denominator_half(p1, p2, t) - fg_denominator_half(p2, p1, -t);

    let largest = (0..=p1)
        .map(|j| (0.5 * t).exp() * factorial(k - j) * binomial(p1, j) * t.abs().powi(j as i32))
        .chain((0..=p2).map(|j| {
            (-0.5 * t).exp() * factorial(k - j) * binomial(p2, j) * t.abs().powi(j as i32)
        }))
        .fold(0.0f64, f64::max);
    if den.abs() < FG_CANCEL_TOL * largest {
        return Err(SpectralError::CancellationLoss { t });
    }
    Ok(num / den)
}

/// Steklov eigenvalue of a 4-ball mode with automatic path selection:
/// exact classical value at t = 0, ODE oracle in the cancellation regime
/// near t = 0, closed form elsewhere (falling back to the oracle if the
/// closed form reports cancellation).
pub fn ball4_sigma(p1: u32, p2: u32, t: f64) -> Result<f64> {
    let params = RadialOdeParams::ball4_mode(p1, p2, t)?;
    if t == 0.0 {
        return crate::radial::series_solve(&params)?.steklov_value();
    }
    if t.abs() < BALL4_SMALL_T {
        return oracle_steklov_value(&params, &OracleConfig::default());
    }
    match ball4_sigma_closed_form(p1, p2, t) {
        Ok(v) => Ok(v),
        Err(SpectralError::CancellationLoss { .. }) => {
            oracle_steklov_value(&params, &OracleConfig::default())
        }
        Err(e) => Err(e),
    }
}

/// Steklov spectrum of the unit 4-ball over bidegrees with `p1 + p2 <= k_max`.
pub fn ball4_steklov_spectrum(t: f64, k_max: u32) -> Result<SpectrumTable> {
    let mut entries = Vec::new();
    for k in 0..=k_max {
        for p1 in 0..=k {
            let p2 = k - p1;
            let label = bidegree_label(Model::Ball4, p1, p2);
            let value = ball4_sigma(p1, p2, t).map_err(|e| e.for_mode(label.to_string()))?;
            entries.push(SpectrumEntry {
                label,
                value,
                multiplicity: k + 1,
            });
        }
    }
    Ok(SpectrumTable::sorted(Model::Ball4, t, k_max, entries))
}

/// Magnetic Laplacian spectrum of the unit 3-sphere:
/// `k(k+2) + 2(p1 - p2) t + t^2`, multiplicity `k + 1` per bidegree.
pub fn sphere3_laplacian_spectrum(t: f64, k_max: u32) -> Result<SpectrumTable> {
    let mut entries = Vec::new();
    for k in 0..=k_max {
        for p1 in 0..=k {
            let p2 = k - p1;
            let kf = k as f64;
            let value = kf * (kf + 2.0) + 2.0 * (p1 as f64 - p2 as f64) * t + t * t;
            let label = bidegree_label(Model::Sphere3, p1, p2);
            if value < -1e-12 {
                return Err(SpectralError::NegativeEigenvalue {
                    value,
                    label: label.to_string(),
                });
            }
            entries.push(SpectrumEntry {
                label,
                value,
                multiplicity: k + 1,
            });
        }
    }
    Ok(SpectrumTable::sorted(Model::Sphere3, t, k_max, entries))
}

// ---------------------------------------------------------------------------
// Pairing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GapRow {
    pub rank: usize,
    pub steklov: f64,
    pub boundary_sqrt: f64,
    pub gap: f64,
}

/// Pairs the n lowest interior eigenvalues (with multiplicity) against the
/// square roots of the n lowest boundary eigenvalues. Both tables must be
/// deep enough that omitted modes cannot reorder the requested ranks.
pub fn paired_gap_table(
    steklov: &SpectrumTable,
    boundary: &SpectrumTable,
    n: usize,
) -> Result<Vec<GapRow>> {
    if steklov.model.boundary() != Some(boundary.model) {
        return Err(SpectralError::InvalidParams(format!(
            "{} does not bound {}",
            boundary.model, steklov.model
        )));
    }
    if steklov.t != boundary.t {
        return Err(SpectralError::InvalidParams(
            "paired tables must share the field strength".into(),
        ));
    }
    let sv = steklov.expanded_values();
    let bv = boundary.expanded_values();
    if n == 0 || n > sv.len() || n > bv.len() {
        return Err(SpectralError::TruncationInsufficient { rank: n });
    }
    for (table, values) in [(steklov, &sv), (boundary, &bv)] {
        if values[n - 1] >= table.truncation_floor() {
            return Err(SpectralError::TruncationInsufficient { rank: n });
        }
    }
    Ok((0..n)
        .map(|i| {
            let root = bv[i].max(0.0).sqrt();
            GapRow {
                rank: i + 1,
                steklov: sv[i],
                boundary_sqrt: root,
                gap: sv[i] - root,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coth(x: f64) -> f64 {
        1.0 / x.tanh()
    }

    #[test]
    fn disk_zero_field_table() {
        let table = disk_steklov_spectrum(0.0, 3).unwrap();
        let values = table.expanded_values();
        let expected = [0.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0];
        assert_eq!(values.len(), expected.len());
        for (v, e) in values.iter().zip(expected) {
            assert!((v - e).abs() < 1e-14);
        }
    }

    #[test]
    fn disk_table_matches_oracle_at_t1() {
        let table = disk_steklov_spectrum(1.0, 1).unwrap();
        assert_eq!(table.entries.len(), 3);
        for entry in &table.entries {
            let ModeIndex::Angular { k, sign } = entry.label.index else {
                panic!("disk labels are angular")
            };
            let params = RadialOdeParams::disk_mode(k, sign, 1.0).unwrap();
            let oracle = oracle_steklov_value(&params, &OracleConfig::default()).unwrap();
            assert!((entry.value - oracle).abs() < 1e-8);
        }
    }

    #[test]
    fn disk_field_flip_symmetry() {
        let plus = disk_steklov_spectrum(0.7, 4).unwrap();
        let minus = disk_steklov_spectrum(-0.7, 4).unwrap();
        for (a, b) in plus
            .expanded_values()
            .iter()
            .zip(minus.expanded_values())
        {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn disk_values_nonnegative() {
        for t in [0.0, 0.4, 1.0, 3.0] {
            let table = disk_steklov_spectrum(t, 6).unwrap();
            assert!(table.min_value().unwrap() >= -1e-10);
        }
    }

    #[test]
    fn circle_values() {
        let table = circle_laplacian_spectrum(0.3, 2);
        let by_label: Vec<(u32, Sign, f64)> = table
            .entries
            .iter()
            .map(|e| {
                let ModeIndex::Angular { k, sign } = e.label.index else {
                    unreachable!()
                };
                (k, sign, e.value)
            })
            .collect();
        for (k, sign, v) in by_label {
            let expect = (k as f64 + sign.factor() * 0.3).powi(2);
            assert!((v - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_zero_field_table() {
        let values = circle_laplacian_spectrum(0.0, 2).expanded_values();
        let expected = [0.0, 1.0, 1.0, 4.0, 4.0];
        for (v, e) in values.iter().zip(expected) {
            assert_eq!(*v, e);
        }
    }

    #[test]
    fn circle_minimum_is_distance_to_integers_squared() {
        let table = circle_laplacian_spectrum(0.4, 5);
        assert!((table.min_value().unwrap() - 0.16).abs() < 1e-15);
    }

    #[test]
    fn fg_halves_at_zero_bidegree() {
        // F(0,0,t) = e^{t/2}(t-2) and G(0,0,t) = e^{t/2}.
        for t in [0.3, 1.0, 4.0] {
            assert!((fg_numerator_half(0, 0, t) - (0.5 * t).exp() * (t - 2.0)).abs() < 1e-12);
            assert!((fg_denominator_half(0, 0, t) - (0.5 * t).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn ball4_lowest_mode_closed_form() {
        // sigma(0,0) = t coth(t/2) - 2.
        for t in [0.1, 1.0, 5.0, 20.0] {
            let sigma = ball4_sigma(0, 0, t).unwrap();
            let expect = t * coth(0.5 * t) - 2.0;
            assert!((sigma - expect).abs() < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn ball4_classical_limit() {
        for (p1, p2) in [(0u32, 0u32), (1, 0), (1, 1), (2, 1)] {
            let sigma = ball4_sigma(p1, p2, 1e-6).unwrap();
            assert!(
                (sigma - (p1 + p2) as f64).abs() < 1e-4,
                "(p1,p2) = ({p1},{p2})"
            );
        }
    }

    #[test]
    fn ball4_closed_form_matches_oracle() {
        for (p1, p2) in [(1u32, 0u32), (0, 1), (2, 0), (1, 1), (3, 2)] {
            let closed = ball4_sigma_closed_form(p1, p2, 1.0).unwrap();
            let params = RadialOdeParams::ball4_mode(p1, p2, 1.0).unwrap();
            let oracle = oracle_steklov_value(&params, &OracleConfig::default()).unwrap();
            assert!(
                (closed - oracle).abs() < 1e-8,
                "(p1,p2) = ({p1},{p2}): {closed} vs {oracle}"
            );
        }
    }

    #[test]
    fn ball4_bidegree_swap_matches_field_flip() {
        for (p1, p2) in [(1u32, 0u32), (2, 1), (3, 0)] {
            let a = ball4_sigma(p1, p2, 1.7).unwrap();
            let b = ball4_sigma(p2, p1, -1.7).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn ball4_taylor_route_survives_cancelling_fields() {
        // Direct evaluation of the halves loses five digits or more here;
        // the integer expansion must stay at oracle accuracy.
        for (p1, p2) in [(3u32, 5u32), (2, 6), (0, 8), (4, 4), (2, 10)] {
            let t = 0.5;
            let sigma = ball4_sigma_closed_form(p1, p2, t).unwrap();
            let params = RadialOdeParams::ball4_mode(p1, p2, t).unwrap();
            let oracle = oracle_steklov_value(&params, &OracleConfig::default()).unwrap();
            assert!(
                (sigma - oracle).abs() < 1e-9 * (1.0 + oracle.abs()),
                "(p1,p2) = ({p1},{p2}): {sigma} vs {oracle}"
            );
        }
    }

    #[test]
    fn ball4_taylor_and_direct_routes_agree() {
        // At t = 8 the halves no longer cancel, so both evaluations of the
        // same ratio must coincide.
        for (p1, p2) in [(0u32, 0u32), (2, 1), (3, 5)] {
            let t = 8.0;
            let taylor = ball4_sigma_taylor(p1, p2, t).unwrap();
            let num = fg_numerator_half(p1, p2, t) - fg_numerator_half(p2, p1, -t);
            let den = fg_denominator_half(p1, p2, t) - fg_denominator_half(p2, p1, -t);
            let direct = num / den;
            assert!(
                (taylor - direct).abs() < 1e-9 * (1.0 + direct.abs()),
                "(p1,p2) = ({p1},{p2}): {taylor} vs {direct}"
            );
        }
    }

    #[test]
    fn ball4_closed_form_zero_field_limit() {
        for (p1, p2) in [(0u32, 0u32), (1, 0), (2, 3), (5, 5)] {
            let sigma = ball4_sigma_closed_form(p1, p2, 0.0).unwrap();
            assert!((sigma - (p1 + p2) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn sphere3_values_and_multiplicities() {
        // k = 2, p1 = 1, p2 = 1, t = 0.5: 2*4 + 0 + 0.25.
        let table = sphere3_laplacian_spectrum(0.5, 2).unwrap();
        let entry = table
            .entries
            .iter()
            .find(|e| e.label.index == ModeIndex::Bidegree { p1: 1, p2: 1 })
            .unwrap();
        assert!((entry.value - 8.25).abs() < 1e-14);

        // k = 1, p1 = 0, p2 = 1, t = 1: 3 - 2 + 1 = 2.
        let table = sphere3_laplacian_spectrum(1.0, 1).unwrap();
        let entry = table
            .entries
            .iter()
            .find(|e| e.label.index == ModeIndex::Bidegree { p1: 0, p2: 1 })
            .unwrap();
        assert!((entry.value - 2.0).abs() < 1e-14);

        // Cluster multiplicity at t = 0 is (k+1)^2.
        let table = sphere3_laplacian_spectrum(0.0, 4).unwrap();
        for k in 0..=4u32 {
            let total: u32 = table
                .entries
                .iter()
                .filter(|e| e.label.degree() == k)
                .map(|e| e.multiplicity)
                .sum();
            assert_eq!(total, (k + 1) * (k + 1));
        }
    }

    #[test]
    fn paired_gaps_vanish_at_zero_field_disk() {
        let steklov = disk_steklov_spectrum(0.0, 8).unwrap();
        let boundary = circle_laplacian_spectrum(0.0, 8);
        let rows = paired_gap_table(&steklov, &boundary, 9).unwrap();
        for row in rows {
            assert!(row.gap.abs() < 1e-12, "rank {}", row.rank);
        }
    }

    #[test]
    fn paired_gaps_classical_ball4() {
        let steklov = ball4_steklov_spectrum(0.0, 6).unwrap();
        let boundary = sphere3_laplacian_spectrum(0.0, 6).unwrap();
        let rows = paired_gap_table(&steklov, &boundary, 20).unwrap();
        // Ranks fill degree clusters in order; gap at degree k is
        // k - sqrt(k(k+2)), which lies in (-1, 0].
        let mut expected = Vec::new();
        for k in 0..=6u32 {
            let kf = k as f64;
            for _ in 0..(k + 1) * (k + 1) {
                expected.push(kf - (kf * (kf + 2.0)).sqrt());
            }
        }
        for (row, e) in rows.iter().zip(expected) {
            assert!((row.gap - e).abs() < 1e-12);
            assert!(row.gap <= 1e-15 && row.gap > -1.0);
        }
    }

    #[test]
    fn pairing_rejects_shallow_tables() {
        let steklov = disk_steklov_spectrum(0.0, 3).unwrap();
        let boundary = circle_laplacian_spectrum(0.0, 3);
        // Rank 7 of a k_max = 3 table ties the truncation floor.
        assert!(matches!(
            paired_gap_table(&steklov, &boundary, 7),
            Err(SpectralError::TruncationInsufficient { .. })
        ));
    }

    #[test]
    fn pairing_rejects_mismatched_models() {
        let steklov = disk_steklov_spectrum(0.0, 3).unwrap();
        let boundary = sphere3_laplacian_spectrum(0.0, 3).unwrap();
        assert!(paired_gap_table(&steklov, &boundary, 2).is_err());
    }

    #[test]
    fn first_eigenvalue_matches_table_minimum() {
        for t in [0.0, 0.5, 1.0, 2.5] {
            let scan = disk_first_eigenvalue(t).unwrap();
            let table = disk_steklov_spectrum(t, 12).unwrap();
            assert!(
                (scan - table.min_value().unwrap()).abs() < 1e-10,
                "t = {t}"
            );
        }
    }

    #[test]
    fn table_is_sorted_with_deterministic_ties() {
        let table = disk_steklov_spectrum(0.0, 5).unwrap();
        for pair in table.entries.windows(2) {
            assert!(pair[0].value <= pair[1].value);
            if pair[0].value == pair[1].value {
                assert!(pair[0].label < pair[1].label);
            }
        }
    }
}
