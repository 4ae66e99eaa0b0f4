//! Lower bounds on entanglement implied by an observed α-CHSH value.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::bell::{check_alpha, optimal_theta_bell_diagonal, quantum_bound};
use crate::linalg::BellSpectrum;
use crate::measures::{eof_from_concurrence, shannon_entropy, MeasureKind};
use crate::{Error, Result};

/// Slack allowed above the quantum bound before a value is rejected.
pub const SUPER_QUANTUM_TOL: f64 = 1e-9;

/// What is assumed about the measured system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssumptionLevel {
    /// The source emits pairs of qubits.
    QubitPair,
    /// Nothing is assumed about the dimension.
    DeviceIndependent,
}

impl AssumptionLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            AssumptionLevel::QubitPair => "qubit",
            AssumptionLevel::DeviceIndependent => "di",
        }
    }
}

/// A certified lower bound and, when known, a state attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub value: f64,
    pub extremal_spectrum: Option<BellSpectrum>,
    /// Bob's measurement angle for the extremal state (Alice measures σz, σx).
    pub extremal_theta: Option<f64>,
}

impl BoundResult {
    fn bare(value: f64) -> Self {
        Self {
            value,
            extremal_spectrum: None,
            extremal_theta: None,
        }
    }
}

/// Validates `(S, α)` and reports whether `S` violates the local bound.
/// Values marginally above the quantum bound are clamped onto it.
fn check_value(s: f64, alpha: f64) -> Result<(f64, bool)> {
    check_alpha(alpha)?;
    if !s.is_finite() {
        return Err(Error::ParamOutOfRange("Bell value is not finite"));
    }
    let bound = quantum_bound(alpha);
    if s > bound + SUPER_QUANTUM_TOL {
        return Err(Error::SuperQuantum { value: s, bound });
    }
    Ok((s.min(bound), s > 2.0 * alpha))
}

/// `√(S²/4 − α²)`, the smallest concurrence of a qubit pair reaching `S`.
fn qubit_concurrence(s: f64, alpha: f64) -> f64 {
    (0.25 * s * s - alpha * alpha).max(0.0).sqrt().min(1.0)
}

fn linear_bound(s: f64, alpha: f64) -> f64 {
    ((s - 2.0 * alpha) / (quantum_bound(alpha) - 2.0 * alpha)).clamp(0.0, 1.0)
}

fn qubit_witness(c: f64, alpha: f64) -> (BellSpectrum, f64) {
    let spectrum = BellSpectrum::new([0.5 + 0.5 * c, 0.5 - 0.5 * c, 0.0, 0.0])
        .expect("extremal spectrum is valid for c in [0, 1]");
    (spectrum, (c / alpha).atan())
}

/// Minimum concurrence compatible with `S`.
///
/// For qubit pairs this is `√(S²/4 − α²)`, attained by the rank-two state
/// `(½ + ½C, ½ − ½C, 0, 0)`. Without a dimension assumption the bound is the
/// convex closure, the chord `(S − 2α)/(2√(1+α²) − 2α)`.
pub fn concurrence_bound(s: f64, alpha: f64, level: AssumptionLevel) -> Result<BoundResult> {
    let (s, violated) = check_value(s, alpha)?;
    if !violated {
        return Ok(BoundResult::bare(0.0));
    }
    Ok(match level {
        AssumptionLevel::QubitPair => {
            let c = qubit_concurrence(s, alpha);
            let (spectrum, theta) = qubit_witness(c, alpha);
            BoundResult {
                value: c,
                extremal_spectrum: Some(spectrum),
                extremal_theta: Some(theta),
            }
        }
        AssumptionLevel::DeviceIndependent => BoundResult::bare(linear_bound(s, alpha)),
    })
}

/// Minimum entanglement of formation compatible with `S`:
/// `h(½ + ½√(1 + α² − S²/4))` for qubit pairs, the same chord as the
/// concurrence otherwise.
pub fn eof_bound(s: f64, alpha: f64, level: AssumptionLevel) -> Result<BoundResult> {
    let (s, violated) = check_value(s, alpha)?;
    if !violated {
        return Ok(BoundResult::bare(0.0));
    }
    Ok(match level {
        AssumptionLevel::QubitPair => {
            let c = qubit_concurrence(s, alpha);
            let (spectrum, theta) = qubit_witness(c, alpha);
            BoundResult {
                value: eof_from_concurrence(c),
                extremal_spectrum: Some(spectrum),
                extremal_theta: Some(theta),
            }
        }
        AssumptionLevel::DeviceIndependent => BoundResult::bare(linear_bound(s, alpha)),
    })
}

/// Largest and smallest Bell weights `(λ₁, λ₄)` fixed by `(λ₂, λ₃)` and the
/// constraint `S = 2√(α²T₃₃² + T₁₁²)`, or `None` if no sorted spectrum fits.
pub fn eliminate_extremes(s: f64, alpha: f64, l2: f64, l3: f64) -> Option<[f64; 4]> {
    let a2 = alpha * alpha;
    let radicand = s * s * (a2 + 1.0) / 16.0 - a2 * (l2 - l3) * (l2 - l3);
    if radicand < 0.0 {
        return None;
    }
    let root = radicand.sqrt() / (a2 + 1.0);
    let l1 = 0.5 - (a2 * l2 + l3) / (a2 + 1.0) + root;
    let l4 = 0.5 - (l2 + a2 * l3) / (a2 + 1.0) - root;
    let tol = 1e-13;
    if l4 < -tol || l3 < l4 - tol || l2 < l3 - tol || l1 < l2 - tol || l3 < -tol {
        return None;
    }
    Some([l1, l2, l3, l4.max(0.0)])
}

fn distillable_objective(s: f64, alpha: f64, l2: f64, l3: f64) -> Option<(f64, [f64; 4])> {
    eliminate_extremes(s, alpha, l2, l3).map(|w| (1.0 - shannon_entropy(&w), w))
}

const GRID: usize = 200;
const REFINE_TOL: f64 = 1e-9;
const STARTS: usize = 6;

/// Minimum of `1 + Σ λᵢ log₂ λᵢ` over Bell spectra reaching `S`, with its
/// minimizer. Requires a strict violation `S > 2α`.
///
/// `λ₁` and `λ₄` are eliminated through the Bell-value constraint; the
/// remaining `(λ₂, λ₃)` plane is searched on a 200×200 grid and the best
/// points are polished by a pattern search that slides along the feasible
/// boundary.
pub fn distillable_bound(s: f64, alpha: f64) -> Result<BoundResult> {
    let (s, violated) = check_value(s, alpha)?;
    if !violated {
        return Err(Error::NoViolation {
            value: s,
            bound: 2.0 * alpha,
        });
    }
    let (value, w) = minimize_distillable(s, alpha);
    let spectrum = BellSpectrum::from_unsorted(w).expect("eliminated spectrum is valid");
    Ok(BoundResult {
        value,
        extremal_spectrum: Some(spectrum),
        extremal_theta: optimal_theta_bell_diagonal(&spectrum, alpha).ok(),
    })
}

fn minimize_distillable(s: f64, alpha: f64) -> (f64, [f64; 4]) {
    let eval = |p: [f64; 2]| distillable_objective(s, alpha, p[0], p[1]);

    let c = qubit_concurrence(s, alpha);
    let mut starts: Vec<(f64, [f64; 2])> = Vec::new();
    // The qubit concurrence witness is always feasible.
    let seed = [0.5 - 0.5 * c, 0.0];
    if let Some((v, _)) = eval(seed) {
        starts.push((v, seed));
    }

    let (h2, h3) = (0.5 / GRID as f64, (1.0 / 3.0) / GRID as f64);
    let mut grid: Vec<(f64, [f64; 2])> = Vec::new();
    for i in 0..=GRID {
        for j in 0..=GRID {
            let p = [i as f64 * h2, j as f64 * h3];
            if let Some((v, _)) = eval(p) {
                grid.push((v, p));
            }
        }
    }
    grid.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Keep well-separated starting points.
    for cand in grid {
        if starts.len() >= STARTS + 2 {
            break;
        }
        let far = starts
            .iter()
            .all(|(_, q)| (q[0] - cand.1[0]).abs() + (q[1] - cand.1[1]).abs() > 4.0 * h2);
        if far {
            starts.push(cand);
        }
    }

    let mut best = (f64::INFINITY, [0.0; 2]);
    for (v, p) in starts {
        let refined = pattern_search(&eval, p, v, 4.0 * h2);
        if refined.0 < best.0 {
            best = refined;
        }
    }
    let (v, w) = eval(best.1).expect("refined point stays feasible");
    (v, w)
}

/// Compass search over `(λ₂, λ₃)`. Infeasible trial points are pulled back
/// along the segment to the current point until they re-enter the region.
fn pattern_search(
    eval: &impl Fn([f64; 2]) -> Option<(f64, [f64; 4])>,
    start: [f64; 2],
    start_value: f64,
    initial_step: f64,
) -> (f64, [f64; 2]) {
    const R: f64 = core::f64::consts::FRAC_1_SQRT_2;
    const DIRS: [[f64; 2]; 8] = [
        [1.0, 0.0],
        [-1.0, 0.0],
        [0.0, 1.0],
        [0.0, -1.0],
        [R, R],
        [-R, -R],
        [R, -R],
        [-R, R],
    ];
    let (mut p, mut v) = (start, start_value);
    let mut h = initial_step;
    while h > REFINE_TOL {
        let mut improved = false;
        for d in DIRS {
            let trial = [p[0] + h * d[0], p[1] + h * d[1]];
            let candidate = match eval(trial) {
                Some((tv, _)) => Some((tv, trial)),
                None => pull_back(eval, p, trial),
            };
            if let Some((tv, tp)) = candidate {
                if tv < v - 1e-15 {
                    v = tv;
                    p = tp;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (v, p)
}

fn pull_back(
    eval: &impl Fn([f64; 2]) -> Option<(f64, [f64; 4])>,
    inside: [f64; 2],
    outside: [f64; 2],
) -> Option<(f64, [f64; 2])> {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        let q = [
            inside[0] + mid * (outside[0] - inside[0]),
            inside[1] + mid * (outside[1] - inside[1]),
        ];
        if eval(q).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo == 0.0 {
        return None;
    }
    let q = [
        inside[0] + lo * (outside[0] - inside[0]),
        inside[1] + lo * (outside[1] - inside[1]),
    ];
    eval(q).map(|(v, _)| (v, q))
}

/// Greatest convex function lying below the samples `(s[i], e[i])`,
/// evaluated at the same abscissae. `s` must be strictly increasing.
pub fn convex_closure(s: &[f64], e: &[f64]) -> Vec<f64> {
    assert_eq!(s.len(), e.len(), "abscissae and ordinates differ in length");
    let n = s.len();
    if n <= 2 {
        return e.to_vec();
    }
    // Lower hull, monotone chain.
    let mut hull: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (s[b] - s[a]) * (e[i] - e[a]) - (e[b] - e[a]) * (s[i] - s[a]);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let mut out = Vec::with_capacity(n);
    let mut seg = 0;
    for i in 0..n {
        while seg + 1 < hull.len() - 1 && s[hull[seg + 1]] <= s[i] {
            seg += 1;
        }
        let (a, b) = (hull[seg], hull[seg + 1]);
        let t = (s[i] - s[a]) / (s[b] - s[a]);
        out.push((e[a] + t * (e[b] - e[a])).min(e[i]));
    }
    out
}

/// Whether the distillable curve needed its convex closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureBranch {
    /// The sampled curve was already convex and is used directly.
    Convex,
    /// The curve failed the convexity check and was replaced by its closure.
    ClosureApplied,
}

/// The qubit distillable bound sampled on `(2α, 2√(1+α²)]` together with the
/// device-independent version derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct DistillableCurve {
    pub s: Vec<f64>,
    pub qubit: Vec<f64>,
    pub device_independent: Vec<f64>,
    pub branch: ClosureBranch,
    /// Most negative second difference found on the grid.
    pub min_second_difference: f64,
}

/// Tolerance on second differences for the convexity check.
pub const CONVEXITY_TOL: f64 = 1e-6;

/// Samples the distillable bound at `points` evenly spaced values of `S`
/// above the local bound and checks it for convexity.
pub fn distillable_curve(alpha: f64, points: usize) -> Result<DistillableCurve> {
    check_alpha(alpha)?;
    if points < 3 {
        return Err(Error::ParamOutOfRange("need at least three sample points"));
    }
    let lo = 2.0 * alpha;
    let hi = quantum_bound(alpha);
    let s: Vec<f64> = (1..=points)
        .map(|k| lo + (hi - lo) * k as f64 / points as f64)
        .collect();
    let qubit = s
        .iter()
        .map(|&x| distillable_bound(x, alpha).map(|b| b.value))
        .collect::<Result<Vec<_>>>()?;
    let min_second_difference = qubit
        .windows(3)
        .map(|w| w[0] - 2.0 * w[1] + w[2])
        .fold(f64::INFINITY, f64::min);
    let (branch, device_independent) = if min_second_difference >= -CONVEXITY_TOL {
        (ClosureBranch::Convex, qubit.clone())
    } else {
        (ClosureBranch::ClosureApplied, convex_closure(&s, &qubit))
    };
    Ok(DistillableCurve {
        s,
        qubit,
        device_independent,
        branch,
        min_second_difference,
    })
}

/// Dispatch on the measure. For the distillable entanglement the qubit and
/// device-independent bounds coincide when the curve is convex, which
/// [`distillable_curve`] verifies.
pub fn bound(kind: MeasureKind, s: f64, alpha: f64, level: AssumptionLevel) -> Result<BoundResult> {
    match kind {
        MeasureKind::Concurrence => concurrence_bound(s, alpha, level),
        MeasureKind::EntanglementOfFormation => eof_bound(s, alpha, level),
        MeasureKind::OneWayDistillable => distillable_bound(s, alpha),
    }
}
