//! The non-typicality exponent L_δ(Q) = min { D(P‖Q) : P ∉ T_δ(Q) }, where
//! T_δ(Q) holds the distributions with |P(a) − Q(a)| ≤ δ Q(a) for every a.
//!
//! [`sanov_oracle`] estimates L_δ(Q) by brute force over a simplex grid with
//! local refinement. It does not assume anything about where the minimizer
//! lies, so it can be used to check [`exponent_bounds`].

use serde::Serialize;

use crate::divergence;
use crate::simplex::{check_same_alphabet, ProbDist, MAX_EXACT_BALANCE};
use crate::{Error, Result};

/// Largest alphabet accepted by [`sanov_oracle`].
pub const MAX_ORACLE_ALPHABET: usize = 4;
/// Smallest accepted grid resolution.
pub const MIN_GRID_POINTS: usize = 101;
// Added to δ Q(a) when testing grid points for complement membership.
const COMPLEMENT_SLACK: f64 = 1e-15;
// Half-width (in cells of the new step) of the window rescanned by each refinement pass.
const REFINE_HALF_WIDTH: i64 = 10;

/// A strongly typical set T_δ(Q).
#[derive(Debug, Clone, PartialEq)]
pub struct TypicalSetSpec {
    q: ProbDist,
    delta: f64,
}

impl TypicalSetSpec {
    pub fn new(q: ProbDist, delta: f64) -> Result<Self> {
        if !q.is_strictly_positive() {
            return Err(Error::QminZero);
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::Range(format!(
                "delta must be positive and finite, got {delta}"
            )));
        }
        Ok(Self { q, delta })
    }

    pub fn q(&self) -> &ProbDist {
        &self.q
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Whether every coordinate satisfies |P(a) − Q(a)| ≤ δ Q(a).
pub fn is_typical(p: &ProbDist, spec: &TypicalSetSpec) -> Result<bool> {
    check_same_alphabet(p, &spec.q)?;
    Ok(p.masses()
        .iter()
        .zip(spec.q.masses())
        .all(|(&pa, &qa)| (pa - qa).abs() <= spec.delta * qa))
}

/// φ(p) = log((1−p)/p) / (4(1−2p)) on (0, 1/2), with φ(1/2) = 1/2.
pub fn phi(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 0.5) {
        return Err(Error::Range(format!("phi is defined on (0, 1/2], got {p}")));
    }
    let gap = 1.0 - 2.0 * p;
    if gap < 1e-6 {
        // log((1−p)/p) = log((1+g)/(1−g)) = 2 atanh(g); φ = 1/2 + g²/6 + O(g⁴)
        return Ok(0.5 + gap * gap / 6.0);
    }
    Ok(((1.0 - p) / p).ln() / (4.0 * gap))
}

fn exact_balance(q: &ProbDist) -> Result<f64> {
    match q.balance_coefficient() {
        (b, true) => Ok(b),
        _ => Err(Error::UnsupportedAlphabetSize {
            size: q.alphabet_size(),
            max: MAX_EXACT_BALANCE,
        }),
    }
}

/// φ(1 − β_Q)·|P − Q|², a lower bound on D(P‖Q) at least as large as Pinsker's.
pub fn ow_lower_bound(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    check_same_alphabet(p, q)?;
    if !q.is_strictly_positive() {
        return Err(Error::QminZero);
    }
    let tv = divergence::total_variation(p, q)?;
    Ok(phi(1.0 - exact_balance(q)?)? * tv * tv)
}

/// Lower and (when applicable) upper bounds on L_δ(Q).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentBounds {
    /// φ(1 − β_Q) Q_min² δ²
    pub lower: f64,
    /// log(1 + 2 Q_min δ²), present only when δ ≤ 1/Q_min − 1.
    pub upper: Option<f64>,
}

/// Bounds on the non-typicality exponent of Q.
pub fn exponent_bounds(q: &ProbDist, delta: f64) -> Result<ExponentBounds> {
    if !q.is_strictly_positive() {
        return Err(Error::QminZero);
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Range(format!(
            "delta must be positive and finite, got {delta}"
        )));
    }
    let q_min = q.min_mass();
    let phi_q = phi(1.0 - exact_balance(q)?)?;
    let d2 = delta * delta;
    Ok(ExponentBounds {
        lower: phi_q * q_min * q_min * d2,
        upper: (delta <= 1.0 / q_min - 1.0).then(|| (2.0 * q_min * d2).ln_1p()),
    })
}

/// Ratio of the upper to the lower exponent bound; never exceeds 4/Q_min.
pub fn exponent_ratio(q: &ProbDist, delta: f64) -> Result<f64> {
    let b = exponent_bounds(q, delta)?;
    match b.upper {
        Some(u) => Ok(u / b.lower),
        None => Err(Error::Range(format!(
            "delta = {delta} exceeds 1/Q_min − 1 = {}",
            1.0 / q.min_mass() - 1.0
        ))),
    }
}

/// Outcome of the brute-force exponent search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SanovResult {
    pub delta: f64,
    /// Smallest D(P‖Q) found outside T_δ(Q), nats. +∞ if the complement is empty.
    pub oracle_value: f64,
    /// Spread of D across the final grid cell around the minimizer.
    pub oracle_tolerance: f64,
    pub lower_bound: f64,
    pub upper_bound: Option<f64>,
    /// Smallest |P − Q| among the complement points visited.
    pub boundary_tv: f64,
    pub minimizer: Vec<f64>,
    pub grid_points_per_dim: usize,
    pub refinement_passes: usize,
    /// Spacing of the final grid.
    pub final_step: f64,
}

impl SanovResult {
    /// Whether lower ≤ oracle ≤ upper, each up to `oracle_tolerance`.
    pub fn sandwich_holds(&self) -> bool {
        let tol = self.oracle_tolerance;
        self.lower_bound <= self.oracle_value + tol
            && self
                .upper_bound
                .is_none_or(|u| self.oracle_value <= u + tol)
    }
}

struct Search<'a> {
    q: &'a [f64],
    delta: f64,
    best: f64,
    best_point: Vec<f64>,
    min_tv: f64,
}

impl Search<'_> {
    fn outside(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.q)
            .any(|(&pa, &qa)| (pa - qa).abs() > self.delta * qa + COMPLEMENT_SLACK)
    }

    fn visit(&mut self, p: &[f64]) {
        if !self.outside(p) {
            return;
        }
        let d = kl_slice(p, self.q);
        if d < self.best {
            self.best = d;
            self.best_point.clear();
            self.best_point.extend_from_slice(p);
        }
        let tv: f64 = p.iter().zip(self.q).map(|(a, b)| (a - b).abs()).sum();
        self.min_tv = self.min_tv.min(tv);
    }
}

fn kl_slice(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .filter(|(&pa, _)| pa > 0.0)
        .map(|(&pa, &qa)| pa * (pa / qa).ln())
        .sum()
}

// Calls `f` with every index vector of length `free` whose sum is ≤ `total`, in
// lexicographic order.
fn for_each_composition(free: usize, total: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(idx: &mut Vec<usize>, free: usize, left: usize, f: &mut impl FnMut(&[usize])) {
        if idx.len() == free {
            f(idx);
            return;
        }
        for i in 0..=left {
            idx.push(i);
            rec(idx, free, left - i, f);
            idx.pop();
        }
    }
    rec(&mut Vec::with_capacity(free), free, total, f);
}

// Visits the points center + j·step (j ∈ [−half, half] per free coordinate)
// that lie on the simplex.
fn for_each_local(center: &[f64], step: f64, half: i64, f: &mut impl FnMut(&[f64])) {
    let free = center.len() - 1;
    let width = (2 * half + 1) as usize;
    let mut point = vec![0.0; center.len()];
    for code in 0..width.pow(free as u32) {
        let mut c = code;
        let mut ok = true;
        let mut used = 0.0;
        for k in 0..free {
            let j = (c % width) as i64 - half;
            c /= width;
            let x = center[k] + j as f64 * step;
            if x < 0.0 {
                ok = false;
                break;
            }
            point[k] = x;
            used += x;
        }
        let last = 1.0 - used;
        if !ok || last < 0.0 {
            continue;
        }
        point[free] = last;
        f(&point);
    }
}

/// Estimates L_δ(Q) for alphabets of 2 to 4 symbols.
///
/// A uniform grid with `grid_points_per_dim` points per coordinate is scanned
/// exhaustively over the complement of T_δ(Q). Each refinement pass rescans a
/// window of ±1 old cell around the incumbent with a 10× finer step. Ties keep
/// the first point in scan order.
pub fn sanov_oracle(
    q: &ProbDist,
    delta: f64,
    grid_points_per_dim: usize,
    refinement_passes: usize,
) -> Result<SanovResult> {
    let n = q.alphabet_size();
    if n > MAX_ORACLE_ALPHABET {
        return Err(Error::UnsupportedAlphabetSize {
            size: n,
            max: MAX_ORACLE_ALPHABET,
        });
    }
    if grid_points_per_dim < MIN_GRID_POINTS {
        return Err(Error::Range(format!(
            "grid must have at least {MIN_GRID_POINTS} points per dimension, got {grid_points_per_dim}"
        )));
    }
    let bounds = exponent_bounds(q, delta)?;

    let qm = q.masses();
    let mut search = Search {
        q: qm,
        delta,
        best: f64::INFINITY,
        best_point: Vec::new(),
        min_tv: f64::INFINITY,
    };
    let cells = grid_points_per_dim - 1;
    let mut point = vec![0.0; n];
    for_each_composition(n - 1, cells, &mut |idx| {
        let used: usize = idx.iter().sum();
        for (x, &i) in point.iter_mut().zip(idx) {
            *x = i as f64 / cells as f64;
        }
        point[n - 1] = (cells - used) as f64 / cells as f64;
        search.visit(&point);
    });

    let mut step = 1.0 / cells as f64;
    let mut oracle_tolerance = 0.0;
    if search.best.is_finite() {
        for _ in 0..refinement_passes {
            step /= 10.0;
            let center = search.best_point.clone();
            for_each_local(&center, step, REFINE_HALF_WIDTH, &mut |p| search.visit(p));
        }
        let center = search.best_point.clone();
        let best = search.best;
        for_each_local(&center, step, 1, &mut |p| {
            oracle_tolerance = f64::max(oracle_tolerance, (kl_slice(p, qm) - best).abs());
        });
    }

    Ok(SanovResult {
        delta,
        oracle_value: search.best,
        oracle_tolerance,
        lower_bound: bounds.lower,
        upper_bound: bounds.upper,
        boundary_tv: search.min_tv,
        minimizer: search.best_point,
        grid_points_per_dim,
        refinement_passes,
        final_step: step,
    })
}
