//! Upper and lower bounds on divergences expressed through scalar statistics
//! (total variation, Q_min, β₁, β₂, entropy).
//!
//! Every evaluator takes scalars so that each formula can be checked against
//! hand arithmetic; [`bound_report`] is the only function here that consumes
//! distributions. Results are in nats.

use serde::Serialize;

use crate::divergence::{self, RenyiOrder, NEAR_ONE};
use crate::simplex::{self, pair_stats, DistPairStats, ProbDist};
use crate::{Error, Result, Unit};

// Slack accepted on range checks of computed inputs such as tv ≤ 2.
const RANGE_SLACK: f64 = 1e-12;

fn check_tv(tv: f64) -> Result<f64> {
    if !(-RANGE_SLACK..=2.0 + RANGE_SLACK).contains(&tv) {
        return Err(Error::Range(format!(
            "total variation must be in [0, 2], got {tv}"
        )));
    }
    Ok(tv.clamp(0.0, 2.0))
}

fn check_delta(delta: f64) -> Result<f64> {
    if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&delta) {
        return Err(Error::Range(format!(
            "half total variation must be in [0, 1], got {delta}"
        )));
    }
    Ok(delta.clamp(0.0, 1.0))
}

fn check_unit_interval(name: &str, x: f64) -> Result<f64> {
    if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&x) {
        return Err(Error::Range(format!("{name} must be in [0, 1], got {x}")));
    }
    Ok(x.clamp(0.0, 1.0))
}

fn check_q_min(q_min: f64) -> Result<f64> {
    if q_min.is_nan() || q_min <= 0.0 {
        return Err(Error::QminZero);
    }
    Ok(q_min)
}

/// Pinsker: D(P‖Q) ≥ tv²/2.
pub fn pinsker_lower(tv: f64) -> Result<f64> {
    let tv = check_tv(tv)?;
    Ok(0.5 * tv * tv)
}

/// Csiszár–Talata: D(P‖Q) ≤ tv²/Q_min.
pub fn csiszar_talata_upper(tv: f64, q_min: f64) -> Result<f64> {
    let tv = check_tv(tv)?;
    Ok(tv * tv / check_q_min(q_min)?)
}

/// The reverse Pinsker pair for relative entropy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReversePinsker {
    /// log(1 + tv²/(2 Q_min)) − β₂ tv²/2
    pub refined: f64,
    /// log(1 + tv²/(2 Q_min))
    pub weak: f64,
}

/// Upper bounds on D(P‖Q) from tv, Q_min and β₂.
pub fn reverse_pinsker(tv: f64, q_min: f64, beta2: f64) -> Result<ReversePinsker> {
    let tv = check_tv(tv)?;
    let q_min = check_q_min(q_min)?;
    let beta2 = check_unit_interval("beta2", beta2)?;
    let tv2 = tv * tv;
    let weak = (tv2 / (2.0 * q_min)).ln_1p();
    Ok(ReversePinsker {
        refined: weak - 0.5 * beta2 * tv2,
        weak,
    })
}

/// ((1 − β₂ Q_min)/(2 Q_min)) tv², the refined bound with log(1+x) ≤ x applied.
/// Never more than half of [`csiszar_talata_upper`].
pub fn reverse_pinsker_linearized(tv: f64, q_min: f64, beta2: f64) -> Result<f64> {
    let tv = check_tv(tv)?;
    let q_min = check_q_min(q_min)?;
    let beta2 = check_unit_interval("beta2", beta2)?;
    Ok((1.0 - beta2 * q_min) / (2.0 * q_min) * tv * tv)
}

/// The ℓ₂ counterparts of the reverse Pinsker bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct L2Bounds {
    /// log(1 + s/Q_min) − β₂ s/2
    pub refined: f64,
    /// s/Q_min
    pub loose: f64,
}

/// Upper bounds on D(P‖Q) from s = ‖P − Q‖₂², Q_min and β₂.
pub fn l2_upper(l2_squared: f64, q_min: f64, beta2: f64) -> Result<L2Bounds> {
    if l2_squared.is_nan() || l2_squared < 0.0 {
        return Err(Error::Range(format!(
            "squared ℓ₂ distance must be ≥ 0, got {l2_squared}"
        )));
    }
    let q_min = check_q_min(q_min)?;
    let beta2 = check_unit_interval("beta2", beta2)?;
    let loose = l2_squared / q_min;
    Ok(L2Bounds {
        refined: loose.ln_1p() - 0.5 * beta2 * l2_squared,
        loose,
    })
}

/// χ²(P‖Q) ≤ tv²/(2 Q_min).
pub fn chi2_upper(tv: f64, q_min: f64) -> Result<f64> {
    let tv = check_tv(tv)?;
    Ok(tv * tv / (2.0 * check_q_min(q_min)?))
}

/// Bounds on |P − U| in terms of H(P).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformDistanceBounds {
    /// √(2 (log|A| − H(P)))
    pub ub_pinsker: f64,
    /// 2 √(1 − exp(H(P))/|A|)
    pub ub_bh: f64,
    /// √(2 (exp(−H(P)) − 1/|A|)), or 0 when the radicand is negative
    pub lb_thm1: f64,
}

impl UniformDistanceBounds {
    pub fn upper(&self) -> f64 {
        self.ub_pinsker.min(self.ub_bh)
    }
}

/// Bounds on the total variation distance from the uniform distribution
/// given the entropy (nats) of P.
pub fn uniform_distance_bounds(
    entropy: f64,
    alphabet_size: usize,
) -> Result<UniformDistanceBounds> {
    if alphabet_size < 2 {
        return Err(Error::AlphabetTooSmall { len: alphabet_size });
    }
    let n = alphabet_size as f64;
    let log_n = n.ln();
    if !(-RANGE_SLACK..=log_n + RANGE_SLACK).contains(&entropy) {
        return Err(Error::Range(format!(
            "entropy must be in [0, log {alphabet_size}], got {entropy}"
        )));
    }
    let h = entropy.clamp(0.0, log_n);
    Ok(UniformDistanceBounds {
        ub_pinsker: (2.0 * (log_n - h)).max(0.0).sqrt(),
        ub_bh: 2.0 * (1.0 - h.exp() / n).max(0.0).sqrt(),
        lb_thm1: (2.0 * ((-h).exp() - 1.0 / n)).max(0.0).sqrt(),
    })
}

/// f1(α, β₁, δ), an upper bound on D_α valid for every order.
pub fn renyi_f1(order: RenyiOrder, beta1: f64, delta: f64) -> Result<f64> {
    let delta = check_delta(delta)?;
    if !(beta1 > 0.0 && beta1 <= 1.0 + RANGE_SLACK) {
        return Err(Error::Range(format!(
            "beta1 must be in (0, 1], got {beta1}"
        )));
    }
    let beta1 = beta1.min(1.0);
    if beta1 == 1.0 || delta == 0.0 {
        return Ok(0.0);
    }
    let log_inv = -beta1.ln();
    let c = (delta / (1.0 - beta1)).min(1.0);
    let value = match order {
        RenyiOrder::Infinity => log_inv,
        RenyiOrder::One => c * log_inv,
        RenyiOrder::Interior(a) if (a - 1.0).abs() < NEAR_ONE => c * log_inv,
        o => {
            let a = o.alpha();
            // t = log β₁^{1−α}
            let t = (a - 1.0) * log_inv;
            let log_inner = if t <= 30.0 {
                (c * t.exp_m1()).ln_1p()
            } else {
                t + (c + (1.0 - c) * (-t).exp()).ln()
            };
            log_inner / (a - 1.0)
        }
    };
    Ok(value.max(0.0))
}

/// f2 = min{f1, log(1 + 2δ²/Q_min)} for α ∈ [0, 2].
pub fn renyi_f2(order: RenyiOrder, beta1: f64, q_min: f64, delta: f64) -> Result<f64> {
    if order.alpha() > 2.0 {
        return Err(Error::Range(format!("f2 needs α ∈ [0, 2], got {order}")));
    }
    let q_min = check_q_min(q_min)?;
    let delta = check_delta(delta)?;
    let f1 = renyi_f1(order, beta1, delta)?;
    Ok(f1.min((2.0 * delta * delta / q_min).ln_1p()))
}

/// f3 = (α/(1−α)) [log(1 + 2δ²/P_min) − 2β₁δ²] for α ∈ [0, 1).
pub fn renyi_f3(order: RenyiOrder, p_min: f64, beta1: f64, delta: f64) -> Result<f64> {
    let a = order.alpha();
    if a >= 1.0 {
        return Err(Error::Range(format!("f3 needs α ∈ [0, 1), got {order}")));
    }
    if p_min.is_nan() || p_min <= 0.0 {
        return Err(Error::PositivityRequired("P_min must be positive"));
    }
    let beta1 = check_unit_interval("beta1", beta1)?;
    let delta = check_delta(delta)?;
    let d2 = delta * delta;
    Ok(a / (1.0 - a) * ((2.0 * d2 / p_min).ln_1p() - 2.0 * beta1 * d2))
}

/// f4 = min{log(1 + 2δ²/Q_min) − 2β₂δ², log(1 + min{δ, 2δ²}/Q_min)}.
pub fn renyi_f4(beta2: f64, q_min: f64, delta: f64) -> Result<f64> {
    let q_min = check_q_min(q_min)?;
    let beta2 = check_unit_interval("beta2", beta2)?;
    let delta = check_delta(delta)?;
    let d2 = delta * delta;
    let first = (2.0 * d2 / q_min).ln_1p() - 2.0 * beta2 * d2;
    let second = (delta.min(2.0 * d2) / q_min).ln_1p();
    Ok(first.min(second))
}

/// 2 log(1/(1−δ)); +∞ at δ = 1.
pub fn bhattacharyya_upper(delta: f64) -> Result<f64> {
    let delta = check_delta(delta)?;
    Ok(-2.0 * (-delta).ln_1p())
}

/// Branch-wise upper bound on D_α(P‖Q) for strictly positive P and Q with
/// δ = |P − Q|/2.
pub fn renyi_upper(order: RenyiOrder, stats: &DistPairStats, delta: f64) -> Result<f64> {
    if !(stats.q_min > 0.0 && stats.p_min > 0.0 && stats.beta1 > 0.0) {
        return Err(Error::PositivityRequired(
            "P and Q must both be strictly positive",
        ));
    }
    let a = order.alpha();
    if a > 2.0 {
        return renyi_f1(order, stats.beta1, delta);
    }
    let f2 = renyi_f2(order, stats.beta1, stats.q_min, delta)?;
    if a >= 1.0 {
        return Ok(f2);
    }
    let f34 = renyi_f3(order, stats.p_min, stats.beta1, delta)?.min(renyi_f4(
        stats.beta2,
        stats.q_min,
        delta,
    )?);
    let mut best = f2.min(f34);
    if a <= 0.5 {
        best = best.min(bhattacharyya_upper(delta)?);
    }
    Ok(best.max(0.0))
}

/// log(1 + tv/(2 Q_min)), an upper bound on D_α for every α.
pub fn renyi_simple_upper(tv: f64, q_min: f64) -> Result<f64> {
    let tv = check_tv(tv)?;
    Ok((tv / (2.0 * check_q_min(q_min)?)).ln_1p())
}

/// Gilardoni: D_α(P‖Q) ≥ (α/2) tv² for α ∈ (0, 1].
pub fn gilardoni_lower(order: RenyiOrder, tv: f64) -> Result<f64> {
    let a = order.alpha();
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Range(format!(
            "Gilardoni's bound needs α ∈ (0, 1], got {order}"
        )));
    }
    let tv = check_tv(tv)?;
    Ok(0.5 * a * tv * tv)
}

/// Which side of the target quantity a bound sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

/// The quantity a bound refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Kl,
    Renyi(RenyiOrder),
    TvFromUniform,
    Chi2,
}

impl Target {
    /// Whether the target is an information quantity (as opposed to a distance).
    pub fn has_unit(self) -> bool {
        !matches!(self, Target::TvFromUniform)
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Kl => f.write_str("kl"),
            Target::Renyi(o) => write!(f, "renyi({o})"),
            Target::TvFromUniform => f.write_str("tv_from_uniform"),
            Target::Chi2 => f.write_str("chi2"),
        }
    }
}

impl Serialize for Target {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_id: &'static str,
    /// Human-readable name of the inequality.
    #[serde(rename = "paper_tag")]
    pub label: &'static str,
    pub direction: Direction,
    pub target: Target,
    pub applicable: bool,
    pub reason: Option<String>,
    pub value_nats: Option<f64>,
    pub value_bits: Option<f64>,
}

impl BoundReport {
    fn new(
        bound_id: &'static str,
        label: &'static str,
        direction: Direction,
        target: Target,
        value: Result<f64, String>,
    ) -> Self {
        let (applicable, reason, value_nats) = match value {
            Ok(v) => (true, None, Some(v)),
            Err(r) => (false, Some(r), None),
        };
        let value_bits = value_nats.map(|v| {
            if target.has_unit() {
                Unit::Bits.from_nats(v)
            } else {
                v
            }
        });
        Self {
            bound_id,
            label,
            direction,
            target,
            applicable,
            reason,
            value_nats,
            value_bits,
        }
    }
}

/// Exact divergences of the pair, for side-by-side comparison with bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measured {
    pub tv: f64,
    pub kl: f64,
    pub chi2: f64,
    pub tv_from_uniform: f64,
    pub renyi: Vec<(RenyiOrder, f64)>,
}

impl Measured {
    pub fn value_of(&self, target: Target) -> Option<f64> {
        match target {
            Target::Kl => Some(self.kl),
            Target::Chi2 => Some(self.chi2),
            Target::TvFromUniform => Some(self.tv_from_uniform),
            Target::Renyi(o) => self.renyi.iter().find(|(r, _)| *r == o).map(|&(_, v)| v),
        }
    }
}

/// Absolute tolerance in nats, switching to relative above `rel_above`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub rel_above: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-10,
            rel: 1e-6,
            rel_above: 10.0,
        }
    }
}

impl Tolerance {
    pub fn with_abs(abs: f64) -> Self {
        Self {
            abs,
            ..Self::default()
        }
    }

    /// True when `small ≤ large` up to the tolerance.
    pub fn le(&self, small: f64, large: f64) -> bool {
        if small <= large {
            return true;
        }
        let scale = small.abs().max(large.abs());
        let slack = if scale > self.rel_above {
            self.rel * scale
        } else {
            self.abs
        };
        small <= large + slack
    }
}

/// A bound that does not hold for the measured pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub bound_id: &'static str,
    pub target: Target,
    pub bound: f64,
    pub measured: f64,
}

/// All bounds for one pair together with the exact divergences.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub stats: DistPairStats,
    pub measured: Measured,
    pub bounds: Vec<BoundReport>,
}

impl PairReport {
    /// Bounds contradicted by the measured divergences beyond `tol`.
    pub fn violations(&self, tol: Tolerance) -> Vec<Violation> {
        self.bounds
            .iter()
            .filter_map(|b| {
                let bound = b.value_nats?;
                let measured = self.measured.value_of(b.target)?;
                let holds = match b.direction {
                    Direction::Upper => tol.le(measured, bound),
                    Direction::Lower => tol.le(bound, measured),
                };
                (!holds).then_some(Violation {
                    bound_id: b.bound_id,
                    target: b.target,
                    bound,
                    measured,
                })
            })
            .collect()
    }
}

/// Evaluates every bound for the pair `(p, q)` and the Rényi orders given.
pub fn bound_report(p: &ProbDist, q: &ProbDist, orders: &[RenyiOrder]) -> Result<PairReport> {
    let stats = pair_stats(p, q)?;
    let tv = divergence::total_variation(p, q)?;
    let l2 = divergence::l2_squared(p, q)?;
    let entropy = simplex::entropy(p, Unit::Nats);
    let uniform = ProbDist::uniform(p.alphabet_size())?;
    let renyi = orders
        .iter()
        .map(|&o| Ok((o, divergence::renyi(p, q, o)?.value)))
        .collect::<Result<Vec<_>>>()?;
    let measured = Measured {
        tv,
        kl: divergence::kl(p, q)?.value,
        chi2: divergence::chi2(p, q)?.value,
        tv_from_uniform: divergence::total_variation(p, &uniform)?,
        renyi,
    };

    let q_ok = stats.q_min > 0.0;
    let both_ok = q_ok && stats.p_min > 0.0;
    let need_q = |f: &dyn Fn() -> Result<f64>| -> Result<f64, String> {
        if !q_ok {
            return Err("Q_min = 0".to_string());
        }
        f().map_err(|e| e.to_string())
    };
    let need_both = |f: &dyn Fn() -> Result<f64>| -> Result<f64, String> {
        if !q_ok {
            return Err("Q_min = 0".to_string());
        }
        if !both_ok {
            return Err("P_min = 0".to_string());
        }
        f().map_err(|e| e.to_string())
    };
    let delta = 0.5 * tv;
    let rp = || reverse_pinsker(tv, stats.q_min, stats.beta2);
    let l2b = || l2_upper(l2, stats.q_min, stats.beta2);
    let ub = uniform_distance_bounds(entropy, p.alphabet_size())?;

    use Direction::{Lower, Upper};
    let mut bounds = vec![
        BoundReport::new(
            "pinsker",
            "Pinsker",
            Lower,
            Target::Kl,
            pinsker_lower(tv).map_err(|e| e.to_string()),
        ),
        BoundReport::new(
            "csiszar_talata",
            "Csiszár–Talata",
            Upper,
            Target::Kl,
            need_q(&|| csiszar_talata_upper(tv, stats.q_min)),
        ),
        BoundReport::new(
            "thm1_refined",
            "reverse Pinsker, refined",
            Upper,
            Target::Kl,
            need_q(&|| Ok(rp()?.refined)),
        ),
        BoundReport::new(
            "thm1_weak",
            "reverse Pinsker",
            Upper,
            Target::Kl,
            need_q(&|| Ok(rp()?.weak)),
        ),
        BoundReport::new(
            "thm1_linearized",
            "reverse Pinsker, linearized",
            Upper,
            Target::Kl,
            need_q(&|| reverse_pinsker_linearized(tv, stats.q_min, stats.beta2)),
        ),
        BoundReport::new(
            "l2_refined",
            "Euclidean reverse Pinsker, refined",
            Upper,
            Target::Kl,
            need_q(&|| Ok(l2b()?.refined)),
        ),
        BoundReport::new(
            "l2_loose",
            "Euclidean reverse Pinsker",
            Upper,
            Target::Kl,
            need_q(&|| Ok(l2b()?.loose)),
        ),
        BoundReport::new(
            "chi2_ub",
            "chi-squared from total variation",
            Upper,
            Target::Chi2,
            need_q(&|| chi2_upper(tv, stats.q_min)),
        ),
    ];
    for &o in orders {
        let target = Target::Renyi(o);
        bounds.push(BoundReport::new(
            "thm3",
            "composite Rényi",
            Upper,
            target,
            need_both(&|| renyi_upper(o, &stats, delta)),
        ));
        bounds.push(BoundReport::new(
            "renyi_simple",
            "simple Rényi",
            Upper,
            target,
            need_q(&|| renyi_simple_upper(tv, stats.q_min)),
        ));
        let a = o.alpha();
        if a > 0.0 && a <= 1.0 {
            bounds.push(BoundReport::new(
                "gilardoni",
                "Gilardoni",
                Lower,
                target,
                gilardoni_lower(o, tv).map_err(|e| e.to_string()),
            ));
        }
    }
    bounds.extend([
        BoundReport::new(
            "uniform_pinsker",
            "Pinsker about uniform",
            Upper,
            Target::TvFromUniform,
            Ok(ub.ub_pinsker),
        ),
        BoundReport::new(
            "uniform_bh",
            "Bretagnolle–Huber about uniform",
            Upper,
            Target::TvFromUniform,
            Ok(ub.ub_bh),
        ),
        BoundReport::new(
            "uniform_thm1",
            "reverse Pinsker about uniform",
            Lower,
            Target::TvFromUniform,
            Ok(ub.lb_thm1),
        ),
    ]);

    Ok(PairReport {
        stats,
        measured,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const B: f64 = 7.0 / 13.0;

    #[test]
    fn pinsker_examples() {
        assert_abs_diff_eq!(pinsker_lower(0.6).unwrap(), 0.18, epsilon = 1e-15);
        assert_eq!(pinsker_lower(0.0).unwrap(), 0.0);
        assert_eq!(pinsker_lower(2.0).unwrap(), 2.0);
        assert!(matches!(pinsker_lower(2.5), Err(Error::Range(_))));
    }

    #[test]
    fn csiszar_talata_examples() {
        assert_abs_diff_eq!(
            csiszar_talata_upper(0.6, 0.35).unwrap(),
            0.36 / 0.35,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            csiszar_talata_upper(0.6, 0.35).unwrap(),
            1.028571,
            epsilon = 1e-6
        );
        assert_eq!(csiszar_talata_upper(0.0, 0.35).unwrap(), 0.0);
        assert_eq!(csiszar_talata_upper(0.6, 0.0), Err(Error::QminZero));
    }

    #[test]
    fn reverse_pinsker_examples() {
        let r = reverse_pinsker(0.6, 0.35, B).unwrap();
        let weak = (1.0f64 + 0.36 / 0.7).ln();
        assert_abs_diff_eq!(r.weak, weak, epsilon = 1e-15);
        assert_abs_diff_eq!(r.refined, weak - B * 0.18, epsilon = 1e-15);
        assert!(r.refined >= 0.3 * (13.0f64 / 7.0).ln());
        assert_eq!(
            reverse_pinsker(0.0, 0.35, B).unwrap(),
            ReversePinsker {
                refined: 0.0,
                weak: 0.0
            }
        );
        let r0 = reverse_pinsker(0.6, 0.35, 0.0).unwrap();
        assert_eq!(r0.refined, r0.weak);
    }

    #[test]
    fn linearized_examples() {
        let v = reverse_pinsker_linearized(0.6, 0.35, B).unwrap();
        assert_abs_diff_eq!(v, (1.0 - B * 0.35) / 0.7 * 0.36, epsilon = 1e-15);
        assert_abs_diff_eq!(v, 0.417362, epsilon = 1e-6);
        assert!(reverse_pinsker(0.6, 0.35, B).unwrap().refined <= v);
        assert!(v <= 0.5 * csiszar_talata_upper(0.6, 0.35).unwrap());
        assert_eq!(reverse_pinsker_linearized(0.0, 0.5, 1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            reverse_pinsker_linearized(0.6, 0.35, 0.0).unwrap(),
            0.5 * csiszar_talata_upper(0.6, 0.35).unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn l2_examples() {
        let b = l2_upper(0.18, 0.35, B).unwrap();
        assert_abs_diff_eq!(b.loose, 0.18 / 0.35, epsilon = 1e-15);
        assert_abs_diff_eq!(
            b.refined,
            (0.18f64 / 0.35).ln_1p() - B * 0.09,
            epsilon = 1e-15
        );
        assert_eq!(
            l2_upper(0.0, 0.35, B).unwrap(),
            L2Bounds {
                refined: 0.0,
                loose: 0.0
            }
        );
        assert_eq!(l2_upper(0.1, 0.0, B), Err(Error::QminZero));
    }

    #[test]
    fn chi2_upper_examples() {
        assert_abs_diff_eq!(chi2_upper(0.6, 0.35).unwrap(), 0.514286, epsilon = 1e-6);
        assert_eq!(chi2_upper(0.0, 0.35).unwrap(), 0.0);
        // binary alphabet with equiprobable Q attains equality
        assert_abs_diff_eq!(chi2_upper(0.2, 0.5).unwrap(), 0.04, epsilon = 1e-15);
    }

    #[test]
    fn uniform_distance_examples() {
        let b = uniform_distance_bounds(0.0, 4).unwrap();
        assert_abs_diff_eq!(b.ub_pinsker, (2.0 * 4f64.ln()).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(b.ub_pinsker, 1.665109, epsilon = 1e-6);
        assert_abs_diff_eq!(b.ub_bh, 1.732051, epsilon = 1e-6);
        assert_abs_diff_eq!(b.lb_thm1, 1.5f64.sqrt(), epsilon = 1e-15);
        assert!(b.lb_thm1 <= 1.5 && 1.5 <= b.upper());

        let z = uniform_distance_bounds(4f64.ln(), 4).unwrap();
        assert_abs_diff_eq!(z.ub_pinsker, 0.0, epsilon = 1e-7);
        assert_abs_diff_eq!(z.ub_bh, 0.0, epsilon = 1e-7);
        assert_abs_diff_eq!(z.lb_thm1, 0.0, epsilon = 1e-7);

        let b16 = uniform_distance_bounds(0.0, 16).unwrap();
        assert_abs_diff_eq!(b16.ub_bh, 2.0 * (15.0f64 / 16.0).sqrt(), epsilon = 1e-15);
        assert!(b16.upper() - 1.875 < b.upper() - 1.5);

        assert!(uniform_distance_bounds(-0.1, 4).is_err());
        assert!(uniform_distance_bounds(2.0, 4).is_err());
    }

    #[test]
    fn f1_examples() {
        let v = renyi_f1(RenyiOrder::One, B, 0.3).unwrap();
        assert_abs_diff_eq!(v, 0.65 * (13.0f64 / 7.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(v, 0.402375, epsilon = 1e-6);
        for o in [
            RenyiOrder::Zero,
            RenyiOrder::Interior(0.5),
            RenyiOrder::One,
            RenyiOrder::Infinity,
        ] {
            assert_eq!(renyi_f1(o, B, 0.0).unwrap(), 0.0);
            assert_eq!(renyi_f1(o, 1.0, 0.0).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(
            renyi_f1(RenyiOrder::Infinity, B, 0.3).unwrap(),
            (13.0f64 / 7.0).ln(),
            epsilon = 1e-15
        );
        assert!(renyi_f1(RenyiOrder::One, 0.0, 0.3).is_err());
    }

    #[test]
    fn f1_interior_matches_direct_formula() {
        // direct evaluation where it does not overflow
        for a in [0.0, 0.3, 0.9, 1.5, 2.0, 7.0, 40.0] {
            let direct = (1.0 + 0.3 * (B.powf(1.0 - a) - 1.0) / (1.0 - B)).ln() / (a - 1.0);
            let v = renyi_f1(RenyiOrder::new(a).unwrap(), B, 0.3).unwrap();
            assert_abs_diff_eq!(v, direct, epsilon = 1e-13);
        }
        // α = 0 reduces to log(1/(1−δ))
        assert_abs_diff_eq!(
            renyi_f1(RenyiOrder::Zero, B, 0.3).unwrap(),
            -(0.7f64).ln(),
            epsilon = 1e-15
        );
        // large orders approach the α = ∞ value without overflow
        let big = renyi_f1(RenyiOrder::Interior(1e6), 1e-3, 0.5).unwrap();
        assert!((big - 1e3f64.ln()).abs() < 1e-4);
        // continuity through α = 1
        let near = renyi_f1(RenyiOrder::Interior(1.0 + 1e-5), B, 0.3).unwrap();
        assert!((near - renyi_f1(RenyiOrder::One, B, 0.3).unwrap()).abs() < 1e-5);
    }

    #[test]
    fn f2_examples() {
        let v = renyi_f2(RenyiOrder::One, B, 0.35, 0.3).unwrap();
        assert_abs_diff_eq!(v, 0.65 * (13.0f64 / 7.0).ln(), epsilon = 1e-15);
        assert_eq!(renyi_f2(RenyiOrder::One, B, 0.35, 0.0).unwrap(), 0.0);
        assert!(renyi_f2(RenyiOrder::Interior(2.0), B, 0.35, 0.3).is_ok());
        assert!(matches!(
            renyi_f2(RenyiOrder::Interior(2.5), B, 0.35, 0.3),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn f3_examples() {
        assert_eq!(renyi_f3(RenyiOrder::Zero, 0.35, B, 0.3).unwrap(), 0.0);
        let v = renyi_f3(RenyiOrder::Interior(0.5), 0.35, B, 0.3).unwrap();
        assert_abs_diff_eq!(
            v,
            (0.18f64 / 0.35).ln_1p() - 2.0 * B * 0.09,
            epsilon = 1e-15
        );
        assert_eq!(
            renyi_f3(RenyiOrder::Interior(0.5), 0.35, B, 0.0).unwrap(),
            0.0
        );
        assert!(renyi_f3(RenyiOrder::One, 0.35, B, 0.3).is_err());
        assert!(renyi_f3(RenyiOrder::Interior(0.5), 0.0, B, 0.3).is_err());
    }

    #[test]
    fn f4_examples() {
        let v = renyi_f4(B, 0.35, 0.3).unwrap();
        assert_abs_diff_eq!(
            v,
            (0.18f64 / 0.35).ln_1p() - 2.0 * B * 0.09,
            epsilon = 1e-15
        );
        assert_eq!(renyi_f4(B, 0.35, 0.0).unwrap(), 0.0);
        // past δ = 1/2 the linear term is the smaller argument
        let v = renyi_f4(0.0, 0.35, 0.6).unwrap();
        assert_abs_diff_eq!(v, (0.6f64 / 0.35).ln_1p(), epsilon = 1e-15);
        assert_eq!(renyi_f4(B, 0.0, 0.3), Err(Error::QminZero));
    }

    #[test]
    fn composite_examples() {
        let p = ProbDist::new(vec![0.65, 0.35]).unwrap();
        let q = ProbDist::new(vec![0.35, 0.65]).unwrap();
        let s = pair_stats(&p, &q).unwrap();
        let inf = renyi_upper(RenyiOrder::Infinity, &s, 0.3).unwrap();
        assert_abs_diff_eq!(inf, (13.0f64 / 7.0).ln(), epsilon = 1e-15);
        let half = renyi_upper(RenyiOrder::Interior(0.5), &s, 0.3).unwrap();
        let f3 = renyi_f3(RenyiOrder::Interior(0.5), 0.35, B, 0.3).unwrap();
        assert_abs_diff_eq!(half, f3, epsilon = 1e-15);
        assert!(
            half >= divergence::renyi(&p, &q, RenyiOrder::Interior(0.5))
                .unwrap()
                .value
        );
        assert_abs_diff_eq!(bhattacharyya_upper(0.3).unwrap(), 0.713350, epsilon = 1e-6);
        assert_eq!(bhattacharyya_upper(1.0).unwrap(), f64::INFINITY);

        let same = pair_stats(&p, &p).unwrap();
        for a in [0.0, 0.3, 0.7, 1.0, 1.5, 3.0, f64::INFINITY] {
            assert_eq!(
                renyi_upper(RenyiOrder::new(a).unwrap(), &same, 0.0).unwrap(),
                0.0
            );
        }
        // α = 1 takes the f2 branch
        assert_eq!(
            renyi_upper(RenyiOrder::One, &s, 0.3).unwrap(),
            renyi_f2(RenyiOrder::One, B, 0.35, 0.3).unwrap()
        );
        let degenerate = pair_stats(&ProbDist::new(vec![1.0, 0.0]).unwrap(), &q).unwrap();
        assert!(matches!(
            renyi_upper(RenyiOrder::One, &degenerate, 0.35),
            Err(Error::PositivityRequired(_))
        ));
    }

    #[test]
    fn simple_and_gilardoni_examples() {
        assert_abs_diff_eq!(
            renyi_simple_upper(0.6, 0.35).unwrap(),
            (13.0f64 / 7.0).ln(),
            epsilon = 1e-15
        );
        assert_eq!(renyi_simple_upper(0.0, 0.35).unwrap(), 0.0);
        assert_abs_diff_eq!(
            renyi_simple_upper(2.0, 0.5).unwrap(),
            3f64.ln(),
            epsilon = 1e-15
        );

        assert_abs_diff_eq!(
            gilardoni_lower(RenyiOrder::Interior(0.5), 0.6).unwrap(),
            0.09,
            epsilon = 1e-15
        );
        assert_eq!(
            gilardoni_lower(RenyiOrder::One, 0.6).unwrap(),
            pinsker_lower(0.6).unwrap()
        );
        assert_eq!(
            gilardoni_lower(RenyiOrder::Interior(0.5), 0.0).unwrap(),
            0.0
        );
        assert!(gilardoni_lower(RenyiOrder::Zero, 0.6).is_err());
        assert!(gilardoni_lower(RenyiOrder::Interior(2.0), 0.6).is_err());
    }

    #[test]
    fn tolerance_switches_to_relative() {
        let t = Tolerance::default();
        assert!(t.le(1.0 + 5e-11, 1.0));
        assert!(!t.le(1.0 + 5e-10, 1.0));
        assert!(t.le(100.0 + 5e-5, 100.0));
        assert!(!t.le(100.0 + 5e-4, 100.0));
    }

    #[test]
    fn report_flags_zero_qmin() {
        let p = ProbDist::new(vec![0.5, 0.5]).unwrap();
        let q = ProbDist::new(vec![1.0, 0.0]).unwrap();
        let r = bound_report(&q, &p, &[RenyiOrder::Interior(0.5)]).unwrap();
        assert!(r
            .bounds
            .iter()
            .find(|b| b.bound_id == "thm3")
            .map(|b| !b.applicable)
            .unwrap());
        let r = bound_report(&p, &q, &[RenyiOrder::One]).unwrap();
        for id in [
            "csiszar_talata",
            "thm1_refined",
            "thm1_weak",
            "l2_refined",
            "chi2_ub",
            "thm3",
            "renyi_simple",
        ] {
            let b = r.bounds.iter().find(|b| b.bound_id == id).unwrap();
            assert!(!b.applicable, "{id}");
            assert_eq!(b.reason.as_deref(), Some("Q_min = 0"));
            assert!(b.value_nats.is_none());
        }
        assert!(r.violations(Tolerance::default()).is_empty());
    }

    #[test]
    fn report_identical_pair_is_all_zero() {
        let p = ProbDist::new(vec![0.2, 0.3, 0.5]).unwrap();
        let orders = [
            RenyiOrder::Zero,
            RenyiOrder::Interior(0.5),
            RenyiOrder::One,
            RenyiOrder::Infinity,
        ];
        let r = bound_report(&p, &p, &orders).unwrap();
        for b in r
            .bounds
            .iter()
            .filter(|b| b.target != Target::TvFromUniform)
        {
            assert_abs_diff_eq!(b.value_nats.unwrap(), 0.0, epsilon = 1e-15);
        }
        assert!(r.violations(Tolerance::default()).is_empty());
    }
}
