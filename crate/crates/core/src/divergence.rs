//! Exact evaluation of total variation, relative entropy, χ² and Rényi
//! divergences on a finite alphabet.
//!
//! Infinite divergences (support violations) are returned as `f64::INFINITY`
//! inside a [`DivValue`]; errors are reserved for malformed input.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::simplex::{check_same_alphabet, ProbDist};
use crate::{Error, Result, Unit};

/// Orders closer than this to 1 are evaluated as relative entropy.
pub const NEAR_ONE: f64 = 1e-6;

/// Order of a Rényi divergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenyiOrder {
    Zero,
    /// α in (0,1) ∪ (1,∞).
    Interior(f64),
    One,
    Infinity,
}

impl RenyiOrder {
    /// Classifies `alpha`; negative or NaN orders are rejected.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(Error::Range(format!(
                "Rényi order must be in [0, ∞], got {alpha}"
            )));
        }
        Ok(if alpha == 0.0 {
            RenyiOrder::Zero
        } else if alpha == 1.0 {
            RenyiOrder::One
        } else if alpha == f64::INFINITY {
            RenyiOrder::Infinity
        } else {
            RenyiOrder::Interior(alpha)
        })
    }

    pub fn alpha(self) -> f64 {
        match self {
            RenyiOrder::Zero => 0.0,
            RenyiOrder::Interior(a) => a,
            RenyiOrder::One => 1.0,
            RenyiOrder::Infinity => f64::INFINITY,
        }
    }
}

impl FromStr for RenyiOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "∞" => Ok(RenyiOrder::Infinity),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::Range(format!("cannot parse Rényi order {t:?}")))
                .and_then(RenyiOrder::new),
        }
    }
}

impl fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenyiOrder::Infinity => f.write_str("inf"),
            o => write!(f, "{}", o.alpha()),
        }
    }
}

impl Serialize for RenyiOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RenyiOrder::Infinity => s.serialize_str("inf"),
            o => s.serialize_f64(o.alpha()),
        }
    }
}

/// A nonnegative extended-real divergence value with its unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivValue {
    pub value: f64,
    pub unit: Unit,
}

impl DivValue {
    pub fn nats(value: f64) -> Self {
        Self {
            value,
            unit: Unit::Nats,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    /// Re-expresses the value in `unit`.
    pub fn to(self, unit: Unit) -> Self {
        let nats = match self.unit {
            Unit::Nats => self.value,
            Unit::Bits => self.value * std::f64::consts::LN_2,
        };
        Self {
            value: unit.from_nats(nats),
            unit,
        }
    }
}

/// Σ |P(a) − Q(a)|, in [0, 2].
pub fn total_variation(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    check_same_alphabet(p, q)?;
    Ok(p.masses()
        .iter()
        .zip(q.masses())
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// Σ (P(a) − Q(a))², the squared Euclidean distance.
pub fn l2_squared(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    check_same_alphabet(p, q)?;
    Ok(p.masses()
        .iter()
        .zip(q.masses())
        .map(|(a, b)| (a - b) * (a - b))
        .sum())
}

/// max_a |P(a) − Q(a)|.
pub fn max_abs_difference(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    check_same_alphabet(p, q)?;
    Ok(p.masses()
        .iter()
        .zip(q.masses())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Relative entropy D(P‖Q); +∞ when P is not absolutely continuous w.r.t. Q.
pub fn kl(p: &ProbDist, q: &ProbDist) -> Result<DivValue> {
    check_same_alphabet(p, q)?;
    let mut acc = 0.0;
    for (&pa, &qa) in p.masses().iter().zip(q.masses()) {
        if pa == 0.0 {
            continue;
        }
        if qa == 0.0 {
            return Ok(DivValue::nats(f64::INFINITY));
        }
        acc += pa * (pa / qa).ln();
    }
    Ok(DivValue::nats(acc.max(0.0)))
}

/// χ²(P‖Q) = Σ (P(a) − Q(a))²/Q(a). Symbols with P(a) = Q(a) = 0 contribute 0.
pub fn chi2(p: &ProbDist, q: &ProbDist) -> Result<DivValue> {
    check_same_alphabet(p, q)?;
    let mut acc = 0.0;
    for (&pa, &qa) in p.masses().iter().zip(q.masses()) {
        if qa == 0.0 {
            if pa > 0.0 {
                return Ok(DivValue::nats(f64::INFINITY));
            }
            continue;
        }
        acc += (pa - qa) * (pa - qa) / qa;
    }
    Ok(DivValue::nats(acc))
}

/// Rényi divergence D_α(P‖Q) of any order in [0, ∞].
pub fn renyi(p: &ProbDist, q: &ProbDist, order: RenyiOrder) -> Result<DivValue> {
    check_same_alphabet(p, q)?;
    let value = match order {
        RenyiOrder::One => return kl(p, q),
        RenyiOrder::Interior(a) if (a - 1.0).abs() < NEAR_ONE => return kl(p, q),
        RenyiOrder::Interior(a) => renyi_interior(p.masses(), q.masses(), a),
        RenyiOrder::Zero => {
            let covered: f64 = p.support().map(|i| q.masses()[i]).sum();
            if covered > 0.0 {
                -covered.min(1.0).ln()
            } else {
                f64::INFINITY
            }
        }
        RenyiOrder::Infinity => {
            let mut best = 0.0f64;
            for i in p.support() {
                let qa = q.masses()[i];
                if qa == 0.0 {
                    return Ok(DivValue::nats(f64::INFINITY));
                }
                best = best.max(p.masses()[i] / qa);
            }
            best.ln()
        }
    };
    Ok(DivValue::nats(value.max(0.0)))
}

// (1/(α−1)) log Σ exp(α log P + (1−α) log Q), max-shifted.
fn renyi_interior(p: &[f64], q: &[f64], alpha: f64) -> f64 {
    let mut logs = Vec::with_capacity(p.len());
    for (&pa, &qa) in p.iter().zip(q) {
        if pa == 0.0 {
            continue;
        }
        if qa == 0.0 {
            if alpha > 1.0 {
                return f64::INFINITY;
            }
            continue;
        }
        logs.push(alpha * pa.ln() + (1.0 - alpha) * qa.ln());
    }
    let lse = log_sum_exp(&logs);
    if lse == f64::NEG_INFINITY {
        // no common support and α < 1
        return f64::INFINITY;
    }
    lse / (alpha - 1.0)
}

pub(crate) fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// The three quantities of the refined Jensen sandwich relating χ² and KL.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiKlSandwich {
    /// β₂ · D(Q‖P)
    pub lower: f64,
    /// log(1 + χ²(P‖Q)) − D(P‖Q)
    pub middle: f64,
    /// max_a P(a)/Q(a) · D(Q‖P)
    pub upper: f64,
}

/// Evaluates `lower ≤ middle ≤ upper` for strictly positive P and Q.
pub fn chi2_kl_sandwich(p: &ProbDist, q: &ProbDist) -> Result<ChiKlSandwich> {
    check_same_alphabet(p, q)?;
    if !p.is_strictly_positive() || !q.is_strictly_positive() {
        return Err(Error::PositivityRequired(
            "P and Q must both be strictly positive",
        ));
    }
    let (min_r, max_r) = p
        .masses()
        .iter()
        .zip(q.masses())
        .map(|(a, b)| a / b)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        });
    let d_pq = kl(p, q)?.value;
    let d_qp = kl(q, p)?.value;
    let chi = chi2(p, q)?.value;
    Ok(ChiKlSandwich {
        lower: min_r.min(1.0) * d_qp,
        middle: chi.ln_1p() - d_pq,
        upper: max_r * d_qp,
    })
}
