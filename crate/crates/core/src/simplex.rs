//! Probability mass functions on a finite alphabet and the scalar statistics
//! derived from a pair of them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Unit};

/// Accepted deviation of the mass total from 1 for strict validation.
pub const SUM_TOLERANCE: f64 = 1e-9;
/// Accepted deviation of the mass total from 1 when renormalization is requested.
pub const RENORMALIZE_TOLERANCE: f64 = 1e-3;
/// Largest alphabet for which the balance coefficient is computed exactly.
pub const MAX_EXACT_BALANCE: usize = 20;

/// A validated probability mass function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbDist {
    masses: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl ProbDist {
    /// Strict validation: the masses must already sum to 1 within [`SUM_TOLERANCE`].
    pub fn new(masses: Vec<f64>) -> Result<Self> {
        Self::validate(masses, false)
    }

    /// Validates `masses`. With `renormalize`, totals within
    /// [`RENORMALIZE_TOLERANCE`] of 1 are divided out.
    pub fn validate(mut masses: Vec<f64>, renormalize: bool) -> Result<Self> {
        if masses.len() < 2 {
            return Err(Error::AlphabetTooSmall { len: masses.len() });
        }
        for (index, &m) in masses.iter().enumerate() {
            if !m.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if m < 0.0 {
                return Err(Error::NegativeMass { index, value: m });
            }
        }
        let sum: f64 = masses.iter().sum();
        if renormalize && (sum - 1.0).abs() <= RENORMALIZE_TOLERANCE {
            masses.iter_mut().for_each(|m| *m /= sum);
        } else if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::SumOutOfTolerance { sum });
        }
        Ok(Self {
            masses,
            labels: None,
        })
    }

    /// Attaches display labels; their count must match the alphabet.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.masses.len() {
            return Err(Error::AlphabetMismatch {
                left: self.masses.len(),
                right: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The uniform distribution on `alphabet_size` symbols.
    pub fn uniform(alphabet_size: usize) -> Result<Self> {
        if alphabet_size < 2 {
            return Err(Error::AlphabetTooSmall { len: alphabet_size });
        }
        Ok(Self {
            masses: vec![1.0 / alphabet_size as f64; alphabet_size],
            labels: None,
        })
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn alphabet_size(&self) -> usize {
        self.masses.len()
    }

    /// Indices carrying positive mass. Never empty.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0.0)
            .map(|(i, _)| i)
    }

    /// Smallest mass.
    pub fn min_mass(&self) -> f64 {
        self.masses.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.min_mass() > 0.0
    }

    /// Smallest total mass among events of probability at least one half.
    ///
    /// Exact subset enumeration for alphabets up to [`MAX_EXACT_BALANCE`];
    /// beyond that a greedy cover of the largest masses is returned and the
    /// second field is `false`.
    pub fn balance_coefficient(&self) -> (f64, bool) {
        let n = self.masses.len();
        if n <= MAX_EXACT_BALANCE {
            (exact_balance(&self.masses), true)
        } else {
            (greedy_balance(&self.masses), false)
        }
    }
}

fn exact_balance(q: &[f64]) -> f64 {
    const HALF: f64 = 0.5 - 1e-12;
    let n = q.len();
    let mut sums = vec![0.0f64; 1 << n];
    let mut best = f64::INFINITY;
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let s = sums[mask & (mask - 1)] + q[low];
        sums[mask] = s;
        if s >= HALF && s < best {
            best = s;
        }
    }
    best.clamp(0.5, 1.0)
}

fn greedy_balance(q: &[f64]) -> f64 {
    let mut sorted = q.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    for m in sorted {
        acc += m;
        if acc >= 0.5 {
            break;
        }
    }
    acc.clamp(0.5, 1.0)
}

/// Scalar statistics of an ordered pair (P, Q).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistPairStats {
    /// min_a Q(a)
    pub q_min: f64,
    /// min_a P(a)
    pub p_min: f64,
    /// min_a Q(a)/P(a) over the support of P
    pub beta1: f64,
    /// min_a P(a)/Q(a) over the support of Q
    pub beta2: f64,
    /// Balance coefficient of Q.
    pub balance_q: f64,
    /// Whether `balance_q` came from exact subset enumeration.
    pub balance_exact: bool,
}

/// Computes [`DistPairStats`] for `(p, q)`.
pub fn pair_stats(p: &ProbDist, q: &ProbDist) -> Result<DistPairStats> {
    check_same_alphabet(p, q)?;
    let (balance_q, balance_exact) = q.balance_coefficient();
    Ok(DistPairStats {
        q_min: q.min_mass(),
        p_min: p.min_mass(),
        beta1: min_ratio(q.masses(), p.masses()),
        beta2: min_ratio(p.masses(), q.masses()),
        balance_q,
        balance_exact,
    })
}

// min over den > 0 of num/den; terms with den = 0 are +inf and never win.
fn min_ratio(num: &[f64], den: &[f64]) -> f64 {
    num.iter()
        .zip(den)
        .filter(|(_, &d)| d > 0.0)
        .map(|(&n, &d)| n / d)
        .fold(f64::INFINITY, f64::min)
        .min(1.0)
}

pub(crate) fn check_same_alphabet(p: &ProbDist, q: &ProbDist) -> Result<()> {
    if p.alphabet_size() != q.alphabet_size() {
        return Err(Error::AlphabetMismatch {
            left: p.alphabet_size(),
            right: q.alphabet_size(),
        });
    }
    Ok(())
}

/// Shannon entropy with 0 log 0 = 0.
pub fn entropy(p: &ProbDist, unit: Unit) -> f64 {
    let h: f64 = p
        .masses()
        .iter()
        .filter(|&&m| m > 0.0)
        .map(|&m| -m * m.ln())
        .sum();
    unit.from_nats(h.max(0.0))
}

/// Uniform draw from the probability simplex, deterministic in `seed`.
pub fn sample_simplex(alphabet_size: usize, seed: u64) -> Result<ProbDist> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_simplex_with(alphabet_size, &mut rng)
}

/// Uniform draw from the probability simplex: normalized i.i.d. standard
/// exponentials (a flat Dirichlet).
pub fn sample_simplex_with<R: Rng + ?Sized>(alphabet_size: usize, rng: &mut R) -> Result<ProbDist> {
    if alphabet_size < 2 {
        return Err(Error::AlphabetTooSmall { len: alphabet_size });
    }
    let draws: Vec<f64> = (0..alphabet_size)
        .map(|_| rng.sample::<f64, _>(Exp1))
        .collect();
    let total: f64 = draws.iter().sum();
    Ok(ProbDist {
        masses: draws.into_iter().map(|x| x / total).collect(),
        labels: None,
    })
}
