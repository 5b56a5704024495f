//! Randomized verification of every inequality over uniformly sampled pairs.
//!
//! Trial `t` at alphabet size `n` draws its pair from an RNG seeded by
//! `(seed, n, t)` alone, so results do not depend on how trials are sharded
//! across threads.

use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, Tolerance};
use crate::divergence::{self, RenyiOrder};
use crate::sanov;
use crate::simplex::{self, pair_stats, ProbDist};
use crate::Unit;

/// Stable identifiers of the checked properties, in report order.
pub const PROPERTIES: &[&str] = &[
    "renyi_monotone",
    "chi2_renyi2_identity",
    "renyi_kl_limit",
    "jensen_chi2",
    "pinsker",
    "gilardoni",
    "strict_positivity",
    "chi2_kl_sandwich",
    "thm1_refined",
    "thm1_weak",
    "thm1_linearized",
    "csiszar_talata_factor2",
    "chi2_refined_lower",
    "chi2_pinsker_lower",
    "chi2_ub",
    "chi2_l2_upper",
    "max_difference",
    "l2_refined",
    "l2_loose",
    "l2_consistency",
    "thm3",
    "renyi_simple",
    "thm3_branch_alpha1",
    "thm3_alpha2_f1",
    "uniform_distance",
    "ow_vs_pinsker",
    "ow_lower",
    "typical_complement_tv",
    "exponent_lower",
    "exponent_ratio",
];

/// Orders at which Rényi properties are checked, increasing.
pub const ORDERS: &[f64] = &[
    0.0,
    0.1,
    0.25,
    0.5,
    0.75,
    0.9,
    1.0,
    1.5,
    2.0,
    3.0,
    10.0,
    f64::INFINITY,
];
const GILARDONI_ORDERS: &[f64] = &[0.1, 0.25, 0.5, 0.75, 1.0];
const LIMIT_OFFSET: f64 = 1e-7;
const LIMIT_TOLERANCE: f64 = 1e-5;
// Absolute tolerance of the factor-2 comparison with Csiszár–Talata.
const FACTOR2_SLACK: f64 = 1e-12;
// Violation records kept per property.
const MAX_RECORDS: usize = 5;

/// Settings of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub alphabet_sizes: Vec<usize>,
    pub seed: u64,
    pub tolerance_nats: f64,
    pub unit: Unit,
    /// Halves the named bound before checking it. Exercises the harness itself.
    pub corrupt: Option<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 10_000,
            alphabet_sizes: (2..=8).collect(),
            seed: 7,
            tolerance_nats: 1e-10,
            unit: Unit::Nats,
            corrupt: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyTally {
    pub property: &'static str,
    pub checks: u64,
    pub violations: u64,
}

/// A failing check with the exact pair that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationRecord {
    pub property: &'static str,
    pub alphabet_size: usize,
    pub trial: usize,
    pub detail: String,
    pub lhs: f64,
    pub rhs: f64,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub pairs: u64,
    pub tallies: Vec<PropertyTally>,
    pub violations: Vec<ViolationRecord>,
}

impl VerifySummary {
    pub fn total_violations(&self) -> u64 {
        self.tallies.iter().map(|t| t.violations).sum()
    }

    pub fn tally(&self, property: &str) -> Option<&PropertyTally> {
        self.tallies.iter().find(|t| t.property == property)
    }

    /// Human-readable table plus one line per recorded violation.
    pub fn render(&self, unit: Unit) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pairs checked: {}", self.pairs);
        let _ = writeln!(
            out,
            "{:<26} {:>10} {:>10}",
            "property", "checks", "violations"
        );
        for t in &self.tallies {
            let _ = writeln!(
                out,
                "{:<26} {:>10} {:>10}",
                t.property, t.checks, t.violations
            );
        }
        for v in &self.violations {
            let _ = writeln!(
                out,
                "VIOLATION property={} size={} trial={} {} lhs={:?} rhs={:?} ({unit}) p={:?} q={:?}",
                v.property,
                v.alphabet_size,
                v.trial,
                v.detail,
                unit.from_nats(v.lhs),
                unit.from_nats(v.rhs),
                v.p,
                v.q
            );
        }
        let verdict = if self.total_violations() == 0 {
            "PASS"
        } else {
            "FAIL"
        };
        let _ = writeln!(out, "{verdict}: {} violations", self.total_violations());
        out
    }
}

/// Per-trial RNG stream.
pub fn trial_rng(seed: u64, alphabet_size: usize, trial: usize) -> ChaCha8Rng {
    let key = splitmix(splitmix(seed) ^ ((alphabet_size as u64) << 40) ^ trial as u64);
    ChaCha8Rng::seed_from_u64(key)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Checker<'a> {
    tol: Tolerance,
    corrupt: Option<&'a str>,
    counts: Vec<(u64, u64)>,
    records: Vec<ViolationRecord>,
    size: usize,
    trial: usize,
    p: &'a ProbDist,
    q: &'a ProbDist,
}

impl<'a> Checker<'a> {
    fn bound(&self, id: &str, value: f64) -> f64 {
        if self.corrupt == Some(id) {
            0.5 * value
        } else {
            value
        }
    }

    fn record(
        &mut self,
        property: &'static str,
        ok: bool,
        lhs: f64,
        rhs: f64,
        detail: impl FnOnce() -> String,
    ) {
        let idx = PROPERTIES
            .iter()
            .position(|&p| p == property)
            .unwrap_or_else(|| panic!("unregistered property {property}"));
        self.counts[idx].0 += 1;
        if !ok {
            self.counts[idx].1 += 1;
            self.records.push(ViolationRecord {
                property,
                alphabet_size: self.size,
                trial: self.trial,
                detail: detail(),
                lhs,
                rhs,
                p: self.p.masses().to_vec(),
                q: self.q.masses().to_vec(),
            });
        }
    }

    /// Records `small ≤ large` under the run tolerance.
    fn le(
        &mut self,
        property: &'static str,
        small: f64,
        large: f64,
        detail: impl FnOnce() -> String,
    ) {
        let ok = self.tol.le(small, large);
        self.record(property, ok, small, large, detail);
    }

    fn approx_eq(
        &mut self,
        property: &'static str,
        a: f64,
        b: f64,
        detail: impl FnOnce() -> String,
    ) {
        let ok = self.tol.le(a, b) && self.tol.le(b, a);
        self.record(property, ok, a, b, detail);
    }
}

fn no_detail() -> String {
    String::new()
}

fn check_pair<R: Rng>(ck: &mut Checker<'_>, rng: &mut R) {
    let (p, q) = (ck.p, ck.q);
    let stats = pair_stats(p, q).expect("same alphabet");
    let tv = divergence::total_variation(p, q).expect("same alphabet");
    let kl = divergence::kl(p, q).expect("same alphabet").value;
    let kl_qp = divergence::kl(q, p).expect("same alphabet").value;
    let chi2 = divergence::chi2(p, q).expect("same alphabet").value;
    let l2 = divergence::l2_squared(p, q).expect("same alphabet");
    let max_diff = divergence::max_abs_difference(p, q).expect("same alphabet");
    let orders: Vec<RenyiOrder> = ORDERS
        .iter()
        .map(|&a| RenyiOrder::new(a).expect("valid order"))
        .collect();
    let renyi: Vec<f64> = orders
        .iter()
        .map(|&o| divergence::renyi(p, q, o).expect("same alphabet").value)
        .collect();
    let positive = p.is_strictly_positive() && q.is_strictly_positive();

    // divergence properties
    for (w, o) in renyi.windows(2).zip(orders.windows(2)) {
        ck.le("renyi_monotone", w[0], w[1], || {
            format!("alpha {} -> {}", o[0], o[1])
        });
    }
    if chi2.is_finite() {
        let d2 = divergence::renyi(p, q, RenyiOrder::Interior(2.0))
            .unwrap()
            .value;
        ck.approx_eq("chi2_renyi2_identity", d2.exp_m1(), chi2, no_detail);
    }
    let ratios_moderate = p
        .masses()
        .iter()
        .zip(q.masses())
        .all(|(a, b)| *b > 0.0 && (1e-3..=1e3).contains(&(a / b)));
    if ratios_moderate {
        for a in [1.0 - LIMIT_OFFSET, 1.0 + LIMIT_OFFSET] {
            let d = divergence::renyi(p, q, RenyiOrder::new(a).unwrap())
                .unwrap()
                .value;
            let gap = (d - kl).abs();
            ck.record("renyi_kl_limit", gap <= LIMIT_TOLERANCE, d, kl, || {
                format!("alpha {a}")
            });
        }
    }
    ck.le("jensen_chi2", kl.exp_m1(), chi2, no_detail);
    let pinsker = bounds::pinsker_lower(tv).unwrap();
    ck.le("pinsker", ck.bound("pinsker", pinsker), kl, no_detail);
    for &a in GILARDONI_ORDERS {
        let o = RenyiOrder::new(a).unwrap();
        let lb = ck.bound("gilardoni", bounds::gilardoni_lower(o, tv).unwrap());
        let d = divergence::renyi(p, q, o).unwrap().value;
        ck.le("gilardoni", lb, d, || format!("alpha {a}"));
    }
    if positive && tv > 1e-6 {
        let all_positive = kl > 0.0 && chi2 > 0.0 && renyi[1..].iter().all(|&d| d > 0.0);
        ck.record("strict_positivity", all_positive, kl, chi2, no_detail);
    }
    if positive {
        let s = divergence::chi2_kl_sandwich(p, q).unwrap();
        ck.le("chi2_kl_sandwich", s.lower, s.middle, || {
            "lower <= middle".into()
        });
        ck.le("chi2_kl_sandwich", s.middle, s.upper, || {
            "middle <= upper".into()
        });
    }

    // bounds properties
    if stats.q_min > 0.0 {
        let rp = bounds::reverse_pinsker(tv, stats.q_min, stats.beta2).unwrap();
        let refined = ck.bound("thm1_refined", rp.refined);
        let weak = ck.bound("thm1_weak", rp.weak);
        ck.le("thm1_refined", kl, refined, no_detail);
        ck.le("thm1_weak", refined, weak, no_detail);
        let lin = ck.bound(
            "thm1_linearized",
            bounds::reverse_pinsker_linearized(tv, stats.q_min, stats.beta2).unwrap(),
        );
        ck.le("thm1_linearized", refined, lin, no_detail);
        let ct = ck.bound(
            "csiszar_talata",
            bounds::csiszar_talata_upper(tv, stats.q_min).unwrap(),
        );
        ck.record(
            "csiszar_talata_factor2",
            lin <= 0.5 * ct + FACTOR2_SLACK,
            lin,
            0.5 * ct,
            no_detail,
        );

        let chi_ub = ck.bound("chi2_ub", bounds::chi2_upper(tv, stats.q_min).unwrap());
        ck.le(
            "chi2_refined_lower",
            kl.exp_m1(),
            (kl + stats.beta2 * kl_qp).exp_m1(),
            || "exp(D)-1 <= refined".into(),
        );
        ck.le(
            "chi2_refined_lower",
            (kl + stats.beta2 * kl_qp).exp_m1(),
            chi2,
            || "refined <= chi2".into(),
        );
        ck.le(
            "chi2_pinsker_lower",
            (kl + 0.5 * stats.beta2 * tv * tv).exp_m1(),
            chi2,
            no_detail,
        );
        ck.le("chi2_ub", chi2, chi_ub, no_detail);
        ck.le("chi2_l2_upper", chi2, l2 / stats.q_min, no_detail);
        ck.le("max_difference", 2.0 * max_diff, tv, no_detail);

        let l2b = bounds::l2_upper(l2, stats.q_min, stats.beta2).unwrap();
        let l2_refined = ck.bound("l2_refined", l2b.refined);
        let l2_loose = ck.bound("l2_loose", l2b.loose);
        ck.le("l2_refined", kl, l2_refined, no_detail);
        ck.le("l2_loose", l2_refined, l2_loose, no_detail);
        ck.le("l2_consistency", l2.sqrt(), tv, || {
            "||P-Q||_2 <= |P-Q|".into()
        });
        ck.le("l2_consistency", l2, 0.5 * tv * tv, || {
            "||P-Q||_2^2 <= |P-Q|^2/2".into()
        });
        ck.le(
            "l2_consistency",
            (l2 / stats.q_min).ln_1p(),
            rp.weak,
            || "log term <= weak".into(),
        );

        let simple = ck.bound(
            "renyi_simple",
            bounds::renyi_simple_upper(tv, stats.q_min).unwrap(),
        );
        for (&o, &d) in orders.iter().zip(&renyi) {
            ck.le("renyi_simple", d, simple, || format!("alpha {o}"));
        }
    }
    if positive {
        let delta = 0.5 * tv;
        for (&o, &d) in orders.iter().zip(&renyi) {
            let ub = ck.bound("thm3", bounds::renyi_upper(o, &stats, delta).unwrap());
            ck.le("thm3", d, ub, || format!("alpha {o}"));
        }
        let f2 = bounds::renyi_f2(RenyiOrder::One, stats.beta1, stats.q_min, delta).unwrap();
        let at_one = bounds::renyi_upper(RenyiOrder::One, &stats, delta).unwrap();
        ck.record("thm3_branch_alpha1", at_one == f2, at_one, f2, no_detail);
        let two = RenyiOrder::Interior(2.0);
        let d2 = divergence::renyi(p, q, two).unwrap().value;
        let f1_two = ck.bound("thm3", bounds::renyi_f1(two, stats.beta1, delta).unwrap());
        let f2_two = ck.bound(
            "thm3",
            bounds::renyi_f2(two, stats.beta1, stats.q_min, delta).unwrap(),
        );
        ck.le("thm3_alpha2_f1", d2, f1_two, || "D2 <= f1".into());
        ck.le("thm3_alpha2_f1", d2, f2_two, || "D2 <= f2".into());
    }

    let n = p.alphabet_size();
    let h = simplex::entropy(p, Unit::Nats);
    let ub = bounds::uniform_distance_bounds(h, n).unwrap();
    let to_u = divergence::total_variation(p, &ProbDist::uniform(n).unwrap()).unwrap();
    let (lb_u, ub_u) = (
        ck.bound("uniform_thm1", ub.lb_thm1),
        ck.bound("uniform_pinsker", ub.ub_pinsker)
            .min(ck.bound("uniform_bh", ub.ub_bh)),
    );
    ck.le("uniform_distance", lb_u, to_u, || "lower".into());
    ck.le("uniform_distance", to_u, ub_u, || "upper".into());

    // sanov properties
    if stats.q_min > 0.0 {
        let ow = ck.bound("ow", sanov::ow_lower_bound(p, q).unwrap());
        ck.le("ow_vs_pinsker", pinsker, ow, no_detail);
        ck.le("ow_lower", ow, kl, no_detail);

        let delta_max = (1.0 / stats.q_min - 1.0).min(1.0);
        let delta = rng.random_range(0.0..delta_max).max(1e-9);
        let spec = sanov::TypicalSetSpec::new(q.clone(), delta).unwrap();
        let eb = sanov::exponent_bounds(q, delta).unwrap();
        if !sanov::is_typical(p, &spec).unwrap() {
            ck.le("typical_complement_tv", delta * stats.q_min, tv, || {
                format!("delta {delta}")
            });
            let lower = ck.bound("exponent_lower", eb.lower);
            ck.le("exponent_lower", lower, kl, || format!("delta {delta}"));
        }
        let ratio = sanov::exponent_ratio(q, delta).unwrap();
        ck.le("exponent_ratio", ratio, 4.0 / stats.q_min, || {
            format!("delta {delta}")
        });
    }
}
// (checks, violations) per property, plus the recorded violations of one trial
type TrialOutcome = (Vec<(u64, u64)>, Vec<ViolationRecord>);

/// Runs the property suite described by `config`.
pub fn run_verify(config: &VerifyConfig) -> VerifySummary {
    let tol = Tolerance::with_abs(config.tolerance_nats);
    let jobs: Vec<(usize, usize)> = config
        .alphabet_sizes
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let per_trial: Vec<TrialOutcome> = jobs
        .par_iter()
        .map(|&(n, t)| {
            let mut rng = trial_rng(config.seed, n, t);
            let p = simplex::sample_simplex_with(n, &mut rng).expect("n >= 2");
            let q = simplex::sample_simplex_with(n, &mut rng).expect("n >= 2");
            let mut ck = Checker {
                tol,
                corrupt: config.corrupt.as_deref(),
                counts: vec![(0, 0); PROPERTIES.len()],
                records: Vec::new(),
                size: n,
                trial: t,
                p: &p,
                q: &q,
            };
            check_pair(&mut ck, &mut rng);
            (ck.counts, ck.records)
        })
        .collect();

    let mut counts = vec![(0u64, 0u64); PROPERTIES.len()];
    let mut violations = Vec::new();
    let mut kept = vec![0usize; PROPERTIES.len()];
    for (c, records) in per_trial {
        for (acc, x) in counts.iter_mut().zip(c) {
            acc.0 += x.0;
            acc.1 += x.1;
        }
        for r in records {
            let idx = PROPERTIES.iter().position(|&p| p == r.property).unwrap();
            if kept[idx] < MAX_RECORDS {
                kept[idx] += 1;
                violations.push(r);
            }
        }
    }
    VerifySummary {
        pairs: jobs.len() as u64,
        tallies: PROPERTIES
            .iter()
            .zip(counts)
            .map(|(&property, (checks, violations))| PropertyTally {
                property,
                checks,
                violations,
            })
            .collect(),
        violations,
    }
}
