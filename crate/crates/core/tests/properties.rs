use proptest::prelude::*;

use divbound::bounds::{
    bound_report, csiszar_talata_upper, pinsker_lower, renyi_upper, reverse_pinsker,
    reverse_pinsker_linearized, Tolerance,
};
use divbound::divergence::{self, RenyiOrder};
use divbound::sanov::{exponent_bounds, exponent_ratio, sanov_oracle};
use divbound::simplex::{entropy, pair_stats, ProbDist};
use divbound::Unit;

fn normalize(w: Vec<f64>) -> ProbDist {
    let total: f64 = w.iter().sum();
    ProbDist::validate(w.into_iter().map(|x| x / total).collect(), true).unwrap()
}

fn positive_dist(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ProbDist> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(normalize)
}

fn positive_pair() -> impl Strategy<Value = (ProbDist, ProbDist)> {
    (2usize..=8).prop_flat_map(|n| (positive_dist(n..=n), positive_dist(n..=n)))
}

// Pairs where either side may have empty symbols.
fn sparse_pair() -> impl Strategy<Value = (ProbDist, ProbDist)> {
    (2usize..=6).prop_flat_map(|n| {
        let side = prop::collection::vec(prop_oneof![1 => Just(0.0), 3 => 0.01f64..1.0], n)
            .prop_filter("some mass", |w| w.iter().any(|&x| x > 0.0))
            .prop_map(normalize);
        (side.clone(), side)
    })
}

fn order() -> impl Strategy<Value = f64> {
    prop_oneof![0.0f64..1.0, 1.0f64..4.0, 4.0f64..50.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ratio_coefficients_lie_in_unit_interval((p, q) in sparse_pair()) {
        let s = pair_stats(&p, &q).unwrap();
        prop_assert!((0.0..=1.0).contains(&s.beta1));
        prop_assert!((0.0..=1.0).contains(&s.beta2));
        prop_assert!((0.5..=1.0).contains(&s.balance_q));
        if s.q_min > 0.0 {
            prop_assert!(s.beta2 * s.q_min <= s.p_min + 1e-15);
        }
    }

    #[test]
    fn entropy_ignores_symbol_order(p in positive_dist(2..=10), seed in any::<u64>()) {
        let mut masses = p.masses().to_vec();
        let k = (seed % masses.len() as u64) as usize;
        masses.rotate_left(k);
        masses.reverse();
        let shuffled = ProbDist::new(masses).unwrap();
        prop_assert!((entropy(&p, Unit::Nats) - entropy(&shuffled, Unit::Nats)).abs() < 1e-12);
        prop_assert!(entropy(&p, Unit::Nats) <= (p.alphabet_size() as f64).ln() + 1e-12);
    }

    #[test]
    fn renyi_is_nondecreasing_in_order((p, q) in sparse_pair(), a in order(), b in order()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let d_lo = divergence::renyi(&p, &q, RenyiOrder::new(lo).unwrap()).unwrap().value;
        let d_hi = divergence::renyi(&p, &q, RenyiOrder::new(hi).unwrap()).unwrap().value;
        let d_inf = divergence::renyi(&p, &q, RenyiOrder::Infinity).unwrap().value;
        prop_assert!(Tolerance::default().le(d_lo, d_hi), "{d_lo} > {d_hi}");
        prop_assert!(Tolerance::default().le(d_hi, d_inf), "{d_hi} > {d_inf}");
    }

    #[test]
    fn divergences_vanish_only_on_the_diagonal(p in positive_dist(2..=8)) {
        prop_assert_eq!(divergence::total_variation(&p, &p).unwrap(), 0.0);
        prop_assert!(divergence::kl(&p, &p).unwrap().value.abs() < 1e-15);
        prop_assert!(divergence::chi2(&p, &p).unwrap().value.abs() < 1e-15);
        prop_assert!(divergence::renyi(&p, &p, RenyiOrder::Infinity).unwrap().value.abs() < 1e-15);
    }

    #[test]
    fn kl_sits_inside_the_reverse_pinsker_chain((p, q) in positive_pair()) {
        let tol = Tolerance::default();
        let s = pair_stats(&p, &q).unwrap();
        let tv = divergence::total_variation(&p, &q).unwrap();
        let kl = divergence::kl(&p, &q).unwrap().value;
        let chi2 = divergence::chi2(&p, &q).unwrap().value;
        let rp = reverse_pinsker(tv, s.q_min, s.beta2).unwrap();
        let lin = reverse_pinsker_linearized(tv, s.q_min, s.beta2).unwrap();
        let ct = csiszar_talata_upper(tv, s.q_min).unwrap();
        prop_assert!(tol.le(pinsker_lower(tv).unwrap(), kl));
        prop_assert!(tol.le(kl, rp.refined));
        prop_assert!(rp.refined <= rp.weak);
        prop_assert!(tol.le(rp.refined, lin));
        prop_assert!(lin <= 0.5 * ct + 1e-12);
        prop_assert!(tol.le(kl, chi2.ln_1p()));
    }

    #[test]
    fn full_report_has_no_violations((p, q) in sparse_pair()) {
        let orders: Vec<RenyiOrder> = [0.0, 0.5, 1.0, 2.0, 7.0, f64::INFINITY]
            .into_iter()
            .map(|a| RenyiOrder::new(a).unwrap())
            .collect();
        let report = bound_report(&p, &q, &orders).unwrap();
        prop_assert!(report.violations(Tolerance::default()).is_empty());
    }

    #[test]
    fn composite_renyi_bound_dominates((p, q) in positive_pair(), a in order()) {
        let s = pair_stats(&p, &q).unwrap();
        let delta = 0.5 * divergence::total_variation(&p, &q).unwrap();
        let o = RenyiOrder::new(a).unwrap();
        let d = divergence::renyi(&p, &q, o).unwrap().value;
        prop_assert!(Tolerance::default().le(d, renyi_upper(o, &s, delta).unwrap()));
    }

    #[test]
    fn exponent_bounds_grow_with_delta(q in positive_dist(2..=6), d1 in 0.01f64..0.5, d2 in 0.01f64..0.5) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let a = exponent_bounds(&q, lo).unwrap();
        let b = exponent_bounds(&q, hi).unwrap();
        prop_assert!(a.lower <= b.lower);
        prop_assert!(a.lower <= a.upper.unwrap());
        prop_assert!(exponent_ratio(&q, lo).unwrap() <= 4.0 / q.min_mass() + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_sits_in_sandwich(q in positive_dist(3..=3), delta in 0.05f64..0.4) {
        let r = sanov_oracle(&q, delta, 201, 2).unwrap();
        prop_assert!(r.sandwich_holds(), "{r:?}");
        // the cheapest escape pushes one coordinate of the smallest mass
        // δ Q_min away and compensates elsewhere
        let q_min = q.min_mass();
        prop_assert!(r.boundary_tv >= 2.0 * delta * q_min - 1e-12);
        prop_assert!(r.boundary_tv <= 2.0 * delta * q_min + 2.0 * r.final_step * 10.0 + 1e-12);
    }

    #[test]
    fn oracle_grows_with_delta(q in positive_dist(3..=3), d1 in 0.05f64..0.4, d2 in 0.05f64..0.4) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let a = sanov_oracle(&q, lo, 201, 2).unwrap();
        let b = sanov_oracle(&q, hi, 201, 2).unwrap();
        prop_assert!(a.oracle_value <= b.oracle_value + a.oracle_tolerance + b.oracle_tolerance);
    }
}
