//! CSV data behind the two figures: bounds on |P − U| against H(P), and the
//! Rényi bound family for a fixed binary pair.
//!
//! Numbers are written in shortest round-trip form so that output files can
//! be compared byte for byte.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::bounds::{renyi_f1, renyi_upper, uniform_distance_bounds};
use crate::divergence::{self, RenyiOrder};
use crate::simplex::{pair_stats, ProbDist};
use crate::{Result, Unit};

/// Alphabet sizes shown in the uniform-distance figure.
pub const FIGURE1_SIZES: [usize; 2] = [4, 16];
/// P(0) of the binary pair; Q is its mirror image.
pub const FIGURE2_P0: f64 = 0.65;
/// Largest finite order on the Rényi grid.
pub const FIGURE2_ALPHA_MAX: f64 = 32.0;
/// Smallest positive order on the Rényi grid.
pub const FIGURE2_ALPHA_MIN: f64 = 0.01;
pub const DEFAULT_RESOLUTION: usize = 400;
/// Tolerance under which the composite and f1 curves count as coinciding.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-10;

fn num(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{x}")
    }
}

/// One sample of the uniform-distance curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row {
    pub entropy_bits: f64,
    pub ub_pinsker: f64,
    pub ub_bh: f64,
    pub lb_thm1: f64,
}

/// `resolution` equally spaced entropies over [0, log n].
pub fn figure1_rows(alphabet_size: usize, resolution: usize) -> Result<Vec<Figure1Row>> {
    let log_n = (alphabet_size as f64).ln();
    let last = resolution.max(2) - 1;
    (0..=last)
        .map(|k| {
            let h = if k == last {
                log_n
            } else {
                log_n * k as f64 / last as f64
            };
            let b = uniform_distance_bounds(h, alphabet_size)?;
            Ok(Figure1Row {
                entropy_bits: Unit::Bits.from_nats(h),
                ub_pinsker: b.ub_pinsker,
                ub_bh: b.ub_bh,
                lb_thm1: b.lb_thm1,
            })
        })
        .collect()
}

/// |P − U| of a point mass: 2(1 − 1/n).
pub fn degenerate_distance(alphabet_size: usize) -> f64 {
    2.0 * (1.0 - 1.0 / alphabet_size as f64)
}

/// CSV for one alphabet size; the final row carries the point-mass reference.
pub fn figure1_csv(alphabet_size: usize, resolution: usize) -> Result<String> {
    let mut out = String::from("H_P_bits,ub_pinsker,ub_bh,lb_thm1,reference_tv\n");
    for r in figure1_rows(alphabet_size, resolution)? {
        let _ = writeln!(
            out,
            "{},{},{},{},",
            num(r.entropy_bits),
            num(r.ub_pinsker),
            num(r.ub_bh),
            num(r.lb_thm1)
        );
    }
    let b = uniform_distance_bounds(0.0, alphabet_size)?;
    let _ = writeln!(
        out,
        "0,{},{},{},{}",
        num(b.ub_pinsker),
        num(b.ub_bh),
        num(b.lb_thm1),
        num(degenerate_distance(alphabet_size))
    );
    Ok(out)
}

/// One sample of the Rényi figure, all in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure2Row {
    pub order: RenyiOrder,
    pub d_alpha: f64,
    pub thm3_upper: f64,
    pub f1_upper: f64,
}

/// The binary pair P = [0.65, 0.35], Q = [0.35, 0.65].
pub fn figure2_pair() -> (ProbDist, ProbDist) {
    let p = ProbDist::new(vec![FIGURE2_P0, 1.0 - FIGURE2_P0]).expect("valid pmf");
    let q = ProbDist::new(vec![1.0 - FIGURE2_P0, FIGURE2_P0]).expect("valid pmf");
    (p, q)
}

/// α = 0, then `resolution` geometrically spaced orders on
/// [FIGURE2_ALPHA_MIN, FIGURE2_ALPHA_MAX], then α = ∞.
pub fn figure2_orders(resolution: usize) -> Vec<RenyiOrder> {
    let last = resolution.max(2) - 1;
    let ratio = (FIGURE2_ALPHA_MAX / FIGURE2_ALPHA_MIN).ln();
    let mut orders = vec![RenyiOrder::Zero];
    orders.extend((0..=last).map(|k| {
        let a = if k == last {
            FIGURE2_ALPHA_MAX
        } else {
            FIGURE2_ALPHA_MIN * (ratio * k as f64 / last as f64).exp()
        };
        RenyiOrder::new(a).expect("positive order")
    }));
    orders.push(RenyiOrder::Infinity);
    orders
}

/// Evaluates D_α, the composite upper bound and f1 at `order` for the figure pair.
pub fn figure2_point(order: RenyiOrder) -> Result<Figure2Row> {
    let (p, q) = figure2_pair();
    let stats = pair_stats(&p, &q)?;
    let delta = 0.5 * divergence::total_variation(&p, &q)?;
    Ok(Figure2Row {
        order,
        d_alpha: divergence::renyi(&p, &q, order)?.value,
        thm3_upper: renyi_upper(order, &stats, delta)?,
        f1_upper: renyi_f1(order, stats.beta1, delta)?,
    })
}

pub fn figure2_rows(resolution: usize) -> Result<Vec<Figure2Row>> {
    figure2_orders(resolution)
        .into_iter()
        .map(figure2_point)
        .collect()
}

pub fn figure2_csv(resolution: usize, unit: Unit) -> Result<String> {
    let mut out = String::from("alpha,d_alpha,thm3_upper,f1_upper\n");
    for r in figure2_rows(resolution)? {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            num(r.order.alpha()),
            num(unit.from_nats(r.d_alpha)),
            num(unit.from_nats(r.thm3_upper)),
            num(unit.from_nats(r.f1_upper))
        );
    }
    Ok(out)
}

/// Upper end of the coincidence interval of the composite bound and f1
/// that starts just above α = 1, located by bisection on their difference.
pub fn figure2_crossover() -> Result<f64> {
    let coincide = |a: f64| -> Result<bool> {
        let r = figure2_point(RenyiOrder::new(a)?)?;
        Ok((r.f1_upper - r.thm3_upper).abs() <= COINCIDENCE_TOLERANCE)
    };
    let (mut lo, mut hi) = (1.0 + 1e-3, 2.0);
    debug_assert!(coincide(lo)? && !coincide(hi)?);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if coincide(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Writes the CSV files of figure `which` into `dir` and returns their paths.
pub fn write_figure(
    which: u8,
    dir: &Path,
    resolution: usize,
    unit: Unit,
) -> std::io::Result<Vec<PathBuf>> {
    let to_io =
        |e: crate::Error| std::io::Error::new(std::io::ErrorKind::InvalidInput, e.to_string());
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    match which {
        1 => {
            for n in FIGURE1_SIZES {
                let path = dir.join(format!("figure1_a{n}.csv"));
                std::fs::write(&path, figure1_csv(n, resolution).map_err(to_io)?)?;
                written.push(path);
            }
        }
        2 => {
            let path = dir.join("figure2.csv");
            std::fs::write(&path, figure2_csv(resolution, unit).map_err(to_io)?)?;
            written.push(path);
        }
        other => {
            return Err(std::io::Error::new(
                std::io::ErrorKind::InvalidInput,
                format!("no figure {other}; expected 1 or 2"),
            ))
        }
    }
    Ok(written)
}
