//! Divergences between distributions on a finite alphabet, together with
//! reverse Pinsker type upper bounds and the machinery needed to check them
//! numerically.
//!
//! All quantities are computed in nats. [`Unit`] conversion happens only at
//! output boundaries.
//!
//! ```
//! use divbound::{divergence, simplex::ProbDist};
//!
//! let p = ProbDist::new(vec![0.65, 0.35]).unwrap();
//! let q = ProbDist::new(vec![0.35, 0.65]).unwrap();
//! let d = divergence::kl(&p, &q).unwrap();
//! assert!((d.value - 0.3 * (13.0f64 / 7.0).ln()).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod divergence;
pub mod error;
pub mod harness;
pub mod sanov;
pub mod simplex;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

/// Logarithm base used when printing information quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    #[default]
    Nats,
    Bits,
}

impl Unit {
    /// Converts a value expressed in nats into this unit.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            Unit::Nats => nats,
            Unit::Bits => nats / std::f64::consts::LN_2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Unit::Nats => "nats",
            Unit::Bits => "bits",
        }
    }
}

impl std::fmt::Display for Unit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
