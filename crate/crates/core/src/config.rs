//! Run configuration shared by the CLI and the library entry points.

use serde::{Deserialize, Serialize};

use crate::approx::ApproxConstants;
use crate::error::Error;
use crate::matcher::MatchOptions;
use crate::oracle::GridConfig;

/// Everything a run needs beyond its input polygons. All fields have
/// defaults; a config file may override any subset.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Approximation budget for matching.
    pub eps: f64,
    /// Geometric constants of the approximation pipeline.
    pub constants: ApproxConstants,
    /// Brute-force oracle grid settings.
    pub grid: GridConfig,
    /// Use the slice-onion construction for comparable pairs.
    pub onion_slices: bool,
    /// Answer point-location queries by exhaustive scan instead of the
    /// slab structure (differential testing).
    pub linear_scan: bool,
    /// Build the per-pair approximations in parallel.
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            eps: 0.25,
            constants: ApproxConstants::default(),
            grid: GridConfig::default(),
            onion_slices: false,
            linear_scan: false,
            parallel: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::BadParameter(format!(
                "eps must be in (0,1), got {}",
                self.eps
            )));
        }
        for (name, v) in [
            ("c3", self.constants.c3),
            ("cR", self.constants.c_r),
            ("c4", self.constants.c4),
        ] {
            if !(v > 0.0) {
                return Err(Error::BadParameter(format!(
                    "constant {name} must be positive, got {v}"
                )));
            }
        }
        if self.grid.base_resolution < 2 || self.grid.window < 2 {
            return Err(Error::BadParameter(
                "grid resolution and window must be at least 2".into(),
            ));
        }
        Ok(())
    }

    pub fn match_options(&self) -> MatchOptions {
        MatchOptions {
            constants: self.constants,
            parallel: self.parallel,
            onion_slices: self.onion_slices,
        }
    }
}
