//! Numerical laboratory for the quadratic functional equation
//! `f(x+y) + f(x−y) = 2f(x) + 2f(y)` and its weighted generalization
//! `f(rx+sy) + rs·f(x−y) = r·f(x) + s·f(y)` (with `r + s = 1`, `rs ≠ 0`).
//!
//! The crate evaluates equation defects, recovers the nearby quadratic map
//! with the direct method `Q(x) = lim 4⁻ⁿ f(2ⁿx)`, certifies maps against
//! explicit stability constants on restricted domains, detects inner-product
//! norms and profiles asymptotic behaviour. All randomness is seeded.
//!
//! Modules, bottom-up:
//!
//! * [`space`]: normed spaces `ℝⁿ` and seeded samplers;
//! * [`quadratic`]: quadratic forms, maps, residuals, polarization;
//! * [`perturb`]: exact and perturbed test maps;
//! * [`stability`]: constants, extraction, certificates;
//! * [`geometry`]: parallelogram law and exponent scans;
//! * [`asymptotics`]: shell profiles;
//! * [`cli`]: configuration, reports and the subcommands of the `quadlab` binary.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod perturb;
pub mod quadratic;
pub mod space;
pub mod stability;

pub use error::{LabError, Result};
pub use quadratic::{EquationParams, MapHandle, QuadraticForm};
pub use space::{Sampler, SamplerMode, SpaceSpec, Spaces};
