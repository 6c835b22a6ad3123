//! File formats, parallel evaluation and the command line for
//! [`zeta_moments_core`].
//!
//! * [`io`]: zero tables and Stieltjes tables on disk.
//! * [`cache`]: the persistent per-zero jet cache.
//! * [`engine`]: rayon-parallel sums with worker-independent results.
//! * [`report`]: CSV and SVG output.
//! * [`cli`]: the `zeta-moments` binary.

pub mod cache;
pub mod cli;
pub mod engine;
mod error;
pub mod io;
pub mod report;

pub use engine::Engine;
pub use error::{exit, AppError, Result};
pub use zeta_moments_core as core;
