//! Instance generation, seeded fuzzing, example reproduction and report
//! serialization for the `semi-hilbert` catalog.

pub mod error;
pub mod fuzz;
pub mod generate;
pub mod report;
pub mod repro;
pub mod wire;

pub use error::{HarnessError, Result};
pub use fuzz::{child_seed, fuzz, generate_trial, scan_sharpness, FuzzConfig, RankPolicy};
pub use generate::{gen_compatible, gen_psd, Bias};
pub use report::{Report, Row, Summary};
pub use repro::{repro_paper, ReproReport};
pub use wire::Instance;
