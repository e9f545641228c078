//! Structural decision modeling toolkit.
//!
//! Turns a Structural Self-Interaction Matrix (SSIM) of expert pairwise
//! judgments into a leveled hierarchy with Interpretive Structural Modeling,
//! classifies the factors with MICMAC driving/dependence analysis, and
//! aggregates five-point Likert survey responses.
//!
//! The pipeline, end to end:
//!
//! ```
//! use ismkit::{corpus, ism, ssim};
//!
//! let catalog = corpus::catalog();
//! let table = ssim::parse_ssim(corpus::SSIM_TABLE, Some(&catalog)).unwrap();
//! let report = ism::run_ism(&table).unwrap();
//! assert_eq!(report.partition.factor_count(), 17);
//! ```

pub mod audit;
pub mod corpus;
pub mod error;
pub mod factor;
pub mod ids;
pub mod ism;
pub mod micmac;
pub mod ssim;
pub mod survey;

pub use error::{Error, Result};
