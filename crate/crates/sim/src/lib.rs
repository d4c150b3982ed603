//! Method-of-lines integration of the contact and Vlasov kinetic equations on
//! periodic grids, torus quadrature, and randomized identity checks.

pub mod config;
pub mod error;
pub mod grid;
pub mod model;
pub mod plan;
pub mod rk4;
pub mod run;
pub mod trig;
pub mod verify;

pub use error::{Result, SimError};
pub use grid::{Grid, GridField};
pub use model::{Model, Physics, Problem};
pub use plan::LinearPlan;
pub use config::SimConfig;
pub use run::{run_simulation, DiagnosticsRow, RunSummary};
pub use verify::{verify_suite, Report, Suite, VerifyOptions};
