//! Intersection theory on the blown-up special fibre of X₀(I) × X₀(I) at ∞,
//! the regulator of the motivic element as a one-cycle, and the comparison of
//! the resulting pairing with the special value of the Rankin-Selberg function.

mod error;

pub mod cycles;
pub mod local;
pub mod regulator;
pub mod search;
pub mod verify;

pub use cycles::{pairing, site_weight, GlobalSymbol, OneCycle, Site, SpecialCycle};
pub use error::FibreError;
pub use local::{local_pairing, z_site, LocalCycle, LocalSymbol, RulingsOracle, LOCAL_BASIS};
pub use regulator::{log_table, regulator};
pub use search::{find_admissible_instance, Instance};
pub use verify::{closed_form, diagonal_logs, verify_main_theorem, verify_with, EdgeDiagnostic, LevelData, MainReport, Timings};
