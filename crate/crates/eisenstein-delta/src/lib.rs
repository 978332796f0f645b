//! Eisenstein series on the Bruhat–Tits tree as rational functions of t = q^{-s},
//! and integer-valued logarithms of the Drinfeld discriminant on quotient graphs.

pub mod brute;
mod error;
mod rational_t;
pub mod series;

pub use error::EisError;
pub use rational_t::RationalT;
pub use series::{
    edge_eisenstein, edge_factor, eisenstein_e, eisenstein_ei, f_at_one, f_series, f_tilde, l_infinity, lambda_fn, lambda_origin,
    lambda_vertex, ray_e, ray_f, scale_vertex,
};
pub mod kronecker;
pub mod logdelta;

pub use logdelta::{dlog_delta, log_delta, log_delta_level, log_delta_scaled, LogDeltaTable, TableKind};
