//! The Bruhat-Tits tree of PGL2(K_∞), K_∞ = F_q((1/T)), and its quotients
//! by the Hecke congruence subgroups Γ₀(I) of GL2(F_q[T]).

mod error;
pub mod export;
mod matrix;
mod p1;
mod quotient;
mod tree;

pub use error::TreeError;
pub use matrix::{Mat2, MatA};
pub use p1::{LocalPoint, P1Point, P1Space};
pub use quotient::{EdgeClass, EdgeRecord, EndRecord, OrbitId, QuotientGraph, VertexClass, VertexRecord};
pub use tree::{gamma_act, gl2a_reduce, gl2a_reduce_edge, Edge, RayEdge, Vertex};
