//! Logarithmic connections with prescribed residues on vector bundles over
//! the projective line, in exact rational arithmetic.
//!
//! Given `E = ⊕ O(a_i)`, distinct marked points `S` in the affine chart and a
//! residue matrix `A(x)` for each `x ∈ S`, the crate
//!
//! - decides existence through the obstruction functional on `H^0(End E)`
//!   ([`obstruction`]),
//! - applies the per-summand criterion when all residues are rigid
//!   ([`criterion`]),
//! - constructs an explicit connection form and checks certificates
//!   independently ([`synth`]).

pub mod bundle;
pub mod criterion;
pub mod endalg;
mod error;
pub mod exactfield;
pub mod obstruction;
pub mod schema;
pub mod synth;

pub use bundle::{validate_instance, Instance, MarkedPoints, ResidueData, SplittingType};
pub use endalg::{EndoSection, FiberEndo};
pub use error::{Error, Result};
pub use exactfield::{Mat, OneForm, Point, Poly, Scalar};
pub use obstruction::{decide_existence, obstruction_values, ObstructionReport};
pub use synth::{synthesize, verify, ConnectionPresentation, VerifyReport};
