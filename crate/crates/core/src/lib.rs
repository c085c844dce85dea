//! Exact linear algebra over prime fields for alternating bilinear maps, with
//! a certified solver for their Ramsey problem: every alternating matrix space
//! on `F_p^n`, `n >= s t^4`, has a totally-isotropic subspace of dimension `s`
//! or a complete subspace of dimension `t`.

pub mod altspace;
pub mod baer;
pub mod error;
pub mod field;
pub mod hypergraph;
pub mod matrix;
pub mod oracle;
pub mod ramsey;
pub mod randgen;
pub mod tensor3;

pub use altspace::{binomial2, verify_witness, AltSpace, Witness, WitnessKind, WitnessReport};
pub use baer::{build_group, check_laws, corollary1_check, BaerGroup, FreeGroupTarget};
pub use error::{AltViolation, Error, Result};
pub use field::{Felt, FieldCtx};
pub use hypergraph::{Hypergraph, MultilinearMap};
pub use matrix::{Mat, Subspace};
pub use ramsey::{solve, solve_with, SolveOptions, SolveTrace};
pub use randgen::{gen_bgh_lower, gen_uniform, GenMode, GenSpec};
pub use tensor3::ThreeWay;
