//! Exact arithmetic for Catalan-Stieltjes matrices and their Hankel matrices.
//!
//! The crate builds the matrices from parameter sequences over `Z[q]`,
//! realises them as path generating functions of layered planar networks,
//! evaluates symmetric-group characters and immanants, and checks the
//! coefficientwise (q-)nonnegativity of minors, immanants and the cubic
//! inequalities they imply for the Catalan-like sequence.
//!
//! Module map:
//!
//! * [`qpoly`]: polynomials in `q` with big-integer coefficients.
//! * [`families`]: parameter triples, the five positivity conditions, built-ins.
//! * [`csmatrix`]: `C_n`, `H_n`, `L_n` and submatrices.
//! * [`network`]: planar networks, gluing, path generating functions, DOT.
//! * [`symchar`]: partitions and irreducible characters of the symmetric group.
//! * [`immanant`]: immanants, determinants, positivity sweeps, inequalities.

pub mod csmatrix;
pub mod families;
pub mod immanant;
pub mod network;
pub mod qpoly;
pub mod symchar;

#[cfg(test)]
#[path = "../tests/common/oracles.rs"]
mod oracles;

pub use csmatrix::{CSMatrix, MatrixError, MatrixKind, PolyMatrix};
pub use families::{builtin, check_condition, load_family, Condition, FamilyError, FamilySpec};
pub use immanant::{ImmanantError, ImmanantReport, SweepReport};
pub use network::{NetworkError, PlanarNetwork, Vertex, VertexKind, WeightCase};
pub use qpoly::QPoly;
pub use symchar::{CharacterTable, Partition, SymError};
