//! Exact characters of finite-dimensional simple gl(m|n)-modules.
//!
//! Characters are computed two independent ways: by summing Kazhdan–Lusztig
//! data read off from labelled weight-diagram paths, and by a closed formula
//! valid for piecewise disconnected weights. The two must agree.
//!
//! Weights are passed around in their ρ-shifted form λ^ρ = λ + ρ and written
//! `"a1,..,am|b1,..,bn"` for λ^ρ = Σ aᵢεᵢ − Σ bⱼδⱼ.

pub mod characters;
pub mod corpus;
pub mod diagrams;
pub mod error;
pub mod lattice;
pub mod lemmas;
pub mod paths;
pub mod pdc;
pub mod perm;
pub mod series;

pub use error::{Error, Result};
pub use lattice::{HalfInt, OddRoot, Shape, ShiftedWeight, WeylElement};
