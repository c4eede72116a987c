//! Exact engine for discrete quantum groups presented as direct sums of
//! matrix algebras.
//!
//! The crate realizes a block algebra together with its comultiplication,
//! counit, antipode and cointegral, all over an exact computable field. On
//! top of that it provides reduced linear functionals and their slices,
//! invariant (Haar) functional solving, an almost-periodicity test that
//! detects finite tensor-rank coproducts, and the assembly of the resulting
//! compactification Hopf *-algebra with exact structure constants.
//!
//! Everything is exact: verdicts are rank and equality decisions, never
//! approximations.

pub mod error;
pub mod scalar;
pub mod matrix;
pub mod poly;
pub mod tail;
pub mod shape;
pub mod element;
pub mod multiplier;
pub mod group;
pub mod model;
pub mod functional;
pub mod tensor;
pub mod slice;
pub mod axioms;
pub mod ap;
pub mod corep;
pub mod bohr;
pub mod io;

pub use element::FiniteElement;
pub use error::{Error, Result};
pub use functional::{
    dual_element, solve_invariant, InvariantFunctional, RawFunctional, ReducedFunctional, Side,
    TensorFunctional,
};
pub use matrix::Mat;
pub use model::QuantumGroupModel;
pub use multiplier::Multiplier;
pub use scalar::{FieldDescriptor, Scalar};
pub use shape::{BlockIndex, BlockShape, Window};
pub use slice::{left_slice, right_slice};
pub use tail::{ExpPoly, TailRule};
pub use tensor::TensorMultiplier;
