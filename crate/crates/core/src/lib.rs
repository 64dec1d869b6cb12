//! Entropic purification distance between quantum states and operations.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below are the double-precision instantiations used by the harness and CLI.

pub mod channels;
pub mod eigen;
pub mod error;
pub mod limits;
pub mod matrix;
pub mod metrics;
pub mod process;
pub mod purification;
pub mod random;
pub mod scalar;
pub mod states;
pub mod svd;

pub use channels::{
    choi_of_composition, compose, jamiolkowski, standard_channel, tensor, transpose_channel,
    ChannelKind, ChoiState, KrausChannel,
};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Subsystem};
pub use metrics::{
    bures, d_e, f_e, fidelity, holevo_quantity, qjsd, sqrt_fidelity, Measure, MetricValue,
};
pub use process::{choi_fidelity, delta_e, delta_e_fidelity, ProcessDistance};
pub use random::{seeded_rng, SeededRng};
pub use scalar::{Real, Tolerances, C};
pub use states::{
    phi_kernel, purify, shannon_entropy, von_neumann_entropy, DensityMatrix, Ensemble, PureState,
};

pub type Complex64 = C<f64>;
pub type Matrix64 = ComplexMatrix<f64>;
pub type Density64 = DensityMatrix<f64>;
pub type Pure64 = PureState<f64>;
pub type Channel64 = KrausChannel<f64>;
pub type Choi64 = ChoiState<f64>;

pub type Matrix32 = ComplexMatrix<f32>;
pub type Density32 = DensityMatrix<f32>;
pub type Channel32 = KrausChannel<f32>;
