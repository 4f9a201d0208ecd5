//! Space-time storage codes for wireless repair in distributed storage.
//!
//! Helper nodes of a single-parity storage system transmit their fragments
//! simultaneously over a Rayleigh-fading multiple access channel; the
//! newcomer jointly ML-decodes the virtual MIMO codeword and XORs the
//! decoded fragments. The crate provides the exact golden-field algebra
//! behind the two-user MAC code, the lift functions, the storage code, the
//! CNVD checker and the Monte Carlo engine.
//!
//! Numeric code is generic over [`Real`] and exact code over [`ExactInt`];
//! the aliases below fix the common choices.

pub mod algebra;
pub mod bits;
pub mod channel;
pub mod decode;
pub mod error;
pub mod matrix;
pub mod modulation;
pub mod scalar;
pub mod sim;
pub mod stcode;
pub mod storage;

pub use algebra::{coset_decode, coset_encode, CosetLabel, GaussInt, GoldenElem};
pub use bits::BitString;
pub use channel::{ChannelRealization, FadingModel, ReceivedBlock};
pub use decode::{ml_decode, DecodeResult};
pub use error::{Error, Result};
pub use matrix::{CMatrix, Matrix};
pub use scalar::{ExactInt, Real};
pub use sim::{SimConfig, Simulator, SweepResult, SweepRow, TrialRecord};
pub use stcode::{cnvd_check, Codebook, Codeword, CnvdMode, CnvdReport, Scheme};
pub use storage::{encode_storage, Fragment, StorageParams, StorageSystem};

pub use num_bigint::BigInt;
pub use num_complex::Complex;

pub type Gauss64 = GaussInt<i64>;
pub type GaussBig = GaussInt<BigInt>;
pub type Golden64 = GoldenElem<i64>;
pub type GoldenBig = GoldenElem<BigInt>;

pub type Complex32 = Complex<f32>;
pub type Complex64 = Complex<f64>;
pub type CMatrix32 = CMatrix<f32>;
pub type CMatrix64 = CMatrix<f64>;
pub type Codebook32 = Codebook<f32>;
pub type Codebook64 = Codebook<f64>;
pub type Simulator32 = Simulator<f32>;
pub type Simulator64 = Simulator<f64>;
