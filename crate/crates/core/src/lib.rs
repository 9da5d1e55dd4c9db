//! Entanglement-assisted quantum convolutional and serial turbo codes.
//!
//! Encoders are binary symplectic seed transformations with typed input legs.
//! The crate builds their state diagrams, checks catastrophicity and
//! recursiveness, counts distance spectra, concatenates them into serial
//! turbo codes and decodes those iteratively on depolarizing channels.

pub mod channel;
pub mod data;
pub mod decoder;
pub mod encoder;
pub mod error;
pub mod spectrum;
pub mod state_diagram;
pub mod symplectic;
pub mod turbo;

pub use encoder::{ConvolutionalEncoder, FrameLegs, FrameSyndrome, LogicalLabel, ResourceSignature};
pub use error::{Error, Result};
pub use symplectic::{Pauli, PauliOperator, SymplecticMatrix};
