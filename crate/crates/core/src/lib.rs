//! Interval exchange transformations, planar piecewise isometries, and tools
//! for deciding whether an IET embeds into a PWI.
//!
//! Indices of intervals and atoms are zero-based throughout the API.
//! Permutations keep one-based letters, and serialized itineraries (CSV atom
//! column, CLI output) are one-based.

pub mod connecting;
pub mod constants;
pub mod embedding;
pub mod error;
pub mod experiments;
pub mod iet;
pub mod io;
pub mod isometry;
pub mod perm;
pub mod pwi;
pub mod region;

pub use num_complex::Complex64;

pub use connecting::{ConnectingGraph, ConnectingSequence, ParametricCoefficients};
pub use embedding::{ErgodicEstimate, TangentState, TrivialEmbedding};
pub use error::{Error, Result};
pub use experiments::{Case, PaperSystem, Report};
pub use iet::{Direction, Iet, Itinerary, RauzyStep, RauzyType, ReturnConvention};
pub use isometry::Isometry;
pub use perm::Permutation;
pub use pwi::{InducedPwi, OrbitRecord, Pwi};
pub use region::{ConvexRegion, HalfPlane, Sense};
