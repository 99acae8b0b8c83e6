//! Reachability in two-dimensional vector addition systems with states.
//!
//! The crate is organised bottom-up:
//!
//! * [`vector`], [`word`], [`scheme`], [`vass`] and [`instance`] hold the
//!   domain values (plane vectors, counter configurations, words and their
//!   runs, linear path schemes, automata) and the instance file format;
//! * [`cone`] decides membership in planar rational cones and builds the
//!   small witnesses (zero combinations, outermost pairs, separating and
//!   excluding vectors) that the shortening arguments rely on;
//! * [`path`] cuts repeated cycles out of paths of simple linear path
//!   schemes, producing shortening certificates that are re-checked by
//!   replaying the reduced word;
//! * [`slps`] splits linear path schemes into simple ones and decides
//!   reachability for them with an explicit norm cap;
//! * [`decider`] answers reachability queries on general 2-VASS by capped
//!   breadth-first search;
//! * [`certificate`] reads and writes the one-line result formats.
//!
//! Geometry and word semantics are generic over [`Scalar`]; the aliases below
//! fix the scalar to `i64`, which is what the search procedures use.

pub mod certificate;
pub mod cone;
pub mod decider;
pub mod error;
pub mod instance;
pub mod path;
pub mod scalar;
pub mod scheme;
pub mod slps;
pub mod vass;
pub mod vector;
pub mod word;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use scheme::{Lps, SchemePath, Slps};
pub use vass::{Edge, Vass};
pub use vector::{Point, Vector};
pub use word::{Run, Word};

pub type PlaneVector = Vector<i64>;
pub type Configuration = Point<i64>;
pub type VectorSet = cone::VectorSet<i64>;

pub type WidePlaneVector = Vector<i128>;
pub type BigPlaneVector = Vector<num_bigint::BigInt>;
pub type BigVectorSet = cone::VectorSet<num_bigint::BigInt>;
