//! Rooted planar maps with a dart-based rotation system, the edge rotation
//! and edge flip Markov chains, the Tutte and Cori–Vauquelin–Schaeffer
//! bijections, exact face-growth distributions, canonical flip paths with
//! congestion accounting, and exact spectral gap / mixing computations on
//! enumerated state spaces.

pub mod cvs;
pub mod dynamics;
pub mod enumerate;
pub mod error;
pub mod growth;
pub mod map;
pub mod paths;
pub mod spectra;
pub mod trees;
pub mod tutte;
pub mod verify;

pub use error::{MapError, Result};
pub use map::{
    build_map, decode_map, decode_map_json, encode_map, encode_map_json, loop_map, m0,
    single_edge, DartId, MapCode, Quadrangulation, RootedMap,
};
