//! Combinatorial engine for semi-equivelar maps on the sphere and the
//! projective plane.

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod map;
pub mod operators;
pub mod symmetry;
pub mod verify;
pub mod vtype;

pub use io::{parse_map, write_map, ParseError};
pub use map::{MapError, PolyhedralMap, Surface};
pub use vtype::{semi_equivelar_type, vertex_type_at, VTypeError, VertexType};
