//! Example embeddings with exact coordinates.

pub mod octahedron;
pub mod scaffold;
pub mod tetra;
pub mod torus;
