//! Boolean functions on the hypercube and set families in the Johnson graph.

pub mod cube;
pub mod johnson;

pub use cube::{classify_degree2_small, multilinear_coefficients, multilinear_degree, CubeClass, CubeFunction};
pub use johnson::{
    groupwise_family, johnson_degree_test, johnson_equitable, johnson_example_84, relevant_coordinates, Example84,
    JohnsonVerdict, SetFamily,
};
