//! Spaces, sparse vectors, linear maps and lazily evaluated diagram paths.

mod map;
mod path;
mod space;
mod vector;

pub use map::{
    compose, compose_all, dimension_cap, identity, invert, left_unitor, left_unitor_inv,
    maps_equal, permutation, right_unitor, right_unitor_inv, set_dimension_cap, tensor_map,
    tensor_maps, transposition, Comparison, LinearMap, PartialLinearMap, Witness,
};
pub use path::{compare_paths, evaluate_path, DiagramPath, Stage};
pub use space::{tensor_space, tensor_spaces, Grade, GradingGroup, Label, Space};
pub use vector::Vector;

