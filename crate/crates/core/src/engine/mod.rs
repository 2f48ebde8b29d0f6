//! The Cantor-group scattering transform: base layer of exact cell
//! solutions, the butterfly up the tile pyramid, the quadratic direct
//! oracle and the linearized transform.

mod linear;
mod oracle;
mod pyramid;
mod step;

pub use linear::{chrestenson_in_place, digit_reverse, linear_transform};
pub use oracle::{direct_oracle, direct_oracle_grid, direct_oracle_on, grid_frequency};
pub use pyramid::{
    build_base_layer, build_window_base_layer, butterfly_step, butterfly_step_with, transform,
    transform_top, transform_top_window, TileLayer, TilePyramid,
};
pub use step::StepFunction;
