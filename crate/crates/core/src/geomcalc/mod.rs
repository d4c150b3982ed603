//! Exterior calculus in a single coordinate chart.

mod chart;
pub(crate) mod field;
mod form;

pub use chart::{Chart, MAX_DIM};
pub use field::{jacobi_lie_bracket, VectorField};
pub use form::{
    blade, blade_indices, divergence, exterior_derivative, interior_product, is_exact_candidate,
    lie_derivative_form, pointwise_pairing, wedge, Blade, Form, VolumeForm,
};
