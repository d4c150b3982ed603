//! Ideal fluid: momentum one-forms modulo exact forms, and vorticity.

use crate::error::{Error, Result};
use crate::geomcalc::{divergence, is_exact_candidate, lie_derivative_form, Form, VectorField, VolumeForm};

fn require_divergence_free(x: &VectorField, mu: &VolumeForm) -> Result<()> {
    let div = divergence(x, mu)?;
    if div.is_zero() {
        Ok(())
    } else {
        Err(Error::NotDivergenceFree(div.to_string()))
    }
}

/// `∂Υ/∂t = −L_X Υ` for a divergence-free velocity.
pub fn fluid_rhs(upsilon: &Form, x: &VectorField, mu: &VolumeForm) -> Result<Form> {
    require_divergence_free(x, mu)?;
    Ok(lie_derivative_form(x, upsilon)?.neg())
}

/// `∂ω/∂t = −L_X ω`.
pub fn vorticity_rhs(omega: &Form, x: &VectorField, mu: &VolumeForm) -> Result<Form> {
    require_divergence_free(x, mu)?;
    Ok(lie_derivative_form(x, omega)?.neg())
}

/// Whether two one-forms represent the same class modulo exact forms.
pub fn same_class(a: &Form, b: &Form) -> Result<bool> {
    is_exact_candidate(&a.sub(b)?)
}
