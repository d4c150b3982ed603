//! Lie–Poisson equations on one-form densities and their fluid, plasma and
//! contact instances.

pub mod contact;
pub mod fluid;
pub mod plasma;

use crate::error::{Error, Result};
use crate::geomcalc::{divergence, lie_derivative_form, Form, VectorField, VolumeForm};

pub use contact::ContactStructure;
pub use plasma::PlasmaSystem;

/// `α ⊗ dμ` with `α` a one-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentumDensity {
    alpha: Form,
    volume: VolumeForm,
}

impl MomentumDensity {
    pub fn new(alpha: Form, volume: VolumeForm) -> Result<Self> {
        alpha.chart().check_same(volume.chart())?;
        if alpha.degree() != 1 {
            return Err(Error::Degree {
                got: alpha.degree(),
                reason: "momentum density needs a one-form".into(),
            });
        }
        Ok(MomentumDensity { alpha, volume })
    }

    pub fn alpha(&self) -> &Form {
        &self.alpha
    }

    pub fn volume(&self) -> &VolumeForm {
        &self.volume
    }
}

/// `α̇ = −L_X α − (div_μ X) α`.
pub fn lie_poisson_rhs(x: &VectorField, m: &MomentumDensity) -> Result<Form> {
    let lie = lie_derivative_form(x, &m.alpha)?;
    let div = divergence(x, &m.volume)?;
    Ok(lie.add(&m.alpha.scale(&div))?.neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geomcalc::Chart;

    #[test]
    fn lie_poisson_examples() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let mu = VolumeForm::standard(&c);
        let m = MomentumDensity::new(Form::parse_one_form(&c, &["0", "x"]).unwrap(), mu).unwrap();
        let x = VectorField::parse(&c, &["1", "0"]).unwrap();
        assert_eq!(
            lie_poisson_rhs(&x, &m).unwrap(),
            Form::parse_one_form(&c, &["0", "-1"]).unwrap()
        );
        assert!(lie_poisson_rhs(&VectorField::zero(&c), &m).unwrap().is_zero());
    }
}
