//! The four simulated kinetic models, compiled to grid operators.

use std::fmt;
use std::str::FromStr;

use liftlab_core::geomcalc::{Chart, Form};
use liftlab_core::kinetic::contact::{
    contact_density, contact_density_rhs, contact_momentum_rhs, ContactStructure,
};
use liftlab_core::kinetic::PlasmaSystem;
use liftlab_core::Expr;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::grid::Grid;
use crate::plan::LinearPlan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    ContactMomentum,
    ContactDensity,
    VlasovMomentum,
    VlasovDensity,
}

impl Model {
    pub const ALL: [Model; 4] = [
        Model::ContactMomentum,
        Model::ContactDensity,
        Model::VlasovMomentum,
        Model::VlasovDensity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::ContactMomentum => "contact-momentum",
            Model::ContactDensity => "contact-density",
            Model::VlasovMomentum => "vlasov-momentum",
            Model::VlasovDensity => "vlasov-density",
        }
    }

    pub fn is_contact(self) -> bool {
        matches!(self, Model::ContactMomentum | Model::ContactDensity)
    }

    pub fn is_momentum(self) -> bool {
        matches!(self, Model::ContactMomentum | Model::VlasovMomentum)
    }

    pub fn components(self) -> usize {
        match self {
            Model::ContactMomentum => 3,
            Model::VlasovMomentum => 2,
            _ => 1,
        }
    }

    pub fn grid_dim(self) -> usize {
        if self.is_contact() {
            3
        } else {
            2
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| SimError::Config(format!("unknown model `{s}`")))
    }
}

/// Generating data of a model: the contact Hamiltonian `K` or a plasma system.
#[derive(Clone, Debug)]
pub enum Physics {
    Contact { cs: ContactStructure, k: Expr },
    Vlasov(PlasmaSystem),
}

impl Physics {
    pub fn chart(&self) -> &Chart {
        match self {
            Physics::Contact { cs, .. } => cs.chart(),
            Physics::Vlasov(sys) => sys.chart(),
        }
    }
}

/// A model with its evolution operator and, for momentum models, the
/// discrete momentum map to the density.
#[derive(Clone, Debug)]
pub struct Problem {
    model: Model,
    physics: Physics,
    grid: Grid,
    rhs: LinearPlan,
    density: Option<LinearPlan>,
}

impl Problem {
    pub fn new(model: Model, physics: Physics, n: usize) -> Result<Self> {
        let grid = Grid::new(model.grid_dim(), n)?;
        let chart = physics.chart().clone();
        let comps = model.components();
        let (rhs, density) = match (&physics, model) {
            (Physics::Contact { cs, k }, Model::ContactDensity) => (
                LinearPlan::compile(&chart, grid, 1, |u| Ok(vec![contact_density_rhs(&u[0], k, cs)?]))?,
                None,
            ),
            (Physics::Contact { cs, k }, Model::ContactMomentum) => {
                let as_form = |u: &[Expr]| Form::one_form(cs.chart(), u.to_vec());
                (
                    LinearPlan::compile(&chart, grid, comps, |u| {
                        contact_momentum_rhs(&as_form(u)?, k, cs)?.one_form_comps()
                    })?,
                    Some(LinearPlan::compile(&chart, grid, comps, |u| {
                        Ok(vec![contact_density(&as_form(u)?, cs)?])
                    })?),
                )
            }
            (Physics::Vlasov(sys), Model::VlasovDensity) => (
                LinearPlan::compile(&chart, grid, 1, |u| Ok(vec![sys.density_rhs(&u[0])]))?,
                None,
            ),
            (Physics::Vlasov(sys), Model::VlasovMomentum) => {
                if sys.n() != 1 {
                    return Err(SimError::Config(
                        "grid simulation supports one configuration dimension".into(),
                    ));
                }
                let as_form = |u: &[Expr]| sys.momentum(vec![u[0].clone()], vec![u[1].clone()]);
                (
                    LinearPlan::compile(&chart, grid, comps, |u| {
                        sys.momentum_rhs(&as_form(u)?)?.one_form_comps()
                    })?,
                    Some(LinearPlan::compile(&chart, grid, comps, |u| {
                        Ok(vec![sys.density(&as_form(u)?)?])
                    })?),
                )
            }
            _ => {
                return Err(SimError::Config(format!(
                    "model {model} does not match the supplied generating data"
                )))
            }
        };
        Ok(Problem { model, physics, grid, rhs, density })
    }

    pub fn contact(model: Model, k: Expr, n: usize) -> Result<Self> {
        Self::new(model, Physics::Contact { cs: ContactStructure::darboux(), k }, n)
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn physics(&self) -> &Physics {
        &self.physics
    }

    pub fn chart(&self) -> &Chart {
        self.physics.chart()
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn rhs(&self) -> &LinearPlan {
        &self.rhs
    }

    /// Density seen by diagnostics: the state itself for density models, the
    /// discrete momentum map otherwise.
    pub fn density_of(&self, state: &[f64]) -> Vec<f64> {
        match &self.density {
            Some(plan) => plan.apply_alloc(state),
            None => state.to_vec(),
        }
    }

    /// CFL bound `h / (4 max|velocity|)`, infinite for pure reaction terms.
    pub fn cfl_limit(&self) -> f64 {
        let v = self.rhs.max_speed();
        if v == 0.0 {
            f64::INFINITY
        } else {
            self.grid.h() / (4.0 * v)
        }
    }
}
