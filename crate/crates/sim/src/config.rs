//! Run configuration as read from `run.json` or assembled from CLI flags.

use std::path::{Path, PathBuf};

use liftlab_core::geomcalc::Chart;
use liftlab_core::kinetic::{ContactStructure, PlasmaSystem};
use liftlab_core::symexpr::CompiledExpr;
use liftlab_core::Expr;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::model::{Model, Physics};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub model: Model,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(default)]
    pub params: Params,
    pub init: Vec<String>,
    pub n: usize,
    pub dt: f64,
    pub steps: usize,
    #[serde(default = "default_cadence")]
    pub cadence: usize,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    #[serde(default = "default_diag")]
    pub diag: PathBuf,
    #[serde(default)]
    pub allow_aperiodic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn default_cadence() -> usize {
    1
}

fn default_out() -> PathBuf {
    "traj.csv".into()
}

fn default_diag() -> PathBuf {
    "diag.csv".into()
}

fn rational(field: &str, text: Option<&str>) -> Result<BigRational> {
    let Some(text) = text else {
        return Ok(BigRational::from_integer(1.into()));
    };
    let value = Chart::new(&["q"])?
        .parse(text)
        .ok()
        .and_then(|e| e.as_constant())
        .ok_or_else(|| SimError::Config(format!("params.{field} = `{text}` is not a rational constant")))?;
    Ok(value)
}

impl SimConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| SimError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| SimError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks everything that does not need symbolic work.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(SimError::Config(m));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if self.steps == 0 {
            return bad("steps must be at least 1".into());
        }
        if self.cadence == 0 {
            return bad("cadence must be at least 1".into());
        }
        if self.init.len() != self.model.components() {
            return bad(format!(
                "model {} needs {} initial expressions, got {}",
                self.model,
                self.model.components(),
                self.init.len()
            ));
        }
        match (self.model.is_contact(), &self.k, &self.h) {
            (true, Some(_), None) => Ok(()),
            (true, _, _) => bad(format!("model {} needs `K` and no `h`", self.model)),
            (false, None, _) if self.h.is_some() || self.params.phi.is_some() => Ok(()),
            (false, _, _) => bad(format!("model {} needs `h` or params.phi and no `K`", self.model)),
        }
    }

    /// Generating data parsed from the expression fields.
    pub fn physics(&self) -> Result<Physics> {
        self.validate()?;
        if self.model.is_contact() {
            let cs = ContactStructure::darboux();
            let k = cs.parse(self.k.as_deref().unwrap_or_default())?;
            return Ok(Physics::Contact { cs, k });
        }
        let m = rational("m", self.params.m.as_deref())?;
        let e = rational("e", self.params.e.as_deref())?;
        let q = Chart::new(&["q"])?;
        let phase = Chart::new(&["q", "p"])?;
        let phi = match (&self.h, &self.params.phi) {
            (Some(h), given) => {
                let h = phase.parse(h)?;
                let p0 = [(phase.var(1).clone(), Expr::zero())].into_iter().collect();
                if e == BigRational::from_integer(0.into()) {
                    return Err(SimError::Config("charge e = 0 leaves φ undetermined by h".into()));
                }
                let phi = h.substitute(&p0)?.scale(&e.recip());
                if phi.depends_on(phase.var(1)) {
                    return Err(SimError::Config(format!("h(q, 0) = {phi} depends on p")));
                }
                let sys = PlasmaSystem::new(1, m.clone(), e.clone(), phi.clone())?;
                check_same_function(&h, &sys.hamiltonian(), &phase)?;
                if let Some(given) = given {
                    check_same_function(&q.parse(given)?, &phi, &q)?;
                }
                phi
            }
            (None, Some(phi)) => q.parse(phi)?,
            (None, None) => unreachable!("validated"),
        };
        Ok(Physics::Vlasov(PlasmaSystem::new(1, m, e, phi)?))
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.out.with_extension("manifest.json")
    }
}

/// Compares two expressions at a fixed set of sample points.
fn check_same_function(a: &Expr, b: &Expr, chart: &Chart) -> Result<()> {
    let (ca, cb) = (CompiledExpr::new(a, chart.vars())?, CompiledExpr::new(b, chart.vars())?);
    for k in 0..7 {
        let p: Vec<f64> = (0..chart.dim()).map(|d| 0.37 + 0.91 * k as f64 + 1.3 * d as f64).collect();
        let (va, vb) = (ca.eval(&p)?, cb.eval(&p)?);
        if (va - vb).abs() > 1e-9 * (1.0 + va.abs()) {
            return Err(SimError::Config(format!(
                "h = {a} is not of the form p^2/2m + e φ(q) (compared with {b})"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(model: &str, extra: &str, init: &str) -> String {
        format!(r#"{{"model": "{model}", {extra} "init": [{init}], "n": 16, "dt": 0.001, "steps": 10}}"#)
    }

    #[test]
    fn parses_and_validates() {
        let c = SimConfig::from_json(&base("contact-density", r#""K": "z","#, r#""2 + sin(x)""#)).unwrap();
        assert_eq!(c.model, Model::ContactDensity);
        assert_eq!(c.cadence, 1);
        assert!(c.physics().is_ok());

        let mut bad = c.clone();
        bad.steps = 0;
        assert!(matches!(bad.validate(), Err(SimError::Config(_))));
        let mut bad = c.clone();
        bad.dt = -1.0;
        assert!(bad.validate().is_err());
        let wrong = base("contact-momentum", r#""K": "z","#, r#""1""#);
        assert!(SimConfig::from_json(&wrong).unwrap().validate().is_err());
        assert!(SimConfig::from_json(&base("fluid", "", "")).is_err());
    }

    #[test]
    fn plasma_potential_from_h() {
        let c = SimConfig::from_json(&base(
            "vlasov-density",
            r#""h": "p^2/2 + cos(q)", "params": {"m": "1", "e": "1", "phi": "cos(q)"},"#,
            r#""1""#,
        ))
        .unwrap();
        let Physics::Vlasov(sys) = c.physics().unwrap() else { panic!() };
        assert_eq!(sys.phi().to_string(), "cos(q)");

        let mismatch = SimConfig::from_json(&base(
            "vlasov-density",
            r#""h": "p^2 + cos(q)","#,
            r#""1""#,
        ))
        .unwrap();
        assert!(mismatch.physics().is_err());
    }

    #[test]
    fn round_trips_json() {
        let c = SimConfig::from_json(&base("vlasov-momentum", r#""h": "p^2/2","#, r#""0", "sin(q)""#)).unwrap();
        assert_eq!(SimConfig::from_json(&c.to_json()).unwrap(), c);
    }
}
