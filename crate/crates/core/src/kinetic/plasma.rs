//! Vlasov plasma on `T*Q` with a prescribed potential.

use num_rational::BigRational;

use super::{lie_poisson_rhs, MomentumDensity};
use crate::canlift::{hamiltonian_vector_field, CotangentChart};
use crate::error::{Error, Result};
use crate::geomcalc::{Chart, Form, VectorField, VolumeForm};
use crate::symexpr::Expr;

/// Phase space `(q^i, p_i)` with `h = δ^{ij} p_i p_j / 2m + e φ(q)`.
#[derive(Clone, Debug)]
pub struct PlasmaSystem {
    phase: CotangentChart,
    mass: BigRational,
    charge: BigRational,
    phi: Expr,
}

impl PlasmaSystem {
    /// Configuration dimension `n` (1 or 2). Coordinates are `q, p` for
    /// `n = 1`, otherwise `q1, q2, p1, p2`.
    pub fn new(n: usize, mass: BigRational, charge: BigRational, phi: Expr) -> Result<Self> {
        let (qs, ps): (Vec<String>, Vec<String>) = match n {
            1 => (vec!["q".into()], vec!["p".into()]),
            2 => (
                vec!["q1".into(), "q2".into()],
                vec!["p1".into(), "p2".into()],
            ),
            _ => {
                return Err(Error::InvalidChart(format!(
                    "plasma configuration dimension {n} not in 1..=2"
                )))
            }
        };
        if num_traits::Zero::is_zero(&mass) {
            return Err(Error::DivisionByZero);
        }
        let q_refs: Vec<&str> = qs.iter().map(String::as_str).collect();
        let p_refs: Vec<&str> = ps.iter().map(String::as_str).collect();
        let phase = CotangentChart::new(&Chart::new(&q_refs)?, &p_refs)?;
        if !phase.base().owns(&phi) {
            return Err(Error::FiberDependent(phi.to_string()));
        }
        Ok(PlasmaSystem {
            phase,
            mass,
            charge,
            phi: phi.normalized(),
        })
    }

    /// One-dimensional system with `φ` parsed over `q`.
    pub fn one_dim(mass: BigRational, charge: BigRational, phi: &str) -> Result<Self> {
        let q = Chart::new(&["q"])?;
        let phi = q.parse(phi)?;
        Self::new(1, mass, charge, phi)
    }

    pub fn n(&self) -> usize {
        self.phase.base_dim()
    }

    pub fn phase(&self) -> &CotangentChart {
        &self.phase
    }

    /// The chart `(q, p)` on which momenta and densities live.
    pub fn chart(&self) -> &Chart {
        self.phase.total()
    }

    pub fn volume(&self) -> VolumeForm {
        VolumeForm::standard(self.chart())
    }

    pub fn mass(&self) -> &BigRational {
        &self.mass
    }

    pub fn charge(&self) -> &BigRational {
        &self.charge
    }

    pub fn phi(&self) -> &Expr {
        &self.phi
    }

    fn q(&self, i: usize) -> &crate::symexpr::VarId {
        self.phase.base().var(i)
    }

    fn p(&self, i: usize) -> &crate::symexpr::VarId {
        self.phase.fiber_var(i)
    }

    pub fn hamiltonian(&self) -> Expr {
        let two_m = Expr::rational(&(&self.mass * BigRational::from_integer(2.into())));
        let kinetic: Expr = (0..self.n())
            .map(|i| {
                let p = Expr::var(self.p(i));
                &p * &p
            })
            .sum();
        &(&kinetic / &two_m) + &self.phi.scale(&self.charge)
    }

    /// `X_h = (1/m) δ^{ij} p_i ∂/∂q^j − e ∂φ/∂q^i ∂/∂p_i`.
    pub fn hamiltonian_field(&self) -> VectorField {
        hamiltonian_vector_field(&self.hamiltonian(), &self.phase).expect("h lives on the phase chart")
    }

    /// `Π_id = Π_i dq^i + Π^i dp_i`.
    pub fn momentum(&self, lower: Vec<Expr>, upper: Vec<Expr>) -> Result<Form> {
        if lower.len() != self.n() || upper.len() != self.n() {
            return Err(Error::ComponentCount {
                expected: 2 * self.n(),
                got: lower.len() + upper.len(),
            });
        }
        Form::one_form(self.chart(), lower.into_iter().chain(upper).collect())
    }

    fn split(&self, pi: &Form) -> Result<(Vec<Expr>, Vec<Expr>)> {
        pi.chart().check_same(self.chart())?;
        let mut lower = pi.one_form_comps()?;
        let upper = lower.split_off(self.n());
        Ok((lower, upper))
    }

    /// `f = ∂Π^i/∂q^i − ∂Π_i/∂p_i`.
    pub fn density(&self, pi: &Form) -> Result<Expr> {
        let (lower, upper) = self.split(pi)?;
        Ok((0..self.n())
            .map(|i| &upper[i].partial(self.q(i)) - &lower[i].partial(self.p(i)))
            .sum())
    }

    pub fn dual_ok(&self, pi: &Form) -> Result<bool> {
        Ok(!self.density(pi)?.is_zero())
    }

    /// `Π̇_i = −X_h(Π_i) + e ∂²φ/∂q^i∂q^j Π^j`, `Π̇^i = −X_h(Π^i) − (1/m) δ^{ij} Π_j`,
    /// cross-checked against the coadjoint form when everything is rational.
    pub fn momentum_rhs(&self, pi: &Form) -> Result<Form> {
        let (lower, upper) = self.split(pi)?;
        let xh = self.hamiltonian_field();
        let e = Expr::rational(&self.charge);
        let inv_m = &Expr::one() / &Expr::rational(&self.mass);
        let n = self.n();
        let mut rate = Vec::with_capacity(2 * n);
        for i in 0..n {
            let force: Expr = (0..n)
                .map(|j| &self.phi.partial(self.q(i)).partial(self.q(j)) * &upper[j])
                .sum();
            rate.push(&(-xh.apply(&lower[i])) + &(&e * &force));
        }
        for i in 0..n {
            rate.push(&(-xh.apply(&upper[i])) - &(&inv_m * &lower[i]));
        }
        let out = Form::one_form(self.chart(), rate)?;
        if pi.terms().all(|(_, c)| c.is_rational()) && self.phi.is_rational() {
            let lp = lie_poisson_rhs(&xh, &MomentumDensity::new(pi.clone(), self.volume())?)?;
            if lp != out {
                return Err(Error::Consistency(format!(
                    "Vlasov momentum equation {out} differs from the coadjoint form {lp}"
                )));
            }
        }
        Ok(out)
    }

    /// `ḟ = −(δ^{ij} p_i/m) ∂f/∂q^j + e (∂φ/∂q^i) ∂f/∂p_i`.
    pub fn density_rhs(&self, f: &Expr) -> Expr {
        let e = Expr::rational(&self.charge);
        let m = Expr::rational(&self.mass);
        (0..self.n())
            .map(|i| {
                let stream = &(&Expr::var(self.p(i)) / &m) * &f.partial(self.q(i));
                let force = &(&e * &self.phi.partial(self.q(i))) * &f.partial(self.p(i));
                &force - &stream
            })
            .sum()
    }

    /// Cotangent chart over phase space with fiber `(Pi_q.., Pi_p..)`, where
    /// the lift of `X_h` lives.
    pub fn lift_chart(&self) -> Result<CotangentChart> {
        let names: Vec<String> = self.chart().vars().iter().map(|v| format!("Pi_{v}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        CotangentChart::new(self.chart(), &refs)
    }
}

pub fn plasma_density(pi: &Form, sys: &PlasmaSystem) -> Result<Expr> {
    sys.density(pi)
}

pub fn plasma_dual_ok(pi: &Form, sys: &PlasmaSystem) -> Result<bool> {
    sys.dual_ok(pi)
}

pub fn vlasov_momentum_rhs(pi: &Form, sys: &PlasmaSystem) -> Result<Form> {
    sys.momentum_rhs(pi)
}

pub fn vlasov_density_rhs(f: &Expr, sys: &PlasmaSystem) -> Expr {
    sys.density_rhs(f)
}
