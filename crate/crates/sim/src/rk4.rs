//! Classical four-stage Runge–Kutta for `u̇ = P u` with a fixed step.

use crate::plan::LinearPlan;

pub struct Rk4<'a> {
    plan: &'a LinearPlan,
    k: [Vec<f64>; 4],
    stage: Vec<f64>,
    scratch: Vec<f64>,
}

impl<'a> Rk4<'a> {
    pub fn new(plan: &'a LinearPlan) -> Self {
        assert_eq!(plan.inputs(), plan.outputs(), "evolution operator must be square");
        let len = plan.inputs() * plan.grid().len();
        Rk4 {
            plan,
            k: std::array::from_fn(|_| vec![0.0; len]),
            stage: vec![0.0; len],
            scratch: vec![0.0; plan.scratch_len()],
        }
    }

    pub fn step(&mut self, u: &mut [f64], dt: f64) {
        let [k1, k2, k3, k4] = &mut self.k;
        self.plan.apply(u, k1, &mut self.scratch);
        axpy(&mut self.stage, u, 0.5 * dt, k1);
        self.plan.apply(&self.stage, k2, &mut self.scratch);
        axpy(&mut self.stage, u, 0.5 * dt, k2);
        self.plan.apply(&self.stage, k3, &mut self.scratch);
        axpy(&mut self.stage, u, dt, k3);
        self.plan.apply(&self.stage, k4, &mut self.scratch);
        let w = dt / 6.0;
        for i in 0..u.len() {
            u[i] += w * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
        }
    }

    /// Takes `steps` steps; returns the index of the first step that produced
    /// a non-finite value.
    pub fn advance(&mut self, u: &mut [f64], dt: f64, steps: usize) -> Result<(), usize> {
        for s in 1..=steps {
            self.step(u, dt);
            if !u.iter().all(|v| v.is_finite()) {
                return Err(s);
            }
        }
        Ok(())
    }
}

fn axpy(out: &mut [f64], u: &[f64], a: f64, k: &[f64]) {
    out.iter_mut()
        .zip(u.iter().zip(k))
        .for_each(|(o, (u, k))| *o = u + a * k);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use liftlab_core::geomcalc::Chart;
    use liftlab_core::Expr;

    fn scalar_plan(rate: i64) -> LinearPlan {
        let chart = Chart::new(&["x"]).unwrap();
        LinearPlan::compile(&chart, Grid::new(1, 8).unwrap(), 1, |u| {
            Ok(vec![&Expr::int(rate) * &u[0]])
        })
        .unwrap()
    }

    #[test]
    fn one_step_matches_exponential() {
        let plan = scalar_plan(3);
        let mut rk = Rk4::new(&plan);
        for dt in [1e-2, 5e-3] {
            let mut u = vec![1.0; 8];
            rk.step(&mut u, dt);
            let err = (u[0] - (3.0 * dt).exp()).abs();
            // local error 3^5 dt^5 / 120
            assert!(err < 3.0f64.powi(5) * dt.powi(5) / 100.0, "{err}");
        }
    }

    #[test]
    fn zero_rate_keeps_state() {
        let plan = scalar_plan(0);
        let mut u: Vec<f64> = (0..8).map(|i| i as f64).collect();
        let before = u.clone();
        Rk4::new(&plan).advance(&mut u, 0.1, 5).unwrap();
        assert_eq!(u, before);
    }

    #[test]
    fn reports_blow_up() {
        let plan = scalar_plan(1);
        let mut u = vec![f64::MAX; 8];
        assert_eq!(Rk4::new(&plan).advance(&mut u, 1.0, 3), Err(1));
    }
}
