//! Pointwise evaluation plans for first-order linear differential operators
//! produced symbolically.
//!
//! The operator is recovered by probing: feeding `e_i` gives the zeroth-order
//! coefficients, feeding `e_i x^b` gives them plus the coefficient of `∂_b u_i`.

use liftlab_core::geomcalc::Chart;
use liftlab_core::symexpr::CompiledExpr;
use liftlab_core::Expr;

use crate::error::{Result, SimError};
use crate::grid::{derivative_into, Grid};

#[derive(Clone, Debug)]
enum Coef {
    Const(f64),
    Field(Vec<f64>),
}

#[derive(Clone, Debug)]
struct Term {
    out: usize,
    input: usize,
    /// Slot in the derivative scratch, `None` for the zeroth-order term.
    deriv: Option<usize>,
    coef: Coef,
}

/// One symbolic coefficient: `out += coef · ∂_axis u_input` (or `· u_input`).
#[derive(Clone, Debug)]
pub struct SymbolicTerm {
    pub out: usize,
    pub input: usize,
    pub axis: Option<usize>,
    pub coef: Expr,
}

#[derive(Clone, Debug)]
pub struct LinearPlan {
    grid: Grid,
    inputs: usize,
    outputs: usize,
    terms: Vec<Term>,
    derivs: Vec<(usize, usize)>,
    symbolic: Vec<SymbolicTerm>,
}

/// Samples `e` at every grid node, chart variable `a` taken along axis `a`.
pub fn sample(e: &Expr, chart: &Chart, grid: Grid) -> Result<Vec<f64>> {
    let code = CompiledExpr::new(e, chart.vars())?;
    if let Some(c) = code.as_constant() {
        return Ok(vec![c; grid.len()]);
    }
    let dim = grid.dim();
    (0..grid.len())
        .map(|i| {
            code.eval(&grid.coords(i)[..dim])
                .map_err(|source| SimError::Node { node: i, source })
        })
        .collect()
}

/// Samples `e` on the grid after checking that it takes equal values on
/// opposite faces. With `allow_aperiodic` a failed check is returned as a
/// warning instead of an error.
pub fn discretize(
    e: &Expr,
    chart: &Chart,
    grid: Grid,
    allow_aperiodic: bool,
) -> Result<(Vec<f64>, Option<String>)> {
    let values = sample(e, chart, grid)?;
    let code = CompiledExpr::new(e, chart.vars())?;
    let dim = grid.dim();
    let scale = values.iter().fold(1.0, |m: f64, v| m.max(v.abs()));
    for axis in 0..dim {
        let stride = grid.stride(axis);
        for (i, v) in values.iter().enumerate() {
            if !(i / stride).is_multiple_of(grid.n()) {
                continue;
            }
            let mut p = grid.coords(i);
            p[axis] = std::f64::consts::TAU;
            let w = code
                .eval(&p[..dim])
                .map_err(|source| SimError::Node { node: i, source })?;
            if (w - v).abs() > 1e-9 * scale {
                if allow_aperiodic {
                    return Ok((
                        values,
                        Some(format!("`{e}` is not periodic along axis {axis}")),
                    ));
                }
                return Err(SimError::Aperiodic { expr: e.to_string(), axis });
            }
        }
    }
    Ok((values, None))
}

impl LinearPlan {
    pub fn compile(
        chart: &Chart,
        grid: Grid,
        inputs: usize,
        op: impl Fn(&[Expr]) -> liftlab_core::Result<Vec<Expr>>,
    ) -> Result<Self> {
        if chart.dim() != grid.dim() {
            return Err(SimError::Config(format!(
                "chart {chart} does not match a {}-dimensional grid",
                grid.dim()
            )));
        }
        let unit = |i: usize, value: Expr| -> Vec<Expr> {
            (0..inputs).map(|j| if j == i { value.clone() } else { Expr::zero() }).collect()
        };
        let zero_out = op(&vec![Expr::zero(); inputs])?;
        let outputs = zero_out.len();
        if zero_out.iter().any(|e| !e.is_zero()) {
            return Err(SimError::Config("operator is not linear: nonzero image of 0".into()));
        }
        let mut symbolic = Vec::new();
        for i in 0..inputs {
            let c0 = op(&unit(i, Expr::one()))?;
            for (r, c) in c0.iter().enumerate() {
                if !c.is_zero() {
                    symbolic.push(SymbolicTerm { out: r, input: i, axis: None, coef: c.clone() });
                }
            }
            for b in 0..chart.dim() {
                let xb = Expr::var(chart.var(b));
                let probe = op(&unit(i, xb.clone()))?;
                for (r, p) in probe.iter().enumerate() {
                    let c = (p - &(&c0[r] * &xb)).normalized();
                    if !c.is_zero() {
                        symbolic.push(SymbolicTerm { out: r, input: i, axis: Some(b), coef: c });
                    }
                }
            }
        }
        let mut derivs = Vec::new();
        let mut terms = Vec::with_capacity(symbolic.len());
        for s in &symbolic {
            let values = sample(&s.coef, chart, grid)?;
            let coef = if values.iter().all(|v| *v == values[0]) {
                Coef::Const(values[0])
            } else {
                Coef::Field(values)
            };
            let deriv = s.axis.map(|b| {
                let key = (s.input, b);
                derivs.iter().position(|d| *d == key).unwrap_or_else(|| {
                    derivs.push(key);
                    derivs.len() - 1
                })
            });
            terms.push(Term { out: s.out, input: s.input, deriv, coef });
        }
        Ok(LinearPlan { grid, inputs, outputs, terms, derivs, symbolic })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn symbolic(&self) -> &[SymbolicTerm] {
        &self.symbolic
    }

    /// Largest `|coefficient|` over the grid among first-order terms.
    pub fn max_speed(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.deriv.is_some())
            .map(|t| match &t.coef {
                Coef::Const(c) => c.abs(),
                Coef::Field(v) => v.iter().fold(0.0, |m, c| f64::max(m, c.abs())),
            })
            .fold(0.0, f64::max)
    }

    pub fn scratch_len(&self) -> usize {
        self.derivs.len() * self.grid.len()
    }

    /// `out = P(state)`; `scratch` must hold [`scratch_len`](Self::scratch_len) values.
    pub fn apply(&self, state: &[f64], out: &mut [f64], scratch: &mut [f64]) {
        let len = self.grid.len();
        debug_assert_eq!(state.len(), self.inputs * len);
        debug_assert_eq!(out.len(), self.outputs * len);
        for (k, &(i, b)) in self.derivs.iter().enumerate() {
            derivative_into(self.grid, &state[i * len..(i + 1) * len], b, &mut scratch[k * len..(k + 1) * len]);
        }
        out.fill(0.0);
        for t in &self.terms {
            let src = match t.deriv {
                Some(k) => &scratch[k * len..(k + 1) * len],
                None => &state[t.input * len..(t.input + 1) * len],
            };
            let dst = &mut out[t.out * len..(t.out + 1) * len];
            match &t.coef {
                Coef::Const(c) => dst.iter_mut().zip(src).for_each(|(d, s)| *d += c * s),
                Coef::Field(cs) => dst
                    .iter_mut()
                    .zip(src)
                    .zip(cs)
                    .for_each(|((d, s), c)| *d += c * s),
            }
        }
    }

    pub fn apply_alloc(&self, state: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.outputs * self.grid.len()];
        let mut scratch = vec![0.0; self.scratch_len()];
        self.apply(state, &mut out, &mut scratch);
        out
    }
}
