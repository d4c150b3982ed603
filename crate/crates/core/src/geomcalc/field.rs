use std::fmt;

use super::Chart;
use crate::error::{Error, Result};
use crate::symexpr::Expr;

/// `X = X^a ∂/∂x^a` on a chart.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    comps: Vec<Expr>,
}

impl VectorField {
    pub fn new(chart: &Chart, comps: Vec<Expr>) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::ComponentCount {
                expected: chart.dim(),
                got: comps.len(),
            });
        }
        if let Some(e) = comps.iter().find(|e| !chart.owns(e)) {
            let stray: Vec<_> = e
                .vars()
                .into_iter()
                .filter(|v| chart.index_of(v).is_none())
                .map(|v| v.name().to_string())
                .collect();
            return Err(Error::ChartMismatch(format!(
                "component `{e}` uses {} outside {chart}",
                stray.join(", ")
            )));
        }
        Ok(VectorField {
            chart: chart.clone(),
            comps: comps.iter().map(Expr::normalized).collect(),
        })
    }

    /// Parses one expression per coordinate.
    pub fn parse(chart: &Chart, comps: &[&str]) -> Result<Self> {
        let comps = comps
            .iter()
            .map(|s| chart.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(chart, comps)
    }

    pub fn zero(chart: &Chart) -> Self {
        VectorField {
            chart: chart.clone(),
            comps: vec![Expr::zero(); chart.dim()],
        }
    }

    /// The coordinate field `∂/∂x^i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut x = Self::zero(chart);
        x.comps[i] = Expr::one();
        x
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Expr] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Expr {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<Expr> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Expr::is_zero)
    }

    /// Directional derivative `X(f) = X^a ∂f/∂x^a`.
    pub fn apply(&self, f: &Expr) -> Expr {
        self.comps
            .iter()
            .zip(self.chart.vars())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * f.partial(v))
            .sum()
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Self {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Expr, &Expr) -> Expr) -> Result<Self> {
        self.chart.check_same(&other.chart)?;
        Ok(VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    pub fn scale(&self, f: &Expr) -> Self {
        self.map(|a| a * f)
    }

    /// Canonical form of every component; numeric-only components are kept as is.
    pub fn canonical(&self) -> Self {
        self.map(Expr::normalized)
    }

    /// Jacobi–Lie bracket `[X,Y]^a = X(Y^a) − Y(X^a)`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        jacobi_lie_bracket(self, other)
    }
}

pub fn jacobi_lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    x.chart.check_same(&y.chart)?;
    let comps = (0..x.dim())
        .map(|a| x.apply(&y.comps[a]) - y.apply(&x.comps[a]))
        .collect();
    Ok(VectorField {
        chart: x.chart.clone(),
        comps,
    })
}

pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, String)>,
) -> fmt::Result {
    let mut any = false;
    for (coef, basis) in terms {
        if any {
            f.write_str(" + ")?;
        }
        any = true;
        write!(f, "({coef}) * {basis}")?;
    }
    if !any {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.comps
                .iter()
                .zip(self.chart.vars())
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, v)| (c.to_string(), format!("d/d{v}"))),
        )
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField[{self}]")
    }
}
