use std::collections::BTreeMap;
use std::fmt;

use super::{field::write_terms, Chart, VectorField};
use crate::error::{Error, Result};
use crate::symexpr::Expr;

/// Increasing multi-index `i1 < ... < ik` stored as a bit set.
pub type Blade = u16;

pub fn blade(indices: &[usize]) -> Blade {
    indices.iter().fold(0, |b, &i| b | (1 << i))
}

pub fn blade_indices(b: Blade) -> impl Iterator<Item = usize> {
    (0..16).filter(move |i| b & (1 << i) != 0)
}

/// Sign of `dx^A ∧ dx^B` relative to the sorted blade `A | B`.
fn wedge_sign(a: Blade, b: Blade) -> i64 {
    let mut swaps = 0u32;
    for j in blade_indices(b) {
        // every index of `a` above `j` must move past it
        swaps += (a >> (j + 1)).count_ones();
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A differential k-form `Σ_I ω_I dx^I` over increasing multi-indices.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    chart: Chart,
    degree: usize,
    coeffs: BTreeMap<Blade, Expr>,
}

impl Form {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        assert!(degree <= chart.dim(), "degree exceeds chart dimension");
        Form {
            chart: chart.clone(),
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(chart: &Chart, f: Expr) -> Result<Self> {
        Self::from_terms(chart, 0, vec![(vec![], f)])
    }

    /// `α = α_a dx^a`.
    pub fn one_form(chart: &Chart, comps: Vec<Expr>) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::ComponentCount {
                expected: chart.dim(),
                got: comps.len(),
            });
        }
        let terms = comps.into_iter().enumerate().map(|(a, c)| (vec![a], c)).collect();
        Self::from_terms(chart, 1, terms)
    }

    pub fn parse_one_form(chart: &Chart, comps: &[&str]) -> Result<Self> {
        let comps = comps
            .iter()
            .map(|s| chart.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::one_form(chart, comps)
    }

    /// `dx^i1 ∧ ... ∧ dx^ik`.
    pub fn basis(chart: &Chart, indices: &[usize]) -> Result<Self> {
        Self::from_terms(chart, indices.len(), vec![(indices.to_vec(), Expr::one())])
    }

    /// Builds a form from `(index tuple, coefficient)` pairs; tuples need not
    /// be sorted and are antisymmetrized.
    pub fn from_terms(chart: &Chart, degree: usize, terms: Vec<(Vec<usize>, Expr)>) -> Result<Self> {
        if degree > chart.dim() {
            return Err(Error::Degree {
                got: degree,
                reason: format!("exceeds chart dimension {}", chart.dim()),
            });
        }
        let mut out = Form::zero(chart, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::Degree {
                    got: idx.len(),
                    reason: format!("term in a {degree}-form"),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= chart.dim()) {
                return Err(Error::ChartMismatch(format!("index {bad} outside {chart}")));
            }
            if !chart.owns(&c) {
                return Err(Error::ChartMismatch(format!("coefficient `{c}` outside {chart}")));
            }
            // sort by insertion, tracking the permutation sign
            let mut idx = idx;
            let mut sign = 1;
            for i in 1..idx.len() {
                let mut j = i;
                while j > 0 && idx[j - 1] > idx[j] {
                    idx.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
            }
            if idx.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let c = if sign < 0 { -c } else { c };
            out.accumulate(blade(&idx), c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, b: Blade, c: Expr) {
        if c.is_zero() {
            return;
        }
        let next = match self.coeffs.remove(&b) {
            Some(old) => &old + &c,
            None => c.normalized(),
        };
        if !next.is_zero() {
            self.coeffs.insert(b, next);
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the sorted blade.
    pub fn coeff(&self, b: Blade) -> Expr {
        self.coeffs.get(&b).cloned().unwrap_or_else(Expr::zero)
    }

    /// Coefficient of `dx^i1 ∧ ... ∧ dx^ik` for an arbitrary index tuple.
    pub fn component(&self, indices: &[usize]) -> Expr {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.len() != self.degree {
            return Expr::zero();
        }
        let probe = Form::from_terms(&self.chart, self.degree, vec![(indices.to_vec(), Expr::one())])
            .expect("valid indices");
        let sign = probe.coeff(blade(&sorted));
        &sign * &self.coeff(blade(&sorted))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Expr)> {
        self.coeffs.iter().map(|(b, e)| (*b, e))
    }

    /// Components `α_a` of a one-form.
    pub fn one_form_comps(&self) -> Result<Vec<Expr>> {
        if self.degree != 1 {
            return Err(Error::Degree {
                got: self.degree,
                reason: "expected a one-form".into(),
            });
        }
        Ok((0..self.chart.dim()).map(|a| self.coeff(1 << a)).collect())
    }

    /// Value of a 0-form.
    pub fn scalar_value(&self) -> Result<Expr> {
        if self.degree != 0 {
            return Err(Error::Degree {
                got: self.degree,
                reason: "expected a 0-form".into(),
            });
        }
        Ok(self.coeff(0))
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Self {
        let mut out = Form::zero(&self.chart, self.degree);
        for (b, c) in &self.coeffs {
            out.accumulate(*b, f(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.chart.check_same(&other.chart)?;
        if self.degree != other.degree {
            return Err(Error::Degree {
                got: other.degree,
                reason: format!("cannot add to a {}-form", self.degree),
            });
        }
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.accumulate(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    pub fn scale(&self, f: &Expr) -> Self {
        self.map(|c| c * f)
    }

    pub fn d(&self) -> Result<Self> {
        exterior_derivative(self)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        wedge(self, other)
    }
}

pub fn exterior_derivative(w: &Form) -> Result<Form> {
    let m = w.chart.dim();
    if w.degree >= m {
        return Err(Error::Degree {
            got: w.degree,
            reason: format!("exterior derivative of a top-degree form on a {m}-dimensional chart"),
        });
    }
    let mut out = Form::zero(&w.chart, w.degree + 1);
    for (b, c) in &w.coeffs {
        for j in 0..m {
            if b & (1 << j) != 0 {
                continue;
            }
            let dc = c.partial(w.chart.var(j));
            if dc.is_zero() {
                continue;
            }
            let s = wedge_sign(1 << j, *b);
            out.accumulate(b | (1 << j), if s < 0 { -dc } else { dc });
        }
    }
    Ok(out)
}

pub fn wedge(a: &Form, b: &Form) -> Result<Form> {
    a.chart.check_same(&b.chart)?;
    let k = a.degree + b.degree;
    if k > a.chart.dim() {
        return Err(Error::Degree {
            got: k,
            reason: format!("wedge exceeds chart dimension {}", a.chart.dim()),
        });
    }
    let mut out = Form::zero(&a.chart, k);
    for (ba, ca) in &a.coeffs {
        for (bb, cb) in &b.coeffs {
            if ba & bb != 0 {
                continue;
            }
            let p = ca * cb;
            out.accumulate(ba | bb, if wedge_sign(*ba, *bb) < 0 { -p } else { p });
        }
    }
    Ok(out)
}

/// Contraction `i_X ω` in the first slot.
pub fn interior_product(x: &VectorField, w: &Form) -> Result<Form> {
    x.chart().check_same(&w.chart)?;
    if w.degree == 0 {
        return Err(Error::Degree {
            got: 0,
            reason: "interior product of a 0-form".into(),
        });
    }
    let mut out = Form::zero(&w.chart, w.degree - 1);
    for (b, c) in &w.coeffs {
        for (pos, i) in blade_indices(*b).enumerate() {
            let xi = x.comp(i);
            if xi.is_zero() {
                continue;
            }
            let t = xi * c;
            out.accumulate(b & !(1 << i), if pos % 2 == 1 { -t } else { t });
        }
    }
    Ok(out)
}

/// `L_X ω = i_X dω + d i_X ω`.
pub fn lie_derivative_form(x: &VectorField, w: &Form) -> Result<Form> {
    x.chart().check_same(&w.chart)?;
    if w.degree == 0 {
        let f = w.coeff(0);
        return Form::scalar(&w.chart, x.apply(&f));
    }
    let d_i = interior_product(x, w)?.d()?;
    if w.degree == w.chart.dim() {
        return Ok(d_i);
    }
    interior_product(x, &w.d()?)?.add(&d_i)
}

/// `Σ α_a X^a`.
pub fn pointwise_pairing(alpha: &Form, x: &VectorField) -> Result<Expr> {
    alpha.chart.check_same(x.chart())?;
    let comps = alpha.one_form_comps()?;
    Ok(comps.iter().zip(x.comps()).map(|(a, b)| a * b).sum())
}

/// Closedness of a one-form, the local test for `α ∈ [0]` modulo exact forms.
pub fn is_exact_candidate(alpha: &Form) -> Result<bool> {
    if alpha.degree != 1 {
        return Err(Error::Degree {
            got: alpha.degree,
            reason: "expected a one-form".into(),
        });
    }
    if alpha.chart.dim() == 1 {
        return Ok(true);
    }
    Ok(alpha.d()?.is_zero())
}

/// A top-degree form with a coefficient that is not identically zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VolumeForm {
    form: Form,
}

impl VolumeForm {
    pub fn new(form: Form) -> Result<Self> {
        if form.degree != form.chart.dim() {
            return Err(Error::Degree {
                got: form.degree,
                reason: format!("volume form must have degree {}", form.chart.dim()),
            });
        }
        if form.is_zero() {
            return Err(Error::DegenerateVolume);
        }
        Ok(VolumeForm { form })
    }

    /// `ρ dx^1 ∧ ... ∧ dx^m`.
    pub fn with_density(chart: &Chart, rho: Expr) -> Result<Self> {
        let idx: Vec<usize> = (0..chart.dim()).collect();
        Self::new(Form::from_terms(chart, chart.dim(), vec![(idx, rho)])?)
    }

    pub fn standard(chart: &Chart) -> Self {
        Self::with_density(chart, Expr::one()).expect("unit density")
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn chart(&self) -> &Chart {
        &self.form.chart
    }

    pub fn density(&self) -> Expr {
        self.form.coeff(((1u32 << self.form.degree) - 1) as Blade)
    }
}

/// The scalar with `L_X dμ = (div X) dμ`.
pub fn divergence(x: &VectorField, mu: &VolumeForm) -> Result<Expr> {
    x.chart().check_same(mu.chart())?;
    let rho = mu.density();
    let flux: Expr = (0..x.dim())
        .map(|a| (&rho * x.comp(a)).partial(x.chart().var(a)))
        .sum();
    flux.try_div(&rho)
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs.iter().map(|(b, c)| {
                let basis = if *b == 0 {
                    "1".to_string()
                } else {
                    blade_indices(*b)
                        .map(|i| format!("d{}", self.chart.var(i)))
                        .collect::<Vec<_>>()
                        .join("∧")
                };
                (c.to_string(), basis)
            }),
        )
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form<{}>[{self}]", self.degree)
    }
}
