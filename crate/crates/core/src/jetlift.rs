//! First-order jets: generalized vector fields, prolongation, the
//! prolongation bracket, and the holonomic/vertical splitting.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geomcalc::{field::write_terms, Chart, VectorField};
use crate::symexpr::{parse_expr, Expr, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetVar {
    Base(usize),
    Fiber(usize),
    /// `u^λ_a` as `(λ, a)`
    Jet(usize, usize),
    /// `u^λ_{ab}` as `(λ, a, b)` with `a <= b`
    Second(usize, usize, usize),
}

struct JetInner {
    base: Vec<VarId>,
    fiber: Vec<VarId>,
    jets: Vec<Vec<VarId>>,
    second: Vec<Vec<Vec<VarId>>>,
    kinds: HashMap<VarId, JetVar>,
    first_order: Vec<VarId>,
}

/// Coordinates `(x^a, u^λ, u^λ_a)` plus the symmetric second-jet symbols
/// `u^λ_{ab}` that total derivatives produce.
#[derive(Clone)]
pub struct JetChart(Arc<JetInner>);

impl JetChart {
    /// Jet chart with fresh variables. First jets are named `u_x`; second
    /// jets `u_xy` (or `u_x1_x2` when some base name is longer than one
    /// character).
    pub fn new(base: &[&str], fiber: &[&str]) -> Result<Self> {
        let mut idx = 0u32;
        let mut mk = |n: &str| {
            let v = VarId::new(n, idx);
            idx += 1;
            v
        };
        let base = base.iter().map(|n| mk(n)).collect::<Result<Vec<_>>>()?;
        let fiber = fiber.iter().map(|n| mk(n)).collect::<Result<Vec<_>>>()?;
        Self::from_vars(base, fiber)
    }

    /// Jet chart over existing base and fiber symbols; jet symbols get
    /// indices above all of them.
    pub fn from_vars(base: Vec<VarId>, fiber: Vec<VarId>) -> Result<Self> {
        if base.is_empty() || fiber.is_empty() {
            return Err(Error::InvalidChart("jet chart needs base and fiber variables".into()));
        }
        let long = base.iter().any(|v| v.name().len() > 1);
        let sep = if long { "_" } else { "" };
        let mut next = base.iter().chain(&fiber).map(VarId::index).max().unwrap() + 1;
        let mut fresh = |name: String| {
            let v = VarId::new(&name, next);
            next += 1;
            v
        };
        let mut jets = Vec::new();
        for u in &fiber {
            let row = base
                .iter()
                .map(|x| fresh(format!("{u}_{x}")))
                .collect::<Result<Vec<_>>>()?;
            jets.push(row);
        }
        let m = base.len();
        let mut second = Vec::new();
        for u in &fiber {
            let mut table: Vec<Vec<Option<VarId>>> = vec![vec![None; m]; m];
            for a in 0..m {
                for b in a..m {
                    let v = fresh(format!("{u}_{}{sep}{}", base[a], base[b]))?;
                    table[a][b] = Some(v.clone());
                    table[b][a] = Some(v);
                }
            }
            second.push(
                table
                    .into_iter()
                    .map(|r| r.into_iter().map(Option::unwrap).collect())
                    .collect::<Vec<Vec<VarId>>>(),
            );
        }

        let mut kinds = HashMap::new();
        let mut insert = |v: &VarId, k: JetVar| -> Result<()> {
            if kinds.keys().any(|w: &VarId| w.name() == v.name()) {
                return Err(Error::DuplicateVariable(v.name().to_string()));
            }
            kinds.insert(v.clone(), k);
            Ok(())
        };
        for (a, v) in base.iter().enumerate() {
            insert(v, JetVar::Base(a))?;
        }
        for (l, v) in fiber.iter().enumerate() {
            insert(v, JetVar::Fiber(l))?;
        }
        for (l, row) in jets.iter().enumerate() {
            for (a, v) in row.iter().enumerate() {
                insert(v, JetVar::Jet(l, a))?;
            }
        }
        for (l, t) in second.iter().enumerate() {
            for a in 0..m {
                for b in a..m {
                    insert(&t[a][b], JetVar::Second(l, a, b))?;
                }
            }
        }
        let first_order = base
            .iter()
            .chain(&fiber)
            .chain(jets.iter().flatten())
            .cloned()
            .collect();
        Ok(JetChart(Arc::new(JetInner {
            base,
            fiber,
            jets,
            second,
            kinds,
            first_order,
        })))
    }

    pub fn base_dim(&self) -> usize {
        self.0.base.len()
    }

    pub fn fiber_dim(&self) -> usize {
        self.0.fiber.len()
    }

    pub fn base_vars(&self) -> &[VarId] {
        &self.0.base
    }

    pub fn fiber_vars(&self) -> &[VarId] {
        &self.0.fiber
    }

    /// `u^λ_a`
    pub fn jet(&self, lambda: usize, a: usize) -> &VarId {
        &self.0.jets[lambda][a]
    }

    /// `u^λ_{ab}`, symmetric in `a, b`.
    pub fn second(&self, lambda: usize, a: usize, b: usize) -> &VarId {
        &self.0.second[lambda][a][b]
    }

    /// Base, fiber and first-jet symbols in chart order.
    pub fn first_order_vars(&self) -> &[VarId] {
        &self.0.first_order
    }

    pub fn all_vars(&self) -> Vec<VarId> {
        let mut v = self.0.first_order.clone();
        for (l, t) in self.0.second.iter().enumerate() {
            let _ = l;
            for a in 0..self.base_dim() {
                for b in a..self.base_dim() {
                    v.push(t[a][b].clone());
                }
            }
        }
        v
    }

    pub fn kind(&self, v: &VarId) -> Option<JetVar> {
        self.0.kinds.get(v).copied()
    }

    pub fn base_chart(&self) -> Result<Chart> {
        Chart::from_vars(self.0.base.clone())
    }

    /// Chart `(x, u)` of the total space.
    pub fn total_chart(&self) -> Result<Chart> {
        Chart::from_vars(self.0.base.iter().chain(&self.0.fiber).cloned().collect())
    }

    pub fn parse(&self, text: &str) -> Result<Expr> {
        parse_expr(text, &self.all_vars())
    }

    fn has_second_jets(&self, e: &Expr) -> bool {
        e.vars()
            .iter()
            .any(|v| matches!(self.kind(v), Some(JetVar::Second(..))))
    }

    fn only_base(&self, e: &Expr) -> bool {
        e.vars()
            .iter()
            .all(|v| matches!(self.kind(v), Some(JetVar::Base(_))))
    }

    fn check_same(&self, other: &JetChart) -> Result<()> {
        if Arc::ptr_eq(&self.0, &other.0) || self.0.first_order == other.0.first_order {
            Ok(())
        } else {
            Err(Error::ChartMismatch("different jet charts".into()))
        }
    }
}

impl PartialEq for JetChart {
    fn eq(&self, other: &Self) -> bool {
        self.check_same(other).is_ok()
    }
}

impl Eq for JetChart {}

impl fmt::Debug for JetChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.first_order.iter().map(VarId::name).collect();
        write!(f, "JetChart({})", names.join(", "))
    }
}

/// `D_a e = ∂e/∂x^a + u^λ_a ∂e/∂u^λ + u^λ_{ab} ∂e/∂u^λ_b`.
pub fn total_derivative(chart: &JetChart, e: &Expr, a: usize) -> Expr {
    let mut acc = e.partial(&chart.0.base[a]);
    for l in 0..chart.fiber_dim() {
        let du = e.partial(&chart.0.fiber[l]);
        if !du.is_zero() {
            acc = &acc + &(&Expr::var(chart.jet(l, a)) * &du);
        }
        for b in 0..chart.base_dim() {
            let dj = e.partial(chart.jet(l, b));
            if !dj.is_zero() {
                acc = &acc + &(&Expr::var(chart.second(l, a, b)) * &dj);
            }
        }
    }
    acc
}

/// A projectable first-order generalized vector field
/// `ξ = ξ^a(x) ∂/∂x^a + ξ^λ(x, u, u_a) ∂/∂u^λ`.
#[derive(Clone, PartialEq, Eq)]
pub struct GenField {
    chart: JetChart,
    base: Vec<Expr>,
    fiber: Vec<Expr>,
}

impl GenField {
    pub fn new(chart: &JetChart, base: Vec<Expr>, fiber: Vec<Expr>) -> Result<Self> {
        if base.len() != chart.base_dim() {
            return Err(Error::ComponentCount {
                expected: chart.base_dim(),
                got: base.len(),
            });
        }
        if fiber.len() != chart.fiber_dim() {
            return Err(Error::ComponentCount {
                expected: chart.fiber_dim(),
                got: fiber.len(),
            });
        }
        for e in base.iter().chain(&fiber) {
            if let Some(v) = e.vars().into_iter().find(|v| chart.kind(v).is_none()) {
                return Err(Error::ChartMismatch(format!("`{v}` is not a jet coordinate")));
            }
        }
        if let Some(a) = base.iter().position(|e| !chart.only_base(e)) {
            return Err(Error::NonProjectable(a));
        }
        if let Some(l) = fiber.iter().position(|e| chart.has_second_jets(e)) {
            return Err(Error::OrderExceeded(l));
        }
        Ok(GenField {
            chart: chart.clone(),
            base: base.iter().map(Expr::normalized).collect(),
            fiber: fiber.iter().map(Expr::normalized).collect(),
        })
    }

    pub fn parse(chart: &JetChart, base: &[&str], fiber: &[&str]) -> Result<Self> {
        let p = |xs: &[&str]| xs.iter().map(|s| chart.parse(s)).collect::<Result<Vec<_>>>();
        Self::new(chart, p(base)?, p(fiber)?)
    }

    pub fn zero(chart: &JetChart) -> Self {
        GenField {
            chart: chart.clone(),
            base: vec![Expr::zero(); chart.base_dim()],
            fiber: vec![Expr::zero(); chart.fiber_dim()],
        }
    }

    /// An ordinary projectable field on the total space `(x, u)`.
    pub fn from_total(chart: &JetChart, x: &VectorField) -> Result<Self> {
        let total = chart.total_chart()?;
        x.chart().check_same(&total)?;
        let m = chart.base_dim();
        Self::new(chart, x.comps()[..m].to_vec(), x.comps()[m..].to_vec())
    }

    /// The same field viewed on the total space, when it has no jet dependence.
    pub fn to_total(&self) -> Result<VectorField> {
        let total = self.chart.total_chart()?;
        VectorField::new(&total, self.base.iter().chain(&self.fiber).cloned().collect())
    }

    pub fn chart(&self) -> &JetChart {
        &self.chart
    }

    pub fn base_comps(&self) -> &[Expr] {
        &self.base
    }

    pub fn fiber_comps(&self) -> &[Expr] {
        &self.fiber
    }

    pub fn is_zero(&self) -> bool {
        self.base.iter().chain(&self.fiber).all(Expr::is_zero)
    }

    pub fn is_vertical(&self) -> bool {
        self.base.iter().all(Expr::is_zero)
    }

    /// Push-forward `π_*ξ` to the base.
    pub fn project(&self) -> Result<VectorField> {
        VectorField::new(&self.chart.base_chart()?, self.base.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&Expr, &Expr) -> Expr) -> Result<Self> {
        self.chart.check_same(&other.chart)?;
        Ok(GenField {
            chart: self.chart.clone(),
            base: self.base.iter().zip(&other.base).map(|(a, b)| f(a, b)).collect(),
            fiber: self.fiber.iter().zip(&other.fiber).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        GenField {
            chart: self.chart.clone(),
            base: self.base.iter().map(|e| -e).collect(),
            fiber: self.fiber.iter().map(|e| -e).collect(),
        }
    }
}

impl fmt::Display for GenField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.chart.0;
        write_terms(
            f,
            self.base
                .iter()
                .zip(&c.base)
                .chain(self.fiber.iter().zip(&c.fiber))
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, v)| (e.to_string(), format!("d/d{v}"))),
        )
    }
}

impl fmt::Debug for GenField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenField[{self}]")
    }
}

/// `pr¹ξ = ξ + Φ^λ_a ∂/∂u^λ_a`.
#[derive(Clone, Debug)]
pub struct Prolonged {
    field: GenField,
    /// `Φ[λ][a]`
    phi: Vec<Vec<Expr>>,
}

impl Prolonged {
    pub fn field(&self) -> &GenField {
        &self.field
    }

    pub fn phi(&self, lambda: usize, a: usize) -> &Expr {
        &self.phi[lambda][a]
    }

    /// Action on a function of `(x, u, u_a)`.
    pub fn apply(&self, f: &Expr) -> Expr {
        let c = &self.field.chart;
        let mut acc = Expr::zero();
        let mut term = |coef: &Expr, v: &VarId| {
            if !coef.is_zero() {
                let d = f.partial(v);
                if !d.is_zero() {
                    acc = &acc + &(coef * &d);
                }
            }
        };
        for (a, e) in self.field.base.iter().enumerate() {
            term(e, &c.0.base[a]);
        }
        for (l, e) in self.field.fiber.iter().enumerate() {
            term(e, &c.0.fiber[l]);
        }
        for l in 0..c.fiber_dim() {
            for a in 0..c.base_dim() {
                term(&self.phi[l][a], c.jet(l, a));
            }
        }
        acc
    }
}

impl fmt::Display for Prolonged {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.field.chart;
        let jets = (0..c.fiber_dim())
            .flat_map(|l| (0..c.base_dim()).map(move |a| (l, a)))
            .filter(|(l, a)| !self.phi[*l][*a].is_zero())
            .map(|(l, a)| (self.phi[l][a].to_string(), format!("d/d{}", c.jet(l, a))));
        let own = c
            .0
            .base
            .iter()
            .zip(&self.field.base)
            .chain(c.0.fiber.iter().zip(&self.field.fiber))
            .filter(|(_, e)| !e.is_zero())
            .map(|(v, e)| (e.to_string(), format!("d/d{v}")));
        write_terms(f, own.chain(jets))
    }
}

/// `Φ^λ_a = D_a(ξ^λ − ξ^b u^λ_b) + ξ^b u^λ_{ba}`.
pub fn prolong1(xi: &GenField) -> Prolonged {
    let c = &xi.chart;
    let (m, k) = (c.base_dim(), c.fiber_dim());
    let mut phi = vec![vec![Expr::zero(); m]; k];
    for (l, row) in phi.iter_mut().enumerate() {
        let q = (0..m).fold(xi.fiber[l].clone(), |q, b| {
            &q - &(&xi.base[b] * &Expr::var(c.jet(l, b)))
        });
        for (a, slot) in row.iter_mut().enumerate() {
            let transport: Expr = (0..m)
                .map(|b| &xi.base[b] * &Expr::var(c.second(l, b, a)))
                .sum();
            *slot = &total_derivative(c, &q, a) + &transport;
        }
    }
    Prolonged {
        field: xi.clone(),
        phi,
    }
}

/// `[ξ, η]_pro` with components `pr¹ξ(η) − pr¹η(ξ)`; fails if second-jet
/// symbols survive.
pub fn prolongation_bracket(xi: &GenField, eta: &GenField) -> Result<GenField> {
    xi.chart.check_same(&eta.chart)?;
    let (px, pe) = (prolong1(xi), prolong1(eta));
    let comp = |a: &Expr, b: &Expr| &px.apply(a) - &pe.apply(b);
    let base: Vec<Expr> = xi.base.iter().zip(&eta.base).map(|(x, e)| comp(e, x)).collect();
    let fiber: Vec<Expr> = xi.fiber.iter().zip(&eta.fiber).map(|(x, e)| comp(e, x)).collect();
    let m = base.len();
    for (i, e) in base.iter().chain(&fiber).enumerate() {
        if xi.chart.has_second_jets(e) {
            return Err(Error::ResidualSecondJet {
                component: i,
                expr: e.to_string(),
            });
        }
        if i < m && !xi.chart.only_base(e) {
            return Err(Error::Consistency(format!(
                "bracket base component {i} depends on fiber or jet variables: {e}"
            )));
        }
    }
    GenField::new(&xi.chart, base, fiber)
}

/// `X^hol = X^a ∂/∂x^a + X^a u^λ_a ∂/∂u^λ`.
pub fn holonomic_lift(x: &VectorField, chart: &JetChart) -> Result<GenField> {
    x.chart().check_same(&chart.base_chart()?)?;
    let m = chart.base_dim();
    let fiber = (0..chart.fiber_dim())
        .map(|l| (0..m).map(|a| x.comp(a) * &Expr::var(chart.jet(l, a))).sum())
        .collect();
    GenField::new(chart, x.comps().to_vec(), fiber)
}

/// The connection tensor `Γ_J = dx^a ⊗ (∂/∂x^a + u^λ_a ∂/∂u^λ)` on `(x, u)`.
pub struct JetConnection {
    chart: JetChart,
    /// `(row, column, entry)` over total-space coordinates `(x, u)`
    entries: Vec<(usize, usize, Expr)>,
}

impl JetConnection {
    pub fn new(chart: &JetChart) -> Self {
        let m = chart.base_dim();
        let mut entries = Vec::new();
        for a in 0..m {
            entries.push((a, a, Expr::one()));
            for l in 0..chart.fiber_dim() {
                entries.push((m + l, a, Expr::var(chart.jet(l, a))));
            }
        }
        JetConnection {
            chart: chart.clone(),
            entries,
        }
    }

    /// Contracts the tensor with the `(x, u)` components of `ξ`.
    pub fn apply(&self, xi: &GenField) -> Result<GenField> {
        self.chart.check_same(&xi.chart)?;
        let m = self.chart.base_dim();
        let input: Vec<&Expr> = xi.base.iter().chain(&xi.fiber).collect();
        let mut out = vec![Expr::zero(); input.len()];
        for (r, c, g) in &self.entries {
            out[*r] = &out[*r] + &(g * input[*c]);
        }
        let fiber = out.split_off(m);
        GenField::new(&self.chart, out, fiber)
    }
}

/// `Hξ = (π_*ξ)^hol`, checked against `Γ_J ξ`.
pub fn holonomic_part(xi: &GenField) -> Result<GenField> {
    let h = holonomic_lift(&xi.project()?, &xi.chart)?;
    let g = JetConnection::new(&xi.chart).apply(xi)?;
    if h != g {
        return Err(Error::Consistency(format!("holonomic part {h} differs from Γ_J ξ = {g}")));
    }
    Ok(h)
}

/// `Vξ = (ξ^λ − ξ^a u^λ_a) ∂/∂u^λ`.
pub fn vertical_representative(xi: &GenField) -> GenField {
    let c = &xi.chart;
    let fiber = (0..c.fiber_dim())
        .map(|l| {
            (0..c.base_dim()).fold(xi.fiber[l].clone(), |acc, a| {
                &acc - &(&xi.base[a] * &Expr::var(c.jet(l, a)))
            })
        })
        .collect();
    GenField {
        chart: c.clone(),
        base: vec![Expr::zero(); c.base_dim()],
        fiber,
    }
}

/// `𝔅(ξ, η) = [Hη, Vξ]_pro − [Hξ, Vη]_pro`, checked against
/// `[Vξ, Vη]_pro − V[ξ, η]_pro`.
pub fn obstruction_form(xi: &GenField, eta: &GenField) -> Result<GenField> {
    xi.chart.check_same(&eta.chart)?;
    let (hx, he) = (holonomic_part(xi)?, holonomic_part(eta)?);
    let (vx, ve) = (vertical_representative(xi), vertical_representative(eta));
    let b = prolongation_bracket(&he, &vx)?.sub(&prolongation_bracket(&hx, &ve)?)?;
    let check = prolongation_bracket(&vx, &ve)?
        .sub(&vertical_representative(&prolongation_bracket(xi, eta)?))?;
    if b != check {
        return Err(Error::Consistency(format!(
            "obstruction form {b} differs from [Vξ,Vη] − V[ξ,η] = {check}"
        )));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xu() -> JetChart {
        JetChart::new(&["x"], &["u"]).unwrap()
    }

    fn g(c: &JetChart, base: &[&str], fiber: &[&str]) -> GenField {
        GenField::parse(c, base, fiber).unwrap()
    }

    fn e(c: &JetChart, s: &str) -> Expr {
        c.parse(s).unwrap().canonicalize().unwrap()
    }

    #[test]
    fn naming() {
        let c = JetChart::new(&["x", "y"], &["u"]).unwrap();
        assert_eq!(c.jet(0, 1).name(), "u_y");
        assert_eq!(c.second(0, 1, 0).name(), "u_xy");
        assert_eq!(c.second(0, 0, 1), c.second(0, 1, 0));
        let c = JetChart::new(&["q1", "q2"], &["u"]).unwrap();
        assert_eq!(c.second(0, 0, 1).name(), "u_q1_q2");
        assert!(JetChart::new(&["x", "u_x"], &["u"]).is_err());
    }

    #[test]
    fn total_derivative_examples() {
        let c = xu();
        assert_eq!(total_derivative(&c, &e(&c, "u"), 0), e(&c, "u_x"));
        assert_eq!(total_derivative(&c, &e(&c, "x*u_x"), 0), e(&c, "u_x + x*u_xx"));
        assert_eq!(total_derivative(&c, &e(&c, "x^3"), 0), e(&c, "3*x^2"));
    }

    #[test]
    fn prolongation_examples() {
        let c = xu();
        let p = prolong1(&g(&c, &["1"], &["0"]));
        assert!(p.phi(0, 0).is_zero());
        let p = prolong1(&g(&c, &["0"], &["u"]));
        assert_eq!(p.phi(0, 0), &e(&c, "u_x"));
        let p = prolong1(&g(&c, &["0"], &["x"]));
        assert!(p.phi(0, 0).is_one());
    }

    #[test]
    fn field_validation() {
        let c = xu();
        assert!(matches!(
            GenField::parse(&c, &["u"], &["0"]),
            Err(Error::NonProjectable(0))
        ));
        assert!(matches!(
            GenField::parse(&c, &["x"], &["u_xx"]),
            Err(Error::OrderExceeded(0))
        ));
    }

    #[test]
    fn bracket_examples() {
        let c = xu();
        assert!(prolongation_bracket(&g(&c, &["1"], &["0"]), &g(&c, &["0"], &["u"]))
            .unwrap()
            .is_zero());
        // direct expansion: pr(x∂x) acts on −u_x through Φ = −u_x, and
        // pr(−u_x∂u) acts on x through nothing
        let xi = g(&c, &["x"], &["0"]);
        let eta = g(&c, &["0"], &["-u_x"]);
        let br = prolongation_bracket(&xi, &eta).unwrap();
        let px = prolong1(&xi);
        assert_eq!(px.phi(0, 0), &e(&c, "-u_x"));
        assert_eq!(br, g(&c, &["0"], &["u_x"]));
    }

    #[test]
    fn bracket_reduces_to_jacobi_lie() {
        let c = JetChart::new(&["x", "y"], &["u", "v"]).unwrap();
        let total = c.total_chart().unwrap();
        let a = VectorField::parse(&total, &["x*y", "1", "u*x", "v^2 + y"]).unwrap();
        let b = VectorField::parse(&total, &["y", "x^2", "v", "u*v*x"]).unwrap();
        let pro = prolongation_bracket(
            &GenField::from_total(&c, &a).unwrap(),
            &GenField::from_total(&c, &b).unwrap(),
        )
        .unwrap();
        assert_eq!(pro.to_total().unwrap(), a.bracket(&b).unwrap());
    }

    #[test]
    fn holonomic_examples() {
        let c = xu();
        let base = c.base_chart().unwrap();
        let h = holonomic_lift(&VectorField::parse(&base, &["1"]).unwrap(), &c).unwrap();
        assert_eq!(h, g(&c, &["1"], &["u_x"]));
        let h = holonomic_lift(&VectorField::parse(&base, &["x"]).unwrap(), &c).unwrap();
        assert_eq!(h, g(&c, &["x"], &["x*u_x"]));
        assert_eq!(h.project().unwrap(), VectorField::parse(&base, &["x"]).unwrap());
    }

    #[test]
    fn holonomic_part_examples() {
        let c = xu();
        let h = holonomic_part(&g(&c, &["1"], &["5"])).unwrap();
        assert_eq!(h, g(&c, &["1"], &["u_x"]));
        assert!(holonomic_part(&g(&c, &["0"], &["u"])).unwrap().is_zero());
        assert_eq!(holonomic_part(&h).unwrap(), h);
    }

    #[test]
    fn vertical_examples() {
        let c = xu();
        assert_eq!(vertical_representative(&g(&c, &["1"], &["0"])), g(&c, &["0"], &["-u_x"]));
        assert_eq!(vertical_representative(&g(&c, &["0"], &["u"])), g(&c, &["0"], &["u"]));
        let xi = g(&c, &["x^2"], &["u*x + 1"]);
        let sum = vertical_representative(&xi).add(&holonomic_part(&xi).unwrap()).unwrap();
        assert_eq!(sum, xi);
    }

    #[test]
    fn obstruction_examples() {
        let c = xu();
        let xi = g(&c, &["1"], &["0"]);
        let eta = g(&c, &["0"], &["x"]);
        assert!(obstruction_form(&xi, &xi).unwrap().is_zero());
        let b = obstruction_form(&xi, &eta).unwrap();
        assert!(b.is_vertical());
    }

    #[test]
    fn residual_second_jets_are_reported() {
        let c = JetChart::new(&["x"], &["u", "v"]).unwrap();
        let a = g(&c, &["0"], &["v_x", "0"]);
        let b = g(&c, &["0"], &["0", "u_x"]);
        assert!(matches!(
            prolongation_bracket(&a, &b),
            Err(Error::ResidualSecondJet { .. })
        ));
    }
}
