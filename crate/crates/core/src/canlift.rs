//! Canonical structure of a cotangent bundle and the lifts built on it.
//!
//! Conventions: `θ = y_a dx^a`, `Ω = −dθ = dx^a ∧ dy_a`, `i_{X_h} Ω = dh`.

use std::fmt;

use crate::error::{Error, Result};
use crate::geomcalc::{Chart, Form, VectorField};
use crate::jetlift::{holonomic_part, vertical_representative, GenField, JetChart};
use crate::symexpr::{Expr, VarId};

/// Darboux chart `(x^a, y_a)` on `T*M`.
#[derive(Clone, PartialEq, Eq)]
pub struct CotangentChart {
    base: Chart,
    total: Chart,
}

impl CotangentChart {
    /// Fiber coordinates named by `fiber`, one per base coordinate.
    pub fn new(base: &Chart, fiber: &[&str]) -> Result<Self> {
        if fiber.len() != base.dim() {
            return Err(Error::ComponentCount {
                expected: base.dim(),
                got: fiber.len(),
            });
        }
        let start = base.vars().iter().map(VarId::index).max().unwrap_or(0) + 1;
        let mut vars = base.vars().to_vec();
        for (i, n) in fiber.iter().enumerate() {
            vars.push(VarId::new(n, start + i as u32)?);
        }
        let total = Chart::from_vars(vars)?;
        Ok(CotangentChart {
            base: base.clone(),
            total,
        })
    }

    /// Fiber coordinates named `p_<x>` after the base coordinates.
    pub fn with_default_names(base: &Chart) -> Result<Self> {
        let names: Vec<String> = base.vars().iter().map(|v| format!("p_{v}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::new(base, &refs)
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    pub fn total(&self) -> &Chart {
        &self.total
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn fiber_var(&self, a: usize) -> &VarId {
        self.total.var(self.base.dim() + a)
    }

    pub fn fiber_vars(&self) -> &[VarId] {
        &self.total.vars()[self.base.dim()..]
    }

    pub fn parse(&self, text: &str) -> Result<Expr> {
        self.total.parse(text)
    }

    /// Tautological one-form `θ = y_a dx^a`.
    pub fn theta(&self) -> Form {
        let m = self.base_dim();
        let terms = (0..m).map(|a| (vec![a], Expr::var(self.fiber_var(a)))).collect();
        Form::from_terms(&self.total, 1, terms).expect("valid one-form")
    }

    /// Symplectic form `Ω = dx^a ∧ dy_a = −dθ`.
    pub fn omega(&self) -> Form {
        let m = self.base_dim();
        let terms = (0..m).map(|a| (vec![a, m + a], Expr::one())).collect();
        Form::from_terms(&self.total, 2, terms).expect("valid two-form")
    }

    /// Lifts a base expression to the total chart (same symbols).
    fn base_expr(&self, e: &Expr) -> Result<Expr> {
        if !self.base.owns(e) {
            return Err(Error::FiberDependent(e.to_string()));
        }
        Ok(e.clone())
    }
}

impl fmt::Debug for CotangentChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CotangentChart{}", self.total)
    }
}

/// `X^{c*}` from base-only components `X^a(x)`.
pub fn complete_cotangent_lift_comps(comps: &[Expr], t: &CotangentChart) -> Result<VectorField> {
    let m = t.base_dim();
    if comps.len() != m {
        return Err(Error::ComponentCount {
            expected: m,
            got: comps.len(),
        });
    }
    let comps = comps
        .iter()
        .map(|e| t.base_expr(e))
        .collect::<Result<Vec<_>>>()?;
    let mut out = comps.clone();
    for a in 0..m {
        let xa = t.base.var(a);
        let fib: Expr = (0..m)
            .map(|b| &Expr::var(t.fiber_var(b)) * &comps[b].partial(xa))
            .sum();
        out.push(-fib);
    }
    VectorField::new(&t.total, out)
}

/// `X^{c*} = X^a ∂/∂x^a − y_b (∂X^b/∂x^a) ∂/∂y_a`.
pub fn complete_cotangent_lift(x: &VectorField, t: &CotangentChart) -> Result<VectorField> {
    x.chart().check_same(&t.base)?;
    complete_cotangent_lift_comps(x.comps(), t)
}

/// `P(X) = y_b X^b`.
pub fn momentum_function(x: &VectorField, t: &CotangentChart) -> Result<Expr> {
    x.chart().check_same(&t.base)?;
    Ok((0..t.base_dim())
        .map(|b| &Expr::var(t.fiber_var(b)) * x.comp(b))
        .sum())
}

/// `X_h` with `i_{X_h} Ω = dh`: `∂h/∂y_a ∂/∂x^a − ∂h/∂x^a ∂/∂y_a`.
pub fn hamiltonian_vector_field(h: &Expr, t: &CotangentChart) -> Result<VectorField> {
    if !t.total.owns(h) {
        return Err(Error::ChartMismatch(format!("`{h}` is not a function on {:?}", t)));
    }
    let m = t.base_dim();
    let mut comps: Vec<Expr> = (0..m).map(|a| h.partial(t.fiber_var(a))).collect();
    comps.extend((0..m).map(|a| -h.partial(t.base.var(a))));
    VectorField::new(&t.total, comps)
}

/// `{f, g} = ∂f/∂x^a ∂g/∂y_a − ∂f/∂y_a ∂g/∂x^a`.
pub fn canonical_poisson(f: &Expr, g: &Expr, t: &CotangentChart) -> Expr {
    (0..t.base_dim())
        .map(|a| {
            let (x, y) = (t.base.var(a), t.fiber_var(a));
            &(&f.partial(x) * &g.partial(y)) - &(&f.partial(y) * &g.partial(x))
        })
        .sum()
}

/// `X_E = −y_a ∂/∂y_a`.
pub fn euler_vector_field(t: &CotangentChart) -> VectorField {
    let m = t.base_dim();
    let mut comps = vec![Expr::zero(); m];
    comps.extend((0..m).map(|a| -Expr::var(t.fiber_var(a))));
    VectorField::new(&t.total, comps).expect("valid field")
}

/// `α^v = −α_a(x) ∂/∂y_a`.
pub fn vertical_lift(alpha: &Form, t: &CotangentChart) -> Result<VectorField> {
    alpha.chart().check_same(&t.base)?;
    let m = t.base_dim();
    let mut comps = vec![Expr::zero(); m];
    for a in alpha.one_form_comps()? {
        comps.push(-t.base_expr(&a)?);
    }
    VectorField::new(&t.total, comps)
}

/// Base projection `Tπ(Z)` of a field on `T*M` whose base components do not
/// depend on the fibers.
pub fn project_to_base(z: &VectorField, t: &CotangentChart) -> Result<VectorField> {
    z.chart().check_same(&t.total)?;
    let comps = z.comps()[..t.base_dim()]
        .iter()
        .map(|e| t.base_expr(e))
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(&t.base, comps)
}

/// `X^{c*}` split on the jet chart that treats `y` as a section over `x`.
#[derive(Clone, Debug)]
pub struct LiftDecomposition {
    pub jet: JetChart,
    pub lift: GenField,
    pub vertical: GenField,
    pub holonomic: GenField,
}

/// The jet chart whose first jets `y_{a,b}` stand for `∂y_a/∂x^b`.
pub fn section_jet_chart(t: &CotangentChart) -> Result<JetChart> {
    JetChart::from_vars(t.base.vars().to_vec(), t.fiber_vars().to_vec())
}

pub fn lift_decomposition(x: &VectorField, t: &CotangentChart) -> Result<LiftDecomposition> {
    let jet = section_jet_chart(t)?;
    lift_decomposition_on(x, t, &jet)
}

pub fn lift_decomposition_on(
    x: &VectorField,
    t: &CotangentChart,
    jet: &JetChart,
) -> Result<LiftDecomposition> {
    let lifted = complete_cotangent_lift(x, t)?;
    let m = t.base_dim();
    let lift = GenField::new(jet, lifted.comps()[..m].to_vec(), lifted.comps()[m..].to_vec())?;
    let vertical = vertical_representative(&lift);
    let holonomic = holonomic_part(&lift)?;

    // VX^{c*} = −(y_b ∂X^b/∂x^a + X^b ∂y_a/∂x^b) ∂/∂y_a
    let expect: Vec<Expr> = (0..m)
        .map(|a| {
            let s: Expr = (0..m)
                .map(|b| {
                    &(&Expr::var(t.fiber_var(b)) * &x.comp(b).partial(t.base.var(a)))
                        + &(x.comp(b) * &Expr::var(jet.jet(a, b)))
                })
                .sum();
            -s
        })
        .collect();
    if vertical.fiber_comps() != expect.as_slice() {
        return Err(Error::Consistency(format!(
            "vertical representative {vertical} does not match the coordinate formula"
        )));
    }
    if vertical.add(&holonomic)? != lift {
        return Err(Error::Consistency("V + H differs from the lift".into()));
    }
    Ok(LiftDecomposition {
        jet: jet.clone(),
        lift,
        vertical,
        holonomic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geomcalc::{interior_product, jacobi_lie_bracket, lie_derivative_form};

    fn xy() -> CotangentChart {
        CotangentChart::new(&Chart::new(&["x"]).unwrap(), &["y"]).unwrap()
    }

    fn qp() -> CotangentChart {
        CotangentChart::new(&Chart::new(&["q"]).unwrap(), &["p"]).unwrap()
    }

    fn base_vf(t: &CotangentChart, s: &[&str]) -> VectorField {
        VectorField::parse(t.base(), s).unwrap()
    }

    fn tot_vf(t: &CotangentChart, s: &[&str]) -> VectorField {
        VectorField::parse(t.total(), s).unwrap()
    }

    #[test]
    fn structure_forms() {
        let t = xy();
        assert_eq!(t.theta().d().unwrap().neg(), t.omega());
    }

    #[test]
    fn cotangent_lift_examples() {
        let t = xy();
        assert_eq!(
            complete_cotangent_lift(&base_vf(&t, &["1"]), &t).unwrap(),
            tot_vf(&t, &["1", "0"])
        );
        assert_eq!(
            complete_cotangent_lift(&base_vf(&t, &["x"]), &t).unwrap(),
            tot_vf(&t, &["x", "-y"])
        );
        let y = t.parse("y").unwrap();
        assert!(matches!(
            complete_cotangent_lift_comps(&[y], &t),
            Err(Error::FiberDependent(_))
        ));
    }

    #[test]
    fn momentum_function_examples() {
        let t = xy();
        assert_eq!(
            momentum_function(&base_vf(&t, &["1"]), &t).unwrap(),
            Expr::var(t.fiber_var(0))
        );
        let x = base_vf(&t, &["x"]);
        let p = momentum_function(&x, &t).unwrap();
        assert_eq!(p, t.parse("x*y").unwrap().canonicalize().unwrap());
        assert_eq!(
            hamiltonian_vector_field(&p, &t).unwrap(),
            complete_cotangent_lift(&x, &t).unwrap()
        );
    }

    #[test]
    fn hamiltonian_field_examples() {
        let t = qp();
        let h = t.parse("p^2/2").unwrap();
        assert_eq!(hamiltonian_vector_field(&h, &t).unwrap(), tot_vf(&t, &["p", "0"]));
        assert!(hamiltonian_vector_field(&Expr::int(7), &t).unwrap().is_zero());
        // i_{X_h} Ω = dh
        let h = t.parse("p^2/3 + q^3*p").unwrap();
        let xh = hamiltonian_vector_field(&h, &t).unwrap();
        let dh = Form::scalar(t.total(), h).unwrap().d().unwrap();
        assert_eq!(interior_product(&xh, &t.omega()).unwrap(), dh);
    }

    #[test]
    fn poisson_examples() {
        let t = qp();
        let (q, p) = (t.parse("q").unwrap(), t.parse("p").unwrap());
        assert!(canonical_poisson(&q, &p, &t).is_one());
        let f = t.parse("q^2*p + p^3").unwrap();
        assert!(canonical_poisson(&f, &f, &t).is_zero());
        let h = t.parse("p^2/2 + q^3").unwrap();
        let lhs = jacobi_lie_bracket(
            &hamiltonian_vector_field(&h, &t).unwrap(),
            &hamiltonian_vector_field(&f, &t).unwrap(),
        )
        .unwrap();
        let rhs = hamiltonian_vector_field(&canonical_poisson(&h, &f, &t), &t).unwrap().neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_field_identities() {
        let t = CotangentChart::with_default_names(&Chart::new(&["x", "y"]).unwrap()).unwrap();
        let xe = euler_vector_field(&t);
        assert_eq!(interior_product(&xe, &t.omega()).unwrap(), t.theta());
        assert_eq!(lie_derivative_form(&xe, &t.omega()).unwrap(), t.omega().neg());
        assert_eq!(lie_derivative_form(&xe, &t.theta()).unwrap(), t.theta().neg());
        assert!(project_to_base(&xe, &t).unwrap().is_zero());
    }

    #[test]
    fn vertical_lift_examples() {
        let t = xy();
        let dx = Form::basis(t.base(), &[0]).unwrap();
        assert_eq!(vertical_lift(&dx, &t).unwrap(), tot_vf(&t, &["0", "-1"]));
        assert!(vertical_lift(&Form::zero(t.base(), 1), &t).unwrap().is_zero());
    }

    #[test]
    fn decomposition_examples() {
        let t = xy();
        let d = lift_decomposition(&base_vf(&t, &["1"]), &t).unwrap();
        let j = &d.jet;
        assert_eq!(j.jet(0, 0).name(), "y_x");
        assert_eq!(d.vertical, GenField::parse(j, &["0"], &["-y_x"]).unwrap());
        assert_eq!(d.holonomic, GenField::parse(j, &["1"], &["y_x"]).unwrap());
        let d = lift_decomposition(&base_vf(&t, &["x"]), &t).unwrap();
        assert_eq!(d.vertical, GenField::parse(j, &["0"], &["-(y + x*y_x)"]).unwrap());
    }
}
