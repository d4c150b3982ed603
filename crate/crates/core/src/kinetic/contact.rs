//! Contact particles on `(x, y, z)` with `σ = x dy + dz`.

use std::collections::HashMap;

use super::{lie_poisson_rhs, MomentumDensity};
use crate::canlift::{complete_cotangent_lift, lift_decomposition, CotangentChart, LiftDecomposition};
use crate::error::{Error, Result};
use crate::geomcalc::{
    divergence, interior_product, pointwise_pairing, wedge, Chart, Form, VectorField, VolumeForm,
};
use crate::symexpr::{Expr, VarId};

/// Darboux contact structure with Reeb field `∂z` and volume `dσ ∧ σ`.
#[derive(Clone, Debug)]
pub struct ContactStructure {
    chart: Chart,
    sigma: Form,
    d_sigma: Form,
    volume: VolumeForm,
    reeb: VectorField,
}

impl ContactStructure {
    pub fn darboux() -> Self {
        Self::build().expect("Darboux contact structure")
    }

    fn build() -> Result<Self> {
        let chart = Chart::new(&["x", "y", "z"])?;
        let sigma = Form::parse_one_form(&chart, &["0", "x", "1"])?;
        let d_sigma = sigma.d()?;
        let volume = VolumeForm::new(wedge(&d_sigma, &sigma)?)?;
        let reeb = VectorField::parse(&chart, &["0", "0", "1"])?;
        if !interior_product(&reeb, &sigma)?.scalar_value()?.is_one()
            || !interior_product(&reeb, &d_sigma)?.is_zero()
        {
            return Err(Error::Consistency("∂z is not the Reeb field of σ".into()));
        }
        Ok(ContactStructure {
            chart,
            sigma,
            d_sigma,
            volume,
            reeb,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn sigma(&self) -> &Form {
        &self.sigma
    }

    pub fn d_sigma(&self) -> &Form {
        &self.d_sigma
    }

    pub fn volume(&self) -> &VolumeForm {
        &self.volume
    }

    pub fn reeb(&self) -> &VectorField {
        &self.reeb
    }

    pub fn parse(&self, text: &str) -> Result<Expr> {
        self.chart.parse(text)
    }

    fn x(&self) -> &VarId {
        self.chart.var(0)
    }

    fn y(&self) -> &VarId {
        self.chart.var(1)
    }

    fn z(&self) -> &VarId {
        self.chart.var(2)
    }

    /// `T*M` over the contact chart with fiber `(alpha_x, alpha_y, alpha_z)`.
    pub fn lift_chart(&self) -> CotangentChart {
        CotangentChart::new(&self.chart, &["alpha_x", "alpha_y", "alpha_z"])
            .expect("fixed fiber names")
    }

    fn check(&self, e: &Expr) -> Result<()> {
        if self.chart.owns(e) {
            Ok(())
        } else {
            Err(Error::ChartMismatch(format!("{e} is not a function on {}", self.chart)))
        }
    }

    fn one_form(&self, alpha: &Form) -> Result<Vec<Expr>> {
        alpha.chart().check_same(&self.chart)?;
        alpha.one_form_comps()
    }
}

pub fn reeb_field(cs: &ContactStructure) -> VectorField {
    cs.reeb.clone()
}

/// `X_K = (K_y − x K_z) ∂x − K_x ∂y + (x K_x − K) ∂z`.
pub fn contact_vector_field(k: &Expr, cs: &ContactStructure) -> Result<VectorField> {
    cs.check(k)?;
    let x = Expr::var(cs.x());
    let (kx, ky, kz) = (k.partial(cs.x()), k.partial(cs.y()), k.partial(cs.z()));
    let field = VectorField::new(
        &cs.chart,
        vec![&ky - &(&x * &kz), -&kx, &(&x * &kx) - k],
    )?;
    if k.is_rational() {
        let i_sigma = pointwise_pairing(&cs.sigma, &field)?;
        let i_dsigma = interior_product(&field, &cs.d_sigma)?;
        let dk = Form::scalar(&cs.chart, k.clone())?.d()?;
        let rhs = dk.sub(&cs.sigma.scale(&kz))?;
        if i_sigma != k.neg() || i_dsigma != rhs {
            return Err(Error::Consistency(format!(
                "X_K = {field} fails the contact identities"
            )));
        }
    }
    Ok(field)
}

/// `{L, K}_c = L_x K_y − L_y K_x + K_z (L − x L_x) − L_z (K − x K_x)`.
pub fn contact_bracket(l: &Expr, k: &Expr, cs: &ContactStructure) -> Result<Expr> {
    cs.check(l)?;
    cs.check(k)?;
    let x = Expr::var(cs.x());
    let (lx, ly, lz) = (l.partial(cs.x()), l.partial(cs.y()), l.partial(cs.z()));
    let (kx, ky, kz) = (k.partial(cs.x()), k.partial(cs.y()), k.partial(cs.z()));
    let mut out = &(&lx * &ky) - &(&ly * &kx);
    out = &out + &(&kz * &(l - &(&x * &lx)));
    out = &out - &(&lz * &(k - &(&x * &kx)));
    Ok(out.normalized())
}

/// `L` with `L dσ∧σ = dα∧σ − 2 α∧dσ`.
pub fn contact_density(alpha: &Form, cs: &ContactStructure) -> Result<Expr> {
    let a = cs.one_form(alpha)?;
    let x = Expr::var(cs.x());
    let l = &(&(&a[1].partial(cs.x()) - &a[0].partial(cs.y()))
        + &(&x * &(&a[0].partial(cs.z()) - &a[2].partial(cs.x()))))
        - &(&Expr::int(2) * &a[2]);
    let l = l.normalized();
    if alpha.terms().all(|(_, c)| c.is_rational()) {
        let lhs = wedge(&alpha.d()?, &cs.sigma)?.sub(&wedge(alpha, &cs.d_sigma)?.scale(&Expr::int(2)))?;
        let top = lhs.coeff(0b111).try_div(&cs.volume.density())?;
        if top != l {
            return Err(Error::Consistency(format!(
                "contact density {l} disagrees with the wedge identity {top}"
            )));
        }
    }
    Ok(l)
}

pub fn contact_dual_ok(alpha: &Form, cs: &ContactStructure) -> Result<bool> {
    Ok(!contact_density(alpha, cs)?.is_zero())
}

/// `α̇ = −L_{X_K} α − (div X_K) α`, cross-checked against the lift path for
/// rational data.
pub fn contact_momentum_rhs(alpha: &Form, k: &Expr, cs: &ContactStructure) -> Result<Form> {
    let xk = contact_vector_field(k, cs)?;
    let rate = lie_poisson_rhs(&xk, &MomentumDensity::new(alpha.clone(), cs.volume.clone())?)?;
    if k.is_rational() && alpha.terms().all(|(_, c)| c.is_rational()) {
        let via = contact_momentum_rhs_via_lift(alpha, k, cs)?;
        if via != rate {
            return Err(Error::Consistency(format!(
                "coadjoint rate {rate} differs from the lift rate {via}"
            )));
        }
    }
    Ok(rate)
}

/// `VX_K^{c*} − (div X_K) α` with `y_a ↦ α_a` and `y_{a,b} ↦ ∂α_a/∂x^b`.
pub fn contact_momentum_rhs_via_lift(alpha: &Form, k: &Expr, cs: &ContactStructure) -> Result<Form> {
    let a = cs.one_form(alpha)?;
    let xk = contact_vector_field(k, cs)?;
    let dec = lift_decomposition(&xk, &cs.lift_chart())?;
    let mut bind = HashMap::new();
    for (i, ai) in a.iter().enumerate() {
        bind.insert(dec.jet.fiber_vars()[i].clone(), ai.clone());
        for b in 0..3 {
            bind.insert(dec.jet.jet(i, b).clone(), ai.partial(cs.chart.var(b)));
        }
    }
    let div = divergence(&xk, &cs.volume)?;
    let comps = dec
        .vertical
        .fiber_comps()
        .iter()
        .zip(&a)
        .map(|(v, ai)| Ok(&v.substitute(&bind)? - &(&div * ai)))
        .collect::<Result<Vec<_>>>()?;
    Form::one_form(&cs.chart, comps)
}

/// `L̇ = −{L, K}_c + 4 K_z L`.
pub fn contact_density_rhs(l: &Expr, k: &Expr, cs: &ContactStructure) -> Result<Expr> {
    let kz = k.partial(cs.z());
    Ok((&(&Expr::int(4) * &(&kz * l)) - &contact_bracket(l, k, cs)?).normalized())
}

/// The momentum-form Hamiltonian operator applied to `X`:
/// row `i` is `−Σ_j (α_j ∂_i X^j + ∂_j(α_i X^j))`.
pub fn hamiltonian_operator_momentum(
    alpha: &Form,
    x: &VectorField,
    cs: &ContactStructure,
) -> Result<Form> {
    let a = cs.one_form(alpha)?;
    x.chart().check_same(&cs.chart)?;
    let c = &cs.chart;
    let rows = (0..3)
        .map(|i| {
            let s: Expr = (0..3)
                .map(|j| &(&a[j] * &x.comp(j).partial(c.var(i))) + &(&a[i] * x.comp(j)).partial(c.var(j)))
                .sum();
            -s
        })
        .collect();
    Form::one_form(c, rows)
}

/// `X_L(K) + (4L + L_z) K_z`.
pub fn hamiltonian_operator_density(l: &Expr, k: &Expr, cs: &ContactStructure) -> Result<Expr> {
    let xl = contact_vector_field(l, cs)?;
    let coef = &(&Expr::int(4) * l) + &l.partial(cs.z());
    Ok((&xl.apply(k) + &(&coef * &k.partial(cs.z()))).normalized())
}

/// Integrands `H · J(L) K` and `−⟨X_H, J(α) X_K⟩` with `L` the density of `α`.
pub fn operator_relation_integrands(
    h: &Expr,
    k: &Expr,
    alpha: &Form,
    cs: &ContactStructure,
) -> Result<(Expr, Expr)> {
    let l = contact_density(alpha, cs)?;
    let dens = h * &hamiltonian_operator_density(&l, k, cs)?;
    let xh = contact_vector_field(h, cs)?;
    let xk = contact_vector_field(k, cs)?;
    let mom = pointwise_pairing(&hamiltonian_operator_momentum(alpha, &xk, cs)?, &xh)?;
    Ok((dens, -mom))
}

/// `X_K^{c*}` on `(x, y, z, alpha_x, alpha_y, alpha_z)`.
pub fn contact_lift_display(k: &Expr, cs: &ContactStructure) -> Result<VectorField> {
    complete_cotangent_lift(&contact_vector_field(k, cs)?, &cs.lift_chart())
}

/// Split of `X_K^{c*}` into vertical and holonomic parts.
pub fn contact_lift_decomposition(k: &Expr, cs: &ContactStructure) -> Result<LiftDecomposition> {
    lift_decomposition(&contact_vector_field(k, cs)?, &cs.lift_chart())
}

/// `W` with `⟨α, X_K⟩ − K L = div W` for the unit-density volume.
pub fn pairing_potential(alpha: &Form, k: &Expr, cs: &ContactStructure) -> Result<VectorField> {
    let a = cs.one_form(alpha)?;
    let x = Expr::var(cs.x());
    let xk = &x * k;
    VectorField::new(
        &cs.chart,
        vec![
            &(&xk * &a[2]) - &(k * &a[1]),
            k * &a[0],
            -(&xk * &a[0]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geomcalc::jacobi_lie_bracket;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cs() -> ContactStructure {
        ContactStructure::darboux()
    }

    fn e(cs: &ContactStructure, t: &str) -> Expr {
        cs.parse(t).unwrap().canonicalize().unwrap()
    }

    fn vf(cs: &ContactStructure, c: &[&str]) -> VectorField {
        VectorField::parse(cs.chart(), c).unwrap()
    }

    fn form(cs: &ContactStructure, c: &[&str]) -> Form {
        Form::parse_one_form(cs.chart(), c).unwrap()
    }

    #[test]
    fn structure() {
        let cs = cs();
        assert_eq!(cs.volume().density(), Expr::one());
        assert_eq!(reeb_field(&cs), vf(&cs, &["0", "0", "1"]));
        assert_eq!(cs.d_sigma(), &Form::basis(cs.chart(), &[0, 1]).unwrap());
    }

    #[test]
    fn vector_field_examples() {
        let cs = cs();
        let f = |k: &str| contact_vector_field(&e(&cs, k), &cs).unwrap();
        assert_eq!(f("1"), vf(&cs, &["0", "0", "-1"]));
        assert_eq!(f("x"), vf(&cs, &["0", "-1", "0"]));
        assert_eq!(f("z"), vf(&cs, &["-x", "0", "-z"]));
    }

    #[test]
    fn bracket_examples() {
        let cs = cs();
        let k = e(&cs, "x*y + z^2");
        assert!(contact_bracket(&k, &k, &cs).unwrap().is_zero());
        assert!(contact_bracket(&e(&cs, "x"), &e(&cs, "y"), &cs).unwrap().is_one());
        assert_eq!(contact_bracket(&Expr::one(), &k, &cs).unwrap(), k.partial(cs.z()));
    }

    #[test]
    fn density_examples() {
        let cs = cs();
        assert_eq!(contact_density(&form(&cs, &["0", "0", "1"]), &cs).unwrap(), Expr::int(-2));
        assert!(contact_density(&form(&cs, &["0", "x", "0"]), &cs).unwrap().is_one());
        assert!(contact_density(&form(&cs, &["1", "0", "0"]), &cs).unwrap().is_zero());
        assert!(contact_dual_ok(&form(&cs, &["0", "0", "1"]), &cs).unwrap());
        assert!(!contact_dual_ok(&form(&cs, &["1", "0", "0"]), &cs).unwrap());
        assert!(!contact_dual_ok(&Form::zero(cs.chart(), 1), &cs).unwrap());
    }

    #[test]
    fn momentum_and_density_rates() {
        let cs = cs();
        let dz = form(&cs, &["0", "0", "1"]);
        let z = e(&cs, "z");
        assert_eq!(contact_momentum_rhs(&dz, &z, &cs).unwrap(), form(&cs, &["0", "0", "3"]));
        assert!(contact_momentum_rhs(&dz, &Expr::zero(), &cs).unwrap().is_zero());
        assert_eq!(contact_density_rhs(&Expr::int(-2), &z, &cs).unwrap(), Expr::int(-6));
        assert!(contact_density_rhs(&e(&cs, "x*z"), &Expr::zero(), &cs).unwrap().is_zero());
    }

    #[test]
    fn printed_operators() {
        let cs = cs();
        let zero = Form::zero(cs.chart(), 1);
        let x = vf(&cs, &["y", "x*z", "1"]);
        assert!(hamiltonian_operator_momentum(&zero, &x, &cs).unwrap().is_zero());
        let dz = form(&cs, &["0", "0", "1"]);
        assert!(hamiltonian_operator_momentum(&dz, &vf(&cs, &["0", "0", "1"]), &cs)
            .unwrap()
            .is_zero());
        assert!(hamiltonian_operator_density(&Expr::zero(), &e(&cs, "x"), &cs)
            .unwrap()
            .is_zero());
        assert_eq!(
            hamiltonian_operator_density(&Expr::one(), &e(&cs, "z"), &cs).unwrap(),
            Expr::int(3)
        );
        let (a, b) = operator_relation_integrands(&e(&cs, "x"), &e(&cs, "y"), &zero, &cs).unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn lift_examples() {
        let cs = cs();
        let t = cs.lift_chart();
        assert_eq!(
            contact_lift_display(&Expr::one(), &cs).unwrap(),
            VectorField::parse(t.total(), &["0", "0", "-1", "0", "0", "0"]).unwrap()
        );
        // −x∂x − z∂z lifts with fiber part (α_x, 0, α_z)
        assert_eq!(
            contact_lift_display(&e(&cs, "z"), &cs).unwrap(),
            VectorField::parse(t.total(), &["-x", "0", "-z", "alpha_x", "0", "alpha_z"]).unwrap()
        );
    }

    #[test]
    fn random_identities() {
        let cs = cs();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let vars = cs.chart().vars().to_vec();
        for _ in 0..8 {
            let k = random::poly(&mut rng, &vars, 3, 4);
            let l = random::poly(&mut rng, &vars, 3, 4);
            let xk = contact_vector_field(&k, &cs).unwrap();
            let xl = contact_vector_field(&l, &cs).unwrap();
            let br = contact_bracket(&k, &l, &cs).unwrap();
            assert_eq!(
                jacobi_lie_bracket(&xk, &xl).unwrap(),
                contact_vector_field(&br, &cs).unwrap().neg()
            );
            assert_eq!(
                divergence(&xk, cs.volume()).unwrap(),
                &Expr::int(-2) * &k.partial(cs.z())
            );

            let alpha = random::one_form(&mut rng, cs.chart(), 2);
            let rate = contact_momentum_rhs(&alpha, &k, &cs).unwrap();
            let dens = contact_density(&alpha, &cs).unwrap();
            assert_eq!(
                contact_density(&rate, &cs).unwrap(),
                contact_density_rhs(&dens, &k, &cs).unwrap()
            );

            let w = pairing_potential(&alpha, &k, &cs).unwrap();
            let lhs = &pointwise_pairing(&alpha, &xk).unwrap() - &(&k * &dens);
            assert_eq!(lhs.normalized(), divergence(&w, cs.volume()).unwrap());
        }
    }
}
