//! Seeded randomized checks of the structural identities, and weak-form
//! quadrature probes of the printed Hamiltonian operators.

use std::fmt;
use std::str::FromStr;

use liftlab_core::canlift::{
    canonical_poisson, complete_cotangent_lift, euler_vector_field, hamiltonian_vector_field,
    lift_decomposition_on, momentum_function, section_jet_chart, vertical_lift, CotangentChart,
};
use liftlab_core::geomcalc::{
    divergence, interior_product, jacobi_lie_bracket, lie_derivative_form, pointwise_pairing,
    Chart, Form,
};
use liftlab_core::jetlift::{
    holonomic_part, obstruction_form, prolongation_bracket, vertical_representative, GenField,
    JetChart, JetConnection,
};
use liftlab_core::kinetic::contact::{
    contact_bracket, contact_density, contact_density_rhs, contact_momentum_rhs_via_lift,
    contact_vector_field, hamiltonian_operator_density, hamiltonian_operator_momentum,
    pairing_potential,
};
use liftlab_core::kinetic::{lie_poisson_rhs, ContactStructure, MomentumDensity, PlasmaSystem};
use liftlab_core::{random, Expr};
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SimError};
use crate::grid::{quadrature, Grid};
use crate::plan::sample;
use crate::trig::{seam_weight, trig_one_form, trig_poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Jets,
    Lifts,
    EulerField,
    Plasma,
    Contact,
    Intertwining,
    OperatorsWeak,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Jets,
        Suite::Lifts,
        Suite::EulerField,
        Suite::Plasma,
        Suite::Contact,
        Suite::Intertwining,
        Suite::OperatorsWeak,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jets => "jets",
            Suite::Lifts => "lifts",
            Suite::EulerField => "euler-field",
            Suite::Plasma => "plasma",
            Suite::Contact => "contact",
            Suite::Intertwining => "intertwining",
            Suite::OperatorsWeak => "operators-weak",
        }
    }
}

impl FromStr for Suite {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| SimError::Config(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub trials: usize,
    pub degree: u32,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trials: 20, degree: 3, seed: 0 }
    }
}

/// Outcome of one identity over all trials.
#[derive(Clone, Debug)]
pub struct CheckRow {
    pub identity: String,
    pub trials: usize,
    pub passed: usize,
    pub counterexample: Option<String>,
}

impl CheckRow {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

/// One weak-form comparison `∫lhs` vs `∫rhs` on the torus.
#[derive(Clone, Debug)]
pub struct ProbeRow {
    pub probe: String,
    pub instance: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// Change of the residual between the two quadrature resolutions.
    pub tolerance: f64,
    /// Control rows are expected to vanish up to `tolerance`.
    pub control: bool,
}

/// Residuals above this are flagged.
pub const PROBE_FLAG: f64 = 1e-6;

impl ProbeRow {
    pub fn residual(&self) -> f64 {
        self.lhs - self.rhs
    }

    pub fn flagged(&self) -> bool {
        self.residual().abs() > PROBE_FLAG
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub options: VerifyOptions,
    pub checks: Vec<CheckRow>,
    pub probes: Vec<ProbeRow>,
}

impl Report {
    /// Exact checks all passed; probe residuals never fail a report.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRow::ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = self.options;
        writeln!(
            f,
            "suite {} (trials {}, degree {}, seed {})",
            self.suite.name(),
            o.trials,
            o.degree,
            o.seed
        )?;
        for c in &self.checks {
            let tag = if c.ok() { "PASS" } else { "FAIL" };
            writeln!(f, "  {tag}  {}  {}/{}", c.identity, c.passed, c.trials)?;
            if let Some(cx) = &c.counterexample {
                writeln!(f, "        first counterexample: {cx}")?;
            }
        }
        if !self.probes.is_empty() {
            writeln!(
                f,
                "  {:<28} {:>4} {:>15} {:>15} {:>11} {:>9}  status",
                "probe", "inst", "lhs", "rhs", "residual", "disc.tol"
            )?;
        }
        for p in &self.probes {
            let status = match (p.flagged(), p.control) {
                (false, _) => "ok",
                (true, true) => "FLAGGED (control)",
                (true, false) => "FLAGGED discrepancy",
            };
            writeln!(
                f,
                "  {:<28} {:>4} {:>15.8e} {:>15.8e} {:>11.3e} {:>9.1e}  {status}",
                p.probe,
                p.instance,
                p.lhs,
                p.rhs,
                p.residual(),
                p.tolerance
            )?;
        }
        let verdict = if self.passed() { "PASSED" } else { "FAILED" };
        write!(f, "{verdict}")
    }
}

/// Accumulates trial outcomes per identity, keeping the first counterexample.
struct Checks {
    rows: Vec<CheckRow>,
}

impl Checks {
    fn new(names: &[&str]) -> Self {
        Checks {
            rows: names
                .iter()
                .map(|n| CheckRow {
                    identity: n.to_string(),
                    trials: 0,
                    passed: 0,
                    counterexample: None,
                })
                .collect(),
        }
    }

    /// `outcome` is `Ok(None)` on success and `Ok(Some(witness))` on failure.
    fn record(&mut self, i: usize, outcome: liftlab_core::Result<Option<String>>) {
        let row = &mut self.rows[i];
        row.trials += 1;
        let failure = match outcome {
            Ok(None) => {
                row.passed += 1;
                return;
            }
            Ok(Some(w)) => w,
            Err(e) => format!("error: {e}"),
        };
        row.counterexample.get_or_insert(failure);
    }
}

fn eq_or<T: PartialEq + fmt::Display>(lhs: T, rhs: T, input: impl FnOnce() -> String) -> Option<String> {
    (lhs != rhs).then(|| format!("{} gives {lhs} vs {rhs}", input()))
}

pub fn verify_suite(suite: Suite, opts: VerifyOptions) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (checks, probes) = match suite {
        Suite::Jets => (jets(&mut rng, opts)?, vec![]),
        Suite::Lifts => (lifts(&mut rng, opts)?, vec![]),
        Suite::EulerField => (euler(&mut rng, opts)?, vec![]),
        Suite::Plasma => (plasma(&mut rng, opts)?, vec![]),
        Suite::Contact => (contact(&mut rng, opts), vec![]),
        Suite::Intertwining => (intertwining(&mut rng, opts)?, vec![]),
        Suite::OperatorsWeak => (vec![], operator_probes(&mut rng, opts)?),
    };
    Ok(Report { suite, options: opts, checks, probes })
}

fn base_chart(m: usize) -> Result<Chart> {
    Ok(Chart::new(&["x", "y", "z"][..m])?)
}

/// Projectable field with base part on `x` and fiber part on `(x, u)`.
fn projectable(rng: &mut impl Rng, c: &JetChart, degree: u32) -> liftlab_core::Result<GenField> {
    let base = (0..c.base_dim())
        .map(|_| random::poly(rng, c.base_vars(), degree, 3))
        .collect();
    let xu: Vec<_> = c.base_vars().iter().chain(c.fiber_vars()).cloned().collect();
    let fiber = (0..c.fiber_dim())
        .map(|_| random::poly(rng, &xu, degree, 3))
        .collect();
    GenField::new(c, base, fiber)
}

fn jets(rng: &mut ChaCha8Rng, o: VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut checks = Checks::new(&[
        "Γ_J[ξ,η]_pro = [Γ_Jξ, Γ_Jη]_pro on (m,k)=(1,1)",
        "Γ_J[ξ,η]_pro = [Γ_Jξ, Γ_Jη]_pro on (m,k)=(2,2)",
        "Γ_J Γ_J ξ = Γ_J ξ",
        "Vξ + Hξ = ξ",
        "[Vξ,Vη]_pro = V[ξ,η]_pro + 𝔅(ξ,η), 𝔅 vertical",
    ]);
    for (slot, (m, k)) in [(1, 1), (2, 2)].into_iter().enumerate() {
        let c = JetChart::new(&["x", "y"][..m], &["u", "v"][..k])?;
        let conn = JetConnection::new(&c);
        for _ in 0..o.trials {
            let xi = projectable(rng, &c, o.degree)?;
            let eta = projectable(rng, &c, o.degree)?;
            let input = || format!("ξ = {xi}, η = {eta}");
            checks.record(
                slot,
                (|| {
                    let lhs = conn.apply(&prolongation_bracket(&xi, &eta)?)?;
                    let rhs = prolongation_bracket(&conn.apply(&xi)?, &conn.apply(&eta)?)?;
                    Ok(eq_or(lhs, rhs, input))
                })(),
            );
            checks.record(
                2,
                (|| {
                    let once = conn.apply(&xi)?;
                    Ok(eq_or(conn.apply(&once)?, once, input))
                })(),
            );
            checks.record(
                3,
                (|| {
                    let sum = vertical_representative(&xi).add(&holonomic_part(&xi)?)?;
                    Ok(eq_or(sum, xi.clone(), input))
                })(),
            );
            checks.record(
                4,
                (|| {
                    let vv = prolongation_bracket(
                        &vertical_representative(&xi),
                        &vertical_representative(&eta),
                    )?;
                    let b = obstruction_form(&xi, &eta)?;
                    let rhs = vertical_representative(&prolongation_bracket(&xi, &eta)?).add(&b)?;
                    if !b.is_vertical() {
                        return Ok(Some(format!("{} gives non-vertical 𝔅 = {b}", input())));
                    }
                    Ok(eq_or(vv, rhs, input))
                })(),
            );
        }
    }
    Ok(checks.rows)
}

fn lifts(rng: &mut ChaCha8Rng, o: VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut checks = Checks::new(&[
        "[X,Y]^{c*} = [X^{c*}, Y^{c*}]",
        "X_{P(X)} = X^{c*}",
        "L_{X^{c*}} θ = 0",
        "V[X,Y]^{c*} = [VX^{c*}, VY^{c*}]_pro",
        "𝔅(X^{c*}, Y^{c*}) = 0",
    ]);
    for trial in 0..o.trials {
        let m = trial % 3 + 1;
        let t = CotangentChart::with_default_names(&base_chart(m)?)?;
        let j = section_jet_chart(&t)?;
        let x = random::field(rng, t.base(), o.degree);
        let y = random::field(rng, t.base(), o.degree);
        let input = || format!("X = {x}, Y = {y}");
        let lifted = (|| {
            Ok::<_, liftlab_core::Error>((
                complete_cotangent_lift(&x, &t)?,
                complete_cotangent_lift(&y, &t)?,
                jacobi_lie_bracket(&x, &y)?,
            ))
        })();
        let (xc, yc, xy) = match lifted {
            Ok(v) => v,
            Err(e) => {
                for i in 0..5 {
                    checks.record(i, Err(e.clone()));
                }
                continue;
            }
        };
        checks.record(
            0,
            (|| Ok(eq_or(complete_cotangent_lift(&xy, &t)?, jacobi_lie_bracket(&xc, &yc)?, input)))(),
        );
        checks.record(
            1,
            (|| Ok(eq_or(hamiltonian_vector_field(&momentum_function(&x, &t)?, &t)?, xc.clone(), input)))(),
        );
        checks.record(
            2,
            (|| {
                let l = lie_derivative_form(&xc, &t.theta())?;
                Ok((!l.is_zero()).then(|| format!("{} gives {l}", input())))
            })(),
        );
        let decs = (|| {
            Ok::<_, liftlab_core::Error>((
                lift_decomposition_on(&x, &t, &j)?,
                lift_decomposition_on(&y, &t, &j)?,
                lift_decomposition_on(&xy, &t, &j)?,
            ))
        })();
        match decs {
            Ok((dx, dy, dxy)) => {
                checks.record(
                    3,
                    (|| Ok(eq_or(dxy.vertical.clone(), prolongation_bracket(&dx.vertical, &dy.vertical)?, input)))(),
                );
                checks.record(
                    4,
                    (|| {
                        let b = obstruction_form(&dx.lift, &dy.lift)?;
                        Ok((!b.is_zero()).then(|| format!("{} gives 𝔅 = {b}", input())))
                    })(),
                );
            }
            Err(e) => {
                checks.record(3, Err(e.clone()));
                checks.record(4, Err(e));
            }
        }
    }
    Ok(checks.rows)
}

fn euler(rng: &mut ChaCha8Rng, o: VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut checks = Checks::new(&[
        "i_{X_E} Ω = θ",
        "L_{X_E} Ω = −Ω",
        "L_{X_E} θ = −θ",
        "[X^{c*}, α^v] = (L_X α)^v",
    ]);
    for trial in 0..o.trials {
        let m = trial % 3 + 1;
        let t = CotangentChart::with_default_names(&base_chart(m)?)?;
        let e = euler_vector_field(&t);
        let (theta, omega) = (t.theta(), t.omega());
        let dim = || format!("dim {m}");
        checks.record(0, (|| Ok(eq_or(interior_product(&e, &omega)?, theta.clone(), dim)))());
        checks.record(1, (|| Ok(eq_or(lie_derivative_form(&e, &omega)?, omega.neg(), dim)))());
        checks.record(2, (|| Ok(eq_or(lie_derivative_form(&e, &theta)?, theta.neg(), dim)))());
        let x = random::field(rng, t.base(), o.degree);
        let a = random::one_form(rng, t.base(), o.degree);
        checks.record(
            3,
            (|| {
                let lhs = jacobi_lie_bracket(&complete_cotangent_lift(&x, &t)?, &vertical_lift(&a, &t)?)?;
                let rhs = vertical_lift(&lie_derivative_form(&x, &a)?, &t)?;
                Ok(eq_or(lhs, rhs, || format!("X = {x}, α = {a}")))
            })(),
        );
    }
    Ok(checks.rows)
}

fn small_rational(rng: &mut impl Rng, allow_negative: bool) -> BigRational {
    let lo = if allow_negative { -3 } else { 1 };
    loop {
        let n: i64 = rng.gen_range(lo..=3);
        if n != 0 {
            return BigRational::new(n.into(), rng.gen_range(1i64..=2).into());
        }
    }
}

fn random_plasma(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Result<PlasmaSystem> {
    let q = Chart::new(if n == 1 { &["q"][..] } else { &["q1", "q2"][..] })?;
    let phi = random::poly(rng, q.vars(), degree, 3);
    let m = small_rational(rng, false);
    let e = small_rational(rng, true);
    Ok(PlasmaSystem::new(n, m, e, phi)?)
}

fn plasma(rng: &mut ChaCha8Rng, o: VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut checks = Checks::new(&[
        "[X_h, X_f] = −X_{h,f}",
        "div X_h = 0",
        "momentum equation = −L_{X_h}Π − (div X_h)Π",
        "X_h^{c*} projects to X_h",
    ]);
    for trial in 0..o.trials {
        let sys = random_plasma(rng, trial % 2 + 1, o.degree)?;
        let ph = sys.phase();
        let h = sys.hamiltonian();
        let f = random::poly(rng, sys.chart().vars(), o.degree, 3);
        let xh = sys.hamiltonian_field();
        let input = || format!("h = {h}, f = {f}");
        checks.record(
            0,
            (|| {
                let lhs = jacobi_lie_bracket(&xh, &hamiltonian_vector_field(&f, ph)?)?;
                let rhs = hamiltonian_vector_field(&canonical_poisson(&h, &f, ph), ph)?.neg();
                Ok(eq_or(lhs, rhs, input))
            })(),
        );
        checks.record(
            1,
            (|| {
                let d = divergence(&xh, &sys.volume())?;
                Ok((!d.is_zero()).then(|| format!("{} gives div = {d}", input())))
            })(),
        );
        let pi = random::one_form(rng, sys.chart(), o.degree);
        checks.record(
            2,
            (|| {
                let lp = lie_poisson_rhs(&xh, &MomentumDensity::new(pi.clone(), sys.volume())?)?;
                Ok(eq_or(sys.momentum_rhs(&pi)?, lp, || format!("h = {h}, Π = {pi}")))
            })(),
        );
        checks.record(
            3,
            (|| {
                let t = sys.lift_chart()?;
                let lift = complete_cotangent_lift(&xh, &t)?;
                Ok(eq_or(liftlab_core::canlift::project_to_base(&lift, &t)?, xh.clone(), input))
            })(),
        );
    }
    Ok(checks.rows)
}

fn contact(rng: &mut ChaCha8Rng, o: VerifyOptions) -> Vec<CheckRow> {
    let cs = ContactStructure::darboux();
    let vars = cs.chart().vars().to_vec();
    let mut checks = Checks::new(&[
        "i_{X_K} σ = −K",
        "i_{X_K} dσ = dK − (i_R dK) σ",
        "div X_K = −2 ∂K/∂z",
        "[X_K, X_L] = −X_{K,L}_c",
        "⟨α, X_K⟩ − K L(α) = div W",
    ]);
    for _ in 0..o.trials {
        let k = random::poly(rng, &vars, o.degree, 4);
        let l = random::poly(rng, &vars, o.degree, 4);
        let input = || format!("K = {k}, L = {l}");
        let xk = match contact_vector_field(&k, &cs) {
            Ok(x) => x,
            Err(e) => {
                for i in 0..5 {
                    checks.record(i, Err(e.clone()));
                }
                continue;
            }
        };
        checks.record(0, (|| Ok(eq_or(pointwise_pairing(cs.sigma(), &xk)?, k.neg(), input)))());
        checks.record(
            1,
            (|| {
                let dk = Form::scalar(cs.chart(), k.clone())?.d()?;
                let rk = pointwise_pairing(&dk, cs.reeb())?;
                let rhs = dk.sub(&cs.sigma().scale(&rk))?;
                Ok(eq_or(interior_product(&xk, cs.d_sigma())?, rhs, input))
            })(),
        );
        checks.record(
            2,
            (|| {
                let rhs = (&Expr::int(-2) * &k.partial(cs.chart().var(2))).normalized();
                Ok(eq_or(divergence(&xk, cs.volume())?, rhs, input))
            })(),
        );
        checks.record(
            3,
            (|| {
                let xl = contact_vector_field(&l, &cs)?;
                let rhs = contact_vector_field(&contact_bracket(&k, &l, &cs)?, &cs)?.neg();
                Ok(eq_or(jacobi_lie_bracket(&xk, &xl)?, rhs, input))
            })(),
        );
        let alpha = random::one_form(rng, cs.chart(), o.degree);
        checks.record(
            4,
            (|| {
                let lhs = (&pointwise_pairing(&alpha, &xk)? - &(&k * &contact_density(&alpha, &cs)?)).normalized();
                let w = pairing_potential(&alpha, &k, &cs)?;
                Ok(eq_or(lhs, divergence(&w, cs.volume())?, || format!("K = {k}, α = {alpha}")))
            })(),
        );
    }
    checks.rows
}

fn intertwining(rng: &mut ChaCha8Rng, o: VerifyOptions) -> Result<Vec<CheckRow>> {
    let cs = ContactStructure::darboux();
    let vars = cs.chart().vars().to_vec();
    let mut checks = Checks::new(&[
        "contact: L(α̇) = L̇(L(α))",
        "plasma: f(Π̇) = ḟ(f(Π))",
        "contact momentum: coadjoint path = VX_K^{c*} − (div X_K)α path",
    ]);
    for trial in 0..o.trials {
        let k = random::poly(rng, &vars, o.degree, 4);
        let alpha = random::one_form(rng, cs.chart(), o.degree);
        let input = || format!("K = {k}, α = {alpha}");
        let coadjoint = (|| {
            let xk = contact_vector_field(&k, &cs)?;
            lie_poisson_rhs(&xk, &MomentumDensity::new(alpha.clone(), cs.volume().clone())?)
        })();
        checks.record(
            0,
            (|| {
                let rate = coadjoint.clone()?;
                let lhs = contact_density(&rate, &cs)?;
                let rhs = contact_density_rhs(&contact_density(&alpha, &cs)?, &k, &cs)?;
                Ok(eq_or(lhs, rhs, input))
            })(),
        );
        checks.record(
            2,
            (|| Ok(eq_or(coadjoint.clone()?, contact_momentum_rhs_via_lift(&alpha, &k, &cs)?, input)))(),
        );
        let sys = random_plasma(rng, trial % 2 + 1, o.degree)?;
        let pi = random::one_form(rng, sys.chart(), o.degree);
        checks.record(
            1,
            (|| {
                let lhs = sys.density(&sys.momentum_rhs(&pi)?)?;
                let rhs = sys.density_rhs(&sys.density(&pi)?);
                Ok(eq_or(lhs, rhs, || format!("h = {}, Π = {pi}", sys.hamiltonian())))
            })(),
        );
    }
    Ok(checks.rows)
}

/// Quadrature resolutions for the weak probes; the difference between them is
/// reported as the discretization tolerance.
const PROBE_GRIDS: [usize; 2] = [24, 32];

struct Probe {
    name: &'static str,
    control: bool,
    lhs: usize,
    rhs: usize,
}

fn operator_probes(rng: &mut ChaCha8Rng, o: VerifyOptions) -> Result<Vec<ProbeRow>> {
    let cs = ContactStructure::darboux();
    let chart = cs.chart().clone();
    let grids: Vec<Grid> = PROBE_GRIDS.iter().map(|&n| Grid::new(3, n)).collect::<Result<_>>()?;
    let weight = seam_weight(&chart, 0, 3);
    let mut rows = Vec::new();
    for instance in 0..o.trials {
        let h = &weight * &trig_poly(rng, &chart, 2, 2);
        let k = &weight * &trig_poly(rng, &chart, 2, 2);
        let alpha = trig_one_form(rng, &chart, 2, 2);
        let (integrands, probes) = probe_integrands(&h, &k, &alpha, &cs)?;
        // integrals[grid][integrand]
        let integrals = grids
            .iter()
            .map(|&g| {
                integrands
                    .iter()
                    .map(|e| Ok(quadrature(g, &sample(e, &chart, g)?)))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let fine = &integrals[1];
        for p in probes {
            let res = |v: &Vec<f64>| v[p.lhs] - v[p.rhs];
            rows.push(ProbeRow {
                probe: p.name.to_string(),
                instance,
                lhs: fine[p.lhs],
                rhs: fine[p.rhs],
                tolerance: (res(&integrals[1]) - res(&integrals[0])).abs(),
                control: p.control,
            });
        }
    }
    Ok(rows)
}

/// Distinct integrands, and probes comparing pairs of them.
fn probe_integrands(
    h: &Expr,
    k: &Expr,
    alpha: &Form,
    cs: &ContactStructure,
) -> Result<(Vec<Expr>, Vec<Probe>)> {
    let xh = contact_vector_field(h, cs)?;
    let xk = contact_vector_field(k, cs)?;
    let l = contact_density(alpha, cs)?;
    let z = cs.chart().var(2);
    let j_alpha = pointwise_pairing(&hamiltonian_operator_momentum(alpha, &xk, cs)?, &xh)?;
    let j_l = h * &hamiltonian_operator_density(&l, k, cs)?;
    // zeroth-order term L_z K instead of L_z K_z
    let j_l_alt = h * &(&contact_vector_field(&l, cs)?.apply(k)
        + &(&(&Expr::int(4) * &(&l * &k.partial(z))) + &(&l.partial(z) * k)));
    let lhk = &l * &contact_bracket(h, k, cs)?;
    let bracket = jacobi_lie_bracket(&xh, &xk)?;
    let minus_j_alpha = -&j_alpha;
    let integrands = vec![
        j_alpha,
        -pointwise_pairing(alpha, &bracket)?,
        j_l,
        lhk,
        j_l_alt,
        minus_j_alpha,
        pointwise_pairing(alpha, &xk)?,
        k * &l,
    ];
    let probe = |name, control, lhs, rhs| Probe { name, control, lhs, rhs };
    let probes = vec![
        probe("momentum operator", true, 0, 1),
        probe("density operator", false, 2, 3),
        probe("density operator (L_z K)", true, 4, 3),
        probe("operator relation", false, 2, 5),
        probe("operator relation (L_z K, +)", true, 4, 0),
        probe("pairing", true, 6, 7),
    ];
    Ok((integrands, probes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> Report {
        verify_suite(suite, VerifyOptions { trials: 3, degree: 2, seed: 1 }).unwrap()
    }

    #[test]
    fn exact_suites_pass_on_small_samples() {
        for s in [Suite::Jets, Suite::Lifts, Suite::EulerField, Suite::Plasma, Suite::Contact, Suite::Intertwining] {
            let r = small(s);
            assert!(r.passed(), "{r}");
            assert!(r.checks.iter().all(|c| c.trials > 0));
        }
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn failures_keep_first_counterexample() {
        let mut c = Checks::new(&["a"]);
        c.record(0, Ok(None));
        c.record(0, Ok(Some("first".into())));
        c.record(0, Ok(Some("second".into())));
        assert_eq!(c.rows[0].passed, 1);
        assert_eq!(c.rows[0].counterexample.as_deref(), Some("first"));
    }
}
