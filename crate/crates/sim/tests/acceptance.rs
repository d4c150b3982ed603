//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use liftlab_core::kinetic::contact::ContactStructure;
use liftlab_core::kinetic::PlasmaSystem;
use liftlab_sim::grid::quadrature;
use liftlab_sim::run::{initial_state, integrate};
use liftlab_sim::{verify_suite, Grid, GridField, Model, Physics, Problem, Report, Suite, VerifyOptions};
use num_rational::BigRational;

const L0: &str = "2 + sin(x)*sin(y)*sin(z)";
const ALPHA0: [&str; 3] = ["0", "-cos(x)*sin(y)*sin(z)", "-1"];
const T_END: f64 = 0.1;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(s: Suite, seed: u64) -> Report {
    verify_suite(s, VerifyOptions { trials: 25, degree: 3, seed }).expect("suite runs")
}

/// All listed check rows passed; detail names each row with its count.
fn rows(r: &Report, idx: &[usize]) -> Outcome {
    let pass = idx.iter().all(|&i| r.checks[i].ok());
    let detail = idx
        .iter()
        .map(|&i| {
            let c = &r.checks[i];
            let mut s = format!("{} {}/{}", c.identity, c.passed, c.trials);
            if let Some(cx) = &c.counterexample {
                s.push_str(&format!(" [{cx}]"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { pass, detail }
}

fn contact_run(model: Model, init: &[&str], n: usize, dt: f64, steps: usize) -> (Problem, GridField) {
    let cs = ContactStructure::darboux();
    let k = cs.parse("z").unwrap();
    let problem = Problem::contact(model, k, n).unwrap();
    let init: Vec<String> = init.iter().map(|s| s.to_string()).collect();
    let (mut state, _) = initial_state(&problem, &init, true).unwrap();
    integrate(&problem, &mut state, dt, steps).unwrap();
    (problem, state)
}

fn density_at(n: usize, dt: f64) -> GridField {
    contact_run(Model::ContactDensity, &[L0], n, dt, (T_END / dt).round() as usize).1
}

fn in_window(g: Grid, idx: usize) -> bool {
    let c = g.coords(idx);
    (1.0..=4.0).contains(&c[0]) && (1.0..=4.0).contains(&c[2])
}

/// Max differences between `fine` restricted to the nodes of `coarse`, over
/// the whole grid and over the window x, z in [1, 4].
fn restricted_diff(coarse: &GridField, fine: &GridField) -> (f64, f64) {
    let (gc, gf) = (coarse.grid(), fine.grid());
    let r = gf.n() / gc.n();
    let (mut all, mut window) = (0.0f64, 0.0f64);
    for i in 0..gc.len() {
        let ijk = gc.unflatten(i);
        let j = gf.flatten(ijk.map(|v| v * r));
        let d = (coarse.data()[i] - fine.data()[j]).abs();
        all = all.max(d);
        if in_window(gc, i) {
            window = window.max(d);
        }
    }
    (all, window)
}

fn criterion_8() -> Outcome {
    let u: Vec<GridField> = [2e-3, 1e-3, 5e-4].iter().map(|&dt| density_at(32, dt)).collect();
    let temporal = (u[0].max_abs_diff(&u[1]) / u[1].max_abs_diff(&u[2])).log2();
    let v: Vec<GridField> = [16, 32, 64].iter().map(|&n| density_at(n, 1e-4)).collect();
    // successive differences, both on the n = 16 nodes
    let (a01, w01) = restricted_diff(&v[0], &v[1]);
    let (a12, w12) = restricted_diff(&restrict(&v[1], v[0].grid()), &v[2]);
    let spatial = (a01 / a12).log2();
    let spatial_window = (w01 / w12).log2();
    Outcome {
        pass: temporal >= 3.8 && spatial >= 3.5,
        detail: format!(
            "temporal order {temporal:.2} (need 3.8); spatial order {spatial:.2} on the full torus (need 3.5), \
             {spatial_window:.2} on x,z in [1,4]"
        ),
    }
}

/// Samples `u` at the nodes of the coarser grid `g`.
fn restrict(u: &GridField, g: Grid) -> GridField {
    let r = u.grid().n() / g.n();
    let data = (0..g.len())
        .map(|i| u.data()[u.grid().flatten(g.unflatten(i).map(|v| v * r))])
        .collect();
    GridField::from_data(g, u.comps(), data)
}

fn criterion_9() -> Outcome {
    let (n, dt, cadence) = (64, 5e-4, 40);
    let outputs = (T_END / dt).round() as usize / cadence;
    let cs = ContactStructure::darboux();
    let k = cs.parse("z").unwrap();
    let dens = Problem::contact(Model::ContactDensity, k.clone(), n).unwrap();
    let mom = Problem::contact(Model::ContactMomentum, k, n).unwrap();
    let (mut l, _) = initial_state(&dens, &[L0.to_string()], true).unwrap();
    let alpha0: Vec<String> = ALPHA0.iter().map(|s| s.to_string()).collect();
    let (mut a, _) = initial_state(&mom, &alpha0, true).unwrap();
    let g = dens.grid();
    let (mut all, mut window) = (0.0f64, 0.0f64);
    for out in 0..=outputs {
        if out > 0 {
            integrate(&dens, &mut l, dt, cadence).unwrap();
            integrate(&mom, &mut a, dt, cadence).unwrap();
        }
        let mapped = mom.density_of(a.data());
        for (i, (x, y)) in mapped.iter().zip(l.data()).enumerate() {
            let d = (x - y).abs();
            all = all.max(d);
            if in_window(g, i) {
                window = window.max(d);
            }
        }
    }
    Outcome {
        pass: all <= 1e-3,
        detail: format!("max |L(α) - L| {all:.2e} (need 1e-3), {window:.2e} on x,z in [1,4]"),
    }
}

fn criterion_10() -> Outcome {
    let one = BigRational::from_integer(1.into());
    let sys = PlasmaSystem::one_dim(one.clone(), one, "cos(q)").unwrap();
    let problem = Problem::new(Model::VlasovDensity, Physics::Vlasov(sys), 64).unwrap();
    let (mut f, _) = initial_state(&problem, &["1 + 3/10*sin(q)*sin(p)".to_string()], false).unwrap();
    let m0 = quadrature(f.grid(), f.data());
    integrate(&problem, &mut f, 1e-3, 100).unwrap();
    let drift = ((quadrature(f.grid(), f.data()) - m0) / m0).abs();
    Outcome { pass: drift <= 1e-8, detail: format!("relative mass drift {drift:.2e} (need 1e-8)") }
}

fn criterion_11() -> Outcome {
    let r = verify_suite(Suite::OperatorsWeak, VerifyOptions { trials: 10, degree: 3, seed: 0 }).unwrap();
    println!("{r}");
    let controls_ok = r.probes.iter().filter(|p| p.control).all(|p| !p.flagged());
    let flagged = r.probes.iter().filter(|p| p.flagged()).count();
    Outcome {
        pass: controls_ok,
        detail: format!(
            "{} probe rows, {flagged} flagged as discrepancies, control rows {}",
            r.probes.len(),
            if controls_ok { "within 1e-6" } else { "FLAGGED" }
        ),
    }
}

fn report(id: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let pass = o.pass && took <= limit;
    let tag = if pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {id:>2}: {tag}  ({:.2}s, limit {}s)  {}",
        took.as_secs_f64(),
        limit.as_secs(),
        o.detail
    );
    pass
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        report(1, secs(10), || rows(&suite(Suite::Lifts, 7), &[0])),
        report(2, secs(20), || rows(&suite(Suite::Lifts, 7), &[3, 4])),
        report(3, secs(20), || rows(&suite(Suite::Jets, 7), &[0, 1])),
        report(4, secs(10), || rows(&suite(Suite::EulerField, 7), &[0, 1, 2, 3])),
        report(5, secs(10), || rows(&suite(Suite::Contact, 7), &[0, 1, 2, 3])),
        report(6, secs(30), || rows(&suite(Suite::Intertwining, 7), &[0, 1])),
        report(7, secs(10), || rows(&suite(Suite::Intertwining, 7), &[2])),
        report(8, secs(300), criterion_8),
        report(9, secs(300), criterion_9),
        report(10, secs(60), criterion_10),
        report(11, secs(120), criterion_11),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
