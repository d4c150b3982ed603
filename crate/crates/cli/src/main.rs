//! `liftlab`: lifts, brackets, momentum maps, identity suites and grid runs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liftlab_core::canlift::{canonical_poisson, lift_decomposition, CotangentChart};
use liftlab_core::geomcalc::{jacobi_lie_bracket, Chart, Form, VectorField};
use liftlab_core::jetlift::{prolongation_bracket, GenField, JetChart};
use liftlab_core::kinetic::contact::{contact_bracket, contact_density};
use liftlab_core::kinetic::{ContactStructure, PlasmaSystem};
use liftlab_sim::config::Params;
use liftlab_sim::{run_simulation, verify_suite, Model, SimConfig, SimError, Suite, VerifyOptions};
use num_rational::BigRational;

#[derive(Parser)]
#[command(name = "liftlab", version, about = "Cotangent and jet lifts, kinetic momentum maps, periodic grid runs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print X^{c*}, VX^{c*} and HX^{c*} for a base vector field.
    Lift {
        /// Comma-separated components, one per base variable.
        #[arg(long)]
        field: String,
        /// Comma-separated base variables; fibers are named p_<var>.
        #[arg(long)]
        vars: String,
    },
    /// Print a bracket of two vector fields or two functions.
    Bracket {
        #[arg(long = "type", value_enum)]
        kind: BracketKind,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// jl: base variables. pro: base variables, `;`, fiber variables.
        /// canonical: positions, `;`, momenta. contact: fixed to x,y,z.
        #[arg(long)]
        vars: Option<String>,
    },
    /// Print the density of a momentum one-form.
    Density {
        /// `ax;ay;az` on the contact chart (x, y, z).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "plasma_pi", required_unless_present = "plasma_pi")]
        contact_alpha: Option<String>,
        /// `P_1[,P_2];P^1[,P^2]` on phase space (q, p) or (q1, q2, p1, p2).
        #[arg(long, allow_hyphen_values = true)]
        plasma_pi: Option<String>,
    },
    /// Run a randomized identity suite; exit 1 if an exact check fails.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Integrate a kinetic model on the periodic grid.
    Sim(Box<SimArgs>),
}

#[derive(Clone, Copy, ValueEnum)]
enum BracketKind {
    Jl,
    Pro,
    Contact,
    Canonical,
}

#[derive(Args)]
struct SimArgs {
    /// JSON run configuration; excludes the other run flags.
    #[arg(long, conflicts_with_all = ["model", "k", "h", "init"])]
    config: Option<PathBuf>,
    #[arg(long, required_unless_present = "config")]
    model: Option<String>,
    /// Contact Hamiltonian on (x, y, z).
    #[arg(long = "K", allow_hyphen_values = true)]
    k: Option<String>,
    /// Plasma Hamiltonian on (q, p).
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    e: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Initial data, `;`-separated, one expression per component.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "config")]
    init: Option<String>,
    #[arg(long, default_value_t = 32)]
    n: usize,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, default_value_t = 1)]
    cadence: usize,
    #[arg(long, default_value = "traj.csv")]
    out: PathBuf,
    #[arg(long, default_value = "diag.csv")]
    diag: PathBuf,
    #[arg(long)]
    allow_aperiodic: bool,
    #[arg(long)]
    seed: Option<u64>,
}

/// Message and process exit code.
struct Failure(String, u8);

impl From<liftlab_core::Error> for Failure {
    fn from(e: liftlab_core::Error) -> Self {
        Failure(e.to_string(), 2)
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        let code = e.exit_code() as u8;
        Failure(e.to_string(), code)
    }
}

type Out = Result<ExitCode, Failure>;

fn split(text: &str, sep: char) -> Vec<&str> {
    text.split(sep).map(str::trim).collect()
}

fn chart(vars: &str) -> Result<Chart, Failure> {
    Ok(Chart::new(&split(vars, ','))?)
}

fn lift(field: &str, vars: &str) -> Out {
    let base = chart(vars)?;
    let t = CotangentChart::with_default_names(&base)?;
    let x = VectorField::parse(&base, &split(field, ','))?;
    let d = lift_decomposition(&x, &t)?;
    println!("X^c*  = {}", d.lift);
    println!("VX^c* = {}", d.vertical);
    println!("HX^c* = {}", d.holonomic);
    Ok(ExitCode::SUCCESS)
}

fn two_sided(vars: &str) -> Result<(Vec<&str>, Vec<&str>), Failure> {
    match split(vars, ';').as_slice() {
        [l, r] => Ok((split(l, ','), split(r, ','))),
        _ => Err(Failure(format!("expected `<vars>;<vars>`, got `{vars}`"), 2)),
    }
}

fn bracket(kind: BracketKind, a: &str, b: &str, vars: Option<&str>) -> Out {
    let need = || vars.ok_or_else(|| Failure("--vars is required for this bracket".into(), 2));
    let text = match kind {
        BracketKind::Jl => {
            let c = chart(need()?)?;
            let x = VectorField::parse(&c, &split(a, ','))?;
            let y = VectorField::parse(&c, &split(b, ','))?;
            jacobi_lie_bracket(&x, &y)?.to_string()
        }
        BracketKind::Pro => {
            let (base, fiber) = two_sided(need()?)?;
            let jet = JetChart::new(&base, &fiber)?;
            let field = |s: &str| -> Result<GenField, Failure> {
                let (bc, fc) = two_sided(s)?;
                Ok(GenField::parse(&jet, &bc, &fc)?)
            };
            prolongation_bracket(&field(a)?, &field(b)?)?.to_string()
        }
        BracketKind::Contact => {
            if vars.is_some_and(|v| split(v, ',') != ["x", "y", "z"]) {
                return Err(Failure("the contact bracket uses the chart x,y,z".into(), 2));
            }
            let cs = ContactStructure::darboux();
            contact_bracket(&cs.parse(a)?, &cs.parse(b)?, &cs)?.to_string()
        }
        BracketKind::Canonical => {
            let (q, p) = two_sided(need()?)?;
            let t = CotangentChart::new(&Chart::new(&q)?, &p)?;
            canonical_poisson(&t.parse(a)?, &t.parse(b)?, &t).to_string()
        }
    };
    println!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn density(contact_alpha: Option<&str>, plasma_pi: Option<&str>) -> Out {
    let f = match (contact_alpha, plasma_pi) {
        (Some(alpha), _) => {
            let cs = ContactStructure::darboux();
            let alpha = Form::parse_one_form(cs.chart(), &split(alpha, ';'))?;
            contact_density(&alpha, &cs)?
        }
        (None, Some(pi)) => {
            let (lower, upper) = two_sided(pi)?;
            let n = lower.len();
            let zero = BigRational::from_integer(0.into());
            let one = BigRational::from_integer(1.into());
            let phi = liftlab_core::Expr::zero();
            let sys = PlasmaSystem::new(n, one, zero, phi)?;
            let parse = |s: &[&str]| s.iter().map(|t| sys.phase().total().parse(t)).collect::<Result<Vec<_>, _>>();
            let pi = sys.momentum(parse(&lower)?, parse(&upper)?)?;
            sys.density(&pi)?
        }
        (None, None) => unreachable!("clap requires one of the two"),
    };
    println!("{f}");
    Ok(ExitCode::SUCCESS)
}

fn verify(suite: &str, opts: VerifyOptions) -> Out {
    let report = verify_suite(suite.parse::<Suite>()?, opts)?;
    println!("{report}");
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn sim_config(a: SimArgs) -> Result<SimConfig, Failure> {
    if let Some(path) = a.config {
        return Ok(SimConfig::load(&path)?);
    }
    let model: Model = a.model.as_deref().unwrap_or_default().parse()?;
    Ok(SimConfig {
        model,
        k: a.k,
        h: a.h,
        params: Params { m: a.m, e: a.e, phi: a.phi },
        init: split(a.init.as_deref().unwrap_or_default(), ';').into_iter().map(String::from).collect(),
        n: a.n,
        dt: a.dt,
        steps: a.steps,
        cadence: a.cadence,
        out: a.out,
        diag: a.diag,
        allow_aperiodic: a.allow_aperiodic,
        seed: a.seed,
    })
}

fn sim(a: SimArgs) -> Out {
    let cfg = sim_config(a)?;
    let summary = run_simulation(&cfg)?;
    for w in &summary.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(last) = summary.diagnostics.last() {
        println!(
            "{} steps, {} diagnostics rows; t = {}, mass = {:.12e}, min = {:.6e}, max = {:.6e}",
            cfg.steps,
            summary.diagnostics.len(),
            last.t,
            last.mass,
            last.min,
            last.max
        );
    }
    println!("wrote {}, {}, {}", cfg.out.display(), cfg.diag.display(), cfg.manifest_path().display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Lift { field, vars } => lift(&field, &vars),
        Command::Bracket { kind, a, b, vars } => bracket(kind, &a, &b, vars.as_deref()),
        Command::Density { contact_alpha, plasma_pi } => density(contact_alpha.as_deref(), plasma_pi.as_deref()),
        Command::Verify { suite, trials, degree, seed } => verify(&suite, VerifyOptions { trials, degree, seed }),
        Command::Sim(a) => sim(*a),
    };
    result.unwrap_or_else(|Failure(msg, code)| {
        eprintln!("error: {msg}");
        ExitCode::from(code)
    })
}
