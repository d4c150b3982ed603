//! Seeded random trigonometric polynomials on the torus.

use liftlab_core::geomcalc::{Chart, Form};
use liftlab_core::random::COEFF_RANGE;
use liftlab_core::Expr;
use rand::Rng;

/// `Σ c Π_a f_a(k_a x^a)` with `f ∈ {sin, cos}`, `k_a ∈ 0..=max_mode` (mode 0
/// contributes the factor 1) and
/// nonzero integer `c`; at most `max_terms` terms, never identically zero.
pub fn trig_poly<R: Rng + ?Sized>(rng: &mut R, chart: &Chart, max_terms: usize, max_mode: i64) -> Expr {
    let mut acc = Expr::zero();
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        }
        let mut t = Expr::int(c);
        for v in chart.vars() {
            let k = rng.gen_range(0..=max_mode);
            if k == 0 {
                continue;
            }
            let arg = &Expr::int(k) * &Expr::var(v);
            t = &t * &if rng.gen_bool(0.5) { Expr::sin(arg) } else { Expr::cos(arg) };
        }
        acc = &acc + &t;
    }
    acc
}

/// `(1 − cos x^axis)^power`, which vanishes to order `2·power` on the seam.
pub fn seam_weight(chart: &Chart, axis: usize, power: i32) -> Expr {
    let base = &Expr::one() - &Expr::cos(Expr::var(chart.var(axis)));
    base.pow(power).expect("non-rational power")
}

pub fn trig_one_form<R: Rng + ?Sized>(rng: &mut R, chart: &Chart, max_terms: usize, max_mode: i64) -> Form {
    let comps = (0..chart.dim())
        .map(|_| trig_poly(rng, chart, max_terms, max_mode))
        .collect();
    Form::one_form(chart, comps).expect("components live on the chart")
}
