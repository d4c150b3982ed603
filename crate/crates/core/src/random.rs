//! Seeded random polynomial data for identity checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::geomcalc::{Chart, Form, VectorField};
use crate::symexpr::{Expr, VarId};

/// Coefficients are drawn from `-COEFF_RANGE..=COEFF_RANGE`.
pub const COEFF_RANGE: i64 = 3;

/// Random polynomial of total degree `<= degree` in `vars` with at most
/// `max_terms` monomials.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, vars: &[VarId], degree: u32, max_terms: usize) -> Expr {
    let nterms = rng.gen_range(1..=max_terms.max(1));
    let mut acc = Expr::zero();
    for _ in 0..nterms {
        let c = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        if c == 0 {
            continue;
        }
        let mut t = Expr::int(c);
        if !vars.is_empty() {
            for _ in 0..rng.gen_range(0..=degree) {
                t = &t * &Expr::var(vars.choose(rng).expect("nonempty"));
            }
        }
        acc = &acc + &t;
    }
    acc
}

/// Like [`poly`] but never identically zero.
pub fn nonzero_poly<R: Rng + ?Sized>(rng: &mut R, vars: &[VarId], degree: u32, max_terms: usize) -> Expr {
    loop {
        let p = poly(rng, vars, degree, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn field<R: Rng + ?Sized>(rng: &mut R, chart: &Chart, degree: u32) -> VectorField {
    let comps = (0..chart.dim())
        .map(|_| poly(rng, chart.vars(), degree, 3))
        .collect();
    VectorField::new(chart, comps).expect("components live on the chart")
}

pub fn one_form<R: Rng + ?Sized>(rng: &mut R, chart: &Chart, degree: u32) -> Form {
    let comps = (0..chart.dim())
        .map(|_| poly(rng, chart.vars(), degree, 3))
        .collect();
    Form::one_form(chart, comps).expect("components live on the chart")
}

/// Random k-form with polynomial coefficients.
pub fn form<R: Rng + ?Sized>(rng: &mut R, chart: &Chart, k: usize, degree: u32) -> Form {
    let m = chart.dim();
    let mut terms = Vec::new();
    for b in 0u32..(1 << m) {
        if b.count_ones() as usize == k && rng.gen_bool(0.6) {
            let idx: Vec<usize> = (0..m).filter(|i| b & (1 << i) != 0).collect();
            terms.push((idx, poly(rng, chart.vars(), degree, 3)));
        }
    }
    Form::from_terms(chart, k, terms).expect("valid terms")
}
