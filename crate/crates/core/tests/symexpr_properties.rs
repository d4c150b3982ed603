use std::collections::HashMap;

use liftlab_core::symexpr::{parse_expr, Expr, VarId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn chart() -> Vec<VarId> {
    ["x", "y", "z", "w"]
        .iter()
        .enumerate()
        .map(|(i, n)| VarId::new(n, i as u32).unwrap())
        .collect()
}

/// Random polynomial text of total degree <= `deg` in the first `nv` variables.
fn poly_text(rng: &mut impl Rng, nv: usize, deg: u32) -> String {
    let names = ["x", "y", "z", "w"];
    let nterms = rng.gen_range(1..=4);
    let mut out = Vec::new();
    for _ in 0..nterms {
        let c: i32 = rng.gen_range(-3..=3);
        let mut t = format!("({c})");
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            t.push('*');
            t.push_str(names[rng.gen_range(0..nv)]);
        }
        out.push(t);
    }
    out.join(" + ")
}

/// Random rational expression of total degree <= 4 as a raw parse tree.
fn random_rational(rng: &mut impl Rng) -> Expr {
    let nv = rng.gen_range(1..=4);
    let text = match rng.gen_range(0..4) {
        0 => poly_text(rng, nv, 4),
        1 => format!("({})^2", poly_text(rng, nv, 2)),
        2 => format!(
            "({})*({}) - ({})",
            poly_text(rng, nv, 2),
            poly_text(rng, nv, 2),
            poly_text(rng, nv, 3)
        ),
        _ => format!("({}) / (1 + ({})^2)", poly_text(rng, nv, 2), poly_text(rng, nv, 1)),
    };
    parse_expr(&text, &chart()).unwrap()
}

fn random_point(rng: &mut impl Rng) -> HashMap<VarId, f64> {
    chart()
        .into_iter()
        .map(|v| (v, rng.gen_range(-2.0..2.0)))
        .collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs())
}

#[test]
fn canonicalize_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let e = random_rational(&mut rng);
        let c = e.canonicalize().unwrap();
        assert_eq!(c.canonicalize().unwrap(), c, "{e}");
    }
}

#[test]
fn equal_expressions_evaluate_equal() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let a = random_rational(&mut rng);
        let q = random_rational(&mut rng);
        if q.canonicalize().unwrap().is_zero() {
            continue;
        }
        // Same function written differently.
        let b = Expr::raw_quotient(Expr::raw_product(vec![a.clone(), q.clone()]), q.clone());
        assert!(a.expr_equal(&b).unwrap());
        let mut checked = 0;
        while checked < 10 {
            let p = random_point(&mut rng);
            let (Ok(va), Ok(vb)) = (a.eval_numeric(&p), b.eval_numeric(&p)) else {
                continue;
            };
            if q.eval_numeric(&p).unwrap().abs() < 1e-3 {
                continue;
            }
            assert!(close(va, vb), "{a} vs {b}: {va} {vb}");
            checked += 1;
        }
    }
}

#[test]
fn difference_zero_agrees_with_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let a = random_rational(&mut rng);
        let b = if rng.gen_bool(0.5) {
            a.canonicalize().unwrap()
        } else {
            random_rational(&mut rng)
        };
        let zero = (&a - &b).is_zero();
        assert_eq!(zero, a.expr_equal(&b).unwrap());
        // At rational points the canonical difference vanishes iff zero.
        let diff = (&a - &b).canonicalize().unwrap();
        let mut all_zero = true;
        for _ in 0..10 {
            let p: HashMap<VarId, f64> = chart()
                .into_iter()
                .map(|v| (v, rng.gen_range(-40i32..40) as f64 / 7.0))
                .collect();
            if let Ok(d) = diff.eval_numeric(&p) {
                all_zero &= d.abs() < 1e-9;
            }
        }
        assert_eq!(zero, all_zero, "{a} - {b}");
    }
}

#[test]
fn leibniz_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let vars = chart();
    for _ in 0..200 {
        let a = random_rational(&mut rng);
        let b = random_rational(&mut rng);
        let v = &vars[rng.gen_range(0..4)];
        let lhs = (&a * &b).partial(v);
        let rhs = &a.partial(v) * &b + &a * &b.partial(v);
        assert!(lhs.expr_equal(&rhs).unwrap());
    }
}

#[test]
fn mixed_partials_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let vars = chart();
    for _ in 0..200 {
        let e = random_rational(&mut rng);
        let u = &vars[rng.gen_range(0..4)];
        let v = &vars[rng.gen_range(0..4)];
        assert!(e
            .partial(u)
            .partial(v)
            .expr_equal(&e.partial(v).partial(u))
            .unwrap());
    }
}

#[test]
fn quotient_rule_matches_finite_differences() {
    let vars = chart();
    let e = parse_expr("(x+1)/y", &vars).unwrap();
    let d = e.partial(&vars[1]);
    assert!(d.expr_equal(&parse_expr("-(x+1)/y^2", &vars).unwrap()).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..5 {
        let mut p = random_point(&mut rng);
        let y0 = 0.5 + rng.gen_range(0.0..2.0);
        p.insert(vars[1].clone(), y0);
        let h = 1e-5;
        let mut pp = p.clone();
        pp.insert(vars[1].clone(), y0 + h);
        let mut pm = p.clone();
        pm.insert(vars[1].clone(), y0 - h);
        let fd = (e.eval_numeric(&pp).unwrap() - e.eval_numeric(&pm).unwrap()) / (2.0 * h);
        let exact = d.eval_numeric(&p).unwrap();
        assert!((fd - exact).abs() / exact.abs().max(1e-12) < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_rational(&mut rng).canonicalize().unwrap();
        let back = parse_expr(&c.to_string(), &chart()).unwrap().canonicalize().unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn substitution_commutes_with_evaluation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = chart();
        let e = random_rational(&mut rng);
        let img = random_rational(&mut rng);
        let mut b = HashMap::new();
        b.insert(vars[0].clone(), img.clone());
        let s = e.substitute(&b);
        let p = random_point(&mut rng);
        if let (Ok(s), Ok(xv)) = (s, img.eval_numeric(&p)) {
            let mut q = p.clone();
            q.insert(vars[0].clone(), xv);
            if let (Ok(a), Ok(bv)) = (s.eval_numeric(&p), e.eval_numeric(&q)) {
                prop_assert!((a - bv).abs() <= 1e-8 * (1.0 + a.abs()));
            }
        }
    }
}
