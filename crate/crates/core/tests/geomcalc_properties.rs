use liftlab_core::geomcalc::*;
use liftlab_core::random;
use liftlab_core::Expr;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn chart(m: usize) -> Chart {
    Chart::new(&["x", "y", "z", "w"][..m]).unwrap()
}

#[test]
fn d_squared_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for m in 1..=4 {
        let c = chart(m);
        for k in 0..m.saturating_sub(1) {
            for _ in 0..10 {
                let w = random::form(&mut rng, &c, k, 3);
                assert!(w.d().unwrap().d().unwrap().is_zero(), "{w}");
            }
        }
    }
}

/// Component formula `(L_X ω)_I = X^j ∂_j ω_I + Σ_k ω_{I[k→j]} ∂_{i_k} X^j`.
fn lie_by_components(x: &VectorField, w: &Form) -> Form {
    let c = w.chart();
    let m = c.dim();
    let k = w.degree();
    let mut terms = Vec::new();
    for b in 0u16..(1 << m) {
        if b.count_ones() as usize != k {
            continue;
        }
        let idx: Vec<usize> = blade_indices(b).collect();
        let mut coef = x.apply(&w.coeff(b));
        for slot in 0..k {
            for j in 0..m {
                let mut swapped = idx.clone();
                swapped[slot] = j;
                coef = &coef + &(&w.component(&swapped) * &x.comp(j).partial(c.var(idx[slot])));
            }
        }
        terms.push((idx, coef));
    }
    Form::from_terms(c, k, terms).unwrap()
}

#[test]
fn cartan_matches_component_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for m in 2..=4 {
        let c = chart(m);
        for k in 1..=2 {
            for _ in 0..10 {
                let x = random::field(&mut rng, &c, 2);
                let w = random::form(&mut rng, &c, k, 2);
                assert_eq!(lie_derivative_form(&x, &w).unwrap(), lie_by_components(&x, &w));
            }
        }
    }
}

#[test]
fn jacobi_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..25 {
        let m = rng.gen_range(1..=3);
        let c = chart(m);
        let [x, y, z] = [0, 1, 2].map(|_| random::field(&mut rng, &c, 3));
        let br = |a: &VectorField, b: &VectorField| jacobi_lie_bracket(a, b).unwrap();
        let s = br(&br(&x, &y), &z)
            .add(&br(&br(&y, &z), &x))
            .unwrap()
            .add(&br(&br(&z, &x), &y))
            .unwrap();
        assert!(s.is_zero());
    }
}

#[test]
fn divergence_defines_lie_derivative_of_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..25 {
        let m = rng.gen_range(1..=3);
        let c = chart(m);
        let x = random::field(&mut rng, &c, 3);
        // nonvanishing density: 1 + p^2 keeps the coefficient away from zero
        let p = random::poly(&mut rng, c.vars(), 2, 3);
        let rho = &Expr::one() + &(&p * &p);
        let mu = VolumeForm::with_density(&c, rho).unwrap();
        let div = divergence(&x, &mu).unwrap();
        assert_eq!(lie_derivative_form(&x, mu.form()).unwrap(), mu.form().scale(&div));
    }
}

#[test]
fn graded_symmetry_of_wedge() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let c = chart(4);
    for _ in 0..20 {
        let k = rng.gen_range(0..=2);
        let l = rng.gen_range(0..=2);
        let a = random::form(&mut rng, &c, k, 2);
        let b = random::form(&mut rng, &c, l, 2);
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        let expect = if (k * l) % 2 == 0 { ba } else { ba.neg() };
        assert_eq!(ab, expect);
    }
}

#[test]
fn interior_twice_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let c = chart(4);
    for _ in 0..20 {
        let x = random::field(&mut rng, &c, 2);
        let k = rng.gen_range(2..=4);
        let w = random::form(&mut rng, &c, k, 2);
        let once = interior_product(&x, &w).unwrap();
        assert!(interior_product(&x, &once).unwrap().is_zero());
    }
}
