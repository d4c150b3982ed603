//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are kept sorted in descending graded-lexicographic order, where a
//! variable with a smaller [`VarId`] ranks higher. No stored coefficient is
//! zero, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::VarId;

/// A monomial: `(variable, exponent)` pairs sorted by variable, exponents > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(SmallVec<[(VarId, u32); 4]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(v: &VarId, exp: u32) -> Self {
        let mut m = SmallVec::new();
        if exp > 0 {
            m.push((v.clone(), exp));
        }
        Mono(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&VarId, u32)> {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    pub fn exponent(&self, v: &VarId) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Mono(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        let b = &other.0;
        for (v, e) in &self.0 {
            if j < b.len() && b[j].0 < *v {
                return None;
            }
            if j < b.len() && b[j].0 == *v {
                match e.cmp(&b[j].1) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v.clone(), e - b[j].1)),
                }
                j += 1;
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Mono(out))
    }

    /// Removes `v`, returning its exponent.
    fn split_off(&self, v: &VarId) -> (u32, Mono) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(w, x)| {
                if w == v {
                    e = *x;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (e, Mono(rest))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match ea.cmp(eb) {
                            Ordering::Equal => {}
                            o => return o,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(Mono::one(), c)],
            }
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn var(v: &VarId) -> Self {
        Poly {
            terms: vec![(Mono::var(v, 1), BigInt::one())],
        }
    }

    pub fn term(m: Mono, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    fn from_map(map: BTreeMap<Mono, BigInt>) -> Self {
        Poly {
            terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.factors().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: &VarId) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Poly { terms: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Poly::from_map(acc)
    }

    pub fn mul_term(&self, m: &Mono, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // Multiplying by a monomial preserves the term order.
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, cc)| (m.clone(), cc * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact division by an integer; every coefficient must be divisible.
    pub fn div_int(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, cc)| {
                    debug_assert!((cc % c).is_zero());
                    (m.clone(), cc / c)
                })
                .collect(),
        }
    }

    /// Gcd of all coefficients (non-negative; zero for the zero polynomial).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn derivative(&self, v: &VarId) -> Poly {
        let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let nm = m.div(&Mono::var(v, 1)).expect("exponent checked");
            *acc.entry(nm).or_insert_with(BigInt::zero) += c * BigInt::from(e);
        }
        Poly::from_map(acc)
    }

    /// Exact multivariate division: `Some(q)` with `self = q * d`, or `None`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            if self.terms.iter().all(|(_, cc)| (cc % &c).is_zero()) {
                return Some(self.div_int(&c));
            }
            return None;
        }
        let (lm, lc) = &d.terms[0];
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let qm = m.div(lm)?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        // Quotient terms are produced in strictly descending order.
        Some(Poly { terms: quot })
    }

    /// Coefficients of `self` as a polynomial in `v`, index = degree.
    pub fn to_univariate(&self, v: &VarId) -> Vec<Poly> {
        let mut maps: Vec<BTreeMap<Mono, BigInt>> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            let e = e as usize;
            if maps.len() <= e {
                maps.resize_with(e + 1, BTreeMap::new);
            }
            *maps[e].entry(rest).or_insert_with(BigInt::zero) += c;
        }
        maps.into_iter().map(Poly::from_map).collect()
    }

    pub fn from_univariate(coeffs: &[Poly], v: &VarId) -> Poly {
        let mut acc = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul_term(&Mono::var(v, e as u32), &BigInt::one()));
            }
        }
        acc
    }

    /// Multiplies so that the leading coefficient is positive.
    pub fn sign_normalized(self) -> Poly {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    pub fn eval_f64(&self, mut value: impl FnMut(&VarId) -> f64) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (v, e) in m.factors() {
                t *= value(v).powi(e as i32);
            }
            acc += t;
        }
        acc
    }
}

fn trim(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
    v
}

fn content_of(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(coeffs: &[Poly]) -> Vec<Poly> {
    let c = content_of(coeffs);
    if c.is_one() || c.is_zero() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|p| p.div_exact(&c).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&lr));
        }
        debug_assert!(next[dr].is_zero());
        r = trim(next);
    }
    r
}

/// Greatest common divisor over the integers, with positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().sign_normalized();
    }
    if b.is_zero() {
        return a.clone().sign_normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.int_content().gcd(&b.int_content()));
    }
    if a == b {
        return a.clone().sign_normalized();
    }
    let mut vars = a.vars();
    vars.extend(b.vars());
    let v = vars.into_iter().max().expect("non-constant polynomial has a variable");
    let ua = a.to_univariate(&v);
    let ub = b.to_univariate(&v);
    if ua.len() == 1 {
        return gcd(a, &content_of(&ub));
    }
    if ub.len() == 1 {
        return gcd(&content_of(&ua), b);
    }
    let c = gcd(&content_of(&ua), &content_of(&ub));
    let (mut p, mut q) = (primitive(&ua), primitive(&ub));
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_rem(&p, &q);
        if r.is_empty() {
            break;
        }
        p = q;
        q = primitive(&r);
        if q.len() == 1 {
            return c.sign_normalized();
        }
    }
    let g = Poly::from_univariate(&primitive(&q), &v);
    g.mul(&c).sign_normalized()
}
