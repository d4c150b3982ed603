//! Canonical rational functions.
//!
//! A [`RatFunc`] is `num / den` with integer-coefficient polynomials that are
//! coprime, share no integer content, and where `den` has a positive leading
//! coefficient. Zero is `0 / 1`. Common polynomial factors are always
//! cancelled, so `x/x` is `1` even though the original expression was
//! undefined on `x = 0`.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::{gcd, Poly};
use super::VarId;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(p, Poly::one()).expect("unit denominator")
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(
            Poly::constant(r.numer().clone()),
            Poly::constant(r.denom().clone()),
        )
        .expect("rational has nonzero denominator")
    }

    pub fn var(v: &VarId) -> Self {
        Self::from_poly(Poly::var(v))
    }

    /// Builds the canonical form of `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (mut num, mut den) = (num, den);
        if !num.is_constant() && !den.is_constant() {
            let g = gcd(&num, &den);
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let c = num.int_content().gcd(&den.int_content());
        if !c.is_one() {
            num = num.div_int(&c);
            den = den.div_int(&c);
        }
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFunc { num, den })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn vars(&self) -> Vec<VarId> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone())
                .expect("nonzero denominator");
        }
        if self.den.is_constant() && other.den.is_constant() {
            let (a, b) = (self.den.as_constant().unwrap(), other.den.as_constant().unwrap());
            let l = a.lcm(&b);
            let num = self.num.scale(&(&l / &a)).add(&other.num.scale(&(&l / &b)));
            return Self::new(num, Poly::constant(l)).expect("nonzero denominator");
        }
        let g = gcd(&self.den, &other.den);
        let da = self.den.div_exact(&g).expect("gcd divides");
        let db = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&db).add(&other.num.mul(&da));
        Self::new(num, da.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        // Cross-cancel before multiplying to keep the final gcd small.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::new(n1.mul(&n2), d1.mul(&d2)).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let k = n.unsigned_abs();
        // Powers of a canonical pair stay coprime with a positive leading denominator.
        Ok(RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn derivative(&self, v: &VarId) -> Self {
        let dn = self.num.derivative(v);
        if self.den.is_constant() {
            return Self::new(dn, self.den.clone()).expect("nonzero denominator");
        }
        let dd = self.den.derivative(v);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::new(num, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.mul(&Self::from_rational(c))
    }
}

/// Evaluates a polynomial with each variable replaced by a rational function.
pub(crate) fn compose_poly(p: &Poly, value: &impl Fn(&VarId) -> RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut t = RatFunc::from_poly(Poly::constant(c.clone()));
        for (v, e) in m.factors() {
            t = t.mul(&value(v).pow(e as i32).expect("nonnegative power"));
        }
        acc = acc.add(&t);
    }
    acc
}
