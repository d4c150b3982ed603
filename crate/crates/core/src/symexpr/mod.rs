//! Exact symbolic scalar expressions.
//!
//! An [`Expr`] is an immutable, cheaply clonable tree. Expressions without
//! `sin`/`cos`/`exp` leaves form the *rational* class and have a canonical
//! form, a reduced quotient of integer polynomials (see [`RatFunc`]);
//! arithmetic on rational operands always produces that canonical form, so
//! `==` on results of arithmetic is mathematical equality. Transcendental
//! leaves make an expression *numeric-only*: it can be differentiated and
//! evaluated but not compared symbolically.

mod compile;
mod parse;
pub mod poly;
pub mod ratfunc;
mod var;

use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use compile::CompiledExpr;
pub use parse::parse_expr;
pub use poly::{Mono, Poly};
pub use ratfunc::RatFunc;
pub use var::VarId;

use crate::error::{Error, Result};

/// Magnitudes below this count as division by zero in numeric evaluation.
pub const EVAL_DIVISOR_FLOOR: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "exp" => Some(Func::Exp),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
        }
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Exp => x.exp(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExprClass {
    Rational,
    NumericOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Const(BigRational),
    Var(VarId),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Pow(Expr, i32),
    Quotient(Expr, Expr),
    Func(Func, Expr),
    /// Canonical rational function.
    Rational(RatFunc),
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    node: Node,
    class: ExprClass,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr(Arc<Inner>);

impl Expr {
    fn from_node(node: Node) -> Expr {
        let class = match &node {
            Node::Const(_) | Node::Var(_) | Node::Rational(_) => ExprClass::Rational,
            Node::Func(..) => ExprClass::NumericOnly,
            Node::Pow(e, _) => e.class(),
            Node::Quotient(a, b) => join(a.class(), b.class()),
            Node::Sum(xs) | Node::Product(xs) => xs
                .iter()
                .map(Expr::class)
                .fold(ExprClass::Rational, join),
        };
        Expr(Arc::new(Inner { node, class }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn class(&self) -> ExprClass {
        self.0.class
    }

    pub fn is_rational(&self) -> bool {
        self.class() == ExprClass::Rational
    }

    // -- raw tree constructors (no canonicalization) -------------------------

    pub fn raw_const(c: BigRational) -> Expr {
        Self::from_node(Node::Const(c))
    }

    pub fn raw_var(v: &VarId) -> Expr {
        Self::from_node(Node::Var(v.clone()))
    }

    pub fn raw_sum(terms: Vec<Expr>) -> Expr {
        Self::from_node(Node::Sum(terms))
    }

    pub fn raw_product(factors: Vec<Expr>) -> Expr {
        Self::from_node(Node::Product(factors))
    }

    pub fn raw_pow(base: Expr, exp: i32) -> Expr {
        Self::from_node(Node::Pow(base, exp))
    }

    pub fn raw_quotient(num: Expr, den: Expr) -> Expr {
        Self::from_node(Node::Quotient(num, den))
    }

    pub fn func(f: Func, arg: Expr) -> Expr {
        Self::from_node(Node::Func(f, arg))
    }

    // -- canonical constructors ----------------------------------------------

    pub fn from_ratfunc(r: RatFunc) -> Expr {
        Self::from_node(Node::Rational(r))
    }

    pub fn zero() -> Expr {
        Self::from_ratfunc(RatFunc::zero())
    }

    pub fn one() -> Expr {
        Self::from_ratfunc(RatFunc::one())
    }

    pub fn int(n: i64) -> Expr {
        Self::from_ratfunc(RatFunc::from_poly(Poly::constant(BigInt::from(n))))
    }

    pub fn rational(c: &BigRational) -> Expr {
        Self::from_ratfunc(RatFunc::from_rational(c))
    }

    pub fn frac(n: i64, d: i64) -> Expr {
        Self::rational(&BigRational::new(n.into(), d.into()))
    }

    pub fn var(v: &VarId) -> Expr {
        Self::from_ratfunc(RatFunc::var(v))
    }

    pub fn sin(arg: Expr) -> Expr {
        Self::func(Func::Sin, arg)
    }

    pub fn cos(arg: Expr) -> Expr {
        Self::func(Func::Cos, arg)
    }

    pub fn exp(arg: Expr) -> Expr {
        Self::func(Func::Exp, arg)
    }

    // -- queries ---------------------------------------------------------------

    /// Borrowed canonical form for rational expressions.
    fn rat(&self) -> Option<Cow<'_, RatFunc>> {
        match self.node() {
            Node::Rational(r) => Some(Cow::Borrowed(r)),
            _ if self.is_rational() => self.to_ratfunc().ok().map(Cow::Owned),
            _ => None,
        }
    }

    /// Canonical rational function of a rational-class expression.
    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        match self.node() {
            Node::Rational(r) => Ok(r.clone()),
            Node::Const(c) => Ok(RatFunc::from_rational(c)),
            Node::Var(v) => Ok(RatFunc::var(v)),
            Node::Sum(xs) => xs
                .iter()
                .try_fold(RatFunc::zero(), |acc, x| Ok(acc.add(&x.to_ratfunc()?))),
            Node::Product(xs) => xs
                .iter()
                .try_fold(RatFunc::one(), |acc, x| Ok(acc.mul(&x.to_ratfunc()?))),
            Node::Pow(b, n) => b.to_ratfunc()?.pow(*n),
            Node::Quotient(a, b) => a.to_ratfunc()?.div(&b.to_ratfunc()?),
            Node::Func(..) => Err(Error::UnsupportedClass(self.to_string())),
        }
    }

    /// True when this expression is the exact constant zero.
    pub fn is_zero(&self) -> bool {
        match self.node() {
            Node::Rational(r) => r.is_zero(),
            Node::Const(c) => c.is_zero(),
            _ => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self.node() {
            Node::Rational(r) => r.is_one(),
            Node::Const(c) => c.is_one(),
            _ => false,
        }
    }

    /// Exact constant value, if the expression is a canonical or literal constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.node() {
            Node::Rational(r) => r.as_rational(),
            Node::Const(c) => Some(c.clone()),
            _ => None,
        }
    }

    /// All variables occurring in the expression, in variable order.
    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<VarId>) {
        match self.node() {
            Node::Const(_) => {}
            Node::Var(v) => {
                out.insert(v.clone());
            }
            Node::Rational(r) => out.extend(r.vars()),
            Node::Sum(xs) | Node::Product(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            Node::Pow(b, _) | Node::Func(_, b) => b.collect_vars(out),
            Node::Quotient(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn depends_on(&self, v: &VarId) -> bool {
        self.vars().contains(v)
    }

    // -- arithmetic ------------------------------------------------------------

    pub fn add(&self, other: &Expr) -> Expr {
        if let (Some(a), Some(b)) = (self.rat(), other.rat()) {
            return Expr::from_ratfunc(a.add(&b));
        }
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut terms = Vec::new();
        for e in [self, other] {
            match e.node() {
                Node::Sum(xs) => terms.extend(xs.iter().cloned()),
                _ => terms.push(e.clone()),
            }
        }
        Expr::raw_sum(terms)
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Expr {
        if let Some(a) = self.rat() {
            return Expr::from_ratfunc(a.neg());
        }
        Expr::int(-1).mul(self)
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        if let (Some(a), Some(b)) = (self.rat(), other.rat()) {
            return Expr::from_ratfunc(a.mul(&b));
        }
        if self.is_zero() || other.is_zero() {
            return Expr::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut factors = Vec::new();
        for e in [self, other] {
            match e.node() {
                Node::Product(xs) => factors.extend(xs.iter().cloned()),
                _ => factors.push(e.clone()),
            }
        }
        Expr::raw_product(factors)
    }

    /// Quotient; fails only when the divisor is the exact rational zero.
    pub fn try_div(&self, other: &Expr) -> Result<Expr> {
        if let (Some(a), Some(b)) = (self.rat(), other.rat()) {
            return Ok(Expr::from_ratfunc(a.div(&b)?));
        }
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Expr::zero());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        Ok(Expr::raw_quotient(self.clone(), other.clone()))
    }

    pub fn pow(&self, n: i32) -> Result<Expr> {
        if let Some(a) = self.rat() {
            return Ok(Expr::from_ratfunc(a.pow(n)?));
        }
        Ok(match n {
            0 => Expr::one(),
            1 => self.clone(),
            _ => Expr::raw_pow(self.clone(), n),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Expr {
        self.mul(&Expr::rational(c))
    }

    // -- symbolic operations ---------------------------------------------------

    /// Canonical form; only defined for the rational class.
    pub fn canonicalize(&self) -> Result<Expr> {
        match self.node() {
            Node::Rational(_) => Ok(self.clone()),
            _ => Ok(Expr::from_ratfunc(self.to_ratfunc()?)),
        }
    }

    /// Canonical form when rational, otherwise the expression unchanged.
    pub fn normalized(&self) -> Expr {
        match self.node() {
            Node::Rational(_) => self.clone(),
            _ => self.canonicalize().unwrap_or_else(|_| self.clone()),
        }
    }

    /// Exact partial derivative. Rational inputs give canonical results;
    /// `sin`, `cos`, `exp` differentiate to their standard closed forms.
    pub fn partial(&self, v: &VarId) -> Expr {
        if let Some(r) = self.rat() {
            return Expr::from_ratfunc(r.derivative(v));
        }
        match self.node() {
            Node::Const(_) | Node::Var(_) | Node::Rational(_) => {
                unreachable!("rational nodes handled above")
            }
            Node::Sum(xs) => xs
                .iter()
                .fold(Expr::zero(), |acc, x| acc.add(&x.partial(v))),
            Node::Product(xs) => {
                let mut acc = Expr::zero();
                for i in 0..xs.len() {
                    let di = xs[i].partial(v);
                    if di.is_zero() {
                        continue;
                    }
                    let term = xs
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .fold(di, |t, (_, x)| t.mul(x));
                    acc = acc.add(&term);
                }
                acc
            }
            Node::Pow(b, n) => {
                let db = b.partial(v);
                if db.is_zero() {
                    return Expr::zero();
                }
                let lower = b.pow(n - 1).expect("non-rational base");
                Expr::int(*n as i64).mul(&lower).mul(&db)
            }
            Node::Quotient(a, b) => {
                let (da, db) = (a.partial(v), b.partial(v));
                let num = da.mul(b).sub(&a.mul(&db));
                let den = b.mul(b);
                num.try_div(&den).expect("divisor is not the zero constant")
            }
            Node::Func(f, a) => {
                let da = a.partial(v);
                if da.is_zero() {
                    return Expr::zero();
                }
                let outer = match f {
                    Func::Sin => Expr::cos(a.clone()),
                    Func::Cos => Expr::sin(a.clone()).neg(),
                    Func::Exp => self.clone(),
                };
                outer.mul(&da)
            }
        }
    }

    /// Simultaneous substitution of variables.
    pub fn substitute(&self, bindings: &HashMap<VarId, Expr>) -> Result<Expr> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        if let Some(r) = self.rat() {
            let all_rational = r.vars().iter().all(|v| {
                bindings.get(v).is_none_or(|b| b.is_rational())
            });
            if all_rational {
                let mut cache: HashMap<VarId, RatFunc> = HashMap::new();
                for v in r.vars() {
                    let rf = match bindings.get(&v) {
                        Some(b) => b.to_ratfunc()?,
                        None => RatFunc::var(&v),
                    };
                    cache.insert(v, rf);
                }
                let value = |v: &VarId| cache[v].clone();
                let num = ratfunc::compose_poly(r.numer(), &value);
                let den = ratfunc::compose_poly(r.denom(), &value);
                return Ok(Expr::from_ratfunc(num.div(&den)?));
            }
            return Expr::from_tree_of(&r).substitute(bindings);
        }
        Ok(match self.node() {
            Node::Const(_) | Node::Rational(_) => self.clone(),
            Node::Var(v) => bindings.get(v).cloned().unwrap_or_else(|| self.clone()),
            Node::Sum(xs) => {
                let mut acc = Expr::zero();
                for x in xs {
                    acc = acc.add(&x.substitute(bindings)?);
                }
                acc
            }
            Node::Product(xs) => {
                let mut acc = Expr::one();
                for x in xs {
                    acc = acc.mul(&x.substitute(bindings)?);
                }
                acc
            }
            Node::Pow(b, n) => b.substitute(bindings)?.pow(*n)?,
            Node::Quotient(a, b) => a.substitute(bindings)?.try_div(&b.substitute(bindings)?)?,
            Node::Func(f, a) => Expr::func(*f, a.substitute(bindings)?),
        })
    }

    /// Expands a canonical rational function into an explicit sum/product tree.
    fn from_tree_of(r: &RatFunc) -> Expr {
        let poly_tree = |p: &Poly| {
            let terms: Vec<Expr> = p
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut fs = vec![Expr::raw_const(BigRational::from_integer(c.clone()))];
                    for (v, e) in m.factors() {
                        let base = Expr::raw_var(v);
                        fs.push(if e == 1 { base } else { Expr::raw_pow(base, e as i32) });
                    }
                    Expr::raw_product(fs)
                })
                .collect();
            Expr::raw_sum(terms)
        };
        Expr::raw_quotient(poly_tree(r.numer()), poly_tree(r.denom()))
    }

    /// Structural equality of canonical forms.
    pub fn expr_equal(&self, other: &Expr) -> Result<bool> {
        Ok(self.to_ratfunc()? == other.to_ratfunc()?)
    }

    /// IEEE double evaluation with every variable supplied by `value`.
    pub fn eval_with(&self, value: &impl Fn(&VarId) -> Option<f64>) -> Result<f64> {
        let lookup = |v: &VarId| value(v).ok_or_else(|| Error::UnboundVariable(v.name().into()));
        match self.node() {
            Node::Const(c) => Ok(rational_to_f64(c)),
            Node::Var(v) => lookup(v),
            Node::Rational(r) => {
                for v in r.vars() {
                    lookup(&v)?;
                }
                let f = |v: &VarId| value(v).unwrap_or(f64::NAN);
                let d = r.denom().eval_f64(f);
                check_divisor(d)?;
                Ok(r.numer().eval_f64(f) / d)
            }
            Node::Sum(xs) => xs.iter().try_fold(0.0, |acc, x| Ok(acc + x.eval_with(value)?)),
            Node::Product(xs) => xs.iter().try_fold(1.0, |acc, x| Ok(acc * x.eval_with(value)?)),
            Node::Pow(b, n) => {
                let x = b.eval_with(value)?;
                if *n < 0 {
                    check_divisor(x)?;
                }
                Ok(x.powi(*n))
            }
            Node::Quotient(a, b) => {
                let d = b.eval_with(value)?;
                check_divisor(d)?;
                Ok(a.eval_with(value)? / d)
            }
            Node::Func(f, a) => Ok(f.apply(a.eval_with(value)?)),
        }
    }

    pub fn eval_numeric(&self, point: &HashMap<VarId, f64>) -> Result<f64> {
        self.eval_with(&|v| point.get(v).copied())
    }
}

fn join(a: ExprClass, b: ExprClass) -> ExprClass {
    if a == ExprClass::Rational && b == ExprClass::Rational {
        ExprClass::Rational
    } else {
        ExprClass::NumericOnly
    }
}

fn check_divisor(d: f64) -> Result<()> {
    if d.abs() < EVAL_DIVISOR_FLOOR {
        Err(Error::EvaluationDomain(format!("division by {d:e}")))
    } else {
        Ok(())
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// Canonical form of `e`; errors on numeric-only input.
pub fn canonicalize(e: &Expr) -> Result<Expr> {
    e.canonicalize()
}

pub fn partial(e: &Expr, v: &VarId) -> Expr {
    e.partial(v)
}

pub fn substitute(e: &Expr, bindings: &HashMap<VarId, Expr>) -> Result<Expr> {
    e.substitute(bindings)
}

pub fn expr_equal(a: &Expr, b: &Expr) -> Result<bool> {
    a.expr_equal(b)
}

pub fn eval_numeric(e: &Expr, point: &HashMap<VarId, f64>) -> Result<f64> {
    e.eval_numeric(point)
}

// -- operator sugar ----------------------------------------------------------

macro_rules! binop {
    ($tr:ident, $method:ident, $f:expr) => {
        impl ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $f(self, rhs)
            }
        }
        impl ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $f(&self, &rhs)
            }
        }
        impl ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $f(&self, rhs)
            }
        }
        impl ops::$tr<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $f(self, &rhs)
            }
        }
    };
}

binop!(Add, add, Expr::add);
binop!(Sub, sub, Expr::sub);
binop!(Mul, mul, Expr::mul);
// Division by the exact zero constant panics; use `try_div` for fallible input.
binop!(Div, div, |a: &Expr, b: &Expr| a.try_div(b).expect("division by zero"));

impl ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| a.add(&b))
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl From<&VarId> for Expr {
    fn from(v: &VarId) -> Expr {
        Expr::var(v)
    }
}

// -- display -------------------------------------------------------------------

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_POW: u8 = 3;
const PREC_ATOM: u8 = 4;

fn write_rational_const(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn const_prec(c: &BigRational) -> u8 {
    if c.is_negative() {
        PREC_SUM
    } else if c.denom().is_one() {
        PREC_ATOM
    } else {
        PREC_PRODUCT
    }
}

fn write_mono(f: &mut fmt::Formatter<'_>, m: &Mono) -> fmt::Result {
    for (i, (v, e)) in m.factors().enumerate() {
        if i > 0 {
            f.write_str("*")?;
        }
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else if c.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        if m.is_one() {
            write!(f, "{mag}")?;
        } else {
            // A leading `-` binds tighter than `^`, so keep an explicit factor.
            let leading_power = i == 0 && m.factors().next().is_some_and(|(_, e)| e > 1);
            if !mag.is_one() || (leading_power && c.is_negative()) {
                write!(f, "{mag}*")?;
            }
            write_mono(f, m)?;
        }
    }
    Ok(())
}

fn poly_prec(p: &Poly) -> u8 {
    match p.terms() {
        [] => PREC_ATOM,
        [(m, c)] => {
            if c.is_negative() {
                PREC_SUM
            } else if m.is_one() {
                PREC_ATOM
            } else if c.is_one() && m.factors().count() == 1 {
                let (_, e) = m.factors().next().unwrap();
                if e == 1 {
                    PREC_ATOM
                } else {
                    PREC_POW
                }
            } else {
                PREC_PRODUCT
            }
        }
        _ => PREC_SUM,
    }
}

impl Expr {
    fn prec(&self) -> u8 {
        match self.node() {
            Node::Const(c) => const_prec(c),
            Node::Var(_) | Node::Func(..) => PREC_ATOM,
            Node::Sum(_) => PREC_SUM,
            Node::Product(_) | Node::Quotient(..) => PREC_PRODUCT,
            Node::Pow(..) => PREC_POW,
            Node::Rational(r) => {
                if r.is_polynomial() {
                    poly_prec(r.numer())
                } else {
                    PREC_PRODUCT
                }
            }
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            self.write_node(f)?;
            f.write_str(")")
        } else {
            self.write_node(f)
        }
    }

    fn write_node(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(c) => write_rational_const(f, c),
            Node::Var(v) => write!(f, "{v}"),
            Node::Rational(r) => {
                if r.is_polynomial() {
                    write_poly(f, r.numer())
                } else {
                    let wrap = |p: &Poly| poly_prec(p) < PREC_ATOM;
                    if wrap(r.numer()) {
                        f.write_str("(")?;
                        write_poly(f, r.numer())?;
                        f.write_str(")")?;
                    } else {
                        write_poly(f, r.numer())?;
                    }
                    f.write_str("/")?;
                    if wrap(r.denom()) {
                        f.write_str("(")?;
                        write_poly(f, r.denom())?;
                        f.write_str(")")
                    } else {
                        write_poly(f, r.denom())
                    }
                }
            }
            Node::Sum(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    x.write_prec(f, PREC_SUM + 1)?;
                }
                if xs.is_empty() {
                    f.write_str("0")?;
                }
                Ok(())
            }
            Node::Product(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    // Leading factor may be a signed or fractional constant.
                    let min = if i == 0 { PREC_PRODUCT } else { PREC_POW };
                    x.write_prec(f, min)?;
                }
                if xs.is_empty() {
                    f.write_str("1")?;
                }
                Ok(())
            }
            Node::Pow(b, n) => {
                b.write_prec(f, PREC_ATOM)?;
                write!(f, "^{n}")
            }
            Node::Quotient(a, b) => {
                a.write_prec(f, PREC_PRODUCT)?;
                f.write_str("/")?;
                b.write_prec(f, PREC_POW)
            }
            Node::Func(fun, a) => {
                write!(f, "{}(", fun.name())?;
                a.write_prec(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<VarId> {
        vec![VarId::new("x", 0).unwrap(), VarId::new("y", 1).unwrap()]
    }

    fn p(s: &str) -> Expr {
        parse_expr(s, &vars()).unwrap()
    }

    fn c(s: &str) -> Expr {
        p(s).canonicalize().unwrap()
    }

    #[test]
    fn square_identity_cancels() {
        assert!(c("(x+y)^2 - (x^2+2*x*y+y^2)").is_zero());
    }

    #[test]
    fn x_over_x() {
        assert!(c("x/x").is_one());
    }

    #[test]
    fn difference_of_squares_quotient() {
        assert_eq!(c("(x^2-y^2)/(x-y)"), c("x+y"));
    }

    #[test]
    fn canonicalize_rejects_numeric_only() {
        assert!(matches!(
            p("sin(x)").canonicalize(),
            Err(Error::UnsupportedClass(_))
        ));
    }

    #[test]
    fn partial_examples() {
        let [x, y] = [vars()[0].clone(), vars()[1].clone()];
        assert_eq!(c("x^2*y").partial(&x), c("2*x*y"));
        assert!(c("y").partial(&x).is_zero());
        assert_eq!(c("(x+1)/y").partial(&y), c("-(x+1)/y^2"));
    }

    #[test]
    fn transcendental_derivatives() {
        let x = vars()[0].clone();
        let d = p("sin(x)*y").partial(&x);
        let mut pt = HashMap::new();
        pt.insert(x.clone(), 0.3);
        pt.insert(vars()[1].clone(), 2.0);
        assert!((d.eval_numeric(&pt).unwrap() - 2.0 * 0.3f64.cos()).abs() < 1e-15);
        let e = p("exp(2*x)").partial(&x);
        assert!((e.eval_numeric(&pt).unwrap() - 2.0 * 0.6f64.exp()).abs() < 1e-12);
        assert_eq!(e.class(), ExprClass::NumericOnly);
    }

    #[test]
    fn substitution_examples() {
        let [x, y] = [vars()[0].clone(), vars()[1].clone()];
        let mut b = HashMap::new();
        b.insert(x.clone(), Expr::var(&y));
        assert_eq!(c("x+y").substitute(&b).unwrap(), c("2*y"));

        let mut id = HashMap::new();
        id.insert(x.clone(), Expr::var(&x));
        assert_eq!(c("x").substitute(&id).unwrap(), c("x"));

        let mut swap = HashMap::new();
        swap.insert(x.clone(), Expr::var(&y));
        swap.insert(y.clone(), Expr::var(&x));
        assert_eq!(c("x*y^2").substitute(&swap).unwrap(), c("y*x^2"));
        assert_eq!(c("x*y").substitute(&swap).unwrap(), c("x*y"));
    }

    #[test]
    fn substitution_into_transcendental() {
        let x = vars()[0].clone();
        let mut b = HashMap::new();
        b.insert(x.clone(), Expr::zero());
        let e = p("cos(x) + x").substitute(&b).unwrap();
        assert_eq!(e.eval_numeric(&HashMap::new()).unwrap(), 1.0);
    }

    #[test]
    fn equality_examples() {
        assert!(c("(x+1)^2").expr_equal(&c("x^2+2*x+1")).unwrap());
        assert!(!c("x").expr_equal(&c("y")).unwrap());
        assert!(p("sin(x)").expr_equal(&p("sin(x)")).is_err());
    }

    #[test]
    fn eval_examples() {
        let [x, y] = [vars()[0].clone(), vars()[1].clone()];
        let mut pt = HashMap::new();
        pt.insert(x.clone(), 3.0);
        assert_eq!(p("x^2").eval_numeric(&pt).unwrap(), 9.0);
        pt.insert(x.clone(), 0.0);
        assert_eq!(p("sin(x)").eval_numeric(&pt).unwrap(), 0.0);
        pt.insert(x.clone(), 2.0);
        pt.insert(y.clone(), 1.0);
        let raw = p("(x^2-y^2)/(x-y)").eval_numeric(&pt).unwrap();
        let canon = c("(x^2-y^2)/(x-y)").eval_numeric(&pt).unwrap();
        assert_eq!(raw, 3.0);
        assert_eq!(canon, 3.0);
    }

    #[test]
    fn eval_errors() {
        let x = vars()[0].clone();
        assert!(matches!(
            p("x").eval_numeric(&HashMap::new()),
            Err(Error::UnboundVariable(_))
        ));
        let mut pt = HashMap::new();
        pt.insert(x, 0.0);
        assert!(matches!(
            p("1/x").eval_numeric(&pt),
            Err(Error::EvaluationDomain(_))
        ));
    }

    #[test]
    fn display_is_reparseable() {
        for s in ["x^2 + 3/2*y", "-(x+1)/y^2", "x*y - 7", "sin(x)*(y+1)", "-x", "(x-y)^3/(2*x)"] {
            let e = p(s);
            let again = p(&e.to_string());
            if e.is_rational() {
                assert_eq!(again.canonicalize().unwrap(), e.canonicalize().unwrap(), "{s}");
                let ce = e.canonicalize().unwrap();
                assert_eq!(p(&ce.to_string()).canonicalize().unwrap(), ce, "{s}");
            } else {
                assert_eq!(again.to_string(), e.to_string());
            }
        }
    }
}
