use super::{check_divisor, rational_to_f64, Expr, Func, Node, Poly, VarId};
use crate::error::{Error, Result};

/// An expression lowered to `f64` arithmetic over positional slots, for
/// repeated evaluation (grid sampling, Monte Carlo checks).
#[derive(Clone, Debug)]
pub struct CompiledExpr {
    root: Op,
    arity: usize,
}

#[derive(Clone, Debug)]
enum Op {
    Const(f64),
    Slot(usize),
    Sum(Vec<Op>),
    Product(Vec<Op>),
    Powi(Box<Op>, i32),
    Div(Box<Op>, Box<Op>),
    Func(Func, Box<Op>),
    Poly(Vec<(f64, Vec<(usize, i32)>)>),
}

impl CompiledExpr {
    /// `slots[i]` is the variable read from position `i` of the evaluation input.
    pub fn new(e: &Expr, slots: &[VarId]) -> Result<Self> {
        let root = lower(e, slots)?;
        Ok(CompiledExpr {
            root,
            arity: slots.len(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self.root {
            Op::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        debug_assert!(x.len() >= self.arity);
        run(&self.root, x)
    }
}

fn slot_of(v: &VarId, slots: &[VarId]) -> Result<usize> {
    slots
        .iter()
        .position(|s| s == v)
        .ok_or_else(|| Error::UnboundVariable(v.name().to_string()))
}

fn lower_poly(p: &Poly, slots: &[VarId]) -> Result<Op> {
    if let Some(c) = p.as_constant() {
        return Ok(Op::Const(rational_to_f64(&c.into())));
    }
    let mut terms = Vec::with_capacity(p.terms().len());
    for (m, c) in p.terms() {
        let mut fs = Vec::new();
        for (v, e) in m.factors() {
            fs.push((slot_of(v, slots)?, e as i32));
        }
        terms.push((rational_to_f64(&c.clone().into()), fs));
    }
    Ok(Op::Poly(terms))
}

fn lower(e: &Expr, slots: &[VarId]) -> Result<Op> {
    Ok(match e.node() {
        Node::Const(c) => Op::Const(rational_to_f64(c)),
        Node::Var(v) => Op::Slot(slot_of(v, slots)?),
        Node::Rational(r) => {
            let num = lower_poly(r.numer(), slots)?;
            if r.is_polynomial() {
                num
            } else {
                Op::Div(Box::new(num), Box::new(lower_poly(r.denom(), slots)?))
            }
        }
        Node::Sum(xs) => Op::Sum(xs.iter().map(|x| lower(x, slots)).collect::<Result<_>>()?),
        Node::Product(xs) => {
            Op::Product(xs.iter().map(|x| lower(x, slots)).collect::<Result<_>>()?)
        }
        Node::Pow(b, n) => Op::Powi(Box::new(lower(b, slots)?), *n),
        Node::Quotient(a, b) => Op::Div(Box::new(lower(a, slots)?), Box::new(lower(b, slots)?)),
        Node::Func(f, a) => Op::Func(*f, Box::new(lower(a, slots)?)),
    })
}

fn run(op: &Op, x: &[f64]) -> Result<f64> {
    Ok(match op {
        Op::Const(c) => *c,
        Op::Slot(i) => x[*i],
        Op::Sum(xs) => {
            let mut s = 0.0;
            for o in xs {
                s += run(o, x)?;
            }
            s
        }
        Op::Product(xs) => {
            let mut s = 1.0;
            for o in xs {
                s *= run(o, x)?;
            }
            s
        }
        Op::Powi(b, n) => {
            let v = run(b, x)?;
            if *n < 0 {
                check_divisor(v)?;
            }
            v.powi(*n)
        }
        Op::Div(a, b) => {
            let d = run(b, x)?;
            check_divisor(d)?;
            run(a, x)? / d
        }
        Op::Func(f, a) => f.apply(run(a, x)?),
        Op::Poly(terms) => terms
            .iter()
            .map(|(c, fs)| fs.iter().fold(*c, |t, (i, e)| t * x[*i].powi(*e)))
            .sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_expr;
    use std::collections::HashMap;

    #[test]
    fn matches_tree_evaluation() {
        let vars = vec![VarId::new("x", 0).unwrap(), VarId::new("y", 1).unwrap()];
        for s in ["x^2*y - 3/4", "(x+1)/(y^2+1)", "sin(x)*exp(y) + cos(x*y)", "x^-2"] {
            let e = parse_expr(s, &vars).unwrap();
            let c = CompiledExpr::new(&e, &vars).unwrap();
            let mut pt = HashMap::new();
            pt.insert(vars[0].clone(), 0.7);
            pt.insert(vars[1].clone(), -1.3);
            let want = e.eval_numeric(&pt).unwrap();
            assert!((c.eval(&[0.7, -1.3]).unwrap() - want).abs() < 1e-14, "{s}");
            if e.is_rational() {
                let k = CompiledExpr::new(&e.canonicalize().unwrap(), &vars).unwrap();
                assert!((k.eval(&[0.7, -1.3]).unwrap() - want).abs() < 1e-12, "{s}");
            }
        }
    }

    #[test]
    fn unlisted_variable_is_an_error() {
        let x = VarId::new("x", 0).unwrap();
        let e = Expr::var(&x);
        assert!(CompiledExpr::new(&e, &[]).is_err());
    }
}
