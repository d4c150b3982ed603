use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::symexpr::{parse_expr, Expr, VarId};

/// Largest supported chart dimension.
pub const MAX_DIM: usize = 8;

/// An ordered list of distinct coordinate symbols.
#[derive(Clone)]
pub struct Chart {
    vars: Arc<[VarId]>,
}

impl Chart {
    /// Chart with coordinates named `names`, indexed 0, 1, ...
    pub fn new(names: &[&str]) -> Result<Self> {
        let vars = names
            .iter()
            .enumerate()
            .map(|(i, n)| VarId::new(n, i as u32))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vars(vars)
    }

    pub fn from_vars(vars: Vec<VarId>) -> Result<Self> {
        if vars.is_empty() || vars.len() > MAX_DIM {
            return Err(Error::InvalidChart(format!(
                "dimension {} outside 1..={MAX_DIM}",
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name() == v.name()) {
                return Err(Error::DuplicateVariable(v.name().to_string()));
            }
        }
        Ok(Chart { vars: vars.into() })
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &VarId {
        &self.vars[i]
    }

    pub fn coord(&self, i: usize) -> Expr {
        Expr::var(&self.vars[i])
    }

    pub fn index_of(&self, v: &VarId) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    pub fn by_name(&self, name: &str) -> Option<&VarId> {
        self.vars.iter().find(|v| v.name() == name)
    }

    /// Parses an expression over this chart's coordinates.
    pub fn parse(&self, text: &str) -> Result<Expr> {
        parse_expr(text, &self.vars)
    }

    /// True when every variable of `e` is a coordinate of this chart.
    pub fn owns(&self, e: &Expr) -> bool {
        e.vars().iter().all(|v| self.index_of(v).is_some())
    }

    pub(crate) fn check_same(&self, other: &Chart) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChartMismatch(format!("{self} vs {other}")))
        }
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl Eq for Chart {}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart{self}")
    }
}
