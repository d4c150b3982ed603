use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A named coordinate symbol.
///
/// Variables are ordered by `index` first; the name only breaks ties. Charts
/// that share coordinates (a base chart and the jet or cotangent chart over
/// it) assign the shared symbols the same index, so the monomial order is
/// consistent across them.
#[derive(Clone)]
pub struct VarId {
    name: Arc<str>,
    index: u32,
}

impl VarId {
    pub fn new(name: &str, index: u32) -> Result<Self> {
        if !is_identifier(name) || super::Func::from_name(name).is_some() {
            return Err(Error::InvalidIdentifier(name.to_string()));
        }
        Ok(Self { name: Arc::from(name), index })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn index(&self) -> u32 {
        self.index
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PartialEq for VarId {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.name == other.name
    }
}

impl Eq for VarId {}

impl Hash for VarId {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.index.hash(state);
        self.name.hash(state);
    }
}

impl PartialOrd for VarId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VarId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index
            .cmp(&other.index)
            .then_with(|| self.name.cmp(&other.name))
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.name, self.index)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers() {
        assert!(VarId::new("u_xy", 0).is_ok());
        assert!(VarId::new("_a1", 0).is_ok());
        assert!(VarId::new("1a", 0).is_err());
        assert!(VarId::new("a-b", 0).is_err());
        assert!(VarId::new("sin", 0).is_err());
    }

    #[test]
    fn ordered_by_index_first() {
        let a = VarId::new("z", 0).unwrap();
        let b = VarId::new("a", 1).unwrap();
        assert!(a < b);
    }
}
