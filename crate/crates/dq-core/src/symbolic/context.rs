use std::fmt;
use std::sync::Arc;

use crate::error::{DqError, Result};

/// An ordered list of variable names shared by all values of a computation.
///
/// The declared order fixes the graded-lexicographic term order and the
/// normal ordering of PBW monomials. `h` is reserved for the formal
/// parameter and may not be declared as a variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    vars: Arc<Vec<String>>,
}

impl Context {
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Result<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if v == "h" {
                return Err(DqError::ContextMismatch(
                    "`h` is reserved for the formal parameter".into(),
                ));
            }
            if !is_identifier(v) {
                return Err(DqError::ContextMismatch(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(DqError::ContextMismatch(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Context { vars: Arc::new(vars) })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.vars
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.vars[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Cheap equality: pointer identity first, then content.
    pub fn same_as(&self, other: &Context) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    pub fn check_same(&self, other: &Context) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(DqError::ContextMismatch(format!(
                "expected [{}], got [{}]",
                self.vars.join(", "),
                other.vars.join(", ")
            )))
        }
    }

    /// Union of two disjoint contexts, keeping both declared orders.
    pub fn disjoint_union(&self, other: &Context) -> Result<Context> {
        for v in other.names() {
            if self.index_of(v).is_some() {
                return Err(DqError::ContextMismatch(format!(
                    "contexts overlap on variable `{v}`"
                )));
            }
        }
        let mut vars = self.vars.as_ref().clone();
        vars.extend(other.names().iter().cloned());
        Context::new(vars)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.vars.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reserved_h() {
        assert!(Context::new(vec!["x", "h"]).is_err());
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(Context::new(vec!["x", "x"]).is_err());
        assert!(Context::new(vec!["1x"]).is_err());
        assert!(Context::new(vec!["x_1"]).is_ok());
    }

    #[test]
    fn disjoint_union_keeps_order() {
        let a = Context::new(vec!["x", "u"]).unwrap();
        let b = Context::new(vec!["y", "v"]).unwrap();
        let u = a.disjoint_union(&b).unwrap();
        assert_eq!(u.names(), ["x", "u", "y", "v"]);
        assert!(a.disjoint_union(&a).is_err());
    }
}
