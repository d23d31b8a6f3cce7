use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Name of the deformation parameter.
pub const DEFORMATION_PARAMETER: &str = "t";
/// Name of the arc parameter.
pub const ARC_PARAMETER: &str = "s";

/// An ordered list of variable names.
///
/// Rings are shared behind an [`Arc`]; two rings are compatible when their
/// variable lists are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    /// A ring over user-facing variables. The reserved names `t` and `s` are
    /// rejected here; use [`PolyRing::extend`] to adjoin them.
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Arc<Self>> {
        for v in vars {
            let v = v.as_ref();
            if v == DEFORMATION_PARAMETER || v == ARC_PARAMETER {
                return Err(Error::InvalidRing(format!("`{v}` is a reserved name")));
            }
        }
        Self::unchecked_reserved(vars.iter().map(|v| v.as_ref().to_string()).collect())
    }

    fn unchecked_reserved(vars: Vec<String>) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not an identifier")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing { vars }))
    }

    /// The ring with `extra` appended after the existing variables.
    /// Reserved names are allowed; collisions are not.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<Self>> {
        let mut vars = self.vars.clone();
        for e in extra {
            let e = e.as_ref();
            if vars.iter().any(|v| v == e) {
                return Err(Error::NameCollision(e.to_string()));
            }
            vars.push(e.to_string());
        }
        Self::unchecked_reserved(vars)
    }

    /// The ring with the deformation parameter `t` appended.
    pub fn with_deformation_parameter(&self) -> Result<Arc<Self>> {
        self.extend(&[DEFORMATION_PARAMETER])
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(", "))
    }
}
