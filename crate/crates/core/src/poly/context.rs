use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of distinct variable names shared by every polynomial built on it.
#[derive(Clone)]
pub struct VariableContext {
    names: Arc<[String]>,
}

impl VariableContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidContext("no variables".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !is_identifier(n) {
                return Err(Error::InvalidContext(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidContext(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Self {
            names: names.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A new context with `extra` appended (or prepended when `front` is set).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S], front: bool) -> Result<Self> {
        let extra: Vec<String> = extra.iter().map(|s| s.as_ref().to_string()).collect();
        let all: Vec<String> = if front {
            extra.iter().chain(self.names.iter()).cloned().collect()
        } else {
            self.names.iter().chain(extra.iter()).cloned().collect()
        };
        Self::new(&all)
    }

    pub(crate) fn describe(&self) -> String {
        self.names.join(",")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PartialEq for VariableContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VariableContext {}

impl Hash for VariableContext {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl fmt::Debug for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(VariableContext::new(&["x", "x"]).is_err());
        assert!(VariableContext::new::<&str>(&[]).is_err());
        assert!(VariableContext::new(&["1x"]).is_err());
    }

    #[test]
    fn extension_keeps_order() {
        let c = VariableContext::new(&["x", "y"]).unwrap();
        let e = c.extended(&["t"], true).unwrap();
        assert_eq!(e.names(), &["t", "x", "y"]);
        assert!(c.extended(&["x"], false).is_err());
    }
}
