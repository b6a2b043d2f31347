use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// An identifier for a term variable or an interval variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Returns `self` if it is not in `avoid`, otherwise the first of
    /// `base1`, `base2`, ... that is not.
    pub fn fresh_against<F: Fn(&Name) -> bool>(&self, taken: F) -> Name {
        if !taken(self) {
            return self.clone();
        }
        let base = self.as_str().trim_end_matches(|c: char| c.is_ascii_digit());
        let base = if base.is_empty() { "v" } else { base };
        (1..)
            .map(|n| Name::new(&format!("{base}{n}")))
            .find(|n| !taken(n))
            .unwrap()
    }

    pub fn fresh_in(&self, avoid: &BTreeSet<Name>) -> Name {
        self.fresh_against(|n| avoid.contains(n))
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl Borrow<str> for Name {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
