use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Prefix reserved for the adjoined point of `X+`.
pub const STAR: &str = "*";

/// A finite crisp set of distinct labels in a fixed order.
///
/// Equality compares labels only; the name is for display.
#[derive(Clone)]
pub struct FiniteSet {
    name: Arc<str>,
    labels: Arc<[String]>,
}

impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for FiniteSet {}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.name, self.labels.join(","))
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))
    }
}

impl FiniteSet {
    pub fn new<S: Into<String>>(name: &str, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains(|c: char| c.is_whitespace() || c == ',' || c == '{' || c == '}') {
                return Err(Error::Invalid(format!("bad set label `{l}`")));
            }
            if labels[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate set label `{l}`")));
            }
        }
        Ok(Self::from_vec(name, labels))
    }

    fn from_vec(name: &str, labels: Vec<String>) -> Self {
        FiniteSet {
            name: name.into(),
            labels: labels.into(),
        }
    }

    /// `{0, 1, ..., n-1}` with decimal labels.
    pub fn range(name: &str, n: usize) -> Self {
        Self::from_vec(name, (0..n).map(|i| i.to_string()).collect())
    }

    /// The one-point set `{*}`.
    pub fn singleton() -> Self {
        Self::from_vec("1", vec![STAR.to_string()])
    }

    pub fn empty(name: &str) -> Self {
        Self::from_vec(name, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: &str) -> Self {
        FiniteSet {
            name: name.into(),
            labels: self.labels.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::NotASubset(label.to_string()))
    }

    /// Positions of `self`'s labels inside `outer`.
    pub fn embedding_into(&self, outer: &FiniteSet) -> Result<Vec<usize>> {
        self.labels.iter().map(|l| outer.position(l)).collect()
    }

    /// `X ⨿ Z`. Labels are kept when the two sides are disjoint; otherwise
    /// left labels become `l.0` and right labels `r.1`.
    pub fn disjoint_union(&self, other: &FiniteSet) -> FiniteSet {
        let name = format!("{}+{}", self.name, other.name);
        let clash = self.labels.iter().any(|l| other.labels.contains(l));
        let labels = if clash {
            self.labels
                .iter()
                .map(|l| format!("{l}.0"))
                .chain(other.labels.iter().map(|r| format!("{r}.1")))
                .collect()
        } else {
            self.labels.iter().chain(other.labels.iter()).cloned().collect()
        };
        Self::from_vec(&name, labels)
    }

    /// Depth of the deepest adjoined point in this set (0 if none).
    fn star_depth(&self) -> usize {
        self.labels
            .iter()
            .filter(|l| !l.is_empty() && l.chars().all(|c| c == '*'))
            .map(|l| l.len())
            .max()
            .unwrap_or(0)
    }

    /// The label `X+` uses for its adjoined point: `*`, or `**` when `X`
    /// already carries `*`, and so on.
    pub fn next_star(&self) -> String {
        STAR.repeat(self.star_depth() + 1)
    }

    /// `X+ = X ⨿ {*}` with the new point last.
    pub fn plus(&self) -> FiniteSet {
        let mut labels = self.labels.to_vec();
        labels.push(self.next_star());
        Self::from_vec(&format!("{}+", self.name), labels)
    }

    /// If this set is `Y+` for some `Y` (last label is its deepest star),
    /// returns `Y`.
    pub fn strip_plus(&self) -> Option<FiniteSet> {
        let last = self.labels.last()?;
        let depth = self.star_depth();
        if depth > 0 && last.len() == depth && last.chars().all(|c| c == '*') {
            let base = self.name.strip_suffix('+').unwrap_or(&self.name).to_string();
            Some(Self::from_vec(&base, self.labels[..self.len() - 1].to_vec()))
        } else {
            None
        }
    }

    /// Removes one label.
    pub fn without(&self, label: &str) -> Result<FiniteSet> {
        let i = self.position(label)?;
        let mut labels = self.labels.to_vec();
        labels.remove(i);
        Ok(Self::from_vec(&format!("{}-{}", self.name, label), labels))
    }

    /// Whether `self` sits inside `outer` label-wise.
    pub fn is_subset_of(&self, outer: &FiniteSet) -> bool {
        self.labels.iter().all(|l| outer.index_of(l).is_some())
    }
}
