//! The quantaloid of sets and Q-relations.
//!
//! A relation `phi: X -/-> Y` is a total matrix of quantale elements stored
//! row-major by source: entry `(x, y)` sits at `x * |Y| + y`. Composition is
//! the sup-`&` matrix product
//!
//! ```text
//! (psi . phi)(x, z) = V_y psi(y, z) & phi(x, y)
//! ```
//!
//! and the two residuals are its right adjoints in each argument.

use std::fmt;

use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::set::FiniteSet;

#[derive(Clone, PartialEq)]
pub struct QRelation<Q: Quantale> {
    quantale: Q,
    source: FiniteSet,
    target: FiniteSet,
    entries: Vec<Q::Elem>,
}

impl<Q: Quantale> fmt::Debug for QRelation<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRelation {:?} -> {:?} [", self.source, self.target)?;
        for x in 0..self.source.len() {
            if x > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = (0..self.target.len())
                .map(|y| self.quantale.label(self.get(x, y)))
                .collect();
            f.write_str(&row.join(" "))?;
        }
        f.write_str("]")
    }
}

pub(crate) fn ensure_same_set(expected: &FiniteSet, found: &FiniteSet) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::SetMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

impl<Q: Quantale> QRelation<Q> {
    /// Builds a relation from a row-major `|X| x |Y|` entry vector.
    pub fn from_entries(
        quantale: Q,
        source: FiniteSet,
        target: FiniteSet,
        entries: Vec<Q::Elem>,
    ) -> Result<Self> {
        if entries.len() != source.len() * target.len() {
            return Err(Error::Invalid(format!(
                "expected {} entries for a {} x {} relation, got {}",
                source.len() * target.len(),
                source.len(),
                target.len(),
                entries.len()
            )));
        }
        Ok(QRelation {
            quantale,
            source,
            target,
            entries,
        })
    }

    pub fn from_fn(
        quantale: Q,
        source: FiniteSet,
        target: FiniteSet,
        mut f: impl FnMut(usize, usize) -> Q::Elem,
    ) -> Self {
        let mut entries = Vec::with_capacity(source.len() * target.len());
        for x in 0..source.len() {
            for y in 0..target.len() {
                entries.push(f(x, y));
            }
        }
        QRelation {
            quantale,
            source,
            target,
            entries,
        }
    }

    /// Builds a relation from rows of labels, one row per source element.
    pub fn from_labels(quantale: Q, source: FiniteSet, target: FiniteSet, rows: &[&[&str]]) -> Result<Self> {
        if rows.len() != source.len() || rows.iter().any(|r| r.len() != target.len()) {
            return Err(Error::Invalid(format!(
                "expected {} rows of {} entries",
                source.len(),
                target.len()
            )));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|s| {
                quantale
                    .parse_element(s)
                    .ok_or_else(|| Error::UnknownElement(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(quantale, source, target, entries)
    }

    /// The all-bottom relation.
    pub fn bottom(quantale: Q, source: FiniteSet, target: FiniteSet) -> Self {
        let b = quantale.bottom();
        Self::from_fn(quantale, source, target, |_, _| b)
    }

    /// `id_X(x, y) = k` if `x = y`, else bottom.
    pub fn identity(quantale: Q, set: FiniteSet) -> Self {
        let (k, b) = (quantale.unit(), quantale.bottom());
        Self::from_fn(quantale, set.clone(), set, |x, y| if x == y { k } else { b })
    }

    pub fn quantale(&self) -> &Q {
        &self.quantale
    }

    pub fn source(&self) -> &FiniteSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    pub fn entries(&self) -> &[Q::Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Q::Elem {
        self.entries[x * self.target.len() + y]
    }

    /// Entry by labels.
    pub fn at(&self, x: &str, y: &str) -> Result<Q::Elem> {
        Ok(self.get(self.source.position(x)?, self.target.position(y)?))
    }

    pub fn set(&mut self, x: usize, y: usize, value: Q::Elem) {
        let w = self.target.len();
        self.entries[x * w + y] = value;
    }

    /// Same matrix on relabelled sets of equal size.
    pub fn relabel(&self, source: FiniteSet, target: FiniteSet) -> Result<Self> {
        if source.len() != self.source.len() || target.len() != self.target.len() {
            return Err(Error::SetMismatch {
                expected: format!("{} -> {}", self.source, self.target),
                found: format!("{source} -> {target}"),
            });
        }
        Ok(QRelation {
            quantale: self.quantale.clone(),
            source,
            target,
            entries: self.entries.clone(),
        })
    }

    fn same_quantale(&self, other: &Self) -> Result<()> {
        if self.quantale == other.quantale {
            Ok(())
        } else {
            Err(Error::QuantaleMismatch)
        }
    }

    fn same_profile(&self, other: &Self) -> Result<()> {
        self.same_quantale(other)?;
        ensure_same_set(&self.source, &other.source)?;
        ensure_same_set(&self.target, &other.target)
    }

    /// `self . phi`, where `phi: X -/-> Y` and `self: Y -/-> Z`.
    pub fn compose(&self, phi: &Self) -> Result<Self> {
        self.same_quantale(phi)?;
        ensure_same_set(&phi.target, &self.source)?;
        let q = &self.quantale;
        let mid = self.source.len();
        Ok(Self::from_fn(q.clone(), phi.source.clone(), self.target.clone(), |x, z| {
            q.join_all((0..mid).map(|y| q.mult(self.get(y, z), phi.get(x, y))))
        }))
    }

    /// `self ↙ phi: Y -/-> Z` for `self: X -/-> Z`, `phi: X -/-> Y`;
    /// entry `(y, z)` is `/\_x phi(x, y) -> self(x, z)`.
    pub fn left_residual(&self, phi: &Self) -> Result<Self> {
        self.same_quantale(phi)?;
        ensure_same_set(&phi.source, &self.source)?;
        let q = &self.quantale;
        let xs = self.source.len();
        Ok(Self::from_fn(q.clone(), phi.target.clone(), self.target.clone(), |y, z| {
            q.meet_all((0..xs).map(|x| q.residuum(phi.get(x, y), self.get(x, z))))
        }))
    }

    /// `self ↘ xi: X -/-> Y` for `self: Y -/-> Z`, `xi: X -/-> Z`;
    /// entry `(x, y)` is `/\_z self(y, z) -> xi(x, z)`.
    pub fn right_residual(&self, xi: &Self) -> Result<Self> {
        self.same_quantale(xi)?;
        ensure_same_set(&xi.target, &self.target)?;
        let q = &self.quantale;
        let zs = self.target.len();
        Ok(Self::from_fn(q.clone(), xi.source.clone(), self.source.clone(), |x, y| {
            q.meet_all((0..zs).map(|z| q.residuum(self.get(y, z), xi.get(x, z))))
        }))
    }

    /// `phi^op(y, x) = phi(x, y)`.
    pub fn opposite(&self) -> Self {
        Self::from_fn(
            self.quantale.clone(),
            self.target.clone(),
            self.source.clone(),
            |y, x| self.get(x, y),
        )
    }

    /// Pointwise order.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.same_profile(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(&a, &b)| self.quantale.leq(a, b)))
    }

    /// First entry `(x, y)` where `self(x, y) <= other(x, y)` fails.
    pub fn leq_witness(&self, other: &Self) -> Result<Option<(usize, usize)>> {
        self.same_profile(other)?;
        let w = self.target.len();
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .position(|(&a, &b)| !self.quantale.leq(a, b))
            .map(|i| (i / w, i % w)))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.pointwise(other, |q, a, b| q.join(a, b))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.pointwise(other, |q, a, b| q.meet(a, b))
    }

    fn pointwise(&self, other: &Self, f: impl Fn(&Q, Q::Elem, Q::Elem) -> Q::Elem) -> Result<Self> {
        self.same_profile(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(&self.quantale, a, b))
            .collect();
        Ok(QRelation {
            quantale: self.quantale.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            entries,
        })
    }

    /// `self ⨿ phi: X ⨿ Z -/-> Y ⨿ W` for `phi: X -/-> Y`, `self: Z -/-> W`;
    /// block diagonal with bottom off the blocks, `phi` first.
    pub fn disjoint_union(&self, phi: &Self) -> Result<Self> {
        self.same_quantale(phi)?;
        let source = phi.source.disjoint_union(&self.source);
        let target = phi.target.disjoint_union(&self.target);
        Ok(Self::block_sum(&self.quantale, phi, self, source, target))
    }

    fn block_sum(q: &Q, first: &Self, second: &Self, source: FiniteSet, target: FiniteSet) -> Self {
        let (xs, ys) = (first.source.len(), first.target.len());
        let b = q.bottom();
        Self::from_fn(q.clone(), source, target, |i, j| match (i < xs, j < ys) {
            (true, true) => first.get(i, j),
            (false, false) => second.get(i - xs, j - ys),
            _ => b,
        })
    }

    /// `self+ = self ⨿ id_{*}: X+ -/-> Y+`, with the adjoined points labelled
    /// as by [`FiniteSet::plus`].
    pub fn plus(&self) -> Self {
        let star = Self::identity(self.quantale.clone(), FiniteSet::singleton());
        Self::block_sum(
            &self.quantale,
            self,
            &star,
            self.source.plus(),
            self.target.plus(),
        )
    }

    /// Matrix text: one line per target element, one column per source
    /// element (entry `phi(x, y)` at row `y`, column `x`).
    pub fn to_matrix_string(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.target.len())
            .map(|y| {
                (0..self.source.len())
                    .map(|x| self.quantale.label(self.get(x, y)))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..self.source.len())
            .map(|x| cells.iter().map(|r| r[x].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in cells {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            out.push_str(padded.join(" ").trim_end());
            out.push('\n');
        }
        out
    }

    /// Entries as labels, by source rows.
    pub fn label_rows(&self) -> Vec<Vec<String>> {
        (0..self.source.len())
            .map(|x| {
                (0..self.target.len())
                    .map(|y| self.quantale.label(self.get(x, y)))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn set(n: usize) -> FiniteSet {
        FiniteSet::range("S", n)
    }

    #[test]
    fn identity_is_unit_for_compose() {
        let q = zoo::c3();
        let phi = QRelation::from_labels(q.clone(), set(2), set(2), &[&["top", "k"], &["bot", "top"]]).unwrap();
        let id = QRelation::identity(q, set(2));
        assert_eq!(id.compose(&phi).unwrap(), phi);
        assert_eq!(phi.compose(&id).unwrap(), phi);
    }

    #[test]
    fn one_by_one_c3_values() {
        let q = zoo::c3();
        let one = FiniteSet::singleton();
        let top = QRelation::from_labels(q.clone(), one.clone(), one.clone(), &[&["top"]]).unwrap();
        let k = QRelation::from_labels(q.clone(), one.clone(), one.clone(), &[&["k"]]).unwrap();
        assert_eq!(top.compose(&top).unwrap(), top);
        // top -> k = bot in C3
        let bot = QRelation::bottom(q, one.clone(), one);
        assert_eq!(k.left_residual(&top).unwrap(), bot);
        assert_eq!(top.right_residual(&k).unwrap(), bot);
    }

    #[test]
    fn residual_units() {
        let q = zoo::f1();
        let phi = QRelation::from_labels(q.clone(), set(2), set(2), &[&["p", "q"], &["top", "bot"]]).unwrap();
        let id2 = QRelation::identity(q, set(2));
        assert_eq!(phi.left_residual(&id2).unwrap(), phi);
        assert_eq!(id2.right_residual(&phi).unwrap(), phi);
    }

    #[test]
    fn empty_middle_composes_to_bottom() {
        let q = zoo::c3();
        let e = FiniteSet::empty("E");
        let a = QRelation::bottom(q.clone(), set(2), e.clone());
        let b = QRelation::bottom(q.clone(), e, set(3));
        assert_eq!(b.compose(&a).unwrap(), QRelation::bottom(q, set(2), set(3)));
    }

    #[test]
    fn mismatches_are_reported() {
        let c3 = zoo::c3();
        let f1 = zoo::f1();
        let a = QRelation::identity(c3.clone(), set(2));
        let b = QRelation::identity(c3, set(3));
        assert!(matches!(a.compose(&b), Err(Error::SetMismatch { .. })));
        let c = QRelation::identity(f1, set(2));
        assert!(matches!(a.compose(&c), Err(Error::QuantaleMismatch)));
        assert!(a.leq(&b).is_err());
    }

    #[test]
    fn plus_matches_union_with_star_identity() {
        let q = zoo::c3();
        let zeta = QRelation::from_labels(q.clone(), set(2), set(1), &[&["k"], &["top"]]).unwrap();
        let star = QRelation::identity(q, FiniteSet::singleton());
        assert_eq!(star.disjoint_union(&zeta).unwrap(), zeta.plus());
    }

    #[test]
    fn disjoint_union_of_identities() {
        let q = zoo::c3();
        let x = FiniteSet::new("X", ["x", "y"]).unwrap();
        let z = FiniteSet::new("Z", ["z"]).unwrap();
        let u = QRelation::identity(q.clone(), z.clone())
            .disjoint_union(&QRelation::identity(q.clone(), x.clone()))
            .unwrap();
        assert_eq!(u, QRelation::identity(q, x.disjoint_union(&z)));
    }

    #[test]
    fn matrix_string_orientation() {
        let q = zoo::c3();
        let phi = QRelation::from_labels(q, set(2), set(1), &[&["k"], &["top"]]).unwrap();
        assert_eq!(phi.to_matrix_string(), "k top\n");
    }
}
