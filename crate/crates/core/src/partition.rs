//! Q-subsets, Q-partitions and surjective Q-maps.
//!
//! A Q-partition of `X` is a family of distinct Q-subsets with
//!
//! * (P1) `Sx & Tx = bot` for distinct blocks `S`, `T`;
//! * (P2) `V_S Sx = k` for every `x`;
//! * (P3) `V_x Sx = k` for every block `S`.
//!
//! A surjective map `zeta: X -/-> Y` induces the blocks
//! `S_y x = zeta(x, y) & zeta*(y, x)`, and a partition `Sigma` induces the
//! surjection `zeta_Sigma(x, S) = Sx` with adjoint `zeta_Sigma^op`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, PartitionAxiom, Result};
use crate::qmap::QMap;
use crate::quantale::{Element, FiniteQuantale, Quantale};
use crate::relation::QRelation;
use crate::set::FiniteSet;

/// A membership function `X -> Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSubset<Q: Quantale> {
    set: FiniteSet,
    membership: Vec<Q::Elem>,
}

impl<Q: Quantale> QSubset<Q> {
    pub fn new(set: FiniteSet, membership: Vec<Q::Elem>) -> Result<Self> {
        if membership.len() != set.len() {
            return Err(Error::Invalid(format!(
                "Q-subset of {set} needs {} values, got {}",
                set.len(),
                membership.len()
            )));
        }
        Ok(QSubset { set, membership })
    }

    pub fn set(&self) -> &FiniteSet {
        &self.set
    }

    pub fn membership(&self) -> &[Q::Elem] {
        &self.membership
    }

    pub fn get(&self, x: usize) -> Q::Elem {
        self.membership[x]
    }
}

/// A validated Q-partition with named blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct QPartition<Q: Quantale> {
    quantale: Q,
    set: FiniteSet,
    names: FiniteSet,
    blocks: Vec<QSubset<Q>>,
}

impl<Q: Quantale> QPartition<Q> {
    /// Validates (P1)-(P3) and that the blocks are pairwise distinct.
    pub fn new(quantale: Q, set: FiniteSet, names: FiniteSet, blocks: Vec<QSubset<Q>>) -> Result<Self> {
        if names.len() != blocks.len() {
            return Err(Error::Invalid(format!(
                "{} block names for {} blocks",
                names.len(),
                blocks.len()
            )));
        }
        for b in &blocks {
            crate::relation::ensure_same_set(&set, &b.set)?;
        }
        let invalid = |axiom, witness: String| Err(Error::InvalidPartition { axiom, witness });
        let q = &quantale;
        let (k, bot) = (q.unit(), q.bottom());
        for (i, s) in blocks.iter().enumerate() {
            for (j, t) in blocks.iter().enumerate().skip(i + 1) {
                if s.membership == t.membership {
                    return invalid(
                        PartitionAxiom::Distinct,
                        format!("blocks {} and {}", names.label(i), names.label(j)),
                    );
                }
                if let Some(x) = (0..set.len()).find(|&x| q.mult(s.get(x), t.get(x)) != bot) {
                    return invalid(
                        PartitionAxiom::Disjoint,
                        format!("blocks {} and {} at {}", names.label(i), names.label(j), set.label(x)),
                    );
                }
            }
        }
        for x in 0..set.len() {
            let cover = q.join_all(blocks.iter().map(|s| s.get(x)));
            if cover != k {
                return invalid(
                    PartitionAxiom::PointCover,
                    format!("{}: join is {}", set.label(x), q.label(cover)),
                );
            }
        }
        for (i, s) in blocks.iter().enumerate() {
            let cover = q.join_all(s.membership.iter().copied());
            if cover != k {
                return invalid(
                    PartitionAxiom::BlockCover,
                    format!("{}: join is {}", names.label(i), q.label(cover)),
                );
            }
        }
        Ok(QPartition {
            quantale,
            set,
            names,
            blocks,
        })
    }

    /// Reads a table with one row per element of `set` and one column per
    /// block.
    pub fn from_labels(quantale: Q, set: FiniteSet, names: FiniteSet, rows: &[&[&str]]) -> Result<Self> {
        let rel = QRelation::from_labels(quantale.clone(), set.clone(), names.clone(), rows)?;
        Self::from_relation(&rel)
    }

    /// Columns of `rel: X -/-> Blocks` as blocks.
    pub fn from_relation(rel: &QRelation<Q>) -> Result<Self> {
        let set = rel.source().clone();
        let blocks = (0..rel.target().len())
            .map(|s| QSubset {
                set: set.clone(),
                membership: (0..set.len()).map(|x| rel.get(x, s)).collect(),
            })
            .collect();
        Self::new(rel.quantale().clone(), set, rel.target().clone(), blocks)
    }

    pub fn quantale(&self) -> &Q {
        &self.quantale
    }

    pub fn set(&self) -> &FiniteSet {
        &self.set
    }

    pub fn names(&self) -> &FiniteSet {
        &self.names
    }

    pub fn blocks(&self) -> &[QSubset<Q>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The table `X -/-> Blocks` with `(x, S) = Sx`.
    pub fn to_relation(&self) -> QRelation<Q> {
        QRelation::from_fn(self.quantale.clone(), self.set.clone(), self.names.clone(), |x, s| {
            self.blocks[s].get(x)
        })
    }

    /// Same blocks in the same order, ignoring block names.
    pub fn same_blocks(&self, other: &Self) -> bool {
        self.set == other.set && self.blocks == other.blocks
    }
}

/// `Sigma_zeta` for a surjective `zeta: X -/-> Y`, one block per `y` and named
/// after it.
pub fn partition_from_surjection<Q: Quantale>(zeta: &QMap<Q>) -> Result<QPartition<Q>> {
    if !zeta.is_surjective() {
        return Err(Error::NotSurjective(format!(
            "zeta . zeta* != id on {}",
            zeta.target()
        )));
    }
    let q = zeta.quantale();
    let set = zeta.source().clone();
    let blocks = (0..zeta.target().len())
        .map(|y| QSubset {
            set: set.clone(),
            membership: (0..set.len())
                .map(|x| q.mult(zeta.get(x, y), zeta.adjoint().get(y, x)))
                .collect(),
        })
        .collect();
    QPartition::new(q.clone(), set, zeta.target().clone(), blocks)
}

/// `zeta_Sigma: X -/-> Sigma` with `zeta_Sigma(x, S) = Sx`. Checks that the
/// adjoint is the opposite relation and that the map is surjective.
pub fn surjection_from_partition<Q: Quantale>(sigma: &QPartition<Q>) -> Result<QMap<Q>> {
    let rel = sigma.to_relation();
    let zeta = QMap::promote(rel.clone()).map_err(|e| Error::VerificationFailed {
        equation: "id <= zeta_Sigma* . zeta_Sigma".into(),
        witness: e.to_string(),
    })?;
    if zeta.adjoint() != &rel.opposite() {
        return Err(Error::VerificationFailed {
            equation: "zeta_Sigma* = zeta_Sigma^op".into(),
            witness: format!("{:?}", zeta.adjoint()),
        });
    }
    if !zeta.is_surjective() {
        return Err(Error::VerificationFailed {
            equation: "zeta_Sigma . zeta_Sigma* = id".into(),
            witness: format!("{:?}", zeta.relation()),
        });
    }
    Ok(zeta)
}

/// `Sigma_{zeta_Sigma} = Sigma`, block for block.
pub fn roundtrip_check<Q: Quantale>(sigma: &QPartition<Q>) -> Result<bool> {
    let zeta = surjection_from_partition(sigma)?;
    let back = partition_from_surjection(&zeta)?;
    Ok(back == *sigma)
}

/// Rejection-samples `count` valid partitions of sets of size `1..=max_set`
/// with up to `|X| + 1` candidate blocks, from a seeded ChaCha stream.
/// Gives up after `max_attempts` candidates.
pub fn sample_partitions(
    q: &FiniteQuantale,
    max_set: usize,
    count: usize,
    seed: u64,
    max_attempts: u64,
) -> Result<Vec<QPartition<FiniteQuantale>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0u64;
    while out.len() < count {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::BudgetExceeded {
                needed: u128::from(attempts),
                budget: u128::from(max_attempts),
            });
        }
        let n = rng.random_range(1..=max_set.max(1));
        let b = rng.random_range(1..=n + 1);
        let set = FiniteSet::new("X", (0..n).map(|i| format!("x{i}")))?;
        let names = FiniteSet::new("Sigma", (0..b).map(|i| format!("S{i}")))?;
        let entries: Vec<Element> = (0..n * b)
            .map(|_| Element::from_index(rng.random_range(0..q.size())))
            .collect();
        let rel = QRelation::from_entries(q.clone(), set, names, entries)?;
        if let Ok(p) = QPartition::from_relation(&rel) {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn set(labels: &[&str]) -> FiniteSet {
        FiniteSet::new("S", labels.iter().copied()).unwrap()
    }

    #[test]
    fn f1_eta_partition() {
        let x = set(&["x", "y"]);
        let rel = QRelation::from_labels(zoo::f1(), x.clone(), x.clone(), &[&["p", "q"], &["q", "p"]]).unwrap();
        let eta = QMap::promote(rel).unwrap();
        let sigma = partition_from_surjection(&eta).unwrap();
        let expected = QPartition::from_labels(zoo::f1(), x.clone(), x, &[&["p", "q"], &["q", "p"]]).unwrap();
        assert_eq!(sigma, expected);
        assert!(roundtrip_check(&sigma).unwrap());
    }

    #[test]
    fn axiom_violations_are_named() {
        let x = set(&["x", "y"]);
        let names = set(&["S", "T"]);
        let cases: [(&[&[&str]], PartitionAxiom); 4] = [
            (&[&["p", "p"], &["q", "q"]], PartitionAxiom::Distinct),
            (&[&["top", "p"], &["q", "top"]], PartitionAxiom::Disjoint),
            (&[&["p", "bot"], &["q", "p"]], PartitionAxiom::PointCover),
            (&[&["top", "bot"], &["top", "bot"]], PartitionAxiom::BlockCover),
        ];
        for (rows, axiom) in cases {
            match QPartition::from_labels(zoo::f1(), x.clone(), names.clone(), rows) {
                Err(Error::InvalidPartition { axiom: got, .. }) => assert_eq!(got, axiom),
                other => panic!("expected {axiom:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn non_surjective_is_rejected() {
        let f = crate::qmap::CrispMap::new(set(&["a"]), set(&["u", "v"]), vec![0]).unwrap();
        let g = crate::qmap::graph(zoo::c3(), &f);
        assert!(matches!(partition_from_surjection(&g), Err(Error::NotSurjective(_))));
    }

    #[test]
    fn sampler_is_deterministic() {
        let a = sample_partitions(&zoo::f1(), 3, 5, 7, 1_000_000).unwrap();
        let b = sample_partitions(&zoo::f1(), 3, 5, 7, 1_000_000).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|p| roundtrip_check(p).unwrap()));
    }
}
