//! The maybe monad `X -> X+ = X ⨿ {*}` on Q-maps, partial Q-maps (its
//! Kleisli morphisms) and its algebras.
//!
//! Algebras are stored as pointed sets `mu: {*} -/-> X`; the structure map
//! `X+ -/-> X` is `id_X` on `X` and `mu` on the star.

use crate::error::{Error, Result};
use crate::qmap::{enumerate_qmaps, QMap};
use crate::quantale::{FiniteQuantale, Quantale};
use crate::relation::{ensure_same_set, QRelation};
use crate::set::FiniteSet;

fn verified<Q: Quantale>(equation: &str, lhs: &QRelation<Q>, rhs: &QRelation<Q>) -> Result<()> {
    if lhs.source() != rhs.source() || lhs.target() != rhs.target() {
        return Err(Error::VerificationFailed {
            equation: equation.to_string(),
            witness: format!("profiles differ: {lhs:?} vs {rhs:?}"),
        });
    }
    match lhs.entries().iter().zip(rhs.entries()).position(|(a, b)| a != b) {
        None => Ok(()),
        Some(i) => {
            let w = lhs.target().len();
            let (x, y) = (i / w, i % w);
            let q = lhs.quantale();
            Err(Error::VerificationFailed {
                equation: equation.to_string(),
                witness: format!(
                    "entry ({}, {}): {} vs {}",
                    lhs.source().label(x),
                    lhs.target().label(y),
                    q.label(lhs.get(x, y)),
                    q.label(rhs.get(x, y))
                ),
            })
        }
    }
}

/// Graph of a function given by target indices, as a map.
fn crisp<Q: Quantale>(q: &Q, source: FiniteSet, target: FiniteSet, f: impl Fn(usize) -> usize) -> QMap<Q> {
    let (k, b) = (q.unit(), q.bottom());
    let rel = QRelation::from_fn(q.clone(), source, target, |x, y| if f(x) == y { k } else { b });
    QMap::promote(rel).expect("graphs are maps")
}

/// `iota_X: X -/-> X+`, the graph of the inclusion.
pub fn unit<Q: Quantale>(q: &Q, x: &FiniteSet) -> QMap<Q> {
    crisp(q, x.clone(), x.plus(), |i| i)
}

/// `tau_X: {*} -/-> X+`, the graph of the star inclusion.
pub fn tau<Q: Quantale>(q: &Q, x: &FiniteSet) -> QMap<Q> {
    let n = x.len();
    crisp(q, FiniteSet::singleton(), x.plus(), |_| n)
}

/// `m_X: (X+)+ -/-> X+`, collapsing both stars onto the star of `X+`.
pub fn mu<Q: Quantale>(q: &Q, x: &FiniteSet) -> QMap<Q> {
    let n = x.len();
    let xp = x.plus();
    crisp(q, xp.plus(), xp, |i| i.min(n))
}

/// `zeta+ = zeta ⨿ id_{*}`.
pub fn plus<Q: Quantale>(zeta: &QMap<Q>) -> QMap<Q> {
    QMap::promote(zeta.relation().plus()).expect("a coproduct of maps is a map")
}

/// A Q-map `X -/-> Y+`, read as a partial map from `X` to `Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialQMap<Q: Quantale> {
    map: QMap<Q>,
    codomain: FiniteSet,
}

impl<Q: Quantale> PartialQMap<Q> {
    /// Requires the target of `map` to be of the form `Y+`.
    pub fn new(map: QMap<Q>) -> Result<Self> {
        let codomain = map
            .target()
            .strip_plus()
            .ok_or_else(|| Error::NotPartial(format!("target {} has no adjoined point", map.target())))?;
        Ok(PartialQMap { map, codomain })
    }

    /// Validates `relation: X -/-> Y+` as a map.
    pub fn promote(relation: QRelation<Q>) -> Result<Self> {
        Self::new(QMap::promote(relation)?)
    }

    /// `iota_Y` as the identity partial map on `Y`.
    pub fn identity(q: &Q, y: &FiniteSet) -> Self {
        PartialQMap {
            map: unit(q, y),
            codomain: y.clone(),
        }
    }

    pub fn map(&self) -> &QMap<Q> {
        &self.map
    }

    pub fn source(&self) -> &FiniteSet {
        self.map.source()
    }

    /// `Y`, without the adjoined point.
    pub fn codomain(&self) -> &FiniteSet {
        &self.codomain
    }

    /// Degree to which `x` has no image, `zeta(x, *)`.
    pub fn undefined(&self, x: usize) -> Q::Elem {
        self.map.get(x, self.codomain.len())
    }

    /// Whether every `zeta(x, *)` and `zeta*(*, x)` is bottom, so the map
    /// comes from a total map `X -/-> Y`.
    pub fn is_total(&self) -> bool {
        let (n, b) = (self.codomain.len(), self.map.quantale().bottom());
        (0..self.source().len()).all(|x| self.map.get(x, n) == b && self.map.adjoint().get(n, x) == b)
    }

    /// Drops the star column of a total partial map.
    pub fn to_total(&self) -> Result<QMap<Q>> {
        if !self.is_total() {
            return Err(Error::NotPartial("map is not total".into()));
        }
        self.map.restrict_codomain(&self.codomain)
    }

    /// Checks `zeta(x, *) & zeta*(y, x) = bot` for every `x` and `y` in `Y`.
    pub fn star_exclusion_failure(&self) -> Option<String> {
        let q = self.map.quantale();
        let n = self.codomain.len();
        for x in 0..self.source().len() {
            for y in 0..n {
                let v = q.mult(self.undefined(x), self.map.adjoint().get(y, x));
                if v != q.bottom() {
                    return Some(format!(
                        "zeta({x},*) & zeta*({y},{x}) = {}",
                        q.label(v),
                        x = self.source().label(x),
                        y = self.codomain.label(y)
                    ));
                }
            }
        }
        None
    }
}

/// `eta ⋄ zeta` by the two-case formula: on `z` in `Z` the sup-`&` product
/// over `Y`, and on the star additionally joined with `zeta(x, *)`.
pub fn kleisli_compose<Q: Quantale>(eta: &PartialQMap<Q>, zeta: &PartialQMap<Q>) -> Result<PartialQMap<Q>> {
    ensure_same_set(eta.source(), zeta.codomain())?;
    let q = zeta.map.quantale();
    let ny = zeta.codomain.len();
    let nz = eta.codomain.len();
    let rel = QRelation::from_fn(q.clone(), zeta.source().clone(), eta.map.target().clone(), |x, z| {
        let through = q.join_all((0..ny).map(|y| q.mult(eta.map.get(y, z), zeta.map.get(x, y))));
        if z == nz {
            q.join(through, zeta.undefined(x))
        } else {
            through
        }
    });
    Ok(PartialQMap {
        map: QMap::promote(rel)?,
        codomain: eta.codomain.clone(),
    })
}

/// `m_Z . eta+ . zeta`, the monad-theoretic composite.
pub fn kleisli_compose_via_monad<Q: Quantale>(eta: &PartialQMap<Q>, zeta: &PartialQMap<Q>) -> Result<PartialQMap<Q>> {
    let q = zeta.map.quantale();
    let lifted = plus(&eta.map).compose(&zeta.map)?;
    let map = mu(q, &eta.codomain).compose(&lifted)?;
    PartialQMap::new(map)
}

/// Embeds a total map `X -/-> Y` as `X -/-> Y+` with bottom on the star.
pub fn embed_total<Q: Quantale>(zeta: &QMap<Q>) -> PartialQMap<Q> {
    let map = zeta
        .extend_codomain(&zeta.target().plus())
        .expect("Y is a subset of Y+");
    PartialQMap {
        map,
        codomain: zeta.target().clone(),
    }
}

/// `K zeta: X+ -/-> Y+`: `zeta` on the rows of `X` (star column included),
/// `k` at `(*, *)`, bottom elsewhere. Equals `m_Y . zeta+`.
pub fn comparison_k<Q: Quantale>(zeta: &PartialQMap<Q>) -> QMap<Q> {
    let q = zeta.map.quantale();
    let (k, b) = (q.unit(), q.bottom());
    let nx = zeta.source().len();
    let ny = zeta.codomain.len();
    let rel = QRelation::from_fn(q.clone(), zeta.source().plus(), zeta.map.target().clone(), |x, y| {
        if x < nx {
            zeta.map.get(x, y)
        } else if y == ny {
            k
        } else {
            b
        }
    });
    QMap::promote(rel).expect("K of a partial map is a map")
}

/// An algebra of the maybe monad, stored as its point `mu: {*} -/-> X`.
#[derive(Clone, Debug, PartialEq)]
pub struct TAlgebra<Q: Quantale> {
    point: QMap<Q>,
}

impl<Q: Quantale> TAlgebra<Q> {
    pub fn from_point(point: QMap<Q>) -> Result<Self> {
        ensure_same_set(&FiniteSet::singleton(), point.source())?;
        Ok(TAlgebra { point })
    }

    /// Recovers the point from a structure map `X+ -/-> X` with
    /// `mu . iota_X = id_X`.
    pub fn from_structure(structure: &QMap<Q>) -> Result<Self> {
        let x = structure.target().clone();
        ensure_same_set(&x.plus(), structure.source())?;
        let q = structure.quantale();
        verified(
            "mu . iota = id",
            structure.compose(&unit(q, &x))?.relation(),
            &QRelation::identity(q.clone(), x.clone()),
        )?;
        let star = x.len();
        let rel = QRelation::from_fn(q.clone(), FiniteSet::singleton(), x, |_, y| structure.get(star, y));
        Ok(TAlgebra {
            point: QMap::promote(rel)?,
        })
    }

    /// The free algebra `(X+, tau_X)`.
    pub fn free(q: &Q, x: &FiniteSet) -> Self {
        TAlgebra { point: tau(q, x) }
    }

    pub fn carrier(&self) -> &FiniteSet {
        self.point.target()
    }

    pub fn point(&self) -> &QMap<Q> {
        &self.point
    }

    /// The structure map `X+ -/-> X`: `id_X` on `X`, the point on the star.
    pub fn structure(&self) -> QMap<Q> {
        let q = self.point.quantale();
        let x = self.carrier().clone();
        let n = x.len();
        let (k, b) = (q.unit(), q.bottom());
        let rel = QRelation::from_fn(q.clone(), x.plus(), x, |i, y| {
            if i == n {
                self.point.get(0, y)
            } else if i == y {
                k
            } else {
                b
            }
        });
        QMap::promote(rel).expect("structure maps of algebras are maps")
    }

    /// Whether `zeta` is an algebra morphism `self -> other`, i.e.
    /// `zeta . mu = lambda` on points.
    pub fn is_morphism_to(&self, zeta: &QMap<Q>, other: &TAlgebra<Q>) -> Result<bool> {
        Ok(zeta.compose(&self.point)?.relation() == other.point.relation())
    }
}

/// All algebras on `X` over a finite quantale, i.e. all maps `{*} -/-> X`.
pub fn enumerate_algebras(q: &FiniteQuantale, x: &FiniteSet, budget: u128) -> Result<Vec<TAlgebra<FiniteQuantale>>> {
    Ok(enumerate_qmaps(q, &FiniteSet::singleton(), x, budget)?
        .into_iter()
        .map(|point| TAlgebra { point })
        .collect())
}

/// All partial maps `X -/-> Y+` over a finite quantale.
pub fn enumerate_partial_qmaps(
    q: &FiniteQuantale,
    x: &FiniteSet,
    y: &FiniteSet,
    budget: u128,
) -> Result<Vec<PartialQMap<FiniteQuantale>>> {
    Ok(enumerate_qmaps(q, x, &y.plus(), budget)?
        .into_iter()
        .map(|map| PartialQMap {
            map,
            codomain: y.clone(),
        })
        .collect())
}

/// The isomorphism between an algebra `(X, mu)` and the free algebra on
/// `X \ {e}`, for the cyclic group structure on `X` taken in label order
/// (`e` is the first label).
#[derive(Clone, Debug, PartialEq)]
pub struct FreeIso<Q: Quantale> {
    /// `X \ {e}`.
    pub base: FiniteSet,
    /// `zeta: X -/-> (X \ {e})+`.
    pub zeta: QMap<Q>,
    /// `eta: (X \ {e})+ -/-> X`, inverse to `zeta`.
    pub eta: QMap<Q>,
}

/// Builds `zeta(x, a) = mu*(x.a, *)`, `zeta(x, *) = mu*(x, *)`,
/// `eta(a, x) = mu(*, x.a)`, `eta(*, x) = mu(*, x)` and checks
/// `eta . zeta = id`, `zeta . eta = id`, `zeta . mu = tau` and
/// `eta . tau = mu`.
pub fn free_algebra_iso<Q: Quantale>(algebra: &TAlgebra<Q>) -> Result<FreeIso<Q>> {
    let mu_map = &algebra.point;
    let q = mu_map.quantale();
    let x = algebra.carrier().clone();
    let n = x.len();
    if n == 0 {
        return Err(Error::Invalid("an algebra has a non-empty carrier".into()));
    }
    let dot = |a: usize, b: usize| (a + b) % n;
    let base = x.without(x.label(0))?;
    let based = base.plus();
    // columns of (X \ {e})+: group element a = 1..n at column a - 1, star last
    let star = n - 1;
    let adj = mu_map.adjoint();
    let zeta = QRelation::from_fn(q.clone(), x.clone(), based.clone(), |xi, col| {
        if col == star {
            adj.get(xi, 0)
        } else {
            adj.get(dot(xi, col + 1), 0)
        }
    });
    let eta = QRelation::from_fn(q.clone(), based.clone(), x.clone(), |row, xi| {
        if row == star {
            mu_map.get(0, xi)
        } else {
            mu_map.get(0, dot(xi, row + 1))
        }
    });
    let tau_base = tau(q, &base);
    verified(
        "eta . zeta = id_X",
        &eta.compose(&zeta)?,
        &QRelation::identity(q.clone(), x.clone()),
    )?;
    verified(
        "zeta . eta = id_(X-e)+",
        &zeta.compose(&eta)?,
        &QRelation::identity(q.clone(), based),
    )?;
    verified("zeta . mu = tau", &zeta.compose(mu_map.relation())?, tau_base.relation())?;
    verified("eta . tau = mu", &eta.compose(tau_base.relation())?, mu_map.relation())?;
    // mutually inverse relations are adjoint to each other
    let zeta = QMap::promote(zeta)?;
    let eta = QMap::promote(eta)?;
    verified("zeta* = eta", zeta.adjoint(), eta.relation())?;
    Ok(FreeIso { base, zeta, eta })
}

/// `m_X . iota_{X+} = id`, `m_X . (iota_X)+ = id` and
/// `m_X . m_{X+} = m_X . (m_X)+`.
pub fn verify_monad_laws<Q: Quantale>(q: &Q, x: &FiniteSet) -> Result<()> {
    let xp = x.plus();
    let m = mu(q, x);
    let id = QRelation::identity(q.clone(), xp.clone());
    verified("m . iota_(X+) = id", m.compose(&unit(q, &xp))?.relation(), &id)?;
    verified("m . (iota_X)+ = id", m.compose(&plus(&unit(q, x)))?.relation(), &id)?;
    verified(
        "m . m_(X+) = m . (m_X)+",
        m.compose(&mu(q, &xp))?.relation(),
        m.compose(&plus(&m))?.relation(),
    )
}

/// Naturality of the unit and multiplication at `zeta: X -/-> Y`:
/// `zeta+ . iota_X = iota_Y . zeta` and `zeta+ . m_X = m_Y . zeta++`.
pub fn verify_naturality<Q: Quantale>(zeta: &QMap<Q>) -> Result<()> {
    let q = zeta.quantale();
    let (x, y) = (zeta.source(), zeta.target());
    let zp = plus(zeta);
    verified(
        "zeta+ . iota = iota . zeta",
        zp.compose(&unit(q, x))?.relation(),
        unit(q, y).compose(zeta)?.relation(),
    )?;
    verified(
        "zeta+ . m = m . zeta++",
        zp.compose(&mu(q, x))?.relation(),
        mu(q, y).compose(&plus(&zp))?.relation(),
    )
}

/// `iota ⋄ zeta = zeta = zeta ⋄ iota`.
pub fn verify_kleisli_units<Q: Quantale>(zeta: &PartialQMap<Q>) -> Result<()> {
    let q = zeta.map.quantale();
    let left = kleisli_compose(&PartialQMap::identity(q, zeta.codomain()), zeta)?;
    verified("iota . zeta = zeta", left.map.relation(), zeta.map.relation())?;
    let right = kleisli_compose(zeta, &PartialQMap::identity(q, zeta.source()))?;
    verified("zeta . iota = zeta", right.map.relation(), zeta.map.relation())
}

/// `theta ⋄ (eta ⋄ zeta) = (theta ⋄ eta) ⋄ zeta`, plus agreement of the
/// formula with `m . eta+ . zeta` on both inner composites.
pub fn verify_kleisli_assoc<Q: Quantale>(
    theta: &PartialQMap<Q>,
    eta: &PartialQMap<Q>,
    zeta: &PartialQMap<Q>,
) -> Result<()> {
    let ez = kleisli_compose(eta, zeta)?;
    verified("formula = m . eta+ . zeta", ez.map.relation(), kleisli_compose_via_monad(eta, zeta)?.map.relation())?;
    let te = kleisli_compose(theta, eta)?;
    verified("formula = m . theta+ . eta", te.map.relation(), kleisli_compose_via_monad(theta, eta)?.map.relation())?;
    verified(
        "theta . (eta . zeta) = (theta . eta) . zeta",
        kleisli_compose(theta, &ez)?.map.relation(),
        kleisli_compose(&te, zeta)?.map.relation(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn set(labels: &[&str]) -> FiniteSet {
        FiniteSet::new("S", labels.iter().copied()).unwrap()
    }

    #[test]
    fn structure_maps() {
        let q = zoo::c3();
        let x = set(&["a", "b"]);
        assert_eq!(unit(&q, &x).relation().to_matrix_string(), "k   bot\nbot k\nbot bot\n");
        assert_eq!(tau(&q, &x).relation().to_matrix_string(), "bot\nbot\nk\n");
        let m = mu(&q, &x);
        assert_eq!(m.source().labels(), ["a", "b", "*", "**"]);
        assert_eq!(m.relation().to_matrix_string(), "k   bot bot bot\nbot k   bot bot\nbot bot k   k\n");
        verify_monad_laws(&q, &x).unwrap();
    }

    #[test]
    fn totally_undefined_absorbs() {
        let q = zoo::c3();
        let x = set(&["a", "b"]);
        let y = set(&["u"]);
        let none = QRelation::from_labels(q.clone(), x.clone(), y.plus(), &[&["bot", "k"], &["bot", "k"]]).unwrap();
        let zeta = PartialQMap::promote(none).unwrap();
        for eta in enumerate_partial_qmaps(&q, &y, &x, 1000).unwrap() {
            let c = kleisli_compose(&eta, &zeta).unwrap();
            assert!((0..2).all(|i| c.undefined(i) == q.unit()));
        }
    }

    #[test]
    fn k_matches_monad_form() {
        let q = zoo::f1();
        let x = set(&["a"]);
        let y = set(&["u", "v"]);
        for zeta in enumerate_partial_qmaps(&q, &x, &y, 1000).unwrap() {
            let k = comparison_k(&zeta);
            let via = mu(&q, &y).compose(&plus(zeta.map())).unwrap();
            assert_eq!(k.relation(), via.relation());
            assert_eq!(k.compose(&tau(&q, &x)).unwrap().relation(), tau(&q, &y).relation());
        }
    }

    #[test]
    fn free_iso_on_free_algebra() {
        let q = zoo::c3();
        let alg = TAlgebra::free(&q, &set(&["a", "b"]));
        let iso = free_algebra_iso(&alg).unwrap();
        assert_eq!(iso.base.len(), 2);
    }

    #[test]
    fn structure_round_trip() {
        let q = zoo::f1();
        for alg in enumerate_algebras(&q, &set(&["a", "b"]), 1000).unwrap() {
            let back = TAlgebra::from_structure(&alg.structure()).unwrap();
            assert_eq!(back, alg);
        }
    }

    #[test]
    fn non_partial_target_rejected() {
        let q = zoo::c3();
        let id = QMap::identity(q, set(&["a"]));
        assert!(matches!(PartialQMap::new(id), Err(Error::NotPartial(_))));
    }
}
