//! Q-maps: relations with a right adjoint in the quantaloid of Q-relations.
//!
//! The only candidate for the right adjoint of `zeta: X -/-> Y` is
//! `zeta* = zeta ↘ id_Y`, with `zeta*(y, x) = /\_z zeta(x, z) -> id_Y(y, z)`.
//! Since `zeta . zeta* <= id_Y` always holds, `zeta` is a map exactly when
//! `id_X <= zeta* . zeta`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantale::{is_lean, is_weakly_lean, Element, FiniteQuantale, Quantale};
use crate::relation::{ensure_same_set, QRelation};
use crate::set::FiniteSet;

/// `phi ↘ id_Y`, the unique possible right adjoint of `phi: X -/-> Y`.
pub fn right_adjoint_candidate<Q: Quantale>(phi: &QRelation<Q>) -> QRelation<Q> {
    let id = QRelation::identity(phi.quantale().clone(), phi.target().clone());
    phi.right_residual(&id).expect("identity has the matching profile")
}

/// First `x` where `(phi* . phi)(x, x) >= k` fails.
fn diagonal_failure<Q: Quantale>(phi: &QRelation<Q>, adjoint: &QRelation<Q>) -> Option<usize> {
    let q = phi.quantale();
    let k = q.unit();
    (0..phi.source().len()).find(|&x| {
        let d = q.join_all((0..phi.target().len()).map(|y| q.mult(adjoint.get(y, x), phi.get(x, y))));
        !q.leq(k, d)
    })
}

pub fn is_qmap<Q: Quantale>(phi: &QRelation<Q>) -> bool {
    diagonal_failure(phi, &right_adjoint_candidate(phi)).is_none()
}

/// A Q-relation validated as a left adjoint, with its right adjoint cached.
#[derive(Clone, Debug, PartialEq)]
pub struct QMap<Q: Quantale> {
    relation: QRelation<Q>,
    adjoint: QRelation<Q>,
}

impl<Q: Quantale> QMap<Q> {
    /// Checks `id_X <= zeta* . zeta`; fails with the first diagonal witness.
    pub fn promote(relation: QRelation<Q>) -> Result<Self> {
        let adjoint = right_adjoint_candidate(&relation);
        match diagonal_failure(&relation, &adjoint) {
            Some(x) => Err(Error::NotAMap {
                witness: relation.source().label(x).to_string(),
            }),
            None => Ok(QMap { relation, adjoint }),
        }
    }

    pub fn identity(quantale: Q, set: FiniteSet) -> Self {
        let id = QRelation::identity(quantale, set);
        QMap {
            relation: id.clone(),
            adjoint: id,
        }
    }

    pub fn relation(&self) -> &QRelation<Q> {
        &self.relation
    }

    pub fn adjoint(&self) -> &QRelation<Q> {
        &self.adjoint
    }

    pub fn into_relation(self) -> QRelation<Q> {
        self.relation
    }

    pub fn quantale(&self) -> &Q {
        self.relation.quantale()
    }

    pub fn source(&self) -> &FiniteSet {
        self.relation.source()
    }

    pub fn target(&self) -> &FiniteSet {
        self.relation.target()
    }

    pub fn get(&self, x: usize, y: usize) -> Q::Elem {
        self.relation.get(x, y)
    }

    /// `self . zeta`, with adjoint `zeta* . self*`.
    pub fn compose(&self, zeta: &QMap<Q>) -> Result<QMap<Q>> {
        Ok(QMap {
            relation: self.relation.compose(&zeta.relation)?,
            adjoint: zeta.adjoint.compose(&self.adjoint)?,
        })
    }

    /// `zeta* = zeta^op`.
    pub fn is_symmetric(&self) -> bool {
        self.adjoint == self.relation.opposite()
    }

    /// `zeta_s = zeta /\ (zeta*)^op`. Not necessarily a map.
    pub fn symmetrize(&self) -> QRelation<Q> {
        self.relation
            .meet(&self.adjoint.opposite())
            .expect("adjoint^op has the profile of the relation")
    }

    /// `zeta . zeta* = id_Y`.
    pub fn is_surjective(&self) -> bool {
        let back = self.relation.compose(&self.adjoint).expect("adjoint composes");
        back == QRelation::identity(self.quantale().clone(), self.target().clone())
    }

    /// Extends the codomain to a superset `Z` of `Y`, padding new columns
    /// with bottom.
    pub fn extend_codomain(&self, z: &FiniteSet) -> Result<QMap<Q>> {
        let pos = self.target().embedding_into(z)?;
        let q = self.quantale().clone();
        let b = q.bottom();
        let mut back = vec![None; z.len()];
        for (y, &p) in pos.iter().enumerate() {
            back[p] = Some(y);
        }
        let rel = QRelation::from_fn(q, self.source().clone(), z.clone(), |x, j| {
            back[j].map_or(b, |y| self.get(x, y))
        });
        QMap::promote(rel)
    }

    /// Restricts the domain to a subset `W` of `X`.
    pub fn restrict_domain(&self, w: &FiniteSet) -> Result<QMap<Q>> {
        let pos = w.embedding_into(self.source())?;
        let rel = QRelation::from_fn(self.quantale().clone(), w.clone(), self.target().clone(), |i, y| {
            self.get(pos[i], y)
        });
        QMap::promote(rel)
    }

    /// Keeps only the target columns listed in `y`.
    pub fn restrict_codomain(&self, y: &FiniteSet) -> Result<QMap<Q>> {
        let pos = y.embedding_into(self.target())?;
        let rel = QRelation::from_fn(self.quantale().clone(), self.source().clone(), y.clone(), |x, j| {
            self.get(x, pos[j])
        });
        QMap::promote(rel)
    }

    /// `zeta ⨿ eta` (this map second), with adjoint `zeta* ⨿ eta*`.
    pub fn disjoint_union(&self, first: &QMap<Q>) -> Result<QMap<Q>> {
        Ok(QMap {
            relation: self.relation.disjoint_union(&first.relation)?,
            adjoint: self.adjoint.disjoint_union(&first.adjoint)?,
        })
    }

    /// Checks `(zeta* . zeta)(x, x) = k` and `zeta(x, z) & zeta*(y, x) = bot`
    /// for `y != z`; returns a description of the first failure.
    pub fn annihilation_failure(&self) -> Option<String> {
        let q = self.quantale();
        let (k, bot) = (q.unit(), q.bottom());
        let (xs, ys) = (self.source().len(), self.target().len());
        for x in 0..xs {
            let d = q.join_all((0..ys).map(|y| q.mult(self.adjoint.get(y, x), self.get(x, y))));
            if d != k {
                return Some(format!(
                    "(adjoint . map)({0},{0}) = {1}",
                    self.source().label(x),
                    q.label(d)
                ));
            }
            for y in 0..ys {
                for z in (0..ys).filter(|&z| z != y) {
                    let v = q.mult(self.get(x, z), self.adjoint.get(y, x));
                    if v != bot {
                        return Some(format!(
                            "map({x},{z}) & adjoint({y},{x}) = {v}",
                            x = self.source().label(x),
                            z = self.target().label(z),
                            y = self.target().label(y),
                            v = q.label(v)
                        ));
                    }
                }
            }
        }
        None
    }
}

/// A function between finite crisp sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrispMap {
    source: FiniteSet,
    target: FiniteSet,
    assignment: Vec<usize>,
}

impl CrispMap {
    pub fn new(source: FiniteSet, target: FiniteSet, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() || assignment.iter().any(|&y| y >= target.len()) {
            return Err(Error::Invalid(format!(
                "assignment {assignment:?} is not a function {source} -> {target}"
            )));
        }
        Ok(CrispMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from `(x, f(x))` label pairs covering the source.
    pub fn from_pairs(source: FiniteSet, target: FiniteSet, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut assignment = vec![None; source.len()];
        for (x, y) in pairs {
            let (i, j) = (source.position(x)?, target.position(y)?);
            if assignment[i].replace(j).is_some_and(|prev| prev != j) {
                return Err(Error::Invalid(format!("`{x}` is assigned twice")));
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or_else(|| Error::Invalid(format!("`{}` has no image", source.label(i)))))
            .collect::<Result<_>>()?;
        Self::new(source, target, assignment)
    }

    pub fn identity(set: FiniteSet) -> Self {
        CrispMap {
            assignment: (0..set.len()).collect(),
            source: set.clone(),
            target: set,
        }
    }

    /// Every function `X -> Y`, in lexicographic order of assignments.
    pub fn all(source: &FiniteSet, target: &FiniteSet) -> Vec<CrispMap> {
        let (n, m) = (source.len(), target.len());
        if n > 0 && m == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut a = vec![0; n];
        loop {
            out.push(CrispMap {
                source: source.clone(),
                target: target.clone(),
                assignment: a.clone(),
            });
            let Some(i) = (0..n).rev().find(|&i| a[i] + 1 < m) else {
                return out;
            };
            a[i] += 1;
            a[i + 1..].iter_mut().for_each(|v| *v = 0);
        }
    }

    pub fn source(&self) -> &FiniteSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.target.len()).all(|y| self.assignment.contains(&y))
    }
}

/// The graph `f_o`: `k` on `(x, f(x))`, bottom elsewhere. Its adjoint is the
/// opposite relation.
pub fn graph<Q: Quantale>(quantale: Q, f: &CrispMap) -> QMap<Q> {
    let (k, b) = (quantale.unit(), quantale.bottom());
    let relation = QRelation::from_fn(quantale, f.source.clone(), f.target.clone(), |x, y| {
        if f.apply(x) == y {
            k
        } else {
            b
        }
    });
    QMap {
        adjoint: relation.opposite(),
        relation,
    }
}

/// Recovers `f` with `zeta = f_o`: each `x` must have exactly one `y` with
/// `zeta(x, y) = zeta*(y, x) = k`, and the whole matrix must match the graph.
pub fn as_crisp_map<Q: Quantale>(zeta: &QMap<Q>) -> Result<CrispMap> {
    let q = zeta.quantale();
    let k = q.unit();
    let mut assignment = Vec::with_capacity(zeta.source().len());
    for x in 0..zeta.source().len() {
        let hits: Vec<usize> = (0..zeta.target().len())
            .filter(|&y| zeta.get(x, y) == k && zeta.adjoint().get(y, x) == k)
            .collect();
        match hits[..] {
            [y] => assignment.push(y),
            [] => {
                return Err(Error::NotGraph(format!(
                    "no crisp image for `{}`",
                    zeta.source().label(x)
                )))
            }
            _ => {
                return Err(Error::NotGraph(format!(
                    "`{}` has several crisp images",
                    zeta.source().label(x)
                )))
            }
        }
    }
    let f = CrispMap::new(zeta.source().clone(), zeta.target().clone(), assignment)?;
    if graph(q.clone(), &f).relation() == zeta.relation() {
        Ok(f)
    } else {
        Err(Error::NotGraph(format!(
            "entries outside the graph of {:?}",
            f.assignment
        )))
    }
}

/// Default cap on candidate matrices per profile (`5^4`).
pub const DEFAULT_BUDGET: u128 = 625;

/// Number of `Q`-valued `|X| x |Y|` matrices.
pub fn relation_count(q: &FiniteQuantale, source: usize, target: usize) -> Option<u128> {
    (q.size() as u128).checked_pow(u32::try_from(source * target).ok()?)
}

/// Iterates every relation `X -/-> Y` in lexicographic order of the
/// row-major entry vector (first entry most significant, elements by index).
pub struct Relations {
    quantale: FiniteQuantale,
    source: FiniteSet,
    target: FiniteSet,
    digits: Option<Vec<usize>>,
}

impl Relations {
    pub fn new(quantale: FiniteQuantale, source: FiniteSet, target: FiniteSet) -> Self {
        let n = source.len() * target.len();
        Relations {
            quantale,
            source,
            target,
            digits: Some(vec![0; n]),
        }
    }
}

impl Iterator for Relations {
    type Item = QRelation<FiniteQuantale>;

    fn next(&mut self) -> Option<Self::Item> {
        let digits = self.digits.as_mut()?;
        let entries: Vec<Element> = digits.iter().map(|&i| Element::from_index(i)).collect();
        let m = self.quantale.size();
        match (0..digits.len()).rev().find(|&i| digits[i] + 1 < m) {
            Some(i) => {
                digits[i] += 1;
                digits[i + 1..].iter_mut().for_each(|d| *d = 0);
            }
            None => self.digits = None,
        }
        Some(
            QRelation::from_entries(self.quantale.clone(), self.source.clone(), self.target.clone(), entries)
                .expect("digit vector has the right length"),
        )
    }
}

fn check_budget(q: &FiniteQuantale, source: &FiniteSet, target: &FiniteSet, budget: u128) -> Result<u128> {
    match relation_count(q, source.len(), target.len()) {
        Some(n) if n <= budget => Ok(n),
        n => Err(Error::BudgetExceeded {
            needed: n.unwrap_or(u128::MAX),
            budget,
        }),
    }
}

/// All Q-maps `X -/-> Y`, in lexicographic entry order.
pub fn enumerate_qmaps(
    q: &FiniteQuantale,
    source: &FiniteSet,
    target: &FiniteSet,
    budget: u128,
) -> Result<Vec<QMap<FiniteQuantale>>> {
    check_budget(q, source, target, budget)?;
    Ok(Relations::new(q.clone(), source.clone(), target.clone())
        .filter_map(|r| QMap::promote(r).ok())
        .collect())
}

/// A reported map with its adjoint, as label matrices indexed by source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapWitness {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub relation: Vec<Vec<String>>,
    pub adjoint: Vec<Vec<String>>,
}

impl MapWitness {
    pub fn of<Q: Quantale>(zeta: &QMap<Q>) -> Self {
        MapWitness {
            source: zeta.source().labels().to_vec(),
            target: zeta.target().labels().to_vec(),
            relation: zeta.relation().label_rows(),
            adjoint: zeta.adjoint().label_rows(),
        }
    }
}

impl std::fmt::Display for MapWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows = |m: &[Vec<String>]| {
            m.iter()
                .map(|r| format!("[{}]", r.join(" ")))
                .collect::<Vec<_>>()
                .join("")
        };
        write!(
            f,
            "{{{}}} -> {{{}}} map {} adjoint {}",
            self.source.join(","),
            self.target.join(","),
            rows(&self.relation),
            rows(&self.adjoint)
        )
    }
}

/// Enumeration summary for one `(|X|, |Y|)` profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileReport {
    pub quantale: String,
    pub profile: [usize; 2],
    pub total_relations: u128,
    pub qmap_count: usize,
    pub symmetric_count: usize,
    pub graph_count: usize,
    /// Lexicographically first map with `zeta* != zeta^op`.
    pub asymmetric_witness: Option<MapWitness>,
    /// Lexicographically first map that is not a graph.
    pub non_graph_witness: Option<MapWitness>,
    /// First map violating the diagonal/annihilation identities, if any.
    pub annihilation_failure: Option<String>,
}

/// Source set of size `n` used by the harnesses.
pub fn harness_source(n: usize) -> FiniteSet {
    if n == 1 {
        FiniteSet::singleton().with_name("X")
    } else {
        FiniteSet::new("X", (0..n).map(|i| format!("x{i}"))).expect("labels are valid")
    }
}

/// Target set of size `n` used by the harnesses.
pub fn harness_target(n: usize) -> FiniteSet {
    let names = ["x", "y", "z", "w"];
    let labels = (0..n).map(|i| names.get(i).map_or_else(|| format!("y{i}"), |s| s.to_string()));
    FiniteSet::new("Y", labels).expect("labels are valid")
}

/// Enumerates all Q-maps for one profile and tallies symmetry and graphs.
pub fn survey_profile(q: &FiniteQuantale, source: &FiniteSet, target: &FiniteSet, budget: u128) -> Result<ProfileReport> {
    let total = check_budget(q, source, target, budget)?;
    let mut report = ProfileReport {
        quantale: q.name().to_string(),
        profile: [source.len(), target.len()],
        total_relations: total,
        qmap_count: 0,
        symmetric_count: 0,
        graph_count: 0,
        asymmetric_witness: None,
        non_graph_witness: None,
        annihilation_failure: None,
    };
    for rel in Relations::new(q.clone(), source.clone(), target.clone()) {
        let Ok(zeta) = QMap::promote(rel) else { continue };
        report.qmap_count += 1;
        if zeta.is_symmetric() {
            report.symmetric_count += 1;
        } else if report.asymmetric_witness.is_none() {
            report.asymmetric_witness = Some(MapWitness::of(&zeta));
        }
        if as_crisp_map(&zeta).is_ok() {
            report.graph_count += 1;
        } else if report.non_graph_witness.is_none() {
            report.non_graph_witness = Some(MapWitness::of(&zeta));
        }
        if report.annihilation_failure.is_none() {
            report.annihilation_failure = zeta
                .annihilation_failure()
                .map(|e| format!("{}: {e}", MapWitness::of(&zeta)));
        }
    }
    Ok(report)
}

/// Surveys every profile `|X|, |Y| <= max_set` (including empty sets).
pub fn survey(q: &FiniteQuantale, max_set: usize, budget: u128) -> Result<Vec<ProfileReport>> {
    let mut out = Vec::new();
    for n in 0..=max_set {
        for m in 0..=max_set {
            out.push(survey_profile(q, &harness_source(n), &harness_target(m), budget)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// Every map is symmetric iff the quantale is weakly lean.
    SymmetricIffWeaklyLean,
    /// Every map is a graph iff the quantale is lean.
    GraphsIffLean,
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Theorem::SymmetricIffWeaklyLean => "symmetric-iff-weakly-lean",
            Theorem::GraphsIffLean => "graphs-iff-lean",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    /// The enumeration verdict matches the predicate.
    Agree,
    /// The predicate holds but a counterexample was enumerated.
    Disagree,
    /// The predicate fails but no counterexample exists within the budget.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub quantale: String,
    pub theorem: Theorem,
    /// `is_weakly_lean` or `is_lean`, respectively.
    pub predicate: bool,
    /// Every enumerated map is symmetric (resp. a graph).
    pub all_hold: bool,
    /// The first counterexample, with the profile it came from.
    pub witness: Option<(usize, usize, MapWitness)>,
    /// For the graph theorem over a lean quantale: every profile has exactly
    /// `|Y|^|X|` maps.
    pub counts_match: Option<bool>,
    pub agreement: Agreement,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.agreement == Agreement::Agree && self.counts_match != Some(false)
    }
}

fn agreement(predicate: bool, all_hold: bool) -> Agreement {
    match (predicate, all_hold) {
        (true, true) | (false, false) => Agreement::Agree,
        (true, false) => Agreement::Disagree,
        (false, true) => Agreement::Inconclusive,
    }
}

/// Builds both theorem reports from a survey.
pub fn theorem_reports(q: &FiniteQuantale, profiles: &[ProfileReport]) -> [TheoremReport; 2] {
    let first = |pick: fn(&ProfileReport) -> &Option<MapWitness>| {
        profiles
            .iter()
            .find_map(|p| pick(p).as_ref().map(|w| (p.profile[0], p.profile[1], w.clone())))
    };
    let weakly = is_weakly_lean(q);
    let lean = is_lean(q);
    let sym_all = profiles.iter().all(|p| p.symmetric_count == p.qmap_count);
    let graph_all = profiles.iter().all(|p| p.graph_count == p.qmap_count);
    let counts_match = lean.then(|| {
        profiles.iter().all(|p| {
            (p.profile[1] as u128).checked_pow(p.profile[0] as u32) == Some(p.qmap_count as u128)
        })
    });
    [
        TheoremReport {
            quantale: q.name().to_string(),
            theorem: Theorem::SymmetricIffWeaklyLean,
            predicate: weakly,
            all_hold: sym_all,
            witness: first(|p| &p.asymmetric_witness),
            counts_match: None,
            agreement: agreement(weakly, sym_all),
        },
        TheoremReport {
            quantale: q.name().to_string(),
            theorem: Theorem::GraphsIffLean,
            predicate: lean,
            all_hold: graph_all,
            witness: first(|p| &p.non_graph_witness),
            counts_match,
            agreement: agreement(lean, graph_all),
        },
    ]
}

/// Enumerates all maps with `|X|, |Y| <= max_set` and compares "all maps are
/// symmetric" with weak leanness.
pub fn check_symmetric_iff_weakly_lean(q: &FiniteQuantale, max_set: usize, budget: u128) -> Result<TheoremReport> {
    let [sym, _] = theorem_reports(q, &survey(q, max_set, budget)?);
    Ok(sym)
}

/// Enumerates all maps with `|X|, |Y| <= max_set` and compares "all maps are
/// graphs" with leanness.
pub fn check_graphs_iff_lean(q: &FiniteQuantale, max_set: usize, budget: u128) -> Result<TheoremReport> {
    let [_, graphs] = theorem_reports(q, &survey(q, max_set, budget)?);
    Ok(graphs)
}

/// Checks that `target` is a superset of `zeta`'s target and that the
/// extension agrees with `zeta` and `zeta*` on the old columns.
pub fn extension_agrees<Q: Quantale>(zeta: &QMap<Q>, ext: &QMap<Q>) -> Result<bool> {
    ensure_same_set(zeta.source(), ext.source())?;
    let pos = zeta.target().embedding_into(ext.target())?;
    Ok((0..zeta.source().len()).all(|x| {
        pos.iter().enumerate().all(|(y, &p)| {
            ext.get(x, p) == zeta.get(x, y) && ext.adjoint().get(p, x) == zeta.adjoint().get(y, x)
        })
    }))
}
