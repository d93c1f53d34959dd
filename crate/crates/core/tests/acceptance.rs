//! Acceptance suite: one PASS/FAIL line per criterion, exact equality only.
//!
//! Runs without the libtest harness so the report is always printed.

use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use quantaloid::cli;
use quantaloid::kleisli;
use quantaloid::partition::{self, QPartition};
use quantaloid::qmap::{self, Agreement, QMap, Relations, DEFAULT_BUDGET};
use quantaloid::quantale::{classification, ChainQuantale, Classification};
use quantaloid::{zoo, FiniteQuantale, FiniteSet, QRelation, Quantale};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn set(name: &str, labels: &[&str]) -> FiniteSet {
    FiniteSet::new(name, labels.iter().copied()).unwrap()
}

fn flags(integral: bool, divisible: bool, lean: bool, weakly_lean: bool) -> Classification {
    Classification {
        integral,
        divisible,
        lean,
        weakly_lean,
    }
}

/// The classification table, each quantale within one second.
fn criterion_1() -> Outcome {
    // (lean, weakly lean) and, where stated, integrality
    let table: [(&str, FiniteQuantale, Option<bool>, bool, bool); 8] = [
        ("C3", zoo::c3(), Some(false), true, true),
        ("F1", zoo::f1(), None, false, true),
        ("F2", zoo::f2(), None, true, true),
        ("M3", zoo::m3(), None, false, false),
        ("M3'", zoo::m3_prime(), None, true, true),
        ("P{x}", zoo::powerset(1).unwrap(), None, true, true),
        ("P{a,b,c}", zoo::powerset(3).unwrap(), None, false, true),
        ("free-Z2", zoo::free_z2(), None, false, true),
    ];
    for (name, q, integral, lean, weakly_lean) in table {
        let start = Instant::now();
        let c = classification(&q);
        within(start.elapsed(), Duration::from_secs(1), name)?;
        ensure(c.lean == lean && c.weakly_lean == weakly_lean, || {
            format!("{name}: lean {} weakly lean {}", c.lean, c.weakly_lean)
        })?;
        if let Some(i) = integral {
            ensure(c.integral == i, || format!("{name}: integral {}", c.integral))?;
        }
        // lean implies weakly lean, and (for these) the full flag set is pinned
        ensure(!c.lean || c.weakly_lean, || format!("{name}: lean but not weakly lean"))?;
    }
    ensure(classification(&zoo::c3()) == flags(false, false, true, true), || "C3 flags".into())?;
    Ok("8 quantales classified".into())
}

/// Matrix identities from the worked examples.
fn criterion_2() -> Outcome {
    let q = zoo::powerset(3).unwrap();
    let y = set("Y", &["x", "y", "z"]);
    let z = set("Z", &["l", "m"]);
    let xi = QRelation::from_labels(
        q.clone(),
        y.clone(),
        z.clone(),
        &[&["{a}", "{b,c}"], &["{b}", "{a,c}"], &["{c}", "{a,b}"]],
    )
    .unwrap();
    let op = xi.opposite();
    ensure(xi.compose(&op).unwrap() == QRelation::identity(q.clone(), z), || "xi . xi^op != id_Z".into())?;
    let back = op.compose(&xi).unwrap();
    ensure(back.leq(&QRelation::identity(q.clone(), y.clone())).is_ok_and(|b| !b), || "unexpected".into())?;
    ensure(QRelation::identity(q.clone(), y.clone()).leq(&back).unwrap(), || "xi^op . xi !>= id_Y".into())?;
    let expected = QRelation::from_labels(
        q,
        y.clone(),
        y,
        &[
            &["{a,b,c}", "{c}", "{b}"],
            &["{c}", "{a,b,c}", "{a}"],
            &["{b}", "{a}", "{a,b,c}"],
        ],
    )
    .unwrap();
    ensure(back == expected, || format!("xi^op . xi = {back:?}"))?;

    let ch = ChainQuantale::Extended;
    let x = set("X", &["x", "y"]);
    let zeta = QRelation::from_labels(ch, x.clone(), x.clone(), &[&["-1", "inf"], &["inf", "1"]]).unwrap();
    let eta = QRelation::from_labels(ch, x.clone(), x.clone(), &[&["1", "inf"], &["inf", "-1"]]).unwrap();
    let id = QRelation::identity(ch, x.clone());
    ensure(eta.compose(&zeta).unwrap() == id, || "eta . zeta != id".into())?;
    ensure(zeta.compose(&eta).unwrap() == id, || "zeta . eta != id".into())?;

    let m3 = zoo::m3();
    let zeta = QMap::promote(
        QRelation::from_labels(m3.clone(), FiniteSet::singleton(), x.clone(), &[&["a", "bot"]]).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    let expected = QRelation::from_labels(m3, x, FiniteSet::singleton(), &[&["b"], &["bot"]]).unwrap();
    ensure(zeta.adjoint() == &expected, || format!("M3 adjoint {:?}", zeta.adjoint()))?;
    ensure(zeta.adjoint() != &zeta.relation().opposite(), || "M3 witness is symmetric".into())?;
    Ok("P{a,b,c}, extended chain and M3 identities".into())
}

fn small_zoo() -> Vec<FiniteQuantale> {
    zoo::catalog()
        .into_iter()
        .filter(|e| e.quantale.size() <= 5)
        .map(|e| e.quantale)
        .collect()
}

/// Symmetric maps versus weak leanness, and graphs versus leanness.
fn criteria_3_4() -> (Outcome, Outcome) {
    let start = Instant::now();
    let mut sym = Ok(());
    let mut graphs = Ok(());
    let zoo = small_zoo();
    for q in &zoo {
        let profiles = match qmap::survey(q, 2, DEFAULT_BUDGET) {
            Ok(p) => p,
            Err(e) => return (Err(e.to_string()), Err(e.to_string())),
        };
        let over_budget = profiles.iter().find(|p| p.total_relations > 625);
        let [s, g] = qmap::theorem_reports(q, &profiles);
        if sym.is_ok() {
            sym = ensure(over_budget.is_none(), || format!("{}: profile over 625", q.name()))
                .and_then(|_| {
                    ensure(s.agreement == Agreement::Agree, || {
                        format!("{}: weakly lean {} vs all symmetric {}", q.name(), s.predicate, s.all_hold)
                    })
                });
        }
        if graphs.is_ok() {
            graphs = ensure(g.agreement == Agreement::Agree, || {
                format!("{}: lean {} vs all graphs {}", q.name(), g.predicate, g.all_hold)
            })
            .and_then(|_| {
                ensure(g.counts_match != Some(false), || format!("{}: |Y|^|X| count differs", q.name()))
            });
        }
    }
    let elapsed = start.elapsed();
    let timed = within(elapsed, Duration::from_secs(60), "harness");
    let detail = format!("{} quantales of size <= 5, |X|,|Y| <= 2, {elapsed:.2?}", zoo.len());
    (
        sym.and(timed.clone()).map(|_| detail.clone()),
        graphs.and(timed).map(|_| detail),
    )
}

/// All relations between sets of sizes `0..=2`, indexed, with memoized
/// library results so every triple can be checked by lookup.
struct Universe {
    q: FiniteQuantale,
    sets: Vec<FiniteSet>,
    rels: Vec<Vec<Vec<QRelation<FiniteQuantale>>>>,
    index: Vec<Vec<HashMap<Vec<usize>, usize>>>,
}

impl Universe {
    fn new(q: &FiniteQuantale) -> Self {
        let sets: Vec<FiniteSet> = (0..=2).map(|n| FiniteSet::range("S", n)).collect();
        let mut rels = Vec::new();
        let mut index = Vec::new();
        for a in &sets {
            let mut row = Vec::new();
            let mut idx = Vec::new();
            for b in &sets {
                let all: Vec<_> = Relations::new(q.clone(), a.clone(), b.clone()).collect();
                idx.push(all.iter().enumerate().map(|(i, r)| (Self::key(r), i)).collect());
                row.push(all);
            }
            rels.push(row);
            index.push(idx);
        }
        Universe {
            q: q.clone(),
            sets,
            rels,
            index,
        }
    }

    fn key(r: &QRelation<FiniteQuantale>) -> Vec<usize> {
        r.entries().iter().map(|e| e.index()).collect()
    }

    fn id(&self, a: usize, b: usize, r: &QRelation<FiniteQuantale>) -> usize {
        self.index[a][b][&Self::key(r)]
    }

    /// `table[j][i] = rels[b][c][j] . rels[a][b][i]`.
    fn compose_table(&self, a: usize, b: usize, c: usize) -> Vec<Vec<usize>> {
        self.rels[b][c]
            .iter()
            .map(|psi| {
                self.rels[a][b]
                    .iter()
                    .map(|phi| self.id(a, c, &psi.compose(phi).unwrap()))
                    .collect()
            })
            .collect()
    }

    fn binary_table(&self, a: usize, b: usize, f: impl Fn(&QRelation<FiniteQuantale>, &QRelation<FiniteQuantale>) -> QRelation<FiniteQuantale>) -> Vec<Vec<usize>> {
        let all = &self.rels[a][b];
        all.iter()
            .map(|r| all.iter().map(|s| self.id(a, b, &f(r, s))).collect())
            .collect()
    }

    fn leq_table(&self, a: usize, b: usize) -> Vec<Vec<bool>> {
        let all = &self.rels[a][b];
        all.iter()
            .map(|r| all.iter().map(|s| r.leq(s).unwrap()).collect())
            .collect()
    }
}

fn algebra_laws(q: &FiniteQuantale) -> Result<u64, String> {
    let u = Universe::new(q);
    let n = u.sets.len();
    let mut comp = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                comp.insert((a, b, c), u.compose_table(a, b, c));
            }
        }
    }
    let leq: Vec<Vec<_>> = (0..n).map(|a| (0..n).map(|b| u.leq_table(a, b)).collect()).collect();
    let join: Vec<Vec<_>> = (0..n)
        .map(|a| (0..n).map(|b| u.binary_table(a, b, |r, s| r.join(s).unwrap())).collect())
        .collect();
    let mut checked = 0u64;
    for a in 0..n {
        for b in 0..n {
            let id_a = u.id(a, a, &QRelation::identity(u.q.clone(), u.sets[a].clone()));
            let id_b = u.id(b, b, &QRelation::identity(u.q.clone(), u.sets[b].clone()));
            let (right_unit, left_unit) = (&comp[&(a, a, b)], &comp[&(a, b, b)][id_b]);
            for (phi, row) in right_unit.iter().enumerate() {
                ensure(row[id_a] == phi, || format!("phi . id != phi at {a}x{b}"))?;
                ensure(left_unit[phi] == phi, || format!("id . phi != phi at {a}x{b}"))?;
                checked += 2;
            }
            for c in 0..n {
                let psi_phi = &comp[&(a, b, c)];
                // residuals are computed once per (xi, phi) and (psi, xi)
                let lres: Vec<Vec<usize>> = u.rels[a][c]
                    .iter()
                    .map(|xi| u.rels[a][b].iter().map(|phi| u.id(b, c, &xi.left_residual(phi).unwrap())).collect())
                    .collect();
                let rres: Vec<Vec<usize>> = u.rels[b][c]
                    .iter()
                    .map(|psi| u.rels[a][c].iter().map(|xi| u.id(a, b, &psi.right_residual(xi).unwrap())).collect())
                    .collect();
                for psi in 0..u.rels[b][c].len() {
                    for phi in 0..u.rels[a][b].len() {
                        let composite = psi_phi[psi][phi];
                        for xi in 0..u.rels[a][c].len() {
                            let below = leq[a][c][composite][xi];
                            ensure(below == leq[b][c][psi][lres[xi][phi]], || {
                                format!("left Galois fails at {a}x{b}x{c} psi {psi} phi {phi} xi {xi}")
                            })?;
                            ensure(below == leq[a][b][phi][rres[psi][xi]], || {
                                format!("right Galois fails at {a}x{b}x{c} psi {psi} phi {phi} xi {xi}")
                            })?;
                            checked += 2;
                        }
                        // join preservation in each argument
                        for other in 0..u.rels[a][b].len() {
                            let lhs = psi_phi[psi][join[a][b][phi][other]];
                            let rhs = join[a][c][composite][psi_phi[psi][other]];
                            ensure(lhs == rhs, || format!("psi . (phi v phi') at {a}x{b}x{c}"))?;
                            checked += 1;
                        }
                        for other in 0..u.rels[b][c].len() {
                            let lhs = psi_phi[join[b][c][psi][other]][phi];
                            let rhs = join[a][c][composite][psi_phi[other][phi]];
                            ensure(lhs == rhs, || format!("(psi v psi') . phi at {a}x{b}x{c}"))?;
                            checked += 1;
                        }
                    }
                }
                for d in 0..n {
                    let chi_psi = &comp[&(b, c, d)];
                    let outer_left = &comp[&(a, c, d)];
                    let outer_right = &comp[&(a, b, d)];
                    for chi in 0..u.rels[c][d].len() {
                        for psi in 0..u.rels[b][c].len() {
                            for phi in 0..u.rels[a][b].len() {
                                let l = outer_left[chi][psi_phi[psi][phi]];
                                let r = outer_right[chi_psi[chi][psi]][phi];
                                ensure(l == r, || format!("associativity at {a}x{b}x{c}x{d}"))?;
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// Galois property, associativity, units and join preservation.
fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for q in [zoo::c3(), zoo::f1()] {
        total += algebra_laws(&q).map_err(|e| format!("{}: {e}", q.name()))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "property suite")?;
    Ok(format!("{total} instances over C3 and F1, {elapsed:.2?}"))
}

/// Diagonal and annihilation identities for every enumerated map.
fn criterion_6() -> Outcome {
    let mut maps = 0;
    for q in small_zoo() {
        for n in 0..=2 {
            for m in 0..=2 {
                let (x, y) = (qmap::harness_source(n), qmap::harness_target(m));
                for zeta in qmap::enumerate_qmaps(&q, &x, &y, DEFAULT_BUDGET).map_err(|e| e.to_string())? {
                    let back = zeta.adjoint().compose(zeta.relation()).unwrap();
                    for i in 0..n {
                        ensure(back.get(i, i) == q.unit(), || format!("{}: diagonal at {zeta:?}", q.name()))?;
                        for a in 0..m {
                            for b in (0..m).filter(|&b| b != a) {
                                let v = q.mult(zeta.get(i, b), zeta.adjoint().get(a, i));
                                ensure(v == q.bottom(), || format!("{}: annihilation at {zeta:?}", q.name()))?;
                            }
                        }
                    }
                    ensure(zeta.annihilation_failure().is_none(), || "library check disagrees".into())?;
                    maps += 1;
                }
            }
        }
    }
    Ok(format!("{maps} maps"))
}

/// Partitions from the worked examples plus 100 sampled ones.
fn criterion_7() -> Outcome {
    let f1 = zoo::f1();
    let x = set("X", &["x", "y"]);
    let eta = QMap::promote(QRelation::from_labels(f1.clone(), x.clone(), x.clone(), &[&["p", "q"], &["q", "p"]]).unwrap())
        .map_err(|e| e.to_string())?;
    let sigma = partition::partition_from_surjection(&eta).map_err(|e| e.to_string())?;
    let expected = QPartition::from_labels(f1.clone(), x.clone(), x.clone(), &[&["p", "q"], &["q", "p"]]).unwrap();
    ensure(sigma == expected, || format!("Sigma_eta over F1 = {sigma:?}"))?;

    let p3 = zoo::powerset(3).unwrap();
    let y = set("Y", &["x", "y", "z"]);
    let z = set("Z", &["l", "m"]);
    let rows: &[&[&str]] = &[&["{a}", "{b,c}"], &["{b}", "{a,c}"], &["{c}", "{a,b}"]];
    let xi = QMap::promote(QRelation::from_labels(p3.clone(), y.clone(), z.clone(), rows).unwrap())
        .map_err(|e| e.to_string())?;
    let sigma_xi = partition::partition_from_surjection(&xi).map_err(|e| e.to_string())?;
    ensure(sigma_xi == QPartition::from_labels(p3, y, z, rows).unwrap(), || "Sigma_xi".into())?;

    let ch = ChainQuantale::Extended;
    let zeta = QMap::promote(QRelation::from_labels(ch, x.clone(), x.clone(), &[&["-1", "inf"], &["inf", "1"]]).unwrap())
        .map_err(|e| e.to_string())?;
    let sigma_ch = partition::partition_from_surjection(&zeta).map_err(|e| e.to_string())?;
    let expected_ch = QPartition::from_labels(ch, x.clone(), x, &[&["0", "inf"], &["inf", "0"]]).unwrap();
    ensure(sigma_ch == expected_ch, || format!("Sigma_zeta over the chain = {sigma_ch:?}"))?;

    for (name, ok) in [
        ("F1", partition::roundtrip_check(&sigma)),
        ("P{a,b,c}", partition::roundtrip_check(&sigma_xi)),
        ("extended chain", partition::roundtrip_check(&sigma_ch)),
    ] {
        ensure(matches!(ok, Ok(true)), || format!("{name} round trip: {ok:?}"))?;
    }

    let samples = partition::sample_partitions(&f1, 3, 100, 0, 100_000_000).map_err(|e| e.to_string())?;
    ensure(samples.len() == 100, || "sampler returned too few".into())?;
    for p in &samples {
        ensure(matches!(partition::roundtrip_check(p), Ok(true)), || format!("sampled round trip {p:?}"))?;
    }
    ensure(samples.iter().any(|p| p.set().len() == 3), || "no sample of size 3".into())?;
    Ok("3 worked partitions, 100 sampled over F1 (seed 0)".into())
}

/// Monad and Kleisli laws over C3 at sizes up to 2.
fn criterion_8() -> Outcome {
    let start = Instant::now();
    let t = cli::verify_monad_exhaustive(&zoo::c3(), 2, 4096).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "monad laws")?;
    ensure(t.kleisli_assoc_triples > 0 && t.kleisli_unit_maps > 0, || "nothing checked".into())?;
    Ok(format!(
        "{} unit checks, {} associativity triples, {elapsed:.2?}",
        t.kleisli_unit_maps, t.kleisli_assoc_triples
    ))
}

/// Every algebra at sizes up to 3 over C3 and F1 is free.
fn criterion_9() -> Outcome {
    let mut total = 0;
    for q in [zoo::c3(), zoo::f1()] {
        for n in 1..=3 {
            let x = FiniteSet::range("X", n);
            let algebras = kleisli::enumerate_algebras(&q, &x, 4096).map_err(|e| e.to_string())?;
            ensure(!algebras.is_empty(), || format!("{} has no algebra on {n} points", q.name()))?;
            for a in &algebras {
                kleisli::free_algebra_iso(a).map_err(|e| format!("{}: {e}", q.name()))?;
            }
            total += algebras.len();
        }
    }
    Ok(format!("{total} algebras, zero failures"))
}

/// Spec-file round trip of C3.
fn criterion_10() -> Outcome {
    let c3 = zoo::builtin("C3").map_err(|e| e.to_string())?.quantale;
    let text = c3.to_spec_string();
    let back = zoo::parse_spec(&text).map_err(|e| e.to_string())?;
    ensure(back == c3, || "parsed quantale differs".into())?;
    ensure(back.labels() == c3.labels() && back.name() == c3.name(), || "labels differ".into())?;
    for a in c3.elements() {
        for b in c3.elements() {
            ensure(back.mult(a, b) == c3.mult(a, b), || "product table differs".into())?;
            ensure(back.leq(a, b) == c3.leq(a, b), || "order differs".into())?;
            ensure(back.join(a, b) == c3.join(a, b), || "join table differs".into())?;
        }
    }
    ensure(back.unit() == c3.unit(), || "unit differs".into())?;
    Ok("C3 tables identical".into())
}

fn guarded<T>(f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    })
}

fn main() {
    let (c3, c4) = guarded(|| Ok(criteria_3_4()))
        .unwrap_or_else(|e| (Err(e.clone()), Err(e)));
    let results: Vec<(u8, &str, Outcome)> = vec![
        (1, "classification table", guarded(criterion_1)),
        (2, "worked matrix identities", guarded(criterion_2)),
        (3, "symmetric maps iff weakly lean", c3),
        (4, "graphs iff lean", c4),
        (5, "relation algebra laws", guarded(criterion_5)),
        (6, "diagonal and annihilation", guarded(criterion_6)),
        (7, "partition round trip", guarded(criterion_7)),
        (8, "monad and Kleisli laws", guarded(criterion_8)),
        (9, "algebras are free", guarded(criterion_9)),
        (10, "spec-file round trip", guarded(criterion_10)),
    ];
    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {n:>2}: {name} ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n:>2}: {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
