use proptest::prelude::*;
use quantaloid::partition;
use quantaloid::qmap::{self, QMap};
use quantaloid::{zoo, Element, FiniteQuantale, FiniteSet, QRelation, Quantale};

fn quantales() -> Vec<FiniteQuantale> {
    vec![
        zoo::c3(),
        zoo::f1(),
        zoo::m3(),
        zoo::lukasiewicz(3).unwrap(),
        zoo::powerset(2).unwrap(),
        zoo::free_z2(),
    ]
}

fn nth(q: &FiniteQuantale, i: usize) -> Element {
    q.elements().nth(i % q.size()).unwrap()
}

fn rel(q: &FiniteQuantale, x: usize, y: usize, seed: &[usize]) -> QRelation<FiniteQuantale> {
    let (xs, ys) = (FiniteSet::range("X", x), FiniteSet::range("Y", y));
    QRelation::from_fn(q.clone(), xs, ys, |i, j| nth(q, seed[(i * y + j) % seed.len().max(1)]))
}

fn sized(q: &FiniteQuantale, from: usize, to: usize, seed: &[usize]) -> QRelation<FiniteQuantale> {
    let r = rel(q, from, to, seed);
    r.relabel(FiniteSet::range(&format!("S{from}"), from), FiniteSet::range(&format!("S{to}"), to))
        .unwrap()
}

/// Entrywise sup-product, written independently of the library.
fn naive_compose(q: &FiniteQuantale, psi: &QRelation<FiniteQuantale>, phi: &QRelation<FiniteQuantale>) -> Vec<Element> {
    let (nx, ny, nz) = (phi.source().len(), phi.target().len(), psi.target().len());
    let mut out = Vec::new();
    for x in 0..nx {
        for z in 0..nz {
            let mut acc = q.bottom();
            for y in 0..ny {
                acc = q.join(acc, q.mult(psi.get(y, z), phi.get(x, y)));
            }
            out.push(acc);
        }
    }
    out
}

fn brute_residuum(q: &FiniteQuantale, a: Element, b: Element) -> Element {
    q.join_all(q.elements().filter(|&r| q.leq(q.mult(a, r), b)))
}

fn seeds() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..64, 1..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn composition_matches_oracle(qi in 0usize..6, a in 0usize..4, b in 0usize..4, c in 0usize..4, s in seeds(), t in seeds()) {
        let q = &quantales()[qi];
        let phi = sized(q, a, b, &s);
        let psi = sized(q, b, c, &t);
        let composite = psi.compose(&phi).unwrap();
        prop_assert_eq!(composite.entries().to_vec(), naive_compose(q, &psi, &phi));
    }

    #[test]
    fn composition_is_associative(qi in 0usize..6, n in prop::array::uniform4(0usize..4), s in seeds(), t in seeds(), u in seeds()) {
        let q = &quantales()[qi];
        let phi = sized(q, n[0], n[1], &s);
        let psi = sized(q, n[1], n[2], &t);
        let chi = sized(q, n[2], n[3], &u);
        let left = chi.compose(&psi).unwrap().compose(&phi).unwrap();
        let right = chi.compose(&psi.compose(&phi).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn residuals_match_oracle_and_adjunction(qi in 0usize..6, n in prop::array::uniform3(0usize..4), s in seeds(), t in seeds(), u in seeds()) {
        let q = &quantales()[qi];
        let phi = sized(q, n[0], n[1], &s);
        let psi = sized(q, n[1], n[2], &t);
        let xi = sized(q, n[0], n[2], &u);

        let left = xi.left_residual(&phi).unwrap();
        for y in 0..n[1] {
            for z in 0..n[2] {
                let oracle = q.meet_all((0..n[0]).map(|x| brute_residuum(q, phi.get(x, y), xi.get(x, z))));
                prop_assert_eq!(left.get(y, z), oracle);
            }
        }
        let right = psi.right_residual(&xi).unwrap();
        for x in 0..n[0] {
            for y in 0..n[1] {
                let oracle = q.meet_all((0..n[2]).map(|z| brute_residuum(q, psi.get(y, z), xi.get(x, z))));
                prop_assert_eq!(right.get(x, y), oracle);
            }
        }
        let below = psi.compose(&phi).unwrap().leq(&xi).unwrap();
        prop_assert_eq!(below, psi.leq(&left).unwrap());
        prop_assert_eq!(below, phi.leq(&right).unwrap());
    }

    #[test]
    fn opposite_reverses_composition(qi in 0usize..6, n in prop::array::uniform3(0usize..4), s in seeds(), t in seeds()) {
        let q = &quantales()[qi];
        let phi = sized(q, n[0], n[1], &s);
        let psi = sized(q, n[1], n[2], &t);
        prop_assert_eq!(phi.opposite().opposite(), phi.clone());
        prop_assert_eq!(
            psi.compose(&phi).unwrap().opposite(),
            phi.opposite().compose(&psi.opposite()).unwrap()
        );
    }

    #[test]
    fn composition_preserves_joins(qi in 0usize..6, n in prop::array::uniform3(0usize..4), s in seeds(), s2 in seeds(), t in seeds()) {
        let q = &quantales()[qi];
        let phi = sized(q, n[0], n[1], &s);
        let phi2 = sized(q, n[0], n[1], &s2);
        let psi = sized(q, n[1], n[2], &t);
        prop_assert_eq!(
            psi.compose(&phi.join(&phi2).unwrap()).unwrap(),
            psi.compose(&phi).unwrap().join(&psi.compose(&phi2).unwrap()).unwrap()
        );
    }

    #[test]
    fn sampled_partitions_round_trip(qi in 0usize..6, seed in any::<u64>()) {
        let q = &quantales()[qi];
        // rejection sampling can be slow where valid partitions are rare
        if let Ok(parts) = partition::sample_partitions(q, 3, 3, seed, 200_000) {
            for p in &parts {
                prop_assert!(partition::roundtrip_check(p).unwrap());
            }
        }
    }
}

#[test]
fn maps_compose_with_reversed_adjoints() {
    for q in quantales() {
        let sets: Vec<FiniteSet> = (1..=2).map(|n| FiniteSet::range("S", n)).collect();
        for a in &sets {
            for b in &sets {
                let first = qmap::enumerate_qmaps(&q, a, b, 625).unwrap();
                for c in &sets {
                    let second = qmap::enumerate_qmaps(&q, b, c, 625).unwrap();
                    for zeta in &first {
                        for eta in &second {
                            let composite = eta.compose(zeta).unwrap();
                            let promoted = QMap::promote(composite.relation().clone()).unwrap();
                            assert_eq!(promoted.adjoint(), composite.adjoint(), "{}", q.name());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn adjoint_inequalities_hold_for_every_small_map() {
    for q in quantales() {
        for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let (x, y) = (FiniteSet::range("X", n), FiniteSet::range("Y", m));
            for zeta in qmap::enumerate_qmaps(&q, &x, &y, 4096).unwrap() {
                let unit = zeta.adjoint().compose(zeta.relation()).unwrap();
                let counit = zeta.relation().compose(zeta.adjoint()).unwrap();
                assert!(QRelation::identity(q.clone(), x.clone()).leq(&unit).unwrap());
                assert!(counit.leq(&QRelation::identity(q.clone(), y.clone())).unwrap());
            }
        }
    }
}

#[test]
fn graphs_are_maps_with_opposite_adjoints() {
    let q = zoo::m3();
    let (x, y) = (FiniteSet::range("X", 3), FiniteSet::range("Y", 2));
    for f in qmap::CrispMap::all(&x, &y) {
        let g = qmap::graph(q.clone(), &f);
        assert!(g.is_symmetric());
        assert_eq!(qmap::as_crisp_map(&g).unwrap(), f);
    }
}
