//! Partial Q-maps as Kleisli morphisms of the maybe monad.
//!
//! cargo run --example kleisli_partial_maps

use quantaloid::kleisli::{self, PartialQMap};
use quantaloid::{zoo, FiniteSet, QRelation};

fn main() -> quantaloid::Result<()> {
    let q = zoo::c3();
    let x = FiniteSet::new("X", ["u", "v"])?;
    let y = FiniteSet::new("Y", ["p"])?;
    let z = FiniteSet::new("Z", ["r", "s"])?;

    // zeta: X -/-> Y+ sends u to p and leaves v undefined
    let zeta = PartialQMap::promote(QRelation::from_labels(q.clone(), x.clone(), y.plus(), &[&["k", "bot"], &["bot", "k"]])?)?;
    // eta: Y -/-> Z+ sends p to s
    let eta = PartialQMap::promote(QRelation::from_labels(q.clone(), y, z.plus(), &[&["bot", "k", "bot"]])?)?;

    let composite = kleisli::kleisli_compose(&eta, &zeta)?;
    println!("eta <> zeta: X -/-> Z+\n{}", composite.map().relation().to_matrix_string());
    assert_eq!(composite, kleisli::kleisli_compose_via_monad(&eta, &zeta)?);
    println!("total: {}", composite.is_total());

    let k = kleisli::comparison_k(&composite);
    println!("K(eta <> zeta): X+ -/-> Z+\n{}", k.relation().to_matrix_string());

    kleisli::verify_monad_laws(&q, &x)?;
    kleisli::verify_kleisli_units(&zeta)?;
    println!("monad and unit laws hold on X");
    Ok(())
}
