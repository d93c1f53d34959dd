//! Q-partitions and surjective Q-maps, in both directions.
//!
//! cargo run --example partitions

use quantaloid::partition::{self, QPartition};
use quantaloid::qmap::QMap;
use quantaloid::{zoo, FiniteSet, QRelation};

fn main() -> quantaloid::Result<()> {
    let q = zoo::f1();
    let x = FiniteSet::new("X", ["x", "y"])?;
    let eta = QMap::promote(QRelation::from_labels(q.clone(), x.clone(), x.clone(), &[&["p", "q"], &["q", "p"]])?)?;
    let sigma = partition::partition_from_surjection(&eta)?;
    println!("blocks of eta over F1 (rows are blocks)\n{}", sigma.to_relation().to_matrix_string());
    println!("round trip: {}\n", partition::roundtrip_check(&sigma)?);

    // a failing candidate reports the axiom it breaks
    let names = FiniteSet::new("B", ["S", "T"])?;
    match QPartition::from_labels(q.clone(), x, names, &[&["top", "p"], &["q", "top"]]) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}\n"),
    }

    let samples = partition::sample_partitions(&q, 3, 100, 0, 10_000_000)?;
    let ok = samples
        .iter()
        .filter(|p| partition::roundtrip_check(p).unwrap_or(false))
        .count();
    println!("{ok} of {} sampled partitions (seed 0) survive the round trip", samples.len());
    Ok(())
}
