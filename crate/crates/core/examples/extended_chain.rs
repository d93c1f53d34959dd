//! Maps over the extended integers ordered by >= with addition: the
//! inverse pair diag(-1, 1) and diag(1, -1) and the partition it induces.
//!
//! cargo run --example extended_chain

use quantaloid::partition;
use quantaloid::qmap::QMap;
use quantaloid::quantale::ChainQuantale;
use quantaloid::{FiniteSet, QRelation};

fn main() -> quantaloid::Result<()> {
    let q = ChainQuantale::Extended;
    let x = FiniteSet::new("X", ["x", "y"])?;
    let zeta = QRelation::from_labels(q, x.clone(), x.clone(), &[&["-1", "inf"], &["inf", "1"]])?;
    let eta = QRelation::from_labels(q, x.clone(), x.clone(), &[&["1", "inf"], &["inf", "-1"]])?;

    println!("eta . zeta\n{}", eta.compose(&zeta)?.to_matrix_string());
    println!("zeta . eta\n{}", zeta.compose(&eta)?.to_matrix_string());
    assert_eq!(eta.compose(&zeta)?, QRelation::identity(q, x.clone()));

    let zeta = QMap::promote(zeta)?;
    assert_eq!(zeta.adjoint(), &eta);
    println!("zeta* = eta, symmetric: {}", zeta.is_symmetric());

    let sigma = partition::partition_from_surjection(&zeta)?;
    println!("blocks of zeta\n{}", sigma.to_relation().to_matrix_string());
    Ok(())
}
