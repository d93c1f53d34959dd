//! Composition, opposites and both residuals of Q-relations, with the
//! Galois property checked on one example.
//!
//! cargo run --example relation_algebra

use quantaloid::{zoo, FiniteSet, QRelation};

fn main() -> quantaloid::Result<()> {
    let q = zoo::lukasiewicz(2)?;
    let x = FiniteSet::new("X", ["x1", "x2"])?;
    let y = FiniteSet::new("Y", ["y1", "y2", "y3"])?;
    let z = FiniteSet::new("Z", ["z1", "z2"])?;

    // one row of labels per source element
    let phi = QRelation::from_labels(q.clone(), x.clone(), y.clone(), &[&["1", "1/2", "0"], &["0", "1/2", "1"]])?;
    let psi = QRelation::from_labels(q.clone(), y, z, &[&["1", "0"], &["1/2", "1/2"], &["0", "1"]])?;

    let composite = psi.compose(&phi)?;
    println!("phi: X -/-> Y\n{}\n", phi.to_matrix_string());
    println!("psi: Y -/-> Z\n{}\n", psi.to_matrix_string());
    println!("psi . phi\n{}\n", composite.to_matrix_string());

    // the left residual xi / phi is the largest psi' with psi' . phi <= xi
    let left = composite.left_residual(&phi)?;
    println!("(psi . phi) / phi\n{}\n", left.to_matrix_string());
    assert!(left.compose(&phi)?.leq(&composite)?);
    assert!(psi.leq(&left)?);

    // the right residual psi \ xi is the largest phi' with psi . phi' <= xi
    let right = psi.right_residual(&composite)?;
    println!("psi \\ (psi . phi)\n{}\n", right.to_matrix_string());
    assert!(psi.compose(&right)?.leq(&composite)?);
    assert!(phi.leq(&right)?);

    let id = QRelation::identity(q, x);
    assert_eq!(phi.compose(&id)?, phi);
    println!("opposite of phi\n{}", phi.opposite().to_matrix_string());
    Ok(())
}
