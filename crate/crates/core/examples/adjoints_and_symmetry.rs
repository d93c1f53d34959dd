//! Q-maps, their right adjoints and symmetry: the M3 map whose adjoint is
//! not its opposite, and the surjection over the powerset of {a, b, c}.
//!
//! cargo run --example adjoints_and_symmetry

use quantaloid::qmap::{self, QMap};
use quantaloid::{zoo, FiniteSet, QRelation};

fn main() -> quantaloid::Result<()> {
    let one = FiniteSet::singleton();
    let xy = FiniteSet::new("Y", ["x", "y"])?;
    let zeta = QMap::promote(QRelation::from_labels(zoo::m3(), one, xy, &[&["a", "bot"]])?)?;
    println!("zeta over M3\n{}", zeta.relation().to_matrix_string());
    println!("zeta*\n{}", zeta.adjoint().to_matrix_string());
    println!("symmetric: {}", zeta.is_symmetric());
    println!("symmetrization zeta ^ zeta*^op\n{}\n", zeta.symmetrize().to_matrix_string());

    let q = zoo::powerset(3)?;
    let y = FiniteSet::new("Y", ["x", "y", "z"])?;
    let z = FiniteSet::new("Z", ["l", "m"])?;
    let xi = QRelation::from_labels(
        q.clone(),
        y.clone(),
        z.clone(),
        &[&["{a}", "{b,c}"], &["{b}", "{a,c}"], &["{c}", "{a,b}"]],
    )?;
    let xi = QMap::promote(xi)?;
    println!("xi over P{{a,b,c}}\n{}", xi.relation().to_matrix_string());
    println!("symmetric: {}, surjective: {}", xi.is_symmetric(), xi.is_surjective());
    let back = xi.adjoint().compose(xi.relation())?;
    println!("xi^op . xi (above the identity, not equal)\n{}", back.to_matrix_string());
    assert!(QRelation::identity(q, y).leq(&back)?);

    match qmap::as_crisp_map(&xi) {
        Ok(f) => println!("graph of {:?}", f.assignment()),
        Err(e) => println!("not a graph: {e}"),
    }
    Ok(())
}
