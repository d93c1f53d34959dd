//! Every algebra of the maybe monad is free: build the isomorphism for each
//! point {*} -/-> X.
//!
//! cargo run --example free_algebra_iso -- [quantale] [max-set]

use quantaloid::kleisli;
use quantaloid::{zoo, FiniteSet, Quantale};

fn main() -> quantaloid::Result<()> {
    let mut args = std::env::args().skip(1);
    let q = zoo::resolve(&args.next().unwrap_or_else(|| "F1".into()))?;
    let max_set: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);

    for n in 1..=max_set {
        let x = FiniteSet::range("X", n);
        let algebras = kleisli::enumerate_algebras(&q, &x, 4096)?;
        for a in &algebras {
            kleisli::free_algebra_iso(a)?;
        }
        println!("{} |X| = {n}: {} algebras, all free", q.name(), algebras.len());
    }

    let x = FiniteSet::range("X", 2);
    let a = &kleisli::enumerate_algebras(&q, &x, 4096)?[0];
    let iso = kleisli::free_algebra_iso(a)?;
    println!("\npoint\n{}", a.point().relation().to_matrix_string());
    println!("zeta: X -/-> {}\n{}", iso.base.plus(), iso.zeta.relation().to_matrix_string());
    println!("eta\n{}", iso.eta.relation().to_matrix_string());
    Ok(())
}
