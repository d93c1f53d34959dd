//! Classify every built-in quantale and compare with its expected flags.
//!
//! cargo run --example classify_zoo

use quantaloid::quantale::{classification, weakly_lean_search, WeaklyLeanSearch};
use quantaloid::zoo;
use quantaloid::Quantale;

fn main() -> quantaloid::Result<()> {
    println!("{:<14} {:>4}  integral divisible lean  weakly-lean", "quantale", "size");
    for entry in zoo::catalog() {
        let q = &entry.quantale;
        let c = classification(q);
        let mark = if c == entry.expected { "" } else { "  <- unexpected" };
        println!(
            "{:<14} {:>4}  {:<8} {:<9} {:<5} {}{mark}",
            q.name(),
            q.size(),
            c.integral,
            c.divisible,
            c.lean,
            c.weakly_lean
        );
    }

    // the search also reports a family of pairs that breaks weak leanness
    let m3 = zoo::m3();
    if let WeaklyLeanSearch::Violated(family) = weakly_lean_search(&m3, 1_000_000)? {
        let pairs: Vec<String> = family
            .iter()
            .map(|&(p, q)| format!("({}, {})", m3.label(p), m3.label(q)))
            .collect();
        println!("\nM3 is not weakly lean: {}", pairs.join(" "));
    }
    Ok(())
}
