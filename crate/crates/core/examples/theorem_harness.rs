//! Enumerate every Q-map at small sizes and compare symmetry and
//! graph-ness with weak leanness and leanness.
//!
//! cargo run --example theorem_harness -- [quantale] [max-set]

use quantaloid::qmap::{self, DEFAULT_BUDGET};
use quantaloid::{zoo, Quantale};

fn main() -> quantaloid::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "F1".into());
    let max_set: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let q = zoo::resolve(&name)?;

    let profiles = qmap::survey(&q, max_set, DEFAULT_BUDGET)?;
    println!("{} (|X|, |Y| <= {max_set})", q.name());
    for p in &profiles {
        println!(
            "  {}x{}: {:>4} relations, {:>3} maps, {:>3} symmetric, {:>3} graphs",
            p.profile[0], p.profile[1], p.total_relations, p.qmap_count, p.symmetric_count, p.graph_count
        );
    }
    for report in qmap::theorem_reports(&q, &profiles) {
        println!(
            "{}: predicate {}, observed {}, {:?}",
            report.theorem, report.predicate, report.all_hold, report.agreement
        );
        if let Some((n, m, w)) = &report.witness {
            println!("  witness at {n}x{m}: {w}");
        }
    }
    Ok(())
}
