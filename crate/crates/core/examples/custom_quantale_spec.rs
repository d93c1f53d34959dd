//! Define a quantale in the spec-file format, classify it and write it back.
//!
//! cargo run --example custom_quantale_spec

use quantaloid::quantale::classification;
use quantaloid::zoo;

const SPEC: &str = "\
# the three-element Goedel chain; products of unordered pairs suffice
quantale G3
elements bot mid top
unit top
leq bot mid
leq mid top
mult bot bot bot
mult bot mid bot
mult bot top bot
mult mid mid mid
mult mid top mid
mult top top top
";

fn main() -> quantaloid::Result<()> {
    let q = zoo::parse_spec(SPEC)?;
    println!("{:?}", classification(&q));
    let text = q.to_spec_string();
    println!("{text}");
    assert_eq!(zoo::parse_spec(&text)?, q);

    match zoo::parse_spec("quantale broken\nelements a b\nunit c\n") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("error: {e}"),
    }
    Ok(())
}
