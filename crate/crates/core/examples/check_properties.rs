//! Parse a relation from its text form and report which properties hold.

use rellaws::property::{classify_kinds, holds, property_vector};
use rellaws::{PropertyId, Relation};

const DIVIDES: &str = "\
1111
.1.1
..1.
...1
";

pub fn run() -> rellaws::Result<()> {
    // divisibility on {1, 2, 3, 4}
    let r: Relation = DIVIDES.parse()?;
    println!("{r}");
    println!("vector {:06x}", property_vector(&r));
    for p in PropertyId::ALL {
        let mark = if holds(&r, p) { "yes" } else { "no" };
        println!("  {:12} {mark}", p.name());
    }
    println!("kinds: {:?}", classify_kinds(&r));

    // properties come in converse pairs
    let c = r.converse();
    for p in [
        PropertyId::LfSerial,
        PropertyId::LfUnique,
        PropertyId::LfEucl,
    ] {
        assert_eq!(holds(&r, p), holds(&c, p.dual()));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rellaws::Result<()> {
    run()
}
