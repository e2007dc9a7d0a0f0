//! Tally which property combinations occur among all relations on a small
//! universe, and round-trip the census through its text format.

use rellaws::enumerate::{property_census, vector_census, VectorCensus};
use rellaws::PropertyId;

pub fn run() -> rellaws::Result<()> {
    let n = 4;
    let all = vector_census(n, false)?;
    let normal = vector_census(n, true)?;
    println!(
        "n={n}: {} relations, {} property vectors occur ({} normal forms)",
        all.total(),
        all.counts.len(),
        normal.total()
    );
    // renaming elements never changes the vector, so the same vectors occur
    assert!(all.counts.keys().eq(normal.counts.keys()));

    let props = property_census(n, false)?;
    for p in PropertyId::MINED {
        println!("  {:12} {}", p.name(), props.get(p).unwrap());
    }

    let mut text = Vec::new();
    all.write_to(&mut text)?;
    let back = VectorCensus::read_from(&text[..])?;
    assert_eq!(back, all);
    println!(
        "{}",
        String::from_utf8_lossy(&text).lines().next().unwrap_or("")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> rellaws::Result<()> {
    run()
}
