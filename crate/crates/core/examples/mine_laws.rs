//! Mine implication laws from the property combinations that never occur.
//!
//! With a census file argument (see `rellaws census`) the laws of that
//! census are printed; otherwise a census of the 4-element universe is
//! computed on the spot.

use std::fs::File;
use std::io::BufReader;

use rellaws::enumerate::{vector_census, VectorCensus};
use rellaws::lawmine::mine_with_stats;

pub fn run(census: &VectorCensus, max_level: usize) -> rellaws::Result<()> {
    let report = mine_with_stats(census, max_level)?;
    for s in &report.levels {
        println!(
            "level {:2}: on {:8} off {:4} dontcare {:8}",
            s.level, s.on, s.off, s.dontcare
        );
    }
    for law in &report.laws {
        println!("{law}    {}", law.clause_text());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rellaws::Result<()> {
    let census = match std::env::args().nth(1) {
        Some(path) => VectorCensus::read_from(BufReader::new(File::open(path)?))?,
        None => vector_census(4, true)?,
    };
    run(&census, 3)
}
