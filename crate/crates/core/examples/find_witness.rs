//! Search for relations with a prescribed combination of properties.

use rellaws::witness::{find_witness, min_universe, LiteralConjunction, SearchMode};
use rellaws::PropertyId::*;

pub fn run() -> rellaws::Result<()> {
    // counterexample to "LfUnique ∧ RgUnique ∧ IncTrans → Empty"
    let q = LiteralConjunction::new([LfUnique, RgUnique, IncTrans], [Empty])?;
    let w = find_witness(4, &q, SearchMode::Exhaustive)?.expect("the 4-cycle qualifies");
    println!("LfUnique RgUnique IncTrans ~Empty on 4 elements:\n{w}");
    println!("smallest universe: {:?}", min_universe(&q, 5)?);

    // no such relation up to 5 elements, but one exists on 7
    let q = LiteralConjunction::new([ASym, Dense], [Empty])?;
    for n in 1..=5 {
        assert!(find_witness(n, &q, SearchMode::Exhaustive)?.is_none());
    }
    let mode = SearchMode::Heuristic {
        seed: 2,
        restarts: 10_000,
    };
    match find_witness(7, &q, mode)? {
        Some(w) => println!("ASym Dense ~Empty on 7 elements:\n{w}"),
        None => println!("ASym Dense ~Empty: heuristic gave up"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rellaws::Result<()> {
    run()
}
