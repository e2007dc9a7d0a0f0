//! Find laws that follow from other laws by propositional reasoning alone.

use rellaws::golden::published_laws;
use rellaws::redundancy::{entails, star_redundant, ClauseSet};

pub fn run() -> rellaws::Result<()> {
    let laws = published_laws();
    let by_seq = |s: usize| laws[s - 1];

    let target = by_seq(44);
    let premises = [by_seq(39), by_seq(46)];
    println!("{} follows from", target.clause_text());
    for p in &premises {
        println!("  {}", p.clause_text());
    }
    assert!(entails(&premises, &target));

    let set = ClauseSet::new(laws.clone())?;
    let flags = star_redundant(&set);
    let flagged: Vec<String> = set
        .laws()
        .iter()
        .zip(&flags)
        .filter(|(_, &f)| f)
        .map(|(l, _)| format!("{:03}", l.seq))
        .collect();
    println!(
        "{} of {} laws follow from the others:",
        flagged.len(),
        set.len()
    );
    for chunk in flagged.chunks(16) {
        println!("  {}", chunk.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rellaws::Result<()> {
    run()
}
