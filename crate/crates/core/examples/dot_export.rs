//! Render a relation as a Graphviz digraph.

use rellaws::witness::export_dot;
use rellaws::Relation;

pub fn run() -> rellaws::Result<()> {
    // x -> y iff y - x is a nonzero square mod 7
    let mut t = Relation::empty(7)?;
    for x in 0..7 {
        for y in 0..7 {
            t.set(x, y, [1, 2, 4].contains(&((y + 7 - x) % 7)));
        }
    }
    print!("{}", export_dot(&t, None)?);

    let labels: Vec<String> = ["rock", "paper", "scissors"].map(String::from).to_vec();
    let game = Relation::from_pairs(3, &[(0, 2), (1, 0), (2, 1)])?;
    print!("{}", export_dot(&game, Some(&labels))?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> rellaws::Result<()> {
    run()
}
