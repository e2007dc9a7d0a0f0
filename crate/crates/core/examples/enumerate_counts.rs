//! Count relations by enumeration and by closed form, and show normal forms.

use rellaws::enumerate::{
    canonicalize, count_all, count_normal, enumerate_all, enumerate_normal, is_normal_form,
};
use rellaws::Relation;

pub fn run() -> rellaws::Result<()> {
    println!("{:>2} {:>12} {:>12}", "n", "all", "normal");
    for n in 1..=4 {
        let all = enumerate_all(n, |_| {})?;
        let normal = enumerate_normal(n, |_| {})?;
        assert_eq!(all as u128, count_all(n)?);
        assert_eq!(normal as u128, count_normal(n)?);
        println!("{n:>2} {all:>12} {normal:>12}");
    }
    for n in 5..=7 {
        println!("{n:>2} {:>12} {:>12}", count_all(n)?, count_normal(n)?);
    }

    // a successor chain, renamed so that row signatures ascend
    let chain = Relation::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 3)])?;
    let canon = canonicalize(&chain);
    println!("{chain}\nbecomes\n{canon}");
    assert!(is_normal_form(&canon));
    Ok(())
}

#[allow(dead_code)]
fn main() -> rellaws::Result<()> {
    run()
}
