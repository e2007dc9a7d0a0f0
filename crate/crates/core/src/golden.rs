//! Reference numbers for the standard 24-property setup, and comparison of
//! recomputed values against them.

use std::collections::BTreeSet;
use std::fmt;

use crate::enumerate::{count_all, count_normal, PropertyCensus, VectorCensus};
use crate::lawmine::{format_law, read_laws_text, Law, LevelStats};
use crate::property::{PropertyId, MINED_COUNT};

/// Relations on `n = 1..=7` elements: all of them, and normal forms only.
pub const RELATION_COUNTS: [(usize, u128, u128); 7] = [
    (1, 2, 2),
    (2, 16, 10),
    (3, 512, 140),
    (4, 65_536, 6_170),
    (5, 33_554_432, 907_452),
    (6, 68_719_476_736, 460_631_444),
    (7, 562_949_953_421_312, 827_507_617_792),
];

/// Relations on 5 elements having each property, in encoding order, over all
/// relations.
pub const N5_PROPERTY_COUNTS: [u64; MINED_COUNT] = [
    1, 1, 32, 3_163, 3_163, 7_776, 7_776, 32_768, 47_462, 59_049, 59_049, 154_303, 467_750,
    1_048_576, 1_048_576, 1_069_742, 1_889_568, 1_889_568, 3_756_619, 4_498_393, 5_531_648,
    15_339_497, 28_629_151, 28_629_151,
];

/// As [`N5_PROPERTY_COUNTS`], over normal forms only.
pub const N5_PROPERTY_COUNTS_PRUNED: [u64; MINED_COUNT] = [
    1, 1, 6, 166, 186, 440, 1_818, 1_012, 4_841, 3_870, 3_870, 3_207, 11_103, 70_436, 70_436,
    71_198, 50_480, 50_480, 113_142, 144_128, 131_994, 425_854, 764_962, 817_185,
];

/// Inhabited and uninhabited property vectors at `n = 5`.
pub const N5_OFF: u64 = 495;
pub const N5_ON: u64 = (1 << MINED_COUNT) - N5_OFF;

/// `(level, on, off, dontcare)` at the start of each mining level.
pub const LEVEL_STATS: [(usize, u64, u64, u64); 9] = [
    (1, 16_776_721, 495, 0),
    (2, 16_776_721, 495, 0),
    (3, 32_063, 495, 16_744_658),
    (4, 161, 495, 16_776_560),
    (5, 32, 495, 16_776_689),
    (6, 24, 495, 16_776_697),
    (7, 4, 495, 16_776_717),
    (8, 1, 495, 16_776_720),
    (9, 0, 495, 16_776_721),
];

/// Laws per level for levels 2 through 8; every other level has none.
pub const LAWS_PER_LEVEL: [(usize, usize); 7] =
    [(2, 94), (3, 122), (4, 35), (5, 7), (6, 12), (7, 3), (8, 1)];

pub const PUBLISHED_LAWS_TEXT: &str = include_str!("../data/published_laws.txt");

/// The 274 laws mined from the `n = 5` census, in report order.
pub fn published_laws() -> Vec<Law> {
    read_laws_text(PUBLISHED_LAWS_TEXT.as_bytes()).expect("embedded law list is well-formed")
}

/// One compared cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub table: &'static str,
    pub cell: String,
    pub expected: String,
    pub actual: String,
}

impl Check {
    fn new(
        table: &'static str,
        cell: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Check {
            table,
            cell: cell.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "MISMATCH" };
        write!(
            f,
            "{verdict:8} {} [{}] expected {} got {}",
            self.table, self.cell, self.expected, self.actual
        )
    }
}

pub const TABLE_COUNTS: &str = "relation counts";
pub const TABLE_CENSUS: &str = "n=5 property census";
pub const TABLE_CENSUS_PRUNED: &str = "n=5 property census (normal forms)";
pub const TABLE_SPLIT: &str = "n=5 on/off split";
pub const TABLE_LEVELS: &str = "mining level statistics";
pub const TABLE_LAW_COUNTS: &str = "laws per level";
pub const TABLE_LAWS: &str = "law list";

/// Closed-form counts for every tabulated `n`, plus enumerated counts where
/// supplied as `(n, all, normal)`.
pub fn check_relation_counts(enumerated: &[(usize, u64, u64)]) -> Vec<Check> {
    let mut out = Vec::new();
    for &(n, all, normal) in &RELATION_COUNTS {
        out.push(Check::new(
            TABLE_COUNTS,
            format!("n={n} all, closed form"),
            all,
            count_all(n).unwrap(),
        ));
        out.push(Check::new(
            TABLE_COUNTS,
            format!("n={n} normal, closed form"),
            normal,
            count_normal(n).unwrap(),
        ));
    }
    for &(n, all, normal) in enumerated {
        if let Some(&(_, want_all, want_normal)) = RELATION_COUNTS.iter().find(|row| row.0 == n) {
            out.push(Check::new(
                TABLE_COUNTS,
                format!("n={n} all, enumerated"),
                want_all,
                all,
            ));
            out.push(Check::new(
                TABLE_COUNTS,
                format!("n={n} normal, enumerated"),
                want_normal,
                normal,
            ));
        }
    }
    out
}

/// Compares a census at `n = 5` against the matching column.
pub fn check_property_census(census: &PropertyCensus) -> Vec<Check> {
    let (table, expected) = if census.pruned {
        (TABLE_CENSUS_PRUNED, &N5_PROPERTY_COUNTS_PRUNED)
    } else {
        (TABLE_CENSUS, &N5_PROPERTY_COUNTS)
    };
    if census.n != 5 {
        return vec![Check::new(table, "n", 5, census.n)];
    }
    PropertyId::MINED
        .iter()
        .map(|&p| {
            Check::new(
                table,
                p.name(),
                expected[p.bit().unwrap() as usize],
                census.get(p).unwrap(),
            )
        })
        .collect()
}

pub fn check_split(census: &VectorCensus) -> Vec<Check> {
    let off = census.counts.len() as u64;
    vec![
        Check::new(TABLE_SPLIT, "off", N5_OFF, off),
        Check::new(TABLE_SPLIT, "on", N5_ON, (1u64 << MINED_COUNT) - off),
    ]
}

pub fn check_level_stats(levels: &[LevelStats]) -> Vec<Check> {
    let mut out = Vec::new();
    for &(level, on, off, dontcare) in &LEVEL_STATS {
        let got = levels.iter().find(|s| s.level == level);
        let show =
            |f: fn(&LevelStats) -> u64| got.map_or("missing".to_string(), |s| f(s).to_string());
        out.push(Check::new(
            TABLE_LEVELS,
            format!("level {level} on"),
            on,
            show(|s| s.on),
        ));
        out.push(Check::new(
            TABLE_LEVELS,
            format!("level {level} off"),
            off,
            show(|s| s.off),
        ));
        out.push(Check::new(
            TABLE_LEVELS,
            format!("level {level} dontcare"),
            dontcare,
            show(|s| s.dontcare),
        ));
    }
    out
}

/// Per-level counts, then the law lists compared as sets per level and as a
/// sequence. Only differing laws produce rows beyond the summary ones.
pub fn check_laws(laws: &[Law]) -> Vec<Check> {
    let mut out = Vec::new();
    let max_level = laws.iter().map(Law::level).max().unwrap_or(0).max(9);
    for level in 1..=max_level {
        let want = LAWS_PER_LEVEL
            .iter()
            .find(|row| row.0 == level)
            .map_or(0, |row| row.1);
        let got = laws.iter().filter(|l| l.level() == level).count();
        out.push(Check::new(
            TABLE_LAW_COUNTS,
            format!("level {level}"),
            want,
            got,
        ));
    }
    out.push(Check::new(TABLE_LAW_COUNTS, "total", 274, laws.len()));

    let published = published_laws();
    let text = |l: &Law| l.implicant.to_string();
    let want: BTreeSet<(usize, String)> = published.iter().map(|l| (l.level(), text(l))).collect();
    let got: BTreeSet<(usize, String)> = laws.iter().map(|l| (l.level(), text(l))).collect();
    for (level, law) in want.difference(&got) {
        out.push(Check::new(
            TABLE_LAWS,
            format!("level {level}"),
            law,
            "absent",
        ));
    }
    for (level, law) in got.difference(&want) {
        out.push(Check::new(
            TABLE_LAWS,
            format!("level {level}"),
            "absent",
            law,
        ));
    }
    let differing = published
        .iter()
        .zip(laws)
        .filter(|(a, b)| format_law(a) != format_law(b))
        .count()
        + published.len().abs_diff(laws.len());
    out.push(Check::new(
        TABLE_LAWS,
        "positions differing from report order",
        0,
        differing,
    ));
    out
}
