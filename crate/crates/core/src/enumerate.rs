//! Exhaustive enumeration of relations and property censuses.
//!
//! Two streams are offered. [`enumerate_all`] visits every `n×n` matrix.
//! [`enumerate_normal`] visits only matrices in row-signature normal form,
//! which still contains at least one member of every isomorphism class.
//! Since every catalog property is invariant under simultaneous row/column
//! permutation, the set of inhabited property vectors is the same for both.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::property::{property_vector, PropertyId, MINED_COUNT, VECTOR_MASK};
use crate::relation::{check_card, full_mask, Relation, MAX_CARD};

/// `⟨c, d⟩` for one matrix row: the number of related off-diagonal cells
/// and the diagonal cell. Ordered by `c` first, then `d` with false < true.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowSignature {
    pub off_diagonal: u8,
    pub diagonal: bool,
}

impl RowSignature {
    fn of_row(row: u8, i: usize) -> Self {
        RowSignature {
            off_diagonal: (row & !(1 << i)).count_ones() as u8,
            diagonal: row >> i & 1 == 1,
        }
    }

    /// Dense group number `2c + d`, monotone in the signature order.
    fn group(self) -> usize {
        2 * self.off_diagonal as usize + usize::from(self.diagonal)
    }
}

pub fn row_signature(r: &Relation, i: usize) -> Result<RowSignature> {
    if i >= r.card() {
        return Err(Error::IndexOutOfRange {
            index: i,
            n: r.card(),
        });
    }
    Ok(RowSignature::of_row(r.row(i), i))
}

fn signatures(r: &Relation) -> impl Iterator<Item = RowSignature> + '_ {
    r.rows()
        .iter()
        .enumerate()
        .map(|(i, &row)| RowSignature::of_row(row, i))
}

/// Whether the row signatures are nondecreasing.
pub fn is_normal_form(r: &Relation) -> bool {
    let mut prev = None;
    for sig in signatures(r) {
        if prev.is_some_and(|p| p > sig) {
            return false;
        }
        prev = Some(sig);
    }
    true
}

/// Stable-sorts the elements by row signature and applies that permutation
/// to rows and columns. The result is in normal form and isomorphic to `r`,
/// but isomorphic inputs need not map to the same output.
pub fn canonicalize(r: &Relation) -> Relation {
    let sigs: Vec<RowSignature> = signatures(r).collect();
    let mut perm: Vec<usize> = (0..r.card()).collect();
    perm.sort_by_key(|&i| sigs[i]);
    r.permute(&perm).expect("sorted indices form a permutation")
}

/// `2^(n²)`.
pub fn count_all(n: usize) -> Result<u128> {
    check_card(n)?;
    Ok(1u128 << (n * n))
}

/// Number of normal-form matrices, computed without enumeration: a
/// nondecreasing group sequence times the row choices in each group.
pub fn count_normal(n: usize) -> Result<u128> {
    check_card(n)?;
    let groups = 2 * n;
    let choose = binomials(n - 1);
    let mut ways = vec![0u128; groups];
    ways[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; groups];
        let mut prefix = 0u128;
        for (g, slot) in next.iter_mut().enumerate() {
            prefix += ways[g];
            *slot = prefix * choose[g / 2];
        }
        ways = next;
    }
    Ok(ways.iter().sum())
}

fn binomials(m: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    for _ in 0..m {
        let mut next = vec![1u128; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row
}

/// Visits every `n×n` matrix once, in ascending order of the row-major
/// bit string with cell `(0,0)` most significant. Returns `2^(n²)`.
pub fn enumerate_all(n: usize, mut visit: impl FnMut(&Relation)) -> Result<u64> {
    check_card(n)?;
    if n * n >= 64 {
        return Err(Error::Cardinality(n));
    }
    let decoder = IndexDecoder::new(n);
    let total = 1u64 << (n * n);
    for index in 0..total {
        visit(&decoder.decode(index));
    }
    Ok(total)
}

/// Maps enumeration indices to relations one row-chunk at a time.
struct IndexDecoder {
    n: usize,
    reversed: [u8; 256],
}

impl IndexDecoder {
    fn new(n: usize) -> Self {
        let mut reversed = [0u8; 256];
        for (chunk, out) in reversed.iter_mut().enumerate().take(1 << n) {
            // column 0 is the most significant bit of the chunk
            *out = (0..n)
                .filter(|y| chunk >> (n - 1 - y) & 1 == 1)
                .fold(0, |acc, y| acc | 1 << y);
        }
        IndexDecoder { n, reversed }
    }

    #[inline]
    fn decode(&self, index: u64) -> Relation {
        let n = self.n;
        let mut rows = [0u8; MAX_CARD];
        let chunk_mask = (1u64 << n) - 1;
        for (x, row) in rows.iter_mut().enumerate().take(n) {
            let shift = n * (n - 1 - x);
            *row = self.reversed[(index >> shift & chunk_mask) as usize];
        }
        Relation::from_rows(&rows[..n]).expect("decoded rows fit the universe")
    }
}

/// Per position and group, the admissible rows in ascending byte order.
struct NormalTables {
    n: usize,
    rows: Vec<Vec<Vec<u8>>>,
}

impl NormalTables {
    fn new(n: usize) -> Self {
        let rows = (0..n)
            .map(|pos| {
                let mut groups = vec![Vec::new(); 2 * n];
                for row in 0..=full_mask(n) {
                    groups[RowSignature::of_row(row, pos).group()].push(row);
                }
                groups
            })
            .collect();
        NormalTables { n, rows }
    }

    fn groups(&self) -> usize {
        2 * self.n
    }
}

/// A partially fixed normal-form matrix: the first `depth` rows and the
/// group of the last fixed row.
#[derive(Clone, Copy, Debug)]
struct NormalPrefix {
    rows: [u8; MAX_CARD],
    depth: usize,
    min_group: usize,
}

impl NormalPrefix {
    fn root() -> Self {
        NormalPrefix {
            rows: [0; MAX_CARD],
            depth: 0,
            min_group: 0,
        }
    }
}

fn walk_normal<T>(
    tables: &NormalTables,
    prefix: NormalPrefix,
    visit: &mut impl FnMut(&Relation) -> ControlFlow<T>,
) -> ControlFlow<T> {
    let n = tables.n;
    if prefix.depth == n {
        let r = Relation::from_rows(&prefix.rows[..n]).expect("table rows fit the universe");
        return visit(&r);
    }
    let pos = prefix.depth;
    for g in prefix.min_group..tables.groups() {
        for &row in &tables.rows[pos][g] {
            let mut next = prefix;
            next.rows[pos] = row;
            next.depth = pos + 1;
            next.min_group = g;
            walk_normal(tables, next, visit)?;
        }
    }
    ControlFlow::Continue(())
}

/// All prefixes of the given depth, in enumeration order.
fn normal_prefixes(tables: &NormalTables, depth: usize) -> Vec<NormalPrefix> {
    let mut level = vec![NormalPrefix::root()];
    for pos in 0..depth.min(tables.n) {
        level = level
            .into_iter()
            .flat_map(|p| {
                (p.min_group..tables.groups()).flat_map(move |g| {
                    tables.rows[pos][g].iter().map(move |&row| {
                        let mut next = p;
                        next.rows[pos] = row;
                        next.depth = pos + 1;
                        next.min_group = g;
                        next
                    })
                })
            })
            .collect();
    }
    level
}

/// Visits every normal-form matrix once. Rows are generated group by group:
/// position `i` draws a row from a signature group no smaller than the
/// group of position `i-1`. Order is lexicographic in
/// `(group_0, row_0, group_1, row_1, ..)`. Returns the number visited.
pub fn enumerate_normal(n: usize, mut visit: impl FnMut(&Relation)) -> Result<u64> {
    check_card(n)?;
    let tables = NormalTables::new(n);
    let mut count = 0u64;
    let _ = walk_normal::<()>(&tables, NormalPrefix::root(), &mut |r| {
        count += 1;
        visit(r);
        ControlFlow::Continue(())
    });
    Ok(count)
}

/// The first normal-form relation (in [`enumerate_normal`] order) accepted
/// by `pred`. Partitions are searched in parallel; the order-least match wins.
pub fn find_first_normal(
    n: usize,
    pred: impl Fn(&Relation) -> bool + Sync,
) -> Result<Option<Relation>> {
    check_card(n)?;
    let tables = NormalTables::new(n);
    let prefixes = normal_prefixes(&tables, partition_depth(n));
    Ok(prefixes.par_iter().find_map_first(|&p| {
        match walk_normal(&tables, p, &mut |r| {
            if pred(r) {
                ControlFlow::Break(*r)
            } else {
                ControlFlow::Continue(())
            }
        }) {
            ControlFlow::Break(r) => Some(r),
            ControlFlow::Continue(()) => None,
        }
    }))
}

fn partition_depth(n: usize) -> usize {
    match n {
        0..=3 => 1,
        _ => 2,
    }
}

/// Occurrence count of each inhabited property vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorCensus {
    pub n: usize,
    pub pruned: bool,
    pub counts: BTreeMap<u32, u64>,
}

/// Header prefix of the census text format.
pub const CENSUS_MAGIC: &str = "relcensus v1";

impl VectorCensus {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Vectors with a positive count, ascending.
    pub fn inhabited(&self) -> Vec<u32> {
        self.counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn property_counts(&self) -> PropertyCensus {
        let mut counts = [0u64; MINED_COUNT];
        for (&v, &c) in &self.counts {
            for (b, slot) in counts.iter_mut().enumerate() {
                if v >> b & 1 == 1 {
                    *slot += c;
                }
            }
        }
        PropertyCensus {
            n: self.n,
            pruned: self.pruned,
            counts,
        }
    }

    /// Writes the header line, then `<vector>,<count>` per inhabited
    /// vector in ascending order, vectors as six lowercase hex digits.
    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        writeln!(
            w,
            "{CENSUS_MAGIC} n={} pruned={} props={MINED_COUNT}",
            self.n,
            u8::from(self.pruned)
        )?;
        for (&v, &c) in self.counts.iter().filter(|(_, &c)| c > 0) {
            writeln!(w, "{v:06x},{c}")?;
        }
        Ok(())
    }

    pub fn read_from(r: impl BufRead) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Census("missing header".into()))??;
        let (n, pruned) = parse_header(&header)?;
        let mut counts = BTreeMap::new();
        let mut prev: Option<u32> = None;
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Census(format!("line {}: {what}", lineno + 2));
            let (vec, count) = line
                .split_once(',')
                .ok_or_else(|| bad("expected `<vector>,<count>`"))?;
            if vec.len() != 6 {
                return Err(bad("vector must have six hex digits"));
            }
            let v = u32::from_str_radix(vec, 16).map_err(|_| bad("bad hex vector"))?;
            if v & !VECTOR_MASK != 0 {
                return Err(Error::VectorWidth(v));
            }
            let c: u64 = count.parse().map_err(|_| bad("bad count"))?;
            if c == 0 {
                return Err(bad("only inhabited vectors are listed"));
            }
            if prev.is_some_and(|p| p >= v) {
                return Err(bad("vectors not strictly ascending"));
            }
            prev = Some(v);
            counts.insert(v, c);
        }
        Ok(VectorCensus { n, pruned, counts })
    }
}

fn parse_header(header: &str) -> Result<(usize, bool)> {
    let bad = || Error::Census(format!("bad header `{header}`"));
    let rest = header.strip_prefix(CENSUS_MAGIC).ok_or_else(bad)?;
    let fields: Vec<&str> = rest.split_whitespace().collect();
    let [n, pruned, props] = fields.as_slice() else {
        return Err(bad());
    };
    let n: usize = n
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(bad)?;
    let pruned = match pruned.strip_prefix("pruned=") {
        Some("0") => false,
        Some("1") => true,
        _ => return Err(bad()),
    };
    if *props != format!("props={MINED_COUNT}") {
        return Err(bad());
    }
    check_card(n)?;
    Ok((n, pruned))
}

/// Number of visited relations satisfying each mined property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCensus {
    pub n: usize,
    pub pruned: bool,
    pub counts: [u64; MINED_COUNT],
}

impl PropertyCensus {
    pub fn get(&self, p: PropertyId) -> Option<u64> {
        p.bit().map(|b| self.counts[b as usize])
    }
}

type Tally = HashMap<u32, u64>;

fn merge(mut a: Tally, b: Tally) -> Tally {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (v, c) in b {
        *a.entry(v).or_default() += c;
    }
    a
}

fn finish(n: usize, pruned: bool, tally: Tally) -> VectorCensus {
    VectorCensus {
        n,
        pruned,
        counts: tally.into_iter().collect(),
    }
}

/// Counts property vectors over all relations (or the normal forms only).
/// The space is split into partitions by fixing leading rows; partial
/// tallies are merged by pointwise addition.
pub fn vector_census(n: usize, pruned: bool) -> Result<VectorCensus> {
    check_card(n)?;
    let tally = if pruned {
        let tables = NormalTables::new(n);
        normal_prefixes(&tables, partition_depth(n))
            .into_par_iter()
            .map(|p| {
                let mut tally = Tally::new();
                let _ = walk_normal::<()>(&tables, p, &mut |r| {
                    *tally.entry(property_vector(r).bits()).or_default() += 1;
                    ControlFlow::Continue(())
                });
                tally
            })
            .reduce(Tally::new, merge)
    } else {
        if n * n >= 64 {
            return Err(Error::Cardinality(n));
        }
        let cells = n * n;
        let split_bits = cells.min(2 * n);
        let chunk_bits = cells - split_bits;
        let decoder = IndexDecoder::new(n);
        (0..1u64 << split_bits)
            .into_par_iter()
            .map(|hi| {
                let mut tally = Tally::new();
                let base = hi << chunk_bits;
                for lo in 0..1u64 << chunk_bits {
                    let r = decoder.decode(base | lo);
                    *tally.entry(property_vector(&r).bits()).or_default() += 1;
                }
                tally
            })
            .reduce(Tally::new, merge)
    };
    Ok(finish(n, pruned, tally))
}

pub fn property_census(n: usize, pruned: bool) -> Result<PropertyCensus> {
    Ok(vector_census(n, pruned)?.property_counts())
}
