//! Prime implicants of the non-occurring property vectors.
//!
//! A property vector is *off* when some relation has it and *on* when none
//! does. The miner walks cubes level by level (number of literals), masks in
//! ascending numeric order, polarities in ascending numeric order. A cube
//! that covers no off vector and at least one on vector not yet covered by an
//! earlier report is reported, and its whole rectangle becomes don't-care.
//! Each report becomes a law: the clause denying the cube's conjunction.

use std::fmt;
use std::io::{BufRead, Read, Write};
use std::str::FromStr;

use crate::enumerate::VectorCensus;
use crate::error::{Error, Result};
use crate::property::{PropertyId, MINED_COUNT, VECTOR_MASK};

/// Default deepest level; nothing is found beyond level 8 at `n = 5`.
pub const DEFAULT_MAX_LEVEL: usize = 8;

/// Below this many on vectors the miner derives candidates from the
/// remaining on vectors instead of scanning every polarity of a mask.
const LIST_MODE_LIMIT: u64 = 1 << 16;

/// A cube over the property bits: bit `i` of `mask` makes property `i` a
/// literal, bit `i` of `value` gives its polarity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Implicant {
    mask: u32,
    value: u32,
}

impl Implicant {
    pub fn new(mask: u32, value: u32) -> Result<Self> {
        if mask == 0 || mask & !VECTOR_MASK != 0 || value & !mask != 0 {
            return Err(Error::LawText(format!(
                "invalid cube mask={mask:#x} value={value:#x}"
            )));
        }
        Ok(Implicant { mask, value })
    }

    pub fn from_literals(literals: &[(PropertyId, bool)]) -> Result<Self> {
        let (mut mask, mut value) = (0u32, 0u32);
        for &(p, positive) in literals {
            let bit = p
                .bit()
                .ok_or_else(|| Error::LawText(format!("{p} is not a mined property")))?;
            if mask >> bit & 1 == 1 {
                return Err(Error::LawText(format!("{p} appears twice")));
            }
            mask |= 1 << bit;
            if positive {
                value |= 1 << bit;
            }
        }
        Implicant::new(mask, value)
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.mask
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn level(self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn covers(self, v: u32) -> bool {
        v & self.mask == self.value
    }

    /// Literals in ascending bit order; `true` marks a positive literal.
    pub fn literals(self) -> impl Iterator<Item = (PropertyId, bool)> {
        PropertyId::MINED
            .into_iter()
            .filter(move |p| self.mask & p.encoding() != 0)
            .map(move |p| (p, self.value & p.encoding() != 0))
    }

    /// The cubes obtained by dropping one literal.
    pub fn parents(self) -> impl Iterator<Item = Implicant> {
        let (mask, value) = (self.mask, self.value);
        (0..MINED_COUNT as u32)
            .filter(move |b| mask >> b & 1 == 1 && mask.count_ones() > 1)
            .map(move |b| Implicant {
                mask: mask & !(1 << b),
                value: value & !(1 << b),
            })
    }
}

/// Space-separated literals in ascending encoding order, negative ones
/// prefixed with `~`.
impl fmt::Display for Implicant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, positive) in self.literals() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if !positive {
                f.write_str("~")?;
            }
            f.write_str(p.name())?;
        }
        Ok(())
    }
}

impl FromStr for Implicant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let literals = s
            .split_whitespace()
            .map(|tok| {
                let (positive, name) = match tok.strip_prefix('~') {
                    Some(rest) => (false, rest),
                    None => (true, tok),
                };
                Ok((name.parse::<PropertyId>()?, positive))
            })
            .collect::<Result<Vec<_>>>()?;
        if literals.is_empty() {
            return Err(Error::LawText("no literals".into()));
        }
        Implicant::from_literals(&literals)
    }
}

/// A law suggestion: the clause that rules out an implicant's conjunction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Law {
    pub seq: usize,
    pub implicant: Implicant,
}

impl Law {
    pub fn level(&self) -> usize {
        self.implicant.level()
    }

    /// Clause literals; a literal is negated iff the implicant has the
    /// property positively.
    pub fn clause_literals(&self) -> impl Iterator<Item = (PropertyId, bool)> {
        self.implicant
            .literals()
            .map(|(p, positive)| (p, !positive))
    }

    /// `(positive, negative)` literal masks of the clause: an assignment
    /// `a` satisfies it iff `a & positive != 0 || !a & negative != 0`.
    pub fn clause_masks(&self) -> (u32, u32) {
        let imp = self.implicant;
        (imp.mask & !imp.value, imp.value)
    }

    pub fn satisfied_by(&self, assignment: u32) -> bool {
        !self.implicant.covers(assignment)
    }

    /// The clause written as a disjunction, e.g. `¬ASym ∨ Irrefl`.
    pub fn clause_text(&self) -> String {
        self.clause_literals()
            .map(|(p, positive)| {
                if positive {
                    p.name().to_string()
                } else {
                    format!("¬{p}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ∨ ")
    }
}

pub fn format_law(law: &Law) -> String {
    law.implicant.to_string()
}

/// `NNN: <literals>`.
impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:03}: {}", self.seq, self.implicant)
    }
}

impl FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (seq, text) = s
            .split_once(':')
            .ok_or_else(|| Error::LawText(format!("expected `<seq>: <literals>`, got `{s}`")))?;
        let seq = seq
            .trim()
            .parse()
            .map_err(|_| Error::LawText(format!("bad sequence number in `{s}`")))?;
        Ok(Law {
            seq,
            implicant: text.parse()?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RectangleStatus {
    HitsOff,
    AllDontCare,
    Prime,
}

/// Fixed-size bit set over `2^width` vectors.
#[derive(Clone, Debug)]
struct VectorSet {
    words: Vec<u64>,
}

impl VectorSet {
    fn new(width: u32) -> Self {
        VectorSet {
            words: vec![0; ((1usize << width) / 64).max(1)],
        }
    }

    #[inline]
    fn get(&self, v: u32) -> bool {
        self.words[(v >> 6) as usize] >> (v & 63) & 1 == 1
    }

    #[inline]
    fn insert(&mut self, v: u32) {
        self.words[(v >> 6) as usize] |= 1 << (v & 63);
    }
}

/// Where a cube's vectors sit in a [`VectorSet`]: the in-word bit pattern
/// and the word indices (`fixed | s` for every subset `s` of `free`).
#[derive(Clone, Copy)]
struct Rectangle {
    pattern: u64,
    fixed: u32,
    free: u32,
}

impl Rectangle {
    fn new(width: u32, imp: Implicant) -> Self {
        let low_bits = width.min(6);
        let low = (1u32 << low_bits) - 1;
        let (mask_lo, value_lo) = (imp.mask & low, imp.value & low);
        let pattern = (0..1u32 << low_bits)
            .filter(|b| b & mask_lo == value_lo)
            .fold(0u64, |acc, b| acc | 1 << b);
        let high_bits = width - low_bits;
        Rectangle {
            pattern,
            fixed: imp.value >> 6,
            free: ((1u32 << high_bits) - 1) & !(imp.mask >> 6),
        }
    }

    fn words(self) -> impl Iterator<Item = usize> {
        subsets(self.free).map(move |s| (self.fixed | s) as usize)
    }
}

/// Subsets of `set` in ascending numeric order.
fn subsets(set: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = (cur != set).then(|| cur.wrapping_sub(set) & set);
        Some(cur)
    })
}

/// Masks with `level` bits set below `width`, ascending.
fn masks_of_level(width: u32, level: u32) -> impl Iterator<Item = u32> {
    let limit = 1u64 << width;
    let mut next = (level <= width && level > 0).then(|| (1u64 << level) - 1);
    std::iter::from_fn(move || {
        let cur = next?;
        // Gosper's hack
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        let succ = (((r ^ cur) >> 2) / c) | r;
        next = (succ < limit).then_some(succ);
        Some(cur as u32)
    })
}

/// On/off/don't-care bookkeeping for one mining run. The off set never
/// changes; don't-care only grows.
#[derive(Clone, Debug)]
pub struct MiningState {
    width: u32,
    off: Vec<u32>,
    dontcare: VectorSet,
    dontcare_count: u64,
}

impl MiningState {
    /// State over `width` variables with the given occupied vectors.
    pub fn new(width: u32, off: impl IntoIterator<Item = u32>) -> Result<Self> {
        if width == 0 || width as usize > MINED_COUNT {
            return Err(Error::Level(width as usize));
        }
        let limit = 1u64 << width;
        let mut off: Vec<u32> = off.into_iter().collect();
        if let Some(&v) = off.iter().find(|&&v| u64::from(v) >= limit) {
            return Err(Error::VectorWidth(v));
        }
        off.sort_unstable();
        off.dedup();
        Ok(MiningState {
            width,
            off,
            dontcare: VectorSet::new(width),
            dontcare_count: 0,
        })
    }

    /// Initial state for a census: off = the inhabited vectors.
    pub fn from_census(census: &VectorCensus) -> Result<Self> {
        Self::new(MINED_COUNT as u32, census.inhabited())
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn off(&self) -> &[u32] {
        &self.off
    }

    pub fn off_count(&self) -> u64 {
        self.off.len() as u64
    }

    pub fn dontcare_count(&self) -> u64 {
        self.dontcare_count
    }

    pub fn on_count(&self) -> u64 {
        (1u64 << self.width) - self.off_count() - self.dontcare_count
    }

    pub fn is_dontcare(&self, v: u32) -> bool {
        self.dontcare.get(v)
    }

    pub fn is_off(&self, v: u32) -> bool {
        self.off.binary_search(&v).is_ok()
    }

    fn check(&self, imp: Implicant) {
        assert!(
            u64::from(imp.mask) < 1u64 << self.width,
            "cube {imp} exceeds mining width {}",
            self.width
        );
    }

    pub fn hits_off(&self, imp: Implicant) -> bool {
        self.off.iter().any(|&o| imp.covers(o))
    }

    /// Whether some covered vector is neither off nor don't-care.
    fn has_on(&self, imp: Implicant) -> bool {
        let rect = Rectangle::new(self.width, imp);
        rect.words().any(|w| {
            let mut open = !self.dontcare.words[w] & rect.pattern;
            while open != 0 {
                let v = (w as u32) << 6 | open.trailing_zeros();
                if !self.is_off(v) {
                    return true;
                }
                open &= open - 1;
            }
            false
        })
    }

    pub fn rectangle_status(&self, imp: Implicant) -> RectangleStatus {
        self.check(imp);
        if self.hits_off(imp) {
            RectangleStatus::HitsOff
        } else if self.has_on(imp) {
            RectangleStatus::Prime
        } else {
            RectangleStatus::AllDontCare
        }
    }

    /// Marks the cube's rectangle don't-care, skipping off vectors.
    /// Returns how many vectors changed state.
    pub fn mark_dontcare(&mut self, imp: Implicant) -> u64 {
        self.check(imp);
        let rect = Rectangle::new(self.width, imp);
        let mut added = 0u64;
        let words: Vec<usize> = rect.words().collect();
        for w in words {
            let mut fresh = !self.dontcare.words[w] & rect.pattern;
            while fresh != 0 {
                let v = (w as u32) << 6 | fresh.trailing_zeros();
                if !self.is_off(v) {
                    self.dontcare.insert(v);
                    added += 1;
                }
                fresh &= fresh - 1;
            }
        }
        self.dontcare_count += added;
        added
    }

    fn remaining_on(&self) -> Vec<u32> {
        (0..1u32 << self.width)
            .filter(|&v| !self.dontcare.get(v) && !self.is_off(v))
            .collect()
    }
}

/// Vector state counts at the start of a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub level: usize,
    pub on: u64,
    pub off: u64,
    pub dontcare: u64,
}

#[derive(Clone, Debug)]
pub struct MiningReport {
    pub laws: Vec<Law>,
    pub levels: Vec<LevelStats>,
}

impl MiningReport {
    pub fn laws_at_level(&self, level: usize) -> usize {
        self.laws.iter().filter(|l| l.level() == level).count()
    }
}

/// Mines laws from a census up to `max_level` literals.
pub fn mine(census: &VectorCensus, max_level: usize) -> Result<Vec<Law>> {
    Ok(mine_with_stats(census, max_level)?.laws)
}

pub fn mine_with_stats(census: &VectorCensus, max_level: usize) -> Result<MiningReport> {
    if let Some(&v) = census.counts.keys().find(|&&v| v & !VECTOR_MASK != 0) {
        return Err(Error::VectorWidth(v));
    }
    let mut state = MiningState::from_census(census)?;
    mine_state(&mut state, max_level)
}

/// Runs the level-wise search on an arbitrary state. Reports are committed
/// in `(level, mask, value)` order.
pub fn mine_state(state: &mut MiningState, max_level: usize) -> Result<MiningReport> {
    let width = state.width;
    if max_level == 0 || max_level > width as usize {
        return Err(Error::Level(max_level));
    }
    let mut laws = Vec::new();
    let mut levels = Vec::new();
    let mut report = |state: &mut MiningState, imp: Implicant| {
        laws.push(Law {
            seq: laws.len() + 1,
            implicant: imp,
        });
        state.mark_dontcare(imp);
    };
    for level in 1..=max_level {
        levels.push(LevelStats {
            level,
            on: state.on_count(),
            off: state.off_count(),
            dontcare: state.dontcare_count,
        });
        if state.on_count() == 0 {
            continue;
        }
        if state.on_count() <= LIST_MODE_LIMIT {
            // Only cubes containing a remaining on vector can be reported.
            let mut remaining = state.remaining_on();
            let mut candidates = Vec::new();
            let mut blocked = Vec::new();
            for mask in masks_of_level(width, level as u32) {
                if remaining.is_empty() {
                    break;
                }
                candidates.clear();
                candidates.extend(remaining.iter().map(|&u| u & mask));
                candidates.sort_unstable();
                candidates.dedup();
                blocked.clear();
                blocked.resize(candidates.len(), false);
                for &o in &state.off {
                    if let Ok(i) = candidates.binary_search(&(o & mask)) {
                        blocked[i] = true;
                    }
                }
                let mut any = false;
                // rectangles of one mask are disjoint, so earlier reports
                // here cannot consume later candidates
                for (&value, &hit) in candidates.iter().zip(&blocked) {
                    if !hit {
                        report(state, Implicant { mask, value });
                        any = true;
                    }
                }
                if any {
                    remaining.retain(|&u| !state.dontcare.get(u));
                }
            }
        } else {
            let mut hits = Vec::new();
            for mask in masks_of_level(width, level as u32) {
                hits.clear();
                hits.extend(state.off.iter().map(|&o| o & mask));
                hits.sort_unstable();
                hits.dedup();
                if hits.len() == 1 << level {
                    continue;
                }
                for value in subsets(mask) {
                    if hits.binary_search(&value).is_ok() {
                        continue;
                    }
                    let imp = Implicant { mask, value };
                    if state.has_on(imp) {
                        report(state, imp);
                    }
                }
            }
        }
    }
    Ok(MiningReport { laws, levels })
}

/// One law per line, `NNN: <literals>`.
pub fn write_laws_text(laws: &[Law], mut w: impl Write) -> Result<()> {
    for law in laws {
        writeln!(w, "{law}")?;
    }
    Ok(())
}

pub fn read_laws_text(r: impl BufRead) -> Result<Vec<Law>> {
    let mut laws = Vec::new();
    for line in r.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        laws.push(line.parse()?);
    }
    Ok(laws)
}

pub const CSV_HEADER: [&str; 5] = ["seq", "level", "mask_hex", "value_hex", "law_text"];

/// CSV with columns `seq,level,mask_hex,value_hex,law_text`, plus a
/// trailing `redundant` column (0/1) when flags are given.
pub fn write_laws_csv(laws: &[Law], redundant: Option<&[bool]>, w: impl Write) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = CSV_HEADER.to_vec();
    if redundant.is_some() {
        header.push("redundant");
    }
    out.write_record(&header)?;
    for (i, law) in laws.iter().enumerate() {
        let mut rec = vec![
            law.seq.to_string(),
            law.level().to_string(),
            format!("{:06x}", law.implicant.mask()),
            format!("{:06x}", law.implicant.value()),
            law.implicant.to_string(),
        ];
        if let Some(flags) = redundant {
            rec.push(u8::from(flags[i]).to_string());
        }
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads the CSV written by [`write_laws_csv`]; the `redundant` column is
/// ignored if present. Mask/value columns must agree with the law text.
pub fn read_laws_csv(r: impl Read) -> Result<Vec<Law>> {
    let mut rdr = csv::Reader::from_reader(r);
    let headers = rdr.headers()?.clone();
    if headers.len() < CSV_HEADER.len() || headers.iter().zip(CSV_HEADER).any(|(a, b)| a != b) {
        return Err(Error::LawText(format!("unexpected CSV header {headers:?}")));
    }
    let mut laws = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let field = |i: usize| rec.get(i).unwrap_or_default();
        let seq = field(0)
            .parse()
            .map_err(|_| Error::LawText(format!("bad seq `{}`", field(0))))?;
        let hex = |i: usize| {
            u32::from_str_radix(field(i), 16)
                .map_err(|_| Error::LawText(format!("bad hex `{}`", field(i))))
        };
        let implicant: Implicant = field(4).parse()?;
        if implicant != Implicant::new(hex(2)?, hex(3)?)? {
            return Err(Error::LawText(format!(
                "law {seq}: mask/value columns disagree with `{}`",
                field(4)
            )));
        }
        laws.push(Law { seq, implicant });
    }
    Ok(laws)
}
