//! Homogeneous binary relations on small finite universes.
//!
//! A [`Relation`] on `{0, .., n-1}` is stored as one byte per row: bit `y`
//! of row `x` is set iff `x R y`. With `n <= 8` the whole matrix fits a
//! single machine word, which keeps exhaustive enumeration cheap.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported universe cardinality.
pub const MAX_CARD: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relation {
    n: u8,
    rows: [u8; MAX_CARD],
}

pub(crate) fn check_card(n: usize) -> Result<()> {
    if (1..=MAX_CARD).contains(&n) {
        Ok(())
    } else {
        Err(Error::Cardinality(n))
    }
}

/// Bitmask with the low `n` bits set.
#[inline]
pub(crate) fn full_mask(n: usize) -> u8 {
    ((1u16 << n) - 1) as u8
}

impl Relation {
    pub fn empty(n: usize) -> Result<Self> {
        check_card(n)?;
        Ok(Relation {
            n: n as u8,
            rows: [0; MAX_CARD],
        })
    }

    pub fn universal(n: usize) -> Result<Self> {
        let mut r = Self::empty(n)?;
        let full = full_mask(n);
        r.rows[..n].iter_mut().for_each(|row| *row = full);
        Ok(r)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for (i, row) in r.rows[..n].iter_mut().enumerate() {
            *row = 1 << i;
        }
        Ok(r)
    }

    /// Builds a relation from row bitmasks; bit `y` of `rows[x]` encodes `x R y`.
    pub fn from_rows(rows: &[u8]) -> Result<Self> {
        let n = rows.len();
        let mut r = Self::empty(n)?;
        let full = full_mask(n);
        for (x, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                return Err(Error::IndexOutOfRange {
                    index: 7 - row.leading_zeros() as usize,
                    n,
                });
            }
            r.rows[x] = row;
        }
        Ok(r)
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Self::empty(n)?;
        for &(x, y) in pairs {
            r.check_index(x)?;
            r.check_index(y)?;
            r.rows[x] |= 1 << y;
        }
        Ok(r)
    }

    /// Decodes the row-major bit string used by exhaustive enumeration:
    /// cell `(0,0)` is the most significant of the `n*n` bits.
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        check_card(n)?;
        let cells = n * n;
        if cells < 64 && index >> cells != 0 {
            return Err(Error::RelationText(format!(
                "enumeration index {index} exceeds {cells} cells"
            )));
        }
        let mut r = Self::empty(n)?;
        for x in 0..n {
            for y in 0..n {
                let bit = cells - 1 - (x * n + y);
                if index >> bit & 1 == 1 {
                    r.rows[x] |= 1 << y;
                }
            }
        }
        Ok(r)
    }

    /// Inverse of [`Relation::from_index`].
    pub fn index(&self) -> u64 {
        let n = self.card();
        let mut index = 0u64;
        for x in 0..n {
            for y in 0..n {
                index = index << 1 | u64::from(self.get(x, y));
            }
        }
        index
    }

    #[inline]
    pub fn card(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn set(&mut self, x: usize, y: usize, related: bool) {
        debug_assert!(x < self.card() && y < self.card());
        if related {
            self.rows[x] |= 1 << y;
        } else {
            self.rows[x] &= !(1 << y);
        }
    }

    #[inline]
    pub fn rows(&self) -> &[u8] {
        &self.rows[..self.card()]
    }

    #[inline]
    pub(crate) fn row(&self, x: usize) -> u8 {
        self.rows[x]
    }

    /// Column bitmasks: bit `x` of `columns()[y]` is set iff `x R y`.
    pub fn columns(&self) -> [u8; MAX_CARD] {
        let mut cols = [0u8; MAX_CARD];
        for (x, &row) in self.rows().iter().enumerate() {
            let mut bits = row;
            while bits != 0 {
                let y = bits.trailing_zeros() as usize;
                cols[y] |= 1 << x;
                bits &= bits - 1;
            }
        }
        cols
    }

    pub fn pair_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.card();
        (0..n).flat_map(move |x| (0..n).filter(move |&y| self.get(x, y)).map(move |y| (x, y)))
    }

    pub fn converse(&self) -> Relation {
        let mut rows = [0u8; MAX_CARD];
        rows[..self.card()].copy_from_slice(&self.columns()[..self.card()]);
        Relation { n: self.n, rows }
    }

    /// The relation restricted to `subset`; element `i` of the result is
    /// `subset[i]` of `self`.
    pub fn restrict(&self, subset: &[usize]) -> Result<Relation> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut seen = 0u8;
        for &i in subset {
            self.check_index(i)?;
            if seen >> i & 1 == 1 {
                return Err(Error::DuplicateIndex(i));
            }
            seen |= 1 << i;
        }
        let mut out = Relation::empty(subset.len())?;
        for (i, &x) in subset.iter().enumerate() {
            for (j, &y) in subset.iter().enumerate() {
                if self.get(x, y) {
                    out.rows[i] |= 1 << j;
                }
            }
        }
        Ok(out)
    }

    /// `x R' y` iff `perm[x] R perm[y]`. `perm` must be a permutation of
    /// `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Result<Relation> {
        if perm.len() != self.card() {
            return Err(Error::IndexOutOfRange {
                index: perm.len(),
                n: self.card(),
            });
        }
        self.restrict(perm)
    }

    /// `xR`: the elements `x` is related to.
    pub fn successors(&self, x: usize) -> Result<Vec<usize>> {
        self.check_index(x)?;
        Ok(bit_indices(self.rows[x]))
    }

    /// `Ry`: the elements related to `y`.
    pub fn predecessors(&self, y: usize) -> Result<Vec<usize>> {
        self.check_index(y)?;
        Ok(bit_indices(self.columns()[y]))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.card() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.card(),
            })
        }
    }
}

fn bit_indices(mut bits: u8) -> Vec<usize> {
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    out
}

/// One line per row, `1` for related and `.` for unrelated.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 0..self.card() {
            let line: String = (0..self.card())
                .map(|y| if self.get(x, y) { '1' } else { '.' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.card())
            .map(|x| {
                (0..self.card())
                    .map(|y| if self.get(x, y) { '1' } else { '.' })
                    .collect()
            })
            .collect();
        write!(f, "Relation({})", rows.join("/"))
    }
}

/// Parses `n` lines of `n` characters each. `1` marks a related pair, `0`
/// or `.` an unrelated one. Blank lines and surrounding whitespace are
/// ignored.
impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let n = lines.len();
        if n == 0 {
            return Err(Error::RelationText("no rows".into()));
        }
        check_card(n)?;
        let mut r = Relation::empty(n)?;
        for (x, line) in lines.iter().enumerate() {
            let cells: Vec<char> = line.chars().collect();
            if cells.len() != n {
                return Err(Error::RelationText(format!(
                    "row {} has {} cells, expected {n}",
                    x + 1,
                    cells.len()
                )));
            }
            for (y, c) in cells.into_iter().enumerate() {
                match c {
                    '1' => r.rows[x] |= 1 << y,
                    '0' | '.' => {}
                    other => {
                        return Err(Error::RelationText(format!(
                            "unexpected character {other:?} in row {}",
                            x + 1
                        )))
                    }
                }
            }
        }
        Ok(r)
    }
}
