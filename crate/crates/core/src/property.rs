//! The catalog of relation properties and the 24-bit property vector.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::relation::{full_mask, Relation, MAX_CARD};

/// Number of properties recorded in a [`PropertyVector`].
pub const MINED_COUNT: usize = 24;

/// Mask of the bits a [`PropertyVector`] may use.
pub const VECTOR_MASK: u32 = (1 << MINED_COUNT) - 1;

/// A property of homogeneous binary relations.
///
/// The first 24 variants are the mined properties, declared in encoding
/// order: `Empty` is bit 0, `RgSerial` is bit 23. The encoding sorts the
/// properties by the number of relations on a 5-element set that have them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyId {
    Empty,
    Univ,
    CoRefl,
    LfEucl,
    RgEucl,
    LfUnique,
    RgUnique,
    Sym,
    AntiTrans,
    ASym,
    Connex,
    Trans,
    SemiOrd1,
    Irrefl,
    Refl,
    QuasiRefl,
    AntiSym,
    SemiConnex,
    IncTrans,
    SemiOrd2,
    QuasiTrans,
    Dense,
    LfSerial,
    RgSerial,
    LfQuasiRefl,
    RgQuasiRefl,
}

use PropertyId::*;

impl PropertyId {
    pub const ALL: [PropertyId; 26] = [
        Empty,
        Univ,
        CoRefl,
        LfEucl,
        RgEucl,
        LfUnique,
        RgUnique,
        Sym,
        AntiTrans,
        ASym,
        Connex,
        Trans,
        SemiOrd1,
        Irrefl,
        Refl,
        QuasiRefl,
        AntiSym,
        SemiConnex,
        IncTrans,
        SemiOrd2,
        QuasiTrans,
        Dense,
        LfSerial,
        RgSerial,
        LfQuasiRefl,
        RgQuasiRefl,
    ];

    /// The mined properties, indexed by bit position.
    pub const MINED: [PropertyId; MINED_COUNT] = [
        Empty, Univ, CoRefl, LfEucl, RgEucl, LfUnique, RgUnique, Sym, AntiTrans, ASym, Connex,
        Trans, SemiOrd1, Irrefl, Refl, QuasiRefl, AntiSym, SemiConnex, IncTrans, SemiOrd2,
        QuasiTrans, Dense, LfSerial, RgSerial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Empty => "Empty",
            Univ => "Univ",
            CoRefl => "CoRefl",
            LfEucl => "LfEucl",
            RgEucl => "RgEucl",
            LfUnique => "LfUnique",
            RgUnique => "RgUnique",
            Sym => "Sym",
            AntiTrans => "AntiTrans",
            ASym => "ASym",
            Connex => "Connex",
            Trans => "Trans",
            SemiOrd1 => "SemiOrd1",
            Irrefl => "Irrefl",
            Refl => "Refl",
            QuasiRefl => "QuasiRefl",
            AntiSym => "AntiSym",
            SemiConnex => "SemiConnex",
            IncTrans => "IncTrans",
            SemiOrd2 => "SemiOrd2",
            QuasiTrans => "QuasiTrans",
            Dense => "Dense",
            LfSerial => "LfSerial",
            RgSerial => "RgSerial",
            LfQuasiRefl => "LfQuasiRefl",
            RgQuasiRefl => "RgQuasiRefl",
        }
    }

    /// Bit position in a [`PropertyVector`], `None` for the two
    /// one-sided quasi-reflexivity properties.
    pub fn bit(self) -> Option<u32> {
        let i = self as u32;
        (i < MINED_COUNT as u32).then_some(i)
    }

    /// The encoding `1 << bit`, or 0 for properties outside the vector.
    pub fn encoding(self) -> u32 {
        self.bit().map_or(0, |b| 1 << b)
    }

    pub fn from_bit(bit: u32) -> Option<PropertyId> {
        Self::MINED.get(bit as usize).copied()
    }

    /// The property that holds for `R` iff `self` holds for the converse of `R`.
    pub fn dual(self) -> PropertyId {
        match self {
            LfEucl => RgEucl,
            RgEucl => LfEucl,
            LfUnique => RgUnique,
            RgUnique => LfUnique,
            LfSerial => RgSerial,
            RgSerial => LfSerial,
            LfQuasiRefl => RgQuasiRefl,
            RgQuasiRefl => LfQuasiRefl,
            other => other,
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Case-insensitive lookup by name.
impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Self::ALL
            .iter()
            .copied()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// Precomputed row/column views shared by the predicates.
struct View {
    n: usize,
    full: u8,
    rows: [u8; MAX_CARD],
    cols: [u8; MAX_CARD],
}

impl View {
    fn new(r: &Relation) -> Self {
        let n = r.card();
        let mut rows = [0u8; MAX_CARD];
        rows[..n].copy_from_slice(r.rows());
        View {
            n,
            full: full_mask(n),
            rows,
            cols: r.columns(),
        }
    }

    #[inline]
    fn rows(&self) -> &[u8] {
        &self.rows[..self.n]
    }

    #[inline]
    fn diag(&self, x: usize) -> bool {
        self.rows[x] >> x & 1 == 1
    }

    /// For every `x` and every `y` in `sel(x)`, `pred(x, y)` holds.
    #[inline]
    fn all_in(&self, sel: impl Fn(usize) -> u8, pred: impl Fn(usize, usize) -> bool) -> bool {
        (0..self.n).all(|x| {
            let mut bits = sel(x);
            while bits != 0 {
                let y = bits.trailing_zeros() as usize;
                if !pred(x, y) {
                    return false;
                }
                bits &= bits - 1;
            }
            true
        })
    }

    fn holds(&self, p: PropertyId) -> bool {
        let (rows, cols, full) = (&self.rows, &self.cols, self.full);
        let n = self.n;
        match p {
            Empty => self.rows().iter().all(|&r| r == 0),
            Univ => self.rows().iter().all(|&r| r == full),
            CoRefl => (0..n).all(|x| rows[x] & !(1 << x) == 0),
            LfQuasiRefl => (0..n).all(|x| rows[x] == 0 || self.diag(x)),
            RgQuasiRefl => (0..n).all(|y| cols[y] == 0 || self.diag(y)),
            QuasiRefl => (0..n).all(|x| (rows[x] | cols[x]) == 0 || self.diag(x)),
            Refl => (0..n).all(|x| self.diag(x)),
            Irrefl => (0..n).all(|x| !self.diag(x)),
            Sym => (0..n).all(|x| rows[x] == cols[x]),
            ASym => (0..n).all(|x| rows[x] & cols[x] == 0),
            AntiSym => (0..n).all(|x| rows[x] & cols[x] & !(1 << x) == 0),
            SemiConnex => (0..n).all(|x| rows[x] | cols[x] | 1 << x == full),
            Connex => (0..n).all(|x| rows[x] | cols[x] == full),
            // xRy -> yR ⊆ xR
            Trans => self.all_in(|x| rows[x], |x, y| rows[y] & !rows[x] == 0),
            AntiTrans => self.all_in(|x| rows[x], |x, y| rows[y] & rows[x] == 0),
            QuasiTrans => {
                let mut strict = [0u8; MAX_CARD];
                for x in 0..n {
                    strict[x] = rows[x] & !cols[x];
                }
                self.all_in(|x| strict[x], |x, y| strict[y] & !strict[x] == 0)
            }
            // xRy ∧ xRz -> yRz
            RgEucl => self.all_in(|x| rows[x], |x, y| rows[x] & !rows[y] == 0),
            // yRx ∧ zRx -> yRz
            LfEucl => self.all_in(|x| cols[x], |x, y| cols[x] & !rows[y] == 0),
            SemiOrd1 => {
                // x, y incomparable (x = y allowed): every w with wRx has yR ⊆ wR
                self.all_in(
                    |x| full & !(rows[x] | cols[x]),
                    |x, y| self.all_in_set(cols[x], |w| rows[y] & !rows[w] == 0),
                )
            }
            SemiOrd2 => {
                // xRy ∧ yRz -> every w is comparable to one of x, y, z
                let comp = |a: usize| rows[a] | cols[a];
                self.all_in(
                    |x| rows[x],
                    |x, y| self.all_in_set(rows[y], |z| comp(x) | comp(y) | comp(z) == full),
                )
            }
            Dense => self.all_in(|x| rows[x], |x, z| rows[x] & cols[z] != 0),
            IncTrans => {
                let inc = |a: usize| full & !(rows[a] | cols[a]);
                self.all_in(inc, |x, y| inc(y) & !inc(x) == 0)
            }
            LfSerial => (0..n).all(|y| cols[y] != 0),
            RgSerial => (0..n).all(|x| rows[x] != 0),
            LfUnique => (0..n).all(|y| cols[y].count_ones() <= 1),
            RgUnique => (0..n).all(|x| rows[x].count_ones() <= 1),
        }
    }

    #[inline]
    fn all_in_set(&self, mut bits: u8, pred: impl Fn(usize) -> bool) -> bool {
        while bits != 0 {
            if !pred(bits.trailing_zeros() as usize) {
                return false;
            }
            bits &= bits - 1;
        }
        true
    }
}

/// Whether `r` has property `p`.
pub fn holds(r: &Relation, p: PropertyId) -> bool {
    View::new(r).holds(p)
}

/// Evaluates several properties against one relation, sharing setup.
pub fn holds_all(r: &Relation, pos: &[PropertyId], neg: &[PropertyId]) -> bool {
    let v = View::new(r);
    pos.iter().all(|&p| v.holds(p)) && neg.iter().all(|&p| !v.holds(p))
}

/// The set of mined properties a relation satisfies, one bit per property.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PropertyVector(u32);

impl PropertyVector {
    pub fn new(bits: u32) -> Result<Self> {
        if bits & !VECTOR_MASK != 0 {
            return Err(Error::VectorWidth(bits));
        }
        Ok(PropertyVector(bits))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    /// False for the properties outside the vector.
    pub fn contains(self, p: PropertyId) -> bool {
        p.bit().is_some_and(|b| self.0 >> b & 1 == 1)
    }

    pub fn properties(self) -> impl Iterator<Item = PropertyId> {
        PropertyId::MINED
            .into_iter()
            .filter(move |p| self.0 & p.encoding() != 0)
    }

    pub fn of(r: &Relation) -> Self {
        property_vector(r)
    }
}

impl fmt::Debug for PropertyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PropertyVector({:#08x})", self.0)
    }
}

impl fmt::LowerHex for PropertyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

pub fn property_vector(r: &Relation) -> PropertyVector {
    let v = View::new(r);
    let mut bits = 0u32;
    for (b, p) in PropertyId::MINED.into_iter().enumerate() {
        if v.holds(p) {
            bits |= 1 << b;
        }
    }
    PropertyVector(bits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    Equivalence,
    PartialEquivalence,
    Tolerance,
    Idempotent,
    Trichotomous,
    NonStrictPartialOrder,
    StrictPartialOrder,
    SemiOrder,
    Preorder,
    WeakOrdering,
    PartialFunction,
    TotalFunction,
    InjectiveFunction,
    SurjectiveFunction,
    BijectiveFunction,
}

impl RelationKind {
    pub const ALL: [RelationKind; 15] = [
        RelationKind::Equivalence,
        RelationKind::PartialEquivalence,
        RelationKind::Tolerance,
        RelationKind::Idempotent,
        RelationKind::Trichotomous,
        RelationKind::NonStrictPartialOrder,
        RelationKind::StrictPartialOrder,
        RelationKind::SemiOrder,
        RelationKind::Preorder,
        RelationKind::WeakOrdering,
        RelationKind::PartialFunction,
        RelationKind::TotalFunction,
        RelationKind::InjectiveFunction,
        RelationKind::SurjectiveFunction,
        RelationKind::BijectiveFunction,
    ];

    /// The properties whose conjunction defines this kind.
    pub fn requirements(self) -> &'static [PropertyId] {
        match self {
            RelationKind::Equivalence => &[Refl, Sym, Trans],
            RelationKind::PartialEquivalence => &[Sym, Trans],
            RelationKind::Tolerance => &[Refl, Sym],
            RelationKind::Idempotent => &[Dense, Trans],
            RelationKind::Trichotomous => &[Irrefl, ASym, SemiConnex],
            RelationKind::NonStrictPartialOrder => &[Refl, AntiSym, Trans],
            RelationKind::StrictPartialOrder => &[Irrefl, ASym, Trans],
            RelationKind::SemiOrder => &[ASym, SemiOrd1, SemiOrd2],
            RelationKind::Preorder => &[Refl, Trans],
            RelationKind::WeakOrdering => &[Irrefl, ASym, Trans, IncTrans],
            RelationKind::PartialFunction => &[RgUnique],
            RelationKind::TotalFunction => &[RgUnique, RgSerial],
            RelationKind::InjectiveFunction => &[LfUnique, RgUnique, RgSerial],
            RelationKind::SurjectiveFunction => &[RgUnique, LfSerial, RgSerial],
            RelationKind::BijectiveFunction => &[LfUnique, RgUnique, LfSerial, RgSerial],
        }
    }
}

pub fn classify_kinds(r: &Relation) -> Vec<RelationKind> {
    let v = View::new(r);
    RelationKind::ALL
        .into_iter()
        .filter(|k| k.requirements().iter().all(|&p| v.holds(p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn encodings_match_table() {
        let expected: [(PropertyId, u32); 24] = [
            (Empty, 0x000001),
            (Univ, 0x000002),
            (CoRefl, 0x000004),
            (LfEucl, 0x000008),
            (RgEucl, 0x000010),
            (LfUnique, 0x000020),
            (RgUnique, 0x000040),
            (Sym, 0x000080),
            (AntiTrans, 0x000100),
            (ASym, 0x000200),
            (Connex, 0x000400),
            (Trans, 0x000800),
            (SemiOrd1, 0x001000),
            (Irrefl, 0x002000),
            (Refl, 0x004000),
            (QuasiRefl, 0x008000),
            (AntiSym, 0x010000),
            (SemiConnex, 0x020000),
            (IncTrans, 0x040000),
            (SemiOrd2, 0x080000),
            (QuasiTrans, 0x100000),
            (Dense, 0x200000),
            (LfSerial, 0x400000),
            (RgSerial, 0x800000),
        ];
        for (p, enc) in expected {
            assert_eq!(p.encoding(), enc, "{p}");
        }
        assert_eq!(LfQuasiRefl.bit(), None);
        assert_eq!(RgQuasiRefl.encoding(), 0);
    }

    #[test]
    fn names_parse_back() {
        for p in PropertyId::ALL {
            assert_eq!(p.name().parse::<PropertyId>().unwrap(), p);
            assert_eq!(p.name().to_lowercase().parse::<PropertyId>().unwrap(), p);
        }
        assert!("Reflexive".parse::<PropertyId>().is_err());
    }

    #[test]
    fn identity_is_transitive() {
        assert!(holds(&Relation::identity(3).unwrap(), Trans));
    }

    #[test]
    fn swap_pair_is_not_dense() {
        let r = rel(2, &[(0, 1), (1, 0)]);
        assert!(holds(&r, Sym));
        assert!(holds(&r, SemiConnex));
        assert!(!holds(&r, Dense));
    }

    #[test]
    fn left_euclidean_but_not_symmetric() {
        let r = rel(2, &[(0, 0), (0, 1)]);
        assert!(holds(&r, LfEucl));
        assert!(!holds(&r, Sym));
        assert!(holds(&r, SemiConnex));
    }

    #[test]
    fn three_cycle() {
        let r = rel(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(holds(&r, AntiTrans));
        assert!(holds(&r, SemiConnex));
    }

    #[test]
    fn empty_relation_vector() {
        let v = property_vector(&Relation::empty(5).unwrap());
        let expected = [
            Empty, CoRefl, LfEucl, RgEucl, LfUnique, RgUnique, Sym, AntiTrans, ASym, Trans,
            SemiOrd1, Irrefl, QuasiRefl, AntiSym, IncTrans, SemiOrd2, QuasiTrans, Dense,
        ];
        let bits: u32 = expected.iter().map(|p| p.encoding()).sum();
        assert_eq!(v.bits(), bits);
    }

    #[test]
    fn universal_relation_vector() {
        let v = property_vector(&Relation::universal(5).unwrap());
        let expected = [
            Univ, LfEucl, RgEucl, Sym, Connex, Trans, SemiOrd1, Refl, QuasiRefl, SemiConnex,
            IncTrans, SemiOrd2, QuasiTrans, Dense, LfSerial, RgSerial,
        ];
        let bits: u32 = expected.iter().map(|p| p.encoding()).sum();
        assert_eq!(v.bits(), bits);
    }

    #[test]
    fn singleton_identity_is_universal() {
        let v = property_vector(&Relation::identity(1).unwrap());
        assert!(!v.contains(Empty));
        assert!(v.contains(Univ));
        assert!(v.contains(Refl));
    }

    #[test]
    fn kinds() {
        let id = classify_kinds(&Relation::identity(3).unwrap());
        for k in [
            RelationKind::Equivalence,
            RelationKind::Preorder,
            RelationKind::NonStrictPartialOrder,
            RelationKind::BijectiveFunction,
        ] {
            assert!(id.contains(&k), "{k:?}");
        }

        let empty = classify_kinds(&Relation::empty(2).unwrap());
        for k in [
            RelationKind::StrictPartialOrder,
            RelationKind::PartialEquivalence,
            RelationKind::PartialFunction,
        ] {
            assert!(empty.contains(&k), "{k:?}");
        }
        assert!(!empty.contains(&RelationKind::TotalFunction));

        let univ = classify_kinds(&Relation::universal(2).unwrap());
        for k in [
            RelationKind::Equivalence,
            RelationKind::Tolerance,
            RelationKind::Preorder,
        ] {
            assert!(univ.contains(&k), "{k:?}");
        }
        assert!(!univ.contains(&RelationKind::PartialFunction));
    }

    #[test]
    fn vector_rejects_wide_bits() {
        assert!(PropertyVector::new(1 << 24).is_err());
        assert!(PropertyVector::new(VECTOR_MASK).is_ok());
    }
}
