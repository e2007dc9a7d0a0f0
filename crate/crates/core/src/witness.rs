//! Concrete relations with a prescribed combination of properties.
//!
//! Exhaustive search walks the normal-form stream, which is enough because
//! every property is invariant under renaming the elements. Past six
//! elements that stream is too large and a randomized local search takes
//! over; it can find witnesses but never proves their absence.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::find_first_normal;
use crate::error::{Error, Result};
use crate::property::{holds_all, PropertyId};
use crate::relation::{check_card, Relation};

/// Largest universe searched exhaustively (4.6·10^8 normal forms).
pub const EXHAUSTIVE_MAX: usize = 6;

pub const DEFAULT_RESTARTS: u64 = 100_000;

/// Properties required to hold (`pos`) and to fail (`neg`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiteralConjunction {
    pos: Vec<PropertyId>,
    neg: Vec<PropertyId>,
}

impl LiteralConjunction {
    pub fn new(
        pos: impl IntoIterator<Item = PropertyId>,
        neg: impl IntoIterator<Item = PropertyId>,
    ) -> Result<Self> {
        let pos: BTreeSet<PropertyId> = pos.into_iter().collect();
        let neg: BTreeSet<PropertyId> = neg.into_iter().collect();
        if let Some(p) = pos.intersection(&neg).next() {
            return Err(Error::ConflictingLiteral(p.name()));
        }
        Ok(LiteralConjunction {
            pos: pos.into_iter().collect(),
            neg: neg.into_iter().collect(),
        })
    }

    pub fn pos(&self) -> &[PropertyId] {
        &self.pos
    }

    pub fn neg(&self) -> &[PropertyId] {
        &self.neg
    }

    pub fn is_satisfied_by(&self, r: &Relation) -> bool {
        holds_all(r, &self.pos, &self.neg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Complete search of the normal forms; `None` means no witness exists.
    Exhaustive,
    /// Seeded local search; `None` only means the budget ran out.
    Heuristic { seed: u64, restarts: u64 },
}

impl SearchMode {
    pub fn heuristic(seed: u64) -> Self {
        SearchMode::Heuristic {
            seed,
            restarts: DEFAULT_RESTARTS,
        }
    }
}

pub fn find_witness(
    n: usize,
    q: &LiteralConjunction,
    mode: SearchMode,
) -> Result<Option<Relation>> {
    check_card(n)?;
    let found = match mode {
        SearchMode::Exhaustive => {
            if n > EXHAUSTIVE_MAX {
                return Err(Error::ExhaustiveLimit {
                    got: n,
                    max: EXHAUSTIVE_MAX,
                });
            }
            find_first_normal(n, |r| q.is_satisfied_by(r))?
        }
        SearchMode::Heuristic { seed, restarts } => local_search(n, q, seed, restarts),
    };
    if let Some(w) = &found {
        assert!(q.is_satisfied_by(w), "search returned a non-witness {w:?}");
    }
    Ok(found)
}

/// Smallest `n <= n_max` admitting a witness, by exhaustive search.
pub fn min_universe(q: &LiteralConjunction, n_max: usize) -> Result<Option<usize>> {
    if !(1..=EXHAUSTIVE_MAX).contains(&n_max) {
        return Err(Error::ExhaustiveLimit {
            got: n_max,
            max: EXHAUSTIVE_MAX,
        });
    }
    for n in 1..=n_max {
        if find_witness(n, q, SearchMode::Exhaustive)?.is_some() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Number of instances violating the defining formula of `p`; zero iff `p`
/// holds.
pub fn violations(r: &Relation, p: PropertyId) -> u32 {
    use PropertyId::*;
    let n = r.card();
    let at = |x: usize, y: usize| r.get(x, y);
    let inc = |x: usize, y: usize| !at(x, y) && !at(y, x);
    let strict = |x: usize, y: usize| at(x, y) && !at(y, x);
    let idx = || 0..n;
    let count2 = |f: &dyn Fn(usize, usize) -> bool| -> u32 {
        idx()
            .map(|x| idx().filter(|&y| f(x, y)).count() as u32)
            .sum()
    };
    let count3 = |f: &dyn Fn(usize, usize, usize) -> bool| -> u32 {
        idx().map(|x| count2(&|y, z| f(x, y, z))).sum()
    };
    match p {
        Empty => count2(&|x, y| at(x, y)),
        Univ => count2(&|x, y| !at(x, y)),
        CoRefl => count2(&|x, y| at(x, y) && x != y),
        LfQuasiRefl => count2(&|x, y| at(x, y) && !at(x, x)),
        RgQuasiRefl => count2(&|x, y| at(x, y) && !at(y, y)),
        QuasiRefl => violations(r, LfQuasiRefl) + violations(r, RgQuasiRefl),
        Refl => idx().filter(|&x| !at(x, x)).count() as u32,
        Irrefl => idx().filter(|&x| at(x, x)).count() as u32,
        Sym => count2(&|x, y| at(x, y) && !at(y, x)),
        ASym => count2(&|x, y| at(x, y) && at(y, x)),
        AntiSym => count2(&|x, y| at(x, y) && at(y, x) && x != y),
        SemiConnex => count2(&|x, y| inc(x, y) && x != y),
        Connex => count2(&|x, y| inc(x, y)),
        Trans => count3(&|x, y, z| at(x, y) && at(y, z) && !at(x, z)),
        AntiTrans => count3(&|x, y, z| at(x, y) && at(y, z) && at(x, z)),
        QuasiTrans => count3(&|x, y, z| strict(x, y) && strict(y, z) && !strict(x, z)),
        RgEucl => count3(&|x, y, z| at(x, y) && at(x, z) && !at(y, z)),
        LfEucl => count3(&|x, y, z| at(y, x) && at(z, x) && !at(y, z)),
        SemiOrd1 => idx()
            .map(|w| count3(&|x, y, z| at(w, x) && inc(x, y) && at(y, z) && !at(w, z)))
            .sum(),
        SemiOrd2 => idx()
            .map(|w| count3(&|x, y, z| at(x, y) && at(y, z) && inc(w, x) && inc(w, y) && inc(w, z)))
            .sum(),
        RgSerial => idx().filter(|&x| idx().all(|y| !at(x, y))).count() as u32,
        LfSerial => idx().filter(|&y| idx().all(|x| !at(x, y))).count() as u32,
        Dense => count2(&|x, z| at(x, z) && !idx().any(|y| at(x, y) && at(y, z))),
        IncTrans => count3(&|x, y, z| inc(x, y) && inc(y, z) && !inc(x, z)),
        LfUnique => count3(&|a, b, y| a != b && at(a, y) && at(b, y)),
        RgUnique => count3(&|x, a, b| a != b && at(x, a) && at(x, b)),
    }
}

fn score(r: &Relation, q: &LiteralConjunction) -> u32 {
    let n = r.card() as u32;
    let pos: u32 = q.pos.iter().map(|&p| violations(r, p)).sum();
    // a violated negative literal has no natural size; weigh it like a
    // full row of positive violations
    let neg: u32 = q.neg.iter().filter(|&&p| violations(r, p) == 0).count() as u32 * n * n;
    pos + neg
}

/// Random fill, then repeated best single-cell flips with random
/// tie-breaking; a flip that does not improve is taken with small
/// probability, otherwise the search restarts.
fn local_search(n: usize, q: &LiteralConjunction, seed: u64, restarts: u64) -> Option<Relation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = 8 * n * n;
    let mut best_moves = Vec::with_capacity(n * n);
    for _ in 0..restarts {
        let density: f64 = rng.gen_range(0.1..0.9);
        let mut r = Relation::empty(n).expect("cardinality checked by caller");
        for x in 0..n {
            for y in 0..n {
                r.set(x, y, rng.gen_bool(density));
            }
        }
        let mut current = score(&r, q);
        for _ in 0..steps {
            if current == 0 {
                return Some(r);
            }
            best_moves.clear();
            let mut best = u32::MAX;
            for x in 0..n {
                for y in 0..n {
                    let mut next = r;
                    next.set(x, y, !r.get(x, y));
                    let s = score(&next, q);
                    if s < best {
                        best = s;
                        best_moves.clear();
                    }
                    if s == best {
                        best_moves.push((x, y));
                    }
                }
            }
            let (x, y) = if best < current || rng.gen_bool(0.3) {
                best_moves[rng.gen_range(0..best_moves.len())]
            } else if rng.gen_bool(0.5) {
                (rng.gen_range(0..n), rng.gen_range(0..n))
            } else {
                break;
            };
            r.set(x, y, !r.get(x, y));
            current = score(&r, q);
        }
        if current == 0 {
            return Some(r);
        }
    }
    None
}

/// Graphviz description with one node per element and one edge per related
/// pair, both in ascending index order. Elements default to `a`, `b`, ...
pub fn export_dot(r: &Relation, labels: Option<&[String]>) -> Result<String> {
    let n = r.card();
    let names: Vec<String> = match labels {
        Some(l) if l.len() != n => return Err(Error::LabelCount { got: l.len(), n }),
        Some(l) => l.to_vec(),
        None => (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect(),
    };
    let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::from("digraph R {\n");
    for name in &names {
        let _ = writeln!(out, "  {};", quote(name));
    }
    for (x, y) in r.pairs() {
        let _ = writeln!(out, "  {} -> {};", quote(&names[x]), quote(&names[y]));
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::property::holds;
    use PropertyId::*;

    fn conj(pos: &[PropertyId], neg: &[PropertyId]) -> LiteralConjunction {
        LiteralConjunction::new(pos.iter().copied(), neg.iter().copied()).unwrap()
    }

    #[test]
    fn conflicting_literals_rejected() {
        assert!(matches!(
            LiteralConjunction::new([Sym], [Sym]),
            Err(Error::ConflictingLiteral("Sym"))
        ));
    }

    #[test]
    fn symmetric_semiconnex_not_dense() {
        let q = conj(&[Sym, SemiConnex], &[Dense]);
        let w = find_witness(2, &q, SearchMode::Exhaustive)
            .unwrap()
            .unwrap();
        assert!(q.is_satisfied_by(&w));
        let swap = Relation::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(q.is_satisfied_by(&swap));
    }

    #[test]
    fn four_cycle_counterexample() {
        let q = conj(&[LfUnique, RgUnique, IncTrans], &[Empty]);
        assert!(find_witness(4, &q, SearchMode::Exhaustive)
            .unwrap()
            .is_some());
        let cycle = Relation::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(q.is_satisfied_by(&cycle));
    }

    #[test]
    fn exhaustive_limit() {
        let q = conj(&[Sym], &[]);
        assert!(matches!(
            find_witness(7, &q, SearchMode::Exhaustive),
            Err(Error::ExhaustiveLimit { got: 7, .. })
        ));
        assert!(min_universe(&q, 0).is_err());
        assert!(min_universe(&q, 7).is_err());
    }

    #[test]
    fn minimum_universes() {
        assert_eq!(
            min_universe(&conj(&[AntiTrans, SemiConnex], &[]), 6).unwrap(),
            Some(1)
        );
        assert_eq!(min_universe(&conj(&[Connex], &[Refl]), 4).unwrap(), None);
        // an asymmetric non-empty relation needs two elements
        assert_eq!(min_universe(&conj(&[ASym], &[Empty]), 4).unwrap(), Some(2));
    }

    #[test]
    fn violations_vanish_exactly_when_property_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let n = rng.gen_range(1..=5);
            let mut r = Relation::empty(n).unwrap();
            let density: f64 = rng.gen_range(0.0..1.0);
            for x in 0..n {
                for y in 0..n {
                    r.set(x, y, rng.gen_bool(density));
                }
            }
            for p in PropertyId::ALL {
                assert_eq!(violations(&r, p) == 0, holds(&r, p), "{p} on {r:?}");
            }
        }
    }

    #[test]
    fn heuristic_is_reproducible() {
        let q = conj(&[Trans, Connex], &[Univ]);
        let mode = SearchMode::Heuristic {
            seed: 3,
            restarts: 1000,
        };
        let a = find_witness(4, &q, mode).unwrap();
        let b = find_witness(4, &q, mode).unwrap();
        assert!(a.is_some());
        assert_eq!(a, b);
    }

    #[test]
    fn dot_output() {
        let empty = Relation::empty(2).unwrap();
        assert_eq!(
            export_dot(&empty, None).unwrap(),
            "digraph R {\n  \"a\";\n  \"b\";\n}\n"
        );
        let ab = Relation::from_pairs(2, &[(0, 1)]).unwrap();
        let dot = export_dot(&ab, None).unwrap();
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("\"a\" -> \"b\";"));
        let labels = vec!["x".to_string(), "y\"q".to_string()];
        assert!(export_dot(&ab, Some(&labels))
            .unwrap()
            .contains("\"x\" -> \"y\\\"q\";"));
        assert!(matches!(
            export_dot(&ab, Some(&labels[..1])),
            Err(Error::LabelCount { got: 1, n: 2 })
        ));
    }
}
