//! Laws that follow from other laws by propositional reasoning alone.
//!
//! Each law is a clause over the 24 property variables. A law is redundant
//! when the remaining laws entail it without appeal to what the properties
//! mean: `others ∧ ¬target` is unsatisfiable.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lawmine::Law;

/// A clause as `(positive, negative)` literal masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Clause {
    pos: u32,
    neg: u32,
}

impl From<&Law> for Clause {
    fn from(law: &Law) -> Self {
        let (pos, neg) = law.clause_masks();
        Clause { pos, neg }
    }
}

#[derive(Clone, Debug)]
pub struct ClauseSet {
    laws: Vec<Law>,
}

impl ClauseSet {
    /// Rejects sets containing the same clause twice.
    pub fn new(laws: Vec<Law>) -> Result<Self> {
        let mut seen = HashSet::new();
        for law in &laws {
            if !seen.insert(law.implicant) {
                return Err(Error::LawText(format!(
                    "duplicate clause `{}` (law {})",
                    law.implicant, law.seq
                )));
            }
        }
        Ok(ClauseSet { laws })
    }

    pub fn laws(&self) -> &[Law] {
        &self.laws
    }

    pub fn len(&self) -> usize {
        self.laws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.laws.is_empty()
    }
}

/// Partial assignment: `assigned` marks decided variables, `value` their
/// truth (bits outside `assigned` are zero).
#[derive(Clone, Copy, Debug)]
struct Assignment {
    assigned: u32,
    value: u32,
}

enum ClauseState {
    Satisfied,
    Conflict,
    Unit(u32, bool),
    Open(u32),
}

impl Assignment {
    fn eval(self, c: Clause) -> ClauseState {
        let true_lits = (c.pos & self.value) | (c.neg & self.assigned & !self.value);
        if true_lits != 0 {
            return ClauseState::Satisfied;
        }
        let free = (c.pos | c.neg) & !self.assigned;
        match free.count_ones() {
            0 => ClauseState::Conflict,
            1 => ClauseState::Unit(free, c.pos & free != 0),
            _ => ClauseState::Open(free),
        }
    }

    fn set(&mut self, var: u32, truth: bool) {
        self.assigned |= var;
        if truth {
            self.value |= var;
        }
    }
}

/// Complete DPLL search: unit propagation, then branching on a free
/// variable of the first open clause.
fn satisfiable(clauses: &[Clause], mut a: Assignment) -> bool {
    let branch_var = loop {
        let mut changed = false;
        let mut open = None;
        for &c in clauses {
            match a.eval(c) {
                ClauseState::Satisfied => {}
                ClauseState::Conflict => return false,
                ClauseState::Unit(var, truth) => {
                    a.set(var, truth);
                    changed = true;
                }
                ClauseState::Open(free) => {
                    if open.is_none() {
                        open = Some(free);
                    }
                }
            }
        }
        if !changed {
            match open {
                None => return true,
                Some(free) => break free & free.wrapping_neg(),
            }
        }
    };
    [true, false].into_iter().any(|truth| {
        let mut next = a;
        next.set(branch_var, truth);
        satisfiable(clauses, next)
    })
}

/// Whether every assignment satisfying all of `others` satisfies `target`.
pub fn entails(others: &[Law], target: &Law) -> bool {
    let clauses: Vec<Clause> = others.iter().map(Clause::from).collect();
    // falsifying the target fixes each of its literals to false, i.e. the
    // implicant's cube to true
    let start = Assignment {
        assigned: target.implicant.mask(),
        value: target.implicant.value(),
    };
    !satisfiable(&clauses, start)
}

/// For each law, whether the other laws of the set entail it. Every flag is
/// computed against the full set; no law is removed along the way.
pub fn star_redundant(laws: &ClauseSet) -> Vec<bool> {
    let clauses: Vec<Clause> = laws.laws.iter().map(Clause::from).collect();
    (0..clauses.len())
        .into_par_iter()
        .map(|i| {
            let mut others = clauses.clone();
            others.remove(i);
            let target = &laws.laws[i];
            !satisfiable(
                &others,
                Assignment {
                    assigned: target.implicant.mask(),
                    value: target.implicant.value(),
                },
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(seq: usize, text: &str) -> Law {
        Law {
            seq,
            implicant: text.parse().unwrap(),
        }
    }

    /// Brute force over the variables the clauses mention.
    fn entails_by_truth_table(others: &[Law], target: &Law) -> bool {
        let vars = others
            .iter()
            .chain(std::iter::once(target))
            .fold(0u32, |acc, l| acc | l.implicant.mask());
        let mut sub = 0u32;
        loop {
            let a = sub;
            if others.iter().all(|l| l.satisfied_by(a)) && !target.satisfied_by(a) {
                return false;
            }
            if sub == vars {
                return true;
            }
            sub = sub.wrapping_sub(vars) & vars;
        }
    }

    #[test]
    fn asym_refl_follows() {
        let others = [law(46, "Irrefl Refl"), law(39, "ASym ~Irrefl")];
        assert!(entails(&others, &law(44, "ASym Refl")));
    }

    #[test]
    fn empty_premises_entail_nothing() {
        assert!(!entails(&[], &law(6, "CoRefl ~LfEucl")));
    }

    #[test]
    fn subsumed_clause_flagged() {
        // A∨B and A∨B∨C
        let set =
            ClauseSet::new(vec![law(1, "~Sym ~Trans"), law(2, "~Sym ~Trans ~Dense")]).unwrap();
        assert_eq!(star_redundant(&set), vec![false, true]);
        let single = ClauseSet::new(vec![law(1, "Sym")]).unwrap();
        assert_eq!(star_redundant(&single), vec![false]);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(ClauseSet::new(vec![law(1, "Sym ~Trans"), law(2, "~Trans Sym")]).is_err());
    }

    #[test]
    fn resolution_chain() {
        // a→b, b→c, c→d entails a→d; not d→a
        let others = [
            law(1, "Sym ~Trans"),
            law(2, "Trans ~Dense"),
            law(3, "Dense ~Refl"),
        ];
        assert!(entails(&others, &law(4, "Sym ~Refl")));
        assert!(!entails(&others, &law(5, "~Sym Refl")));
    }

    #[test]
    fn agrees_with_truth_table_on_random_sets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            // clauses over 6 variables keep the truth table small
            let random_law = |rng: &mut rand_chacha::ChaCha8Rng, seq| {
                let mask = rng.gen_range(1u32..64);
                let value = rng.gen_range(0u32..64) & mask;
                Law {
                    seq,
                    implicant: crate::lawmine::Implicant::new(mask, value).unwrap(),
                }
            };
            let k = rng.gen_range(0..8);
            let others: Vec<Law> = (0..k).map(|i| random_law(&mut rng, i)).collect();
            let target = random_law(&mut rng, 99);
            assert_eq!(
                entails(&others, &target),
                entails_by_truth_table(&others, &target),
                "{others:?} ⊨ {target:?}"
            );
        }
    }
}
