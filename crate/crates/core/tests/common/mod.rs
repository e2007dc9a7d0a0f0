//! Helpers shared by the integration tests: a quantifier-by-quantifier
//! property evaluator kept independent of the library's bit-parallel one,
//! and random relation generation.

#![allow(dead_code)]

use rand::Rng;
use rellaws::{PropertyId, Relation};

/// Evaluates the defining first-order formula of `p` literally.
pub fn naive_holds(r: &Relation, p: PropertyId) -> bool {
    use PropertyId::*;
    let n = r.card();
    let u: Vec<usize> = (0..n).collect();
    let rel = |x: usize, y: usize| r.get(x, y);
    let all1 = |f: &dyn Fn(usize) -> bool| u.iter().all(|&x| f(x));
    let all2 = |f: &dyn Fn(usize, usize) -> bool| u.iter().all(|&x| u.iter().all(|&y| f(x, y)));
    let all3 = |f: &dyn Fn(usize, usize, usize) -> bool| {
        u.iter()
            .all(|&x| u.iter().all(|&y| u.iter().all(|&z| f(x, y, z))))
    };
    let all4 = |f: &dyn Fn(usize, usize, usize, usize) -> bool| {
        u.iter().all(|&w| {
            u.iter()
                .all(|&x| u.iter().all(|&y| u.iter().all(|&z| f(w, x, y, z))))
        })
    };
    let implies = |a: bool, b: bool| !a || b;
    match p {
        Empty => all2(&|x, y| !rel(x, y)),
        Univ => all2(&|x, y| rel(x, y)),
        Refl => all1(&|x| rel(x, x)),
        Irrefl => all1(&|x| !rel(x, x)),
        CoRefl => all2(&|x, y| implies(rel(x, y), x == y)),
        LfQuasiRefl => all2(&|x, y| implies(rel(x, y), rel(x, x))),
        RgQuasiRefl => all2(&|x, y| implies(rel(x, y), rel(y, y))),
        QuasiRefl => naive_holds(r, LfQuasiRefl) && naive_holds(r, RgQuasiRefl),
        Sym => all2(&|x, y| implies(rel(x, y), rel(y, x))),
        ASym => all2(&|x, y| implies(rel(x, y), !rel(y, x))),
        AntiSym => all2(&|x, y| implies(rel(x, y) && x != y, !rel(y, x))),
        SemiConnex => all2(&|x, y| rel(x, y) || rel(y, x) || x == y),
        Connex => all2(&|x, y| rel(x, y) || rel(y, x)),
        Trans => all3(&|x, y, z| implies(rel(x, y) && rel(y, z), rel(x, z))),
        AntiTrans => all3(&|x, y, z| implies(rel(x, y) && rel(y, z), !rel(x, z))),
        QuasiTrans => all3(&|x, y, z| {
            implies(
                rel(x, y) && !rel(y, x) && rel(y, z) && !rel(z, y),
                rel(x, z) && !rel(z, x),
            )
        }),
        RgEucl => all3(&|x, y, z| implies(rel(x, y) && rel(x, z), rel(y, z))),
        LfEucl => all3(&|x, y, z| implies(rel(y, x) && rel(z, x), rel(y, z))),
        SemiOrd1 => all4(&|w, x, y, z| {
            implies(
                rel(w, x) && !rel(x, y) && !rel(y, x) && rel(y, z),
                rel(w, z),
            )
        }),
        SemiOrd2 => all4(&|w, x, y, z| {
            implies(
                rel(x, y) && rel(y, z),
                rel(w, x) || rel(x, w) || rel(w, y) || rel(y, w) || rel(w, z) || rel(z, w),
            )
        }),
        RgSerial => all1(&|x| u.iter().any(|&y| rel(x, y))),
        LfSerial => all1(&|y| u.iter().any(|&x| rel(x, y))),
        Dense => all2(&|x, z| {
            u.iter()
                .any(|&y| implies(rel(x, z), rel(x, y) && rel(y, z)))
        }),
        IncTrans => all3(&|x, y, z| {
            implies(
                !rel(x, y) && !rel(y, x) && !rel(y, z) && !rel(z, y),
                !rel(x, z) && !rel(z, x),
            )
        }),
        LfUnique => all3(&|x1, x2, y| implies(rel(x1, y) && rel(x2, y), x1 == x2)),
        RgUnique => all3(&|x, y1, y2| implies(rel(x, y1) && rel(x, y2), y1 == y2)),
    }
}

/// A relation on `n` elements with a random density.
pub fn random_relation(rng: &mut impl Rng, n: usize) -> Relation {
    let density: f64 = rng.gen_range(0.0..=1.0);
    let mut r = Relation::empty(n).unwrap();
    for x in 0..n {
        for y in 0..n {
            r.set(x, y, rng.gen_bool(density));
        }
    }
    r
}
