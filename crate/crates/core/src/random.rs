//! Seeded random elements, moves, and generator words. All randomness in
//! the crate flows through a caller-supplied RNG so runs are reproducible.

use num_bigint::BigInt;
use rand::Rng;

use crate::composition::{Algebra, CompositionElement};
use crate::freudenthal::{FreudenthalElement, GroupGenerator, GroupWord};
use crate::jordan::{JordanElement, JordanKind};
use crate::structure::{JordanMove, Perm3, StructureMap};

pub fn random_perm<R: Rng + ?Sized>(rng: &mut R) -> Perm3 {
    let mut p = [0, 1, 2];
    for i in (1..3).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    Perm3(p)
}

fn sign<R: Rng + ?Sized>(rng: &mut R) -> BigInt {
    BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 })
}

/// A random integral move with multiplier +1 or -1.
pub fn random_unit_move<R: Rng + ?Sized>(
    rng: &mut R,
    kind: JordanKind,
    height: u32,
) -> JordanMove<BigInt> {
    if kind.is_diagonal_only() {
        return if rng.gen_bool(0.5) {
            JordanMove::Permute(random_perm(rng))
        } else {
            JordanMove::DiagScale([sign(rng), sign(rng), sign(rng)])
        };
    }
    let alg = kind.off_algebra();
    match rng.gen_range(0..4) {
        0 => JordanMove::Permute(random_perm(rng)),
        1 => {
            let i = rng.gen_range(0..3);
            let j = (i + 1 + rng.gen_range(0..2)) % 3;
            JordanMove::Congruence {
                i,
                j,
                c: CompositionElement::random(rng, alg, height),
            }
        }
        2 => {
            let units = [
                CompositionElement::from_scalar(alg, &sign(rng)),
                CompositionElement::from_scalar(alg, &sign(rng)),
                CompositionElement::from_scalar(alg, &sign(rng)),
            ];
            JordanMove::DiagUnits(units)
        }
        _ => {
            if kind == JordanKind::H3B && rng.gen_bool(0.5) {
                JordanMove::Transpose
            } else {
                JordanMove::Permute(random_perm(rng))
            }
        }
    }
}

/// A random norm-preserving-or-sign structure map (multiplier ±1).
pub fn random_unit_structure_map<R: Rng + ?Sized>(
    rng: &mut R,
    kind: JordanKind,
    moves: usize,
    height: u32,
) -> StructureMap<BigInt> {
    let list: Vec<_> = (0..moves).map(|_| random_unit_move(rng, kind, height)).collect();
    StructureMap::new(kind, list).expect("unit moves are valid")
}

/// A random generator with exact integral action.
pub fn random_generator<R: Rng + ?Sized>(
    rng: &mut R,
    kind: JordanKind,
    height: u32,
) -> GroupGenerator<BigInt> {
    match rng.gen_range(0..6) {
        0 | 1 => GroupGenerator::Phi(JordanElement::random(rng, kind, height)),
        2 | 3 => GroupGenerator::Psi(JordanElement::random(rng, kind, height)),
        4 => GroupGenerator::Tau,
        _ => GroupGenerator::Struct(random_unit_structure_map(rng, kind, 2, height)),
    }
}

/// A random word of `len` generators.
pub fn random_word<R: Rng + ?Sized>(
    rng: &mut R,
    kind: JordanKind,
    len: usize,
    height: u32,
) -> GroupWord<BigInt> {
    let mut w = GroupWord::identity();
    for _ in 0..len {
        w.push(random_generator(rng, kind, height));
    }
    w
}

/// A random module element with coordinates of the given height.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    kind: JordanKind,
    height: u32,
) -> FreudenthalElement<BigInt> {
    FreudenthalElement::random(rng, kind, height)
}

/// All algebras, for iteration in test harnesses.
pub fn all_algebras() -> [Algebra; 4] {
    [Algebra::F, Algebra::B, Algebra::H, Algebra::O]
}
