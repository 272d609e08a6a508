//! Built-in identity suites, one per module, runnable from the CLI. Each
//! check draws its randomness from the given seed and reports exact
//! pass/fail with the name of the identity it exercises.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::composition::CompositionElement;
use crate::cubes;
use crate::freudenthal::{FreudenthalElement, GroupGenerator};
use crate::isomorphisms;
use crate::jordan::{JordanElement, JordanKind};
use crate::random::{all_algebras, random_element, random_unit_move, random_word};
use crate::reduction;
use crate::scalar::{gcd_slice, Scalar};
use crate::structure;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const SUITES: [&str; 7] = [
    "composition",
    "jordan",
    "structure",
    "freudenthal",
    "reduction",
    "isomorphisms",
    "cubes",
];

fn check(
    out: &mut Vec<CheckResult>,
    suite: &'static str,
    name: &'static str,
    mut f: impl FnMut() -> std::result::Result<(), String>,
) {
    let (passed, detail) = match f() {
        Ok(()) => (true, String::new()),
        Err(d) => (false, d),
    };
    out.push(CheckResult { suite, name, passed, detail });
}

fn composition_suite(seed: u64, out: &mut Vec<CheckResult>) {
    let suite = "composition";
    check(out, suite, "norm composes: n(xy) = n(x) n(y)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in all_algebras() {
            for _ in 0..800 {
                let x = CompositionElement::<BigInt>::random(&mut rng, alg, 10);
                let y = CompositionElement::random(&mut rng, alg, 10);
                if x.mul(&y).norm() != x.norm().mul(&y.norm()) {
                    return Err(format!("failed in {:?}", alg));
                }
            }
        }
        Ok(())
    });
    check(out, suite, "conjugation: x conj(x) = n(x), x + conj(x) = t(x)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        for alg in all_algebras() {
            for _ in 0..800 {
                let x = CompositionElement::<BigInt>::random(&mut rng, alg, 10);
                if x.mul(&x.conj()) != CompositionElement::from_scalar(alg, &x.norm())
                    || x.add(&x.conj()) != CompositionElement::from_scalar(alg, &x.trace())
                {
                    return Err(format!("failed in {:?}", alg));
                }
            }
        }
        Ok(())
    });
    check(out, suite, "octonions alternative, witness non-associative", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let o = crate::composition::Algebra::O;
        for _ in 0..500 {
            let x = CompositionElement::<BigInt>::random(&mut rng, o, 8);
            let y = CompositionElement::random(&mut rng, o, 8);
            if x.mul(&x).mul(&y) != x.mul(&x.mul(&y)) || y.mul(&x).mul(&x) != y.mul(&x.mul(&x)) {
                return Err("alternative law failed".into());
            }
        }
        let e = |k| CompositionElement::<BigInt>::basis_unit(o, k);
        if e(4).mul(&e(1)).mul(&e(6)) == e(4).mul(&e(1).mul(&e(6))) {
            return Err("associative witness unexpectedly passed".into());
        }
        Ok(())
    });
}

fn jordan_suite(seed: u64, out: &mut Vec<CheckResult>) {
    let suite = "jordan";
    check(out, suite, "adjoint identity (A#)# = N(A) A", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        for kind in JordanKind::ALL {
            for _ in 0..400 {
                let a = JordanElement::<BigInt>::random(&mut rng, kind, 7);
                if a.sharp().sharp() != a.scale(&a.norm()) {
                    return Err(format!("failed in {:?}", kind));
                }
            }
        }
        Ok(())
    });
    check(out, suite, "trace of adjoint: tr(A#) = S(A)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
        for kind in JordanKind::ALL {
            for _ in 0..400 {
                let a = JordanElement::<BigInt>::random(&mut rng, kind, 7);
                if a.sharp().trace() != a.spur() {
                    return Err(format!("failed in {:?}", kind));
                }
            }
        }
        Ok(())
    });
    check(out, suite, "cubic polynomial X^3 - tr X^2 + S X - N = 0 over Rat", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 5);
        for kind in JordanKind::ALL {
            for _ in 0..40 {
                let x = JordanElement::<BigRational>::random(&mut rng, kind, 4);
                let x2 = x.jordan_product(&x);
                let lhs = x2
                    .jordan_product(&x)
                    .sub(&x2.scale(&x.trace()))
                    .add(&x.scale(&x.spur()))
                    .sub(&JordanElement::unit(kind).scale(&x.norm()));
                if !lhs.is_zero() {
                    return Err(format!("failed in {:?}", kind));
                }
            }
        }
        Ok(())
    });
}

fn structure_suite(seed: u64, out: &mut Vec<CheckResult>) {
    let suite = "structure";
    check(out, suite, "moves: integrality, exact multiplier, adjoint contract", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 6);
        for kind in JordanKind::ALL {
            for _ in 0..250 {
                let mv = random_unit_move(&mut rng, kind, 5);
                let x = JordanElement::<BigInt>::random(&mut rng, kind, 6);
                let y = JordanElement::random(&mut rng, kind, 6);
                if mv.apply(&x).norm() != x.norm().mul(&mv.multiplier()) {
                    return Err(format!("multiplier failed for {:?}", kind));
                }
                if mv.apply(&x).trace_form(&y) != x.trace_form(&mv.adjoint().apply(&y)) {
                    return Err(format!("adjoint failed for {:?}", kind));
                }
            }
        }
        Ok(())
    });
    check(out, suite, "smith form: replay, divisibility chain, gcd certificate", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 7);
        for kind in JordanKind::SMITH {
            for _ in 0..80 {
                let a = JordanElement::<BigInt>::random(&mut rng, kind, 8);
                let (d, w) = structure::smith_normal_form(&a).map_err(|e| e.to_string())?;
                let replayed = w.apply(&a).map_err(|e| e.to_string())?;
                if replayed.diag() != &d.d || !replayed.is_diagonal() {
                    return Err("witness replay mismatch".into());
                }
                if structure::invariant_factors(&a).map_err(|e| e.to_string())?.d != d.d {
                    return Err("invariant factor certificate failed".into());
                }
            }
        }
        Ok(())
    });
}

fn freudenthal_suite(seed: u64, out: &mut Vec<CheckResult>) {
    let suite = "freudenthal";
    check(out, suite, "tau^2 = -Id", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 8);
        for kind in JordanKind::ALL {
            for _ in 0..200 {
                let x = random_element(&mut rng, kind, 6);
                let t = GroupGenerator::Tau.apply(&x).map_err(|e| e.to_string())?;
                let tt = GroupGenerator::Tau.apply(&t).map_err(|e| e.to_string())?;
                if tt != x.neg() {
                    return Err(format!("failed in {:?}", kind));
                }
            }
        }
        Ok(())
    });
    check(out, suite, "phi(-1) psi(1) phi(-1) = tau", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 9);
        for kind in JordanKind::ALL {
            let unit = JordanElement::<BigInt>::unit(kind);
            for _ in 0..200 {
                let x = random_element(&mut rng, kind, 6);
                let mut y = x.clone();
                for g in [
                    GroupGenerator::Phi(unit.neg()),
                    GroupGenerator::Psi(unit.clone()),
                    GroupGenerator::Phi(unit.neg()),
                ] {
                    y = g.apply(&y).map_err(|e| e.to_string())?;
                }
                if y != GroupGenerator::Tau.apply(&x).map_err(|e| e.to_string())? {
                    return Err(format!("failed in {:?}", kind));
                }
            }
        }
        Ok(())
    });
    check(out, suite, "words preserve the symplectic and quartic forms", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 10);
        for kind in JordanKind::ALL {
            for _ in 0..60 {
                let x = random_element(&mut rng, kind, 3);
                let y = random_element(&mut rng, kind, 3);
                let w = random_word(&mut rng, kind, 6, 2);
                let (xw, yw) = (
                    w.apply(&x).map_err(|e| e.to_string())?,
                    w.apply(&y).map_err(|e| e.to_string())?,
                );
                if xw.symplectic(&yw) != x.symplectic(&y) || xw.quartic_qprime() != x.quartic_qprime()
                {
                    return Err(format!("failed in {:?}", kind));
                }
            }
        }
        Ok(())
    });
    check(out, suite, "gradient identity: d q'/dx_i / 2 = -{T(x,x,x), e_i}", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 11);
        for kind in [JordanKind::Diag3, JordanKind::H3B] {
            for _ in 0..20 {
                let x = random_element(&mut rng, kind, 3);
                let t = x.t_xxx();
                for i in 0..FreudenthalElement::<BigInt>::dim(kind) {
                    let e = FreudenthalElement::basis_element(kind, i);
                    let qp = |k: i64| x.add(&e.scale(&BigInt::from(k))).quartic_qprime();
                    let d1 = (BigInt::from(8) * (qp(1) - qp(-1)) - (qp(2) - qp(-2))) / BigInt::from(12);
                    if Scalar::div_exact(&d1, &BigInt::from(2)).unwrap() != t.symplectic(&e).neg() {
                        return Err(format!("failed in {:?} coord {}", kind, i));
                    }
                }
            }
        }
        Ok(())
    });
}

fn reduction_suite(seed: u64, out: &mut Vec<CheckResult>) {
    let suite = "reduction";
    check(out, suite, "diagonal reduction: replay, gcd, divisibility", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 12);
        for kind in JordanKind::INTEGRAL {
            for _ in 0..60 {
                let x = random_element(&mut rng, kind, 5);
                if x.is_zero() {
                    continue;
                }
                let red = reduction::reduce_diagonal(&x).map_err(|e| e.to_string())?;
                if red.witness.apply(&x).map_err(|e| e.to_string())? != red.element() {
                    return Err("witness replay mismatch".into());
                }
                if red.alpha != gcd_slice(&x.to_coords()) {
                    return Err("alpha is not the gcd".into());
                }
            }
        }
        Ok(())
    });
    check(out, suite, "projectivity pair with gcd T = 2", || {
        for kind in JordanKind::INTEGRAL {
            let x1 = FreudenthalElement::<BigInt>::diagonal_i64(kind, 1, 2, [1, 1, 2]);
            let x2 = FreudenthalElement::<BigInt>::diagonal_i64(kind, 1, 2, [1, 2, 2]);
            if !reduction::is_projective(&x1).map_err(|e| e.to_string())?
                || reduction::is_projective(&x2).map_err(|e| e.to_string())?
            {
                return Err(format!("failed in {:?}", kind));
            }
        }
        Ok(())
    });
    check(out, suite, "projective canonical form determined by q'", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 13);
        for kind in JordanKind::SMITH {
            for _ in 0..10 {
                let k0 = rng.gen_range(-4i64..=4);
                let eps0 = rng.gen_range(0..2i64);
                let x0 = FreudenthalElement::<BigInt>::diagonal_i64(kind, 1, eps0, [1, 1, k0]);
                if x0.rank() < 3 {
                    continue;
                }
                let w = random_word(&mut rng, kind, 8, 2);
                let x = w.apply(&x0).map_err(|e| e.to_string())?;
                let (eps, k, _) =
                    reduction::projective_canonicalize(&x).map_err(|e| e.to_string())?;
                if (eps as i64, k) != (eps0, BigInt::from(k0)) {
                    return Err(format!("canonical data drifted in {:?}", kind));
                }
            }
        }
        Ok(())
    });
}

fn isomorphisms_suite(seed: u64, out: &mut Vec<CheckResult>) {
    let suite = "isomorphisms";
    check(out, suite, "cube equivariance theta(g v) = theta'(g) theta(v)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 14);
        for _ in 0..300 {
            let v = random_element(&mut rng, JordanKind::Diag3, 5);
            let g = if rng.gen_bool(0.5) {
                GroupGenerator::Phi(JordanElement::random(&mut rng, JordanKind::Diag3, 4))
            } else {
                GroupGenerator::Psi(JordanElement::random(&mut rng, JordanKind::Diag3, 4))
            };
            let img = isomorphisms::cube_generator_image(&g).map_err(|e| e.to_string())?;
            let lhs = isomorphisms::to_cube(&g.apply(&v).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let rhs = isomorphisms::apply_cube_triple(
                &img,
                &isomorphisms::to_cube(&v).map_err(|e| e.to_string())?,
            );
            if lhs != rhs {
                return Err("cube equivariance failed".into());
            }
        }
        Ok(())
    });
    check(out, suite, "wedge equivariance with SL6 images", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 15);
        for _ in 0..150 {
            let v = random_element(&mut rng, JordanKind::H3B, 4);
            let g = if rng.gen_bool(0.5) {
                GroupGenerator::Phi(JordanElement::random(&mut rng, JordanKind::H3B, 3))
            } else {
                GroupGenerator::Psi(JordanElement::random(&mut rng, JordanKind::H3B, 3))
            };
            let img = isomorphisms::wedge_generator_image(&g).map_err(|e| e.to_string())?;
            let lhs = isomorphisms::to_wedge(&g.apply(&v).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let rhs = isomorphisms::apply_wedge(
                &img,
                &isomorphisms::to_wedge(&v).map_err(|e| e.to_string())?,
            );
            if lhs != rhs {
                return Err("wedge equivariance failed".into());
            }
        }
        Ok(())
    });
}

fn cubes_suite(seed: u64, out: &mut Vec<CheckResult>) {
    let suite = "cubes";
    check(out, suite, "disc(R_i) = q'(x)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 16);
        for _ in 0..400 {
            let x = random_element(&mut rng, JordanKind::Diag3, 8);
            let qp = x.quartic_qprime();
            for f in cubes::rotation_forms(&x).map_err(|e| e.to_string())? {
                if f.discriminant() != qp {
                    return Err("discriminant mismatch".into());
                }
            }
        }
        Ok(())
    });
    check(out, suite, "slicing forms = rotational forms as multisets", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 17);
        for _ in 0..400 {
            let x = random_element(&mut rng, JordanKind::Diag3, 8);
            if !cubes::correspondence_check(&x).map_err(|e| e.to_string())? {
                return Err("correspondence failed".into());
            }
        }
        Ok(())
    });
}

/// Run the named suites (all of them when `suites` is empty).
pub fn run_selftest(suites: &[String], seed: u64) -> Vec<CheckResult> {
    let want = |name: &str| suites.is_empty() || suites.iter().any(|s| s == name);
    let mut out = Vec::new();
    if want("composition") {
        composition_suite(seed, &mut out);
    }
    if want("jordan") {
        jordan_suite(seed, &mut out);
    }
    if want("structure") {
        structure_suite(seed, &mut out);
    }
    if want("freudenthal") {
        freudenthal_suite(seed, &mut out);
    }
    if want("reduction") {
        reduction_suite(seed, &mut out);
    }
    if want("isomorphisms") {
        isomorphisms_suite(seed, &mut out);
    }
    if want("cubes") {
        cubes_suite(seed, &mut out);
    }
    out
}
