//! The two realizations of the three binary quadratic forms attached to an
//! integer cube: the slicing forms Q1, Q2, Q3 (front/back, left/right,
//! top/bottom 2x2 slices) and the rotational forms R1, R2, R3 read off the
//! quadratic covariants of the corresponding rank-8 module element. The two
//! triples coincide as multisets, and every form has discriminant q'.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freudenthal::FreudenthalElement;
use crate::isomorphisms::{from_cube, to_cube, Cube};
use crate::jordan::JordanKind;
use crate::scalar::{gcd_slice, Scalar};


type MInt = FreudenthalElement<BigInt>;

/// a x^2 + b xy + c y^2 over the integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BinaryQuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryQuadraticForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        BinaryQuadraticForm { a, b, c }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_primitive(&self) -> bool {
        gcd_slice(&[self.a.clone(), self.b.clone(), self.c.clone()]) == BigInt::from(1)
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": Scalar::to_json(&self.a),
            "b": Scalar::to_json(&self.b),
            "c": Scalar::to_json(&self.c),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("form must be a JSON object".into()))?;
        let field = |k: &str| {
            obj.get(k)
                .ok_or_else(|| Error::Parse(format!("missing {k:?}")))
                .and_then(BigInt::from_json)
        };
        Ok(BinaryQuadraticForm::new(field("a")?, field("b")?, field("c")?))
    }
}

/// Vertex labels (alpha, beta, a_i, b_i) of a cube: alpha and beta at
/// opposite corners (the rotation axis), a_i adjacent to beta, b_i adjacent
/// to alpha, with a_i opposite b_i. Bijective with the rank-8 module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledCube {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub a: [BigInt; 3],
    pub b: [BigInt; 3],
}

impl LabeledCube {
    pub fn from_element(x: &MInt) -> Result<Self> {
        if x.kind() != JordanKind::Diag3 {
            return Err(Error::KindMismatch("Diag3", x.kind().name()));
        }
        Ok(LabeledCube {
            alpha: x.alpha.clone(),
            beta: x.beta.clone(),
            a: x.a.diag().clone(),
            b: x.b.diag().clone(),
        })
    }

    pub fn element(&self) -> MInt {
        FreudenthalElement {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            a: crate::jordan::JordanElement::diagonal(JordanKind::Diag3, self.a.clone()),
            b: crate::jordan::JordanElement::diagonal(JordanKind::Diag3, self.b.clone()),
        }
    }

    pub fn cube(&self) -> Cube {
        to_cube(&self.element()).expect("diagonal element")
    }

    pub fn from_cube(c: &Cube) -> Self {
        Self::from_element(&from_cube(c)).expect("diagonal element")
    }
}

/// The three slicing forms Q_i(x, y) = -det(M_i x - N_i y), where
/// (M_1, N_1) slices along the first tensor axis, (M_2, N_2) along the
/// third, (M_3, N_3) along the second.
pub fn slicing_forms(cube: &Cube) -> [BinaryQuadraticForm; 3] {
    let c = &cube.c;
    // (M, N) pairs as in the labeled diagram: M1 = [[a,b],[c,d]] etc.
    let slices: [[[&BigInt; 2]; 4]; 3] = [
        // M1 = c[0][j][k], N1 = c[1][j][k]
        [
            [&c[0][0][0], &c[0][0][1]],
            [&c[0][1][0], &c[0][1][1]],
            [&c[1][0][0], &c[1][0][1]],
            [&c[1][1][0], &c[1][1][1]],
        ],
        // M2 = c[i][j][0], N2 = c[i][j][1]
        [
            [&c[0][0][0], &c[0][1][0]],
            [&c[1][0][0], &c[1][1][0]],
            [&c[0][0][1], &c[0][1][1]],
            [&c[1][0][1], &c[1][1][1]],
        ],
        // M3 = c[i][0][k] over (k, i), N3 = c[i][1][k]
        [
            [&c[0][0][0], &c[1][0][0]],
            [&c[0][0][1], &c[1][0][1]],
            [&c[0][1][0], &c[1][1][0]],
            [&c[0][1][1], &c[1][1][1]],
        ],
    ];
    slices.map(|s| {
        let [[m00, m01], [m10, m11], [n00, n01], [n10, n11]] = s;
        // -det(M x - N y) expanded
        let a = -(m00 * m11 - m01 * m10);
        let b = m00 * n11 + n00 * m11 - m01 * n10 - n01 * m10;
        let c = -(n00 * n11 - n01 * n10);
        BinaryQuadraticForm::new(a, b, c)
    })
}

/// Coefficient triples (a, b, c) of the rotational forms over any scalar
/// domain, including polynomial scalars in tests.
pub fn rotation_form_coeffs<S: Scalar>(x: &FreudenthalElement<S>) -> Result<[[S; 3]; 3]> {
    if x.kind() != JordanKind::Diag3 {
        return Err(Error::KindMismatch("Diag3", x.kind().name()));
    }
    let a = x.a.diag();
    let b = x.b.diag();
    let two = S::from_i64(2);
    let ab = a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]));
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        out.push([
            b[j].mul(&b[k]).sub(&x.alpha.mul(&a[i])),
            x.alpha.mul(&x.beta).add(&two.mul(&a[i]).mul(&b[i])).sub(&ab),
            a[j].mul(&a[k]).sub(&x.beta.mul(&b[i])),
        ]);
    }
    Ok(out.try_into().unwrap())
}

/// The rotational forms: the negated diagonal entries of
/// (alpha A - B#) x^2 - ((alpha beta - (A,B)) I + 2 A B) xy + (beta B - A#) y^2.
pub fn rotation_forms(x: &MInt) -> Result<[BinaryQuadraticForm; 3]> {
    let coeffs = rotation_form_coeffs(x)?;
    Ok(coeffs.map(|[a, b, c]| BinaryQuadraticForm::new(a, b, c)))
}

/// True iff the slicing forms of the cube of `x` and the rotational forms
/// of `x` agree as multisets (they do identically; the check pins the
/// vertex correspondence).
pub fn correspondence_check(x: &MInt) -> Result<bool> {
    let mut q = slicing_forms(&to_cube(x)?).to_vec();
    let mut r = rotation_forms(x)?.to_vec();
    q.sort();
    r.sort();
    Ok(q == r)
}
