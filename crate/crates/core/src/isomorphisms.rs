//! Equivariant coordinate models of the two smallest integral modules:
//! the rank-8 diagonal module as 2x2x2 integer cubes, and the rank-20
//! binarion module as the third exterior power of a rank-6 lattice, with
//! the generator images in SL6(Z).

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freudenthal::{FreudenthalElement, GroupGenerator};
use crate::jordan::{JordanElement, JordanKind};
use crate::scalar::Scalar;
use crate::structure::JordanMove;

type MInt = FreudenthalElement<BigInt>;

pub type Mat2 = [[BigInt; 2]; 2];
pub type Mat3 = [[BigInt; 3]; 3];
pub type Mat6 = [[BigInt; 6]; 6];

fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut r: Mat3 = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = BigInt::from(0);
            for k in 0..3 {
                acc += &a[i][k] * &b[k][j];
            }
            r[i][j] = acc;
        }
    }
    r
}

fn mat3_det(m: &Mat3) -> BigInt {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn mat3_identity() -> Mat3 {
    let mut m: Mat3 = Default::default();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::from(1);
    }
    m
}

// --- the 2x2x2 cube model ----------------------------------------------

/// A 2x2x2 integer cube, indexed c\[i\]\[j\]\[k\] matching the tensor
/// basis e_i (x) e_j (x) e_k (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    pub c: [[[BigInt; 2]; 2]; 2],
}

impl Cube {
    pub fn zero() -> Self {
        Cube { c: Default::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(|(_, v)| v.is_zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = ([usize; 3], &BigInt)> {
        self.c.iter().enumerate().flat_map(move |(i, pl)| {
            pl.iter().enumerate().flat_map(move |(j, row)| {
                row.iter().enumerate().map(move |(k, v)| ([i, j, k], v))
            })
        })
    }

    /// Serialized with the vertex labeling of the slicing construction:
    /// the JSON nesting \[m\]\[n\]\[p\] stores c\[p\]\[n\]\[m\], so the
    /// first JSON plane reads [[a, e], [c, g]] and the second [[b, f], [d, h]]
    /// for the front/back slices M1 = [[a,b],[c,d]], N1 = [[e,f],[g,h]].
    pub fn to_json(&self) -> Value {
        let mut out = vec![vec![vec![Value::Null; 2]; 2]; 2];
        for ([i, j, k], v) in self.iter() {
            out[k][j][i] = Scalar::to_json(v);
        }
        json!({ "cube": out })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_object()
            .and_then(|o| o.get("cube"))
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"cube\" array".into()))?;
        let mut cube = Cube::zero();
        for (m, plane) in arr.iter().enumerate() {
            let plane = plane
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("cube must be 2x2x2".into()))?;
            for (n, row) in plane.iter().enumerate() {
                let row = row
                    .as_array()
                    .filter(|r| r.len() == 2)
                    .ok_or_else(|| Error::Parse("cube must be 2x2x2".into()))?;
                for (p, val) in row.iter().enumerate() {
                    if m > 1 {
                        return Err(Error::Parse("cube must be 2x2x2".into()));
                    }
                    cube.c[p][n][m] = BigInt::from_json(val)?;
                }
            }
        }
        Ok(cube)
    }
}

/// Positions of the module coordinates inside the cube: alpha at the
/// (0,0,0) corner, beta opposite, a_i at the three corners sharing only
/// axis i with alpha, b_i adjacent to alpha along axis i.
const CUBE_SLOTS: [( [usize; 3], usize); 8] = [
    ([0, 0, 0], 0), // alpha
    ([1, 1, 1], 1), // beta
    ([0, 1, 1], 2), // a1
    ([1, 0, 1], 3), // a2
    ([1, 1, 0], 4), // a3
    ([1, 0, 0], 5), // b1
    ([0, 1, 0], 6), // b2
    ([0, 0, 1], 7), // b3
];

/// The basis correspondence between the rank-8 diagonal module and cubes.
pub fn to_cube(x: &MInt) -> Result<Cube> {
    if x.kind() != JordanKind::Diag3 {
        return Err(Error::KindMismatch("Diag3", x.kind().name()));
    }
    let coords = x.to_coords();
    let mut cube = Cube::zero();
    for ([i, j, k], slot) in CUBE_SLOTS {
        cube.c[i][j][k] = coords[slot].clone();
    }
    Ok(cube)
}

pub fn from_cube(cube: &Cube) -> MInt {
    let mut coords = vec![BigInt::from(0); 8];
    for ([i, j, k], slot) in CUBE_SLOTS {
        coords[slot] = cube.c[i][j][k].clone();
    }
    MInt::from_coords(JordanKind::Diag3, &coords).expect("rank 8 coordinates")
}

/// The action of a triple of 2x2 matrices on the cube (one factor per
/// tensor axis).
pub fn apply_cube_triple(m: &[Mat2; 3], cube: &Cube) -> Cube {
    let mut out = Cube::zero();
    for ([i, j, k], _) in CUBE_SLOTS {
        let mut acc = BigInt::from(0);
        for ([p, q, r], v) in cube.iter() {
            if v.is_zero() {
                continue;
            }
            acc += &m[0][i][p] * &m[1][j][q] * &m[2][k][r] * v;
        }
        out.c[i][j][k] = acc;
    }
    out
}

fn is_pm_identity(s: &crate::structure::StructureMap<BigInt>) -> Option<bool> {
    // Some(true) for +Id, Some(false) for -Id, None otherwise.
    let kind = s.kind();
    let mut sign = None;
    for i in 0..kind.dim() {
        let b = JordanElement::basis_element(kind, i);
        let img = s.apply(&b).ok()?;
        if img == b {
            if sign == Some(false) {
                return None;
            }
            sign = Some(true);
        } else if img == b.neg() {
            if sign == Some(true) {
                return None;
            }
            sign = Some(false);
        } else {
            return None;
        }
    }
    sign
}

/// Generator images for the cube model (modulo the Klein four-group of
/// simultaneous sign changes): phi and psi map to triples of elementary
/// matrices, T(±Id) to ±(I, I, I). Other structure data has no image here.
pub fn cube_generator_image(g: &GroupGenerator<BigInt>) -> Result<[Mat2; 3]> {
    let unit = |t: &BigInt, upper: bool| -> Mat2 {
        let one = BigInt::from(1);
        let zero = BigInt::from(0);
        if upper {
            [[one.clone(), t.clone()], [zero, one]]
        } else {
            [[one.clone(), zero], [t.clone(), one]]
        }
    };
    match g {
        GroupGenerator::Phi(c) if c.kind() == JordanKind::Diag3 => {
            let d = c.diag();
            Ok([unit(&d[0], true), unit(&d[1], true), unit(&d[2], true)])
        }
        GroupGenerator::Psi(d) if d.kind() == JordanKind::Diag3 => {
            let dd = d.diag();
            Ok([unit(&dd[0], false), unit(&dd[1], false), unit(&dd[2], false)])
        }
        GroupGenerator::Struct(s) if s.kind() == JordanKind::Diag3 => match is_pm_identity(s) {
            Some(sign) => {
                let v = BigInt::from(if sign { 1 } else { -1 });
                let m = [
                    [v.clone(), BigInt::from(0)],
                    [BigInt::from(0), v],
                ];
                Ok([m.clone(), m.clone(), m])
            }
            None => Err(Error::Precondition(
                "only T(±Id) structure generators have a cube image".into(),
            )),
        },
        GroupGenerator::Tau => Err(Error::Precondition(
            "tau has no direct cube image; use the phi psi phi word".into(),
        )),
        _ => Err(Error::KindMismatch("Diag3", "other")),
    }
}

// --- the exterior-power model -------------------------------------------

/// A vector in the third exterior power of the rank-6 lattice, in the
/// 20-element basis: e1^e2^e3, f1^f2^f3, then e_i ^ f_j* (row-major i, j),
/// then f_i ^ e_j*, with the dual pairs e_j* = e_{j+1} ^ e_{j+2} and
/// f_j* = f_{j+1} ^ f_{j+2} taken cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeElement {
    pub coords: [BigInt; 20],
}

impl WedgeElement {
    pub fn zero() -> Self {
        WedgeElement { coords: Default::default() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "coords": self.coords.iter().map(Scalar::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_object()
            .and_then(|o| o.get("coords"))
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"coords\" array".into()))?;
        if arr.len() != 20 {
            return Err(Error::Parse("wedge vector has 20 coordinates".into()));
        }
        let coords: Vec<BigInt> = arr.iter().map(BigInt::from_json).collect::<Result<_>>()?;
        Ok(WedgeElement { coords: coords.try_into().unwrap() })
    }
}

/// Factor triples of the 20 basis monomials over the lattice basis
/// (e1, e2, e3, f1, f2, f3) = indices 0..6, in the written order.
fn wedge_monomials() -> [[usize; 3]; 20] {
    let mut out = [[0usize; 3]; 20];
    out[0] = [0, 1, 2];
    out[1] = [3, 4, 5];
    let mut idx = 2;
    for i in 0..3 {
        for j in 0..3 {
            // e_i ^ f_j* = e_i ^ f_{j+1} ^ f_{j+2}
            out[idx] = [i, 3 + (j + 1) % 3, 3 + (j + 2) % 3];
            idx += 1;
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            // f_i ^ e_j* = f_i ^ e_{j+1} ^ e_{j+2}
            out[idx] = [3 + i, (j + 1) % 3, (j + 2) % 3];
            idx += 1;
        }
    }
    out
}

/// (sorted triple, parity sign) of a monomial.
fn canonical(t: [usize; 3]) -> ([usize; 3], i8) {
    let mut v = t;
    let mut sign = 1i8;
    for i in 0..3 {
        for j in (i + 1..3).rev() {
            if v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
            }
        }
    }
    ([v[0], v[1], v[2]], sign)
}

/// The action of a 6x6 matrix on the exterior cube, computed through the
/// exterior-power rule with 3x3 minors.
pub fn apply_wedge(g: &Mat6, w: &WedgeElement) -> WedgeElement {
    let monomials = wedge_monomials();
    // map sorted triple -> (basis index, sign)
    let mut lookup = std::collections::BTreeMap::new();
    for (idx, m) in monomials.iter().enumerate() {
        let (s, sign) = canonical(*m);
        lookup.insert(s, (idx, sign));
    }
    let mut out = WedgeElement::zero();
    for (idx, m) in monomials.iter().enumerate() {
        let c = &w.coords[idx];
        if c.is_zero() {
            continue;
        }
        // (g v_p) ^ (g v_q) ^ (g v_r) expanded over sorted triples
        let [p, q, r] = *m;
        for a in 0..6 {
            for b in a + 1..6 {
                for d in b + 1..6 {
                    let minor = &g[a][p] * (&g[b][q] * &g[d][r] - &g[b][r] * &g[d][q])
                        - &g[a][q] * (&g[b][p] * &g[d][r] - &g[b][r] * &g[d][p])
                        + &g[a][r] * (&g[b][p] * &g[d][q] - &g[b][q] * &g[d][p]);
                    if minor.is_zero() {
                        continue;
                    }
                    let (tgt, sign) = lookup[&[a, b, d]];
                    let contrib = c * minor * BigInt::from(sign as i64);
                    out.coords[tgt] = &out.coords[tgt] + contrib;
                }
            }
        }
    }
    out
}

/// theta: the basis correspondence between the rank-20 binarion module
/// (through its 3x3 matrix model) and the exterior cube.
pub fn to_wedge(x: &MInt) -> Result<WedgeElement> {
    if x.kind() != JordanKind::H3B {
        return Err(Error::KindMismatch("H3B", x.kind().name()));
    }
    let ma = x.a.to_matrix3()?;
    let mb = x.b.to_matrix3()?;
    let mut w = WedgeElement::zero();
    w.coords[0] = x.alpha.clone();
    w.coords[1] = x.beta.clone();
    for i in 0..3 {
        for j in 0..3 {
            w.coords[2 + 3 * i + j] = ma[i][j].clone();
            w.coords[11 + 3 * i + j] = mb[i][j].clone();
        }
    }
    Ok(w)
}

pub fn from_wedge(w: &WedgeElement) -> MInt {
    let mut ma: Mat3 = Default::default();
    let mut mb: Mat3 = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            ma[i][j] = w.coords[2 + 3 * i + j].clone();
            mb[i][j] = w.coords[11 + 3 * i + j].clone();
        }
    }
    FreudenthalElement {
        alpha: w.coords[0].clone(),
        beta: w.coords[1].clone(),
        a: JordanElement::from_matrix3(&ma),
        b: JordanElement::from_matrix3(&mb),
    }
}

/// Translate a structure-map move into the matrix-model pair (A, B) acting
/// by M -> A M B^{-1}; the transpose coset has no such pair.
fn eta_pair(m: &JordanMove<BigInt>) -> Result<(Mat3, Mat3)> {
    let id = mat3_identity();
    match m {
        JordanMove::Permute(p) => {
            let mut a: Mat3 = Default::default();
            for i in 0..3 {
                a[p.0[i]][i] = BigInt::from(1);
            }
            Ok((a.clone(), a))
        }
        JordanMove::DiagUnits(u) => {
            // unit (p_i, q_i) scales row i by p_i and column j by q_j
            let mut a = id.clone();
            let mut binv = id.clone();
            for i in 0..3 {
                a[i][i] = u[i].coord(0).clone();
                binv[i][i] = u[i].coord(1).clone();
            }
            // B^{-1} = diag(q) requires diag(q) invertible over Z: q_i = ±1
            let mut b = id;
            for i in 0..3 {
                b[i][i] = BigInt::from(1).div_exact(&binv[i][i]).ok_or_else(|| {
                    Error::Precondition("non-unimodular structure data".into())
                })?;
            }
            Ok((a, b))
        }
        JordanMove::Congruence { i, j, c } => {
            let mut a = id.clone();
            a[*i][*j] = c.coord(0).clone();
            let mut b = id;
            b[*j][*i] = -c.coord(1).clone();
            Ok((a, b))
        }
        JordanMove::Transpose => Err(Error::Precondition(
            "the transpose coset lies outside the connected part".into(),
        )),
        JordanMove::DiagScale(_) => Err(Error::KindMismatch("H3B", "Diag3")),
    }
}

/// Generator images in SL6(Z): phi(A) and psi(B) map to block unipotent
/// matrices, eta(A, B) to diag((det B) A, (det A) B). The transpose coset
/// element T(t) is excluded (its action is not induced from SL6).
pub fn wedge_generator_image(g: &GroupGenerator<BigInt>) -> Result<Mat6> {
    let mut out: Mat6 = Default::default();
    let set_block = |out: &mut Mat6, r: usize, c: usize, m: &Mat3| {
        for i in 0..3 {
            for j in 0..3 {
                out[r + i][c + j] = m[i][j].clone();
            }
        }
    };
    let id = mat3_identity();
    match g {
        GroupGenerator::Phi(c) if c.kind() == JordanKind::H3B => {
            let m = JordanElement::to_matrix3(c)?;
            set_block(&mut out, 0, 0, &id);
            set_block(&mut out, 3, 3, &id);
            set_block(&mut out, 0, 3, &m);
            Ok(out)
        }
        GroupGenerator::Psi(d) if d.kind() == JordanKind::H3B => {
            let m = JordanElement::to_matrix3(d)?;
            set_block(&mut out, 0, 0, &id);
            set_block(&mut out, 3, 3, &id);
            set_block(&mut out, 3, 0, &m);
            Ok(out)
        }
        GroupGenerator::Struct(s) if s.kind() == JordanKind::H3B => {
            let mut a = mat3_identity();
            let mut b = mat3_identity();
            for m in s.moves() {
                let (ma, mb) = eta_pair(m)?;
                a = mat3_mul(&ma, &a);
                b = mat3_mul(&mb, &b);
            }
            let (da, db) = (mat3_det(&a), mat3_det(&b));
            if Scalar::abs(&da) != BigInt::from(1) || Scalar::abs(&db) != BigInt::from(1) {
                return Err(Error::Precondition("non-unimodular structure data".into()));
            }
            let scaled_a: Mat3 = a.map(|row| row.map(|v| v * &db));
            let scaled_b: Mat3 = b.map(|row| row.map(|v| v * &da));
            set_block(&mut out, 0, 0, &scaled_a);
            set_block(&mut out, 3, 3, &scaled_b);
            Ok(out)
        }
        GroupGenerator::Tau => Err(Error::Precondition(
            "tau has no direct image; use the phi psi phi word".into(),
        )),
        _ => Err(Error::KindMismatch("H3B", "other")),
    }
}

/// The transported action of the index-two coset element T(t): the matrix
/// blocks of both Jordan slots transpose in place. Kept out of the SL6
/// image map; provided so equivariance tests can cover the full group.
pub fn wedge_transpose_action(w: &WedgeElement) -> WedgeElement {
    let mut out = w.clone();
    for i in 0..3 {
        for j in 0..3 {
            out.coords[2 + 3 * i + j] = w.coords[2 + 3 * j + i].clone();
            out.coords[11 + 3 * i + j] = w.coords[11 + 3 * j + i].clone();
        }
    }
    out
}
