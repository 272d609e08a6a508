//! Cubic Jordan algebras: the diagonal algebra and 3x3 Hermitian matrices
//! over a split composition algebra, with the cubic norm, traces, the sharp
//! (adjoint) map, its bilinearization, and element rank.
//!
//! Hermitian layout, with `off = (x, y, z)`:
//!
//! ```text
//!     [ a    z    ȳ ]
//! A = [ z̄    b    x ]
//!     [ y    x̄    c ]
//! ```
//!
//! so `x` sits opposite row/column 1, `y` opposite 2, `z` opposite 3, and the
//! (1,1) entry of the adjoint is `bc - n(x)`.

use rand::Rng;
use serde_json::{json, Value};

use crate::composition::{Algebra, CompositionElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JordanKind {
    Diag3,
    H3F,
    H3B,
    H3H,
    H3O,
}

impl JordanKind {
    pub const ALL: [JordanKind; 5] = [
        JordanKind::Diag3,
        JordanKind::H3F,
        JordanKind::H3B,
        JordanKind::H3H,
        JordanKind::H3O,
    ];

    /// Kinds whose integral module theory is developed here (Smith forms,
    /// reduction, orbit labels). H3F is excluded: its norm-preserving group
    /// is too small without square roots.
    pub const INTEGRAL: [JordanKind; 4] = [
        JordanKind::Diag3,
        JordanKind::H3B,
        JordanKind::H3H,
        JordanKind::H3O,
    ];

    /// Hermitian kinds admitting a Smith normal form over Int.
    pub const SMITH: [JordanKind; 3] = [JordanKind::H3B, JordanKind::H3H, JordanKind::H3O];

    pub fn off_algebra(self) -> Algebra {
        match self {
            JordanKind::Diag3 | JordanKind::H3F => Algebra::F,
            JordanKind::H3B => Algebra::B,
            JordanKind::H3H => Algebra::H,
            JordanKind::H3O => Algebra::O,
        }
    }

    pub fn is_diagonal_only(self) -> bool {
        matches!(self, JordanKind::Diag3)
    }

    pub fn dim(self) -> usize {
        match self {
            JordanKind::Diag3 => 3,
            _ => 3 + 3 * self.off_algebra().dim(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            JordanKind::Diag3 => "Diag3",
            JordanKind::H3F => "H3F",
            JordanKind::H3B => "H3B",
            JordanKind::H3H => "H3H",
            JordanKind::H3O => "H3O",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "Diag3" => Ok(JordanKind::Diag3),
            "H3F" => Ok(JordanKind::H3F),
            "H3B" => Ok(JordanKind::H3B),
            "H3H" => Ok(JordanKind::H3H),
            "H3O" => Ok(JordanKind::H3O),
            _ => Err(Error::Parse(format!("unknown jordan kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JordanElement<S> {
    kind: JordanKind,
    diag: [S; 3],
    off: [CompositionElement<S>; 3],
}

impl<S: Scalar> JordanElement<S> {
    pub fn new(kind: JordanKind, diag: [S; 3], off: [CompositionElement<S>; 3]) -> Result<Self> {
        let alg = kind.off_algebra();
        for o in &off {
            if o.algebra() != alg {
                return Err(Error::AlgebraMismatch(alg.name(), o.algebra().name()));
            }
        }
        if kind.is_diagonal_only() && off.iter().any(|o| !o.is_zero()) {
            return Err(Error::Precondition(
                "Diag3 elements carry no off-diagonal part".into(),
            ));
        }
        Ok(JordanElement { kind, diag, off })
    }

    pub fn diagonal(kind: JordanKind, diag: [S; 3]) -> Self {
        let alg = kind.off_algebra();
        JordanElement {
            kind,
            diag,
            off: [
                CompositionElement::zero(alg),
                CompositionElement::zero(alg),
                CompositionElement::zero(alg),
            ],
        }
    }

    pub fn diagonal_i64(kind: JordanKind, d: [i64; 3]) -> Self {
        Self::diagonal(kind, d.map(S::from_i64))
    }

    pub fn zero(kind: JordanKind) -> Self {
        Self::diagonal(kind, [S::zero(), S::zero(), S::zero()])
    }

    pub fn unit(kind: JordanKind) -> Self {
        Self::diagonal(kind, [S::one(), S::one(), S::one()])
    }

    pub fn kind(&self) -> JordanKind {
        self.kind
    }

    pub fn diag(&self) -> &[S; 3] {
        &self.diag
    }

    pub fn off(&self) -> &[CompositionElement<S>; 3] {
        &self.off
    }

    pub fn diag_mut(&mut self) -> &mut [S; 3] {
        &mut self.diag
    }

    pub fn off_mut(&mut self) -> &mut [CompositionElement<S>; 3] {
        debug_assert!(!self.kind.is_diagonal_only());
        &mut self.off
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().all(S::is_zero) && self.off.iter().all(CompositionElement::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.off.iter().all(CompositionElement::is_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> JordanElement<T> {
        JordanElement {
            kind: self.kind,
            diag: [f(&self.diag[0]), f(&self.diag[1]), f(&self.diag[2])],
            off: [self.off[0].map(f), self.off[1].map(f), self.off[2].map(f)],
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch(self.kind.name(), other.kind.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other).expect("mixed jordan kinds");
        JordanElement {
            kind: self.kind,
            diag: [
                self.diag[0].add(&other.diag[0]),
                self.diag[1].add(&other.diag[1]),
                self.diag[2].add(&other.diag[2]),
            ],
            off: [
                self.off[0].add(&other.off[0]),
                self.off[1].add(&other.off[1]),
                self.off[2].add(&other.off[2]),
            ],
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        JordanElement {
            kind: self.kind,
            diag: [self.diag[0].neg(), self.diag[1].neg(), self.diag[2].neg()],
            off: [self.off[0].neg(), self.off[1].neg(), self.off[2].neg()],
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        JordanElement {
            kind: self.kind,
            diag: [
                self.diag[0].mul(s),
                self.diag[1].mul(s),
                self.diag[2].mul(s),
            ],
            off: [
                self.off[0].scale(s),
                self.off[1].scale(s),
                self.off[2].scale(s),
            ],
        }
    }

    /// The cubic norm `N(A) = abc - a n(x) - b n(y) - c n(z) + t((xy)z)`.
    pub fn norm(&self) -> S {
        let [a, b, c] = &self.diag;
        let [x, y, z] = &self.off;
        let abc = a.mul(b).mul(c);
        let mut n = abc.sub(&a.mul(&x.norm()));
        n = n.sub(&b.mul(&y.norm()));
        n = n.sub(&c.mul(&z.norm()));
        n.add(&x.mul(y).mul(z).trace())
    }

    /// Linear trace `tr(A) = a + b + c`.
    pub fn trace(&self) -> S {
        self.diag[0].add(&self.diag[1]).add(&self.diag[2])
    }

    /// The quadratic form `S(A) = tr(A#) = bc + ca + ab - n(x) - n(y) - n(z)`.
    pub fn spur(&self) -> S {
        let [a, b, c] = &self.diag;
        let [x, y, z] = &self.off;
        b.mul(c)
            .add(&c.mul(a))
            .add(&a.mul(b))
            .sub(&x.norm())
            .sub(&y.norm())
            .sub(&z.norm())
    }

    /// The trace bilinear form `(A, B) = tr(A)tr(B) - S(A, B)`, which works
    /// out to the diagonal dot product plus the polarized norms of the off
    /// entries.
    pub fn trace_form(&self, other: &Self) -> S {
        self.check_same(other).expect("mixed jordan kinds");
        let mut t = S::zero();
        for i in 0..3 {
            t = t.add(&self.diag[i].mul(&other.diag[i]));
        }
        for i in 0..3 {
            t = t.add(&self.off[i].norm_pairing(&other.off[i]));
        }
        t
    }

    /// The quadratic adjoint. `(A#)# = N(A) A` certifies admissibility.
    pub fn sharp(&self) -> Self {
        let [a, b, c] = &self.diag;
        let [x, y, z] = &self.off;
        let diag = [
            b.mul(c).sub(&x.norm()),
            c.mul(a).sub(&y.norm()),
            a.mul(b).sub(&z.norm()),
        ];
        let off = [
            // new x slot: z̄ ȳ - a x
            z.conj().mul(&y.conj()).sub(&x.scale(a)),
            // new y slot: x̄ z̄ - b y
            x.conj().mul(&z.conj()).sub(&y.scale(b)),
            // new z slot: ȳ x̄ - c z
            y.conj().mul(&x.conj()).sub(&z.scale(c)),
        ];
        JordanElement {
            kind: self.kind,
            diag,
            off,
        }
    }

    /// Bilinearization of the sharp map: `A x B = (A+B)# - A# - B#`.
    pub fn cross(&self, other: &Self) -> Self {
        self.add(other).sharp().sub(&self.sharp()).sub(&other.sharp())
    }

    /// Doubled Jordan triple product `2{X, Y, Z}` (outer arguments X, Z),
    /// expressed through the trace form and the cross product so that it
    /// stays integral on Int elements.
    pub fn triple_doubled(x: &Self, y: &Self, z: &Self) -> Self {
        let xz_y = x.cross(z).cross(y);
        z.scale(&x.trace_form(y))
            .add(&x.scale(&z.trace_form(y)))
            .sub(&xz_y)
    }

    /// Element rank: 3 when N != 0, else 2 when the adjoint is nonzero,
    /// else 1 when the element is nonzero, else 0.
    pub fn rank(&self) -> u8 {
        if !self.norm().is_zero() {
            3
        } else if !self.sharp().is_zero() {
            2
        } else if !self.is_zero() {
            1
        } else {
            0
        }
    }

    /// Flattened coordinates: the three diagonal entries, then the off
    /// entries x, y, z in the composition-algebra coordinate order.
    pub fn to_coords(&self) -> Vec<S> {
        let mut v: Vec<S> = self.diag.to_vec();
        if !self.kind.is_diagonal_only() {
            for o in &self.off {
                v.extend(o.coords().iter().cloned());
            }
        }
        v
    }

    pub fn from_coords(kind: JordanKind, coords: &[S]) -> Result<Self> {
        if coords.len() != kind.dim() {
            return Err(Error::Parse(format!(
                "kind {} needs {} coordinates, got {}",
                kind.name(),
                kind.dim(),
                coords.len()
            )));
        }
        let diag = [coords[0].clone(), coords[1].clone(), coords[2].clone()];
        if kind.is_diagonal_only() {
            return Ok(Self::diagonal(kind, diag));
        }
        let alg = kind.off_algebra();
        let d = alg.dim();
        let off = [
            CompositionElement::new(alg, coords[3..3 + d].to_vec())?,
            CompositionElement::new(alg, coords[3 + d..3 + 2 * d].to_vec())?,
            CompositionElement::new(alg, coords[3 + 2 * d..3 + 3 * d].to_vec())?,
        ];
        Self::new(kind, diag, off)
    }

    /// The i-th standard basis element of the kind.
    pub fn basis_element(kind: JordanKind, i: usize) -> Self {
        let mut coords = vec![S::zero(); kind.dim()];
        coords[i] = S::one();
        Self::from_coords(kind, &coords).expect("basis index in range")
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, kind: JordanKind, height: u32) -> Self {
        let alg = kind.off_algebra();
        let diag = [
            S::random(rng, height),
            S::random(rng, height),
            S::random(rng, height),
        ];
        if kind.is_diagonal_only() {
            return Self::diagonal(kind, diag);
        }
        JordanElement {
            kind,
            diag,
            off: [
                CompositionElement::random(rng, alg, height),
                CompositionElement::random(rng, alg, height),
                CompositionElement::random(rng, alg, height),
            ],
        }
    }

    /// Canonical embedding of the diagonal algebra into H3F (same forms,
    /// different symmetry group); used for cross-checks.
    pub fn embed_diag3_in_h3f(&self) -> Result<JordanElement<S>> {
        if self.kind != JordanKind::Diag3 {
            return Err(Error::KindMismatch("Diag3", self.kind.name()));
        }
        Ok(JordanElement::diagonal(JordanKind::H3F, self.diag.clone()))
    }

    /// The 3x3 matrix model of H3B: binarion entries split into the two
    /// triangles of an ordinary matrix. A norm isometry onto 3x3 matrices
    /// with the determinant.
    pub fn to_matrix3(&self) -> Result<[[S; 3]; 3]> {
        if self.kind != JordanKind::H3B {
            return Err(Error::KindMismatch("H3B", self.kind.name()));
        }
        let [a, b, c] = &self.diag;
        let [x, y, z] = &self.off;
        // off slot w = (w_upper, w_lower): upper triangle gets w_upper.
        Ok([
            [a.clone(), z.coord(0).clone(), y.coord(1).clone()],
            [z.coord(1).clone(), b.clone(), x.coord(0).clone()],
            [y.coord(0).clone(), x.coord(1).clone(), c.clone()],
        ])
    }

    pub fn from_matrix3(m: &[[S; 3]; 3]) -> JordanElement<S> {
        let alg = Algebra::B;
        JordanElement {
            kind: JordanKind::H3B,
            diag: [m[0][0].clone(), m[1][1].clone(), m[2][2].clone()],
            off: [
                CompositionElement::new(alg, vec![m[1][2].clone(), m[2][1].clone()]).unwrap(),
                CompositionElement::new(alg, vec![m[2][0].clone(), m[0][2].clone()]).unwrap(),
                CompositionElement::new(alg, vec![m[0][1].clone(), m[1][0].clone()]).unwrap(),
            ],
        }
    }

    pub fn to_json(&self) -> Value {
        if self.kind.is_diagonal_only() {
            json!({
                "kind": self.kind.name(),
                "diag": self.diag.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            })
        } else {
            json!({
                "kind": self.kind.name(),
                "diag": self.diag.iter().map(Scalar::to_json).collect::<Vec<_>>(),
                "off": self.off.iter().map(CompositionElement::to_json).collect::<Vec<_>>(),
            })
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("jordan element must be a JSON object".into()))?;
        let kind = JordanKind::from_name(
            obj.get("kind")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("missing \"kind\" field".into()))?,
        )?;
        let diag_v = obj
            .get("diag")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"diag\" array".into()))?;
        if diag_v.len() != 3 {
            return Err(Error::Parse("\"diag\" must have three entries".into()));
        }
        let diag = [
            S::from_json(&diag_v[0])?,
            S::from_json(&diag_v[1])?,
            S::from_json(&diag_v[2])?,
        ];
        if kind.is_diagonal_only() {
            if obj.get("off").is_some_and(|o| {
                !o.as_array().is_some_and(|a| {
                    a.iter().all(|e| {
                        CompositionElement::<S>::from_json(e).map(|c| c.is_zero()).unwrap_or(false)
                    })
                })
            }) {
                return Err(Error::Parse("Diag3 elements carry no off part".into()));
            }
            return Ok(Self::diagonal(kind, diag));
        }
        let off_v = obj
            .get("off")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"off\" array".into()))?;
        if off_v.len() != 3 {
            return Err(Error::Parse("\"off\" must have three entries".into()));
        }
        let off = [
            CompositionElement::from_json(&off_v[0])?,
            CompositionElement::from_json(&off_v[1])?,
            CompositionElement::from_json(&off_v[2])?,
        ];
        Self::new(kind, diag, off)
    }
}

impl JordanElement<num_rational::BigRational> {
    /// The Jordan product `X • Y = (X x Y + tr(X)Y + tr(Y)X - S(X,Y) 1) / 2`.
    /// Division by 2 keeps this out of the Int API.
    pub fn jordan_product(&self, other: &Self) -> Self {
        use num_rational::BigRational;
        let half = BigRational::new(1.into(), 2.into());
        let s_xy = self
            .add(other)
            .spur()
            .sub(&self.spur())
            .sub(&other.spur());
        self.cross(other)
            .add(&other.scale(&self.trace()))
            .add(&self.scale(&other.trace()))
            .sub(&Self::unit(self.kind).scale(&s_xy))
            .scale(&half)
    }

    /// Jordan triple product `{X, Y, Z}` over the rationals.
    pub fn triple(x: &Self, y: &Self, z: &Self) -> Self {
        use num_rational::BigRational;
        let half = BigRational::new(1.into(), 2.into());
        Self::triple_doubled(x, y, z).scale(&half)
    }
}

/// A linear endomorphism of a Jordan algebra, stored as a dim x dim matrix
/// over the standard basis (column i is the image of basis element i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap<S> {
    pub kind: JordanKind,
    pub entries: Vec<S>, // row-major, dim x dim
}

impl<S: Scalar> LinearMap<S> {
    pub fn from_action(kind: JordanKind, f: impl Fn(&JordanElement<S>) -> JordanElement<S>) -> Self {
        let dim = kind.dim();
        let mut entries = vec![S::zero(); dim * dim];
        for j in 0..dim {
            let img = f(&JordanElement::basis_element(kind, j));
            for (i, c) in img.to_coords().into_iter().enumerate() {
                entries[i * dim + j] = c;
            }
        }
        LinearMap { kind, entries }
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn apply(&self, v: &JordanElement<S>) -> JordanElement<S> {
        let dim = self.dim();
        let coords = v.to_coords();
        let mut out = vec![S::zero(); dim];
        for i in 0..dim {
            let mut acc = S::zero();
            for j in 0..dim {
                if !coords[j].is_zero() {
                    acc = acc.add(&self.entries[i * dim + j].mul(&coords[j]));
                }
            }
            out[i] = acc;
        }
        JordanElement::from_coords(self.kind, &out).expect("dimension preserved")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(S::is_zero)
    }

    pub fn scale(&self, s: &S) -> Self {
        LinearMap {
            kind: self.kind,
            entries: self.entries.iter().map(|e| e.mul(s)).collect(),
        }
    }
}
