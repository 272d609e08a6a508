//! Concrete transformation catalogs for the Jordan algebras: permutations,
//! diagonal unit congruences, elementary congruences X -> T X T* with
//! T = I + c E_ij, and the transpose map of the matrix model. Composites of
//! moves form [`StructureMap`]s, which are norm similarities with an exact
//! multiplier, a trace-form adjoint, and an inverse, all within the catalog.
//!
//! On top of the catalog sits the Smith normal form of integral Hermitian
//! elements with a replayable, norm-preserving witness, certified against
//! the gcd-based invariant factors.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::composition::{Algebra, CompositionElement};
use crate::error::{Error, Result};
use crate::jordan::{JordanElement, JordanKind};
use crate::scalar::{gcd_slice, Scalar};

/// A permutation of {0, 1, 2}; `perm[i]` is the image of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Perm3(pub [usize; 3]);

impl Perm3 {
    pub fn identity() -> Self {
        Perm3([0, 1, 2])
    }

    pub fn swap(i: usize, j: usize) -> Self {
        let mut p = [0, 1, 2];
        p.swap(i, j);
        Perm3(p)
    }

    pub fn is_identity(&self) -> bool {
        self.0 == [0, 1, 2]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0; 3];
        for i in 0..3 {
            inv[self.0[i]] = i;
        }
        Perm3(inv)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = [false; 3];
        for &v in &self.0 {
            if v > 2 || seen[v] {
                return Err(Error::Parse(format!("invalid permutation {:?}", self.0)));
            }
            seen[v] = true;
        }
        Ok(())
    }
}

/// Off-diagonal slots in cyclic orientation: slot 0 holds the (1,2) entry,
/// slot 1 the (2,0) entry, slot 2 the (0,1) entry.
const CYCLIC: [(usize, usize); 3] = [(1, 2), (2, 0), (0, 1)];

fn slot_of(p: usize, q: usize) -> (usize, bool) {
    debug_assert!(p != q);
    let slot = 3 - p - q;
    (slot, CYCLIC[slot] == (p, q))
}

fn get_entry<S: Scalar>(e: &JordanElement<S>, p: usize, q: usize) -> CompositionElement<S> {
    let (slot, oriented) = slot_of(p, q);
    if oriented {
        e.off()[slot].clone()
    } else {
        e.off()[slot].conj()
    }
}

fn set_entry<S: Scalar>(e: &mut JordanElement<S>, p: usize, q: usize, v: CompositionElement<S>) {
    let (slot, oriented) = slot_of(p, q);
    e.off_mut()[slot] = if oriented { v } else { v.conj() };
}

/// One elementary catalogued transformation of a Jordan algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JordanMove<S> {
    /// X -> P X P^t for a coordinate permutation P. Multiplier 1.
    Permute(Perm3),
    /// X -> U X U* with U = diag(u0, u1, u2) over the composition ring.
    /// Multiplier n(u0) n(u1) n(u2). Hermitian kinds; over the octonions
    /// only scalar units are admitted.
    DiagUnits([CompositionElement<S>; 3]),
    /// Coordinate scaling (a0, a1, a2) -> (f0 a0, f1 a1, f2 a2) of the
    /// diagonal algebra, whose norm similarities are signed permutation
    /// scalings rather than congruences. Multiplier f0 f1 f2. Diag3 only.
    DiagScale([S; 3]),
    /// X -> T X T* with T = I + c E_ij, i != j. Multiplier 1.
    Congruence { i: usize, j: usize, c: CompositionElement<S> },
    /// The transpose of the 3x3 matrix model; conjugates every off entry.
    /// H3B only, where it is a norm isometry. Multiplier 1.
    Transpose,
}

impl<S: Scalar> JordanMove<S> {
    /// The exact scalar lambda with N(move(X)) = lambda N(X).
    pub fn multiplier(&self) -> S {
        match self {
            JordanMove::Permute(_) | JordanMove::Congruence { .. } | JordanMove::Transpose => S::one(),
            JordanMove::DiagUnits(u) => u[0].norm().mul(&u[1].norm()).mul(&u[2].norm()),
            JordanMove::DiagScale(f) => f[0].mul(&f[1]).mul(&f[2]),
        }
    }

    /// Whether the move may be applied to elements of `kind`.
    pub fn valid_for(&self, kind: JordanKind) -> bool {
        match self {
            JordanMove::Permute(_) => true,
            JordanMove::DiagScale(_) => kind == JordanKind::Diag3,
            JordanMove::Transpose => kind == JordanKind::H3B,
            JordanMove::DiagUnits(u) => {
                !kind.is_diagonal_only()
                    && u.iter().all(|ui| ui.algebra() == kind.off_algebra())
                    && u.iter().all(|ui| !ui.norm().is_zero())
                    // Double-sided octonion products u_i w conj(u_j) are not
                    // norm similarities for non-scalar units; sign changes
                    // for O go through rotation words of congruences.
                    && (kind != JordanKind::H3O || u.iter().all(|ui| ui.is_scalar()))
            }
            JordanMove::Congruence { i, j, c } => {
                !kind.is_diagonal_only()
                    && i != j
                    && *i < 3
                    && *j < 3
                    && c.algebra() == kind.off_algebra()
            }
        }
    }

    pub fn apply(&self, e: &JordanElement<S>) -> JordanElement<S> {
        debug_assert!(self.valid_for(e.kind()), "move not valid for kind {:?}", e.kind());
        match self {
            JordanMove::Permute(p) => {
                let mut out = e.clone();
                for i in 0..3 {
                    out.diag_mut()[p.0[i]] = e.diag()[i].clone();
                }
                if !e.kind().is_diagonal_only() {
                    for slot in 0..3 {
                        let (i, j) = CYCLIC[slot];
                        set_entry(&mut out, p.0[i], p.0[j], e.off()[slot].clone());
                    }
                }
                out
            }
            JordanMove::DiagScale(f) => {
                let mut out = e.clone();
                for i in 0..3 {
                    out.diag_mut()[i] = e.diag()[i].mul(&f[i]);
                }
                out
            }
            JordanMove::DiagUnits(u) => {
                let mut out = e.clone();
                for i in 0..3 {
                    out.diag_mut()[i] = e.diag()[i].mul(&u[i].norm());
                }
                for slot in 0..3 {
                    let (i, j) = CYCLIC[slot];
                    // entry (i, j) -> u_i w conj(u_j)
                    out.off_mut()[slot] = u[i].mul(&e.off()[slot]).mul(&u[j].conj());
                }
                out
            }
            JordanMove::Congruence { i, j, c } => {
                let (i, j) = (*i, *j);
                let k = 3 - i - j;
                let mut out = e.clone();
                let w = get_entry(e, i, j);
                // a_i -> a_i + t(c w̄) + n(c) a_j
                let new_ai = e.diag()[i]
                    .add(&c.norm_pairing(&w))
                    .add(&c.norm().mul(&e.diag()[j]));
                out.diag_mut()[i] = new_ai;
                // entry(i, j) -> w + c a_j
                set_entry(&mut out, i, j, w.add(&c.scale(&e.diag()[j])));
                // entry(i, k) -> entry(i, k) + c entry(j, k)
                let w_ik = get_entry(e, i, k);
                let w_jk = get_entry(e, j, k);
                set_entry(&mut out, i, k, w_ik.add(&c.mul(&w_jk)));
                out
            }
            JordanMove::Transpose => {
                let mut out = e.clone();
                for slot in 0..3 {
                    out.off_mut()[slot] = e.off()[slot].conj();
                }
                out
            }
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            JordanMove::Permute(p) => JordanMove::Permute(p.inverse()),
            JordanMove::DiagScale(f) => JordanMove::DiagScale([
                S::one().div_exact(&f[0]).expect("invertible scale"),
                S::one().div_exact(&f[1]).expect("invertible scale"),
                S::one().div_exact(&f[2]).expect("invertible scale"),
            ]),
            JordanMove::DiagUnits(u) => JordanMove::DiagUnits([
                u[0].inverse().expect("unit"),
                u[1].inverse().expect("unit"),
                u[2].inverse().expect("unit"),
            ]),
            JordanMove::Congruence { i, j, c } => JordanMove::Congruence {
                i: *i,
                j: *j,
                c: c.neg(),
            },
            JordanMove::Transpose => JordanMove::Transpose,
        }
    }

    /// Applies (m*)^{-1} operationally, dividing exactly where the inverse
    /// move itself has no integral representation (non-unit scalings).
    pub fn apply_adjoint_inverse_exact(&self, e: &JordanElement<S>) -> Result<JordanElement<S>> {
        match self {
            JordanMove::Permute(_) | JordanMove::Transpose => Ok(self.apply(e)),
            JordanMove::DiagScale(f) => {
                let mut out = e.clone();
                for i in 0..3 {
                    out.diag_mut()[i] = e.diag()[i].div_exact(&f[i]).ok_or_else(|| {
                        Error::NonInvertibleDivision(
                            format!("{}", e.diag()[i]),
                            format!("{}", f[i]),
                        )
                    })?;
                }
                Ok(out)
            }
            JordanMove::DiagUnits(u) => {
                let inv = |ui: &CompositionElement<S>| {
                    ui.conj().inverse().ok_or_else(|| {
                        Error::NonInvertibleDivision("1".into(), format!("{:?}", ui.norm()))
                    })
                };
                let mv = JordanMove::DiagUnits([inv(&u[0])?, inv(&u[1])?, inv(&u[2])?]);
                Ok(mv.apply(e))
            }
            JordanMove::Congruence { i, j, c } => {
                let mv = JordanMove::Congruence { i: *j, j: *i, c: c.conj().neg() };
                Ok(mv.apply(e))
            }
        }
    }

    /// The trace-form adjoint: (move(X), Y) = (X, adjoint(Y)).
    pub fn adjoint(&self) -> Self {
        match self {
            JordanMove::Permute(p) => JordanMove::Permute(p.inverse()),
            JordanMove::DiagScale(f) => JordanMove::DiagScale(f.clone()),
            JordanMove::DiagUnits(u) => {
                JordanMove::DiagUnits([u[0].conj(), u[1].conj(), u[2].conj()])
            }
            JordanMove::Congruence { i, j, c } => JordanMove::Congruence {
                i: *j,
                j: *i,
                c: c.conj(),
            },
            JordanMove::Transpose => JordanMove::Transpose,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            JordanMove::Permute(p) => json!({
                "move": "permute",
                "perm": [p.0[0] + 1, p.0[1] + 1, p.0[2] + 1],
            }),
            JordanMove::DiagScale(f) => json!({
                "move": "diag_scale",
                "factors": f.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            }),
            JordanMove::DiagUnits(u) => json!({
                "move": "diag_units",
                "u": u.iter().map(CompositionElement::to_json).collect::<Vec<_>>(),
            }),
            JordanMove::Congruence { i, j, c } => json!({
                "move": "congruence",
                "i": i + 1,
                "j": j + 1,
                "c": c.to_json(),
            }),
            JordanMove::Transpose => json!({ "move": "transpose" }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("move must be a JSON object".into()))?;
        let tag = obj
            .get("move")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"move\" tag".into()))?;
        let idx = |name: &str| -> Result<usize> {
            let n = obj
                .get(name)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("missing index {name:?}")))?;
            if !(1..=3).contains(&n) {
                return Err(Error::Parse(format!("index {name} out of range: {n}")));
            }
            Ok(n as usize - 1)
        };
        match tag {
            "permute" => {
                let arr = obj
                    .get("perm")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("missing \"perm\"".into()))?;
                if arr.len() != 3 {
                    return Err(Error::Parse("\"perm\" must have three entries".into()));
                }
                let mut p = [0usize; 3];
                for (k, e) in arr.iter().enumerate() {
                    let n = e
                        .as_u64()
                        .ok_or_else(|| Error::Parse("permutation entries are 1..3".into()))?;
                    if !(1..=3).contains(&n) {
                        return Err(Error::Parse("permutation entries are 1..3".into()));
                    }
                    p[k] = n as usize - 1;
                }
                let p = Perm3(p);
                p.validate()?;
                Ok(JordanMove::Permute(p))
            }
            "diag_scale" => {
                let arr = obj
                    .get("factors")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("missing \"factors\"".into()))?;
                if arr.len() != 3 {
                    return Err(Error::Parse("\"factors\" must have three entries".into()));
                }
                Ok(JordanMove::DiagScale([
                    S::from_json(&arr[0])?,
                    S::from_json(&arr[1])?,
                    S::from_json(&arr[2])?,
                ]))
            }
            "diag_units" => {
                let arr = obj
                    .get("u")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("missing \"u\"".into()))?;
                if arr.len() != 3 {
                    return Err(Error::Parse("\"u\" must have three entries".into()));
                }
                Ok(JordanMove::DiagUnits([
                    CompositionElement::from_json(&arr[0])?,
                    CompositionElement::from_json(&arr[1])?,
                    CompositionElement::from_json(&arr[2])?,
                ]))
            }
            "congruence" => Ok(JordanMove::Congruence {
                i: idx("i")?,
                j: idx("j")?,
                c: CompositionElement::from_json(
                    obj.get("c").ok_or_else(|| Error::Parse("missing \"c\"".into()))?,
                )?,
            }),
            "transpose" => Ok(JordanMove::Transpose),
            other => Err(Error::Parse(format!("unknown move {other:?}"))),
        }
    }
}

/// A composite of catalogued moves acting on one Jordan kind; moves apply
/// first-to-last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMap<S> {
    kind: JordanKind,
    moves: Vec<JordanMove<S>>,
}

impl<S: Scalar> StructureMap<S> {
    pub fn new(kind: JordanKind, moves: Vec<JordanMove<S>>) -> Result<Self> {
        for m in &moves {
            if !m.valid_for(kind) {
                return Err(Error::Precondition(format!(
                    "move {m:?} is not valid for kind {}",
                    kind.name()
                )));
            }
        }
        Ok(StructureMap { kind, moves })
    }

    pub fn identity(kind: JordanKind) -> Self {
        StructureMap { kind, moves: Vec::new() }
    }

    pub fn kind(&self) -> JordanKind {
        self.kind
    }

    pub fn moves(&self) -> &[JordanMove<S>] {
        &self.moves
    }

    pub fn push(&mut self, m: JordanMove<S>) {
        debug_assert!(m.valid_for(self.kind));
        self.moves.push(m);
    }

    pub fn multiplier(&self) -> S {
        let mut lambda = S::one();
        for m in &self.moves {
            lambda = lambda.mul(&m.multiplier());
        }
        lambda
    }

    pub fn is_norm_preserving(&self) -> bool {
        self.multiplier() == S::one()
    }

    pub fn apply(&self, x: &JordanElement<S>) -> Result<JordanElement<S>> {
        if x.kind() != self.kind {
            return Err(Error::KindMismatch(self.kind.name(), x.kind().name()));
        }
        let mut out = x.clone();
        for m in &self.moves {
            out = m.apply(&out);
        }
        Ok(out)
    }

    /// s^{-1}: reversed move list, each move inverted.
    pub fn inverse(&self) -> Self {
        StructureMap {
            kind: self.kind,
            moves: self.moves.iter().rev().map(JordanMove::inverse).collect(),
        }
    }

    /// s*: the trace-form adjoint (reversed move list, each move adjointed).
    pub fn adjoint(&self) -> Self {
        StructureMap {
            kind: self.kind,
            moves: self.moves.iter().rev().map(JordanMove::adjoint).collect(),
        }
    }

    /// s*^{-1} = (s*)^{-1}: same move order, each move adjoint-inverted.
    /// Requires every move to be invertible within the catalog (unit
    /// scalings); use [`Self::apply_adjoint_inverse`] for the operational
    /// form that divides exactly instead.
    pub fn adjoint_inverse(&self) -> Self {
        StructureMap {
            kind: self.kind,
            moves: self.moves.iter().map(|m| m.adjoint().inverse()).collect(),
        }
    }

    pub fn apply_adjoint_inverse(&self, x: &JordanElement<S>) -> Result<JordanElement<S>> {
        if x.kind() != self.kind {
            return Err(Error::KindMismatch(self.kind.name(), x.kind().name()));
        }
        let mut out = x.clone();
        for m in &self.moves {
            out = m.apply_adjoint_inverse_exact(&out)?;
        }
        Ok(out)
    }

    pub fn compose(&self, then: &Self) -> Result<Self> {
        if self.kind != then.kind {
            return Err(Error::KindMismatch(self.kind.name(), then.kind.name()));
        }
        let mut moves = self.moves.clone();
        moves.extend(then.moves.iter().cloned());
        Ok(StructureMap { kind: self.kind, moves })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "moves": self.moves.iter().map(JordanMove::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("structure map must be a JSON object".into()))?;
        let kind = JordanKind::from_name(
            obj.get("kind")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("missing \"kind\"".into()))?,
        )?;
        let moves = obj
            .get("moves")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"moves\"".into()))?
            .iter()
            .map(JordanMove::from_json)
            .collect::<Result<Vec<_>>>()?;
        Self::new(kind, moves)
    }
}

/// A unit of the composition algebra with norm -1 (exists in every split
/// algebra; this is what makes diagonal sign changes possible over Int).
pub fn negative_norm_unit<S: Scalar>(algebra: Algebra) -> Result<CompositionElement<S>> {
    let minus_one = S::zero().sub(&S::one());
    match algebra {
        Algebra::F => Err(Error::Precondition(
            "the ground ring has no unit of norm -1".into(),
        )),
        Algebra::B => CompositionElement::new(algebra, vec![S::one(), minus_one]),
        Algebra::H => CompositionElement::new(
            algebra,
            vec![S::one(), S::zero(), S::zero(), minus_one],
        ),
        Algebra::O => {
            let mut coords = vec![S::zero(); 8];
            coords[0] = S::one();
            coords[3] = minus_one;
            CompositionElement::new(algebra, coords)
        }
    }
}

/// A unit of the split algebra with a prescribed nonzero norm (diagonal
/// embedding (q, 1)); used for field-level rescalings.
pub fn split_unit_with_norm<S: Scalar>(algebra: Algebra, q: &S) -> Result<CompositionElement<S>> {
    match algebra {
        Algebra::F => Err(Error::Precondition(
            "prescribed-norm units need a split algebra".into(),
        )),
        Algebra::B => CompositionElement::new(algebra, vec![q.clone(), S::one()]),
        Algebra::H => {
            CompositionElement::new(algebra, vec![q.clone(), S::zero(), S::zero(), S::one()])
        }
        Algebra::O => {
            let mut coords = vec![S::zero(); 8];
            coords[0] = q.clone();
            coords[3] = S::one();
            CompositionElement::new(algebra, coords)
        }
    }
}

/// The rotation word `(I + w E_ij)(I - w^{-1} E_ji)(I + w E_ij)` followed by
/// the (i, j) swap: four catalogued moves of multiplier 1 whose composite
/// sends diagonal entries `(d_i, d_j)` of a diagonal element to
/// `(d_i / n(w), n(w) d_j)` and fixes the rest. With a norm -1 unit this
/// flips the two signs; with a split unit it moves squares-free scale
/// factors around. Valid for every Hermitian kind, octonions included,
/// because each step is an elementary congruence.
pub fn rotation_moves<S: Scalar>(
    i: usize,
    j: usize,
    w: &CompositionElement<S>,
) -> Result<[JordanMove<S>; 4]> {
    let w_inv = w
        .inverse()
        .ok_or_else(|| Error::Precondition("rotation word needs an invertible unit".into()))?;
    Ok([
        JordanMove::Congruence { i, j, c: w.clone() },
        JordanMove::Congruence { i: j, j: i, c: w_inv.neg() },
        JordanMove::Congruence { i, j, c: w.clone() },
        JordanMove::Permute(Perm3::swap(i, j)),
    ])
}

/// Index of the coordinate paired with coordinate `t` under the polar norm
/// form n(e_u, e_t), together with the sign of the pairing. The basis units
/// of B, H, O are isotropic, so t(e_u w̄) picks out a single coordinate
/// of w: t(e_{pair(t)} w̄) = sign(t) * w_t.
pub fn norm_pair(algebra: Algebra, t: usize) -> (usize, i64) {
    match algebra {
        Algebra::F => (0, 2),
        Algebra::B => (t ^ 1, 1),
        Algebra::H | Algebra::O => {
            let base = t & !3;
            match t & 3 {
                0 => (base + 3, 1),
                1 => (base + 2, -1),
                2 => (base + 1, -1),
                _ => (base, 1),
            }
        }
    }
}

// --- Smith normal form over the integers -------------------------------

/// Diagonal (d1, d2, d3) with d1, d2 >= 0, d1 | d2 | d3, and zeros trailing.
/// The last entry carries the sign of the norm: a norm-preserving witness
/// cannot change N, so the product d1 d2 d3 equals N exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDiagonal {
    pub d: [BigInt; 3],
}

impl SmithDiagonal {
    pub fn to_json(&self) -> Value {
        json!({ "d": self.d.iter().map(Scalar::to_json).collect::<Vec<_>>() })
    }
}

type JInt = JordanElement<BigInt>;

/// gcd of every integer coordinate of the element.
pub fn content(a: &JInt) -> BigInt {
    gcd_slice(&a.to_coords())
}

/// The gcd-based invariant factors (g1, g2/g1, N/g2) with zero handling for
/// rank < 3. Independent of any reduction path, so it certifies
/// [`smith_normal_form`]: distinct Smith diagonals lie in distinct orbits.
pub fn invariant_factors(a: &JInt) -> Result<SmithDiagonal> {
    if a.kind() == JordanKind::H3F {
        return Err(Error::Precondition(
            "invariant factors are defined for the split Hermitian kinds and Diag3".into(),
        ));
    }
    let g1 = content(a);
    if g1.is_zero() {
        return Ok(SmithDiagonal { d: [BigInt::zero(), BigInt::zero(), BigInt::zero()] });
    }
    let g2 = content(&a.sharp());
    if g2.is_zero() {
        return Ok(SmithDiagonal { d: [g1, BigInt::zero(), BigInt::zero()] });
    }
    let d2 = g2.div_exact(&g1).ok_or_else(|| {
        Error::Internal("gcd of the adjoint is not divisible by the content".into())
    })?;
    let n = a.norm();
    let d3 = if n.is_zero() {
        BigInt::zero()
    } else {
        Scalar::div_exact(&n, &g2)
            .ok_or_else(|| Error::Internal("norm not divisible by the adjoint gcd".into()))?
    };
    Ok(SmithDiagonal { d: [g1, d2, d3] })
}

struct SnfState {
    m: JInt,
    witness: StructureMap<BigInt>,
    fuel: u32,
}

impl SnfState {
    fn push(&mut self, mv: JordanMove<BigInt>) {
        self.m = mv.apply(&self.m);
        self.witness.push(mv);
    }

    fn alg(&self) -> Algebra {
        self.m.kind().off_algebra()
    }

    fn burn(&mut self) -> Result<()> {
        if self.fuel == 0 {
            return Err(Error::Internal("smith reduction failed to terminate".into()));
        }
        self.fuel -= 1;
        Ok(())
    }

    /// Reduce each coordinate of entry(pivot, o) into [0, |a_p|) by a single
    /// congruence; a_p = diag[pivot] must be nonzero.
    fn reduce_off_mod_pivot(&mut self, pivot: usize, o: usize) {
        let a_p = self.m.diag()[pivot].clone();
        debug_assert!(!a_p.is_zero());
        let w = get_entry(&self.m, pivot, o);
        let q: Vec<BigInt> = w
            .coords()
            .iter()
            .map(|x| num_integer::Integer::div_floor(x, &Scalar::abs(&a_p)))
            .collect();
        if q.iter().all(|x| x.is_zero()) {
            return;
        }
        // entry(pivot,o)' = entry(pivot,o) + a_p * conj(c) via Congruence(o, pivot, c):
        // want a_p * conj(c) = -q |a_p|, i.e. conj(c) = -sign(a_p) q.
        let sign = BigInt::from(if Scalar::is_negative(&a_p) { 1 } else { -1 });
        let cbar =
            CompositionElement::new(self.alg(), q.iter().map(|x| x * &sign).collect()).unwrap();
        self.push(JordanMove::Congruence { i: o, j: pivot, c: cbar.conj() });
    }

    /// Euclid step shrinking |a_p| against a nonzero coordinate of
    /// entry(pivot, o): a_p' = a_p + k * (±w_t) lands in (0, |w_t|].
    /// The isotropic paired basis unit keeps the n(c) a_o term out.
    fn shrink_pivot_with_off(&mut self, pivot: usize, o: usize) {
        let w = get_entry(&self.m, pivot, o);
        let t = w
            .coords()
            .iter()
            .position(|x| !x.is_zero())
            .expect("nonzero off entry");
        let wt = w.coord(t).clone();
        let a_p = self.m.diag()[pivot].clone();
        let modulus = Scalar::abs(&wt);
        let mut r = num_integer::Integer::mod_floor(&a_p, &modulus);
        if r.is_zero() {
            r = modulus.clone();
        }
        let (u, sign) = norm_pair(self.alg(), t);
        let delta = &r - &a_p;
        let k = Scalar::div_exact(&delta, &(BigInt::from(sign) * &wt)).expect("euclid step");
        if k.is_zero() {
            return;
        }
        let mut coords = vec![BigInt::zero(); self.alg().dim()];
        coords[u] = k;
        let c = CompositionElement::new(self.alg(), coords).unwrap();
        self.push(JordanMove::Congruence { i: pivot, j: o, c });
    }

    fn active_pairs(&self, pivot: usize, others: &[usize]) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = others.iter().map(|&o| (pivot, o)).collect();
        if others.len() == 2 {
            pairs.push((others[0], others[1]));
        }
        pairs
    }

    /// Make diag[pivot] nonzero using entries of the active block, which
    /// must not be entirely zero.
    fn ensure_pivot_nonzero(&mut self, pivot: usize, others: &[usize]) {
        if !self.m.diag()[pivot].is_zero() {
            return;
        }
        for &o in others {
            if !self.m.diag()[o].is_zero() {
                self.push(JordanMove::Permute(Perm3::swap(pivot, o)));
                return;
            }
        }
        // All active diagonal entries vanish; pull an off coordinate onto
        // the diagonal: Congruence(i, j, e_u) with a_j = 0 gives
        // a_i' = t(e_u w̄) = ±w_t.
        for (i, j) in self.active_pairs(pivot, others) {
            let w = get_entry(&self.m, i, j);
            if let Some(t) = w.coords().iter().position(|x| !x.is_zero()) {
                let (u, _) = norm_pair(self.alg(), t);
                let mut coords = vec![BigInt::zero(); self.alg().dim()];
                coords[u] = BigInt::one();
                let c = CompositionElement::new(self.alg(), coords).unwrap();
                self.push(JordanMove::Congruence { i, j, c });
                if i != pivot {
                    self.push(JordanMove::Permute(Perm3::swap(pivot, i)));
                }
                return;
            }
        }
        unreachable!("active block was entirely zero");
    }

    fn block_is_zero(&self, pivot: usize, others: &[usize]) -> bool {
        if !self.m.diag()[pivot].is_zero() {
            return false;
        }
        if others.iter().any(|&o| !self.m.diag()[o].is_zero()) {
            return false;
        }
        self.active_pairs(pivot, others)
            .iter()
            .all(|&(i, j)| get_entry(&self.m, i, j).is_zero())
    }

    /// One pivot phase: afterwards row/column `pivot` is clear off the
    /// diagonal and diag[pivot] divides every coordinate of the active block.
    fn pivot_phase(&mut self, pivot: usize, others: &[usize]) -> Result<()> {
        if self.block_is_zero(pivot, others) {
            return Ok(());
        }
        self.ensure_pivot_nonzero(pivot, others);
        loop {
            self.burn()?;
            // Clear the pivot row/column by alternating reductions; every
            // shrink strictly decreases |a_p|, so this inner loop ends.
            loop {
                self.burn()?;
                let mut dirty = false;
                for &o in others {
                    if !get_entry(&self.m, pivot, o).is_zero() {
                        self.reduce_off_mod_pivot(pivot, o);
                        if !get_entry(&self.m, pivot, o).is_zero() {
                            self.shrink_pivot_with_off(pivot, o);
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    break;
                }
            }
            let a_p = self.m.diag()[pivot].clone();
            let divisible = |x: &BigInt| Scalar::div_exact(x, &a_p).is_some();
            let offender = others.iter().copied().find(|&o| !divisible(&self.m.diag()[o]));
            if let Some(o) = offender {
                // Seed the cleared pivot row with a_o e_0. The isotropic
                // unit keeps a_p fixed (n(c) = 0), and the non-divisible
                // coordinate forces a strict Euclid shrink next pass.
                let mut coords = vec![BigInt::from(0); self.alg().dim()];
                coords[0] = BigInt::from(1);
                let c = CompositionElement::new(self.alg(), coords).unwrap();
                self.push(JordanMove::Congruence { i: pivot, j: o, c });
                continue;
            }
            if others.len() == 2 {
                let far = get_entry(&self.m, others[0], others[1]);
                if !far.coords().iter().all(divisible) {
                    // Copy e_u * far into the pivot row for a basis unit
                    // whose product keeps a non-divisible coordinate; one
                    // always exists since the unit sum reconstructs far.
                    let dim = self.alg().dim();
                    let mut chosen = None;
                    for u in 0..dim {
                        let e = CompositionElement::basis_unit(self.alg(), u);
                        let prod = e.mul(&far);
                        if !prod.coords().iter().all(|x| divisible(x)) {
                            chosen = Some(e);
                            break;
                        }
                    }
                    let c = chosen.expect("some unit keeps a non-divisible coordinate");
                    self.push(JordanMove::Congruence { i: pivot, j: others[0], c });
                    continue;
                }
            }
            return Ok(());
        }
    }

    /// Flip the diagonal signs at `slot` and at slot 2 by a rotation word
    /// with a norm -1 unit; the overall multiplier stays 1.
    fn flip_pair(&mut self, slot: usize) {
        let j = negative_norm_unit::<BigInt>(self.alg()).expect("split algebra");
        for mv in rotation_moves(slot, 2, &j).expect("unit is invertible") {
            self.push(mv);
        }
    }
}

/// Bring an integral Hermitian element to Smith normal form: a diagonal
/// (d1, d2, d3) with d1, d2 >= 0 and d1 | d2 | d3, reached by a
/// norm-preserving witness of catalogued moves. Replaying the witness on
/// the input reproduces the diagonal bit-exactly; the diagonal agrees with
/// [`invariant_factors`], which certifies it independently of the move path.
pub fn smith_normal_form(a: &JInt) -> Result<(SmithDiagonal, StructureMap<BigInt>)> {
    if !JordanKind::SMITH.contains(&a.kind()) {
        return Err(Error::Precondition(format!(
            "smith normal form requires a split Hermitian kind, got {}",
            a.kind().name()
        )));
    }
    let mut st = SnfState {
        m: a.clone(),
        witness: StructureMap::identity(a.kind()),
        fuel: 100_000,
    };
    st.pivot_phase(0, &[1, 2])?;
    st.pivot_phase(1, &[2])?;
    debug_assert!(st.m.is_diagonal());
    if Scalar::is_negative(&st.m.diag()[0]) {
        st.flip_pair(0);
    }
    if Scalar::is_negative(&st.m.diag()[1]) {
        st.flip_pair(1);
    }
    debug_assert!(st.witness.is_norm_preserving());
    Ok((SmithDiagonal { d: st.m.diag().clone() }, st.witness))
}

/// Diagonalize over the rationals and rescale to reach `diag(1, .., N)`:
/// rank 3 goes to diag(1, 1, N(A)), rank 2 to diag(1, 1, 0), rank 1 to
/// diag(1, 0, 0). The witness is norm-preserving. Split Hermitian kinds.
pub fn diagonalize_field(
    a: &JordanElement<BigRational>,
) -> Result<(JordanElement<BigRational>, StructureMap<BigRational>)> {
    if !JordanKind::SMITH.contains(&a.kind()) {
        return Err(Error::Precondition(format!(
            "field diagonalization requires a split Hermitian kind, got {}",
            a.kind().name()
        )));
    }
    let alg = a.kind().off_algebra();
    let mut m = a.clone();
    let mut witness = StructureMap::identity(a.kind());
    let push = |m: &mut JordanElement<BigRational>,
                    witness: &mut StructureMap<BigRational>,
                    mv: JordanMove<BigRational>| {
        *m = mv.apply(m);
        witness.push(mv);
    };

    // Clear row/column `p` against the later indices.
    for p in 0..2 {
        let others: Vec<usize> = (p + 1..3).collect();
        // pivot selection
        if m.diag()[p].is_zero() {
            if let Some(&o) = others.iter().find(|&&o| !m.diag()[o].is_zero()) {
                push(&mut m, &mut witness, JordanMove::Permute(Perm3::swap(p, o)));
            } else {
                // pull an off coordinate onto the diagonal
                let mut pairs: Vec<(usize, usize)> = others.iter().map(|&o| (p, o)).collect();
                if others.len() == 2 {
                    pairs.push((others[0], others[1]));
                }
                let mut found = false;
                for (i, j) in pairs {
                    let w = get_entry(&m, i, j);
                    if let Some(t) = w.coords().iter().position(|x| !x.is_zero()) {
                        let (u, _) = norm_pair(alg, t);
                        let mut coords = vec![<BigRational as Scalar>::zero(); alg.dim()];
                        coords[u] = <BigRational as Scalar>::one();
                        let c = CompositionElement::new(alg, coords).unwrap();
                        push(&mut m, &mut witness, JordanMove::Congruence { i, j, c });
                        if i != p {
                            push(&mut m, &mut witness, JordanMove::Permute(Perm3::swap(p, i)));
                        }
                        found = true;
                        break;
                    }
                }
                if !found {
                    continue; // the whole active block is zero
                }
            }
        }
        // single-step exact elimination of the off entries
        let a_p = m.diag()[p].clone();
        for o in others {
            let w = get_entry(&m, p, o);
            if w.is_zero() {
                continue;
            }
            // entry(p, o)' = w + a_p conj(c) = 0 via Congruence(o, p, c)
            let minus_inv =
                <BigRational as Scalar>::one().div_exact(&a_p).expect("nonzero pivot").neg();
            let cbar = w.scale(&minus_inv);
            push(&mut m, &mut witness, JordanMove::Congruence { i: o, j: p, c: cbar.conj() });
        }
    }
    debug_assert!(m.is_diagonal());

    // Move zeros to the back.
    for p in 0..2 {
        if m.diag()[p].is_zero() {
            for o in p + 1..3 {
                if !m.diag()[o].is_zero() {
                    push(&mut m, &mut witness, JordanMove::Permute(Perm3::swap(p, o)));
                    break;
                }
            }
        }
    }

    // Rotation words with split units shift the leading nonzero entries to 1
    // and collect the whole norm in the last slot.
    for p in 0..2 {
        let d_p = m.diag()[p].clone();
        if d_p.is_zero() || d_p == <BigRational as Scalar>::one() {
            continue;
        }
        let w = split_unit_with_norm(alg, &d_p)?;
        for mv in rotation_moves(p, 2, &w)? {
            push(&mut m, &mut witness, mv);
        }
    }
    debug_assert!(witness.is_norm_preserving());
    Ok((m, witness))
}
