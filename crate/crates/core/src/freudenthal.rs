//! The module M(J) = F + F + J + J over a cubic Jordan algebra J, with its
//! symplectic and quartic forms, the cubic covariant T(x,x,x), rank, and the
//! four generator families phi(C), psi(D), T(s), tau of the form-preserving
//! group, composed into replayable words.

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::jordan::{JordanElement, JordanKind, LinearMap};
use crate::scalar::Scalar;
use crate::structure::StructureMap;

/// An element (alpha, beta, A, B) of M(J).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreudenthalElement<S> {
    pub alpha: S,
    pub beta: S,
    pub a: JordanElement<S>,
    pub b: JordanElement<S>,
}

impl<S: Scalar> FreudenthalElement<S> {
    pub fn new(alpha: S, beta: S, a: JordanElement<S>, b: JordanElement<S>) -> Result<Self> {
        if a.kind() != b.kind() {
            return Err(Error::KindMismatch(a.kind().name(), b.kind().name()));
        }
        Ok(FreudenthalElement { alpha, beta, a, b })
    }

    pub fn zero(kind: JordanKind) -> Self {
        FreudenthalElement {
            alpha: S::zero(),
            beta: S::zero(),
            a: JordanElement::zero(kind),
            b: JordanElement::zero(kind),
        }
    }

    /// (alpha, beta, diag(a1,a2,a3), 0) built from plain integers.
    pub fn diagonal_i64(kind: JordanKind, alpha: i64, beta: i64, diag: [i64; 3]) -> Self {
        FreudenthalElement {
            alpha: S::from_i64(alpha),
            beta: S::from_i64(beta),
            a: JordanElement::diagonal_i64(kind, diag),
            b: JordanElement::zero(kind),
        }
    }

    pub fn kind(&self) -> JordanKind {
        self.a.kind()
    }

    /// Dimension of M(J): 2 + 2 dim J.
    pub fn dim(kind: JordanKind) -> usize {
        2 + 2 * kind.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero() && self.a.is_zero() && self.b.is_zero()
    }

    pub fn neg(&self) -> Self {
        FreudenthalElement {
            alpha: self.alpha.neg(),
            beta: self.beta.neg(),
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        FreudenthalElement {
            alpha: self.alpha.add(&other.alpha),
            beta: self.beta.add(&other.beta),
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        FreudenthalElement {
            alpha: self.alpha.mul(s),
            beta: self.beta.mul(s),
            a: self.a.scale(s),
            b: self.b.scale(s),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> FreudenthalElement<T> {
        FreudenthalElement {
            alpha: f(&self.alpha),
            beta: f(&self.beta),
            a: self.a.map(f),
            b: self.b.map(f),
        }
    }

    /// Flattened coordinates: alpha, beta, then A and B.
    pub fn to_coords(&self) -> Vec<S> {
        let mut v = vec![self.alpha.clone(), self.beta.clone()];
        v.extend(self.a.to_coords());
        v.extend(self.b.to_coords());
        v
    }

    pub fn from_coords(kind: JordanKind, coords: &[S]) -> Result<Self> {
        if coords.len() != Self::dim(kind) {
            return Err(Error::Parse(format!(
                "module over {} needs {} coordinates, got {}",
                kind.name(),
                Self::dim(kind),
                coords.len()
            )));
        }
        let d = kind.dim();
        Ok(FreudenthalElement {
            alpha: coords[0].clone(),
            beta: coords[1].clone(),
            a: JordanElement::from_coords(kind, &coords[2..2 + d])?,
            b: JordanElement::from_coords(kind, &coords[2 + d..2 + 2 * d])?,
        })
    }

    pub fn basis_element(kind: JordanKind, i: usize) -> Self {
        let mut coords = vec![S::zero(); Self::dim(kind)];
        coords[i] = S::one();
        Self::from_coords(kind, &coords).expect("basis index in range")
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, kind: JordanKind, height: u32) -> Self {
        FreudenthalElement {
            alpha: S::random(rng, height),
            beta: S::random(rng, height),
            a: JordanElement::random(rng, kind, height),
            b: JordanElement::random(rng, kind, height),
        }
    }

    /// The skew-symmetric form {x, y} = alpha delta - beta gamma + (A, D) - (B, C).
    pub fn symplectic(&self, other: &Self) -> S {
        self.alpha
            .mul(&other.beta)
            .sub(&self.beta.mul(&other.alpha))
            .add(&self.a.trace_form(&other.b))
            .sub(&self.b.trace_form(&other.a))
    }

    /// The modified quartic form
    /// q'(x) = ((A,B) - alpha beta)^2 - 4 (A#, B#) + 4 alpha N(A) + 4 beta N(B),
    /// with q = -2 q'. Integer-valued and congruent to 0 or 1 mod 4 on Int.
    pub fn quartic_qprime(&self) -> S {
        let ab = self.a.trace_form(&self.b);
        let t = ab.sub(&self.alpha.mul(&self.beta));
        let four = S::from_i64(4);
        t.mul(&t)
            .sub(&four.mul(&self.a.sharp().trace_form(&self.b.sharp())))
            .add(&four.mul(&self.alpha.mul(&self.a.norm())))
            .add(&four.mul(&self.beta.mul(&self.b.norm())))
    }

    /// The quartic norm form q(x) = -2 q'(x).
    pub fn quartic_q(&self) -> S {
        self.quartic_qprime().mul(&S::from_i64(-2))
    }

    /// The cubic covariant T(x, x, x), the unique element with
    /// {T(x,x,x), w} = q(x,x,x,w):
    ///
    /// ( -a^2 b + a (A,B) - 2 N(B),
    ///    a b^2 - b (A,B) + 2 N(A),
    ///    2 B x A# - 2 b B# - [(A,B) - a b] A,
    ///   -2 A x B# + 2 a A# + [(A,B) - a b] B )
    pub fn t_xxx(&self) -> Self {
        let ab = self.a.trace_form(&self.b);
        let t = ab.sub(&self.alpha.mul(&self.beta)); // (A,B) - alpha beta
        let two = S::from_i64(2);
        let alpha2 = self.alpha.mul(&self.alpha);
        let beta2 = self.beta.mul(&self.beta);
        let first = self
            .alpha
            .mul(&ab)
            .sub(&alpha2.mul(&self.beta))
            .sub(&two.mul(&self.b.norm()));
        let second = self
            .alpha
            .mul(&beta2)
            .sub(&self.beta.mul(&ab))
            .add(&two.mul(&self.a.norm()));
        let third = self
            .b
            .cross(&self.a.sharp())
            .scale(&two)
            .sub(&self.b.sharp().scale(&two.mul(&self.beta)))
            .sub(&self.a.scale(&t));
        let fourth = self
            .a
            .cross(&self.b.sharp())
            .scale(&two)
            .neg()
            .add(&self.a.sharp().scale(&two.mul(&self.alpha)))
            .add(&self.b.scale(&t));
        FreudenthalElement {
            alpha: first,
            beta: second,
            a: third,
            b: fourth,
        }
    }

    /// The quadratic covariant Q(x): C -> alpha beta C + (C, B) A - (A x C) x B,
    /// as a matrix over the standard basis of J.
    pub fn q_operator(&self) -> LinearMap<S> {
        LinearMap::from_action(self.kind(), |c| {
            c.scale(&self.alpha.mul(&self.beta))
                .add(&self.a.scale(&c.trace_form(&self.b)))
                .sub(&self.a.cross(c).cross(&self.b))
        })
    }

    /// 3 T(x,x,y) + {x,y} x in closed form; identically zero iff rank <= 1.
    pub fn r1_form(&self, y: &Self) -> Result<Self> {
        if self.kind() != y.kind() {
            return Err(Error::KindMismatch(self.kind().name(), y.kind().name()));
        }
        let two = S::from_i64(2);
        let three = S::from_i64(3);
        // mu = 3 alpha beta - (A, B)
        let mu = three
            .mul(&self.alpha.mul(&self.beta))
            .sub(&self.a.trace_form(&self.b));
        // P = alpha A - B#, R = beta B - A#
        let p = self.a.scale(&self.alpha).sub(&self.b.sharp());
        let r = self.b.scale(&self.beta).sub(&self.a.sharp());
        let swapped = FreudenthalElement {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        };
        let first = two.mul(&p.trace_form(&y.b)).sub(&mu.mul(&y.alpha));
        let second = mu.mul(&y.beta).sub(&two.mul(&r.trace_form(&y.a)));
        let third = y
            .a
            .scale(&mu)
            .sub(&r.cross(&y.b).scale(&two))
            .add(&p.scale(&two.mul(&y.beta)))
            .sub(&self.q_operator().apply(&y.a).scale(&two));
        let fourth = y
            .b
            .scale(&mu)
            .neg()
            .add(&p.cross(&y.a).scale(&two))
            .sub(&r.scale(&two.mul(&y.alpha)))
            .add(&swapped.q_operator().apply(&y.b).scale(&two));
        Ok(FreudenthalElement {
            alpha: first,
            beta: second,
            a: third,
            b: fourth,
        })
    }

    /// True iff the quadratic rank data (alpha A - B#, beta B - A#, Q(x))
    /// all vanish, which is equivalent to rank <= 1.
    fn quadratic_data_vanishes(&self) -> bool {
        self.a.scale(&self.alpha).sub(&self.b.sharp()).is_zero()
            && self.b.scale(&self.beta).sub(&self.a.sharp()).is_zero()
            && self.q_operator().is_zero()
    }

    /// Element rank in M(J): 4 iff q != 0; 3 iff q = 0, T(x,x,x) != 0;
    /// 2 iff T(x,x,x) = 0 and the quadratic covariants are not all zero;
    /// 1 iff those vanish and x != 0; 0 iff x = 0.
    pub fn rank(&self) -> u8 {
        if !self.quartic_qprime().is_zero() {
            4
        } else if !self.t_xxx().is_zero() {
            3
        } else if !self.quadratic_data_vanishes() {
            2
        } else if !self.is_zero() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": Scalar::to_json(&self.alpha),
            "beta": Scalar::to_json(&self.beta),
            "A": self.a.to_json(),
            "B": self.b.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("module element must be a JSON object".into()))?;
        let field = |k: &str| {
            obj.get(k)
                .ok_or_else(|| Error::Parse(format!("missing {k:?} field")))
        };
        Self::new(
            S::from_json(field("alpha")?)?,
            S::from_json(field("beta")?)?,
            JordanElement::from_json(field("A")?)?,
            JordanElement::from_json(field("B")?)?,
        )
    }
}

/// One generator of the form-preserving group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupGenerator<S> {
    /// phi(C): adds the C-translate from the B column into alpha/A.
    Phi(JordanElement<S>),
    /// psi(D): the mirror translation.
    Psi(JordanElement<S>),
    /// T(s) for a structure map s with multiplier lambda:
    /// (alpha, beta, A, B) -> (lambda^{-1} alpha, lambda beta, s(A), s*^{-1}(B)).
    Struct(StructureMap<S>),
    /// tau: (alpha, beta, A, B) -> (-beta, alpha, -B, A).
    Tau,
}

impl<S: Scalar> GroupGenerator<S> {
    pub fn apply(&self, x: &FreudenthalElement<S>) -> Result<FreudenthalElement<S>> {
        match self {
            GroupGenerator::Phi(c) => {
                if c.kind() != x.kind() {
                    return Err(Error::KindMismatch(c.kind().name(), x.kind().name()));
                }
                let alpha = x
                    .alpha
                    .add(&x.b.trace_form(c))
                    .add(&x.a.trace_form(&c.sharp()))
                    .add(&x.beta.mul(&c.norm()));
                let a = x.a.add(&c.scale(&x.beta));
                let b = x
                    .b
                    .add(&x.a.cross(c))
                    .add(&c.sharp().scale(&x.beta));
                Ok(FreudenthalElement { alpha, beta: x.beta.clone(), a, b })
            }
            GroupGenerator::Psi(d) => {
                if d.kind() != x.kind() {
                    return Err(Error::KindMismatch(d.kind().name(), x.kind().name()));
                }
                let beta = x
                    .beta
                    .add(&x.a.trace_form(d))
                    .add(&x.b.trace_form(&d.sharp()))
                    .add(&x.alpha.mul(&d.norm()));
                let a = x
                    .a
                    .add(&x.b.cross(d))
                    .add(&d.sharp().scale(&x.alpha));
                let b = x.b.add(&d.scale(&x.alpha));
                Ok(FreudenthalElement { alpha: x.alpha.clone(), beta, a, b })
            }
            GroupGenerator::Struct(s) => {
                if s.kind() != x.kind() {
                    return Err(Error::KindMismatch(s.kind().name(), x.kind().name()));
                }
                let lambda = s.multiplier();
                let alpha = x.alpha.div_exact(&lambda).ok_or_else(|| {
                    Error::NonInvertibleDivision(format!("{}", x.alpha), format!("{lambda}"))
                })?;
                Ok(FreudenthalElement {
                    alpha,
                    beta: x.beta.mul(&lambda),
                    a: s.apply(&x.a)?,
                    b: s.apply_adjoint_inverse(&x.b)?,
                })
            }
            GroupGenerator::Tau => Ok(FreudenthalElement {
                alpha: x.beta.neg(),
                beta: x.alpha.clone(),
                a: x.b.neg(),
                b: x.a.clone(),
            }),
        }
    }

    /// Inverse as a short word: Phi(-C), Psi(-D), Struct(s^{-1}), and
    /// tau^{-1} = tau^3.
    pub fn inverse_word(&self) -> Vec<GroupGenerator<S>> {
        match self {
            GroupGenerator::Phi(c) => vec![GroupGenerator::Phi(c.neg())],
            GroupGenerator::Psi(d) => vec![GroupGenerator::Psi(d.neg())],
            GroupGenerator::Struct(s) => vec![GroupGenerator::Struct(s.inverse())],
            GroupGenerator::Tau => vec![GroupGenerator::Tau, GroupGenerator::Tau, GroupGenerator::Tau],
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupGenerator::Phi(c) => json!({ "gen": "phi", "c": c.to_json() }),
            GroupGenerator::Psi(d) => json!({ "gen": "psi", "d": d.to_json() }),
            GroupGenerator::Struct(s) => json!({ "gen": "struct", "s": s.to_json() }),
            GroupGenerator::Tau => json!({ "gen": "tau" }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("generator must be a JSON object".into()))?;
        let tag = obj
            .get("gen")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"gen\" tag".into()))?;
        match tag {
            "phi" => Ok(GroupGenerator::Phi(JordanElement::from_json(
                obj.get("c").ok_or_else(|| Error::Parse("missing \"c\"".into()))?,
            )?)),
            "psi" => Ok(GroupGenerator::Psi(JordanElement::from_json(
                obj.get("d").ok_or_else(|| Error::Parse("missing \"d\"".into()))?,
            )?)),
            "struct" => Ok(GroupGenerator::Struct(StructureMap::from_json(
                obj.get("s").ok_or_else(|| Error::Parse("missing \"s\"".into()))?,
            )?)),
            "tau" => Ok(GroupGenerator::Tau),
            other => Err(Error::Parse(format!("unknown generator {other:?}"))),
        }
    }
}

/// A word of generators applied left to right; the replayable witness of
/// every reduction in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupWord<S> {
    pub gens: Vec<GroupGenerator<S>>,
}

impl<S: Scalar> GroupWord<S> {
    pub fn identity() -> Self {
        GroupWord { gens: Vec::new() }
    }

    pub fn push(&mut self, g: GroupGenerator<S>) {
        self.gens.push(g);
    }

    pub fn extend(&mut self, other: GroupWord<S>) {
        self.gens.extend(other.gens);
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn apply(&self, x: &FreudenthalElement<S>) -> Result<FreudenthalElement<S>> {
        let mut out = x.clone();
        for g in &self.gens {
            out = g.apply(&out)?;
        }
        Ok(out)
    }

    /// The inverse word: generators reversed and inverted.
    pub fn inverse(&self) -> Self {
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in self.gens.iter().rev() {
            gens.extend(g.inverse_word());
        }
        GroupWord { gens }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.gens.iter().map(GroupGenerator::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("word must be a JSON array".into()))?;
        Ok(GroupWord {
            gens: arr
                .iter()
                .map(GroupGenerator::from_json)
                .collect::<Result<Vec<_>>>()?,
        })
    }
}
