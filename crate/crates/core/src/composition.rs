//! Split composition algebras over an exact scalar domain.
//!
//! Four algebras are supported: the ground ring `F` itself (dimension 1),
//! the split binarions `B` (diagonal 2x2 matrices), the split quaternions
//! `H` (all 2x2 matrices), and the split octonions `O` obtained from `H`
//! by the Cayley-Dickson doubling `(a + b v)(c + d v) = (ac - d̄b) + (da + bc̄)v`.
//!
//! Coordinate layout:
//!   F: `[a]`
//!   B: `[a, d]`              (the diagonal matrix diag(a, d))
//!   H: `[a, b, c, d]`        (row-major 2x2 matrix)
//!   O: `[first; second]`     (two quaternions, eight coordinates)

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algebra {
    F,
    B,
    H,
    O,
}

impl Algebra {
    pub fn dim(self) -> usize {
        match self {
            Algebra::F => 1,
            Algebra::B => 2,
            Algebra::H => 4,
            Algebra::O => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra::F => "F",
            Algebra::B => "B",
            Algebra::H => "H",
            Algebra::O => "O",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "F" => Ok(Algebra::F),
            "B" => Ok(Algebra::B),
            "H" => Ok(Algebra::H),
            "O" => Ok(Algebra::O),
            _ => Err(Error::Parse(format!("unknown composition algebra {s:?}"))),
        }
    }
}

/// An element of a split composition algebra over `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositionElement<S> {
    algebra: Algebra,
    coords: Vec<S>,
}

// Quaternion helpers on 4-coordinate slices (row-major 2x2 matrices).
fn quat_mul<S: Scalar>(x: &[S], y: &[S]) -> [S; 4] {
    [
        x[0].mul(&y[0]).add(&x[1].mul(&y[2])),
        x[0].mul(&y[1]).add(&x[1].mul(&y[3])),
        x[2].mul(&y[0]).add(&x[3].mul(&y[2])),
        x[2].mul(&y[1]).add(&x[3].mul(&y[3])),
    ]
}

fn quat_conj<S: Scalar>(x: &[S]) -> [S; 4] {
    [x[3].clone(), x[1].neg(), x[2].neg(), x[0].clone()]
}

fn quat_det<S: Scalar>(x: &[S]) -> S {
    x[0].mul(&x[3]).sub(&x[1].mul(&x[2]))
}

impl<S: Scalar> CompositionElement<S> {
    pub fn new(algebra: Algebra, coords: Vec<S>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::Parse(format!(
                "algebra {} needs {} coordinates, got {}",
                algebra.name(),
                algebra.dim(),
                coords.len()
            )));
        }
        Ok(CompositionElement { algebra, coords })
    }

    pub fn zero(algebra: Algebra) -> Self {
        CompositionElement {
            algebra,
            coords: vec![S::zero(); algebra.dim()],
        }
    }

    pub fn one(algebra: Algebra) -> Self {
        let mut c = Self::zero(algebra);
        match algebra {
            Algebra::F => c.coords[0] = S::one(),
            Algebra::B => {
                c.coords[0] = S::one();
                c.coords[1] = S::one();
            }
            Algebra::H | Algebra::O => {
                c.coords[0] = S::one();
                c.coords[3] = S::one();
            }
        }
        c
    }

    /// The scalar `s` embedded as `s * 1`.
    pub fn from_scalar(algebra: Algebra, s: &S) -> Self {
        Self::one(algebra).scale(s)
    }

    /// Basis unit `k` (the k-th coordinate vector). Every basis unit of the
    /// split algebras B, H, O is isotropic; the one of F is not.
    pub fn basis_unit(algebra: Algebra, k: usize) -> Self {
        let mut c = Self::zero(algebra);
        c.coords[k] = S::one();
        c
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &S {
        &self.coords[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CompositionElement<T> {
        CompositionElement {
            algebra: self.algebra,
            coords: self.coords.iter().map(f).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch(self.algebra.name(), other.algebra.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other).expect("mixed composition algebras");
        CompositionElement {
            algebra: self.algebra,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CompositionElement {
            algebra: self.algebra,
            coords: self.coords.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        CompositionElement {
            algebra: self.algebra,
            coords: self.coords.iter().map(|c| c.mul(s)).collect(),
        }
    }

    /// Product in the algebra. Matrix multiplication for B and H, the
    /// Cayley-Dickson rule for O.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other).expect("mixed composition algebras");
        let coords = match self.algebra {
            Algebra::F => vec![self.coords[0].mul(&other.coords[0])],
            Algebra::B => vec![
                self.coords[0].mul(&other.coords[0]),
                self.coords[1].mul(&other.coords[1]),
            ],
            Algebra::H => quat_mul(&self.coords, &other.coords).to_vec(),
            Algebra::O => {
                let (a, b) = (&self.coords[..4], &self.coords[4..]);
                let (c, d) = (&other.coords[..4], &other.coords[4..]);
                let first = {
                    let ac = quat_mul(a, c);
                    let db = quat_mul(&quat_conj(d), b);
                    [
                        ac[0].sub(&db[0]),
                        ac[1].sub(&db[1]),
                        ac[2].sub(&db[2]),
                        ac[3].sub(&db[3]),
                    ]
                };
                let second = {
                    let da = quat_mul(d, a);
                    let bc = quat_mul(b, &quat_conj(c));
                    [
                        da[0].add(&bc[0]),
                        da[1].add(&bc[1]),
                        da[2].add(&bc[2]),
                        da[3].add(&bc[3]),
                    ]
                };
                first.into_iter().chain(second).collect()
            }
        };
        CompositionElement {
            algebra: self.algebra,
            coords,
        }
    }

    pub fn conj(&self) -> Self {
        let coords = match self.algebra {
            Algebra::F => vec![self.coords[0].clone()],
            Algebra::B => vec![self.coords[1].clone(), self.coords[0].clone()],
            Algebra::H => quat_conj(&self.coords).to_vec(),
            Algebra::O => {
                let first = quat_conj(&self.coords[..4]);
                let second: Vec<S> = self.coords[4..].iter().map(|c| c.neg()).collect();
                first.into_iter().chain(second).collect()
            }
        };
        CompositionElement {
            algebra: self.algebra,
            coords,
        }
    }

    /// The norm form: `x * conj(x) = norm(x) * 1`.
    pub fn norm(&self) -> S {
        match self.algebra {
            Algebra::F => self.coords[0].mul(&self.coords[0]),
            Algebra::B => self.coords[0].mul(&self.coords[1]),
            Algebra::H => quat_det(&self.coords),
            Algebra::O => quat_det(&self.coords[..4]).add(&quat_det(&self.coords[4..])),
        }
    }

    /// The trace form: `x + conj(x) = trace(x) * 1`.
    pub fn trace(&self) -> S {
        match self.algebra {
            Algebra::F => self.coords[0].add(&self.coords[0]),
            Algebra::B => self.coords[0].add(&self.coords[1]),
            Algebra::H | Algebra::O => self.coords[0].add(&self.coords[3]),
        }
    }

    /// Polarized norm `n(x, y) = n(x+y) - n(x) - n(y) = trace(x * conj(y))`.
    pub fn norm_pairing(&self, other: &Self) -> S {
        self.mul(&other.conj()).trace()
    }

    /// True when the element is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        let one = Self::one(self.algebra);
        self.coords
            .iter()
            .zip(one.coords())
            .all(|(c, u)| if u.is_zero() { c.is_zero() } else { c == self.scalar_part() })
    }

    fn scalar_part(&self) -> &S {
        &self.coords[0]
    }

    /// True when the element is invertible and its norm is a unit of the
    /// scalar domain (over Int this means norm ±1).
    pub fn norm_is_unit(&self) -> bool {
        let n = self.norm();
        !n.is_zero() && S::one().div_exact(&n).is_some()
    }

    /// Inverse `conj(x) / norm(x)`; `None` when the norm is not invertible.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        let n_inv = S::one().div_exact(&n)?;
        Some(self.conj().scale(&n_inv))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, algebra: Algebra, height: u32) -> Self {
        CompositionElement {
            algebra,
            coords: (0..algebra.dim()).map(|_| S::random(rng, height)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra.name(),
            "coords": self.coords.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("composition element must be a JSON object".into()))?;
        let algebra = Algebra::from_name(
            obj.get("algebra")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("missing \"algebra\" field".into()))?,
        )?;
        let coords = obj
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"coords\" array".into()))?
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, coords)
    }
}
