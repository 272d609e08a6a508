//! Shared oracles for the integration suites: an exact multivariate
//! polynomial ring over eight indeterminates (enough to treat the rank-8
//! module symbolically through the crate's own generic code paths), and an
//! independent classical Smith normal form for 3x3 integer matrices.
//!
//! Each integration test binary compiles its own copy, so items unused by
//! one binary are expected.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::Value;

use fmz_core::error::{Error, Result};
use fmz_core::scalar::{Scalar, ScalarDomain};

pub const NVARS: usize = 8;

/// A polynomial with integer coefficients in eight variables, stored as a
/// sorted exponent-vector map. Implements [`Scalar`] so the crate's generic
/// form evaluations run unchanged over symbolic coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymPoly {
    terms: BTreeMap<[u8; NVARS], BigInt>,
}

impl SymPoly {
    pub fn constant(n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if n != 0 {
            terms.insert([0; NVARS], BigInt::from(n));
        }
        SymPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut exp = [0; NVARS];
        exp[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigInt::from(1));
        SymPoly { terms }
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !Scalar::is_zero(c));
        self
    }
}

impl std::fmt::Display for SymPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(exp, c)| {
                let vars: String = exp
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| format!("x{i}^{e}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("{c} {vars}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Scalar for SymPoly {
    fn domain() -> ScalarDomain {
        ScalarDomain::Int
    }

    fn zero() -> Self {
        SymPoly { terms: BTreeMap::new() }
    }

    fn one() -> Self {
        Self::constant(1)
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(n)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_negative(&self) -> bool {
        false
    }

    fn abs(&self) -> Self {
        self.clone()
    }

    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (exp, c) in &other.terms {
            *terms.entry(*exp).or_insert_with(|| BigInt::from(0)) += c;
        }
        SymPoly { terms }.normalized()
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<[u8; NVARS], BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut exp = *ea;
                for i in 0..NVARS {
                    exp[i] += eb[i];
                }
                *terms.entry(exp).or_insert_with(|| BigInt::from(0)) += ca * cb;
            }
        }
        SymPoly { terms }.normalized()
    }

    fn neg(&self) -> Self {
        SymPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    fn div_exact(&self, _other: &Self) -> Option<Self> {
        None
    }

    fn random<R: rand::Rng + ?Sized>(_rng: &mut R, _height: u32) -> Self {
        unimplemented!("symbolic scalars are built explicitly")
    }

    fn to_json(&self) -> Value {
        Value::String(format!("{self}"))
    }

    fn from_json(_v: &Value) -> Result<Self> {
        Err(Error::Parse("symbolic scalars are not parsed".into()))
    }
}

/// Classical Smith normal form of a 3x3 integer matrix by elementary row
/// and column operations; returns (d1, d2, d3) with d_i >= 0 and d1|d2|d3.
/// Written independently of the crate's Hermitian reduction.
pub fn classical_snf_3x3(m: &[[BigInt; 3]; 3]) -> [BigInt; 3] {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.to_vec()).collect();
    let n = 3;
    for t in 0..n {
        loop {
            // find the smallest nonzero entry in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !Scalar::is_zero(&a[i][j])
                        && pivot
                            .map(|(pi, pj)| Scalar::abs(&a[i][j]) < Scalar::abs(&a[pi][pj]))
                            .unwrap_or(true)
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            // reduce row/column t
            let mut dirty = false;
            for i in t + 1..n {
                let q = num_integer::Integer::div_floor(&a[i][t], &a[t][t]);
                if !Scalar::is_zero(&q) {
                    for j in t..n {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                }
                if !Scalar::is_zero(&a[i][t]) {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = num_integer::Integer::div_floor(&a[t][j], &a[t][t]);
                if !Scalar::is_zero(&q) {
                    for i in t..n {
                        let v = &a[i][t] * &q;
                        a[i][j] -= v;
                    }
                }
                if !Scalar::is_zero(&a[t][j]) {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the rest
            let mut offender = None;
            'search: for i in t + 1..n {
                for j in t + 1..n {
                    if Scalar::div_exact(&a[i][j], &a[t][t]).is_none() {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    [
        Scalar::abs(&a[0][0]),
        Scalar::abs(&a[1][1]),
        Scalar::abs(&a[2][2]),
    ]
}
