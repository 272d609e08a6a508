//! Orbit census: exhaustive enumeration of the diagonal module in a
//! coordinate box, or seeded sampling for the larger kinds, bucketed by the
//! quartic norm and the orbit label. The census cross-checks the orbit
//! theory as it goes: a norm bucket holding two distinct projective labels,
//! or an element of fundamental-discriminant norm that is not projective,
//! is flagged as a counterexample (none can exist).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freudenthal::FreudenthalElement;
use crate::jordan::JordanKind;
use crate::par::{run_chunks, ExecMode};
use crate::random::random_element;
use crate::reduction::{invariants, projectivity};
use crate::scalar::Scalar;

type MInt = FreudenthalElement<BigInt>;

/// Bucket key: the coarse orbit label (rank 3/4 non-transitive cases keep
/// the invariant vector instead of a representative).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum LabelKey {
    Rank0,
    Rank1 { d1: BigInt },
    Rank2 { d1: BigInt, m: BigInt },
    Projective { epsilon: u8, k: BigInt },
    Invariants { d1: BigInt, d2: BigInt, d3: BigInt, d4: BigInt },
}

impl LabelKey {
    pub fn to_json(&self) -> Value {
        match self {
            LabelKey::Rank0 => json!({ "variant": "Rank0" }),
            LabelKey::Rank1 { d1 } => json!({ "variant": "Rank1", "d1": Scalar::to_json(d1) }),
            LabelKey::Rank2 { d1, m } => {
                json!({ "variant": "Rank2", "d1": Scalar::to_json(d1), "m": Scalar::to_json(m) })
            }
            LabelKey::Projective { epsilon, k } => json!({
                "variant": "Projective", "epsilon": epsilon, "k": Scalar::to_json(k)
            }),
            LabelKey::Invariants { d1, d2, d3, d4 } => json!({
                "variant": "Unclassified",
                "d1": Scalar::to_json(d1),
                "d2": Scalar::to_json(d2),
                "d3": Scalar::to_json(d3),
                "d4": Scalar::to_json(d4),
            }),
        }
    }

    pub fn is_projective_label(&self) -> bool {
        matches!(self, LabelKey::Projective { .. })
    }
}

/// The label used by the census: exact for ranks 0-2 and the projective
/// orbits; the invariant vector otherwise. Never runs a reduction, so the
/// exhaustive modes stay fast.
pub fn census_label(x: &MInt) -> Result<(LabelKey, bool)> {
    let proj = projectivity(x)?;
    let key = match x.rank() {
        0 => LabelKey::Rank0,
        1 => LabelKey::Rank1 { d1: crate::scalar::gcd_slice(&x.to_coords()) },
        2 => {
            let inv = invariants(x);
            let m = Scalar::div_exact(&inv.d2, &(BigInt::from(2) * &inv.d1))
                .ok_or_else(|| Error::Internal("d2 not divisible by 2 d1".into()))?;
            LabelKey::Rank2 { d1: inv.d1, m }
        }
        _ => {
            if JordanKind::SMITH.contains(&x.kind()) && proj.projective {
                let qp = x.quartic_qprime();
                let eps = qp.mod_floor(&BigInt::from(4));
                if eps.is_zero() {
                    LabelKey::Projective {
                        epsilon: 0,
                        k: Scalar::div_exact(&qp, &BigInt::from(4)).unwrap(),
                    }
                } else {
                    LabelKey::Projective {
                        epsilon: 1,
                        k: Scalar::div_exact(&(&qp - 1), &BigInt::from(4)).unwrap(),
                    }
                }
            } else {
                let inv = invariants(x);
                LabelKey::Invariants { d1: inv.d1, d2: inv.d2, d3: inv.d3, d4: inv.d4 }
            }
        }
    };
    Ok((key, proj.projective))
}

#[derive(Debug, Clone)]
pub struct CensusRecord {
    pub norm: BigInt,
    pub label: LabelKey,
    pub count: u64,
    pub projective: bool,
    pub sample: MInt,
}

impl CensusRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "norm": Scalar::to_json(&self.norm),
            "label": self.label.to_json(),
            "count": self.count,
            "projective": self.projective,
            "sample": self.sample.to_json(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub kind: JordanKind,
    pub height: u32,
    /// None: exhaustive over the coordinate box (Diag3 only).
    pub samples: Option<u64>,
    pub seed: u64,
    pub mode: ExecMode,
    /// Soft cap on enumerated elements; exceeding it truncates the census
    /// and marks the report.
    pub max_elements: u64,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub records: Vec<CensusRecord>,
    pub total: u64,
    pub truncated: bool,
    /// Norms whose bucket holds more than one projective label.
    pub projective_label_conflicts: Vec<BigInt>,
    /// Samples of fundamental-discriminant norm that are not projective.
    pub fundamental_violations: Vec<MInt>,
}

impl CensusReport {
    pub fn to_json(&self) -> Value {
        json!({
            "records": self.records.iter().map(CensusRecord::to_json).collect::<Vec<_>>(),
            "total": self.total,
            "truncated": self.truncated,
            "projective_label_conflicts": self
                .projective_label_conflicts
                .iter()
                .map(Scalar::to_json)
                .collect::<Vec<_>>(),
            "fundamental_violations": self
                .fundamental_violations
                .iter()
                .map(MInt::to_json)
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("norm,label,count,projective\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.norm,
                serde_json::to_string(&r.label.to_json()).unwrap().replace(',', ";"),
                r.count,
                r.projective
            ));
        }
        out
    }
}

struct Bucket {
    count: u64,
    first_index: u64,
    sample: MInt,
    projective: bool,
}

type BucketMap = BTreeMap<(BigInt, LabelKey), Bucket>;

fn tally(map: &mut BucketMap, index: u64, x: MInt) -> Result<()> {
    let (label, projective) = census_label(&x)?;
    let norm = x.quartic_qprime();
    match map.entry((norm, label)) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(Bucket { count: 1, first_index: index, sample: x, projective });
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let b = e.get_mut();
            b.count += 1;
            if index < b.first_index {
                b.first_index = index;
                b.sample = x;
            }
        }
    }
    Ok(())
}

fn merge(mut a: BucketMap, b: BucketMap) -> BucketMap {
    for (k, v) in b {
        match a.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let t = e.get_mut();
                t.count += v.count;
                if v.first_index < t.first_index {
                    t.first_index = v.first_index;
                    t.sample = v.sample;
                }
            }
        }
    }
    a
}

/// Decode an enumeration index into a Diag3 element with coordinates in
/// [-h, h] (base 2h+1 digits).
fn decode_diag3(index: u64, h: u32) -> MInt {
    let base = (2 * h + 1) as u64;
    let mut idx = index;
    let mut coords = Vec::with_capacity(8);
    for _ in 0..8 {
        let digit = (idx % base) as i64 - h as i64;
        idx /= base;
        coords.push(BigInt::from(digit));
    }
    MInt::from_coords(JordanKind::Diag3, &coords).expect("rank 8 coordinates")
}

pub fn run_census(opts: &CensusOptions) -> Result<CensusReport> {
    let (total_target, exhaustive) = match opts.samples {
        None => {
            if opts.kind != JordanKind::Diag3 {
                return Err(Error::Precondition(
                    "exhaustive census is available for Diag3 only; pass a sample count".into(),
                ));
            }
            let base = (2 * opts.height as u64) + 1;
            (base.pow(8), true)
        }
        Some(n) => (n, false),
    };
    let truncated = total_target > opts.max_elements;
    let total = total_target.min(opts.max_elements);
    let chunk_size: u64 = 8192;
    let chunks = total.div_ceil(chunk_size) as usize;
    let maps: Vec<Result<BucketMap>> = run_chunks(opts.mode, chunks, |c| {
        let lo = c as u64 * chunk_size;
        let hi = (lo + chunk_size).min(total);
        let mut map = BucketMap::new();
        if exhaustive {
            for index in lo..hi {
                tally(&mut map, index, decode_diag3(index, opts.height))?;
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (c as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            for index in lo..hi {
                let x = random_element(&mut rng, opts.kind, opts.height);
                tally(&mut map, index, x)?;
            }
        }
        Ok(map)
    });
    let mut merged = BucketMap::new();
    for m in maps {
        merged = merge(merged, m?);
    }

    // bucket-level consistency flags
    let mut projective_label_conflicts = Vec::new();
    let mut fundamental_violations = Vec::new();
    let mut by_norm: BTreeMap<BigInt, u32> = BTreeMap::new();
    for ((norm, label), bucket) in &merged {
        if label.is_projective_label() {
            *by_norm.entry(norm.clone()).or_insert(0) += 1;
        }
        if crate::reduction::is_fundamental_discriminant(norm) && !bucket.projective {
            fundamental_violations.push(bucket.sample.clone());
        }
    }
    for (norm, n_labels) in by_norm {
        if n_labels > 1 {
            projective_label_conflicts.push(norm);
        }
    }

    let records = merged
        .into_iter()
        .map(|((norm, label), b)| CensusRecord {
            norm,
            label,
            count: b.count,
            projective: b.projective,
            sample: b.sample,
        })
        .collect();
    Ok(CensusReport {
        records,
        total,
        truncated,
        projective_label_conflicts,
        fundamental_violations,
    })
}
