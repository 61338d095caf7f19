//! Multiplicative energy E(A) = #{(x₁,x₂,x₃,x₄) ∈ A⁴ : x₁x₂ = x₃x₄} and
//! ratio representation counts.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::box_domain::BoxDomain;
use crate::charsums::field_params;
use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::par::{map_indexed, Execution};
use crate::report::{BoundReport, Theorem};

/// Largest set the quadruple oracle accepts.
pub const ORACLE_LIMIT: usize = 200;

/// Default cap on |A|² for the fast algorithm.
pub const DEFAULT_PAIR_BUDGET: u64 = 1 << 34;

/// Largest group for which a dense count table is considered.
const DENSE_LIMIT: u64 = 1 << 25;

/// Pair lists up to this length are tallied by sorting.
const SORT_LIMIT: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnergyError {
    #[error("set of size {size} exceeds the oracle limit {limit}")]
    TooLargeForOracle { size: usize, limit: usize },
    #[error("{pairs} pairs exceed the budget of {budget}")]
    MemoryBudgetExceeded { pairs: u64, budget: u64 },
    #[error("0 in the divisor set")]
    ZeroDivisor,
    #[error("hypothesis not met: {0}")]
    ConditionNotMet(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyAlgorithm {
    Oracle,
    Fast,
}

impl fmt::Display for EnergyAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnergyAlgorithm::Oracle => "oracle",
            EnergyAlgorithm::Fast => "fast",
        })
    }
}

impl std::str::FromStr for EnergyAlgorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(EnergyAlgorithm::Oracle),
            "fast" => Ok(EnergyAlgorithm::Fast),
            _ => Err(format!("unknown energy algorithm '{s}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyResult {
    pub count: u128,
    pub set_size: u64,
    pub algorithm: EnergyAlgorithm,
}

/// ν(u) keyed by canonical encoding; absent keys have count 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepCounts {
    pub counts: BTreeMap<u64, u64>,
}

impl RepCounts {
    pub fn get(&self, enc: u64) -> u64 {
        self.counts.get(&enc).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    pub fn square_sum(&self) -> u128 {
        self.counts.values().map(|&c| (c as u128) * (c as u128)).sum()
    }
}

/// Distinct canonical encodings of `a`, checking field membership.
fn distinct_encodings(field: &FieldSpec, a: &[FieldElement]) -> Result<Vec<u64>, FieldError> {
    let mut seen = HashSet::with_capacity(a.len());
    let mut out = Vec::with_capacity(a.len());
    for x in a {
        if x.field_id() != field.id() {
            return Err(FieldError::FieldMismatch);
        }
        let e = field.encode(x);
        if seen.insert(e) {
            out.push(e);
        }
    }
    Ok(out)
}

/// Exact count by a triple loop: x₄ = x₁x₂/x₃ is looked up in A.
pub fn energy_oracle(field: &FieldSpec, a: &[FieldElement]) -> Result<EnergyResult, EnergyError> {
    let encs = distinct_encodings(field, a)?;
    if encs.len() > ORACLE_LIMIT {
        return Err(EnergyError::TooLargeForOracle { size: encs.len(), limit: ORACLE_LIMIT });
    }
    let members: HashSet<u64> = encs.iter().copied().collect();
    let elems: Vec<_> = encs.iter().map(|&e| field.decode_raw(e)).collect();
    let size = encs.len() as u128;
    let mut count: u128 = 0;
    for x1 in &elems {
        for x2 in &elems {
            let prod = field.mul_raw(x1, x2);
            let prod_zero = prod.iter().all(|&c| c == 0);
            for x3 in &elems {
                if x3.iter().all(|&c| c == 0) {
                    // 0·x₄ = 0 for every x₄ ∈ A.
                    if prod_zero {
                        count += size;
                    }
                    continue;
                }
                let x4 = field.mul_raw(&prod, &field.inv_raw(x3));
                if members.contains(&field.encode_raw(&x4)) {
                    count += 1;
                }
            }
        }
    }
    Ok(EnergyResult { count, set_size: encs.len() as u64, algorithm: EnergyAlgorithm::Oracle })
}

pub fn energy_fast(field: &FieldSpec, a: &[FieldElement]) -> Result<EnergyResult, EnergyError> {
    energy_fast_with(Execution::default(), field, a, DEFAULT_PAIR_BUDGET)
}

/// Σ_v r(v)² with r(v) = #{(x₁,x₂) ∈ A² : x₁x₂ = v}.
///
/// Products of nonzero elements are counted by dlog(x₁) + dlog(x₂) mod q−1,
/// which identifies each product exactly. If 0 ∈ A then r(0) = 2|A| − 1.
pub fn energy_fast_with(
    exec: Execution,
    field: &FieldSpec,
    a: &[FieldElement],
    pair_budget: u64,
) -> Result<EnergyResult, EnergyError> {
    let encs = distinct_encodings(field, a)?;
    let size = encs.len() as u64;
    let pairs = size.saturating_mul(size);
    if pairs > pair_budget {
        return Err(EnergyError::MemoryBudgetExceeded { pairs, budget: pair_budget });
    }
    let has_zero = encs.contains(&0);
    let logs: Vec<u64> = encs.iter().filter_map(|&e| field.dlog_by_encoding(e)).collect();
    let mut count = energy_from_logs(exec, field.group_order(), &logs);
    if has_zero {
        let r0 = 2 * size as u128 - 1;
        count += r0 * r0;
    }
    Ok(EnergyResult { count, set_size: size, algorithm: EnergyAlgorithm::Fast })
}

/// E of the nonzero set with the given discrete logs.
///
/// Pair sums are tallied in a dense table when the group is small relative
/// to the number of pairs, by sorting when the pair list is small, and in a
/// hash map otherwise. Per-worker tallies are merged by adding counts.
pub(crate) fn energy_from_logs(exec: Execution, group_order: u64, logs: &[u64]) -> u128 {
    if logs.is_empty() {
        return 0;
    }
    let workers = if exec.is_parallel() { worker_count().min(logs.len()) } else { 1 };
    let per = logs.len().div_ceil(workers);
    let pairs = (logs.len() as u64).pow(2);
    let pair_sums = |w: usize, sink: &mut dyn FnMut(u64)| {
        for &k1 in logs.iter().skip(w * per).take(per) {
            for &k2 in logs {
                let s = k1 as u128 + k2 as u128;
                sink(if s >= group_order as u128 { (s - group_order as u128) as u64 } else { s as u64 });
            }
        }
    };
    if group_order <= DENSE_LIMIT && group_order <= pairs.saturating_mul(8).max(1 << 16) {
        let partial: Vec<Vec<u32>> = map_indexed(exec, workers, |w| {
            let mut r = vec![0u32; group_order as usize];
            pair_sums(w, &mut |s| r[s as usize] += 1);
            r
        });
        let mut iter = partial.into_iter();
        let mut total = iter.next().expect("at least one worker");
        for part in iter {
            for (t, v) in total.iter_mut().zip(part) {
                *t += v;
            }
        }
        total.iter().map(|&c| (c as u128) * (c as u128)).sum()
    } else if pairs <= SORT_LIMIT {
        let partial: Vec<Vec<u64>> = map_indexed(exec, workers, |w| {
            let mut v = Vec::with_capacity(per * logs.len());
            pair_sums(w, &mut |s| v.push(s));
            v
        });
        let mut all = partial.concat();
        all.sort_unstable();
        all.chunk_by(|a, b| a == b).map(|run| (run.len() as u128).pow(2)).sum()
    } else {
        let partial: Vec<HashMap<u64, u64>> = map_indexed(exec, workers, |w| {
            let mut r = HashMap::new();
            pair_sums(w, &mut |s| *r.entry(s).or_insert(0) += 1);
            r
        });
        let mut iter = partial.into_iter();
        let mut total = iter.next().expect("at least one worker");
        for part in iter {
            for (k, v) in part {
                *total.entry(k).or_insert(0) += v;
            }
        }
        total.values().map(|&c| (c as u128) * (c as u128)).sum()
    }
}

#[cfg(feature = "parallel")]
fn worker_count() -> usize {
    rayon::current_num_threads().max(1)
}

#[cfg(not(feature = "parallel"))]
fn worker_count() -> usize {
    1
}

/// ν(u) = #{(x,y) ∈ A×B : x/y = u}.
pub fn ratio_rep_counts(
    field: &FieldSpec,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Result<RepCounts, EnergyError> {
    let ea = distinct_encodings(field, a)?;
    let eb = distinct_encodings(field, b)?;
    if eb.contains(&0) {
        return Err(EnergyError::ZeroDivisor);
    }
    let inverses: Vec<_> = eb.iter().map(|&e| field.inv_raw(&field.decode_raw(e))).collect();
    let mut counts = BTreeMap::new();
    for &x in &ea {
        let xc = field.decode_raw(x);
        for yi in &inverses {
            *counts.entry(field.encode_raw(&field.mul_raw(&xc, yi))).or_insert(0) += 1;
        }
    }
    Ok(RepCounts { counts })
}

/// E(B) for a box, computed from the discrete logs of its elements.
pub fn box_energy(exec: Execution, field: &FieldSpec, bx: &BoxDomain) -> Result<EnergyResult, EnergyError> {
    assert_eq!(bx.field_id(), field.id(), "box from another field");
    let size = bx.cardinality();
    let pairs = size.saturating_mul(size);
    if pairs > DEFAULT_PAIR_BUDGET {
        return Err(EnergyError::MemoryBudgetExceeded { pairs, budget: DEFAULT_PAIR_BUDGET });
    }
    let mut logs = Vec::with_capacity(size as usize);
    bx.for_each_in_range(0..size, |c| {
        logs.push(field.dlog_raw(c).expect("0 is never in a box"));
    });
    Ok(EnergyResult {
        count: energy_from_logs(exec, field.group_order(), &logs),
        set_size: size,
        algorithm: EnergyAlgorithm::Fast,
    })
}

/// max_j H_j < ½(√p − 1), i.e. (2H + 1)² < p.
pub fn chang_condition(field: &FieldSpec, bx: &BoxDomain) -> bool {
    let h = bx.max_side() as u128;
    (2 * h + 1) * (2 * h + 1) < field.p() as u128
}

/// (2^{9/4})^n · ln p · |B|^{11/4}.
pub fn chang_energy_bound(field: &FieldSpec, card: u64) -> f64 {
    2f64.powf(2.25).powi(field.n() as i32) * (field.p() as f64).ln() * (card as f64).powf(2.75)
}

/// Explicit-constant energy bound for small boxes. Fails with
/// `ConditionNotMet` when some side is too long.
pub fn check_chang_energy(field: &FieldSpec, bx: &BoxDomain) -> Result<BoundReport, EnergyError> {
    check_chang_energy_with(Execution::default(), field, bx)
}

pub fn check_chang_energy_with(
    exec: Execution,
    field: &FieldSpec,
    bx: &BoxDomain,
) -> Result<BoundReport, EnergyError> {
    if !chang_condition(field, bx) {
        return Err(EnergyError::ConditionNotMet(format!(
            "max side {} is not below (sqrt(p) - 1)/2",
            bx.max_side()
        )));
    }
    let e = box_energy(exec, field, bx)?;
    Ok(BoundReport::asserted(
        Theorem::ChangEnergy,
        field_params(field).domain(bx),
        e.count as f64,
        chang_energy_bound(field, bx.cardinality()),
    ))
}

/// Row for the sweep table: asserted when the hypothesis holds, otherwise
/// reported as not applicable.
pub fn chang_energy_report(exec: Execution, field: &FieldSpec, bx: &BoxDomain) -> BoundReport {
    match check_chang_energy_with(exec, field, bx) {
        Ok(r) => r,
        Err(_) => {
            let lhs = box_energy(exec, field, bx).map_or(f64::NAN, |e| e.count as f64);
            BoundReport::reported(
                Theorem::ChangEnergy,
                field_params(field).domain(bx),
                lhs,
                chang_energy_bound(field, bx.cardinality()),
            )
        }
    }
}

/// Equal sides, each at most √p.
pub fn konyagin_condition(field: &FieldSpec, bx: &BoxDomain) -> bool {
    let h = bx.sides()[0];
    bx.sides().iter().all(|&s| s == h) && (h as u128) * (h as u128) <= field.p() as u128
}

/// Ratio E(B)/(|B|² ln p); the implied constant is unknown, so nothing is asserted.
pub fn check_konyagin_energy(field: &FieldSpec, bx: &BoxDomain) -> Result<BoundReport, EnergyError> {
    check_konyagin_energy_with(Execution::default(), field, bx)
}

pub fn check_konyagin_energy_with(
    exec: Execution,
    field: &FieldSpec,
    bx: &BoxDomain,
) -> Result<BoundReport, EnergyError> {
    if !konyagin_condition(field, bx) {
        return Err(EnergyError::ConditionNotMet(
            "sides must be equal and at most sqrt(p)".into(),
        ));
    }
    let e = box_energy(exec, field, bx)?;
    let card = bx.cardinality() as f64;
    Ok(BoundReport::reported(
        Theorem::KonyaginEnergy,
        field_params(field).domain(bx),
        e.count as f64,
        card * card * (field.p() as f64).ln(),
    ))
}
