//! Exact arithmetic in F_p and F_{p^n} = F_p[x]/(f).
//!
//! A [`FieldSpec`] is built once and then shared read-only. It owns the
//! modulus, a multiplicative generator, the discrete-log index (a full table
//! for small fields, baby-step giant-step otherwise) and the root-of-unity
//! tables used for character evaluation.

mod arith;
mod description;
mod linalg;
mod poly;

use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use smallvec::SmallVec;
use thiserror::Error;

use crate::roots::RootTable;

pub(crate) use arith::{add_mod, gcd_u64, mul_mod, mul_mod_wide, neg_mod, sub_mod};
pub use description::FieldDescription;
pub use linalg::Basis;

/// Fields with q at or below this get a full discrete-log table.
pub const DEFAULT_DLOG_TABLE_THRESHOLD: u64 = 1 << 24;

/// q must stay below this so that encodings and sums of residues fit in u64.
pub const MAX_FIELD_SIZE: u64 = 1 << 62;

const MAX_BABY_STEPS: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(usize),
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("modulus must be monic")]
    NotMonic,
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("coefficient {value} is not a residue modulo {p}")]
    CoefficientOutOfRange { value: u64, p: u64 },
    #[error("element has {found} coefficients, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("field of size {p}^{n} is too large")]
    FieldTooLarge { p: u64, n: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("discrete logarithm of zero")]
    DlogOfZero,
    #[error("trace left the prime field (internal invariant violated)")]
    TraceNotInPrimeField,
    #[error("basis must be an {n}x{n} matrix")]
    BasisShape { n: usize },
    #[error("basis matrix is singular over F_p")]
    SingularBasis,
    #[error("{k} does not divide the extension degree {n}")]
    NotASubfield { k: usize, n: usize },
    #[error("{0} is not the encoding of a field element")]
    InvalidEncoding(u64),
    #[error("invalid field description: {0}")]
    Description(String),
}

/// Inline storage covers the degrees used in practice without allocation.
pub type Coeffs = SmallVec<[u64; 4]>;

/// An element of F_{p^n}: coefficients in the power basis 1, x, …, x^{n-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Coeffs,
    field_id: u64,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn field_id(&self) -> u64 {
        self.field_id
    }
}

#[derive(Clone, Debug)]
pub struct FieldOptions {
    pub dlog_table_threshold: u64,
    /// Selects among irreducible moduli when none is supplied.
    pub modulus_seed: u64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        Self {
            dlog_table_threshold: DEFAULT_DLOG_TABLE_THRESHOLD,
            modulus_seed: 0,
        }
    }
}

#[derive(Debug)]
enum DlogIndex {
    Table {
        /// log of the element with encoding i; u32::MAX at 0.
        logs: Vec<u32>,
        /// Tr(g^k) for k in [0, q-1).
        power_trace: Vec<u32>,
    },
    BabyGiant {
        baby: HashMap<u64, u64>,
        step: u64,
        giant: Coeffs,
    },
}

/// Immutable description of F_{p^n} together with its lookup tables.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    n: usize,
    q: u64,
    modulus: Vec<u64>,
    id: u64,
    generator: FieldElement,
    group_factors: Vec<u64>,
    trace_basis: Coeffs,
    dlog: DlogIndex,
    roots_p: RootTable,
    roots_group: RootTable,
}

/// Builds F_{p^n} with default options. Without a modulus the first
/// irreducible polynomial in search order is used.
pub fn make_field(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<FieldSpec, FieldError> {
    FieldSpec::new(p, n, modulus, &FieldOptions::default())
}

/// Deterministic monic irreducible polynomial of degree n over F_p.
///
/// Candidates x^n + c_{n-1}x^{n-1} + … + c_0 are scanned with c_0 varying
/// fastest; `seed` skips that many irreducible candidates.
pub fn find_irreducible(p: u64, n: usize, seed: u64) -> Vec<u64> {
    assert!(n >= 1);
    if n == 1 && seed == 0 {
        return vec![0, 1];
    }
    let mut remaining = seed;
    let mut lower = vec![0u64; n];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            if remaining == 0 {
                return f;
            }
            remaining -= 1;
        }
        // Increment the little-endian digit vector.
        let mut i = 0;
        loop {
            assert!(i < n, "seed {seed} exceeds the number of irreducible polynomials");
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
        }
    }
}

pub(crate) fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && num_prime::nt_funcs::is_prime64(p)
}

fn field_fingerprint(p: u64, n: usize, modulus: &[u64]) -> u64 {
    let mut h = DefaultHasher::new();
    (p, n, modulus).hash(&mut h);
    h.finish()
}

impl FieldSpec {
    pub fn new(
        p: u64,
        n: usize,
        modulus: Option<&[u64]>,
        opts: &FieldOptions,
    ) -> Result<Self, FieldError> {
        if !is_odd_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 {
            return Err(FieldError::InvalidDegree(n));
        }
        let q = (0..n)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(FieldError::FieldTooLarge { p, n })?;
        let modulus = match modulus {
            Some(m) => {
                let m = poly::trim(m.to_vec());
                if m.len() != n + 1 {
                    return Err(FieldError::DegreeMismatch {
                        expected: n,
                        found: m.len().saturating_sub(1),
                    });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::CoefficientOutOfRange { value: c, p });
                }
                if m[n] != 1 {
                    return Err(FieldError::NotMonic);
                }
                if !poly::is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus);
                }
                m
            }
            None => find_irreducible(p, n, opts.modulus_seed),
        };
        let id = field_fingerprint(p, n, &modulus);
        let group_factors: Vec<u64> = num_prime::nt_funcs::factorize64(q - 1)
            .into_keys()
            .collect();

        let mut field = FieldSpec {
            p,
            n,
            q,
            modulus,
            id,
            generator: FieldElement {
                coeffs: Coeffs::new(),
                field_id: id,
            },
            group_factors,
            trace_basis: Coeffs::new(),
            dlog: DlogIndex::BabyGiant {
                baby: HashMap::new(),
                step: 1,
                giant: Coeffs::new(),
            },
            roots_p: RootTable::new(p),
            roots_group: RootTable::new(q - 1),
        };
        field.trace_basis = (0..n)
            .map(|i| {
                let mut c = Coeffs::from_elem(0, n);
                c[i] = 1;
                field.trace_by_frobenius(&c)
            })
            .collect::<Result<_, _>>()?;
        let gen = field.search_generator();
        field.generator = FieldElement {
            coeffs: gen,
            field_id: id,
        };
        field.dlog = field.build_dlog_index(opts.dlog_table_threshold);
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Order of the multiplicative group, q - 1.
    pub fn group_order(&self) -> u64 {
        self.q - 1
    }

    /// Distinct prime factors of q - 1, ascending.
    pub fn group_order_factors(&self) -> &[u64] {
        &self.group_factors
    }

    /// Monic modulus, ascending coefficients, length n + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn has_dlog_table(&self) -> bool {
        matches!(self.dlog, DlogIndex::Table { .. })
    }

    pub(crate) fn roots_p(&self) -> &RootTable {
        &self.roots_p
    }

    pub(crate) fn roots_group(&self) -> &RootTable {
        &self.roots_group
    }

    /// Tr(g^k) for every k, when the full table was built.
    pub(crate) fn power_trace_table(&self) -> Option<&[u32]> {
        match &self.dlog {
            DlogIndex::Table { power_trace, .. } => Some(power_trace),
            DlogIndex::BabyGiant { .. } => None,
        }
    }

    // ---- construction of elements -------------------------------------

    fn wrap(&self, coeffs: Coeffs) -> FieldElement {
        FieldElement {
            coeffs,
            field_id: self.id,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(Coeffs::from_elem(0, self.n))
    }

    pub fn one(&self) -> FieldElement {
        self.scalar(1)
    }

    /// Embeds a prime-field residue (reduced mod p).
    pub fn scalar(&self, c: u64) -> FieldElement {
        let mut coeffs = Coeffs::from_elem(0, self.n);
        coeffs[0] = c % self.p;
        self.wrap(coeffs)
    }

    /// The class of x, i.e. ω in the power basis (x itself when n = 1 reduces
    /// to the constant -f(0)).
    pub fn x(&self) -> FieldElement {
        if self.n == 1 {
            return self.scalar(neg_mod(self.modulus[0], self.p));
        }
        let mut coeffs = Coeffs::from_elem(0, self.n);
        coeffs[1] = 1;
        self.wrap(coeffs)
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.n {
            return Err(FieldError::LengthMismatch {
                expected: self.n,
                found: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::CoefficientOutOfRange { value: c, p: self.p });
        }
        Ok(self.wrap(coeffs.iter().copied().collect()))
    }

    pub(crate) fn element_unchecked(&self, coeffs: &[u64]) -> FieldElement {
        debug_assert_eq!(coeffs.len(), self.n);
        self.wrap(coeffs.iter().copied().collect())
    }

    /// Inverse of [`FieldSpec::encode`].
    pub fn from_encoding(&self, enc: u64) -> Result<FieldElement, FieldError> {
        if enc >= self.q {
            return Err(FieldError::InvalidEncoding(enc));
        }
        Ok(self.wrap(self.decode_raw(enc)))
    }

    /// Canonical integer Σ c_i p^i.
    pub fn encode(&self, a: &FieldElement) -> u64 {
        debug_assert_eq!(a.field_id, self.id);
        self.encode_raw(&a.coeffs)
    }

    #[inline]
    pub(crate) fn encode_raw(&self, c: &[u64]) -> u64 {
        c.iter().rev().fold(0u64, |acc, &x| acc * self.p + x)
    }

    pub(crate) fn decode_raw(&self, mut enc: u64) -> Coeffs {
        let mut c = Coeffs::from_elem(0, self.n);
        for slot in c.iter_mut() {
            *slot = enc % self.p;
            enc /= self.p;
        }
        c
    }

    /// Every element of the field in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |e| self.wrap(self.decode_raw(e)))
    }

    fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if a.field_id == self.id && a.coeffs.len() == self.n {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    // ---- arithmetic ---------------------------------------------------

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.add_raw(&a.coeffs, &b.coeffs)))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let p = self.p;
        Ok(self.wrap(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| sub_mod(x, y, p))
                .collect(),
        ))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.wrap(a.coeffs.iter().map(|&x| neg_mod(x, self.p)).collect()))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.mul_raw(&a.coeffs, &b.coeffs)))
    }

    pub fn pow(&self, a: &FieldElement, k: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.wrap(self.pow_raw(&a.coeffs, k)))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.wrap(self.inv_raw(&a.coeffs)))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        let b_inv = self.inv(b)?;
        self.mul(a, &b_inv)
    }

    /// a^p.
    pub fn frobenius(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.pow(a, self.p)
    }

    /// Tr(a) = Σ_{i<n} a^{p^i}, computed by iterating the Frobenius map.
    pub fn trace(&self, a: &FieldElement) -> Result<u64, FieldError> {
        self.check(a)?;
        self.trace_by_frobenius(&a.coeffs)
    }

    /// Tr(a) through the precomputed traces of the power basis; agrees with
    /// [`FieldSpec::trace`] by linearity.
    pub fn trace_linear(&self, a: &FieldElement) -> u64 {
        debug_assert_eq!(a.field_id, self.id);
        self.trace_linear_raw(&a.coeffs)
    }

    #[inline]
    pub(crate) fn trace_linear_raw(&self, c: &[u64]) -> u64 {
        dot_mod(c, &self.trace_basis, self.p)
    }

    /// Tr(X^i) for i < n.
    pub fn trace_basis(&self) -> &[u64] {
        &self.trace_basis
    }

    fn trace_by_frobenius(&self, c: &[u64]) -> Result<u64, FieldError> {
        let mut acc = Coeffs::from_elem(0, self.n);
        let mut conj: Coeffs = c.iter().copied().collect();
        for _ in 0..self.n {
            acc = self.add_raw(&acc, &conj);
            conj = self.pow_raw(&conj, self.p);
        }
        if acc[1..].iter().any(|&x| x != 0) {
            return Err(FieldError::TraceNotInPrimeField);
        }
        Ok(acc[0])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &FieldElement) -> Result<u64, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.order_raw(&a.coeffs))
    }

    fn order_raw(&self, c: &[u64]) -> u64 {
        let mut ord = self.q - 1;
        for &r in &self.group_factors {
            while ord.is_multiple_of(r) && self.is_one(&self.pow_raw(c, ord / r)) {
                ord /= r;
            }
        }
        ord
    }

    /// Whether a lies in the subfield F_{p^k}, i.e. a^{p^k} = a.
    pub fn in_subfield(&self, a: &FieldElement, k: usize) -> Result<bool, FieldError> {
        self.check(a)?;
        if k == 0 || !self.n.is_multiple_of(k) {
            return Err(FieldError::NotASubfield { k, n: self.n });
        }
        Ok(self.in_subfield_raw(&a.coeffs, k))
    }

    pub(crate) fn in_subfield_raw(&self, c: &[u64], k: usize) -> bool {
        let mut z: Coeffs = c.iter().copied().collect();
        for _ in 0..k {
            z = self.pow_raw(&z, self.p);
        }
        z.as_slice() == c
    }

    /// Whether F_p(g) = F_q: 1, g, …, g^{n-1} are linearly independent.
    pub fn is_generating(&self, g: &FieldElement) -> Result<bool, FieldError> {
        self.check(g)?;
        let mut rows = Vec::with_capacity(self.n);
        let mut cur: Coeffs = self.one().coeffs;
        for _ in 0..self.n {
            rows.push(cur.to_vec());
            cur = self.mul_raw(&cur, &g.coeffs);
        }
        Ok(linalg::rank(&rows, self.p) == self.n)
    }

    // ---- discrete logarithms ------------------------------------------

    /// Exponent k in [0, q-1) with generator^k = a.
    pub fn dlog(&self, a: &FieldElement) -> Result<u64, FieldError> {
        self.check(a)?;
        self.dlog_raw(&a.coeffs).ok_or(FieldError::DlogOfZero)
    }

    #[inline]
    pub(crate) fn dlog_raw(&self, c: &[u64]) -> Option<u64> {
        match &self.dlog {
            DlogIndex::Table { logs, .. } => {
                let v = logs[self.encode_raw(c) as usize];
                (v != u32::MAX).then_some(v as u64)
            }
            DlogIndex::BabyGiant { baby, step, giant } => {
                if c.iter().all(|&x| x == 0) {
                    return None;
                }
                let mut y: Coeffs = c.iter().copied().collect();
                let giants = (self.q - 1).div_ceil(*step);
                for i in 0..giants {
                    if let Some(&j) = baby.get(&self.encode_raw(&y)) {
                        return Some((i * step + j) % (self.q - 1));
                    }
                    y = self.mul_raw(&y, giant);
                }
                unreachable!("generator does not generate the multiplicative group")
            }
        }
    }

    /// Discrete log by encoding, table fields only.
    #[inline]
    pub(crate) fn dlog_by_encoding(&self, enc: u64) -> Option<u64> {
        match &self.dlog {
            DlogIndex::Table { logs, .. } => {
                let v = logs[enc as usize];
                (v != u32::MAX).then_some(v as u64)
            }
            DlogIndex::BabyGiant { .. } => self.dlog_raw(&self.decode_raw(enc)),
        }
    }

    fn search_generator(&self) -> Coeffs {
        (1..self.q)
            .map(|e| self.decode_raw(e))
            .find(|c| self.order_raw(c) == self.q - 1)
            .expect("a cyclic group always has a generator")
    }

    fn build_dlog_index(&self, threshold: u64) -> DlogIndex {
        let g = &self.generator.coeffs;
        if self.q <= threshold && self.q <= u32::MAX as u64 {
            let mut logs = vec![u32::MAX; self.q as usize];
            let mut power_trace = Vec::with_capacity((self.q - 1) as usize);
            let mut cur = self.one().coeffs;
            for k in 0..self.q - 1 {
                logs[self.encode_raw(&cur) as usize] = k as u32;
                power_trace.push(self.trace_linear_raw(&cur) as u32);
                cur = self.mul_raw(&cur, g);
            }
            DlogIndex::Table { logs, power_trace }
        } else {
            let step = ((self.q - 1) as f64).sqrt().ceil() as u64;
            let step = step.clamp(1, MAX_BABY_STEPS);
            let mut baby = HashMap::with_capacity(step as usize);
            let mut cur = self.one().coeffs;
            for j in 0..step {
                baby.entry(self.encode_raw(&cur)).or_insert(j);
                cur = self.mul_raw(&cur, g);
            }
            // cur = g^step; giant step multiplies by its inverse.
            let giant = self.inv_raw(&cur);
            DlogIndex::BabyGiant { baby, step, giant }
        }
    }

    // ---- raw coefficient arithmetic -----------------------------------

    #[inline]
    pub(crate) fn is_one(&self, c: &[u64]) -> bool {
        c[0] == 1 && c[1..].iter().all(|&x| x == 0)
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: &[u64], b: &[u64]) -> Coeffs {
        a.iter().zip(b).map(|(&x, &y)| add_mod(x, y, self.p)).collect()
    }

    pub(crate) fn mul_raw(&self, a: &[u64], b: &[u64]) -> Coeffs {
        let n = self.n;
        let p = self.p;
        if n == 1 {
            return Coeffs::from_elem(mul_mod(a[0], b[0], p), 1);
        }
        let mut prod: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * n - 1);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(ai, bj, p), p);
            }
        }
        // x^n = -(f_0 + … + f_{n-1} x^{n-1})
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..n {
                let t = mul_mod(c, self.modulus[i], p);
                prod[k - n + i] = sub_mod(prod[k - n + i], t, p);
            }
        }
        prod[..n].iter().copied().collect()
    }

    pub(crate) fn pow_raw(&self, a: &[u64], mut k: u64) -> Coeffs {
        let mut acc = self.one().coeffs;
        let mut base: Coeffs = a.iter().copied().collect();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_raw(&base, &base);
            }
        }
        acc
    }

    pub(crate) fn inv_raw(&self, a: &[u64]) -> Coeffs {
        self.pow_raw(a, self.q - 2)
    }
}

#[inline]
pub(crate) fn dot_mod(a: &[u64], b: &[u64], p: u64) -> u64 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| add_mod(acc, mul_mod(x, y, p), p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f25() -> FieldSpec {
        make_field(5, 2, Some(&[2, 0, 1])).unwrap()
    }

    #[test]
    fn prime_field_construction() {
        let f = make_field(5, 1, None).unwrap();
        assert_eq!(f.q(), 5);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(make_field(4, 1, None).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(make_field(2, 3, None).unwrap_err(), FieldError::NotPrime(2));
        assert_eq!(make_field(5, 0, None).unwrap_err(), FieldError::InvalidDegree(0));
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(f25().q(), 25);
        assert_eq!(
            make_field(5, 2, Some(&[1, 0, 1])).unwrap_err(),
            FieldError::ReducibleModulus
        );
        assert!(matches!(
            make_field(5, 2, Some(&[2, 1])).unwrap_err(),
            FieldError::DegreeMismatch { expected: 2, found: 1 }
        ));
        assert_eq!(make_field(5, 2, Some(&[2, 0, 3])).unwrap_err(), FieldError::NotMonic);
    }

    #[test]
    fn irreducible_search_order() {
        assert_eq!(find_irreducible(5, 2, 0), vec![2, 0, 1]);
        assert_eq!(find_irreducible(3, 3, 0), vec![1, 2, 0, 1]);
        assert_eq!(find_irreducible(7, 1, 0), vec![0, 1]);
        // seed skips irreducibles; x^2+3 is the next one over F_5
        assert_eq!(find_irreducible(5, 2, 1), vec![3, 0, 1]);
        assert_eq!(find_irreducible(5, 1, 2), vec![2, 1]);
    }

    #[test]
    fn basic_arithmetic_in_f25() {
        let f = f25();
        let w = f.x();
        assert_eq!(f.encode(&f.mul(&w, &w).unwrap()), 3);
        let one = f.one();
        assert_eq!(f.inv(&one).unwrap(), one);
        assert_eq!(f.inv(&f.zero()).unwrap_err(), FieldError::DivisionByZero);
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(&a, 24).unwrap(), one);
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()).unwrap(), one);
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let f = f25();
        let g = make_field(7, 1, None).unwrap();
        assert_eq!(
            f.mul(&f.one(), &g.one()).unwrap_err(),
            FieldError::FieldMismatch
        );
    }

    #[test]
    fn frobenius_and_trace_examples() {
        let f = f25();
        let w = f.x();
        assert_eq!(f.frobenius(&w).unwrap().coeffs(), &[0, 4]);
        assert_eq!(f.trace(&w).unwrap(), 0);
        assert_eq!(f.trace(&f.scalar(3)).unwrap(), 1);
        assert_eq!(f.trace(&f.zero()).unwrap(), 0);
        let c = f.scalar(4);
        assert_eq!(f.frobenius(&c).unwrap(), c);
    }

    #[test]
    fn generators_and_dlog() {
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(f5.generator().coeffs(), &[2]);
        let f7 = make_field(7, 1, None).unwrap();
        assert_eq!(f7.generator().coeffs(), &[3]);
        assert_eq!(f7.dlog(&f7.scalar(6)).unwrap(), 3);
        assert_eq!(f7.dlog(&f7.one()).unwrap(), 0);
        assert_eq!(f7.dlog(f7.generator()).unwrap(), 1);
        assert_eq!(f7.dlog(&f7.zero()).unwrap_err(), FieldError::DlogOfZero);
    }

    #[test]
    fn baby_giant_agrees_with_table() {
        let opts = FieldOptions {
            dlog_table_threshold: 0,
            modulus_seed: 0,
        };
        let bsgs = FieldSpec::new(7, 3, None, &opts).unwrap();
        let table = make_field(7, 3, None).unwrap();
        assert!(!bsgs.has_dlog_table());
        assert!(table.has_dlog_table());
        for a in table.elements().skip(1) {
            let b = bsgs.from_encoding(table.encode(&a)).unwrap();
            assert_eq!(table.dlog(&a).unwrap(), bsgs.dlog(&b).unwrap());
        }
    }

    #[test]
    fn subfield_membership_and_generation() {
        let f = make_field(3, 2, None).unwrap();
        let prime_part = f.elements().filter(|a| f.in_subfield(a, 1).unwrap()).count();
        assert_eq!(prime_part, 3);
        assert!(matches!(
            f.in_subfield(&f.one(), 3),
            Err(FieldError::NotASubfield { .. })
        ));
        let generating = f.elements().filter(|a| f.is_generating(a).unwrap()).count();
        assert_eq!(generating, 9 - 3);
    }

    #[test]
    fn large_prime_field_uses_baby_giant() {
        let p = 1_000_000_007;
        let f = make_field(p, 1, None).unwrap();
        assert!(!f.has_dlog_table());
        let a = f.scalar(123_456_789);
        let k = f.dlog(&a).unwrap();
        assert_eq!(f.pow(f.generator(), k).unwrap(), a);
    }
}
