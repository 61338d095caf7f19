//! Partial Gaussian sums over boxes, Weil sums over root multisets, and
//! complete sums over shifted lines t ↦ g + t.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::box_domain::BoxDomain;
use crate::characters::{AddCharParam, ComplexValue, MultChar};
use crate::field::{add_mod, mul_mod, mul_mod_wide, Coeffs, FieldElement, FieldError, FieldSpec};
use crate::par::Execution;
use crate::report::{BoundReport, ReportParams, Theorem};
use crate::summation::{sum_indexed, ComplexAccumulator};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SumError {
    #[error("polynomial is a {d}-th power; the Weil bound does not apply")]
    IsDthPower { d: u64 },
    #[error("element is not generating: it lies in a proper subfield")]
    NotGenerating,
    #[error("the bound needs a nontrivial character")]
    TrivialCharacter,
    #[error("invalid root multiset: {0}")]
    InvalidRoots(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SumResult {
    pub value: ComplexValue,
    pub magnitude: f64,
    /// Number of summands (including those that vanish).
    pub term_count: u64,
    pub field_id: u64,
    pub chi_exponent: u64,
    /// Canonical encoding of the additive twist, when there is one.
    pub twist: Option<u64>,
}

impl SumResult {
    fn new(value: Complex64, term_count: u64, field: &FieldSpec, chi: &MultChar, twist: Option<u64>) -> Self {
        Self {
            value,
            magnitude: value.norm(),
            term_count,
            field_id: field.id(),
            chi_exponent: chi.exponent(),
            twist,
        }
    }
}

/// A sum paired with the explicit bound it is checked against.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckedSum {
    pub sum: SumResult,
    pub rhs: f64,
    pub holds: bool,
}

impl CheckedSum {
    fn new(theorem: Theorem, sum: SumResult, rhs: f64) -> Self {
        let probe = BoundReport::asserted(theorem, ReportParams::default(), sum.magnitude, rhs);
        Self {
            holds: !probe.failed(),
            sum,
            rhs,
        }
    }
}

pub(crate) fn field_params(field: &FieldSpec) -> ReportParams {
    ReportParams::new(field.p(), field.n(), field.modulus())
}

/// Σ_{x∈B} χ(x)ψ_a(x).
pub fn partial_gauss_sum(
    field: &FieldSpec,
    chi: &MultChar,
    a: &AddCharParam,
    bx: &BoxDomain,
) -> SumResult {
    partial_gauss_sum_with(Execution::default(), field, chi, a, bx)
}

pub fn partial_gauss_sum_with(
    exec: Execution,
    field: &FieldSpec,
    chi: &MultChar,
    a: &AddCharParam,
    bx: &BoxDomain,
) -> SumResult {
    assert_eq!(bx.field_id(), field.id(), "box from another field");
    assert_eq!(chi.field_id(), field.id(), "character from another field");
    let p = field.p();
    let roots_g = field.roots_group();
    let roots_p = field.roots_p();
    let twisted = !a.is_trivial();
    let len = bx.cardinality();
    let value = sum_indexed(exec, len, |range, acc| {
        bx.for_each_in_range(range, |c| {
            let k = field
                .dlog_by_encoding(field.encode_raw(c))
                .expect("0 is never in a box");
            let mut term = roots_g.get(chi.index_for_log(k));
            if twisted {
                term *= roots_p.get(a.trace_index(c, p));
            }
            acc.add(term);
        });
    });
    SumResult::new(value, len, field, chi, Some(field.encode(a.element())))
}

/// The pure sum Σ_{x∈B} χ(x).
pub fn pure_sum(field: &FieldSpec, chi: &MultChar, bx: &BoxDomain) -> SumResult {
    let zero = AddCharParam::new(field, field.zero()).expect("zero belongs to the field");
    partial_gauss_sum(field, chi, &zero, bx)
}

/// Completion bound √q·(1 + ln p)^n, valid for every nontrivial χ and box.
pub fn pv_bound(field: &FieldSpec) -> f64 {
    let p = field.p() as f64;
    (field.q() as f64).sqrt() * (1.0 + p.ln()).powi(field.n() as i32)
}

pub fn polya_vinogradov_check(
    field: &FieldSpec,
    chi: &MultChar,
    a: &AddCharParam,
    bx: &BoxDomain,
) -> Result<BoundReport, SumError> {
    if chi.is_trivial() {
        return Err(SumError::TrivialCharacter);
    }
    let s = partial_gauss_sum(field, chi, a, bx);
    Ok(pv_report(field, chi, a, bx, &s))
}

pub(crate) fn case_params(field: &FieldSpec, chi: &MultChar, a: &AddCharParam, bx: &BoxDomain) -> ReportParams {
    field_params(field)
        .chi(chi.exponent())
        .twist(field.encode(a.element()))
        .domain(bx)
}

pub(crate) fn pv_report(
    field: &FieldSpec,
    chi: &MultChar,
    a: &AddCharParam,
    bx: &BoxDomain,
    s: &SumResult,
) -> BoundReport {
    BoundReport::asserted(Theorem::Pv, case_params(field, chi, a, bx), s.magnitude, pv_bound(field))
}

/// |S| ≤ |B|.
pub fn triangle_report(
    field: &FieldSpec,
    chi: &MultChar,
    a: &AddCharParam,
    bx: &BoxDomain,
    s: &SumResult,
) -> BoundReport {
    BoundReport::asserted(
        Theorem::Triangle,
        case_params(field, chi, a, bx),
        s.magnitude,
        bx.cardinality() as f64,
    )
}

/// f(u) = Π (u + z_i)^{m_i} with distinct z_i and m_i ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMultiset {
    roots: Vec<(FieldElement, u64)>,
}

impl RootMultiset {
    pub fn new(field: &FieldSpec, roots: Vec<(FieldElement, u64)>) -> Result<Self, SumError> {
        if roots.is_empty() {
            return Err(SumError::InvalidRoots("no roots".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for (z, m) in &roots {
            if z.field_id() != field.id() {
                return Err(FieldError::FieldMismatch.into());
            }
            if *m == 0 {
                return Err(SumError::InvalidRoots("multiplicity must be at least 1".into()));
            }
            if !seen.insert(field.encode(z)) {
                return Err(SumError::InvalidRoots("roots must be distinct".into()));
            }
        }
        Ok(Self { roots })
    }

    /// Parses "z1^m1,z2^m2,…" where z_i is a canonical encoding; "z" alone
    /// means multiplicity 1.
    pub fn parse(field: &FieldSpec, spec: &str) -> Result<Self, SumError> {
        let bad = || SumError::InvalidRoots(format!("cannot parse {spec:?}"));
        let mut roots = Vec::new();
        for part in spec.split(',') {
            let part = part.trim();
            let (z, m) = match part.split_once('^') {
                Some((z, m)) => (z, m.trim().parse().map_err(|_| bad())?),
                None => (part, 1),
            };
            let z: u64 = z.trim().parse().map_err(|_| bad())?;
            roots.push((field.from_encoding(z)?, m));
        }
        Self::new(field, roots)
    }

    pub fn roots(&self) -> &[(FieldElement, u64)] {
        &self.roots
    }

    /// m, the number of distinct roots.
    pub fn distinct_roots(&self) -> usize {
        self.roots.len()
    }

    /// f is a d-th power iff every multiplicity is divisible by d.
    pub fn is_dth_power(&self, d: u64) -> bool {
        self.roots.iter().all(|(_, m)| m % d == 0)
    }

    pub fn display(&self, field: &FieldSpec) -> String {
        self.roots
            .iter()
            .map(|(z, m)| format!("{}^{}", field.encode(z), m))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for RootMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .roots
            .iter()
            .map(|(z, m)| format!("{:?}^{m}", z.coeffs()))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Weil bound (m - 1)·√q.
pub fn weil_bound(field: &FieldSpec, f: &RootMultiset) -> f64 {
    (f.distinct_roots() as f64 - 1.0) * (field.q() as f64).sqrt()
}

/// Σ_{x∈F_q} χ(f(x)), where a factor vanishing at x makes the term 0 and
/// χ(u)^m is evaluated as χ(u^m) through exponent arithmetic.
pub fn weil_sum(field: &FieldSpec, chi: &MultChar, f: &RootMultiset) -> Result<CheckedSum, SumError> {
    weil_sum_with(Execution::default(), field, chi, f)
}

pub fn weil_sum_with(
    exec: Execution,
    field: &FieldSpec,
    chi: &MultChar,
    f: &RootMultiset,
) -> Result<CheckedSum, SumError> {
    let d = chi.order();
    if f.is_dth_power(d) {
        return Err(SumError::IsDthPower { d });
    }
    let value = weil_value(exec, field, chi, f);
    let sum = SumResult::new(value, field.q(), field, chi, None);
    Ok(CheckedSum::new(Theorem::Weil, sum, weil_bound(field, f)))
}

fn weil_value(exec: Execution, field: &FieldSpec, chi: &MultChar, f: &RootMultiset) -> Complex64 {
    let m = field.group_order();
    let roots_g = field.roots_group();
    let roots: Vec<(Coeffs, u64)> = f
        .roots
        .iter()
        .map(|(z, mult)| (z.coeffs().iter().copied().collect(), mult % m))
        .collect();
    sum_indexed(exec, field.q(), |range, acc| {
        for enc in range {
            let x = field.decode_raw(enc);
            let mut log = 0u64;
            let mut vanishes = false;
            for (z, mult) in &roots {
                let y = field.add_raw(&x, z);
                match field.dlog_raw(&y) {
                    Some(k) => log = (log + mul_mod_wide(k, *mult, m)) % m,
                    None => {
                        vanishes = true;
                        break;
                    }
                }
            }
            if !vanishes {
                acc.add(roots_g.get(chi.index_for_log(log)));
            }
        }
    })
}

pub fn weil_report(field: &FieldSpec, chi: &MultChar, f: &RootMultiset) -> BoundReport {
    let params = field_params(field).chi(chi.exponent()).domain(f.display(field));
    let rhs = weil_bound(field, f);
    match weil_sum(field, chi, f) {
        Ok(c) => BoundReport::asserted(Theorem::Weil, params, c.sum.magnitude, rhs),
        // Hypothesis fails: report the sum, assert nothing.
        Err(_) => {
            let value = weil_value(Execution::default(), field, chi, f);
            BoundReport::reported(Theorem::Weil, params, value.norm(), rhs)
        }
    }
}

/// Σ_{t∈F_p} χ(g + t)e_p(at) for a generating element g and a ∈ F_p.
pub fn ps_sum(field: &FieldSpec, chi: &MultChar, g: &FieldElement, a: u64) -> Result<CheckedSum, SumError> {
    if chi.is_trivial() {
        return Err(SumError::TrivialCharacter);
    }
    if !field.is_generating(g)? {
        return Err(SumError::NotGenerating);
    }
    let p = field.p();
    let sum = SumResult::new(ps_value(field, chi, g, a), p, field, chi, Some(a % p));
    Ok(CheckedSum::new(Theorem::Ps, sum, ps_bound(field)))
}

/// n·√p.
pub fn ps_bound(field: &FieldSpec) -> f64 {
    field.n() as f64 * (field.p() as f64).sqrt()
}

fn ps_value(field: &FieldSpec, chi: &MultChar, g: &FieldElement, a: u64) -> Complex64 {
    let p = field.p();
    let a = a % p;
    let roots_g = field.roots_group();
    let roots_p = field.roots_p();
    let mut y: Coeffs = g.coeffs().iter().copied().collect();
    let mut acc = ComplexAccumulator::new();
    for t in 0..p {
        y[0] = add_mod(g.coeffs()[0], t, p);
        if let Some(k) = field.dlog_raw(&y) {
            acc.add(roots_g.get(chi.index_for_log(k)) * roots_p.get(mul_mod(a, t, p)));
        }
    }
    acc.value()
}

pub fn ps_report(field: &FieldSpec, chi: &MultChar, g: &FieldElement, a: u64) -> BoundReport {
    let params = field_params(field)
        .chi(chi.exponent())
        .twist(a % field.p())
        .domain(format!("g={}", field.encode(g)));
    match ps_sum(field, chi, g, a) {
        Ok(c) => BoundReport::asserted(Theorem::Ps, params, c.sum.magnitude, c.rhs),
        Err(_) => BoundReport::reported(
            Theorem::Ps,
            params,
            ps_value(field, chi, g, a).norm(),
            ps_bound(field),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::box_domain::make_box;
    use crate::characters::gauss_sum;
    use crate::field::make_field;

    #[test]
    fn full_punctured_line_examples() {
        let f = make_field(11, 1, None).unwrap();
        let bx = make_box(&f, &[0], &[10], None).unwrap();
        let zero = AddCharParam::new(&f, f.zero()).unwrap();
        let one = AddCharParam::new(&f, f.scalar(3)).unwrap();
        for e in 1..10 {
            let chi = MultChar::new(&f, e);
            assert!(partial_gauss_sum(&f, &chi, &zero, &bx).magnitude < 1e-9 * 11.0);
            let s = partial_gauss_sum(&f, &chi, &one, &bx);
            assert!((s.magnitude - 11f64.sqrt()).abs() < 1e-6 * 11f64.sqrt());
            let g = gauss_sum(&f, &chi, &one);
            assert!((s.value - g).norm() < 1e-9);
        }
    }

    #[test]
    fn weil_examples() {
        let f7 = make_field(7, 1, None).unwrap();
        let quad = MultChar::new(&f7, 3);
        // f(x) = x + 2
        let lin = RootMultiset::parse(&f7, "2^1").unwrap();
        let c = weil_sum(&f7, &quad, &lin).unwrap();
        assert!(c.sum.magnitude < 1e-12);
        assert_eq!(c.rhs, 0.0);
        assert!(c.holds);
        // f(x) = x(x+1)
        let f = RootMultiset::parse(&f7, "0^1,1^1").unwrap();
        let c = weil_sum(&f7, &quad, &f).unwrap();
        assert!((c.sum.value - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(c.holds);
        let even = RootMultiset::parse(&f7, "0^2,1^4").unwrap();
        assert_eq!(
            weil_sum(&f7, &quad, &even).unwrap_err(),
            SumError::IsDthPower { d: 2 }
        );
    }

    #[test]
    fn inverse_multiplicity_matches_conjugate() {
        // χ(u^{q-2}) = χ̄(u) for u ≠ 0.
        let f = make_field(5, 2, None).unwrap();
        let chi = MultChar::new(&f, 5);
        let a = RootMultiset::parse(&f, "0^1,3^23").unwrap();
        let direct: Complex64 = f
            .elements()
            .map(|x| {
                let y = f.add(&x, &f.scalar(3)).unwrap();
                chi.eval(&f, &x) * chi.conj().eval(&f, &y)
            })
            .sum();
        let c = weil_sum(&f, &chi, &a).unwrap();
        assert!((c.sum.value - direct).norm() < 1e-12);
    }

    #[test]
    fn root_multiset_validation() {
        let f = make_field(7, 1, None).unwrap();
        assert!(matches!(RootMultiset::parse(&f, "1^1,1^2"), Err(SumError::InvalidRoots(_))));
        assert!(matches!(RootMultiset::parse(&f, "1^0"), Err(SumError::InvalidRoots(_))));
        assert!(matches!(RootMultiset::parse(&f, "x"), Err(SumError::InvalidRoots(_))));
        assert!(matches!(RootMultiset::parse(&f, "9"), Err(SumError::Field(_))));
        let r = RootMultiset::parse(&f, "1, 2^3").unwrap();
        assert_eq!(r.display(&f), "1^1,2^3");
        assert_eq!(r.distinct_roots(), 2);
    }

    #[test]
    fn ps_examples() {
        let f = make_field(11, 1, None).unwrap();
        for e in 1..10 {
            let chi = MultChar::new(&f, e);
            for g in 0..11 {
                let g = f.scalar(g);
                assert!(ps_sum(&f, &chi, &g, 0).unwrap().sum.magnitude < 1e-9);
                let c = ps_sum(&f, &chi, &g, 4).unwrap();
                assert!((c.sum.magnitude - 11f64.sqrt()).abs() < 1e-9);
                assert!(c.holds);
            }
        }
        let f25 = make_field(5, 2, Some(&[2, 0, 1])).unwrap();
        let w = f25.x();
        for e in 1..24 {
            let chi = MultChar::new(&f25, e);
            for a in 0..5 {
                let c = ps_sum(&f25, &chi, &w, a).unwrap();
                assert!(c.sum.magnitude <= 2.0 * 5f64.sqrt() + 1e-9);
            }
        }
        let chi = MultChar::new(&f25, 1);
        assert_eq!(ps_sum(&f25, &chi, &f25.scalar(2), 1).unwrap_err(), SumError::NotGenerating);
        let triv = MultChar::new(&f25, 0);
        assert_eq!(ps_sum(&f25, &triv, &w, 1).unwrap_err(), SumError::TrivialCharacter);
    }

    #[test]
    fn pv_exhaustive_over_f7_boxes() {
        let f = make_field(7, 1, None).unwrap();
        let quad = MultChar::new(&f, 3);
        let mut boxes = 0;
        for n0 in 0..6 {
            for h in 1..(7 - n0) {
                let bx = make_box(&f, &[n0], &[h], None).unwrap();
                boxes += 1;
                for a in f.elements() {
                    let a = AddCharParam::new(&f, a).unwrap();
                    let r = polya_vinogradov_check(&f, &quad, &a, &bx).unwrap();
                    assert!(!r.failed());
                    assert!(r.rhs > 7f64.sqrt() * (1.0 + 7f64.ln()) - 1e-12);
                }
            }
        }
        assert_eq!(boxes, 21);
    }

    #[test]
    fn single_element_box() {
        let f = make_field(13, 2, None).unwrap();
        let bx = make_box(&f, &[4, 7], &[1, 1], None).unwrap();
        let chi = MultChar::new(&f, 5);
        let a = AddCharParam::new(&f, f.x()).unwrap();
        let r = polya_vinogradov_check(&f, &chi, &a, &bx).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12);
        assert!(!r.failed());
        assert_eq!(
            polya_vinogradov_check(&f, &MultChar::new(&f, 0), &a, &bx).unwrap_err(),
            SumError::TrivialCharacter
        );
    }
}
