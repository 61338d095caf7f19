//! Multiplicative characters χ and additive characters ψ_a of F_q.
//!
//! χ is fixed by its exponent e against the field generator g:
//! χ(g^k) = exp(2πi·e·k/(q-1)), with χ(0) = 0 for every χ including the
//! trivial one. ψ_a(x) = exp(2πi·Tr(ax)/p).

use num_complex::Complex64;

use crate::field::{
    dot_mod, gcd_u64, mul_mod_wide, Coeffs, FieldElement, FieldError, FieldSpec,
};
use crate::par::Execution;
use crate::summation::sum_indexed;
#[cfg(test)]
use crate::summation::ComplexAccumulator;

pub type ComplexValue = Complex64;

/// Fields up to this size get the arithmetic principality criterion
/// cross-checked against direct evaluation on the subfield.
pub const PRINCIPALITY_CROSS_CHECK_LIMIT: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MultChar {
    exponent: u64,
    group_order: u64,
    order: u64,
    field_id: u64,
}

/// The character with exponent `e` (reduced modulo q - 1).
pub fn make_mult_char(field: &FieldSpec, e: i64) -> MultChar {
    MultChar::new(field, e)
}

impl MultChar {
    pub fn new(field: &FieldSpec, e: i64) -> Self {
        let m = field.group_order();
        let exponent = (e as i128).rem_euclid(m as i128) as u64;
        Self::from_reduced(field.id(), m, exponent)
    }

    fn from_reduced(field_id: u64, group_order: u64, exponent: u64) -> Self {
        let order = group_order / gcd_u64(exponent, group_order);
        Self {
            exponent,
            group_order,
            order,
            field_id,
        }
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// d = (q-1)/gcd(e, q-1).
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    pub fn field_id(&self) -> u64 {
        self.field_id
    }

    /// The conjugate character χ̄ = χ^{-1}.
    pub fn conj(&self) -> Self {
        let e = (self.group_order - self.exponent) % self.group_order;
        Self::from_reduced(self.field_id, self.group_order, e)
    }

    /// e·k mod (q-1): χ(g^k) = ζ_{q-1}^{index}.
    #[inline]
    pub(crate) fn index_for_log(&self, k: u64) -> u64 {
        mul_mod_wide(self.exponent, k, self.group_order)
    }

    /// Exact exponent index of χ(x), or None for x = 0.
    pub fn value_index(&self, field: &FieldSpec, x: &FieldElement) -> Option<u64> {
        assert_eq!(self.field_id, field.id(), "character from another field");
        field.dlog_raw(x.coeffs()).map(|k| self.index_for_log(k))
    }

    pub fn eval(&self, field: &FieldSpec, x: &FieldElement) -> ComplexValue {
        match self.value_index(field, x) {
            Some(idx) => field.roots_group().get(idx),
            None => Complex64::new(0.0, 0.0),
        }
    }
}

pub fn eval_mult_char(field: &FieldSpec, chi: &MultChar, x: &FieldElement) -> ComplexValue {
    chi.eval(field, x)
}

/// Parameter a of the additive character ψ_a, with Tr(a·x^i) cached so that
/// Tr(a·x) is a dot product with the power-basis coordinates of x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddCharParam {
    a: FieldElement,
    dual: Coeffs,
}

impl AddCharParam {
    pub fn new(field: &FieldSpec, a: FieldElement) -> Result<Self, FieldError> {
        // Validates field membership.
        field.add(&a, &field.zero())?;
        let n = field.n();
        let dual = (0..n)
            .map(|i| {
                let mut basis = Coeffs::from_elem(0, n);
                basis[i] = 1;
                field.trace_linear_raw(&field.mul_raw(a.coeffs(), &basis))
            })
            .collect();
        Ok(Self { a, dual })
    }

    pub fn element(&self) -> &FieldElement {
        &self.a
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero()
    }

    /// Tr(a·x) for x given by power-basis coordinates.
    #[inline]
    pub(crate) fn trace_index(&self, coords: &[u64], p: u64) -> u64 {
        dot_mod(coords, &self.dual, p)
    }

    pub fn eval(&self, field: &FieldSpec, x: &FieldElement) -> ComplexValue {
        assert_eq!(self.a.field_id(), field.id(), "twist from another field");
        field.roots_p().get(self.trace_index(x.coeffs(), field.p()))
    }
}

pub fn eval_add_char(field: &FieldSpec, a: &AddCharParam, x: &FieldElement) -> ComplexValue {
    a.eval(field, x)
}

/// Complete Gauss sum Σ_{x∈F_q} χ(x)ψ_a(x).
pub fn gauss_sum(field: &FieldSpec, chi: &MultChar, a: &AddCharParam) -> ComplexValue {
    gauss_sum_with(Execution::default(), field, chi, a)
}

pub fn gauss_sum_with(
    exec: Execution,
    field: &FieldSpec,
    chi: &MultChar,
    a: &AddCharParam,
) -> ComplexValue {
    assert_eq!(chi.field_id, field.id(), "character from another field");
    let m = field.group_order();
    let roots_g = field.roots_group();
    let roots_p = field.roots_p();
    match field.power_trace_table() {
        // Enumerate F_q^* as g^k: χ(g^k) = ζ^{ek}, ψ_a(g^k) = e_p(Tr(g^{k+j})) with a = g^j.
        Some(power_trace) => {
            let shift = field.dlog_raw(a.a.coeffs());
            sum_indexed(exec, m, |range, acc| {
                let mut chi_idx = chi.index_for_log(range.start);
                let step = |idx: &mut u64, by: u64| {
                    *idx += by;
                    if *idx >= m {
                        *idx -= m;
                    }
                };
                match shift {
                    Some(j) => {
                        let mut pos = (range.start + j) % m;
                        for _ in range {
                            acc.add(roots_g.get(chi_idx) * roots_p.get(power_trace[pos as usize] as u64));
                            step(&mut chi_idx, chi.exponent);
                            step(&mut pos, 1);
                        }
                    }
                    None => {
                        for _ in range {
                            acc.add(roots_g.get(chi_idx));
                            step(&mut chi_idx, chi.exponent);
                        }
                    }
                }
            })
        }
        None => sum_indexed(exec, field.q() - 1, |range, acc| {
            for enc in range {
                let x = field.decode_raw(enc + 1);
                let k = field.dlog_raw(&x).expect("nonzero");
                let t = a.trace_index(&x, field.p());
                acc.add(roots_g.get(chi.index_for_log(k)) * roots_p.get(t));
            }
        }),
    }
}

/// Σ_{x∈F_q} χ(x).
pub fn complete_mult_sum(field: &FieldSpec, chi: &MultChar) -> ComplexValue {
    let m = field.group_order();
    let roots = field.roots_group();
    sum_indexed(Execution::default(), m, |range, acc| {
        for k in range {
            acc.add(roots.get(chi.index_for_log(k)));
        }
    })
}

/// Σ_{x∈F_q} ψ_a(x), enumerating elements by encoding.
pub fn complete_add_sum(field: &FieldSpec, a: &AddCharParam) -> ComplexValue {
    let roots = field.roots_p();
    sum_indexed(Execution::default(), field.q(), |range, acc| {
        for enc in range {
            let x = field.decode_raw(enc);
            acc.add(roots.get(a.trace_index(&x, field.p())));
        }
    })
}

/// Whether χ restricted to the subfield F_{p^k} is principal.
///
/// Decided by (p^k - 1) | e; for small fields the answer is also checked
/// against direct evaluation over the subfield.
pub fn is_principal_on_subfield(
    field: &FieldSpec,
    chi: &MultChar,
    k: usize,
) -> Result<bool, FieldError> {
    if k == 0 || !field.n().is_multiple_of(k) {
        return Err(FieldError::NotASubfield { k, n: field.n() });
    }
    let sub_order = field.p().pow(k as u32) - 1;
    let arithmetic = chi.exponent.is_multiple_of(sub_order);
    if field.q() <= PRINCIPALITY_CROSS_CHECK_LIMIT {
        let direct = principal_on_subfield_direct(field, chi, k)?;
        assert_eq!(
            arithmetic, direct,
            "principality criterion disagrees with subfield evaluation"
        );
    }
    Ok(arithmetic)
}

/// χ(h) = 1 for every h in F_{p^k}^*, by scanning the field for subfield
/// members and checking the exact exponent of χ(h).
pub fn principal_on_subfield_direct(
    field: &FieldSpec,
    chi: &MultChar,
    k: usize,
) -> Result<bool, FieldError> {
    if k == 0 || !field.n().is_multiple_of(k) {
        return Err(FieldError::NotASubfield { k, n: field.n() });
    }
    Ok((1..field.q()).all(|enc| {
        let h = field.decode_raw(enc);
        !field.in_subfield_raw(&h, k)
            || chi.index_for_log(field.dlog_raw(&h).expect("nonzero")) == 0
    }))
}

/// Sum of χ(x)ψ_a(x) over explicitly listed elements, in the given order.
#[cfg(test)]
pub(crate) fn sum_over<'a, I>(field: &FieldSpec, chi: &MultChar, a: &AddCharParam, xs: I) -> ComplexAccumulator
where
    I: IntoIterator<Item = &'a FieldElement>,
{
    xs.into_iter()
        .map(|x| chi.eval(field, x) * a.eval(field, x))
        .collect()
}
