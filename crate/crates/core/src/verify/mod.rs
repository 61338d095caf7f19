//! Bound checks for single cases and parameter sweeps.

pub mod rhs;
pub mod sweep;

use thiserror::Error;

use crate::box_domain::{BoxDomain, BoxError};
use crate::characters::{AddCharParam, MultChar};
use crate::charsums::{
    case_params, field_params, partial_gauss_sum_with, pv_bound, pv_report, triangle_report,
    SumResult,
};
use crate::energy::{
    box_energy, chang_energy_report, check_konyagin_energy_with, EnergyError,
};
use crate::field::{FieldError, FieldSpec};
use crate::par::Execution;
use crate::report::{BoundReport, ReportParams, Theorem};

pub use rhs::*;
pub use sweep::{run_sweep, BoxGen, Selection, SweepConfig, WeilGen};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("r = {0} is too small; the mixed bound needs r >= 2")]
    RTooSmall(u32),
    #[error("eps = {0} is outside (0, 1/4]")]
    EpsOutOfRange(f64),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("invalid config: {0}")]
    ConfigInvalid(String),
    #[error("assertion failed for {} (lhs {} > rhs {}); reproduce with: {repro}", row.theorem, row.lhs, row.rhs)]
    AssertionFailed { row: Box<BoundReport>, repro: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Box(#[from] BoxError),
    #[error(transparent)]
    Energy(#[from] EnergyError),
}

/// Parameters shared by the asymptotic checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOptions {
    pub r: u32,
    pub eps: f64,
    pub delta: f64,
    /// Defaults to ε²/4.
    pub tau: Option<f64>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { r: 2, eps: 0.25, delta: 0.0, tau: None }
    }
}

impl CheckOptions {
    pub fn tau(&self) -> f64 {
        self.tau.unwrap_or_else(|| tau_from_eps(self.eps))
    }
}

/// Checks that depend on the twist.
pub const MIXED_CHECKS: [Theorem; 5] =
    [Theorem::Pv, Theorem::Triangle, Theorem::Burgess3, Theorem::Thm6, Theorem::Thm7];
/// Checks on the pure sum Σχ(x).
pub const PURE_CHECKS: [Theorem; 3] = [Theorem::Burgess2, Theorem::Dl, Theorem::Chang3];
/// Checks on E(B).
pub const ENERGY_CHECKS: [Theorem; 2] = [Theorem::ChangEnergy, Theorem::KonyaginEnergy];

/// A row whose hypotheses fail: the left side is kept, the bound is NaN.
fn out_of_range(theorem: Theorem, params: ReportParams, lhs: f64) -> BoundReport {
    let mut row = BoundReport::reported(theorem, params, lhs, f64::NAN);
    row.ratio = f64::NAN;
    row
}

/// Rows for the twisted sum S = Σ_{x∈B} χ(x)ψ_a(x).
pub fn mixed_rows(
    field: &FieldSpec,
    chi: &MultChar,
    a: &AddCharParam,
    bx: &BoxDomain,
    s: &SumResult,
    checks: &[Theorem],
    opts: &CheckOptions,
) -> Result<Vec<BoundReport>, VerifyError> {
    let p = field.p();
    let lhs = s.magnitude;
    let mut rows = Vec::new();
    for &t in MIXED_CHECKS.iter().filter(|t| checks.contains(t)) {
        let params = case_params(field, chi, a, bx);
        rows.push(match t {
            Theorem::Pv if chi.is_trivial() => BoundReport::reported(t, params, lhs, pv_bound(field)),
            Theorem::Pv => pv_report(field, chi, a, bx, s),
            Theorem::Triangle => triangle_report(field, chi, a, bx, s),
            Theorem::Burgess3 => {
                let rhs = rhs_burgess_mixed(bx.sides()[0], p, opts.r)?;
                BoundReport::reported(t, params.r(opts.r), lhs, rhs)
            }
            Theorem::Thm6 => {
                let params = params.eps(opts.eps);
                if chi.is_trivial() || !thm6_hypothesis(p, bx.sides(), opts.eps) {
                    out_of_range(t, params, lhs)
                } else {
                    let b = subfield_rhs(field, chi, bx, opts.tau())?;
                    BoundReport::reported(t, params, lhs, b.rhs)
                }
            }
            Theorem::Thm7 => {
                let params = params.eps(opts.eps);
                let rhs = rhs_thm7(bx.cardinality(), p, opts.eps)?;
                if chi.is_trivial() || !thm7_hypothesis(p, bx.sides(), opts.eps) {
                    out_of_range(t, params, lhs)
                } else {
                    BoundReport::reported(t, params, lhs, rhs)
                }
            }
            _ => unreachable!(),
        });
    }
    Ok(rows)
}

/// Rows for the pure sum Σ_{x∈B} χ(x).
pub fn pure_rows(
    field: &FieldSpec,
    chi: &MultChar,
    bx: &BoxDomain,
    s: &SumResult,
    checks: &[Theorem],
    opts: &CheckOptions,
) -> Result<Vec<BoundReport>, VerifyError> {
    let p = field.p();
    let lhs = s.magnitude;
    let mut rows = Vec::new();
    for &t in PURE_CHECKS.iter().filter(|t| checks.contains(t)) {
        let params = field_params(field).chi(chi.exponent()).domain(bx);
        rows.push(match t {
            Theorem::Burgess2 => {
                let rhs = rhs_burgess_pure(bx.sides()[0], p, opts.r);
                BoundReport::reported(t, params.r(opts.r), lhs, rhs)
            }
            Theorem::Dl => {
                let params = params.eps(opts.eps);
                if chi.is_trivial() || !dl_hypothesis(p, bx.sides(), opts.eps) {
                    out_of_range(t, params, lhs)
                } else {
                    let rhs = rhs_dl_thm2(bx.sides()[0], p, field.n(), opts.delta);
                    BoundReport::reported(t, params, lhs, rhs)
                }
            }
            Theorem::Chang3 => {
                let params = params.eps(opts.eps);
                if chi.is_trivial() || !chang3_hypothesis(p, bx.sides(), opts.eps) {
                    out_of_range(t, params, lhs)
                } else {
                    let b = subfield_rhs(field, chi, bx, opts.tau())?;
                    BoundReport::reported(t, params, lhs, b.rhs)
                }
            }
            _ => unreachable!(),
        });
    }
    Ok(rows)
}

/// Boxes up to this size get their energy computed even when a check's
/// hypothesis fails, so the row still carries a left side.
const NA_ENERGY_LIMIT: u64 = 1 << 12;

/// Rows for E(B).
pub fn energy_rows(
    exec: Execution,
    field: &FieldSpec,
    bx: &BoxDomain,
    checks: &[Theorem],
) -> Vec<BoundReport> {
    let na_lhs = || {
        if bx.cardinality() <= NA_ENERGY_LIMIT {
            box_energy(exec, field, bx).map_or(f64::NAN, |e| e.count as f64)
        } else {
            f64::NAN
        }
    };
    let mut rows = Vec::new();
    for &t in ENERGY_CHECKS.iter().filter(|t| checks.contains(t)) {
        rows.push(match t {
            Theorem::ChangEnergy => {
                if crate::energy::chang_condition(field, bx) {
                    chang_energy_report(exec, field, bx)
                } else {
                    let card = bx.cardinality();
                    BoundReport::reported(
                        t,
                        field_params(field).domain(bx),
                        na_lhs(),
                        crate::energy::chang_energy_bound(field, card),
                    )
                }
            }
            Theorem::KonyaginEnergy => match check_konyagin_energy_with(exec, field, bx) {
                Ok(r) => r,
                Err(_) => out_of_range(t, field_params(field).domain(bx), na_lhs()),
            },
            _ => unreachable!(),
        });
    }
    rows
}

/// Every box-based check in `checks` for one (χ, a, B).
///
/// Weil and shifted-line checks do not take a box and are rejected.
pub fn verify_case(
    exec: Execution,
    field: &FieldSpec,
    chi: &MultChar,
    a: &AddCharParam,
    bx: &BoxDomain,
    checks: &[Theorem],
    opts: &CheckOptions,
) -> Result<Vec<BoundReport>, VerifyError> {
    if let Some(t) = checks.iter().find(|t| matches!(t, Theorem::Weil | Theorem::Ps)) {
        return Err(VerifyError::ConfigInvalid(format!("check '{t}' does not apply to a box")));
    }
    let mut rows = Vec::new();
    if MIXED_CHECKS.iter().any(|t| checks.contains(t)) {
        let s = partial_gauss_sum_with(exec, field, chi, a, bx);
        rows.extend(mixed_rows(field, chi, a, bx, &s, checks, opts)?);
    }
    if PURE_CHECKS.iter().any(|t| checks.contains(t)) {
        let zero = AddCharParam::new(field, field.zero())?;
        let s = partial_gauss_sum_with(exec, field, chi, &zero, bx);
        rows.extend(pure_rows(field, chi, bx, &s, checks, opts)?);
    }
    rows.extend(energy_rows(exec, field, bx, checks));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::report::Holds;

    #[test]
    fn single_case_rows() {
        let f = make_field(101, 2, None).unwrap();
        let chi = MultChar::new(&f, 7);
        let a = AddCharParam::new(&f, f.element(&[3, 1]).unwrap()).unwrap();
        let bx = BoxDomain::new(&f, &[0, 0], &[25, 25], None).unwrap();
        let rows = verify_case(
            Execution::Parallel,
            &f,
            &chi,
            &a,
            &bx,
            &Theorem::ALL
                .iter()
                .copied()
                .filter(|t| !matches!(t, Theorem::Weil | Theorem::Ps))
                .collect::<Vec<_>>(),
            &CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 10);
        for r in &rows {
            assert!(!r.failed(), "{r:?}");
            if !r.theorem.is_assertable() {
                assert_eq!(r.holds, Holds::NotApplicable);
            }
        }
        // 25 ≥ 101^{1/2}: the last hypothesis holds, so the ratio is finite.
        let thm7 = rows.iter().find(|r| r.theorem == Theorem::Thm7).unwrap();
        assert!(thm7.ratio.is_finite());
        // Eq. (8) fails for H = 25.
        let ce = rows.iter().find(|r| r.theorem == Theorem::ChangEnergy).unwrap();
        assert_eq!(ce.holds, Holds::NotApplicable);
    }

    #[test]
    fn box_free_checks_are_rejected() {
        let f = make_field(7, 1, None).unwrap();
        let chi = MultChar::new(&f, 1);
        let a = AddCharParam::new(&f, f.zero()).unwrap();
        let bx = BoxDomain::new(&f, &[0], &[3], None).unwrap();
        let err = verify_case(Execution::Sequential, &f, &chi, &a, &bx, &[Theorem::Weil], &CheckOptions::default());
        assert!(matches!(err, Err(VerifyError::ConfigInvalid(_))));
    }

    #[test]
    fn failed_hypotheses_give_nan_bounds() {
        let f = make_field(101, 2, None).unwrap();
        let chi = MultChar::new(&f, 7);
        let a = AddCharParam::new(&f, f.zero()).unwrap();
        let bx = BoxDomain::new(&f, &[0, 0], &[2, 3], None).unwrap();
        let rows = verify_case(
            Execution::Sequential,
            &f,
            &chi,
            &a,
            &bx,
            &[Theorem::Thm7, Theorem::Dl, Theorem::KonyaginEnergy],
            &CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 3);
        for r in rows {
            assert!(r.rhs.is_nan() && r.ratio.is_nan());
            assert!(!r.lhs.is_nan());
        }
    }
}
