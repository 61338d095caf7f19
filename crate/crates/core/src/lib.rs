//! Partial Gaussian sums, character sums and multiplicative energy over
//! finite fields F_{p^n}, with bound checks against the explicit inequalities
//! and ratio reporting for the asymptotic ones.

pub mod box_domain;
pub mod characters;
pub mod charsums;
pub mod energy;
pub mod field;
pub mod par;
pub mod report;
pub mod roots;
pub mod summation;
pub mod verify;

pub use box_domain::{BoxDomain, BoxError};
pub use characters::{AddCharParam, ComplexValue, MultChar};
pub use charsums::{RootMultiset, SumError, SumResult};
pub use energy::{EnergyAlgorithm, EnergyError, EnergyResult, RepCounts};
pub use field::{
    find_irreducible, make_field, Basis, FieldDescription, FieldElement, FieldError,
    FieldOptions, FieldSpec,
};
pub use par::Execution;
pub use report::{BoundReport, Holds, OutputFormat, ReportParams, Theorem};
pub use verify::{run_sweep, CheckOptions, SweepConfig, VerifyError};
