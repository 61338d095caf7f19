//! Right-hand sides of the character-sum bounds, with their hypothesis gates.
//! All logarithms are natural.

use crate::box_domain::{max_coset_intersection, BoxDomain};
use crate::characters::{is_principal_on_subfield, MultChar};
use crate::field::FieldSpec;

use super::VerifyError;

fn ln(p: u64) -> f64 {
    (p as f64).ln()
}

/// H^{1−1/r}·p^{(r+1)/(4r²)}·ln p.
pub fn rhs_burgess_pure(h: u64, p: u64, r: u32) -> f64 {
    assert!(r >= 1, "r must be positive");
    let r = r as f64;
    (h as f64).powf(1.0 - 1.0 / r) * (p as f64).powf((r + 1.0) / (4.0 * r * r)) * ln(p)
}

/// H^{1−1/r}·p^{1/(4(r−1))}·(ln p)².
pub fn rhs_burgess_mixed(h: u64, p: u64, r: u32) -> Result<f64, VerifyError> {
    if r < 2 {
        return Err(VerifyError::RTooSmall(r));
    }
    let r = r as f64;
    Ok((h as f64).powf(1.0 - 1.0 / r) * (p as f64).powf(1.0 / (4.0 * (r - 1.0))) * ln(p).powi(2))
}

fn check_eps(eps: f64) -> Result<(), VerifyError> {
    if eps > 0.0 && eps <= 0.25 {
        Ok(())
    } else {
        Err(VerifyError::EpsOutOfRange(eps))
    }
}

/// |B|·p^{−ε²/2}, for 0 < ε ≤ 1/4.
pub fn rhs_thm7(card: u64, p: u64, eps: f64) -> Result<f64, VerifyError> {
    check_eps(eps)?;
    Ok(card as f64 * (p as f64).powf(-eps * eps / 2.0))
}

/// n ≥ 2 and H_j ≥ p^{1/4+ε} for every j.
pub fn thm7_hypothesis(p: u64, sides: &[u64], eps: f64) -> bool {
    let floor = (p as f64).powf(0.25 + eps);
    sides.len() >= 2 && sides.iter().all(|&h| h as f64 >= floor)
}

/// τ = ε²/4.
pub fn tau_from_eps(eps: f64) -> f64 {
    eps * eps / 4.0
}

/// Generic branch |B|·p^{−τ}.
pub fn rhs_thm6(card: u64, p: u64, tau: f64) -> Result<f64, VerifyError> {
    if tau <= 0.0 || !tau.is_finite() {
        return Err(VerifyError::HypothesisFailed(format!("tau must be positive, got {tau}")));
    }
    Ok(card as f64 * (p as f64).powf(-tau))
}

/// Π H_j ≥ p^{(2/5+ε)n}, compared in logarithms.
pub fn thm6_hypothesis(p: u64, sides: &[u64], eps: f64) -> bool {
    let lhs: f64 = sides.iter().map(|&h| (h as f64).ln()).sum();
    lhs >= (0.4 + eps) * sides.len() as f64 * ln(p)
}

/// Π H_j > p^{(2/5+ε)n}.
pub fn chang3_hypothesis(p: u64, sides: &[u64], eps: f64) -> bool {
    let lhs: f64 = sides.iter().map(|&h| (h as f64).ln()).sum();
    lhs > (0.4 + eps) * sides.len() as f64 * ln(p)
}

/// Bound with the subfield branch resolved.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubfieldRhs {
    pub rhs: f64,
    /// n even and χ principal on the half-degree subfield.
    pub exceptional: bool,
    /// max_ξ |B ∩ ξF₂| when exceptional.
    pub coset_max: Option<u64>,
}

/// |B|p^{−τ}, plus max_ξ|B ∩ ξF₂| when n is even and χ is principal on F₂.
pub fn subfield_rhs(
    field: &FieldSpec,
    chi: &MultChar,
    bx: &BoxDomain,
    tau: f64,
) -> Result<SubfieldRhs, VerifyError> {
    let generic = rhs_thm6(bx.cardinality(), field.p(), tau)?;
    let n = field.n();
    if n.is_multiple_of(2) && is_principal_on_subfield(field, chi, n / 2)? {
        let (_, best) = max_coset_intersection(field, bx, n / 2)?;
        return Ok(SubfieldRhs { rhs: best as f64 + generic, exceptional: true, coset_max: Some(best) });
    }
    Ok(SubfieldRhs { rhs: generic, exceptional: false, coset_max: None })
}

/// Checks the product-of-sides hypothesis, then resolves the branch.
pub fn thm6_bound(
    field: &FieldSpec,
    chi: &MultChar,
    bx: &BoxDomain,
    eps: f64,
    tau: f64,
) -> Result<SubfieldRhs, VerifyError> {
    if !thm6_hypothesis(field.p(), bx.sides(), eps) {
        return Err(VerifyError::HypothesisFailed(format!(
            "product of sides {} is below p^((2/5+eps)n)",
            bx.cardinality()
        )));
    }
    subfield_rhs(field, chi, bx, tau)
}

/// (H·p^{−δ})^n.
pub fn rhs_dl_thm2(h: u64, p: u64, n: usize, delta: f64) -> f64 {
    (h as f64 * (p as f64).powf(-delta)).powi(n as i32)
}

/// Equal sides H with H > p^{n/(2(n+1))+ε}.
pub fn dl_hypothesis(p: u64, sides: &[u64], eps: f64) -> bool {
    let n = sides.len() as f64;
    let h = sides[0];
    sides.iter().all(|&s| s == h) && h as f64 > (p as f64).powf(n / (2.0 * (n + 1.0)) + eps)
}

/// |B|·p^{−τ}.
pub fn rhs_chang_thm3(card: u64, p: u64, tau: f64) -> f64 {
    card as f64 * (p as f64).powf(-tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn burgess_pure() {
        assert!(close(rhs_burgess_pure(37, 101, 1), 101f64.sqrt() * 101f64.ln()));
        let v = rhs_burgess_pure(100, 101, 2);
        assert!(close(v, 10.0 * 101f64.powf(3.0 / 16.0) * 101f64.ln()));
        // At H = √p the exponent of p is 1/2 − (r−1)/(4r²): it drops from
        // r = 1 to its minimum at r = 2 and climbs back towards 1/2 after.
        let p = 1_000_003u64;
        let h = (p as f64).sqrt().round() as u64;
        let vals: Vec<f64> = (1..8).map(|r| rhs_burgess_pure(h, p, r)).collect();
        assert!(vals[1] < vals[0]);
        assert!(vals[1..].windows(2).all(|w| w[1] > w[0]));
        for (i, v) in vals.iter().enumerate() {
            let r = (i + 1) as f64;
            let expected = (p as f64).powf(0.5 - (r - 1.0) / (4.0 * r * r)) * (p as f64).ln();
            assert!((v / expected - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn burgess_mixed() {
        assert_eq!(rhs_burgess_mixed(10, 101, 1), Err(VerifyError::RTooSmall(1)));
        let v = rhs_burgess_mixed(16, 101, 2).unwrap();
        assert!(close(v, 4.0 * 101f64.powf(0.25) * 101f64.ln().powi(2)));
        let v = rhs_burgess_mixed(50, 103, 3).unwrap();
        assert!(close(v, 50f64.powf(2.0 / 3.0) * 103f64.powf(0.125) * 103f64.ln().powi(2)));
    }

    #[test]
    fn thm7_formula_and_gate() {
        assert!(close(rhs_thm7(10_000, 101, 0.25).unwrap(), 1e4 * 101f64.powf(-1.0 / 32.0)));
        assert!((rhs_thm7(500, 101, 1e-9).unwrap() - 500.0).abs() < 1e-9);
        assert!(matches!(rhs_thm7(5, 101, 0.3), Err(VerifyError::EpsOutOfRange(_))));
        assert!(matches!(rhs_thm7(5, 101, 0.0), Err(VerifyError::EpsOutOfRange(_))));
        // 101^{1/2} ≈ 10.05.
        assert!(thm7_hypothesis(101, &[11, 11], 0.25));
        assert!(!thm7_hypothesis(101, &[10, 11], 0.25));
        assert!(!thm7_hypothesis(101, &[11], 0.25));
    }

    #[test]
    fn dl_and_chang_gates() {
        assert_eq!(rhs_dl_thm2(7, 101, 2, 0.0), 49.0);
        // n = 2: exponent 1/3 + ε, so the threshold at p = 1000 is 10.
        assert!(dl_hypothesis(1000, &[11, 11], 0.0));
        assert!(!dl_hypothesis(1000, &[9, 9], 0.0));
        assert!(!dl_hypothesis(1000, &[11, 12], 0.0));
        // p = 101, n = 2, ε = 0.1: threshold 101^{1.0} = 101.
        assert!(!chang3_hypothesis(101, &[10, 10], 0.1));
        assert!(chang3_hypothesis(101, &[11, 10], 0.1));
        assert!(thm6_hypothesis(101, &[101, 1], 0.1));
        assert!(!chang3_hypothesis(101, &[101, 1], 0.1));
        assert!(close(tau_from_eps(0.25), 1.0 / 64.0));
        assert!(close(rhs_chang_thm3(100, 101, 0.5), 100.0 / 101f64.sqrt()));
    }

    #[test]
    fn subfield_branch_selection() {
        // n odd: generic.
        let f = make_field(5, 3, None).unwrap();
        let bx = BoxDomain::new(&f, &[0, 0, 0], &[4, 4, 4], None).unwrap();
        let chi = MultChar::new(&f, 31);
        let r = thm6_bound(&f, &chi, &bx, 0.1, 0.0025).unwrap();
        assert!(!r.exceptional);

        // n = 2, χ trivial on F_p: e divisible by p − 1.
        let f = make_field(7, 2, None).unwrap();
        let bx = BoxDomain::new(&f, &[0, 0], &[6, 6], None).unwrap();
        let chi = MultChar::new(&f, 6);
        let r = thm6_bound(&f, &chi, &bx, 0.1, 0.0025).unwrap();
        assert!(r.exceptional);
        let generic = rhs_thm6(36, 7, 0.0025).unwrap();
        assert!(close(r.rhs, r.coset_max.unwrap() as f64 + generic));
        let chi = MultChar::new(&f, 5);
        assert!(!thm6_bound(&f, &chi, &bx, 0.1, 0.0025).unwrap().exceptional);

        let small = BoxDomain::new(&f, &[0, 0], &[1, 1], None).unwrap();
        assert!(matches!(
            thm6_bound(&f, &chi, &small, 0.1, 0.0025),
            Err(VerifyError::HypothesisFailed(_))
        ));
    }
}
