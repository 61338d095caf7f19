mod common;

use charsum_core::characters::{complete_add_sum, complete_mult_sum, gauss_sum, AddCharParam, MultChar};
use charsum_core::FieldSpec;
use common::{elem, nonzero, small_fields};
use num_complex::Complex64;
use proptest::prelude::*;

fn field(i: usize) -> &'static FieldSpec {
    let fs = small_fields();
    &fs[i % fs.len()]
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiplicative_character_is_multiplicative(i in 0usize..9, e in any::<i64>(), x in any::<u64>(), y in any::<u64>()) {
        let f = field(i);
        let chi = MultChar::new(f, e);
        let (x, y) = (elem(f, x), elem(f, y));
        let xy = f.mul(&x, &y).unwrap();
        prop_assert!(close(chi.eval(f, &xy), chi.eval(f, &x) * chi.eval(f, &y), 1e-12));
        let v = chi.eval(f, &x);
        if x.is_zero() {
            prop_assert_eq!(v, Complex64::new(0.0, 0.0));
        } else {
            prop_assert!((v.norm() - 1.0).abs() < 1e-12);
            prop_assert!(close(chi.conj().eval(f, &x), v.conj(), 1e-12));
        }
    }

    #[test]
    fn additive_character_is_additive(i in 0usize..9, a in any::<u64>(), x in any::<u64>(), y in any::<u64>()) {
        let f = field(i);
        let psi = AddCharParam::new(f, elem(f, a)).unwrap();
        let (x, y) = (elem(f, x), elem(f, y));
        let sum = f.add(&x, &y).unwrap();
        prop_assert!(close(psi.eval(f, &sum), psi.eval(f, &x) * psi.eval(f, &y), 1e-12));
    }

    #[test]
    fn gauss_sum_relations(i in 0usize..9, e in 1u64..1_000_000, a in any::<u64>()) {
        let f = field(i);
        let e = 1 + e % (f.q() - 2).max(1);
        let chi = MultChar::new(f, e as i64);
        prop_assume!(!chi.is_trivial());
        let a = nonzero(f, a);
        let g = gauss_sum(f, &chi, &AddCharParam::new(f, a.clone()).unwrap());
        let q = f.q() as f64;
        prop_assert!((g.norm() - q.sqrt()).abs() < 1e-9 * q.sqrt());
        // G(χ, a) = χ̄(a)·G(χ, 1).
        let g1 = gauss_sum(f, &chi, &AddCharParam::new(f, f.one()).unwrap());
        prop_assert!(close(g, chi.conj().eval(f, &a) * g1, 1e-9 * q));
    }
}

#[test]
fn orthogonality_over_small_fields() {
    for f in small_fields() {
        let q = f.q() as f64;
        for e in 0..f.q() - 1 {
            let s = complete_mult_sum(f, &MultChar::new(f, e as i64));
            let expected = if e == 0 { q - 1.0 } else { 0.0 };
            assert!((s - Complex64::new(expected, 0.0)).norm() <= 1e-9 * q);
        }
        for a in f.elements() {
            let s = complete_add_sum(f, &AddCharParam::new(f, a.clone()).unwrap());
            let expected = if a.is_zero() { q } else { 0.0 };
            assert!((s - Complex64::new(expected, 0.0)).norm() <= 1e-9 * q);
        }
    }
}

#[test]
fn trivial_character_gauss_sum() {
    for f in small_fields() {
        let chi = MultChar::new(f, 0);
        for a in f.elements() {
            let g = gauss_sum(f, &chi, &AddCharParam::new(f, a.clone()).unwrap());
            // Σ_{x≠0} ψ_a(x) is −1 for a ≠ 0 and q − 1 for a = 0.
            let expected = if a.is_zero() { f.q() as f64 - 1.0 } else { -1.0 };
            assert!((g - Complex64::new(expected, 0.0)).norm() < 1e-9 * f.q() as f64);
        }
    }
}
