//! Tables of roots of unity exp(2πik/m).

use num_complex::Complex64;

/// Tables larger than this are not materialized; values are then computed
/// per call with the same formula, so results are bit-identical either way.
pub const MAX_ROOT_TABLE: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct RootTable {
    order: u64,
    values: Option<Vec<Complex64>>,
}

#[inline]
fn root(k: u64, m: u64) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let theta = std::f64::consts::TAU * (k as f64 / m as f64);
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

impl RootTable {
    pub fn new(order: u64) -> Self {
        assert!(order > 0);
        let values =
            (order <= MAX_ROOT_TABLE).then(|| (0..order).map(|k| root(k, order)).collect());
        Self { order, values }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// exp(2πik/m) for k in [0, m).
    #[inline]
    pub fn get(&self, k: u64) -> Complex64 {
        debug_assert!(k < self.order);
        match &self.values {
            Some(v) => v[k as usize],
            None => root(k, self.order),
        }
    }
}
