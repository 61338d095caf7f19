//! Compensated (Neumaier) summation of complex values with a fixed,
//! thread-count-independent reduction order.

use num_complex::Complex64;

use crate::par::{chunk_ranges, map_indexed, Execution};

/// Terms per chunk in [`sum_indexed`]. Chunk boundaries never depend on the
/// number of workers, which keeps parallel and serial results bit-identical.
pub const SUM_CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Running compensated sum of complex terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexAccumulator {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    /// Folds in another partial sum, carrying its compensation term.
    pub fn merge(&mut self, other: &ComplexAccumulator) {
        self.re.add(other.re.sum);
        self.re.add(other.re.comp);
        self.im.add(other.im.sum);
        self.im.add(other.im.comp);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<Complex64> for ComplexAccumulator {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// Sums `len` terms produced chunk-by-chunk.
///
/// `chunk_sum` receives a half-open index range and must add that range's
/// terms, in increasing index order, to the accumulator it is handed.
pub fn sum_indexed<F>(exec: Execution, len: u64, chunk_sum: F) -> Complex64
where
    F: Fn(std::ops::Range<u64>, &mut ComplexAccumulator) + Sync + Send,
{
    let ranges = chunk_ranges(len, SUM_CHUNK);
    let partials = map_indexed(exec, ranges.len(), |i| {
        let mut acc = ComplexAccumulator::new();
        chunk_sum(ranges[i].clone(), &mut acc);
        acc
    });
    let mut total = ComplexAccumulator::new();
    for part in &partials {
        total.merge(part);
    }
    total.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_recovers_small_terms() {
        let mut acc = ComplexAccumulator::new();
        acc.add(Complex64::new(1e16, 0.0));
        for _ in 0..1000 {
            acc.add(Complex64::new(1.0, 0.0));
        }
        acc.add(Complex64::new(-1e16, 0.0));
        assert_eq!(acc.value().re, 1000.0);
    }

    #[test]
    fn chunked_sum_identical_across_modes() {
        let f = |r: std::ops::Range<u64>, acc: &mut ComplexAccumulator| {
            for k in r {
                let t = k as f64 * 0.001;
                acc.add(Complex64::new(t.cos(), t.sin()));
            }
        };
        let a = sum_indexed(Execution::Sequential, 50_000, f);
        let b = sum_indexed(Execution::Parallel, 50_000, f);
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
}
