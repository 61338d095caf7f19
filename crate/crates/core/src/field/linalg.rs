//! Small dense matrices over F_p: rank and the change-of-basis matrix.

use super::arith::{inv_mod, mul_mod, sub_mod};
use super::FieldError;

/// Rank of a row-major matrix over F_p.
pub(crate) fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&c| c % p).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col], p);
        for c in m[rank].iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub_mod(*x, mul_mod(factor, y, p), p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A basis {ω_1, …, ω_n} of F_{p^n} over F_p.
///
/// Row j holds the power-basis coordinates of ω_j. The identity matrix is the
/// power basis 1, x, …, x^{n-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    rows: Vec<Vec<u64>>,
    identity: bool,
}

impl Basis {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        Self {
            rows,
            identity: true,
        }
    }

    /// Validates shape, coefficient range and invertibility over F_p.
    pub fn new(rows: Vec<Vec<u64>>, p: u64, n: usize) -> Result<Self, FieldError> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(FieldError::BasisShape { n });
        }
        if let Some(&c) = rows.iter().flatten().find(|&&c| c >= p) {
            return Err(FieldError::CoefficientOutOfRange { value: c, p });
        }
        if rank(&rows, p) != n {
            return Err(FieldError::SingularBasis);
        }
        let identity = rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, &c)| c == u64::from(i == j)));
        Ok(Self { rows, identity })
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    /// Power-basis coordinates of Σ x_j ω_j, written into `out`.
    #[inline]
    pub fn apply_into(&self, coords: &[u64], p: u64, out: &mut [u64]) {
        if self.identity {
            for (o, &x) in out.iter_mut().zip(coords) {
                *o = x % p;
            }
            return;
        }
        out.iter_mut().for_each(|o| *o = 0);
        for (row, &x) in self.rows.iter().zip(coords) {
            if x == 0 {
                continue;
            }
            for (o, &c) in out.iter_mut().zip(row) {
                *o = (*o + mul_mod(x % p, c, p)) % p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_singular_and_regular() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank(&[vec![1, 2], vec![2, 3]], 5), 2);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]], 5), 0);
    }

    #[test]
    fn basis_validation() {
        assert!(Basis::new(vec![vec![1, 1], vec![0, 1]], 5, 2).is_ok());
        assert!(matches!(
            Basis::new(vec![vec![1, 2], vec![2, 4]], 5, 2),
            Err(FieldError::SingularBasis)
        ));
        assert!(matches!(
            Basis::new(vec![vec![1, 0]], 5, 2),
            Err(FieldError::BasisShape { .. })
        ));
        assert!(Basis::new(vec![vec![1, 0], vec![0, 1]], 5, 2).unwrap().is_identity());
    }

    #[test]
    fn apply_mixes_rows() {
        let b = Basis::new(vec![vec![1, 1], vec![0, 1]], 5, 2).unwrap();
        let mut out = [0u64; 2];
        // 2·(1+ω) + 3·ω = 2 + 5ω = 2 + 0ω
        b.apply_into(&[2, 3], 5, &mut out);
        assert_eq!(out, [2, 0]);
    }
}
