//! Boxes B = {Σ x_j ω_j : N_j < x_j ≤ N_j + H_j} with 0 ≤ N_j < N_j + H_j < p.
//!
//! Coordinates are taken in a basis {ω_j} (the power basis by default).
//! Enumeration is lexicographic in (x_1, …, x_n) with x_n varying fastest.

use std::fmt;

use thiserror::Error;

use crate::field::{Basis, Coeffs, FieldElement, FieldError, FieldSpec};

/// Above this many cosets of F_{p^k}^* the maximum is refused, not sampled.
pub const MAX_COSETS: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoxError {
    #[error("box needs {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate {coord}: need 0 <= N < N + H < p, got N = {offset}, H = {side}, p = {p}")]
    BoxOutOfRange {
        coord: usize,
        offset: u64,
        side: u64,
        p: u64,
    },
    #[error("box basis is singular over F_p")]
    SingularBasis,
    #[error("{k} does not divide the extension degree {n}")]
    NotASubfield { k: usize, n: usize },
    #[error("{cosets} cosets exceed the scan limit of {limit}")]
    TooLarge { cosets: u64, limit: u64 },
    #[error("malformed box specification {0:?}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxDomain {
    field_id: u64,
    p: u64,
    offsets: Vec<u64>,
    sides: Vec<u64>,
    basis: Basis,
}

pub fn make_box(
    field: &FieldSpec,
    offsets: &[u64],
    sides: &[u64],
    basis: Option<Basis>,
) -> Result<BoxDomain, BoxError> {
    BoxDomain::new(field, offsets, sides, basis)
}

impl BoxDomain {
    pub fn new(
        field: &FieldSpec,
        offsets: &[u64],
        sides: &[u64],
        basis: Option<Basis>,
    ) -> Result<Self, BoxError> {
        let n = field.n();
        let p = field.p();
        for len in [offsets.len(), sides.len()] {
            if len != n {
                return Err(BoxError::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        for (coord, (&offset, &side)) in offsets.iter().zip(sides).enumerate() {
            if side == 0 || offset.checked_add(side).is_none_or(|top| top >= p) {
                return Err(BoxError::BoxOutOfRange {
                    coord,
                    offset,
                    side,
                    p,
                });
            }
        }
        let basis = match basis {
            None => Basis::identity(n),
            Some(b) => {
                // Re-validate against this field.
                Basis::new(b.rows().to_vec(), p, n).map_err(|e| match e {
                    FieldError::SingularBasis => BoxError::SingularBasis,
                    other => BoxError::Field(other),
                })?
            }
        };
        Ok(Self {
            field_id: field.id(),
            p,
            offsets: offsets.to_vec(),
            sides: sides.to_vec(),
            basis,
        })
    }

    /// Parses "N1:H1,N2:H2,…".
    pub fn parse(field: &FieldSpec, spec: &str, basis: Option<Basis>) -> Result<Self, BoxError> {
        let (offsets, sides) = parse_box_spec(spec)?;
        Self::new(field, &offsets, &sides, basis)
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn sides(&self) -> &[u64] {
        &self.sides
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn field_id(&self) -> u64 {
        self.field_id
    }

    /// |B| = Π H_j.
    pub fn cardinality(&self) -> u64 {
        self.sides.iter().product()
    }

    pub fn max_side(&self) -> u64 {
        self.sides.iter().copied().max().unwrap_or(0)
    }

    /// Box coordinates of the element at lexicographic position `index`.
    pub fn coords_at(&self, mut index: u64) -> Coeffs {
        let mut coords = Coeffs::from_elem(0, self.dim());
        for j in (0..self.dim()).rev() {
            coords[j] = self.offsets[j] + 1 + index % self.sides[j];
            index /= self.sides[j];
        }
        coords
    }

    /// Power-basis coefficients of the element with the given box coordinates.
    #[inline]
    pub(crate) fn to_power_basis(&self, coords: &[u64], out: &mut [u64]) {
        self.basis.apply_into(coords, self.p, out);
    }

    pub fn element_at(&self, field: &FieldSpec, index: u64) -> FieldElement {
        let coords = self.coords_at(index);
        let mut c = Coeffs::from_elem(0, self.dim());
        self.to_power_basis(&coords, &mut c);
        field.element_unchecked(&c)
    }

    /// Advances box coordinates to the next lexicographic position.
    #[inline]
    pub(crate) fn step_coords(&self, coords: &mut [u64]) {
        for j in (0..coords.len()).rev() {
            if coords[j] < self.offsets[j] + self.sides[j] {
                coords[j] += 1;
                return;
            }
            coords[j] = self.offsets[j] + 1;
        }
    }

    /// Walks positions `range` in order, handing power-basis coefficients to `f`.
    pub(crate) fn for_each_in_range<F>(&self, range: std::ops::Range<u64>, mut f: F)
    where
        F: FnMut(&[u64]),
    {
        if range.is_empty() {
            return;
        }
        let mut coords = self.coords_at(range.start);
        let mut buf = Coeffs::from_elem(0, self.dim());
        for _ in range {
            self.to_power_basis(&coords, &mut buf);
            f(&buf);
            self.step_coords(&mut coords);
        }
    }

    /// All elements of the box in lexicographic coordinate order.
    pub fn enumerate<'a>(&'a self, field: &'a FieldSpec) -> impl Iterator<Item = FieldElement> + 'a {
        assert_eq!(self.field_id, field.id(), "box from another field");
        let mut coords = self.coords_at(0);
        (0..self.cardinality()).map(move |_| {
            let mut c = Coeffs::from_elem(0, self.dim());
            self.to_power_basis(&coords, &mut c);
            self.step_coords(&mut coords);
            field.element_unchecked(&c)
        })
    }

    /// Partition into sub-boxes with every side at most `max_side`, in
    /// lexicographic order of their lower corners.
    pub fn split(&self, max_side: u64) -> Vec<BoxDomain> {
        assert!(max_side >= 1, "max_side must be positive");
        let pieces: Vec<Vec<(u64, u64)>> = self
            .offsets
            .iter()
            .zip(&self.sides)
            .map(|(&n0, &h)| {
                let mut v = Vec::new();
                let mut start = 0;
                while start < h {
                    let len = max_side.min(h - start);
                    v.push((n0 + start, len));
                    start += len;
                }
                v
            })
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.dim()];
        loop {
            out.push(BoxDomain {
                field_id: self.field_id,
                p: self.p,
                offsets: idx.iter().enumerate().map(|(j, &i)| pieces[j][i].0).collect(),
                sides: idx.iter().enumerate().map(|(j, &i)| pieces[j][i].1).collect(),
                basis: self.basis.clone(),
            });
            let mut j = self.dim();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < pieces[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    }
}

impl fmt::Display for BoxDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, (n0, h)) in self.offsets.iter().zip(&self.sides).enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n0}:{h}")?;
        }
        Ok(())
    }
}

/// "N1:H1,N2:H2" → ([N1, N2], [H1, H2]).
pub fn parse_box_spec(spec: &str) -> Result<(Vec<u64>, Vec<u64>), BoxError> {
    let bad = || BoxError::Parse(spec.to_string());
    let mut offsets = Vec::new();
    let mut sides = Vec::new();
    for part in spec.split(',') {
        let (a, b) = part.trim().split_once(':').ok_or_else(bad)?;
        offsets.push(a.trim().parse().map_err(|_| bad())?);
        sides.push(b.trim().parse().map_err(|_| bad())?);
    }
    Ok((offsets, sides))
}

fn subfield_check(field: &FieldSpec, k: usize) -> Result<(), BoxError> {
    if k == 0 || !field.n().is_multiple_of(k) {
        Err(BoxError::NotASubfield { k, n: field.n() })
    } else {
        Ok(())
    }
}

/// |{x ∈ B : x/ξ ∈ F_{p^k}}|, with membership tested by z^{p^k} = z.
pub fn coset_intersection_count(
    field: &FieldSpec,
    bx: &BoxDomain,
    xi: &FieldElement,
    k: usize,
) -> Result<u64, BoxError> {
    subfield_check(field, k)?;
    let xi_inv = field.inv(xi)?;
    let mut count = 0;
    bx.for_each_in_range(0..bx.cardinality(), |c| {
        let z = field.mul_raw(c, xi_inv.coeffs());
        if field.in_subfield_raw(&z, k) {
            count += 1;
        }
    });
    Ok(count)
}

/// max_ξ |B ∩ ξF_{p^k}| over the (q-1)/(p^k-1) cosets of F_{p^k}^*.
///
/// Elements are bucketed by dlog(x) mod (q-1)/(p^k-1). The returned ξ is the
/// smallest-encoding element among all maximizing cosets.
pub fn max_coset_intersection(
    field: &FieldSpec,
    bx: &BoxDomain,
    k: usize,
) -> Result<(FieldElement, u64), BoxError> {
    subfield_check(field, k)?;
    let sub_order = field.p().pow(k as u32) - 1;
    let cosets = field.group_order() / sub_order;
    if cosets > MAX_COSETS {
        return Err(BoxError::TooLarge {
            cosets,
            limit: MAX_COSETS,
        });
    }
    let mut counts = vec![0u64; cosets as usize];
    bx.for_each_in_range(0..bx.cardinality(), |c| {
        let k = field.dlog_raw(c).expect("0 is never in a box");
        counts[(k % cosets) as usize] += 1;
    });
    let best = counts.iter().copied().max().unwrap_or(0);
    let g = field.generator().coeffs();
    let step = field.pow_raw(g, cosets);
    let mut rep: Option<u64> = None;
    for (c, _) in counts.iter().enumerate().filter(|(_, &v)| v == best) {
        // Coset g^c · F_{p^k}^* = {g^{c + cosets·j}}.
        let mut cur = field.pow_raw(g, c as u64);
        for _ in 0..sub_order {
            let enc = field.encode_raw(&cur);
            if rep.is_none_or(|r| enc < r) {
                rep = Some(enc);
            }
            cur = field.mul_raw(&cur, &step);
        }
    }
    let xi = field.from_encoding(rep.expect("box is nonempty"))?;
    Ok((xi, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use std::collections::HashSet;

    #[test]
    fn construction_examples() {
        let f7 = make_field(7, 1, None).unwrap();
        let b = make_box(&f7, &[0], &[6], None).unwrap();
        let encs: Vec<u64> = b.enumerate(&f7).map(|x| f7.encode(&x)).collect();
        assert_eq!(encs, vec![1, 2, 3, 4, 5, 6]);
        assert!(matches!(
            make_box(&f7, &[3], &[5], None),
            Err(BoxError::BoxOutOfRange { .. })
        ));
        assert!(matches!(
            make_box(&f7, &[0], &[0], None),
            Err(BoxError::BoxOutOfRange { .. })
        ));
        assert!(matches!(
            make_box(&f7, &[0, 0], &[1, 1], None),
            Err(BoxError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_in_f25() {
        let f = make_field(5, 2, Some(&[2, 0, 1])).unwrap();
        let b = make_box(&f, &[0, 0], &[2, 2], None).unwrap();
        assert_eq!(b.cardinality(), 4);
        let encs: HashSet<u64> = b.enumerate(&f).map(|x| f.encode(&x)).collect();
        assert_eq!(encs, HashSet::from([6, 7, 11, 12]));
        let b = make_box(&f, &[0, 0], &[2, 1], None).unwrap();
        let encs: Vec<u64> = b.enumerate(&f).map(|x| f.encode(&x)).collect();
        assert_eq!(encs, vec![6, 7]);
        let single = make_box(&f, &[2, 3], &[1, 1], None).unwrap();
        let only: Vec<_> = single.enumerate(&f).collect();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].coeffs(), &[3, 4]);
    }

    #[test]
    fn singular_basis_rejected() {
        let f = make_field(5, 2, None).unwrap();
        assert!(make_box(&f, &[0, 0], &[1, 1], Some(Basis::identity(2))).is_ok());
        let err = Basis::new(vec![vec![1, 2], vec![2, 4]], 5, 2).unwrap_err();
        assert_eq!(err, FieldError::SingularBasis);
        // A basis valid over F_5 but singular over F_7.
        let f7 = make_field(7, 2, None).unwrap();
        let b = Basis::new(vec![vec![1, 3], vec![3, 2]], 5, 2).unwrap();
        assert_eq!(
            make_box(&f7, &[0, 0], &[1, 1], Some(b)).unwrap_err(),
            BoxError::SingularBasis
        );
    }

    #[test]
    fn split_examples() {
        let f7 = make_field(7, 1, None).unwrap();
        let b = make_box(&f7, &[0], &[6], None).unwrap();
        assert_eq!(b.split(6), vec![b.clone()]);
        let parts = b.split(2);
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| p.sides() == [2]));
        assert_eq!(parts[1].offsets(), &[2]);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = make_field(11, 2, None).unwrap();
        let b = BoxDomain::parse(&f, "1:3, 0:9", None).unwrap();
        assert_eq!(b.to_string(), "1:3,0:9");
        assert!(matches!(BoxDomain::parse(&f, "1-3", None), Err(BoxError::Parse(_))));
    }

    #[test]
    fn coset_counts_in_f25() {
        let f = make_field(5, 2, Some(&[2, 0, 1])).unwrap();
        let b = make_box(&f, &[0, 0], &[4, 4], None).unwrap();
        // Identity basis: every element has x_2 >= 1, so nothing lies in F_5.
        assert_eq!(coset_intersection_count(&f, &b, &f.one(), 1).unwrap(), 0);
        // x = cω needs x_1 = 0, excluded by the box.
        assert_eq!(coset_intersection_count(&f, &b, &f.x(), 1).unwrap(), 0);
        // ω_1 = ω, ω_2 = 1 + ω: x_1ω + x_2(1+ω) = x_2 + (x_1+x_2)ω.
        let basis = Basis::new(vec![vec![0, 1], vec![1, 1]], 5, 2).unwrap();
        let b2 = make_box(&f, &[0, 0], &[4, 4], Some(basis)).unwrap();
        // In ωF_5 iff x_2 = 0: never.
        assert_eq!(coset_intersection_count(&f, &b2, &f.x(), 1).unwrap(), 0);
        // In (1+2ω)F_5 iff x_1 = x_2: four elements.
        let xi = f.element(&[1, 2]).unwrap();
        assert_eq!(coset_intersection_count(&f, &b2, &xi, 1).unwrap(), 4);
        // k = n: every element of B is in ξF_q.
        assert_eq!(coset_intersection_count(&f, &b, &f.x(), 2).unwrap(), 16);
        assert!(matches!(
            coset_intersection_count(&f, &b, &f.one(), 3),
            Err(BoxError::NotASubfield { .. })
        ));
    }

    #[test]
    fn max_coset_refuses_non_subfield() {
        let f = make_field(3, 3, None).unwrap();
        let b = make_box(&f, &[0, 0, 0], &[1, 1, 1], None).unwrap();
        assert!(matches!(
            max_coset_intersection(&f, &b, 2),
            Err(BoxError::NotASubfield { .. })
        ));
    }

    #[test]
    fn max_coset_whole_box_in_one_coset() {
        // n = 1, k = 1: one coset, containing everything.
        let f = make_field(11, 1, None).unwrap();
        let b = make_box(&f, &[2], &[5], None).unwrap();
        let (xi, count) = max_coset_intersection(&f, &b, 1).unwrap();
        assert_eq!(count, 5);
        assert_eq!(f.encode(&xi), 1);
    }
}
