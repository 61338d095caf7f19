#![allow(dead_code)]

use std::sync::OnceLock;

use charsum_core::{make_field, FieldElement, FieldSpec};

/// Small fields covering n = 1, 2, 3.
pub const SMALL: [(u64, usize); 9] = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (7, 2), (3, 3), (11, 2), (5, 3)];

pub fn small_fields() -> &'static [FieldSpec] {
    static FIELDS: OnceLock<Vec<FieldSpec>> = OnceLock::new();
    FIELDS.get_or_init(|| SMALL.iter().map(|&(p, n)| make_field(p, n, None).unwrap()).collect())
}

/// Element with encoding `raw mod q`.
pub fn elem(field: &FieldSpec, raw: u64) -> FieldElement {
    field.from_encoding(raw % field.q()).unwrap()
}

/// Nonzero element from an arbitrary integer.
pub fn nonzero(field: &FieldSpec, raw: u64) -> FieldElement {
    field.from_encoding(1 + raw % (field.q() - 1)).unwrap()
}
