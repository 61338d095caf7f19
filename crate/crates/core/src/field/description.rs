use serde::{Deserialize, Serialize};

use super::{make_field, Basis, FieldError, FieldSpec};

/// JSON field description: `{"p": 5, "n": 2, "modulus": [2, 0, 1],
/// "basis": [[1, 0], [1, 1]]}`. `modulus` and `basis` are optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<u64>>>,
}

impl FieldDescription {
    pub fn from_json(text: &str) -> Result<Self, FieldError> {
        serde_json::from_str(text).map_err(|e| FieldError::Description(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("description serializes")
    }

    pub fn describe(field: &FieldSpec, basis: Option<&Basis>) -> Self {
        Self {
            p: field.p(),
            n: field.n(),
            modulus: Some(field.modulus().to_vec()),
            basis: basis.map(|b| b.rows().to_vec()),
        }
    }

    pub fn build(&self) -> Result<(FieldSpec, Option<Basis>), FieldError> {
        let field = make_field(self.p, self.n, self.modulus.as_deref())?;
        let basis = self
            .basis
            .clone()
            .map(|rows| Basis::new(rows, self.p, self.n))
            .transpose()?;
        Ok((field, basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_build() {
        let d = FieldDescription::from_json(r#"{"p":5,"n":2,"modulus":[2,0,1],"basis":[[1,0],[1,1]]}"#)
            .unwrap();
        let (f, b) = d.build().unwrap();
        assert_eq!(f.q(), 25);
        assert!(!b.unwrap().is_identity());
        let back = FieldDescription::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn singular_basis_rejected() {
        let d = FieldDescription::from_json(r#"{"p":5,"n":2,"basis":[[1,1],[2,2]]}"#).unwrap();
        assert_eq!(d.build().unwrap_err(), FieldError::SingularBasis);
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(
            FieldDescription::from_json("{\"p\": 5}"),
            Err(FieldError::Description(_))
        ));
    }
}
