//! JSON interchange for subspaces.
//!
//! ```json
//! {"field": "complex", "ambient": 3, "vectors": [[1, 0, [0, 1]]]}
//! ```
//!
//! Each entry of `vectors` is one spanning vector of length `ambient`.
//! Complex scalars are `[re, im]`; plain numbers are accepted for both
//! fields. Vectors need not be orthonormal or independent.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::subspace::{FieldTag, Subspace, ToleranceProfile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    fn value(self) -> C64 {
        match self {
            Scalar::Real(x) => C64::new(x, 0.0),
            Scalar::Complex([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub field: FieldTag,
    pub ambient: usize,
    pub vectors: Vec<Vec<Scalar>>,
}

impl SubspaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: SubspaceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn validate(&self) -> Result<()> {
        for (k, v) in self.vectors.iter().enumerate() {
            if v.len() != self.ambient {
                return Err(Error::Parse(format!(
                    "vector {k} has length {}, expected {}",
                    v.len(),
                    self.ambient
                )));
            }
            for s in v {
                let z = s.value();
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::Parse(format!("vector {k} has a non-finite entry")));
                }
                if self.field == FieldTag::Real && z.im != 0.0 {
                    return Err(Error::Parse(format!("vector {k} has a complex entry in a real file")));
                }
            }
        }
        Ok(())
    }

    /// The spanned subspace, orthonormalized.
    pub fn to_subspace(&self, tol: &ToleranceProfile) -> Result<Subspace> {
        self.validate()?;
        let m = CMatrix::from_fn(self.ambient, self.vectors.len(), |i, j| self.vectors[j][i].value());
        Subspace::from_spanning(&m, self.field, tol)
    }

    /// The orthonormal basis of `s` as spanning vectors.
    pub fn from_subspace(s: &Subspace) -> Self {
        let vectors = s
            .basis()
            .column_iter()
            .map(|col| {
                col.iter()
                    .map(|z| match s.field() {
                        FieldTag::Real => Scalar::Real(z.re),
                        FieldTag::Complex => Scalar::Complex([z.re, z.im]),
                    })
                    .collect()
            })
            .collect();
        SubspaceFile {
            field: s.field(),
            ambient: s.ambient(),
            vectors,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data always serializes")
    }
}

pub fn read_subspace(path: impl AsRef<Path>) -> Result<Subspace> {
    SubspaceFile::read(path)?.to_subspace(&ToleranceProfile::default())
}

pub fn write_subspace(path: impl AsRef<Path>, s: &Subspace) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, SubspaceFile::from_subspace(s).to_json())
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}
