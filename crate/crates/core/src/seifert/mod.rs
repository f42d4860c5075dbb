//! Seifert matrices and the classical invariants derived from them.

mod blanchfield;
mod signature;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::factor::interpolate;
use crate::exact::{IntMatrix, LaurentPoly};

pub use blanchfield::{
    alexander_module, basis_element, blanchfield_metabolizers, blanchfield_pairing, AlexanderModule, BlanchfieldValue,
    ModuleElement, PrimaryComponent, Submodule,
};
pub use signature::{levine_tristram, rho_average, SignatureFunction};

/// Square integer matrix of even size with `det(V - Vᵀ) = ±1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self> {
        if !v.is_square() {
            return Err(Error::InvalidSeifert(format!("not square: {}x{}", v.rows(), v.cols())));
        }
        if !v.rows().is_multiple_of(2) {
            return Err(Error::InvalidSeifert(format!("odd size {}", v.rows())));
        }
        let d = v.sub(&v.transpose())?.det()?;
        if d.abs() != BigInt::one() {
            return Err(Error::InvalidSeifert(format!("det(V - V^T) = {d}")));
        }
        Ok(SeifertMatrix { v })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows))
    }

    pub fn unknot() -> Self {
        SeifertMatrix { v: IntMatrix::zeros(0, 0) }
    }

    /// The right-handed trefoil.
    pub fn right_trefoil() -> Self {
        Self::from_rows(&[&[-1, 1], &[0, -1]]).expect("valid")
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.v.rows()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    /// `V + Vᵀ`
    pub fn symmetrized(&self) -> IntMatrix {
        self.v.add(&self.v.transpose()).expect("square")
    }

    /// `V - Vᵀ`
    pub fn antisymmetrized(&self) -> IntMatrix {
        self.v.sub(&self.v.transpose()).expect("square")
    }

    pub fn connected_sum(&self, other: &Self) -> Self {
        SeifertMatrix { v: self.v.block_sum(&other.v) }
    }

    /// Mirror image, `-Vᵀ`.
    pub fn mirror(&self) -> Self {
        SeifertMatrix { v: -&self.v.transpose() }
    }

    /// `t^-g det(tV - Vᵀ)`, symmetric under `t -> 1/t` with value `±1` at `t = 1`.
    pub fn alexander_polynomial(&self) -> LaurentPoly {
        let n = self.size();
        let g = self.genus() as i64;
        let vt = self.v.transpose();
        let xs: Vec<BigRational> = (0..=n as i64).map(|t| BigRational::from_integer(t.into())).collect();
        let ys: Vec<BigRational> = (0..=n as i64)
            .map(|t| {
                let m = self.v.scale(&BigInt::from(t)).sub(&vt).expect("square");
                BigRational::from_integer(m.det().expect("square"))
            })
            .collect();
        let p = interpolate(&xs, &ys);
        let coeffs: Vec<BigInt> = (0..=n).map(|k| p.coeff(k).to_integer()).collect();
        LaurentPoly::new(-g, coeffs)
    }
}

/// The JSON shape `{"name": ..., "matrix": [[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeifertDocument {
    pub name: String,
    pub matrix: Vec<Vec<i64>>,
}

impl SeifertDocument {
    pub fn parse(json: &str) -> Result<(String, SeifertMatrix)> {
        let doc: SeifertDocument =
            serde_json::from_str(json).map_err(|e| Error::InvalidArgument(format!("seifert JSON: {e}")))?;
        let rows: Vec<Vec<BigInt>> = doc.matrix.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        let m = IntMatrix::from_rows(rows)?;
        Ok((doc.name, SeifertMatrix::new(m)?))
    }
}
