//! Orthogonal projectors `Π_{C,M} = M Gᵀ (G M Gᵀ)⁻¹ G` for `M = aI + bJ`.
//!
//! Vectors act on the right: `x ↦ xΠ`. The image of that action is the
//! code and its kernel is M-orthogonal to the code. For `b ≠ 0` the
//! matrix is in general not symmetric.

use serde::{Deserialize, Serialize};

use crate::code::{LinearCode, Permutation, StructureParams};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::MatrixFq;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projector {
    mat: MatrixFq,
    code: LinearCode,
    params: StructureParams,
}

/// Wire form: the matrix JSON plus the form parameters and field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorJson {
    pub field: FieldSpec,
    pub a: u64,
    pub b: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u64>>,
}

impl Projector {
    /// Fails with [`Error::NotMLcd`] when the Gram matrix is singular.
    pub fn new(code: &LinearCode, params: &StructureParams) -> Result<Self> {
        let f = code.field();
        let n = code.len();
        if params.len() != n {
            return Err(Error::LengthMismatch(params.len(), n));
        }
        let g = code.generator();
        let gram_inv = code.gram(params)?.inverse().map_err(|e| match e {
            Error::Singular => Error::NotMLcd,
            other => other,
        })?;
        // (G M)ᵀ = M Gᵀ since M is symmetric; G M has rows a·g_r + b·(Σg_r)·1
        let mut gm = MatrixFq::zeros(f, code.dim(), n);
        for r in 0..code.dim() {
            let s = g.row(r).iter().fold(FieldElement::ZERO, |acc, &x| f.add(acc, x));
            let shift = f.mul(params.b(), s);
            for c in 0..n {
                gm.set(r, c, f.add(f.mul(params.a(), g.get(r, c)), shift));
            }
        }
        let mat = if code.dim() == 0 {
            MatrixFq::zeros(f, n, n)
        } else {
            gm.transpose().mul(&gram_inv)?.mul(g)?
        };
        Ok(Self {
            mat,
            code: code.clone(),
            params: *params,
        })
    }

    pub fn matrix(&self) -> &MatrixFq {
        &self.mat
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn params(&self) -> &StructureParams {
        &self.params
    }

    pub fn into_matrix(self) -> MatrixFq {
        self.mat
    }

    /// Basis of `{w : wΠ = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        self.mat.nullspace_left()
    }

    pub fn is_idempotent(&self) -> bool {
        self.mat.mul(&self.mat).map(|sq| sq == self.mat).unwrap_or(false)
    }

    /// `vΠ = v` for every generator row `v`.
    pub fn fixes_code(&self) -> bool {
        let g = self.code.generator();
        (0..g.rows()).all(|r| self.mat.vec_mul(g.row(r)).map(|x| x == g.row(r)).unwrap_or(false))
    }

    /// The row space of `Π` (its image under the right action) is the code.
    pub fn image_is_code(&self) -> bool {
        LinearCode::new(self.mat.clone()).map(|c| c == self.code).unwrap_or(false)
    }

    /// `v M wᵀ = 0` for all code generators `v` and kernel vectors `w`.
    pub fn kernel_is_orthogonal(&self) -> bool {
        let f = self.code.field();
        let g = self.code.generator();
        self.kernel_basis().iter().all(|w| {
            (0..g.rows()).all(|r| self.params.pair(f, g.row(r), w).is_zero())
        })
    }

    pub fn to_json(&self) -> ProjectorJson {
        ProjectorJson {
            field: self.code.field().spec().clone(),
            a: self.params.a().index() as u64,
            b: self.params.b().index() as u64,
            rows: self.mat.rows(),
            cols: self.mat.cols(),
            entries: self.mat.to_ints(),
        }
    }
}

/// Whether `Π_{Cπ,M} = P_πᵀ Π_{C,M} P_π`.
pub fn projector_equivariant(
    code: &LinearCode,
    perm: &Permutation,
    params: &StructureParams,
) -> Result<bool> {
    let before = Projector::new(code, params)?;
    let after = Projector::new(&code.apply_permutation(perm)?, params)?;
    Ok(*after.matrix() == perm.conjugate(before.matrix())?)
}
