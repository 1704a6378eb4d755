use nalgebra::{DMatrix, DVector};

use super::cvec::{real_pair, CVec, Signature};
use crate::error::{Error, Result};

/// Gram matrices with condition number above this mark a degenerate point.
pub const GRAM_CONDITION_LIMIT: f64 = 1e8;

/// A factored Gram system for repeated projections onto one span.
///
/// The Gram matrix is taken under the signature's real pairing, so the
/// basis need not be orthonormal and may contain timelike vectors.
#[derive(Debug, Clone)]
pub struct GramSystem {
    basis: Vec<CVec>,
    sig: Signature,
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    condition: f64,
}

/// Result of projecting one vector: coefficients on the basis and the
/// projected vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub coeffs: Vec<f64>,
    pub projected: CVec,
}

impl GramSystem {
    pub fn new(basis: Vec<CVec>, sig: &Signature) -> Result<Self> {
        let n = basis.len();
        let gram = DMatrix::from_fn(n, n, |a, b| real_pair(&basis[a], &basis[b], sig));
        if gram.iter().any(|g| !g.is_finite()) {
            return Err(Error::DegenerateGram {
                condition: f64::INFINITY,
            });
        }
        let eig = gram.clone().symmetric_eigenvalues();
        let (lo, hi) = eig.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), e| {
            (lo.min(e.abs()), hi.max(e.abs()))
        });
        let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        if !(condition <= GRAM_CONDITION_LIMIT) {
            return Err(Error::DegenerateGram { condition });
        }
        Ok(GramSystem {
            basis,
            sig: sig.clone(),
            lu: gram.lu(),
            condition,
        })
    }

    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn basis(&self) -> &[CVec] {
        &self.basis
    }

    /// The unique w in the span with real_pair(v − w, b) = 0 for every basis b.
    pub fn project(&self, v: &CVec) -> Projection {
        let rhs = DVector::from_iterator(
            self.basis.len(),
            self.basis.iter().map(|b| real_pair(v, b, &self.sig)),
        );
        let coeffs = self
            .lu
            .solve(&rhs)
            .expect("Gram matrix passed the condition check");
        let mut projected = CVec::zeros(v.len());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            projected = &projected + &b.scale(*c);
        }
        Projection {
            coeffs: coeffs.iter().copied().collect(),
            projected,
        }
    }
}

/// One-shot projection of `v` onto span(`basis`).
pub fn project_onto_span(v: &CVec, basis: &[CVec], sig: &Signature) -> Result<CVec> {
    Ok(GramSystem::new(basis.to_vec(), sig)?.project(v).projected)
}
