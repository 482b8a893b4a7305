//! Finitely presented modules `M = coker(A)` over a ring presentation.

use std::sync::Arc;

use crate::error::{HkError, Result};
use crate::poly::Polynomial;
use crate::ring::RingPresentation;

/// `M = R^n / (columns of A)` for an `n x m` relations matrix `A`.
///
/// Rows index generators, columns index relations; entries are kept in normal
/// form with respect to the ring.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Arc<RingPresentation>,
    ngens: usize,
    rows: Vec<Vec<Polynomial>>,
}

impl ModulePresentation {
    pub fn new(ring: Arc<RingPresentation>, ngens: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        if rows.len() != ngens {
            return Err(HkError::Invalid(format!(
                "relations matrix has {} rows for {ngens} generators",
                rows.len()
            )));
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut reduced = Vec::with_capacity(ngens);
        for row in rows {
            if row.len() != ncols {
                return Err(HkError::Invalid("ragged relations matrix".into()));
            }
            let mut out = Vec::with_capacity(ncols);
            for a in row {
                if a.field() != ring.field() {
                    return Err(HkError::CharMismatch(
                        ring.characteristic(),
                        a.field().characteristic(),
                    ));
                }
                if a.nvars() != ring.nvars() {
                    return Err(HkError::ArityMismatch(ring.nvars(), a.nvars()));
                }
                out.push(ring.normal_form(&a.with_order(ring.order()))?);
            }
            reduced.push(out);
        }
        Ok(ModulePresentation {
            ring,
            ngens,
            rows: reduced,
        })
    }

    /// The free module `R^n`.
    pub fn free(ring: Arc<RingPresentation>, n: usize) -> Self {
        ModulePresentation {
            ring,
            ngens: n,
            rows: vec![Vec::new(); n],
        }
    }

    /// The cyclic module `R / (gens)`.
    pub fn cyclic(ring: Arc<RingPresentation>, gens: Vec<Polynomial>) -> Result<Self> {
        Self::new(ring, 1, vec![gens])
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn generator_count(&self) -> usize {
        self.ngens
    }

    pub fn relation_count(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    pub fn entry(&self, generator: usize, relation: usize) -> &Polynomial {
        &self.rows[generator][relation]
    }

    /// Column `s` of the relations matrix.
    pub fn relation(&self, s: usize) -> Vec<Polynomial> {
        self.rows.iter().map(|r| r[s].clone()).collect()
    }
}
