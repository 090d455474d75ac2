//! The relative dualizing module of a presented algebra: for
//! `R = A[x_1..x_n]/(f_1..f_c)` with `(f)` a regular sequence in the
//! polynomial ring, a rank-one free `R`-module on the distinguished
//! generator written `den(dx_1∧…∧dx_n; f_1,…,f_c)` — plain
//! `dx_1∧…∧dx_n` when there are no relations.

use crate::algebra::ideal::check_regular_sequence;
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::{Ring, RingPresentation};
use crate::error::{AlgebraError, Result};

/// Rank-one free module with a distinguished generator symbol.
#[derive(Debug, Clone)]
pub struct RelativeDualizing {
    ring: Ring,
    presentation: Vec<Polynomial>,
}

impl RelativeDualizing {
    /// Builds the module from the ring's own (fiber) presentation,
    /// verifying that the presented relations form a regular sequence
    /// in the ambient polynomial algebra over the base.
    pub fn new(ring: &Ring) -> Result<RelativeDualizing> {
        let presentation = ring.own_relations().to_vec();
        let n = ring.fiber_arity();
        let c = presentation.len();
        if c > n {
            return Err(AlgebraError::Other(format!(
                "presentation has {c} relations but only {n} fiber variables"
            )));
        }
        if c > 0 {
            let base = ring.base_or_field();
            let fiber: Vec<String> = ring.fiber_vars().to_vec();
            let ambient = RingPresentation::algebra_over(&base, fiber, vec![])?;
            check_regular_sequence(&ambient, &presentation)?;
        }
        Ok(RelativeDualizing {
            ring: ring.clone(),
            presentation,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Codimension of the presentation.
    pub fn codim(&self) -> usize {
        self.presentation.len()
    }

    /// Relative dimension `n − c`.
    pub fn relative_dim(&self) -> usize {
        self.ring.fiber_arity() - self.presentation.len()
    }

    pub fn presentation(&self) -> &[Polynomial] {
        &self.presentation
    }

    /// The distinguished generator symbol.
    pub fn generator(&self) -> String {
        let wedge = self
            .ring
            .fiber_vars()
            .iter()
            .map(|v| format!("d{v}"))
            .collect::<Vec<_>>()
            .join("∧");
        if self.presentation.is_empty() {
            wedge
        } else {
            let rels = self
                .presentation
                .iter()
                .map(|p| self.ring.display(p))
                .collect::<Vec<_>>()
                .join(", ");
            format!("den({wedge}; {rels})")
        }
    }
}
