//! Dualizing pairs for finite flat algebras, residue symbols through
//! the diagonal construction, truncated local duality, base change of
//! the pair and of residues, and Verdier-style normalization in
//! coordinates.

pub mod finite_algebra;
pub mod omega;
pub mod residue;
pub mod verdier;

pub use finite_algebra::{
    base_change_algebra, invert_in_algebra, omega_finite, theta_base_change, theta_transitivity,
    transport_matrix, uniqueness_transport, BaseChangedAlgebra, DualizingPair, FiniteFlatAlgebra,
    ThetaData,
};
pub use omega::RelativeDualizing;
pub use residue::{residue_base_change, ResidueData};
pub use verdier::{verdier_theta, verdier_trace_form, VerdierData};
