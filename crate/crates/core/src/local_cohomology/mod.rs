//! Local cohomology supported at an ideal generated by a regular
//! sequence: Koszul complexes, stable Koszul (limit) classes written
//! as generalized fractions, the Cech model and its comparison signs,
//! base change, and the identification of Koszul cohomology with Ext.

pub mod cech;
pub mod ext_koszul;
pub mod fractions;
pub mod koszul;

pub use cech::{certify_non_zerodivisor, CechCochain, CechData, LocalizedElt};
pub use ext_koszul::ExtData;
pub use fractions::{
    lc_base_change, lc_tensor_check, n_limit_iso, top_koszul_to_normal,
    transition_injectivity_check, BaseChangedFraction, FractionContext, GeneralizedFraction,
    NormalElt, NormalModule,
};
pub use koszul::{koszul_complex, removal_sign, subsets_lex, KoszulData};
