//! Fan isomorphisms, product decompositions and the resulting description
//! of the automorphism group as `∏ (Aut_{X_i}^{r_i} ⋊ S_{r_i})`.

mod decompose;
mod iso;
mod report;

pub use decompose::{decompose, Decomposition, Factor, IndecomposabilityCertificate, SplitFailure};
pub use iso::{
    fan_automorphisms, fan_invariants, fan_isomorphism, generating_set, is_fan_isomorphism,
    FanInvariants, FanIsomorphism, RayProfile,
};
pub use report::{
    aut_structure_report, product_roots_certificate, structure_string, wreath_order_check,
    AutStructureReport, FactorClass, WreathOrderCheck,
};
