//! Finite certificates for the nonvanishing of `Ext²_{R₁}(k, F)` and
//! `Ext^{n+1}_R(R/I, F)`, and the length-`(n+1)` free resolution constructor.

mod escape;
mod ext;
pub mod fixtures;
mod resolution;

pub use escape::{support_escape, SupportEscapeCertificate};
pub use ext::{
    augmented_resolution, decomposition_table, dual_koszul_collapse, ext2_certificate,
    ext2_certificate_with, ext_n_plus_1, ext_n_plus_1_with, verify_certificate, Ext2Components,
    ExtCertificate, Resolver,
};
pub use resolution::{projective_resolution, ProjectiveResolution};
