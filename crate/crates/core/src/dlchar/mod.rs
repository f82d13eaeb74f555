//! The K₀ dictionary and everything downstream of it: the formal uniform
//! lattice, duality, the v = 1 trace map, the inversion-of-ℓ decomposition,
//! eigenvalue weight partitions and the projectivity certificates.

pub mod cert;
pub mod k0;
pub mod trace;
pub mod uniform;
pub mod weights;

pub use cert::{
    dudas_malle_certificate, duality_check, duality_check_mono, NMatrix, ProjCertificate,
};
pub use k0::{
    k0_class_mono, k0_class_unip, k0_costd, k0_ic, k0_std, k0_tilt, tate_twist, zl_decompose,
    K0Class, K0Kind, K0Ring, K0Summand, K0SummandElem,
};
pub use trace::{tr_identity_check, tr_map, TrReport};
pub use uniform::UniformVirtual;
pub use weights::{weight_partition, SqrtChoice, WeightPartition};
