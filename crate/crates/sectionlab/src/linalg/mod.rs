//! Matrix/vector substrate: orthonormal bases, p-norms under both
//! measures, Schatten norms, and exact/heuristic operator norms.

mod matrix;
mod norms;
mod opnorm;

pub use matrix::{orthonormalize, Matrix, Provenance, Subspace, Vector};
pub use norms::{lp_norm, lp_norm_slice, schatten_norm};
pub use opnorm::{
    opnorm_2_to_p, opnorm_inf_to_1, opnorm_pprime_to_p, InfToOneNorm, NormKind, OpNormEstimate,
    OpNormMode, SignVector, DEFAULT_ENUM_CAP,
};

pub(crate) use opnorm::standard_normal;
