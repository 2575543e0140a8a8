//! Random sign forms with repeated index groups: sampling, the process
//! tensor, Orlicz `psi_2` estimates, the union-bound threshold and the
//! growth experiment.

mod experiment;
mod lemma;
mod pattern;
mod process;
mod psi2;

pub use experiment::{ksz_csv, ksz_experiment, KszNorm};
pub use lemma::{
    existence_bound, exponent_floor, ln_net_cardinality, net_cardinality,
    threshold_condition_holds, threshold_lambda,
};
pub use pattern::RepetitionPattern;
pub use process::{
    exact_second_moment, ksz_process_tensor, l2_norm_bound, sample_sign_tensor, SignTensor,
};
pub use psi2::{psi2_mean, psi2_norm_estimate, Psi2Estimate};

/// Default subgaussian constant: the `psi_2` norm of a standard Gaussian.
pub fn default_c_sub() -> f64 {
    (8.0_f64 / 3.0).sqrt()
}
