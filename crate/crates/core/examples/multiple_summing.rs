//! Multiple summing ratio with canonical and spread-out input sequences.

use mlab::catalog::{canonical_sequences, multiple_summing_ratio, NormMethod};
use mlab::pairing::BijectionSpec;
use mlab::tensor::basis_vector;
use mlab::CoefficientTensor;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> mlab::Result<()> {
    let dim = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let t =
        CoefficientTensor::from_real_fn(3, dim, |_| if rng.random::<bool>() { 1.0 } else { -1.0 })?;
    let sigma = BijectionSpec::boxed(2, dim);
    let (core, tail) = canonical_sequences(dim, 2, &[sigma], dim)?;
    let c = std::f64::consts::SQRT_2;
    let r = multiple_summing_ratio(
        &t,
        2,
        &core,
        &tail,
        4.0 / 3.0,
        &[1.0, 1.0],
        c,
        NormMethod::ExactLinf,
    )?;
    println!(
        "canonical: lhs {:.6} weak {:.3} ratio {:.6}",
        r.lhs, r.weak_product, r.ratio
    );

    let bilinear = CoefficientTensor::from_real_fn(2, dim, |_| rng.random_range(-1.0..1.0))?;
    let seq = vec![
        basis_vector(dim, 1),
        basis_vector(dim, 2),
        basis_vector(dim, 2),
    ];
    let r = multiple_summing_ratio(
        &bilinear,
        2,
        &[seq.clone(), seq],
        &[],
        4.0 / 3.0,
        &[1.0, 1.0],
        c,
        NormMethod::ExactLinf,
    )?;
    println!(
        "repeated:  lhs {:.6} weak {:.3} ratio {:.6}",
        r.lhs, r.weak_product, r.ratio
    );
    Ok(())
}
