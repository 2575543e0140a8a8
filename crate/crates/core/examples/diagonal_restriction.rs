//! Collapsing a trilinear form onto two indices with a pairing map.

use mlab::catalog::{check_instance, diagonal_restriction_sum, InequalityInstance, NormMethod};
use mlab::pairing::BijectionSpec;
use mlab::CoefficientTensor;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> mlab::Result<()> {
    let dim = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t =
        CoefficientTensor::from_real_fn(3, dim, |_| if rng.random::<bool>() { 1.0 } else { -1.0 })?;
    let inst = InequalityInstance::diagonal_43(3)?;
    for sigma in [
        BijectionSpec::boxed(2, dim),
        BijectionSpec::cantor(2),
        BijectionSpec::diagonal_first(2, dim),
    ] {
        let kept = diagonal_restriction_sum(&t, 2, &[sigma], 1.0, None)?;
        let r = check_instance(&inst, &t, &[sigma], NormMethod::ExactLinf)?;
        println!(
            "{:>10}: {kept} coefficients kept, lhs {:.6}, ratio {:.6}",
            sigma.to_string(),
            r.lhs,
            r.ratio
        );
    }
    Ok(())
}
