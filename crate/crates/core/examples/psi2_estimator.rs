//! Empirical psi_2 norms of Gaussian, Rademacher and constant samples.

use mlab::ksz::psi2_norm_estimate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn main() -> mlab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let gauss: Vec<f64> = (0..100_000).map(|_| rng.sample(StandardNormal)).collect();
    let signs: Vec<f64> = (0..100_000)
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect();
    let est = psi2_norm_estimate(&gauss, 1e-10)?;
    println!(
        "gaussian    {:.5} (closed form {:.5})",
        est.value,
        (8.0f64 / 3.0).sqrt()
    );
    println!(
        "rademacher  {:.5} (closed form {:.5})",
        psi2_norm_estimate(&signs, 1e-10)?.value,
        1.0 / 2f64.ln().sqrt()
    );
    println!(
        "constant 3  {:.5}",
        psi2_norm_estimate(&[3.0; 8], 1e-10)?.value
    );
    Ok(())
}
