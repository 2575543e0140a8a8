//! Exact sign enumeration against randomized alternating ascent.

use mlab::norms::{sup_norm_ascent, sup_norm_linf_exact, BallSpec};
use mlab::CoefficientTensor;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> mlab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (order, dim) in [(2, 5), (3, 4), (3, 6)] {
        let t = CoefficientTensor::from_real_fn(order, dim, |_| rng.random_range(-1.0..=1.0))?;
        let exact = sup_norm_linf_exact(&t)?;
        let ascent = sup_norm_ascent(&t, BallSpec::linf(), 20, 7);
        println!(
            "m={order} N={dim}: exact {:.9}  ascent {:.9}",
            exact.value, ascent.value
        );
        for p in [2.0, 4.0] {
            let lp = sup_norm_ascent(&t, BallSpec::new(p)?, 20, 7);
            println!("         l_{p} ball lower bound {:.9}", lp.value);
        }
    }
    Ok(())
}
