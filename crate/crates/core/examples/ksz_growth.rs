//! Smallest sup-norm over random sign forms with a repeated index, and its growth.

use mlab::ksz::{default_c_sub, ksz_csv, ksz_experiment, KszNorm, RepetitionPattern};

fn main() -> mlab::Result<()> {
    let pattern: RepetitionPattern = "2,1".parse()?;
    let records = ksz_experiment(
        &pattern,
        &[4, 6, 8, 12, 16],
        200,
        42,
        KszNorm::Auto,
        default_c_sub(),
    )?;
    print!("{}", ksz_csv(&records));
    let k = pattern.groups() as f64;
    println!("# reference exponent (k+1)/2 = {}", (k + 1.0) / 2.0);
    Ok(())
}
