//! Log-log slopes of the diagonal witness: bounded exactly from s = p/(p-m).

use mlab::catalog::{exponent_scan, Denominator, DiagonalWitnessFamily};

fn main() -> mlab::Result<()> {
    let (m, p) = (3, 5.0);
    let family = DiagonalWitnessFamily::new(m, p)?;
    let s_grid: Vec<f64> = (0..=15).map(|i| 1.5 + 0.1 * i as f64).collect();
    let dims = [2, 4, 8, 16, 32, 64];
    println!("threshold s = {}", p / (p - m as f64));
    for row in exponent_scan(&family, &s_grid, &dims, Denominator::Holder, 0)? {
        println!(
            "s={:.1} slope={:+.6} bounded={}",
            row.s, row.slope, row.bounded
        );
    }
    Ok(())
}
