//! The 2x2 sign matrix that makes Littlewood's 4/3 inequality an equality.

use mlab::catalog::{check_instance, InequalityInstance, NormMethod};
use mlab::CoefficientTensor;

fn main() -> mlab::Result<()> {
    let t = CoefficientTensor::from_real_entries(2, 2, &[1.0, 1.0, 1.0, -1.0])?;
    let report = check_instance(
        &InequalityInstance::littlewood(),
        &t,
        &[],
        NormMethod::ExactLinf,
    )?;
    println!("(sum |a_ij|^(4/3))^(3/4) = {:.12}", report.lhs);
    println!("||U||                     = {}", report.norm.value);
    println!(
        "ratio to sqrt(2) ||U||    = {:.12} (certified: {})",
        report.ratio, report.certified
    );
    let x = report.norm.certificate.vectors();
    println!(
        "maximizer: x = {:?}, y = {:?}",
        x[0].iter().map(|z| z.re).collect::<Vec<_>>(),
        x[1].iter().map(|z| z.re).collect::<Vec<_>>()
    );
    Ok(())
}
