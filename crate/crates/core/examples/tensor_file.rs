//! Writing a tensor in the text format, reading it back, evaluating it.

use mlab::{CoefficientTensor, MultiIndex, Scalar, ScalarField, VectorTuple};

fn main() -> mlab::Result<()> {
    let t = CoefficientTensor::from_coefficient_fn(2, 2, ScalarField::Complex, |i| {
        let c = i.components();
        Scalar::new(c[0] as f64, c[1] as f64 - 1.0)
    })?;
    let text = t.to_text();
    print!("{text}");
    let back = CoefficientTensor::from_text(&text)?;
    assert_eq!(back, t);
    println!("a_(2,2) = {}", back.get(&MultiIndex::from([2, 2]))?);
    let re = |v: &[f64]| v.iter().map(|&a| Scalar::new(a, 0.0)).collect::<Vec<_>>();
    let x = VectorTuple::new(
        ScalarField::Complex,
        vec![re(&[1.0, -1.0]), re(&[0.5, 0.5])],
    )?;
    println!("U(x, y) = {}", back.eval(&x)?);
    Ok(())
}
