//! Encoding index tuples as single indices.

use mlab::pairing::BijectionSpec;

fn main() -> mlab::Result<()> {
    let cantor = BijectionSpec::cantor(2);
    let boxed = BijectionSpec::boxed(2, 3);
    let diag = BijectionSpec::diagonal_first(2, 3);
    println!(
        "{:>6} {:>7} {:>5} {:>9}",
        "(i,j)", "cantor", "box", "diagonal"
    );
    for i in 1..=3 {
        for j in 1..=3 {
            println!(
                "{:>6} {:>7} {:>5} {:>9}",
                format!("({i},{j})"),
                cantor.pair(&[i, j])?,
                boxed.pair(&[i, j])?,
                diag.pair(&[i, j])?
            );
        }
    }
    let triple = BijectionSpec::cantor(3);
    let v = triple.pair(&[2, 5, 1])?;
    println!("cantor(2,5,1) = {v}, back to {:?}", triple.unpair(v)?);
    Ok(())
}
