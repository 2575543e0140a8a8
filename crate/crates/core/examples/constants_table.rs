//! Best known Bohnenblust–Hille constants next to their power bounds.

use mlab::catalog::constants_table;

fn main() {
    println!(
        "{:>3} {:>10} {:>10} {:>10} {:>10} {:>8}",
        "m", "L_C", "L_R", "m^0.21139", "1.3m^.365", "2m/(m+1)"
    );
    for row in constants_table(20) {
        println!(
            "{:>3} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>8.5}",
            row.m, row.complex, row.real, row.complex_bound, row.real_bound, row.exponent
        );
    }
}
