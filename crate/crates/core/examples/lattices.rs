// Exact integer linear algebra: normal forms, kernels, saturation and
// finitely generated abelian groups.

use tropjac::zlinalg::{hnf, kernel, quotient, saturate, snf, snf_diagonal, IntMatrix, Sublattice};

pub fn run_example() -> tropjac::Result<()> {
    let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let (d, u, v) = snf(&m);
    assert_eq!(u.mul(&m).mul(&v), d);
    println!("invariant factors of {m:?}: {:?}", snf_diagonal(&d));

    let (h, _) = hnf(&m);
    println!("Hermite form: {h:?}");

    let relations = Sublattice::from_generators(&m);
    println!("Z^3 / rows = {}", quotient(3, &relations));

    let two_x = Sublattice::from_generators(&IntMatrix::from_i64(&[&[2, 0, 0]]));
    println!("saturation of 2e1: {:?}", saturate(&two_x).basis());

    let ker = kernel(&IntMatrix::from_i64(&[&[1, 1, 1]]));
    println!("kernel of (1 1 1) has rank {}", ker.rank());
    Ok(())
}

#[allow(dead_code)]
fn main() -> tropjac::Result<()> {
    run_example()
}
