// Tropical Jacobians: the monodromy pairing, bounded homomorphisms, the
// group with its presentation, and torsion generators.

use tropjac::jacobian::{monodromy_pairing, torsion_subgroup, tropical_jacobian};
use tropjac::zlinalg::zvec;
use tropjac::{EdgeSpec, FsMonoid, TropCurve};

fn theta(m: FsMonoid, lengths: [&[i64]; 3]) -> tropjac::Result<TropCurve> {
    let edges = lengths
        .iter()
        .enumerate()
        .map(|(i, l)| EdgeSpec::new(&format!("e{}", i + 1), "a", "b", zvec(l)))
        .collect();
    TropCurve::new(m, vec!["a".into(), "b".into()], edges)
}

pub fn run_example() -> tropjac::Result<()> {
    // over N: a finite group whose order counts weighted spanning trees
    let c = theta(FsMonoid::natural(), [&[2], &[3], &[5]])?;
    let basis = c.h1_basis();
    let pairing = monodromy_pairing(&c, &basis);
    println!("pairing: {:?}", pairing.evaluate(&zvec(&[1])));
    let j = tropical_jacobian(&c)?;
    println!("Jac = {} (2*3 + 3*5 + 5*2 = 31)", j.group());

    // over N^3 with independent lengths: the universal theta graph
    let u = theta(FsMonoid::free(3), [&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])?;
    let ju = tropical_jacobian(&u)?;
    println!(
        "universal theta: Jac = {}, {} bounded homs, periods {:?}",
        ju.group(),
        ju.hom_rank(),
        ju.periods()
    );

    // a figure eight with loops on the two rays of N^2
    let eight = TropCurve::new(
        FsMonoid::free(2),
        vec!["v".into()],
        vec![EdgeSpec::new("a", "v", "v", zvec(&[2, 0])), EdgeSpec::new("b", "v", "v", zvec(&[0, 3]))],
    )?;
    let je = tropical_jacobian(&eight)?;
    let (tors, gens) = torsion_subgroup(&je);
    println!("figure eight: torsion {tors}, generator {:?}", gens);
    let g = &gens[0];
    let six: Vec<_> = g.iter().map(|x| x * 6).collect();
    assert!(je.is_zero(&six));
    Ok(())
}

#[allow(dead_code)]
fn main() -> tropjac::Result<()> {
    run_example()
}
