// Tropical curves: cycle bases, contraction along a face, subdivision and
// cycle-connected classes.

use tropjac::zlinalg::zvec;
use tropjac::{EdgeSpec, FsMonoid, TropCurve};

pub fn run_example() -> tropjac::Result<()> {
    let m = FsMonoid::free(3);
    let theta = TropCurve::new(
        m.clone(),
        vec!["a".into(), "b".into()],
        vec![
            EdgeSpec::new("e1", "a", "b", zvec(&[1, 0, 0])),
            EdgeSpec::new("e2", "a", "b", zvec(&[0, 1, 0])),
            EdgeSpec::new("e3", "a", "b", zvec(&[0, 0, 1])),
        ],
    )?;
    println!("{theta}");
    println!("genus {}, cycles {:?}", theta.genus(), theta.h1_basis().cycles);

    // contract the edge whose length spans the face {e1}
    let face = m.face_of(&zvec(&[1, 0, 0]))?;
    let (proj, q) = m.quotient_by_face(face)?;
    let (two_loops, _) = theta.contract(&proj, &q)?;
    println!("after contracting e1:\n{two_loops}");

    // pieces must be nonzero and sum to the original length
    if let Err(e) = theta.subdivide("e1", zvec(&[1, 0, 0]), zvec(&[0, 0, 0])) {
        println!("rejected: {e}");
    }

    let n = FsMonoid::natural();
    let loop2 = TropCurve::new(n, vec!["v".into()], vec![EdgeSpec::new("e", "v", "v", zvec(&[2]))])?;
    let (two_gon, _) = loop2.subdivide("e", zvec(&[1]), zvec(&[1]))?;
    println!("subdivided loop:\n{two_gon}");

    let barbell = TropCurve::new(
        FsMonoid::natural(),
        vec!["x".into(), "y".into()],
        vec![
            EdgeSpec::new("l1", "x", "x", zvec(&[2])),
            EdgeSpec::new("bar", "x", "y", zvec(&[1])),
            EdgeSpec::new("l2", "y", "y", zvec(&[3])),
        ],
    )?;
    let classes: Vec<Vec<usize>> = barbell.cycle_connected_components().into_iter().map(|c| c.edges).collect();
    println!("barbell classes {classes:?}, bridges {:?}", barbell.bridges());
    Ok(())
}

#[allow(dead_code)]
fn main() -> tropjac::Result<()> {
    run_example()
}
