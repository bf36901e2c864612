// Alignment: the witness cycle for a curve that is not aligned, and the
// decomposition of an aligned curve's Jacobian by cycle-connected classes.

use tropjac::jacobian::{aligned_decomposition, decomposition_group, is_aligned, tropical_jacobian};
use tropjac::zlinalg::zvec;
use tropjac::{EdgeSpec, FsMonoid, TropCurve};

pub fn run_example() -> tropjac::Result<()> {
    let m = FsMonoid::free(2);

    // a 2-gon whose edges lie on different rays
    let crossing = TropCurve::new(
        m.clone(),
        vec!["a".into(), "b".into()],
        vec![EdgeSpec::new("p", "a", "b", zvec(&[1, 0])), EdgeSpec::new("q", "a", "b", zvec(&[0, 2]))],
    )?;
    let report = is_aligned(&crossing)?;
    let w = report.witness.as_ref().expect("not aligned");
    println!("aligned: {}, witness cycle {:?} through edges {:?}", report.aligned, w.cycle, w.edges);
    println!("Jac = {}", tropical_jacobian(&crossing)?.group());

    // two triangles joined by a bridge, each on its own ray
    let ray = |k: i64, first: bool| if first { zvec(&[k, 0]) } else { zvec(&[0, k]) };
    let mut edges = Vec::new();
    for (i, (a, b)) in [("x0", "x1"), ("x1", "x2"), ("x2", "x0")].iter().enumerate() {
        edges.push(EdgeSpec::new(&format!("s{i}"), a, b, ray(i as i64 + 1, true)));
    }
    edges.push(EdgeSpec::new("bridge", "x0", "y0", zvec(&[1, 1])));
    for (i, (a, b)) in [("y0", "y1"), ("y1", "y2"), ("y2", "y0")].iter().enumerate() {
        edges.push(EdgeSpec::new(&format!("t{i}"), a, b, ray(2, false)));
    }
    let names = ["x0", "x1", "x2", "y0", "y1", "y2"].iter().map(|s| s.to_string()).collect();
    let c = TropCurve::new(m, names, edges)?;
    println!("bridged triangles aligned: {}", is_aligned(&c)?.aligned);
    let parts = aligned_decomposition(&c)?;
    for p in &parts {
        println!("  class {:?} on ray {}: {}", p.class.edges, p.ray, p.jacobian.group());
    }
    println!("sum {} = Jac {}", decomposition_group(&parts), tropical_jacobian(&c)?.group());
    Ok(())
}

#[allow(dead_code)]
fn main() -> tropjac::Result<()> {
    run_example()
}
