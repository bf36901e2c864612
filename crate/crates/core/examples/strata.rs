// A family over the face lattice of N^2: fibers, Jacobians per stratum,
// generization maps and the alignment/finiteness check.

use tropjac::strata::{build_family, check_family};
use tropjac::zlinalg::zvec;
use tropjac::{EdgeSpec, FsMonoid, TropCurve};

pub fn run_example() -> tropjac::Result<()> {
    let base = FsMonoid::free(2);
    for length in [[1, 1], [1, 0]] {
        let c = TropCurve::new(base.clone(), vec!["v".into()], vec![EdgeSpec::new("e", "v", "v", zvec(&length))])?;
        let fam = build_family(&base, &c)?;
        let report = check_family(&fam)?;
        println!("loop of length {length:?}:");
        for f in &report.faces {
            println!("  face {:?}: aligned {}, Jac {}", f.rays, f.aligned, f.jacobian);
        }
        println!("  quasi-finite: {}", report.quasi_finite);
        for ((a, b), map) in fam.gen_maps() {
            if map.rows() > 0 && map.cols() > 0 {
                println!("  generization {a} -> {b}: {map:?}");
            }
        }
        assert!(fam.generization_triangles_commute());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tropjac::Result<()> {
    run_example()
}
