// A non-simplicial cone: extreme rays, the face lattice, bounded-by
// subgroups and a face quotient.

use tropjac::zlinalg::zvec;
use tropjac::FsMonoid;

pub fn run_example() -> tropjac::Result<()> {
    // the cone over a square
    let m = FsMonoid::new(3, vec![zvec(&[1, 0, 1]), zvec(&[0, 1, 1]), zvec(&[-1, 0, 1]), zvec(&[0, -1, 1])])?;
    println!("{m}");
    println!("extreme rays: {:?}", m.extreme_rays());
    for (i, f) in m.faces().iter().enumerate() {
        println!("  face {i}: rays {} dim {}", f.label(), f.dim());
    }

    let b = zvec(&[1, 1, 2]);
    let face = m.face_of(&b)?;
    println!("(1,1,2) lies in the interior of face {}", face.label());
    println!("elements bounded by it span rank {}", m.bounded_by_subgroup(&b)?.rank());

    let (proj, q) = m.quotient_by_face(face)?;
    println!("quotient by that face: {q}, projection {:?}", proj.matrix());
    Ok(())
}

#[allow(dead_code)]
fn main() -> tropjac::Result<()> {
    run_example()
}
