// Subgroup systems of a Tate curve: the torsion system and the poset of
// all systems closed under generization.

use tropjac::strata::{build_family, classify_models, DEFAULT_ENUMERATION_LIMIT};
use tropjac::zlinalg::zvec;
use tropjac::{EdgeSpec, FsMonoid, TropCurve};

pub fn run_example() -> tropjac::Result<()> {
    let base = FsMonoid::natural();
    let c = TropCurve::new(base.clone(), vec!["v".into()], vec![EdgeSpec::new("e", "v", "v", zvec(&[12]))])?;
    let fam = build_family(&base, &c)?;
    let cls = classify_models(&fam, true, DEFAULT_ENUMERATION_LIMIT)?;
    for t in &cls.torsion_system {
        println!("face {}: torsion {}", base.faces()[t.face].label(), t.group);
    }
    let poset = cls.poset.expect("enumerated");
    println!("{} systems (the divisors of 12)", poset.systems.len());
    for (i, s) in poset.systems.iter().enumerate() {
        println!("  #{i}: closed fiber subgroup of order {}", s.subgroups[0].order);
    }
    println!("covers: {:?}", poset.covers);
    println!("maximum #{}, minimum #{}", poset.maximum, poset.minimum);
    Ok(())
}

#[allow(dead_code)]
fn main() -> tropjac::Result<()> {
    run_example()
}
