//! Covering radius and deep holes of a one-twist code over F_16.

use twistgab::codes::CodeSpec;
use twistgab::covering::{
    covering_report, deep_hole_family, deep_hole_via_extension, is_deep_hole, Flavor,
};
use twistgab::{Budget, Element, FieldTower};

fn main() -> twistgab::Result<()> {
    let t = FieldTower::with_defaults(2, 1, 4)?;
    let b = Budget::default();
    let alpha: Vec<Element> = (0..4).map(|i| t.pow(t.root(), i)).collect();
    let spec = CodeSpec::one_twist(alpha, 2, 1, 0, Element::from_index(6));

    let r = covering_report(&t, &spec, &b)?;
    println!(
        "rho = {:?} (bounds {}..={}), deep cosets {} of {}",
        r.rho, r.lower.value, r.upper.value, r.deep_cosets, r.cosets
    );

    for flavor in [Flavor::TopPower, Flavor::TwistRow] {
        let u = deep_hole_family(
            &t,
            &spec,
            Element::from_index(3),
            flavor,
            &[Element::ONE, t.root()],
        )?;
        println!(
            "{}: deep = {}, extension MRD = {}",
            flavor.as_str(),
            is_deep_hole(&t, &spec, &u, &b)?,
            deep_hole_via_extension(&t, &spec, &u, &b)?
        );
    }
    Ok(())
}
