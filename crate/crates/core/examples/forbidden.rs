//! The eta values that destroy the MRD property of a one-twist code, next to
//! the witness sets built from g-coefficients.

use twistgab::mrdcheck::{forbidden_eta_set_one_twist, omega_one, omega_tuples_exhaustive};
use twistgab::{Budget, Element, FieldTower};

fn main() -> twistgab::Result<()> {
    let t = FieldTower::with_defaults(2, 1, 4)?;
    let b = Budget::default();
    let alpha: Vec<Element> = (0..3).map(|i| t.pow(t.root(), i)).collect();
    let idx = |v: Vec<Element>| v.into_iter().map(|x| x.index()).collect::<Vec<_>>();

    for (k, h) in [(1, 0), (2, 0), (2, 1)] {
        let f = forbidden_eta_set_one_twist(&t, &alpha, k, h, 0, &b)?;
        // eta = -1/g for g in Omega_1 kills some minor.
        let mut killed: Vec<Element> = omega_one(&t, &alpha, k, h, 0, &b)?
            .values()
            .into_iter()
            .map(|g| t.neg(t.inv(g).unwrap()))
            .collect();
        killed.sort();
        assert!(killed.iter().all(|&e| f.contains(e)));
        println!("k={k} h={h}: forbidden {:?}", idx(f.values()));
        println!("          -1/omega_1 {:?}", idx(killed));
    }

    let pairs = omega_tuples_exhaustive(&t, &alpha, 1, 0, &[0, 1], &b)?;
    println!(
        "two twists t=(0,1): {} of {} eta pairs have a witness",
        pairs.len(),
        15 * 15
    );
    Ok(())
}
