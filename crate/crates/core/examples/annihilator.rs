//! The subspace polynomial of a span in F_16 and its composition algebra.

use twistgab::linpoly::{annihilator, annihilator_literal, span_elements, LinearizedPoly};
use twistgab::{Element, FieldTower};

fn main() -> twistgab::Result<()> {
    let t = FieldTower::with_defaults(2, 1, 4)?;
    let gens = [Element::ONE, t.root()];
    let p = annihilator(&t, &gens);
    assert_eq!(p, annihilator_literal(&t, &gens)?);
    println!(
        "q-degree {:?}, coefficients {:?}",
        p.q_degree(),
        p.coeffs().iter().map(|c| c.index()).collect::<Vec<_>>()
    );

    let kernel = p.kernel(&t)?;
    let span = span_elements(&t, &gens);
    println!("kernel size {} (span size {})", kernel.len(), span.len());
    assert!(span.iter().all(|&u| p.eval(&t, u).is_zero()));

    // x^[2] + x is divisible on the right by the annihilator of F_2.
    let f = LinearizedPoly::monomial(2, Element::ONE).add(&t, &LinearizedPoly::identity());
    let d = annihilator(&t, &[Element::ONE]);
    let (quo, rem) = f.right_divide(&t, &d)?;
    println!(
        "(x^[2] + x) = Q∘(x^[1] - x) + R with R zero: {}",
        rem.is_zero()
    );
    assert_eq!(quo.compose(&t, &d), f);
    Ok(())
}
