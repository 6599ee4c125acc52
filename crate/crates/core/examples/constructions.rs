//! MRD twisted codes over F_256 with evaluation points in F_16. Since
//! [F_256 : F_16] = 2, a 1-sum-product free pair is a pair of F_16-multiples.

use twistgab::mrdcheck::{
    construct_chain_mrd, construct_scalar_multiple_mrd, construct_sum_product_free_mrd,
};
use twistgab::{Budget, Element, FieldTower};

fn main() -> twistgab::Result<()> {
    let t = FieldTower::with_defaults(2, 1, 8)?;
    let b = Budget::default();
    let sub = t.subfield_elements(4)?;
    let mut alpha: Vec<Element> = Vec::new();
    for &x in &sub {
        let mut c = alpha.clone();
        c.push(x);
        if t.fq_rank(&c) == c.len() && c.len() <= 3 {
            alpha = c;
        }
    }
    let w = t.root();

    let chain = construct_chain_mrd(&t, &[4], &alpha, 1, 0, &[0], &[w], &b)?;
    println!("chain: MRD = {:?}", chain.verification.map(|v| v.is_mrd));

    let scaled = construct_scalar_multiple_mrd(&t, 4, &alpha, 1, 0, &[0, 1], w, &[sub[3]], &b)?;
    println!(
        "scalar multiple: etas {:?}, MRD = {:?}",
        scaled
            .spec
            .etas()
            .iter()
            .map(|e| e.index())
            .collect::<Vec<_>>(),
        scaled.verification.map(|v| v.is_mrd)
    );

    let spf =
        construct_sum_product_free_mrd(&t, 4, &alpha, 1, 0, &[0, 1], &[w, t.mul(w, sub[5])], &b)?;
    println!(
        "sum-product free: MRD = {:?}",
        spf.verification.map(|v| v.is_mrd)
    );

    let bad = construct_sum_product_free_mrd(
        &t,
        4,
        &alpha,
        1,
        0,
        &[0, 1],
        &[w, t.add(w, Element::ONE)],
        &b,
    );
    println!("rejected: {}", bad.unwrap_err());
    Ok(())
}
