//! Rank and Hamming distances of a Gabidulin code and of one-twist codes.

use twistgab::codes::{classify, CodeSpec};
use twistgab::mrdcheck::norm_mrd_condition;
use twistgab::{Budget, Element, FieldTower};

fn main() -> twistgab::Result<()> {
    let t = FieldTower::with_defaults(3, 1, 3)?;
    let budget = Budget::default();
    let alpha: Vec<Element> = (0..3).map(|i| t.pow(t.root(), i)).collect();

    let g = classify(&t, &CodeSpec::gabidulin(alpha.clone(), 2), &budget)?;
    println!(
        "Gabidulin [3,2]: d_R = {}, d_H = {}, {}",
        g.d_rank,
        g.d_hamming,
        g.label().as_str()
    );

    for eta in t.nonzero_elements().take(8) {
        let spec = CodeSpec::one_twist(alpha.clone(), 2, 0, 0, eta);
        let r = classify(&t, &spec, &budget)?;
        let norm = norm_mrd_condition(&t, &spec)?;
        println!(
            "eta = {:>2}: d_R = {}, MRD = {:<5}, norm rule = {:<5}, {}",
            eta.index(),
            r.d_rank,
            r.is_mrd,
            norm.holds,
            r.label().as_str()
        );
    }
    Ok(())
}
