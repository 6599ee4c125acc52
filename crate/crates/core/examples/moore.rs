//! Moore determinants and the g-coefficients that turn a modified Moore
//! determinant into a plain one.

use twistgab::gcoeff::{g_of_subset, verify_modified_moore_identity};
use twistgab::moore::{det, modified_moore_matrix, moore_det_product, moore_matrix};
use twistgab::{Element, FieldTower};

fn main() -> twistgab::Result<()> {
    let t = FieldTower::with_defaults(2, 1, 5)?;
    let alpha: Vec<Element> = (0..4).map(|i| t.pow(t.root(), i)).collect();

    let m = moore_matrix(&t, &alpha, 4)?;
    let d = det(&t, &m)?;
    assert_eq!(d, moore_det_product(&t, &alpha)?);
    println!("|M_4(alpha)| = {:?}", t.coords(d));

    let pts = &alpha[..2];
    for h in 0..2 {
        for s in 0..3 {
            let g = g_of_subset(&t, &alpha, &[0, 1], h, s)?;
            let lhs = det(&t, &modified_moore_matrix(&t, pts, 2, h, 2 + s)?)?;
            assert!(verify_modified_moore_identity(&t, pts, h, s)?);
            println!(
                "h={h} t={s}: g = {:>2}, modified det = {:>2}",
                g.index(),
                lhs.index()
            );
        }
    }
    Ok(())
}
