//! Arithmetic in F_{3^2} ⊂ F_{9^3}: coordinates, Frobenius, norm and the
//! subfield test.

use twistgab::{FieldTower, TowerParams};

fn main() -> twistgab::Result<()> {
    let tower = FieldTower::new(TowerParams::with_default_moduli(3, 2, 3)?)?;
    println!(
        "q = {}, m = {}, |F| = {}",
        tower.q(),
        tower.m(),
        tower.order()
    );

    let y = tower.root();
    let x = tower.add(tower.pow(y, 2), tower.from_base(2)?);
    println!("x = y^2 + 2, coords over F_q: {:?}", tower.coords(x));
    println!("x^-1 coords: {:?}", tower.coords(tower.inv(x)?));
    println!("x^[1] coords: {:?}", tower.coords(tower.frobenius(x, 1)));

    // The norm lands in the base field F_9.
    let n = tower.norm(x);
    println!(
        "N(x) coords: {:?}, in F_q: {}",
        tower.coords(n),
        tower.in_subfield(n, 1)?
    );
    assert_eq!(tower.frobenius(x, tower.m() as i64), x);
    Ok(())
}
