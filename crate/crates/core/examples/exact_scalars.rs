//! Arithmetic in Q(i)(2πi) and exact root finding.

use polaris::algebra::roots::find_roots;
use polaris::algebra::{Field, GaussianRational, TauScalar, UniPoly};

fn main() {
    let tau = TauScalar::tau();
    let a = TauScalar::from_gaussian(GaussianRational::from_ints(3, -1));
    let x = a.div(&tau.mul(&TauScalar::from(4))).unwrap();
    println!("(3-i)/(4·2πi) = {}", x.render().0);
    println!("times 2πi     = {}", x.mul(&tau).render().0);

    // (2z - i)(z - 5)(z^2 + 1)
    let f = UniPoly::new(vec![TauScalar::i().neg(), TauScalar::from(2)])
        .mul(&UniPoly::new(vec![TauScalar::from(-5), TauScalar::one()]))
        .mul(&UniPoly::new(vec![TauScalar::one(), TauScalar::zero(), TauScalar::one()]));
    let split = find_roots(&f);
    for (r, m) in &split.roots {
        println!("root {} (multiplicity {m})", r.render().0);
    }
    println!("splits completely: {}", split.is_complete());
}
