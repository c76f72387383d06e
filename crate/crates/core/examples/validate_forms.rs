//! Admissibility of forms on chains: first-order poles along normal
//! crossing components.

use polaris::algebra::{MultiPoly, RationalFunction};
use polaris::forms::{validate_chain_form, DifferentialForm, ExteriorForm};
use polaris::spaces::{AmbientSpace, Chart};

fn main() -> polaris::Result<()> {
    let m = AmbientSpace::product_of_lines(2)?;
    let (x, y) = (MultiPoly::var_str("x"), MultiPoly::var_str("y"));
    let cases = [
        ("dx^dy/(xy)", x.mul(&y)),
        ("dx^dy/(x^2 y)", x.mul(&x).mul(&y)),
        ("dx^dy/(x(x-y^2))", x.mul(&x.sub(&y.mul(&y)))),
    ];
    for (name, den) in cases {
        let g = RationalFunction::new(MultiPoly::one(), den).unwrap();
        let w = DifferentialForm::with_inferred_poles(&m, Chart::origin(&m), ExteriorForm::top(m.origin_coords(), g))?;
        let rep = validate_chain_form(&w);
        println!("{name:<18} valid={}", rep.valid);
        for p in &rep.problems {
            println!("    {p}");
        }
    }
    Ok(())
}
