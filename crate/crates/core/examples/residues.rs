//! Poincaré residues and repeated residues of a logarithmic 2-form.

use polaris::algebra::{MultiPoly, RationalFunction};
use polaris::forms::{validate_chain_form, DifferentialForm, ExteriorForm};
use polaris::residue::{repeated_residue, residue_all};
use polaris::spaces::{AmbientSpace, Chart};

fn main() -> polaris::Result<()> {
    let m = AmbientSpace::product_of_lines(2)?;
    let den = MultiPoly::var_str("x").mul(&MultiPoly::var_str("x").sub(&MultiPoly::int(1))).mul(&MultiPoly::var_str("y"));
    let g = RationalFunction::new(MultiPoly::int(2), den).unwrap();
    let w = DifferentialForm::with_inferred_poles(&m, Chart::origin(&m), ExteriorForm::top(m.origin_coords(), g))?;
    println!("form  {}", w.render());
    println!("valid {}", validate_chain_form(&w).valid);
    for piece in residue_all(&w)? {
        println!("res   {}", piece.render());
    }
    let find = |label: &str| w.poles.iter().find(|p| p.label == label).unwrap();
    let (vi, vj) = (find("x"), find("y"));
    for (a, b) in [(vi, vj), (vj, vi)] {
        for piece in repeated_residue(&w, a, b)? {
            println!("res[{a}, {b}] {}", piece.render());
        }
    }
    Ok(())
}
