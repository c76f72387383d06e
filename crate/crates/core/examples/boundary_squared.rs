//! Boundaries of surfaces, the vanishing of the second boundary, and
//! boundaries relative to a divisor.

use polaris::algebra::{MultiPoly, RationalFunction};
use polaris::chains::{boundary, boundary_squared, reduce_relative, PolarChain, PrimeChain, RelativeContext};
use polaris::forms::{DifferentialForm, ExteriorForm};
use polaris::spaces::{AmbientSpace, Chart};

fn whole(space: &AmbientSpace, den: MultiPoly) -> polaris::Result<PolarChain> {
    let g = RationalFunction::new(MultiPoly::one(), den).unwrap();
    let w = DifferentialForm::with_inferred_poles(space, Chart::origin(space), ExteriorForm::top(space.origin_coords(), g))?;
    Ok(PolarChain::single(PrimeChain::whole(w)?))
}

fn main() -> polaris::Result<()> {
    let (x, y) = (MultiPoly::var_str("x"), MultiPoly::var_str("y"));
    let square = AmbientSpace::product_of_lines(2)?;
    let plane = AmbientSpace::projective(2)?;
    let chains = [
        whole(&square, x.mul(&y))?,
        whole(&plane, x.mul(&y).mul(&x.add(&y).sub(&MultiPoly::one())))?,
    ];
    for c in &chains {
        println!("chain  {}", c.render());
        println!("  d    {}", boundary(c)?.render());
        println!("  d∘d  {}", boundary_squared(c)?.render());
    }
    let z = RelativeContext::new(&square, vec![vec![square.homogenize(&x, &Chart::origin(&square))]])?;
    println!("d rel x=0  {}", reduce_relative(&boundary(&chains[0])?, &z)?.render());
    Ok(())
}
