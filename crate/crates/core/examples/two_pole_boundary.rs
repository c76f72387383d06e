//! The boundary of the whole line carrying a(1/(z-p) - 1/(z-q))dz.

use polaris::algebra::{Field, MultiPoly, RationalFunction, TauScalar};
use polaris::chains::{boundary, hp0_class, PolarChain, PrimeChain};
use polaris::forms::{DifferentialForm, ExteriorForm};
use polaris::spaces::{AmbientSpace, Chart};

fn main() -> polaris::Result<()> {
    let p1 = AmbientSpace::projective(1)?;
    let z = MultiPoly::var_str("z");
    let pole = |c: i64| RationalFunction::new(MultiPoly::one(), z.sub(&MultiPoly::int(c))).unwrap();
    let a = RationalFunction::constant(TauScalar::from_frac(5, 2));
    let g = pole(1).sub(&pole(-3)).mul(&a);
    let form = DifferentialForm::with_inferred_poles(&p1, Chart::origin(&p1), ExteriorForm::top(p1.origin_coords(), g))?;
    let chain = PolarChain::single(PrimeChain::whole(form)?);
    println!("chain    {}", chain.render());
    let d = boundary(&chain)?;
    println!("boundary {}", d.render());
    println!("class    {}", hp0_class(&d)?.render().0);
    Ok(())
}
