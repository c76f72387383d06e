//! Linking number of two curves in (P¹)³ through two different bounding
//! surfaces.

use std::collections::HashMap;

use polaris::algebra::{Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use polaris::chains::{boundary, PolarChain, PrimeChain};
use polaris::forms::{DifferentialForm, ExteriorForm, PoleComponent};
use polaris::intersect::{linking_number, PolarOrientation};
use polaris::spaces::{AmbientSpace, Chart};

fn syms(names: &[&str]) -> Vec<Symbol> {
    names.iter().map(|n| Symbol::new(n)).collect()
}

fn dlog(coords: &[&str], f: RationalFunction) -> ExteriorForm {
    ExteriorForm::differential(syms(coords), &f).scale(&f.inv().unwrap())
}

fn var(v: &str) -> RationalFunction {
    RationalFunction::var(&Symbol::new(v))
}

fn num(n: i64) -> RationalFunction {
    RationalFunction::constant(TauScalar::from(n))
}

fn main() -> polaris::Result<()> {
    let (b, c, e) = (2, 3, 5);
    let m = AmbientSpace::product_of_lines(3)?;
    let o = Chart::origin(&m);
    let mut poles = Vec::new();
    let mut mu = ExteriorForm::function(m.origin_coords(), RationalFunction::one());
    for v in ["x", "y", "z"] {
        poles.push(PoleComponent::from_local(&m, &o, &MultiPoly::var_str(v))?);
        poles.push(PoleComponent::infinity(&m, &Symbol::new(v))?);
        mu = mu.wedge(&dlog(&["x", "y", "z"], var(v)))?;
    }
    let orient = PolarOrientation::new(DifferentialForm::new(&m, o.clone(), mu, poles)?)?;

    let on_diagonal: HashMap<Symbol, RationalFunction> = [(Symbol::new("x"), var("t")), (Symbol::new("y"), var("t")), (Symbol::new("z"), num(b))].into_iter().collect();
    let c1 = PrimeChain::graph(&m, &o, &syms(&["t"]), &on_diagonal, dlog(&["t"], var("t")), None)?;
    let vertical: HashMap<Symbol, RationalFunction> = [(Symbol::new("x"), num(e)), (Symbol::new("y"), num(c))].into_iter().collect();
    let c2 = PrimeChain::graph(&m, &o, &syms(&["z"]), &vertical, dlog(&["z"], var("z")).neg(), None)?;

    let beta = dlog(&["x", "z"], var("x").sub(&num(e))).wedge(&dlog(&["x", "z"], var("z")))?.scale_scalar(&TauScalar::tau().inv().unwrap());
    let s2 = PolarChain::single(PrimeChain::hyperplane(&m, &MultiPoly::var_str("y").sub(&MultiPoly::int(c)), beta, None)?);
    let cap = PrimeChain::hyperplane(&m, &MultiPoly::var_str("z").sub(&MultiPoly::int(7)), dlog(&["x", "y"], var("x")).wedge(&dlog(&["x", "y"], var("y")))?, None)?;
    let s2b = s2.add(&PolarChain::single(cap))?;

    let (c1, c2) = (PolarChain::single(c1), PolarChain::single(c2));
    for s in [&s2, &s2b] {
        println!("S      {}", s.render());
        println!("dS     {}", boundary(s)?.render());
        let l = linking_number(&c1, &c2, s, &orient)?;
        println!("link   {}", l.value.render().0);
    }
    Ok(())
}
