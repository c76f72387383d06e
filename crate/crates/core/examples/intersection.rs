//! Polar intersection number and product of two lines in (P¹)².

use polaris::algebra::{MultiPoly, RationalFunction, Symbol};
use polaris::chains::{hp0_class, PolarChain, PrimeChain};
use polaris::forms::{DifferentialForm, ExteriorForm, PoleComponent};
use polaris::intersect::{conormal_frame, intersection_number, intersection_product, IntersectionKind, PolarOrientation};
use polaris::spaces::{AmbientSpace, Chart};

fn dlog(coords: &[&str], v: &str) -> ExteriorForm {
    let cs: Vec<Symbol> = coords.iter().map(|c| Symbol::new(c)).collect();
    let f = RationalFunction::var(&Symbol::new(v));
    ExteriorForm::differential(cs, &f).scale(&RationalFunction::new(MultiPoly::one(), MultiPoly::var_str(v)).unwrap())
}

fn main() -> polaris::Result<()> {
    let m = AmbientSpace::product_of_lines(2)?;
    let o = Chart::origin(&m);
    let mut poles = Vec::new();
    for v in ["x", "y"] {
        poles.push(PoleComponent::from_local(&m, &o, &MultiPoly::var_str(v))?);
        poles.push(PoleComponent::infinity(&m, &Symbol::new(v))?);
    }
    let mu = dlog(&["x", "y"], "x").wedge(&dlog(&["x", "y"], "y"))?;
    let orient = PolarOrientation::new(DifferentialForm::new(&m, o, mu, poles)?)?;

    let a = PrimeChain::hyperplane(&m, &MultiPoly::var_str("x").sub(&MultiPoly::int(2)), dlog(&["y"], "y"), None)?;
    let b = PrimeChain::hyperplane(&m, &MultiPoly::var_str("y").sub(&MultiPoly::int(3)), dlog(&["x"], "x"), None)?;
    let (ca, cb) = (PolarChain::single(a.clone()), PolarChain::single(b.clone()));
    let n = intersection_number(&ca, &cb, &orient)?;
    println!("a·b = {}", n.number().map(|x| x.render().0).unwrap_or_default());
    let n = intersection_number(&cb, &ca, &orient)?;
    println!("b·a = {}", n.number().map(|x| x.render().0).unwrap_or_default());
    println!("conormal frame of a: {}", conormal_frame(&a)?.lambda.render());
    let p = intersection_product(&a, &b, &orient)?;
    if let IntersectionKind::ProductCycle(c) = &p.kind {
        println!("a∩b = {}  (class {})", c.render(), hp0_class(c)?.render().0);
    }
    Ok(())
}
