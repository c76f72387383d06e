//! Builders shared by the integration suites.
#![allow(dead_code)]

use polaris::algebra::{Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use polaris::forms::{DifferentialForm, ExteriorForm, PoleComponent};
use polaris::intersect::PolarOrientation;
use polaris::spaces::{AmbientPoint, AmbientSpace, Chart};

pub fn s(n: i64) -> TauScalar {
    TauScalar::from(n)
}

pub fn v(name: &str) -> MultiPoly {
    MultiPoly::var_str(name)
}

pub fn r(name: &str) -> RationalFunction {
    RationalFunction::var(&Symbol::new(name))
}

pub fn k(c: &TauScalar) -> RationalFunction {
    RationalFunction::constant(c.clone())
}

pub fn syms(names: &[&str]) -> Vec<Symbol> {
    names.iter().map(|n| Symbol::new(n)).collect()
}

pub fn shifted(name: &str, c: &TauScalar) -> MultiPoly {
    v(name).sub(&MultiPoly::constant(c.clone()))
}

pub fn dlog(coords: &[&str], f: &RationalFunction) -> ExteriorForm {
    ExteriorForm::differential(syms(coords), f).scale(&f.inv().expect("nonzero"))
}

pub fn line_point(c: &TauScalar) -> AmbientPoint {
    AmbientPoint::new(vec![vec![TauScalar::one(), c.clone()]]).expect("point")
}

pub fn infinity_point() -> AmbientPoint {
    AmbientPoint::new(vec![vec![TauScalar::zero(), TauScalar::one()]]).expect("point")
}

/// A top form `c / Π factors` on `space` with its pole list given
/// explicitly: the chart-0 factors plus the named hyperplanes at infinity.
pub fn top_form(space: &AmbientSpace, c: &TauScalar, factors: &[MultiPoly], at_infinity: &[&str]) -> DifferentialForm {
    let o = Chart::origin(space);
    let den = factors.iter().fold(MultiPoly::one(), |a, f| a.mul(f));
    let coeff = RationalFunction::new(MultiPoly::constant(c.clone()), den).expect("nonzero");
    let mut poles: Vec<PoleComponent> = factors.iter().map(|f| PoleComponent::from_local(space, &o, f).expect("pole")).collect();
    for name in at_infinity {
        poles.push(PoleComponent::infinity(space, &Symbol::new(name)).expect("pole"));
    }
    DifferentialForm::new(space, o, ExteriorForm::top(space.origin_coords(), coeff), poles).expect("form")
}

pub fn log_orientation(n: usize) -> PolarOrientation {
    let m = AmbientSpace::product_of_lines(n).expect("space");
    let names: Vec<String> = m.origin_coords().iter().map(|c| c.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let factors: Vec<MultiPoly> = refs.iter().map(|c| v(c)).collect();
    PolarOrientation::new(top_form(&m, &s(1), &factors, &refs)).expect("orientation")
}

