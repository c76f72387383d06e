//! Trace push-forward of 1-forms along finite self-maps of the line.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::quotient::{as_univariate, trace_mod};
use crate::algebra::{Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::error::{Error, Result};
use crate::forms::{DifferentialForm, ExteriorForm};
use crate::residue::{residue_all, residue_at_point};
use crate::spaces::{AmbientPoint, AmbientSpace, Chart, HomogMap};

/// A rational map `z ↦ F(z)` from a line to itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineMap {
    pub space: AmbientSpace,
    pub f: RationalFunction,
}

impl LineMap {
    pub fn new(space: &AmbientSpace, f: RationalFunction) -> Result<Self> {
        if space.factors().len() != 1 || space.dim() != 1 {
            return Err(Error::DimensionMismatch("self-maps are of a line".into()));
        }
        let z = space.origin_coords()[0].clone();
        if f.variables_besides(&z) {
            return Err(Error::InvalidPresentation(format!("{f} is not a function of {z}")));
        }
        let m = LineMap { space: space.clone(), f };
        if m.degree() == 0 {
            return Err(Error::ConstantMap);
        }
        Ok(m)
    }

    pub fn var(&self) -> Symbol {
        self.space.origin_coords()[0].clone()
    }

    pub fn degree(&self) -> usize {
        let z = self.var();
        self.f.numer().degree_in(&z).max(self.f.denom().degree_in(&z)) as usize
    }

    pub fn as_homog(&self) -> Result<HomogMap> {
        let o = Chart::origin(&self.space);
        let assign: HashMap<Symbol, RationalFunction> = [(self.var(), self.f.clone())].into_iter().collect();
        HomogMap::from_affine(&self.space, &self.space, &o, &assign)
    }
}

impl fmt::Display for LineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

trait OnlyVar {
    fn variables_besides(&self, z: &Symbol) -> bool;
}

impl OnlyVar for RationalFunction {
    fn variables_besides(&self, z: &Symbol) -> bool {
        self.numer().variables().iter().chain(self.denom().variables().iter()).any(|v| v != z)
    }
}

/// `f_*ω = trace(g/F′ mod numer(F(z) − w)) dw`, written back in the line's
/// own coordinate.
pub fn pushforward(map: &LineMap, form: &DifferentialForm) -> Result<DifferentialForm> {
    if form.space != map.space || form.degree() != 1 {
        return Err(Error::DimensionMismatch("push-forward takes a 1-form on the map's line".into()));
    }
    let z = map.var();
    let w = Symbol::new("#w");
    let g = form.to_origin()?.local.top_coefficient();
    let fprime = map.f.derivative(&z);
    if fprime.is_zero() {
        return Err(Error::ConstantMap);
    }
    let integrand = g.div(&fprime).ok_or(Error::ConstantMap)?;
    let h = map.f.numer().sub(&map.f.denom().mul(&MultiPoly::var(&w)));
    let hu = as_univariate(&h, &z);
    let sep = hu.gcd(&hu.derivative());
    if !sep.is_constant() {
        return Err(Error::InseparableFiber);
    }
    let t = trace_mod(&integrand, &h, &z)?;
    let rename: HashMap<Symbol, Symbol> = [(w, z.clone())].into_iter().collect();
    let t = RationalFunction::new(t.numer().rename(&rename), t.denom().rename(&rename)).expect("nonzero");
    let o = Chart::origin(&map.space);
    DifferentialForm::with_inferred_poles(&map.space, o, ExteriorForm::top(vec![z], t))
}

/// Both sides of `res_{f(V)} f_*ω = f_* res ω` and whether they agree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommuteReport {
    pub image: AmbientPoint,
    pub pushed_residue: TauScalar,
    pub residue_pushed: TauScalar,
    pub equal: bool,
}

/// Compares the residue of the push-forward at `f(V)` with the sum of the
/// residues of `ω` over the poles lying above `f(V)`.
pub fn check_residue_commute(map: &LineMap, form: &DifferentialForm, v: &AmbientPoint) -> Result<CommuteReport> {
    let hm = map.as_homog()?;
    let image = hm.eval(v).ok_or(Error::ConstantMap)?;
    let pushed = pushforward(map, form)?;
    let lhs = residue_at_point(&pushed, &image)?;
    let mut rhs = TauScalar::zero();
    let source = if form.poles.is_empty() { DifferentialForm { poles: form.inferred_poles()?, ..form.clone() } } else { form.clone() };
    for piece in residue_all(&source)? {
        let p = piece.inclusion.eval(&AmbientPoint::new(vec![]).expect("point")).expect("constant map");
        if hm.eval(&p).as_ref() == Some(&image) {
            rhs = rhs.add(&piece.value().expect("point residue"));
        }
    }
    Ok(CommuteReport { image, equal: lhs == rhs, pushed_residue: lhs, residue_pushed: rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> AmbientSpace {
        AmbientSpace::projective(1).unwrap()
    }

    fn z() -> RationalFunction {
        RationalFunction::var(&Symbol::new("z"))
    }

    fn form(g: RationalFunction) -> DifferentialForm {
        let p1 = line();
        DifferentialForm::with_inferred_poles(&p1, Chart::origin(&p1), ExteriorForm::top(p1.origin_coords(), g)).unwrap()
    }

    #[test]
    fn squares() {
        let sq = LineMap::new(&line(), z().mul(&z())).unwrap();
        assert!(pushforward(&sq, &form(RationalFunction::one())).unwrap().is_zero());
        let dzz = form(z().inv().unwrap());
        assert_eq!(pushforward(&sq, &dzz).unwrap().local, dzz.local);
        let id = LineMap::new(&line(), z()).unwrap();
        let g = form(z().sub(&RationalFunction::one()).inv().unwrap());
        assert_eq!(pushforward(&id, &g).unwrap().local, g.local);
        assert!(matches!(LineMap::new(&line(), RationalFunction::from_i64(3)), Err(Error::ConstantMap)));
    }

    #[test]
    fn commutes_at_origin() {
        let cube = LineMap::new(&line(), z().mul(&z()).mul(&z())).unwrap();
        let dzz = form(z().inv().unwrap());
        let origin = AmbientPoint::new(vec![vec![TauScalar::one(), TauScalar::zero()]]).unwrap();
        let rep = check_residue_commute(&cube, &dzz, &origin).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.pushed_residue, TauScalar::one());
    }
}
