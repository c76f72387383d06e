//! Seeded generators of small admissible inputs, shared by the property
//! suites and the `property` session command.

use rand::Rng;

use crate::algebra::{Field, GaussianRational, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::chains::{normalize, PolarChain, PrimeChain};
use crate::error::Result;
use crate::forms::{validate_chain_form, DifferentialForm, ExteriorForm, PoleComponent};
use crate::spaces::{AmbientPoint, AmbientSpace, Chart};

/// A Gaussian rational with numerators in `[-6, 6]` and denominators in
/// `[1, 4]`; real about half of the time.
pub fn gaussian<R: Rng>(rng: &mut R) -> TauScalar {
    let re = GaussianRational::from_frac(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    let im = if rng.gen_bool(0.5) { GaussianRational::zero() } else { GaussianRational::from_frac(rng.gen_range(-6..=6), rng.gen_range(1..=4)) };
    TauScalar::from_gaussian(re.add(&im.mul(&GaussianRational::i())))
}

pub fn nonzero<R: Rng>(rng: &mut R) -> TauScalar {
    loop {
        let c = gaussian(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// `n` pairwise distinct scalars.
pub fn distinct<R: Rng>(rng: &mut R, n: usize) -> Vec<TauScalar> {
    let mut out: Vec<TauScalar> = Vec::new();
    while out.len() < n {
        let c = gaussian(rng);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn shifted(v: &str, c: &TauScalar) -> MultiPoly {
    MultiPoly::var_str(v).sub(&MultiPoly::constant(c.clone()))
}

fn inv(p: MultiPoly) -> RationalFunction {
    RationalFunction::new(MultiPoly::one(), p).expect("nonzero")
}

/// `a(1/(z−p) − 1/(z−q))dz` on P¹ together with `2πi((p,a) − (q,a))`.
pub fn two_pole_case(a: &TauScalar, p: &TauScalar, q: &TauScalar) -> Result<(PolarChain, PolarChain)> {
    let p1 = AmbientSpace::projective(1)?;
    let g = inv(shifted("z", p)).sub(&inv(shifted("z", q))).mul(&RationalFunction::constant(a.clone()));
    let local = ExteriorForm::top(p1.origin_coords(), g);
    let form = DifferentialForm::with_inferred_poles(&p1, Chart::origin(&p1), local)?;
    let chain = PolarChain::single(PrimeChain::whole(form)?);
    let at = |c: &TauScalar| AmbientPoint::new(vec![vec![TauScalar::one(), c.clone()]]).expect("point");
    let ta = a.mul(&TauScalar::tau());
    let expected = PolarChain::from_terms(&p1, vec![PrimeChain::point(&p1, &at(p), ta.clone())?, PrimeChain::point(&p1, &at(q), ta.neg())?])?;
    Ok((chain, normalize(&expected)?))
}

/// `Σ cₖ dz/(z − pₖ)` on P¹ with `n` finite poles; with `at_infinity` the
/// coefficients do not sum to zero, so infinity is a pole as well.
pub fn line_form<R: Rng>(rng: &mut R, n: usize, at_infinity: bool) -> Result<DifferentialForm> {
    let p1 = AmbientSpace::projective(1)?;
    let ps = distinct(rng, n);
    let mut cs: Vec<TauScalar> = (0..n).map(|_| nonzero(rng)).collect();
    let sum = cs.iter().fold(TauScalar::zero(), |a, c| a.add(c));
    if !at_infinity {
        cs[n - 1] = cs[n - 1].sub(&sum);
        if cs[n - 1].is_zero() {
            return line_form(rng, n, at_infinity);
        }
    } else if sum.is_zero() {
        cs[0] = cs[0].add(&TauScalar::one());
    }
    let g = ps.iter().zip(&cs).fold(RationalFunction::zero(), |acc, (p, c)| acc.add(&inv(shifted("z", p)).mul(&RationalFunction::constant(c.clone()))));
    let local = ExteriorForm::top(p1.origin_coords(), g);
    DifferentialForm::with_inferred_poles(&p1, Chart::origin(&p1), local)
}

/// An admissible logarithmic 2-form with at least one pair of crossing
/// components: either `c dx∧dy/((x−a₁)(x−a₂)(y−b))` style on (P¹)² or
/// `c dx∧dy/(ℓ₁ℓ₂ℓ₃)` for three lines of P².
pub fn surface_form<R: Rng>(rng: &mut R) -> Result<DifferentialForm> {
    loop {
        let c = RationalFunction::constant(nonzero(rng));
        let (space, factors, at_inf) = if rng.gen_bool(0.5) {
            let m = AmbientSpace::product_of_lines(2)?;
            let (nx, ny) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let xs = distinct(rng, nx);
            let ys = distinct(rng, ny);
            let factors: Vec<MultiPoly> = xs.iter().map(|a| shifted("x", a)).chain(ys.iter().map(|b| shifted("y", b))).collect();
            let at_inf: Vec<&str> = [(nx, "x"), (ny, "y")].into_iter().filter(|(n, _)| *n == 1).map(|(_, v)| v).collect();
            (m, factors, at_inf)
        } else {
            let p2 = AmbientSpace::projective(2)?;
            let factors = (0..3)
                .map(|_| MultiPoly::var_str("x").add(&MultiPoly::var_str("y").scale(&gaussian(rng))).add(&MultiPoly::constant(gaussian(rng))))
                .collect();
            (p2, factors, Vec::new())
        };
        let den = factors.iter().fold(MultiPoly::one(), |a, f| a.mul(f));
        let origin = Chart::origin(&space);
        let mut poles = factors.iter().map(|f| PoleComponent::from_local(&space, &origin, f)).collect::<Result<Vec<_>>>()?;
        for v in at_inf {
            poles.push(PoleComponent::infinity(&space, &Symbol::new(v))?);
        }
        poles.sort_by(|a, b| a.hom.cmp(&b.hom));
        poles.dedup_by(|a, b| a.hom == b.hom);
        if poles.len() < 2 {
            continue;
        }
        let local = ExteriorForm::top(space.origin_coords(), c.mul(&inv(den)));
        let form = DifferentialForm::new(&space, origin, local, poles)?;
        if validate_chain_form(&form).valid {
            return Ok(form);
        }
    }
}

/// A random 1-chain on P¹: one or two whole terms with log forms, and
/// sometimes the double cover `t ↦ t²` carrying a log form.
pub fn line_chain<R: Rng>(rng: &mut R) -> Result<PolarChain> {
    let p1 = AmbientSpace::projective(1)?;
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let n = rng.gen_range(2..=4);
        let inf = rng.gen_bool(0.5);
        terms.push(PrimeChain::whole(line_form(rng, n, inf)?)?);
    }
    if rng.gen_bool(0.5) {
        let t = Symbol::new("t");
        let tv = RationalFunction::var(&t);
        let p = nonzero(rng);
        let local = ExteriorForm::top(vec![t.clone()], inv(shifted("t", &p)).mul(&RationalFunction::constant(nonzero(rng))));
        let assign = [(Symbol::new("z"), tv.mul(&tv))].into_iter().collect();
        terms.push(PrimeChain::graph(&p1, &Chart::origin(&p1), &[t], &assign, local, None)?);
    }
    PolarChain::from_terms(&p1, terms)
}
