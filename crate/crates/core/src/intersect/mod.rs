//! Polar intersection numbers, intersection products through conormal
//! frames, and linking numbers.

use std::collections::HashMap;

use crate::algebra::{linalg, substitute_poly, Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::chains::{boundary, normalize, reduce_relative, PolarChain, PrimeChain, RelativeContext};
use crate::error::{Error, Result};
use crate::forms::{validate_chain_form, DifferentialForm, ExteriorForm};
use crate::spaces::solve::linear_variable;
use crate::spaces::{solve_points, AmbientPoint, AmbientSpace, Chart, Factor, HomogMap};

/// A nowhere-vanishing top form with first-order poles on a normal
/// crossing divisor, the boundary of the polar manifold.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolarOrientation {
    pub space: AmbientSpace,
    pub mu: DifferentialForm,
}

impl PolarOrientation {
    pub fn new(mu: DifferentialForm) -> Result<Self> {
        let rep = validate_chain_form(&mu);
        if !rep.valid {
            return Err(Error::InvalidOrientation(rep.problems.join("; ")));
        }
        for ch in mu.space.charts() {
            let f = mu.in_chart(&ch)?;
            if !f.local.top_coefficient().numer().is_constant() {
                return Err(Error::InvalidOrientation(format!("form vanishes in chart {:?}", ch.choice)));
            }
        }
        Ok(PolarOrientation { space: mu.space.clone(), mu })
    }

    /// The pole components of μ as a relative context.
    pub fn boundary_context(&self) -> RelativeContext {
        RelativeContext { ambient: self.space.clone(), members: self.mu.poles.iter().map(|p| vec![p.hom.clone()]).collect() }
    }
}

/// A form vanishing on the tangent spaces of a cycle, given in chart-0
/// coordinates of the ambient space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConormalFrame {
    pub lambda: ExteriorForm,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntersectionKind {
    Number(TauScalar),
    ProductCycle(PolarChain),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntersectionResult {
    pub kind: IntersectionKind,
    pub points: Vec<(AmbientPoint, TauScalar)>,
}

impl IntersectionResult {
    pub fn number(&self) -> Option<&TauScalar> {
        match &self.kind {
            IntersectionKind::Number(n) => Some(n),
            IntersectionKind::ProductCycle(_) => None,
        }
    }
}

fn eval_rf(r: &RationalFunction, at: &HashMap<Symbol, TauScalar>) -> Option<TauScalar> {
    let n = r.numer().evaluate(at).constant_value()?;
    let d = r.denom().evaluate(at).constant_value()?;
    n.div(&d)
}

fn solve_in(eqs: &[MultiPoly], neqs: &[MultiPoly], vars: &[Symbol]) -> Result<Vec<HashMap<Symbol, TauScalar>>> {
    if vars.is_empty() {
        let ok = eqs.iter().all(MultiPoly::is_zero) && neqs.iter().all(|q| !q.is_zero());
        return Ok(if ok { vec![HashMap::new()] } else { Vec::new() });
    }
    solve_points(eqs, neqs, vars)
}

/// Preimages under a chain's map of an ambient point.
fn preimages(t: &PrimeChain, p: &AmbientPoint) -> Result<Vec<AmbientPoint>> {
    let target = t.target();
    let chi = p.chart();
    let at = p.in_chart(target, &chi).expect("own chart");
    let mut out: Vec<AmbientPoint> = Vec::new();
    for psi in t.domain().charts() {
        let Some(aff) = t.map.affine(&psi, &chi) else { continue };
        let mut eqs = Vec::new();
        let mut neqs = Vec::new();
        for s in target.chart_coords(&chi) {
            let r = &aff[&s];
            eqs.push(r.numer().sub(&r.denom().scale(&at[&s])));
            neqs.push(r.denom().clone());
        }
        for sol in solve_in(&eqs, &neqs, &t.domain().chart_coords(&psi))? {
            let q = AmbientPoint::from_chart(t.domain(), &psi, &sol)?;
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    Ok(out)
}

/// Points of `A ∩ B`, found by substituting A's parametrization into the
/// implicit equations of B (or the other way around).
fn meet(a: &PrimeChain, b: &PrimeChain) -> Result<Vec<AmbientPoint>> {
    let target = a.target();
    let mut out: Vec<AmbientPoint> = Vec::new();
    for chi in target.charts() {
        let (param, imp) = match (b.implicit(&chi), a.implicit(&chi)) {
            (Some((eqs, _, _)), _) => (a, eqs),
            (None, Some((eqs, _, _))) => (b, eqs),
            (None, None) => {
                let misses = |t: &PrimeChain| !t.is_point() && t.map.affine(&Chart::origin(t.domain()), &chi).is_none();
                if misses(a) || misses(b) {
                    continue;
                }
                return Err(Error::UnpresentableIntersection("neither cycle has implicit equations".into()));
            }
        };
        for psi in param.domain().charts() {
            let Some(aff) = param.map.affine(&psi, &chi) else { continue };
            let eqs: Vec<MultiPoly> = imp.iter().map(|e| substitute_poly(e, &aff).numer().clone()).collect();
            let neqs: Vec<MultiPoly> = aff.values().map(|r| r.denom().clone()).collect();
            for sol in solve_in(&eqs, &neqs, &param.domain().chart_coords(&psi))? {
                let q = AmbientPoint::from_chart(param.domain(), &psi, &sol)?;
                let Some(p) = param.map.eval(&q) else { continue };
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Tangent frame (pushed into the ambient chart of `p`) and form value of
/// a cycle at a domain point.
fn frame_and_value(t: &PrimeChain, q: &AmbientPoint, p: &AmbientPoint) -> Result<(Vec<Vec<TauScalar>>, TauScalar)> {
    let t = t.folded();
    let psi = q.chart();
    let chi = p.chart();
    let at = q.in_chart(t.domain(), &psi).expect("own chart");
    let form = t.form.in_chart(&psi)?;
    let value = if t.is_point() {
        form.local.as_function().as_constant().expect("constant")
    } else {
        eval_rf(&form.local.top_coefficient(), &at).ok_or_else(|| Error::BoundaryHit("the point lies on a pole".into()))?
    };
    let mut frame = Vec::new();
    if !t.is_point() {
        let jac = t.map.jacobian(&psi, &chi).ok_or_else(|| Error::BoundaryHit("the point lies on a pole".into()))?;
        for col in 0..t.dim() {
            let v = jac.iter().map(|row| eval_rf(&row[col], &at).ok_or_else(|| Error::BoundaryHit("the point lies on a pole".into()))).collect::<Result<Vec<_>>>()?;
            frame.push(v);
        }
    }
    Ok((frame, value))
}

fn mu_at(orient: &PolarOrientation, p: &AmbientPoint) -> Result<TauScalar> {
    let chi = p.chart();
    let at = p.in_chart(&orient.space, &chi).expect("own chart");
    let m = orient.mu.in_chart(&chi)?.local.top_coefficient();
    match eval_rf(&m, &at) {
        Some(v) if !v.is_zero() => Ok(v),
        _ => Err(Error::BoundaryHit(format!("{} lies on the boundary of the orientation", p.render()))),
    }
}

/// `Σ_P α(P)∧β(P)/μ(P)` over `A ∩ B` for single triples.
fn prime_sum(a: &PrimeChain, b: &PrimeChain, orient: &PolarOrientation) -> Result<Vec<(AmbientPoint, TauScalar)>> {
    let mut out = Vec::new();
    for p in meet(a, b)? {
        let m = mu_at(orient, &p)?;
        for qa in preimages(a, &p)? {
            for qb in preimages(b, &p)? {
                let (fa, va) = frame_and_value(a, &qa, &p)?;
                let (fb, vb) = frame_and_value(b, &qb, &p)?;
                let mut frame = fa;
                frame.extend(fb);
                let cols: Vec<Vec<TauScalar>> = linalg::transpose(&frame);
                let det = linalg::det(&cols);
                if det.is_zero() {
                    return Err(Error::NotTransverse(format!("tangent spaces meet at {}", p.render())));
                }
                let v = va.mul(&vb).div(&m.mul(&det)).expect("nonzero");
                out.push((p.clone(), v));
            }
        }
    }
    Ok(out)
}

fn pairwise_sum(a: &PolarChain, b: &PolarChain, orient: &PolarOrientation) -> Result<(TauScalar, Vec<(AmbientPoint, TauScalar)>)> {
    let n = orient.space.dim();
    if a.ambient != orient.space || b.ambient != orient.space {
        return Err(Error::DimensionMismatch("cycles and orientation live in different spaces".into()));
    }
    let (a, b) = (normalize(a)?, normalize(b)?);
    let mut total = TauScalar::zero();
    let mut points = Vec::new();
    for ta in &a.terms {
        for tb in &b.terms {
            if ta.dim() + tb.dim() != n {
                return Err(Error::DimensionMismatch(format!("dimensions {} and {} in a {n}-fold", ta.dim(), tb.dim())));
            }
            for (p, v) in prime_sum(ta, tb, orient)? {
                total = total.add(&v);
                points.push((p, v));
            }
        }
    }
    Ok((total, points))
}

fn is_relative_cycle(c: &PolarChain, ctx: &RelativeContext) -> Result<bool> {
    if c.degree() == Some(0) {
        return Ok(true);
    }
    Ok(reduce_relative(&boundary(c)?, ctx)?.is_empty())
}

/// `⟨a·b⟩ = Σ_{P∈A∩B} α(P)∧β(P)/μ(P)`; one argument must be a cycle
/// relative to the boundary of the orientation.
pub fn intersection_number(a: &PolarChain, b: &PolarChain, orient: &PolarOrientation) -> Result<IntersectionResult> {
    let ctx = orient.boundary_context();
    if !is_relative_cycle(a, &ctx)? && !is_relative_cycle(b, &ctx)? {
        return Err(Error::NotARelativeCycle);
    }
    let (total, points) = pairwise_sum(a, b, orient)?;
    Ok(IntersectionResult { kind: IntersectionKind::Number(total), points })
}

/// Chart-0 conormal frame `d e₁ ∧ … ∧ d e_c` from the implicit equations.
pub fn conormal_frame(t: &PrimeChain) -> Result<ConormalFrame> {
    let target = t.target();
    let o = Chart::origin(target);
    let coords = target.chart_coords(&o);
    let (eqs, _, _) = t
        .implicit(&o)
        .ok_or_else(|| Error::UnpresentableIntersection("no implicit equations in chart 0".into()))?;
    if eqs.len() != target.dim() - t.dim() {
        return Err(Error::UnpresentableIntersection("not a complete intersection of its equations".into()));
    }
    let mut lambda = ExteriorForm::function(coords.clone(), RationalFunction::one());
    for e in &eqs {
        lambda = lambda.wedge(&ExteriorForm::differential(coords.clone(), &RationalFunction::from_poly(e.clone())))?;
    }
    Ok(ConormalFrame { lambda })
}

/// The cycle's form extended to the ambient chart 0 through a left inverse
/// of its parametrization.
fn extend_form(t: &PrimeChain) -> Result<ExteriorForm> {
    let target = t.target();
    let o = Chart::origin(target);
    let (_, inverse, psi) = t
        .implicit(&o)
        .ok_or_else(|| Error::UnpresentableIntersection("parametrization has no left inverse".into()))?;
    let f = t.folded().form.in_chart(&psi)?;
    f.local.pullback(&inverse, &target.chart_coords(&o))
}

fn check_conormal(t: &PrimeChain, lambda: &ExteriorForm) -> Result<()> {
    let target = t.target();
    let o = Chart::origin(target);
    let src = Chart::origin(t.domain());
    let aff = t.map.affine(&src, &o).ok_or_else(|| Error::UnpresentableIntersection("cycle misses chart 0".into()))?;
    if !lambda.pullback(&aff, &t.domain().chart_coords(&src))?.is_zero() {
        return Err(Error::InvalidPresentation("conormal form does not vanish on the cycle".into()));
    }
    Ok(())
}

/// Parametrizes `{eqs = 0}` in chart 0 by linear elimination.
fn parametrize_linear(space: &AmbientSpace, eqs: &[MultiPoly]) -> Result<(Vec<Symbol>, HashMap<Symbol, RationalFunction>)> {
    let coords = space.origin_coords();
    let mut assign: HashMap<Symbol, MultiPoly> = HashMap::new();
    let mut pending: Vec<MultiPoly> = eqs.to_vec();
    while let Some(e) = pending.pop() {
        let e = e.substitute(&assign);
        if e.is_zero() {
            continue;
        }
        let Some((v, a, b, true)) = linear_variable(&e) else {
            return Err(Error::UnpresentableIntersection(format!("{e} is not linear in a coordinate")));
        };
        let val = b.neg().scale(&a.constant_value().expect("unit").inv().expect("nonzero"));
        let one: HashMap<Symbol, MultiPoly> = [(v.clone(), val.clone())].into_iter().collect();
        for w in assign.values_mut() {
            *w = w.substitute(&one);
        }
        assign.insert(v, val);
    }
    let free: Vec<Symbol> = coords.iter().filter(|s| !assign.contains_key(*s)).cloned().collect();
    let mut full: HashMap<Symbol, RationalFunction> = assign.into_iter().map(|(k, v)| (k, RationalFunction::from_poly(v))).collect();
    for s in &free {
        full.insert(s.clone(), RationalFunction::var(s));
    }
    Ok((free, full))
}

/// `(C, γ)` with `λ_A∧λ_B∧γ = (λ_A∧α/μ)(λ_B∧β/μ)μ`, using the default
/// conormal frames.
pub fn intersection_product(a: &PrimeChain, b: &PrimeChain, orient: &PolarOrientation) -> Result<IntersectionResult> {
    let la = conormal_frame(a)?;
    let lb = conormal_frame(b)?;
    intersection_product_with(a, b, orient, &la, &lb)
}

/// The intersection product with explicit conormal frames.
pub fn intersection_product_with(
    a: &PrimeChain,
    b: &PrimeChain,
    orient: &PolarOrientation,
    la: &ConormalFrame,
    lb: &ConormalFrame,
) -> Result<IntersectionResult> {
    let space = &orient.space;
    let n = space.dim();
    let (p, q) = (a.dim(), b.dim());
    if p + q < n {
        return Err(Error::DimensionMismatch(format!("dimensions {p} and {q} in a {n}-fold")));
    }
    check_conormal(a, &la.lambda)?;
    check_conormal(b, &lb.lambda)?;
    let o = Chart::origin(space);
    let coords = space.chart_coords(&o);
    let mu = orient.mu.to_origin()?.local.top_coefficient();
    let ca = la.lambda.wedge(&extend_form(a)?)?.top_coefficient();
    let cb = lb.lambda.wedge(&extend_form(b)?)?.top_coefficient();
    let rho = ca.mul(&cb).div(&mu).ok_or_else(|| Error::BoundaryHit("the point lies on a pole".into()))?;
    let l = la.lambda.wedge(&lb.lambda)?;
    let mut eqs = a.implicit_equations(&o).ok_or_else(|| Error::UnpresentableIntersection("no equations".into()))?;
    eqs.extend(b.implicit_equations(&o).ok_or_else(|| Error::UnpresentableIntersection("no equations".into()))?);
    let r = p + q - n;
    if r == 0 {
        let ell = l.top_coefficient();
        let gamma = rho.div(&ell).ok_or_else(|| Error::NotTransverse("conormal frames are dependent".into()))?;
        let mut points = Vec::new();
        let mut terms = Vec::new();
        for sol in solve_points(&eqs, &[], &coords)? {
            let pt = AmbientPoint::from_chart(space, &o, &sol)?;
            let v = eval_rf(&gamma, &sol).ok_or_else(|| Error::BoundaryHit("the point lies on a pole".into()))?;
            if eval_rf(&mu, &sol).map(|m| m.is_zero()).unwrap_or(true) {
                return Err(Error::BoundaryHit("intersection point on the boundary of the orientation".into()));
            }
            terms.push(PrimeChain::point(space, &pt, v.clone())?);
            points.push((pt, v));
        }
        let chain = normalize(&PolarChain::from_terms(space, terms)?)?;
        return Ok(IntersectionResult { kind: IntersectionKind::ProductCycle(chain), points });
    }
    let (free, assign) = parametrize_linear(space, &eqs)?;
    if free.len() != r {
        return Err(Error::NotTransverse(format!("intersection has dimension {} instead of {r}", free.len())));
    }
    let mut df = ExteriorForm::function(coords.clone(), RationalFunction::one());
    for s in &free {
        df = df.wedge(&ExteriorForm::differential(coords.clone(), &RationalFunction::var(s)))?;
    }
    let ell = l.wedge(&df)?.top_coefficient();
    let g = rho.div(&ell).ok_or_else(|| Error::NotTransverse("conormal frames are dependent".into()))?;
    let g = g.substitute(&assign).ok_or_else(|| Error::BoundaryHit("the point lies on a pole".into()))?;
    let mut factors = Vec::new();
    for (f, _) in space.factors().iter().enumerate() {
        let names: Vec<Symbol> = free.iter().filter(|s| space.factor_of(&o, s).map(|(g, _)| g) == Some(f)).cloned().collect();
        if !names.is_empty() {
            factors.push(Factor { dim: names.len(), names });
        }
    }
    let domain = AmbientSpace::new(factors);
    let map = HomogMap::from_affine(&domain, space, &o, &assign)?;
    let local = ExteriorForm::top(domain.origin_coords(), g);
    let form = DifferentialForm::with_inferred_poles(&domain, Chart::origin(&domain), local)?;
    let chain = normalize(&PolarChain::single(PrimeChain::new(map, form)?))?;
    Ok(IntersectionResult { kind: IntersectionKind::ProductCycle(chain), points: Vec::new() })
}

/// The polar linking number with its verified bounding-chain certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkingResult {
    pub value: TauScalar,
    pub certificate: PolarChain,
}

/// `ℓk((C₁,α₁),(C₂,α₂)) = Σ_{P∈C₁∩S₂} α₁(P)∧β₂(P)/μ(P)` where `∂S₂ ≡ C₂`
/// modulo the boundary of the orientation.
pub fn linking_number(c1: &PolarChain, c2: &PolarChain, s2: &PolarChain, orient: &PolarOrientation) -> Result<LinkingResult> {
    if orient.space.dim() != 3 {
        return Err(Error::DimensionMismatch("linking numbers are taken in threefolds".into()));
    }
    let ctx = orient.boundary_context();
    let cert = reduce_relative(&boundary(s2)?, &ctx)?;
    if cert != normalize(c2)? {
        return Err(Error::NotABoundingChain("the boundary of the chain differs from the second curve".into()));
    }
    for t1 in &normalize(c1)?.terms {
        for t2 in &normalize(c2)?.terms {
            if !meet(t1, t2)?.is_empty() {
                return Err(Error::NotTransverse("the two curves meet".into()));
            }
        }
    }
    let (value, _) = pairwise_sum(c1, s2, orient)?;
    Ok(LinkingResult { value, certificate: cert })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::hp0_class;
    use crate::forms::PoleComponent;

    fn v(s: &str) -> MultiPoly {
        MultiPoly::var_str(s)
    }

    fn r(s: &str) -> RationalFunction {
        RationalFunction::var(&Symbol::new(s))
    }

    fn k(n: i64) -> MultiPoly {
        MultiPoly::int(n)
    }

    fn dlog(coords: &[&str], s: &str) -> ExteriorForm {
        let cs: Vec<Symbol> = coords.iter().map(|c| Symbol::new(c)).collect();
        ExteriorForm::differential(cs, &r(s)).scale(&r(s).inv().unwrap())
    }

    fn log_orientation(n: usize) -> PolarOrientation {
        let m = AmbientSpace::product_of_lines(n).unwrap();
        let o = Chart::origin(&m);
        let names: Vec<String> = m.origin_coords().iter().map(|s| s.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut local = ExteriorForm::function(m.origin_coords(), RationalFunction::one());
        let mut poles = Vec::new();
        for s in &refs {
            local = local.wedge(&dlog(&refs, s)).unwrap();
            poles.push(PoleComponent::from_local(&m, &o, &v(s)).unwrap());
            poles.push(PoleComponent::infinity(&m, &Symbol::new(s)).unwrap());
        }
        PolarOrientation::new(DifferentialForm::new(&m, o, local, poles).unwrap()).unwrap()
    }

    fn square_pair(a0: i64, b0: i64) -> (PrimeChain, PrimeChain, PolarOrientation) {
        let mu = log_orientation(2);
        let a = PrimeChain::hyperplane(&mu.space, &v("x").sub(&k(a0)), dlog(&["y"], "y"), None).unwrap();
        let b = PrimeChain::hyperplane(&mu.space, &v("y").sub(&k(b0)), dlog(&["x"], "x"), None).unwrap();
        (a, b, mu)
    }

    #[test]
    fn square_example() {
        let (a, b, mu) = square_pair(2, 3);
        let res = intersection_number(&PolarChain::single(a.clone()), &PolarChain::single(b.clone()), &mu).unwrap();
        assert_eq!(res.number(), Some(&TauScalar::from(-1)));
        assert_eq!(res.points.len(), 1);
        let swapped = intersection_number(&PolarChain::single(b), &PolarChain::single(a), &mu).unwrap();
        assert_eq!(swapped.number(), Some(&TauScalar::from(1)));
    }

    #[test]
    fn product_matches_number() {
        let (a, b, mu) = square_pair(5, -1);
        let n = intersection_number(&PolarChain::single(a.clone()), &PolarChain::single(b.clone()), &mu).unwrap();
        let p = intersection_product(&a, &b, &mu).unwrap();
        let IntersectionKind::ProductCycle(c) = &p.kind else { panic!() };
        assert_eq!(Some(&hp0_class(c).unwrap()), n.number());
        let coords = mu.space.origin_coords();
        let la = ConormalFrame { lambda: ExteriorForm::differential(coords.clone(), &r("x")).scale(&r("x").add(&RationalFunction::constant(TauScalar::from(7)))) };
        let lb = ConormalFrame { lambda: ExteriorForm::differential(coords, &r("y")).scale(&RationalFunction::constant(TauScalar::from(-3))) };
        assert_eq!(intersection_product_with(&a, &b, &mu, &la, &lb).unwrap(), p);
    }

    #[test]
    fn cube_product() {
        let mu = log_orientation(3);
        let both = |s: &str| dlog(&[s, "z"], s).wedge(&dlog(&[s, "z"], "z")).unwrap();
        let a = PrimeChain::hyperplane(&mu.space, &v("x").sub(&k(2)), both("y"), None).unwrap();
        let b = PrimeChain::hyperplane(&mu.space, &v("y").sub(&k(3)), both("x"), None).unwrap();
        let p = intersection_product(&a, &b, &mu).unwrap();
        let IntersectionKind::ProductCycle(c) = &p.kind else { panic!() };
        assert_eq!(c.render(), "-(graph(z; x=2, y=3),1/z*dz)");
        let coords = mu.space.origin_coords();
        let la = ConormalFrame { lambda: ExteriorForm::differential(coords.clone(), &r("x")).scale(&r("z")) };
        let lb = ConormalFrame { lambda: ExteriorForm::differential(coords, &r("y")).scale(&r("y")) };
        assert_eq!(intersection_product_with(&a, &b, &mu, &la, &lb).unwrap(), p);
    }

    #[test]
    fn disjoint_and_degenerate() {
        let mu = log_orientation(2);
        let a = PrimeChain::hyperplane(&mu.space, &v("x").sub(&k(2)), dlog(&["y"], "y"), None).unwrap();
        let b = PrimeChain::hyperplane(&mu.space, &v("x").sub(&k(3)), dlog(&["y"], "y"), None).unwrap();
        let n = intersection_number(&PolarChain::single(a.clone()), &PolarChain::single(b), &mu).unwrap();
        assert!(n.number().unwrap().is_zero());
        assert!(intersection_number(&PolarChain::single(a.clone()), &PolarChain::single(a), &mu).is_err());
    }

    fn link_data(c: i64, e: i64, b: i64) -> (PolarChain, PolarChain, PolarChain, PolarOrientation) {
        let mu = log_orientation(3);
        let m = &mu.space;
        let o = Chart::origin(m);
        let t = Symbol::new("t");
        let assign = [(Symbol::new("x"), r("t")), (Symbol::new("y"), r("t")), (Symbol::new("z"), RationalFunction::constant(TauScalar::from(b)))]
            .into_iter()
            .collect();
        let c1 = PrimeChain::graph(m, &o, &[t], &assign, dlog(&["t"], "t"), None).unwrap();
        let xe = r("x").sub(&RationalFunction::constant(TauScalar::from(e)));
        let beta = ExteriorForm::differential(vec![Symbol::new("x"), Symbol::new("z")], &r("x"))
            .scale(&xe.inv().unwrap())
            .wedge(&dlog(&["x", "z"], "z"))
            .unwrap()
            .scale_scalar(&TauScalar::tau().inv().unwrap());
        let s2 = PrimeChain::hyperplane(m, &v("y").sub(&k(c)), beta, None).unwrap();
        let assign2 = [(Symbol::new("x"), RationalFunction::constant(TauScalar::from(e))), (Symbol::new("y"), RationalFunction::constant(TauScalar::from(c)))]
            .into_iter()
            .collect();
        let c2 = PrimeChain::graph(m, &o, &[Symbol::new("z")], &assign2, dlog(&["z"], "z").neg(), None).unwrap();
        (PolarChain::single(c1), PolarChain::single(c2), PolarChain::single(s2), mu)
    }

    #[test]
    fn linking_example() {
        let (c, e, b) = (3, 5, 2);
        let (c1, c2, s2, mu) = link_data(c, e, b);
        let l = linking_number(&c1, &c2, &s2, &mu).unwrap();
        let expected = TauScalar::from(-c).div(&TauScalar::tau().mul(&TauScalar::from(c - e))).unwrap();
        assert_eq!(l.value, expected);
        let extra = PrimeChain::hyperplane(&mu.space, &v("z").sub(&k(7)), dlog(&["x", "y"], "x").wedge(&dlog(&["x", "y"], "y")).unwrap(), None).unwrap();
        let s2b = s2.add(&PolarChain::single(extra)).unwrap();
        assert_eq!(linking_number(&c1, &c2, &s2b, &mu).unwrap().value, expected);
        assert!(linking_number(&c1, &s2, &s2, &mu).is_err());
    }
}
