use std::collections::HashMap;
use std::fmt;

use crate::algebra::{Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::error::{Error, Result};
use crate::forms::{DifferentialForm, ExteriorForm, PoleComponent};
use crate::residue::parametrize_hyperplane;
use crate::spaces::solve::linear_variable;
use crate::spaces::{AmbientPoint, AmbientSpace, Chart, HomogMap};

/// One triple `(A, f, α)` with a scalar in front.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PrimeChain {
    pub map: HomogMap,
    pub form: DifferentialForm,
    pub coefficient: TauScalar,
}

impl PrimeChain {
    pub fn new(map: HomogMap, form: DifferentialForm) -> Result<Self> {
        if map.source != form.space {
            return Err(Error::DimensionMismatch("form does not live on the chain's domain".into()));
        }
        if form.degree() != form.space.dim() {
            return Err(Error::NotTopDegree { degree: form.degree(), dim: form.space.dim() });
        }
        Ok(PrimeChain { map, form, coefficient: TauScalar::one() })
    }

    pub fn domain(&self) -> &AmbientSpace {
        &self.map.source
    }

    pub fn target(&self) -> &AmbientSpace {
        &self.map.target
    }

    pub fn dim(&self) -> usize {
        self.map.source.dim()
    }

    /// `(X, id, α)`.
    pub fn whole(form: DifferentialForm) -> Result<Self> {
        PrimeChain::new(HomogMap::identity(&form.space), form)
    }

    /// `(P, a)`: a point with a weight.
    pub fn point(target: &AmbientSpace, p: &AmbientPoint, a: TauScalar) -> Result<Self> {
        let pt = AmbientSpace::point();
        let form = DifferentialForm::new(&pt, Chart::origin(&pt), ExteriorForm::function(vec![], RationalFunction::constant(a)), vec![])?;
        PrimeChain::new(HomogMap::constant(p, target), form)
    }

    /// A parametrized subvariety: chart coordinates of `target` as rational
    /// functions of parameters, each parameter ranging over its own line.
    /// `form` is written in the parameters.
    pub fn graph(
        target: &AmbientSpace,
        chart: &Chart,
        params: &[Symbol],
        assign: &HashMap<Symbol, RationalFunction>,
        local: ExteriorForm,
        poles: Option<Vec<MultiPoly>>,
    ) -> Result<Self> {
        let domain = AmbientSpace::lines_named(params);
        let mut full = assign.clone();
        for s in target.chart_coords(chart) {
            if !full.contains_key(&s) {
                if params.contains(&s) {
                    full.insert(s.clone(), RationalFunction::var(&s));
                } else {
                    return Err(Error::InvalidPresentation(format!("no value for {s}")));
                }
            }
        }
        let map = HomogMap::from_affine(&domain, target, chart, &full)?;
        PrimeChain::new(map, with_poles(&domain, local, poles)?)
    }

    /// The hypersurface `{h = 0}` of chart 0, parametrized by the remaining
    /// coordinates; `h` must be linear in a coordinate with constant
    /// coefficient.
    pub fn hyperplane(target: &AmbientSpace, h: &MultiPoly, local: ExteriorForm, poles: Option<Vec<MultiPoly>>) -> Result<Self> {
        let (domain, map) = hyperplane_domain(target, h)?;
        PrimeChain::new(map, with_poles(&domain, local, poles)?)
    }

    /// The triple with its coefficient folded into the form.
    pub fn folded(&self) -> PrimeChain {
        if self.coefficient.is_one() {
            return self.clone();
        }
        PrimeChain { form: self.form.scale(&self.coefficient), coefficient: TauScalar::one(), map: self.map.clone() }
    }

    pub fn is_point(&self) -> bool {
        self.map.source.dim() == 0
    }

    /// The image point of a 0-chain.
    pub fn image_point(&self) -> Option<AmbientPoint> {
        if !self.is_point() {
            return None;
        }
        self.map.eval(&AmbientPoint::new(vec![]).expect("point"))
    }

    /// Weight of a 0-chain.
    pub fn weight(&self) -> Option<TauScalar> {
        if !self.is_point() {
            return None;
        }
        self.form.local.as_function().as_constant().map(|v| v.mul(&self.coefficient))
    }

    /// Implicit equations of the image in a chart of the target, when the
    /// parametrization can be inverted by linear elimination.
    pub fn implicit_equations(&self, chart: &Chart) -> Option<Vec<MultiPoly>> {
        self.implicit(chart).map(|(eqs, _, _)| eqs)
    }

    /// Implicit equations in a chart of the target together with a left
    /// inverse: the coordinates of the returned source chart as functions
    /// of target coordinates.
    pub fn implicit(&self, chart: &Chart) -> Option<(Vec<MultiPoly>, HashMap<Symbol, RationalFunction>, Chart)> {
        let target = &self.map.target;
        let coords = target.chart_coords(chart);
        let src = Chart::origin(&self.map.source);
        if self.is_point() {
            let at = self.image_point()?.in_chart(target, chart)?;
            let eqs = coords.iter().map(|s| MultiPoly::var(s).sub(&MultiPoly::constant(at[s].clone()))).collect();
            return Some((eqs, HashMap::new(), src));
        }
        if self.map.is_identity() {
            return Some((Vec::new(), target.transition(chart, chart), chart.clone()));
        }
        self.map.source.charts().into_iter().find_map(|psi| self.implicit_from(&psi, chart).map(|(e, i)| (e, i, psi)))
    }

    fn implicit_from(&self, src: &Chart, chart: &Chart) -> Option<(Vec<MultiPoly>, HashMap<Symbol, RationalFunction>)> {
        let target = &self.map.target;
        let coords = target.chart_coords(chart);
        let src = src.clone();
        let names = self.map.source.chart_coords(&src);
        // fresh parameter names keep them apart from target coordinates
        let params: Vec<Symbol> = (0..names.len()).map(|i| Symbol::new(&format!("#t{i}"))).collect();
        let fresh: HashMap<Symbol, Symbol> = names.iter().cloned().zip(params.iter().cloned()).collect();
        let aff: HashMap<Symbol, RationalFunction> = self
            .map
            .affine(&src, chart)?
            .into_iter()
            .map(|(k, r)| (k, RationalFunction::new(r.numer().rename(&fresh), r.denom().rename(&fresh)).expect("nonzero")))
            .collect();
        // solve for each parameter from a coordinate linear in it
        let mut inverse: HashMap<Symbol, RationalFunction> = HashMap::new();
        let mut used: Vec<Symbol> = Vec::new();
        for t in &params {
            let mut found = None;
            for s in &coords {
                if used.contains(s) {
                    continue;
                }
                let r = &aff[s];
                if !r.denom().is_constant() || r.numer().degree_in(t) != 1 {
                    continue;
                }
                let cs = r.numer().coefficients_in(t);
                if !cs[1].is_constant() || params.iter().any(|p| p != t && cs[1].contains_var(p)) {
                    continue;
                }
                if params.iter().any(|p| p != t && inverse.get(p).is_none() && cs[0].contains_var(p)) {
                    continue;
                }
                let den = r.denom().constant_value()?;
                let a = cs[1].constant_value()?.div(&den)?;
                let b = RationalFunction::new(cs[0].clone(), r.denom().clone())?;
                let val = RationalFunction::var(s).sub(&b).mul(&RationalFunction::constant(a.inv()?));
                found = Some((s.clone(), val));
                break;
            }
            let (s, val) = found?;
            used.push(s);
            inverse.insert(t.clone(), val);
        }
        // substitute back; earlier inverses may mention later parameters
        for _ in 0..params.len() {
            let snapshot = inverse.clone();
            for v in inverse.values_mut() {
                *v = v.substitute(&snapshot)?;
            }
        }
        let mut eqs = Vec::new();
        for s in &coords {
            if used.contains(s) {
                continue;
            }
            let r = aff[s].substitute(&inverse)?;
            let e = RationalFunction::var(s).sub(&r);
            if !e.is_zero() {
                eqs.push(e.numer().clone());
            }
        }
        let inverse = names.into_iter().zip(params).map(|(n, p)| (n, inverse[&p].clone())).collect();
        Some((eqs, inverse))
    }

    /// Parseable rendering `(variety, form)` with `2πi` for τ.
    pub fn render(&self) -> String {
        let f = self.folded();
        format!("({},{})", render_variety(&f.map), f.form.local.render())
    }
}

fn with_poles(domain: &AmbientSpace, local: ExteriorForm, poles: Option<Vec<MultiPoly>>) -> Result<DifferentialForm> {
    let o = Chart::origin(domain);
    match poles {
        Some(ps) => {
            let comps = ps.iter().map(|h| PoleComponent::from_hom(domain, h.clone())).collect::<Result<Vec<_>>>()?;
            DifferentialForm::new(domain, o, local, comps)
        }
        None => DifferentialForm::with_inferred_poles(domain, o, local),
    }
}

/// Domain and inclusion of a hypersurface given by a chart-0 equation
/// linear in some coordinate with constant coefficient.
pub fn hyperplane_domain(target: &AmbientSpace, h: &MultiPoly) -> Result<(AmbientSpace, HomogMap)> {
    match linear_variable(h) {
        Some((v, a, b, true)) => parametrize_hyperplane(target, &Chart::origin(target), &v, &a, &b),
        _ => Err(Error::InvalidPresentation(format!("{h} cannot be parametrized by chart coordinates"))),
    }
}

/// `point(...)`, `whole` or `graph(params; coordinate=value, ...)`.
pub fn render_variety(map: &HomogMap) -> String {
    if map.source.dim() == 0 {
        return map.eval(&AmbientPoint::new(vec![]).expect("point")).map(|p| p.render()).unwrap_or_else(|| "point(?)".into());
    }
    if map.is_identity() {
        return "whole".into();
    }
    let src = Chart::origin(&map.source);
    let params = map.source.chart_coords(&src);
    let tc = map.generic_target_chart(&src);
    let Some(aff) = map.affine(&src, &tc) else {
        return "graph(?)".into();
    };
    let mut parts = Vec::new();
    for s in map.target.chart_coords(&tc) {
        let r = &aff[&s];
        if params.contains(&s) && *r == RationalFunction::var(&s) {
            continue;
        }
        parts.push(format!("{s}={}", r.render()));
    }
    let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    format!("graph({}; {})", ps.join(", "), parts.join(", "))
}

/// A formal sum of prime chains in one ambient space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolarChain {
    pub ambient: AmbientSpace,
    pub terms: Vec<PrimeChain>,
}

impl PolarChain {
    pub fn zero(ambient: &AmbientSpace) -> Self {
        PolarChain { ambient: ambient.clone(), terms: Vec::new() }
    }

    pub fn from_terms(ambient: &AmbientSpace, terms: Vec<PrimeChain>) -> Result<Self> {
        if terms.iter().any(|t| t.map.target != *ambient) {
            return Err(Error::DimensionMismatch("chain term outside the ambient space".into()));
        }
        Ok(PolarChain { ambient: ambient.clone(), terms })
    }

    pub fn single(t: PrimeChain) -> Self {
        PolarChain { ambient: t.map.target.clone(), terms: vec![t] }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &PolarChain) -> Result<PolarChain> {
        if self.ambient != o.ambient {
            return Err(Error::DimensionMismatch("chains in different spaces".into()));
        }
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Ok(PolarChain { ambient: self.ambient.clone(), terms })
    }

    pub fn scale(&self, c: &TauScalar) -> PolarChain {
        let terms = self.terms.iter().map(|t| PrimeChain { coefficient: t.coefficient.mul(c), ..t.clone() }).collect();
        PolarChain { ambient: self.ambient.clone(), terms }
    }

    pub fn neg(&self) -> PolarChain {
        self.scale(&TauScalar::from(-1))
    }

    /// Degree of the chain when all terms agree.
    pub fn degree(&self) -> Option<usize> {
        let d = self.terms.first()?.dim();
        self.terms.iter().all(|t| t.dim() == d).then_some(d)
    }

    /// Canonical text: a common power of 2πi is pulled out in front.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let folded: Vec<PrimeChain> = self.terms.iter().map(PrimeChain::folded).collect();
        let k = common_tau_power(&folded);
        let scale = TauScalar::tau_pow(-k);
        let mut body = String::new();
        for (i, t) in folded.iter().enumerate() {
            let mut form = if k == 0 { t.form.clone() } else { t.form.scale(&scale) };
            let neg = leads_negative(&form.local);
            if neg {
                form = form.neg();
            }
            let piece = format!("({},{})", render_variety(&t.map), form.local.render());
            match (i, neg) {
                (0, false) => body.push_str(&piece),
                (0, true) => {
                    body.push('-');
                    body.push_str(&piece)
                }
                (_, false) => {
                    body.push_str(" + ");
                    body.push_str(&piece)
                }
                (_, true) => {
                    body.push_str(" - ");
                    body.push_str(&piece)
                }
            }
        }
        match k {
            0 => body,
            1 => format!("(2πi)*[{body}]"),
            k => format!("(2πi)^{k}*[{body}]"),
        }
    }
}

impl fmt::Display for PolarChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn leads_negative(f: &ExteriorForm) -> bool {
    let Some((_, c)) = f.terms().iter().next() else { return false };
    c.numer().leading_coefficient().looks_negative()
}

/// The power `k` with every coefficient of every form equal to `τᵏ` times a
/// τ-free expression, or 0 when there is none.
fn common_tau_power(terms: &[PrimeChain]) -> i32 {
    let mut common: Option<i32> = None;
    for t in terms {
        for c in t.form.local.terms().values() {
            for (_, s) in c.denom().terms() {
                if !s.is_tau_free() {
                    return 0;
                }
            }
            for (_, s) in c.numer().terms() {
                let Some((_, k)) = s.as_tau_monomial() else { return 0 };
                match common {
                    None => common = Some(k),
                    Some(j) if j != k => return 0,
                    _ => {}
                }
            }
        }
    }
    common.unwrap_or(0)
}
