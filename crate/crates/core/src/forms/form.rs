use std::collections::HashMap;
use std::fmt;

use crate::algebra::roots::find_roots;
use crate::algebra::{gcd, Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::error::{Error, Result};
use crate::spaces::{hom_var, AmbientSpace, Chart, HomogMap};

use super::exterior::ExteriorForm;

/// One component of a pole divisor, stored as a multihomogeneous polynomial
/// on the space so it can be read in any chart.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PoleComponent {
    pub hom: MultiPoly,
    pub label: String,
}

impl PoleComponent {
    pub fn from_hom(space: &AmbientSpace, hom: MultiPoly) -> Result<Self> {
        if hom.is_constant() {
            return Err(Error::InadmissibleForm("constant pole component".into()));
        }
        if space.multidegree(&hom).is_none() {
            return Err(Error::InadmissibleForm(format!("{hom} is not multihomogeneous")));
        }
        let hom = hom.monic();
        let label = describe(space, &hom);
        Ok(PoleComponent { hom, label })
    }

    /// The component with local equation `h` in `chart`.
    pub fn from_local(space: &AmbientSpace, chart: &Chart, h: &MultiPoly) -> Result<Self> {
        PoleComponent::from_hom(space, space.homogenize(h, chart))
    }

    /// The hyperplane at infinity of the factor owning chart-0 coordinate `v`.
    pub fn infinity(space: &AmbientSpace, v: &Symbol) -> Result<Self> {
        let (f, _) = space
            .factor_of(&Chart::origin(space), v)
            .ok_or_else(|| Error::InadmissibleForm(format!("{v} is not a coordinate")))?;
        PoleComponent::from_hom(space, MultiPoly::var(&hom_var(f, 0)))
    }

    pub fn local(&self, space: &AmbientSpace, chart: &Chart) -> MultiPoly {
        let p = space.dehomogenize(&self.hom, chart);
        if p.is_constant() {
            p
        } else {
            p.monic()
        }
    }
}

/// Human label: the chart-0 equation when visible there, else `infinity(v)`.
fn describe(space: &AmbientSpace, hom: &MultiPoly) -> String {
    let origin = Chart::origin(space);
    let local = space.dehomogenize(hom, &origin);
    if !local.is_constant() {
        let top = local.total_degree();
        let lead = local.terms().rev().find(|(m, _)| m.degree() == top).map(|(_, c)| c.clone());
        return match lead.and_then(|c| c.inv()) {
            Some(inv) => local.scale(&inv).render(),
            None => local.render(),
        };
    }
    for (f, fac) in space.factors().iter().enumerate() {
        if *hom == MultiPoly::var(&hom_var(f, 0)) {
            return format!("infinity({})", fac.names[0]);
        }
    }
    hom.render()
}

impl fmt::Display for PoleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// A meromorphic form on a product of projective spaces, stored in one
/// working chart, with its declared pole components.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DifferentialForm {
    pub space: AmbientSpace,
    pub chart: Chart,
    pub local: ExteriorForm,
    pub poles: Vec<PoleComponent>,
}

/// Squarefree, pairwise coprime refinement of a list of polynomials.
pub fn coprime_basis(polys: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut work: Vec<MultiPoly> = Vec::new();
    for p in polys {
        if p.is_constant() {
            continue;
        }
        let mut g = p.clone();
        for v in p.variables() {
            g = gcd(&g, &p.derivative(&v));
        }
        let sf = if g.is_constant() { p.monic() } else { p.div_exact(&g).expect("gcd divides").monic() };
        work.push(sf);
        if !g.is_constant() {
            work.push(g.monic());
        }
    }
    loop {
        let mut changed = false;
        'outer: for i in 0..work.len() {
            for j in (i + 1)..work.len() {
                let g = gcd(&work[i], &work[j]);
                if g.is_constant() {
                    continue;
                }
                let a = work[i].div_exact(&g).expect("divides");
                let b = work[j].div_exact(&g).expect("divides");
                let (lo, hi) = (i, j);
                work.remove(hi);
                work.remove(lo);
                for p in [g, a, b] {
                    if !p.is_constant() && !work.contains(&p.monic()) {
                        work.push(p.monic());
                    }
                }
                changed = true;
                break 'outer;
            }
        }
        if !changed {
            break;
        }
    }
    work.sort();
    work.dedup();
    work
}

/// Splits off coordinate factors, contents with respect to each variable
/// and rational linear factors of univariate polynomials; other factors are
/// kept whole.
fn split_known_factors(p: &MultiPoly) -> Vec<MultiPoly> {
    let vars = p.variables();
    if vars.len() > 1 {
        for v in &vars {
            let c = p.content_in(v);
            if !c.is_constant() && c.variables().len() < vars.len() {
                let q = p.div_exact(&c).expect("content divides");
                let mut out = split_known_factors(&c);
                for f in split_known_factors(&q) {
                    if !out.contains(&f) {
                        out.push(f);
                    }
                }
                return out;
            }
        }
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    for v in p.variables() {
        let x = MultiPoly::var(&v);
        let mut found = false;
        while let Some(q) = rest.div_exact(&x) {
            if q.is_zero() {
                break;
            }
            rest = q;
            found = true;
        }
        if found {
            out.push(x);
        }
    }
    let vars = rest.variables();
    if vars.len() == 1 {
        let v = vars.iter().next().expect("one variable");
        if let Some(u) = rest.to_univariate(v) {
            let split = find_roots(&u);
            for (r, _) in &split.roots {
                out.push(MultiPoly::var(v).sub(&MultiPoly::constant(r.clone())));
            }
            let rem = MultiPoly::from_univariate(v, &split.remainder);
            if !rem.is_constant() {
                out.push(rem.monic());
            }
            return out;
        }
    }
    if !rest.is_constant() {
        out.push(rest.monic());
    }
    out
}

impl DifferentialForm {
    pub fn new(space: &AmbientSpace, chart: Chart, local: ExteriorForm, poles: Vec<PoleComponent>) -> Result<Self> {
        if local.coords() != space.chart_coords(&chart).as_slice() {
            return Err(Error::ChartMismatch);
        }
        Ok(DifferentialForm { space: space.clone(), chart, local, poles })
    }

    /// `c · dx₁∧…∧dxₙ` in chart 0.
    pub fn top(space: &AmbientSpace, c: RationalFunction, poles: Vec<PoleComponent>) -> Self {
        let chart = Chart::origin(space);
        let local = ExteriorForm::top(space.chart_coords(&chart), c);
        DifferentialForm { space: space.clone(), chart, local, poles }
    }

    /// A form with poles read off from the denominators in every chart.
    pub fn with_inferred_poles(space: &AmbientSpace, chart: Chart, local: ExteriorForm) -> Result<Self> {
        let mut f = DifferentialForm::new(space, chart, local, Vec::new())?;
        f.poles = f.inferred_poles()?;
        Ok(f)
    }

    /// Pole components read off from the denominators in every chart, split
    /// as far as coordinate and rational linear factors allow.
    pub fn inferred_poles(&self) -> Result<Vec<PoleComponent>> {
        let mut homs: Vec<MultiPoly> = Vec::new();
        for ch in self.space.charts() {
            let f = self.in_chart(&ch)?;
            let dens: Vec<MultiPoly> = f.local.terms().values().map(|c| c.denom().clone()).collect();
            for b in coprime_basis(&dens) {
                for q in split_known_factors(&b) {
                    let h = self.space.homogenize(&q, &ch).monic();
                    if !homs.contains(&h) {
                        homs.push(h);
                    }
                }
            }
        }
        homs.sort();
        homs.into_iter().map(|h| PoleComponent::from_hom(&self.space, h)).collect()
    }

    pub fn degree(&self) -> usize {
        self.local.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.local.is_zero()
    }

    pub fn coords(&self) -> &[Symbol] {
        self.local.coords()
    }

    /// The same form written in another chart.
    pub fn in_chart(&self, chart: &Chart) -> Result<Self> {
        if *chart == self.chart {
            return Ok(self.clone());
        }
        let sub = self.space.transition(&self.chart, chart);
        let local = self.local.pullback(&sub, &self.space.chart_coords(chart))?;
        Ok(DifferentialForm { space: self.space.clone(), chart: chart.clone(), local, poles: self.poles.clone() })
    }

    pub fn to_origin(&self) -> Result<Self> {
        self.in_chart(&Chart::origin(&self.space))
    }

    /// Nonconstant local equations of the declared components in `chart`,
    /// with the component index.
    pub fn local_poles(&self, chart: &Chart) -> Vec<(usize, MultiPoly)> {
        self.poles
            .iter()
            .enumerate()
            .map(|(i, p)| (i, p.local(&self.space, chart)))
            .filter(|(_, h)| !h.is_constant())
            .collect()
    }

    fn merged_poles(&self, o: &Self) -> Result<Vec<PoleComponent>> {
        let mut poles = self.poles.clone();
        for p in &o.poles {
            if poles.contains(p) {
                continue;
            }
            if let Some(q) = poles.iter().find(|q| !gcd(&q.hom, &p.hom).is_constant()) {
                return Err(Error::InadmissibleForm(format!("components {q} and {p} are not coprime")));
            }
            poles.push(p.clone());
        }
        Ok(poles)
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        if self.space != o.space || self.chart != o.chart {
            return Err(Error::ChartMismatch);
        }
        let local = self.local.wedge(&o.local)?;
        Ok(DifferentialForm { space: self.space.clone(), chart: self.chart.clone(), local, poles: self.merged_poles(o)? })
    }

    /// Sum; `o` is moved into this form's chart first.
    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.space != o.space {
            return Err(Error::ChartMismatch);
        }
        let o = o.in_chart(&self.chart)?;
        let local = self.local.add(&o.local)?;
        let mut poles = self.poles.clone();
        for p in &o.poles {
            if !poles.contains(p) {
                poles.push(p.clone());
            }
        }
        Ok(DifferentialForm { space: self.space.clone(), chart: self.chart.clone(), local, poles })
    }

    pub fn scale(&self, c: &TauScalar) -> Self {
        DifferentialForm { local: self.local.scale_scalar(c), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        DifferentialForm { local: self.local.neg(), ..self.clone() }
    }

    /// Drops declared components that no longer divide any denominator in
    /// any chart.
    pub fn prune_poles(&self) -> Result<Self> {
        let mut keep = vec![false; self.poles.len()];
        for ch in self.space.charts() {
            let f = self.in_chart(&ch)?;
            for (i, h) in f.local_poles(&ch) {
                if keep[i] {
                    continue;
                }
                keep[i] = f.local.terms().values().any(|c| !gcd(c.denom(), &h).is_constant());
            }
        }
        let poles = self.poles.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p.clone()).collect();
        Ok(DifferentialForm { poles, ..self.clone() })
    }

    /// Pullback along a map into this form's space. Poles are the
    /// squarefree coprime parts of the pulled-back components.
    pub fn pullback(&self, map: &HomogMap) -> Result<Self> {
        if map.target != self.space {
            return Err(Error::ChartMismatch);
        }
        let src_chart = Chart::origin(&map.source);
        let tgt_chart = map.generic_target_chart(&src_chart);
        let f = self.in_chart(&tgt_chart)?;
        let sub = map
            .affine(&src_chart, &tgt_chart)
            .ok_or_else(|| Error::SingularSubstitution("map leaves the working chart".into()))?;
        let local = f.local.pullback(&sub, &map.source.chart_coords(&src_chart))?;
        let pulled: Vec<MultiPoly> = self.poles.iter().map(|p| map.pullback_poly(&p.hom)).collect();
        if pulled.iter().any(MultiPoly::is_zero) {
            return Err(Error::SingularSubstitution("image lies in a pole component".into()));
        }
        let poles = coprime_basis(&pulled)
            .into_iter()
            .map(|h| PoleComponent::from_hom(&map.source, h))
            .collect::<Result<_>>()?;
        Ok(DifferentialForm { space: map.source.clone(), chart: src_chart, local, poles })
    }

    /// Chart-local expression followed by the pole list.
    pub fn render(&self) -> String {
        let body = self.local.render();
        if self.poles.is_empty() {
            return body;
        }
        let labels: Vec<&str> = self.poles.iter().map(|p| p.label.as_str()).collect();
        format!("{body} poles [{}]", labels.join(", "))
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Local form built from `(coefficient, wedge of names)` terms in chart 0.
pub fn local_form(space: &AmbientSpace, degree: usize, terms: &[(RationalFunction, Vec<&str>)]) -> Result<ExteriorForm> {
    let terms: Vec<(RationalFunction, Vec<Symbol>)> =
        terms.iter().map(|(c, w)| (c.clone(), w.iter().map(|s| Symbol::new(s)).collect())).collect();
    ExteriorForm::from_terms(space.origin_coords(), degree, &terms)
}

/// Substitution map from names to rational functions, for tests and examples.
pub fn assignment(pairs: &[(&str, RationalFunction)]) -> HashMap<Symbol, RationalFunction> {
    pairs.iter().map(|(s, r)| (Symbol::new(s), r.clone())).collect()
}
