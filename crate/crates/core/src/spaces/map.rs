use std::collections::HashMap;

use crate::algebra::{gcd, Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::algebra::linalg;
use crate::error::{Error, Result};

use super::space::{hom_var, AmbientPoint, AmbientSpace, Chart};

/// A morphism between products of projective spaces, given for each target
/// factor by a tuple of multihomogeneous polynomials in the source's
/// homogeneous coordinates with no common factor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HomogMap {
    pub source: AmbientSpace,
    pub target: AmbientSpace,
    comps: Vec<Vec<MultiPoly>>,
}

fn normalize_tuple(mut t: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut g = MultiPoly::zero();
    for p in &t {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_constant() {
        t = t.iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect();
    }
    if let Some(first) = t.iter().find(|p| !p.is_zero()) {
        let inv = first.leading_coefficient().inv().expect("nonzero");
        t = t.iter().map(|p| p.scale(&inv)).collect();
    }
    t
}

impl HomogMap {
    pub fn new(source: AmbientSpace, target: AmbientSpace, comps: Vec<Vec<MultiPoly>>) -> Self {
        let comps = comps.into_iter().map(normalize_tuple).collect();
        HomogMap { source, target, comps }
    }

    pub fn components(&self) -> &[Vec<MultiPoly>] {
        &self.comps
    }

    pub fn identity(space: &AmbientSpace) -> Self {
        let comps = (0..space.factors().len())
            .map(|f| space.hom_vars(f).iter().map(MultiPoly::var).collect())
            .collect();
        HomogMap { source: space.clone(), target: space.clone(), comps }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == HomogMap::identity(&self.source)
    }

    /// The constant map from P⁰ to a point.
    pub fn constant(point: &AmbientPoint, target: &AmbientSpace) -> Self {
        let comps = point
            .homogeneous()
            .iter()
            .map(|row| row.iter().map(|c| MultiPoly::constant(c.clone())).collect())
            .collect();
        HomogMap { source: AmbientSpace::point(), target: target.clone(), comps }
    }

    /// Builds the map whose chart-`target_chart` coordinates are the given
    /// rational functions of the source's chart-0 coordinates.
    pub fn from_affine(
        source: &AmbientSpace,
        target: &AmbientSpace,
        target_chart: &Chart,
        assign: &HashMap<Symbol, RationalFunction>,
    ) -> Result<Self> {
        let src_chart = Chart::origin(source);
        let mut comps = Vec::new();
        for (f, fac) in target.factors().iter().enumerate() {
            let c = target_chart.choice[f];
            let mut entries: Vec<RationalFunction> = Vec::new();
            for j in 0..=fac.dim {
                if j == c {
                    entries.push(RationalFunction::one());
                } else {
                    let s = target.coord_name(f, j, c);
                    let r = assign.get(&s).ok_or_else(|| Error::InvalidPresentation(format!("no value for {s}")))?;
                    entries.push(r.clone());
                }
            }
            let mut lcm = MultiPoly::one();
            for e in &entries {
                let d = e.denom();
                let g = gcd(&lcm, d);
                lcm = lcm.mul(&d.div_exact(&g).expect("gcd divides"));
            }
            let polys: Vec<MultiPoly> = entries
                .iter()
                .map(|e| e.numer().mul(&lcm.div_exact(e.denom()).expect("lcm multiple")))
                .collect();
            let mut degs = vec![0u32; source.factors().len()];
            for p in &polys {
                for (g, d) in source.factor_degrees(p, &src_chart).into_iter().enumerate() {
                    degs[g] = degs[g].max(d);
                }
            }
            comps.push(polys.iter().map(|p| source.homogenize_with(p, &src_chart, &degs)).collect());
        }
        Ok(HomogMap::new(source.clone(), target.clone(), comps))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HomogMap) -> HomogMap {
        let sub = inner.substitution();
        let comps = self.comps.iter().map(|t| t.iter().map(|p| p.substitute(&sub)).collect()).collect();
        HomogMap::new(inner.source.clone(), self.target.clone(), comps)
    }

    /// Homogeneous variables of the target sent to source polynomials.
    pub fn substitution(&self) -> HashMap<Symbol, MultiPoly> {
        let mut sub = HashMap::new();
        for (f, t) in self.comps.iter().enumerate() {
            for (j, p) in t.iter().enumerate() {
                sub.insert(hom_var(f, j), p.clone());
            }
        }
        sub
    }

    /// Pullback of a multihomogeneous polynomial on the target.
    pub fn pullback_poly(&self, p: &MultiPoly) -> MultiPoly {
        p.substitute(&self.substitution())
    }

    /// Image of a point, `None` at a base point.
    pub fn eval(&self, p: &AmbientPoint) -> Option<AmbientPoint> {
        let rows = self.comps.iter().map(|t| t.iter().map(|q| p.eval_hom(q)).collect()).collect();
        AmbientPoint::new(rows)
    }

    /// Target chart coordinates as rational functions of source chart
    /// coordinates; `None` if the image avoids the target chart generically.
    pub fn affine(&self, src_chart: &Chart, tgt_chart: &Chart) -> Option<HashMap<Symbol, RationalFunction>> {
        let deh = self.source.dehomogenizer(src_chart);
        let mut out = HashMap::new();
        for (f, t) in self.comps.iter().enumerate() {
            let c = tgt_chart.choice[f];
            let den = t[c].substitute(&deh);
            if den.is_zero() {
                return None;
            }
            for (j, p) in t.iter().enumerate() {
                if j != c {
                    let r = RationalFunction::new(p.substitute(&deh), den.clone())?;
                    out.insert(self.target.coord_name(f, j, c), r);
                }
            }
        }
        Some(out)
    }

    /// A target chart into which the source chart-0 maps generically.
    pub fn generic_target_chart(&self, src_chart: &Chart) -> Chart {
        let deh = self.source.dehomogenizer(src_chart);
        Chart {
            choice: self
                .comps
                .iter()
                .map(|t| t.iter().position(|p| !p.substitute(&deh).is_zero()).unwrap_or(0))
                .collect(),
        }
    }

    /// Jacobian of the affine map at the generic point, rows indexed by
    /// target coordinates, columns by source coordinates.
    pub fn jacobian(&self, src_chart: &Chart, tgt_chart: &Chart) -> Option<Vec<Vec<RationalFunction>>> {
        let aff = self.affine(src_chart, tgt_chart)?;
        let src = self.source.chart_coords(src_chart);
        Some(
            self.target
                .chart_coords(tgt_chart)
                .iter()
                .map(|t| src.iter().map(|s| aff[t].derivative(s)).collect())
                .collect(),
        )
    }

    /// Dimension of the image: generic rank of the Jacobian.
    pub fn image_dim(&self) -> usize {
        let sc = Chart::origin(&self.source);
        let tc = self.generic_target_chart(&sc);
        match self.jacobian(&sc, &tc) {
            Some(j) if !j.is_empty() => linalg::rank(&j),
            _ => 0,
        }
    }

    /// Degree of each component tuple in each source factor.
    pub fn degrees(&self) -> Vec<Vec<u32>> {
        self.comps
            .iter()
            .map(|t| {
                let p = t.iter().find(|p| !p.is_zero()).cloned().unwrap_or_default();
                self.source.multidegree(&p).unwrap_or_default()
            })
            .collect()
    }

    /// Scalar tuple of a constant factor.
    pub fn constant_factor(&self, f: usize) -> Option<Vec<TauScalar>> {
        self.comps[f].iter().map(MultiPoly::constant_value).collect()
    }
}
