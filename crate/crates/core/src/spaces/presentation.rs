use std::collections::HashMap;

use crate::algebra::{linalg, Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::error::{Error, Result};

use super::solve::{common_zero, solve_points, Decision};
use super::space::{AmbientPoint, AmbientSpace, Chart};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PresentationKind {
    /// Coordinates in chart order.
    Point(Vec<TauScalar>),
    /// Each chart coordinate as a rational function of the parameters.
    Graph { params: Vec<Symbol>, assign: HashMap<Symbol, RationalFunction> },
    /// Local equation, with the designated variable it is solved for.
    Hypersurface { h: MultiPoly, var: Symbol },
    Whole,
}

/// A subvariety given in one chart of an ambient space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubvarietyPresentation {
    pub space: AmbientSpace,
    pub chart: Chart,
    pub kind: PresentationKind,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub detail: String,
}

/// Moves chart coordinates of a point to another chart.
pub fn transition_point(space: &AmbientSpace, values: &[TauScalar], from: &Chart, to: &Chart) -> Result<Vec<TauScalar>> {
    let names = space.chart_coords(from);
    if names.len() != values.len() {
        return Err(Error::DimensionMismatch(format!("expected {} coordinates", names.len())));
    }
    let map: HashMap<Symbol, TauScalar> = names.into_iter().zip(values.iter().cloned()).collect();
    let p = AmbientPoint::from_chart(space, from, &map)?;
    let out = p.in_chart(space, to).ok_or_else(|| Error::OutOfOverlap(format!("{} is outside the target chart", p.render())))?;
    Ok(space.chart_coords(to).iter().map(|s| out[s].clone()).collect())
}

fn eval_rf(r: &RationalFunction, at: &HashMap<Symbol, TauScalar>) -> Option<TauScalar> {
    let n = r.numer().evaluate(at).constant_value()?;
    let d = r.denom().evaluate(at).constant_value()?;
    n.div(&d)
}

impl SubvarietyPresentation {
    pub fn whole(space: &AmbientSpace) -> Self {
        SubvarietyPresentation { space: space.clone(), chart: Chart::origin(space), kind: PresentationKind::Whole }
    }

    pub fn point(space: &AmbientSpace, chart: Chart, coords: Vec<TauScalar>) -> Self {
        SubvarietyPresentation { space: space.clone(), chart, kind: PresentationKind::Point(coords) }
    }

    /// A hypersurface in chart 0; the designated variable is one in which
    /// `h` is linear with constant coefficient when there is one, and
    /// otherwise the first variable of top degree.
    pub fn hypersurface(space: &AmbientSpace, h: MultiPoly, var: Option<Symbol>) -> Result<Self> {
        let var = match var {
            Some(v) => v,
            None => designated_variable(&h).ok_or_else(|| Error::InvalidPresentation(format!("{h} is constant")))?,
        };
        if !h.lc_in(&var).is_constant() {
            return Err(Error::NotMonic(format!("{h} in {var}")));
        }
        Ok(SubvarietyPresentation { space: space.clone(), chart: Chart::origin(space), kind: PresentationKind::Hypersurface { h, var } })
    }

    pub fn coords(&self) -> Vec<Symbol> {
        self.space.chart_coords(&self.chart)
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            PresentationKind::Point(_) => 0,
            PresentationKind::Graph { params, .. } => params.len(),
            PresentationKind::Hypersurface { .. } => self.space.dim() - 1,
            PresentationKind::Whole => self.space.dim(),
        }
    }

    fn local(&self, p: &AmbientPoint) -> Result<HashMap<Symbol, TauScalar>> {
        p.in_chart(&self.space, &self.chart).ok_or_else(|| Error::OutOfOverlap(format!("{} is outside the presentation chart", p.render())))
    }

    /// Parameter values of a point on a graph.
    fn graph_params(&self, at: &HashMap<Symbol, TauScalar>) -> Result<Vec<HashMap<Symbol, TauScalar>>> {
        let PresentationKind::Graph { params, assign } = &self.kind else { unreachable!() };
        let mut eqs = Vec::new();
        let mut neqs = Vec::new();
        for (s, r) in assign {
            eqs.push(r.numer().sub(&r.denom().scale(&at[s])));
            neqs.push(r.denom().clone());
        }
        solve_points(&eqs, &neqs, params)
    }

    pub fn contains_point(&self, p: &AmbientPoint) -> Result<bool> {
        let Some(at) = p.in_chart(&self.space, &self.chart) else {
            return match &self.kind {
                PresentationKind::Whole => Ok(true),
                PresentationKind::Hypersurface { h, .. } => {
                    let hh = self.space.homogenize(h, &self.chart);
                    Ok(p.eval_hom(&hh).is_zero())
                }
                PresentationKind::Point(_) => Ok(false),
                PresentationKind::Graph { .. } => Err(Error::OutOfOverlap("graph membership outside its chart".into())),
            };
        };
        Ok(match &self.kind {
            PresentationKind::Whole => true,
            PresentationKind::Point(c) => self.coords().iter().zip(c).all(|(s, v)| at[s] == *v),
            PresentationKind::Hypersurface { h, .. } => h.evaluate(&at).is_zero(),
            PresentationKind::Graph { .. } => !self.graph_params(&at)?.is_empty(),
        })
    }

    pub fn validate_smooth(&self) -> Result<SmoothnessReport> {
        let PresentationKind::Hypersurface { h, .. } = &self.kind else {
            return Ok(SmoothnessReport { smooth: true, detail: "smooth by construction".into() });
        };
        let hh = self.space.homogenize(h, &self.chart);
        for ch in self.space.charts() {
            let loc = self.space.dehomogenize(&hh, &ch);
            if loc.is_constant() {
                continue;
            }
            let mut sys = vec![loc.clone()];
            for v in self.space.chart_coords(&ch) {
                sys.push(loc.derivative(&v));
            }
            match common_zero(&sys, &[]) {
                Decision::Empty => {}
                Decision::NonEmpty => {
                    return Ok(SmoothnessReport { smooth: false, detail: format!("{loc} and its partials share a zero") })
                }
                Decision::Undecidable => return Err(Error::UndecidableSmoothness(loc.to_string())),
            }
        }
        Ok(SmoothnessReport { smooth: true, detail: "no common zero of h and its partials".into() })
    }

    /// Basis of the tangent space at `p`, in chart coordinates.
    pub fn tangent_frame(&self, p: &AmbientPoint) -> Result<Vec<Vec<TauScalar>>> {
        if !self.contains_point(p)? {
            return Err(Error::PointNotOnVariety);
        }
        let at = self.local(p)?;
        let coords = self.coords();
        let n = coords.len();
        let unit = |k: usize| -> Vec<TauScalar> { (0..n).map(|i| if i == k { TauScalar::one() } else { TauScalar::zero() }).collect() };
        match &self.kind {
            PresentationKind::Point(_) => Ok(Vec::new()),
            PresentationKind::Whole => Ok((0..n).map(unit).collect()),
            PresentationKind::Hypersurface { h, .. } => {
                let grad: Vec<TauScalar> =
                    coords.iter().map(|s| h.derivative(s).evaluate(&at).constant_value().unwrap_or_default()).collect();
                let k = grad.iter().position(|g| !g.is_zero()).ok_or(Error::SingularPoint)?;
                let inv = grad[k].inv().unwrap();
                Ok((0..n)
                    .filter(|&j| j != k)
                    .map(|j| {
                        let mut v = unit(j);
                        v[k] = grad[j].mul(&inv).neg();
                        v
                    })
                    .collect())
            }
            PresentationKind::Graph { params, assign } => {
                let sols = self.graph_params(&at)?;
                let t = sols.first().ok_or(Error::PointNotOnVariety)?;
                let frame: Vec<Vec<TauScalar>> = params
                    .iter()
                    .map(|prm| {
                        coords
                            .iter()
                            .map(|s| eval_rf(&assign[s].derivative(prm), t).ok_or(Error::SingularPoint))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?;
                if linalg::rank(&frame) < params.len() {
                    return Err(Error::SingularPoint);
                }
                Ok(frame)
            }
        }
    }
}

/// Variable preferred for solving `h = 0`.
pub fn designated_variable(h: &MultiPoly) -> Option<Symbol> {
    if let Some((v, _, _, true)) = super::solve::linear_variable(h) {
        return Some(v);
    }
    let vars = h.variables();
    vars.iter().find(|v| h.lc_in(v).is_constant() && h.degree_in(v) > 0).cloned().or_else(|| vars.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> TauScalar {
        TauScalar::from(n)
    }

    #[test]
    fn p1_transitions() {
        let p1 = AmbientSpace::projective(1).unwrap();
        let (c0, c1) = (Chart { choice: vec![0] }, Chart { choice: vec![1] });
        assert_eq!(transition_point(&p1, &[q(2)], &c0, &c1).unwrap(), vec![TauScalar::from_frac(1, 2)]);
        assert!(matches!(transition_point(&p1, &[q(0)], &c0, &c1), Err(Error::OutOfOverlap(_))));
        let x2 = AmbientSpace::product_of_lines(2).unwrap();
        let to = Chart { choice: vec![1, 0] };
        assert_eq!(
            transition_point(&x2, &[q(2), q(3)], &Chart::origin(&x2), &to).unwrap(),
            vec![TauScalar::from_frac(1, 2), q(3)]
        );
    }

    #[test]
    fn graph_frame() {
        let x3 = AmbientSpace::product_of_lines(3).unwrap();
        let t = Symbol::new("t");
        let tv = RationalFunction::var(&t);
        let mut assign = HashMap::new();
        assign.insert(Symbol::new("x"), tv.clone());
        assign.insert(Symbol::new("y"), tv);
        assign.insert(Symbol::new("z"), RationalFunction::from_i64(5));
        let g = SubvarietyPresentation {
            space: x3.clone(),
            chart: Chart::origin(&x3),
            kind: PresentationKind::Graph { params: vec![t], assign },
        };
        let p = AmbientPoint::new(vec![vec![q(1), q(3)], vec![q(1), q(3)], vec![q(1), q(5)]]).unwrap();
        assert_eq!(g.tangent_frame(&p).unwrap(), vec![vec![q(1), q(1), q(0)]]);
    }

    #[test]
    fn smoothness() {
        let p2 = AmbientSpace::projective(2).unwrap();
        let x = MultiPoly::var_str("x");
        let y = MultiPoly::var_str("y");
        let circle = SubvarietyPresentation::hypersurface(&p2, x.pow(2).add(&y.pow(2)).sub(&MultiPoly::int(1)), None).unwrap();
        assert!(circle.validate_smooth().unwrap().smooth);
        let err = SubvarietyPresentation::hypersurface(&p2, x.mul(&y), Some(Symbol::new("x"))).unwrap_err();
        assert!(matches!(err, Error::NotMonic(_)));
        let node = SubvarietyPresentation {
            space: p2.clone(),
            chart: Chart::origin(&p2),
            kind: PresentationKind::Hypersurface { h: x.mul(&y), var: Symbol::new("x") },
        };
        assert!(!node.validate_smooth().unwrap().smooth);
        let cusp = SubvarietyPresentation::hypersurface(&p2, y.pow(2).sub(&x.pow(3)), None).unwrap();
        assert!(!cusp.validate_smooth().unwrap().smooth);
        let x2 = AmbientSpace::product_of_lines(2).unwrap();
        let line = SubvarietyPresentation::hypersurface(&x2, x.sub(&MultiPoly::int(2)), None).unwrap();
        let p = AmbientPoint::new(vec![vec![q(1), q(2)], vec![q(1), q(5)]]).unwrap();
        assert!(line.contains_point(&p).unwrap());
    }
}
