//! Poincaré residues along declared pole components, their iterates, and
//! the residue sum on the line.

use std::collections::HashMap;

use crate::algebra::roots::find_roots;
use crate::algebra::{Field, MultiPoly, RationalFunction, Symbol, TauScalar, UniPoly};
use crate::error::{Error, Result};
use crate::forms::{coprime_basis, validate_chain_form, DifferentialForm, ExteriorForm, PoleComponent};
use crate::spaces::solve::linear_variable;
use crate::spaces::{AmbientPoint, AmbientSpace, Chart, Factor, HomogMap};

/// The residue of a form along (a piece of) one component: a top-degree form
/// on a parametrized copy of the component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResiduePiece {
    pub component: PoleComponent,
    pub inclusion: HomogMap,
    pub form: DifferentialForm,
}

impl ResiduePiece {
    /// The value of a residue supported on a point.
    pub fn value(&self) -> Option<TauScalar> {
        if self.form.degree() != 0 {
            return None;
        }
        self.form.local.as_function().as_constant()
    }

    pub fn render(&self) -> String {
        if self.form.space.dim() == 0 {
            let p = self.inclusion.eval(&AmbientPoint::new(vec![]).expect("point")).expect("constant map");
            return format!("{} at {}", self.form.local.render(), p.render());
        }
        format!("{} on {}", self.form.render(), self.component.label)
    }
}

fn check(form: &DifferentialForm, comp: &PoleComponent) -> Result<()> {
    if form.degree() != form.space.dim() {
        return Err(Error::NotTopDegree { degree: form.degree(), dim: form.space.dim() });
    }
    if !form.poles.contains(comp) {
        return Err(Error::ComponentNotDeclared(comp.label.clone()));
    }
    Ok(())
}

fn eval_poly(p: &MultiPoly, at: &HashMap<Symbol, TauScalar>) -> TauScalar {
    p.evaluate(at).constant_value().expect("all variables assigned")
}

/// Residues of a 1-form on a line at the points of `comp`.
fn curve_residue(form: &DifferentialForm, comp: &PoleComponent) -> Result<Vec<ResiduePiece>> {
    let space = &form.space;
    let mut out = Vec::new();
    for ch in space.charts() {
        let h = comp.local(space, &ch);
        if h.is_constant() {
            continue;
        }
        let z = space.chart_coords(&ch)[0].clone();
        // points already seen in an earlier chart
        let earlier: Vec<Chart> = space.charts().into_iter().take_while(|c| *c != ch).collect();
        let u = h.to_univariate(&z).expect("univariate");
        let split = find_roots(&u);
        if !split.is_complete() {
            return Err(Error::UnpresentableBoundary(format!("{} has roots outside Q(i)", comp.label)));
        }
        let mut fresh = Vec::new();
        for (r, _) in split.roots {
            let at: HashMap<Symbol, TauScalar> = [(z.clone(), r)].into_iter().collect();
            let pt = AmbientPoint::from_chart(space, &ch, &at)?;
            if !earlier.iter().any(|c| pt.in_chart(space, c).is_some()) {
                fresh.push((at, pt));
            }
        }
        if fresh.is_empty() {
            continue;
        }
        let g = form.in_chart(&ch)?.local.top_coefficient();
        for (at, pt) in fresh {
            let d_at = eval_poly(g.denom(), &at);
            let value = if !d_at.is_zero() {
                TauScalar::zero()
            } else {
                let slope = eval_poly(&g.denom().derivative(&z), &at);
                if slope.is_zero() {
                    return Err(Error::InadmissibleForm(format!("pole of order at least 2 at {}", pt.render())));
                }
                eval_poly(g.numer(), &at).div(&slope).expect("nonzero slope")
            };
            let point = AmbientSpace::point();
            let local = ExteriorForm::function(vec![], RationalFunction::constant(value));
            out.push(ResiduePiece {
                component: comp.clone(),
                inclusion: HomogMap::constant(&pt, space),
                form: DifferentialForm::new(&point, Chart::origin(&point), local, vec![])?,
            });
        }
    }
    Ok(out)
}

/// A chart and a variable in which the component's equation is linear,
/// preferring a constant coefficient.
fn linear_chart(space: &AmbientSpace, comp: &PoleComponent) -> Option<(Chart, Symbol, MultiPoly, MultiPoly)> {
    let mut fallback = None;
    for ch in space.charts() {
        let h = comp.local(space, &ch);
        if h.is_constant() {
            continue;
        }
        if let Some((v, a, b, unit)) = linear_variable(&h) {
            if unit {
                return Some((ch, v, a, b));
            }
            if fallback.is_none() {
                fallback = Some((ch, v, a, b));
            }
        }
    }
    fallback
}

/// The component `{v = −b/a}` in chart `ch` as a space of its own whose
/// chart-0 coordinates are the remaining chart coordinates, with the
/// inclusion map.
pub fn parametrize_hyperplane(
    space: &AmbientSpace,
    ch: &Chart,
    v: &Symbol,
    a: &MultiPoly,
    b: &MultiPoly,
) -> Result<(AmbientSpace, HomogMap)> {
    let idx = space.chart_coords_indexed(ch);
    let mut factors = Vec::new();
    for (f, fac) in space.factors().iter().enumerate() {
        let names: Vec<Symbol> = idx.iter().filter(|(s, g, _)| *g == f && s != v).map(|(s, _, _)| s.clone()).collect();
        if names.is_empty() {
            continue;
        }
        let dim = if names.len() < fac.dim { fac.dim - 1 } else { fac.dim };
        factors.push(Factor { dim, names });
    }
    let sub = AmbientSpace::new(factors);
    let mut assign = HashMap::new();
    for (s, _, _) in &idx {
        if s == v {
            let r = RationalFunction::new(b.neg(), a.clone()).ok_or(Error::DivisionByZero)?;
            assign.insert(s.clone(), r);
        } else {
            assign.insert(s.clone(), RationalFunction::var(s));
        }
    }
    let map = HomogMap::from_affine(&sub, space, ch, &assign)?;
    Ok((sub, map))
}

/// Poincaré residue of a top-degree form along one declared component,
/// written `ω = ρ ∧ dh/h + ε`.
pub fn poincare_residue(form: &DifferentialForm, comp: &PoleComponent) -> Result<Vec<ResiduePiece>> {
    check(form, comp)?;
    let space = &form.space;
    if space.dim() == 1 {
        return curve_residue(form, comp);
    }
    let (ch, v, a, b) = linear_chart(space, comp)
        .ok_or_else(|| Error::UnpresentableBoundary(format!("{} is not linear in any chart variable", comp.label)))?;
    let f = form.in_chart(&ch)?;
    let coords = space.chart_coords(&ch);
    let k = coords.len();
    let j = coords.iter().position(|s| *s == v).expect("chart variable");
    let h = a.mul(&MultiPoly::var(&v)).add(&b);
    let g = f.local.top_coefficient();
    let mut rho = g.mul(&RationalFunction::new(h, a.clone()).ok_or(Error::DivisionByZero)?);
    if (k - 1 - j) % 2 == 1 {
        rho = rho.neg();
    }
    let vsub = RationalFunction::new(b.neg(), a.clone()).ok_or(Error::DivisionByZero)?;
    let sub: HashMap<Symbol, RationalFunction> = [(v.clone(), vsub)].into_iter().collect();
    let rho = rho
        .substitute(&sub)
        .ok_or_else(|| Error::InadmissibleForm(format!("pole of order at least 2 along {}", comp.label)))?;
    let (domain, inclusion) = parametrize_hyperplane(space, &ch, &v, &a, &b)?;
    let mut pulled = Vec::new();
    for p in &form.poles {
        if p == comp {
            continue;
        }
        let q = inclusion.pullback_poly(&p.hom);
        if q.is_zero() {
            return Err(Error::NotTransverseComponents(format!("{} contains {}", p.label, comp.label)));
        }
        if !q.is_constant() {
            pulled.push(q);
        }
    }
    let poles = coprime_basis(&pulled)
        .into_iter()
        .map(|q| PoleComponent::from_hom(&domain, q))
        .collect::<Result<Vec<_>>>()?;
    let local = ExteriorForm::top(domain.origin_coords(), rho);
    let residue = DifferentialForm::new(&domain, Chart::origin(&domain), local, poles)?;
    Ok(vec![ResiduePiece { component: comp.clone(), inclusion, form: residue }])
}

/// One residue per declared component.
pub fn residue_all(form: &DifferentialForm) -> Result<Vec<ResiduePiece>> {
    let mut out = Vec::new();
    for p in &form.poles {
        out.extend(poincare_residue(form, p)?);
    }
    Ok(out)
}

/// `res_{i,j} ω`: the residue along `V_j`, then along `V_i ∩ V_j` inside
/// `V_j`. Inclusions are composed into the original space.
pub fn repeated_residue(form: &DifferentialForm, vi: &PoleComponent, vj: &PoleComponent) -> Result<Vec<ResiduePiece>> {
    check(form, vi)?;
    let mut out = Vec::new();
    for piece in poincare_residue(form, vj)? {
        let q = piece.inclusion.pullback_poly(&vi.hom);
        if q.is_constant() {
            continue;
        }
        let targets: Vec<PoleComponent> =
            piece.form.poles.iter().filter(|p| !crate::algebra::gcd(&p.hom, &q).is_constant()).cloned().collect();
        for t in targets {
            for inner in poincare_residue(&piece.form, &t)? {
                out.push(ResiduePiece {
                    component: vi.clone(),
                    inclusion: piece.inclusion.compose(&inner.inclusion),
                    form: inner.form,
                });
            }
        }
    }
    if out.is_empty() {
        return Err(Error::NotTransverseComponents(format!("{} and {} do not meet", vi.label, vj.label)));
    }
    Ok(out)
}

/// Sum of all residues of an admissible 1-form on a line, infinity included.
pub fn p1_residue_sum(form: &DifferentialForm) -> Result<TauScalar> {
    if form.space.factors().len() != 1 || form.space.dim() != 1 {
        return Err(Error::DimensionMismatch("residue sums are taken on a line".into()));
    }
    let rep = validate_chain_form(form);
    if !rep.valid {
        return Err(Error::InadmissibleForm(rep.problems.join("; ")));
    }
    let mut total = TauScalar::zero();
    for piece in residue_all(form)? {
        total = total.add(&piece.value().expect("point residue"));
    }
    Ok(total)
}

/// Laurent residue of a 1-form on a line at an arbitrary point, of any
/// pole order; zero where the form is regular.
pub fn residue_at_point(form: &DifferentialForm, p: &AmbientPoint) -> Result<TauScalar> {
    if form.space.factors().len() != 1 || form.space.dim() != 1 {
        return Err(Error::DimensionMismatch("point residues are taken on a line".into()));
    }
    let ch = p.chart();
    let at = p.in_chart(&form.space, &ch).expect("own chart");
    let z = form.space.chart_coords(&ch)[0].clone();
    let f = form.in_chart(&ch)?;
    let g = f.local.top_coefficient();
    let r = at[&z].clone();
    let shift = |q: &MultiPoly| -> UniPoly<TauScalar> {
        let u = q.to_univariate(&z).expect("univariate");
        u.compose(&UniPoly::new(vec![r.clone(), TauScalar::one()]))
    };
    let num = shift(g.numer());
    let mut den = shift(g.denom());
    let mut order = 0usize;
    while !den.is_zero() && den.coeff(0).is_zero() {
        den = den.div_rem(&UniPoly::x()).expect("nonzero").0;
        order += 1;
    }
    if order == 0 {
        return Ok(TauScalar::zero());
    }
    // coefficient of s^(order-1) in num/den as a power series
    let inv0 = den.coeff(0).inv().ok_or(Error::DivisionByZero)?;
    let mut q: Vec<TauScalar> = Vec::with_capacity(order);
    for k in 0..order {
        let mut acc = num.coeff(k);
        for (j, qj) in q.iter().enumerate() {
            acc = acc.sub(&qj.mul(&den.coeff(k - j)));
        }
        q.push(acc.mul(&inv0));
    }
    Ok(q[order - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(p: MultiPoly) -> RationalFunction {
        RationalFunction::new(MultiPoly::one(), p).unwrap()
    }

    fn square() -> (AmbientSpace, DifferentialForm) {
        let m = AmbientSpace::product_of_lines(2).unwrap();
        let o = Chart::origin(&m);
        let (x, y) = (MultiPoly::var_str("x"), MultiPoly::var_str("y"));
        let poles = vec![
            PoleComponent::from_local(&m, &o, &x).unwrap(),
            PoleComponent::from_local(&m, &o, &y).unwrap(),
            PoleComponent::infinity(&m, &Symbol::new("x")).unwrap(),
            PoleComponent::infinity(&m, &Symbol::new("y")).unwrap(),
        ];
        let w = DifferentialForm::top(&m, inv(x.mul(&y)), poles);
        (m, w)
    }

    #[test]
    fn residue_of_log_square() {
        let (_, w) = square();
        let r = poincare_residue(&w, &w.poles[0]).unwrap();
        assert_eq!(r[0].form.local.render(), "-1/y*dy");
        let all = residue_all(&w).unwrap();
        let rendered: Vec<String> = all.iter().map(|p| p.form.local.render()).collect();
        assert_eq!(rendered, vec!["-1/y*dy", "1/x*dx", "1/y*dy", "-1/x*dx"]);
    }

    #[test]
    fn repeated_residues_antisymmetric() {
        let (_, w) = square();
        let xy = repeated_residue(&w, &w.poles[0], &w.poles[1]).unwrap();
        let yx = repeated_residue(&w, &w.poles[1], &w.poles[0]).unwrap();
        assert_eq!(xy[0].value(), Some(TauScalar::one()));
        assert_eq!(yx[0].value(), Some(TauScalar::from(-1)));
    }

    #[test]
    fn residues_on_the_line() {
        let p1 = AmbientSpace::projective(1).unwrap();
        let o = Chart::origin(&p1);
        let z = MultiPoly::var_str("z");
        let h = z.mul(&z).sub(&MultiPoly::one());
        let poles = vec![PoleComponent::from_local(&p1, &o, &h).unwrap()];
        let w = DifferentialForm::top(&p1, inv(h), poles);
        let r = residue_all(&w).unwrap();
        let vals: Vec<TauScalar> = r.iter().map(|p| p.value().unwrap()).collect();
        assert!(vals.contains(&TauScalar::from_frac(1, 2)) && vals.contains(&TauScalar::from_frac(-1, 2)));
        assert!(p1_residue_sum(&w).unwrap().is_zero());
        let poles = vec![
            PoleComponent::from_local(&p1, &o, &z).unwrap(),
            PoleComponent::infinity(&p1, &Symbol::new("z")).unwrap(),
        ];
        let w = DifferentialForm::top(&p1, inv(z.clone()), poles);
        let r = residue_all(&w).unwrap();
        assert_eq!(r[1].value(), Some(TauScalar::from(-1)));
        assert_eq!(r[1].render(), "-1 at point(inf)");
        let inf = AmbientPoint::new(vec![vec![TauScalar::zero(), TauScalar::one()]]).unwrap();
        assert_eq!(residue_at_point(&w, &inf).unwrap(), TauScalar::from(-1));
        let dz2 = DifferentialForm::top(&p1, inv(z.mul(&z)), vec![]);
        let zero = AmbientPoint::new(vec![vec![TauScalar::one(), TauScalar::zero()]]).unwrap();
        assert!(residue_at_point(&dz2, &zero).unwrap().is_zero());
    }
}
