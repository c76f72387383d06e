use std::collections::{BTreeMap, HashMap};

use crate::algebra::{linalg, Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::error::Result;
use crate::forms::{DifferentialForm, ExteriorForm};
use crate::pushforward::{pushforward, LineMap};
use crate::spaces::{hom_var, AmbientSpace, Chart, Factor, HomogMap};

use super::chain::{PolarChain, PrimeChain};

fn coeff_of(p: &MultiPoly, v: &Symbol) -> TauScalar {
    p.derivative(v).constant_value().unwrap_or_default()
}

fn linear(coeffs: &[TauScalar], vars: &[Symbol]) -> MultiPoly {
    coeffs
        .iter()
        .zip(vars)
        .fold(MultiPoly::zero(), |acc, (c, v)| acc.add(&MultiPoly::var(v).scale(c)))
}

/// Moves a triple to `(A', f∘φ, φ*α)` along an isomorphism `φ: A' → A`.
fn reparametrize(t: &PrimeChain, new_map: HomogMap, phi: &HomogMap) -> Result<PrimeChain> {
    let form = t.form.pullback(phi)?;
    Ok(PrimeChain { map: new_map, form, coefficient: t.coefficient.clone() })
}

/// Domains of products of lines mapped factorwise by constants and
/// Möbius maps become the image's own coordinate lines.
fn canonical_lines(t: &PrimeChain) -> Result<Option<PrimeChain>> {
    let (src, tgt) = (&t.map.source, &t.map.target);
    if !src.is_lines() || !tgt.is_lines() || src.dim() == 0 {
        return Ok(None);
    }
    let degs = t.map.degrees();
    let comps = t.map.components();
    let mut owner: Vec<Option<usize>> = vec![None; src.factors().len()];
    let mut moving = Vec::new();
    for (i, d) in degs.iter().enumerate() {
        let nz: Vec<usize> = (0..d.len()).filter(|&s| d[s] > 0).collect();
        match nz.as_slice() {
            [] => {}
            [s] if d[*s] == 1 && owner[*s].is_none() => {
                owner[*s] = Some(i);
                moving.push((i, *s));
            }
            _ => return Ok(None),
        }
    }
    if owner.iter().any(Option::is_none) {
        return Ok(None);
    }
    let factors: Vec<Factor> = moving.iter().map(|&(i, _)| Factor { dim: 1, names: tgt.factors()[i].names.clone() }).collect();
    let domain = AmbientSpace::new(factors);
    let mut new_comps = comps.to_vec();
    let mut phi_comps = vec![Vec::new(); src.factors().len()];
    for (j, &(i, s)) in moving.iter().enumerate() {
        new_comps[i] = vec![MultiPoly::var(&hom_var(j, 0)), MultiPoly::var(&hom_var(j, 1))];
        let (x0, x1) = (hom_var(s, 0), hom_var(s, 1));
        let (a, b) = (coeff_of(&comps[i][0], &x0), coeff_of(&comps[i][0], &x1));
        let (c, d) = (coeff_of(&comps[i][1], &x0), coeff_of(&comps[i][1], &x1));
        let y = [hom_var(j, 0), hom_var(j, 1)];
        phi_comps[s] = vec![linear(&[d, b.neg()], &y), linear(&[c.neg(), a], &y)];
    }
    let new_map = HomogMap::new(domain.clone(), tgt.clone(), new_comps);
    let phi = HomogMap::new(domain, src.clone(), phi_comps);
    Ok(Some(reparametrize(t, new_map, &phi)?))
}

/// Linear subspaces of a projective space, reparametrized so that the map
/// matrix is in reduced column echelon form.
fn canonical_linear(t: &PrimeChain) -> Result<Option<PrimeChain>> {
    let (src, tgt) = (&t.map.source, &t.map.target);
    if src.factors().len() != 1 || tgt.factors().len() != 1 || src.dim() == 0 {
        return Ok(None);
    }
    if t.map.degrees() != vec![vec![1]] {
        return Ok(None);
    }
    let (k, n) = (src.dim(), tgt.dim());
    let comps = &t.map.components()[0];
    let ys: Vec<Symbol> = src.hom_vars(0);
    // transpose augmented with the identity: [Aᵀ | I] → [R | E]
    let mut aug: Vec<Vec<TauScalar>> = (0..=k)
        .map(|c| {
            let mut row: Vec<TauScalar> = comps.iter().map(|p| coeff_of(p, &ys[c])).collect();
            row.extend((0..=k).map(|j| if j == c { TauScalar::one() } else { TauScalar::zero() }));
            row
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    if pivots.len() != k + 1 || pivots.iter().any(|&p| p > n) {
        return Ok(None);
    }
    let zs: Vec<Symbol> = (0..=k).map(|j| hom_var(0, j)).collect();
    let new_comps: Vec<MultiPoly> =
        (0..=n).map(|r| linear(&(0..=k).map(|c| aug[c][r].clone()).collect::<Vec<_>>(), &zs)).collect();
    let phi_comps: Vec<MultiPoly> =
        (0..=k).map(|c2| linear(&(0..=k).map(|c| aug[c][n + 1 + c2].clone()).collect::<Vec<_>>(), &zs)).collect();
    let names: Vec<Symbol> = pivots[1..].iter().map(|&r| tgt.coord_name(0, r, pivots[0])).collect();
    let domain = AmbientSpace::new(vec![Factor { dim: k, names }]);
    let new_map = HomogMap::new(domain.clone(), tgt.clone(), vec![new_comps]);
    let phi = HomogMap::new(domain, src.clone(), vec![phi_comps]);
    Ok(Some(reparametrize(t, new_map, &phi)?))
}

/// A line mapped onto a line with degree above one is replaced by the
/// identity with the pushed-forward form.
fn canonical_cover(t: &PrimeChain) -> Result<Option<PrimeChain>> {
    let (src, tgt) = (&t.map.source, &t.map.target);
    if src.factors().len() != 1 || src.dim() != 1 || tgt.factors().len() != 1 || tgt.dim() != 1 {
        return Ok(None);
    }
    if t.map.degrees()[0][0] <= 1 {
        return Ok(None);
    }
    let (s, z) = (src.origin_coords()[0].clone(), tgt.origin_coords()[0].clone());
    let o = Chart::origin(src);
    let Some(aff) = t.map.affine(&o, &Chart::origin(tgt)) else { return Ok(None) };
    let rename: HashMap<Symbol, Symbol> = [(s, z.clone())].into_iter().collect();
    let f = aff[&z].clone();
    let f = RationalFunction::new(f.numer().rename(&rename), f.denom().rename(&rename)).expect("nonzero");
    let local = t.form.to_origin()?.local.rename(&rename);
    let alpha = DifferentialForm::with_inferred_poles(tgt, Chart::origin(tgt), local)?;
    let pushed = pushforward(&LineMap::new(tgt, f)?, &alpha)?;
    Ok(Some(PrimeChain { map: HomogMap::identity(tgt), form: pushed, coefficient: t.coefficient.clone() }))
}

fn canonical(t: &PrimeChain) -> Result<PrimeChain> {
    if t.is_point() {
        let comps = t.map.components().to_vec();
        return Ok(PrimeChain { map: HomogMap::new(t.map.source.clone(), t.map.target.clone(), comps), ..t.clone() });
    }
    if let Some(c) = canonical_cover(t)? {
        return canonical(&c);
    }
    if let Some(c) = canonical_lines(t)? {
        return Ok(c);
    }
    if let Some(c) = canonical_linear(t)? {
        return Ok(c);
    }
    Ok(t.clone())
}

fn sorted_poles(mut f: DifferentialForm) -> DifferentialForm {
    f.poles.sort();
    f.poles.dedup();
    f
}

/// Folds coefficients, drops degenerate and zero terms, moves every term to
/// its canonical domain and merges terms with equal domain and map.
pub fn normalize(c: &PolarChain) -> Result<PolarChain> {
    let mut merged: BTreeMap<HomogMap, DifferentialForm> = BTreeMap::new();
    for t in &c.terms {
        let t = t.folded();
        if t.form.is_zero() || t.map.image_dim() < t.form.degree() {
            continue;
        }
        let t = canonical(&t)?;
        let form = t.form.to_origin()?;
        let entry = match merged.remove(&t.map) {
            Some(old) => old.add(&form)?,
            None => form,
        };
        merged.insert(t.map, entry);
    }
    let mut terms = Vec::new();
    for (map, form) in merged {
        if form.is_zero() {
            continue;
        }
        let form = sorted_poles(form.prune_poles()?);
        terms.push(PrimeChain { map, form, coefficient: TauScalar::one() });
    }
    Ok(PolarChain { ambient: c.ambient.clone(), terms })
}

/// Zero-form on a point, for building expected chains.
pub fn point_form(a: TauScalar) -> DifferentialForm {
    let pt = AmbientSpace::point();
    DifferentialForm { space: pt.clone(), chart: Chart::origin(&pt), local: ExteriorForm::function(vec![], RationalFunction::constant(a)), poles: vec![] }
}
