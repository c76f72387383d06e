use crate::algebra::{Field, MultiPoly, TauScalar};
use crate::error::{Error, Result};
use crate::forms::validate_chain_form;
use crate::residue::residue_all;
use crate::spaces::{AmbientSpace, HomogMap};

use super::chain::{render_variety, PolarChain, PrimeChain};
use super::normalize::normalize;

/// `∂(A, f, α) = 2πi Σᵢ (Vᵢ, f|Vᵢ, res α)`, normalized.
pub fn boundary(c: &PolarChain) -> Result<PolarChain> {
    let mut out = PolarChain::zero(&c.ambient);
    let tau = TauScalar::tau();
    for t in normalize(c)?.terms {
        if t.form.degree() == 0 {
            continue;
        }
        let rep = validate_chain_form(&t.form);
        if !rep.valid {
            return Err(Error::InadmissibleForm(format!("{}: {}", render_variety(&t.map), rep.problems.join("; "))));
        }
        for piece in residue_all(&t.form)? {
            out.terms.push(PrimeChain {
                map: t.map.compose(&piece.inclusion),
                form: piece.form.scale(&tau),
                coefficient: TauScalar::one(),
            });
        }
    }
    normalize(&out)
}

pub fn boundary_squared(c: &PolarChain) -> Result<PolarChain> {
    boundary(&boundary(c)?)
}

/// Sum of the weights of a 0-chain.
pub fn hp0_class(c: &PolarChain) -> Result<TauScalar> {
    let mut total = TauScalar::zero();
    for t in &c.terms {
        let w = t.weight().ok_or_else(|| Error::DimensionMismatch("not a 0-chain".into()))?;
        total = total.add(&w);
    }
    Ok(total)
}

/// Subvarieties, by multihomogeneous equations, modulo which chains are
/// taken.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelativeContext {
    pub ambient: AmbientSpace,
    pub members: Vec<Vec<MultiPoly>>,
}

impl RelativeContext {
    pub fn new(ambient: &AmbientSpace, members: Vec<Vec<MultiPoly>>) -> Result<Self> {
        for m in members.iter().flatten() {
            if ambient.multidegree(m).is_none() {
                return Err(Error::InvalidPresentation(format!("{m} is not multihomogeneous")));
            }
        }
        Ok(RelativeContext { ambient: ambient.clone(), members })
    }

    /// Whether the image of a map lies in some member.
    pub fn contains(&self, map: &HomogMap) -> bool {
        self.members.iter().any(|eqs| eqs.iter().all(|e| map.pullback_poly(e).is_zero()))
    }
}

/// Drops the terms supported inside the relative context.
pub fn reduce_relative(c: &PolarChain, ctx: &RelativeContext) -> Result<PolarChain> {
    if c.ambient != ctx.ambient {
        return Err(Error::DimensionMismatch("relative context of another space".into()));
    }
    let n = normalize(c)?;
    let terms = n.terms.into_iter().filter(|t| !ctx.contains(&t.map)).collect();
    Ok(PolarChain { ambient: n.ambient, terms })
}
