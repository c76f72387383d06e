//! Exact roots of univariate polynomials with scalar coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

use super::field::Field;
use super::gaussian::GaussianRational;
use super::tau::TauScalar;
use super::unipoly::UniPoly;

/// Roots found with multiplicity, plus the factor that could not be split
/// (constant when the polynomial splits completely).
#[derive(Clone, Debug)]
pub struct RootSplit {
    pub roots: Vec<(TauScalar, u32)>,
    pub remainder: UniPoly<TauScalar>,
}

impl RootSplit {
    pub fn is_complete(&self) -> bool {
        self.remainder.degree().is_none_or(|d| d == 0)
    }
}

/// Finds the roots of `p` in ℚ(i)(τ) by deflation: linear factors, the
/// quadratic formula with exact square roots, and rational candidates.
pub fn find_roots(p: &UniPoly<TauScalar>) -> RootSplit {
    let mut rest = p.monic();
    let mut roots: Vec<(TauScalar, u32)> = Vec::new();
    loop {
        let Some(d) = rest.degree() else { break };
        if d == 0 {
            break;
        }
        let candidate = if d == 1 {
            Some(rest.coeff(0).neg())
        } else if d == 2 {
            quadratic_root(&rest)
        } else {
            zero_root(&rest).or_else(|| rational_candidate(&rest))
        };
        let Some(r) = candidate else { break };
        let lin = UniPoly::new(vec![r.neg(), TauScalar::one()]);
        let mut mult = 0;
        while let Some((q, rem)) = rest.div_rem(&lin) {
            if !rem.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        match roots.iter_mut().find(|(x, _)| *x == r) {
            Some((_, m)) => *m += mult,
            None => roots.push((r, mult)),
        }
    }
    roots.sort();
    RootSplit { roots, remainder: rest }
}

fn zero_root(p: &UniPoly<TauScalar>) -> Option<TauScalar> {
    p.coeff(0).is_zero().then(TauScalar::zero)
}

fn quadratic_root(p: &UniPoly<TauScalar>) -> Option<TauScalar> {
    let (b, c) = (p.coeff(1), p.coeff(0));
    let disc = b.mul(&b).sub(&c.mul(&TauScalar::from(4)));
    let s = tau_sqrt(&disc)?;
    Some(s.sub(&b).mul(&TauScalar::from_frac(1, 2)))
}

/// Square root of `c·τ^(2k)` with `c` a square in ℚ(i).
fn tau_sqrt(x: &TauScalar) -> Option<TauScalar> {
    if x.is_zero() {
        return Some(TauScalar::zero());
    }
    let (c, k) = x.as_tau_monomial()?;
    if k % 2 != 0 {
        return None;
    }
    Some(TauScalar::from_gaussian(c.sqrt()?).mul(&TauScalar::tau_pow(k / 2)))
}

type GaussInt = (BigInt, BigInt);

/// Rational root test over ℤ[i] driven by numeric roots: every root of the
/// primitive integer polynomial has the form `g/aₙ` with `g` a Gaussian
/// integer, so rounding `aₙ·z` for each approximate root `z` gives the only
/// candidates worth checking exactly.
fn rational_candidate(p: &UniPoly<TauScalar>) -> Option<TauScalar> {
    let coeffs: Vec<GaussianRational> = p.coeffs().iter().map(TauScalar::as_gaussian).collect::<Option<_>>()?;
    let gp = UniPoly::new(coeffs);
    let d = gp.derivative();
    let g = gp.gcd(&d);
    let sq = if g.degree().is_some_and(|k| k > 0) { gp.div_rem(&g)?.0 } else { gp.clone() };
    let lcm = sq.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()).lcm(c.im().denom()));
    let scale = BigRational::from_integer(lcm);
    let ints: Vec<GaussInt> = sq.coeffs().iter().map(|c| ((c.re() * &scale).to_integer(), (c.im() * &scale).to_integer())).collect();
    let lead = ints.last()?.clone();
    let lead_g = GaussianRational::new(BigRational::from_integer(lead.0.clone()), BigRational::from_integer(lead.1.clone()));
    let lead_inv = lead_g.inv()?;
    let approx: Vec<Complex64> = ints.iter().map(|(a, b)| Complex64::new(a.to_f64().unwrap_or(f64::NAN), b.to_f64().unwrap_or(f64::NAN))).collect();
    if approx.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return None;
    }
    let la = approx.last().copied()?;
    for z in numeric_roots(&approx) {
        let w = la * z;
        if !w.re.is_finite() || !w.im.is_finite() {
            continue;
        }
        let (re, im) = (BigInt::from(w.re.round() as i128), BigInt::from(w.im.round() as i128));
        let cand = GaussianRational::new(BigRational::from_integer(re), BigRational::from_integer(im)).mul(&lead_inv);
        if gp.eval(&cand).is_zero() {
            return Some(TauScalar::from_gaussian(cand));
        }
    }
    None
}

/// Simultaneous Aberth iteration on a squarefree polynomial.
fn numeric_roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let bound = 1.0 + monic[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(bound * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect();
    let eval = |x: Complex64| {
        let (mut v, mut dv) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for a in monic.iter().rev() {
            dv = dv * x + v;
            v = v * x + a;
        }
        (v, dv)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly<TauScalar> {
        UniPoly::new(c.iter().map(|&x| TauScalar::from(x)).collect())
    }

    #[test]
    fn gaussian_quadratic() {
        // z² + 1 = (z − i)(z + i)
        let s = find_roots(&p(&[1, 0, 1]));
        assert!(s.is_complete());
        assert_eq!(s.roots.len(), 2);
        assert!(s.roots.iter().any(|(r, _)| *r == TauScalar::i()));
    }

    #[test]
    fn cubic_with_multiplicity() {
        // (z − 2)²(z + 3)
        let s = find_roots(&p(&[12, -8, -1, 1]));
        assert!(s.is_complete());
        assert!(s.roots.contains(&(TauScalar::from(2), 2)));
        assert!(s.roots.contains(&(TauScalar::from(-3), 1)));
    }

    #[test]
    fn gaussian_rational_roots() {
        // (3z − (1+2i))(2z + i)(z − 5)
        let a = UniPoly::new(vec![TauScalar::from_gaussian(GaussianRational::from_ints(-1, -2)), TauScalar::from(3)]);
        let b = UniPoly::new(vec![TauScalar::i(), TauScalar::from(2)]);
        let c = p(&[-5, 1]);
        let s = find_roots(&a.mul(&b).mul(&c));
        assert!(s.is_complete());
        assert_eq!(s.roots.len(), 3);
    }

    #[test]
    fn irreducible_stays() {
        let s = find_roots(&p(&[-2, 0, 1]));
        assert!(!s.is_complete());
        assert_eq!(s.remainder.degree(), Some(2));
    }
}
