//! Scalars of ℚ(i)(τ), where τ is a formal symbol standing for 2πi.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use super::field::Field;
use super::gaussian::GaussianRational;
use super::unipoly::UniPoly;

/// A rational function in τ with Gaussian-rational coefficients, kept as a
/// reduced fraction with monic denominator. τ is never evaluated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TauScalar {
    num: UniPoly<GaussianRational>,
    den: UniPoly<GaussianRational>,
}

impl TauScalar {
    pub fn from_gaussian(c: GaussianRational) -> Self {
        TauScalar { num: UniPoly::constant(c), den: UniPoly::one() }
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        TauScalar::from_gaussian(GaussianRational::from_frac(n, d))
    }

    /// The formal symbol τ = 2πi.
    pub fn tau() -> Self {
        TauScalar { num: UniPoly::x(), den: UniPoly::one() }
    }

    /// τᵏ for any integer k.
    pub fn tau_pow(k: i32) -> Self {
        let mono = UniPoly::one().shift(k.unsigned_abs() as usize);
        if k >= 0 {
            TauScalar { num: mono, den: UniPoly::one() }
        } else {
            TauScalar { num: UniPoly::one(), den: mono }
        }
    }

    pub fn i() -> Self {
        TauScalar::from_gaussian(GaussianRational::i())
    }

    pub fn from_parts(num: UniPoly<GaussianRational>, den: UniPoly<GaussianRational>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    fn normalized(num: UniPoly<GaussianRational>, den: UniPoly<GaussianRational>) -> Self {
        if num.is_zero() {
            return TauScalar { num, den: UniPoly::one() };
        }
        if den.is_constant() {
            let inv = den.leading().inv().expect("nonzero denominator");
            return TauScalar { num: num.scale(&inv), den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
        };
        let inv = den.leading().inv().expect("nonzero denominator");
        TauScalar { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numer(&self) -> &UniPoly<GaussianRational> {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly<GaussianRational> {
        &self.den
    }

    /// The value as a Gaussian rational, when τ does not occur.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_tau_free(&self) -> bool {
        self.as_gaussian().is_some()
    }

    /// `Some((c, k))` when the scalar is the monomial `c·τᵏ`.
    pub fn as_tau_monomial(&self) -> Option<(GaussianRational, i32)> {
        let mono = |p: &UniPoly<GaussianRational>| -> Option<(GaussianRational, usize)> {
            let d = p.degree()?;
            if p.coeffs()[..d].iter().all(|c| c.is_zero()) {
                Some((p.leading(), d))
            } else {
                None
            }
        };
        let (c, a) = mono(&self.num)?;
        let (dc, b) = mono(&self.den)?;
        Some((c.div(&dc)?, a as i32 - b as i32))
    }

    /// Largest power of τ dividing the scalar as a Laurent expression, for
    /// pulling a common τ factor out of a rendered sum.
    pub fn tau_valuation(&self) -> Option<i32> {
        if self.num.is_zero() {
            return None;
        }
        let low = |p: &UniPoly<GaussianRational>| p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0) as i32;
        Some(low(&self.num) - low(&self.den))
    }

    pub fn looks_negative(&self) -> bool {
        self.num.leading().looks_negative()
    }

    /// Canonical text: τ prints as `2πi`; the flag reports whether the text
    /// is a sum or quotient and needs parentheses inside a product.
    pub fn render(&self) -> (String, bool) {
        let (n, n_compound) = render_tau_poly(&self.num);
        if self.den.is_one_poly() {
            return (n, n_compound);
        }
        let (d, d_compound) = render_tau_poly(&self.den);
        let n = if n_compound { format!("({n})") } else { n };
        let d = if d_compound || d.contains('*') || d.contains('^') || d.contains('π') { format!("({d})") } else { d };
        (format!("{n}/{d}"), true)
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for UniPoly<GaussianRational> {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.leading().is_one()
    }
}

fn render_tau_poly(p: &UniPoly<GaussianRational>) -> (String, bool) {
    if p.is_zero() {
        return ("0".into(), false);
    }
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.looks_negative();
        let mag = if neg { c.neg() } else { c.clone() };
        let (ctext, compound) = mag.render();
        let tau_text = match k {
            0 => String::new(),
            1 => "2πi".to_string(),
            _ => format!("(2πi)^{k}"),
        };
        let text = if k == 0 {
            ctext
        } else if mag.is_one() {
            tau_text
        } else if compound {
            format!("({ctext})*{tau_text}")
        } else {
            format!("{ctext}*{tau_text}")
        };
        parts.push((neg, text));
    }
    let compound = parts.len() > 1;
    let mut out = String::new();
    for (idx, (neg, text)) in parts.iter().enumerate() {
        if idx == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { "-" } else { "+" });
        }
        out.push_str(text);
    }
    // a lone coefficient like "2-3i" is itself a sum
    let compound = compound || (parts.len() == 1 && p.degree() == Some(0) && p.coeff(0).render().1);
    (out, compound)
}

impl Ord for TauScalar {
    fn cmp(&self, o: &Self) -> Ordering {
        let key = |p: &UniPoly<GaussianRational>| (p.coeffs().len(), p.coeffs().to_vec());
        key(&self.den).cmp(&key(&o.den)).then_with(|| key(&self.num).cmp(&key(&o.num)))
    }
}

impl PartialOrd for TauScalar {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Default for TauScalar {
    fn default() -> Self {
        <TauScalar as Field>::zero()
    }
}

impl Field for TauScalar {
    fn zero() -> Self {
        TauScalar { num: UniPoly::zero(), den: UniPoly::one() }
    }
    fn one() -> Self {
        TauScalar { num: UniPoly::one(), den: UniPoly::one() }
    }
    fn from_i64(n: i64) -> Self {
        TauScalar::from_gaussian(GaussianRational::from(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one_poly() && self.num.is_one_poly()
    }
    fn add(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one_poly() {
                return TauScalar { num: self.num.add(&o.num), den: UniPoly::one() };
            }
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one_poly() && o.den.is_one_poly() {
            return TauScalar { num: self.num.mul(&o.num), den: UniPoly::one() };
        }
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        TauScalar { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }
}

impl From<GaussianRational> for TauScalar {
    fn from(c: GaussianRational) -> Self {
        TauScalar::from_gaussian(c)
    }
}

impl From<i64> for TauScalar {
    fn from(n: i64) -> Self {
        TauScalar::from_i64(n)
    }
}

impl Neg for TauScalar {
    type Output = TauScalar;
    fn neg(self) -> TauScalar {
        Field::neg(&self)
    }
}

impl fmt::Display for TauScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render().0)
    }
}

impl fmt::Debug for TauScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_inverse() {
        let t = TauScalar::tau();
        assert!(Field::mul(&t, &t.inv().unwrap()).is_one());
    }

    #[test]
    fn reduced_fraction() {
        // (τ² − 1)/(τ − 1) = τ + 1
        let t = TauScalar::tau();
        let one = TauScalar::from(1);
        let a = t.mul(&t).sub(&one).div(&t.sub(&one)).unwrap();
        assert_eq!(a, t.add(&one));
    }

    #[test]
    fn rendering() {
        assert_eq!(TauScalar::tau().to_string(), "2πi");
        assert_eq!(TauScalar::tau_pow(-1).to_string(), "1/(2πi)");
        assert_eq!(TauScalar::tau_pow(2).to_string(), "(2πi)^2");
        let x = TauScalar::from_frac(-3, 2).mul(&TauScalar::tau());
        assert_eq!(x.to_string(), "-3/2*2πi");
        assert_eq!(x.as_tau_monomial().unwrap().1, 1);
        assert_eq!(TauScalar::tau_pow(-2).tau_valuation(), Some(-2));
    }
}
