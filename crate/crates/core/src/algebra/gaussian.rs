//! Exact Gaussian rationals, the field ℚ(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Field;

/// `re + im·i` with both parts reduced rationals.
///
/// `BigRational` keeps its fractions reduced with a positive denominator, so
/// the derived equality is structural equality of canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        GaussianRational::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact square root in ℚ(i), if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // (c + di)² = a + bi  ⇒  c² = (a + n)/2, d² = (n − a)/2 with n = |a + bi|.
        let n = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(2.into());
        let c2 = (&self.re + &n) / &two;
        let d2 = (&n - &self.re) / &two;
        let c = rational_sqrt(&c2)?;
        let mut d = rational_sqrt(&d2)?;
        // choose the sign of d so that 2cd = b
        if (&c * &d * &two) != self.im {
            d = -d;
        }
        let root = GaussianRational::new(c, d);
        if root.clone() * root.clone() == *self {
            Some(root)
        } else {
            None
        }
    }

    /// True when the leading nonzero part is negative; used only to pull a
    /// sign out of a term when rendering.
    pub fn looks_negative(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }

    /// Rendering plus a flag telling whether the text is a sum that needs
    /// parentheses inside a product.
    pub fn render(&self) -> (String, bool) {
        let re0 = self.re.is_zero();
        let im0 = self.im.is_zero();
        if im0 {
            return (fmt_rat(&self.re), false);
        }
        let im_text = if self.im == BigRational::one() {
            "i".to_string()
        } else if self.im == -BigRational::one() {
            "-i".to_string()
        } else if self.im.is_integer() {
            format!("{}i", self.im.numer())
        } else {
            format!("{}*i", fmt_rat(&self.im))
        };
        if re0 {
            return (im_text, false);
        }
        let sep = if self.im.is_negative() { "" } else { "+" };
        (format!("{}{}{}", fmt_rat(&self.re), sep, im_text), true)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = int_sqrt(r.numer())?;
    let d = int_sqrt(r.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render().0)
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_ints(n, 0)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: Self) -> Self {
        GaussianRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: Self) -> Self {
        GaussianRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: Self) -> Self {
        Field::mul(&self, &o)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }
    fn one() -> Self {
        GaussianRational::from_ints(1, 0)
    }
    fn from_i64(n: i64) -> Self {
        GaussianRational::from_ints(n, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }
    fn add(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussianRational::real(self.re.recip()));
        }
        let n = self.norm();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_gaussian_integer() {
        let a = GaussianRational::from_ints(1, 1);
        let b = GaussianRational::from_ints(1, -1);
        assert_eq!(a * b, GaussianRational::from_ints(2, 0));
    }

    #[test]
    fn inverse_round_trip() {
        let a = GaussianRational::new(BigRational::new(3.into(), 7.into()), BigRational::new((-2).into(), 5.into()));
        assert!(Field::mul(&a, &a.inv().unwrap()).is_one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn square_roots() {
        let m1 = GaussianRational::from_ints(-1, 0);
        let r = m1.sqrt().unwrap();
        assert_eq!(Field::mul(&r, &r), m1);
        let two_i = GaussianRational::from_ints(0, 2);
        assert_eq!(two_i.sqrt().unwrap(), GaussianRational::from_ints(1, 1));
        assert!(GaussianRational::from_ints(2, 0).sqrt().is_none());
        let q = GaussianRational::from_frac(9, 4);
        assert_eq!(q.sqrt().unwrap(), GaussianRational::from_frac(3, 2));
    }

    #[test]
    fn rendering() {
        assert_eq!(GaussianRational::from_ints(0, 1).to_string(), "i");
        assert_eq!(GaussianRational::from_ints(0, -1).to_string(), "-i");
        assert_eq!(GaussianRational::from_ints(2, -3).to_string(), "2-3i");
        assert_eq!(GaussianRational::from_frac(-1, 2).to_string(), "-1/2");
    }
}
