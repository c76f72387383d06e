//! Arithmetic in K[z]/(h) for K a field of rational functions, and
//! resultants of polynomials in several variables.

use super::field::Field;
use super::poly::{MultiPoly, Symbol};
use super::ratfun::RationalFunction;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Views `p` as a polynomial in `z` with rational-function coefficients.
pub fn as_univariate(p: &MultiPoly, z: &Symbol) -> UniPoly<RationalFunction> {
    UniPoly::new(p.coefficients_in(z).into_iter().map(RationalFunction::from_poly).collect())
}

pub fn from_univariate(z: &Symbol, p: &UniPoly<RationalFunction>) -> RationalFunction {
    let zr = RationalFunction::var(z);
    let mut acc = RationalFunction::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&zr).add(c);
    }
    acc
}

/// Remainder of `a` modulo the monic `h`.
pub fn reduce_mod_monic(a: &UniPoly<RationalFunction>, h: &UniPoly<RationalFunction>) -> Result<UniPoly<RationalFunction>> {
    if !h.leading().is_one() {
        return Err(Error::NotMonic(format!("{:?}", h.leading())));
    }
    a.rem(h).ok_or(Error::DivisionByZero)
}

/// Trace of multiplication by `a` on K[z]/(h), where `a` is a rational
/// function whose denominator must be a unit modulo `h`.
pub fn trace_mod(a: &RationalFunction, h: &MultiPoly, z: &Symbol) -> Result<RationalFunction> {
    let hu = as_univariate(h, z);
    let n = match hu.degree() {
        Some(0) | None => return Err(Error::ConstantMap),
        Some(n) => n,
    };
    let hm = hu.monic();
    let num = as_univariate(a.numer(), z);
    let den = as_univariate(a.denom(), z);
    let den_inv = den.rem(&hm).ok_or(Error::DivisionByZero)?.inv_mod(&hm).ok_or(Error::NonInvertibleDenominator)?;
    let r = num.mul(&den_inv).rem(&hm).ok_or(Error::DivisionByZero)?;
    let mut total = RationalFunction::zero();
    let mut basis = UniPoly::one();
    for i in 0..n {
        let prod = r.mul(&basis).rem(&hm).ok_or(Error::DivisionByZero)?;
        total = total.add(&prod.coeff(i));
        basis = basis.shift(1).rem(&hm).ok_or(Error::DivisionByZero)?;
    }
    Ok(total)
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Resultant of `a` and `b` with respect to `v`, via the Sylvester matrix.
pub fn resultant(a: &MultiPoly, b: &MultiPoly, v: &Symbol) -> MultiPoly {
    let ca = a.coefficients_in(v);
    let cb = b.coefficients_in(v);
    if ca.is_empty() || cb.is_empty() {
        return MultiPoly::zero();
    }
    let m = ca.len() - 1;
    let n = cb.len() - 1;
    if m == 0 {
        return ca[0].pow(n as u32);
    }
    if n == 0 {
        return cb[0].pow(m as u32);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![MultiPoly::zero(); size];
        for (k, c) in ca.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![MultiPoly::zero(); size];
        for (k, c) in cb.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}
