//! Rational functions in several variables over ℚ(i)(τ).

use std::collections::HashMap;
use std::fmt;

use super::field::Field;
use super::poly::{gcd, MultiPoly, Symbol};
use super::tau::TauScalar;

/// `num / den` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction { num: p, den: MultiPoly::one() }
    }

    pub fn constant(c: TauScalar) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: &Symbol) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: MultiPoly::one() };
        }
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero denominator");
            return RationalFunction { num: num.scale(&inv), den: MultiPoly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading_coefficient().inv().expect("nonzero denominator");
        RationalFunction { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<TauScalar> {
        self.as_poly().and_then(MultiPoly::constant_value)
    }

    pub fn derivative(&self, v: &Symbol) -> RationalFunction {
        let n = self.num.derivative(v).mul(&self.den).sub(&self.num.mul(&self.den.derivative(v)));
        Self::normalized(n, self.den.mul(&self.den))
    }

    /// Substitutes rational functions for variables. `None` when the
    /// denominator vanishes identically after substitution.
    pub fn substitute(&self, map: &HashMap<Symbol, RationalFunction>) -> Option<RationalFunction> {
        let n = substitute_poly(&self.num, map);
        let d = substitute_poly(&self.den, map);
        n.div(&d)
    }

    pub fn contains_var(&self, v: &Symbol) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn render(&self) -> String {
        if self.den.is_one() {
            return self.num.render();
        }
        let n = if self.num.is_sum() && !self.num.is_constant() { format!("({})", self.num) } else { self.num.render() };
        let d = if self.den.is_sum() || self.den.num_terms() > 1 || self.den.render().contains('*') {
            format!("({})", self.den)
        } else {
            self.den.render()
        };
        format!("{n}/{d}")
    }
}

/// Evaluates a polynomial at rational functions, one variable at a time.
pub fn substitute_poly(p: &MultiPoly, map: &HashMap<Symbol, RationalFunction>) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    let mut powers: HashMap<(Symbol, u32), RationalFunction> = HashMap::new();
    for (m, c) in p.terms() {
        let mut term = RationalFunction::constant(c.clone());
        let mut kept = Vec::new();
        for (s, e) in m.pairs() {
            match map.get(s) {
                Some(r) => {
                    let pw = powers.entry((s.clone(), *e)).or_insert_with(|| r.pow(*e)).clone();
                    term = term.mul(&pw);
                }
                None => kept.push((s.clone(), *e)),
            }
        }
        let mono = MultiPoly::monomial(super::poly::Monomial::from_pairs(kept), TauScalar::one());
        acc = acc.add(&term.mul(&RationalFunction::from_poly(mono)));
    }
    acc
}

impl Field for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::from_poly(MultiPoly::int(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
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
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let x = MultiPoly::var_str("x");
        let y = MultiPoly::var_str("y");
        let r = RationalFunction::new(x.mul(&y), x.mul(&x).scale(&TauScalar::from(2))).unwrap();
        assert_eq!(r.numer(), &y.scale(&TauScalar::from_frac(1, 2)));
        assert_eq!(r.denom(), &x);
    }

    #[test]
    fn quotient_rule() {
        let x = Symbol::new("x");
        let r = RationalFunction::var(&x).inv().unwrap();
        let d = r.derivative(&x);
        let expect = RationalFunction::new(MultiPoly::int(-1), MultiPoly::var(&x).pow(2)).unwrap();
        assert_eq!(d, expect);
    }
}
