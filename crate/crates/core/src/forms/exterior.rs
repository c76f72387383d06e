use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::{gcd, linalg, Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::error::{Error, Result};

/// A p-form in fixed local coordinates: strictly increasing index tuples
/// mapped to rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExteriorForm {
    coords: Vec<Symbol>,
    degree: usize,
    terms: BTreeMap<Vec<usize>, RationalFunction>,
}

/// Sorts an index tuple, returning the permutation sign, or `None` when an
/// index repeats.
fn sort_sign(idx: &mut [usize]) -> Option<bool> {
    let mut neg = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(neg)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl ExteriorForm {
    pub fn zero(coords: Vec<Symbol>, degree: usize) -> Self {
        ExteriorForm { coords, degree, terms: BTreeMap::new() }
    }

    pub fn function(coords: Vec<Symbol>, f: RationalFunction) -> Self {
        let mut out = ExteriorForm::zero(coords, 0);
        out.add_term(Vec::new(), f);
        out
    }

    /// `c · dx₁∧…∧dxₙ` over all coordinates.
    pub fn top(coords: Vec<Symbol>, c: RationalFunction) -> Self {
        let n = coords.len();
        let mut out = ExteriorForm::zero(coords, n);
        out.add_term((0..n).collect(), c);
        out
    }

    /// `df = Σ ∂f/∂xᵢ dxᵢ`.
    pub fn differential(coords: Vec<Symbol>, f: &RationalFunction) -> Self {
        let mut out = ExteriorForm::zero(coords.clone(), 1);
        for (i, x) in coords.iter().enumerate() {
            out.add_term(vec![i], f.derivative(x));
        }
        out
    }

    /// Builds a form from terms written with coordinate names in any order.
    pub fn from_terms(coords: Vec<Symbol>, degree: usize, terms: &[(RationalFunction, Vec<Symbol>)]) -> Result<Self> {
        let mut out = ExteriorForm::zero(coords, degree);
        for (c, wedge) in terms {
            if wedge.len() != degree {
                return Err(Error::DimensionMismatch(format!("term of degree {} in a {degree}-form", wedge.len())));
            }
            let idx = wedge
                .iter()
                .map(|s| out.coords.iter().position(|x| x == s).ok_or_else(|| Error::ChartMismatch))
                .collect::<Result<Vec<_>>>()?;
            out.add_term(idx, c.clone());
        }
        Ok(out)
    }

    pub fn coords(&self) -> &[Symbol] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, RationalFunction> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·dx_idx`, folding the sort sign into the coefficient.
    pub fn add_term(&mut self, mut idx: Vec<usize>, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let Some(neg) = sort_sign(&mut idx) else { return };
        let c = if neg { c.neg() } else { c };
        let sum = match self.terms.remove(&idx) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(idx, sum);
        }
    }

    /// Coefficient of the full wedge of all coordinates.
    pub fn top_coefficient(&self) -> RationalFunction {
        let full: Vec<usize> = (0..self.coords.len()).collect();
        self.terms.get(&full).cloned().unwrap_or_default()
    }

    /// The value of a 0-form.
    pub fn as_function(&self) -> RationalFunction {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.coords != o.coords {
            return Err(Error::ChartMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.degree != o.degree {
            return Err(Error::DimensionMismatch(format!("adding a {}-form to a {}-form", o.degree, self.degree)));
        }
        let mut out = self.clone();
        for (i, c) in &o.terms {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn scale_scalar(&self, c: &TauScalar) -> Self {
        self.scale(&RationalFunction::constant(c.clone()))
    }

    fn map_coeffs(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let mut out = ExteriorForm::zero(self.coords.clone(), self.degree);
        for (i, c) in &self.terms {
            out.add_term(i.clone(), f(c));
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = ExteriorForm::zero(self.coords.clone(), self.degree + o.degree);
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                let mut idx = i.clone();
                idx.extend(j.iter().copied());
                out.add_term(idx, a.mul(b));
            }
        }
        Ok(out)
    }

    /// Pullback along `old coordinate = φ(new coordinates)`. Old coordinates
    /// missing from `sub` must also be new coordinates and map to themselves.
    pub fn pullback(&self, sub: &HashMap<Symbol, RationalFunction>, new_coords: &[Symbol]) -> Result<Self> {
        let phi: Vec<RationalFunction> = self
            .coords
            .iter()
            .map(|x| match sub.get(x) {
                Some(r) => Ok(r.clone()),
                None if new_coords.contains(x) => Ok(RationalFunction::var(x)),
                None => Err(Error::SingularSubstitution(format!("no value for {x}"))),
            })
            .collect::<Result<_>>()?;
        let full: HashMap<Symbol, RationalFunction> = self.coords.iter().cloned().zip(phi.iter().cloned()).collect();
        let jac: Vec<Vec<RationalFunction>> = phi.iter().map(|f| new_coords.iter().map(|y| f.derivative(y)).collect()).collect();
        let mut out = ExteriorForm::zero(new_coords.to_vec(), self.degree);
        if self.degree > new_coords.len() {
            return Ok(out);
        }
        let targets = combinations(new_coords.len(), self.degree);
        for (i, c) in &self.terms {
            let cs = c
                .substitute(&full)
                .ok_or_else(|| Error::SingularSubstitution(format!("denominator of {c} vanishes")))?;
            for j in &targets {
                let minor: Vec<Vec<RationalFunction>> = i.iter().map(|&r| j.iter().map(|&k| jac[r][k].clone()).collect()).collect();
                let d = if minor.is_empty() { RationalFunction::one() } else { linalg::det(&minor) };
                out.add_term(j.clone(), cs.mul(&d));
            }
        }
        Ok(out)
    }

    /// Restriction to `{h = 0}`: `dv` is eliminated by implicit
    /// differentiation and coefficients reduced modulo `h` in `v`.
    pub fn restrict(&self, h: &MultiPoly, v: &Symbol) -> Result<Self> {
        for c in self.terms.values() {
            if !gcd(c.denom(), h).is_constant() {
                return Err(Error::PoleOnRestrictionLocus);
            }
        }
        let cs = h.coefficients_in(v);
        let hv = h.derivative(v);
        let remaining: Vec<Symbol> = self.coords.iter().filter(|x| *x != v).cloned().collect();
        let mut sub: HashMap<Symbol, RationalFunction> = HashMap::new();
        let linear = cs.len() == 2;
        if linear {
            let val = RationalFunction::new(cs[0].neg(), cs[1].clone()).ok_or(Error::DivisionByZero)?;
            sub.insert(v.clone(), val);
            return self.pullback(&sub, &remaining);
        }
        if !cs.last().map(MultiPoly::is_constant).unwrap_or(false) {
            return Err(Error::NotMonic(h.to_string()));
        }
        // v stays as a function on V; its differential is −Σ (h_x / h_v) dx
        let mut out = ExteriorForm::zero(remaining.clone(), self.degree);
        let vpos = self.coords.iter().position(|x| x == v);
        let dv: Vec<RationalFunction> = remaining
            .iter()
            .map(|x| RationalFunction::new(h.derivative(x).neg(), hv.clone()).ok_or(Error::DivisionByZero))
            .collect::<Result<_>>()?;
        let reduce = |r: &RationalFunction| -> Result<RationalFunction> {
            let n = reduce_in(r.numer(), h, v);
            let d = reduce_in(r.denom(), h, v);
            RationalFunction::new(n, d).ok_or(Error::PoleOnRestrictionLocus)
        };
        let new_index = |k: usize| remaining.iter().position(|x| *x == self.coords[k]).unwrap();
        for (idx, c) in &self.terms {
            let c = reduce(c)?;
            match vpos.and_then(|p| idx.iter().position(|&k| k == p)) {
                None => out.add_term(idx.iter().map(|&k| new_index(k)).collect(), c),
                Some(slot) => {
                    for (j, dvj) in dv.iter().enumerate() {
                        let mut ni: Vec<usize> = Vec::with_capacity(idx.len());
                        for (s, &k) in idx.iter().enumerate() {
                            ni.push(if s == slot { j } else { new_index(k) });
                        }
                        out.add_term(ni, c.mul(&reduce(dvj)?));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Value on a frame of tangent vectors at a point.
    pub fn evaluate(&self, at: &HashMap<Symbol, TauScalar>, frame: &[Vec<TauScalar>]) -> Option<TauScalar> {
        if frame.len() != self.degree {
            return None;
        }
        let mut acc = TauScalar::zero();
        for (idx, c) in &self.terms {
            let n = c.numer().evaluate(at).constant_value()?;
            let d = c.denom().evaluate(at).constant_value()?;
            let val = n.div(&d)?;
            let m: Vec<Vec<TauScalar>> = idx.iter().map(|&r| frame.iter().map(|v| v[r].clone()).collect()).collect();
            let det = if m.is_empty() { TauScalar::one() } else { linalg::det(&m) };
            acc = acc.add(&val.mul(&det));
        }
        Some(acc)
    }

    /// Renames coordinates without changing the form.
    pub fn rename(&self, map: &HashMap<Symbol, Symbol>) -> Self {
        let coords: Vec<Symbol> = self.coords.iter().map(|s| map.get(s).cloned().unwrap_or_else(|| s.clone())).collect();
        let mut out = ExteriorForm::zero(coords, self.degree);
        for (i, c) in &self.terms {
            let n = c.numer().rename(map);
            let d = c.denom().rename(map);
            out.add_term(i.clone(), RationalFunction::new(n, d).expect("nonzero"));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            let wedge: Vec<String> = idx.iter().map(|&i| format!("d{}", self.coords[i])).collect();
            let wedge = wedge.join("^");
            let ctext = c.render();
            let (neg, body) = match ctext.strip_prefix('-') {
                Some(rest) if !c.numer().is_sum() => (true, rest.to_string()),
                _ => (false, ctext),
            };
            let body = if wedge.is_empty() {
                body
            } else if body == "1" {
                wedge
            } else if c.as_poly().is_some() && c.numer().is_sum() {
                format!("({body})*{wedge}")
            } else {
                format!("{body}*{wedge}")
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

/// Remainder of `p` modulo `h` (monic up to a constant in `v`).
fn reduce_in(p: &MultiPoly, h: &MultiPoly, v: &Symbol) -> MultiPoly {
    let d = h.degree_in(v);
    let lc = h.lc_in(v).constant_value().expect("monic");
    let inv = lc.inv().expect("nonzero");
    let mut r = p.clone();
    while r.degree_in(v) >= d && r.contains_var(v) {
        let k = r.degree_in(v);
        let top = r.lc_in(v);
        let shift = MultiPoly::var(v).pow(k - d);
        r = r.sub(&top.mul(&shift).mul(h).scale(&inv));
    }
    r
}

impl fmt::Display for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Symbol {
        Symbol::new(x)
    }

    fn xy() -> Vec<Symbol> {
        vec![s("x"), s("y")]
    }

    fn rf(n: MultiPoly, d: MultiPoly) -> RationalFunction {
        RationalFunction::new(n, d).unwrap()
    }

    #[test]
    fn wedge_antisymmetry() {
        let dx = ExteriorForm::from_terms(xy(), 1, &[(RationalFunction::one(), vec![s("x")])]).unwrap();
        let dy = ExteriorForm::from_terms(xy(), 1, &[(RationalFunction::one(), vec![s("y")])]).unwrap();
        assert!(dx.wedge(&dx).unwrap().is_zero());
        assert_eq!(dy.wedge(&dx).unwrap(), dx.wedge(&dy).unwrap().neg());
        let x = MultiPoly::var_str("x");
        let y = MultiPoly::var_str("y");
        let a = dx.scale(&rf(MultiPoly::one(), x.clone()));
        let b = dy.scale(&rf(MultiPoly::one(), y.clone()));
        let w = a.wedge(&b).unwrap();
        assert_eq!(w.top_coefficient(), rf(MultiPoly::one(), x.mul(&y)));
        assert_eq!(w.render(), "1/(x*y)*dx^dy");
    }

    #[test]
    fn pullbacks() {
        let z = vec![s("z")];
        let w = vec![s("w")];
        let dz = ExteriorForm::top(z.clone(), RationalFunction::one());
        let mut sub = HashMap::new();
        sub.insert(s("z"), RationalFunction::var(&s("w")).inv().unwrap());
        let p = dz.pullback(&sub, &w).unwrap();
        assert_eq!(p.render(), "-1/w^2*dw");
        let dy_y = ExteriorForm::top(vec![s("y")], RationalFunction::var(&s("y")).inv().unwrap());
        let mut sub = HashMap::new();
        let t = RationalFunction::var(&s("t"));
        sub.insert(s("y"), t.mul(&t));
        assert_eq!(dy_y.pullback(&sub, &[s("t")]).unwrap().render(), "2/t*dt");
        let top = ExteriorForm::top(xy(), RationalFunction::one());
        let mut sub = HashMap::new();
        sub.insert(s("x"), t.clone());
        sub.insert(s("y"), t.mul(&t));
        assert!(top.pullback(&sub, &[s("t")]).unwrap().is_zero());
    }

    #[test]
    fn restriction() {
        let x = MultiPoly::var_str("x");
        let y = MultiPoly::var_str("y");
        let xdy = ExteriorForm::from_terms(xy(), 1, &[(RationalFunction::from_poly(x.clone()), vec![s("y")])]).unwrap();
        let r = xdy.restrict(&x.sub(&y), &s("x")).unwrap();
        assert_eq!(r.render(), "y*dy");
        let dyy = ExteriorForm::from_terms(xy(), 1, &[(rf(MultiPoly::one(), y.clone()), vec![s("y")])]).unwrap();
        assert_eq!(dyy.restrict(&x, &s("x")).unwrap().render(), "1/y*dy");
        let dxx = ExteriorForm::from_terms(xy(), 1, &[(rf(MultiPoly::one(), x.clone()), vec![s("x")])]).unwrap();
        assert!(matches!(dxx.restrict(&x, &s("x")), Err(Error::PoleOnRestrictionLocus)));
    }
}
