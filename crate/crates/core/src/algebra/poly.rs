//! Sparse multivariate polynomials with ℚ(i)(τ) coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::tau::TauScalar;
use super::unipoly::UniPoly;

/// A variable name. Ordering is by name, which fixes the lexicographic
/// tie-break of the monomial order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(s: &str) -> Self {
        Symbol(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// Exponent vector, sparse and sorted by variable, without zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: &Symbol, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v.clone(), e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Symbol, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(pairs.len());
        for (s, e) in pairs {
            match out.last_mut() {
                Some((ls, le)) if *ls == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Symbol) -> u32 {
        self.0.iter().find(|(s, _)| s == v).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            match self.0[i].0.cmp(&o.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(o.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + o.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Monomial(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = Vec::new();
        let mut j = 0;
        for (s, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 < *s {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == *s {
                let oe = o.0[j].1;
                j += 1;
                match e.cmp(&oe) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((s.clone(), e - oe)),
                }
            } else {
                out.push((s.clone(), *e));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes variable `v`, returning the remaining monomial and the exponent.
    pub fn split(&self, v: &Symbol) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(s, x)| {
                if s == v {
                    e = *x;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (Monomial(rest), e)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// smallest variable where the two differ.
    fn cmp(&self, o: &Self) -> Ordering {
        let d = self.degree().cmp(&o.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), o.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((a, ea)), Some((b, eb))) => match a.cmp(b) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_monomial(self))
    }
}

fn render_monomial(m: &Monomial) -> String {
    m.0.iter()
        .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Sparse polynomial: monomial → nonzero coefficient, in graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, TauScalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(TauScalar::one())
    }

    pub fn constant(c: TauScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(TauScalar::from(n))
    }

    pub fn var(v: &Symbol) -> Self {
        MultiPoly::monomial(Monomial::var(v, 1), TauScalar::one())
    }

    pub fn var_str(v: &str) -> Self {
        MultiPoly::var(&Symbol::new(v))
    }

    pub fn monomial(m: Monomial, c: TauScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, TauScalar)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: TauScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &TauScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    pub fn constant_value(&self) -> Option<TauScalar> {
        if self.is_zero() {
            Some(TauScalar::zero())
        } else if self.is_constant() {
            self.terms.get(&Monomial::one()).cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(s, _)| s.clone())).collect()
    }

    pub fn contains_var(&self, v: &Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Total degree in a subset of the variables.
    pub fn degree_in_set(&self, vars: &[Symbol]) -> u32 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|v| m.exponent(v)).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &TauScalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> TauScalar {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(TauScalar::zero)
    }

    /// Scaled so the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coefficient().inv() {
            Some(inv) if !inv.is_one() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &TauScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &TauScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(a, x)| (a.mul(m), x.mul(c))).collect() }
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        if self.is_zero() || o.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        let mut acc: BTreeMap<Monomial, TauScalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { terms: acc }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: &Symbol) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split(v);
            if e == 0 {
                continue;
            }
            let mono = rest.mul(&Monomial::var(v, e - 1));
            out.add_term(mono, c.mul(&TauScalar::from(e as i64)));
        }
        out
    }

    /// Coefficients as a polynomial in `v`: entry `k` multiplies `vᵏ`.
    pub fn coefficients_in(&self, v: &Symbol) -> Vec<MultiPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let (rest, e) = m.split(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(v: &Symbol, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let mono = Monomial::var(v, k as u32);
            for (m, x) in &c.terms {
                out.add_term(m.mul(&mono), x.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to `v`.
    pub fn lc_in(&self, v: &Symbol) -> MultiPoly {
        self.coefficients_in(v).pop().unwrap_or_default()
    }

    /// Simultaneous polynomial substitution.
    pub fn substitute(&self, map: &HashMap<Symbol, MultiPoly>) -> MultiPoly {
        let mut cache: HashMap<(Symbol, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            let mut kept = Vec::new();
            for (s, e) in &m.0 {
                match map.get(s) {
                    Some(p) => {
                        let pw = cache.entry((s.clone(), *e)).or_insert_with(|| p.pow(*e)).clone();
                        term = term.mul(&pw);
                    }
                    None => kept.push((s.clone(), *e)),
                }
            }
            let term = term.mul_monomial(&Monomial(kept), &TauScalar::one());
            out = out.add(&term);
        }
        out
    }

    pub fn substitute_one(&self, v: &Symbol, p: &MultiPoly) -> MultiPoly {
        let mut map = HashMap::new();
        map.insert(v.clone(), p.clone());
        self.substitute(&map)
    }

    /// Evaluates at constants for the listed variables.
    pub fn evaluate(&self, values: &HashMap<Symbol, TauScalar>) -> MultiPoly {
        let map = values.iter().map(|(k, v)| (k.clone(), MultiPoly::constant(v.clone()))).collect();
        self.substitute(&map)
    }

    /// Renames variables (a substitution by variables).
    pub fn rename(&self, map: &HashMap<Symbol, Symbol>) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let pairs = m.0.iter().map(|(s, e)| (map.get(s).cloned().unwrap_or_else(|| s.clone()), *e)).collect();
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()?));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(&dm)?;
            let qc = rc.mul(&dc_inv);
            rem = rem.sub(&d.mul_monomial(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `d` with respect to `v`.
    pub fn pseudo_rem(&self, d: &MultiPoly, v: &Symbol) -> MultiPoly {
        let dd = d.degree_in(v);
        let lc = d.lc_in(v);
        let mut r = self.clone();
        let mut steps = 0u32;
        let total = (self.degree_in(v) + 1).saturating_sub(dd);
        while !r.is_zero() && r.degree_in(v) >= dd {
            let dr = r.degree_in(v);
            let lr = r.lc_in(v);
            let shift = MultiPoly::monomial(Monomial::var(v, dr - dd), TauScalar::one());
            r = r.mul(&lc).sub(&lr.mul(&shift).mul(d));
            steps += 1;
        }
        if total > steps {
            r = r.mul(&lc.pow(total - steps));
        }
        r
    }

    /// Gcd of the coefficients with respect to `v`.
    pub fn content_in(&self, v: &Symbol) -> MultiPoly {
        let mut g = MultiPoly::zero();
        for c in self.coefficients_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_constant() {
                return MultiPoly::one();
            }
        }
        g
    }

    pub fn primitive_part_in(&self, v: &Symbol) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    /// Converts to a dense univariate polynomial in `v`; `None` if another
    /// variable occurs.
    pub fn to_univariate(&self, v: &Symbol) -> Option<UniPoly<TauScalar>> {
        let coeffs = self.coefficients_in(v);
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            out.push(c.constant_value()?);
        }
        Some(UniPoly::new(out))
    }

    pub fn from_univariate(v: &Symbol, p: &UniPoly<TauScalar>) -> MultiPoly {
        MultiPoly::from_terms(
            p.coeffs().iter().enumerate().map(|(k, c)| (Monomial::var(v, k as u32), c.clone())),
        )
    }

    /// Canonical text with terms in descending graded-lex order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.looks_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            let (ctext, compound) = mag.render();
            let mono = render_monomial(m);
            let body = if m.is_one() {
                if compound { format!("({ctext})") } else { ctext }
            } else if mag.is_one() {
                mono
            } else if compound {
                format!("({ctext})*{mono}")
            } else {
                format!("{ctext}*{mono}")
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            out.push_str(&body);
        }
        out
    }

    /// True when rendering produces more than one term.
    pub fn is_sum(&self) -> bool {
        self.terms.len() > 1 || self.terms.values().any(|c| c.render().1)
    }
}

/// Monic greatest common divisor by recursive primitive remainder sequences.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a.monic();
    }
    let va = a.variables();
    let vb = b.variables();
    let v = match va.union(&vb).next() {
        Some(v) => v.clone(),
        None => return MultiPoly::one(),
    };
    if !va.contains(&v) {
        return gcd(a, &b.content_in(&v));
    }
    if !vb.contains(&v) {
        return gcd(&a.content_in(&v), b);
    }
    let ca = a.content_in(&v);
    let cb = b.content_in(&v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let (mut f, mut g) = if pa.degree_in(&v) >= pb.degree_in(&v) { (pa, pb) } else { (pb, pa) };
    while !g.is_zero() {
        if g.degree_in(&v) == 0 {
            return c.monic();
        }
        let r = f.pseudo_rem(&g, &v);
        f = g;
        g = r.primitive_part_in(&v).monic();
    }
    c.mul(&f.primitive_part_in(&v)).monic()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var_str("x")
    }
    fn y() -> MultiPoly {
        MultiPoly::var_str("y")
    }

    #[test]
    fn graded_lex_order() {
        let p = x().pow(2).add(&y().pow(3)).add(&x().mul(&y()));
        assert_eq!(p.render(), "y^3+x^2+x*y");
        assert_eq!(p.leading_term().unwrap().0, &Monomial::var(&Symbol::new("y"), 3));
    }

    #[test]
    fn partial_derivative_power_rule() {
        let p = x().pow(2).mul(&y());
        assert_eq!(p.derivative(&Symbol::new("x")), x().mul(&y()).scale(&TauScalar::from(2)));
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y());
        let b = x().sub(&y());
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(x().div_exact(&y()).is_none());
    }

    #[test]
    fn multivariate_gcd() {
        let a = x().add(&y()).mul(&x().sub(&MultiPoly::int(1)));
        let b = x().add(&y()).mul(&y().add(&MultiPoly::int(2)));
        assert_eq!(gcd(&a, &b), x().add(&y()));
        assert!(gcd(&x(), &y()).is_one());
        let c = x().mul(&y()).scale(&TauScalar::tau());
        assert_eq!(gcd(&c, &x().scale(&TauScalar::from(3))), x());
    }

    #[test]
    fn coefficients_round_trip() {
        let p = x().pow(2).mul(&y()).add(&x()).add(&MultiPoly::int(5));
        let v = Symbol::new("x");
        let cs = p.coefficients_in(&v);
        assert_eq!(cs.len(), 3);
        assert_eq!(MultiPoly::from_coefficients_in(&v, &cs), p);
    }
}
