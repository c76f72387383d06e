use std::collections::HashMap;
use std::fmt;

use crate::algebra::{Field, Monomial, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::error::{Error, Result};

/// One projective factor Pⁿ with the names of its chart-0 coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Factor {
    pub dim: usize,
    pub names: Vec<Symbol>,
}

/// A product of projective spaces. The catalog uses Pⁿ (one factor) and
/// (P¹)ᵐ; domains of chains may use any product with custom names.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AmbientSpace {
    factors: Vec<Factor>,
}

/// One affine chart: for each factor, the homogeneous index set to one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Chart {
    pub choice: Vec<usize>,
}

impl Chart {
    pub fn origin(space: &AmbientSpace) -> Chart {
        Chart { choice: vec![0; space.factors.len()] }
    }

    pub fn is_origin(&self) -> bool {
        self.choice.iter().all(|&c| c == 0)
    }
}

fn syms(names: &[&str]) -> Vec<Symbol> {
    names.iter().map(|s| Symbol::new(s)).collect()
}

/// Name of the chart-∞ coordinate of a P¹ whose affine coordinate is `b`.
pub fn inverse_name(b: &Symbol) -> Symbol {
    match b.as_str() {
        "z" => Symbol::new("w"),
        "x" => Symbol::new("u"),
        "y" => Symbol::new("v"),
        "t" => Symbol::new("s"),
        other => Symbol::new(&format!("{other}_inv")),
    }
}

/// Homogeneous coordinate `j` of factor `f`.
pub fn hom_var(f: usize, j: usize) -> Symbol {
    Symbol::new(&format!("#{f}.{j}"))
}

impl AmbientSpace {
    pub fn new(factors: Vec<Factor>) -> Self {
        AmbientSpace { factors }
    }

    /// The one-point space P⁰ (no factors).
    pub fn point() -> Self {
        AmbientSpace { factors: Vec::new() }
    }

    pub fn projective(n: usize) -> Result<Self> {
        let names = match n {
            1 => syms(&["z"]),
            2 => syms(&["x", "y"]),
            3 => syms(&["x", "y", "z"]),
            _ => return Err(Error::UnknownSpace(format!("P{n}"))),
        };
        Ok(AmbientSpace { factors: vec![Factor { dim: n, names }] })
    }

    pub fn product_of_lines(m: usize) -> Result<Self> {
        let names: &[&str] = match m {
            1 => &["z"],
            2 => &["x", "y"],
            3 => &["x", "y", "z"],
            _ => return Err(Error::UnknownSpace(format!("(P1)^{m}"))),
        };
        Ok(AmbientSpace { factors: names.iter().map(|n| Factor { dim: 1, names: vec![Symbol::new(n)] }).collect() })
    }

    pub fn lines_named(names: &[Symbol]) -> Self {
        AmbientSpace { factors: names.iter().map(|n| Factor { dim: 1, names: vec![n.clone()] }).collect() }
    }

    pub fn projective_named(names: Vec<Symbol>) -> Self {
        if names.is_empty() {
            return AmbientSpace::point();
        }
        AmbientSpace { factors: vec![Factor { dim: names.len(), names }] }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "P1" => Self::projective(1),
            "P2" => Self::projective(2),
            "P3" => Self::projective(3),
            "P1xP1" => Self::product_of_lines(2),
            "P1xP1xP1" => Self::product_of_lines(3),
            other => Err(Error::UnknownSpace(other.to_string())),
        }
    }

    /// Catalog name when the shape is a catalog shape.
    pub fn kind_name(&self) -> String {
        if self.factors.is_empty() {
            return "P0".into();
        }
        if self.factors.len() == 1 {
            return format!("P{}", self.factors[0].dim);
        }
        self.factors.iter().map(|f| format!("P{}", f.dim)).collect::<Vec<_>>().join("x")
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).sum()
    }

    pub fn is_lines(&self) -> bool {
        self.factors.iter().all(|f| f.dim == 1)
    }

    pub fn hom_vars(&self, f: usize) -> Vec<Symbol> {
        (0..=self.factors[f].dim).map(|j| hom_var(f, j)).collect()
    }

    pub fn all_hom_vars(&self) -> Vec<Symbol> {
        (0..self.factors.len()).flat_map(|f| self.hom_vars(f)).collect()
    }

    pub fn charts(&self) -> Vec<Chart> {
        let mut out = vec![Chart { choice: Vec::new() }];
        for f in &self.factors {
            let mut next = Vec::new();
            for ch in &out {
                for c in 0..=f.dim {
                    let mut choice = ch.choice.clone();
                    choice.push(c);
                    next.push(Chart { choice });
                }
            }
            out = next;
        }
        out
    }

    /// Name of the affine coordinate `X_j / X_c` of factor `f` in chart index `c`.
    pub fn coord_name(&self, f: usize, j: usize, c: usize) -> Symbol {
        let fac = &self.factors[f];
        debug_assert!(j != c);
        if fac.dim == 1 {
            return if c == 0 { fac.names[0].clone() } else { inverse_name(&fac.names[0]) };
        }
        if c == 0 {
            return fac.names[j - 1].clone();
        }
        let base = &fac.names[c - 1];
        if j == 0 {
            Symbol::new(&format!("{base}_inv"))
        } else {
            Symbol::new(&format!("{}_{base}", fac.names[j - 1]))
        }
    }

    /// Coordinates of a chart, factor by factor, with `(factor, index)`.
    pub fn chart_coords_indexed(&self, chart: &Chart) -> Vec<(Symbol, usize, usize)> {
        let mut out = Vec::new();
        for (f, fac) in self.factors.iter().enumerate() {
            let c = chart.choice[f];
            for j in 0..=fac.dim {
                if j != c {
                    out.push((self.coord_name(f, j, c), f, j));
                }
            }
        }
        out
    }

    pub fn chart_coords(&self, chart: &Chart) -> Vec<Symbol> {
        self.chart_coords_indexed(chart).into_iter().map(|(s, _, _)| s).collect()
    }

    pub fn origin_coords(&self) -> Vec<Symbol> {
        self.chart_coords(&Chart::origin(self))
    }

    /// Substitution sending homogeneous variables to chart coordinates.
    pub fn dehomogenizer(&self, chart: &Chart) -> HashMap<Symbol, MultiPoly> {
        let mut map = HashMap::new();
        for (f, fac) in self.factors.iter().enumerate() {
            let c = chart.choice[f];
            for j in 0..=fac.dim {
                let v = if j == c { MultiPoly::one() } else { MultiPoly::var(&self.coord_name(f, j, c)) };
                map.insert(hom_var(f, j), v);
            }
        }
        map
    }

    pub fn dehomogenize(&self, p: &MultiPoly, chart: &Chart) -> MultiPoly {
        p.substitute(&self.dehomogenizer(chart))
    }

    /// Multihomogenization of a chart-local polynomial with minimal degrees.
    pub fn homogenize(&self, p: &MultiPoly, chart: &Chart) -> MultiPoly {
        let degs = self.factor_degrees(p, chart);
        self.homogenize_with(p, chart, &degs)
    }

    /// Degree of `p` in the coordinates of each factor.
    pub fn factor_degrees(&self, p: &MultiPoly, chart: &Chart) -> Vec<u32> {
        let idx = self.chart_coords_indexed(chart);
        (0..self.factors.len())
            .map(|f| {
                let vars: Vec<Symbol> = idx.iter().filter(|(_, g, _)| *g == f).map(|(s, _, _)| s.clone()).collect();
                p.degree_in_set(&vars)
            })
            .collect()
    }

    pub fn homogenize_with(&self, p: &MultiPoly, chart: &Chart, degs: &[u32]) -> MultiPoly {
        let idx = self.chart_coords_indexed(chart);
        let lookup: HashMap<&Symbol, (usize, usize)> = idx.iter().map(|(s, f, j)| (s, (*f, *j))).collect();
        MultiPoly::from_terms(p.terms().map(|(m, c)| {
            let mut d = vec![0u32; self.factors.len()];
            let mut pairs = Vec::new();
            for (s, e) in m.pairs() {
                match lookup.get(s) {
                    Some(&(f, j)) => {
                        d[f] += e;
                        pairs.push((hom_var(f, j), *e));
                    }
                    None => pairs.push((s.clone(), *e)),
                }
            }
            for f in 0..self.factors.len() {
                pairs.push((hom_var(f, chart.choice[f]), degs[f].saturating_sub(d[f])));
            }
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    /// Multidegree of a multihomogeneous polynomial, if it is one.
    pub fn multidegree(&self, p: &MultiPoly) -> Option<Vec<u32>> {
        let mut out: Option<Vec<u32>> = None;
        for (m, _) in p.terms() {
            let d: Vec<u32> =
                (0..self.factors.len()).map(|f| self.hom_vars(f).iter().map(|v| m.exponent(v)).sum()).collect();
            match &out {
                None => out = Some(d),
                Some(o) if *o != d => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or_else(|| vec![0; self.factors.len()]))
    }

    /// Coordinates of chart `from` as rational functions of chart `to`.
    pub fn transition(&self, from: &Chart, to: &Chart) -> HashMap<Symbol, RationalFunction> {
        let deh = self.dehomogenizer(to);
        let mut out = HashMap::new();
        for (s, f, j) in self.chart_coords_indexed(from) {
            let num = deh[&hom_var(f, j)].clone();
            let den = deh[&hom_var(f, from.choice[f])].clone();
            out.insert(s, RationalFunction::new(num, den).expect("nonzero homogeneous coordinate"));
        }
        out
    }

    /// First chart (in enumeration order) where `p` has a nonconstant local
    /// equation, with that equation.
    pub fn visible_chart(&self, p: &MultiPoly) -> Option<(Chart, MultiPoly)> {
        self.charts().into_iter().find_map(|ch| {
            let h = self.dehomogenize(p, &ch);
            (!h.is_constant()).then_some((ch, h))
        })
    }

    /// Which factor a chart coordinate belongs to.
    pub fn factor_of(&self, chart: &Chart, v: &Symbol) -> Option<(usize, usize)> {
        self.chart_coords_indexed(chart).into_iter().find(|(s, _, _)| s == v).map(|(_, f, j)| (f, j))
    }
}

impl fmt::Display for AmbientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind_name())
    }
}

/// A point of a product of projective spaces, each factor scaled so that its
/// first nonzero homogeneous coordinate is one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AmbientPoint {
    coords: Vec<Vec<TauScalar>>,
}

impl AmbientPoint {
    /// Normalizes homogeneous coordinates; `None` if a factor is all zero.
    pub fn new(coords: Vec<Vec<TauScalar>>) -> Option<Self> {
        let mut out = Vec::with_capacity(coords.len());
        for fac in coords {
            let lead = fac.iter().find(|c| !c.is_zero())?.inv()?;
            out.push(fac.iter().map(|c| c.mul(&lead)).collect());
        }
        Some(AmbientPoint { coords: out })
    }

    pub fn homogeneous(&self) -> &[Vec<TauScalar>] {
        &self.coords
    }

    /// Builds the point with the given chart coordinates.
    pub fn from_chart(space: &AmbientSpace, chart: &Chart, values: &HashMap<Symbol, TauScalar>) -> Result<Self> {
        let mut coords = Vec::new();
        for (f, fac) in space.factors().iter().enumerate() {
            let c = chart.choice[f];
            let mut row = Vec::new();
            for j in 0..=fac.dim {
                if j == c {
                    row.push(TauScalar::one());
                } else {
                    let s = space.coord_name(f, j, c);
                    row.push(values.get(&s).cloned().ok_or_else(|| Error::DimensionMismatch(format!("missing coordinate {s}")))?);
                }
            }
            coords.push(row);
        }
        Ok(AmbientPoint::new(coords).expect("chart coordinate is one"))
    }

    /// Chart coordinates, or `None` if the point is outside the chart.
    pub fn in_chart(&self, space: &AmbientSpace, chart: &Chart) -> Option<HashMap<Symbol, TauScalar>> {
        let mut out = HashMap::new();
        for (f, row) in self.coords.iter().enumerate() {
            let c = chart.choice[f];
            let inv = row[c].inv()?;
            for (j, x) in row.iter().enumerate() {
                if j != c {
                    out.insert(space.coord_name(f, j, c), x.mul(&inv));
                }
            }
        }
        Some(out)
    }

    /// The first chart containing the point, preferring index 0 per factor.
    pub fn chart(&self) -> Chart {
        Chart { choice: self.coords.iter().map(|row| row.iter().position(|c| !c.is_zero()).unwrap_or(0)).collect() }
    }

    /// Value of a multihomogeneous polynomial up to scale (zero test only).
    pub fn eval_hom(&self, p: &MultiPoly) -> TauScalar {
        let mut vals = HashMap::new();
        for (f, row) in self.coords.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                vals.insert(hom_var(f, j), x.clone());
            }
        }
        p.evaluate(&vals).constant_value().unwrap_or_default()
    }

    /// Text form: affine coordinates where finite, `inf` for the point at
    /// infinity of a line, and `[a:b:c]` otherwise.
    pub fn render(&self) -> String {
        if self.coords.is_empty() {
            return "point()".into();
        }
        if self.coords.len() == 1 && self.coords[0].len() > 2 && self.coords[0][0].is_zero() {
            let parts: Vec<String> = self.coords[0].iter().map(|c| c.render().0).collect();
            return format!("point[{}]", parts.join(":"));
        }
        let mut parts = Vec::new();
        for row in &self.coords {
            if row[0].is_zero() {
                parts.push("inf".to_string());
                continue;
            }
            parts.extend(row[1..].iter().map(|c| c.render().0));
        }
        format!("point({})", parts.join(", "))
    }
}
