use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Field, GaussianRational, MultiPoly, RationalFunction, Symbol, TauScalar};
use crate::chains::{boundary, boundary_squared, hp0_class, hp_report, hyperplane_domain, normalize, reduce_relative, HomologyReport, PolarChain, PrimeChain, RelativeContext};
use crate::error::{Error, Result};
use crate::forms::{DifferentialForm, ExteriorForm, PoleComponent};
use crate::intersect::{intersection_number, intersection_product, linking_number, IntersectionKind, PolarOrientation};
use crate::pushforward::{pushforward, LineMap};
use crate::residue::{poincare_residue, repeated_residue, residue_all, p1_residue_sum, ResiduePiece};
use crate::sample;
use crate::spaces::{AmbientPoint, AmbientSpace, Chart, HomogMap};

use super::parser::{parse, ChainExpr, Command, Diagnostic, Expr, ExprKind, FormExpr, Name, PointCoord, PoleSpec, Session, SpaceRef, Stmt, StmtKind, Variety, VarietyKind};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Options {
    pub format: Format,
    pub seed: u64,
}

/// Output lines of a run and whether any statement failed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Transcript {
    pub lines: Vec<String>,
    pub errors: usize,
}

impl Transcript {
    pub fn ok(&self) -> bool {
        self.errors == 0
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

pub const PROPERTIES: [&str; 6] = ["two_pole", "d2", "antisymmetry", "residue_sum", "degree", "class0"];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Space { oriented: bool },
    Chain,
    Relative,
}

fn undefined(n: &Name) -> Diagnostic {
    Diagnostic::error(n.span, format!("undefined name '{}'", n.text))
}

/// Name resolution: every name is defined before use and has the right kind.
pub fn resolve(session: &Session) -> Vec<Diagnostic> {
    let mut names: HashMap<String, Kind> = HashMap::new();
    let mut diags = Vec::new();
    let mut any_space = false;
    let want = |names: &HashMap<String, Kind>, n: &Name, what: &str, ok: fn(Kind) -> bool| -> Option<Diagnostic> {
        match names.get(&n.text) {
            None => Some(undefined(n)),
            Some(k) if ok(*k) => None,
            Some(_) => Some(Diagnostic::error(n.span, format!("'{}' is not a {what}", n.text))),
        }
    };
    let is_space: fn(Kind) -> bool = |k| matches!(k, Kind::Space { .. });
    let is_chain: fn(Kind) -> bool = |k| k == Kind::Chain;
    let is_rel: fn(Kind) -> bool = |k| k == Kind::Relative;
    for st in &session.statements {
        let mut found: Vec<Diagnostic> = Vec::new();
        match &st.kind {
            StmtKind::Space { name, .. } => {
                names.insert(name.text.clone(), Kind::Space { oriented: false });
                any_space = true;
            }
            StmtKind::Orient { space, .. } => match want(&names, space, "space", is_space) {
                Some(d) => found.push(d),
                None => {
                    names.insert(space.text.clone(), Kind::Space { oriented: true });
                }
            },
            StmtKind::Chain { name, space, .. } => {
                found.extend(want(&names, space, "space", is_space));
                names.insert(name.text.clone(), Kind::Chain);
            }
            StmtKind::Relative { name, space, .. } => {
                match space {
                    Some(s) => found.extend(want(&names, s, "space", is_space)),
                    None if !any_space => found.push(Diagnostic::error(name.span, "no space declared for the relative context")),
                    None => {}
                }
                names.insert(name.text.clone(), Kind::Relative);
            }
            StmtKind::Command(c) => {
                let mut chains: Vec<&Name> = Vec::new();
                let mut rels: Vec<&Name> = Vec::new();
                let mut oriented: Vec<&Name> = Vec::new();
                match c {
                    Command::Residue { chain, .. } | Command::Residues { chain } | Command::D2 { chain } | Command::Push { chain, .. } => chains.push(chain),
                    Command::Boundary { chain, rel } | Command::Class0 { chain, rel } => {
                        chains.push(chain);
                        rels.extend(rel.iter());
                    }
                    Command::Intersect { a, b, space } | Command::Product { a, b, space } => {
                        chains.extend([a, b]);
                        oriented.push(space);
                    }
                    Command::Link { c1, c2, s2, space } => {
                        chains.extend([c1, c2, s2]);
                        oriented.push(space);
                    }
                    Command::Hp(SpaceRef::Named(n)) | Command::Euler(SpaceRef::Named(n)) => {
                        if !SPACE_NAMES.contains(&n.text.as_str()) {
                            found.extend(want(&names, n, "space", is_space));
                        }
                    }
                    Command::Hp(_) | Command::Euler(_) => {}
                    Command::Property { name, .. } => {
                        if !PROPERTIES.contains(&name.text.as_str()) {
                            found.push(Diagnostic::error(name.span, format!("unknown property '{}'; expected one of {}", name.text, PROPERTIES.join(", "))));
                        }
                    }
                }
                for n in chains {
                    found.extend(want(&names, n, "chain", is_chain));
                }
                for n in rels {
                    found.extend(want(&names, n, "relative context", is_rel));
                }
                for n in oriented {
                    match names.get(&n.text) {
                        Some(Kind::Space { oriented: true }) => {}
                        Some(Kind::Space { oriented: false }) => found.push(Diagnostic::error(n.span, format!("no orientation declared for '{}'", n.text))),
                        _ => found.extend(want(&names, n, "space", is_space)),
                    }
                }
            }
        }
        diags.extend(found.into_iter().take(1));
    }
    diags
}

const SPACE_NAMES: [&str; 5] = ["P1", "P2", "P3", "P1xP1", "P1xP1xP1"];

enum Value {
    Space { space: AmbientSpace, orient: Option<PolarOrientation> },
    Chain(PolarChain),
    Relative(RelativeContext),
}

#[derive(Default)]
struct Env {
    values: HashMap<String, Value>,
    last_space: Option<AmbientSpace>,
}

impl Env {
    fn space(&self, n: &Name) -> Result<&AmbientSpace> {
        match self.values.get(&n.text) {
            Some(Value::Space { space, .. }) => Ok(space),
            _ => Err(Error::InvalidPresentation(format!("'{}' is not a usable space", n.text))),
        }
    }

    fn orientation(&self, n: &Name) -> Result<&PolarOrientation> {
        match self.values.get(&n.text) {
            Some(Value::Space { orient: Some(o), .. }) => Ok(o),
            _ => Err(Error::InvalidOrientation(format!("no orientation for '{}'", n.text))),
        }
    }

    fn chain(&self, n: &Name) -> Result<&PolarChain> {
        match self.values.get(&n.text) {
            Some(Value::Chain(c)) => Ok(c),
            _ => Err(Error::InvalidPresentation(format!("'{}' was not built", n.text))),
        }
    }

    fn relative(&self, n: &Name) -> Result<&RelativeContext> {
        match self.values.get(&n.text) {
            Some(Value::Relative(r)) => Ok(r),
            _ => Err(Error::InvalidPresentation(format!("'{}' was not built", n.text))),
        }
    }
}

fn int_scalar(s: &str) -> TauScalar {
    let n: BigInt = s.parse().expect("lexer yields digits");
    TauScalar::from_gaussian(GaussianRational::real(BigRational::from_integer(n)))
}

fn at(e: &Expr) -> String {
    format!("at {}", e.span)
}

/// Evaluates an expression with the given coordinates in scope.
fn eval(e: &Expr, coords: &[Symbol]) -> Result<RationalFunction> {
    Ok(match &e.kind {
        ExprKind::Int(s) => RationalFunction::constant(int_scalar(s)),
        ExprKind::I => RationalFunction::constant(TauScalar::i()),
        ExprKind::Tau => RationalFunction::constant(TauScalar::tau()),
        ExprKind::Var(v) => {
            let s = Symbol::new(v);
            if !coords.contains(&s) {
                let cs: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                return Err(Error::InvalidPresentation(format!("unknown coordinate '{v}' {}; in scope: [{}]", at(e), cs.join(", "))));
            }
            RationalFunction::var(&s)
        }
        ExprKind::Neg(a) => eval(a, coords)?.neg(),
        ExprKind::Add(a, b) => eval(a, coords)?.add(&eval(b, coords)?),
        ExprKind::Sub(a, b) => eval(a, coords)?.sub(&eval(b, coords)?),
        ExprKind::Mul(a, b) => eval(a, coords)?.mul(&eval(b, coords)?),
        ExprKind::Div(a, b) => eval(a, coords)?.div(&eval(b, coords)?).ok_or(Error::DivisionByZero)?,
        ExprKind::Pow(a, n) => {
            let base = eval(a, coords)?;
            (0..*n).fold(RationalFunction::one(), |acc, _| acc.mul(&base))
        }
    })
}

fn eval_scalar(e: &Expr) -> Result<TauScalar> {
    eval(e, &[])?.as_constant().ok_or_else(|| Error::InvalidPresentation(format!("expected a constant {}", at(e))))
}

fn eval_poly(e: &Expr, coords: &[Symbol]) -> Result<MultiPoly> {
    eval(e, coords)?.as_poly().cloned().ok_or_else(|| Error::InvalidPresentation(format!("expected a polynomial {}", at(e))))
}

fn pole_component(p: &PoleSpec, space: &AmbientSpace) -> Result<PoleComponent> {
    let o = Chart::origin(space);
    match p {
        PoleSpec::Poly(e) => PoleComponent::from_local(space, &o, &eval_poly(e, &space.chart_coords(&o))?),
        PoleSpec::Infinity(n) => {
            let s = Symbol::new(&n.text);
            if !space.origin_coords().contains(&s) {
                return Err(Error::InvalidPresentation(format!("infinity({}) names no coordinate at {}", n.text, n.span)));
            }
            PoleComponent::infinity(space, &s)
        }
    }
}

/// A form written in the chart-0 coordinates of `space`.
fn build_form(f: &FormExpr, space: &AmbientSpace) -> Result<DifferentialForm> {
    let coords = space.origin_coords();
    let mut total: Option<ExteriorForm> = None;
    for t in &f.terms {
        let c = match &t.coef {
            Some(e) => eval(e, &coords)?,
            None => RationalFunction::one(),
        };
        let c = if t.negated { c.neg() } else { c };
        let mut term = ExteriorForm::function(coords.clone(), c);
        for d in &t.diffs {
            let s = Symbol::new(&d.text);
            if !coords.contains(&s) {
                return Err(Error::InvalidPresentation(format!("d{} is not a coordinate differential at {}", d.text, d.span)));
            }
            term = term.wedge(&ExteriorForm::differential(coords.clone(), &RationalFunction::var(&s)))?;
        }
        total = Some(match total {
            None => term,
            Some(acc) if acc.degree() == term.degree() => acc.add(&term)?,
            Some(acc) => return Err(Error::DimensionMismatch(format!("terms of degrees {} and {} at {}", acc.degree(), term.degree(), f.span))),
        });
    }
    let local = total.expect("a form has a term");
    let o = Chart::origin(space);
    match &f.poles {
        None => DifferentialForm::with_inferred_poles(space, o, local),
        Some(ps) => {
            let comps = ps.iter().map(|p| pole_component(p, space)).collect::<Result<Vec<_>>>()?;
            DifferentialForm::new(space, o, local, comps)
        }
    }
}

fn build_point(v: &Variety, space: &AmbientSpace) -> Result<AmbientPoint> {
    let bad = || Error::InvalidPresentation(format!("point does not match {} at {}", space.kind_name(), v.span));
    let rows: Vec<Vec<TauScalar>> = match &v.kind {
        VarietyKind::Homog(cs) => {
            if space.factors().len() != 1 || cs.len() != space.dim() + 1 {
                return Err(bad());
            }
            vec![cs.iter().map(eval_scalar).collect::<Result<Vec<_>>>()?]
        }
        VarietyKind::Point(cs) => {
            if cs.len() != space.dim() {
                return Err(bad());
            }
            let mut rows = Vec::new();
            let mut it = cs.iter();
            for fac in space.factors() {
                let mut row = vec![TauScalar::one()];
                for _ in 0..fac.dim {
                    match it.next().expect("length checked") {
                        PointCoord::Value(e) => row.push(eval_scalar(e)?),
                        PointCoord::Inf if fac.dim == 1 => row = vec![TauScalar::zero(), TauScalar::one()],
                        PointCoord::Inf => return Err(Error::InvalidPresentation(format!("inf is only allowed on line factors at {}", v.span))),
                    }
                }
                rows.push(row);
            }
            rows
        }
        _ => unreachable!("called on points"),
    };
    AmbientPoint::new(rows).ok_or_else(bad)
}

/// Domain and map of a variety.
fn build_variety(v: &Variety, space: &AmbientSpace) -> Result<(AmbientSpace, HomogMap)> {
    match &v.kind {
        VarietyKind::Whole => Ok((space.clone(), HomogMap::identity(space))),
        VarietyKind::Point(_) | VarietyKind::Homog(_) => Ok((AmbientSpace::point(), HomogMap::constant(&build_point(v, space)?, space))),
        VarietyKind::Hyp(e) => hyperplane_domain(space, &eval_poly(e, &space.origin_coords())?),
        VarietyKind::Graph { params, assigns } => {
            let ps: Vec<Symbol> = params.iter().map(|p| Symbol::new(&p.text)).collect();
            let keys: Vec<Symbol> = assigns.iter().map(|(n, _)| Symbol::new(&n.text)).collect();
            let chart = space
                .charts()
                .into_iter()
                .find(|ch| {
                    let cs = space.chart_coords(ch);
                    keys.iter().all(|k| cs.contains(k)) && cs.iter().all(|c| keys.contains(c) || ps.contains(c))
                })
                .ok_or_else(|| Error::InvalidPresentation(format!("graph assignments fit no chart of {} at {}", space.kind_name(), v.span)))?;
            let mut full = HashMap::new();
            for ((_, e), k) in assigns.iter().zip(&keys) {
                full.insert(k.clone(), eval(e, &ps)?);
            }
            for c in space.chart_coords(&chart) {
                full.entry(c.clone()).or_insert_with(|| RationalFunction::var(&c));
            }
            let domain = AmbientSpace::lines_named(&ps);
            Ok((domain.clone(), HomogMap::from_affine(&domain, space, &chart, &full)?))
        }
    }
}

fn build_chain(c: &ChainExpr, space: &AmbientSpace) -> Result<PolarChain> {
    match c {
        ChainExpr::Term(v, f) => {
            let (domain, map) = build_variety(v, space)?;
            let form = build_form(f, &domain)?;
            Ok(PolarChain::single(PrimeChain::new(map, form)?))
        }
        ChainExpr::Scaled(e, inner) => Ok(build_chain(inner, space)?.scale(&eval_scalar(e)?)),
        ChainExpr::Neg(inner) => Ok(build_chain(inner, space)?.neg()),
        ChainExpr::Sum(items) => {
            let mut acc = PolarChain::zero(space);
            for it in items {
                acc = acc.add(&build_chain(it, space)?)?;
            }
            Ok(acc)
        }
    }
}

fn relative_member(v: &Variety, space: &AmbientSpace) -> Result<Vec<MultiPoly>> {
    let (domain, map) = build_variety(v, space)?;
    let t = PrimeChain { map, form: DifferentialForm::new(&domain, Chart::origin(&domain), ExteriorForm::zero(domain.origin_coords(), domain.dim()), vec![])?, coefficient: TauScalar::one() };
    for ch in space.charts() {
        if let Some(eqs) = t.implicit_equations(&ch) {
            return Ok(eqs.iter().map(|e| space.homogenize(e, &ch)).collect());
        }
    }
    Err(Error::InvalidPresentation(format!("no equations for the member at {}", v.span)))
}

fn prime(c: &PolarChain) -> Result<PrimeChain> {
    let n = normalize(c)?;
    match n.terms.as_slice() {
        [t] => Ok(t.clone()),
        _ => Err(Error::InvalidPresentation(format!("expected a prime chain, found {} terms", n.terms.len()))),
    }
}

fn catalog_report(env: &Env, s: &SpaceRef) -> Result<HomologyReport> {
    match s {
        SpaceRef::Curve(g, _) => hp_report(&format!("curve({g})")),
        SpaceRef::Named(n) => match env.values.get(&n.text) {
            Some(Value::Space { space, .. }) => {
                let name = if space.is_lines() && space.factors().len() > 1 { vec!["P1"; space.factors().len()].join("x") } else { space.kind_name() };
                hp_report(&name)
            }
            _ => hp_report(&n.text),
        },
    }
}

fn piece_chain(t: &PrimeChain, p: &ResiduePiece) -> PrimeChain {
    PrimeChain { map: t.map.compose(&p.inclusion), form: p.form.clone(), coefficient: t.coefficient.clone() }
}

fn scalar(s: &TauScalar) -> String {
    s.render().0
}

/// Executes a command: the canonical result and extra human-readable lines.
fn command(env: &Env, c: &Command, opts: &Options) -> Result<(String, Vec<String>)> {
    match c {
        Command::Residue { chain, along } => {
            let t = prime(env.chain(chain)?)?;
            let comp = pole_component(along, t.domain())?;
            let pieces = poincare_residue(&t.folded().form, &comp)?;
            let out = PolarChain::from_terms(t.target(), pieces.iter().map(|p| piece_chain(&t, p)).collect())?;
            Ok((normalize(&out)?.render(), pieces.iter().map(|p| format!("  {}", p.render())).collect()))
        }
        Command::Residues { chain } => {
            let t = prime(env.chain(chain)?)?;
            let mut parts = Vec::new();
            for p in residue_all(&t.folded().form)? {
                let c = normalize(&PolarChain::single(piece_chain(&t, &p)))?;
                parts.push(format!("{}: {}", p.component.label, c.render()));
            }
            Ok((format!("[{}]", parts.join("; ")), Vec::new()))
        }
        Command::Boundary { chain, rel } => {
            let mut d = boundary(env.chain(chain)?)?;
            if let Some(r) = rel {
                d = reduce_relative(&d, env.relative(r)?)?;
            }
            let extra = d.terms.iter().filter_map(|t| t.weight()).count();
            let lines = if extra == d.terms.len() && !d.terms.is_empty() { vec![format!("  class {}", scalar(&hp0_class(&d)?))] } else { Vec::new() };
            Ok((d.render(), lines))
        }
        Command::D2 { chain } => Ok((boundary_squared(env.chain(chain)?)?.render(), Vec::new())),
        Command::Push { f, chain } => {
            let t = prime(env.chain(chain)?)?;
            if !t.map.is_identity() || t.target().factors().len() != 1 || t.target().dim() != 1 {
                return Err(Error::DimensionMismatch("push takes a form on a whole line".into()));
            }
            let space = t.target().clone();
            let map = LineMap::new(&space, eval(f, &space.origin_coords())?)?;
            let pushed = pushforward(&map, &t.folded().form)?;
            Ok((PolarChain::single(PrimeChain::whole(pushed)?).render(), vec![format!("  degree {}", map.degree())]))
        }
        Command::Intersect { a, b, space } => {
            let r = intersection_number(env.chain(a)?, env.chain(b)?, env.orientation(space)?)?;
            let lines = r.points.iter().map(|(p, v)| format!("  {} -> {}", p.render(), scalar(v))).collect();
            Ok((scalar(r.number().expect("number")), lines))
        }
        Command::Product { a, b, space } => {
            let r = intersection_product(&prime(env.chain(a)?)?, &prime(env.chain(b)?)?, env.orientation(space)?)?;
            let IntersectionKind::ProductCycle(c) = &r.kind else { unreachable!("product yields a cycle") };
            let lines = r.points.iter().map(|(p, v)| format!("  {} -> {}", p.render(), scalar(v))).collect();
            Ok((c.render(), lines))
        }
        Command::Link { c1, c2, s2, space } => {
            let r = linking_number(env.chain(c1)?, env.chain(c2)?, env.chain(s2)?, env.orientation(space)?)?;
            Ok((scalar(&r.value), vec![format!("  certificate {}", r.certificate.render())]))
        }
        Command::Class0 { chain, rel } => {
            let c = env.chain(chain)?;
            let mut z = if c.degree() == Some(0) { normalize(c)? } else { boundary(c)? };
            if let Some(r) = rel {
                z = reduce_relative(&z, env.relative(r)?)?;
            }
            Ok((scalar(&hp0_class(&z)?), Vec::new()))
        }
        Command::Hp(s) => Ok((catalog_report(env, s)?.render(), Vec::new())),
        Command::Euler(s) => {
            let rep = catalog_report(env, s)?;
            let e = rep.euler().ok_or_else(|| Error::Undetermined(format!("{}: {}", rep.space, rep.render())))?;
            Ok((e.to_string(), Vec::new()))
        }
        Command::Property { name, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut passed = 0;
            for _ in 0..*count {
                if property(&name.text, &mut rng)? {
                    passed += 1;
                }
            }
            Ok((format!("{} {passed}/{count}", name.text), vec![format!("  seed {}", opts.seed)]))
        }
    }
}

/// One randomized trial of a named property.
pub fn property<R: Rng>(name: &str, rng: &mut R) -> Result<bool> {
    match name {
        "two_pole" => {
            let a = sample::nonzero(rng);
            let pq = sample::distinct(rng, 2);
            let (chain, expected) = sample::two_pole_case(&a, &pq[0], &pq[1])?;
            Ok(boundary(&chain)? == expected)
        }
        "d2" => {
            let f = sample::surface_form(rng)?;
            Ok(boundary_squared(&PolarChain::single(PrimeChain::whole(f)?))?.is_empty())
        }
        "antisymmetry" => {
            let f = sample::surface_form(rng)?;
            let mut checked = 0;
            for (i, vi) in f.poles.iter().enumerate() {
                for vj in &f.poles[i + 1..] {
                    let (ij, ji) = match (repeated_residue(&f, vi, vj), repeated_residue(&f, vj, vi)) {
                        (Ok(a), Ok(b)) => (a, b),
                        (Err(Error::NotTransverseComponents(_)), Err(Error::NotTransverseComponents(_))) => continue,
                        (Err(e), _) | (_, Err(e)) => return Err(e),
                    };
                    let collect = |ps: Vec<ResiduePiece>| -> BTreeMap<AmbientPoint, TauScalar> {
                        let mut m = BTreeMap::new();
                        for p in ps {
                            let at = p.inclusion.eval(&AmbientPoint::new(vec![]).expect("point")).expect("constant");
                            let v: TauScalar = m.remove(&at).unwrap_or_else(TauScalar::zero);
                            m.insert(at, v.add(&p.value().expect("point residue")));
                        }
                        m
                    };
                    let neg: BTreeMap<_, _> = collect(ji).into_iter().map(|(k, v)| (k, v.neg())).collect();
                    if collect(ij) != neg {
                        return Ok(false);
                    }
                    checked += 1;
                }
            }
            Ok(checked > 0)
        }
        "residue_sum" => {
            let n = rng.gen_range(3..=5);
            let inf = rng.gen_bool(0.5);
            Ok(p1_residue_sum(&sample::line_form(rng, n, inf)?)?.is_zero())
        }
        "degree" => {
            let p1 = AmbientSpace::projective(1)?;
            let z = RationalFunction::var(&Symbol::new("z"));
            let maps = [z.mul(&z), z.mul(&z).mul(&z), z.mul(&z).add(&RationalFunction::one()).div(&z).expect("nonzero")];
            let f = LineMap::new(&p1, maps[rng.gen_range(0..maps.len())].clone())?;
            let n = rng.gen_range(2..=4);
            let inf = rng.gen_bool(0.5);
            let w = sample::line_form(rng, n, inf)?;
            let back = w.pullback(&f.as_homog()?)?;
            let there = pushforward(&f, &back)?.to_origin()?;
            Ok(there.local == w.scale(&TauScalar::from(f.degree() as i64)).to_origin()?.local)
        }
        "class0" => Ok(hp0_class(&boundary(&sample::line_chain(rng)?)?)?.is_zero()),
        other => Err(Error::InvalidPresentation(format!("unknown property {other}"))),
    }
}

fn define(env: &mut Env, st: &Stmt) -> Result<()> {
    match &st.kind {
        StmtKind::Space { name, kind } => {
            let space = AmbientSpace::from_name(&kind.text)?;
            env.last_space = Some(space.clone());
            env.values.insert(name.text.clone(), Value::Space { space, orient: None });
        }
        StmtKind::Orient { space, form } => {
            let s = env.space(space)?.clone();
            let mu = PolarOrientation::new(build_form(form, &s)?)?;
            env.values.insert(space.text.clone(), Value::Space { space: s, orient: Some(mu) });
        }
        StmtKind::Chain { name, space, value } => {
            let s = env.space(space)?.clone();
            let c = build_chain(value, &s)?;
            env.values.insert(name.text.clone(), Value::Chain(c));
        }
        StmtKind::Relative { name, space, members } => {
            let s = match space {
                Some(n) => env.space(n)?.clone(),
                None => env.last_space.clone().ok_or_else(|| Error::InvalidPresentation("no space declared".into()))?,
            };
            let ms = members.iter().map(|m| relative_member(m, &s)).collect::<Result<Vec<_>>>()?;
            env.values.insert(name.text.clone(), Value::Relative(RelativeContext::new(&s, ms)?));
        }
        StmtKind::Command(_) => unreachable!("commands are not definitions"),
    }
    Ok(())
}

fn stmt_keyword(st: &Stmt) -> &'static str {
    match &st.kind {
        StmtKind::Space { .. } => "space",
        StmtKind::Orient { .. } => "orient",
        StmtKind::Chain { .. } => "chain",
        StmtKind::Relative { .. } => "relative",
        StmtKind::Command(c) => c.keyword(),
    }
}

fn stmt_name(st: &Stmt) -> &str {
    match &st.kind {
        StmtKind::Space { name, .. } | StmtKind::Chain { name, .. } | StmtKind::Relative { name, .. } => &name.text,
        StmtKind::Orient { space, .. } => &space.text,
        StmtKind::Command(_) => "",
    }
}

fn error_line(st: &Stmt, e: &Error) -> String {
    match &st.kind {
        StmtKind::Command(_) => format!("ERROR {} {}: {e}", stmt_keyword(st), e.code()),
        _ => format!("ERROR {} {} {}: {e}", stmt_keyword(st), stmt_name(st), e.code()),
    }
}

/// Executes a parsed session in order.
pub fn run(session: &Session, opts: &Options) -> Transcript {
    let mut env = Env::default();
    let mut out = Transcript::default();
    for st in &session.statements {
        match &st.kind {
            StmtKind::Command(c) => match command(&env, c, opts) {
                Ok((result, extra)) => {
                    out.lines.push(format!("RESULT {} {result}", c.keyword()));
                    if opts.format == Format::Text {
                        out.lines.extend(extra);
                    }
                }
                Err(e) => {
                    out.errors += 1;
                    out.lines.push(error_line(st, &e));
                }
            },
            _ => {
                if let Err(e) = define(&mut env, st) {
                    out.errors += 1;
                    out.lines.push(error_line(st, &e));
                }
            }
        }
    }
    out
}

/// Parses, resolves names and builds every definition without running
/// commands.
pub fn check(src: &str, opts: &Options) -> Transcript {
    let session = match parse_checked(src) {
        Ok(s) => s,
        Err(diags) => return diagnostics(src, &diags, opts),
    };
    let mut env = Env::default();
    let mut out = Transcript::default();
    let mut commands = 0;
    for st in &session.statements {
        if matches!(st.kind, StmtKind::Command(_)) {
            commands += 1;
            continue;
        }
        if let Err(e) = define(&mut env, st) {
            out.errors += 1;
            out.lines.push(error_line(st, &e));
        }
    }
    if out.ok() {
        out.lines.push(format!("OK {} statements, {commands} commands", session.statements.len()));
    }
    out
}

/// Parse followed by name resolution.
pub fn parse_checked(src: &str) -> std::result::Result<Session, Vec<Diagnostic>> {
    let session = parse(src)?;
    let diags = resolve(&session);
    if diags.is_empty() {
        Ok(session)
    } else {
        Err(diags)
    }
}

fn diagnostics(src: &str, diags: &[Diagnostic], opts: &Options) -> Transcript {
    let lines = diags
        .iter()
        .map(|d| match opts.format {
            Format::Text => d.render_text(src),
            Format::Machine => d.render_machine(),
        })
        .collect();
    Transcript { lines, errors: diags.len() }
}

/// `polaris run`: diagnostics if the session does not parse, otherwise the
/// transcript.
pub fn run_source(src: &str, opts: &Options) -> Transcript {
    match parse_checked(src) {
        Ok(s) => run(&s, opts),
        Err(diags) => diagnostics(src, &diags, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn machine(src: &str) -> Vec<String> {
        run_source(src, &Options { format: Format::Machine, seed: 0 }).lines
    }

    #[test]
    fn example_session() {
        let out = machine("space M = P1\nchain a in M = (whole, 3*(1/(z - 1) - 1/(z - 2))*dz)\nboundary a\nclass0 a\neuler P1\n");
        assert_eq!(out, vec!["RESULT boundary (2πi)*[(point(1),3) - (point(2),3)]", "RESULT class0 0", "RESULT euler 1"]);
    }

    #[test]
    fn undefined_name_has_span() {
        let t = run_source("boundary a\nspace M = P1\n", &Options { format: Format::Machine, seed: 0 });
        assert!(!t.ok());
        assert_eq!(t.lines, vec!["DIAG error 1:10 undefined name 'a'"]);
    }

    #[test]
    fn square_intersection() {
        let out = machine(
            "space M = P1xP1\n\
             orient M with 1/(x*y)*dx^dy\n\
             chain a in M = (hyp(x - 2), 1/y*dy)\n\
             chain b in M = (hyp(y - 3), 1/x*dx)\n\
             intersect a b in M\n\
             product a b in M\n\
             d2 a\n",
        );
        assert_eq!(out, vec!["RESULT intersect -1", "RESULT product -(point(2, 3),1)", "RESULT d2 0"]);
    }

    #[test]
    fn errors_are_reported_per_statement() {
        let out = machine("space M = P1\nchain a in M = (whole, 1/z^2*dz)\nboundary a\neuler P2\n");
        assert_eq!(out[0].split(':').next().unwrap(), "ERROR boundary InadmissibleForm");
        assert!(out[1].starts_with("ERROR euler Undetermined"));
    }
}
