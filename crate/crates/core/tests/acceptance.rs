//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::collections::HashMap;
use std::path::Path;
use std::time::{Duration, Instant};

use polaris::algebra::{Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use polaris::chains::{boundary, boundary_squared, hp0_class, hp_report, normalize, PolarChain, PrimeChain};
use polaris::cli::{run_source, Format, Options};
use polaris::forms::{validate_chain_form, DifferentialForm, ExteriorForm, PoleComponent};
use polaris::intersect::{
    intersection_number, intersection_product, intersection_product_with, linking_number, ConormalFrame, IntersectionKind,
    PolarOrientation,
};
use polaris::pushforward::{check_residue_commute, pushforward, LineMap};
use polaris::residue::{p1_residue_sum, repeated_residue, residue_all};
use polaris::sample;
use polaris::spaces::{AmbientPoint, AmbientSpace, Chart};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: polaris::Error) -> String {
    e.to_string()
}

// 1. (P¹, a(1/(z−p) − 1/(z−q))dz) has boundary 2πi((p,a) − (q,a)).
fn two_pole_boundary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let p1 = AmbientSpace::projective(1).map_err(err)?;
    for trial in 0..20 {
        let a = sample::nonzero(&mut rng);
        let pq = sample::distinct(&mut rng, 2);
        let (p, q) = (&pq[0], &pq[1]);
        let g = RationalFunction::new(MultiPoly::one(), shifted("z", p))
            .expect("nonzero")
            .sub(&RationalFunction::new(MultiPoly::one(), shifted("z", q)).expect("nonzero"))
            .mul(&k(&a));
        let o = Chart::origin(&p1);
        let poles = vec![
            PoleComponent::from_local(&p1, &o, &shifted("z", p)).map_err(err)?,
            PoleComponent::from_local(&p1, &o, &shifted("z", q)).map_err(err)?,
        ];
        let form = DifferentialForm::new(&p1, o, ExteriorForm::top(p1.origin_coords(), g), poles).map_err(err)?;
        let chain = PolarChain::single(PrimeChain::whole(form).map_err(err)?);
        let ta = a.mul(&TauScalar::tau());
        let expected = PolarChain::from_terms(
            &p1,
            vec![PrimeChain::point(&p1, &line_point(p), ta.clone()).map_err(err)?, PrimeChain::point(&p1, &line_point(q), ta.neg()).map_err(err)?],
        )
        .map_err(err)?;
        let got = boundary(&chain).map_err(err)?;
        let want = normalize(&expected).map_err(err)?;
        ensure(got == want, || format!("trial {trial}: got {} want {}", got.render(), want.render()))?;
    }
    Ok("20 randomized triples".into())
}

// 2. ∂² = 0 on catalog 2- and 3-chains.
fn boundary_squared_suite() -> Outcome {
    let pp = AmbientSpace::product_of_lines(2).map_err(err)?;
    let ppp = AmbientSpace::product_of_lines(3).map_err(err)?;
    let p2 = AmbientSpace::projective(2).map_err(err)?;
    let p3 = AmbientSpace::projective(3).map_err(err)?;
    let whole = |f: DifferentialForm| PrimeChain::whole(f).map(PolarChain::single);
    let line = v("x").add(&v("y")).sub(&MultiPoly::one());
    let plane = v("x").add(&v("y")).add(&v("z")).sub(&MultiPoly::one());
    let mut cases: Vec<(&str, PolarChain)> = vec![
        ("dx/x^dy/y on P1xP1", whole(top_form(&pp, &s(1), &[v("x"), v("y")], &["x", "y"])).map_err(err)?),
        ("three lines on P2", whole(top_form(&p2, &s(2), &[v("x"), v("y"), line], &[])).map_err(err)?),
        (
            "two x-poles on P1xP1",
            whole(top_form(&pp, &s(3), &[shifted("x", &s(1)), shifted("x", &s(-1)), shifted("y", &s(2))], &["y"])).map_err(err)?,
        ),
        ("dlog cube on P1xP1xP1", whole(top_form(&ppp, &s(1), &[v("x"), v("y"), v("z")], &["x", "y", "z"])).map_err(err)?),
        ("four planes on P3", whole(top_form(&p3, &s(1), &[v("x"), v("y"), v("z"), plane], &[])).map_err(err)?),
    ];
    let beta = ExteriorForm::differential(syms(&["x", "z"]), &r("x"))
        .scale(&r("x").sub(&k(&s(5))).inv().expect("nonzero"))
        .wedge(&dlog(&["x", "z"], &r("z")))
        .map_err(err)?;
    let s2 = PrimeChain::hyperplane(&ppp, &shifted("y", &s(3)), beta, None).map_err(err)?;
    let cap = PrimeChain::hyperplane(&ppp, &shifted("z", &s(7)), dlog(&["x", "y"], &r("x")).wedge(&dlog(&["x", "y"], &r("y"))).map_err(err)?, None)
        .map_err(err)?;
    cases.push(("surface y=3 in P1xP1xP1", PolarChain::single(s2.clone())));
    cases.push(("two surfaces in P1xP1xP1", PolarChain::single(s2).add(&PolarChain::single(cap)).map_err(err)?));
    for (name, c) in &cases {
        let d2 = boundary_squared(c).map_err(err)?;
        ensure(d2.is_empty(), || format!("{name}: {}", d2.render()))?;
    }
    Ok(format!("{} chains", cases.len()))
}

type PointMap = HashMap<AmbientPoint, TauScalar>;

fn point_values(form: &DifferentialForm, vi: &PoleComponent, vj: &PoleComponent) -> polaris::Result<PointMap> {
    let mut m = PointMap::new();
    for piece in repeated_residue(form, vi, vj)? {
        let at = piece.inclusion.eval(&AmbientPoint::new(vec![]).expect("point")).expect("constant inclusion");
        let val = piece.value().expect("point residue");
        let old = m.remove(&at).unwrap_or_else(TauScalar::zero);
        let sum = old.add(&val);
        if !sum.is_zero() {
            m.insert(at, sum);
        }
    }
    Ok(m)
}

// 3. res_{i,j} = −res_{j,i}.
fn antisymmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut pairs = 0;
    for trial in 0..50 {
        let form = sample::surface_form(&mut rng).map_err(err)?;
        for (i, vi) in form.poles.iter().enumerate() {
            for vj in &form.poles[i + 1..] {
                let (ij, ji) = match (point_values(&form, vi, vj), point_values(&form, vj, vi)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(polaris::Error::NotTransverseComponents(_)), Err(polaris::Error::NotTransverseComponents(_))) => continue,
                    (Err(e), _) | (_, Err(e)) => return Err(format!("trial {trial}: {e}")),
                };
                let neg: PointMap = ji.into_iter().map(|(p, c)| (p, c.neg())).collect();
                ensure(ij == neg, || format!("trial {trial}: {} / {}", vi, vj))?;
                pairs += 1;
            }
        }
    }
    ensure(pairs >= 50, || format!("only {pairs} crossing pairs"))?;
    Ok(format!("50 forms, {pairs} pole pairs"))
}

// 4. Residues of Σ cₖ dz/(z − pₖ) are cₖ at pₖ and −Σcₖ at ∞, summing to 0.
fn residue_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let p1 = AmbientSpace::projective(1).map_err(err)?;
    let o = Chart::origin(&p1);
    let mut with_inf = 0;
    for trial in 0..50 {
        let n = rng.gen_range(3..=5);
        let ps = sample::distinct(&mut rng, n);
        let cs: Vec<TauScalar> = (0..n).map(|_| sample::nonzero(&mut rng)).collect();
        let mut cs = cs;
        if trial % 2 == 0 {
            let rest = cs[..n - 1].iter().fold(TauScalar::zero(), |a, c| a.add(c));
            cs[n - 1] = rest.neg();
        }
        let total = cs.iter().fold(TauScalar::zero(), |a, c| a.add(c));
        let g = ps.iter().zip(&cs).fold(RationalFunction::zero(), |acc, (p, c)| {
            acc.add(&RationalFunction::new(MultiPoly::constant(c.clone()), shifted("z", p)).expect("nonzero"))
        });
        let mut poles: Vec<PoleComponent> = ps.iter().map(|p| PoleComponent::from_local(&p1, &o, &shifted("z", p)).expect("pole")).collect();
        if !total.is_zero() {
            poles.push(PoleComponent::infinity(&p1, &Symbol::new("z")).map_err(err)?);
            with_inf += 1;
        }
        let form = DifferentialForm::new(&p1, o.clone(), ExteriorForm::top(p1.origin_coords(), g), poles).map_err(err)?;
        let mut expected: PointMap = ps.iter().cloned().map(|p| line_point(&p)).zip(cs.iter().cloned()).collect();
        if !total.is_zero() {
            expected.insert(infinity_point(), total.neg());
        }
        let mut got = PointMap::new();
        for piece in residue_all(&form).map_err(err)? {
            let at = piece.inclusion.eval(&AmbientPoint::new(vec![]).expect("point")).ok_or("non-constant residue")?;
            got.insert(at, piece.value().ok_or("not a point residue")?);
        }
        ensure(got == expected, || format!("trial {trial}: residues differ"))?;
        let sum = p1_residue_sum(&form).map_err(err)?;
        ensure(sum.is_zero(), || format!("trial {trial}: sum {}", sum.render().0))?;
    }
    ensure(with_inf > 0, || "no form with a pole at infinity".into())?;
    Ok(format!("50 forms, {with_inf} with a pole at infinity"))
}

fn catalog_maps(p1: &AmbientSpace) -> Vec<(&'static str, LineMap)> {
    let z = r("z");
    vec![
        ("z^2", LineMap::new(p1, z.mul(&z)).expect("map")),
        ("z^3", LineMap::new(p1, z.mul(&z).mul(&z)).expect("map")),
        ("(z^2+1)/z", LineMap::new(p1, z.mul(&z).add(&RationalFunction::one()).div(&z).expect("nonzero")).expect("map")),
    ]
}

fn line_form(p1: &AmbientSpace, g: RationalFunction) -> DifferentialForm {
    DifferentialForm::with_inferred_poles(p1, Chart::origin(p1), ExteriorForm::top(p1.origin_coords(), g)).expect("form")
}

// 5. res f_*ω = f̄_* res ω at the image of every pole of ω.
fn residue_commutes() -> Outcome {
    let p1 = AmbientSpace::projective(1).map_err(err)?;
    let z = r("z");
    let forms = vec![
        ("dz/z", z.inv().expect("nonzero")),
        ("dz/(z-1)", z.sub(&RationalFunction::one()).inv().expect("nonzero")),
        ("z dz/(z^2-4)", z.div(&z.mul(&z).sub(&k(&s(4)))).expect("nonzero")),
    ];
    let mut checks = 0;
    for (mname, f) in catalog_maps(&p1) {
        for (wname, g) in &forms {
            let w = line_form(&p1, g.clone());
            for pole in &w.poles {
                let at = pole_point(&p1, pole)?;
                let rep = check_residue_commute(&f, &w, &at).map_err(err)?;
                ensure(rep.equal, || {
                    format!("{mname} on {wname} at {}: {} vs {}", at.render(), rep.pushed_residue.render().0, rep.residue_pushed.render().0)
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("9 map/form pairs, {checks} poles"))
}

fn pole_point(p1: &AmbientSpace, pole: &PoleComponent) -> Result<AmbientPoint, String> {
    let o = Chart::origin(p1);
    let local = pole.local(p1, &o);
    if local.is_constant() {
        return Ok(infinity_point());
    }
    let u = local.to_univariate(&Symbol::new("z")).ok_or("not univariate")?;
    let root = u.coeff(0).neg().div(&u.coeff(1)).ok_or("not linear")?;
    Ok(line_point(&root))
}

// 6. f_*(f^*ω) = deg(f)·ω.
fn degree_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let p1 = AmbientSpace::projective(1).map_err(err)?;
    let mut count = 0;
    for (mname, f) in catalog_maps(&p1) {
        let d = s(f.degree() as i64);
        for trial in 0..8 {
            let n = rng.gen_range(2..=4);
            let inf = rng.gen_bool(0.5);
            let w = sample::line_form(&mut rng, n, inf).map_err(err)?;
            let back = w.pullback(&f.as_homog().map_err(err)?).map_err(err)?;
            let there = pushforward(&f, &back).map_err(err)?.to_origin().map_err(err)?;
            let want = w.scale(&d).to_origin().map_err(err)?;
            ensure(there.local == want.local, || format!("{mname}, trial {trial}: {} vs {}", there.local.render(), want.local.render()))?;
            count += 1;
        }
    }
    Ok(format!("{count} randomized forms over 3 maps"))
}

struct Case {
    name: String,
    a: PrimeChain,
    b: PrimeChain,
    orient: PolarOrientation,
    expected: TauScalar,
    frames: Vec<(ConormalFrame, ConormalFrame)>,
}

fn frame(coords: &[Symbol], polys: &[&RationalFunction], scale: RationalFunction) -> ConormalFrame {
    let mut lambda = ExteriorForm::function(coords.to_vec(), scale);
    for p in polys {
        lambda = lambda.wedge(&ExteriorForm::differential(coords.to_vec(), p)).expect("degree");
    }
    ConormalFrame { lambda }
}

/// `{x = a}` carrying `c dy/y` against `{y = b}` carrying `e dx/x` on
/// (P¹)² with the log orientation. At `(a, b)` the quotient
/// `α∧β/μ = (ce/ab) dy∧dx / (dx∧dy/ab)` is `−ce`.
fn square_case(a: i64, b: i64, c: i64, e: i64) -> Case {
    let orient = log_orientation(2);
    let m = orient.space.clone();
    let alpha = ExteriorForm::differential(syms(&["y"]), &r("y")).scale(&RationalFunction::new(MultiPoly::int(c), v("y")).expect("nonzero"));
    let beta = ExteriorForm::differential(syms(&["x"]), &r("x")).scale(&RationalFunction::new(MultiPoly::int(e), v("x")).expect("nonzero"));
    let left = PrimeChain::hyperplane(&m, &shifted("x", &s(a)), alpha, None).expect("chain");
    let right = PrimeChain::hyperplane(&m, &shifted("y", &s(b)), beta, None).expect("chain");
    let expected = s(-c * e);
    let coords = m.origin_coords();
    let frames = vec![
        (frame(&coords, &[&r("x")], r("x").add(&k(&s(7)))), frame(&coords, &[&r("y")], k(&s(-3)))),
        (frame(&coords, &[&r("x")], k(&TauScalar::i())), frame(&coords, &[&r("y")], r("y").mul(&r("y")).add(&RationalFunction::one()))),
    ];
    Case { name: format!("P1xP1 x={a} y={b}"), a: left, b: right, orient, expected, frames }
}

/// The curve `{x=t, y=t, z=b}` with `dt/t` against `{y=c}` carrying
/// `τ⁻¹ dx/(x−e) ∧ dz/z` in (P¹)³.
fn cube_case(b: i64, c: i64, e: i64) -> Case {
    let orient = log_orientation(3);
    let m = orient.space.clone();
    let o = Chart::origin(&m);
    let assign = [(Symbol::new("x"), r("t")), (Symbol::new("y"), r("t")), (Symbol::new("z"), k(&s(b)))].into_iter().collect();
    let curve = PrimeChain::graph(&m, &o, &syms(&["t"]), &assign, dlog(&["t"], &r("t")), None).expect("chain");
    let beta = ExteriorForm::differential(syms(&["x", "z"]), &r("x"))
        .scale(&r("x").sub(&k(&s(e))).inv().expect("nonzero"))
        .wedge(&dlog(&["x", "z"], &r("z")))
        .expect("wedge")
        .scale_scalar(&TauScalar::tau().inv().expect("nonzero"));
    let surface = PrimeChain::hyperplane(&m, &shifted("y", &s(c)), beta, None).expect("chain");
    // At P = (c, c, b): α = dt/t, β = τ⁻¹dx∧dz/((x−e)z), μ = dx∧dy∧dz/(xyz).
    // Tangent of the curve is (1,1,0), so α∧β/μ = −c/(τ(c−e)).
    let expected = s(-c).div(&TauScalar::tau().mul(&s(c - e))).expect("nonzero");
    let coords = m.origin_coords();
    let xy = r("x").sub(&r("y"));
    let frames = vec![
        (frame(&coords, &[&xy, &r("z")], r("x").add(&k(&s(1)))), frame(&coords, &[&r("y")], r("x").add(&k(&s(2))))),
        (frame(&coords, &[&r("z"), &xy], k(&s(5))), frame(&coords, &[&r("y")], r("z").mul(&r("y")))),
    ];
    Case { name: format!("P1xP1xP1 curve z={b} against y={c}"), a: curve, b: surface, orient, expected, frames }
}

// 7. The (P¹)² example, lam2 against lam1 + hp0_class, frame invariance.
fn intersections() -> Outcome {
    let square = square_case(2, 3, 1, 1);
    let n = intersection_number(&PolarChain::single(square.a.clone()), &PolarChain::single(square.b.clone()), &square.orient).map_err(err)?;
    ensure(n.number() == Some(&s(-1)), || format!("square example gave {:?}", n.number().map(|x| x.render().0)))?;
    let cases = vec![square, square_case(5, -1, 1, 1), square_case(-4, 6, 3, -2), cube_case(2, 3, 5), cube_case(-1, 4, -2)];
    for case in &cases {
        let n = intersection_number(&PolarChain::single(case.a.clone()), &PolarChain::single(case.b.clone()), &case.orient).map_err(err)?;
        let lam2 = n.number().ok_or("not a number")?.clone();
        ensure(lam2 == case.expected, || format!("{}: lam2 {} expected {}", case.name, lam2.render().0, case.expected.render().0))?;
        let p = intersection_product(&case.a, &case.b, &case.orient).map_err(err)?;
        let IntersectionKind::ProductCycle(cycle) = &p.kind else { return Err(format!("{}: no product cycle", case.name)) };
        let lam1 = hp0_class(cycle).map_err(err)?;
        ensure(lam1 == lam2, || format!("{}: lam1 {} lam2 {}", case.name, lam1.render().0, lam2.render().0))?;
        for (la, lb) in &case.frames {
            let q = intersection_product_with(&case.a, &case.b, &case.orient, la, lb).map_err(err)?;
            ensure(q == p, || format!("{}: frame change altered the product", case.name))?;
        }
    }
    Ok(format!("square = -1, {} cases, 2 frame changes each", cases.len()))
}

// 8. Linking number with two bounding chains.
fn linking() -> Outcome {
    let (b, c, e) = (2, 3, 5);
    let case = cube_case(b, c, e);
    let m = case.orient.space.clone();
    let o = Chart::origin(&m);
    let assign = [(Symbol::new("x"), k(&s(e))), (Symbol::new("y"), k(&s(c)))].into_iter().collect();
    let c2 = PrimeChain::graph(&m, &o, &syms(&["z"]), &assign, dlog(&["z"], &r("z")).neg(), None).map_err(err)?;
    let (c1, c2, s2) = (PolarChain::single(case.a), PolarChain::single(c2), PolarChain::single(case.b));
    let cap = PrimeChain::hyperplane(&m, &shifted("z", &s(7)), dlog(&["x", "y"], &r("x")).wedge(&dlog(&["x", "y"], &r("y"))).map_err(err)?, None)
        .map_err(err)?;
    let s2b = s2.add(&PolarChain::single(cap)).map_err(err)?;
    let expected = s(-c).div(&TauScalar::tau().mul(&s(c - e))).expect("nonzero");
    let first = linking_number(&c1, &c2, &s2, &case.orient).map_err(err)?;
    let second = linking_number(&c1, &c2, &s2b, &case.orient).map_err(err)?;
    ensure(first.value == expected, || format!("S2 gave {}", first.value.render().0))?;
    ensure(second.value == expected, || format!("S2' gave {}", second.value.render().0))?;
    ensure(s2 != s2b, || "bounding chains coincide".into())?;
    Ok(format!("value {} for both bounding chains", expected.render().0))
}

// 9. HP reports.
fn hp_reports() -> Outcome {
    let p1 = hp_report("P1").map_err(err)?;
    ensure(p1.dims.get(&0) == Some(&1) && p1.dims.get(&1) == Some(&0) && p1.euler() == Some(1), || format!("P1: {}", p1.render()))?;
    for g in 0..6u64 {
        let c = hp_report(&format!("curve({g})")).map_err(err)?;
        ensure(c.dims.get(&0) == Some(&1) && c.dims.get(&1) == Some(&g), || format!("genus {g}: {}", c.render()))?;
        ensure(c.euler() == Some(1 - g as i64), || format!("genus {g}: euler {:?}", c.euler()))?;
    }
    Ok("P1 and genus 0..5".into())
}

// 10. hp0_class(∂c) = 0 for random 1-chains on P¹.
fn chain_residue_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut points = 0;
    for trial in 0..30 {
        let c = sample::line_chain(&mut rng).map_err(err)?;
        for t in &c.terms {
            ensure(validate_chain_form(&t.form).valid, || format!("trial {trial}: inadmissible sample"))?;
        }
        let d = boundary(&c).map_err(err)?;
        points += d.terms.len();
        let class = hp0_class(&d).map_err(err)?;
        ensure(class.is_zero(), || format!("trial {trial}: class {}", class.render().0))?;
    }
    ensure(points > 0, || "all boundaries empty".into())?;
    Ok(format!("30 chains, {points} boundary points"))
}

fn golden_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden"))
}

// 11. Golden transcripts and diagnostic spans.
fn cli_transcripts() -> Outcome {
    let sessions = ["two_pole", "boundary", "residues", "intersect", "link"];
    for name in sessions {
        let src = std::fs::read_to_string(golden_dir().join(format!("{name}.pol"))).map_err(|e| format!("{name}: {e}"))?;
        for format in [Format::Text, Format::Machine] {
            let suffix = if format == Format::Text { "out" } else { "machine" };
            let want = std::fs::read_to_string(golden_dir().join(format!("{name}.{suffix}"))).map_err(|e| format!("{name}.{suffix}: {e}"))?;
            let opts = Options { format, seed: 0 };
            let first = run_source(&src, &opts).text();
            let second = run_source(&src, &opts).text();
            ensure(first == second, || format!("{name}.{suffix}: runs differ"))?;
            ensure(first == want, || format!("{name}.{suffix}: transcript differs from golden file"))?;
        }
    }
    let malformed = [("malformed_paren", "2:30"), ("malformed_name", "3:10"), ("malformed_caret", "2:35")];
    for (name, span) in malformed {
        let src = std::fs::read_to_string(golden_dir().join(format!("{name}.pol"))).map_err(|e| format!("{name}: {e}"))?;
        let want = std::fs::read_to_string(golden_dir().join(format!("{name}.machine"))).map_err(|e| format!("{name}.machine: {e}"))?;
        let t = run_source(&src, &Options { format: Format::Machine, seed: 0 });
        ensure(!t.ok(), || format!("{name} accepted"))?;
        let text = t.text();
        ensure(text == want, || format!("{name}: transcript differs from golden file"))?;
        let diag = format!("DIAG error {span} ");
        ensure(text.lines().filter(|l| l.starts_with("DIAG")).all(|l| l.starts_with(&diag)) && text.contains(&diag), || {
            format!("{name}: expected a diagnostic at {span}, got {text:?}")
        })?;
    }
    Ok(format!("{} sessions in two formats, 3 malformed inputs", sessions.len()))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome, Option<Duration>)> = vec![
        ("two-pole boundary identity", two_pole_boundary, Some(Duration::from_secs(1))),
        ("boundary squared vanishes", boundary_squared_suite, Some(Duration::from_secs(5))),
        ("repeated-residue antisymmetry", antisymmetry, None),
        ("residue theorem on P1", residue_theorem, None),
        ("residues commute with push-forward", residue_commutes, None),
        ("push-pull degree identity", degree_identity, None),
        ("intersection number and product", intersections, None),
        ("linking number", linking, None),
        ("HP reports", hp_reports, None),
        ("chain-level residue theorem", chain_residue_theorem, None),
        ("CLI transcripts and diagnostics", cli_transcripts, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:.0?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
