mod common;

use std::collections::HashMap;

use common::*;
use polaris::algebra::quotient::trace_mod;
use polaris::algebra::{Field, MultiPoly, RationalFunction, Symbol, TauScalar};
use polaris::chains::{boundary, normalize, PolarChain, PrimeChain};
use polaris::cli::parse_checked;
use polaris::forms::{DifferentialForm, ExteriorForm};
use polaris::intersect::{intersection_number, intersection_product, intersection_product_with, ConormalFrame, PolarOrientation};
use polaris::pushforward::{pushforward, LineMap};
use polaris::residue::{residue_all, residue_at_point};
use polaris::spaces::{transition_point, AmbientPoint, AmbientSpace, Chart};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = TauScalar> {
    (-6i64..=6, 1i64..=3, -3i64..=3).prop_map(|(a, d, b)| {
        TauScalar::from_frac(a, d).add(&TauScalar::from(b).mul(&TauScalar::i()))
    })
}

fn nonzero() -> impl Strategy<Value = TauScalar> {
    gauss().prop_filter("nonzero", |c| !c.is_zero())
}

fn small_poly(var: &'static str) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(-4i64..=4, 1..4).prop_map(move |cs| {
        cs.iter().enumerate().fold(MultiPoly::zero(), |acc, (i, c)| acc.add(&MultiPoly::int(*c).mul(&v(var).pow(i as u32))))
    })
}

fn one_form(coords: &[&str]) -> impl Strategy<Value = ExteriorForm> {
    let names: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    prop::collection::vec(-3i64..=3, coords.len()).prop_map(move |cs| {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut out = ExteriorForm::zero(syms(&refs), 1);
        for (i, c) in cs.iter().enumerate() {
            let f = r(&names[i]).add(&k(&s(*c)));
            out = out.add(&ExteriorForm::differential(syms(&refs), &r(&names[(i + 1) % names.len()])).scale(&f)).expect("same coords");
        }
        out
    })
}

/// `{x = a}` with `c dy/y` and `{y = b}` with `e dx/x` on (P¹)².
fn square(a: i64, b: i64, c: &TauScalar, e: &TauScalar) -> (PrimeChain, PrimeChain, PolarOrientation) {
    let orient = log_orientation(2);
    let alpha = dlog(&["y"], &r("y")).scale_scalar(c);
    let beta = dlog(&["x"], &r("x")).scale_scalar(e);
    let left = PrimeChain::hyperplane(&orient.space, &shifted("x", &s(a)), alpha, None).expect("chain");
    let right = PrimeChain::hyperplane(&orient.space, &shifted("y", &s(b)), beta, None).expect("chain");
    (left, right, orient)
}

fn number(a: &PolarChain, b: &PolarChain, orient: &PolarOrientation) -> TauScalar {
    intersection_number(a, b, orient).expect("transverse").number().expect("number").clone()
}

fn line() -> AmbientSpace {
    AmbientSpace::projective(1).expect("space")
}

fn dlog_line(p: &TauScalar, c: &TauScalar) -> DifferentialForm {
    let p1 = line();
    let g = RationalFunction::new(MultiPoly::constant(c.clone()), shifted("z", p)).expect("nonzero");
    DifferentialForm::with_inferred_poles(&p1, Chart::origin(&p1), ExteriorForm::top(p1.origin_coords(), g)).expect("form")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trace_is_additive(g1 in small_poly("z"), g2 in small_poly("z"), a in -4i64..=4, b in 1i64..=4) {
        let z = Symbol::new("z");
        let h = v("z").pow(2).add(&MultiPoly::int(a).mul(&v("z"))).add(&MultiPoly::int(b));
        let (f1, f2) = (RationalFunction::from_poly(g1), RationalFunction::from_poly(g2));
        let lhs = trace_mod(&f1.add(&f2), &h, &z).unwrap();
        let rhs = trace_mod(&f1, &h, &z).unwrap().add(&trace_mod(&f2, &h, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded(a in one_form(&["x", "y", "z"]), b in one_form(&["x", "y", "z"]), c in one_form(&["x", "y", "z"])) {
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().neg());
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn transitions_round_trip(x in nonzero(), y in nonzero()) {
        let p2 = AmbientSpace::projective(2).unwrap();
        let charts = p2.charts();
        let start = vec![x, y];
        for to in &charts[1..] {
            let there = transition_point(&p2, &start, &charts[0], to).unwrap();
            let back = transition_point(&p2, &there, to, &charts[0]).unwrap();
            prop_assert_eq!(&back, &start);
        }
    }

    #[test]
    fn normalize_is_idempotent_and_linear(ps in prop::collection::vec((-3i64..=3, nonzero()), 1..5), c in nonzero()) {
        let p1 = line();
        let terms: Vec<PrimeChain> = ps.iter().map(|(p, a)| PrimeChain::point(&p1, &line_point(&s(*p)), a.clone()).unwrap()).collect();
        let chain = PolarChain::from_terms(&p1, terms).unwrap();
        let once = normalize(&chain).unwrap();
        prop_assert_eq!(normalize(&once).unwrap(), once.clone());
        let doubled = normalize(&chain.add(&chain).unwrap()).unwrap();
        prop_assert_eq!(doubled, normalize(&once.scale(&s(2))).unwrap());
        prop_assert_eq!(normalize(&chain.scale(&c)).unwrap(), normalize(&once.scale(&c)).unwrap());
    }

    #[test]
    fn boundary_is_linear(p in gauss(), q in gauss(), a in nonzero(), b in nonzero()) {
        prop_assume!(p != q);
        let c1 = PolarChain::single(PrimeChain::whole(dlog_line(&p, &a).add(&dlog_line(&q, &a.neg())).unwrap()).unwrap());
        let c2 = PolarChain::single(PrimeChain::whole(dlog_line(&q, &b)).unwrap());
        let lhs = boundary(&c1.add(&c2).unwrap()).unwrap();
        let rhs = normalize(&boundary(&c1).unwrap().add(&boundary(&c2).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let scaled = boundary(&c1.scale(&b)).unwrap();
        prop_assert_eq!(scaled, normalize(&boundary(&c1).unwrap().scale(&b)).unwrap());
    }

    #[test]
    fn residues_match_laurent_coefficients(p in gauss(), q in gauss(), a in nonzero(), b in nonzero()) {
        prop_assume!(p != q);
        let w = dlog_line(&p, &a).add(&dlog_line(&q, &b)).unwrap();
        for piece in residue_all(&w).unwrap() {
            let at = piece.inclusion.eval(&AmbientPoint::new(vec![]).unwrap()).unwrap();
            prop_assert_eq!(piece.value().unwrap(), residue_at_point(&w, &at).unwrap());
        }
    }

    #[test]
    fn pushforward_is_linear(p in gauss(), q in gauss(), a in nonzero(), b in nonzero(), which in 0usize..3) {
        prop_assume!(p != q);
        let z = r("z");
        let maps = [z.mul(&z), z.mul(&z).mul(&z), z.mul(&z).add(&RationalFunction::one()).div(&z).unwrap()];
        let f = LineMap::new(&line(), maps[which].clone()).unwrap();
        let (w1, w2) = (dlog_line(&p, &a), dlog_line(&q, &b));
        let lhs = pushforward(&f, &w1.add(&w2).unwrap()).unwrap().to_origin().unwrap();
        let rhs = pushforward(&f, &w1).unwrap().add(&pushforward(&f, &w2).unwrap()).unwrap().to_origin().unwrap();
        prop_assert_eq!(lhs.local, rhs.local);
    }

    #[test]
    fn intersection_is_bilinear(a in -4i64..=4, b in -4i64..=4, c1 in nonzero(), c2 in nonzero(), e in nonzero(), k2 in nonzero()) {
        prop_assume!(a != 0 && b != 0);
        let (l1, r1, mu) = square(a, b, &c1, &e);
        let (l2, _, _) = square(a, b, &c2, &e);
        let (a1, a2, bb) = (PolarChain::single(l1), PolarChain::single(l2), PolarChain::single(r1));
        let sum = number(&a1.add(&a2).unwrap(), &bb, &mu);
        prop_assert_eq!(sum, number(&a1, &bb, &mu).add(&number(&a2, &bb, &mu)));
        prop_assert_eq!(number(&a1, &bb.scale(&k2), &mu), number(&a1, &bb, &mu).mul(&k2));
    }

    #[test]
    fn intersection_is_graded_symmetric(a in -4i64..=4, b in -4i64..=4, c in nonzero(), e in nonzero()) {
        prop_assume!(a != 0 && b != 0);
        let (l, rr, mu) = square(a, b, &c, &e);
        let (l, rr) = (PolarChain::single(l), PolarChain::single(rr));
        prop_assert_eq!(number(&rr, &l, &mu), number(&l, &rr, &mu).neg());
    }

    #[test]
    fn product_ignores_conormal_frames(a in 1i64..=4, b in 1i64..=4, f1 in nonzero(), f2 in nonzero(), shift in 5i64..=9) {
        let (l, rr, mu) = square(a, b, &TauScalar::one(), &TauScalar::one());
        let coords = mu.space.origin_coords();
        let la = ConormalFrame { lambda: ExteriorForm::differential(coords.clone(), &r("x")).scale(&r("y").add(&k(&s(shift))).mul(&k(&f1))) };
        let lb = ConormalFrame { lambda: ExteriorForm::differential(coords, &r("y")).scale(&k(&f2)) };
        prop_assert_eq!(intersection_product_with(&l, &rr, &mu, &la, &lb).unwrap(), intersection_product(&l, &rr, &mu).unwrap());
    }
}

#[test]
fn cube_pairing_is_symmetric() {
    // A curve against a surface in (P¹)³: (−1)^(1·2) = 1.
    let mu = log_orientation(3);
    let m = mu.space.clone();
    let assign: HashMap<Symbol, RationalFunction> =
        [(Symbol::new("x"), r("t")), (Symbol::new("y"), r("t")), (Symbol::new("z"), k(&s(2)))].into_iter().collect();
    let curve = PrimeChain::graph(&m, &Chart::origin(&m), &syms(&["t"]), &assign, dlog(&["t"], &r("t")), None).unwrap();
    let beta = dlog(&["x", "z"], &r("x").sub(&k(&s(5)))).wedge(&dlog(&["x", "z"], &r("z"))).unwrap();
    let surface = PrimeChain::hyperplane(&m, &shifted("y", &s(3)), beta, None).unwrap();
    let (c, sf) = (PolarChain::single(curve), PolarChain::single(surface));
    assert_eq!(number(&c, &sf, &mu), number(&sf, &c, &mu));
}

#[test]
fn golden_sessions_reparse() {
    let dir = std::path::Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden"));
    for name in ["two_pole", "boundary", "residues", "intersect", "link"] {
        let src = std::fs::read_to_string(dir.join(format!("{name}.pol"))).unwrap();
        let once = parse_checked(&src).unwrap().to_string();
        let twice = parse_checked(&once).unwrap().to_string();
        assert_eq!(once, twice, "{name}");
    }
}
