//! Exact decisions about common zeros of polynomial systems, by linear
//! substitution, univariate roots and resultant projection.

use std::collections::{BTreeSet, HashMap};

use crate::algebra::quotient::resultant;
use crate::algebra::roots::find_roots;
use crate::algebra::{gcd, Field, MultiPoly, Symbol, TauScalar, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Decision {
    Empty,
    NonEmpty,
    Undecidable,
}

fn clean(eqs: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::new();
    for p in eqs {
        if p.is_zero() {
            continue;
        }
        let m = p.monic();
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

/// A variable in which `p` is linear, preferring a constant coefficient.
/// Returns `(v, a, b)` with `p = a·v + b`.
pub fn linear_variable(p: &MultiPoly) -> Option<(Symbol, MultiPoly, MultiPoly, bool)> {
    let mut fallback = None;
    for v in p.variables() {
        if p.degree_in(&v) != 1 {
            continue;
        }
        let cs = p.coefficients_in(&v);
        let (b, a) = (cs[0].clone(), cs[1].clone());
        if a.is_constant() {
            return Some((v, a, b, true));
        }
        if fallback.is_none() {
            fallback = Some((v, a, b, false));
        }
    }
    fallback
}

/// `p(v := −b/a)·a^deg_v(p)`, a polynomial.
fn eliminate_linear(p: &MultiPoly, v: &Symbol, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let cs = p.coefficients_in(v);
    if cs.len() <= 1 {
        return p.clone();
    }
    let d = cs.len() - 1;
    let nb = b.neg();
    let mut out = MultiPoly::zero();
    for (k, c) in cs.iter().enumerate() {
        out = out.add(&c.mul(&nb.pow(k as u32)).mul(&a.pow((d - k) as u32)));
    }
    out
}

fn all_vars(eqs: &[MultiPoly]) -> BTreeSet<Symbol> {
    eqs.iter().flat_map(|p| p.variables()).collect()
}

fn squarefree_univariate(p: &MultiPoly, v: &Symbol) -> UniPoly<TauScalar> {
    let u = p.to_univariate(v).expect("univariate");
    let g = u.gcd(&u.derivative());
    if g.degree().unwrap_or(0) == 0 {
        u
    } else {
        u.div_rem(&g).expect("nonzero").0
    }
}

/// Decides whether `eqs = 0, neqs ≠ 0` has a solution over ℂ.
pub fn common_zero(eqs: &[MultiPoly], neqs: &[MultiPoly]) -> Decision {
    decide(clean(eqs), neqs.to_vec(), 0)
}

const DEPTH_LIMIT: usize = 64;

fn decide(eqs: Vec<MultiPoly>, neqs: Vec<MultiPoly>, depth: usize) -> Decision {
    if depth > DEPTH_LIMIT {
        return Decision::Undecidable;
    }
    let eqs = clean(&eqs);
    if eqs.iter().any(|p| p.is_constant()) {
        return Decision::Empty;
    }
    if neqs.iter().any(|p| p.is_zero()) {
        return Decision::Empty;
    }
    let neqs: Vec<MultiPoly> = neqs.into_iter().filter(|p| !p.is_constant()).collect();
    if eqs.is_empty() {
        return Decision::NonEmpty;
    }
    // linear with unit coefficient
    for (i, p) in eqs.iter().enumerate() {
        if let Some((v, a, b, true)) = linear_variable(p) {
            let sub = MultiPoly::constant(a.constant_value().unwrap().inv().unwrap()).mul(&b.neg());
            let rest: Vec<MultiPoly> =
                eqs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.substitute_one(&v, &sub)).collect();
            let n2 = neqs.iter().map(|q| q.substitute_one(&v, &sub)).collect();
            return decide(rest, n2, depth + 1);
        }
    }
    // univariate equations
    for v in all_vars(&eqs) {
        let uni: Vec<&MultiPoly> = eqs.iter().filter(|p| p.variables().len() == 1 && p.contains_var(&v)).collect();
        if uni.is_empty() {
            continue;
        }
        let mut g = MultiPoly::zero();
        for p in &uni {
            g = gcd(&g, p);
        }
        if g.is_constant() {
            return Decision::Empty;
        }
        let others: Vec<MultiPoly> = eqs.iter().filter(|p| !(p.variables().len() == 1 && p.contains_var(&v))).cloned().collect();
        let sq = squarefree_univariate(&g, &v);
        let split = find_roots(&sq);
        let mut verdict = Decision::Empty;
        for (r, _) in &split.roots {
            let val = MultiPoly::constant(r.clone());
            let rest = others.iter().map(|q| q.substitute_one(&v, &val)).collect();
            let n2 = neqs.iter().map(|q| q.substitute_one(&v, &val)).collect();
            match decide(rest, n2, depth + 1) {
                Decision::NonEmpty => return Decision::NonEmpty,
                Decision::Undecidable => verdict = Decision::Undecidable,
                Decision::Empty => {}
            }
        }
        if split.is_complete() {
            return verdict;
        }
        let rem = MultiPoly::from_univariate(&v, &split.remainder);
        let involved = others.iter().any(|q| q.contains_var(&v)) || neqs.iter().any(|q| q.contains_var(&v));
        if !involved {
            return match decide(others, neqs, depth + 1) {
                Decision::NonEmpty => Decision::NonEmpty,
                _ if verdict == Decision::Undecidable => Decision::Undecidable,
                d => d,
            };
        }
        // project the remaining system along v
        let mut proj: Vec<MultiPoly> = others.iter().filter(|q| !q.contains_var(&v)).cloned().collect();
        for q in others.iter().filter(|q| q.contains_var(&v)) {
            proj.push(resultant(&rem, q, &v));
        }
        let n2: Vec<MultiPoly> = neqs.iter().filter(|q| !q.contains_var(&v)).cloned().collect();
        return match decide(proj, n2, depth + 1) {
            Decision::Empty if verdict == Decision::Empty => Decision::Empty,
            _ => Decision::Undecidable,
        };
    }
    // linear with a nonconstant coefficient: split on a = 0
    for (i, p) in eqs.iter().enumerate() {
        if let Some((v, a, b, false)) = linear_variable(p) {
            let mut zero_branch: Vec<MultiPoly> = eqs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
            zero_branch.push(a.clone());
            zero_branch.push(b.clone());
            let d1 = decide(zero_branch, neqs.clone(), depth + 1);
            if d1 == Decision::NonEmpty {
                return d1;
            }
            let rest = eqs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| eliminate_linear(q, &v, &a, &b)).collect();
            let mut n2: Vec<MultiPoly> = neqs.iter().map(|q| eliminate_linear(q, &v, &a, &b)).collect();
            n2.push(a.clone());
            let d2 = decide(rest, n2, depth + 1);
            return match (d1, d2) {
                (_, Decision::NonEmpty) => Decision::NonEmpty,
                (Decision::Empty, Decision::Empty) => Decision::Empty,
                _ => Decision::Undecidable,
            };
        }
    }
    // projection along a variable
    let vars = all_vars(&eqs);
    let v = vars.iter().next().unwrap().clone();
    let with_v: Vec<&MultiPoly> = eqs.iter().filter(|p| p.contains_var(&v)).collect();
    let without: Vec<MultiPoly> = eqs.iter().filter(|p| !p.contains_var(&v)).cloned().collect();
    if with_v.len() == 1 && !neqs.iter().any(|q| q.contains_var(&v)) {
        let p = with_v[0];
        let cs = p.coefficients_in(&v);
        let lc = cs.last().unwrap().clone();
        let mut n2 = neqs.clone();
        n2.push(lc.clone());
        let d1 = decide(without.clone(), n2, depth + 1);
        if d1 == Decision::NonEmpty {
            return d1;
        }
        let lower = MultiPoly::from_coefficients_in(&v, &cs[..cs.len() - 1]);
        let mut e2 = without;
        e2.push(lc);
        e2.push(lower);
        let d2 = decide(e2, neqs, depth + 1);
        return match (d1, d2) {
            (_, Decision::NonEmpty) => Decision::NonEmpty,
            (Decision::Empty, Decision::Empty) => Decision::Empty,
            _ => Decision::Undecidable,
        };
    }
    let mut proj = without;
    for q in with_v.iter().skip(1) {
        proj.push(resultant(with_v[0], q, &v));
    }
    let n2: Vec<MultiPoly> = neqs.iter().filter(|q| !q.contains_var(&v)).cloned().collect();
    match decide(proj, n2, depth + 1) {
        Decision::Empty => Decision::Empty,
        _ => Decision::Undecidable,
    }
}

/// All solutions of `eqs = 0, neqs ≠ 0` over ℚ(i)(τ) in the variables
/// `vars`. Fails when the solution set is positive-dimensional or has a
/// coordinate outside ℚ(i)(τ).
pub fn solve_points(eqs: &[MultiPoly], neqs: &[MultiPoly], vars: &[Symbol]) -> Result<Vec<HashMap<Symbol, TauScalar>>> {
    let out = solve_rec(clean(eqs), neqs.to_vec(), vars, 0)?;
    let mut dedup: Vec<HashMap<Symbol, TauScalar>> = Vec::new();
    for s in out {
        if !dedup.contains(&s) {
            dedup.push(s);
        }
    }
    Ok(dedup)
}

type Solutions = Vec<HashMap<Symbol, TauScalar>>;

fn without(vars: &[Symbol], v: &Symbol) -> Vec<Symbol> {
    vars.iter().filter(|s| *s != v).cloned().collect()
}

fn value_at(p: &MultiPoly, sol: &HashMap<Symbol, TauScalar>) -> TauScalar {
    p.evaluate(sol).constant_value().unwrap_or_default()
}

fn solve_rec(eqs: Vec<MultiPoly>, neqs: Vec<MultiPoly>, vars: &[Symbol], depth: usize) -> Result<Solutions> {
    if depth > DEPTH_LIMIT {
        return Err(Error::Undetermined("solver depth exceeded".into()));
    }
    let eqs = clean(&eqs);
    if eqs.iter().any(|p| p.is_constant()) || neqs.iter().any(|p| p.is_zero()) {
        return Ok(Vec::new());
    }
    if eqs.is_empty() {
        if !vars.is_empty() {
            return Err(Error::NotTransverse(format!(
                "positive-dimensional solution set in {}",
                vars.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
            )));
        }
        return Ok(vec![HashMap::new()]);
    }
    let keep = |sols: Solutions, neqs: &[MultiPoly]| -> Solutions {
        sols.into_iter().filter(|s| neqs.iter().all(|q| !value_at(q, s).is_zero())).collect()
    };
    for (i, p) in eqs.iter().enumerate() {
        if let Some((v, a, b, true)) = linear_variable(p) {
            let val = b.neg().scale(&a.constant_value().unwrap().inv().unwrap());
            let rest: Vec<MultiPoly> =
                eqs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.substitute_one(&v, &val)).collect();
            let n2: Vec<MultiPoly> = neqs.iter().map(|q| q.substitute_one(&v, &val)).collect();
            let mut sols = solve_rec(rest, n2, &without(vars, &v), depth + 1)?;
            for s in sols.iter_mut() {
                let x = value_at(&val, s);
                s.insert(v.clone(), x);
            }
            return Ok(sols);
        }
    }
    for v in all_vars(&eqs) {
        let uni: Vec<&MultiPoly> = eqs.iter().filter(|p| p.variables().len() == 1 && p.contains_var(&v)).collect();
        if uni.is_empty() {
            continue;
        }
        let mut g = MultiPoly::zero();
        for p in &uni {
            g = gcd(&g, p);
        }
        if g.is_constant() {
            return Ok(Vec::new());
        }
        let split = find_roots(&squarefree_univariate(&g, &v));
        if !split.is_complete() {
            return Err(Error::IrrationalIntersection(format!(
                "{} has no root in Q(i)",
                MultiPoly::from_univariate(&v, &split.remainder)
            )));
        }
        let mut out = Vec::new();
        for (r, _) in &split.roots {
            let val = MultiPoly::constant(r.clone());
            let e = eqs.iter().map(|q| q.substitute_one(&v, &val)).collect();
            let n = neqs.iter().map(|q| q.substitute_one(&v, &val)).collect();
            for mut s in solve_rec(e, n, &without(vars, &v), depth + 1)? {
                s.insert(v.clone(), r.clone());
                out.push(s);
            }
        }
        return Ok(out);
    }
    for (i, p) in eqs.iter().enumerate() {
        if let Some((v, a, b, false)) = linear_variable(p) {
            let mut zero_branch: Vec<MultiPoly> = eqs.clone();
            zero_branch.remove(i);
            zero_branch.push(a.clone());
            zero_branch.push(b.clone());
            let mut out = solve_rec(zero_branch, neqs.clone(), vars, depth + 1)?;
            let rest: Vec<MultiPoly> =
                eqs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| eliminate_linear(q, &v, &a, &b)).collect();
            let mut n2: Vec<MultiPoly> = neqs.iter().map(|q| eliminate_linear(q, &v, &a, &b)).collect();
            n2.push(a.clone());
            for mut s in solve_rec(rest, n2, &without(vars, &v), depth + 1)? {
                let x = value_at(&b, &s).neg().div(&value_at(&a, &s)).expect("a nonzero on this branch");
                s.insert(v.clone(), x);
                out.push(s);
            }
            return Ok(keep(out, &neqs));
        }
    }
    let vars_in = all_vars(&eqs);
    let v = vars_in.iter().next().unwrap().clone();
    let with_v: Vec<&MultiPoly> = eqs.iter().filter(|p| p.contains_var(&v)).collect();
    if with_v.len() < 2 {
        return Err(Error::NotTransverse(format!("cannot isolate {v}")));
    }
    let mut proj: Vec<MultiPoly> = eqs.iter().filter(|p| !p.contains_var(&v)).cloned().collect();
    for q in with_v.iter().skip(1) {
        let r = resultant(with_v[0], q, &v);
        if r.is_zero() {
            return Err(Error::Undetermined(format!("equations share a factor in {v}")));
        }
        proj.push(r);
    }
    let mut out = Vec::new();
    for sol in solve_rec(proj, Vec::new(), &without(vars, &v), depth + 1)? {
        let e = eqs.iter().map(|q| q.evaluate(&sol)).collect();
        let n = neqs.iter().map(|q| q.evaluate(&sol)).collect();
        for lift in solve_rec(e, n, std::slice::from_ref(&v), depth + 1)? {
            let mut full = sol.clone();
            full.extend(lift);
            out.push(full);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> MultiPoly {
        MultiPoly::var_str(s)
    }

    #[test]
    fn circle_is_smooth() {
        let h = v("x").pow(2).add(&v("y").pow(2)).sub(&MultiPoly::int(1));
        let sys = [h.clone(), h.derivative(&Symbol::new("x")), h.derivative(&Symbol::new("y"))];
        assert_eq!(common_zero(&sys, &[]), Decision::Empty);
    }

    #[test]
    fn node_and_cusp_are_singular() {
        let xy = v("x").mul(&v("y"));
        assert_eq!(common_zero(&[xy.clone(), v("x"), v("y")], &[]), Decision::NonEmpty);
        let cusp = v("y").pow(2).sub(&v("x").pow(3));
        let sys = [cusp.clone(), cusp.derivative(&Symbol::new("x")), cusp.derivative(&Symbol::new("y"))];
        assert_eq!(common_zero(&sys, &[]), Decision::NonEmpty);
    }

    #[test]
    fn tangency_detected() {
        let a = v("x");
        let b = v("x").sub(&v("y").pow(2));
        let minor = MultiPoly::int(-2).mul(&v("y"));
        assert_eq!(common_zero(&[a, b, minor], &[]), Decision::NonEmpty);
    }

    #[test]
    fn finite_solutions() {
        let eqs = [v("x").mul(&v("y")).sub(&MultiPoly::int(2)), v("x").sub(&v("y")).sub(&MultiPoly::int(1))];
        let sols = solve_points(&eqs, &[], &[Symbol::new("x"), Symbol::new("y")]).unwrap();
        assert_eq!(sols.len(), 2);
        assert!(solve_points(&[v("x").pow(2).sub(&MultiPoly::int(2))], &[], &[Symbol::new("x")]).is_err());
    }
}
