use std::collections::BTreeSet;

use crate::algebra::quotient::bareiss_det;
use crate::algebra::{gcd, MultiPoly, Symbol};
use crate::spaces::{common_zero, Decision};

use super::form::DifferentialForm;

/// Outcome of checking that a form may sit on a polar chain.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub valid: bool,
    pub problems: Vec<String>,
    pub offending: BTreeSet<String>,
}

impl ValidationReport {
    fn fail(&mut self, msg: String, labels: &[&str]) {
        self.valid = false;
        self.problems.push(msg);
        self.offending.extend(labels.iter().map(|s| s.to_string()));
    }
}

fn gradient(h: &MultiPoly, vars: &[Symbol]) -> Vec<MultiPoly> {
    vars.iter().map(|v| h.derivative(v)).collect()
}

/// Maximal minors of the matrix with the given rows.
fn maximal_minors(rows: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    let k = rows.len();
    let n = rows.first().map(Vec::len).unwrap_or(0);
    let mut out = Vec::new();
    let mut cols: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        let m: Vec<Vec<MultiPoly>> = rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        let d = bareiss_det(m);
        if !d.is_zero() {
            out.push(d);
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cols[i] < n - k + i {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let all: Vec<usize> = (0..n).collect();
    fn rec(all: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..all.len() {
            cur.push(all[i]);
            rec(all, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(&all, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Checks degree, first-order poles on the declared components in every
/// chart, and normal crossings of the components.
pub fn validate_chain_form(form: &DifferentialForm) -> ValidationReport {
    let mut rep = ValidationReport { valid: true, ..Default::default() };
    let space = &form.space;
    let n = space.dim();
    if form.degree() != n {
        rep.fail(format!("degree {} differs from dimension {n}", form.degree()), &[]);
        return rep;
    }
    let labels: Vec<&str> = form.poles.iter().map(|p| p.label.as_str()).collect();
    for i in 0..form.poles.len() {
        for j in (i + 1)..form.poles.len() {
            if !gcd(&form.poles[i].hom, &form.poles[j].hom).is_constant() {
                rep.fail(format!("components {} and {} are not coprime", labels[i], labels[j]), &[labels[i], labels[j]]);
            }
        }
    }
    if !rep.valid {
        return rep;
    }
    for ch in space.charts() {
        let f = match form.in_chart(&ch) {
            Ok(f) => f,
            Err(e) => {
                rep.fail(format!("cannot move form to chart {:?}: {e}", ch.choice), &[]);
                continue;
            }
        };
        let vars = space.chart_coords(&ch);
        let local = f.local_poles(&ch);
        let product = local.iter().fold(MultiPoly::one(), |acc, (_, h)| acc.mul(h));
        for c in f.local.terms().values() {
            let den = c.denom();
            if product.div_exact(den).is_some() {
                continue;
            }
            let mut blamed = false;
            for (i, h) in &local {
                if den.div_exact(&h.mul(h)).is_some() {
                    rep.fail(format!("pole of order at least 2 along {}", labels[*i]), &[labels[*i]]);
                    blamed = true;
                }
            }
            if !blamed {
                let g = gcd(den, &product);
                let extra = den.div_exact(&g).map(|q| q.render()).unwrap_or_else(|| den.render());
                rep.fail(format!("undeclared pole {extra} in chart {:?}", ch.choice), &[]);
            }
        }
        // smoothness of each component
        for (i, h) in &local {
            let mut sys = vec![h.clone()];
            sys.extend(gradient(h, &vars));
            match common_zero(&sys, &[]) {
                Decision::Empty => {}
                Decision::NonEmpty => rep.fail(format!("component {} is singular", labels[*i]), &[labels[*i]]),
                Decision::Undecidable => rep.fail(format!("smoothness of {} is undecidable", labels[*i]), &[labels[*i]]),
            }
        }
        // normal crossings: any r ≤ n components meet with independent
        // gradients, and more than n never meet
        let max_r = (n + 1).min(local.len());
        for r in 2..=max_r {
            for sub in subsets(local.len(), r) {
                let hs: Vec<&MultiPoly> = sub.iter().map(|&k| &local[k].1).collect();
                let mut sys: Vec<MultiPoly> = hs.iter().map(|h| (*h).clone()).collect();
                if r <= n {
                    let rows: Vec<Vec<MultiPoly>> = hs.iter().map(|h| gradient(h, &vars)).collect();
                    // identically dependent gradients leave no minors, so
                    // any common zero is bad
                    sys.extend(maximal_minors(&rows));
                }
                let names: Vec<&str> = sub.iter().map(|&k| labels[local[k].0]).collect();
                match common_zero(&sys, &[]) {
                    Decision::Empty => {}
                    Decision::NonEmpty => rep.fail(format!("components {} do not cross normally", names.join(", ")), &names),
                    Decision::Undecidable => {
                        rep.fail(format!("normal crossing of {} is undecidable", names.join(", ")), &names)
                    }
                }
            }
        }
    }
    rep.problems.dedup();
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, RationalFunction};
    use crate::forms::{DifferentialForm, PoleComponent};
    use crate::spaces::{AmbientSpace, Chart};

    fn inv(p: MultiPoly) -> RationalFunction {
        RationalFunction::new(MultiPoly::one(), p).unwrap()
    }

    #[test]
    fn log_form_on_square_is_valid() {
        let m = AmbientSpace::product_of_lines(2).unwrap();
        let o = Chart::origin(&m);
        let (x, y) = (MultiPoly::var_str("x"), MultiPoly::var_str("y"));
        let poles = vec![
            PoleComponent::from_local(&m, &o, &x).unwrap(),
            PoleComponent::from_local(&m, &o, &y).unwrap(),
            PoleComponent::infinity(&m, &Symbol::new("x")).unwrap(),
            PoleComponent::infinity(&m, &Symbol::new("y")).unwrap(),
        ];
        let w = DifferentialForm::top(&m, inv(x.mul(&y)), poles.clone());
        let rep = validate_chain_form(&w);
        assert!(rep.valid, "{:?}", rep.problems);
        let missing = DifferentialForm::top(&m, inv(x.mul(&y)), poles[..2].to_vec());
        assert!(!validate_chain_form(&missing).valid);
    }

    #[test]
    fn rejects_bad_forms() {
        let p1 = AmbientSpace::projective(1).unwrap();
        let o = Chart::origin(&p1);
        let z = MultiPoly::var_str("z");
        let poles = vec![PoleComponent::from_local(&p1, &o, &z).unwrap(), PoleComponent::infinity(&p1, &Symbol::new("z")).unwrap()];
        let w = DifferentialForm::top(&p1, inv(z.mul(&z)), poles);
        let rep = validate_chain_form(&w);
        assert!(!rep.valid);
        assert!(rep.problems[0].contains("order at least 2"));
        let dz = DifferentialForm::top(&p1, RationalFunction::one(), vec![]);
        assert!(!validate_chain_form(&dz).valid);

        let m = AmbientSpace::product_of_lines(2).unwrap();
        let (x, y) = (MultiPoly::var_str("x"), MultiPoly::var_str("y"));
        let px = PoleComponent::from_local(&m, &Chart::origin(&m), &x).unwrap();
        let dup = DifferentialForm::top(&m, inv(x.mul(&x)), vec![px.clone(), px.clone()]);
        assert!(validate_chain_form(&dup).problems[0].contains("not coprime"));

        let p2 = AmbientSpace::projective(2).unwrap();
        let o2 = Chart::origin(&p2);
        let para = x.sub(&y.mul(&y));
        let tangent = vec![
            PoleComponent::from_local(&p2, &o2, &x).unwrap(),
            PoleComponent::from_local(&p2, &o2, &para).unwrap(),
        ];
        let w = DifferentialForm::top(&p2, inv(x.mul(&para)), tangent);
        let rep = validate_chain_form(&w);
        assert!(rep.problems.iter().any(|p| p.contains("do not cross normally")), "{:?}", rep.problems);
    }

    #[test]
    fn three_lines_in_the_plane() {
        let p2 = AmbientSpace::projective(2).unwrap();
        let o = Chart::origin(&p2);
        let (x, y) = (MultiPoly::var_str("x"), MultiPoly::var_str("y"));
        let l = x.add(&y).sub(&MultiPoly::one());
        let poles: Vec<PoleComponent> =
            [&x, &y, &l].iter().map(|h| PoleComponent::from_local(&p2, &o, h).unwrap()).collect();
        let w = DifferentialForm::top(&p2, inv(x.mul(&y).mul(&l)), poles);
        let rep = validate_chain_form(&w);
        assert!(rep.valid, "{:?}", rep.problems);
        let inferred = w.inferred_poles().unwrap();
        assert_eq!(inferred.len(), 3);
    }
}
