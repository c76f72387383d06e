//! Dense linear algebra over an exact field.

use super::field::Field;

pub type Matrix<F> = Vec<Vec<F>>;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for j in 0..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[i][j].sub(&f.mul(&m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

pub fn transpose<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn det<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return F::zero() };
        if p != c {
            a.swap(p, c);
            acc = acc.neg();
        }
        acc = acc.mul(&a[c][c]);
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..n {
                let v = a[i][j].sub(&f.mul(&a[c][j]));
                a[i][j] = v;
            }
        }
    }
    acc
}

/// Solves `m·x = b` when the system has a unique solution.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let n = m.first().map_or(0, Vec::len);
    let mut aug: Matrix<F> = m.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect()).collect();
    let piv = rref(&mut aug);
    if piv.len() != n || piv.contains(&n) {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational as Q;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        rows.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect()
    }

    #[test]
    fn determinant_and_rank() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(det(&a), Q::from(5));
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), Q::from(-1));
    }

    #[test]
    fn unique_solution() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[Q::from(3), Q::from(1)]).unwrap();
        assert_eq!(x, vec![Q::from(2), Q::from(1)]);
    }
}
