//! Determinantal ideals.

use crate::module::ModMatrix;
use crate::poly::{Poly, PolyRing};
use crate::quotient::IdealA;

/// Determinant over `S` of a square matrix given as rows: cofactor expansion
/// up to size 4, fraction-free elimination above.
pub fn determinant(s: &PolyRing, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n <= 4 {
        cofactor(s, m)
    } else {
        bareiss(s, m.to_vec())
    }
}

fn cofactor(s: &PolyRing, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    match n {
        0 => s.one(),
        1 => m[0][0].clone(),
        2 => s.sub(&s.mul(&m[0][0], &m[1][1]), &s.mul(&m[0][1], &m[1][0])),
        _ => {
            let mut acc = Poly::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = s.mul(&m[0][c], &cofactor(s, &minor));
                acc = if c % 2 == 0 { s.add(&acc, &term) } else { s.sub(&acc, &term) };
            }
            acc
        }
    }
}

fn bareiss(s: &PolyRing, mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let mut sign = false;
    let mut prev = s.one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = s.sub(&s.mul(&m[k][k], &m[i][j]), &s.mul(&m[i][k], &m[k][j]));
                m[i][j] = s.div_exact(&num, &prev).expect("fraction-free step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        s.neg(&det)
    } else {
        det
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `k`-element subsets of `0..n` in lexicographic order.
pub fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// `I_u(M)`: unit ideal for `u <= 0`, zero ideal when `u` exceeds a dimension.
pub fn minor_ideal(m: &ModMatrix, u: i64) -> IdealA {
    let ring = m.ring();
    if u <= 0 {
        return IdealA::unit(ring);
    }
    let u = u as usize;
    if u > m.rows() || u > m.cols() {
        return IdealA::zero(ring);
    }
    let s = ring.poly();
    let mut gens = Vec::new();
    for rows in subsets(m.rows(), u) {
        for cols in subsets(m.cols(), u) {
            let sub: Vec<Vec<Poly>> = rows.iter().map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect()).collect();
            let det = ring.reduce(&determinant(s, &sub));
            if !det.is_zero() && !gens.contains(&det) {
                gens.push(det);
            }
        }
    }
    IdealA::new(ring, &gens)
}

/// The largest `u` with `I_u(M) != 0` in `A`.
pub fn matrix_rank(m: &ModMatrix) -> usize {
    let max = m.rows().min(m.cols());
    (1..=max).rev().find(|&u| !minor_ideal(m, u as i64).is_zero()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Field, MonomialOrder};

    #[test]
    fn bareiss_agrees_with_cofactors() {
        let s = PolyRing::new(&["x", "y", "z"], Field::Rational, MonomialOrder::DegRevLex).unwrap();
        let texts = [
            ["x", "y", "0", "1", "z"],
            ["1", "x+y", "z", "0", "2"],
            ["y", "0", "x", "z", "1"],
            ["z", "1", "0", "x", "y"],
            ["0", "x*y", "1", "y", "x"],
        ];
        let m: Vec<Vec<Poly>> = texts.iter().map(|r| r.iter().map(|t| s.parse(t).unwrap()).collect()).collect();
        assert_eq!(bareiss(&s, m.clone()), cofactor(&s, &m));
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(index_subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(index_subsets(2, 3), Vec::<Vec<usize>>::new());
    }
}
