//! Graded minimalization of generating sets.

use std::collections::BTreeMap;

use crate::poly::gb::{self, Criteria, ModOrder, Vector};
use crate::poly::Poly;
use crate::quotient::QuotientRing;

use super::Column;

/// Degree of a nonzero column whose entries are homogeneous of degree
/// `d - row_deg[r]` for one common `d`.
pub(crate) fn column_degree(col: &[Poly], row_deg: &[i64]) -> Option<i64> {
    let mut deg = None;
    for (e, rd) in col.iter().zip(row_deg) {
        if e.is_zero() {
            continue;
        }
        let d = e.homogeneous_degree()? as i64 + rd;
        match deg {
            None => deg = Some(d),
            Some(prev) if prev != d => return None,
            _ => {}
        }
    }
    deg
}

pub(crate) fn i_part(ring: &QuotientRing, rank: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for t in 0..rank {
        for g in ring.ideal().groebner_basis() {
            out.push(Vector::from_poly(g, t));
        }
    }
    out
}

/// A minimal homogeneous generating set of the submodule of `A^r` spanned by
/// `gens`, with its degrees. Inhomogeneous input is only cleaned of zero and
/// repeated columns.
pub(crate) fn minimal_generators(ring: &QuotientRing, gens: &[Column], row_deg: &[i64]) -> (Vec<Column>, Vec<i64>) {
    let r = row_deg.len();
    let cols: Vec<Column> = gens
        .iter()
        .map(|c| c.iter().map(|e| ring.reduce(e)).collect::<Column>())
        .filter(|c| c.iter().any(|e| !e.is_zero()))
        .collect();
    let degrees: Option<Vec<i64>> = cols.iter().map(|c| column_degree(c, row_deg)).collect();
    let Some(degrees) = degrees else {
        let mut out: Vec<Column> = Vec::new();
        for c in cols {
            if !out.contains(&c) {
                out.push(c);
            }
        }
        let n = out.len();
        return (out, vec![0; n]);
    };

    let order = ModOrder::new(ring.poly().order(), r);
    let mut by_degree: BTreeMap<i64, Vec<Column>> = BTreeMap::new();
    for (c, d) in cols.into_iter().zip(degrees) {
        by_degree.entry(d).or_default().push(c);
    }

    let mut basis = i_part(ring, r);
    let mut kept = Vec::new();
    let mut kept_deg = Vec::new();
    for (d, group) in by_degree {
        let mut pivots: Vec<Vector> = Vec::new();
        let mut fresh = Vec::new();
        for col in group {
            let nf = gb::reduce(&order, &basis, Vector::from_dense(&order, &col, 0), false);
            let mut v = nf.clone();
            while let Some(lead) = v.lead() {
                match pivots.iter().find(|p| {
                    let pl = p.lead().unwrap();
                    pl.comp == lead.comp && pl.mon == lead.mon
                }) {
                    Some(p) => {
                        let c = &lead.coef * &p.lead().unwrap().coef.inv().unwrap();
                        v = Vector { terms: gb::sub_scaled(&order, &v.terms, p, None, &c) };
                    }
                    None => break,
                }
            }
            if !v.is_zero() {
                pivots.push(v);
                fresh.push(nf);
            }
        }
        for v in &fresh {
            kept.push(v.to_dense(0, r));
            kept_deg.push(d);
        }
        if !fresh.is_empty() {
            basis.extend(fresh);
            basis = gb::groebner(&order, basis, Criteria::MODULE);
        }
    }
    (kept, kept_deg)
}
