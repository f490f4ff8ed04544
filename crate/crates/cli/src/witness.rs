//! Rechecks of negative verdicts along code paths separate from the audits
//! that produced them.

use std::collections::HashMap;

use serde_json::{json, Value};
use stiff_core::audit::{change_basis, FreeComplex, Violation};
use stiff_core::module::{kernel_gens, scalar_rank, ModMatrix};
use stiff_core::poly::{monomials_of_degree, Monomial, Poly, Scalar};
use stiff_core::quotient::{Grade, IdealA};
use stiff_core::AlgebraError;

use crate::report;

/// A violation holds if the column ideal of `U_{j-1}^{-1} d_j U_j`, rebuilt by
/// matrix products, has grade below its spot. Grade zero is shown by a nonzero
/// annihilating element.
pub fn violation(f: &FreeComplex, v: &Violation) -> Result<Value, String> {
    let mut g = f.clone();
    for bc in &v.base_changes {
        g = change_basis(&g, bc.spot, &bc.matrix, &bc.inverse).map_err(|e| e.to_string())?;
    }
    let d = g.map(v.spot).ok_or("violation names a missing differential")?;
    if v.column >= d.cols() {
        return Err("violation names a missing column".into());
    }
    let ring = g.ring();
    let content = IdealA::new(ring, &d.column(v.column));
    if !content.same_ideal(&v.content) {
        return Err("recomputed content ideal differs".into());
    }
    if v.grade == Grade::Finite(0) {
        let ann = content.annihilator();
        let a = ann.gens().iter().find(|a| !ring.reduce(a).is_zero()).ok_or("content ideal has zero annihilator")?;
        let s = ring.poly();
        if !content.gens().iter().all(|c| ring.reduce(&s.mul(a, c)).is_zero()) {
            return Err("annihilator element does not kill the content ideal".into());
        }
        return Ok(json!({ "method": "annihilator", "annihilator_element": report::poly(ring, a) }));
    }
    if content.grade_at_least(v.spot) {
        return Err(format!("content ideal has grade at least {}", v.spot));
    }
    Ok(json!({ "method": "ext-probe", "grade_below": v.spot }))
}

/// Coordinates of normal forms over `(row, monomial)` pairs.
struct Coordinates {
    index: HashMap<(usize, Monomial), usize>,
}

impl Coordinates {
    fn vector(&mut self, col: &[Poly], zero: &Scalar) -> Vec<(usize, Scalar)> {
        let mut out = Vec::new();
        for (r, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                let next = self.index.len();
                let i = *self.index.entry((r, m.clone())).or_insert(next);
                if c != zero {
                    out.push((i, c.clone()));
                }
            }
        }
        out
    }
}

/// The degree of a homogeneous column relative to the row degrees.
fn column_degree(col: &[Poly], rows: &[i64]) -> Option<i64> {
    let mut deg = None;
    for (p, &rd) in col.iter().zip(rows) {
        if p.is_zero() {
            continue;
        }
        let d = p.homogeneous_degree()? as i64 + rd;
        if deg.is_some_and(|e| e != d) {
            return None;
        }
        deg = Some(d);
    }
    deg
}

/// `z ∈ im d`, decided in the single degree of `z` by scalar linear algebra
/// on normal forms. `None` when `d` or `z` is not graded.
fn in_image_graded(d: &ModMatrix, z: &[Poly]) -> Option<bool> {
    let ring = d.ring();
    if !d.is_graded() {
        return None;
    }
    let rows = d.target().degrees();
    let zdeg = column_degree(z, rows)?;
    let s = ring.poly();
    let zero = ring.field().zero();
    let one = ring.field().one();
    let mut coords = Coordinates { index: HashMap::new() };
    let mut products = Vec::new();
    for (c, &cdeg) in d.source().degrees().iter().enumerate() {
        if cdeg > zdeg {
            continue;
        }
        let col = d.column(c);
        for m in monomials_of_degree(ring.nvars(), (zdeg - cdeg) as u32) {
            let image: Vec<Poly> = col.iter().map(|e| ring.reduce(&s.mul_term(e, &m, &one))).collect();
            products.push(coords.vector(&image, &zero));
        }
    }
    let zv = coords.vector(&z.iter().map(|e| ring.reduce(e)).collect::<Vec<_>>(), &zero);
    let dense = |v: &[(usize, Scalar)]| {
        let mut out = vec![zero.clone(); coords.index.len()];
        for (i, c) in v {
            out[*i] = c.clone();
        }
        out
    };
    let mut matrix: Vec<Vec<Scalar>> = products.iter().map(|v| dense(v)).collect();
    let before = scalar_rank(&matrix);
    matrix.push(dense(&zv));
    Some(scalar_rank(&matrix) == before)
}

/// `z ∈ im d` iff `(im d : z)` is the unit ideal; the colon ideal is read off
/// the last coordinates of `ker [d | z]`.
fn in_image_colon(d: &ModMatrix, z: &[Poly]) -> Result<bool, AlgebraError> {
    let ring = d.ring();
    let mut columns = d.columns();
    columns.push(z.to_vec());
    let wide = ModMatrix::from_columns(ring, d.target().degrees(), &columns);
    let ker = kernel_gens(&wide);
    let last: Vec<Poly> = (0..ker.cols()).map(|c| ker.get(ker.rows() - 1, c).clone()).collect();
    Ok(IdealA::new(ring, &last).is_unit())
}

/// `z` is a cycle at spot `i` and not a boundary.
pub fn homology(f: &FreeComplex, i: usize, z: &[Poly]) -> Result<Value, String> {
    let ring = f.ring();
    if z.iter().all(|e| ring.reduce(e).is_zero()) {
        return Err("witness is zero".into());
    }
    if let Some(d) = f.map(i) {
        let image = d.apply(z).map_err(|e| e.to_string())?;
        if image.iter().any(|e| !e.is_zero()) {
            return Err("witness is not a cycle".into());
        }
    }
    let Some(next) = f.map(i + 1) else {
        return Ok(json!({ "method": "top-cycle", "spot": i }));
    };
    let (method, inside) = match in_image_graded(next, z) {
        Some(b) => ("graded-linear-algebra", b),
        None => ("colon-ideal", in_image_colon(next, z).map_err(|e| e.to_string())?),
    };
    if inside {
        return Err("witness is a boundary".into());
    }
    Ok(json!({ "method": method, "spot": i }))
}

/// Rechecks an error that names an entry or a composition of `f`.
pub fn precondition(f: Option<&FreeComplex>, e: &AlgebraError) -> Option<Result<Value, String>> {
    let f = f?;
    let entry = |map: usize, row: usize, col: usize| f.map(map).filter(|d| row < d.rows() && col < d.cols()).map(|d| d.get(row, col).clone());
    Some(match e {
        AlgebraError::NotMinimal { map, row, col } => match entry(*map, *row, *col) {
            Some(p) if !p.in_irrelevant_ideal() => Ok(json!({ "entry": report::poly(f.ring(), &p), "unit_constant_term": true })),
            _ => Err("named entry lies in the maximal ideal".into()),
        },
        AlgebraError::NonUnitPivot { map, row, col } => match entry(*map, *row, *col) {
            Some(p) if !p.in_irrelevant_ideal() && !p.is_constant() => {
                Ok(json!({ "entry": report::poly(f.ring(), &p), "unit_constant_term": true, "constant": false }))
            }
            _ => Err("named entry is not a non-constant unit".into()),
        },
        AlgebraError::NotAComplex(i) => match (f.map(*i), f.map(i + 1)) {
            (Some(a), Some(b)) => match a.compose(b) {
                Ok(p) if !p.is_zero() => Ok(json!({ "composition": report::matrix(&p) })),
                _ => Err("composition vanishes".into()),
            },
            _ => Err("named differentials are missing".into()),
        },
        _ => return None,
    })
}
