//! `Ext^i(N, M)` as the homology of `Hom(F, M)` for a resolution `F` of `N`.
//!
//! With `M = coker(P: A^q -> A^p)`, `Hom(F_i, M)` is covered by `A^(p f_i)`,
//! coordinate `(j, s)` at index `j*p + s`, and the dual differential acts as
//! `d^T ⊗ 1_p` modulo `P` in every block.

use crate::error::AlgebraError;
use crate::poly::{Poly, Scalar};

use super::elim::Elim;
use super::linalg;
use super::minimal::minimal_generators;
use super::resolution::{minimal_resolution, PresentedModule, Resolution};
use super::{Column, Dim, ModMatrix};

pub(crate) struct ExtSpace {
    /// Cycle generators in `A^(p f_i)`.
    pub cycles: Vec<Column>,
    /// Subquotient of the cycles by boundaries and relations.
    pub elim: Elim,
}

fn hom_map(d: &ModMatrix, p: usize) -> Vec<Column> {
    // columns indexed (j, s) over d.rows() * p, values in A^(p * d.cols())
    let (rows, cols) = (d.rows(), d.cols());
    let mut out = Vec::with_capacity(rows * p);
    for j in 0..rows {
        for s in 0..p {
            let mut col = vec![Poly::zero(); cols * p];
            for l in 0..cols {
                col[l * p + s] = d.get(j, l).clone();
            }
            out.push(col);
        }
    }
    out
}

fn block_relations(presentation: &ModMatrix, blocks: usize) -> Vec<Column> {
    let p = presentation.rows();
    let mut out = Vec::new();
    for b in 0..blocks {
        for rho in presentation.columns() {
            let mut col = vec![Poly::zero(); p * blocks];
            col[b * p..(b + 1) * p].clone_from_slice(&rho);
            out.push(col);
        }
    }
    out
}

pub(crate) fn ext_at(res: &Resolution, m: &PresentedModule, i: usize) -> Result<ExtSpace, AlgebraError> {
    let ring = m.ring();
    let p = m.rank();
    let pres = m.presentation();
    let too_short = AlgebraError::ResolutionTooShort { needed: i + 1, available: res.len() };
    let Some(fi) = res.free_module(i) else {
        if res.is_complete() {
            let elim = Elim::new(ring, 0, &[], &[]);
            return Ok(ExtSpace { cycles: Vec::new(), elim });
        }
        return Err(too_short);
    };
    let ambient = p * fi.rank();
    let degrees: Vec<i64> = fi
        .degrees()
        .iter()
        .flat_map(|dj| m.generator_degrees().iter().map(move |ds| ds - dj))
        .collect();

    let cycles: Vec<Column> = match res.map(i + 1) {
        Some(d) => {
            let kernel = Elim::new(ring, p * d.cols(), &hom_map(d, p), &block_relations(pres, d.cols()));
            minimal_generators(ring, &kernel.relations(), &degrees).0
        }
        None if res.is_complete() => (0..ambient)
            .map(|t| {
                let mut e = vec![Poly::zero(); ambient];
                e[t] = ring.poly().one();
                e
            })
            .collect(),
        None => return Err(too_short),
    };

    let mut boundaries = block_relations(pres, fi.rank());
    if i > 0 {
        boundaries.extend(hom_map(res.map(i).unwrap(), p));
    }
    let elim = Elim::new(ring, ambient, &cycles, &boundaries);
    Ok(ExtSpace { cycles, elim })
}

/// `dim_k Ext^i(N, M)`; infinite dimensions are counted up to `degree_cap`.
pub fn ext_dim(n: &PresentedModule, m: &PresentedModule, i: usize, degree_cap: u32) -> Result<Dim, AlgebraError> {
    let res = minimal_resolution(n, i + 1);
    Ok(ext_at(&res, m, i)?.elim.quotient_dim(degree_cap))
}

fn ext_residue(m: &PresentedModule, i: usize) -> Result<ExtSpace, AlgebraError> {
    let ring = m.ring();
    let cached = ring.residue_field_resolution();
    if i < cached.len() || cached.is_complete() {
        ext_at(cached, m, i)
    } else {
        let res = minimal_resolution(&PresentedModule::residue_field(ring), i + 1);
        ext_at(&res, m, i)
    }
}

/// `min { i : Ext^i(k, M) != 0 }`.
pub fn depth_module(m: &PresentedModule) -> Result<usize, AlgebraError> {
    if m.is_zero() {
        return Err(AlgebraError::ZeroModule);
    }
    let mut i = 0;
    loop {
        if !ext_residue(m, i)?.elim.quotient_is_zero() {
            return Ok(i);
        }
        i += 1;
    }
}

/// `mu^i(m, M) = dim_k Ext^i(k, M)`.
pub fn bass_number(i: usize, m: &PresentedModule) -> Result<usize, AlgebraError> {
    let dim = ext_residue(m, i)?.elim.quotient_dim(0);
    Ok(dim.finite().expect("Ext against the residue field has finite length"))
}

/// `Ext^i(k, p)` on the standard-monomial bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtMap {
    pub source_dim: usize,
    pub target_dim: usize,
    /// `target_dim` rows of `source_dim` scalars.
    pub matrix: Vec<Vec<Scalar>>,
    pub rank: usize,
}

/// The map induced on `Ext^i(k, -)` by a surjection `p: A^t -> M` given as a
/// matrix over the generators of `M`.
pub fn induced_ext_map(p: &ModMatrix, m: &PresentedModule, i: usize) -> Result<ExtMap, AlgebraError> {
    let ring = m.ring();
    let gens = m.rank();
    if p.rows() != gens {
        return Err(AlgebraError::Shape(format!("surjection has {} rows, module has {gens} generators", p.rows())));
    }
    let mut span = p.columns();
    span.extend(m.presentation().columns());
    if !Elim::membership(ring, gens, &span).contains_all_basis_vectors() {
        return Err(AlgebraError::NotSurjective);
    }
    let source = PresentedModule::free(p.source());
    let t = p.cols();
    let e1 = ext_residue(&source, i)?;
    let e2 = ext_residue(m, i)?;
    let b1 = e1.elim.standard_basis().expect("finite length");
    let b2 = e2.elim.standard_basis().expect("finite length");
    let s = ring.poly();
    let one = ring.field().one();

    let mut matrix = vec![vec![ring.field().zero(); b1.len()]; b2.len()];
    for (col, (mon, j)) in b1.iter().enumerate() {
        let u: Vec<Poly> = e1.cycles[*j].iter().map(|x| s.mul_term(x, mon, &one)).collect();
        let blocks = u.len() / t.max(1);
        let mut w = vec![Poly::zero(); blocks * gens];
        for b in 0..blocks {
            for r in 0..gens {
                let mut acc = Poly::zero();
                for c in 0..t {
                    let (a, x) = (p.get(r, c), &u[b * t + c]);
                    if !a.is_zero() && !x.is_zero() {
                        acc = s.add(&acc, &s.mul(a, x));
                    }
                }
                w[b * gens + r] = ring.reduce(&acc);
            }
        }
        let coords = e2
            .elim
            .coordinates(&b2, &w)
            .ok_or_else(|| AlgebraError::LiftFailure("image of an Ext class is not a cycle".into()))?;
        for (row, x) in coords.into_iter().enumerate() {
            matrix[row][col] = x;
        }
    }
    let rank = linalg::rank(&matrix);
    Ok(ExtMap { source_dim: b1.len(), target_dim: b2.len(), matrix, rank })
}
