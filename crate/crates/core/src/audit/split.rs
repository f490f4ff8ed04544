//! Splitting a free complex into a minimal complex and a split exact one.

use super::complex::FreeComplex;
use crate::error::AlgebraError;
use crate::module::{FreeMod, ModMatrix};
use crate::poly::{Poly, Scalar};

/// A cancelled pair `A e_source --unit--> A e_target` with `e_source` in
/// `F_spot` and `e_target` in `F_{spot-1}`, indexed in the transformed bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPair {
    pub spot: usize,
    pub source: usize,
    pub target: usize,
    pub unit: Scalar,
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub minimal: FreeComplex,
    pub split: FreeComplex,
    pub pairs: Vec<SplitPair>,
    /// `T_j`: the columns are the new basis of `F_j` in the old one.
    pub transforms: Vec<ModMatrix>,
    pub inverses: Vec<ModMatrix>,
    /// `D_j = T_{j-1}^{-1} d_j T_j`.
    pub transformed: Vec<ModMatrix>,
    /// Basis indices of `F_j` kept in the minimal part.
    pub kept: Vec<Vec<usize>>,
}

impl SplitResult {
    /// `T_{j-1} D_j T_j^{-1} = d_j`, `T_j T_j^{-1} = 1`, and `D_j` is the block
    /// sum of the minimal part and the cancelled pairs.
    pub fn reconstructs(&self, g: &FreeComplex) -> bool {
        let check = || -> Result<bool, AlgebraError> {
            for (j, t) in self.transforms.iter().enumerate() {
                let id = ModMatrix::identity(t.source());
                if t.compose(&self.inverses[j])?.entries() != id.entries() {
                    return Ok(false);
                }
            }
            for (k, d) in g.maps().iter().enumerate() {
                let spot = k + 1;
                let back = self.transforms[k].compose(&self.transformed[k])?.compose(&self.inverses[spot])?;
                if back.entries() != d.entries() {
                    return Ok(false);
                }
                let dd = &self.transformed[k];
                for r in 0..dd.rows() {
                    for c in 0..dd.cols() {
                        let kept = self.kept[spot - 1].contains(&r) && self.kept[spot].contains(&c);
                        let paired = self.pairs.iter().any(|p| p.spot == spot && p.target == r && p.source == c);
                        if !kept && !paired && !dd.get(r, c).is_zero() {
                            return Ok(false);
                        }
                    }
                }
                let minimal = self.minimal.map(spot).unwrap();
                if minimal.entries() != dd.submatrix(&self.kept[spot - 1], &self.kept[spot]).entries() {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        check().unwrap_or(false)
    }
}

/// `F ⊕ (A --1--> A)` with the new generators at spots `spot` and `spot - 1`,
/// both in the degree of the first generator of `F_spot` (or `F_{spot-1}`).
pub fn add_split_summand(f: &FreeComplex, spot: usize) -> Result<FreeComplex, AlgebraError> {
    if spot == 0 || spot > f.len() {
        return Err(AlgebraError::Precondition(format!("split summand needs 1 <= spot <= {}", f.len())));
    }
    let ring = f.ring();
    let fs = f.free_module(spot).unwrap();
    let below = f.free_module(spot - 1).unwrap();
    let degree = fs.degrees().first().or(below.degrees().first()).copied().unwrap_or(0);
    let mut maps = Vec::with_capacity(f.len());
    for (k, d) in f.maps().iter().enumerate() {
        let i = k + 1;
        let mut rows = d.target().degrees().to_vec();
        let mut cols = d.source().degrees().to_vec();
        // new generators: F_spot feeds d_spot and d_{spot+1}, F_{spot-1}
        // feeds d_spot and d_{spot-1}
        if i == spot || i == spot + 1 {
            rows.push(degree);
        }
        if i == spot || i + 1 == spot {
            cols.push(degree);
        }
        let mut m = ModMatrix::zero(&FreeMod::with_degrees(ring, cols), &FreeMod::with_degrees(ring, rows));
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                m.set(r, c, d.get(r, c).clone());
            }
        }
        if i == spot {
            m.set(d.rows(), d.cols(), ring.poly().one());
        }
        maps.push(m);
    }
    FreeComplex::new(ring, f.rank(0) + usize::from(spot == 1), maps)
}

/// A constant nonzero entry among live indices, or the first entry whose
/// constant term is a unit while the entry itself is not constant.
fn find_pivot(maps: &[ModMatrix], dead: &[Vec<bool>]) -> Result<Option<(usize, usize, usize)>, AlgebraError> {
    let mut bad = None;
    for (k, d) in maps.iter().enumerate() {
        for r in (0..d.rows()).filter(|&r| !dead[k][r]) {
            for c in (0..d.cols()).filter(|&c| !dead[k + 1][c]) {
                let e = d.get(r, c);
                if e.in_irrelevant_ideal() {
                    continue;
                }
                if e.is_constant() {
                    return Ok(Some((k + 1, r, c)));
                }
                bad.get_or_insert((k + 1, r, c));
            }
        }
    }
    match bad {
        Some((map, row, col)) => Err(AlgebraError::NonUnitPivot { map, row, col }),
        None => Ok(None),
    }
}

/// `G = F ⊕ H` up to base change, with `F` minimal and `H` a sum of
/// `A --unit--> A` pieces. Pivots must be constants.
pub fn eilenberg_split(g: &FreeComplex) -> Result<SplitResult, AlgebraError> {
    let ring = g.ring().clone();
    let s = ring.poly();
    let mut maps = g.maps().to_vec();
    let modules: Vec<FreeMod> = (0..=g.len()).map(|j| g.free_module(j).unwrap()).collect();
    let mut transforms: Vec<ModMatrix> = modules.iter().map(ModMatrix::identity).collect();
    let mut inverses = transforms.clone();
    let mut dead: Vec<Vec<bool>> = modules.iter().map(|m| vec![false; m.rank()]).collect();
    let mut pairs = Vec::new();

    while let Some((spot, r, c)) = find_pivot(&maps, &dead)? {
        let k = spot - 1;
        let unit = maps[k].get(r, c).constant_term().cloned().unwrap();
        let unit_inv = unit.inv().ok_or(AlgebraError::DivisionByZero)?;
        // clear column c with row operations on F_{spot-1}
        for r2 in 0..maps[k].rows() {
            if r2 == r || maps[k].get(r2, c).is_zero() {
                continue;
            }
            let a = s.scale(maps[k].get(r2, c), &unit_inv);
            let neg = s.neg(&a);
            // P = 1 - a E_{r2 r}: row r2 -= a row r; d_{spot-1} column r += a column r2
            maps[k].add_row_multiple(r2, r, &neg);
            if k >= 1 {
                maps[k - 1].add_column_multiple(r, r2, &a);
            }
            inverses[k].add_row_multiple(r2, r, &neg);
            transforms[k].add_column_multiple(r, r2, &a);
        }
        // clear row r with column operations on F_spot
        for c2 in 0..maps[k].cols() {
            if c2 == c || maps[k].get(r, c2).is_zero() {
                continue;
            }
            let b = s.scale(maps[k].get(r, c2), &unit_inv);
            let neg = s.neg(&b);
            // Q = 1 - b E_{c c2}: column c2 -= b column c; d_{spot+1} row c += b row c2
            maps[k].add_column_multiple(c2, c, &neg);
            if spot < maps.len() {
                maps[spot].add_row_multiple(c, c2, &b);
            }
            transforms[spot].add_column_multiple(c2, c, &neg);
            inverses[spot].add_row_multiple(c, c2, &b);
        }
        dead[k][r] = true;
        dead[spot][c] = true;
        pairs.push(SplitPair { spot, source: c, target: r, unit });
    }

    let kept: Vec<Vec<usize>> = dead.iter().map(|d| (0..d.len()).filter(|&i| !d[i]).collect()).collect();
    let minimal_maps: Vec<ModMatrix> =
        maps.iter().enumerate().map(|(k, d)| d.submatrix(&kept[k], &kept[k + 1])).collect();
    let minimal = if minimal_maps.is_empty() {
        FreeComplex::new(&ring, kept[0].len(), Vec::new())?
    } else {
        FreeComplex::from_maps(minimal_maps)?
    };

    let dead_idx: Vec<Vec<usize>> = dead.iter().map(|d| (0..d.len()).filter(|&i| d[i]).collect()).collect();
    let mut split_maps = Vec::new();
    for (k, d) in maps.iter().enumerate() {
        let mut m = d.submatrix(&dead_idx[k], &dead_idx[k + 1]);
        // only the pivot entries survive in the split part
        for (ri, &r) in dead_idx[k].iter().enumerate() {
            for (ci, &c) in dead_idx[k + 1].iter().enumerate() {
                if !pairs.iter().any(|p| p.spot == k + 1 && p.target == r && p.source == c) {
                    m.set(ri, ci, Poly::zero());
                }
            }
        }
        split_maps.push(m);
    }
    let split = if split_maps.is_empty() {
        FreeComplex::new(&ring, dead_idx[0].len(), Vec::new())?
    } else {
        FreeComplex::from_maps(split_maps)?
    };
    Ok(SplitResult { minimal, split, pairs, transforms, inverses, transformed: maps, kept })
}
