use std::collections::VecDeque;

use crate::error::AlgebraError;
use crate::module::{column_degree, kernel_gens, Column, Dim, Elim, FreeMod, ModMatrix, Resolution};
use crate::poly::Poly;
use crate::quotient::{IdealA, QuotientRing};

/// `0 -> F_s -> ... -> F_0` with `d_{i-1} d_i = 0`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: QuotientRing,
    f0: FreeMod,
    maps: Vec<ModMatrix>,
}

impl FreeComplex {
    /// Checks shapes and `d_{i-1} d_i = 0`. With no maps, `f0` is the only
    /// module.
    pub fn new(ring: &QuotientRing, f0: usize, maps: Vec<ModMatrix>) -> Result<FreeComplex, AlgebraError> {
        let f0 = match maps.first() {
            Some(d) => d.target().clone(),
            None => FreeMod::new(ring, f0),
        };
        let c = FreeComplex { ring: ring.clone(), f0, maps };
        c.validate()?;
        Ok(c)
    }

    /// Differentials in order `d_1, d_2, ...`; `F_0` is the target of `d_1`.
    pub fn from_maps(maps: Vec<ModMatrix>) -> Result<FreeComplex, AlgebraError> {
        let first = maps.first().ok_or_else(|| AlgebraError::Shape("complex without maps needs a ring".into()))?;
        let ring = first.ring().clone();
        FreeComplex::new(&ring, first.rows(), maps)
    }

    pub fn from_resolution(res: &Resolution) -> FreeComplex {
        let ring = res.module().ring().clone();
        FreeComplex { ring, f0: res.free_module(0).unwrap(), maps: res.maps().to_vec() }
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        for (k, d) in self.maps.iter().enumerate() {
            if d.ring() != &self.ring {
                return Err(AlgebraError::RingMismatch);
            }
            if k > 0 {
                let prev = &self.maps[k - 1];
                if prev.cols() != d.rows() {
                    return Err(AlgebraError::Shape(format!(
                        "d{} has {} columns but d{} has {} rows",
                        k,
                        prev.cols(),
                        k + 1,
                        d.rows()
                    )));
                }
                if !prev.compose(d)?.is_zero() {
                    return Err(AlgebraError::NotAComplex(k));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    /// `s`, the number of maps.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[ModMatrix] {
        &self.maps
    }

    /// `d_i` for `1 <= i <= s`.
    pub fn map(&self, i: usize) -> Option<&ModMatrix> {
        i.checked_sub(1).and_then(|j| self.maps.get(j))
    }

    pub fn free_module(&self, i: usize) -> Option<FreeMod> {
        if i == 0 {
            Some(self.f0.clone())
        } else {
            self.map(i).map(|d| d.source().clone())
        }
    }

    /// `f_0, ..., f_s`.
    pub fn ranks(&self) -> Vec<usize> {
        std::iter::once(self.f0.rank()).chain(self.maps.iter().map(ModMatrix::cols)).collect()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.free_module(i).map_or(0, |f| f.rank())
    }

    /// Every map is homogeneous for the stored degrees.
    pub fn is_graded(&self) -> bool {
        self.maps.iter().all(ModMatrix::is_graded)
    }

    /// Assigns generator degrees so that every nonzero entry is homogeneous of
    /// the right degree, propagating along nonzero entries from degree zero.
    /// Returns `None` when no consistent grading exists.
    pub fn with_inferred_degrees(&self) -> Option<FreeComplex> {
        let ranks = self.ranks();
        let mut deg: Vec<Vec<Option<i64>>> = ranks.iter().map(|&r| vec![None; r]).collect();
        for spot in 0..ranks.len() {
            for start in 0..ranks[spot] {
                if deg[spot][start].is_some() {
                    continue;
                }
                deg[spot][start] = Some(0);
                let mut queue = VecDeque::from([(spot, start)]);
                while let Some((i, j)) = queue.pop_front() {
                    let dj = deg[i][j].unwrap();
                    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
                    // as a target of d_{i+1}: column c of d_{i+1} has degree dj + deg(entry)
                    if let Some(d) = self.map(i + 1) {
                        for c in 0..d.cols() {
                            let e = d.get(j, c);
                            if !e.is_zero() {
                                edges.push((i + 1, c, dj + e.homogeneous_degree()? as i64));
                            }
                        }
                    }
                    // as a source of d_i: row r of d_i has degree dj - deg(entry)
                    if let Some(d) = self.map(i) {
                        for r in 0..d.rows() {
                            let e = d.get(r, j);
                            if !e.is_zero() {
                                edges.push((i - 1, r, dj - e.homogeneous_degree()? as i64));
                            }
                        }
                    }
                    for (k, l, d) in edges {
                        match deg[k][l] {
                            None => {
                                deg[k][l] = Some(d);
                                queue.push_back((k, l));
                            }
                            Some(prev) if prev != d => return None,
                            _ => {}
                        }
                    }
                }
            }
        }
        let deg: Vec<Vec<i64>> = deg.into_iter().map(|v| v.into_iter().map(Option::unwrap).collect()).collect();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, d)| d.clone().with_degrees(deg[k].clone(), deg[k + 1].clone()))
            .collect();
        Some(FreeComplex { ring: self.ring.clone(), f0: FreeMod::with_degrees(&self.ring, deg[0].clone()), maps })
    }

    /// Replaces the differentials, keeping `F_0`'s degrees.
    pub(crate) fn with_maps(&self, maps: Vec<ModMatrix>) -> FreeComplex {
        let f0 = maps.first().map_or_else(|| self.f0.clone(), |d| d.target().clone());
        FreeComplex { ring: self.ring.clone(), f0, maps }
    }

    /// Block sum of two complexes of equal length.
    pub fn direct_sum(&self, other: &FreeComplex) -> Result<FreeComplex, AlgebraError> {
        if self.len() != other.len() {
            return Err(AlgebraError::Shape("direct sum of complexes of different lengths".into()));
        }
        let maps: Vec<ModMatrix> = self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect();
        let mut f0 = self.f0.degrees().to_vec();
        f0.extend(other.f0.degrees().iter().copied());
        Ok(FreeComplex { ring: self.ring.clone(), f0: FreeMod::with_degrees(&self.ring, f0), maps })
    }
}

/// Every entry of every differential lies in the irrelevant ideal.
pub fn is_minimal(f: &FreeComplex) -> bool {
    first_unit_entry(f).is_none()
}

pub(crate) fn first_unit_entry(f: &FreeComplex) -> Option<(usize, usize, usize)> {
    for (k, d) in f.maps().iter().enumerate() {
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if !d.get(r, c).in_irrelevant_ideal() {
                    return Some((k + 1, r, c));
                }
            }
        }
    }
    None
}

pub(crate) fn require_minimal(f: &FreeComplex) -> Result<(), AlgebraError> {
    match first_unit_entry(f) {
        Some((map, row, col)) => Err(AlgebraError::NotMinimal { map, row, col }),
        None => Ok(()),
    }
}

/// The ideal generated by the coordinates of `d_i(v)`.
pub fn content_ideal(f: &FreeComplex, i: usize, v: &[Poly]) -> Result<IdealA, AlgebraError> {
    let d = f.map(i).ok_or_else(|| AlgebraError::Shape(format!("no differential d{i}")))?;
    let image = d.apply(v)?;
    Ok(IdealA::new(f.ring(), &image))
}

/// Content ideal of the `c`-th standard basis column of `d_i`.
pub fn column_ideal(f: &FreeComplex, i: usize, c: usize) -> IdealA {
    let d = f.map(i).expect("differential exists");
    IdealA::new(f.ring(), &d.column(c))
}

fn unit_vectors(ring: &QuotientRing, n: usize) -> Vec<Column> {
    (0..n)
        .map(|t| {
            let mut e = vec![Poly::zero(); n];
            e[t] = ring.poly().one();
            e
        })
        .collect()
}

fn homology_parts(f: &FreeComplex, i: usize) -> Result<(Vec<Column>, Elim), AlgebraError> {
    if i > f.len() {
        return Err(AlgebraError::Shape(format!("no homology at spot {i} of a complex of length {}", f.len())));
    }
    let ring = f.ring();
    let fi = f.rank(i);
    let cycles = match f.map(i) {
        Some(d) => kernel_gens(d).columns(),
        None => unit_vectors(ring, fi),
    };
    let boundaries = f.map(i + 1).map(ModMatrix::columns).unwrap_or_default();
    let elim = Elim::new(ring, fi, &cycles, &boundaries);
    Ok((cycles, elim))
}

fn homology_elim(f: &FreeComplex, i: usize) -> Result<Elim, AlgebraError> {
    Ok(homology_parts(f, i)?.1)
}

/// `dim_k H_i(F)`. When infinite, the part in internal degrees `<= degree_cap`
/// is counted; ungraded complexes count each cycle generator from degree 0.
pub fn homology_dim(f: &FreeComplex, i: usize, degree_cap: u32) -> Result<Dim, AlgebraError> {
    let (cycles, elim) = homology_parts(f, i)?;
    let graded = if f.is_graded() { Some(f.clone()) } else { f.with_inferred_degrees() };
    let shifts = graded.and_then(|g| {
        let degrees = g.free_module(i).unwrap().degrees().to_vec();
        cycles.iter().map(|c| column_degree(c, &degrees)).collect::<Option<Vec<i64>>>()
    });
    let elim = match shifts {
        Some(s) => elim.with_shifts(s),
        None => elim,
    };
    Ok(elim.quotient_dim(degree_cap))
}

/// `H_i(F) = 0`, decided exactly.
pub fn homology_vanishes(f: &FreeComplex, i: usize) -> Result<bool, AlgebraError> {
    Ok(homology_elim(f, i)?.quotient_is_zero())
}

/// A cycle at spot `i` that is not a boundary, if any.
pub fn nonzero_homology_witness(f: &FreeComplex, i: usize) -> Result<Option<Column>, AlgebraError> {
    let ring = f.ring();
    let fi = f.rank(i);
    let cycles = match f.map(i) {
        Some(d) => kernel_gens(d).columns(),
        None => unit_vectors(ring, fi),
    };
    let boundaries = f.map(i + 1).map(ModMatrix::columns).unwrap_or_default();
    let elim = Elim::membership(ring, fi, &boundaries);
    Ok(cycles.into_iter().find(|z| !elim.contains(z)))
}
