//! Free modules and matrices over `A`, syzygies, minimal resolutions, and Ext.
//!
//! Every computation over `A` happens in `S`: a submodule of `A^r` is
//! represented by lifted generators together with `I·e_j` for each basis
//! vector `e_j`.

mod elim;
mod ext;
mod linalg;
mod minimal;
mod resolution;

use std::fmt;

use crate::error::AlgebraError;
use crate::poly::Poly;
use crate::quotient::{QuotientRing, RingElem};

pub use elim::Dim;
pub(crate) use elim::{standard_monomials, Elim};
pub use ext::{bass_number, depth_module, ext_dim, induced_ext_map, ExtMap};
pub use linalg::rank as scalar_rank;
pub(crate) use minimal::column_degree;
pub use resolution::{kernel_gens, minimal_resolution, proj_dim, PresentedModule, ProjDim, Resolution};
pub(crate) use resolution::residue_field_resolution;

/// A column of a matrix: one polynomial per target basis vector.
pub type Column = Vec<Poly>;

/// `A^rank` with generator degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMod {
    ring: QuotientRing,
    degrees: Vec<i64>,
}

impl FreeMod {
    pub fn new(ring: &QuotientRing, rank: usize) -> FreeMod {
        FreeMod { ring: ring.clone(), degrees: vec![0; rank] }
    }

    pub fn with_degrees(ring: &QuotientRing, degrees: Vec<i64>) -> FreeMod {
        FreeMod { ring: ring.clone(), degrees }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }
}

/// A map `source -> target`, stored as a `target.rank() x source.rank()`
/// row-major matrix of normal forms.
#[derive(Clone, PartialEq, Eq)]
pub struct ModMatrix {
    source: FreeMod,
    target: FreeMod,
    entries: Vec<Poly>,
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        writeln!(f, "{}x{} matrix", self.rows(), self.cols())?;
        for r in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|c| ring.format(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ModMatrix {
    /// Row-major entries; target degrees zero, source degrees inferred from
    /// the columns where possible.
    pub fn new(ring: &QuotientRing, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<ModMatrix, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries: Vec<Poly> = entries.iter().map(|e| ring.reduce(e)).collect();
        let target = FreeMod::new(ring, rows);
        let mut m = ModMatrix { source: FreeMod::new(ring, cols), target, entries };
        m.source.degrees = (0..cols).map(|c| column_degree(&m.column(c), &m.target.degrees).unwrap_or(0)).collect();
        Ok(m)
    }

    /// Builds a matrix from columns over a target with given degrees; source
    /// degrees are inferred.
    pub fn from_columns(ring: &QuotientRing, target_degrees: &[i64], columns: &[Column]) -> ModMatrix {
        let rows = target_degrees.len();
        let cols = columns.len();
        let mut entries = vec![Poly::zero(); rows * cols];
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, e) in col.iter().enumerate() {
                entries[r * cols + c] = ring.reduce(e);
            }
        }
        let degrees = columns
            .iter()
            .map(|col| column_degree(col, target_degrees).unwrap_or(0))
            .collect();
        ModMatrix {
            source: FreeMod::with_degrees(ring, degrees),
            target: FreeMod::with_degrees(ring, target_degrees.to_vec()),
            entries,
        }
    }

    pub fn from_elems(ring: &QuotientRing, rows: usize, cols: usize, entries: &[RingElem]) -> Result<ModMatrix, AlgebraError> {
        ModMatrix::new(ring, rows, cols, entries.iter().map(|e| e.rep().clone()).collect())
    }

    pub fn zero(source: &FreeMod, target: &FreeMod) -> ModMatrix {
        ModMatrix {
            source: source.clone(),
            target: target.clone(),
            entries: vec![Poly::zero(); source.rank() * target.rank()],
        }
    }

    pub fn identity(module: &FreeMod) -> ModMatrix {
        let n = module.rank();
        let mut m = ModMatrix::zero(module, module);
        for i in 0..n {
            m.entries[i * n + i] = module.ring.poly().one();
        }
        m
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.source.ring
    }

    pub fn source(&self) -> &FreeMod {
        &self.source
    }

    pub fn target(&self) -> &FreeMod {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols() + c]
    }

    pub fn elem(&self, r: usize, c: usize) -> RingElem {
        self.ring().elem(self.get(r, c))
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Column {
        (0..self.rows()).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Column> {
        (0..self.cols()).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Poly> {
        (0..self.cols()).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Replaces the degree data; entries are untouched.
    pub fn with_degrees(mut self, target: Vec<i64>, source: Vec<i64>) -> ModMatrix {
        assert_eq!(target.len(), self.rows());
        assert_eq!(source.len(), self.cols());
        self.target.degrees = target;
        self.source.degrees = source;
        self
    }

    /// Every nonzero entry is homogeneous of degree `source_deg - target_deg`.
    pub fn is_graded(&self) -> bool {
        (0..self.rows()).all(|r| {
            (0..self.cols()).all(|c| {
                let e = self.get(r, c);
                e.is_zero()
                    || e.homogeneous_degree().map(|d| d as i64)
                        == Some(self.source.degrees[c] - self.target.degrees[r])
            })
        })
    }

    pub fn transpose(&self) -> ModMatrix {
        let (rows, cols) = (self.rows(), self.cols());
        let mut entries = Vec::with_capacity(rows * cols);
        for c in 0..cols {
            for r in 0..rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ModMatrix {
            source: FreeMod::with_degrees(self.ring(), self.target.degrees.iter().map(|d| -d).collect()),
            target: FreeMod::with_degrees(self.ring(), self.source.degrees.iter().map(|d| -d).collect()),
            entries,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModMatrix) -> Result<ModMatrix, AlgebraError> {
        if self.cols() != other.rows() {
            return Err(AlgebraError::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        let ring = self.ring();
        let s = ring.poly();
        let mut out = ModMatrix::zero(other.source(), self.target());
        for r in 0..self.rows() {
            for c in 0..other.cols() {
                let mut acc = Poly::zero();
                for k in 0..self.cols() {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = s.add(&acc, &s.mul(a, b));
                    }
                }
                out.entries[r * other.cols() + c] = ring.reduce(&acc);
            }
        }
        Ok(out)
    }

    /// `self · v` for a source coordinate vector.
    pub fn apply(&self, v: &[Poly]) -> Result<Column, AlgebraError> {
        if v.len() != self.cols() {
            return Err(AlgebraError::Shape(format!("vector of length {} for {} columns", v.len(), self.cols())));
        }
        let ring = self.ring();
        let s = ring.poly();
        Ok((0..self.rows())
            .map(|r| {
                let mut acc = Poly::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.get(r, c).is_zero() {
                        acc = s.add(&acc, &s.mul(self.get(r, c), x));
                    }
                }
                ring.reduce(&acc)
            })
            .collect())
    }

    pub fn set(&mut self, r: usize, c: usize, value: Poly) {
        let cols = self.cols();
        self.entries[r * cols + c] = self.source.ring.reduce(&value);
    }

    /// Column `dst += a * column src`.
    pub(crate) fn add_column_multiple(&mut self, dst: usize, src: usize, a: &Poly) {
        let ring = self.source.ring.clone();
        let s = ring.poly();
        let cols = self.cols();
        for r in 0..self.rows() {
            let x = &self.entries[r * cols + src];
            if x.is_zero() {
                continue;
            }
            let sum = s.add(&self.entries[r * cols + dst], &s.mul(a, x));
            self.entries[r * cols + dst] = ring.reduce(&sum);
        }
    }

    /// Row `dst += a * row src`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, a: &Poly) {
        let ring = self.source.ring.clone();
        let s = ring.poly();
        let cols = self.cols();
        for c in 0..cols {
            let x = &self.entries[src * cols + c];
            if x.is_zero() {
                continue;
            }
            let sum = s.add(&self.entries[dst * cols + c], &s.mul(a, x));
            self.entries[dst * cols + c] = ring.reduce(&sum);
        }
    }

    /// The columns at the given indices, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> ModMatrix {
        let mut entries = Vec::with_capacity(self.rows() * cols.len());
        for r in 0..self.rows() {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        let source = FreeMod::with_degrees(self.ring(), cols.iter().map(|&c| self.source.degrees[c]).collect());
        ModMatrix { source, target: self.target.clone(), entries }
    }

    /// The submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ModMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        ModMatrix {
            source: FreeMod::with_degrees(self.ring(), cols.iter().map(|&c| self.source.degrees[c]).collect()),
            target: FreeMod::with_degrees(self.ring(), rows.iter().map(|&r| self.target.degrees[r]).collect()),
            entries,
        }
    }

    /// Drops the given row and column.
    pub(crate) fn remove_row_col(&self, row: usize, col: usize) -> ModMatrix {
        let mut entries = Vec::with_capacity((self.rows() - 1) * (self.cols() - 1));
        for r in (0..self.rows()).filter(|&r| r != row) {
            for c in (0..self.cols()).filter(|&c| c != col) {
                entries.push(self.get(r, c).clone());
            }
        }
        let mut target = self.target.clone();
        target.degrees.remove(row);
        let mut source = self.source.clone();
        source.degrees.remove(col);
        ModMatrix { source, target, entries }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &ModMatrix) -> ModMatrix {
        let rows = self.rows() + other.rows();
        let cols = self.cols() + other.cols();
        let mut entries = vec![Poly::zero(); rows * cols];
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                entries[r * cols + c] = self.get(r, c).clone();
            }
        }
        for r in 0..other.rows() {
            for c in 0..other.cols() {
                entries[(r + self.rows()) * cols + c + self.cols()] = other.get(r, c).clone();
            }
        }
        let mut td = self.target.degrees.clone();
        td.extend(other.target.degrees.iter().copied());
        let mut sd = self.source.degrees.clone();
        sd.extend(other.source.degrees.iter().copied());
        ModMatrix {
            source: FreeMod::with_degrees(self.ring(), sd),
            target: FreeMod::with_degrees(self.ring(), td),
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Field, MonomialOrder, PolyRing};
    use crate::quotient::IdealA;

    fn ring(vars: &[&str], ideal: &[&str]) -> QuotientRing {
        let s = PolyRing::new(vars, Field::Rational, MonomialOrder::DegRevLex).unwrap();
        let gens = ideal.iter().map(|g| s.parse(g).unwrap()).collect();
        QuotientRing::new(&s, gens).unwrap()
    }

    fn cyclic(a: &QuotientRing, gens: &[&str]) -> PresentedModule {
        let g: Vec<Poly> = gens.iter().map(|s| a.poly().parse(s).unwrap()).collect();
        PresentedModule::cyclic(&IdealA::new(a, &g))
    }

    #[test]
    fn residue_field_resolutions() {
        let a = ring(&["x", "y"], &[]);
        let res = minimal_resolution(&PresentedModule::residue_field(&a), 5);
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert!(res.is_complete() && res.is_minimal());
        let node = ring(&["x", "y"], &["x*y"]);
        let res = minimal_resolution(&PresentedModule::residue_field(&node), 3);
        assert_eq!(res.ranks(), vec![1, 2, 2, 2]);
        assert!(!res.is_complete());
        for w in res.maps().windows(2) {
            assert!(w[0].compose(&w[1]).unwrap().is_zero());
        }
    }

    #[test]
    fn kernels() {
        let a = ring(&["x", "y"], &[]);
        let f = ModMatrix::new(&a, 1, 2, vec![a.poly().parse("x").unwrap(), a.poly().parse("y").unwrap()]).unwrap();
        let k = kernel_gens(&f);
        assert_eq!(k.cols(), 1);
        assert!(f.compose(&k).unwrap().is_zero());
        let node = ring(&["x", "y"], &["x*y"]);
        let f = ModMatrix::new(&node, 1, 2, vec![node.poly().parse("x").unwrap(), node.poly().parse("y").unwrap()]).unwrap();
        let k = kernel_gens(&f);
        assert_eq!(k.cols(), 2);
        let id = ModMatrix::identity(&FreeMod::new(&node, 2));
        assert_eq!(kernel_gens(&id).cols(), 0);
    }

    #[test]
    fn depth_and_bass_numbers() {
        let plane = ring(&["x", "y"], &[]);
        let node = ring(&["x", "y"], &["x*y"]);
        let free = |a: &QuotientRing| PresentedModule::free(&FreeMod::new(a, 1));
        assert_eq!(depth_module(&free(&plane)), Ok(2));
        assert_eq!(depth_module(&free(&node)), Ok(1));
        assert_eq!(depth_module(&PresentedModule::residue_field(&node)), Ok(0));
        assert_eq!(bass_number(2, &free(&plane)), Ok(1));
        assert_eq!(bass_number(1, &free(&node)), Ok(1));
        assert_eq!(bass_number(0, &PresentedModule::residue_field(&node)), Ok(1));
        let fat = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(bass_number(0, &free(&fat)), Ok(2));
        let space = ring(&["x", "y", "z"], &[]);
        assert_eq!(depth_module(&free(&space)), Ok(3));
    }

    #[test]
    fn projective_dimension() {
        let plane = ring(&["x", "y"], &[]);
        assert_eq!(proj_dim(&PresentedModule::residue_field(&plane), 5), ProjDim::Finite(2));
        assert_eq!(proj_dim(&cyclic(&plane, &["x^2", "x*y"]), 5), ProjDim::Finite(2));
        let node = ring(&["x", "y"], &["x*y"]);
        assert_eq!(proj_dim(&PresentedModule::residue_field(&node), 5), ProjDim::ExceedsBound(5));
        assert_eq!(proj_dim(&PresentedModule::free(&FreeMod::new(&node, 2)), 5), ProjDim::Finite(0));
    }

    #[test]
    fn ext_dimensions() {
        let node = ring(&["x", "y"], &["x*y"]);
        let k = PresentedModule::residue_field(&node);
        let a = PresentedModule::free(&FreeMod::new(&node, 1));
        assert_eq!(ext_dim(&k, &k, 0, 10), Ok(Dim::Finite(1)));
        assert_eq!(ext_dim(&k, &a, 0, 10), Ok(Dim::Finite(0)));
        assert_eq!(ext_dim(&k, &a, 1, 10), Ok(Dim::Finite(1)));
        assert!(matches!(ext_dim(&a, &a, 0, 4), Ok(Dim::AtLeast { .. })));
    }

    #[test]
    fn induced_maps_on_ext() {
        let node = ring(&["x", "y"], &["x*y"]);
        let one = ModMatrix::new(&node, 1, 1, vec![node.poly().one()]).unwrap();
        let a = PresentedModule::free(&FreeMod::new(&node, 1));
        assert_eq!(induced_ext_map(&one, &a, 1).unwrap().rank, 1);
        let m = cyclic(&node, &["x"]);
        assert_eq!(induced_ext_map(&one, &m, 1).unwrap().rank, 0);
        let line = ring(&["x"], &[]);
        let one = ModMatrix::new(&line, 1, 1, vec![line.poly().one()]).unwrap();
        let k = PresentedModule::residue_field(&line);
        assert_eq!(induced_ext_map(&one, &k, 1).unwrap().rank, 1);
        let zero = ModMatrix::new(&line, 1, 1, vec![line.poly().var(0)]).unwrap();
        assert_eq!(induced_ext_map(&zero, &k, 1), Err(AlgebraError::NotSurjective));
    }
}
