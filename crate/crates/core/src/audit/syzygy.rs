//! Grade bounds on minors in fixed columns, generator counts of syzygies, and
//! order ideals of syzygy elements.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::complex::{content_ideal, homology_vanishes, require_minimal, FreeComplex};
use super::minors::{index_subsets, minor_ideal};
use crate::error::AlgebraError;
use crate::module::{kernel_gens, PresentedModule};
use crate::poly::Poly;
use crate::quotient::{Grade, IdealA};

/// Column subsets per `(i, t)` beyond which the table samples.
pub const SUBSET_LIMIT: usize = 64;

#[derive(Clone, Debug)]
pub struct MinorGradeEntry {
    pub spot: usize,
    pub t: usize,
    pub columns: Vec<usize>,
    /// All `t x t` minors inside the chosen columns of `d_spot`.
    pub ideal: IdealA,
    pub grade: Grade,
    /// `spot - t + 1`.
    pub bound: usize,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct MinorGradeTable {
    /// Sorted by `(spot, t, columns)`.
    pub entries: Vec<MinorGradeEntry>,
    pub seed: u64,
}

impl MinorGradeTable {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// `F` has no homology in positive spots.
pub fn is_acyclic(f: &FreeComplex) -> Result<bool, AlgebraError> {
    for i in 1..=f.len() {
        if !homology_vanishes(f, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_acyclic(f: &FreeComplex) -> Result<(), AlgebraError> {
    require_minimal(f)?;
    if !is_acyclic(f)? {
        return Err(AlgebraError::Precondition("complex is not acyclic".into()));
    }
    Ok(())
}

/// `gr c_{i,t} >= i - t + 1` for the `t x t` minors in `columns` of `d_i`,
/// `1 <= t <= i < s`.
pub fn thm14_minor_grades(f: &FreeComplex, i: usize, columns: &[usize]) -> Result<MinorGradeEntry, AlgebraError> {
    require_minimal(f)?;
    let t = columns.len();
    if t == 0 || t > i || i >= f.len() {
        return Err(AlgebraError::Precondition(format!("need 1 <= t <= i < s, got t = {t}, i = {i}, s = {}", f.len())));
    }
    let d = f.map(i).unwrap();
    if columns.iter().any(|&c| c >= d.cols()) {
        return Err(AlgebraError::Shape(format!("column index out of range for d{i}")));
    }
    let ideal = minor_ideal(&d.select_columns(columns), t as i64);
    let grade = ideal.grade();
    let bound = i - t + 1;
    Ok(MinorGradeEntry { spot: i, t, columns: columns.to_vec(), passed: grade.at_least(bound), ideal, grade, bound })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, j| acc.saturating_mul(n - j) / (j + 1))
}

/// Column subsets for `(i, t)`: all of them up to [`SUBSET_LIMIT`], else a
/// seeded sample of that many.
pub fn column_subsets(n: usize, t: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    if binomial(n, t) <= SUBSET_LIMIT {
        return index_subsets(n, t);
    }
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(SUBSET_LIMIT);
    while out.len() < SUBSET_LIMIT {
        let mut subset = sample(rng, n, t).into_vec();
        subset.sort_unstable();
        if !out.contains(&subset) {
            out.push(subset);
        }
    }
    out.sort();
    out
}

/// Every `(i, t)` with `1 <= t <= i < s` and `t <= f_i`.
pub fn thm14_table(f: &FreeComplex, seed: u64) -> Result<MinorGradeTable, AlgebraError> {
    require_acyclic(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::new();
    for i in 1..f.len() {
        let fi = f.rank(i);
        for t in 1..=i.min(fi) {
            for columns in column_subsets(fi, t, &mut rng) {
                entries.push(thm14_minor_grades(f, i, &columns)?);
            }
        }
    }
    Ok(MinorGradeTable { entries, seed })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBound {
    pub spot: usize,
    /// Minimal generator count of `Z_i = im d_i = coker d_{i+1}`.
    pub generators: usize,
    pub free: bool,
    pub required: usize,
    pub passed: bool,
}

/// A non-free `Z_i` needs at least `i + 1` generators; `1 <= i < s`.
pub fn thm11_generator_bound(f: &FreeComplex, i: usize) -> Result<GeneratorBound, AlgebraError> {
    require_minimal(f)?;
    if i == 0 || i >= f.len() {
        return Err(AlgebraError::Precondition(format!("need 1 <= i < s, got i = {i}, s = {}", f.len())));
    }
    let z = PresentedModule::new(f.map(i + 1).unwrap().clone());
    let generators = z.minimal_generator_count();
    let free = z.minimal_presentation().cols() == 0;
    Ok(GeneratorBound { spot: i, generators, free, required: i + 1, passed: free || generators > i })
}

#[derive(Clone, Debug)]
pub struct OrderIdeal {
    pub spot: usize,
    pub element: Vec<Poly>,
    /// `Z*(z)`: values at `z` of all functionals on `Z_i`.
    pub ideal: IdealA,
    pub grade: Grade,
    pub content: IdealA,
    pub content_grade: Grade,
    pub contains_content: bool,
    pub passed: bool,
}

/// `Z_i*(z)` for `z` in `F_i` outside `m F_i`, with `gr Z*(z) >= i` and
/// `Z*(z) ⊇ c(z)`.
pub fn order_ideal_grade(f: &FreeComplex, i: usize, z: &[Poly]) -> Result<OrderIdeal, AlgebraError> {
    require_minimal(f)?;
    let d = f.map(i).ok_or_else(|| AlgebraError::Precondition(format!("no differential d{i}")))?;
    if z.len() != d.cols() {
        return Err(AlgebraError::Shape(format!("element of length {} for rank {}", z.len(), d.cols())));
    }
    let ring = f.ring();
    let z: Vec<Poly> = z.iter().map(|x| ring.reduce(x)).collect();
    if z.iter().all(Poly::in_irrelevant_ideal) {
        return Err(AlgebraError::Precondition("element lies in m times the source".into()));
    }
    let s = ring.poly();
    let values: Vec<Poly> = match f.map(i + 1) {
        // Hom(Z_i, A) = ker d_{i+1}^T inside F_i^*
        Some(next) => kernel_gens(&next.transpose())
            .columns()
            .iter()
            .map(|phi| {
                let mut acc = Poly::zero();
                for (a, x) in phi.iter().zip(&z) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = s.add(&acc, &s.mul(a, x));
                    }
                }
                ring.reduce(&acc)
            })
            .collect(),
        None => z.clone(),
    };
    let ideal = IdealA::new(ring, &values);
    let content = content_ideal(f, i, &z)?;
    let grade = ideal.grade();
    let content_grade = content.grade();
    let contains_content = ideal.contains_ideal(&content);
    Ok(OrderIdeal { spot: i, element: z, passed: grade.at_least(i) && contains_content, ideal, grade, content, content_grade, contains_content })
}
