//! Column-ideal grade audits of minimal complexes.
//!
//! A verdict is one of: every standard-basis column passes, random base
//! changes found no violation, or every column carries a regular sequence of
//! the required length. A violation is a complete disproof and carries its
//! witness.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::complex::{require_minimal, FreeComplex};
use crate::error::AlgebraError;
use crate::module::ModMatrix;
use crate::poly::{Poly, Scalar};
use crate::quotient::{find_regular_sequence_with_budget, is_regular_sequence, Grade, IdealA, RingElem};

/// Random trials per sequence element when searching for certificates.
pub const CERTIFICATE_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StiffnessVerdict {
    VerifiedBasis,
    Probed(usize),
    Certified,
    Violated,
    Inconclusive,
}

impl fmt::Display for StiffnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StiffnessVerdict::VerifiedBasis => write!(f, "VERIFIED_BASIS"),
            StiffnessVerdict::Probed(n) => write!(f, "PROBED({n})"),
            StiffnessVerdict::Certified => write!(f, "CERTIFIED"),
            StiffnessVerdict::Violated => write!(f, "VIOLATED"),
            StiffnessVerdict::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

/// One standard-basis column of `d_spot`.
#[derive(Clone, Debug)]
pub struct ColumnCheck {
    pub spot: usize,
    pub column: usize,
    pub content: IdealA,
    pub grade: Grade,
    pub bound: usize,
    pub passed: bool,
    /// A regular sequence of length `bound` inside `content`, when searched
    /// for and found.
    pub certificate: Option<Vec<RingElem>>,
}

/// An automorphism of `F_spot` together with its inverse.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub spot: usize,
    pub matrix: ModMatrix,
    pub inverse: ModMatrix,
}

/// A column whose content ideal has grade below its position.
#[derive(Clone, Debug)]
pub struct Violation {
    pub spot: usize,
    pub column: usize,
    pub content: IdealA,
    pub grade: Grade,
    /// `None` for the original bases.
    pub trial: Option<usize>,
    /// Empty for the original bases.
    pub base_changes: Vec<BaseChange>,
}

#[derive(Clone, Debug)]
pub struct StiffnessReport {
    /// Sorted by `(spot, column)`.
    pub checks: Vec<ColumnCheck>,
    pub verdict: StiffnessVerdict,
    pub violation: Option<Violation>,
    pub trials: usize,
    pub seed: Option<u64>,
}

/// Grades keyed by the Gröbner basis of the lifted ideal.
#[derive(Default)]
pub(crate) struct GradeCache {
    full: HashMap<Vec<Poly>, Grade>,
    at_least: HashMap<(Vec<Poly>, usize), bool>,
}

impl GradeCache {
    fn key(c: &IdealA) -> Vec<Poly> {
        c.lift().groebner_basis().to_vec()
    }

    pub(crate) fn grade(&mut self, c: &IdealA) -> Grade {
        *self.full.entry(Self::key(c)).or_insert_with(|| c.grade())
    }

    pub(crate) fn at_least(&mut self, c: &IdealA, t: usize) -> bool {
        let key = Self::key(c);
        if let Some(g) = self.full.get(&key) {
            return g.at_least(t);
        }
        *self.at_least.entry((key, t)).or_insert_with(|| c.grade_at_least(t))
    }
}

fn basis_checks(f: &FreeComplex, cache: &mut GradeCache) -> Vec<ColumnCheck> {
    let mut out = Vec::new();
    for (k, d) in f.maps().iter().enumerate() {
        let spot = k + 1;
        for column in 0..d.cols() {
            let content = IdealA::new(f.ring(), &d.column(column));
            let grade = cache.grade(&content);
            out.push(ColumnCheck { spot, column, passed: grade.at_least(spot), content, grade, bound: spot, certificate: None });
        }
    }
    out
}

fn first_failure(checks: &[ColumnCheck]) -> Option<Violation> {
    checks.iter().find(|c| !c.passed).map(|c| Violation {
        spot: c.spot,
        column: c.column,
        content: c.content.clone(),
        grade: c.grade,
        trial: None,
        base_changes: Vec::new(),
    })
}

/// `gr c >= i` for every standard-basis column ideal of every `d_i`.
pub fn stiffness_check_basis(f: &FreeComplex) -> Result<StiffnessReport, AlgebraError> {
    require_minimal(f)?;
    let mut cache = GradeCache::default();
    let checks = basis_checks(f, &mut cache);
    let violation = first_failure(&checks);
    let verdict = if violation.is_some() { StiffnessVerdict::Violated } else { StiffnessVerdict::VerifiedBasis };
    Ok(StiffnessReport { checks, verdict, violation, trials: 0, seed: None })
}

fn nonzero_scalar(f: &FreeComplex, rng: &mut ChaCha8Rng) -> Scalar {
    let field = f.ring().field();
    loop {
        let c = match rng.gen_range(0..5) {
            0 => field.one(),
            1 => field.from_i64(-1),
            2 => field.from_i64(2),
            3 => field.from_i64(-2),
            _ => field.random(rng),
        };
        if !c.is_zero() {
            return c;
        }
    }
}

/// An elementary coefficient for `e_c <- e_c + a e_r`, or `None` when the
/// grading allows none.
fn elementary_coefficient(f: &FreeComplex, degrees: Option<(i64, i64)>, rng: &mut ChaCha8Rng) -> Option<Poly> {
    let s = f.ring().poly();
    let deg = match degrees {
        Some((dc, dr)) => dc - dr,
        None => rng.gen_range(0..3),
    };
    let a = match deg {
        d if d < 0 => return None,
        0 => s.constant(nonzero_scalar(f, rng)),
        d => s.random_form(d as u32, 3, rng),
    };
    let a = f.ring().reduce(&a);
    (!a.is_zero()).then_some(a)
}

/// Random graded automorphisms of every `F_j`, returned with the transformed
/// complex `d_j' = U_{j-1}^{-1} d_j U_j`.
pub fn random_base_change(f: &FreeComplex, rng: &mut ChaCha8Rng) -> (FreeComplex, Vec<BaseChange>) {
    let graded = if f.is_graded() { Some(f.clone()) } else { f.with_inferred_degrees() };
    let mut maps: Vec<ModMatrix> = f.maps().to_vec();
    let mut changes = Vec::new();
    for spot in 0..=f.len() {
        let module = f.free_module(spot).unwrap();
        let n = module.rank();
        let mut u = ModMatrix::identity(&module);
        let mut u_inv = ModMatrix::identity(&module);
        if n >= 2 {
            let degrees = graded.as_ref().map(|g| g.free_module(spot).unwrap().degrees().to_vec());
            let ops = rng.gen_range(1..=2 * n);
            for _ in 0..ops {
                let r = rng.gen_range(0..n);
                let c = (r + rng.gen_range(1..n)) % n;
                let Some(a) = elementary_coefficient(f, degrees.as_ref().map(|d| (d[c], d[r])), rng) else {
                    continue;
                };
                let neg = f.ring().poly().neg(&a);
                // e_c <- e_c + a e_r: column c of d_spot gains a * column r,
                // row r of d_{spot+1} loses a * row c
                if spot >= 1 {
                    maps[spot - 1].add_column_multiple(c, r, &a);
                }
                if spot < f.len() {
                    maps[spot].add_row_multiple(r, c, &neg);
                }
                u.add_column_multiple(c, r, &a);
                u_inv.add_row_multiple(r, c, &neg);
            }
        }
        changes.push(BaseChange { spot, matrix: u, inverse: u_inv });
    }
    (f.with_maps(maps), changes)
}

/// Re-expresses `F_spot` in the basis given by the columns of `u`:
/// `d_spot' = d_spot u` and `d_{spot+1}' = u^{-1} d_{spot+1}`.
pub fn change_basis(f: &FreeComplex, spot: usize, u: &ModMatrix, u_inv: &ModMatrix) -> Result<FreeComplex, AlgebraError> {
    let module = f.free_module(spot).ok_or_else(|| AlgebraError::Shape(format!("no module at spot {spot}")))?;
    let n = module.rank();
    if u.rows() != n || u.cols() != n || u_inv.rows() != n || u_inv.cols() != n {
        return Err(AlgebraError::Shape(format!("base change at spot {spot} must be {n}x{n}")));
    }
    let id = ModMatrix::identity(&module);
    if u.compose(u_inv)?.entries() != id.entries() || u_inv.compose(u)?.entries() != id.entries() {
        return Err(AlgebraError::Precondition("base change and inverse do not compose to the identity".into()));
    }
    let mut maps = f.maps().to_vec();
    if spot >= 1 {
        maps[spot - 1] = maps[spot - 1].compose(u)?;
    }
    if spot < f.len() {
        maps[spot] = u_inv.compose(&maps[spot])?;
    }
    Ok(f.with_maps(maps))
}

/// Repeats the basis check after `trials` independent random base changes.
pub fn stiffness_probe_random(f: &FreeComplex, trials: usize, seed: u64) -> Result<StiffnessReport, AlgebraError> {
    require_minimal(f)?;
    let mut cache = GradeCache::default();
    let checks = basis_checks(f, &mut cache);
    if let Some(violation) = first_failure(&checks) {
        return Ok(StiffnessReport { checks, verdict: StiffnessVerdict::Violated, violation: Some(violation), trials, seed: Some(seed) });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let (g, changes) = random_base_change(f, &mut rng);
        for (k, d) in g.maps().iter().enumerate() {
            let spot = k + 1;
            for column in 0..d.cols() {
                let content = IdealA::new(g.ring(), &d.column(column));
                if !cache.at_least(&content, spot) {
                    let grade = cache.grade(&content);
                    let violation = Violation { spot, column, content, grade, trial: Some(trial), base_changes: changes };
                    return Ok(StiffnessReport {
                        checks,
                        verdict: StiffnessVerdict::Violated,
                        violation: Some(violation),
                        trials,
                        seed: Some(seed),
                    });
                }
            }
        }
    }
    let verdict = if trials == 0 { StiffnessVerdict::VerifiedBasis } else { StiffnessVerdict::Probed(trials) };
    Ok(StiffnessReport { checks, verdict, violation: None, trials, seed: Some(seed) })
}

/// Searches a regular sequence of length `i` in every column ideal of `d_i`.
pub fn stiffness_certificate(f: &FreeComplex, seed: u64) -> Result<StiffnessReport, AlgebraError> {
    stiffness_certificate_with_budget(f, seed, CERTIFICATE_BUDGET)
}

/// As [`stiffness_certificate`] with `budget` random trials per element.
/// Columns whose search fails are inconclusive unless their grade is too
/// small, which is a violation.
pub fn stiffness_certificate_with_budget(f: &FreeComplex, seed: u64, budget: usize) -> Result<StiffnessReport, AlgebraError> {
    require_minimal(f)?;
    let mut cache = GradeCache::default();
    let mut checks = basis_checks(f, &mut cache);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inconclusive = false;
    for check in &mut checks {
        let column_seed: u64 = rng.gen();
        if !check.passed {
            continue;
        }
        match find_regular_sequence_with_budget(&check.content, check.bound, column_seed, budget) {
            Some(seq) if is_regular_sequence(f.ring(), &seq) && seq.iter().all(|a| check.content.contains(a)) => {
                check.certificate = Some(seq)
            }
            _ => {}
        }
        if check.certificate.is_none() {
            inconclusive = true;
        }
    }
    let violation = first_failure(&checks);
    let verdict = match (&violation, inconclusive) {
        (Some(_), _) => StiffnessVerdict::Violated,
        (None, true) => StiffnessVerdict::Inconclusive,
        (None, false) => StiffnessVerdict::Certified,
    };
    Ok(StiffnessReport { checks, verdict, violation, trials: budget, seed: Some(seed) })
}

/// `Ann z = 0` for the content ideal of one column of `d_1`.
#[derive(Clone, Debug)]
pub struct AnnCheck {
    pub column: usize,
    pub content: IdealA,
    pub annihilator: IdealA,
    pub passed: bool,
}

/// The annihilator of every column of `d_1`, as an element of `F_0`.
pub fn first_syzygy_ann_check(f: &FreeComplex) -> Result<Vec<AnnCheck>, AlgebraError> {
    require_minimal(f)?;
    let Some(d) = f.map(1) else { return Ok(Vec::new()) };
    Ok((0..d.cols())
        .map(|column| {
            let content = IdealA::new(f.ring(), &d.column(column));
            let annihilator = content.annihilator();
            AnnCheck { column, passed: annihilator.is_zero(), content, annihilator }
        })
        .collect())
}
