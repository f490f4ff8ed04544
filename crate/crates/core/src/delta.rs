//! Cohen–Macaulay and Gorenstein recognition, and Auslander's δ-invariant as
//! the rank of `Ext^d(k, p)` for a surjection `p: A^t -> M`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::AlgebraError;
use crate::module::{bass_number, depth_module, induced_ext_map, FreeMod, ModMatrix, PresentedModule};
use crate::poly::Poly;
use crate::quotient::{IdealA, QuotientRing};

/// `depth A = dim A`.
pub fn is_cohen_macaulay(ring: &QuotientRing) -> bool {
    let a = PresentedModule::free(&FreeMod::new(ring, 1));
    depth_module(&a) == Ok(ring.dim())
}

/// Cohen–Macaulay with `mu^d(m, A) = 1`.
pub fn is_gorenstein(ring: &QuotientRing) -> bool {
    let a = PresentedModule::free(&FreeMod::new(ring, 1));
    is_cohen_macaulay(ring) && bass_number(ring.dim(), &a) == Ok(1)
}

/// The rank of `Ext^d(k, p)` for one surjection.
#[derive(Clone, Debug)]
pub struct SurjectionRank {
    pub surjection: ModMatrix,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct DeltaReport {
    /// `M` on its minimal generators.
    pub module: PresentedModule,
    pub generators: usize,
    pub dim: usize,
    pub delta: usize,
    pub minimal: SurjectionRank,
    /// Non-minimal surjections `A^(t+1) -> M`.
    pub extra: Vec<SurjectionRank>,
}

impl DeltaReport {
    /// Every surjection tried gives the same rank.
    pub fn surjection_independent(&self) -> bool {
        self.extra.iter().all(|e| e.rank == self.delta)
    }
}

/// `[1 | 0]` and `[1 | v]` with `v` a random combination of the generators.
fn non_minimal_surjections(m: &PresentedModule, count: usize, seed: u64) -> Vec<ModMatrix> {
    let ring = m.ring();
    let s = ring.poly();
    let t = m.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degrees = m.generator_degrees().to_vec();
    (0..count)
        .map(|n| {
            let mut columns: Vec<Vec<Poly>> = (0..t)
                .map(|j| {
                    let mut e = vec![Poly::zero(); t];
                    e[j] = s.one();
                    e
                })
                .collect();
            let extra: Vec<Poly> = if n == 0 {
                vec![Poly::zero(); t]
            } else {
                let top = degrees.iter().copied().max().unwrap_or(0);
                degrees
                    .iter()
                    .map(|&d| {
                        let c = ring.field().from_i64(rng.gen_range(-3..=3));
                        let form = if top > d { s.random_form((top - d) as u32, 2, &mut rng) } else { s.one() };
                        s.scale(&form, &c)
                    })
                    .collect()
            };
            columns.push(extra);
            ModMatrix::from_columns(ring, &degrees, &columns)
        })
        .collect()
}

/// `δ(M)` from the minimal surjection, rechecked on two non-minimal ones.
pub fn delta(m: &PresentedModule) -> Result<DeltaReport, AlgebraError> {
    delta_with_surjections(m, 2, 0)
}

/// As [`delta`] with `extra` non-minimal surjections drawn from `seed`.
pub fn delta_with_surjections(m: &PresentedModule, extra: usize, seed: u64) -> Result<DeltaReport, AlgebraError> {
    let ring = m.ring();
    if !is_gorenstein(ring) {
        return Err(AlgebraError::NotGorenstein);
    }
    if m.is_zero() {
        return Err(AlgebraError::ZeroModule);
    }
    let minimal_module = PresentedModule::new(m.minimal_presentation());
    let t = minimal_module.rank();
    let d = ring.dim();
    let cover = ModMatrix::identity(&FreeMod::with_degrees(ring, minimal_module.generator_degrees().to_vec()));
    let rank = induced_ext_map(&cover, &minimal_module, d)?.rank;
    let minimal = SurjectionRank { surjection: cover, rank };
    let extra = non_minimal_surjections(&minimal_module, extra, seed)
        .into_iter()
        .map(|p| Ok(SurjectionRank { rank: induced_ext_map(&p, &minimal_module, d)?.rank, surjection: p }))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    Ok(DeltaReport { module: minimal_module, generators: t, dim: d, delta: rank, minimal, extra })
}

/// Why an ideal is not an instance of the theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Th9Rejection {
    NotGorenstein,
    ZeroIdeal,
    UnitIdeal,
    /// `Ann b = 0`, so `b` contains a nonzerodivisor.
    ContainsNonzerodivisor,
    /// `b != Ann(Ann b)`.
    NotAnnihilatorIdeal,
}

#[derive(Clone, Debug)]
pub enum Th9Outcome {
    Rejected(Th9Rejection),
    /// A valid instance with its δ-report; expected `δ(R/b) = 0`.
    Audited(Box<DeltaReport>),
}

/// For a nonzero proper annihilator ideal `b` of a Gorenstein ring,
/// `δ(R/b) = 0`.
pub fn theorem9_audit(ring: &QuotientRing, b: &IdealA) -> Result<Th9Outcome, AlgebraError> {
    if b.ring() != ring {
        return Err(AlgebraError::RingMismatch);
    }
    let rejection = if !is_gorenstein(ring) {
        Some(Th9Rejection::NotGorenstein)
    } else if b.is_zero() {
        Some(Th9Rejection::ZeroIdeal)
    } else if b.is_unit() {
        Some(Th9Rejection::UnitIdeal)
    } else if b.annihilator().is_zero() {
        Some(Th9Rejection::ContainsNonzerodivisor)
    } else if !b.is_annihilator_ideal() {
        Some(Th9Rejection::NotAnnihilatorIdeal)
    } else {
        None
    };
    match rejection {
        Some(r) => Ok(Th9Outcome::Rejected(r)),
        None => Ok(Th9Outcome::Audited(Box::new(delta(&PresentedModule::cyclic(b))?))),
    }
}
