//! Koszul complexes, systems of parameters, and lifts of the augmentation
//! `A/(x) -> k` to a chain map into the minimal resolution of `k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::audit::{index_subsets, FreeComplex};
use crate::error::AlgebraError;
use crate::module::{kernel_gens, standard_monomials, Elim, FreeMod, ModMatrix, Resolution};
use crate::poly::Poly;
use crate::quotient::{QuotientRing, RingElem};

/// `K(x, A)` on lexicographically ordered subsets, with
/// `d(e_S) = sum_k (-1)^k x_{S[k]} e_{S \ S[k]}`.
pub fn koszul(ring: &QuotientRing, x: &[RingElem]) -> Result<FreeComplex, AlgebraError> {
    if x.iter().any(|a| a.ring() != ring) {
        return Err(AlgebraError::RingMismatch);
    }
    if x.iter().any(RingElem::is_zero) {
        return Err(AlgebraError::Precondition("Koszul complex on a zero element".into()));
    }
    let n = x.len();
    let s = ring.poly();
    let degs: Option<Vec<i64>> = x.iter().map(|a| a.rep().homogeneous_degree().map(i64::from)).collect();
    let subset_degree = |set: &[usize]| degs.as_ref().map_or(0, |d| set.iter().map(|&j| d[j]).sum());
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| index_subsets(n, i)).collect();
    let mut maps = Vec::with_capacity(n);
    for i in 1..=n {
        let (src, tgt) = (&bases[i], &bases[i - 1]);
        let target_degrees: Vec<i64> = tgt.iter().map(|t| subset_degree(t)).collect();
        let source_degrees: Vec<i64> = src.iter().map(|t| subset_degree(t)).collect();
        let columns: Vec<Vec<Poly>> = src
            .iter()
            .map(|set| {
                let mut col = vec![Poly::zero(); tgt.len()];
                for (k, &j) in set.iter().enumerate() {
                    let face: Vec<usize> = set.iter().copied().filter(|&l| l != j).collect();
                    let row = tgt.binary_search(&face).unwrap();
                    let entry = x[j].rep().clone();
                    col[row] = if k % 2 == 0 { entry } else { s.neg(&entry) };
                }
                col
            })
            .collect();
        maps.push(ModMatrix::from_columns(ring, &target_degrees, &columns).with_degrees(target_degrees, source_degrees));
    }
    FreeComplex::new(ring, 1, maps)
}

/// `x` has `dim A` elements in `m` and `A/(x)` has finite length.
pub fn is_sop(ring: &QuotientRing, x: &[RingElem]) -> bool {
    if x.len() != ring.dim() || x.iter().any(|a| !a.rep().in_irrelevant_ideal()) {
        return false;
    }
    let reps: Vec<Poly> = x.iter().map(|a| a.rep().clone()).collect();
    let Ok(q) = ring.quotient_by(&reps) else { return false };
    if q.dim() != 0 {
        return false;
    }
    if reps.iter().all(Poly::is_homogeneous) {
        return true;
    }
    // a nilpotent element of an algebra of length n has n-th power zero
    let n = standard_monomials(ring.nvars(), &q.ideal().leading_monomials()).map_or(1, |b| b.len().max(1)) as u32;
    let s = ring.poly();
    (0..ring.nvars()).all(|v| q.reduce(&s.pow(&s.var(v), n)).is_zero())
}

/// `phi_0, ..., phi_d` with `d^F_i phi_i = phi_{i-1} d^K_i`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: FreeComplex,
    pub target: Resolution,
    pub maps: Vec<ModMatrix>,
    pub seed: u64,
}

impl ChainMap {
    /// Exact check of every commutation square.
    pub fn commutes(&self) -> bool {
        (1..self.maps.len()).all(|i| {
            let (Some(dk), Some(df)) = (self.source.map(i), self.target.map(i)) else { return false };
            match (df.compose(&self.maps[i]), self.maps[i - 1].compose(dk)) {
                (Ok(a), Ok(b)) => a.entries() == b.entries(),
                _ => false,
            }
        })
    }

    /// `phi_d` as a column of `F_d`.
    pub fn top_column(&self) -> Vec<Poly> {
        self.maps.last().map(|m| m.column(0)).unwrap_or_default()
    }
}

/// Adds a random element of `ker d^F_i` of the column's degree.
fn perturb(ring: &QuotientRing, col: &mut [Poly], kernel: &ModMatrix, degree: Option<i64>, rng: &mut ChaCha8Rng) {
    let s = ring.poly();
    for (g, &gdeg) in kernel.columns().iter().zip(kernel.source().degrees()) {
        let mult = match degree {
            Some(d) if d < gdeg => continue,
            Some(d) if d > gdeg => s.random_form((d - gdeg) as u32, 2, rng),
            _ => s.constant(ring.field().from_i64(rng.gen_range(-2..=2))),
        };
        for (c, e) in col.iter_mut().zip(g) {
            *c = ring.reduce(&s.add(c, &s.mul(&mult, e)));
        }
    }
}

/// Lifts the augmentation to a chain map `K -> F`, solving each square column
/// by column. Seed `0` takes normal-form solutions; other seeds add random
/// cycles.
pub fn lift_chain_map(k: &FreeComplex, f: &Resolution, seed: u64) -> Result<ChainMap, AlgebraError> {
    let ring = k.ring().clone();
    if f.len() < k.len() && !f.is_complete() {
        return Err(AlgebraError::ResolutionTooShort { needed: k.len(), available: f.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f0 = f.free_module(0).unwrap();
    if f0.rank() != 1 || k.rank(0) != 1 {
        return Err(AlgebraError::Shape("augmentation needs rank-one F_0 and K_0".into()));
    }
    let mut maps = vec![ModMatrix::identity(&f0).with_degrees(f0.degrees().to_vec(), k.free_module(0).unwrap().degrees().to_vec())];
    for i in 1..=k.len() {
        let dk = k.map(i).unwrap();
        let target = maps[i - 1].compose(dk)?;
        let Some(df) = f.map(i) else {
            if target.is_zero() {
                maps.push(ModMatrix::zero(k.free_module(i).as_ref().unwrap(), &FreeMod::new(&ring, 0)));
                continue;
            }
            return Err(AlgebraError::LiftFailure(format!("nothing to lift into at spot {i}")));
        };
        let elim = Elim::new(&ring, df.rows(), &df.columns(), &[]);
        let kernel = (seed != 0).then(|| kernel_gens(df));
        let mut columns = Vec::with_capacity(target.cols());
        for c in 0..target.cols() {
            let lifted = elim
                .lift_dense(&target.column(c))
                .ok_or_else(|| AlgebraError::LiftFailure(format!("column {c} at spot {i} is not a boundary")))?;
            let mut col: Vec<Poly> = lifted.iter().map(|e| ring.reduce(e)).collect();
            if let Some(kernel) = &kernel {
                let degree = k.is_graded().then(|| k.free_module(i).unwrap().degrees()[c]);
                perturb(&ring, &mut col, kernel, degree, &mut rng);
            }
            columns.push(col);
        }
        let phi = ModMatrix::from_columns(&ring, df.source().degrees(), &columns)
            .with_degrees(df.source().degrees().to_vec(), k.free_module(i).unwrap().degrees().to_vec());
        maps.push(phi);
    }
    let chain = ChainMap { source: k.clone(), target: f.clone(), maps, seed };
    if !chain.commutes() {
        return Err(AlgebraError::LiftFailure("lift does not commute with the differentials".into()));
    }
    Ok(chain)
}

#[derive(Clone, Debug)]
pub struct CecProbe {
    pub seed: u64,
    pub phi_top: Vec<Poly>,
    pub nonzero: bool,
    pub nonzero_mod_m: bool,
    pub commutes: bool,
}

#[derive(Clone, Debug)]
pub struct CecReport {
    pub dim: usize,
    pub sop: Vec<RingElem>,
    pub probes: Vec<CecProbe>,
    /// Every lift tried has `phi_d != 0`.
    pub all_nonzero: bool,
}

/// Lifts `K(x) -> F` for each seed and reports `phi_d`.
pub fn cec_probe(ring: &QuotientRing, sop: &[RingElem], seeds: &[u64]) -> Result<CecReport, AlgebraError> {
    if !is_sop(ring, sop) {
        let shown: Vec<String> = sop.iter().map(ToString::to_string).collect();
        return Err(AlgebraError::NotSop(shown.join(", ")));
    }
    let k = koszul(ring, sop)?;
    let f = ring.residue_field_resolution();
    let mut probes = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let chain = lift_chain_map(&k, f, seed)?;
        let phi_top = chain.top_column();
        probes.push(CecProbe {
            seed,
            nonzero: phi_top.iter().any(|e| !e.is_zero()),
            nonzero_mod_m: phi_top.iter().any(|e| !e.in_irrelevant_ideal()),
            commutes: chain.commutes(),
            phi_top,
        });
    }
    let all_nonzero = probes.iter().all(|p| p.nonzero);
    Ok(CecReport { dim: ring.dim(), sop: sop.to_vec(), probes, all_nonzero })
}
