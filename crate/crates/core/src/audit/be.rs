//! The Buchsbaum–Eisenbud acyclicity criterion.

use super::complex::FreeComplex;
use super::minors::{matrix_rank, minor_ideal};
use crate::quotient::{Grade, IdealA};

#[derive(Clone, Debug)]
pub struct BESpot {
    pub spot: usize,
    /// `r_i = f_i - f_{i+1} + ... ± f_s`.
    pub expected_rank: i64,
    /// `I_{r_i}(d_i)`; the zero ideal when `r_i < 0`.
    pub minors: IdealA,
    pub grade: Grade,
    pub bound: usize,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct BEReport {
    pub spots: Vec<BESpot>,
    pub acyclic: bool,
    /// `rk d_i` for every `i`, present when acyclic.
    pub ranks: Option<Vec<usize>>,
}

impl BEReport {
    /// When acyclic, `rk d_i = r_i` at every spot.
    pub fn ranks_match(&self) -> bool {
        match &self.ranks {
            Some(r) => r.iter().zip(&self.spots).all(|(rk, s)| *rk as i64 == s.expected_rank),
            None => true,
        }
    }
}

/// `r_1, ..., r_s`.
pub fn expected_ranks(f: &FreeComplex) -> Vec<i64> {
    let ranks = f.ranks();
    let s = f.len();
    let mut out = vec![0i64; s + 1];
    for i in (1..=s).rev() {
        let next = if i == s { 0 } else { out[i + 1] };
        out[i] = ranks[i] as i64 - next;
    }
    out.split_off(1)
}

/// `F` is acyclic iff `gr I_{r_i}(d_i) >= i` for all `i`. Minimality is not
/// required.
pub fn buchsbaum_eisenbud_check(f: &FreeComplex) -> BEReport {
    let mut spots = Vec::new();
    for (k, r) in expected_ranks(f).into_iter().enumerate() {
        let spot = k + 1;
        let d = f.map(spot).unwrap();
        let minors = if r < 0 { IdealA::zero(f.ring()) } else { minor_ideal(d, r) };
        let grade = minors.grade();
        spots.push(BESpot { spot, expected_rank: r, passed: grade.at_least(spot), minors, grade, bound: spot });
    }
    let acyclic = spots.iter().all(|s| s.passed);
    let ranks = acyclic.then(|| {
        spots
            .iter()
            .map(|s| {
                let d = f.map(s.spot).unwrap();
                // I_r != 0 holds by the grade bound; I_{r+1} = 0 confirms rank r
                if minor_ideal(d, s.expected_rank + 1).is_zero() {
                    s.expected_rank as usize
                } else {
                    matrix_rank(d)
                }
            })
            .collect()
    });
    BEReport { spots, acyclic, ranks }
}
