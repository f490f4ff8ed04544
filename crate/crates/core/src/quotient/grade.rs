//! Grade of an ideal via `Ext^i(A/c, A)`, and regular sequences as
//! independent certificates.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IdealA, QuotientRing, RingElem};
use crate::module::{kernel_gens, Elim, ModMatrix, PresentedModule};
use crate::poly::{Poly, Scalar};

/// `∞` exactly for the unit ideal; `Finite(_) < Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grade {
    Finite(usize),
    Infinite,
}

impl Grade {
    pub fn at_least(&self, t: usize) -> bool {
        match self {
            Grade::Finite(g) => *g >= t,
            Grade::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            Grade::Finite(g) => Some(*g),
            Grade::Infinite => None,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(g) => write!(f, "{g}"),
            Grade::Infinite => write!(f, "inf"),
        }
    }
}

/// Resolves `A/c` one step at a time and tests `Ext^i(A/c, A) = 0` as
/// `ker d_{i+1}^T ⊆ im d_i^T`.
struct DualProbe {
    maps: Vec<ModMatrix>,
    complete: bool,
}

impl DualProbe {
    fn new(c: &IdealA) -> DualProbe {
        let p = PresentedModule::cyclic(c).minimal_presentation();
        DualProbe { complete: p.cols() == 0, maps: vec![p] }
    }

    /// `d_i`, extending the resolution as needed; `None` past the end.
    fn map(&mut self, i: usize) -> Option<&ModMatrix> {
        while self.maps.len() < i && !self.complete {
            let k = kernel_gens(self.maps.last().unwrap());
            if k.cols() == 0 {
                self.complete = true;
            } else {
                self.maps.push(k);
            }
        }
        self.maps.get(i - 1).filter(|d| d.cols() > 0)
    }

    fn ext_vanishes(&mut self, i: usize) -> bool {
        let ring = self.maps[0].ring().clone();
        let fi = if i == 0 { 1 } else { self.map(i).map_or(0, ModMatrix::cols) };
        if fi == 0 {
            return true;
        }
        let cycles = match self.map(i + 1) {
            Some(d) => kernel_gens(&d.transpose()).columns(),
            None => (0..fi)
                .map(|t| {
                    let mut e = vec![Poly::zero(); fi];
                    e[t] = ring.poly().one();
                    e
                })
                .collect(),
        };
        if cycles.is_empty() {
            return true;
        }
        let boundaries = if i == 0 { Vec::new() } else { self.map(i).unwrap().transpose().columns() };
        let elim = Elim::membership(&ring, fi, &boundaries);
        cycles.iter().all(|z| elim.contains(z))
    }
}

impl IdealA {
    /// `min { i : Ext^i(A/c, A) != 0 }`, or `∞` for the unit ideal.
    pub fn grade(&self) -> Grade {
        if self.is_unit() {
            return Grade::Infinite;
        }
        if self.is_zero() {
            return Grade::Finite(0);
        }
        let mut probe = DualProbe::new(self);
        let mut i = 0;
        while probe.ext_vanishes(i) {
            i += 1;
        }
        Grade::Finite(i)
    }

    /// `grade >= t`, testing only `Ext^i` for `i < t`.
    pub fn grade_at_least(&self, t: usize) -> bool {
        if t == 0 || self.is_unit() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        let mut probe = DualProbe::new(self);
        (0..t).all(|i| probe.ext_vanishes(i))
    }
}

/// Each element is a nonzerodivisor modulo the previous ones and the
/// quotient is nonzero, checked through the kernel of a `1 x 1` matrix.
pub fn is_regular_sequence(ring: &QuotientRing, seq: &[RingElem]) -> bool {
    let mut current = ring.clone();
    for a in seq {
        let Ok(m) = ModMatrix::new(&current, 1, 1, vec![a.rep().clone()]) else { return false };
        if m.get(0, 0).is_zero() || kernel_gens(&m).cols() > 0 {
            return false;
        }
        match current.quotient_by(std::slice::from_ref(a.rep())) {
            Ok(next) => current = next,
            Err(_) => return false,
        }
    }
    true
}

fn draw_coefficient(ring: &QuotientRing, rng: &mut ChaCha8Rng) -> Scalar {
    let f = ring.field();
    match rng.gen_range(0..6) {
        0 => f.zero(),
        1 => f.one(),
        2 => f.from_i64(-1),
        3 => f.from_i64(2),
        4 => f.from_i64(-2),
        _ => f.random(rng),
    }
}

/// A random element of `c`: a `k`-linear combination of the generators when
/// they share a degree, otherwise a homogeneous combination in the top degree
/// with random form multipliers.
fn random_member(c: &IdealA, rng: &mut ChaCha8Rng) -> Poly {
    let ring = c.ring();
    let s = ring.poly();
    let gens = c.gens();
    let degrees: Option<Vec<u32>> = gens.iter().map(Poly::homogeneous_degree).collect();
    let mut acc = Poly::zero();
    match degrees {
        Some(ds) if ds.iter().any(|d| *d != ds[0]) => {
            let top = *ds.iter().max().unwrap();
            for (g, d) in gens.iter().zip(&ds) {
                let coef = draw_coefficient(ring, rng);
                if coef.is_zero() {
                    continue;
                }
                let mult = if *d == top { s.constant(coef) } else { s.scale(&s.random_form(top - d, 3, rng), &coef) };
                acc = s.add(&acc, &s.mul(&mult, g));
            }
        }
        _ => {
            for g in gens {
                acc = s.add(&acc, &s.scale(g, &draw_coefficient(ring, rng)));
            }
        }
    }
    ring.reduce(&acc)
}

/// Searches for a regular sequence of length `target` inside `c`, with 64
/// random trials per element. `None` means the budget ran out.
pub fn find_regular_sequence(c: &IdealA, target: usize, seed: u64) -> Option<Vec<RingElem>> {
    find_regular_sequence_with_budget(c, target, seed, 64)
}

pub(crate) fn find_regular_sequence_with_budget(c: &IdealA, target: usize, seed: u64, budget: usize) -> Option<Vec<RingElem>> {
    let ring = c.ring();
    if target == 0 {
        return Some(Vec::new());
    }
    if c.is_unit() || c.is_zero() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = ring.clone();
    let mut seq = Vec::new();
    for _ in 0..target {
        let mut found = None;
        for _ in 0..budget {
            let a = random_member(c, &mut rng);
            if a.is_zero() || !a.in_irrelevant_ideal() {
                continue;
            }
            if current.is_nzd_poly(&a) {
                if let Ok(next) = current.quotient_by(std::slice::from_ref(&a)) {
                    found = Some((a, next));
                    break;
                }
            }
        }
        let (a, next) = found?;
        seq.push(ring.elem(&a));
        current = next;
    }
    Some(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Field, MonomialOrder, PolyRing};
    use crate::quotient::tests::xy_ring;

    fn ideal(a: &QuotientRing, gens: &[&str]) -> IdealA {
        let g: Vec<Poly> = gens.iter().map(|s| a.poly().parse(s).unwrap()).collect();
        IdealA::new(a, &g)
    }

    #[test]
    fn grades_on_small_rings() {
        let a = xy_ring();
        assert_eq!(IdealA::unit(&a).grade(), Grade::Infinite);
        assert_eq!(IdealA::zero(&a).grade(), Grade::Finite(0));
        assert_eq!(ideal(&a, &["x"]).grade(), Grade::Finite(0));
        assert_eq!(ideal(&a, &["x+y"]).grade(), Grade::Finite(1));
        assert_eq!(ideal(&a, &["x", "y"]).grade(), Grade::Finite(1));
        let s = PolyRing::new(&["x", "y"], Field::Rational, MonomialOrder::DegRevLex).unwrap();
        let r = QuotientRing::polynomial_ring(&s);
        assert_eq!(ideal(&r, &["x", "y"]).grade(), Grade::Finite(2));
        assert_eq!(ideal(&r, &["x^2", "x*y"]).grade(), Grade::Finite(1));
    }

    #[test]
    fn regular_sequence_search() {
        let s = PolyRing::new(&["x", "y"], Field::Rational, MonomialOrder::DegRevLex).unwrap();
        let r = QuotientRing::polynomial_ring(&s);
        let seq = find_regular_sequence(&ideal(&r, &["x", "y"]), 2, 0).unwrap();
        assert!(is_regular_sequence(&r, &seq));
        let a = xy_ring();
        assert!(find_regular_sequence(&ideal(&a, &["x"]), 1, 0).is_none());
        assert_eq!(find_regular_sequence(&ideal(&a, &["x"]), 0, 0), Some(Vec::new()));
    }
}
