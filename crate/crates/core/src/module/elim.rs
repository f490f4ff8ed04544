//! The single elimination computation behind kernels, preimages, subquotient
//! dimensions, and lifting.
//!
//! For generators `k_1..k_m` and relations `l_1..l_q` in `A^r`, the submodule
//! of `S^(r+m)` spanned by `[k_j; e_j]`, `[l; 0]`, `[I e_t; 0]` and
//! `[0; I e_j]` is given a Gröbner basis under an order in which the first
//! `r` components dominate. Basis elements led in the second block span
//! `Q = { a : sum a_j k_j ∈ L + I A^r }`, and `S^m / Q` is the subquotient
//! `K / (K ∩ L)`.

use std::fmt;

use crate::poly::gb::{self, Criteria, ModOrder, Vector};
use crate::poly::{monomials_of_degree, Monomial, Poly, Scalar};
use crate::quotient::QuotientRing;

use super::Column;

/// A `k`-dimension, exact or bounded below by counting up to a degree cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    Finite(usize),
    AtLeast { count: usize, cap: u32 },
}

impl Dim {
    pub fn is_zero(&self) -> bool {
        matches!(self, Dim::Finite(0))
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            Dim::Finite(n) => Some(*n),
            Dim::AtLeast { .. } => None,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::AtLeast { count, cap } => write!(f, ">={count} (degrees <= {cap})"),
        }
    }
}

pub(crate) struct Elim {
    ring: QuotientRing,
    order: ModOrder,
    ambient: usize,
    ngens: usize,
    /// Degree of the generator `k_j`; zero unless set.
    shifts: Vec<i64>,
    gb: Vec<Vector>,
}

impl Elim {
    pub fn new(ring: &QuotientRing, ambient: usize, k: &[Column], l: &[Column]) -> Elim {
        let order = ModOrder::new(ring.poly().order(), ambient);
        let ngens = k.len();
        let width = ambient + ngens;
        let zero = Poly::zero();
        let one = ring.poly().one();
        let mut gens = Vec::new();
        for (j, col) in k.iter().enumerate() {
            let mut dense: Vec<Poly> = col.clone();
            dense.resize(width, zero.clone());
            dense[ambient + j] = one.clone();
            gens.push(Vector::from_dense(&order, &dense, 0));
        }
        for col in l {
            let v = Vector::from_dense(&order, col, 0);
            if !v.is_zero() {
                gens.push(v);
            }
        }
        for g in ring.ideal().groebner_basis() {
            for t in 0..width {
                gens.push(Vector::from_poly(g, t));
            }
        }
        let gb = gb::groebner(&order, gens, Criteria::MODULE);
        Elim { ring: ring.clone(), order, ambient, ngens, shifts: vec![0; ngens], gb }
    }

    /// Places the generator `k_j` in degree `shifts[j]`, which makes
    /// [`Elim::quotient_dim`] count by internal degree.
    pub fn with_shifts(mut self, shifts: Vec<i64>) -> Elim {
        debug_assert_eq!(shifts.len(), self.ngens);
        self.shifts = shifts;
        self
    }

    /// Submodule membership test without coefficients.
    pub fn membership(ring: &QuotientRing, ambient: usize, l: &[Column]) -> Elim {
        Elim::new(ring, ambient, &[], l)
    }

    fn second_block(&self) -> impl Iterator<Item = &Vector> {
        self.gb.iter().filter(move |v| v.lead().is_some_and(|t| t.comp >= self.ambient))
    }

    /// Gröbner basis of `Q` as dense columns of length `ngens`.
    pub fn relations(&self) -> Vec<Column> {
        self.second_block().map(|v| v.to_dense(self.ambient, self.ambient + self.ngens)).collect()
    }

    /// `w ∈ K + L + I A^r`.
    pub fn contains(&self, w: &[Poly]) -> bool {
        let v = Vector::from_dense(&self.order, w, 0);
        let r = gb::reduce(&self.order, &self.gb, v, true);
        r.terms.iter().all(|t| t.comp >= self.ambient)
    }

    /// Every standard basis vector of `A^r` lies in `K + L + I A^r`.
    pub fn contains_all_basis_vectors(&self) -> bool {
        let one = self.ring.poly().one();
        (0..self.ambient).all(|t| {
            let mut e = vec![Poly::zero(); self.ambient];
            e[t] = one.clone();
            self.contains(&e)
        })
    }

    /// Coefficients `a` in normal form modulo `Q` with `w ≡ sum a_j k_j`
    /// modulo `L + I A^r`, or `None` if `w ∉ K + L + I A^r`.
    pub fn lift(&self, w: &[Poly]) -> Option<Vector> {
        let v = Vector::from_dense(&self.order, w, 0);
        let r = gb::reduce(&self.order, &self.gb, v, false);
        if r.terms.iter().any(|t| t.comp < self.ambient) {
            return None;
        }
        let minus_one = -&self.ring.field().one();
        let mut out = r.scale(&minus_one);
        for t in &mut out.terms {
            t.comp -= self.ambient;
        }
        Some(out)
    }

    /// Dense form of [`Elim::lift`].
    pub fn lift_dense(&self, w: &[Poly]) -> Option<Column> {
        let v = self.lift(w)?;
        Some(v.to_dense(0, self.ngens))
    }

    fn leads_by_comp(&self) -> Vec<Vec<Monomial>> {
        let mut leads = vec![Vec::new(); self.ngens];
        for v in self.second_block() {
            let t = v.lead().unwrap();
            leads[t.comp - self.ambient].push(t.mon.clone());
        }
        leads
    }

    pub fn quotient_is_zero(&self) -> bool {
        self.leads_by_comp().iter().all(|l| l.iter().any(Monomial::is_one))
    }

    /// `dim_k S^m / Q`. When infinite, the standard monomials `m` of
    /// component `j` with `deg m + shifts[j] <= cap` are counted.
    pub fn quotient_dim(&self, cap: u32) -> Dim {
        let n = self.ring.nvars();
        let mut total = 0usize;
        let mut truncated = false;
        for (leads, shift) in self.leads_by_comp().iter().zip(&self.shifts) {
            match standard_monomials(n, leads) {
                Some(b) => total += b.len(),
                None => {
                    truncated = true;
                    for d in 0..=(i64::from(cap) - shift).max(-1) {
                        total += monomials_of_degree(n, d as u32)
                            .into_iter()
                            .filter(|m| !leads.iter().any(|l| l.divides(m)))
                            .count();
                    }
                }
            }
        }
        if truncated {
            Dim::AtLeast { count: total, cap }
        } else {
            Dim::Finite(total)
        }
    }

    /// `k`-basis of `S^m / Q` as (monomial, generator index), when finite.
    pub fn standard_basis(&self) -> Option<Vec<(Monomial, usize)>> {
        let n = self.ring.nvars();
        let mut out = Vec::new();
        for (j, leads) in self.leads_by_comp().iter().enumerate() {
            for m in standard_monomials(n, leads)? {
                out.push((m, j));
            }
        }
        Some(out)
    }

    /// Coordinates of `w` in [`Elim::standard_basis`].
    pub fn coordinates(&self, basis: &[(Monomial, usize)], w: &[Poly]) -> Option<Vec<Scalar>> {
        let a = self.lift(w)?;
        let mut out = vec![self.ring.field().zero(); basis.len()];
        for t in a.terms {
            let idx = basis.iter().position(|(m, j)| *m == t.mon && *j == t.comp)?;
            out[idx] = t.coef;
        }
        Some(out)
    }
}

/// Monomials outside the monomial ideal generated by `leads`, when finitely
/// many; `None` otherwise.
pub(crate) fn standard_monomials(n: usize, leads: &[Monomial]) -> Option<Vec<Monomial>> {
    if leads.iter().any(Monomial::is_one) {
        return Some(Vec::new());
    }
    let mut bounds = Vec::with_capacity(n);
    for i in 0..n {
        let b = leads
            .iter()
            .filter(|m| m.pure_power_of() == Some(i))
            .map(|m| m.exponents()[i])
            .min()?;
        bounds.push(b);
    }
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    loop {
        let m = Monomial::from_exponents(&exps);
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exponents().cmp(a.exponents())));
                return Some(out);
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}
