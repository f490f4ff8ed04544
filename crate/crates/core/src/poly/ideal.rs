use super::gb::{self, Criteria, ModOrder, Vector};
use super::monomial::Monomial;
use super::polynomial::{Poly, PolyRing};
use crate::error::AlgebraError;

/// An ideal of `S` together with its reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct IdealS {
    ring: PolyRing,
    gens: Vec<Poly>,
    gb: Vec<Poly>,
    homogeneous: bool,
}

/// Reduced Gröbner basis with the product and chain criteria.
pub fn buchberger(ring: &PolyRing, gens: &[Poly]) -> IdealS {
    IdealS::with_criteria(ring, gens, Criteria::IDEAL)
}

/// Reduced Gröbner basis by exhaustive S-pair closure, no criteria.
pub fn buchberger_naive(ring: &PolyRing, gens: &[Poly]) -> IdealS {
    IdealS::with_criteria(ring, gens, Criteria::NAIVE)
}

impl IdealS {
    pub fn new(ring: &PolyRing, gens: Vec<Poly>) -> IdealS {
        buchberger(ring, &gens)
    }

    pub fn zero(ring: &PolyRing) -> IdealS {
        IdealS::new(ring, Vec::new())
    }

    pub fn unit(ring: &PolyRing) -> IdealS {
        IdealS::new(ring, vec![ring.one()])
    }

    fn with_criteria(ring: &PolyRing, gens: &[Poly], criteria: Criteria) -> IdealS {
        let order = ModOrder::new(ring.order(), 1);
        let vecs = gens.iter().filter(|g| !g.is_zero()).map(|g| Vector::from_poly(g, 0)).collect();
        let gb = gb::groebner(&order, vecs, criteria).iter().map(Vector::to_poly).collect();
        IdealS {
            ring: ring.clone(),
            gens: gens.iter().filter(|g| !g.is_zero()).cloned().collect(),
            gb,
            homogeneous: gens.iter().all(Poly::is_homogeneous),
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn groebner_basis(&self) -> &[Poly] {
        &self.gb
    }

    /// True when the given generators are all homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_zero(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    pub(crate) fn check_poly(&self, f: &Poly) -> Result<(), AlgebraError> {
        let n = self.ring.nvars();
        let field = self.ring.field();
        if f.terms.iter().all(|(m, c)| m.nvars() == n && c.field() == field) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    /// Unique remainder of `f` modulo the Gröbner basis.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly, AlgebraError> {
        self.check_poly(f)?;
        Ok(self.reduce(f))
    }

    pub(crate) fn reduce(&self, f: &Poly) -> Poly {
        let order = ModOrder::new(self.ring.order(), 1);
        let basis: Vec<Vector> = self.gb.iter().map(|g| Vector::from_poly(g, 0)).collect();
        gb::reduce(&order, &basis, Vector::from_poly(f, 0), false).to_poly()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &IdealS) -> bool {
        other.gb.iter().all(|g| self.contains(g))
    }

    /// Equality by double inclusion.
    pub fn same_ideal(&self, other: &IdealS) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn sum(&self, other: &IdealS) -> IdealS {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        IdealS::new(&self.ring, gens)
    }

    pub fn product(&self, other: &IdealS) -> IdealS {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(self.ring.mul(a, b));
            }
        }
        IdealS::new(&self.ring, gens)
    }

    /// `self ∩ other` via the submodule of `S^2` spanned by `(g, g)` and `(h, 0)`.
    pub fn intersection(&self, other: &IdealS) -> IdealS {
        let order = ModOrder::new(self.ring.order(), 1);
        let zero = Poly::zero();
        let mut vecs = Vec::new();
        for g in &self.gens {
            vecs.push(Vector::from_dense(&order, &[g.clone(), g.clone()], 0));
        }
        for h in &other.gens {
            vecs.push(Vector::from_dense(&order, &[h.clone(), zero.clone()], 0));
        }
        IdealS::new(&self.ring, second_block(&order, vecs))
    }

    /// `(self : f)` via the submodule of `S^2` spanned by `(f, 1)` and `(g, 0)`.
    pub fn quotient_by(&self, f: &Poly) -> IdealS {
        if f.is_zero() {
            return IdealS::unit(&self.ring);
        }
        let order = ModOrder::new(self.ring.order(), 1);
        let mut vecs = vec![Vector::from_dense(&order, &[f.clone(), self.ring.one()], 0)];
        for g in &self.gb {
            vecs.push(Vector::from_poly(g, 0));
        }
        IdealS::new(&self.ring, second_block(&order, vecs))
    }

    /// `(self : other) = { f : f·other ⊆ self }`.
    pub fn quotient(&self, other: &IdealS) -> IdealS {
        let mut acc = IdealS::unit(&self.ring);
        for g in &other.gens {
            acc = acc.intersection(&self.quotient_by(g));
        }
        acc
    }

    /// `dim S/I`: the largest set of variables containing the support of no
    /// minimal generator of the leading-term ideal.
    pub fn krull_dim_quotient(&self) -> Result<usize, AlgebraError> {
        if self.is_unit() {
            return Err(AlgebraError::UnitIdeal);
        }
        Ok(monomial_krull_dim(self.ring.nvars(), &self.leading_monomials()))
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        let lead = self.leading_monomials();
        (0..self.ring.nvars()).all(|i| lead.iter().any(|m| m.pure_power_of() == Some(i)))
    }

    /// Checks Buchberger's criterion on the stored basis.
    pub fn verify_groebner(&self) -> bool {
        let order = ModOrder::new(self.ring.order(), 1);
        let basis: Vec<Vector> = self.gb.iter().map(|g| Vector::from_poly(g, 0)).collect();
        gb::is_groebner(&order, &basis) && self.gens.iter().all(|g| self.contains(g))
    }
}

/// Component 1 of the basis elements whose leading term is in component 1.
fn second_block(order: &ModOrder, vecs: Vec<Vector>) -> Vec<Poly> {
    gb::groebner(order, vecs, Criteria::MODULE)
        .into_iter()
        .filter(|v| v.lead().is_some_and(|t| t.comp == 1))
        .map(|v| v.to_dense(1, 2).pop().unwrap())
        .collect()
}

/// Dimension of `k[x_1..x_n]/(mons)` for a monomial ideal.
pub(crate) fn monomial_krull_dim(n: usize, mons: &[Monomial]) -> usize {
    let supports: Vec<u64> = mons.iter().map(|m| m.support().fold(0u64, |a, i| a | (1 << i))).collect();
    let mut best = 0;
    for u in 0u64..(1 << n) {
        let size = u.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !u != 0) {
            best = size;
        }
    }
    best
}
