//! The graded ring `A = S/I`: elements, ideals, zerodivisors, annihilators,
//! grade, and regular sequences.

mod grade;
mod ideal;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::AlgebraError;
use crate::module::Resolution;
use crate::poly::{Field, IdealS, Poly, PolyRing};

pub use grade::{find_regular_sequence, is_regular_sequence, Grade};
pub(crate) use grade::find_regular_sequence_with_budget;
pub use ideal::IdealA;

struct QuotientData {
    poly: PolyRing,
    ideal: IdealS,
    dim: usize,
    graded: bool,
    residue_resolution: OnceLock<Resolution>,
}

/// `S/I` with `I` proper. Cheap to clone; the minimal resolution of the
/// residue field is computed at most once per ring.
#[derive(Clone)]
pub struct QuotientRing(Arc<QuotientData>);

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientRing({})", self.describe())
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.poly == other.0.poly && self.0.ideal.groebner_basis() == other.0.ideal.groebner_basis())
    }
}

impl Eq for QuotientRing {}

impl QuotientRing {
    /// Graded quotient by homogeneous generators.
    pub fn new(poly: &PolyRing, gens: Vec<Poly>) -> Result<QuotientRing, AlgebraError> {
        if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
            return Err(AlgebraError::NotHomogeneous(poly.format(g)));
        }
        Self::build(poly, IdealS::new(poly, gens), true)
    }

    pub fn polynomial_ring(poly: &PolyRing) -> QuotientRing {
        Self::build(poly, IdealS::zero(poly), true).unwrap()
    }

    /// Quotient by arbitrary further relations. The result is graded only
    /// when every relation is homogeneous.
    pub fn quotient_by(&self, extra: &[Poly]) -> Result<QuotientRing, AlgebraError> {
        let mut gens = self.0.ideal.gens().to_vec();
        gens.extend(extra.iter().cloned());
        let graded = self.0.graded && extra.iter().all(Poly::is_homogeneous);
        Self::build(&self.0.poly, IdealS::new(&self.0.poly, gens), graded)
    }

    fn build(poly: &PolyRing, ideal: IdealS, graded: bool) -> Result<QuotientRing, AlgebraError> {
        let dim = ideal.krull_dim_quotient()?;
        Ok(QuotientRing(Arc::new(QuotientData {
            poly: poly.clone(),
            ideal,
            dim,
            graded,
            residue_resolution: OnceLock::new(),
        })))
    }

    pub fn poly(&self) -> &PolyRing {
        &self.0.poly
    }

    pub fn ideal(&self) -> &IdealS {
        &self.0.ideal
    }

    pub fn field(&self) -> Field {
        self.0.poly.field()
    }

    pub fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.0.poly.nvars()
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn is_graded(&self) -> bool {
        self.0.graded
    }

    /// Normal form modulo `I`.
    pub fn reduce(&self, p: &Poly) -> Poly {
        self.0.ideal.reduce(p)
    }

    pub fn elem(&self, p: &Poly) -> RingElem {
        RingElem { ring: self.clone(), rep: self.reduce(p) }
    }

    pub fn parse(&self, text: &str) -> Result<RingElem, AlgebraError> {
        Ok(self.elem(&self.0.poly.parse(text)?))
    }

    pub fn zero(&self) -> RingElem {
        self.elem(&Poly::zero())
    }

    pub fn one(&self) -> RingElem {
        self.elem(&self.0.poly.one())
    }

    pub fn var(&self, i: usize) -> RingElem {
        self.elem(&self.0.poly.var(i))
    }

    pub fn format(&self, p: &Poly) -> String {
        self.0.poly.format(p)
    }

    /// `k[x, y]/(x*y)` style description.
    pub fn describe(&self) -> String {
        let field = match self.field() {
            Field::Rational => "QQ".to_string(),
            f => f.to_string(),
        };
        let mut s = format!("{}[{}]", field, self.0.poly.vars().join(", "));
        let gens = self.0.ideal.gens();
        if !gens.is_empty() {
            let g: Vec<String> = gens.iter().map(|g| self.format(g)).collect();
            s.push_str(&format!("/({})", g.join(", ")));
        }
        s
    }

    /// True when `(0 :_A a) = 0`, tested as `(I : a) = I` in `S`.
    pub fn is_nzd(&self, a: &RingElem) -> bool {
        self.is_nzd_poly(&a.rep)
    }

    pub(crate) fn is_nzd_poly(&self, a: &Poly) -> bool {
        let a = self.reduce(a);
        if a.is_zero() {
            return false;
        }
        self.0.ideal.contains_ideal(&self.0.ideal.quotient_by(&a))
    }

    /// Minimal resolution of `k = A/m` to length `dim A + 2`.
    pub fn residue_field_resolution(&self) -> &Resolution {
        self.0
            .residue_resolution
            .get_or_init(|| crate::module::residue_field_resolution(self, self.dim() + 2))
    }
}

/// An element of `A`, stored as its normal form modulo `I`.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    ring: QuotientRing,
    rep: Poly,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format(&self.rep))
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format(&self.rep))
    }
}

impl RingElem {
    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        RingElem { ring: self.ring.clone(), rep: self.ring.poly().add(&self.rep, &other.rep) }
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        RingElem { ring: self.ring.clone(), rep: self.ring.poly().sub(&self.rep, &other.rep) }
    }

    pub fn neg(&self) -> RingElem {
        RingElem { ring: self.ring.clone(), rep: self.ring.poly().neg(&self.rep) }
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        self.ring.elem(&self.ring.poly().mul(&self.rep, &other.rep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    pub(crate) fn xy_ring() -> QuotientRing {
        let s = PolyRing::new(&["x", "y"], Field::Rational, MonomialOrder::DegRevLex).unwrap();
        QuotientRing::new(&s, vec![s.parse("x*y").unwrap()]).unwrap()
    }

    #[test]
    fn zerodivisors_of_the_node() {
        let a = xy_ring();
        assert_eq!(a.dim(), 1);
        assert!(!a.is_nzd(&a.parse("x").unwrap()));
        assert!(!a.is_nzd(&a.parse("y").unwrap()));
        assert!(a.is_nzd(&a.parse("x+y").unwrap()));
        assert!(a.is_nzd(&a.parse("x-y").unwrap()));
        assert!(!a.is_nzd(&a.zero()));
    }

    #[test]
    fn elements_are_normal_forms() {
        let a = xy_ring();
        let x = a.parse("x").unwrap();
        let y = a.parse("y").unwrap();
        assert!(x.mul(&y).is_zero());
        assert_eq!(a.parse("x^2*y + x").unwrap(), x);
    }

    #[test]
    fn rejects_inhomogeneous_and_unit_ideals() {
        let s = PolyRing::new(&["x"], Field::Rational, MonomialOrder::DegRevLex).unwrap();
        assert!(matches!(
            QuotientRing::new(&s, vec![s.parse("x^2 - x").unwrap()]),
            Err(AlgebraError::NotHomogeneous(_))
        ));
        assert!(matches!(QuotientRing::new(&s, vec![s.parse("3").unwrap()]), Err(AlgebraError::UnitIdeal)));
    }
}
