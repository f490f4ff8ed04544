use std::fmt;

use super::{QuotientRing, RingElem};
use crate::poly::{IdealS, Poly};

/// A finitely generated ideal of `A`, with its lift `gens + I` to `S`.
#[derive(Clone)]
pub struct IdealA {
    ring: QuotientRing,
    gens: Vec<Poly>,
    lift: IdealS,
}

impl fmt::Debug for IdealA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.display_gens().join(", "))
    }
}

impl IdealA {
    /// Generators are reduced modulo `I`; zero generators are dropped.
    pub fn new(ring: &QuotientRing, gens: &[Poly]) -> IdealA {
        let gens: Vec<Poly> = gens.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        let mut all = ring.ideal().gens().to_vec();
        all.extend(gens.iter().cloned());
        let lift = IdealS::new(ring.poly(), all);
        IdealA { ring: ring.clone(), gens, lift }
    }

    pub fn from_elems(ring: &QuotientRing, elems: &[RingElem]) -> IdealA {
        let gens: Vec<Poly> = elems.iter().map(|e| e.rep().clone()).collect();
        IdealA::new(ring, &gens)
    }

    pub fn zero(ring: &QuotientRing) -> IdealA {
        IdealA::new(ring, &[])
    }

    pub fn unit(ring: &QuotientRing) -> IdealA {
        IdealA::new(ring, &[ring.poly().one()])
    }

    /// Image in `A` of an ideal of `S`.
    pub(crate) fn from_lift(ring: &QuotientRing, lift: &IdealS) -> IdealA {
        IdealA::new(ring, lift.groebner_basis())
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn elems(&self) -> Vec<RingElem> {
        self.gens.iter().map(|g| self.ring.elem(g)).collect()
    }

    pub fn lift(&self) -> &IdealS {
        &self.lift
    }

    pub fn display_gens(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.format(g)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.lift.is_unit()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// All generators homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Poly::is_homogeneous)
    }

    pub fn contains(&self, a: &RingElem) -> bool {
        self.lift.contains(a.rep())
    }

    pub fn contains_ideal(&self, other: &IdealA) -> bool {
        self.lift.contains_ideal(&other.lift)
    }

    /// Equality by double inclusion.
    pub fn same_ideal(&self, other: &IdealA) -> bool {
        self.lift.same_ideal(&other.lift)
    }

    pub fn sum(&self, other: &IdealA) -> IdealA {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        IdealA::new(&self.ring, &gens)
    }

    /// `(0 :_A self)`, computed as `(I : self)` in `S`.
    pub fn annihilator(&self) -> IdealA {
        if self.is_zero() {
            return IdealA::unit(&self.ring);
        }
        IdealA::from_lift(&self.ring, &self.ring.ideal().quotient(&self.lift))
    }

    /// `Ann(Ann(b)) = b` with `b` nonzero.
    pub fn is_annihilator_ideal(&self) -> bool {
        !self.is_zero() && self.annihilator().annihilator().same_ideal(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::tests::xy_ring;

    fn ideal(a: &QuotientRing, gens: &[&str]) -> IdealA {
        let g: Vec<Poly> = gens.iter().map(|s| a.poly().parse(s).unwrap()).collect();
        IdealA::new(a, &g)
    }

    #[test]
    fn annihilators_on_the_node() {
        let a = xy_ring();
        assert!(ideal(&a, &["x"]).annihilator().same_ideal(&ideal(&a, &["y"])));
        assert!(ideal(&a, &["x+y"]).annihilator().is_zero());
        assert!(IdealA::zero(&a).annihilator().is_unit());
    }

    #[test]
    fn annihilator_ideals() {
        let a = xy_ring();
        assert!(ideal(&a, &["x"]).is_annihilator_ideal());
        assert!(!ideal(&a, &["x+y"]).is_annihilator_ideal());
        assert!(!IdealA::zero(&a).is_annihilator_ideal());
    }
}
