use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::field::{Field, Scalar};
use super::monomial::{Monomial, MonomialOrder};
use super::parse;
use crate::error::AlgebraError;

/// Sparse polynomial; terms sorted strictly descending under the owning
/// ring's order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub(crate) terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Maximum total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms.last().filter(|t| t.0.is_one()).map(|t| &t.1)
    }

    /// True when the constant term is zero, i.e. the element lies in the
    /// irrelevant maximal ideal.
    pub fn in_irrelevant_ideal(&self) -> bool {
        self.constant_term().is_none()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }
}

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

/// `k[x_1, ..., x_n]` with a fixed monomial order. Cheap to clone.
#[derive(Clone, Debug)]
pub struct PolyRing(Arc<RingData>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for PolyRing {}

impl PolyRing {
    pub fn new<S: AsRef<str>>(
        vars: &[S],
        field: Field,
        order: MonomialOrder,
    ) -> Result<Self, AlgebraError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgebraError::InvalidRing(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(AlgebraError::InvalidRing(format!("duplicate variable {v:?}")));
            }
        }
        Ok(PolyRing(Arc::new(RingData { vars, field, order })))
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.cmp(a, b)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: vec![(Monomial::one(self.nvars()), c)] }
    }

    pub fn from_int(&self, n: i64) -> Poly {
        self.constant(self.field().from_i64(n))
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly { terms: vec![(Monomial::var(self.nvars(), i), self.field().one())] }
    }

    pub fn monomial(&self, m: Monomial, c: Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: vec![(m, c)] }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// Sorts and combines arbitrary terms.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, Scalar)>) -> Poly {
        terms.sort_by(|a, b| self.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = &last.1 + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { terms: out }
    }

    pub fn parse(&self, text: &str) -> Result<Poly, AlgebraError> {
        parse::parse_poly(self, text)
    }

    fn merge(&self, a: &Poly, b: &Poly, negate_b: bool) -> Poly {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match self.cmp_monomials(&a.terms[i].0, &b.terms[j].0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &b.terms[j];
                    out.push((m.clone(), if negate_b { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b {
                        &a.terms[i].1 - &b.terms[j].1
                    } else {
                        &a.terms[i].1 + &b.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        for (m, c) in &b.terms[j..] {
            out.push((m.clone(), if negate_b { -c } else { c.clone() }));
        }
        Poly { terms: out }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.merge(a, b, false)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.merge(a, b, true)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly { terms: a.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, a: &Poly, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    /// `c * m * a`; monomial multiplication preserves term order.
    pub fn mul_term(&self, a: &Poly, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let (short, long) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
        let mut acc = Poly::zero();
        for (m, c) in &short.terms {
            acc = self.add(&acc, &self.mul_term(long, m, c));
        }
        acc
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, a: &Poly) -> Poly {
        match a.leading() {
            Some((_, c)) if !c.is_one() => self.scale(a, &c.inv().unwrap()),
            _ => a.clone(),
        }
    }

    /// Multivariate division: `a = sum q_i * divisors_i + r`, with no term of
    /// `r` divisible by a leading monomial of a divisor.
    pub fn divide(&self, a: &Poly, divisors: &[Poly]) -> (Vec<Poly>, Poly) {
        let mut quotients = vec![Poly::zero(); divisors.len()];
        let mut rem = Vec::new();
        let mut p = a.clone();
        while let Some((lm, lc)) = p.terms.first().cloned() {
            let hit = divisors.iter().enumerate().find_map(|(k, d)| {
                let (dm, dc) = d.leading()?;
                dm.quotient_of(&lm).map(|q| (k, q, &lc * &dc.inv().unwrap()))
            });
            match hit {
                Some((k, q, c)) => {
                    quotients[k] = self.add(&quotients[k], &self.monomial(q.clone(), c.clone()));
                    p = self.sub(&p, &self.mul_term(&divisors[k], &q, &c));
                }
                None => {
                    rem.push(p.terms.remove(0));
                }
            }
        }
        (quotients, Poly { terms: rem })
    }

    /// Exact quotient `a / b`, if `b` divides `a`.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        if b.is_zero() {
            return None;
        }
        let (mut q, r) = self.divide(a, std::slice::from_ref(b));
        r.is_zero().then(|| q.pop().unwrap())
    }

    /// Random homogeneous form of degree `deg` with at most `nterms` terms.
    pub fn random_form<R: Rng>(&self, deg: u32, nterms: usize, rng: &mut R) -> Poly {
        let mons = monomials_of_degree(self.nvars(), deg);
        let picks: Vec<_> = mons.choose_multiple(rng, nterms.min(mons.len())).cloned().collect();
        let terms = picks.into_iter().map(|m| (m, self.field().random_nonzero(rng))).collect();
        self.from_terms(terms)
    }

    pub fn format(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in a.terms.iter().enumerate() {
            let neg = c.is_negative_printed();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.0.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.0.vars[i], e)),
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }
}

/// All monomials of total degree `deg` in `n` variables.
pub fn monomials_of_degree(n: usize, deg: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur.push(left as u16);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u16);
            rec(n, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if deg == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, 0, deg, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> PolyRing {
        PolyRing::new(&["x", "y"], Field::Rational, MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn arithmetic_and_printing() {
        let r = qxy();
        let x = r.var(0);
        let y = r.var(1);
        let s = r.add(&x, &y);
        let d = r.sub(&x, &y);
        let p = r.mul(&s, &d);
        assert_eq!(r.format(&p), "x^2 - y^2");
        assert_eq!(r.format(&r.pow(&s, 2)), "x^2 + 2*x*y + y^2");
        assert!(r.sub(&p, &p).is_zero());
    }

    #[test]
    fn division_by_single_polynomial() {
        let r = qxy();
        let f = r.parse("x^2*y + y").unwrap();
        let g = r.parse("x^2 - y").unwrap();
        let (q, rem) = r.divide(&f, std::slice::from_ref(&g));
        // x^2*y + y = y*(x^2 - y) + y^2 + y
        assert_eq!(r.format(&q[0]), "y");
        assert_eq!(r.format(&rem), "y^2 + y");
        assert_eq!(r.div_exact(&r.parse("x^2 - y^2").unwrap(), &r.parse("x+y").unwrap()), Some(r.parse("x - y").unwrap()));
    }

    #[test]
    fn degree_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(PolyRing::new(&["x", "x"], Field::Rational, MonomialOrder::Lex).is_err());
        assert!(PolyRing::new(&["2x"], Field::Rational, MonomialOrder::Lex).is_err());
    }
}
