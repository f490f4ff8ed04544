//! Buchberger's algorithm on sparse vectors of polynomials.
//!
//! Ideals are the rank-one case. Components at index `>= split` form a second
//! block that is smaller than every term of the first block; this elimination
//! order is what lets one Gröbner computation deliver membership, lifting
//! coefficients, and syzygies at once.

use std::cmp::Ordering;
use std::collections::HashSet;

use super::field::Scalar;
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct VTerm {
    pub mon: Monomial,
    pub comp: usize,
    pub coef: Scalar,
}

/// Terms sorted strictly descending under a [`ModOrder`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct Vector {
    pub terms: Vec<VTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ModOrder {
    pub mono: MonomialOrder,
    pub split: usize,
}

impl ModOrder {
    pub fn new(mono: MonomialOrder, split: usize) -> Self {
        ModOrder { mono, split }
    }

    pub fn cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        let ba = a.1 >= self.split;
        let bb = b.1 >= self.split;
        // first block dominates
        bb.cmp(&ba)
            .then_with(|| self.mono.cmp(a.0, b.0))
            .then_with(|| b.1.cmp(&a.1))
    }

    fn cmp_terms(&self, a: &VTerm, b: &VTerm) -> Ordering {
        self.cmp((&a.mon, a.comp), (&b.mon, b.comp))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Criteria {
    pub product: bool,
    pub chain: bool,
}

impl Criteria {
    pub const NAIVE: Criteria = Criteria { product: false, chain: false };
    pub const IDEAL: Criteria = Criteria { product: true, chain: true };
    pub const MODULE: Criteria = Criteria { product: false, chain: true };
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    pub fn from_poly(p: &Poly, comp: usize) -> Vector {
        Vector {
            terms: p
                .terms
                .iter()
                .map(|(m, c)| VTerm { mon: m.clone(), comp, coef: c.clone() })
                .collect(),
        }
    }

    /// Builds a vector from dense components; `offset` shifts component indices.
    pub fn from_dense(order: &ModOrder, polys: &[Poly], offset: usize) -> Vector {
        let mut terms: Vec<VTerm> = polys
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.terms
                    .iter()
                    .map(move |(m, c)| VTerm { mon: m.clone(), comp: i + offset, coef: c.clone() })
            })
            .collect();
        terms.sort_by(|a, b| order.cmp_terms(b, a));
        Vector { terms }
    }

    /// Dense components `[lo, hi)`, re-indexed from zero.
    pub fn to_dense(&self, lo: usize, hi: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); hi - lo];
        // within one component the relative order is the monomial order
        for t in &self.terms {
            if t.comp >= lo && t.comp < hi {
                out[t.comp - lo].terms.push((t.mon.clone(), t.coef.clone()));
            }
        }
        out
    }

    pub fn to_poly(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|t| (t.mon.clone(), t.coef.clone())).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { mon: t.mon.clone(), comp: t.comp, coef: &t.coef * c })
                .collect(),
        }
    }

    pub fn monic(self) -> Vector {
        match self.lead() {
            Some(t) if !t.coef.is_one() => {
                let inv = t.coef.inv().unwrap();
                self.scale(&inv)
            }
            _ => self,
        }
    }
}

/// `a - c * m * g`, where `m = None` means the unit monomial.
pub(crate) fn sub_scaled(
    order: &ModOrder,
    a: &[VTerm],
    g: &Vector,
    m: Option<&Monomial>,
    c: &Scalar,
) -> Vec<VTerm> {
    let mut out = Vec::with_capacity(a.len() + g.terms.len());
    let scaled = g.terms.iter().map(|t| VTerm {
        mon: match m {
            Some(m) => t.mon.mul(m),
            None => t.mon.clone(),
        },
        comp: t.comp,
        coef: -&(&t.coef * c),
    });
    let mut i = 0;
    let mut scaled = scaled.peekable();
    while i < a.len() {
        let Some(s) = scaled.peek() else { break };
        match order.cmp_terms(&a[i], s) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(scaled.next().unwrap());
            }
            Ordering::Equal => {
                let s = scaled.next().unwrap();
                let coef = &a[i].coef + &s.coef;
                if !coef.is_zero() {
                    out.push(VTerm { mon: s.mon, comp: s.comp, coef });
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(scaled);
    out
}

fn find_reducer<'a>(basis: &'a [Vector], t: &VTerm) -> Option<&'a Vector> {
    basis.iter().find(|g| {
        let l = g.lead().unwrap();
        l.comp == t.comp && l.mon.divides(&t.mon)
    })
}

/// Full reduction of `v` by `basis`. With `first_block_only`, terms of the
/// second block are left untouched.
pub(crate) fn reduce(order: &ModOrder, basis: &[Vector], v: Vector, first_block_only: bool) -> Vector {
    let mut rem: Vec<VTerm> = Vec::new();
    let mut cur = v.terms;
    let mut pos = 0;
    while pos < cur.len() {
        if first_block_only && cur[pos].comp >= order.split {
            rem.extend(cur.drain(pos..));
            break;
        }
        match find_reducer(basis, &cur[pos]) {
            Some(g) => {
                let l = g.lead().unwrap();
                let m = l.mon.quotient_of(&cur[pos].mon).unwrap();
                let c = &cur[pos].coef * &l.coef.inv().unwrap();
                cur = sub_scaled(order, &cur[pos..], g, Some(&m), &c);
                pos = 0;
            }
            None => {
                rem.push(cur[pos].clone());
                pos += 1;
            }
        }
    }
    Vector { terms: rem }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
}

fn s_vector(order: &ModOrder, f: &Vector, g: &Vector, lcm: &Monomial) -> Vector {
    let lf = f.lead().unwrap();
    let lg = g.lead().unwrap();
    let mf = lf.mon.quotient_of(lcm).unwrap();
    let mg = lg.mon.quotient_of(lcm).unwrap();
    let cf = lf.coef.inv().unwrap();
    let cg = lg.coef.inv().unwrap();
    let left = Vector { terms: f.terms.iter().map(|t| VTerm { mon: t.mon.mul(&mf), comp: t.comp, coef: &t.coef * &cf }).collect() };
    Vector { terms: sub_scaled(order, &left.terms, g, Some(&mg), &cg) }
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub(crate) fn groebner(order: &ModOrder, gens: Vec<Vector>, criteria: Criteria) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let add = |basis: &mut Vec<Vector>, pending: &mut Vec<Pair>, pending_set: &mut HashSet<(usize, usize)>, h: Vector| {
        let h = h.monic();
        let n = basis.len();
        let lh = h.lead().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.lead().unwrap();
            if lg.comp != lh.comp {
                continue;
            }
            if criteria.product && lg.mon.is_coprime(&lh.mon) {
                continue;
            }
            pending.push(Pair { i, j: n, lcm: lg.mon.lcm(&lh.mon), comp: lh.comp });
            pending_set.insert((i, n));
        }
        basis.push(h);
    };

    for g in gens {
        let r = reduce(order, &basis, g, false);
        if !r.is_zero() {
            add(&mut basis, &mut pending, &mut pending_set, r);
        }
    }

    while !pending.is_empty() {
        let best = (0..pending.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pending[a], &pending[b]);
                p.lcm
                    .degree()
                    .cmp(&q.lcm.degree())
                    .then_with(|| order.cmp((&p.lcm, p.comp), (&q.lcm, q.comp)))
                    .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
            })
            .unwrap();
        let pair = pending.swap_remove(best);
        pending_set.remove(&(pair.i, pair.j));

        if criteria.chain {
            let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
            let redundant = basis.iter().enumerate().any(|(k, g)| {
                if k == pair.i || k == pair.j {
                    return false;
                }
                let lk = g.lead().unwrap();
                lk.comp == pair.comp
                    && lk.mon.divides(&pair.lcm)
                    && !pending_set.contains(&key(pair.i, k))
                    && !pending_set.contains(&key(pair.j, k))
            });
            if redundant {
                continue;
            }
        }

        let s = s_vector(order, &basis[pair.i], &basis[pair.j], &pair.lcm);
        let r = reduce(order, &basis, s, false);
        if !r.is_zero() {
            add(&mut basis, &mut pending, &mut pending_set, r);
        }
    }

    interreduce(order, basis)
}

/// Minimal, tail-reduced, monic, sorted by descending leading term.
pub(crate) fn interreduce(order: &ModOrder, basis: Vec<Vector>) -> Vec<Vector> {
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        let li = basis[i].lead().unwrap();
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let lj = basis[j].lead().unwrap();
            if lj.comp == li.comp && lj.mon.divides(&li.mon) && (lj.mon != li.mon || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut kept: Vec<Vector> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect();
    for i in 0..kept.len() {
        let v = std::mem::take(&mut kept[i]);
        let others: Vec<Vector> = kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        kept[i] = reduce(order, &others, v, false).monic();
    }
    kept.sort_by(|a, b| {
        let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
        order.cmp((&lb.mon, lb.comp), (&la.mon, la.comp))
    });
    kept
}

/// Checks Buchberger's criterion directly: every S-vector reduces to zero.
pub(crate) fn is_groebner(order: &ModOrder, basis: &[Vector]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (li, lj) = (basis[i].lead().unwrap(), basis[j].lead().unwrap());
            if li.comp != lj.comp {
                continue;
            }
            let lcm = li.mon.lcm(&lj.mon);
            let s = s_vector(order, &basis[i], &basis[j], &lcm);
            if !reduce(order, basis, s, false).is_zero() {
                return false;
            }
        }
    }
    true
}
