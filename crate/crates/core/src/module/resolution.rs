use crate::poly::Poly;
use crate::quotient::{IdealA, QuotientRing};

use super::elim::Elim;
use super::minimal::minimal_generators;
use super::{Column, FreeMod, ModMatrix};

/// `M = coker(presentation)`.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    presentation: ModMatrix,
}

impl PresentedModule {
    pub fn new(presentation: ModMatrix) -> PresentedModule {
        PresentedModule { presentation }
    }

    pub fn free(module: &FreeMod) -> PresentedModule {
        PresentedModule::new(ModMatrix::zero(&FreeMod::new(module.ring(), 0), module))
    }

    /// `A/c`.
    pub fn cyclic(c: &IdealA) -> PresentedModule {
        let ring = c.ring();
        let cols: Vec<Column> = c.gens().iter().map(|g| vec![g.clone()]).collect();
        PresentedModule::new(ModMatrix::from_columns(ring, &[0], &cols))
    }

    /// `k = A/m`.
    pub fn residue_field(ring: &QuotientRing) -> PresentedModule {
        let vars: Vec<Poly> = (0..ring.nvars()).map(|i| ring.poly().var(i)).collect();
        PresentedModule::cyclic(&IdealA::new(ring, &vars))
    }

    pub fn ring(&self) -> &QuotientRing {
        self.presentation.ring()
    }

    pub fn presentation(&self) -> &ModMatrix {
        &self.presentation
    }

    /// Number of generators in the given presentation.
    pub fn rank(&self) -> usize {
        self.presentation.rows()
    }

    pub fn generator_degrees(&self) -> &[i64] {
        self.presentation.target().degrees()
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        PresentedModule::new(self.presentation.direct_sum(&other.presentation))
    }

    /// Presentation with no unit entries and minimal relations: its target
    /// rank is the minimal number of generators.
    pub fn minimal_presentation(&self) -> ModMatrix {
        let ring = self.ring();
        let s = ring.poly();
        let mut p = self.presentation.clone();
        while let Some((r, c)) = find_unit(&p) {
            let inv = p.get(r, c).constant_term().unwrap().inv().unwrap();
            let pivot = p.column(c);
            for j in 0..p.cols() {
                if j == c || p.get(r, j).is_zero() {
                    continue;
                }
                let f = s.scale(p.get(r, j), &inv);
                for (row, x) in pivot.iter().enumerate() {
                    let v = s.sub(p.get(row, j), &s.mul(&f, x));
                    p.set(row, j, v);
                }
            }
            p = p.remove_row_col(r, c);
        }
        let (cols, _) = minimal_generators(ring, &p.columns(), p.target().degrees());
        ModMatrix::from_columns(ring, p.target().degrees(), &cols)
    }

    pub fn minimal_generator_count(&self) -> usize {
        self.minimal_presentation().rows()
    }

    pub fn is_zero(&self) -> bool {
        Elim::membership(self.ring(), self.rank(), &self.presentation.columns()).contains_all_basis_vectors()
    }
}

fn find_unit(p: &ModMatrix) -> Option<(usize, usize)> {
    (0..p.cols()).find_map(|c| {
        (0..p.rows()).find_map(|r| {
            let e = p.get(r, c);
            (!e.is_zero() && e.is_constant()).then_some((r, c))
        })
    })
}

/// Generators of `ker f`, minimalized when homogeneous.
pub fn kernel_gens(f: &ModMatrix) -> ModMatrix {
    let ring = f.ring();
    let elim = Elim::new(ring, f.rows(), &f.columns(), &[]);
    let (cols, _) = minimal_generators(ring, &elim.relations(), f.source().degrees());
    ModMatrix::from_columns(ring, f.source().degrees(), &cols)
}

/// `d_1, d_2, ...` with `F_0` the target of `d_1`.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: PresentedModule,
    f0: FreeMod,
    maps: Vec<ModMatrix>,
    complete: bool,
}

impl Resolution {
    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn maps(&self) -> &[ModMatrix] {
        &self.maps
    }

    /// `d_i` for `i >= 1`.
    pub fn map(&self, i: usize) -> Option<&ModMatrix> {
        i.checked_sub(1).and_then(|j| self.maps.get(j))
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// `F_i`.
    pub fn free_module(&self, i: usize) -> Option<FreeMod> {
        if i == 0 {
            Some(self.f0.clone())
        } else {
            self.map(i).map(|d| d.source().clone())
        }
    }

    /// `f_0, ..., f_len`.
    pub fn ranks(&self) -> Vec<usize> {
        std::iter::once(self.f0.rank()).chain(self.maps.iter().map(|d| d.cols())).collect()
    }

    /// The last map is injective.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Every entry of every map lies in the irrelevant ideal.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|d| d.entries().iter().all(Poly::in_irrelevant_ideal))
    }
}

/// Minimal resolution with at most `max_len` maps.
pub fn minimal_resolution(module: &PresentedModule, max_len: usize) -> Resolution {
    let p = module.minimal_presentation();
    let f0 = p.target().clone();
    let mut maps = Vec::new();
    let mut complete = p.cols() == 0;
    if !complete && max_len > 0 {
        maps.push(p);
        loop {
            let k = kernel_gens(maps.last().unwrap());
            if k.cols() == 0 {
                complete = true;
                break;
            }
            if maps.len() == max_len {
                break;
            }
            maps.push(k);
        }
    }
    Resolution { module: module.clone(), f0, maps, complete }
}

pub(crate) fn residue_field_resolution(ring: &QuotientRing, len: usize) -> Resolution {
    minimal_resolution(&PresentedModule::residue_field(ring), len)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjDim {
    Finite(usize),
    ExceedsBound(usize),
}

/// Length of the minimal resolution if it stops within `bound` maps.
pub fn proj_dim(module: &PresentedModule, bound: usize) -> ProjDim {
    let res = minimal_resolution(module, bound);
    if res.is_complete() {
        ProjDim::Finite(res.len())
    } else {
        ProjDim::ExceedsBound(bound)
    }
}
