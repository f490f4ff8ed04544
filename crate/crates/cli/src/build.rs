//! Builds rings, ideals, matrices, modules, and complexes from a job spec.

use std::collections::{BTreeMap, BTreeSet};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stiff_core::audit::{add_split_summand, random_base_change, FreeComplex};
use stiff_core::koszul::koszul;
use stiff_core::module::{minimal_resolution, FreeMod, ModMatrix, PresentedModule};
use stiff_core::poly::{Field, MonomialOrder, Poly, PolyRing};
use stiff_core::quotient::{IdealA, QuotientRing, RingElem};
use stiff_core::AlgebraError;

use crate::jobspec::{ComplexSpec, InputError, JobSpec, ModuleSpec, Objects, RingSpec};

fn algebra(path: &str, e: AlgebraError) -> InputError {
    match e {
        AlgebraError::Parse { column, message } => InputError::invalid(path, format!("column {column}: {message}")),
        other => InputError::invalid(path, other.to_string()),
    }
}

pub fn parse_field(text: &str) -> Result<Field, InputError> {
    let t = text.trim();
    if t == "Q" || t == "QQ" {
        return Ok(Field::Rational);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('F'))
        .ok_or_else(|| InputError::invalid("ring.field", format!("unknown field '{text}'; use Q or F<p>")))?;
    let p: u64 = digits.parse().map_err(|_| InputError::invalid("ring.field", format!("bad modulus in '{text}'")))?;
    Field::prime(p).map_err(|e| algebra("ring.field", e))
}

fn parse_order(text: &str) -> Result<MonomialOrder, InputError> {
    MonomialOrder::from_name(text)
        .ok_or_else(|| InputError::invalid("ring.order", format!("unknown monomial order '{text}'")))
}

pub fn build_ring(spec: &RingSpec) -> Result<QuotientRing, InputError> {
    let field = parse_field(&spec.field)?;
    let order = parse_order(&spec.order)?;
    let s = PolyRing::new(&spec.vars, field, order).map_err(|e| algebra("ring.vars", e))?;
    let gens = spec
        .ideal
        .iter()
        .enumerate()
        .map(|(i, g)| s.parse(g).map_err(|e| algebra(&format!("ring.ideal[{i}]"), e)))
        .collect::<Result<Vec<Poly>, _>>()?;
    QuotientRing::new(&s, gens).map_err(|e| algebra("ring.ideal", e))
}

/// All objects of a job, built and named.
pub struct Workspace {
    pub ring: QuotientRing,
    pub ideals: BTreeMap<String, IdealA>,
    pub sops: BTreeMap<String, Vec<RingElem>>,
    pub matrices: BTreeMap<String, ModMatrix>,
    pub modules: BTreeMap<String, PresentedModule>,
    pub complexes: BTreeMap<String, FreeComplex>,
}

struct Builder<'a> {
    ring: QuotientRing,
    objects: &'a Objects,
    ws: Workspace,
    visiting: BTreeSet<String>,
}

impl Workspace {
    pub fn new(ring_spec: &RingSpec, objects: &Objects) -> Result<Workspace, InputError> {
        let ring = build_ring(ring_spec)?;
        let ws = Workspace {
            ring: ring.clone(),
            ideals: BTreeMap::new(),
            sops: BTreeMap::new(),
            matrices: BTreeMap::new(),
            modules: BTreeMap::new(),
            complexes: BTreeMap::new(),
        };
        let mut b = Builder { ring, objects, ws, visiting: BTreeSet::new() };
        for (name, gens) in &objects.ideals {
            let polys = b.polys(&format!("objects.ideals.{name}"), gens)?;
            b.ws.ideals.insert(name.clone(), IdealA::new(&b.ring, &polys));
        }
        for (name, elems) in &objects.sops {
            let polys = b.polys(&format!("objects.sops.{name}"), elems)?;
            b.ws.sops.insert(name.clone(), polys.iter().map(|p| b.ring.elem(p)).collect());
        }
        for (name, rows) in &objects.matrices {
            let m = b.matrix(&format!("objects.matrices.{name}"), rows, None)?;
            b.ws.matrices.insert(name.clone(), m);
        }
        for name in objects.modules.keys() {
            b.module(name, "objects.modules")?;
        }
        for name in objects.complexes.keys() {
            b.complex(name, "objects.complexes")?;
        }
        Ok(b.ws)
    }

    pub fn from_job(spec: &JobSpec) -> Result<Workspace, InputError> {
        Workspace::new(&spec.ring, &spec.objects)
    }
}

impl Builder<'_> {
    fn poly(&self, path: &str, text: &str) -> Result<Poly, InputError> {
        self.ring.poly().parse(text).map_err(|e| algebra(path, e))
    }

    fn polys(&self, path: &str, texts: &[String]) -> Result<Vec<Poly>, InputError> {
        texts.iter().enumerate().map(|(i, t)| self.poly(&format!("{path}[{i}]"), t)).collect()
    }

    fn matrix(&self, path: &str, rows: &[Vec<String>], cols: Option<usize>) -> Result<ModMatrix, InputError> {
        let ncols = cols.unwrap_or_else(|| rows.first().map_or(0, Vec::len));
        let mut entries = Vec::with_capacity(rows.len() * ncols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(InputError::invalid(format!("{path}[{r}]"), format!("expected {ncols} entries, found {}", row.len())));
            }
            for (c, t) in row.iter().enumerate() {
                entries.push(self.poly(&format!("{path}[{r}][{c}]"), t)?);
            }
        }
        ModMatrix::new(&self.ring, rows.len(), ncols, entries).map_err(|e| algebra(path, e))
    }

    fn enter(&mut self, name: &str, path: &str) -> Result<(), InputError> {
        if !self.visiting.insert(name.to_string()) {
            return Err(InputError::invalid(path, format!("'{name}' refers to itself")));
        }
        Ok(())
    }

    fn module(&mut self, name: &str, path: &str) -> Result<PresentedModule, InputError> {
        if let Some(m) = self.ws.modules.get(name) {
            return Ok(m.clone());
        }
        let spec = self.objects.modules.get(name).ok_or_else(|| InputError::Undefined {
            path: path.to_string(),
            kind: "module",
            name: name.to_string(),
        })?;
        let here = format!("objects.modules.{name}");
        self.enter(&format!("module:{name}"), &here)?;
        let m = match spec {
            ModuleSpec::Cokernel(m) => PresentedModule::new(
                self.ws
                    .matrices
                    .get(m)
                    .ok_or_else(|| InputError::Undefined { path: here.clone(), kind: "matrix", name: m.clone() })?
                    .clone(),
            ),
            ModuleSpec::Quotient(i) => PresentedModule::cyclic(
                self.ws.ideals.get(i).ok_or_else(|| InputError::Undefined { path: here.clone(), kind: "ideal", name: i.clone() })?,
            ),
            ModuleSpec::Free(n) => PresentedModule::free(&FreeMod::new(&self.ring, *n)),
            ModuleSpec::ResidueField {} => PresentedModule::residue_field(&self.ring),
            ModuleSpec::Sum(parts) => {
                let mut acc: Option<PresentedModule> = None;
                for p in parts {
                    let m = self.module(p, &here)?;
                    acc = Some(match acc {
                        Some(a) => a.direct_sum(&m),
                        None => m,
                    });
                }
                acc.ok_or_else(|| InputError::invalid(&here, "empty direct sum"))?
            }
        };
        self.ws.modules.insert(name.to_string(), m.clone());
        Ok(m)
    }

    fn complex(&mut self, name: &str, path: &str) -> Result<FreeComplex, InputError> {
        if let Some(c) = self.ws.complexes.get(name) {
            return Ok(c.clone());
        }
        let spec = self.objects.complexes.get(name).ok_or_else(|| InputError::Undefined {
            path: path.to_string(),
            kind: "complex",
            name: name.to_string(),
        })?;
        let here = format!("objects.complexes.{name}");
        self.enter(&format!("complex:{name}"), &here)?;
        let ring = self.ring.clone();
        let graded = |c: FreeComplex| c.with_inferred_degrees().unwrap_or(c);
        let c = match spec {
            ComplexSpec::Explicit { ranks, maps } => {
                if ranks.len() != maps.len() + 1 {
                    return Err(InputError::invalid(&here, format!("{} ranks for {} maps", ranks.len(), maps.len())));
                }
                let mut built = Vec::with_capacity(maps.len());
                for (k, rows) in maps.iter().enumerate() {
                    let p = format!("{here}.maps[{k}]");
                    if rows.len() != ranks[k] {
                        return Err(InputError::invalid(&p, format!("expected {} rows, found {}", ranks[k], rows.len())));
                    }
                    built.push(self.matrix(&p, rows, Some(ranks[k + 1]))?);
                }
                graded(FreeComplex::new(&ring, ranks[0], built).map_err(|e| algebra(&here, e))?)
            }
            ComplexSpec::Koszul(elems) => {
                let x: Vec<RingElem> = self.polys(&format!("{here}.koszul"), elems)?.iter().map(|p| ring.elem(p)).collect();
                koszul(&ring, &x).map_err(|e| algebra(&here, e))?
            }
            ComplexSpec::Resolution { module, max_len } => {
                let m = self.module(module, &here)?;
                FreeComplex::from_resolution(&minimal_resolution(&m, *max_len))
            }
            ComplexSpec::ScaleTop { complex, by } => {
                let inner = self.complex(complex, &here)?;
                let a = self.poly(&format!("{here}.scale_top.by"), by)?;
                let mut maps = inner.maps().to_vec();
                let last = maps.pop().ok_or_else(|| InputError::invalid(&here, "complex has no maps"))?;
                let s = ring.poly();
                let scaled: Vec<Poly> = last.entries().iter().map(|e| s.mul(e, &a)).collect();
                maps.push(ModMatrix::new(&ring, last.rows(), last.cols(), scaled).map_err(|e| algebra(&here, e))?);
                graded(FreeComplex::new(&ring, inner.rank(0), maps).map_err(|e| algebra(&here, e))?)
            }
            ComplexSpec::Truncate { complex, len } => {
                let inner = self.complex(complex, &here)?;
                let maps: Vec<ModMatrix> = inner.maps().iter().take(*len).cloned().collect();
                FreeComplex::new(&ring, inner.rank(0), maps).map_err(|e| algebra(&here, e))?
            }
            ComplexSpec::Perturb { complex, spot, seed } => {
                let inner = self.complex(complex, &here)?;
                let bigger = add_split_summand(&inner, *spot).map_err(|e| algebra(&here, e))?;
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                random_base_change(&bigger, &mut rng).0
            }
            ComplexSpec::Sum(parts) => {
                let mut acc: Option<FreeComplex> = None;
                for p in parts {
                    let c = self.complex(p, &here)?;
                    acc = Some(match acc {
                        Some(a) => a.direct_sum(&c).map_err(|e| algebra(&here, e))?,
                        None => c,
                    });
                }
                acc.ok_or_else(|| InputError::invalid(&here, "empty direct sum"))?
            }
        };
        self.ws.complexes.insert(name.to_string(), c.clone());
        Ok(c)
    }
}

/// Rewrites every polynomial string in its printed normal form.
pub fn canonicalize(spec: &JobSpec) -> Result<JobSpec, InputError> {
    let ring = build_ring(&spec.ring)?;
    let s = ring.poly();
    let canon = |path: &str, t: &str| -> Result<String, InputError> {
        Ok(s.format(&s.parse(t).map_err(|e| algebra(path, e))?))
    };
    let canon_all = |path: &str, ts: &[String]| -> Result<Vec<String>, InputError> {
        ts.iter().enumerate().map(|(i, t)| canon(&format!("{path}[{i}]"), t)).collect()
    };
    let canon_rows = |path: &str, rows: &[Vec<String>]| -> Result<Vec<Vec<String>>, InputError> {
        rows.iter().enumerate().map(|(r, row)| canon_all(&format!("{path}[{r}]"), row)).collect()
    };
    let mut out = spec.clone();
    out.ring.field = ring.field().to_string();
    out.ring.ideal = canon_all("ring.ideal", &spec.ring.ideal)?;
    for (name, gens) in out.objects.ideals.iter_mut() {
        *gens = canon_all(&format!("objects.ideals.{name}"), gens)?;
    }
    for (name, elems) in out.objects.sops.iter_mut() {
        *elems = canon_all(&format!("objects.sops.{name}"), elems)?;
    }
    for (name, rows) in out.objects.matrices.iter_mut() {
        *rows = canon_rows(&format!("objects.matrices.{name}"), rows)?;
    }
    for (name, c) in out.objects.complexes.iter_mut() {
        let here = format!("objects.complexes.{name}");
        match c {
            ComplexSpec::Explicit { maps, .. } => {
                for (k, rows) in maps.iter_mut().enumerate() {
                    *rows = canon_rows(&format!("{here}.maps[{k}]"), rows)?;
                }
            }
            ComplexSpec::Koszul(elems) => *elems = canon_all(&format!("{here}.koszul"), elems)?,
            ComplexSpec::ScaleTop { by, .. } => *by = canon(&format!("{here}.scale_top.by"), by)?,
            _ => {}
        }
    }
    Ok(out)
}
