//! Command dispatch: one job in, one report out.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use stiff_core::audit::{
    buchsbaum_eisenbud_check, eilenberg_split, first_syzygy_ann_check, homology_dim, homology_vanishes, matrix_rank,
    minor_ideal, nonzero_homology_witness, order_ideal_grade, stiffness_certificate, stiffness_check_basis,
    stiffness_probe_random, thm11_generator_bound, thm14_table, ColumnCheck, FreeComplex, StiffnessReport,
    StiffnessVerdict,
};
use stiff_core::delta::{delta_with_surjections, theorem9_audit, Th9Outcome, Th9Rejection};
use stiff_core::koszul::{cec_probe, koszul, lift_chain_map};
use stiff_core::module::{depth_module, minimal_resolution, Dim, FreeMod, ModMatrix, PresentedModule};
use stiff_core::poly::Poly;
use stiff_core::quotient::{find_regular_sequence, is_regular_sequence, Grade, IdealA};
use stiff_core::AlgebraError;

use crate::build::{canonicalize, Workspace};
use crate::jobspec::{check_command, Bundle, Expectation, InputError, JobSpec};
use crate::report::{self, Envelope, Exit, Outcome};
use crate::witness;

pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_MAX_LEN: usize = 4;
pub const DEFAULT_DEGREE_CAP: u32 = 10;
/// Extra random minimal generators sampled per spot by `order-ideal`.
pub const ORDER_IDEAL_SAMPLES: usize = 2;

type Step<T> = Result<T, Outcome>;

fn input_error(e: InputError) -> Outcome {
    Outcome::new("INPUT_ERROR", Exit::InputError, json!({ "error": e.to_string() }))
}

/// Maps engine errors onto exit statuses; precondition failures carry a
/// rechecked witness when the error names one.
fn algebra_error(e: AlgebraError, f: Option<&FreeComplex>) -> Outcome {
    use AlgebraError::*;
    let message = e.to_string();
    match e {
        Parse { .. } | Shape(_) | InvalidRing(_) | NotPrime(_) | NotHomogeneous(_) | RingMismatch => {
            Outcome::new("INPUT_ERROR", Exit::InputError, json!({ "error": message }))
        }
        Truncated(_) | ResolutionTooShort { .. } | LiftFailure(_) | DivisionByZero => {
            Outcome::new("INCONCLUSIVE", Exit::Inconclusive, json!({ "error": message }))
        }
        _ => match witness::precondition(f, &e) {
            Some(Err(why)) => {
                Outcome::new("WITNESS_REJECTED", Exit::Inconclusive, json!({ "error": message, "witness_error": why }))
            }
            Some(Ok(w)) => Outcome::new("PRECONDITION_FAILED", Exit::Negative, json!({ "error": message, "witness": w })),
            None => Outcome::new("PRECONDITION_FAILED", Exit::Negative, json!({ "error": message })),
        },
    }
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, kind: &'static str) -> Step<&'a T> {
    map.get(name)
        .ok_or_else(|| input_error(InputError::Undefined { path: "target".into(), kind, name: name.to_string() }))
}

fn negative_witness(verdict: &str, mut result: Value, checked: Result<Value, String>) -> Outcome {
    match checked {
        Ok(w) => {
            result["witness"] = w;
            Outcome::new(verdict, Exit::Negative, result)
        }
        Err(why) => {
            result["witness_error"] = json!(why);
            Outcome::new("WITNESS_REJECTED", Exit::Inconclusive, result)
        }
    }
}

fn check_json(c: &ColumnCheck) -> Value {
    json!({
        "spot": c.spot,
        "column": c.column,
        "content": report::ideal(&c.content),
        "grade": report::grade(c.grade),
        "bound": c.bound,
        "passed": c.passed,
        "certificate": c.certificate.as_ref().map(|s| report::elems(s)),
    })
}

fn run_resolve(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let m = lookup(&ws.modules, &spec.target, "module")?;
    let max_len = spec.params.max_len.unwrap_or(DEFAULT_MAX_LEN);
    let res = minimal_resolution(m, max_len);
    let f = FreeComplex::from_resolution(&res);
    let ring_depth = depth_module(&PresentedModule::free(&FreeMod::new(&ws.ring, 1))).map_err(|e| algebra_error(e, None))?;
    let depth = if m.is_zero() { None } else { Some(depth_module(m).map_err(|e| algebra_error(e, None))?) };
    let pd = res.is_complete().then(|| res.len());
    let ab = match (pd, depth) {
        (Some(p), Some(d)) => Some(p + d == ring_depth),
        _ => None,
    };
    let result = json!({
        "complex": report::complex(&f),
        "complete": res.is_complete(),
        "projective_dimension": pd,
        "depth": depth,
        "ring_depth": ring_depth,
        "auslander_buchsbaum": ab,
    });
    Ok(match (ab, pd) {
        (Some(false), _) => Outcome::new("AB_FAILED", Exit::Negative, result),
        (_, Some(p)) => Outcome::new(format!("COMPLETE({p})"), Exit::Ran, result),
        (_, None) => Outcome::new(format!("TRUNCATED({max_len})"), Exit::Ran, result),
    })
}

fn run_grade(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let c = lookup(&ws.ideals, &spec.target, "ideal")?;
    let seed = spec.params.seed();
    let g = c.grade();
    let Grade::Finite(n) = g else {
        return Ok(Outcome::new("GRADE(INF)", Exit::Ran, json!({ "ideal": report::ideal(c), "grade": "inf", "unit": true })));
    };
    let seq = find_regular_sequence(c, n, seed).filter(|s| is_regular_sequence(&ws.ring, s) && s.iter().all(|a| c.contains(a)));
    let longer = find_regular_sequence(c, n + 1, seed);
    let result = json!({
        "ideal": report::ideal(c),
        "grade": n,
        "certificate": seq.as_ref().map(|s| report::elems(s)),
        "longer_sequence_found": longer.is_some(),
    });
    Ok(if seq.is_some() && longer.is_none() {
        Outcome::new(format!("GRADE({n})"), Exit::Ran, result)
    } else {
        Outcome::new("INCONCLUSIVE", Exit::Inconclusive, result)
    })
}

fn stiffness_result(checks: &[ColumnCheck], stages: &[(&str, &StiffnessReport)]) -> Value {
    let mut out = json!({ "checks": checks.iter().map(check_json).collect::<Vec<_>>() });
    for (name, r) in stages {
        out[*name] = json!({ "verdict": r.verdict.to_string(), "trials": r.trials, "seed": r.seed });
    }
    out
}

fn run_stiffness(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let f = lookup(&ws.complexes, &spec.target, "complex")?;
    let seed = spec.params.seed();
    let trials = spec.params.trials.unwrap_or(DEFAULT_TRIALS);
    let err = |e| algebra_error(e, Some(f));
    let basis = stiffness_check_basis(f).map_err(err)?;
    let mut stages = vec![("basis", &basis)];
    let probe;
    let cert;
    let mut last = &basis;
    if basis.verdict != StiffnessVerdict::Violated {
        probe = stiffness_probe_random(f, trials, seed).map_err(err)?;
        stages.push(("probe", &probe));
        last = &probe;
        if probe.verdict != StiffnessVerdict::Violated {
            cert = stiffness_certificate(f, seed).map_err(err)?;
            stages.push(("certificate", &cert));
            last = &cert;
        }
    }
    let result = stiffness_result(&last.checks, &stages);
    Ok(match (&last.verdict, &last.violation) {
        (StiffnessVerdict::Violated, Some(v)) => {
            let mut result = result;
            result["violation"] = json!({
                "spot": v.spot,
                "column": v.column,
                "content": report::ideal(&v.content),
                "grade": report::grade(v.grade),
                "trial": v.trial,
                "base_changes": v.base_changes.iter().map(|b| json!({
                    "spot": b.spot,
                    "matrix": report::matrix(&b.matrix),
                    "inverse": report::matrix(&b.inverse),
                })).collect::<Vec<_>>(),
            });
            negative_witness("VIOLATED", result, witness::violation(f, v))
        }
        (StiffnessVerdict::Certified, _) => Outcome::new("CERTIFIED", Exit::Ran, result),
        (v, _) => Outcome::new(v.to_string(), Exit::Inconclusive, result),
    })
}

fn run_be_check(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let f = lookup(&ws.complexes, &spec.target, "complex")?;
    let cap = spec.params.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
    let err = |e| algebra_error(e, Some(f));
    let be = buchsbaum_eisenbud_check(f);
    let mut spots = Vec::new();
    let mut first_nonzero = None;
    for s in &be.spots {
        let vanishes = homology_vanishes(f, s.spot).map_err(err)?;
        let dim = if vanishes { Dim::Finite(0) } else { homology_dim(f, s.spot, cap).map_err(err)? };
        if !vanishes && first_nonzero.is_none() {
            first_nonzero = Some(s.spot);
        }
        spots.push(json!({
            "spot": s.spot,
            "expected_rank": s.expected_rank,
            "minors": report::ideal(&s.minors),
            "grade": report::grade(s.grade),
            "bound": s.bound,
            "passed": s.passed,
            "homology_vanishes": vanishes,
            "homology_dim": report::dim(dim),
        }));
    }
    let result = json!({
        "acyclic": be.acyclic,
        "ranks": be.ranks,
        "ranks_match": be.ranks_match(),
        "spots": spots,
    });
    Ok(match (be.acyclic, first_nonzero) {
        (true, None) => Outcome::new("ACYCLIC", Exit::Ran, result),
        (false, Some(i)) => {
            let z = nonzero_homology_witness(f, i).map_err(err)?;
            let mut result = result;
            result["homology_witness"] = json!({ "spot": i, "cycle": z.as_ref().map(|z| report::polys(f.ring(), z)) });
            let checked = z.ok_or_else(|| "no cycle outside the boundaries".to_string()).and_then(|z| witness::homology(f, i, &z));
            negative_witness("NOT_ACYCLIC", result, checked)
        }
        _ => Outcome::new("DISAGREEMENT", Exit::Inconclusive, result),
    })
}

fn run_minors(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let m: ModMatrix = match (ws.matrices.get(&spec.target), spec.params.spot) {
        (Some(m), _) => m.clone(),
        (None, Some(spot)) => {
            let f = lookup(&ws.complexes, &spec.target, "complex")?;
            f.map(spot)
                .cloned()
                .ok_or_else(|| input_error(InputError::invalid("params.spot", format!("no differential d{spot}"))))?
        }
        (None, None) => lookup(&ws.matrices, &spec.target, "matrix")?.clone(),
    };
    let sizes: Vec<usize> = match spec.params.size {
        Some(t) => vec![t],
        None => (1..=m.rows().min(m.cols())).collect(),
    };
    let rank = matrix_rank(&m);
    let minors: Vec<Value> = sizes
        .iter()
        .map(|&t| {
            let i = minor_ideal(&m, t as i64);
            json!({ "size": t, "ideal": report::ideal(&i), "grade": report::grade(i.grade()) })
        })
        .collect();
    let result = json!({ "rows": m.rows(), "cols": m.cols(), "rank": rank, "minors": minors });
    Ok(Outcome::new(format!("RANK({rank})"), Exit::Ran, result))
}

fn run_split(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let f = lookup(&ws.complexes, &spec.target, "complex")?;
    let cap = spec.params.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
    let err = |e| algebra_error(e, Some(f));
    let split = eilenberg_split(f).map_err(err)?;
    let reconstructs = split.reconstructs(f);
    let mut homology = Vec::new();
    let mut mismatch = None;
    for i in 0..=f.len() {
        let a = homology_dim(f, i, cap).map_err(err)?;
        let b = homology_dim(&split.minimal, i, cap).map_err(err)?;
        let agree = a == b;
        if !agree && mismatch.is_none() {
            mismatch = Some(i);
        }
        homology.push(json!({ "spot": i, "input": report::dim(a), "minimal": report::dim(b), "agree": agree }));
    }
    let result = json!({
        "pairs": split.pairs.iter().map(|p| json!({
            "spot": p.spot, "source": p.source, "target": p.target, "unit": p.unit.to_string(),
        })).collect::<Vec<_>>(),
        "minimal": report::complex(&split.minimal),
        "split_ranks": split.split.ranks(),
        "kept": split.kept,
        "reconstructs": reconstructs,
        "homology": homology,
    });
    Ok(match (reconstructs, mismatch) {
        (true, None) => Outcome::new("SPLIT", Exit::Ran, result),
        (false, _) => Outcome::new("RECONSTRUCTION_FAILED", Exit::Inconclusive, result),
        (true, Some(i)) => {
            let mut result = result;
            result["mismatch_spot"] = json!(i);
            Outcome::new("HOMOLOGY_MISMATCH", Exit::Negative, result)
        }
    })
}

fn run_thm14(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let f = lookup(&ws.complexes, &spec.target, "complex")?;
    let seed = spec.params.seed();
    let err = |e| algebra_error(e, Some(f));
    let table = thm14_table(f, seed).map_err(err)?;
    let bounds = (1..f.len()).map(|i| thm11_generator_bound(f, i)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let ann = first_syzygy_ann_check(f).map_err(err)?;
    let result = json!({
        "minor_grades": table.entries.iter().map(|e| json!({
            "spot": e.spot, "t": e.t, "columns": e.columns, "ideal": report::ideal(&e.ideal),
            "grade": report::grade(e.grade), "bound": e.bound, "passed": e.passed,
        })).collect::<Vec<_>>(),
        "generator_bounds": bounds.iter().map(|b| json!({
            "spot": b.spot, "generators": b.generators, "free": b.free, "required": b.required, "passed": b.passed,
        })).collect::<Vec<_>>(),
        "annihilators": ann.iter().map(|a| json!({
            "column": a.column, "content": report::ideal(&a.content),
            "annihilator": report::ideal(&a.annihilator), "passed": a.passed,
        })).collect::<Vec<_>>(),
    });
    if let Some(e) = table.entries.iter().find(|e| !e.passed) {
        let d = f.map(e.spot).unwrap().select_columns(&e.columns);
        let again = minor_ideal(&d, e.t as i64);
        let checked = if again.same_ideal(&e.ideal) && !again.grade_at_least(e.bound) {
            Ok(json!({ "spot": e.spot, "t": e.t, "columns": e.columns }))
        } else {
            Err("recomputed minor ideal meets the bound".to_string())
        };
        return Ok(negative_witness("FAILS", result, checked));
    }
    if let Some(b) = bounds.iter().find(|b| !b.passed) {
        let checked = Ok(json!({ "spot": b.spot, "generators": b.generators }));
        return Ok(negative_witness("FAILS", result, checked));
    }
    if let Some(a) = ann.iter().find(|a| !a.passed) {
        let checked = Ok(json!({ "column": a.column, "annihilator": report::ideal(&a.annihilator) }));
        return Ok(negative_witness("FAILS", result, checked));
    }
    Ok(Outcome::new("HOLDS", Exit::Ran, result))
}

/// Basis vectors of `F_i` and a few random homogeneous vectors outside
/// `m F_i`.
pub fn sample_generators(f: &FreeComplex, i: usize, extra: usize, seed: u64) -> Vec<Vec<Poly>> {
    let ring = f.ring();
    let s = ring.poly();
    let module = f.free_module(i).unwrap();
    let degrees = module.degrees();
    let n = module.rank();
    let unit = |j: usize| {
        let mut v = vec![Poly::zero(); n];
        v[j] = s.one();
        v
    };
    let mut out: Vec<Vec<Poly>> = (0..n).map(unit).collect();
    if n < 2 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64) << 32));
    for _ in 0..extra {
        let j = rng.gen_range(0..n);
        let mut v = unit(j);
        for (k, &dk) in degrees.iter().enumerate() {
            if k == j || dk > degrees[j] {
                continue;
            }
            let gap = (degrees[j] - dk) as u32;
            let c = ring.field().from_i64(rng.gen_range(-3..=3));
            let form = if gap == 0 { s.one() } else { s.random_form(gap, 2, &mut rng) };
            v[k] = ring.reduce(&s.scale(&form, &c));
        }
        out.push(v);
    }
    out
}

fn run_order_ideal(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let f = lookup(&ws.complexes, &spec.target, "complex")?;
    let seed = spec.params.seed();
    let err = |e| algebra_error(e, Some(f));
    let spots: Vec<usize> = match spec.params.spot {
        Some(i) => vec![i],
        None => (1..=f.len()).collect(),
    };
    let mut entries = Vec::new();
    let mut failed = None;
    for &i in &spots {
        if i == 0 || i > f.len() {
            return Err(input_error(InputError::invalid("params.spot", format!("need 1 <= spot <= {}", f.len()))));
        }
        for z in sample_generators(f, i, ORDER_IDEAL_SAMPLES, seed) {
            let o = order_ideal_grade(f, i, &z).map_err(err)?;
            if !o.passed && failed.is_none() {
                failed = Some(entries.len());
            }
            entries.push(json!({
                "spot": i,
                "element": report::polys(f.ring(), &o.element),
                "ideal": report::ideal(&o.ideal),
                "grade": report::grade(o.grade),
                "content": report::ideal(&o.content),
                "content_grade": report::grade(o.content_grade),
                "contains_content": o.contains_content,
                "passed": o.passed,
            }));
        }
    }
    let result = json!({ "entries": entries });
    Ok(match failed {
        None => Outcome::new("HOLDS", Exit::Ran, result),
        Some(k) => {
            let checked = Ok(json!({ "entry": k }));
            negative_witness("FAILS", result, checked)
        }
    })
}

fn run_cec_probe(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let sop = lookup(&ws.sops, &spec.target, "sop")?;
    let seeds = spec.params.seeds();
    let r = cec_probe(&ws.ring, sop, &seeds).map_err(|e| algebra_error(e, None))?;
    let result = json!({
        "dim": r.dim,
        "sop": report::elems(&r.sop),
        "probes": r.probes.iter().map(|p| json!({
            "seed": p.seed,
            "phi_top": report::polys(&ws.ring, &p.phi_top),
            "nonzero": p.nonzero,
            "nonzero_mod_m": p.nonzero_mod_m,
            "commutes": p.commutes,
        })).collect::<Vec<_>>(),
    });
    if let Some(p) = r.probes.iter().find(|p| !p.nonzero) {
        let checked = koszul(&ws.ring, sop)
            .and_then(|k| lift_chain_map(&k, ws.ring.residue_field_resolution(), p.seed))
            .map_err(|e| e.to_string())
            .and_then(|c| {
                if c.commutes() && c.top_column().iter().all(Poly::is_zero) {
                    Ok(json!({ "seed": p.seed, "commutes": true }))
                } else {
                    Err("relifted map is nonzero or does not commute".into())
                }
            });
        return Ok(negative_witness("ZERO", result, checked));
    }
    Ok(Outcome::new("NONZERO", Exit::Ran, result))
}

fn delta_json(r: &stiff_core::delta::DeltaReport) -> Value {
    json!({
        "generators": r.generators,
        "dim": r.dim,
        "delta": r.delta,
        "minimal": { "surjection": report::matrix(&r.minimal.surjection), "rank": r.minimal.rank },
        "extra": r.extra.iter().map(|e| json!({ "surjection": report::matrix(&e.surjection), "rank": e.rank })).collect::<Vec<_>>(),
        "surjection_independent": r.surjection_independent(),
    })
}

fn run_delta(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let m = lookup(&ws.modules, &spec.target, "module")?;
    let r = delta_with_surjections(m, 2, spec.params.seed()).map_err(|e| algebra_error(e, None))?;
    let result = delta_json(&r);
    Ok(if r.surjection_independent() {
        Outcome::new(format!("DELTA({})", r.delta), Exit::Ran, result)
    } else {
        Outcome::new("SURJECTION_DEPENDENT", Exit::Negative, result)
    })
}

fn rejection_name(r: &Th9Rejection) -> &'static str {
    match r {
        Th9Rejection::NotGorenstein => "ring is not Gorenstein",
        Th9Rejection::ZeroIdeal => "ideal is zero",
        Th9Rejection::UnitIdeal => "ideal is the unit ideal",
        Th9Rejection::ContainsNonzerodivisor => "ideal contains a nonzerodivisor",
        Th9Rejection::NotAnnihilatorIdeal => "ideal is not an annihilator ideal",
    }
}

fn run_th9(ws: &Workspace, spec: &JobSpec) -> Step<Outcome> {
    let b: &IdealA = lookup(&ws.ideals, &spec.target, "ideal")?;
    Ok(match theorem9_audit(&ws.ring, b).map_err(|e| algebra_error(e, None))? {
        Th9Outcome::Rejected(r) => {
            Outcome::new("NOT_AN_INSTANCE", Exit::Ran, json!({ "ideal": report::ideal(b), "reason": rejection_name(&r) }))
        }
        Th9Outcome::Audited(r) => {
            let mut result = delta_json(&r);
            result["ideal"] = report::ideal(b);
            if r.delta == 0 && r.surjection_independent() {
                Outcome::new("DELTA_ZERO", Exit::Ran, result)
            } else {
                Outcome::new("DELTA_NONZERO", Exit::Negative, result)
            }
        }
    })
}

/// Runs one job against an already built workspace.
pub fn dispatch(ws: &Workspace, spec: &JobSpec) -> Outcome {
    let Some(command) = spec.command.as_deref() else {
        return input_error(InputError::invalid("command", "no command given"));
    };
    if let Err(e) = check_command("command", command) {
        return input_error(e);
    }
    let step = match command {
        "resolve" => run_resolve(ws, spec),
        "grade" => run_grade(ws, spec),
        "stiffness" => run_stiffness(ws, spec),
        "be-check" => run_be_check(ws, spec),
        "minors" => run_minors(ws, spec),
        "split" => run_split(ws, spec),
        "thm14" => run_thm14(ws, spec),
        "order-ideal" => run_order_ideal(ws, spec),
        "cec-probe" => run_cec_probe(ws, spec),
        "delta" => run_delta(ws, spec),
        "th9-audit" => run_th9(ws, spec),
        _ => unreachable!("checked above"),
    };
    step.unwrap_or_else(|o| o)
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Canonicalizes, digests, and runs a job, building its workspace unless one
/// is given.
pub fn run_with(spec: &JobSpec, ws: Option<&Workspace>) -> Envelope {
    let start = Instant::now();
    let canonical = match canonicalize(spec) {
        Ok(c) => c,
        Err(e) => return Envelope::new(spec, "", input_error(e), elapsed_ms(start)),
    };
    let digest = report::digest(&canonical);
    let built;
    let ws = match ws {
        Some(ws) => ws,
        None => match Workspace::from_job(spec) {
            Ok(w) => {
                built = w;
                &built
            }
            Err(e) => return Envelope::new(&canonical, &digest, input_error(e), elapsed_ms(start)),
        },
    };
    let outcome = dispatch(ws, &canonical);
    Envelope::new(&canonical, &digest, outcome, elapsed_ms(start))
}

pub fn run(spec: &JobSpec) -> Envelope {
    run_with(spec, None)
}

/// Adds `offset` to every seed of the job.
pub fn shift_seeds(spec: &mut JobSpec, offset: u64) {
    if offset != 0 {
        spec.params.seeds = Some(spec.params.seeds().iter().map(|s| s.wrapping_add(offset)).collect());
    }
}

/// A job's exit status against its declared expectation.
pub fn meets_expectation(expect: Option<Expectation>, exit: i32) -> bool {
    match expect {
        Some(Expectation::Positive) => exit == Exit::Ran.code(),
        Some(Expectation::Negative) => exit == Exit::Negative.code(),
        None => exit != Exit::InputError.code(),
    }
}

/// Every job of a bundle over one shared workspace, ordered by job name.
pub fn run_bundle(bundle: &Bundle, seed_offset: u64) -> Vec<(JobSpec, Envelope)> {
    let ws = Workspace::new(&bundle.ring, &bundle.objects);
    let mut specs = bundle.job_specs();
    specs.sort_by(|a, b| a.name.cmp(&b.name));
    specs
        .into_iter()
        .map(|mut spec| {
            shift_seeds(&mut spec, seed_offset);
            let env = match &ws {
                Ok(ws) => run_with(&spec, Some(ws)),
                Err(e) => Envelope::new(&spec, "", input_error(e.clone()), 0),
            };
            (spec, env)
        })
        .collect()
}

/// Every bundle, one thread each, ordered by job name.
pub fn run_corpus(bundles: &[Bundle], seed_offset: u64) -> Vec<(JobSpec, Envelope)> {
    let mut all: Vec<(JobSpec, Envelope)> = std::thread::scope(|s| {
        let handles: Vec<_> = bundles.iter().map(|b| s.spawn(move || run_bundle(b, seed_offset))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("bundle thread panicked")).collect()
    });
    all.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    all
}
