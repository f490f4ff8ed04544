//! The acceptance suite: one PASS/FAIL line per criterion, over the bundled
//! corpus. Runs without the libtest harness so the lines always print.

use std::collections::HashSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use stiff_cli::build::Workspace;
use stiff_cli::corpus;
use stiff_cli::run::sample_generators;
use stiff_core::audit::{
    buchsbaum_eisenbud_check, change_basis, column_ideal, eilenberg_split, homology_dim, homology_vanishes,
    is_minimal, order_ideal_grade, stiffness_certificate, stiffness_check_basis, stiffness_probe_random,
    thm11_generator_bound, thm14_table, FreeComplex, StiffnessVerdict,
};
use stiff_core::delta::{delta, delta_with_surjections, is_gorenstein, theorem9_audit, Th9Outcome};
use stiff_core::koszul::{cec_probe, is_sop};
use stiff_core::module::{depth_module, minimal_resolution, FreeMod, ModMatrix, PresentedModule};
use stiff_core::poly::{IdealS, Poly};
use stiff_core::quotient::{find_regular_sequence, Grade, IdealA, QuotientRing, RingElem};

const TRIALS: usize = 100;
const DEGREE_CAP: u32 = 10;
const CEC_SEEDS: [u64; 3] = [0, 1, 2];

/// `(bundle name, workspace)` for every corpus bundle.
fn workspaces() -> Vec<(String, Workspace)> {
    corpus::bundled()
        .expect("bundled corpus parses")
        .iter()
        .map(|b| (b.name.clone(), Workspace::new(&b.ring, &b.objects).expect("bundled corpus builds")))
        .collect()
}

/// Each element is a nonzerodivisor modulo the defining ideal and the
/// earlier ones, decided by colon ideals in the polynomial ring, and the
/// final quotient is nonzero.
fn regular_in_s(a: &QuotientRing, seq: &[RingElem]) -> bool {
    let mut gens = a.ideal().gens().to_vec();
    for x in seq {
        let j = IdealS::new(a.poly(), gens.clone());
        if j.contains(x.rep()) || !j.quotient_by(x.rep()).same_ideal(&j) {
            return false;
        }
        gens.push(x.rep().clone());
    }
    !IdealS::new(a.poly(), gens).is_unit()
}

/// No element of `c` is a nonzerodivisor modulo `seq`: some `w` outside
/// `J = I + (seq)` has `w c ⊆ J`.
fn maximal_in(c: &IdealA, seq: &[RingElem]) -> bool {
    let a = c.ring();
    let mut gens = a.ideal().gens().to_vec();
    gens.extend(seq.iter().map(|x| x.rep().clone()));
    let j = IdealS::new(a.poly(), gens);
    !j.quotient(c.lift()).same_ideal(&j)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

struct Tally {
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    fn clean(&self) -> bool {
        self.failures.is_empty()
    }

    fn summary(&self) -> String {
        if self.failures.is_empty() {
            String::new()
        } else {
            format!("; failures: {}", self.failures.join(" | "))
        }
    }
}

/// A corpus complex, its homology verdict and its B–E verdict.
struct Audited<'a> {
    bundle: &'a str,
    name: &'a str,
    f: &'a FreeComplex,
    acyclic: bool,
}

fn criterion_1(ws: &[(String, Workspace)]) -> (Outcome, Vec<Audited<'_>>) {
    let start = Instant::now();
    let mut tally = Tally { failures: Vec::new() };
    let mut audited = Vec::new();
    let mut broken = 0;
    for (bundle, w) in ws {
        for (name, f) in &w.complexes {
            let be = buchsbaum_eisenbud_check(f);
            let mut vanishes = true;
            for i in 1..=f.len() {
                let v = homology_vanishes(f, i).unwrap();
                let dim = homology_dim(f, i, DEGREE_CAP).unwrap();
                tally.check(v == dim.is_zero(), || format!("{bundle}/{name}: H_{i} vanishing and dimension disagree"));
                vanishes &= v;
            }
            tally.check(be.acyclic == vanishes, || format!("{bundle}/{name}: B-E {} vs homology {}", be.acyclic, vanishes));
            broken += usize::from(!vanishes);
            audited.push(Audited { bundle, name, f, acyclic: vanishes });
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = tally.clean() && audited.len() >= 30 && broken >= 10 && secs < 300.0;
    let detail = format!("{} complexes, {} with homology, {:.1}s{}", audited.len(), broken, secs, tally.summary());
    (outcome(pass, detail), audited)
}

/// Acyclic minimal complexes of resolutions and Koszul complexes.
fn resolutions<'a>(audited: &'a [Audited<'a>]) -> Vec<&'a Audited<'a>> {
    audited
        .iter()
        .filter(|a| a.acyclic && is_minimal(a.f) && a.f.len() <= 4 && (a.name.starts_with("res_") || a.name.starts_with("kos_")))
        .collect()
}

fn criterion_2(complexes: &[&Audited]) -> Outcome {
    let mut tally = Tally { failures: Vec::new() };
    let mut rings = HashSet::new();
    for a in complexes {
        let f = a.f;
        rings.insert(a.bundle);
        let basis = stiffness_check_basis(f).unwrap();
        tally.check(basis.checks.iter().all(|c| c.passed), || format!("{}/{}: basis check failed", a.bundle, a.name));
        let probe = stiffness_probe_random(f, TRIALS, 0).unwrap();
        tally.check(probe.violation.is_none() && probe.trials >= TRIALS, || format!("{}/{}: probe found a violation", a.bundle, a.name));
        let cert = stiffness_certificate(f, 0).unwrap();
        tally.check(cert.verdict == StiffnessVerdict::Certified, || format!("{}/{}: certificate {}", a.bundle, a.name, cert.verdict));
        for c in &cert.checks {
            let valid = c.certificate.as_ref().is_some_and(|seq| {
                seq.len() >= c.spot && regular_in_s(f.ring(), seq) && seq.iter().all(|x| c.content.contains(x))
            });
            tally.check(valid, || format!("{}/{}: column {} of d{} has no valid certificate", a.bundle, a.name, c.column, c.spot));
        }
    }
    let pass = tally.clean() && complexes.len() >= 30 && rings.len() >= 6;
    outcome(pass, format!("{} resolutions over {} rings, {} trials each{}", complexes.len(), rings.len(), TRIALS, tally.summary()))
}

fn criterion_3(audited: &[Audited], complexes: &[&Audited]) -> Outcome {
    let mut tally = Tally { failures: Vec::new() };
    let mut seen = HashSet::new();
    let mut ideals: Vec<(&str, IdealA)> = Vec::new();
    let mut add = |bundle, c: IdealA| {
        if seen.insert((bundle, c.lift().groebner_basis().to_vec())) {
            ideals.push((bundle, c));
        }
    };
    for a in audited {
        for s in buchsbaum_eisenbud_check(a.f).spots {
            add(a.bundle, s.minors);
        }
    }
    for a in complexes {
        for (k, d) in a.f.maps().iter().enumerate() {
            for col in 0..d.cols() {
                add(a.bundle, column_ideal(a.f, k + 1, col));
            }
        }
    }
    let mut units = 0;
    for (bundle, c) in &ideals {
        match c.grade() {
            Grade::Infinite => {
                units += 1;
                tally.check(c.is_unit(), || format!("{bundle}: proper ideal {:?} with infinite grade", c.display_gens()));
            }
            Grade::Finite(g) => {
                let ok = match find_regular_sequence(c, g, 0) {
                    Some(seq) => {
                        seq.len() == g
                            && seq.iter().all(|x| c.contains(x))
                            && regular_in_s(c.ring(), &seq)
                            && (c.is_zero() || maximal_in(c, &seq))
                    }
                    None => false,
                };
                tally.check(ok, || format!("{bundle}: {:?} grade {g} not matched by a maximal sequence", c.display_gens()));
            }
        }
    }
    let pass = tally.clean() && !ideals.is_empty();
    outcome(pass, format!("{} distinct ideals, {} unit ideals{}", ideals.len(), units, tally.summary()))
}

fn criterion_4(ws: &[(String, Workspace)]) -> Outcome {
    let mut tally = Tally { failures: Vec::new() };
    let mut finite = 0;
    for (bundle, w) in ws {
        let depth_a = depth_module(&PresentedModule::free(&FreeMod::new(&w.ring, 1))).unwrap();
        for (name, m) in &w.modules {
            // a finite graded projective dimension is at most depth A <= nvars
            let res = minimal_resolution(m, w.ring.nvars() + 1);
            if !res.is_complete() {
                continue;
            }
            finite += 1;
            let depth_m = depth_module(m).unwrap();
            tally.check(res.len() + depth_m == depth_a, || {
                format!("{bundle}/{name}: pd {} + depth {} != {}", res.len(), depth_m, depth_a)
            });
        }
    }
    outcome(tally.clean() && finite > 0, format!("{} modules of finite projective dimension{}", finite, tally.summary()))
}

fn random_unit(ring: &QuotientRing, rng: &mut ChaCha8Rng) -> (Poly, Poly) {
    let f = ring.field();
    loop {
        let c = f.from_i64(rng.gen_range(-5..=5));
        if let Some(inv) = c.inv() {
            return (ring.poly().constant(c), ring.poly().constant(inv));
        }
    }
}

/// A product of elementary matrices on `F_spot` with constant entries,
/// together with its inverse.
fn random_automorphism(f: &FreeComplex, spot: usize, rng: &mut ChaCha8Rng) -> (ModMatrix, ModMatrix) {
    let module = f.free_module(spot).unwrap();
    let ring = f.ring();
    let s = ring.poly();
    let n = module.rank();
    let mut u = ModMatrix::identity(&module);
    let mut u_inv = ModMatrix::identity(&module);
    if n == 1 {
        let (c, ci) = random_unit(ring, rng);
        u.set(0, 0, c);
        u_inv.set(0, 0, ci);
        return (u, u_inv);
    }
    for _ in 0..2 * n {
        let r = rng.gen_range(0..n);
        let c = (r + rng.gen_range(1..n)) % n;
        let e = ModMatrix::identity(&module);
        let mut step = e.clone();
        let mut step_inv = e;
        let a = s.from_int(rng.gen_range(-3..=3));
        step.set(r, c, a.clone());
        step_inv.set(r, c, s.neg(&a));
        u = u.compose(&step).unwrap();
        u_inv = step_inv.compose(&u_inv).unwrap();
    }
    (u, u_inv)
}

fn criterion_5(ws: &[(String, Workspace)]) -> Outcome {
    let mut tally = Tally { failures: Vec::new() };
    let mut changes = 0;
    let mut rings = 0;
    for (bundle, w) in ws.iter().filter(|(b, _)| b.starts_with("node")) {
        rings += 1;
        let a = &w.ring;
        let nzd = |t: &str| a.is_nzd(&a.parse(t).unwrap());
        tally.check(!nzd("x") && !nzd("y") && nzd("x + y") && nzd("x - y"), || format!("{bundle}: nonzerodivisors"));
        let f = &w.complexes["node"];
        let before: Vec<Grade> = (0..2).map(|c| column_ideal(f, 1, c).grade()).collect();
        tally.check(before == vec![Grade::Finite(0); 2], || format!("{bundle}: original columns have grades {before:?}"));
        let module = f.free_module(1).unwrap();
        let s = a.poly();
        let mut u = ModMatrix::identity(&module);
        let mut u_inv = ModMatrix::identity(&module);
        for (r, c, e, ei) in [(0, 0, "1", "1/2"), (0, 1, "1", "1/2"), (1, 0, "1", "1/2"), (1, 1, "-1", "-1/2")] {
            u.set(r, c, s.parse(e).unwrap());
            u_inv.set(r, c, s.parse(ei).unwrap());
        }
        let g = change_basis(f, 1, &u, &u_inv).unwrap();
        let after: Vec<Grade> = (0..2).map(|c| column_ideal(&g, 1, c).grade()).collect();
        tally.check(after == vec![Grade::Finite(1); 2], || format!("{bundle}: new columns have grades {after:?}"));
        // target base changes on d1 of (x y) and on d2 of the residue field resolution
        for (f, spot) in [(f, 1), (&w.complexes["res_k"], 2)] {
            let mut rng = ChaCha8Rng::seed_from_u64(spot as u64);
            for _ in 0..20 {
                let (u, u_inv) = random_automorphism(f, spot - 1, &mut rng);
                let h = change_basis(f, spot - 1, &u, &u_inv).unwrap();
                changes += 1;
                for c in 0..f.rank(spot) {
                    tally.check(column_ideal(f, spot, c).same_ideal(&column_ideal(&h, spot, c)), || {
                        format!("{bundle}: content of column {c} of d{spot} moved")
                    });
                }
            }
        }
    }
    outcome(tally.clean() && rings > 0, format!("{rings} node rings, {changes} target base changes{}", tally.summary()))
}

fn criterion_6(ws: &[(String, Workspace)]) -> Outcome {
    let mut tally = Tally { failures: Vec::new() };
    let mut pairs = 0;
    for (bundle, w) in ws {
        for (name, sop) in &w.sops {
            tally.check(is_sop(&w.ring, sop), || format!("{bundle}/{name}: not a system of parameters"));
            pairs += 1;
            let r = cec_probe(&w.ring, sop, &CEC_SEEDS).unwrap();
            tally.check(r.probes.len() == CEC_SEEDS.len(), || format!("{bundle}/{name}: missing probes"));
            for p in &r.probes {
                let nonzero = p.phi_top.iter().any(|e| !w.ring.reduce(e).is_zero());
                tally.check(nonzero && p.nonzero && p.commutes, || format!("{bundle}/{name}: seed {} gives zero", p.seed));
            }
        }
    }
    outcome(tally.clean() && pairs >= 20, format!("{pairs} pairs x {} seeds{}", CEC_SEEDS.len(), tally.summary()))
}

fn criterion_7(ws: &[(String, Workspace)]) -> Outcome {
    let mut tally = Tally { failures: Vec::new() };
    let mut instances = 0;
    let mut rings = 0;
    for (bundle, w) in ws {
        if !is_gorenstein(&w.ring) {
            continue;
        }
        rings += 1;
        let free = PresentedModule::free(&FreeMod::new(&w.ring, 1));
        let d = delta(&free).unwrap().delta;
        tally.check(d == 1, || format!("{bundle}: delta(R) = {d}"));
        for (name, b) in &w.ideals {
            let Th9Outcome::Audited(report) = theorem9_audit(&w.ring, b).unwrap() else { continue };
            instances += 1;
            tally.check(report.delta == 0, || format!("{bundle}/{name}: delta = {}", report.delta));
            let again = delta_with_surjections(&PresentedModule::cyclic(b), 2, 0).unwrap();
            let ok = again.extra.len() >= 2 && again.extra.iter().all(|e| e.rank == again.delta) && again.delta == 0;
            tally.check(ok, || format!("{bundle}/{name}: surjection dependence"));
        }
    }
    outcome(tally.clean() && instances >= 10, format!("{instances} instances over {rings} Gorenstein rings{}", tally.summary()))
}

fn criterion_8(audited: &[Audited]) -> Outcome {
    let mut tally = Tally { failures: Vec::new() };
    let mut count = 0;
    for a in audited.iter().filter(|a| a.name.starts_with("pert_")) {
        count += 1;
        tally.check(!is_minimal(a.f), || format!("{}/{}: perturbation left it minimal", a.bundle, a.name));
        let split = eilenberg_split(a.f).unwrap();
        tally.check(split.reconstructs(a.f) && is_minimal(&split.minimal), || format!("{}/{}: bad split", a.bundle, a.name));
        for i in 0..=a.f.len() {
            let x = homology_dim(a.f, i, DEGREE_CAP).unwrap();
            let y = if i <= split.minimal.len() { homology_dim(&split.minimal, i, DEGREE_CAP).unwrap() } else { x };
            tally.check(x == y, || format!("{}/{}: H_{i} {x:?} vs {y:?}", a.bundle, a.name));
        }
    }
    outcome(tally.clean() && count >= 10, format!("{count} perturbed complexes{}", tally.summary()))
}

fn criterion_9(audited: &[Audited]) -> Outcome {
    let mut tally = Tally { failures: Vec::new() };
    let (mut complexes, mut bounds, mut minors, mut orders) = (0, 0, 0, 0);
    for a in audited.iter().filter(|a| a.acyclic && is_minimal(a.f)) {
        complexes += 1;
        let f = a.f;
        for i in 1..f.len() {
            let b = thm11_generator_bound(f, i).unwrap();
            bounds += 1;
            tally.check(b.passed, || format!("{}/{}: Z_{i} has {} generators", a.bundle, a.name, b.generators));
        }
        let table = thm14_table(f, 0).unwrap();
        minors += table.entries.len();
        tally.check(table.all_passed(), || format!("{}/{}: minor grade below bound", a.bundle, a.name));
        for i in 1..=f.len() {
            for z in sample_generators(f, i, 2, 0) {
                let o = order_ideal_grade(f, i, &z).unwrap();
                orders += 1;
                tally.check(o.passed && o.contains_content, || format!("{}/{}: order ideal at spot {i}", a.bundle, a.name));
            }
        }
    }
    let pass = tally.clean() && complexes > 0;
    let detail = format!("{complexes} complexes: {bounds} generator bounds, {minors} minor ideals, {orders} order ideals{}", tally.summary());
    outcome(pass, detail)
}

fn corpus_payloads() -> Result<Vec<String>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_stiff")).args(["corpus-run", "--json"]).output().map_err(|e| e.to_string())?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let reports = v["reports"].as_array().ok_or("no reports")?;
    Ok(reports.iter().map(|r| serde_json::to_string(&r["payload"]).unwrap()).collect())
}

fn criterion_10() -> Outcome {
    match (corpus_payloads(), corpus_payloads()) {
        (Ok(a), Ok(b)) => {
            let same = a == b && !a.is_empty();
            let bytes: usize = a.iter().map(String::len).sum();
            outcome(same, format!("{} payloads, {} bytes, identical: {}", a.len(), bytes, same))
        }
        (Err(e), _) | (_, Err(e)) => outcome(false, e),
    }
}

fn main() -> ExitCode {
    let ws = workspaces();
    let mut results = Vec::new();
    let (c1, audited) = criterion_1(&ws);
    results.push(("B-E verdict equals homology", c1));
    let complexes = resolutions(&audited);
    results.push(("stiffness of minimal resolutions", criterion_2(&complexes)));
    results.push(("grade equals maximal regular sequence length", criterion_3(&audited, &complexes)));
    results.push(("Auslander-Buchsbaum", criterion_4(&ws)));
    results.push(("node ring example", criterion_5(&ws)));
    results.push(("canonical element probe", criterion_6(&ws)));
    results.push(("delta of annihilator quotients", criterion_7(&ws)));
    results.push(("Eilenberg split keeps homology", criterion_8(&audited)));
    results.push(("syzygy generator, minor and order ideal bounds", criterion_9(&audited)));
    results.push(("corpus-run determinism", criterion_10()));
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("criterion {:>2} {} {}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
