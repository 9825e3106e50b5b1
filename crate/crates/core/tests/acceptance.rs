//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use groupnorm::algebra::{
    find_st4_violation, is_normal_polarized, is_plus_commutative, normality_defect, AlgebraElement,
};
use groupnorm::classify::{condition1_check, condition2_check, LemmaId};
use groupnorm::group::{cyclic, cyclic_named, dihedral, direct_product, quaternion, FiniteGroup};
use groupnorm::harness::{build_catalog, import_cayley_table, run, Check, Entry, Report, RunConfig};
use groupnorm::morphisms::{
    canonical_involution, enumerate_automorphisms, enumerate_involutions, enumerate_orientations, Involution,
    Orientation, OrientedInvolutionSpec,
};
use groupnorm::scalar::Field;

const SWEEP_MAX_ORDER: usize = 16;
const THEOREM3_BUDGET: Duration = Duration::from_secs(120);
const THEOREM4_BUDGET: Duration = Duration::from_secs(300);
const ORACLE_TRIALS: usize = 100;
const ORACLE_SEED: u64 = 20240607;
const ST4_ZERO_TRIALS: usize = 100;
const ST4_SEARCH_TRIALS: usize = 1000;
const ST4_SEED: u64 = 7;
const INVOLUTIONS_C4: usize = 2;
const INVOLUTIONS_Q8: usize = 10;
const NONTRIVIAL_ORIENTATIONS_D4: usize = 3;
const NONTRIVIAL_ORIENTATIONS_Q8: usize = 3;
const NONTRIVIAL_ORIENTATIONS_C3: usize = 0;

struct Gate {
    failed: usize,
}

impl Gate {
    fn record(&mut self, id: &str, pass: bool, detail: String) {
        if !pass {
            self.failed += 1;
        }
        println!("{} {id:>2} {detail}", if pass { "PASS" } else { "FAIL" });
    }

    fn note(&self, text: &str) {
        println!("        {text}");
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn sweep(field: Field, checks: &[Check]) -> (Report, Duration) {
    let config = RunConfig {
        max_order: SWEEP_MAX_ORDER,
        field,
        checks: checks.iter().copied().collect(),
        trials: ORACLE_TRIALS,
        seed: ORACLE_SEED,
        ..Default::default()
    };
    let start = Instant::now();
    let report = run(&config).expect("sweep runs");
    (report, start.elapsed())
}

fn is_abelian_entry(groups: &BTreeMap<String, FiniteGroup>, e: &Entry) -> bool {
    groups[&e.group].is_abelian()
}

fn criterion1(gate: &mut Gate, groups: &BTreeMap<String, FiniteGroup>) {
    let (report, elapsed) = sweep(Field::Rational, &[Check::Theorem3]);
    let mut checked = 0;
    let mut bad = Vec::new();
    for e in report.entries.iter().filter(|e| e.is_trivially_oriented()) {
        checked += 1;
        let p = &e.predicates;
        let ok = if is_abelian_entry(groups, e) {
            p.normal == Some(true) && p.plus_commutative == Some(true)
        } else {
            p.normal.is_some() && p.normal == p.slc && p.normal == p.plus_commutative
        };
        if !ok || !e.consistent {
            bad.push(format!("{} inv#{}", e.group, e.involution_index));
        }
    }
    let pass = bad.is_empty() && checked > 0 && elapsed <= THEOREM3_BUDGET;
    gate.record(
        "1",
        pass,
        format!(
            "trivial orientation, |G| <= {SWEEP_MAX_ORDER}, Q: normal <=> SLC <=> FG+ commutative on {checked} triples, \
             {} inconsistent, {:.1}s (budget {}s)",
            bad.len(),
            elapsed.as_secs_f64(),
            THEOREM3_BUDGET.as_secs()
        ),
    );
    for b in bad.iter().take(5) {
        gate.note(b);
    }
}

fn nontrivial_sweep(field: Field) -> (Report, Duration) {
    let (mut report, elapsed) = sweep(field, &[Check::Theorem4]);
    report.entries.retain(|e| !e.is_trivially_oriented());
    (report, elapsed)
}

fn criterion2(gate: &mut Gate, groups: &BTreeMap<String, FiniteGroup>, report: &Report, elapsed: Duration) {
    let mut bad = Vec::new();
    let mut normal_count = 0;
    for e in &report.entries {
        let p = &e.predicates;
        let normal = p.normal.expect("normality computed");
        normal_count += normal as usize;
        let ok = if is_abelian_entry(groups, e) {
            normal
        } else {
            let either = p.condition1.expect("condition 1 computed") || p.condition2.expect("condition 2 computed");
            normal == either
        };
        if !ok {
            bad.push(format!("{} inv#{} ori#{}", e.group, e.involution_index, e.orientation_index));
        }
    }
    let pass = bad.is_empty() && !report.entries.is_empty() && elapsed <= THEOREM4_BUDGET;
    gate.record(
        "2",
        pass,
        format!(
            "nontrivial compatible orientations, |G| <= {SWEEP_MAX_ORDER}, Q: normal <=> (condition 1 or condition 2) \
             on {} triples ({normal_count} normal), {} inconsistent, {:.1}s (budget {}s)",
            report.entries.len(),
            bad.len(),
            elapsed.as_secs_f64(),
            THEOREM4_BUDGET.as_secs()
        ),
    );
    for b in bad.iter().take(5) {
        gate.note(b);
    }
}

fn criterion3(gate: &mut Gate, rational: &Report) {
    let (f3, _) = nontrivial_sweep(Field::Prime(3));
    let mut bad = Vec::new();
    for (label, report) in [("Q", rational), ("F3", &f3)] {
        for e in &report.entries {
            let p = &e.predicates;
            if p.normal.is_none() || p.normal != p.plus_commutative || !e.consistent {
                bad.push(format!("{label}: {} inv#{} ori#{}", e.group, e.involution_index, e.orientation_index));
            }
        }
    }
    let pass = bad.is_empty() && !rational.entries.is_empty() && rational.entries.len() == f3.entries.len();
    gate.record(
        "3",
        pass,
        format!(
            "normal <=> FG+ commutative over Q and F3 on {} + {} triples, {} inconsistent",
            rational.entries.len(),
            f3.entries.len(),
            bad.len()
        ),
    );
    for b in bad.iter().take(5) {
        gate.note(b);
    }
}

fn criterion4(gate: &mut Gate) {
    let (report, _) = sweep(Field::Rational, &[Check::Lemmas]);
    let mut applied: BTreeMap<LemmaId, usize> = LemmaId::ALL.iter().map(|&l| (l, 0)).collect();
    let mut failures = Vec::new();
    let mut normal = 0;
    for e in &report.entries {
        if e.predicates.normal == Some(true) {
            normal += 1;
        }
        for o in &e.lemmas {
            *applied.get_mut(&o.lemma).unwrap() += 1;
            if !o.holds {
                failures.push(format!("{} inv#{} ori#{} {:?}", e.group, e.involution_index, e.orientation_index, o.lemma));
            }
        }
    }
    let uncovered: Vec<_> = applied.iter().filter(|(_, &n)| n == 0).map(|(l, _)| format!("{l:?}")).collect();
    let pass = failures.is_empty() && uncovered.is_empty();
    let coverage: Vec<String> = applied.iter().map(|(l, n)| format!("{l:?}={n}")).collect();
    gate.record(
        "4",
        pass,
        format!(
            "lemma suite on {normal} normal triples: {} failures, {} lemmas never applicable",
            failures.len(),
            uncovered.len()
        ),
    );
    gate.note(&format!("applications: {}", coverage.join(" ")));
    for f in failures.iter().take(5) {
        gate.note(f);
    }
}

fn has_defect_witness(spec: &OrientedInvolutionSpec) -> Option<String> {
    let verdict = is_normal_polarized(spec, Field::Rational).ok()?;
    let w = verdict.witness?;
    let g = spec.group();
    let basis = |i| AlgebraElement::basis(g, Field::Rational, i);
    let candidates = [basis(w.g), basis(w.h), basis(w.g).add(&basis(w.h)).ok()?];
    candidates
        .iter()
        .find(|a| !normality_defect(a, spec).map(|d| d.is_zero()).unwrap_or(true))
        .map(|a| format!("a = {a}, a a* - a* a = {}", normality_defect(a, spec).unwrap()))
}

fn q8c2_condition2_spec() -> OrientedInvolutionSpec {
    let q8 = quaternion(8).unwrap();
    let g = direct_product(&q8, &cyclic_named(2, "c").unwrap()).unwrap();
    let canon = canonical_involution(&q8).unwrap();
    let x2 = g.index_of("x^2").unwrap();
    let c = g.index_of("c").unwrap();
    // Q8 indices embed as i * 2; elements outside Q8 are q c.
    let image: Vec<usize> = g
        .elements()
        .map(|h| {
            let (q, k) = (h / 2, h % 2);
            let q_star = canon.apply(q) * 2;
            if k == 0 {
                q_star
            } else {
                g.mul(q_star, g.mul(x2, c))
            }
        })
        .collect();
    let inv = Involution::new(&g, image).unwrap();
    let kernel = g.closure([g.index_of("x").unwrap(), g.index_of("y").unwrap()]);
    let ori = Orientation::from_kernel(&g, &kernel).unwrap();
    OrientedInvolutionSpec::new(inv, ori).unwrap()
}

fn criterion5(gate: &mut Gate) {
    let q8 = quaternion(8).unwrap();
    let d4 = dihedral(4).unwrap();
    let q8_spec = OrientedInvolutionSpec::unoriented(Involution::classical(&q8));
    let q8_normal = is_normal_polarized(&q8_spec, Field::Rational).unwrap().normal;

    let d4_spec = OrientedInvolutionSpec::unoriented(Involution::classical(&d4));
    let d4_normal = is_normal_polarized(&d4_spec, Field::Rational).unwrap().normal;
    let d4_witness = has_defect_witness(&d4_spec);

    let rotations = d4.closure([d4.index_of("r").unwrap()]);
    let d4_rot = OrientedInvolutionSpec::new(
        Involution::classical(&d4),
        Orientation::from_kernel(&d4, &rotations).unwrap(),
    )
    .unwrap();
    let reflections_fixed = d4.elements().filter(|&g| d4.element_order(g) == 2 && !rotations.contains(g)).all(|g| {
        let (sign, image) = d4_rot.oriented_image(g);
        image == g && sign == -1
    });
    let d4_rot_normal = is_normal_polarized(&d4_rot, Field::Rational).unwrap().normal;
    let d4_rot_c1 = condition1_check(&d4_rot).unwrap();

    let q8c2 = q8c2_condition2_spec();
    let g = q8c2.group();
    let c = g.index_of("c").unwrap();
    let c_star = g.name(q8c2.involution().apply(c)).to_string();
    let q8c2_normal = is_normal_polarized(&q8c2, Field::Rational).unwrap().normal;
    let q8c2_c2 = condition2_check(&q8c2).unwrap();

    let pass = q8_normal
        && !d4_normal
        && d4_witness.is_some()
        && reflections_fixed
        && d4_rot_normal
        && d4_rot_c1
        && c_star == "x^2c"
        && q8c2_normal
        && q8c2_c2;
    gate.record(
        "5",
        pass,
        format!(
            "named instances: QQ8 classical normal={q8_normal}; QD4 classical normal={d4_normal} witness={}; \
             QD4 N=<r> normal={d4_rot_normal} condition1={d4_rot_c1}; Q(Q8xC2) c*={c_star} normal={q8c2_normal} \
             condition2={q8c2_c2}",
            d4_witness.is_some()
        ),
    );
    if let Some(w) = d4_witness {
        gate.note(&format!("D4 witness: {w}"));
    }
}

fn criterion6(gate: &mut Gate) {
    let fields = [Field::Rational, Field::Prime(3), Field::Prime(5), Field::Prime(7)];
    let mut total = 0;
    let mut disagreements = Vec::new();
    let mut verdicts: Vec<Vec<Option<bool>>> = Vec::new();
    for field in fields {
        let (report, _) = sweep(field, &[Check::Normality]);
        total += report.entries.len();
        for e in &report.entries {
            if e.predicates.normal != e.predicates.normal_randomized {
                disagreements.push(format!("{field}: {} inv#{} ori#{}", e.group, e.involution_index, e.orientation_index));
            }
        }
        verdicts.push(report.entries.iter().map(|e| e.predicates.normal).collect());
    }
    let fields_agree = verdicts.windows(2).all(|w| w[0] == w[1]);
    let pass = disagreements.is_empty() && total > 0;
    gate.record(
        "6",
        pass,
        format!(
            "polarized vs randomized ({ORACLE_TRIALS} trials, seed {ORACLE_SEED}) over Q, F3, F5, F7: {total} triples, \
             {} disagreements; verdicts identical across fields: {fields_agree}",
            disagreements.len()
        ),
    );
    for d in disagreements.iter().take(5) {
        gate.note(d);
    }
}

fn criterion7(gate: &mut Gate) {
    let q8 = quaternion(8).unwrap();
    let spec = OrientedInvolutionSpec::unoriented(Involution::classical(&q8));
    let normal = is_normal_polarized(&spec, Field::Rational).unwrap().normal;
    let plus = is_plus_commutative(&spec, Field::Rational).unwrap().commutative;
    let q8_zero = find_st4_violation(&q8, Field::Rational, ST4_ZERO_TRIALS, ST4_SEED).unwrap().is_none();

    let s3 = import_cayley_table(&fixture("s3.json")).expect("S3 fixture");
    let s3_found = find_st4_violation(&s3, Field::Rational, ST4_SEARCH_TRIALS, ST4_SEED).unwrap();

    let pass = normal && plus && q8_zero && s3_found.is_some();
    gate.record(
        "7",
        pass,
        format!(
            "St4: QQ8 (normal={normal}, FG+ commutative={plus}) zero on {ST4_ZERO_TRIALS} random quadruples: {q8_zero}; \
             QS3 nonzero within {ST4_SEARCH_TRIALS} trials: {}",
            s3_found.is_some()
        ),
    );
    if s3_found.is_none() {
        let a4 = import_cayley_table(&fixture("a4.json")).expect("A4 fixture");
        let a4_found = find_st4_violation(&a4, Field::Rational, ST4_SEARCH_TRIALS, ST4_SEED).unwrap();
        gate.note("QS3 is Q + Q + M2(Q); St4 vanishes on 2x2 matrices, so no quadruple can be nonzero.");
        gate.note(&format!(
            "control: QA4 (which has a 3-dimensional irreducible representation) nonzero found: {}",
            a4_found.is_some()
        ));
    }
}

/// Involutions counted as involutive automorphisms (`g* = ψ(g)^-1`).
fn involutions_by_automorphisms(g: &FiniteGroup) -> usize {
    enumerate_automorphisms(g, false)
        .iter()
        .filter(|psi| g.elements().all(|x| psi[psi[x]] == x))
        .count()
}

/// Index-2 subgroups by brute force over all subsets of size |G|/2.
fn index_two_subgroups(g: &FiniteGroup) -> usize {
    let n = g.order();
    if n % 2 == 1 {
        return 0;
    }
    (0u64..1 << n)
        .filter(|mask| mask.count_ones() as usize == n / 2 && mask & (1 << g.identity()) != 0)
        .filter(|mask| {
            let inside = |x: usize| mask & (1 << x) != 0;
            (0..n).filter(|&a| inside(a)).all(|a| (0..n).filter(|&b| inside(b)).all(|b| inside(g.mul(a, b))))
        })
        .count()
}

fn criterion8(gate: &mut Gate) {
    let c4 = cyclic(4).unwrap();
    let c3 = cyclic(3).unwrap();
    let q8 = quaternion(8).unwrap();
    let d4 = dihedral(4).unwrap();
    let inv = |g: &FiniteGroup| enumerate_involutions(g).unwrap().len();
    let nontrivial = |g: &FiniteGroup| enumerate_orientations(g).iter().filter(|o| !o.is_trivial()).count();
    let counts = [
        ("involutions C4", inv(&c4), involutions_by_automorphisms(&c4), INVOLUTIONS_C4),
        ("involutions Q8", inv(&q8), involutions_by_automorphisms(&q8), INVOLUTIONS_Q8),
        ("orientations D4", nontrivial(&d4), index_two_subgroups(&d4), NONTRIVIAL_ORIENTATIONS_D4),
        ("orientations Q8", nontrivial(&q8), index_two_subgroups(&q8), NONTRIVIAL_ORIENTATIONS_Q8),
        ("orientations C3", nontrivial(&c3), index_two_subgroups(&c3), NONTRIVIAL_ORIENTATIONS_C3),
    ];
    let pass = counts.iter().all(|&(_, got, oracle, want)| got == want && oracle == want);
    let text: Vec<String> = counts.iter().map(|(n, got, oracle, want)| format!("{n}={got} (oracle {oracle}, expected {want})")).collect();
    gate.record("8", pass, format!("enumeration counts: {}", text.join(", ")));
}

fn criterion9(gate: &mut Gate, catalog: &[FiniteGroup]) {
    let d4 = dihedral(4).unwrap();
    let s3 = import_cayley_table(&fixture("s3.json")).expect("S3 fixture");
    let q8c2 = direct_product(&quaternion(8).unwrap(), &cyclic_named(2, "c").unwrap()).unwrap();
    let named = d4.is_lc() && !s3.is_lc() && q8c2.is_hamiltonian_2_group() && !d4.is_hamiltonian_2_group();
    let mut lc_groups = 0;
    let mut violations = Vec::new();
    for g in catalog.iter().filter(|g| g.is_lc()) {
        lc_groups += 1;
        let center = g.center();
        for a in g.elements() {
            if !center.contains(g.mul(a, a)) {
                violations.push(format!("{}: {}^2", g.label(), g.name(a)));
            }
            for b in g.elements() {
                if !center.contains(g.commutator(a, b)) {
                    violations.push(format!("{}: ({}, {})", g.label(), g.name(a), g.name(b)));
                }
            }
        }
    }
    gate.record(
        "9",
        named && violations.is_empty() && lc_groups > 0,
        format!(
            "LC(D4)={} LC(S3)={} Hamiltonian(Q8xC2)={} Hamiltonian(D4)={}; {lc_groups} LC catalog groups, \
             {} non-central squares or commutators",
            d4.is_lc(),
            s3.is_lc(),
            q8c2.is_hamiltonian_2_group(),
            d4.is_hamiltonian_2_group(),
            violations.len()
        ),
    );
}

fn main() -> ExitCode {
    let mut gate = Gate { failed: 0 };
    let catalog = build_catalog(SWEEP_MAX_ORDER).expect("catalog");
    let groups: BTreeMap<String, FiniteGroup> = catalog.iter().map(|g| (g.label().to_string(), g.clone())).collect();

    criterion1(&mut gate, &groups);
    let (rational, elapsed) = nontrivial_sweep(Field::Rational);
    criterion2(&mut gate, &groups, &rational, elapsed);
    criterion3(&mut gate, &rational);
    criterion4(&mut gate);
    criterion5(&mut gate);
    criterion6(&mut gate);
    criterion7(&mut gate);
    criterion8(&mut gate);
    criterion9(&mut gate, &catalog);

    println!("acceptance: {} of 9 criteria failed", gate.failed);
    if gate.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
