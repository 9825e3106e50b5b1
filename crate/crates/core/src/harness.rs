//! Catalog construction, exhaustive sweeps over `(G, *, σ)` triples, and
//! report emission.
//!
//! # Cayley-table files
//!
//! A group can be imported from a JSON document:
//!
//! ```json
//! {
//!   "schema": "cayley/1",
//!   "name": "S3",
//!   "order": 6,
//!   "names": ["1", "a", "b", "c", "d", "e"],
//!   "table": [[0, 1, 2, 3, 4, 5], ...]
//! }
//! ```
//!
//! `table[i][j]` is the index of `names[i] * names[j]` (row-major). `name`
//! is optional and defaults to the file stem.
//!
//! # Reports
//!
//! The structured report is a single JSON document with
//! `schema = "report/1"`, an echo of the run configuration, one entry per
//! checked triple, and summary counts. Entries are ordered by catalog
//! position, then involution index, then orientation index.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{find_st4_violation, is_normal_polarized, is_normal_randomized, is_plus_commutative};
use crate::classify::{lemma_suite, theorem3_check, theorem4_check, LemmaOutcome, Predicates};
use crate::error::HarnessError;
use crate::group::{
    cyclic, cyclic_named, dihedral, direct_product, elementary_abelian_2, quaternion, validate_group, FiniteGroup,
    MAX_GROUP_ORDER,
};
use crate::morphisms::{enumerate_involutions, enumerate_orientations, OrientedInvolutionSpec};
use crate::scalar::Field;

pub const REPORT_SCHEMA: &str = "report/1";
pub const CAYLEY_SCHEMA: &str = "cayley/1";
pub const DEFAULT_MAX_ORDER: usize = 16;
pub const DEFAULT_TRIALS: usize = 100;

/// The built-in recipe family up to `max_order`, in a fixed order: cyclic,
/// dihedral, quaternion, elementary abelian, then direct products.
pub fn build_catalog(max_order: usize) -> Result<Vec<FiniteGroup>, HarnessError> {
    if max_order > MAX_GROUP_ORDER {
        return Err(HarnessError::Config(format!("max order {max_order} exceeds {MAX_GROUP_ORDER}")));
    }
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(cyclic(n)?);
    }
    for n in (3..).take_while(|n| 2 * n <= max_order) {
        out.push(dihedral(n)?);
    }
    for n in [8, 16] {
        if n <= max_order {
            out.push(quaternion(n)?);
        }
    }
    for k in (2..).take_while(|k| 1usize << k <= max_order) {
        out.push(elementary_abelian_2(k)?);
    }
    let c2 = cyclic_named(2, "c")?;
    if 16 <= max_order {
        out.push(direct_product(&quaternion(8)?, &c2)?);
        out.push(direct_product(&dihedral(4)?, &c2)?);
    }
    if 32 <= max_order {
        let q8c2 = direct_product(&quaternion(8)?, &c2)?;
        out.push(direct_product(&q8c2, &cyclic_named(2, "d")?)?);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CayleyFile {
    schema: String,
    #[serde(default)]
    name: Option<String>,
    order: usize,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

/// Parse a Cayley-table document. `context` names the source in errors and
/// supplies the default label.
pub fn parse_cayley_table(text: &str, context: &str, default_label: &str) -> Result<FiniteGroup, HarnessError> {
    let file: CayleyFile = serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        context: context.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let schema_err = |field, message: String| HarnessError::Schema { context: context.to_string(), field, message };
    if file.schema != CAYLEY_SCHEMA {
        return Err(schema_err("schema", format!("expected {CAYLEY_SCHEMA:?}, got {:?}", file.schema)));
    }
    if file.order == 0 {
        return Err(schema_err("order", "must be positive".into()));
    }
    if file.order > MAX_GROUP_ORDER {
        return Err(schema_err("order", format!("{} exceeds {MAX_GROUP_ORDER}", file.order)));
    }
    if file.names.len() != file.order {
        return Err(schema_err("names", format!("{} names for order {}", file.names.len(), file.order)));
    }
    if file.table.len() != file.order {
        return Err(schema_err("table", format!("{} rows for order {}", file.table.len(), file.order)));
    }
    let label = file.name.unwrap_or_else(|| default_label.to_string());
    validate_group(label, &file.table, file.names)
        .map_err(|source| HarnessError::Validation { context: context.to_string(), source })
}

pub fn import_cayley_table(path: &Path) -> Result<FiniteGroup, HarnessError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io { path: display.clone(), source })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("imported");
    parse_cayley_table(&text, &display, stem)
}

/// Serialize a group into the Cayley-table format.
pub fn cayley_document(group: &FiniteGroup) -> String {
    let doc = serde_json::json!({
        "schema": CAYLEY_SCHEMA,
        "name": group.label(),
        "order": group.order(),
        "names": group.names(),
        "table": group.rows(),
    });
    serde_json::to_string_pretty(&doc).expect("json values serialize")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Normality,
    Theorem3,
    Theorem4,
    Lemmas,
    St4,
}

impl Check {
    pub const ALL: [Check; 5] = [Check::Normality, Check::Theorem3, Check::Theorem4, Check::Lemmas, Check::St4];
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Normality => "normality",
            Check::Theorem3 => "theorem3",
            Check::Theorem4 => "theorem4",
            Check::Lemmas => "lemmas",
            Check::St4 => "st4",
        })
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.to_string() == s.trim())
            .ok_or_else(|| format!("unknown check `{s}` (expected one of normality, theorem3, theorem4, lemmas, st4)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Text,
    Structured,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "structured" | "json" => Ok(OutputFormat::Structured),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub max_order: usize,
    pub groups: Option<Vec<String>>,
    pub field: Field,
    pub checks: BTreeSet<Check>,
    pub trials: usize,
    pub seed: u64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub imports: Vec<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_order: DEFAULT_MAX_ORDER,
            groups: None,
            field: Field::Rational,
            checks: Check::ALL.into_iter().collect(),
            trials: DEFAULT_TRIALS,
            seed: 0,
            format: OutputFormat::Text,
            out: None,
            imports: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.max_order > MAX_GROUP_ORDER {
            return Err(HarnessError::Config(format!("max order {} exceeds {MAX_GROUP_ORDER}", self.max_order)));
        }
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        if let Field::Prime(p) = self.field {
            Field::prime(p).map_err(|e| HarnessError::Config(e.to_string()))?;
        }
        if self.checks.is_empty() {
            return Err(HarnessError::Config("no checks selected".into()));
        }
        Ok(())
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            max_order: self.max_order,
            groups: self.groups.clone(),
            field: self.field.to_string(),
            checks: self.checks.iter().copied().collect(),
            trials: self.trials,
            seed: self.seed,
            imports: self.imports.iter().map(|p| p.display().to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub max_order: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub groups: Option<Vec<String>>,
    pub field: String,
    pub checks: Vec<Check>,
    pub trials: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub imports: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub group: String,
    pub involution_index: usize,
    pub orientation_index: usize,
    /// Image array of the involution, by element index.
    pub involution: Vec<usize>,
    /// Sign array of the orientation, by element index.
    pub orientation: Vec<i8>,
    pub predicates: Predicates,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<String>,
    /// Applicable lemma outcomes only.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub lemmas: Vec<LemmaOutcome>,
}

impl Entry {
    pub fn is_trivially_oriented(&self) -> bool {
        self.orientation.iter().all(|&s| s == 1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub groups: usize,
    pub triples_checked: usize,
    pub incompatible_skipped: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    pub witnesses: usize,
    pub normal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub config: ConfigEcho,
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.inconsistent == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let checks: Vec<String> = c.checks.iter().map(Check::to_string).collect();
        let _ = writeln!(
            out,
            "# {REPORT_SCHEMA} max_order={} field={} checks={} trials={} seed={}",
            c.max_order,
            c.field,
            checks.join(","),
            c.trials,
            c.seed
        );
        for e in &self.entries {
            let p = &e.predicates;
            let flags: Vec<String> = [
                ("normal", p.normal),
                ("random", p.normal_randomized),
                ("slc", p.slc),
                ("plus", p.plus_commutative),
                ("c1", p.condition1),
                ("c2", p.condition2),
                ("n_abelian", p.n_abelian),
                ("n_slc", p.n_slc),
                ("st4", p.st4),
            ]
            .iter()
            .filter_map(|(k, v)| v.map(|v| format!("{k}={}", if v { 'T' } else { 'F' })))
            .collect();
            let _ = writeln!(
                out,
                "{:<10} inv#{:<3} ori#{:<2} {:<3} {} {}",
                e.group,
                e.involution_index,
                e.orientation_index,
                if e.is_trivially_oriented() { "+" } else { "±" },
                if e.consistent { "ok  " } else { "FAIL" },
                flags.join(" ")
            );
            if !e.consistent {
                for line in e.failures.iter().chain(&e.witnesses) {
                    let _ = writeln!(out, "    {line}");
                }
                for l in e.lemmas.iter().filter(|l| !l.holds) {
                    let _ = writeln!(out, "    {:?}: {}", l.lemma, l.witness.as_deref().unwrap_or(""));
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "# groups={} triples={} skipped_incompatible={} consistent={} inconsistent={} normal={} witnesses={}",
            s.groups, s.triples_checked, s.incompatible_skipped, s.consistent, s.inconsistent, s.normal, s.witnesses
        );
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Structured => self.to_json(),
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed for one work item, stable across runs and independent of which
/// other groups are in the sweep.
pub fn derive_seed(base: u64, label: &str, involution: usize, orientation: usize) -> u64 {
    let mut h = splitmix64(base);
    for b in label.bytes() {
        h = splitmix64(h ^ b as u64);
    }
    h = splitmix64(h ^ involution as u64);
    splitmix64(h ^ ((orientation as u64) << 32))
}

/// The groups a run sweeps: filtered catalog followed by imported tables.
pub fn select_groups(config: &RunConfig) -> Result<Vec<FiniteGroup>, HarnessError> {
    let mut groups = build_catalog(config.max_order)?;
    for path in &config.imports {
        groups.push(import_cayley_table(path)?);
    }
    if let Some(filter) = &config.groups {
        let wanted: BTreeSet<&str> = filter.iter().map(String::as_str).collect();
        groups.retain(|g| wanted.contains(g.label()));
        let found: BTreeSet<&str> = groups.iter().map(FiniteGroup::label).collect();
        if let Some(missing) = wanted.difference(&found).next() {
            return Err(HarnessError::Config(format!("unknown group `{missing}`")));
        }
    }
    Ok(groups)
}

/// Sweep every compatible triple of the selected groups with the selected
/// checks.
pub fn run(config: &RunConfig) -> Result<Report, HarnessError> {
    config.validate()?;
    let groups = select_groups(config)?;
    run_groups(config, &groups)
}

pub fn run_groups(config: &RunConfig, groups: &[FiniteGroup]) -> Result<Report, HarnessError> {
    config.validate()?;
    let mut entries = Vec::new();
    let mut summary = Summary { groups: groups.len(), ..Default::default() };
    let mut st4_cache: BTreeMap<String, (bool, Option<String>)> = BTreeMap::new();
    for group in groups {
        let involutions = enumerate_involutions(group)?;
        let orientations = enumerate_orientations(group);
        for (i, inv) in involutions.iter().enumerate() {
            for (j, ori) in orientations.iter().enumerate() {
                let spec = OrientedInvolutionSpec::new(inv.clone(), ori.clone())?;
                if !spec.compatibility().compatible {
                    summary.incompatible_skipped += 1;
                    continue;
                }
                let seed = derive_seed(config.seed, group.label(), i, j);
                let entry = check_triple(config, &spec, (i, j), seed, &mut st4_cache)?;
                entries.push(entry);
            }
        }
    }
    for e in &entries {
        summary.triples_checked += 1;
        if e.consistent {
            summary.consistent += 1;
        } else {
            summary.inconsistent += 1;
        }
        if !e.witnesses.is_empty() {
            summary.witnesses += 1;
        }
        if e.predicates.normal == Some(true) {
            summary.normal += 1;
        }
    }
    Ok(Report { schema: REPORT_SCHEMA.to_string(), config: config.echo(), entries, summary })
}

fn semiprime(field: Field, order: usize) -> bool {
    match field {
        Field::Rational => true,
        Field::Prime(p) => !(order as u64).is_multiple_of(p),
    }
}

fn check_triple(
    config: &RunConfig,
    spec: &OrientedInvolutionSpec,
    (inv_index, ori_index): (usize, usize),
    seed: u64,
    st4_cache: &mut BTreeMap<String, (bool, Option<String>)>,
) -> Result<Entry, HarnessError> {
    let group = spec.group();
    let field = config.field;
    let trivial = spec.orientation().is_trivial();
    let mut predicates = Predicates::default();
    let mut failures = Vec::new();
    let mut witnesses = Vec::new();
    let mut lemmas = Vec::new();

    if config.checks.contains(&Check::Normality) {
        let polarized = is_normal_polarized(spec, field)?;
        let randomized = is_normal_randomized(spec, field, config.trials, seed)?;
        predicates.normal = Some(polarized.normal);
        predicates.normal_randomized = Some(randomized.normal);
        if polarized.normal != randomized.normal {
            failures.push(format!(
                "polarized oracle says normal = {}, randomized oracle says {}",
                polarized.normal, randomized.normal
            ));
        }
        if let Some(w) = &polarized.witness {
            witnesses.push(format!("defect at ({}, {}): {}", group.name(w.g), group.name(w.h), w.defect));
        }
        if let Some(a) = &randomized.counterexample {
            witnesses.push(format!("random counterexample after {} trials: {}", randomized.trials_run, a));
        }
    }

    let theorem = match (trivial, config.checks.contains(&Check::Theorem3), config.checks.contains(&Check::Theorem4)) {
        (true, true, _) => Some(theorem3_check(spec.involution(), field)?),
        (false, _, true) => Some(theorem4_check(spec, field)?),
        _ => None,
    };
    if let Some(report) = theorem {
        let p = report.predicates;
        predicates.normal = predicates.normal.or(p.normal);
        predicates.slc = p.slc;
        predicates.plus_commutative = p.plus_commutative;
        predicates.condition1 = p.condition1;
        predicates.condition2 = p.condition2;
        predicates.n_abelian = p.n_abelian;
        predicates.n_slc = p.n_slc;
        failures.extend(report.failures);
        for w in report.witnesses {
            if !witnesses.contains(&w) {
                witnesses.push(w);
            }
        }
    }

    if config.checks.contains(&Check::Lemmas) {
        let report = lemma_suite(spec, field)?;
        predicates.normal = predicates.normal.or(Some(report.normal));
        for o in report.outcomes.into_iter().filter(|o| o.applicable) {
            if !o.holds {
                failures.push(format!("{:?} fails: {}", o.lemma, o.witness.as_deref().unwrap_or("")));
            }
            lemmas.push(o);
        }
    }

    if config.checks.contains(&Check::St4) {
        let plus = match predicates.plus_commutative {
            Some(p) => p,
            None => {
                let p = is_plus_commutative(spec, field)?.commutative;
                predicates.plus_commutative = Some(p);
                p
            }
        };
        if plus && semiprime(field, group.order()) {
            let key = group.label().to_string();
            if !st4_cache.contains_key(&key) {
                let st4_seed = derive_seed(config.seed, group.label(), usize::MAX, 0);
                let found = find_st4_violation(group, field, config.trials, st4_seed)?;
                let text = found.map(|q| {
                    let parts: Vec<String> = q.iter().map(ToString::to_string).collect();
                    format!("St4 nonzero at ({})", parts.join("; "))
                });
                st4_cache.insert(key.clone(), (text.is_none(), text));
            }
            let (holds, text) = st4_cache[&key].clone();
            predicates.st4 = Some(holds);
            if !holds {
                failures.push("St4 fails although the symmetric elements commute".to_string());
                witnesses.extend(text);
            }
        }
    }

    Ok(Entry {
        group: group.label().to_string(),
        involution_index: inv_index,
        orientation_index: ori_index,
        involution: spec.involution().image().to_vec(),
        orientation: spec.orientation().signs().to_vec(),
        predicates,
        consistent: failures.is_empty(),
        failures,
        witnesses,
        lemmas,
    })
}
