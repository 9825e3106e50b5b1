//! Structural characterizations of normal group algebras: SLC detection,
//! the unoriented three-way equivalence, the two oriented conditions, and
//! the supporting lemmas evaluated as exhaustive implications.

use serde::{Deserialize, Serialize};

use crate::algebra::{is_normal_polarized, is_plus_commutative};
use crate::error::ClassifyError;
use crate::group::{FiniteGroup, SubgroupMask};
use crate::morphisms::{Involution, OrientedInvolutionSpec};
use crate::scalar::Field;

/// LC group with a unique non-identity commutator `s` whose involution is
/// `g* = g` on the center and `g* = s g` elsewhere.
pub fn is_slc(group: &FiniteGroup, inv: &Involution) -> bool {
    if inv.group() != group || !group.is_lc() {
        return false;
    }
    let Some(s) = group.unique_nonidentity_commutator() else {
        return false;
    };
    let center = group.center();
    group
        .elements()
        .all(|g| inv.apply(g) == if center.contains(g) { g } else { group.mul(s, g) })
}

/// Predicate values recorded for one triple. `None` means not applicable or
/// not computed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normal_randomized: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slc: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub plus_commutative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub condition1: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub condition2: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_abelian: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_slc: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub st4: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremKind {
    /// Trivial orientation: normal ⟺ SLC ⟺ symmetric elements commute.
    Unoriented,
    /// Nontrivial orientation: normal ⟺ (condition 1 ∨ condition 2), and
    /// normal ⟺ symmetric elements commute.
    Oriented,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremKind,
    pub predicates: Predicates,
    pub consistent: bool,
    /// One line per equivalence that failed to hold.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<String>,
}

fn normality_witness_text(group: &FiniteGroup, spec: &OrientedInvolutionSpec, field: Field) -> Result<(bool, Option<String>), ClassifyError> {
    let verdict = is_normal_polarized(spec, field)?;
    let text = verdict
        .witness
        .map(|w| format!("normality fails at ({}, {}): defect {}", group.name(w.g), group.name(w.h), w.defect));
    Ok((verdict.normal, text))
}

fn plus_witness_text(group: &FiniteGroup, spec: &OrientedInvolutionSpec, field: Field) -> Result<(bool, Option<String>), ClassifyError> {
    let verdict = is_plus_commutative(spec, field)?;
    let text = verdict.witness.map(|(g, h)| {
        format!("symmetrizations of {} and {} do not commute", group.name(g), group.name(h))
    });
    Ok((verdict.commutative, text))
}

/// Check normal ⟺ SLC ⟺ symmetric elements commute for a trivial
/// orientation. Abelian groups are trivially consistent; `slc` is then
/// reported as not applicable.
pub fn theorem3_check(inv: &Involution, field: Field) -> Result<TheoremReport, ClassifyError> {
    let group = inv.group();
    let spec = OrientedInvolutionSpec::unoriented(inv.clone());
    let (normal, nw) = normality_witness_text(group, &spec, field)?;
    let (plus, pw) = plus_witness_text(group, &spec, field)?;
    let mut predicates = Predicates { normal: Some(normal), plus_commutative: Some(plus), ..Default::default() };
    let mut failures = Vec::new();
    if group.is_abelian() {
        if !normal {
            failures.push("abelian group algebra reported non-normal".to_string());
        }
        if !plus {
            failures.push("abelian group algebra reported non-commutative".to_string());
        }
    } else {
        let slc = is_slc(group, inv);
        predicates.slc = Some(slc);
        if normal != slc {
            failures.push(format!("normal = {normal} but slc = {slc}"));
        }
        if normal != plus {
            failures.push(format!("normal = {normal} but plus_commutative = {plus}"));
        }
    }
    Ok(TheoremReport {
        theorem: TheoremKind::Unoriented,
        predicates,
        consistent: failures.is_empty(),
        failures,
        witnesses: nw.into_iter().chain(pw).collect(),
    })
}

fn require_oriented(spec: &OrientedInvolutionSpec) -> Result<(), ClassifyError> {
    if spec.orientation().is_trivial() {
        return Err(ClassifyError::NotApplicable("orientation is trivial"));
    }
    spec.require_compatible()?;
    Ok(())
}

fn is_abelian_subset(group: &FiniteGroup, mask: &SubgroupMask) -> bool {
    mask.iter().all(|a| mask.iter().all(|b| group.commutes(a, b)))
}

/// The kernel `N` as a standalone group with the restricted involution.
fn kernel_with_involution(spec: &OrientedInvolutionSpec) -> (FiniteGroup, Option<Involution>) {
    let (sub, embed) = spec.group().subgroup_as_group(spec.orientation().kernel());
    let restricted = spec.involution().restrict(&sub, &embed);
    (sub, restricted)
}

fn kernel_is_slc(spec: &OrientedInvolutionSpec) -> bool {
    let (n, restricted) = kernel_with_involution(spec);
    restricted.is_some_and(|inv| is_slc(&n, &inv))
}

/// `N` abelian, every element outside `N` is fixed, and
/// `n* = a^-1 n a = a n a^-1` for every `n` in `N` and every `a` outside `N`.
pub fn condition1_check(spec: &OrientedInvolutionSpec) -> Result<bool, ClassifyError> {
    require_oriented(spec)?;
    let g = spec.group();
    let kernel = spec.orientation().kernel();
    let inv = spec.involution();
    if !is_abelian_subset(g, kernel) {
        return Ok(false);
    }
    let outside: Vec<usize> = g.elements().filter(|&x| !kernel.contains(x)).collect();
    if outside.iter().any(|&x| inv.apply(x) != x) {
        return Ok(false);
    }
    Ok(outside.iter().all(|&a| {
        kernel.iter().all(|n| {
            let star = inv.apply(n);
            star == g.conjugate(n, a) && star == g.mul(g.mul(a, n), g.inv(a))
        })
    }))
}

/// The involution prescribed for the second oriented condition: `g* = g`
/// on `N ∩ Z(G)` and on `(G \ N) \ Z(G)`, `g* = s g` elsewhere.
fn four_case_image(g: &FiniteGroup, kernel: &SubgroupMask, center: &SubgroupMask, s: usize, x: usize) -> usize {
    let in_n = kernel.contains(x);
    let central = center.contains(x);
    if (in_n && central) || (!in_n && !central) {
        x
    } else {
        g.mul(s, x)
    }
}

/// `N` and `G` are LC, `G` has a unique non-identity commutator `s`, some
/// central `g0` outside `N` has `g0* = s g0`, and the involution follows the
/// four-case rule.
pub fn condition2_check(spec: &OrientedInvolutionSpec) -> Result<bool, ClassifyError> {
    require_oriented(spec)?;
    let g = spec.group();
    let kernel = spec.orientation().kernel();
    let inv = spec.involution();
    let (n, _) = g.subgroup_as_group(kernel);
    if !n.is_lc() || !g.is_lc() {
        return Ok(false);
    }
    let Some(s) = g.unique_nonidentity_commutator() else {
        return Ok(false);
    };
    let center = g.center();
    let has_g0 = g
        .elements()
        .any(|x| !kernel.contains(x) && center.contains(x) && inv.apply(x) == g.mul(s, x));
    if !has_g0 {
        return Ok(false);
    }
    Ok(g.elements().all(|x| inv.apply(x) == four_case_image(g, kernel, &center, s, x)))
}

/// Check normal ⟺ (condition 1 ∨ condition 2) and normal ⟺ symmetric
/// elements commute, for a nontrivial compatible orientation.
pub fn theorem4_check(spec: &OrientedInvolutionSpec, field: Field) -> Result<TheoremReport, ClassifyError> {
    require_oriented(spec)?;
    let group = spec.group();
    let (normal, nw) = normality_witness_text(group, spec, field)?;
    let (plus, pw) = plus_witness_text(group, spec, field)?;
    let (n_group, _) = group.subgroup_as_group(spec.orientation().kernel());
    let mut predicates = Predicates {
        normal: Some(normal),
        plus_commutative: Some(plus),
        n_abelian: Some(n_group.is_abelian()),
        n_slc: Some(kernel_is_slc(spec)),
        ..Default::default()
    };
    let mut failures = Vec::new();
    if group.is_abelian() {
        if !normal {
            failures.push("abelian group algebra reported non-normal".to_string());
        }
        if !plus {
            failures.push("abelian group algebra reported non-commutative".to_string());
        }
    } else {
        let c1 = condition1_check(spec)?;
        let c2 = condition2_check(spec)?;
        predicates.condition1 = Some(c1);
        predicates.condition2 = Some(c2);
        if normal != (c1 || c2) {
            failures.push(format!("normal = {normal} but condition1 = {c1}, condition2 = {c2}"));
        }
        if normal != plus {
            failures.push(format!("normal = {normal} but plus_commutative = {plus}"));
        }
    }
    Ok(TheoremReport {
        theorem: TheoremKind::Oriented,
        predicates,
        consistent: failures.is_empty(),
        failures,
        witnesses: nw.into_iter().chain(pw).collect(),
    })
}

/// The lemma-level consequences of normality that the suite checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    /// `gh = hg` or `gh = g* h*`.
    CommuteOrSwap,
    /// `g^2` central.
    CentralSquares,
    /// `G+` central, and `g g* = g* g` central.
    CentralSymmetric,
    /// Signed form of `CommuteOrSwap`.
    SignedCommuteOrSwap,
    /// Squares against non-commuting partners; `(m^2, n) = 1` on `N`.
    KernelSquares,
    /// `N+` central.
    CentralKernelSymmetric,
    /// Abelian kernel: outside elements fixed, `*` is conjugation on `N`.
    AbelianKernel,
    /// SLC kernel: unique central non-identity commutator.
    SlcKernelCommutator,
    /// SLC kernel: some `g0` outside `N` centralizes `N` with `g0* = s g0`.
    SlcKernelCentralizer,
    /// SLC kernel: `G` is LC and `*` follows the four-case rule.
    SlcKernelFourCase,
}

impl LemmaId {
    pub const ALL: [LemmaId; 10] = [
        LemmaId::CommuteOrSwap,
        LemmaId::CentralSquares,
        LemmaId::CentralSymmetric,
        LemmaId::SignedCommuteOrSwap,
        LemmaId::KernelSquares,
        LemmaId::CentralKernelSymmetric,
        LemmaId::AbelianKernel,
        LemmaId::SlcKernelCommutator,
        LemmaId::SlcKernelCentralizer,
        LemmaId::SlcKernelFourCase,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOutcome {
    pub lemma: LemmaId,
    /// Hypotheses satisfied, including normality of the algebra.
    pub applicable: bool,
    /// Conclusion verified; vacuously true when not applicable.
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub normal: bool,
    pub outcomes: Vec<LemmaOutcome>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    pub fn get(&self, lemma: LemmaId) -> Option<&LemmaOutcome> {
        self.outcomes.iter().find(|o| o.lemma == lemma)
    }

    pub fn applicable_count(&self) -> usize {
        self.outcomes.iter().filter(|o| o.applicable).count()
    }
}

/// `Ok(())` or a description of the first counterexample.
type Conclusion = Result<(), String>;

struct LemmaContext<'a> {
    g: &'a FiniteGroup,
    spec: &'a OrientedInvolutionSpec,
    center: SubgroupMask,
}

impl LemmaContext<'_> {
    fn star(&self, x: usize) -> usize {
        self.spec.involution().apply(x)
    }

    fn sign(&self, x: usize) -> i8 {
        self.spec.orientation().sign(x)
    }

    fn name(&self, x: usize) -> &str {
        self.g.name(x)
    }

    fn in_kernel(&self, x: usize) -> bool {
        self.spec.orientation().kernel().contains(x)
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.g.elements().flat_map(move |a| self.g.elements().map(move |b| (a, b)))
    }

    fn lemma3(&self) -> Conclusion {
        let g = self.g;
        match self.pairs().find(|&(a, b)| !g.commutes(a, b) && g.mul(a, b) != g.mul(self.star(a), self.star(b))) {
            None => Ok(()),
            Some((a, b)) => Err(format!("g = {}, h = {}", self.name(a), self.name(b))),
        }
    }

    fn lemma4(&self) -> Conclusion {
        match self.g.elements().find(|&a| !self.center.contains(self.g.mul(a, a))) {
            None => Ok(()),
            Some(a) => Err(format!("{}^2 is not central", self.name(a))),
        }
    }

    fn lemma5(&self) -> Conclusion {
        let g = self.g;
        for a in g.elements() {
            if self.star(a) == a && !self.center.contains(a) {
                return Err(format!("symmetric {} is not central", self.name(a)));
            }
            let (left, right) = (g.mul(a, self.star(a)), g.mul(self.star(a), a));
            if left != right || !self.center.contains(left) {
                return Err(format!("g g* at g = {} is not a central element equal to g* g", self.name(a)));
            }
        }
        Ok(())
    }

    fn lemma6(&self) -> Conclusion {
        let g = self.g;
        for (a, b) in self.pairs() {
            if g.commutes(a, b) {
                continue;
            }
            let ab = g.mul(a, b);
            let ok = if self.sign(a) * self.sign(b) == 1 {
                ab == g.mul(self.star(a), self.star(b))
            } else {
                ab == self.star(ab)
            };
            if !ok {
                return Err(format!("g = {}, h = {}", self.name(a), self.name(b)));
            }
        }
        Ok(())
    }

    fn lemma7(&self) -> Conclusion {
        let g = self.g;
        for (a, b) in self.pairs() {
            if g.commutes(a, b) {
                continue;
            }
            let a2 = g.mul(a, a);
            let a2b = g.mul(a2, b);
            let ok = if self.sign(b) == 1 { a2b == g.mul(b, a2) } else { a2b == self.star(a2b) };
            if !ok {
                return Err(format!("g = {}, h = {}", self.name(a), self.name(b)));
            }
        }
        let kernel = self.spec.orientation().kernel();
        for m in kernel.iter() {
            for n in kernel.iter() {
                if g.commutator(g.mul(m, m), n) != g.identity() {
                    return Err(format!("({}^2, {}) != 1", self.name(m), self.name(n)));
                }
            }
        }
        Ok(())
    }

    fn lemma8(&self) -> Conclusion {
        match self.g.elements().find(|&n| self.in_kernel(n) && self.star(n) == n && !self.center.contains(n)) {
            None => Ok(()),
            Some(n) => Err(format!("{} in N+ is not central", self.name(n))),
        }
    }

    fn lemma9(&self) -> Conclusion {
        let g = self.g;
        let outside: Vec<usize> = g.elements().filter(|&x| !self.in_kernel(x)).collect();
        if let Some(&x) = outside.iter().find(|&&x| self.star(x) != x) {
            return Err(format!("{} outside N is not fixed", self.name(x)));
        }
        for &a in &outside {
            for n in g.elements().filter(|&n| self.in_kernel(n)) {
                let star = self.star(n);
                if star != g.conjugate(n, a) || star != g.mul(g.mul(a, n), g.inv(a)) {
                    return Err(format!("n = {}, a = {}", self.name(n), self.name(a)));
                }
            }
        }
        Ok(())
    }

    fn lemma10(&self) -> Result<usize, String> {
        let s = self
            .g
            .unique_nonidentity_commutator()
            .ok_or_else(|| "G has no unique non-identity commutator".to_string())?;
        if !self.center.contains(s) {
            return Err(format!("commutator {} is not central", self.name(s)));
        }
        Ok(s)
    }

    fn lemma11(&self, s: usize) -> Conclusion {
        let g = self.g;
        let kernel = self.spec.orientation().kernel();
        let centralizer = g.centralizer(kernel);
        let g0 = g
            .elements()
            .find(|&x| !self.in_kernel(x) && centralizer.contains(x) && self.star(x) == g.mul(s, x));
        match g0 {
            Some(x) if self.center.contains(x) => Ok(()),
            Some(x) => Err(format!("g0 = {} is not central", self.name(x))),
            None => Err("no g0 outside N centralizing N with g0* = s g0".to_string()),
        }
    }

    fn proposition1(&self, s: usize) -> Conclusion {
        if !self.g.is_lc() {
            return Err("G is not LC".to_string());
        }
        let kernel = self.spec.orientation().kernel();
        match self
            .g
            .elements()
            .find(|&x| self.star(x) != four_case_image(self.g, kernel, &self.center, s, x))
        {
            None => Ok(()),
            Some(x) => Err(format!("{}* deviates from the four-case rule", self.name(x))),
        }
    }
}

fn outcome(lemma: LemmaId, applicable: bool, check: impl FnOnce() -> Conclusion) -> LemmaOutcome {
    if !applicable {
        return LemmaOutcome { lemma, applicable, holds: true, witness: None };
    }
    match check() {
        Ok(()) => LemmaOutcome { lemma, applicable, holds: true, witness: None },
        Err(w) => LemmaOutcome { lemma, applicable, holds: false, witness: Some(w) },
    }
}

/// Evaluate each lemma whose hypotheses hold on this triple. Every lemma
/// requires a normal algebra. The first three need a trivial orientation
/// and the rest a nontrivial one. `AbelianKernel` also needs an abelian
/// kernel in a non-abelian `G`, and the `SlcKernel*` checks need the
/// restricted involution to make the kernel SLC.
pub fn lemma_suite(spec: &OrientedInvolutionSpec, field: Field) -> Result<LemmaReport, ClassifyError> {
    spec.require_compatible()?;
    let g = spec.group();
    let normal = is_normal_polarized(spec, field)?.normal;
    let ctx = LemmaContext { g, spec, center: g.center() };
    let trivial = spec.orientation().is_trivial();
    let unoriented = normal && trivial;
    let oriented = normal && !trivial;
    let (n_abelian, n_slc) = if oriented {
        let (n, _) = g.subgroup_as_group(spec.orientation().kernel());
        (n.is_abelian(), kernel_is_slc(spec))
    } else {
        (false, false)
    };

    let mut outcomes = vec![
        outcome(LemmaId::CommuteOrSwap, unoriented, || ctx.lemma3()),
        outcome(LemmaId::CentralSquares, unoriented, || ctx.lemma4()),
        outcome(LemmaId::CentralSymmetric, unoriented, || ctx.lemma5()),
        outcome(LemmaId::SignedCommuteOrSwap, oriented, || ctx.lemma6()),
        outcome(LemmaId::KernelSquares, oriented, || ctx.lemma7()),
        outcome(LemmaId::CentralKernelSymmetric, oriented, || ctx.lemma8()),
        outcome(LemmaId::AbelianKernel, oriented && n_abelian && !g.is_abelian(), || ctx.lemma9()),
    ];
    let slc_gate = oriented && n_slc;
    let s = if slc_gate { Some(ctx.lemma10()) } else { None };
    outcomes.push(outcome(LemmaId::SlcKernelCommutator, slc_gate, || s.clone().expect("gated").map(|_| ())));
    let s_ok = s.and_then(Result::ok);
    outcomes.push(outcome(LemmaId::SlcKernelCentralizer, slc_gate, || match s_ok {
        Some(s) => ctx.lemma11(s),
        None => Err("no unique commutator".to_string()),
    }));
    outcomes.push(outcome(LemmaId::SlcKernelFourCase, slc_gate, || match s_ok {
        Some(s) => ctx.proposition1(s),
        None => Err("no unique commutator".to_string()),
    }));
    Ok(LemmaReport { normal, outcomes })
}
