//! Group algebra arithmetic over an exact field, the oriented involution on
//! algebra elements, Lie brackets, standard polynomials, and two
//! independent normality deciders.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::AlgebraError;
use crate::group::FiniteGroup;
use crate::morphisms::OrientedInvolutionSpec;
use crate::scalar::{mul_mod, Field, FieldScalar};

/// Largest supported degree for [`standard_polynomial`].
pub const MAX_STANDARD_DEGREE: usize = 6;

/// An element `sum a_g g` of the group algebra. Zero coefficients are never
/// stored, and terms iterate in increasing element index.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    group: FiniteGroup,
    field: Field,
    coeffs: BTreeMap<usize, FieldScalar>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement[{}]({})", self.field, self)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match c {
                FieldScalar::Residue { .. } => write!(f, "({c})*{}", self.group.name(*g))?,
                FieldScalar::Rational(_) => write!(f, "{c}*{}", self.group.name(*g))?,
            }
        }
        Ok(())
    }
}

impl AlgebraElement {
    pub fn zero(group: &FiniteGroup, field: Field) -> Self {
        AlgebraElement { group: group.clone(), field, coeffs: BTreeMap::new() }
    }

    pub fn one(group: &FiniteGroup, field: Field) -> Self {
        Self::basis(group, field, group.identity())
    }

    pub fn basis(group: &FiniteGroup, field: Field, g: usize) -> Self {
        Self::from_terms(group, field, [(g, field.one())])
    }

    /// Sum of the given terms; repeated indices accumulate.
    pub fn from_terms<I>(group: &FiniteGroup, field: Field, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, FieldScalar)>,
    {
        let mut coeffs: BTreeMap<usize, FieldScalar> = BTreeMap::new();
        for (g, c) in terms {
            assert!(g < group.order(), "element index out of range");
            assert_eq!(c.field(), field, "scalar field mismatch");
            let entry = coeffs.entry(g).or_insert_with(|| field.zero());
            *entry = entry.add(&c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        AlgebraElement { group: group.clone(), field, coeffs }
    }

    pub fn from_int_terms<I>(group: &FiniteGroup, field: Field, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        Self::from_terms(group, field, terms.into_iter().map(|(g, k)| (g, field.from_i64(k))))
    }

    /// Build from `(element name, scalar string)` pairs.
    pub fn from_pairs(group: &FiniteGroup, field: Field, pairs: &[(String, String)]) -> Result<Self, AlgebraError> {
        let mut terms = Vec::with_capacity(pairs.len());
        for (name, value) in pairs {
            let g = group.index_of(name).ok_or_else(|| AlgebraError::UnknownElement(name.clone()))?;
            let c = FieldScalar::parse(field, value).ok_or(AlgebraError::FieldMismatch)?;
            terms.push((g, c));
        }
        Ok(Self::from_terms(group, field, terms))
    }

    /// `(element name, scalar string)` pairs in element-index order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.coeffs.iter().map(|(g, c)| (self.group.name(*g).to_string(), c.to_string())).collect()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, g: usize) -> FieldScalar {
        self.coeffs.get(&g).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &FieldScalar)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    fn check_compatible(&self, other: &AlgebraElement) -> Result<(), AlgebraError> {
        if self.group != other.group {
            return Err(AlgebraError::GroupMismatch);
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_compatible(other)?;
        let terms = self.terms().chain(other.terms()).map(|(g, c)| (g, c.clone()));
        Ok(Self::from_terms(&self.group, self.field, terms))
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            group: self.group.clone(),
            field: self.field,
            coeffs: self.coeffs.iter().map(|(g, c)| (*g, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &FieldScalar) -> Result<AlgebraElement, AlgebraError> {
        if k.field() != self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let terms = self.terms().map(|(g, c)| (g, c.mul(k)));
        Ok(Self::from_terms(&self.group, self.field, terms))
    }

    /// Convolution product: `(ab)_k = sum over gh = k of a_g b_h`.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_compatible(other)?;
        let n = self.group.order();
        let g = &self.group;
        let coeffs = match self.field {
            Field::Prime(p) => {
                let mut acc = vec![0u64; n];
                for (a, ca) in self.terms() {
                    let ca = residue(ca);
                    for (b, cb) in other.terms() {
                        let k = g.mul(a, b);
                        acc[k] = (acc[k] + mul_mod(ca, residue(cb), p)) % p;
                    }
                }
                acc.into_iter()
                    .enumerate()
                    .filter(|(_, v)| *v != 0)
                    .map(|(k, v)| (k, FieldScalar::Residue { value: v, modulus: p }))
                    .collect()
            }
            Field::Rational => match self.integer_product(other) {
                Some(acc) => acc
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| *v != 0)
                    .map(|(k, v)| (k, FieldScalar::Rational(BigRational::from_integer(BigInt::from(v)))))
                    .collect(),
                None => {
                    let mut acc = vec![BigRational::zero(); n];
                    for (a, ca) in self.terms() {
                        let ca = rational(ca);
                        for (b, cb) in other.terms() {
                            acc[g.mul(a, b)] += ca * rational(cb);
                        }
                    }
                    acc.into_iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(k, v)| (k, FieldScalar::Rational(v)))
                        .collect()
                }
            },
        };
        Ok(AlgebraElement { group: self.group.clone(), field: self.field, coeffs })
    }

    /// Fast path for rational elements with machine-size integer
    /// coefficients; `None` when a coefficient is not such an integer or an
    /// intermediate overflows.
    fn integer_product(&self, other: &AlgebraElement) -> Option<Vec<i128>> {
        let lhs: Vec<(usize, i64)> = self.terms().map(|(g, c)| c.as_small_integer().map(|v| (g, v))).collect::<Option<_>>()?;
        let rhs: Vec<(usize, i64)> = other.terms().map(|(g, c)| c.as_small_integer().map(|v| (g, v))).collect::<Option<_>>()?;
        let mut acc = vec![0i128; self.group.order()];
        for &(a, ca) in &lhs {
            for &(b, cb) in &rhs {
                let k = self.group.mul(a, b);
                acc[k] = acc[k].checked_add(ca as i128 * cb as i128)?;
            }
        }
        Some(acc)
    }
}

fn residue(c: &FieldScalar) -> u64 {
    match c {
        FieldScalar::Residue { value, .. } => *value,
        FieldScalar::Rational(_) => unreachable!("field checked by caller"),
    }
}

fn rational(c: &FieldScalar) -> &BigRational {
    match c {
        FieldScalar::Rational(r) => r,
        FieldScalar::Residue { .. } => unreachable!("field checked by caller"),
    }
}

/// `sum a_g g  ->  sum a_g sigma(g) g*`. Refused unless `g g*` lies in the
/// kernel for every `g`.
pub fn apply_oriented_star(a: &AlgebraElement, spec: &OrientedInvolutionSpec) -> Result<AlgebraElement, AlgebraError> {
    spec.require_compatible()?;
    if a.group() != spec.group() {
        return Err(AlgebraError::GroupMismatch);
    }
    Ok(star_unchecked(a, spec))
}

fn star_unchecked(a: &AlgebraElement, spec: &OrientedInvolutionSpec) -> AlgebraElement {
    let terms = a.terms().map(|(g, c)| {
        let (sign, image) = spec.oriented_image(g);
        (image, if sign < 0 { c.neg() } else { c.clone() })
    });
    AlgebraElement::from_terms(a.group(), a.field(), terms)
}

/// `[a, b] = ab - ba`
pub fn lie_bracket(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Left-normed bracket `[[x1, ..., xn], x(n+1)]`.
pub fn lie_bracket_chain(elems: &[AlgebraElement]) -> Result<AlgebraElement, AlgebraError> {
    match elems {
        [] | [_] => Err(AlgebraError::TooFewElements(elems.len())),
        [first, rest @ ..] => rest.iter().try_fold(first.clone(), |acc, x| lie_bracket(&acc, x)),
    }
}

/// `St_n(x1..xn) = sum over permutations rho of sgn(rho) x_rho(1) ... x_rho(n)`.
///
/// Permutations are generated depth first so products of shared prefixes
/// are computed once.
pub fn standard_polynomial(n: usize, elems: &[AlgebraElement]) -> Result<AlgebraElement, AlgebraError> {
    if n > MAX_STANDARD_DEGREE {
        return Err(AlgebraError::DegreeTooLarge(n));
    }
    if elems.len() != n {
        return Err(AlgebraError::ArityMismatch { expected: n, got: elems.len() });
    }
    let Some(first) = elems.first() else {
        return Err(AlgebraError::ArityMismatch { expected: n, got: 0 });
    };
    for x in elems {
        first.check_compatible(x)?;
    }
    let mut total = AlgebraElement::zero(first.group(), first.field());
    let mut used = vec![false; n];
    accumulate_permutations(elems, &mut used, None, false, &mut total)?;
    Ok(total)
}

fn accumulate_permutations(
    elems: &[AlgebraElement],
    used: &mut [bool],
    prefix: Option<&AlgebraElement>,
    odd: bool,
    total: &mut AlgebraElement,
) -> Result<(), AlgebraError> {
    if used.iter().all(|&u| u) {
        let term = prefix.expect("n >= 1");
        *total = if odd { total.sub(term)? } else { total.add(term)? };
        return Ok(());
    }
    for i in 0..elems.len() {
        if used[i] {
            continue;
        }
        // inversions created by placing i before the smaller unused indices
        let smaller_unused = used[..i].iter().filter(|&&u| !u).count();
        let next = match prefix {
            None => elems[i].clone(),
            Some(p) => p.mul(&elems[i])?,
        };
        used[i] = true;
        accumulate_permutations(elems, used, Some(&next), odd ^ (smaller_unused % 2 == 1), total)?;
        used[i] = false;
    }
    Ok(())
}

/// Result of the symmetric-subalgebra commutativity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlusCommutativity {
    pub commutative: bool,
    /// Group elements `g, h` whose symmetrizations `g + g⊛`, `h + h⊛` fail to commute.
    pub witness: Option<(usize, usize)>,
}

/// Decide whether the symmetric elements of the algebra commute, using the
/// spanning set `{g + g⊛}` (valid because the characteristic is not two).
pub fn is_plus_commutative(spec: &OrientedInvolutionSpec, field: Field) -> Result<PlusCommutativity, AlgebraError> {
    spec.require_compatible()?;
    let group = spec.group();
    let spanning: Vec<(usize, AlgebraElement)> = group
        .elements()
        .map(|g| {
            let (sign, image) = spec.oriented_image(g);
            (g, AlgebraElement::from_int_terms(group, field, [(g, 1), (image, sign as i64)]))
        })
        .filter(|(_, u)| !u.is_zero())
        .collect();
    for (i, (g, u)) in spanning.iter().enumerate() {
        for (h, v) in &spanning[i + 1..] {
            if u.mul(v)? != v.mul(u)? {
                return Ok(PlusCommutativity { commutative: false, witness: Some((*g, *h)) });
            }
        }
    }
    Ok(PlusCommutativity { commutative: true, witness: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityWitness {
    pub g: usize,
    pub h: usize,
    /// Nonzero basis-level defect; for `g == h` this is `g g⊛ - g⊛ g`.
    pub defect: AlgebraElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityVerdict {
    pub normal: bool,
    pub witness: Option<NormalityWitness>,
}

/// Decide `a a⊛ = a⊛ a` for all `a` through the polarized basis conditions.
///
/// `a a⊛ - a⊛ a` is a quadratic form in the coefficients of `a`. Since the
/// characteristic is not two it vanishes identically iff its value at each
/// basis vector `g` and its polarization at each pair `g != h` vanish:
///
/// * `g (σ(g) g*) = (σ(g) g*) g`
/// * `σ(h) g h* + σ(g) h g* - σ(g) g* h - σ(h) h* g = 0`
///
/// Pairs are scanned in lexicographic order; the first failure is returned.
pub fn is_normal_polarized(spec: &OrientedInvolutionSpec, field: Field) -> Result<NormalityVerdict, AlgebraError> {
    spec.require_compatible()?;
    let group = spec.group();
    for g in group.elements() {
        let (sg, gs) = spec.oriented_image(g);
        let sg = sg as i64;
        for h in g..group.order() {
            let terms: Vec<(usize, i64)> = if g == h {
                vec![(group.mul(g, gs), sg), (group.mul(gs, g), -sg)]
            } else {
                let (sh, hs) = spec.oriented_image(h);
                let sh = sh as i64;
                vec![
                    (group.mul(g, hs), sh),
                    (group.mul(h, gs), sg),
                    (group.mul(gs, h), -sg),
                    (group.mul(hs, g), -sh),
                ]
            };
            let defect = AlgebraElement::from_int_terms(group, field, terms);
            if !defect.is_zero() {
                return Ok(NormalityVerdict { normal: false, witness: Some(NormalityWitness { g, h, defect }) });
            }
        }
    }
    Ok(NormalityVerdict { normal: true, witness: None })
}

/// `a a⊛ - a⊛ a`
pub fn normality_defect(a: &AlgebraElement, spec: &OrientedInvolutionSpec) -> Result<AlgebraElement, AlgebraError> {
    let star = apply_oriented_star(a, spec)?;
    a.mul(&star)?.sub(&star.mul(a)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomizedVerdict {
    pub normal: bool,
    pub trials_run: usize,
    pub counterexample: Option<AlgebraElement>,
}

/// Coefficients of random elements are drawn uniformly from this range.
pub const SAMPLE_RANGE: std::ops::RangeInclusive<i64> = -3..=3;

pub fn random_element<R: Rng + ?Sized>(group: &FiniteGroup, field: Field, rng: &mut R) -> AlgebraElement {
    let terms: Vec<(usize, i64)> = group.elements().map(|g| (g, rng.gen_range(SAMPLE_RANGE))).collect();
    AlgebraElement::from_int_terms(group, field, terms)
}

/// Sample `trials` random elements and test `a a⊛ = a⊛ a` exactly. Stops
/// at the first counterexample.
pub fn is_normal_randomized(
    spec: &OrientedInvolutionSpec,
    field: Field,
    trials: usize,
    seed: u64,
) -> Result<RandomizedVerdict, AlgebraError> {
    spec.require_compatible()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let a = random_element(spec.group(), field, &mut rng);
        let star = star_unchecked(&a, spec);
        if a.mul(&star)? != star.mul(&a)? {
            return Ok(RandomizedVerdict { normal: false, trials_run: trial + 1, counterexample: Some(a) });
        }
    }
    Ok(RandomizedVerdict { normal: true, trials_run: trials, counterexample: None })
}

/// Search random quadruples for a nonzero `St_4` value. Returns the first
/// nonzero quadruple found within `trials`.
pub fn find_st4_violation(
    group: &FiniteGroup,
    field: Field,
    trials: usize,
    seed: u64,
) -> Result<Option<[AlgebraElement; 4]>, AlgebraError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let quad: [AlgebraElement; 4] = std::array::from_fn(|_| random_element(group, field, &mut rng));
        if !standard_polynomial(4, &quad)?.is_zero() {
            return Ok(Some(quad));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, elementary_abelian_2, quaternion};
    use crate::morphisms::{enumerate_involutions, enumerate_orientations, Involution, OrientedInvolutionSpec, Orientation};

    fn basis(g: &FiniteGroup, name: &str) -> AlgebraElement {
        AlgebraElement::basis(g, Field::Rational, g.index_of(name).unwrap())
    }

    /// Direct expansion over all n! permutations with signs from inversion
    /// counts.
    fn st_oracle(elems: &[AlgebraElement]) -> AlgebraElement {
        let n = elems.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = AlgebraElement::zero(elems[0].group(), elems[0].field());
        loop {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            let mut prod = elems[perm[0]].clone();
            for &k in &perm[1..] {
                prod = prod.mul(&elems[k]).unwrap();
            }
            total = if inversions % 2 == 1 { total.sub(&prod).unwrap() } else { total.add(&prod).unwrap() };
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        total
    }

    #[test]
    fn basis_products_follow_the_table() {
        let d4 = dihedral(4).unwrap();
        for a in d4.elements() {
            for b in d4.elements() {
                let prod = AlgebraElement::basis(&d4, Field::Rational, a)
                    .mul(&AlgebraElement::basis(&d4, Field::Rational, b))
                    .unwrap();
                assert_eq!(prod, AlgebraElement::basis(&d4, Field::Rational, d4.mul(a, b)));
            }
        }
    }

    #[test]
    fn idempotent_cancellation_in_c2() {
        let c2 = cyclic(2).unwrap();
        let one = AlgebraElement::one(&c2, Field::Rational);
        let x = basis(&c2, "a");
        let prod = one.add(&x).unwrap().mul(&one.sub(&x).unwrap()).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn quaternion_units_do_not_commute() {
        let q8 = quaternion(8).unwrap();
        let (x, y) = (basis(&q8, "x"), basis(&q8, "y"));
        assert!(!lie_bracket(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn big_rational_fallback_matches_integer_path() {
        let q8 = quaternion(8).unwrap();
        let half = Field::Rational.ratio(1, 2).unwrap();
        let a = AlgebraElement::from_int_terms(&q8, Field::Rational, [(1, 3), (2, -2), (5, 1)]);
        let b = AlgebraElement::from_int_terms(&q8, Field::Rational, [(0, 1), (3, 4), (6, -7)]);
        let direct = a.mul(&b).unwrap().scale(&half).unwrap();
        let via_fraction = a.scale(&half).unwrap().mul(&b).unwrap();
        assert_eq!(direct, via_fraction);
        let huge = Field::Rational.from_i64(i64::MAX);
        let big = a.scale(&huge).unwrap();
        let expect = a.mul(&b).unwrap().scale(&huge).unwrap().scale(&huge).unwrap();
        assert_eq!(big.mul(&b.scale(&huge).unwrap()).unwrap(), expect);
    }

    #[test]
    fn mismatches_are_errors() {
        let c3 = cyclic(3).unwrap();
        let c4 = cyclic(4).unwrap();
        let a = AlgebraElement::one(&c3, Field::Rational);
        let b = AlgebraElement::one(&c4, Field::Rational);
        let c = AlgebraElement::one(&c3, Field::Prime(3));
        assert_eq!(a.mul(&b).unwrap_err(), AlgebraError::GroupMismatch);
        assert_eq!(a.add(&c).unwrap_err(), AlgebraError::FieldMismatch);
    }

    #[test]
    fn oriented_star_on_terms() {
        let d4 = dihedral(4).unwrap();
        let kernel = d4.cyclic_subgroup(d4.index_of("r").unwrap());
        let ori = crate::morphisms::Orientation::from_kernel(&d4, &kernel).unwrap();
        let spec = OrientedInvolutionSpec::new(Involution::classical(&d4), ori).unwrap();
        let s = basis(&d4, "s");
        assert_eq!(apply_oriented_star(&s, &spec).unwrap(), s.neg());
        let r = basis(&d4, "r");
        let sum = r.add(&s).unwrap();
        let expect = basis(&d4, "r^3").sub(&s).unwrap();
        assert_eq!(apply_oriented_star(&sum, &spec).unwrap(), expect);
    }

    #[test]
    fn oriented_star_refuses_incompatible_specs() {
        let k4 = elementary_abelian_2(2).unwrap();
        let swap = Involution::new(&k4, vec![0, 2, 1, 3]).unwrap();
        let ori = Orientation::from_kernel(&k4, &k4.closure([1])).unwrap();
        let spec = OrientedInvolutionSpec::new(swap, ori).unwrap();
        let a = AlgebraElement::one(&k4, Field::Rational);
        assert!(matches!(apply_oriented_star(&a, &spec), Err(AlgebraError::Morphism(_))));
        assert!(is_normal_polarized(&spec, Field::Rational).is_err());
    }

    #[test]
    fn star_is_an_involutive_anti_automorphism() {
        let d4 = dihedral(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for inv in enumerate_involutions(&d4).unwrap() {
            for ori in enumerate_orientations(&d4) {
                let spec = OrientedInvolutionSpec::new(inv.clone(), ori).unwrap();
                if !spec.compatibility().compatible {
                    continue;
                }
                for _ in 0..20 {
                    let a = random_element(&d4, Field::Rational, &mut rng);
                    let b = random_element(&d4, Field::Rational, &mut rng);
                    let sa = apply_oriented_star(&a, &spec).unwrap();
                    let sb = apply_oriented_star(&b, &spec).unwrap();
                    assert_eq!(apply_oriented_star(&sa, &spec).unwrap(), a);
                    assert_eq!(apply_oriented_star(&a.mul(&b).unwrap(), &spec).unwrap(), sb.mul(&sa).unwrap());
                }
            }
        }
    }

    #[test]
    fn star_twice_is_identity_on_100_elements() {
        let d4 = dihedral(4).unwrap();
        let spec = OrientedInvolutionSpec::unoriented(Involution::classical(&d4));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = random_element(&d4, Field::Rational, &mut rng);
            let twice = apply_oriented_star(&apply_oriented_star(&a, &spec).unwrap(), &spec).unwrap();
            assert_eq!(twice, a);
        }
    }

    #[test]
    fn brackets() {
        let q8 = quaternion(8).unwrap();
        let (x, y) = (basis(&q8, "x"), basis(&q8, "y"));
        assert!(lie_bracket(&x, &x).unwrap().is_zero());
        let xy = x.mul(&y).unwrap();
        let yx = y.mul(&x).unwrap();
        assert_eq!(lie_bracket(&x, &y).unwrap(), xy.sub(&yx).unwrap());
        let inner = xy.sub(&yx).unwrap();
        let expect = inner.mul(&y).unwrap().sub(&y.mul(&inner).unwrap()).unwrap();
        assert_eq!(lie_bracket_chain(&[x.clone(), y.clone(), y.clone()]).unwrap(), expect);
        assert_eq!(lie_bracket_chain(&[x]).unwrap_err(), AlgebraError::TooFewElements(1));
    }

    #[test]
    fn standard_polynomial_matches_permutation_oracle() {
        let q8 = quaternion(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4 {
            let elems: Vec<AlgebraElement> = (0..n).map(|_| random_element(&q8, Field::Rational, &mut rng)).collect();
            assert_eq!(standard_polynomial(n, &elems).unwrap(), st_oracle(&elems));
        }
        let s3 = dihedral(3).unwrap();
        let elems: Vec<AlgebraElement> = (0..3).map(|_| random_element(&s3, Field::Prime(5), &mut rng)).collect();
        assert_eq!(standard_polynomial(3, &elems).unwrap(), st_oracle(&elems));
    }

    #[test]
    fn standard_polynomial_basics() {
        let q8 = quaternion(8).unwrap();
        let (x, y) = (basis(&q8, "x"), basis(&q8, "y"));
        assert_eq!(standard_polynomial(2, &[x.clone(), y.clone()]).unwrap(), lie_bracket(&x, &y).unwrap());
        let c5 = cyclic(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_element(&c5, Field::Rational, &mut rng);
        let b = random_element(&c5, Field::Rational, &mut rng);
        assert!(standard_polynomial(2, &[a, b]).unwrap().is_zero());
        let z = random_element(&q8, Field::Rational, &mut rng);
        let w = random_element(&q8, Field::Rational, &mut rng);
        assert!(standard_polynomial(4, &[x.clone(), z.clone(), x.clone(), w]).unwrap().is_zero());
        assert_eq!(
            standard_polynomial(3, &[x.clone(), y.clone()]).unwrap_err(),
            AlgebraError::ArityMismatch { expected: 3, got: 2 }
        );
        let seven = vec![x; 7];
        assert_eq!(standard_polynomial(7, &seven).unwrap_err(), AlgebraError::DegreeTooLarge(7));
    }

    #[test]
    fn st4_vanishes_on_q8() {
        let q8 = quaternion(8).unwrap();
        assert!(find_st4_violation(&q8, Field::Rational, 100, 17).unwrap().is_none());
    }

    #[test]
    fn plus_commutativity_examples() {
        let c6 = cyclic(6).unwrap();
        for inv in enumerate_involutions(&c6).unwrap() {
            let spec = OrientedInvolutionSpec::unoriented(inv);
            assert!(is_plus_commutative(&spec, Field::Rational).unwrap().commutative);
        }
        let q8 = quaternion(8).unwrap();
        let canon = OrientedInvolutionSpec::unoriented(crate::morphisms::canonical_involution(&q8).unwrap());
        assert!(is_plus_commutative(&canon, Field::Rational).unwrap().commutative);
        let d4 = dihedral(4).unwrap();
        let classical = OrientedInvolutionSpec::unoriented(Involution::classical(&d4));
        let verdict = is_plus_commutative(&classical, Field::Rational).unwrap();
        assert!(!verdict.commutative);
        let (g, h) = verdict.witness.unwrap();
        assert!(!d4.commutes(g, h));
    }

    #[test]
    fn polarized_examples() {
        let c4 = cyclic(4).unwrap();
        for inv in enumerate_involutions(&c4).unwrap() {
            let spec = OrientedInvolutionSpec::unoriented(inv);
            assert!(is_normal_polarized(&spec, Field::Rational).unwrap().normal);
        }
        let q8 = quaternion(8).unwrap();
        let spec = OrientedInvolutionSpec::unoriented(Involution::classical(&q8));
        assert!(is_normal_polarized(&spec, Field::Rational).unwrap().normal);

        let d4 = dihedral(4).unwrap();
        let spec = OrientedInvolutionSpec::unoriented(Involution::classical(&d4));
        let verdict = is_normal_polarized(&spec, Field::Rational).unwrap();
        assert!(!verdict.normal);
        let w = verdict.witness.unwrap();
        assert!(!w.defect.is_zero());
        // the witness is a genuine violation: a = g + h fails normality
        let a = AlgebraElement::from_int_terms(&d4, Field::Rational, [(w.g, 1), (w.h, 1)]);
        assert!(!normality_defect(&a, &spec).unwrap().is_zero());
    }

    #[test]
    fn randomized_examples() {
        let c4 = cyclic(4).unwrap();
        let spec = OrientedInvolutionSpec::unoriented(Involution::classical(&c4));
        let v = is_normal_randomized(&spec, Field::Rational, 100, 0).unwrap();
        assert!(v.normal);
        assert_eq!(v.trials_run, 100);

        let d4 = dihedral(4).unwrap();
        let spec = OrientedInvolutionSpec::unoriented(Involution::classical(&d4));
        let v = is_normal_randomized(&spec, Field::Rational, 100, 42).unwrap();
        assert!(!v.normal);
        let alpha = v.counterexample.unwrap();
        assert!(!normality_defect(&alpha, &spec).unwrap().is_zero());
        // deterministic under a fixed seed
        assert_eq!(is_normal_randomized(&spec, Field::Rational, 100, 42).unwrap().counterexample, Some(alpha));
    }

    #[test]
    fn pairs_round_trip() {
        let q8 = quaternion(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for field in [Field::Rational, Field::Prime(7)] {
            let a = random_element(&q8, field, &mut rng).scale(&field.ratio(1, 2).unwrap()).unwrap();
            assert_eq!(AlgebraElement::from_pairs(&q8, field, &a.to_pairs()).unwrap(), a);
        }
    }
}
