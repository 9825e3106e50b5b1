//! Group involutions, orientations `G -> {+1, -1}`, and the compatibility
//! condition that makes the oriented map an algebra involution.

use crate::error::MorphismError;
use crate::group::{FiniteGroup, SubgroupMask, MAX_GROUP_ORDER};

/// An anti-automorphism of order at most two, stored extensionally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    group: FiniteGroup,
    image: Vec<usize>,
}

impl Involution {
    /// Validates `(gh)* = h* g*` and `(g*)* = g` on the whole table.
    pub fn new(group: &FiniteGroup, image: Vec<usize>) -> Result<Self, MorphismError> {
        if image.len() != group.order() {
            return Err(MorphismError::WrongLength { len: image.len(), order: group.order() });
        }
        for g in group.elements() {
            if image[g] >= group.order() || image[image[g]] != g {
                return Err(MorphismError::NotInvolutive(group.name(g).to_string()));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                if image[group.mul(g, h)] != group.mul(image[h], image[g]) {
                    return Err(MorphismError::NotAntiHomomorphism {
                        g: group.name(g).to_string(),
                        h: group.name(h).to_string(),
                    });
                }
            }
        }
        Ok(Involution { group: group.clone(), image })
    }

    /// `g -> g^-1`
    pub fn classical(group: &FiniteGroup) -> Self {
        let image = group.elements().map(|g| group.inv(g)).collect();
        Involution { group: group.clone(), image }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_classical(&self) -> bool {
        self.group.elements().all(|g| self.image[g] == self.group.inv(g))
    }

    /// Elements fixed by the involution.
    pub fn fixed(&self) -> Vec<usize> {
        self.group.elements().filter(|&g| self.image[g] == g).collect()
    }

    /// Restriction to a `*`-stable subgroup, expressed on the standalone
    /// subgroup produced by [`FiniteGroup::subgroup_as_group`].
    pub fn restrict(&self, sub: &FiniteGroup, embed: &[usize]) -> Option<Involution> {
        let mut local = vec![usize::MAX; self.group.order()];
        for (i, &g) in embed.iter().enumerate() {
            local[g] = i;
        }
        let image: Option<Vec<usize>> = embed
            .iter()
            .map(|&g| Some(local[self.image[g]]).filter(|&v| v != usize::MAX))
            .collect();
        Involution::new(sub, image?).ok()
    }

    pub fn image_names(&self) -> Vec<String> {
        self.image.iter().map(|&g| self.group.name(g).to_string()).collect()
    }
}

/// A homomorphism `G -> {+1, -1}` with its kernel `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    group: FiniteGroup,
    sign: Vec<i8>,
    kernel: SubgroupMask,
}

impl Orientation {
    pub fn trivial(group: &FiniteGroup) -> Self {
        Orientation { group: group.clone(), sign: vec![1; group.order()], kernel: group.full() }
    }

    pub fn from_signs(group: &FiniteGroup, sign: Vec<i8>) -> Result<Self, MorphismError> {
        if sign.len() != group.order() {
            return Err(MorphismError::WrongLength { len: sign.len(), order: group.order() });
        }
        for g in group.elements() {
            for h in group.elements() {
                if !matches!(sign[g], 1 | -1) || sign[group.mul(g, h)] != sign[g] * sign[h] {
                    return Err(MorphismError::NotHomomorphism {
                        g: group.name(g).to_string(),
                        h: group.name(h).to_string(),
                    });
                }
            }
        }
        let members = sign.iter().map(|&s| s == 1).collect();
        let kernel = SubgroupMask::from_members(group, members).expect("kernel of a homomorphism");
        Ok(Orientation { group: group.clone(), sign, kernel })
    }

    /// Orientation with the given kernel, which must have index two.
    pub fn from_kernel(group: &FiniteGroup, kernel: &SubgroupMask) -> Result<Self, MorphismError> {
        let sign = group.elements().map(|g| if kernel.contains(g) { 1 } else { -1 }).collect();
        Orientation::from_signs(group, sign)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn sign(&self, g: usize) -> i8 {
        self.sign[g]
    }

    pub fn signs(&self) -> &[i8] {
        &self.sign
    }

    pub fn kernel(&self) -> &SubgroupMask {
        &self.kernel
    }

    pub fn is_trivial(&self) -> bool {
        self.sign.iter().all(|&s| s == 1)
    }
}

/// Outcome of the `g g* in N` test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Compatibility {
    pub compatible: bool,
    pub witness: Option<usize>,
}

pub fn check_compatibility(inv: &Involution, ori: &Orientation) -> Result<Compatibility, MorphismError> {
    if inv.group() != ori.group() {
        return Err(MorphismError::GroupMismatch);
    }
    let g = inv.group();
    let witness = g.elements().find(|&x| !ori.kernel().contains(g.mul(x, inv.apply(x))));
    Ok(Compatibility { compatible: witness.is_none(), witness })
}

/// The pair `(*, sigma)`. Construction only requires a shared group;
/// operations that need the oriented map to be an involution check
/// compatibility through [`OrientedInvolutionSpec::require_compatible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedInvolutionSpec {
    involution: Involution,
    orientation: Orientation,
    compatibility: Compatibility,
}

impl OrientedInvolutionSpec {
    pub fn new(involution: Involution, orientation: Orientation) -> Result<Self, MorphismError> {
        let compatibility = check_compatibility(&involution, &orientation)?;
        Ok(OrientedInvolutionSpec { involution, orientation, compatibility })
    }

    /// Trivial orientation.
    pub fn unoriented(involution: Involution) -> Self {
        let orientation = Orientation::trivial(involution.group());
        OrientedInvolutionSpec::new(involution, orientation).expect("same group")
    }

    pub fn group(&self) -> &FiniteGroup {
        self.involution.group()
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn compatibility(&self) -> Compatibility {
        self.compatibility
    }

    pub fn require_compatible(&self) -> Result<(), MorphismError> {
        match self.compatibility.witness {
            None => Ok(()),
            Some(w) => Err(MorphismError::Incompatible { witness: self.group().name(w).to_string() }),
        }
    }

    /// `sigma(g)` and `g*`.
    #[inline]
    pub fn oriented_image(&self, g: usize) -> (i8, usize) {
        (self.orientation.sign(g), self.involution.apply(g))
    }
}

/// `G+ = {g : g* = g}` and `N+ = N ∩ G+`.
pub fn fixed_elements(spec: &OrientedInvolutionSpec) -> (Vec<usize>, Vec<usize>) {
    let plus = spec.involution().fixed();
    let n_plus = plus.iter().copied().filter(|&g| spec.orientation().kernel().contains(g)).collect();
    (plus, n_plus)
}

/// Extend generator images to a homomorphism on `<gens>` by breadth-first
/// search from the identity. `None` if the assignment is inconsistent.
fn extend_homomorphism(
    group: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    target_mul: impl Fn(usize, usize) -> usize,
    target_identity: usize,
) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; group.order()];
    map[group.identity()] = Some(target_identity);
    let mut queue = vec![group.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x].expect("queued elements are mapped");
        for (&g, &img) in gens.iter().zip(images) {
            let y = group.mul(x, g);
            let fy = target_mul(fx, img);
            match map[y] {
                Some(existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    map[y] = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    Some(map)
}

/// Automorphisms of `group`, each as an image array. With `involutive_only`
/// the search is pruned to automorphisms `psi` with `psi^2 = id`.
///
/// Generator images are assigned one at a time among elements of the same
/// order; every partial assignment is extended to the generated subgroup and
/// rejected early on conflicts, non-injectivity, or (when pruning) a
/// detected `psi(psi(x)) != x`.
pub fn enumerate_automorphisms(group: &FiniteGroup, involutive_only: bool) -> Vec<Vec<usize>> {
    let gens = group.generators();
    let orders: Vec<usize> = group.elements().map(|g| group.element_order(g)).collect();
    let mut found = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search_automorphisms(group, &gens, &orders, involutive_only, &mut images, &mut found);
    found.retain(|psi| is_automorphism(group, psi) && (!involutive_only || is_involutive(psi)));
    found.sort();
    found
}

fn search_automorphisms(
    group: &FiniteGroup,
    gens: &[usize],
    orders: &[usize],
    involutive_only: bool,
    images: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    let depth = images.len();
    let partial = extend_homomorphism(group, &gens[..depth], images, |a, b| group.mul(a, b), group.identity())
        .expect("parent assignment was consistent");
    if depth == gens.len() {
        found.push(partial.into_iter().map(|v| v.expect("generators span the group")).collect());
        return;
    }
    let mut used = vec![false; group.order()];
    for v in partial.iter().flatten() {
        used[*v] = true;
    }
    let target_order = orders[gens[depth]];
    for candidate in group.elements() {
        if used[candidate] || orders[candidate] != target_order {
            continue;
        }
        images.push(candidate);
        let ok = extend_homomorphism(group, &gens[..=depth], images, |a, b| group.mul(a, b), group.identity())
            .is_some_and(|map| partial_is_admissible(&map, group.order(), involutive_only));
        if ok {
            search_automorphisms(group, gens, orders, involutive_only, images, found);
        }
        images.pop();
    }
}

fn partial_is_admissible(map: &[Option<usize>], order: usize, involutive_only: bool) -> bool {
    let mut hit = vec![false; order];
    for v in map.iter().flatten() {
        if std::mem::replace(&mut hit[*v], true) {
            return false;
        }
    }
    if involutive_only {
        for (x, fx) in map.iter().enumerate() {
            if let Some(fx) = *fx {
                if let Some(ffx) = map[fx] {
                    if ffx != x {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn is_automorphism(group: &FiniteGroup, psi: &[usize]) -> bool {
    let mut hit = vec![false; group.order()];
    for &v in psi {
        if std::mem::replace(&mut hit[v], true) {
            return false;
        }
    }
    group
        .elements()
        .all(|g| group.elements().all(|h| psi[group.mul(g, h)] == group.mul(psi[g], psi[h])))
}

fn is_involutive(psi: &[usize]) -> bool {
    psi.iter().enumerate().all(|(x, &y)| psi[y] == x)
}

/// All involutions of `group`: the maps `g -> psi(g)^-1` for automorphisms
/// `psi` with `psi^2 = id`, sorted lexicographically by image array.
pub fn enumerate_involutions(group: &FiniteGroup) -> Result<Vec<Involution>, MorphismError> {
    if group.order() > MAX_GROUP_ORDER {
        return Err(MorphismError::BoundExceeded { order: group.order(), bound: MAX_GROUP_ORDER });
    }
    let mut out: Vec<Involution> = enumerate_automorphisms(group, true)
        .into_iter()
        .map(|psi| {
            let image = psi.iter().map(|&p| group.inv(p)).collect();
            Involution::new(group, image).expect("inverse of an involutive automorphism is an involution")
        })
        .collect();
    out.sort_by(|a, b| a.image.cmp(&b.image));
    out.dedup();
    Ok(out)
}

/// `g* = g` on the center, `g* = s g` elsewhere.
pub fn canonical_involution(group: &FiniteGroup) -> Result<Involution, MorphismError> {
    if group.is_abelian() {
        return Err(MorphismError::NotSlcShaped("group is abelian".into()));
    }
    let s = group
        .unique_nonidentity_commutator()
        .ok_or_else(|| MorphismError::NotSlcShaped("no unique non-identity commutator".into()))?;
    if !group.central_quotient_klein() {
        return Err(MorphismError::NotSlcShaped("G/Z(G) is not C2 x C2".into()));
    }
    let center = group.center();
    let image = group
        .elements()
        .map(|g| if center.contains(g) { g } else { group.mul(s, g) })
        .collect();
    Involution::new(group, image)
}

/// The trivial orientation followed by every nontrivial orientation, the
/// latter sorted by sign array (`+` before `-`).
///
/// Orientations are found by assigning a sign to each generator and
/// keeping the assignments that extend to homomorphisms.
pub fn enumerate_orientations(group: &FiniteGroup) -> Vec<Orientation> {
    let gens = group.generators();
    let mut nontrivial: Vec<Vec<i8>> = Vec::new();
    for mask in 1u64..(1u64 << gens.len()) {
        let bits: Vec<usize> = (0..gens.len()).map(|i| ((mask >> i) & 1) as usize).collect();
        if let Some(map) = extend_homomorphism(group, &gens, &bits, |a, b| a ^ b, 0) {
            nontrivial.push(map.into_iter().map(|b| if b == Some(0) { 1 } else { -1 }).collect());
        }
    }
    nontrivial.sort_by(|a, b| b.cmp(a));
    nontrivial.dedup();
    std::iter::once(Orientation::trivial(group))
        .chain(nontrivial.into_iter().map(|s| {
            Orientation::from_signs(group, s).expect("extension validated on generators")
        }))
        .collect()
}
