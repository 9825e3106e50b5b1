//! Finite groups stored as validated Cayley tables.
//!
//! Elements are dense indices `0..order`; every group operation is a table
//! lookup. A [`FiniteGroup`] is a cheap, shareable handle: cloning it clones
//! an `Arc`.

use std::fmt;
use std::sync::Arc;

use crate::error::GroupError;

/// Largest order accepted by the exhaustive checks in this crate.
pub const MAX_GROUP_ORDER: usize = 32;

#[derive(Debug, PartialEq, Eq)]
struct GroupData {
    label: String,
    order: usize,
    /// Row-major: `table[i * order + j]` is the index of `g_i g_j`.
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Vec<String>,
}

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.data.label)
            .field("order", &self.data.order)
            .finish()
    }
}

/// Recipes for the built-in group families.
#[derive(Clone, Debug)]
pub enum GroupKind {
    /// Cyclic group of order `n`, generator `a`.
    Cyclic(usize),
    /// Dihedral group of order `2n`, rotation `r` and reflection `s`.
    Dihedral(usize),
    /// Generalized quaternion group of the given order (a power of two, at least 8).
    Quaternion(usize),
    /// Elementary abelian group `C2^k`.
    ElementaryAbelian2(u32),
    DirectProduct(FiniteGroup, FiniteGroup),
}

/// Build a group from one of the built-in recipes.
///
/// Naming scheme:
/// * `Cyclic(n)`: `1, a, a^2, ..., a^(n-1)`
/// * `Dihedral(n)`: `r^i s^j`, e.g. `1, r, r^2, s, rs, r^2s`; index `i + n*j`
/// * `Quaternion(2m)`: `x^i y^j` with `x^m = y^2`; index `i + m*j`
/// * `ElementaryAbelian2(k)`: products of `e1..ek`; index is the bitmask
/// * `DirectProduct(G, H)`: concatenated names, identity factors dropped;
///   index `i * |H| + j`
pub fn construct_group(kind: GroupKind) -> Result<FiniteGroup, GroupError> {
    match kind {
        GroupKind::Cyclic(n) => cyclic_named(n, "a"),
        GroupKind::Dihedral(n) => dihedral(n),
        GroupKind::Quaternion(n) => quaternion(n),
        GroupKind::ElementaryAbelian2(k) => elementary_abelian_2(k),
        GroupKind::DirectProduct(g, h) => direct_product(&g, &h),
    }
}

fn power_name(base: &str, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => base.to_string(),
        e => format!("{base}^{e}"),
    }
}

fn or_one(name: String) -> String {
    if name.is_empty() {
        "1".to_string()
    } else {
        name
    }
}

/// Cyclic group of order `n` whose generator is displayed as `generator`.
pub fn cyclic_named(n: usize, generator: &str) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("cyclic order must be at least 1".into()));
    }
    let names = (0..n).map(|i| or_one(power_name(generator, i))).collect();
    let table = (0..n).flat_map(|i| (0..n).map(move |j| (i + j) % n)).collect();
    FiniteGroup::from_parts(format!("C{n}"), table, names)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    cyclic_named(n, "a")
}

pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("dihedral parameter must be at least 1".into()));
    }
    let order = 2 * n;
    let index = |i: usize, j: usize| i + n * j;
    let mut names = vec![String::new(); order];
    for j in 0..2 {
        for i in 0..n {
            names[index(i, j)] = or_one(format!("{}{}", power_name("r", i), power_name("s", j)));
        }
    }
    let mut table = vec![0; order * order];
    for a in 0..order {
        let (i, j) = (a % n, a / n);
        for b in 0..order {
            let (k, l) = (b % n, b / n);
            // s r^k = r^(-k) s
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            table[a * order + b] = index(rot, (j + l) % 2);
        }
    }
    FiniteGroup::from_parts(format!("D{n}"), table, names)
}

pub fn quaternion(order: usize) -> Result<FiniteGroup, GroupError> {
    if order < 8 || !order.is_power_of_two() {
        return Err(GroupError::InvalidParameter(format!(
            "quaternion order must be a power of 2 and at least 8, got {order}"
        )));
    }
    let m = order / 2; // order of x
    let half = m / 2; // x^half = y^2
    let index = |i: usize, j: usize| i + m * j;
    let mut names = vec![String::new(); order];
    for j in 0..2 {
        for i in 0..m {
            names[index(i, j)] = or_one(format!("{}{}", power_name("x", i), power_name("y", j)));
        }
    }
    let mut table = vec![0; order * order];
    for a in 0..order {
        let (i, j) = (a % m, a / m);
        for b in 0..order {
            let (k, l) = (b % m, b / m);
            // y x^k = x^(-k) y, y^2 = x^half
            let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
            let entry = match (j, l) {
                (1, 1) => index((rot + half) % m, 0),
                _ => index(rot, (j + l) % 2),
            };
            table[a * order + b] = entry;
        }
    }
    FiniteGroup::from_parts(format!("Q{order}"), table, names)
}

pub fn elementary_abelian_2(k: u32) -> Result<FiniteGroup, GroupError> {
    if k == 0 {
        return Err(GroupError::InvalidParameter("rank must be at least 1".into()));
    }
    if k > 5 {
        return Err(GroupError::InvalidParameter(format!(
            "C2^{k} exceeds the supported order {MAX_GROUP_ORDER}"
        )));
    }
    let order = 1usize << k;
    let names = (0..order)
        .map(|mask| {
            let name: String = (0..k as usize)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| format!("e{}", b + 1))
                .collect();
            or_one(name)
        })
        .collect();
    let table = (0..order).flat_map(|i| (0..order).map(move |j| i ^ j)).collect();
    FiniteGroup::from_parts(format!("C2^{k}"), table, names)
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (m, n) = (g.order(), h.order());
    let order = m * n;
    if order > MAX_GROUP_ORDER * MAX_GROUP_ORDER {
        return Err(GroupError::InvalidParameter("direct product too large".into()));
    }
    let mut names = Vec::with_capacity(order);
    for i in 0..m {
        for j in 0..n {
            let left = if i == g.identity() { String::new() } else { g.name(i).to_string() };
            let right = if j == h.identity() { String::new() } else { h.name(j).to_string() };
            names.push(or_one(format!("{left}{right}")));
        }
    }
    let mut table = vec![0; order * order];
    for a in 0..order {
        for b in 0..order {
            let (i1, j1) = (a / n, a % n);
            let (i2, j2) = (b / n, b % n);
            table[a * order + b] = g.mul(i1, i2) * n + h.mul(j1, j2);
        }
    }
    FiniteGroup::from_parts(format!("{}x{}", g.label(), h.label()), table, names)
}

/// Validate a raw Cayley table. `table[i][j]` is the index of `g_i g_j`.
///
/// Checks run in the order: shape, entry range, Latin square, identity,
/// associativity. Inverses follow from the Latin-square property.
pub fn validate_group(
    label: impl Into<String>,
    table: &[Vec<usize>],
    names: Vec<String>,
) -> Result<FiniteGroup, GroupError> {
    let order = table.len();
    if order == 0 {
        return Err(GroupError::Empty);
    }
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != order {
            return Err(GroupError::NotSquare { row, len: entries.len(), order });
        }
    }
    let flat: Vec<usize> = table.iter().flatten().copied().collect();
    FiniteGroup::from_parts(label.into(), flat, names)
}

impl FiniteGroup {
    fn from_parts(label: String, table: Vec<usize>, names: Vec<String>) -> Result<Self, GroupError> {
        let order = names.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if table.len() != order * order {
            return Err(GroupError::NamesMismatch { names: order, order: isqrt(table.len()) });
        }
        for i in 0..order {
            for j in 0..i {
                if names[i] == names[j] {
                    return Err(GroupError::DuplicateName(names[i].clone()));
                }
            }
        }
        for (pos, &v) in table.iter().enumerate() {
            if v >= order {
                return Err(GroupError::EntryOutOfRange { row: pos / order, col: pos % order, value: v });
            }
        }
        // Latin square: each row and column is a permutation.
        let mut seen = vec![usize::MAX; order];
        for row in 0..order {
            for col in 0..order {
                let v = table[row * order + col];
                if seen[v] == row {
                    return Err(GroupError::NotLatinSquare { line: "row", index: row });
                }
                seen[v] = row;
            }
        }
        seen.fill(usize::MAX);
        for col in 0..order {
            for row in 0..order {
                let v = table[row * order + col];
                if seen[v] == col {
                    return Err(GroupError::NotLatinSquare { line: "column", index: col });
                }
                seen[v] = col;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|i| table[e * order + i] == i && table[i * order + e] == i))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let inverses = (0..order)
            .map(|i| {
                (0..order)
                    .find(|&j| table[i * order + j] == identity)
                    .expect("Latin square row contains the identity")
            })
            .collect();
        Ok(FiniteGroup {
            data: Arc::new(GroupData { label, order, table, identity, inverses, names }),
        })
    }

    /// Same group with a different display label.
    pub fn relabeled(&self, label: impl Into<String>) -> FiniteGroup {
        let d = &self.data;
        FiniteGroup {
            data: Arc::new(GroupData {
                label: label.into(),
                order: d.order,
                table: d.table.clone(),
                identity: d.identity,
                inverses: d.inverses.clone(),
                names: d.names.clone(),
            }),
        }
    }

    pub fn label(&self) -> &str {
        &self.data.label
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn identity(&self) -> usize {
        self.data.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.table[a * self.data.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.data.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.data.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.data.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.data.names.iter().position(|n| n == name)
    }

    /// Table as nested rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.data.table.chunks(self.data.order).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.data.order
    }

    pub fn pow(&self, a: usize, exp: usize) -> usize {
        (0..exp).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `h^-1 g h`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn commutes(&self, g: usize, h: usize) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    /// `(g, h) = g^-1 h^-1 g h`
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        let gh = self.mul(g, h);
        self.mul(self.mul(self.inv(g), self.inv(h)), gh)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|g| (0..g).all(|h| self.commutes(g, h)))
    }

    pub fn full(&self) -> SubgroupMask {
        SubgroupMask { parent: self.clone(), members: vec![true; self.order()] }
    }

    pub fn trivial_subgroup(&self) -> SubgroupMask {
        let mut members = vec![false; self.order()];
        members[self.identity()] = true;
        SubgroupMask { parent: self.clone(), members }
    }

    /// Smallest subgroup containing `generators`.
    pub fn closure<I: IntoIterator<Item = usize>>(&self, generators: I) -> SubgroupMask {
        let gens: Vec<usize> = generators.into_iter().collect();
        let mut members = vec![false; self.order()];
        members[self.identity()] = true;
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    frontier.push(y);
                }
            }
        }
        SubgroupMask { parent: self.clone(), members }
    }

    pub fn cyclic_subgroup(&self, g: usize) -> SubgroupMask {
        self.closure([g])
    }

    pub fn center(&self) -> SubgroupMask {
        let members = self
            .elements()
            .map(|z| self.elements().all(|g| self.commutes(z, g)))
            .collect();
        SubgroupMask { parent: self.clone(), members }
    }

    /// Elements commuting with every member of `subset`.
    pub fn centralizer(&self, subset: &SubgroupMask) -> SubgroupMask {
        let members = self
            .elements()
            .map(|g| subset.iter().all(|n| self.commutes(g, n)))
            .collect();
        SubgroupMask { parent: self.clone(), members }
    }

    /// The set of all commutator values `(g, h)`, sorted.
    pub fn commutator_values(&self) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        for g in self.elements() {
            for h in self.elements() {
                seen[self.commutator(g, h)] = true;
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    pub fn commutator_subgroup(&self) -> SubgroupMask {
        self.closure(self.commutator_values())
    }

    /// The element `s` when `{(g, h)} \ {1} = {s}`.
    pub fn unique_nonidentity_commutator(&self) -> Option<usize> {
        let nontrivial: Vec<usize> = self
            .commutator_values()
            .into_iter()
            .filter(|&c| c != self.identity())
            .collect();
        match nontrivial.as_slice() {
            [s] => Some(*s),
            _ => None,
        }
    }

    /// Limited commutativity: non-abelian, and commuting pairs always have
    /// `g`, `h` or `gh` central.
    pub fn is_lc(&self) -> bool {
        if self.is_abelian() {
            return false;
        }
        let center = self.center();
        self.elements().all(|g| {
            self.elements().all(|h| {
                !self.commutes(g, h)
                    || center.contains(g)
                    || center.contains(h)
                    || center.contains(self.mul(g, h))
            })
        })
    }

    /// `G / Z(G)` is the Klein four-group.
    pub fn central_quotient_klein(&self) -> bool {
        let center = self.center();
        center.size() * 4 == self.order() && self.elements().all(|g| center.contains(self.mul(g, g)))
    }

    /// Non-abelian 2-group in which every cyclic subgroup is normal.
    pub fn is_hamiltonian_2_group(&self) -> bool {
        if !self.order().is_power_of_two() || self.is_abelian() {
            return false;
        }
        self.elements().all(|g| self.cyclic_subgroup(g).is_normal())
    }

    /// A small generating set, chosen greedily by decreasing element order
    /// (ties broken by index).
    pub fn generators(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = self.elements().collect();
        candidates.sort_by_key(|&g| (std::cmp::Reverse(self.element_order(g)), g));
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for g in candidates {
            if span.size() == self.order() {
                break;
            }
            if !span.contains(g) {
                gens.push(g);
                span = self.closure(gens.iter().copied());
            }
        }
        gens
    }

    /// The subgroup `mask` as a standalone group, plus the embedding that
    /// maps each of its indices back into `self`.
    pub fn subgroup_as_group(&self, mask: &SubgroupMask) -> (FiniteGroup, Vec<usize>) {
        let embed: Vec<usize> = mask.iter().collect();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &g) in embed.iter().enumerate() {
            local[g] = i;
        }
        let n = embed.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = local[self.mul(embed[i], embed[j])];
            }
        }
        let names = embed.iter().map(|&g| self.name(g).to_string()).collect();
        let sub = FiniteGroup::from_parts(format!("{}<sub>", self.label()), table, names)
            .expect("a closed subset of a group is a group");
        (sub, embed)
    }
}

fn isqrt(n: usize) -> usize {
    (0..=n).find(|k| k * k >= n).unwrap_or(0)
}

/// A subset of a group, stored as a membership mask. Constructors on
/// [`FiniteGroup`] only produce subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupMask {
    parent: FiniteGroup,
    members: Vec<bool>,
}

impl SubgroupMask {
    pub fn from_members(parent: &FiniteGroup, members: Vec<bool>) -> Result<Self, GroupError> {
        if members.len() != parent.order() {
            return Err(GroupError::InvalidParameter("mask length differs from group order".into()));
        }
        let mask = SubgroupMask { parent: parent.clone(), members };
        if !mask.is_subgroup() {
            return Err(GroupError::NotASubgroup);
        }
        Ok(mask)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.members[g]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn size(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.size()
    }

    pub fn is_subgroup(&self) -> bool {
        let g = &self.parent;
        self.contains(g.identity())
            && self.iter().all(|a| self.contains(g.inv(a)) && self.iter().all(|b| self.contains(g.mul(a, b))))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        self.iter().all(|n| g.elements().all(|h| self.contains(g.conjugate(n, h))))
    }

    pub fn is_subset_of(&self, other: &SubgroupMask) -> bool {
        self.iter().all(|g| other.contains(g))
    }

    pub fn names(&self) -> Vec<&str> {
        self.iter().map(|g| self.parent.name(g)).collect()
    }
}
