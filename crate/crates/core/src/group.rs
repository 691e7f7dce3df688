//! Finite groups given by multiplication tables, together with the subgroup,
//! coset and automorphism bookkeeping used by every other module.
//!
//! Elements are addressed by their index in the element list. All algorithms
//! are enumeration based; no structural factorization is attempted.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

/// Largest group order accepted by [`FiniteGroup::new`].
pub const MAX_GROUP_ORDER: usize = 4096;

/// Up to this order associativity is checked on every triple; above it the
/// check runs Light's test over a generating set.
const FULL_ASSOCIATIVITY_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group has no elements")]
    Empty,
    #[error("group order {0} exceeds the limit of {MAX_GROUP_ORDER}")]
    TooLarge(usize),
    #[error("duplicate element `{name}` at positions {first} and {second}")]
    DuplicateElement {
        name: String,
        first: usize,
        second: usize,
    },
    #[error("table row {row} has {len} entries, expected {expected}")]
    TableShape {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("no element acts as a two-sided identity")]
    NoIdentity,
    #[error("element `{0}` has no two-sided inverse")]
    NoInverse(String),
    #[error("({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: String, b: String, c: String },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("automorphism map is not a bijection")]
    NotBijective,
    #[error("automorphism map is not a homomorphism: T({a}*{b}) != T({a})*T({b})")]
    NotHomomorphism { a: String, b: String },
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

/// A validated finite group.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    lookup: HashMap<String, usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("elements", &self.names)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from element names and a square multiplication table
    /// (`table[a][b]` is the index of `a*b`).
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let mut lookup = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if let Some(&first) = lookup.get(name) {
                return Err(GroupError::DuplicateElement {
                    name: name.clone(),
                    first,
                    second: i,
                });
            }
            lookup.insert(name.clone(), i);
        }
        if table.len() != n {
            return Err(GroupError::TableShape {
                row: table.len().min(n),
                len: table.get(n).map_or(0, Vec::len),
                expected: n,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupError::TableShape {
                    row,
                    len: entries.len(),
                    expected: n,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { row, col, value });
                }
                flat.push(value as u32);
            }
        }
        let mul = |a: usize, b: usize| flat[a * n + b] as usize;

        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;

        let mut inverse = Vec::with_capacity(n);
        for (a, name) in names.iter().enumerate() {
            let inv = (0..n)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| GroupError::NoInverse(name.clone()))?;
            inverse.push(inv);
        }

        if let Some((a, b, c)) = first_non_associative(n, &mul) {
            return Err(GroupError::NonAssociative {
                a: names[a].clone(),
                b: names[b].clone(),
                c: names[c].clone(),
            });
        }

        Ok(Self {
            names,
            table: flat,
            identity,
            inverse,
            lookup,
        })
    }

    /// Builds a group from names and a product function on indices.
    pub fn from_fn(names: Vec<String>, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = names.len();
        let table = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        Self::new(names, table)
    }

    /// The cyclic group Z/nZ with elements named `0..n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(names, |a, b| (a + b) % n)
    }

    /// A direct sum of cyclic groups Z/n1 ⊕ Z/n2 ⊕ ... with elements named
    /// `(a,b,...)` and indices in mixed radix (first coordinate most
    /// significant). A single modulus yields plain names like [`Self::cyclic`].
    pub fn abelian(moduli: &[usize]) -> Result<Self> {
        if moduli.len() == 1 {
            return Self::cyclic(moduli[0]);
        }
        let order: usize = moduli.iter().product();
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let coords: Vec<Vec<usize>> = (0..order).map(|i| mixed_radix(i, moduli)).collect();
        let names = coords
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Self::from_fn(names, |a, b| {
            let sum: Vec<usize> = coords[a]
                .iter()
                .zip(&coords[b])
                .zip(moduli)
                .map(|((x, y), m)| (x + y) % m)
                .collect();
            from_mixed_radix(&sum, moduli)
        })
    }

    /// The symmetric group on `k` letters; elements are named by one-line
    /// notation (`012`, `102`, ...) in lexicographic order, composition is
    /// `(p*q)(i) = p(q(i))`.
    pub fn symmetric(k: usize) -> Result<Self> {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..k).collect(), 0, &mut perms);
        perms.sort();
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(usize::to_string).collect::<String>())
            .collect();
        Self::from_fn(names, |a, b| {
            let composed: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
            index[&composed]
        })
    }

    /// The dihedral group of order `2n`: `r^i` named `r<i>`, `s r^i` named `s<i>`.
    pub fn dihedral(n: usize) -> Result<Self> {
        let names = (0..n)
            .map(|i| format!("r{i}"))
            .chain((0..n).map(|i| format!("s{i}")))
            .collect();
        // element (f, i) = s^f r^i;  r^i s = s r^{-i}
        Self::from_fn(names, |a, b| {
            let (fa, ia) = (a / n, a % n);
            let (fb, ib) = (b / n, b % n);
            let i = if fb == 0 { (ia + ib) % n } else { (n - ia % n + ib) % n };
            ((fa ^ fb) * n) + i
        })
    }

    /// The quaternion group Q8 with elements `1 -1 i -i j -j k -k`.
    pub fn quaternion() -> Result<Self> {
        // unit index 0..4 = 1,i,j,k ; sign bit
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        Self::from_fn(names, |a, b| {
            let (ua, sa) = (a / 2, a % 2 == 1);
            let (ub, sb) = (b / 2, b % 2 == 1);
            let (u, s) = UNIT[ua][ub];
            u * 2 + usize::from(s ^ sa ^ sb)
        })
    }

    /// Direct product with elements named `(a,b)` and index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self> {
        let m = other.order();
        let order = self.order() * m;
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let names = (0..order)
            .map(|i| format!("({},{})", self.names[i / m], other.names[i % m]))
            .collect();
        Self::from_fn(names, |a, b| {
            self.mul(a / m, b / m) * m + other.mul(a % m, b % m)
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| GroupError::UnknownElement(name.to_string()))
    }

    /// Multiplication table as nested rows, in index order.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Diagnostic only: whether `gHg⁻¹ = H` for every `g`.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.order()).all(|g| {
            h.members()
                .iter()
                .all(|&x| h.contains(self.mul(self.mul(g, x), self.inv(g))))
        })
    }
}

fn first_non_associative(
    n: usize,
    mul: &impl Fn(usize, usize) -> usize,
) -> Option<(usize, usize, usize)> {
    let middles: Vec<usize> = if n <= FULL_ASSOCIATIVITY_LIMIT {
        (0..n).collect()
    } else {
        magma_generators(n, mul)
    };
    // Light's test: the elements b with (ab)c = a(bc) for all a, c form a
    // submagma, so checking a generating set suffices.
    for &b in &middles {
        for a in 0..n {
            let ab = mul(a, b);
            for c in 0..n {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Greedy generating set of the magma (closure under products only).
fn magma_generators(n: usize, mul: &impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut i = 0;
    for candidate in 0..n {
        if inside[candidate] {
            continue;
        }
        gens.push(candidate);
        inside[candidate] = true;
        members.push(candidate);
        // pairs among earlier members were already saturated
        while i < members.len() {
            let x = members[i];
            let mut j = 0;
            while j <= i {
                let y = members[j];
                for z in [mul(x, y), mul(y, x)] {
                    if !inside[z] {
                        inside[z] = true;
                        members.push(z);
                    }
                }
                j += 1;
            }
            i += 1;
        }
    }
    gens
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

pub(crate) fn mixed_radix(mut i: usize, moduli: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; moduli.len()];
    for (d, &m) in digits.iter_mut().zip(moduli).rev() {
        *d = i % m;
        i /= m;
    }
    digits
}

pub(crate) fn from_mixed_radix(digits: &[usize], moduli: &[usize]) -> usize {
    digits.iter().zip(moduli).fold(0, |acc, (&d, &m)| acc * m + d)
}

/// A subgroup, stored as a sorted member list of indices into its parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
}

impl Subgroup {
    /// Validates that `members` is closed under products and inverses.
    pub fn from_members(g: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= g.order()) {
            return Err(GroupError::IndexOutOfRange(bad));
        }
        let h = Self {
            parent_order: g.order(),
            members,
        };
        if !h.contains(g.identity()) {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        for &a in &h.members {
            if !h.contains(g.inv(a)) {
                return Err(GroupError::NotASubgroup(format!(
                    "inverse of `{}` missing",
                    g.name(a)
                )));
            }
            for &b in &h.members {
                if !h.contains(g.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!(
                        "`{}`*`{}` missing",
                        g.name(a),
                        g.name(b)
                    )));
                }
            }
        }
        Ok(h)
    }

    /// For member sets already known to be closed, such as subgroups of
    /// product groups that are never materialized.
    pub(crate) fn from_closed_unchecked(parent_order: usize, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self {
            parent_order,
            members,
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self {
            parent_order: g.order(),
            members: vec![g.identity()],
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self {
            parent_order: g.order(),
            members: (0..g.order()).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// Smallest subgroup containing `seeds`, by saturation.
pub fn subgroup_generated(g: &FiniteGroup, seeds: &[usize]) -> Subgroup {
    let mut inside = vec![false; g.order()];
    let mut members = vec![g.identity()];
    inside[g.identity()] = true;
    let mut i = 0;
    // Right multiplication by the seeds from the identity reaches every
    // product of seeds; finiteness supplies the inverses.
    while i < members.len() {
        let x = members[i];
        for &s in seeds {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    Subgroup {
        parent_order: g.order(),
        members,
    }
}

/// Intersection of two subgroups of the same parent.
pub fn intersect(h1: &Subgroup, h2: &Subgroup) -> Subgroup {
    assert_eq!(
        h1.parent_order, h2.parent_order,
        "subgroups of different parents"
    );
    Subgroup {
        parent_order: h1.parent_order,
        members: h1
            .members
            .iter()
            .copied()
            .filter(|&a| h2.contains(a))
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `gH`
    Left,
    /// `Hg`
    Right,
}

/// A partition of a group into cosets of a subgroup.
///
/// Block 0 is the subgroup itself; the remaining blocks are ordered by their
/// representative, which is always the smallest member index of the block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    side: Side,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl CosetPartition {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing element `a`.
    pub fn block_of(&self, a: usize) -> usize {
        self.block_of[a]
    }

    pub fn representative(&self, block: usize) -> usize {
        self.blocks[block][0]
    }
}

pub fn cosets(g: &FiniteGroup, h: &Subgroup, side: Side) -> CosetPartition {
    let n = g.order();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(n / h.order());
    blocks.push(h.members.clone());
    for &m in &h.members {
        block_of[m] = 0;
    }
    for rep in 0..n {
        if block_of[rep] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block: Vec<usize> = h
            .members
            .iter()
            .map(|&x| match side {
                Side::Left => g.mul(rep, x),
                Side::Right => g.mul(x, rep),
            })
            .collect();
        block.sort_unstable();
        for &m in &block {
            block_of[m] = id;
        }
        blocks.push(block);
    }
    CosetPartition {
        side,
        blocks,
        block_of,
    }
}

/// A validated automorphism, stored as the image of every element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAutomorphism {
    image: Vec<usize>,
}

impl GroupAutomorphism {
    pub fn new(g: &FiniteGroup, image: Vec<usize>) -> Result<Self> {
        if image.len() != g.order() {
            return Err(GroupError::NotBijective);
        }
        let mut seen = vec![false; g.order()];
        for &x in &image {
            if x >= g.order() || std::mem::replace(&mut seen[x], true) {
                return Err(GroupError::NotBijective);
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if image[g.mul(a, b)] != g.mul(image[a], image[b]) {
                    return Err(GroupError::NotHomomorphism {
                        a: g.name(a).into(),
                        b: g.name(b).into(),
                    });
                }
            }
        }
        Ok(Self { image })
    }

    pub fn from_fn(g: &FiniteGroup, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(g, (0..g.order()).map(f).collect())
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self {
            image: (0..g.order()).collect(),
        }
    }

    /// Multiplication by `k` on a direct sum of cyclic groups built by
    /// [`FiniteGroup::abelian`] with the same moduli.
    pub fn scale_abelian(g: &FiniteGroup, moduli: &[usize], k: usize) -> Result<Self> {
        Self::from_fn(g, |a| {
            let d: Vec<usize> = mixed_radix(a, moduli)
                .iter()
                .zip(moduli)
                .map(|(&x, &m)| (x * k) % m)
                .collect();
            from_mixed_radix(&d, moduli)
        })
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (a, &b) in self.image.iter().enumerate() {
            inv[b] = a;
        }
        Self { image: inv }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            image: other.image.iter().map(|&b| self.image[b]).collect(),
        }
    }

    /// `T^k` for any integer `k`.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self {
            image: (0..self.image.len()).collect(),
        };
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(a, &b)| a == b)
    }

    /// Cycles of the underlying permutation, each starting at its smallest
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        permutation_cycles(&self.image)
    }

    /// Image of a set of elements, sorted.
    pub fn image_of(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&a| self.image[a]).collect();
        out.sort_unstable();
        out
    }
}

/// Least `n ≥ 1` with `Tⁿ` the identity map.
pub fn automorphism_order(t: &GroupAutomorphism) -> BigUint {
    t.cycles()
        .iter()
        .fold(BigUint::from(1u32), |acc, c| acc.lcm(&BigUint::from(c.len())))
}

pub(crate) fn permutation_cycles(image: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; image.len()];
    let mut cycles = Vec::new();
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = image[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = image[x];
        }
        cycles.push(cycle);
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4z2() -> FiniteGroup {
        FiniteGroup::abelian(&[4, 2]).unwrap()
    }

    #[test]
    fn builds_example_groups() {
        assert_eq!(z4z2().order(), 8);
        assert_eq!(z4z2().name(z4z2().identity()), "(0,0)");
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        let trivial = FiniteGroup::new(vec!["e".into()], vec![vec![0]]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        assert_eq!(FiniteGroup::quaternion().unwrap().order(), 8);
    }

    #[test]
    fn quaternion_is_nonabelian_with_unique_involution() {
        let q = FiniteGroup::quaternion().unwrap();
        let i = q.index_of("i").unwrap();
        let j = q.index_of("j").unwrap();
        assert_eq!(q.name(q.mul(i, j)), "k");
        assert_eq!(q.name(q.mul(j, i)), "-k");
        let involutions = (0..8).filter(|&a| q.element_order(a) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn rejects_bad_tables() {
        let names = |n: usize| (0..n).map(|i| format!("x{i}")).collect::<Vec<_>>();
        assert!(matches!(
            FiniteGroup::new(vec!["a".into(), "a".into()], vec![vec![0, 1], vec![1, 0]]),
            Err(GroupError::DuplicateElement { first: 0, second: 1, .. })
        ));
        assert!(matches!(
            FiniteGroup::new(names(2), vec![vec![1, 1], vec![1, 1]]),
            Err(GroupError::NoIdentity)
        ));
        assert!(matches!(
            FiniteGroup::new(names(2), vec![vec![0, 1], vec![1, 1]]),
            Err(GroupError::NoInverse(ref s)) if s == "x1"
        ));
        // Latin square with identity 0 that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::new(names(5), loop5),
            Err(GroupError::NonAssociative { .. })
        ));
        assert!(matches!(
            FiniteGroup::new(names(2), vec![vec![0, 1]]),
            Err(GroupError::TableShape { .. })
        ));
        assert!(matches!(
            FiniteGroup::new(names(2), vec![vec![0, 2], vec![1, 0]]),
            Err(GroupError::EntryOutOfRange { row: 0, col: 1, value: 2 })
        ));
    }

    #[test]
    fn light_test_catches_large_non_associative_table() {
        // Z/70 with two entries swapped in one row: still has identity and
        // inverses on the affected elements but breaks associativity.
        let n = 70;
        let mut table: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        table[3].swap(5, 6);
        let names = (0..n).map(|i| i.to_string()).collect();
        assert!(matches!(
            FiniteGroup::new(names, table),
            Err(GroupError::NonAssociative { .. })
        ));
        assert!(FiniteGroup::cyclic(100).is_ok());
    }

    #[test]
    fn generated_subgroups() {
        let g = z4z2();
        let two = g.index_of("(2,0)").unwrap();
        let h = subgroup_generated(&g, &[two]);
        let names: Vec<&str> = h.members().iter().map(|&a| g.name(a)).collect();
        assert_eq!(names, ["(0,0)", "(2,0)"]);
        assert_eq!(subgroup_generated(&g, &[]).members(), &[g.identity()]);

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let transposition = s3.index_of("102").unwrap();
        assert_eq!(subgroup_generated(&s3, &[transposition]).order(), 2);
    }

    #[test]
    fn coset_partition_of_k() {
        let g = z4z2();
        let k = subgroup_generated(&g, &[g.index_of("(2,0)").unwrap()]);
        let parts = cosets(&g, &k, Side::Left);
        assert_eq!(parts.len(), 4);
        assert_eq!(parts.blocks()[0], k.members());
        assert!(parts.blocks().iter().all(|b| b.len() == 2));
        for (i, b) in parts.blocks().iter().enumerate() {
            assert_eq!(parts.representative(i), *b.iter().min().unwrap());
        }
        assert_eq!(cosets(&g, &Subgroup::trivial(&g), Side::Left).len(), 8);
        assert_eq!(cosets(&g, &Subgroup::whole(&g), Side::Right).len(), 1);
    }

    #[test]
    fn intersections() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let a = subgroup_generated(&s3, &[s3.index_of("102").unwrap()]);
        let b = subgroup_generated(&s3, &[s3.index_of("021").unwrap()]);
        assert!(intersect(&a, &b).is_trivial());
        assert_eq!(intersect(&a, &a), a);
        assert!(!s3.is_normal(&a));
        let rotations = subgroup_generated(&s3, &[s3.index_of("120").unwrap()]);
        assert!(s3.is_normal(&rotations));
    }

    #[test]
    fn automorphism_orders() {
        let z9 = FiniteGroup::cyclic(9).unwrap();
        let t = GroupAutomorphism::scale_abelian(&z9, &[9], 2).unwrap();
        assert_eq!(automorphism_order(&t), BigUint::from(6u32));
        assert_eq!(
            automorphism_order(&GroupAutomorphism::identity(&z9)),
            BigUint::from(1u32)
        );
        let moduli = [3, 9, 27];
        let g = FiniteGroup::abelian(&moduli).unwrap();
        let t = GroupAutomorphism::scale_abelian(&g, &moduli, 2).unwrap();
        assert_eq!(automorphism_order(&t), BigUint::from(18u32));
        assert!(t.power(18).is_identity());
        assert!(!t.power(9).is_identity());
        assert!(t.power(-18).is_identity());
    }

    #[test]
    fn rejects_non_automorphisms() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(
            GroupAutomorphism::new(&z4, vec![0, 0, 0, 0]),
            Err(GroupError::NotBijective)
        );
        assert!(matches!(
            GroupAutomorphism::new(&z4, vec![0, 2, 1, 3]),
            Err(GroupError::NotHomomorphism { .. })
        ));
    }
}
