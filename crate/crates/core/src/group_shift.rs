//! Group shifts on a finite alphabet group and codings of finite
//! group automorphisms by coset itineraries.
//!
//! Coordinates: a window of length `2d + 1` is laid out on coordinates
//! `-d ..= d`, so word index `d` is the present (coordinate 0).

use std::collections::HashSet;

use thiserror::Error;

use crate::group::{
    cosets, intersect, CosetPartition, FiniteGroup, GroupAutomorphism, GroupError, Side, Subgroup,
};
use crate::shift::{ShiftError, VertexShift, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupShiftError {
    #[error("edge set is not closed: ({}, {}) * ({}, {}) is missing", .first.0, .first.1, .second.0, .second.1)]
    NotProductClosed {
        first: (String, String),
        second: (String, String),
    },
    #[error("the identity self-loop is missing")]
    IdentityLoopMissing,
    #[error("symbol `{symbol}` has no {side} edge")]
    NotSurjective { symbol: String, side: &'static str },
    #[error("the {side} set of `{symbol}` is not a coset of the identity's")]
    NotACoset { symbol: String, side: &'static str },
    #[error("elements `{a}` and `{b}` have the same coset itinerary")]
    NotSeparating { a: String, b: String },
    #[error("automorphism and subgroup belong to different groups")]
    Mismatch,
    #[error("words have different symbols at coordinate 0")]
    NotSameCoset,
    #[error("splice {0:?} is not a word")]
    SpliceNotAWord(Vec<usize>),
    #[error("expected words of length {expected}, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
}

pub type Result<T, E = GroupShiftError> = std::result::Result<T, E>;

/// A vertex shift over a finite group alphabet `A` whose edge set is a
/// subgroup of `A × A` with both projections onto `A`.
///
/// Symbol indices of the shift are the element indices of the group.
#[derive(Clone, Debug)]
pub struct GroupShiftModel {
    group: FiniteGroup,
    shift: VertexShift,
    edges: Subgroup,
    follower_e: Subgroup,
    predecessor_e: Subgroup,
}

/// Pair `(a, b)` of `A × A` as the index `a * |A| + b`.
fn pair_index(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

impl GroupShiftModel {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn shift(&self) -> &VertexShift {
        &self.shift
    }

    /// The edge set as a subgroup of `A × A` (pair `(a, b)` is index `a·|A| + b`).
    pub fn edge_subgroup(&self) -> &Subgroup {
        &self.edges
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.shift.edges().collect()
    }

    pub fn identity(&self) -> usize {
        self.group.identity()
    }

    /// `f(e)`: symbols that may follow the identity.
    pub fn follower_e(&self) -> &Subgroup {
        &self.follower_e
    }

    /// `p(e)`: symbols that may precede the identity.
    pub fn predecessor_e(&self) -> &Subgroup {
        &self.predecessor_e
    }

    /// `K = f(e) ∩ p(e)`.
    pub fn k(&self) -> Subgroup {
        intersect(&self.follower_e, &self.predecessor_e)
    }

    /// The full shift on `A`.
    pub fn full(group: FiniteGroup) -> Self {
        let n = group.order();
        let all = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
        validate_group_shift(group, all).expect("the full shift is a group shift")
    }

    /// Symbolwise product of two words of equal length.
    pub fn product_word(&self, u: &[usize], v: &[usize]) -> Vec<usize> {
        u.iter().zip(v).map(|(&a, &b)| self.group.mul(a, b)).collect()
    }

    pub fn inverse_word(&self, u: &[usize]) -> Vec<usize> {
        u.iter().map(|&a| self.group.inv(a)).collect()
    }
}

/// Closes `seeds` under products in `A × A`.
pub fn edge_closure(a: &FiniteGroup, seeds: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let n = a.order();
    let e = a.identity();
    let mut inside = vec![false; n * n];
    let mut members = vec![(e, e)];
    inside[pair_index(n, e, e)] = true;
    let mut i = 0;
    while i < members.len() {
        let (x, y) = members[i];
        for &(s, t) in seeds {
            let (p, q) = (a.mul(x, s), a.mul(y, t));
            if !inside[pair_index(n, p, q)] {
                inside[pair_index(n, p, q)] = true;
                members.push((p, q));
            }
        }
        i += 1;
    }
    members.sort_unstable();
    members
}

/// Validates that `edges` is a subgroup of `A × A` with surjective
/// projections and records `f(e)` and `p(e)`.
pub fn validate_group_shift(
    a: FiniteGroup,
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> Result<GroupShiftModel> {
    let n = a.order();
    let mut list: Vec<(usize, usize)> = edges.into_iter().collect();
    if let Some(&(x, y)) = list.iter().find(|&&(x, y)| x >= n || y >= n) {
        return Err(GroupError::IndexOutOfRange(x.max(y)).into());
    }
    list.sort_unstable();
    list.dedup();
    let mut inside = vec![false; n * n];
    for &(x, y) in &list {
        inside[pair_index(n, x, y)] = true;
    }
    let e = a.identity();
    if !inside[pair_index(n, e, e)] {
        return Err(GroupShiftError::IdentityLoopMissing);
    }
    // In a finite group, closure under products already gives a subgroup.
    for &(x, y) in &list {
        for &(u, v) in &list {
            if !inside[pair_index(n, a.mul(x, u), a.mul(y, v))] {
                let pair = |p: usize, q: usize| (a.name(p).to_string(), a.name(q).to_string());
                return Err(GroupShiftError::NotProductClosed {
                    first: pair(x, y),
                    second: pair(u, v),
                });
            }
        }
    }
    let mut has_out = vec![false; n];
    let mut has_in = vec![false; n];
    for &(x, y) in &list {
        has_out[x] = true;
        has_in[y] = true;
    }
    for s in 0..n {
        if !has_out[s] || !has_in[s] {
            return Err(GroupShiftError::NotSurjective {
                symbol: a.name(s).to_string(),
                side: if !has_out[s] { "outgoing" } else { "incoming" },
            });
        }
    }
    let shift = VertexShift::new(a.names().to_vec(), list.iter().copied())?;
    let follower_e = Subgroup::from_members(&a, shift.successors(e).iter().copied())?;
    let predecessor_e = Subgroup::from_members(&a, shift.predecessors(e).iter().copied())?;
    for s in 0..n {
        for (side, set, sub) in [
            ("follower", shift.successors(s), &follower_e),
            ("predecessor", shift.predecessors(s), &predecessor_e),
        ] {
            let mut coset: Vec<usize> = sub.members().iter().map(|&x| a.mul(set[0], x)).collect();
            coset.sort_unstable();
            if coset != set {
                return Err(GroupShiftError::NotACoset {
                    symbol: a.name(s).to_string(),
                    side,
                });
            }
        }
    }
    let edges = Subgroup::from_closed_unchecked(
        n * n,
        list.iter().map(|&(x, y)| pair_index(n, x, y)).collect(),
    );
    Ok(GroupShiftModel {
        group: a,
        shift,
        edges,
        follower_e,
        predecessor_e,
    })
}

/// Coset itinerary of one element: `cycle[i]` is the coset of `T^i(g)` for
/// `0 <= i < orbit length`; the bi-infinite itinerary repeats it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Itinerary {
    pub cycle: Vec<usize>,
    /// Least period of the coset sequence; divides `cycle.len()`.
    pub period: usize,
}

/// A finite group automorphism coded by its left cosets of `H`.
#[derive(Clone, Debug)]
pub struct CodedSystem {
    group: FiniteGroup,
    automorphism: GroupAutomorphism,
    subgroup: Subgroup,
    partition: CosetPartition,
    shift: VertexShift,
    itineraries: Vec<Itinerary>,
    refinement: Vec<usize>,
}

impl CodedSystem {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn automorphism(&self) -> &GroupAutomorphism {
        &self.automorphism
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn partition(&self) -> &CosetPartition {
        &self.partition
    }

    /// Vertex shift on `Γ/H`: `gH -> g'H` iff `T(gH)` meets `g'H`.
    pub fn shift(&self) -> &VertexShift {
        &self.shift
    }

    pub fn itinerary(&self, g: usize) -> &Itinerary {
        &self.itineraries[g]
    }

    /// Orders of `H_k = ∩_{0<=i<k} T^{-i}(H)` for `k = 1, 2, ...` until they reach 1.
    pub fn refinement_orders(&self) -> &[usize] {
        &self.refinement
    }

    /// Least `N` such that `N`-blocks of itineraries determine the point,
    /// i.e. the coded system is 1-step Markov on `N`-blocks.
    pub fn memory(&self) -> usize {
        self.refinement.len()
    }

    /// The coded points as a group shift on `Γ` with edge set the graph of `T`.
    /// Its shift is the permutation `g -> T(g)`.
    pub fn point_model(&self) -> GroupShiftModel {
        let edges = (0..self.group.order()).map(|g| (g, self.automorphism.apply(g)));
        validate_group_shift(self.group.clone(), edges)
            .expect("the graph of an automorphism is a group shift")
    }

    /// Orbit lengths of `T`, sorted.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.automorphism.cycles().iter().map(Vec::len).collect();
        l.sort_unstable();
        l
    }
}

/// Codes `(Γ, T)` by the left cosets of `h`.
pub fn code_finite_system(
    gamma: &FiniteGroup,
    t: &GroupAutomorphism,
    h: &Subgroup,
) -> Result<CodedSystem> {
    if t.images().len() != gamma.order() || h.parent_order() != gamma.order() {
        return Err(GroupShiftError::Mismatch);
    }
    // g and g' share an itinerary iff g⁻¹g' lies in every T^{-i}(H).
    // H_{k+1} = H ∩ T⁻¹(H_k) is decreasing and stabilizes once it repeats.
    let t_inv = t.inverse();
    let mut refinement = vec![h.order()];
    let mut cur = h.clone();
    loop {
        let pulled = Subgroup::from_members(gamma, t_inv.image_of(cur.members()))?;
        let next = intersect(h, &pulled);
        if next == cur {
            break;
        }
        refinement.push(next.order());
        cur = next;
    }
    if !cur.is_trivial() {
        let e = gamma.identity();
        let b = *cur.members().iter().find(|&&m| m != e).expect("non-trivial");
        return Err(GroupShiftError::NotSeparating {
            a: gamma.name(e).to_string(),
            b: gamma.name(b).to_string(),
        });
    }
    let partition = cosets(gamma, h, Side::Left);
    let names: Vec<String> = if h.is_trivial() {
        gamma.names().to_vec()
    } else {
        (0..partition.len())
            .map(|c| format!("[{}]", gamma.name(partition.representative(c))))
            .collect()
    };
    let mut edges: Vec<(usize, usize)> = (0..gamma.order())
        .map(|x| (partition.block_of(x), partition.block_of(t.apply(x))))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let shift = VertexShift::new(names, edges)?;
    let itineraries = (0..gamma.order())
        .map(|g| {
            let mut cycle = vec![partition.block_of(g)];
            let mut x = t.apply(g);
            while x != g {
                cycle.push(partition.block_of(x));
                x = t.apply(x);
            }
            let len = cycle.len();
            let period = (1..=len)
                .find(|&p| len % p == 0 && (0..len).all(|i| cycle[i] == cycle[i % p]))
                .expect("len is a period");
            Itinerary { cycle, period }
        })
        .collect();
    Ok(CodedSystem {
        group: gamma.clone(),
        automorphism: t.clone(),
        subgroup: h.clone(),
        partition,
        shift,
        itineraries,
        refinement,
    })
}

/// Words of length `d` whose last `⌈d/2⌉` symbols are the identity.
///
/// Word index `i` sits at coordinate `i - ⌊d/2⌋`, so these are the
/// depth-`d` windows of the local stable set (identity at coordinates >= 0).
pub fn local_stable_words(m: &GroupShiftModel, d: usize) -> Result<Vec<Word>> {
    if d == 0 {
        return Err(ShiftError::BadLength { min: 1, got: 0 }.into());
    }
    let free = d / 2;
    let e = m.identity();
    Ok(backward_into(m.shift(), e, free)
        .into_iter()
        .map(|mut left| {
            left.extend(std::iter::repeat_n(e, d - free));
            Word(left)
        })
        .collect())
}

/// Words of length `d` whose first `⌊d/2⌋ + 1` symbols are the identity:
/// the depth-`d` windows of the local unstable set, same coordinates as
/// [`local_stable_words`].
pub fn local_unstable_words(m: &GroupShiftModel, d: usize) -> Result<Vec<Word>> {
    if d == 0 {
        return Err(ShiftError::BadLength { min: 1, got: 0 }.into());
    }
    let fixed = d / 2 + 1;
    let e = m.identity();
    let tails = forward_from(m.shift(), e, d - fixed.min(d));
    Ok(tails
        .into_iter()
        .map(|tail| {
            let mut w = vec![e; fixed.min(d)];
            w.extend(tail);
            Word(w)
        })
        .collect())
}

/// All `len`-symbol continuations after `start`, lexicographically.
fn forward_from(x: &VertexShift, start: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                let last = *w.last().unwrap_or(&start);
                x.successors(last).iter().map(move |&b| {
                    let mut v = w.clone();
                    v.push(b);
                    v
                })
            })
            .collect();
    }
    out
}

/// All `len`-symbol words `w` with `w · end` a word, lexicographically.
fn backward_into(x: &VertexShift, end: usize, len: usize) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        acc = acc
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                let first = *w.first().unwrap_or(&end);
                x.predecessors(first).iter().map(move |&b| {
                    let mut v = Vec::with_capacity(w.len() + 1);
                    v.push(b);
                    v.extend_from_slice(&w);
                    v
                })
            })
            .collect();
    }
    acc.sort_unstable();
    acc
}

/// `[w1, w2]`: agrees with `w1` on coordinates >= 0 and with `w2` on
/// coordinates <= 0. Both words have length `2d + 1`.
pub fn bracket(m: &GroupShiftModel, w1: &[usize], w2: &[usize], d: usize) -> Result<Vec<usize>> {
    bracket_in(m.shift(), w1, w2, d)
}

/// [`bracket`] on any vertex shift.
pub fn bracket_in(x: &VertexShift, w1: &[usize], w2: &[usize], d: usize) -> Result<Vec<usize>> {
    let len = 2 * d + 1;
    for w in [w1, w2] {
        if w.len() != len {
            return Err(GroupShiftError::BadLength {
                expected: len,
                got: w.len(),
            });
        }
    }
    if w1[d] != w2[d] {
        return Err(GroupShiftError::NotSameCoset);
    }
    let mut out = w2[..d].to_vec();
    out.extend_from_slice(&w1[d..]);
    if !x.is_word(w1) || !x.is_word(w2) || !x.is_word(&out) {
        return Err(GroupShiftError::SpliceNotAWord(out));
    }
    Ok(out)
}

/// Outcome of one checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    /// Witness on failure, count summary on success.
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub checks: Vec<Check>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    fn push(&mut self, name: &str, holds: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            holds,
            detail,
        });
    }
}

/// Local product structure at depth `d` on the model's shift.
pub fn check_product_structure(m: &GroupShiftModel, d: usize) -> StructureReport {
    check_product_structure_in(m.shift(), m.group(), d)
}

/// Checks that every identity-centered window of length `2d + 1` is the
/// symbolwise product of a local-unstable window (identity at coordinates
/// <= 0) and a local-stable window (identity at coordinates >= 0), in both
/// orders.
///
/// In a 1-step shift the identity-centered windows are exactly `l · e · r`
/// with `l · e` and `e · r` words, so it suffices to check the two halves:
/// the factors are then `l · e^(d+1)` and `e^(d+1) · r`.
pub fn check_product_structure_in(x: &VertexShift, g: &FiniteGroup, d: usize) -> StructureReport {
    let mut report = StructureReport::default();
    let e = g.identity();
    let lefts = backward_into(x, e, d);
    let rights = forward_from(x, e, d);
    let ident = vec![e; d + 1];
    let stable_bad = lefts.iter().find(|l| !x.is_word(&[&l[..], &ident].concat()));
    report.push(
        "stable factors are words",
        stable_bad.is_none(),
        match stable_bad {
            Some(l) => format!("{} followed by identities is not a word", x.render(l)),
            None => format!("{} left halves", lefts.len()),
        },
    );
    let unstable_bad = rights.iter().find(|r| !x.is_word(&[&ident, &r[..]].concat()));
    report.push(
        "unstable factors are words",
        unstable_bad.is_none(),
        match unstable_bad {
            Some(r) => format!("identities followed by {} is not a word", x.render(r)),
            None => format!("{} right halves", rights.len()),
        },
    );
    // products in both orders reproduce the window
    let mut both_orders = true;
    'outer: for l in lefts.iter().take(64) {
        for r in rights.iter().take(64) {
            let s = [&l[..], &ident].concat();
            let u = [&ident, &r[..]].concat();
            let w = [&l[..], &[e], &r[..]].concat();
            let us: Vec<usize> = u.iter().zip(&s).map(|(&a, &b)| g.mul(a, b)).collect();
            let su: Vec<usize> = s.iter().zip(&u).map(|(&a, &b)| g.mul(a, b)).collect();
            if us != w || su != w {
                both_orders = false;
                break 'outer;
            }
        }
    }
    report.push("factorization in both orders", both_orders, String::new());
    report
}

/// Symbol- and window-level checks of `f(H) = T(H)·H = H·T(H)`, its
/// predecessor analog, and `f(e)·p(e) = p(e)·f(e)`.
pub fn check_follower_factorization(m: &GroupShiftModel, depth: usize) -> StructureReport {
    let mut report = StructureReport::default();
    let g = m.group();
    let x = m.shift();
    let e = m.identity();
    let f = m.follower_e().members();
    let p = m.predecessor_e().members();

    // Symbol level on coordinates (-1, 0): T(H) = {y_{-1} = e}, H = {x_0 = e}.
    let th: Vec<[usize; 2]> = f.iter().map(|&b| [e, b]).collect();
    let hh: Vec<[usize; 2]> = p.iter().map(|&a| [a, e]).collect();
    let coord0 = |us: &[[usize; 2]], vs: &[[usize; 2]]| -> Vec<usize> {
        let mut s: Vec<usize> = us
            .iter()
            .flat_map(|u| vs.iter().map(move |v| g.mul(u[1], v[1])))
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let ok = coord0(&th, &hh) == f && coord0(&hh, &th) == f;
    report.push("f(e) = T(H)H = HT(H) at coordinate 0", ok, set_detail(g, f));

    // Window level on coordinates -d..=d.
    let d = depth.max(1);
    let len = 2 * d + 1;
    let windows = match crate::shift::words(x, len) {
        Ok(w) => w,
        Err(err) => {
            report.push("window factorization", false, err.to_string());
            return report;
        }
    };
    let follow_windows: HashSet<Vec<usize>> = windows
        .iter()
        .filter(|w| m.follower_e().contains(w[d]))
        .map(|w| w.0.clone())
        .collect();
    let precede_windows: HashSet<Vec<usize>> = windows
        .iter()
        .filter(|w| m.predecessor_e().contains(w[d]))
        .map(|w| w.0.clone())
        .collect();
    // T(H^u) = {y_i = e, i <= -1}; H^s = {x_i = e, i >= 0}
    let t_hu: Vec<&Word> = windows.iter().filter(|w| w[..d].iter().all(|&a| a == e)).collect();
    let hs: Vec<&Word> = windows.iter().filter(|w| w[d..].iter().all(|&a| a == e)).collect();
    // H^u = {x_i = e, i <= 0}; T^{-1}(H^s) = {y_i = e, i >= 1}
    let hu: Vec<&Word> = windows.iter().filter(|w| w[..=d].iter().all(|&a| a == e)).collect();
    let t_inv_hs: Vec<&Word> = windows
        .iter()
        .filter(|w| w[d + 1..].iter().all(|&a| a == e))
        .collect();
    let products = |us: &[&Word], vs: &[&Word]| -> HashSet<Vec<usize>> {
        us.iter()
            .flat_map(|u| vs.iter().map(move |v| m.product_word(u, v)))
            .collect()
    };
    let fwd = products(&t_hu, &hs) == follow_windows && products(&hs, &t_hu) == follow_windows;
    report.push(
        "f(H) = T(H^u)H^s = H^sT(H^u) on windows",
        fwd,
        format!("depth {d}, {} windows", follow_windows.len()),
    );
    let bwd = products(&hu, &t_inv_hs) == precede_windows && products(&t_inv_hs, &hu) == precede_windows;
    report.push(
        "p(H) = H^uT^-1(H^s) = T^-1(H^s)H^u on windows",
        bwd,
        format!("depth {d}, {} windows", precede_windows.len()),
    );

    let set_product = |a: &[usize], b: &[usize]| -> Vec<usize> {
        let mut s: Vec<usize> = a.iter().flat_map(|&u| b.iter().map(move |&v| g.mul(u, v))).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let fp = set_product(f, p);
    let pf = set_product(p, f);
    report.push("f(e)p(e) = p(e)f(e)", fp == pf, set_detail(g, &fp));
    report
}

fn set_detail(g: &FiniteGroup, set: &[usize]) -> String {
    let names: Vec<&str> = set.iter().map(|&a| g.name(a)).collect();
    format!("{{{}}}", names.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::subgroup_generated;
    use crate::shift::{determinism, path_count, words};

    fn sigma_a() -> GroupShiftModel {
        let a = FiniteGroup::abelian(&[4, 2]).unwrap();
        // b.1 = a.0 + a.1 mod 2, with (u, v) at index 2u + v
        let edges: Vec<(usize, usize)> = (0..8)
            .flat_map(|x| (0..8).map(move |y| (x, y)))
            .filter(|&(x, y)| y % 2 == (x / 2 + x % 2) % 2)
            .collect();
        validate_group_shift(a, edges).unwrap()
    }

    fn names(g: &FiniteGroup, s: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|&a| g.name(a).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn sigma_a_structure() {
        let m = sigma_a();
        let g = m.group();
        assert_eq!(m.shift().edge_count(), 32);
        assert_eq!(names(g, m.follower_e().members()), ["(0,0)", "(1,0)", "(2,0)", "(3,0)"]);
        assert_eq!(names(g, m.predecessor_e().members()), ["(0,0)", "(1,1)", "(2,0)", "(3,1)"]);
        assert_eq!(names(g, m.k().members()), ["(0,0)", "(2,0)"]);
    }

    #[test]
    fn full_shift_is_valid() {
        let m = GroupShiftModel::full(FiniteGroup::symmetric(3).unwrap());
        assert_eq!(m.follower_e().order(), 6);
        assert_eq!(m.predecessor_e().order(), 6);
    }

    #[test]
    fn validation_errors() {
        let a = FiniteGroup::cyclic(4).unwrap();
        // (0,0) and (1,1) generate the diagonal; dropping (2,2) breaks closure
        let err = validate_group_shift(a.clone(), [(0, 0), (1, 1), (3, 3)]).unwrap_err();
        assert!(matches!(err, GroupShiftError::NotProductClosed { .. }));
        assert_eq!(
            validate_group_shift(a.clone(), [(1, 1), (2, 2), (3, 3)]).unwrap_err(),
            GroupShiftError::IdentityLoopMissing
        );
        // {(0,0),(2,2)} is a subgroup but 1 and 3 never occur
        assert!(matches!(
            validate_group_shift(a, [(0, 0), (2, 2)]).unwrap_err(),
            GroupShiftError::NotSurjective { .. }
        ));
    }

    #[test]
    fn closure_generates_sigma_a() {
        let m = sigma_a();
        let a = m.group().clone();
        let seeds: Vec<(usize, usize)> = m.edges().into_iter().step_by(5).collect();
        let closed = edge_closure(&a, &seeds);
        assert!(closed.iter().all(|&(x, y)| m.shift().has_edge(x, y)));
        assert_eq!(edge_closure(&a, &m.edges()), m.edges());
    }

    #[test]
    fn path_counts_use_constant_follower_size() {
        let m = sigma_a();
        for n in 1..=10u32 {
            for s in 0..8 {
                assert_eq!(
                    path_count(m.shift(), n as usize, Some(s)),
                    num_bigint::BigUint::from(4u32.pow(n - 1))
                );
            }
        }
    }

    #[test]
    fn words_are_closed_under_products() {
        let m = sigma_a();
        for n in 1..=4 {
            let ws = words(m.shift(), n).unwrap();
            for u in ws.iter().step_by(7) {
                for v in &ws {
                    assert!(m.shift().is_word(&m.product_word(u, v)));
                }
            }
        }
    }

    fn z9_times_two() -> (FiniteGroup, GroupAutomorphism) {
        let g = FiniteGroup::cyclic(9).unwrap();
        let t = GroupAutomorphism::scale_abelian(&g, &[9], 2).unwrap();
        (g, t)
    }

    #[test]
    fn coded_z9_orbits() {
        let (g, t) = z9_times_two();
        let c = code_finite_system(&g, &t, &Subgroup::trivial(&g)).unwrap();
        let d = determinism(c.shift());
        assert!(d.is_permutation());
        assert_eq!(d.cycle_lengths(), Some(vec![1, 2, 6]));
        assert_eq!(c.memory(), 1);
        assert_eq!(c.orbit_lengths(), vec![1, 2, 6]);
    }

    #[test]
    fn coded_with_nontrivial_subgroup() {
        // H = {0,3,6} in Z/9 under mult by 2: T^{-1}H = H, so no separation
        let (g, t) = z9_times_two();
        let h = subgroup_generated(&g, &[3]);
        let err = code_finite_system(&g, &t, &h).unwrap_err();
        assert_eq!(
            err,
            GroupShiftError::NotSeparating {
                a: "0".into(),
                b: "3".into()
            }
        );
        // Z/2 x Z/2 with the coordinate swap, H the first factor: separating in 2 steps
        let k = FiniteGroup::abelian(&[2, 2]).unwrap();
        let swap = GroupAutomorphism::from_fn(&k, |i| (i % 2) * 2 + i / 2).unwrap();
        let h = Subgroup::from_members(&k, [0, 2]).unwrap();
        let c = code_finite_system(&k, &swap, &h).unwrap();
        assert_eq!(c.refinement_orders(), &[2, 1]);
        assert_eq!(c.memory(), 2);
        assert_eq!(c.shift().len(), 2);
        // (1,0) and (0,1) swap, itinerary alternates between the two cosets
        assert_eq!(c.itinerary(2).period, 2);
        assert_eq!(c.itinerary(0).period, 1);
        let pm = c.point_model();
        assert_eq!(determinism(pm.shift()).cycle_lengths(), Some(vec![1, 1, 2]));
    }

    #[test]
    fn coded_trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let t = GroupAutomorphism::identity(&g);
        let c = code_finite_system(&g, &t, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(c.shift().len(), 1);
        assert!(c.shift().has_edge(0, 0));
    }

    #[test]
    fn stable_and_unstable_windows() {
        let full = GroupShiftModel::full(FiniteGroup::cyclic(3).unwrap());
        assert_eq!(local_stable_words(&full, 4).unwrap().len(), 9);
        assert_eq!(local_unstable_words(&full, 4).unwrap().len(), 3);
        let m = sigma_a();
        let ws = local_stable_words(&m, 2).unwrap();
        assert_eq!(ws.len(), 4);
        assert!(ws.iter().all(|w| m.predecessor_e().contains(w[0]) && w[1] == 0));
        let triv = GroupShiftModel::full(FiniteGroup::cyclic(1).unwrap());
        assert_eq!(local_stable_words(&triv, 3).unwrap(), vec![Word(vec![0, 0, 0])]);
    }

    #[test]
    fn bracket_splices() {
        let m = sigma_a();
        let d = 1;
        let ws = words(m.shift(), 3).unwrap();
        let mut tried = 0;
        for w1 in &ws {
            assert_eq!(bracket(&m, w1, w1, d).unwrap(), w1.0);
            for w2 in ws.iter().filter(|w2| w2[1] == w1[1]) {
                let b = bracket(&m, w1, w2, d).unwrap();
                assert_eq!((b[0], b[1], b[2]), (w2[0], w1[1], w1[2]));
                tried += 1;
            }
        }
        assert_eq!(tried, 8 * 16 * 16);
        let other = ws.iter().find(|w| w[1] != ws[0][1]).unwrap();
        assert_eq!(bracket(&m, &ws[0], other, d), Err(GroupShiftError::NotSameCoset));
        assert!(matches!(
            bracket(&m, &ws[0], &ws[0][..2], d),
            Err(GroupShiftError::BadLength { .. })
        ));
    }

    #[test]
    fn product_structure_holds_and_fails_when_loop_is_removed() {
        for d in 1..=4 {
            assert!(check_product_structure(&sigma_a(), d).passed());
        }
        let full = GroupShiftModel::full(FiniteGroup::cyclic(2).unwrap());
        assert!(check_product_structure(&full, 3).passed());
        // full 2-shift minus the identity loop: not a group shift
        let g = FiniteGroup::cyclic(2).unwrap();
        let broken = VertexShift::new(g.names().to_vec(), [(0, 1), (1, 0), (1, 1)]).unwrap();
        let report = check_product_structure_in(&broken, &g, 2);
        assert!(!report.passed());
        assert!(report.checks.iter().any(|c| !c.holds && c.detail.contains("not a word")));
    }

    #[test]
    fn follower_factorization() {
        let m = sigma_a();
        let report = check_follower_factorization(&m, 2);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checks[0].detail, "{(0,0), (1,0), (2,0), (3,0)}");
        let full = GroupShiftModel::full(FiniteGroup::symmetric(3).unwrap());
        assert!(check_follower_factorization(&full, 1).passed());
    }
}
