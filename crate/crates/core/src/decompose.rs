//! Reduction of a group shift to a product of full shifts and a permutation.
//!
//! The state is a vertex shift on the left cosets of a subgroup `h` of the
//! fixed alphabet group `A`, with an edge `gh -> g'h` whenever some edge of
//! the group shift joins the two cosets. Each step enlarges `h`:
//!
//! * splitting (`|k| > |h|`, `k = f ∩ p`): `h := k` and a full shift on
//!   `k/h` is emitted as a product factor;
//! * amalgamation (`|k| = |h|`): `h := f` (or `h := p`), undone by a 2-block
//!   map that reads the next (or previous) coset.
//!
//! When `|f| = |p| = |h|` the remaining coset shift is a permutation.
//!
//! Symbols of an intermediate presentation encode the emitted full-shift
//! coordinates and the current coset as `factor_index * cosets + coset`,
//! where `factor_index` is the mixed-radix number of the emitted coordinates
//! (earliest factor most significant).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::group::{cosets, intersect, CosetPartition, FiniteGroup, GroupError, Side, Subgroup};
use crate::group_shift::GroupShiftModel;
use crate::shift::{
    check_inverse_pair, determinism, exact_ratio, path_count, path_counts, words, BlockMap,
    ShiftError, SlidingCode, VertexShift,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("{0} is not a subgroup")]
    NotASubgroup(String),
    #[error("splitting needs |k| > |h|")]
    PreconditionK1,
    #[error("amalgamation needs |k| = |h|")]
    PreconditionK2,
    #[error("nothing to amalgamate on the {0} side")]
    NothingToAmalgamate(&'static str),
    #[error("split check failed at length {n}: {old} != {new} * {factor}^{n}")]
    SplitVerificationFailed {
        n: usize,
        old: BigUint,
        new: BigUint,
        factor: usize,
    },
    #[error("two symbols in coset `{0}` share a {1} set")]
    AmbiguousAmalgamation(String, &'static str),
    #[error("amalgamation inverse fails on word {0:?}")]
    AmalgamationVerificationFailed(Vec<usize>),
    #[error("no termination within {0} steps")]
    IterationLimit(usize),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
}

pub type Result<T, E = DecomposeError> = std::result::Result<T, E>;

/// Which side an amalgamation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Amalgamation {
    Follower,
    Predecessor,
}

impl Amalgamation {
    pub fn as_str(self) -> &'static str {
        match self {
            Amalgamation::Follower => "follower",
            Amalgamation::Predecessor => "predecessor",
        }
    }
}

/// One applied reduction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Split { factor: usize },
    Amalgamate { side: Amalgamation },
}

/// Statistics of one step, for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub step: Step,
    /// `|h|` before and after.
    pub h_order: (usize, usize),
    /// Coset alphabet size before and after.
    pub cosets: (usize, usize),
    /// Follower and predecessor cardinalities (in cosets) before the step.
    pub follower_card: usize,
    pub predecessor_card: usize,
}

/// `f`, `p` and `k = f ∩ p` as subgroups of the alphabet group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fpk {
    pub f: Subgroup,
    pub p: Subgroup,
    pub k: Subgroup,
}

/// A snapshot of the reduction.
#[derive(Clone, Debug)]
pub struct ReductionState {
    ambient: FiniteGroup,
    /// Edge membership of the group shift, indexed `a * |A| + b`.
    edges: Vec<bool>,
    h: Subgroup,
    partition: CosetPartition,
    shift: VertexShift,
    factors: Vec<usize>,
    history: Vec<StepRecord>,
    forward: SlidingCode,
    inverse: SlidingCode,
}

impl ReductionState {
    /// The starting state with `h` trivial.
    pub fn initial(model: &GroupShiftModel) -> Result<Self> {
        Self::new(model, Subgroup::trivial(model.group()))
    }

    /// The starting state on the cosets of `h0`.
    pub fn new(model: &GroupShiftModel, h0: Subgroup) -> Result<Self> {
        let a = model.group().clone();
        let n = a.order();
        let mut edges = vec![false; n * n];
        for (x, y) in model.shift().edges() {
            edges[x * n + y] = true;
        }
        let partition = cosets(&a, &h0, Side::Left);
        let shift = coset_shift(&a, &edges, &h0, &partition)?;
        let relabel: Vec<usize> = (0..n).map(|x| partition.block_of(x)).collect();
        let (forward, inverse) = if h0.is_trivial() {
            let back: Vec<usize> = (0..n).map(|b| partition.representative(b)).collect();
            if relabel.iter().enumerate().all(|(i, &b)| i == b) {
                (SlidingCode::identity(), SlidingCode::identity())
            } else {
                (
                    SlidingCode::single(BlockMap::one_block(&relabel)),
                    SlidingCode::single(BlockMap::one_block(&back)),
                )
            }
        } else {
            // with a non-trivial h0 the coset shift itself is the input
            (SlidingCode::identity(), SlidingCode::identity())
        };
        Ok(Self {
            ambient: a,
            edges,
            h: h0,
            partition,
            shift,
            factors: Vec::new(),
            history: Vec::new(),
            forward,
            inverse,
        })
    }

    pub fn ambient(&self) -> &FiniteGroup {
        &self.ambient
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn partition(&self) -> &CosetPartition {
        &self.partition
    }

    /// The vertex shift on the cosets of `h`.
    pub fn shift(&self) -> &VertexShift {
        &self.shift
    }

    /// Sizes of the full shifts emitted so far.
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn factor_product(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn history(&self) -> &[StepRecord] {
        &self.history
    }

    /// Code from the starting shift to the current presentation.
    pub fn forward(&self) -> &SlidingCode {
        &self.forward
    }

    /// Code from the current presentation back to the starting shift.
    pub fn inverse(&self) -> &SlidingCode {
        &self.inverse
    }

    /// Number of symbols of the current presentation.
    pub fn presentation_len(&self) -> usize {
        self.factor_product() * self.shift.len()
    }

    fn with_subgroup(&self, h: Subgroup) -> Result<(CosetPartition, VertexShift)> {
        let partition = cosets(&self.ambient, &h, Side::Left);
        let shift = coset_shift(&self.ambient, &self.edges, &h, &partition)?;
        Ok((partition, shift))
    }
}

fn coset_shift(
    a: &FiniteGroup,
    edges: &[bool],
    h: &Subgroup,
    partition: &CosetPartition,
) -> Result<VertexShift> {
    let n = a.order();
    let mut list = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if edges[x * n + y] {
                list.push((partition.block_of(x), partition.block_of(y)));
            }
        }
    }
    list.sort_unstable();
    list.dedup();
    let names = (0..partition.len())
        .map(|c| {
            let rep = a.name(partition.representative(c));
            if h.is_trivial() {
                rep.to_string()
            } else {
                format!("[{rep}]")
            }
        })
        .collect();
    let (shift, kept) = VertexShift::with_kept(names, list)?;
    if kept.len() != partition.len() {
        return Err(ShiftError::Empty.into());
    }
    Ok(shift)
}

/// `f` and `p` are the unions of the cosets following and preceding the
/// identity coset; `k = f ∩ p`.
pub fn compute_fpk(s: &ReductionState) -> Result<Fpk> {
    let id_block = s.partition.block_of(s.ambient.identity());
    let union = |blocks: &[usize]| -> Vec<usize> {
        blocks
            .iter()
            .flat_map(|&b| s.partition.blocks()[b].iter().copied())
            .collect()
    };
    let as_subgroup = |members: Vec<usize>, what: &str| -> Result<Subgroup> {
        let sub = Subgroup::from_members(&s.ambient, members)
            .map_err(|e| DecomposeError::NotASubgroup(format!("{what} ({e})")))?;
        if !s.h.is_subset_of(&sub) {
            return Err(DecomposeError::NotASubgroup(format!("{what} does not contain h")));
        }
        Ok(sub)
    };
    let f = as_subgroup(union(s.shift.successors(id_block)), "follower set")?;
    let p = as_subgroup(union(s.shift.predecessors(id_block)), "predecessor set")?;
    let k = intersect(&f, &p);
    Ok(Fpk { f, p, k })
}

fn constant_degree(x: &VertexShift, forward: bool) -> Option<usize> {
    let deg = |a: usize| {
        if forward {
            x.successors(a).len()
        } else {
            x.predecessors(a).len()
        }
    };
    let d = deg(0);
    (1..x.len()).all(|a| deg(a) == d).then_some(d)
}

/// Lifts a map between coset alphabets to presentations carrying emitted
/// coordinates, which ride along unchanged at the output position.
fn lift(step: &BlockMap, factor_count: usize, old_cosets: usize, new_cosets: usize) -> BlockMap {
    let window = step.window();
    let mut rule = BTreeMap::new();
    let combos = factor_count.pow(window as u32);
    for (cw, &out) in step.rule() {
        for combo in 0..combos {
            let mut digits = vec![0usize; window];
            let mut c = combo;
            for d in digits.iter_mut().rev() {
                *d = c % factor_count;
                c /= factor_count;
            }
            let key: Vec<usize> = digits
                .iter()
                .zip(cw)
                .map(|(&fac, &coset)| fac * old_cosets + coset)
                .collect();
            rule.insert(key, digits[step.memory()] * new_cosets + out);
        }
    }
    BlockMap::new(step.memory(), step.anticipation(), rule)
}

/// Largest length `<= max_len` whose word count stays within `budget`.
fn checkable_length(x: &VertexShift, max_len: usize, budget: u64) -> usize {
    let counts = path_counts(x, max_len, None);
    let budget = BigUint::from(budget);
    counts.iter().take_while(|c| **c <= budget).count()
}

/// Word budget for the exhaustive identity checks inside each step.
pub const STEP_CHECK_BUDGET: u64 = 200_000;

/// Construction 1: split off the full shift on `k/h`.
///
/// Returns the new state, `|k/h|`, and the step's forward and inverse
/// 1-block maps on presentations.
pub fn construction1(s: &ReductionState) -> Result<(ReductionState, usize, BlockMap, BlockMap)> {
    let fpk = compute_fpk(s)?;
    if fpk.k.order() <= s.h.order() {
        return Err(DecomposeError::PreconditionK1);
    }
    let a = &s.ambient;
    let factor = fpk.k.order() / s.h.order();
    let (new_partition, new_shift) = s.with_subgroup(fpk.k.clone())?;
    // cosets of h inside k, ordered by representative
    let inner = cosets(a, &s.h, Side::Left);
    let inner_blocks: Vec<usize> = {
        let mut v: Vec<usize> = fpk.k.members().iter().map(|&x| inner.block_of(x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let inner_index: HashMap<usize, usize> =
        inner_blocks.iter().enumerate().map(|(i, &b)| (b, i)).collect();

    let old_n = s.shift.len();
    let new_n = new_shift.len();
    let old_fac = s.factor_product();
    let mut fwd_rule = BTreeMap::new();
    let mut inv_rule = BTreeMap::new();
    for c in 0..old_n {
        let g = s.partition.representative(c);
        let big = new_partition.block_of(g);
        let r = new_partition.representative(big);
        let j = inner_index[&inner.block_of(a.mul(a.inv(r), g))];
        for fac in 0..old_fac {
            let from = fac * old_n + c;
            let to = (fac * factor + j) * new_n + big;
            fwd_rule.insert(vec![from], to);
            inv_rule.insert(vec![to], from);
        }
    }
    let fwd = BlockMap::new(0, 0, fwd_rule);
    let inv = BlockMap::new(0, 0, inv_rule);

    for n in 1..=8 {
        let old = path_count(&s.shift, n, None);
        let new = path_count(&new_shift, n, None);
        if old != &new * BigUint::from(factor).pow(n as u32) {
            return Err(DecomposeError::SplitVerificationFailed { n, old, new, factor });
        }
    }
    let old_deg = constant_degree(&s.shift, true);
    let new_deg = constant_degree(&new_shift, true);
    if old_deg.is_none() || old_deg.map(|d| d / factor) != new_deg || !old_deg.unwrap().is_multiple_of(factor) {
        return Err(DecomposeError::Postcondition(format!(
            "follower cardinality {old_deg:?} does not divide to {new_deg:?} by {factor}"
        )));
    }

    let mut factors = s.factors.clone();
    factors.push(factor);
    let mut history = s.history.clone();
    history.push(StepRecord {
        step: Step::Split { factor },
        h_order: (s.h.order(), fpk.k.order()),
        cosets: (old_n, new_n),
        follower_card: s.shift.successors(0).len(),
        predecessor_card: s.shift.predecessors(0).len(),
    });
    let next = ReductionState {
        ambient: a.clone(),
        edges: s.edges.clone(),
        h: fpk.k,
        partition: new_partition,
        shift: new_shift,
        factors,
        history,
        forward: s.forward.clone().then(fwd.clone()),
        inverse: SlidingCode::single(inv.clone()).then_code(&s.inverse),
    };
    Ok((next, factor, fwd, inv))
}

/// Construction 2: amalgamate the cosets of `h` inside each coset of `f`
/// (or `p`). The inverse reads one symbol ahead (or behind).
pub fn construction2(s: &ReductionState, side: Amalgamation) -> Result<(ReductionState, BlockMap, BlockMap)> {
    let fpk = compute_fpk(s)?;
    if fpk.k.order() != s.h.order() {
        return Err(DecomposeError::PreconditionK2);
    }
    let target = match side {
        Amalgamation::Follower => fpk.f.clone(),
        Amalgamation::Predecessor => fpk.p.clone(),
    };
    if target.order() == s.h.order() {
        return Err(DecomposeError::NothingToAmalgamate(side.as_str()));
    }
    let (new_partition, new_shift) = s.with_subgroup(target.clone())?;
    let old_n = s.shift.len();
    let new_n = new_shift.len();
    let proj: Vec<usize> = (0..old_n)
        .map(|c| new_partition.block_of(s.partition.representative(c)))
        .collect();

    // Each old symbol's follower (predecessor) set lies in one new coset;
    // within a new coset these must be distinct.
    let mut lookup: HashMap<(usize, usize), usize> = HashMap::new();
    for c in 0..old_n {
        let neighbours = match side {
            Amalgamation::Follower => s.shift.successors(c),
            Amalgamation::Predecessor => s.shift.predecessors(c),
        };
        let mut targets: Vec<usize> = neighbours.iter().map(|&d| proj[d]).collect();
        targets.sort_unstable();
        targets.dedup();
        if targets.len() != 1 {
            return Err(DecomposeError::Postcondition(format!(
                "{} set of `{}` spans several cosets",
                side.as_str(),
                s.shift.name(c)
            )));
        }
        if lookup.insert((proj[c], targets[0]), c).is_some() {
            return Err(DecomposeError::AmbiguousAmalgamation(
                new_shift.name(proj[c]).to_string(),
                side.as_str(),
            ));
        }
    }
    let fwd_cosets = BlockMap::one_block(&proj);
    let mut inv_rule = BTreeMap::new();
    for (u, v) in new_shift.edges() {
        let key = match side {
            Amalgamation::Follower => (u, v),
            Amalgamation::Predecessor => (v, u),
        };
        let Some(&c) = lookup.get(&key) else {
            return Err(DecomposeError::Postcondition(format!(
                "edge {} -> {} has no preimage",
                new_shift.name(u),
                new_shift.name(v)
            )));
        };
        inv_rule.insert(vec![u, v], c);
    }
    let inv_cosets = match side {
        Amalgamation::Follower => BlockMap::new(0, 1, inv_rule),
        Amalgamation::Predecessor => BlockMap::new(1, 0, inv_rule),
    };
    // exhaustive identity check on the coset shift
    let len = checkable_length(&s.shift, 8, STEP_CHECK_BUDGET).max(2);
    let fwd_code = SlidingCode::single(fwd_cosets.clone());
    let inv_code = SlidingCode::single(inv_cosets.clone());
    for l in 2..=len {
        let ws = words(&s.shift, l)?;
        check_inverse_pair(&fwd_code, &inv_code, &ws)
            .map_err(DecomposeError::AmalgamationVerificationFailed)?;
    }
    let new_len = checkable_length(&new_shift, 8, STEP_CHECK_BUDGET).max(2);
    for l in 2..=new_len {
        let ws = words(&new_shift, l)?;
        check_inverse_pair(&inv_code, &fwd_code, &ws)
            .map_err(DecomposeError::AmalgamationVerificationFailed)?;
    }
    for forward in [true, false] {
        if constant_degree(&s.shift, forward) != constant_degree(&new_shift, forward) {
            return Err(DecomposeError::Postcondition(
                "amalgamation changed a follower or predecessor cardinality".into(),
            ));
        }
    }

    let fac = s.factor_product();
    let fwd = lift(&fwd_cosets, fac, old_n, new_n);
    let inv = lift(&inv_cosets, fac, new_n, old_n);
    let mut history = s.history.clone();
    history.push(StepRecord {
        step: Step::Amalgamate { side },
        h_order: (s.h.order(), target.order()),
        cosets: (old_n, new_n),
        follower_card: s.shift.successors(0).len(),
        predecessor_card: s.shift.predecessors(0).len(),
    });
    let next = ReductionState {
        ambient: s.ambient.clone(),
        edges: s.edges.clone(),
        h: target,
        partition: new_partition,
        shift: new_shift,
        factors: s.factors.clone(),
        history,
        forward: s.forward.clone().then(fwd.clone()),
        inverse: SlidingCode::single(inv.clone()).then_code(&s.inverse),
    };
    Ok((next, fwd, inv))
}

/// Bounds for [`decompose`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of steps; `None` means `|A|`.
    pub max_steps: Option<usize>,
}

/// The result of a completed reduction.
#[derive(Clone, Debug)]
pub struct DecompositionCertificate {
    /// Full-shift sizes in the order they were split off.
    pub emitted: Vec<usize>,
    /// The residual permutation shift on the final cosets.
    pub residual: VertexShift,
    /// Cycles of the residual, each starting at its least state.
    pub residual_cycles: Vec<Vec<usize>>,
    /// From the input shift to the product presentation.
    pub forward: SlidingCode,
    /// From the product presentation to the input shift.
    pub inverse: SlidingCode,
    pub steps: Vec<StepRecord>,
}

impl DecompositionCertificate {
    pub fn emitted_product(&self) -> usize {
        self.emitted.iter().product()
    }

    /// Sorted residual cycle lengths.
    pub fn residual_cycle_lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.residual_cycles.iter().map(Vec::len).collect();
        l.sort_unstable();
        l
    }

    /// The product of the emitted full shifts and the residual, with symbol
    /// `factor_index * |residual| + state`.
    pub fn product_shift(&self) -> VertexShift {
        let s = self.emitted_product();
        let r = self.residual.len();
        let mut names = Vec::with_capacity(s * r);
        for fac in 0..s {
            let coords = crate::group::mixed_radix(fac, &self.emitted);
            let coords: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            for st in 0..r {
                names.push(format!("({};{})", coords.join(","), self.residual.name(st)));
            }
        }
        let edges = (0..s * r).flat_map(|x| {
            let next = self.residual.successors(x % r)[0];
            (0..s).map(move |fac| (x, fac * r + next))
        });
        VertexShift::new(names, edges).expect("product of essential shifts")
    }
}

/// Runs the reduction from `h` trivial.
pub fn decompose(model: &GroupShiftModel, limits: Limits) -> Result<DecompositionCertificate> {
    decompose_from(ReductionState::initial(model)?, limits)
}

/// Runs the reduction from a given state until `|f| = |p| = |h|`.
pub fn decompose_from(start: ReductionState, limits: Limits) -> Result<DecompositionCertificate> {
    let limit = limits.max_steps.unwrap_or(start.ambient.order());
    let initial_shift = start.shift.clone();
    let initial_f = compute_fpk(&start)?.f.order() / start.h.order();
    let prior = start.factor_product();
    let mut state = start;
    let mut steps = 0;
    loop {
        let fpk = compute_fpk(&state)?;
        let h = state.h.order();
        if fpk.f.order() == h && fpk.p.order() == h {
            break;
        }
        steps += 1;
        if steps > limit {
            return Err(DecomposeError::IterationLimit(limit));
        }
        state = if fpk.k.order() > h {
            construction1(&state)?.0
        } else if fpk.f.order() > h {
            construction2(&state, Amalgamation::Follower)?.0
        } else {
            construction2(&state, Amalgamation::Predecessor)?.0
        };
    }
    let det = determinism(&state.shift);
    let Some(residual_cycles) = det.cycles.clone() else {
        return Err(DecomposeError::Postcondition("residual is not a permutation".into()));
    };
    let emitted = state.factors.clone();
    let product: usize = emitted.iter().product();
    if product != prior * initial_f {
        return Err(DecomposeError::Postcondition(format!(
            "emitted sizes multiply to {product}, expected {prior} * {initial_f}"
        )));
    }
    let counts = path_counts(&initial_shift, 6, None);
    if exact_ratio(&counts) != Some(BigUint::from(initial_f)) {
        return Err(DecomposeError::Postcondition(
            "block growth differs from the emitted sizes".into(),
        ));
    }
    Ok(DecompositionCertificate {
        emitted,
        residual: state.shift.clone(),
        residual_cycles,
        forward: state.forward.clone(),
        inverse: state.inverse.clone(),
        steps: state.history.clone(),
    })
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    /// Exact word-count checks.
    pub counts_ok: bool,
    /// `inverse ∘ forward` and `forward ∘ inverse` are identities on words.
    pub identity_ok: bool,
    /// The codes are finite-window block maps between the two shifts.
    pub structure_ok: bool,
    /// Longest word length used for the identity checks on each side.
    pub checked_lengths: (usize, usize),
    pub failures: Vec<String>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.counts_ok && self.identity_ok && self.structure_ok
    }
}

/// Word budget per length for [`verify_certificate`].
pub const VERIFY_BUDGET: u64 = 300_000;

/// Checks a certificate against its input shift.
///
/// (a) The input's word counts grow by exactly `S = ∏ emitted` per symbol,
/// and the sliding codes sandwich them against the product's counts
/// `S^n · R`: `P(n) <= O(n + w_f)` and `O(n) <= P(n + w_i)`.
/// (b) Both composites are the identity on every word of length `<= n_max`
/// (capped by a word budget).
/// (c) Every image word is a word of the target shift.
pub fn verify_certificate(original: &VertexShift, c: &DecompositionCertificate, n_max: usize) -> CertificateReport {
    let mut failures = Vec::new();
    let n_max = n_max.max(2);
    let product = c.product_shift();
    let s = BigUint::from(c.emitted_product());
    let r = BigUint::from(c.residual.len());
    let wf = c.forward.window() - 1;
    let wi = c.inverse.window() - 1;
    let orig_counts = path_counts(original, n_max + wf.max(wi) + 1, None);
    let prod_count = |n: usize| s.pow(n as u32) * &r;

    let mut counts_ok = true;
    for n in 1..=n_max {
        let o = &orig_counts[n - 1];
        if *o != &orig_counts[0] * s.pow(n as u32 - 1) {
            counts_ok = false;
            failures.push(format!("length {n}: {o} words, expected {} * {s}^{}", orig_counts[0], n - 1));
        }
        if prod_count(n) > orig_counts[n + wf - 1] || *o > prod_count(n + wi) {
            counts_ok = false;
            failures.push(format!("length {n}: counts escape the code sandwich"));
        }
    }

    let mut identity_ok = true;
    let mut structure_ok = true;
    let side = |src: &VertexShift,
                dst: &VertexShift,
                there: &SlidingCode,
                back: &SlidingCode,
                failures: &mut Vec<String>,
                identity_ok: &mut bool,
                structure_ok: &mut bool|
     -> usize {
        let len = checkable_length(src, n_max, VERIFY_BUDGET);
        for l in 1..=len {
            let Ok(ws) = words(src, l) else { break };
            if let Err(w) = check_inverse_pair(there, back, &ws) {
                *identity_ok = false;
                failures.push(format!("composite is not the identity on {}", src.render(&w)));
                return l;
            }
            if l >= there.window() {
                if let Some(w) = ws
                    .iter()
                    .find(|w| there.apply(w).map(|y| !dst.is_word(&y)).unwrap_or(true))
                {
                    *structure_ok = false;
                    failures.push(format!("image of {} is not a word", src.render(w)));
                    return l;
                }
            }
        }
        len
    };
    let left = side(original, &product, &c.forward, &c.inverse, &mut failures, &mut identity_ok, &mut structure_ok);
    let right = side(&product, original, &c.inverse, &c.forward, &mut failures, &mut identity_ok, &mut structure_ok);
    if left < 2 || right < 2 {
        identity_ok = false;
        failures.push("word budget too small for any identity check".into());
    }
    let all_total = c
        .forward
        .stages()
        .iter()
        .chain(c.inverse.stages())
        .all(|m| !m.rule().is_empty());
    if !all_total || !determinism(&c.residual).is_permutation() {
        structure_ok = false;
        failures.push("codes or residual are malformed".into());
    }
    CertificateReport {
        counts_ok,
        identity_ok,
        structure_ok,
        checked_lengths: (left, right),
        failures,
    }
}

/// Number of periodic points of least-or-not period `n` (points with
/// `σ^n x = x`), as `trace(A^n)`.
pub fn periodic_points(x: &VertexShift, n: usize) -> BigUint {
    (0..x.len())
        .map(|a| {
            let mut v = vec![BigUint::default(); x.len()];
            v[a] = BigUint::one();
            for _ in 0..n {
                let mut next = vec![BigUint::default(); x.len()];
                for (b, c) in v.iter().enumerate() {
                    for &d in x.successors(b) {
                        next[d] += c;
                    }
                }
                v = next;
            }
            v[a].clone()
        })
        .sum()
}
