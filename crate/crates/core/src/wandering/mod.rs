//! Countable-state transition graphs described by finitely many affine
//! edge rules, their finite truncations, and the analyses built on them:
//! total-wandering certificates, the transitive / permutative / wandering
//! classification, and forward/backward growth entropy.

pub(crate) mod affine;
mod builders;
mod classify;
mod matrix;
mod rank;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use affine::{AffineCoord, AffineForm, Interval};
pub use builders::{
    cycle_plus_q3_certificate, cycle_plus_q3_graph, q3_certificate, q3_graph, q3xq3_certificate, q3xq3_graph, z2_system,
};
pub use classify::{classify_blocks, dual_entropy, quotient_is_wandering, radius_stable, Block, Classification, DualEntropy};
pub use matrix::{matrix_no_periodics, MatrixSystem, MatrixVerdict};
pub use rank::{totally_wandering, Direction, RankCertificate, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WanderingError {
    #[error("truncation is empty")]
    EmptyTruncation,
    #[error("a cycle touches the truncation boundary at {0}; increase the radius")]
    RadiusTooSmall(String),
    #[error("bad certificate: {0}")]
    BadCertificate(String),
    #[error("bad rule `{rule}`: {reason}")]
    BadRule { rule: String, reason: String },
    #[error("unknown state class `{0}`")]
    UnknownClass(String),
    #[error("state {0} is outside its class domain")]
    OutsideDomain(String),
    #[error("declared fixed state {0} has no self-loop")]
    NotFixed(String),
    #[error("expansion exceeds {0} states")]
    TooLarge(usize),
    #[error("matrix: {0}")]
    BadMatrix(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = WanderingError> = std::result::Result<T, E>;

/// A class of states `Name(i_1, ..., i_k)` with a box domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateClass {
    pub name: String,
    /// Index variable names, used by guards and rank expressions.
    pub vars: Vec<String>,
    pub domain: Vec<Interval>,
}

impl StateClass {
    pub fn dims(&self) -> usize {
        self.vars.len()
    }

    pub fn contains(&self, index: &[i64]) -> bool {
        index.len() == self.dims() && self.domain.iter().zip(index).all(|(b, &v)| b.contains(v))
    }
}

/// A concrete state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub class: usize,
    pub index: Vec<i64>,
}

impl State {
    pub fn new(class: usize, index: Vec<i64>) -> Self {
        Self { class, index }
    }

    /// L∞ norm of the index.
    pub fn norm(&self) -> u64 {
        self.index.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }
}

/// Edges `Source(S(p)) -> Target(T(p))` for every integer parameter vector
/// `p` in the guard box. Each parameter appears in both index maps, so a
/// state has at most one successor (and one predecessor) per rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRule {
    pub source: usize,
    pub target: usize,
    pub params: Vec<String>,
    pub source_index: Vec<AffineCoord>,
    pub target_index: Vec<AffineCoord>,
    pub guard: Vec<Interval>,
}

/// A countable-state graph given by state classes and affine edge rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedGraph {
    pub name: String,
    classes: Vec<StateClass>,
    rules: Vec<EdgeRule>,
    base: State,
    fixed: Vec<State>,
}

impl GeneratedGraph {
    /// Validates rule shapes, domains, and the declared fixed states.
    pub fn new(
        name: impl Into<String>,
        classes: Vec<StateClass>,
        rules: Vec<EdgeRule>,
        base: State,
        mut fixed: Vec<State>,
    ) -> Result<Self> {
        fixed.sort();
        fixed.dedup();
        let g = Self {
            name: name.into(),
            classes,
            rules,
            base,
            fixed,
        };
        for (i, c) in g.classes.iter().enumerate() {
            if c.domain.len() != c.vars.len() {
                return Err(WanderingError::Parse(format!("class {} domain has wrong arity", c.name)));
            }
            if g.classes[..i].iter().any(|d| d.name == c.name) {
                return Err(WanderingError::Parse(format!("duplicate class {}", c.name)));
            }
        }
        for r in &g.rules {
            g.check_rule(r)?;
        }
        for s in std::iter::once(&g.base).chain(&g.fixed) {
            if s.class >= g.classes.len() || !g.classes[s.class].contains(&s.index) {
                return Err(WanderingError::OutsideDomain(g.display(s)));
            }
        }
        for s in &g.fixed {
            if !g.successors(s).contains(s) {
                return Err(WanderingError::NotFixed(g.display(s)));
            }
        }
        Ok(g)
    }

    fn check_rule(&self, r: &EdgeRule) -> Result<()> {
        let bad = |reason: &str| WanderingError::BadRule {
            rule: self.render_rule(r),
            reason: reason.to_string(),
        };
        if r.source >= self.classes.len() || r.target >= self.classes.len() {
            return Err(bad("unknown class"));
        }
        if r.source_index.len() != self.classes[r.source].dims()
            || r.target_index.len() != self.classes[r.target].dims()
        {
            return Err(bad("index arity does not match the class"));
        }
        if r.guard.len() != r.params.len() {
            return Err(bad("guard arity does not match the parameters"));
        }
        for j in 0..r.params.len() {
            let uses = |coords: &[AffineCoord]| coords.iter().any(|c| c.param == Some(j));
            if !uses(&r.source_index) || !uses(&r.target_index) {
                return Err(bad(&format!(
                    "parameter {} must appear on both sides",
                    r.params[j]
                )));
            }
        }
        if r.source_index
            .iter()
            .chain(&r.target_index)
            .any(|c| c.param.is_some() && c.coef == 0)
        {
            return Err(bad("zero coefficient"));
        }
        Ok(())
    }

    pub fn classes(&self) -> &[StateClass] {
        &self.classes
    }

    pub fn rules(&self) -> &[EdgeRule] {
        &self.rules
    }

    pub fn base(&self) -> &State {
        &self.base
    }

    pub fn fixed(&self) -> &[State] {
        &self.fixed
    }

    pub fn class_index(&self, name: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| WanderingError::UnknownClass(name.to_string()))
    }

    pub fn contains(&self, s: &State) -> bool {
        s.class < self.classes.len() && self.classes[s.class].contains(&s.index)
    }

    /// `Name(i, j)`.
    pub fn display(&self, s: &State) -> String {
        let idx: Vec<String> = s.index.iter().map(|v| v.to_string()).collect();
        format!("{}({})", self.classes[s.class].name, idx.join(","))
    }

    /// Canonical text of a rule: `Src(..) -> Dst(..) when ...`.
    pub fn render_rule(&self, r: &EdgeRule) -> String {
        let side = |class: usize, coords: &[AffineCoord]| {
            let name = self.classes.get(class).map(|c| c.name.as_str()).unwrap_or("?");
            let parts: Vec<String> = coords.iter().map(|c| c.render(&r.params)).collect();
            format!("{name}({})", parts.join(", "))
        };
        let mut out = format!(
            "{} -> {}",
            side(r.source, &r.source_index),
            side(r.target, &r.target_index)
        );
        let conds = affine::render_box(&r.params, &r.guard);
        if !conds.is_empty() {
            out.push_str(" when ");
            out.push_str(&conds);
        }
        out
    }

    /// Canonical text of a class declaration: `Name(vars) when ...`.
    pub fn render_class(&self, c: &StateClass) -> String {
        let mut out = format!("{}({})", c.name, c.vars.join(", "));
        let conds = affine::render_box(&c.vars, &c.domain);
        if !conds.is_empty() {
            out.push_str(" when ");
            out.push_str(&conds);
        }
        out
    }

    fn solve(coords: &[AffineCoord], index: &[i64], nparams: usize) -> Option<Vec<i64>> {
        let mut p: Vec<Option<i64>> = vec![None; nparams];
        for (c, &v) in coords.iter().zip(index) {
            match c.param {
                None => {
                    if c.offset != v {
                        return None;
                    }
                }
                Some(j) => {
                    let num = v.checked_sub(c.offset)?;
                    if num % c.coef != 0 {
                        return None;
                    }
                    let val = num / c.coef;
                    match p[j] {
                        Some(prev) if prev != val => return None,
                        _ => p[j] = Some(val),
                    }
                }
            }
        }
        p.into_iter().collect()
    }

    fn eval(coords: &[AffineCoord], p: &[i64]) -> Vec<i64> {
        coords.iter().map(|c| c.eval(p)).collect()
    }

    /// Successors of `s`, sorted and deduplicated.
    pub fn successors(&self, s: &State) -> Vec<State> {
        self.neighbours(s, true)
    }

    /// Predecessors of `s`, sorted and deduplicated.
    pub fn predecessors(&self, s: &State) -> Vec<State> {
        self.neighbours(s, false)
    }

    fn neighbours(&self, s: &State, forward: bool) -> Vec<State> {
        let mut out = Vec::new();
        for r in &self.rules {
            let (from_class, from, to_class, to) = if forward {
                (r.source, &r.source_index, r.target, &r.target_index)
            } else {
                (r.target, &r.target_index, r.source, &r.source_index)
            };
            if from_class != s.class {
                continue;
            }
            let Some(p) = Self::solve(from, &s.index, r.params.len()) else {
                continue;
            };
            if !r.guard.iter().zip(&p).all(|(b, &v)| b.contains(v)) {
                continue;
            }
            let t = State::new(to_class, Self::eval(to, &p));
            if self.contains(&t) {
                out.push(t);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Finite window: every state of norm `<= radius` plus the base and
    /// fixed states, with all rule edges among them.
    pub fn truncate(&self, radius: u64) -> Result<Truncation> {
        let mut states: BTreeSet<State> = BTreeSet::new();
        let r = radius.min(i64::MAX as u64) as i64;
        for (ci, c) in self.classes.iter().enumerate() {
            let ranges: Vec<(i64, i64)> = c
                .domain
                .iter()
                .map(|b| (b.lo.unwrap_or(-r).max(-r), b.hi.unwrap_or(r).min(r)))
                .collect();
            if ranges.iter().any(|&(lo, hi)| lo > hi) {
                continue;
            }
            let mut idx: Vec<i64> = ranges.iter().map(|&(lo, _)| lo).collect();
            loop {
                states.insert(State::new(ci, idx.clone()));
                let mut k = idx.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    if idx[k] < ranges[k].1 {
                        idx[k] += 1;
                        for (j, v) in idx.iter_mut().enumerate().skip(k + 1) {
                            *v = ranges[j].0;
                        }
                        k = usize::MAX;
                        break;
                    }
                }
                if k != usize::MAX {
                    break;
                }
            }
        }
        states.insert(self.base.clone());
        states.extend(self.fixed.iter().cloned());
        if states.is_empty() {
            return Err(WanderingError::EmptyTruncation);
        }
        Ok(Truncation::from_states(self, states.into_iter().collect(), radius))
    }
}

/// A finite induced subgraph of a [`GeneratedGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub radius: u64,
    pub states: Vec<State>,
    pub names: Vec<String>,
    pub succ: Vec<Vec<usize>>,
    pub pred: Vec<Vec<usize>>,
    /// True when some rule edge joins the state to a state outside.
    pub boundary: Vec<bool>,
    index: HashMap<State, usize>,
}

impl Truncation {
    fn from_states(g: &GeneratedGraph, states: Vec<State>, radius: u64) -> Self {
        let index: HashMap<State, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let n = states.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        let mut boundary = vec![false; n];
        for (i, s) in states.iter().enumerate() {
            for t in g.successors(s) {
                match index.get(&t) {
                    Some(&j) => {
                        succ[i].push(j);
                        pred[j].push(i);
                    }
                    None => boundary[i] = true,
                }
            }
            if g.predecessors(s).iter().any(|t| !index.contains_key(t)) {
                boundary[i] = true;
            }
        }
        for l in succ.iter_mut().chain(pred.iter_mut()) {
            l.sort_unstable();
        }
        let names = states.iter().map(|s| g.display(s)).collect();
        Self {
            radius,
            states,
            names,
            succ,
            pred,
            boundary,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, s: &State) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
    }

    pub(crate) fn petgraph(&self) -> petgraph::graph::DiGraph<(), ()> {
        let mut g = petgraph::graph::DiGraph::with_capacity(self.len(), self.edge_count());
        for _ in 0..self.len() {
            g.add_node(());
        }
        for (a, b) in self.edges() {
            g.add_edge(petgraph::graph::NodeIndex::new(a), petgraph::graph::NodeIndex::new(b), ());
        }
        g
    }

    /// Strongly connected components that carry a cycle, each sorted.
    pub fn cyclic_components(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = petgraph::algo::tarjan_scc(&self.petgraph())
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                v.sort_unstable();
                v
            })
            .filter(|c| c.len() > 1 || self.succ[c[0]].contains(&c[0]))
            .collect();
        out.sort();
        out
    }

    /// A cycle inside the given component, as a state list.
    pub fn cycle_in(&self, component: &[usize]) -> Vec<usize> {
        let inside: BTreeSet<usize> = component.iter().copied().collect();
        let start = component[0];
        if self.succ[start].contains(&start) {
            return vec![start];
        }
        // breadth-first search back to the start within the component
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.succ[u] {
                if v == start {
                    let mut cycle = vec![u];
                    let mut cur = u;
                    while cur != start {
                        cur = parent[&cur];
                        cycle.push(cur);
                    }
                    cycle.reverse();
                    return cycle;
                }
                if inside.contains(&v) && !parent.contains_key(&v) {
                    parent.insert(v, u);
                    queue.push_back(v);
                }
            }
        }
        unreachable!("a cyclic component contains a cycle through each state")
    }

    /// States reachable from `from` (forward) or co-reachable (backward).
    pub fn reach(&self, from: &[usize], forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = from.to_vec();
        for &s in from {
            seen[s] = true;
        }
        while let Some(u) = stack.pop() {
            let next = if forward { &self.succ[u] } else { &self.pred[u] };
            for &v in next {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} states, {} edges, radius {}",
            self.len(),
            self.edge_count(),
            self.radius
        )
    }
}
