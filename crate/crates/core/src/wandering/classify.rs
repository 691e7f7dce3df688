//! Splitting a truncation into the part transitive with the base state,
//! the non-wandering part, and the wandering remainder; and forward and
//! backward growth from a state.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;

use super::rank::{RankCertificate, Verdict};
use super::{GeneratedGraph, Result, State, Truncation, WanderingError};
use crate::shift::{growth_report, EntropyReport};

/// Cap on the number of live states during path-count expansion.
const EXPANSION_LIMIT: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    /// On a path starting and ending in the base state's component.
    Transitive,
    /// Between cycles, but not transitive with the base state.
    Cyclic,
    /// On no path between cycles.
    Wandering,
}

impl Block {
    pub fn letter(self) -> char {
        match self {
            Block::Transitive => 'T',
            Block::Cyclic => 'C',
            Block::Wandering => 'W',
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub truncation: Truncation,
    pub labels: Vec<Block>,
    /// The non-wandering part collapsed to one state, named `[C]`.
    pub quotient_names: Vec<String>,
    pub quotient_succ: Vec<Vec<usize>>,
    /// Index of the collapsed state, when the non-wandering part is non-empty.
    pub collapsed: Option<usize>,
}

impl Classification {
    pub fn count(&self, b: Block) -> usize {
        self.labels.iter().filter(|&&l| l == b).count()
    }

    /// Size of the non-wandering part, transitive states included.
    pub fn non_wandering(&self) -> usize {
        self.labels.len() - self.count(Block::Wandering)
    }

    pub fn states_in(&self, b: Block) -> Vec<&State> {
        self.truncation
            .states
            .iter()
            .zip(&self.labels)
            .filter(|(_, &l)| l == b)
            .map(|(s, _)| s)
            .collect()
    }

    pub fn label_of(&self, s: &State) -> Option<Block> {
        self.truncation.index_of(s).map(|i| self.labels[i])
    }

    fn non_wandering_set(&self) -> HashSet<State> {
        self.truncation
            .states
            .iter()
            .zip(&self.labels)
            .filter(|(_, &l)| l != Block::Wandering)
            .map(|(s, _)| s.clone())
            .collect()
    }
}

/// Classifies the states of the `radius` truncation.
pub fn classify_blocks(g: &GeneratedGraph, radius: u64) -> Result<Classification> {
    let t = g.truncate(radius)?;
    let comps = t.cyclic_components();
    for c in &comps {
        if let Some(&i) = c.iter().find(|&&i| t.boundary[i]) {
            return Err(WanderingError::RadiusTooSmall(t.names[i].clone()));
        }
    }
    let on_cycle: Vec<usize> = comps.iter().flatten().copied().collect();
    let from_cycles = t.reach(&on_cycle, true);
    let to_cycles = t.reach(&on_cycle, false);
    let base = t.index_of(g.base()).expect("the base state is always kept");
    let base_comp: Vec<usize> = comps
        .iter()
        .find(|c| c.contains(&base))
        .cloned()
        .unwrap_or_default();
    let from_base = t.reach(&base_comp, true);
    let to_base = t.reach(&base_comp, false);
    let labels: Vec<Block> = (0..t.len())
        .map(|i| {
            if from_base[i] && to_base[i] {
                Block::Transitive
            } else if from_cycles[i] && to_cycles[i] {
                Block::Cyclic
            } else {
                Block::Wandering
            }
        })
        .collect();
    // quotient: wandering states keep their identity
    let mut node = vec![0usize; t.len()];
    let mut quotient_names = Vec::new();
    let collapsed = labels.iter().any(|&l| l != Block::Wandering).then(|| {
        quotient_names.push("[C]".to_string());
        0
    });
    for i in 0..t.len() {
        if labels[i] == Block::Wandering {
            node[i] = quotient_names.len();
            quotient_names.push(t.names[i].clone());
        }
    }
    let mut quotient_succ = vec![Vec::new(); quotient_names.len()];
    for (a, b) in t.edges() {
        quotient_succ[node[a]].push(node[b]);
    }
    for s in quotient_succ.iter_mut() {
        s.sort_unstable();
        s.dedup();
    }
    Ok(Classification {
        truncation: t,
        labels,
        quotient_names,
        quotient_succ,
        collapsed,
    })
}

/// Whether the quotient is totally wandering: its only cycle is the
/// collapsed self-loop, and the certificate proves it beyond the window
/// with edges touching the collapsed part exempt.
pub fn quotient_is_wandering(g: &GeneratedGraph, c: &Classification, cert: &RankCertificate) -> Result<Verdict> {
    let n = c.quotient_names.len();
    let mut graph = petgraph::graph::DiGraph::<(), ()>::new();
    for _ in 0..n {
        graph.add_node(());
    }
    for (a, succ) in c.quotient_succ.iter().enumerate() {
        for &b in succ {
            graph.add_edge(petgraph::graph::NodeIndex::new(a), petgraph::graph::NodeIndex::new(b), ());
        }
    }
    for comp in petgraph::algo::tarjan_scc(&graph) {
        let first = comp[0].index();
        let cyclic = comp.len() > 1 || c.quotient_succ[first].contains(&first);
        if cyclic && !(comp.len() == 1 && Some(first) == c.collapsed) {
            let cycle = comp.iter().map(|v| c.quotient_names[v.index()].clone()).collect();
            return Ok(Verdict::Counterexample { cycle });
        }
    }
    let exempt = c.non_wandering_set();
    let excepted_edges = cert.check_rules(g, &|s| exempt.contains(s))?;
    Ok(Verdict::TotallyWandering {
        truncation_states: c.truncation.len(),
        excepted_edges,
    })
}

/// Whether the classification at `radius` and `radius + 2` agree on the
/// states strictly inside the smaller window.
pub fn radius_stable(g: &GeneratedGraph, radius: u64) -> Result<bool> {
    let small = classify_blocks(g, radius)?;
    let big = classify_blocks(g, radius + 2)?;
    Ok(small
        .truncation
        .states
        .iter()
        .enumerate()
        .filter(|&(i, _)| !small.truncation.boundary[i])
        .all(|(i, s)| big.label_of(s) == Some(small.labels[i])))
}

#[derive(Clone, Debug)]
pub struct DualEntropy {
    /// Counts of paths with `0..=n_max` transitions, leaving the state.
    pub forward: EntropyReport,
    /// The same for paths arriving at the state.
    pub backward: EntropyReport,
    /// `max` of the two growth rates.
    pub growth_entropy: f64,
    /// Zero when every cycle class in the window is a single cycle, so
    /// every invariant measure there lives on periodic orbits.
    pub measure_bound: Option<f64>,
}

/// Path counts kept per state during expansion.
trait Count: Clone + Default {
    fn one() -> Self;
    /// False on overflow.
    fn add(&mut self, other: &Self) -> bool;
    fn big(&self) -> BigUint;
}

impl Count for u128 {
    fn one() -> Self {
        1
    }

    fn add(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }

    fn big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Count for BigUint {
    fn one() -> Self {
        BigUint::from(1u8)
    }

    fn add(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }

    fn big(&self) -> BigUint {
        self.clone()
    }
}

/// `Ok(None)` when a count overflows the counter type.
fn expand_with<C: Count>(g: &GeneratedGraph, s: &State, n_max: usize, forward: bool) -> Result<Option<Vec<BigUint>>> {
    let mut layer: HashMap<State, C> = HashMap::from([(s.clone(), C::one())]);
    let mut counts = vec![BigUint::from(1u8)];
    for _ in 0..n_max {
        let mut next: HashMap<State, C> = HashMap::with_capacity(layer.len() * 2);
        for (u, c) in &layer {
            let nb = if forward { g.successors(u) } else { g.predecessors(u) };
            for v in nb {
                if !next.entry(v).or_default().add(c) {
                    return Ok(None);
                }
            }
        }
        if next.len() > EXPANSION_LIMIT {
            return Err(WanderingError::TooLarge(EXPANSION_LIMIT));
        }
        let mut total = C::default();
        for c in next.values() {
            if !total.add(c) {
                return Ok(None);
            }
        }
        counts.push(total.big());
        layer = next;
    }
    Ok(Some(counts))
}

fn expand(g: &GeneratedGraph, s: &State, n_max: usize, forward: bool) -> Result<Vec<BigUint>> {
    match expand_with::<u128>(g, s, n_max, forward)? {
        Some(c) => Ok(c),
        None => Ok(expand_with::<BigUint>(g, s, n_max, forward)?.expect("big counts never overflow")),
    }
}

/// Exact path counts out of and into `s`, with their growth rates.
pub fn dual_entropy(g: &GeneratedGraph, s: &State, n_max: usize) -> Result<DualEntropy> {
    if !g.contains(s) {
        return Err(WanderingError::OutsideDomain(g.display(s)));
    }
    let forward = growth_report(expand(g, s, n_max, true)?);
    let backward = growth_report(expand(g, s, n_max, false)?);
    let t = g.truncate(n_max.max(2) as u64)?;
    let simple = t.cyclic_components().iter().all(|comp| {
        comp.iter()
            .all(|&i| t.succ[i].iter().filter(|j| comp.binary_search(j).is_ok()).count() == 1)
    });
    let growth_entropy = forward.entropy.max(backward.entropy).max(0.0);
    Ok(DualEntropy {
        forward,
        backward,
        growth_entropy,
        measure_bound: simple.then_some(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{cycle_plus_q3_graph, q3_graph, q3xq3_graph};
    use super::*;

    #[test]
    fn q3_is_all_wandering_but_the_base() {
        let g = q3_graph();
        let c = classify_blocks(&g, 20).unwrap();
        assert_eq!(c.count(Block::Transitive), 1);
        assert_eq!(c.count(Block::Cyclic), 0);
        assert_eq!(c.count(Block::Wandering), 20);
        assert!(radius_stable(&g, 20).unwrap());
        assert!(matches!(classify_blocks(&g, 1), Err(WanderingError::RadiusTooSmall(_))));
    }

    #[test]
    fn disjoint_cycle_enlarges_the_non_wandering_part() {
        let g = cycle_plus_q3_graph();
        let c = classify_blocks(&g, 9).unwrap();
        assert_eq!(c.count(Block::Transitive), 1);
        assert_eq!(c.count(Block::Cyclic), 4);
        assert!(c.non_wandering() > c.count(Block::Transitive));
        assert_eq!(c.quotient_names.len(), 1 + c.count(Block::Wandering));
        assert!(radius_stable(&g, 9).unwrap());
    }

    #[test]
    fn q3xq3_growth_is_exact() {
        let g = q3xq3_graph();
        let d = dual_entropy(&g, g.base(), 12).unwrap();
        for (n, c) in d.forward.counts.iter().enumerate() {
            assert_eq!(*c, BigUint::from(3u8).pow(n as u32));
        }
        assert_eq!(d.forward.counts, d.backward.counts);
        assert!((d.growth_entropy - 3f64.ln()).abs() < 1e-12);
        assert_eq!(d.measure_bound, Some(0.0));
    }

    #[test]
    fn q3_growth_is_one_sided() {
        let g = q3_graph();
        let d = dual_entropy(&g, &State::new(0, vec![5]), 8).unwrap();
        assert!(d.forward.counts.iter().all(|c| *c == BigUint::from(1u8)));
        assert_eq!(d.backward.geometric_base, Some(BigUint::from(3u8)));
        assert!(d.forward.entropy.abs() < 1e-12);
    }
}
