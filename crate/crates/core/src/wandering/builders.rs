//! Standard countable-state graphs.

use super::affine::{AffineCoord, AffineForm, Interval};
use super::rank::{Direction, RankCertificate};
use super::{EdgeRule, GeneratedGraph, MatrixSystem, State, StateClass};

fn class(name: &str, vars: &[&str], domain: Vec<Interval>) -> StateClass {
    StateClass {
        name: name.into(),
        vars: vars.iter().map(|v| v.to_string()).collect(),
        domain,
    }
}

fn q3_rules(class: usize) -> Vec<EdgeRule> {
    (0..3)
        .map(|d| EdgeRule {
            source: class,
            target: class,
            params: vec!["N".into()],
            source_index: vec![AffineCoord::param(0, 3, d)],
            target_index: vec![AffineCoord::param(0, 1, 0)],
            guard: vec![Interval::at_least(0)],
        })
        .collect()
}

/// Cosets of the 3-adic integers in the 3-adic numbers under
/// multiplication by 3. State `N` encodes the digits right of the point,
/// least significant first; each step drops one digit, so `3N + d -> N`.
pub fn q3_graph() -> GeneratedGraph {
    let zero = State::new(0, vec![0]);
    GeneratedGraph::new(
        "q3",
        vec![class("Q", &["N"], vec![Interval::at_least(0)])],
        q3_rules(0),
        zero.clone(),
        vec![zero],
    )
    .expect("q3 graph is well formed")
}

/// The pair system: one coordinate multiplied by 1/3 (gaining a digit,
/// three choices) and the other by 3 (losing one), so
/// `(a, 3b + e) -> (3a + d, b)` for digits `d, e`.
pub fn q3xq3_graph() -> GeneratedGraph {
    let mut rules = Vec::new();
    for d in 0..3 {
        for e in 0..3 {
            rules.push(EdgeRule {
                source: 0,
                target: 0,
                params: vec!["A".into(), "B".into()],
                source_index: vec![AffineCoord::param(0, 1, 0), AffineCoord::param(1, 3, e)],
                target_index: vec![AffineCoord::param(0, 3, d), AffineCoord::param(1, 1, 0)],
                guard: vec![Interval::at_least(0), Interval::at_least(0)],
            });
        }
    }
    let zero = State::new(0, vec![0, 0]);
    GeneratedGraph::new(
        "q3xq3",
        vec![class("P", &["A", "B"], vec![Interval::at_least(0), Interval::at_least(0)])],
        rules,
        zero.clone(),
        vec![zero],
    )
    .expect("q3xq3 graph is well formed")
}

/// The 3-adic graph beside a disjoint 4-cycle. Its non-wandering part is
/// strictly larger than the part transitive with the base state.
pub fn cycle_plus_q3_graph() -> GeneratedGraph {
    let mut rules = q3_rules(0);
    rules.push(EdgeRule {
        source: 1,
        target: 1,
        params: vec!["I".into()],
        source_index: vec![AffineCoord::param(0, 1, 0)],
        target_index: vec![AffineCoord::param(0, 1, 1)],
        guard: vec![Interval::between(0, 2)],
    });
    rules.push(EdgeRule {
        source: 1,
        target: 1,
        params: vec![],
        source_index: vec![AffineCoord::constant(3)],
        target_index: vec![AffineCoord::constant(0)],
        guard: vec![],
    });
    let zero = State::new(0, vec![0]);
    GeneratedGraph::new(
        "cycle_plus_q3",
        vec![
            class("Q", &["N"], vec![Interval::at_least(0)]),
            class("C", &["I"], vec![Interval::between(0, 3)]),
        ],
        rules,
        zero.clone(),
        vec![zero],
    )
    .expect("cycle graph is well formed")
}

/// The automorphism of `Z²` with matrix `[[2, 1], [1, 1]]`.
pub fn z2_system() -> MatrixSystem {
    MatrixSystem::new("z2", vec![vec![2, 1], vec![1, 1]]).expect("unimodular")
}

/// Rank `N`, decreasing: each step drops a digit.
pub fn q3_certificate() -> RankCertificate {
    RankCertificate {
        ranks: vec![AffineForm::new(vec![1], 0)],
        direction: Direction::Decreasing,
        exceptions: vec![State::new(0, vec![0])],
    }
}

/// Rank `A - B`, increasing: the first index grows and the second shrinks.
pub fn q3xq3_certificate() -> RankCertificate {
    RankCertificate {
        ranks: vec![AffineForm::new(vec![1, -1], 0)],
        direction: Direction::Increasing,
        exceptions: vec![State::new(0, vec![0, 0])],
    }
}

/// Rank `N` on the tail and constant on the cycle; it proves wandering
/// only once the cycle is collapsed.
pub fn cycle_plus_q3_certificate() -> RankCertificate {
    RankCertificate {
        ranks: vec![AffineForm::new(vec![1], 0), AffineForm::new(vec![0], 0)],
        direction: Direction::Decreasing,
        exceptions: vec![State::new(0, vec![0])],
    }
}
