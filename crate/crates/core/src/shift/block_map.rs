//! Sliding block codes given by finite window rules.

use std::collections::BTreeMap;

use super::{Result, ShiftError};

/// A sliding block code with window `memory + 1 + anticipation`.
///
/// The output symbol at coordinate `i` is `rule[x[i-memory ..= i+anticipation]]`,
/// so a word of length `L` maps to a word of length `L - memory - anticipation`
/// whose first symbol sits at input coordinate `memory`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    memory: usize,
    anticipation: usize,
    rule: BTreeMap<Vec<usize>, usize>,
}

impl BlockMap {
    pub fn new(memory: usize, anticipation: usize, rule: BTreeMap<Vec<usize>, usize>) -> Self {
        debug_assert!(rule.keys().all(|k| k.len() == memory + 1 + anticipation));
        Self {
            memory,
            anticipation,
            rule,
        }
    }

    /// A 1-block map sending symbol `a` to `table[a]`.
    pub fn one_block(table: &[usize]) -> Self {
        let rule = table.iter().enumerate().map(|(a, &b)| (vec![a], b)).collect();
        Self::new(0, 0, rule)
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    pub fn window(&self) -> usize {
        self.memory + 1 + self.anticipation
    }

    pub fn rule(&self) -> &BTreeMap<Vec<usize>, usize> {
        &self.rule
    }

    pub fn image(&self, window: &[usize]) -> Option<usize> {
        self.rule.get(window).copied()
    }

    pub fn apply(&self, w: &[usize]) -> Result<Vec<usize>> {
        if w.len() < self.window() {
            return Err(ShiftError::BadLength {
                min: self.window(),
                got: w.len(),
            });
        }
        w.windows(self.window())
            .map(|win| {
                self.image(win)
                    .ok_or_else(|| ShiftError::MissingRule(win.to_vec()))
            })
            .collect()
    }
}

/// A composite of block maps applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SlidingCode {
    stages: Vec<BlockMap>,
}

impl SlidingCode {
    /// The identity code.
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(map: BlockMap) -> Self {
        Self { stages: vec![map] }
    }

    /// `self` followed by `next`.
    pub fn then(mut self, next: BlockMap) -> Self {
        self.stages.push(next);
        self
    }

    /// `self` followed by all stages of `next`.
    pub fn then_code(mut self, next: &SlidingCode) -> Self {
        self.stages.extend(next.stages.iter().cloned());
        self
    }

    pub fn stages(&self) -> &[BlockMap] {
        &self.stages
    }

    pub fn memory(&self) -> usize {
        self.stages.iter().map(BlockMap::memory).sum()
    }

    pub fn anticipation(&self) -> usize {
        self.stages.iter().map(BlockMap::anticipation).sum()
    }

    pub fn window(&self) -> usize {
        self.memory() + 1 + self.anticipation()
    }

    pub fn apply(&self, w: &[usize]) -> Result<Vec<usize>> {
        let mut cur = w.to_vec();
        for stage in &self.stages {
            cur = stage.apply(&cur)?;
        }
        Ok(cur)
    }
}

/// Checks `inverse ∘ forward` against the identity on every given word long
/// enough for both windows. Returns the number of words checked, or the
/// first word on which the composite disagrees with the central subword.
pub fn check_inverse_pair<W: AsRef<[usize]>>(
    forward: &SlidingCode,
    inverse: &SlidingCode,
    words: impl IntoIterator<Item = W>,
) -> std::result::Result<usize, Vec<usize>> {
    let m = forward.memory() + inverse.memory();
    let a = forward.anticipation() + inverse.anticipation();
    let mut checked = 0;
    for w in words {
        let w = w.as_ref();
        if w.len() < m + 1 + a {
            continue;
        }
        let back = forward.apply(w).and_then(|y| inverse.apply(&y));
        match back {
            Ok(v) if v[..] == w[m..w.len() - a] => checked += 1,
            _ => return Err(w.to_vec()),
        }
    }
    Ok(checked)
}
