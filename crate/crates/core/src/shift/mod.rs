//! Finite-alphabet vertex shifts: words, follower and predecessor sets,
//! path counting and block-growth entropy.
//!
//! A [`VertexShift`] is a one-step Markov shift given by a directed graph on
//! its alphabet. Subshifts with longer memory are handled by
//! [`SftPresentation`] and only feed [`markov_memory`] and [`higher_block`].

mod block_map;
mod sft;

use std::collections::HashMap;
use std::ops::Deref;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use block_map::{check_inverse_pair, BlockMap, SlidingCode};
pub use sft::{higher_block, markov_memory, HigherBlock, SftPresentation};

/// Default bound on the number of words any enumeration may produce.
pub const DEFAULT_WORD_LIMIT: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_WORD_LIMIT`].
pub const WORD_LIMIT_ENV: &str = "COSETDYN_MAX_WORDS";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShiftError {
    #[error("enumeration of {count} words exceeds the limit of {limit}")]
    SizeLimit { count: BigUint, limit: u64 },
    #[error("{0:?} is not a word of the shift")]
    NotAWord(Vec<usize>),
    #[error("follower sets did not stabilize within memory {max_n}")]
    NotStabilized { max_n: usize },
    #[error("no symbol occurs in a bi-infinite point")]
    Empty,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol index {0} out of range")]
    SymbolOutOfRange(usize),
    #[error("length must be at least {min}, got {got}")]
    BadLength { min: usize, got: usize },
    #[error("block map has no rule for window {0:?}")]
    MissingRule(Vec<usize>),
}

pub type Result<T, E = ShiftError> = std::result::Result<T, E>;

/// The word limit in effect: [`WORD_LIMIT_ENV`] if set and parseable,
/// otherwise [`DEFAULT_WORD_LIMIT`].
pub fn word_limit() -> u64 {
    std::env::var(WORD_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_WORD_LIMIT)
}

/// A finite sequence of symbol indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl AsRef<[usize]> for Word {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// A one-step vertex shift on a finite alphabet.
///
/// Every symbol has at least one successor and one predecessor; symbols
/// without both are stripped at construction since they occur in no point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexShift {
    names: Vec<String>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl VertexShift {
    /// Builds the shift and strips inessential symbols. Surviving symbols
    /// keep their relative order; see [`Self::with_kept`] for the mapping.
    pub fn new(names: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_kept(names, edges).map(|(x, _)| x)
    }

    /// Like [`Self::new`] but also returns, for each surviving symbol, its
    /// index in the input alphabet.
    pub fn with_kept(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, Vec<usize>)> {
        let n = names.len();
        let mut succ = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n {
                return Err(ShiftError::SymbolOutOfRange(a));
            }
            if b >= n {
                return Err(ShiftError::SymbolOutOfRange(b));
            }
            succ[a].push(b);
        }
        let mut alive = vec![true; n];
        loop {
            let mut indeg = vec![0usize; n];
            let mut outdeg = vec![0usize; n];
            for a in (0..n).filter(|&a| alive[a]) {
                for &b in succ[a].iter().filter(|&&b| alive[b]) {
                    outdeg[a] += 1;
                    indeg[b] += 1;
                }
            }
            let dead: Vec<usize> = (0..n)
                .filter(|&a| alive[a] && (indeg[a] == 0 || outdeg[a] == 0))
                .collect();
            if dead.is_empty() {
                break;
            }
            for a in dead {
                log::warn!("stripping symbol `{}`: it occurs in no bi-infinite point", names[a]);
                alive[a] = false;
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&a| alive[a]).collect();
        if kept.is_empty() {
            return Err(ShiftError::Empty);
        }
        let mut new_index = vec![usize::MAX; n];
        for (i, &a) in kept.iter().enumerate() {
            new_index[a] = i;
        }
        let mut new_succ = vec![Vec::new(); kept.len()];
        let mut new_pred = vec![Vec::new(); kept.len()];
        for &a in &kept {
            for &b in &succ[a] {
                if alive[b] {
                    new_succ[new_index[a]].push(new_index[b]);
                    new_pred[new_index[b]].push(new_index[a]);
                }
            }
        }
        for list in new_succ.iter_mut().chain(new_pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        let names = kept.iter().map(|&a| names[a].clone()).collect();
        Ok((
            Self {
                names,
                succ: new_succ,
                pred: new_pred,
            },
            kept,
        ))
    }

    /// Builds from symbol names and named edges.
    pub fn from_named(alphabet: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let lookup: HashMap<&str, usize> =
            alphabet.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let find = |s: &str| {
            lookup
                .get(s)
                .copied()
                .ok_or_else(|| ShiftError::UnknownSymbol(s.to_string()))
        };
        let edges = edges
            .iter()
            .map(|&(a, b)| Ok((find(a)?, find(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet.iter().map(|s| s.to_string()).collect(), edges)
    }

    /// The full shift on `names`.
    pub fn full(names: Vec<String>) -> Self {
        let n = names.len();
        let all: Vec<usize> = (0..n).collect();
        Self {
            names,
            succ: vec![all.clone(); n],
            pred: vec![all; n],
        }
    }

    /// The permutation shift `a -> perm[a]`.
    pub fn permutation(names: Vec<String>, perm: &[usize]) -> Result<Self> {
        Self::new(names, perm.iter().copied().enumerate())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ShiftError::UnknownSymbol(name.to_string()))
    }

    pub fn successors(&self, a: usize) -> &[usize] {
        &self.succ[a]
    }

    pub fn predecessors(&self, a: usize) -> &[usize] {
        &self.pred[a]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn is_word(&self, w: &[usize]) -> bool {
        w.iter().all(|&a| a < self.len()) && w.windows(2).all(|p| self.has_edge(p[0], p[1]))
    }

    /// Renders a word with symbol names separated by spaces.
    pub fn render(&self, w: &[usize]) -> String {
        w.iter()
            .map(|&a| self.names[a].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// All words of length `n`, in lexicographic order of symbol indices.
pub fn words(x: &VertexShift, n: usize) -> Result<Vec<Word>> {
    words_limited(x, n, word_limit())
}

pub fn words_limited(x: &VertexShift, n: usize, limit: u64) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(ShiftError::BadLength { min: 1, got: 0 });
    }
    let count = path_count(x, n, None);
    if count > BigUint::from(limit) {
        return Err(ShiftError::SizeLimit { count, limit });
    }
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let mut stack = Vec::with_capacity(n);
    for a in 0..x.len() {
        stack.push(a);
        extend_words(x, n, &mut stack, &mut out);
        stack.pop();
    }
    Ok(out)
}

/// Words of length `n` starting with `from`, lexicographically.
pub fn words_from(x: &VertexShift, n: usize, from: usize) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(ShiftError::BadLength { min: 1, got: 0 });
    }
    let limit = word_limit();
    let count = path_count(x, n, Some(from));
    if count > BigUint::from(limit) {
        return Err(ShiftError::SizeLimit { count, limit });
    }
    let mut out = Vec::new();
    let mut stack = vec![from];
    extend_words(x, n, &mut stack, &mut out);
    Ok(out)
}

fn extend_words(x: &VertexShift, n: usize, stack: &mut Vec<usize>, out: &mut Vec<Word>) {
    if stack.len() == n {
        out.push(Word(stack.clone()));
        return;
    }
    let last = *stack.last().expect("non-empty stack");
    for &b in x.successors(last) {
        stack.push(b);
        extend_words(x, n, stack, out);
        stack.pop();
    }
}

/// `f(w)`: symbols `a` with `wa` a word. The empty word has the whole alphabet.
pub fn follower(x: &VertexShift, w: &[usize]) -> Result<Vec<usize>> {
    if !x.is_word(w) {
        return Err(ShiftError::NotAWord(w.to_vec()));
    }
    Ok(match w.last() {
        Some(&a) => x.successors(a).to_vec(),
        None => (0..x.len()).collect(),
    })
}

/// `p(w)`: symbols `a` with `aw` a word.
pub fn predecessor(x: &VertexShift, w: &[usize]) -> Result<Vec<usize>> {
    if !x.is_word(w) {
        return Err(ShiftError::NotAWord(w.to_vec()));
    }
    Ok(match w.first() {
        Some(&a) => x.predecessors(a).to_vec(),
        None => (0..x.len()).collect(),
    })
}

/// Number of words of length `n` (optionally starting at `from`), exact.
pub fn path_count(x: &VertexShift, n: usize, from: Option<usize>) -> BigUint {
    path_counts(x, n, from).pop().unwrap_or_else(BigUint::zero)
}

/// Word counts for lengths `1..=n_max`.
pub fn path_counts(x: &VertexShift, n_max: usize, from: Option<usize>) -> Vec<BigUint> {
    let mut counts = Vec::with_capacity(n_max);
    if n_max == 0 {
        return counts;
    }
    let mut ends: Vec<BigUint> = match from {
        Some(a) => {
            let mut v = vec![BigUint::zero(); x.len()];
            v[a] = BigUint::one();
            v
        }
        None => vec![BigUint::one(); x.len()],
    };
    counts.push(ends.iter().sum());
    for _ in 1..n_max {
        let mut next = vec![BigUint::zero(); x.len()];
        for (a, c) in ends.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &b in x.successors(a) {
                next[b] += c;
            }
        }
        ends = next;
        counts.push(ends.iter().sum());
    }
    counts
}

/// Block-growth entropy report.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    /// `counts[i]` is the number of words of length `i + 1`.
    pub counts: Vec<BigUint>,
    /// `log(counts[i+1] / counts[i])`.
    pub log_ratios: Vec<f64>,
    /// Set when every consecutive ratio is the same integer.
    pub geometric_base: Option<BigUint>,
    /// `log(base)` when geometric, otherwise the last ratio.
    pub entropy: f64,
}

impl EntropyReport {
    pub fn is_geometric(&self) -> bool {
        self.geometric_base.is_some()
    }
}

pub fn block_entropy(x: &VertexShift, n_max: usize) -> Result<EntropyReport> {
    if n_max < 2 {
        return Err(ShiftError::BadLength { min: 2, got: n_max });
    }
    Ok(growth_report(path_counts(x, n_max, None)))
}

pub(crate) fn growth_report(counts: Vec<BigUint>) -> EntropyReport {
    let log_ratios: Vec<f64> = counts
        .windows(2)
        .map(|p| big_ln(&p[1]) - big_ln(&p[0]))
        .collect();
    let geometric_base = exact_ratio(&counts);
    let entropy = match &geometric_base {
        Some(r) => big_ln(r),
        None => log_ratios.last().copied().unwrap_or(0.0),
    };
    EntropyReport {
        counts,
        log_ratios,
        geometric_base,
        entropy,
    }
}

/// The common integer ratio of consecutive counts, if there is one.
pub(crate) fn exact_ratio(counts: &[BigUint]) -> Option<BigUint> {
    if counts.len() < 2 || counts[0].is_zero() {
        return None;
    }
    let r = &counts[1] / &counts[0];
    counts
        .windows(2)
        .all(|p| p[0].clone() * &r == p[1])
        .then_some(r)
}

/// Natural logarithm of a big integer (0 maps to -inf).
pub(crate) fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Forward/backward determinism of a vertex shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Determinism {
    pub forward: bool,
    pub backward: bool,
    /// Cycle decomposition when the shift is a permutation of its alphabet;
    /// each cycle starts at its smallest symbol.
    pub cycles: Option<Vec<Vec<usize>>>,
}

impl Determinism {
    pub fn is_permutation(&self) -> bool {
        self.forward && self.backward
    }

    /// Sorted cycle lengths, when a permutation.
    pub fn cycle_lengths(&self) -> Option<Vec<usize>> {
        self.cycles.as_ref().map(|cs| {
            let mut l: Vec<usize> = cs.iter().map(Vec::len).collect();
            l.sort_unstable();
            l
        })
    }
}

pub fn determinism(x: &VertexShift) -> Determinism {
    let forward = (0..x.len()).all(|a| x.successors(a).len() == 1);
    let backward = (0..x.len()).all(|a| x.predecessors(a).len() == 1);
    let cycles = (forward && backward).then(|| {
        let image: Vec<usize> = (0..x.len()).map(|a| x.successors(a)[0]).collect();
        crate::group::permutation_cycles(&image)
    });
    Determinism {
        forward,
        backward,
        cycles,
    }
}
