//! Shifts of finite type presented by forbidden words, memory detection and
//! higher-block recoding.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;

use super::{
    path_count, word_limit, words, BlockMap, Result, ShiftError, SlidingCode, VertexShift, Word,
};

/// A shift of finite type as a vertex shift on its allowed `M`-blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftPresentation {
    names: Vec<String>,
    block_len: usize,
    blocks: Vec<Vec<usize>>,
    block_index: HashMap<Vec<usize>, usize>,
    graph: VertexShift,
}

impl SftPresentation {
    /// A vertex shift viewed as a 1-block presentation.
    pub fn from_vertex_shift(x: &VertexShift) -> Self {
        let blocks: Vec<Vec<usize>> = (0..x.len()).map(|a| vec![a]).collect();
        Self::assemble(x.names().to_vec(), 1, blocks, x.clone())
    }

    /// The subshift of `names^Z` avoiding every word in `forbidden`.
    ///
    /// The block length is `max(K - 1, 1)` where `K` is the longest forbidden
    /// word. Blocks that occur in no bi-infinite point are pruned.
    pub fn from_forbidden(names: Vec<String>, forbidden: &[Vec<usize>]) -> Result<Self> {
        let k = names.len();
        if let Some(&bad) = forbidden.iter().flatten().find(|&&a| a >= k) {
            return Err(ShiftError::SymbolOutOfRange(bad));
        }
        let longest = forbidden.iter().map(Vec::len).max().unwrap_or(0);
        let m = longest.saturating_sub(1).max(1);
        let total = BigUint::from(k).pow(m as u32 + 1);
        let limit = word_limit();
        if total > BigUint::from(limit) {
            return Err(ShiftError::SizeLimit {
                count: total,
                limit,
            });
        }
        let avoids = |w: &[usize]| {
            !forbidden
                .iter()
                .any(|f| !f.is_empty() && w.windows(f.len()).any(|s| s == &f[..]))
        };
        let mut blocks = Vec::new();
        let mut cur = vec![0usize; m];
        loop {
            if avoids(&cur) {
                blocks.push(cur.clone());
            }
            if !odometer(&mut cur, k) {
                break;
            }
        }
        let index: HashMap<&[usize], usize> = blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.as_slice(), i))
            .collect();
        let mut edges = Vec::new();
        let mut joined = vec![0usize; m + 1];
        for (i, b) in blocks.iter().enumerate() {
            joined[..m].copy_from_slice(b);
            for c in 0..k {
                joined[m] = c;
                if let Some(&j) = index.get(&joined[1..]) {
                    if avoids(&joined) {
                        edges.push((i, j));
                    }
                }
            }
        }
        let block_names = blocks.iter().map(|b| join_names(&names, b)).collect();
        let (graph, kept) = VertexShift::with_kept(block_names, edges)?;
        let blocks = kept.into_iter().map(|i| blocks[i].clone()).collect();
        Ok(Self::assemble(names, m, blocks, graph))
    }

    fn assemble(names: Vec<String>, block_len: usize, blocks: Vec<Vec<usize>>, graph: VertexShift) -> Self {
        let block_index = blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        Self {
            names,
            block_len,
            blocks,
            block_index,
            graph,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// The vertex shift on allowed blocks.
    pub fn graph(&self) -> &VertexShift {
        &self.graph
    }

    /// Base symbols that occur in some point.
    pub fn occurring_symbols(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn contains(&self, w: &[usize]) -> bool {
        let m = self.block_len;
        if w.len() < m {
            return self.blocks.iter().any(|b| b.starts_with(w));
        }
        let mut prev: Option<usize> = None;
        for win in w.windows(m) {
            let Some(&v) = self.block_index.get(win) else {
                return false;
            };
            if let Some(u) = prev {
                if !self.graph.has_edge(u, v) {
                    return false;
                }
            }
            prev = Some(v);
        }
        true
    }

    /// `{a : wa is a word}`, sorted.
    pub fn follower(&self, w: &[usize]) -> Result<Vec<usize>> {
        if !self.contains(w) {
            return Err(ShiftError::NotAWord(w.to_vec()));
        }
        let mut ext = w.to_vec();
        ext.push(0);
        let last = ext.len() - 1;
        Ok((0..self.names.len())
            .filter(|&a| {
                ext[last] = a;
                self.contains(&ext)
            })
            .collect())
    }

    /// All words of length `n`, lexicographically.
    pub fn words(&self, n: usize) -> Result<Vec<Word>> {
        let m = self.block_len;
        if n == 0 {
            return Err(ShiftError::BadLength { min: 1, got: 0 });
        }
        if n < m {
            let mut out: Vec<Vec<usize>> = self.blocks.iter().map(|b| b[..n].to_vec()).collect();
            out.sort_unstable();
            out.dedup();
            return Ok(out.into_iter().map(Word).collect());
        }
        Ok(words(&self.graph, n - m + 1)?
            .into_iter()
            .map(|path| Word(self.decode(&path)))
            .collect())
    }

    /// Base-symbol word spelled by a path of blocks.
    pub fn decode(&self, path: &[usize]) -> Vec<usize> {
        let mut out = self.blocks[path[0]].clone();
        out.extend(path[1..].iter().map(|&v| self.blocks[v][self.block_len - 1]));
        out
    }

    pub fn path_count(&self, n: usize) -> BigUint {
        if n >= self.block_len {
            path_count(&self.graph, n - self.block_len + 1, None)
        } else {
            BigUint::from(self.words(n).map(|w| w.len()).unwrap_or(0))
        }
    }
}

fn join_names(names: &[String], w: &[usize]) -> String {
    w.iter()
        .map(|&a| names[a].as_str())
        .collect::<Vec<_>>()
        .join("|")
}

/// Advances `cur` as a base-`k` counter, last digit fastest. Returns false on wrap.
fn odometer(cur: &mut [usize], k: usize) -> bool {
    for d in cur.iter_mut().rev() {
        *d += 1;
        if *d < k {
            return true;
        }
        *d = 0;
    }
    false
}

/// Least `N <= max_n` such that the follower set of every word depends only
/// on its last `N` symbols. The empty suffix has every occurring symbol as
/// follower, so a full shift has memory 0.
pub fn markov_memory(x: &SftPresentation, max_n: usize) -> Result<usize> {
    if max_n == 0 {
        return Err(ShiftError::BadLength { min: 1, got: 0 });
    }
    let everything = x.occurring_symbols();
    let mut cache: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut f = |w: &[usize]| -> Result<Vec<usize>> {
        if w.is_empty() {
            return Ok(everything.clone());
        }
        if let Some(v) = cache.get(w) {
            return Ok(v.clone());
        }
        let v = x.follower(w)?;
        cache.insert(w.to_vec(), v.clone());
        Ok(v)
    };
    for n in 0..=max_n {
        // past the block length followers only see the last block, so
        // lengths up to max(M, n + 1) decide the question
        let top = x.block_len().max(n + 1);
        let mut ok = true;
        'len: for len in n + 1..=top {
            for w in x.words(len)? {
                if f(&w)? != f(&w[len - n..])? {
                    ok = false;
                    break 'len;
                }
            }
        }
        if ok {
            return Ok(n);
        }
    }
    Err(ShiftError::NotStabilized { max_n })
}

/// The standard `n`-block presentation with its conjugacy maps.
#[derive(Clone, Debug)]
pub struct HigherBlock {
    /// Vertex shift on the words of length `n`.
    pub shift: VertexShift,
    /// The words indexing the new alphabet.
    pub blocks: Vec<Vec<usize>>,
    /// Window `(0, n - 1)`: an `n`-word maps to its block symbol.
    pub forward: SlidingCode,
    /// 1-block map: a block symbol maps to its first symbol.
    pub inverse: SlidingCode,
}

/// Recodes `x` to its `n`-block presentation. When `n` is at least the
/// memory of `x`, the result is a 1-step presentation of the same system.
pub fn higher_block(x: &SftPresentation, n: usize) -> Result<HigherBlock> {
    if n == 0 {
        return Err(ShiftError::BadLength { min: 1, got: 0 });
    }
    let blocks: Vec<Vec<usize>> = x.words(n)?.into_iter().map(|w| w.0).collect();
    let longer = x.words(n + 1)?;
    let index: HashMap<&[usize], usize> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i))
        .collect();
    let edges: Vec<(usize, usize)> = longer
        .iter()
        .map(|w| (index[&w[..n]], index[&w[1..]]))
        .collect();
    let names = blocks.iter().map(|b| join_names(x.names(), b)).collect();
    let (shift, kept) = VertexShift::with_kept(names, edges)?;
    let blocks: Vec<Vec<usize>> = kept.into_iter().map(|i| blocks[i].clone()).collect();
    let fwd: BTreeMap<Vec<usize>, usize> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    let firsts: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    Ok(HigherBlock {
        shift,
        forward: SlidingCode::single(BlockMap::new(0, n - 1, fwd)),
        inverse: SlidingCode::single(BlockMap::one_block(&firsts)),
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::super::check_inverse_pair;
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn forbidden_word_presentation() {
        // golden mean shift: 11 forbidden
        let x = SftPresentation::from_forbidden(names(2), &[vec![1, 1]]).unwrap();
        assert_eq!(x.block_len(), 1);
        assert_eq!(x.graph().edge_count(), 3);
        assert!(x.contains(&[0, 1, 0, 1]));
        assert!(!x.contains(&[0, 1, 1]));
        // 3-step: forbid 1001
        let y = SftPresentation::from_forbidden(names(2), &[vec![1, 0, 0, 1]]).unwrap();
        assert_eq!(y.block_len(), 3);
        assert!(y.contains(&[1, 0]));
        assert!(!y.contains(&[0, 1, 0, 0, 1]));
        assert_eq!(y.follower(&[1, 0, 0]).unwrap(), vec![0]);
        assert_eq!(y.follower(&[0, 0]).unwrap(), vec![0, 1]);
        assert_eq!(y.words(2).unwrap().len(), 4);
        // brute force over all binary words of length 7
        let mut brute = 0u32;
        for bits in 0..(1u32 << 7) {
            let w: Vec<usize> = (0..7).map(|i| ((bits >> (6 - i)) & 1) as usize).collect();
            if !w.windows(4).any(|s| s == [1, 0, 0, 1]) {
                brute += 1;
            }
        }
        assert_eq!(y.path_count(7), BigUint::from(brute));
    }

    #[test]
    fn memory_of_basic_shifts() {
        let full = SftPresentation::from_vertex_shift(&VertexShift::full(names(3)));
        assert_eq!(markov_memory(&full, 4), Ok(0));
        let golden = VertexShift::new(names(2), [(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(markov_memory(&SftPresentation::from_vertex_shift(&golden), 4), Ok(1));
        let y = SftPresentation::from_forbidden(names(2), &[vec![1, 0, 0, 1]]).unwrap();
        assert_eq!(markov_memory(&y, 5), Ok(3));
        assert_eq!(
            markov_memory(&y, 2),
            Err(ShiftError::NotStabilized { max_n: 2 })
        );
        // forbidding 101 and 111 leaves memory 2
        let z = SftPresentation::from_forbidden(names(2), &[vec![1, 0, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(markov_memory(&z, 5), Ok(2));
    }

    #[test]
    fn higher_block_of_full_two_shift() {
        let x = SftPresentation::from_vertex_shift(&VertexShift::full(names(2)));
        let hb = higher_block(&x, 2).unwrap();
        assert_eq!(hb.shift.len(), 4);
        assert!((0..4).all(|a| hb.shift.successors(a).len() == 2));
        let hb1 = higher_block(&x, 1).unwrap();
        assert_eq!(hb1.shift, VertexShift::full(names(2)));
    }

    #[test]
    fn higher_block_recodes_memory_three() {
        let y = SftPresentation::from_forbidden(names(2), &[vec![1, 0, 0, 1], vec![0, 1, 1, 1]]).unwrap();
        let n = markov_memory(&y, 6).unwrap();
        assert_eq!(n, 3);
        let hb = higher_block(&y, n).unwrap();
        let recoded = SftPresentation::from_vertex_shift(&hb.shift);
        assert_eq!(markov_memory(&recoded, 3), Ok(1));
        for k in 1..=10 {
            assert_eq!(
                path_count(&hb.shift, k, None),
                y.path_count(k + n - 1),
                "length {k}"
            );
        }
        for len in 1..=8 {
            let ws = y.words(len).unwrap();
            assert!(check_inverse_pair(&hb.forward, &hb.inverse, &ws).is_ok());
            // the forward image of every word is a word of the recoding
            for w in ws.iter().filter(|w| w.len() >= n) {
                assert!(hb.shift.is_word(&hb.forward.apply(w).unwrap()));
            }
        }
    }
}
