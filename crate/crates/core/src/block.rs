//! Finite blocks and block counting.
//!
//! A block of height `h` and arity `d` is a complete `d`-ary tree with `h`
//! levels whose nodes carry labels. Labels are stored in level order: the
//! root, then its children in tuple order, then the grandchildren, and so on.
//! For `d = 1` a block is just a word of length `h`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;

use crate::automaton::{EdgeTreeAutomaton, Tuple};
use crate::error::{Error, Result};

/// Default cap on the number of blocks [`enumerate_blocks`] will materialize.
pub const DEFAULT_BLOCK_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block<L = String> {
    arity: usize,
    height: usize,
    labels: Vec<L>,
}

/// Number of nodes of a complete `arity`-ary tree with `height` levels.
pub fn node_count(arity: usize, height: usize) -> Option<usize> {
    if arity == 1 {
        return Some(height);
    }
    let mut total: usize = 0;
    let mut level: usize = 1;
    for _ in 0..height {
        total = total.checked_add(level)?;
        level = level.checked_mul(arity)?;
    }
    Some(total)
}

impl<L> Block<L> {
    pub fn new(arity: usize, height: usize, labels: Vec<L>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArity);
        }
        if height == 0 {
            return Err(Error::InvalidHeight);
        }
        let expected = node_count(arity, height)
            .ok_or_else(|| Error::InvalidBlock("block size overflows".into()))?;
        if labels.len() != expected {
            return Err(Error::InvalidBlock(format!(
                "height {height} arity {arity} needs {expected} labels, got {}",
                labels.len()
            )));
        }
        Ok(Self {
            arity,
            height,
            labels,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn root(&self) -> &L {
        &self.labels[0]
    }

    fn level_width(&self, level: usize) -> usize {
        self.arity.pow(level as u32)
    }

    /// Label of node `index` (left to right) on `level`.
    pub fn label_at(&self, level: usize, index: usize) -> &L {
        let offset = node_count(self.arity, level).expect("level within block");
        &self.labels[offset + index]
    }

    pub fn map<M>(&self, f: impl FnMut(&L) -> M) -> Block<M> {
        Block {
            arity: self.arity,
            height: self.height,
            labels: self.labels.iter().map(f).collect(),
        }
    }
}

impl<L: Clone> Block<L> {
    /// Single-node block.
    pub fn leaf(arity: usize, label: L) -> Self {
        Self {
            arity,
            height: 1,
            labels: vec![label],
        }
    }

    /// The block of height `height` rooted at node `index` of `level`, if it
    /// fits inside this block.
    pub fn subblock(&self, level: usize, index: usize, height: usize) -> Option<Self> {
        if height == 0 || level + height > self.height || index >= self.level_width(level) {
            return None;
        }
        let mut labels = Vec::with_capacity(node_count(self.arity, height)?);
        for m in 0..height {
            let width = self.level_width(m);
            let start = node_count(self.arity, level + m)? + index * width;
            labels.extend_from_slice(&self.labels[start..start + width]);
        }
        Some(Self {
            arity: self.arity,
            height,
            labels,
        })
    }

    /// The top `height` levels.
    pub fn prefix(&self, height: usize) -> Option<Self> {
        self.subblock(0, 0, height)
    }

    /// The sub-block hanging from child `i` of the root (height one less).
    pub fn child(&self, i: usize) -> Option<Self> {
        self.subblock(1, i, self.height - 1)
    }

    /// Assembles a block from a root label and `arity` children of equal height.
    pub fn from_root_and_children(root: L, children: &[Self]) -> Result<Self> {
        let arity = children.len();
        if arity == 0 {
            return Err(Error::InvalidArity);
        }
        let h = children[0].height;
        if children.iter().any(|c| c.height != h || c.arity != arity) {
            return Err(Error::InvalidBlock(
                "children differ in height or arity".into(),
            ));
        }
        let mut labels = vec![root];
        for m in 0..h {
            for c in children {
                let width = c.level_width(m);
                let start = node_count(arity, m).unwrap_or(0);
                labels.extend_from_slice(&c.labels[start..start + width]);
            }
        }
        Ok(Self {
            arity,
            height: h + 1,
            labels,
        })
    }

    /// Does `pattern` occur at some node of this block (entirely inside it)?
    pub fn contains(&self, pattern: &Self) -> bool
    where
        L: PartialEq,
    {
        if pattern.arity != self.arity || pattern.height > self.height {
            return false;
        }
        (0..=self.height - pattern.height).any(|level| {
            (0..self.level_width(level)).any(|index| self.occurs_at(pattern, level, index))
        })
    }

    /// Does `pattern` occur rooted at node `index` of `level`?
    pub fn occurs_at(&self, pattern: &Self, level: usize, index: usize) -> bool
    where
        L: PartialEq,
    {
        if level + pattern.height > self.height {
            return false;
        }
        (0..pattern.height).all(|m| {
            let width = self.level_width(m);
            let start = node_count(self.arity, level + m).unwrap_or(0) + index * width;
            let pstart = node_count(self.arity, m).unwrap_or(0);
            self.labels[start..start + width] == pattern.labels[pstart..pstart + width]
        })
    }
}

impl<L: fmt::Display> fmt::Display for Block<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", labels.join(" "))
    }
}

/// One of the parallel transitions `from -> children`, numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionLabel {
    pub from: usize,
    pub children: Tuple,
    pub copy: u64,
}

impl TransitionLabel {
    /// Canonical synthetic label `p→(q,r)#i`.
    pub fn display(&self, a: &EdgeTreeAutomaton) -> String {
        format!(
            "{}→{}#{}",
            a.state_name(self.from),
            a.tuple_name(&self.children),
            self.copy
        )
    }
}

/// Per-state block counts at one height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCountTable {
    pub height: usize,
    pub per_state: Vec<BigUint>,
}

impl BlockCountTable {
    pub fn total(&self) -> BigUint {
        self.per_state.iter().sum()
    }
}

/// Counts the blocks of height `k` of the edge tree shift of a trim automaton.
///
/// `N_1(p)` is the out-mass of `p`, and
/// `N_{j+1}(p) = sum over t of M(p, t) * prod_i N_j(t_i)`.
pub fn count_blocks(a: &EdgeTreeAutomaton, k: usize) -> Result<BlockCountTable> {
    if k == 0 {
        return Err(Error::InvalidHeight);
    }
    if !a.is_trim() {
        return Err(Error::NotTrim);
    }
    let n = a.num_states();
    let mut counts: Vec<BigUint> = (0..n).map(|p| BigUint::from(a.out_mass(p))).collect();
    for _ in 1..k {
        counts = (0..n)
            .map(|p| {
                a.row(p)
                    .iter()
                    .map(|(t, &m)| t.iter().fold(BigUint::from(m), |acc, &q| acc * &counts[q]))
                    .sum()
            })
            .collect();
    }
    Ok(BlockCountTable {
        height: k,
        per_state: counts,
    })
}

/// Materializes every block of height `k` of a trim automaton's edge tree
/// shift, labelled by transitions. Refuses when there would be more than `cap`.
pub fn enumerate_blocks(
    a: &EdgeTreeAutomaton,
    k: usize,
    cap: u64,
) -> Result<BTreeSet<Block<TransitionLabel>>> {
    let total = count_blocks(a, k)?.total();
    if total > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "block enumeration",
            count: total.to_string(),
            cap,
        });
    }
    let mut memo = HashMap::new();
    let mut out = BTreeSet::new();
    for p in 0..a.num_states() {
        out.extend(blocks_from(a, p, k, &mut memo));
    }
    Ok(out)
}

fn blocks_from(
    a: &EdgeTreeAutomaton,
    p: usize,
    k: usize,
    memo: &mut HashMap<(usize, usize), Vec<Block<TransitionLabel>>>,
) -> Vec<Block<TransitionLabel>> {
    if let Some(v) = memo.get(&(p, k)) {
        return v.clone();
    }
    let d = a.arity();
    let mut out = Vec::new();
    for (t, &m) in a.row(p) {
        let subs: Vec<Vec<Block<TransitionLabel>>> = if k == 1 {
            Vec::new()
        } else {
            t.iter().map(|&q| blocks_from(a, q, k - 1, memo)).collect()
        };
        for copy in 1..=m {
            let label = TransitionLabel {
                from: p,
                children: t.clone(),
                copy,
            };
            if k == 1 {
                out.push(Block::leaf(d, label));
                continue;
            }
            let choices: Vec<Vec<usize>> = subs.iter().map(|s| (0..s.len()).collect()).collect();
            for pick in crate::automaton::product(&choices) {
                let children: Vec<Block<TransitionLabel>> = pick
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| subs[i][j].clone())
                    .collect();
                out.push(
                    Block::from_root_and_children(label.clone(), &children)
                        .expect("children share height and arity"),
                );
            }
        }
    }
    memo.insert((p, k), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden_mean_tree() -> EdgeTreeAutomaton {
        EdgeTreeAutomaton::from_transitions(
            2,
            ["a", "b"],
            [
                ("a", vec!["a", "a"], 1),
                ("a", vec!["a", "b"], 1),
                ("a", vec!["b", "a"], 1),
                ("a", vec!["b", "b"], 1),
                ("b", vec!["a", "a"], 1),
            ],
        )
        .unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn node_counts() {
        assert_eq!(node_count(1, 5), Some(5));
        assert_eq!(node_count(2, 3), Some(7));
        assert_eq!(node_count(3, 2), Some(4));
    }

    #[test]
    fn block_length_checked() {
        assert!(Block::new(2, 2, vec!['a', 'b', 'c']).is_ok());
        assert!(Block::new(2, 2, vec!['a', 'b']).is_err());
        assert!(Block::<char>::new(2, 0, vec![]).is_err());
    }

    #[test]
    fn subblocks_and_assembly() {
        // root a, children b c, grandchildren d e | f g
        let b = Block::new(2, 3, "abcdefg".chars().collect()).unwrap();
        assert_eq!(b.child(0).unwrap().labels(), &['b', 'd', 'e']);
        assert_eq!(b.child(1).unwrap().labels(), &['c', 'f', 'g']);
        assert_eq!(b.prefix(2).unwrap().labels(), &['a', 'b', 'c']);
        let rebuilt =
            Block::from_root_and_children('a', &[b.child(0).unwrap(), b.child(1).unwrap()])
                .unwrap();
        assert_eq!(rebuilt, b);
        let pattern = Block::new(2, 2, vec!['c', 'f', 'g']).unwrap();
        assert!(b.contains(&pattern));
        assert!(!b.contains(&Block::new(2, 2, vec!['c', 'g', 'f']).unwrap()));
    }

    #[test]
    fn golden_mean_counts_height_one() {
        let t = count_blocks(&golden_mean_tree(), 1).unwrap();
        assert_eq!(t.per_state, vec![big(4), big(1)]);
        assert_eq!(t.total(), big(5));
        // oracle: explicit transition listing
        assert_eq!(golden_mean_tree().transitions().count(), 5);
    }

    #[test]
    fn golden_mean_counts_height_two() {
        let a = golden_mean_tree();
        let t = count_blocks(&a, 2).unwrap();
        assert_eq!(t.per_state, vec![big(25), big(16)]);
        assert_eq!(t.total(), big(41));
        // brute force: every height-2 computation tree is a root transition
        // followed by one transition out of each child state
        let mut brute = 0u64;
        for (_, tuple, m) in a.transitions() {
            brute += m * tuple.iter().map(|&q| a.out_mass(q)).product::<u64>();
        }
        assert_eq!(brute, 41);
        assert_eq!(enumerate_blocks(&a, 2, 1000).unwrap().len(), 41);
    }

    #[test]
    fn unique_continuation_counts_states() {
        let a =
            EdgeTreeAutomaton::from_matrix(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        for k in 1..6 {
            assert_eq!(count_blocks(&a, k).unwrap().total(), big(3));
        }
    }

    #[test]
    fn counting_rejects_bad_input() {
        let a = golden_mean_tree();
        assert!(matches!(count_blocks(&a, 0), Err(Error::InvalidHeight)));
        let dead = EdgeTreeAutomaton::new(1, ["x"]).unwrap();
        assert!(matches!(count_blocks(&dead, 1), Err(Error::NotTrim)));
    }

    #[test]
    fn enumerate_golden_mean_height_one() {
        let blocks = enumerate_blocks(&golden_mean_tree(), 1, 100).unwrap();
        assert_eq!(blocks.len(), 5);
    }

    #[test]
    fn enumerate_empty_automaton() {
        let e = EdgeTreeAutomaton::empty(2);
        assert!(enumerate_blocks(&e, 3, 10).unwrap().is_empty());
    }

    #[test]
    fn enumerate_golden_mean_words() {
        let a = EdgeTreeAutomaton::from_matrix(&[vec![1, 1], vec![1, 0]]).unwrap();
        let blocks = enumerate_blocks(&a, 2, 100).unwrap();
        let words: BTreeSet<String> = blocks
            .iter()
            .map(|b| {
                b.labels()
                    .iter()
                    .map(|l| l.display(&a))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let expected: BTreeSet<String> = [
            "1→(1)#1 1→(1)#1",
            "1→(1)#1 1→(2)#1",
            "1→(2)#1 2→(1)#1",
            "2→(1)#1 1→(1)#1",
            "2→(1)#1 1→(2)#1",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn enumeration_cap() {
        let a = golden_mean_tree();
        assert!(matches!(
            enumerate_blocks(&a, 2, 40),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn parallel_transitions_are_distinct_blocks() {
        let a = EdgeTreeAutomaton::from_matrix(&[vec![2]]).unwrap();
        assert_eq!(enumerate_blocks(&a, 3, 100).unwrap().len(), 8);
    }
}
