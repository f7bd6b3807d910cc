//! Brute-force reference implementations.
//!
//! These share nothing with the code they check beyond the core data types:
//! isomorphism by trying every bijection, allowed blocks by exhaustive
//! enumeration and bounded extension, and split round trips judged by the
//! exhaustive isomorphism test.

use std::collections::{BTreeSet, HashMap};

use crate::amalgamation::{random_split_walk, total_amalgamation};
use crate::automaton::EdgeTreeAutomaton;
use crate::block::{node_count, Block};
use crate::compiler::SftPresentation;
use crate::conjugacy::Isomorphism;
use crate::error::{Error, Result};

/// Largest state count [`brute_isomorphic`] accepts.
pub const BRUTE_MAX_STATES: usize = 8;

/// Default number of extra levels [`brute_blocks`] asks a block to extend by.
pub const DEFAULT_SLACK: usize = 3;

/// Default cap on the number of candidate blocks enumerated.
pub const DEFAULT_BRUTE_CAP: u64 = 1_000_000;

fn preserves(a: &EdgeTreeAutomaton, b: &EdgeTreeAutomaton, sigma: &[usize]) -> bool {
    let n = a.num_states();
    // every (state, tuple) of a, zero or not, must match its image in b
    let mut tuple = vec![0usize; a.arity()];
    loop {
        let image: Vec<usize> = tuple.iter().map(|&q| sigma[q]).collect();
        for (p, &sp) in sigma.iter().enumerate() {
            if a.multiplicity(p, &tuple) != b.multiplicity(sp, &image) {
                return false;
            }
        }
        let Some(i) = (0..tuple.len()).rev().find(|&i| tuple[i] + 1 < n) else {
            return true;
        };
        tuple[i] += 1;
        for t in &mut tuple[i + 1..] {
            *t = 0;
        }
    }
}

/// Tries every bijection between the states of `a` and `b`, in
/// lexicographic order, and returns the first that preserves every
/// multiplicity.
pub fn brute_isomorphic(
    a: &EdgeTreeAutomaton,
    b: &EdgeTreeAutomaton,
) -> Result<Option<Isomorphism>> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch(a.arity(), b.arity()));
    }
    let n = a.num_states();
    if n > BRUTE_MAX_STATES || b.num_states() > BRUTE_MAX_STATES {
        return Err(Error::TooLarge(format!(
            "{n} and {} states, limit is {BRUTE_MAX_STATES}",
            b.num_states()
        )));
    }
    if n != b.num_states() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Isomorphism {
            mapping: Vec::new(),
        }));
    }
    let mut sigma: Vec<usize> = (0..n).collect();
    loop {
        if preserves(a, b, &sigma) {
            return Ok(Some(Isomorphism { mapping: sigma }));
        }
        let Some(i) = (0..n - 1).rev().find(|&i| sigma[i] < sigma[i + 1]) else {
            return Ok(None);
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| sigma[j] > sigma[i])
            .expect("exists");
        sigma.swap(i, j);
        sigma[i + 1..].reverse();
    }
}

struct Extender<'a> {
    d: usize,
    alphabet: usize,
    patterns: &'a [Block<usize>],
    reach: usize,
    memo: HashMap<(Vec<usize>, usize), bool>,
}

impl Extender<'_> {
    fn allowed(&self, b: &Block<usize>) -> bool {
        !self.patterns.iter().any(|f| b.contains(f))
    }

    /// Can the allowed block `b` be extended to an allowed block of height `h`?
    fn extends(&mut self, b: &Block<usize>, h: usize) -> bool {
        if b.height() >= h {
            return true;
        }
        let key = (b.labels().to_vec(), h);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let result = if b.height() >= self.reach {
            // every pattern at the root already lies inside b, so the
            // subtrees below the children extend independently
            (0..self.d).all(|i| {
                let c = b.child(i).expect("height at least 2");
                self.extends(&c, h - 1)
            })
        } else {
            let width = self.d.pow(b.height() as u32);
            let mut level = vec![0usize; width];
            let mut found = false;
            loop {
                let mut labels = b.labels().to_vec();
                labels.extend_from_slice(&level);
                let taller = Block::new(self.d, b.height() + 1, labels).expect("sized");
                if self.allowed(&taller) && self.extends(&taller, h) {
                    found = true;
                    break;
                }
                let Some(i) = (0..width).rev().find(|&i| level[i] + 1 < self.alphabet) else {
                    break;
                };
                level[i] += 1;
                for x in &mut level[i + 1..] {
                    *x = 0;
                }
            }
            found
        };
        self.memo.insert(key, result);
        result
    }
}

/// Height-`h` blocks over the alphabet with no forbidden sub-block that
/// extend to an allowed block of height `h + slack`.
///
/// Extension to a bounded height only approximates occurring in the shift:
/// a block may extend `slack` levels and still die further down.
pub fn brute_blocks(
    p: &SftPresentation,
    h: usize,
    slack: usize,
) -> Result<BTreeSet<Block<String>>> {
    brute_blocks_with_cap(p, h, slack, DEFAULT_BRUTE_CAP)
}

pub fn brute_blocks_with_cap(
    p: &SftPresentation,
    h: usize,
    slack: usize,
    cap: u64,
) -> Result<BTreeSet<Block<String>>> {
    if h == 0 {
        return Err(Error::InvalidHeight);
    }
    let d = p.arity();
    let k = p.alphabet().len();
    let nodes = node_count(d, h).ok_or(Error::InvalidHeight)?;
    if (k as f64).powi(nodes as i32) > cap as f64 {
        return Err(Error::CapExceeded {
            what: "brute-force blocks",
            count: format!("{k}^{nodes}"),
            cap,
        });
    }
    let patterns: Vec<Block<usize>> = p
        .forbidden()
        .iter()
        .map(|b| b.map(|s| p.alphabet().iter().position(|a| a == s).expect("validated")))
        .collect();
    let reach = patterns.iter().map(Block::height).max().unwrap_or(1).max(2);
    let mut ext = Extender {
        d,
        alphabet: k,
        patterns: &patterns,
        reach,
        memo: HashMap::new(),
    };
    let mut out = BTreeSet::new();
    if k == 0 {
        return Ok(out);
    }
    let mut labels = vec![0usize; nodes];
    loop {
        let b = Block::new(d, h, labels.clone())?;
        if ext.allowed(&b) && ext.extends(&b, h + slack) {
            out.insert(b.map(|&i| p.alphabet()[i].clone()));
        }
        let Some(i) = (0..nodes).rev().find(|&i| labels[i] + 1 < k) else {
            break;
        };
        labels[i] += 1;
        for x in &mut labels[i + 1..] {
            *x = 0;
        }
    }
    Ok(out)
}

/// Outcome of [`verify_split_roundtrip`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRoundtripReport {
    pub passed: bool,
    /// State counts after 0, 1, ..., `rounds` splittings.
    pub sizes: Vec<usize>,
    pub original_fixpoint_states: usize,
    pub split_fixpoint_states: usize,
    pub message: String,
}

/// Splits `a` at random `rounds` times and checks, by exhaustive search,
/// that the total amalgamation comes back to that of `a`.
pub fn verify_split_roundtrip(
    a: &EdgeTreeAutomaton,
    rounds: usize,
    seed: u64,
) -> Result<SplitRoundtripReport> {
    if a.is_empty() {
        return Err(Error::Document(
            "split round trip needs a nonempty automaton".into(),
        ));
    }
    if a.num_states() > 6 || rounds > 4 {
        return Err(Error::TooLarge(format!(
            "{} states and {rounds} rounds, limits are 6 and 4",
            a.num_states()
        )));
    }
    let sizes: Vec<usize> = (0..=rounds)
        .map(|r| random_split_walk(a, r, seed).num_states())
        .collect();
    let split = random_split_walk(a, rounds, seed);
    let left = total_amalgamation(a);
    let right = total_amalgamation(&split);
    let (passed, message) = if left.num_states() != right.num_states() {
        (
            false,
            format!(
                "fixpoints have {} and {} states",
                left.num_states(),
                right.num_states()
            ),
        )
    } else {
        match brute_isomorphic(&left, &right) {
            Ok(Some(_)) => (true, "total amalgamations are isomorphic".to_string()),
            Ok(None) => (false, "total amalgamations are not isomorphic".to_string()),
            Err(e) => (false, e.to_string()),
        }
    };
    Ok(SplitRoundtripReport {
        passed,
        sizes,
        original_fixpoint_states: left.num_states(),
        split_fixpoint_states: right.num_states(),
        message,
    })
}
