//! Compiling tree-shifts of finite type into edge tree automata.
//!
//! With forbidden blocks of height at most `k + 1`, the states are the
//! height-`k` blocks containing no forbidden pattern, and every allowed
//! height-`k + 1` block gives one transition from its top `k` levels to the
//! `k`-level blocks under its children. Trimming then leaves exactly the
//! height-`k` blocks that occur in the shift. At arity 1 this is the de
//! Bruijn graph construction.

use std::collections::{BTreeSet, HashMap};

use crate::automaton::{product, EdgeTreeAutomaton};
use crate::block::{node_count, Block};
use crate::error::{Error, Result};

/// Default cap on the number of candidate states or completions.
pub const DEFAULT_STATE_CAP: u64 = 100_000;

/// The cap from `HOMSHIFT_STATE_CAP`, or [`DEFAULT_STATE_CAP`].
pub fn default_state_cap() -> u64 {
    std::env::var("HOMSHIFT_STATE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STATE_CAP)
}

/// Alphabet, arity and forbidden blocks of a tree-shift of finite type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftPresentation {
    arity: usize,
    alphabet: Vec<String>,
    forbidden: Vec<Block<String>>,
}

impl SftPresentation {
    pub fn new<S: Into<String>>(
        arity: usize,
        alphabet: impl IntoIterator<Item = S>,
        forbidden: Vec<Block<String>>,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArity);
        }
        let alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for a in &alphabet {
            if !seen.insert(a.as_str()) {
                return Err(Error::DuplicateState(a.clone()));
            }
        }
        for b in &forbidden {
            if b.arity() != arity {
                return Err(Error::ArityMismatch(arity, b.arity()));
            }
            if let Some(s) = b.labels().iter().find(|s| !seen.contains(s.as_str())) {
                return Err(Error::UnknownSymbol(s.clone()));
            }
        }
        Ok(Self {
            arity,
            alphabet,
            forbidden,
        })
    }

    /// Builds forbidden blocks from level-order label strings, one symbol per
    /// character. Convenient for small examples.
    pub fn from_words(arity: usize, alphabet: &str, forbidden: &[&str]) -> Result<Self> {
        let symbols: Vec<String> = alphabet.chars().map(String::from).collect();
        let blocks = forbidden
            .iter()
            .map(|w| {
                let labels: Vec<String> = w.chars().map(String::from).collect();
                let height = (1..=labels.len())
                    .find(|&h| node_count(arity, h) == Some(labels.len()))
                    .ok_or_else(|| Error::InvalidBlock(format!("`{w}` is not a complete block")))?;
                Block::new(arity, height, labels)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(arity, symbols, blocks)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &[Block<String>] {
        &self.forbidden
    }

    /// Height `k + 1` of the windows: the largest forbidden height, at least 2.
    pub fn window_height(&self) -> usize {
        self.forbidden
            .iter()
            .map(Block::height)
            .max()
            .unwrap_or(0)
            .max(2)
    }

    fn indexed(&self) -> Vec<Block<usize>> {
        self.forbidden
            .iter()
            .map(|b| {
                b.map(|s| {
                    self.alphabet
                        .iter()
                        .position(|a| a == s)
                        .expect("validated")
                })
            })
            .collect()
    }
}

/// Every block of the given height over `0..alphabet`, in lexicographic
/// level order, refusing when there would be more than `cap`.
fn all_blocks(arity: usize, alphabet: usize, height: usize, cap: u64) -> Result<Vec<Vec<usize>>> {
    let nodes = node_count(arity, height).ok_or(Error::InvalidHeight)?;
    let total = (alphabet as f64).powi(nodes as i32);
    if total > cap as f64 {
        return Err(Error::CapExceeded {
            what: "block enumeration",
            count: format!("{alphabet}^{nodes}"),
            cap,
        });
    }
    let choices = vec![(0..alphabet).collect::<Vec<_>>(); nodes];
    Ok(product(&choices))
}

/// Replaces each forbidden block lower than the window by all its
/// completions to the window height, keeping the first occurrence of each.
pub fn normalize_forbidden(p: &SftPresentation) -> Result<SftPresentation> {
    normalize_forbidden_with_cap(p, default_state_cap())
}

pub fn normalize_forbidden_with_cap(p: &SftPresentation, cap: u64) -> Result<SftPresentation> {
    let h = p.window_height();
    let d = p.arity;
    let full = node_count(d, h).ok_or(Error::InvalidHeight)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut produced: u64 = 0;
    for b in &p.forbidden {
        let own = b.labels().len();
        let fill = full - own;
        let count = (p.alphabet.len() as f64).powi(fill as i32);
        produced = produced.saturating_add(count as u64);
        if produced > cap {
            return Err(Error::CapExceeded {
                what: "forbidden block completion",
                count: format!("more than {produced}"),
                cap,
            });
        }
        let indices: Vec<Vec<usize>> = vec![(0..p.alphabet.len()).collect(); fill];
        for tail in product(&indices) {
            let mut labels = b.labels().to_vec();
            labels.extend(tail.iter().map(|&i| p.alphabet[i].clone()));
            let block = Block::new(d, h, labels)?;
            if seen.insert(block.clone()) {
                out.push(block);
            }
        }
    }
    SftPresentation::new(d, p.alphabet.clone(), out)
}

/// A compiled presentation: the trimmed automaton and the block each state
/// stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledSft {
    pub automaton: EdgeTreeAutomaton,
    /// Height `k` of the state blocks.
    pub state_height: usize,
    /// Block of each state, indexed like the automaton's states.
    pub windows: Vec<Block<String>>,
}

impl CompiledSft {
    /// The shift is empty: trimming removed every state.
    pub fn is_empty_shift(&self) -> bool {
        self.automaton.is_empty()
    }
}

/// Compiles `p` with the cap from the environment.
pub fn compile(p: &SftPresentation) -> Result<CompiledSft> {
    compile_with_cap(p, default_state_cap())
}

/// Compiles `p`. Shorter forbidden blocks are matched directly wherever they
/// occur inside a window, which forbids the same trees as replacing them by
/// their completions.
pub fn compile_with_cap(p: &SftPresentation, cap: u64) -> Result<CompiledSft> {
    let d = p.arity;
    let k = p.window_height() - 1;
    let patterns = p.indexed();
    let allowed = |b: &Block<usize>| !patterns.iter().any(|f| b.contains(f));
    let states: Vec<Block<usize>> = all_blocks(d, p.alphabet.len(), k, cap)?
        .into_iter()
        .map(|labels| Block::new(d, k, labels).expect("sized by node_count"))
        .filter(|b| allowed(b))
        .collect();
    // states indexed by their top k - 1 levels
    let mut by_prefix: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, s) in states.iter().enumerate() {
        let key = if k == 1 {
            Vec::new()
        } else {
            s.prefix(k - 1).expect("k > 1").labels().to_vec()
        };
        by_prefix.entry(key).or_default().push(i);
    }
    let single_char = p.alphabet.iter().all(|s| s.chars().count() == 1);
    let name = |b: &Block<usize>| -> String {
        let labels: Vec<&str> = b.labels().iter().map(|&i| p.alphabet[i].as_str()).collect();
        labels.join(if single_char { "" } else { "," })
    };
    let mut a = EdgeTreeAutomaton::new(d, states.iter().map(name))?;
    let top_patterns: Vec<&Block<usize>> =
        patterns.iter().filter(|f| f.height() == k + 1).collect();
    for (i, s) in states.iter().enumerate() {
        let choices: Vec<Vec<usize>> = (0..d)
            .map(|c| {
                let key = if k == 1 {
                    Vec::new()
                } else {
                    s.child(c).expect("k > 1").labels().to_vec()
                };
                by_prefix.get(&key).cloned().unwrap_or_default()
            })
            .collect();
        for tuple in product(&choices) {
            let kids: Vec<Block<usize>> = tuple.iter().map(|&j| states[j].clone()).collect();
            let window = Block::from_root_and_children(*s.root(), &kids)?;
            // lower patterns inside the window were excluded with the states
            if top_patterns.iter().any(|f| window.occurs_at(f, 0, 0)) {
                continue;
            }
            a.set(i, &tuple, 1);
        }
    }
    let trimmed = a.trim();
    let windows = trimmed
        .states()
        .iter()
        .map(|n| {
            let i = a.state_index(n).expect("trim keeps names");
            states[i].map(|&x| p.alphabet[x].clone())
        })
        .collect();
    Ok(CompiledSft {
        automaton: trimmed,
        state_height: k,
        windows,
    })
}

/// Hom constraint of a graph as a presentation: forbid every height-2 block
/// with a root-child pair that is not an edge.
pub fn hom_presentation<G: crate::graph::HomGraph>(g: &G, arity: usize) -> Result<SftPresentation> {
    let n = g.num_vertices();
    let mut forbidden = Vec::new();
    let choices: Vec<Vec<usize>> = vec![(0..n).collect(); arity + 1];
    for labels in product(&choices) {
        let succ = g.successors(labels[0]);
        if labels[1..].iter().all(|q| succ.contains(q)) {
            continue;
        }
        let names: Vec<String> = labels.iter().map(|&v| g.vertices()[v].clone()).collect();
        forbidden.push(Block::new(arity, 2, names)?);
    }
    SftPresentation::new(arity, g.vertices().to_vec(), forbidden)
}
