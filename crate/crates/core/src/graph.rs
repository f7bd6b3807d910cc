//! Simple graphs defining Hom shifts, and their edge tree automata.

use std::collections::{BTreeSet, HashMap};

use crate::automaton::{tuples_over, EdgeTreeAutomaton};
use crate::error::{Error, Result};

/// Common view of undirected and directed simple graphs.
pub trait HomGraph {
    fn vertices(&self) -> &[String];

    /// Vertices `q` such that a child labelled `q` may follow a parent
    /// labelled `p`, in increasing index order.
    fn successors(&self, p: usize) -> Vec<usize>;

    fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices().iter().position(|v| v == name)
    }

    /// The edge tree automaton of the Hom tree-shift: one transition from `p`
    /// to every tuple of successors of `p`.
    fn hom_automaton(&self, arity: usize) -> Result<EdgeTreeAutomaton> {
        let mut a = EdgeTreeAutomaton::new(arity, self.vertices().iter().cloned())?;
        for p in 0..self.num_vertices() {
            for t in tuples_over(&self.successors(p), arity) {
                a.set(p, &t, 1);
            }
        }
        Ok(a)
    }

    /// The arity-1 adjacency automaton, used for isomorphism testing.
    fn adjacency_automaton(&self) -> EdgeTreeAutomaton {
        self.hom_automaton(1).expect("arity 1 is valid")
    }
}

fn index_names(vertices: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        if index.insert(v.as_str(), i).is_some() {
            return Err(Error::DuplicateVertex(v.clone()));
        }
    }
    Ok(index)
}

/// Simple undirected graph; loops allowed, stored as `(u, v)` with `u <= v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        index_names(&vertices)?;
        Ok(Self {
            vertices,
            edges: BTreeSet::new(),
        })
    }

    /// Builds a graph from named edges. An unordered pair may appear once.
    pub fn from_edges<'a, S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut g = Self::new(vertices)?;
        let index = index_names(&g.vertices)?;
        let mut pairs = Vec::new();
        for (u, v) in edges {
            let iu = *index.get(u).ok_or_else(|| Error::UnknownVertex(u.into()))?;
            let iv = *index.get(v).ok_or_else(|| Error::UnknownVertex(v.into()))?;
            pairs.push((iu, iv, u, v));
        }
        for (iu, iv, u, v) in pairs {
            if !g.add_edge(iu, iv) {
                return Err(Error::DuplicateEdge(format!("{{{u},{v}}}")));
            }
        }
        Ok(g)
    }

    /// Adds `{u, v}`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.vertices.len() && v < self.vertices.len());
        self.edges.insert((u.min(v), u.max(v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Edges as index pairs `(u, v)` with `u <= v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// Each edge becomes two opposite arcs, and a loop stays a single loop.
    pub fn underlying_directed(&self) -> DirectedSimpleGraph {
        let mut g = DirectedSimpleGraph {
            vertices: self.vertices.clone(),
            arcs: BTreeSet::new(),
        };
        for &(u, v) in &self.edges {
            g.arcs.insert((u, v));
            g.arcs.insert((v, u));
        }
        g
    }
}

impl HomGraph for UndirectedGraph {
    fn vertices(&self) -> &[String] {
        &self.vertices
    }

    fn successors(&self, p: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&q| self.has_edge(p, q))
            .collect()
    }
}

/// Simple directed graph; loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedSimpleGraph {
    vertices: Vec<String>,
    arcs: BTreeSet<(usize, usize)>,
}

impl DirectedSimpleGraph {
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        index_names(&vertices)?;
        Ok(Self {
            vertices,
            arcs: BTreeSet::new(),
        })
    }

    pub fn from_arcs<'a, S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        arcs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut g = Self::new(vertices)?;
        let index = index_names(&g.vertices)?;
        let mut pairs = Vec::new();
        for (u, v) in arcs {
            let iu = *index.get(u).ok_or_else(|| Error::UnknownVertex(u.into()))?;
            let iv = *index.get(v).ok_or_else(|| Error::UnknownVertex(v.into()))?;
            pairs.push((iu, iv, u, v));
        }
        for (iu, iv, u, v) in pairs {
            if !g.add_arc(iu, iv) {
                return Err(Error::DuplicateEdge(format!("({u},{v})")));
            }
        }
        Ok(g)
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.vertices.len() && v < self.vertices.len());
        self.arcs.insert((u, v))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Removes, until none is left, every vertex without outgoing arcs.
    /// Such vertices never label a node of an infinite tree.
    pub fn trimmed(&self) -> Self {
        let n = self.vertices.len();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for p in 0..n {
                if alive[p] && !self.arcs.iter().any(|&(u, v)| u == p && alive[v]) {
                    alive[p] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut new_index = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for p in (0..n).filter(|&p| alive[p]) {
            new_index[p] = vertices.len();
            vertices.push(self.vertices[p].clone());
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| alive[u] && alive[v])
            .map(|&(u, v)| (new_index[u], new_index[v]))
            .collect();
        Self { vertices, arcs }
    }
}

impl HomGraph for DirectedSimpleGraph {
    fn vertices(&self) -> &[String] {
        &self.vertices
    }

    fn successors(&self, p: usize) -> Vec<usize> {
        self.arcs
            .range((p, 0)..(p + 1, 0))
            .map(|&(_, v)| v)
            .collect()
    }
}
