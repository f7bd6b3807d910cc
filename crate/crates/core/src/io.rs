//! JSON interchange documents.
//!
//! ```json
//! {"kind":"automaton","arity":2,"states":["a","b"],
//!  "transitions":[{"from":"a","children":["a","b"],"count":1}]}
//! {"kind":"undirected-graph","vertices":["a","b"],"edges":[["a","a"],["a","b"]]}
//! {"kind":"directed-graph","vertices":["a","b"],"edges":[["a","b"],["b","a"]]}
//! {"kind":"sft","arity":1,"alphabet":["a","b"],
//!  "forbidden":[{"height":2,"labels":["b","b"]}]}
//! ```
//!
//! Transitions list positive counts only. Undirected edges are listed once,
//! with the lexicographically smaller endpoint first.

use serde::{Deserialize, Serialize};

use crate::automaton::EdgeTreeAutomaton;
use crate::block::Block;
use crate::compiler::SftPresentation;
use crate::error::{Error, Result};
use crate::graph::{DirectedSimpleGraph, HomGraph, UndirectedGraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub from: String,
    pub children: Vec<String>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub height: usize,
    pub labels: Vec<String>,
}

/// Optional provenance, written only on request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Automaton {
        arity: usize,
        states: Vec<String>,
        transitions: Vec<TransitionDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        meta: Option<Meta>,
    },
    UndirectedGraph {
        vertices: Vec<String>,
        edges: Vec<[String; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        meta: Option<Meta>,
    },
    DirectedGraph {
        vertices: Vec<String>,
        edges: Vec<[String; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        meta: Option<Meta>,
    },
    Sft {
        arity: usize,
        alphabet: Vec<String>,
        forbidden: Vec<BlockDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        meta: Option<Meta>,
    },
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Automaton { .. } => "automaton",
            Self::UndirectedGraph { .. } => "undirected-graph",
            Self::DirectedGraph { .. } => "directed-graph",
            Self::Sft { .. } => "sft",
        }
    }

    pub fn with_meta(mut self, m: Meta) -> Self {
        match &mut self {
            Self::Automaton { meta, .. }
            | Self::UndirectedGraph { meta, .. }
            | Self::DirectedGraph { meta, .. }
            | Self::Sft { meta, .. } => *meta = Some(m),
        }
        self
    }

    fn expected(&self, want: &str) -> Error {
        Error::Document(format!("expected a {want} document, found {}", self.kind()))
    }

    pub fn to_automaton(&self) -> Result<EdgeTreeAutomaton> {
        let Self::Automaton {
            arity,
            states,
            transitions,
            ..
        } = self
        else {
            return Err(self.expected("automaton"));
        };
        EdgeTreeAutomaton::from_transitions(
            *arity,
            states.iter().cloned(),
            transitions.iter().map(|t| {
                (
                    t.from.as_str(),
                    t.children.iter().map(String::as_str).collect(),
                    t.count,
                )
            }),
        )
    }

    pub fn to_undirected_graph(&self) -> Result<UndirectedGraph> {
        let Self::UndirectedGraph {
            vertices, edges, ..
        } = self
        else {
            return Err(self.expected("undirected-graph"));
        };
        UndirectedGraph::from_edges(
            vertices.iter().cloned(),
            edges.iter().map(|[u, v]| (u.as_str(), v.as_str())),
        )
    }

    pub fn to_directed_graph(&self) -> Result<DirectedSimpleGraph> {
        let Self::DirectedGraph {
            vertices, edges, ..
        } = self
        else {
            return Err(self.expected("directed-graph"));
        };
        DirectedSimpleGraph::from_arcs(
            vertices.iter().cloned(),
            edges.iter().map(|[u, v]| (u.as_str(), v.as_str())),
        )
    }

    pub fn to_sft(&self) -> Result<SftPresentation> {
        let Self::Sft {
            arity,
            alphabet,
            forbidden,
            ..
        } = self
        else {
            return Err(self.expected("sft"));
        };
        let blocks = forbidden
            .iter()
            .map(|b| Block::new(*arity, b.height, b.labels.clone()))
            .collect::<Result<Vec<_>>>()?;
        SftPresentation::new(*arity, alphabet.iter().cloned(), blocks)
    }
}

impl From<&EdgeTreeAutomaton> for Document {
    fn from(a: &EdgeTreeAutomaton) -> Self {
        let transitions = a
            .transitions()
            .map(|(p, t, m)| TransitionDoc {
                from: a.state_name(p).to_string(),
                children: t.iter().map(|&q| a.state_name(q).to_string()).collect(),
                count: m,
            })
            .collect();
        Self::Automaton {
            arity: a.arity(),
            states: a.states().to_vec(),
            transitions,
            meta: None,
        }
    }
}

impl From<&UndirectedGraph> for Document {
    fn from(g: &UndirectedGraph) -> Self {
        let names = g.vertices();
        let mut edges: Vec<[String; 2]> = g
            .edges()
            .map(|(u, v)| {
                let (a, b) = (names[u].clone(), names[v].clone());
                if a <= b {
                    [a, b]
                } else {
                    [b, a]
                }
            })
            .collect();
        edges.sort();
        Self::UndirectedGraph {
            vertices: names.to_vec(),
            edges,
            meta: None,
        }
    }
}

impl From<&DirectedSimpleGraph> for Document {
    fn from(g: &DirectedSimpleGraph) -> Self {
        let names = g.vertices();
        let edges = g
            .arcs()
            .map(|(u, v)| [names[u].clone(), names[v].clone()])
            .collect();
        Self::DirectedGraph {
            vertices: names.to_vec(),
            edges,
            meta: None,
        }
    }
}

impl From<&SftPresentation> for Document {
    fn from(p: &SftPresentation) -> Self {
        Self::Sft {
            arity: p.arity(),
            alphabet: p.alphabet().to_vec(),
            forbidden: p
                .forbidden()
                .iter()
                .map(|b| BlockDoc {
                    height: b.height(),
                    labels: b.labels().to_vec(),
                })
                .collect(),
            meta: None,
        }
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of an undirected graph.
pub fn undirected_dot(g: &UndirectedGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        out.push_str(&format!("  {};\n", dot_id(v)));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!(
            "  {} -- {};\n",
            dot_id(&g.vertices()[u]),
            dot_id(&g.vertices()[v])
        ));
    }
    out.push_str("}\n");
    out
}

/// Graphviz rendering of a directed graph.
pub fn directed_dot(g: &DirectedSimpleGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        out.push_str(&format!("  {};\n", dot_id(v)));
    }
    for (u, v) in g.arcs() {
        out.push_str(&format!(
            "  {} -> {};\n",
            dot_id(&g.vertices()[u]),
            dot_id(&g.vertices()[v])
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn automaton_round_trip() {
        let a = catalog::directed_example();
        let doc = Document::from(&a);
        let back = Document::parse(&doc.to_json()).unwrap();
        assert_eq!(back.to_automaton().unwrap(), a);
    }

    #[test]
    fn schema_matches_interchange_format() {
        let text = r#"{"kind":"automaton","arity":1,"states":["a","b"],
            "transitions":[{"from":"a","children":["a"],"count":1},
                           {"from":"a","children":["b"],"count":1},
                           {"from":"b","children":["a"],"count":1}]}"#;
        let a = Document::parse(text).unwrap().to_automaton().unwrap();
        assert_eq!(a.to_matrix().unwrap(), vec![vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn graphs_round_trip() {
        let g = catalog::sequence_example_hom_graph();
        let doc = Document::from(&g);
        assert_eq!(
            Document::parse(&doc.to_json())
                .unwrap()
                .to_undirected_graph()
                .unwrap(),
            g
        );
        let d = catalog::directed_example_graph();
        let doc = Document::from(&d);
        let back = Document::parse(&doc.to_json())
            .unwrap()
            .to_directed_graph()
            .unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn undirected_edges_listed_smaller_first() {
        let g = UndirectedGraph::from_edges(["b", "a"], [("b", "a")]).unwrap();
        let Document::UndirectedGraph { edges, .. } = Document::from(&g) else {
            unreachable!()
        };
        assert_eq!(edges, vec![["a".to_string(), "b".to_string()]]);
    }

    #[test]
    fn sft_round_trip() {
        let p = catalog::golden_mean_tree_sft();
        let back = Document::parse(&Document::from(&p).to_json())
            .unwrap()
            .to_sft()
            .unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(Document::parse(r#"{"kind":"automaton","arity":1}"#).is_err());
        let zero = r#"{"kind":"automaton","arity":1,"states":["a"],
            "transitions":[{"from":"a","children":["a"],"count":0}]}"#;
        assert!(matches!(
            Document::parse(zero).unwrap().to_automaton(),
            Err(Error::ZeroCount)
        ));
        let unknown = r#"{"kind":"automaton","arity":1,"states":["a"],
            "transitions":[{"from":"a","children":["z"],"count":1}]}"#;
        assert!(Document::parse(unknown).unwrap().to_automaton().is_err());
        let graph = Document::from(&catalog::golden_mean_graph());
        assert!(matches!(graph.to_automaton(), Err(Error::Document(_))));
    }

    #[test]
    fn meta_is_optional() {
        let doc = Document::from(&catalog::golden_mean_sequences());
        assert!(!doc.to_json().contains("meta"));
        let with = doc.with_meta(Meta {
            tool: "homshift".into(),
            version: "0.1.0".into(),
            command: vec!["trim".into()],
        });
        assert!(Document::parse(&with.to_json())
            .unwrap()
            .to_automaton()
            .is_ok());
    }
}
