//! Local coefficient systems over a combinatorial base.
//!
//! The base is a finite graph (vertices, oriented edges) together with a list
//! of closed edge-words declared null-homotopic; its fundamental group is the
//! free group on the edges outside a spanning tree modulo those words.
//!
//! Transport follows one convention throughout: for a path `α·β` that runs
//! along `α` first, `Φ_{α·β} = Φ_β ∘ Φ_α`.

mod fold;
mod subsystem;
mod system;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::LocalSystemError;

pub use subsystem::{extend_subsystem, extend_subsystem_at, LocalSubsystem, MonodromyReport, Surjectivity};
pub use system::{LocalSystem, Monodromy};

/// Default number of relator rounds when deciding surjectivity of monodromy.
pub const DEFAULT_SEARCH_DEPTH: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

/// One letter of an edge-word: an edge, traversed backwards if `inverse`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: usize,
    pub inverse: bool,
}

impl Step {
    pub fn forward(edge: usize) -> Self {
        Step { edge, inverse: false }
    }

    pub fn backward(edge: usize) -> Self {
        Step { edge, inverse: true }
    }

    pub fn flipped(self) -> Self {
        Step {
            edge: self.edge,
            inverse: !self.inverse,
        }
    }
}

/// A composable edge-word with its endpoints (vertex indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    start: usize,
    end: usize,
    steps: Vec<Step>,
}

impl Path {
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_constant(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }

    pub fn inverse(&self) -> Path {
        Path {
            start: self.end,
            end: self.start,
            steps: self.steps.iter().rev().map(|s| s.flipped()).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Path) -> Result<Path, LocalSystemError> {
        if self.end != other.start {
            return Err(LocalSystemError::NotComposable { step: self.steps.len() });
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Path {
            start: self.start,
            end: other.end,
            steps,
        })
    }

    /// Cancels adjacent `e e⁻¹` pairs.
    pub fn reduced(&self) -> Path {
        let mut steps: Vec<Step> = Vec::with_capacity(self.steps.len());
        for &s in &self.steps {
            if steps.last() == Some(&s.flipped()) {
                steps.pop();
            } else {
                steps.push(s);
            }
        }
        Path {
            start: self.start,
            end: self.end,
            steps,
        }
    }
}

/// Vertices, oriented edges and null-homotopic relation words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    relations: Vec<Path>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl BaseGraph {
    /// `edges` are `(id, from, to)`; relations are edge-words such as
    /// `"a b a^-1 b^-1"` and must be closed.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
        relations: &[String],
    ) -> Result<Self, LocalSystemError> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(LocalSystemError::DuplicateId(v.clone()));
            }
        }
        let mut edge_index = HashMap::new();
        let mut es = Vec::with_capacity(edges.len());
        for (i, (id, from, to)) in edges.into_iter().enumerate() {
            if edge_index.insert(id.clone(), i).is_some() || vertex_index.contains_key(&id) {
                return Err(LocalSystemError::DuplicateId(id));
            }
            let from = *vertex_index.get(&from).ok_or(LocalSystemError::UnknownVertex(from))?;
            let to = *vertex_index.get(&to).ok_or(LocalSystemError::UnknownVertex(to))?;
            es.push(Edge { id, from, to });
        }
        let mut graph = BaseGraph {
            vertices,
            edges: es,
            relations: Vec::new(),
            vertex_index,
            edge_index,
        };
        for (i, text) in relations.iter().enumerate() {
            let word = graph.parse_word(text)?;
            if !word.is_loop() {
                return Err(LocalSystemError::OpenRelation(i));
            }
            graph.relations.push(word);
        }
        Ok(graph)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn vertex(&self, id: &str) -> Result<usize, LocalSystemError> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| LocalSystemError::UnknownVertex(id.to_string()))
    }

    pub fn edge(&self, id: &str) -> Result<usize, LocalSystemError> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| LocalSystemError::UnknownEdge(id.to_string()))
    }

    fn step_ends(&self, s: Step) -> (usize, usize) {
        let e = &self.edges[s.edge];
        if s.inverse {
            (e.to, e.from)
        } else {
            (e.from, e.to)
        }
    }

    pub fn constant(&self, v: usize) -> Path {
        Path {
            start: v,
            end: v,
            steps: Vec::new(),
        }
    }

    /// Checks that consecutive steps meet and returns the path from `start`.
    pub fn path(&self, start: usize, steps: Vec<Step>) -> Result<Path, LocalSystemError> {
        if start >= self.vertices.len() {
            return Err(LocalSystemError::UnknownVertex(start.to_string()));
        }
        let mut at = start;
        for (i, s) in steps.iter().enumerate() {
            if s.edge >= self.edges.len() {
                return Err(LocalSystemError::UnknownEdge(s.edge.to_string()));
            }
            let (a, b) = self.step_ends(*s);
            if a != at {
                return Err(LocalSystemError::NotComposable { step: i });
            }
            at = b;
        }
        Ok(Path { start, end: at, steps })
    }

    fn parse_steps(&self, text: &str) -> Result<Vec<Step>, LocalSystemError> {
        text.split_whitespace()
            .map(|tok| {
                let (id, inverse) = match tok.strip_suffix("^-1") {
                    Some(id) => (id, true),
                    None => (tok, false),
                };
                Ok(Step {
                    edge: self.edge(id)?,
                    inverse,
                })
            })
            .collect()
    }

    /// Parses a non-empty whitespace-separated word; each token is an edge id,
    /// optionally followed by `^-1`. The start is read off the first step.
    pub fn parse_word(&self, text: &str) -> Result<Path, LocalSystemError> {
        let steps = self.parse_steps(text)?;
        let Some(first) = steps.first() else {
            return Err(LocalSystemError::NotComposable { step: 0 });
        };
        let start = self.step_ends(*first).0;
        self.path(start, steps)
    }

    /// As [`Self::parse_word`] with an explicit start vertex; the empty word is
    /// the constant path there.
    pub fn parse_word_at(&self, start: &str, text: &str) -> Result<Path, LocalSystemError> {
        let start = self.vertex(start)?;
        self.path(start, self.parse_steps(text)?)
    }

    /// Inverse of [`Self::parse_word_at`]; constant paths print as `""`.
    pub fn format_word(&self, path: &Path) -> String {
        path.steps
            .iter()
            .map(|s| {
                let id = &self.edges[s.edge].id;
                if s.inverse {
                    format!("{id}^-1")
                } else {
                    id.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Human-readable form that also shows the start of constant paths.
    pub fn describe(&self, path: &Path) -> String {
        if path.is_constant() {
            format!("constant path at {}", self.vertices[path.start])
        } else {
            self.format_word(path)
        }
    }

    /// Breadth-first spanning tree rooted at `root`, exploring edges in
    /// declaration order. Fails if some vertex is unreachable.
    pub fn spanning_tree(&self, root: usize) -> Result<SpanningTree, LocalSystemError> {
        let n = self.vertices.len();
        let mut incident: Vec<Vec<Step>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.from].push(Step::forward(i));
            incident[e.to].push(Step::backward(i));
        }
        let mut parent: Vec<Option<Step>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; self.edges.len()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &s in &incident[v] {
                let (_, w) = self.step_ends(s);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(s);
                    in_tree[s.edge] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(LocalSystemError::DisconnectedBase);
        }
        let generators: Vec<usize> = (0..self.edges.len()).filter(|&e| !in_tree[e]).collect();
        let mut generator_of = vec![None; self.edges.len()];
        for (g, &e) in generators.iter().enumerate() {
            generator_of[e] = Some(g);
        }
        Ok(SpanningTree {
            root,
            parent,
            generators,
            generator_of,
        })
    }

    /// The tree path from the root to `v`.
    pub fn tree_path(&self, tree: &SpanningTree, v: usize) -> Path {
        let mut steps = Vec::new();
        let mut at = v;
        while let Some(s) = tree.parent[at] {
            steps.push(s);
            at = self.step_ends(s).0;
        }
        steps.reverse();
        Path {
            start: tree.root,
            end: v,
            steps,
        }
    }

    /// Loops `τ_a · e · τ_b⁻¹` at the root, one per edge outside the tree;
    /// they freely generate the fundamental group of the graph.
    pub fn generator_loops(&self, tree: &SpanningTree) -> Vec<Path> {
        tree.generators
            .iter()
            .map(|&e| {
                let edge = &self.edges[e];
                let step = Path {
                    start: edge.from,
                    end: edge.to,
                    steps: vec![Step::forward(e)],
                };
                self.tree_path(tree, edge.from)
                    .then(&step)
                    .and_then(|p| p.then(&self.tree_path(tree, edge.to).inverse()))
                    .expect("tree paths compose")
                    .reduced()
            })
            .collect()
    }

    /// Rewrites a path as a word in the generators of `tree` (tree edges drop
    /// out), freely reduced.
    pub(crate) fn rewrite(&self, tree: &SpanningTree, path: &Path) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::new();
        for s in &path.steps {
            if let Some(g) = tree.generator_of[s.edge] {
                let l = Letter {
                    generator: g,
                    inverse: s.inverse,
                };
                if out.last() == Some(&l.flipped()) {
                    out.pop();
                } else {
                    out.push(l);
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.spanning_tree(0).is_ok()
    }
}

impl fmt::Display for BaseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph with {} vertices, {} edges, {} relations",
            self.vertices.len(),
            self.edges.len(),
            self.relations.len()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<Option<Step>>,
    generators: Vec<usize>,
    generator_of: Vec<Option<usize>>,
}

impl SpanningTree {
    pub fn root(&self) -> usize {
        self.root
    }

    /// Edges outside the tree, in declaration order.
    pub fn generator_edges(&self) -> &[usize] {
        &self.generators
    }
}

/// A letter of the free group on the non-tree edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn flipped(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

#[cfg(test)]
mod tests;
