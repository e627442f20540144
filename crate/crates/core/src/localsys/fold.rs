//! Stallings folding with matrix-valued edges.
//!
//! A graph whose edges are labelled by free generators and carry invertible
//! matrices. Every closed walk at the origin reads an element of the free
//! group and evaluates to a matrix (traversal order, backward edges
//! inverted). Folding two equally labelled edges merges their far ends after
//! a gauge change at the vertex that disappears, so evaluations of closed
//! walks at the origin never change. Two parallel edges with different
//! matrices mean that no representation can take the prescribed values.

use std::collections::HashMap;

use crate::exact::SparseMatrix;
use crate::field::Field;

use super::Letter;

const ORIGIN: usize = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Dir {
    Out,
    In,
}

#[derive(Clone, Debug)]
struct FoldEdge {
    from: usize,
    to: usize,
    label: usize,
    value: SparseMatrix,
    alive: bool,
}

/// Prescribed values are inconsistent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Conflict;

pub(crate) struct FoldGraph {
    field: Field,
    rank: usize,
    labels: usize,
    alive: Vec<bool>,
    adj: Vec<Vec<usize>>,
    edges: Vec<FoldEdge>,
    queue: Vec<usize>,
}

impl FoldGraph {
    pub fn new(field: Field, rank: usize, labels: usize) -> Self {
        FoldGraph {
            field,
            rank,
            labels,
            alive: vec![true],
            adj: vec![Vec::new()],
            edges: Vec::new(),
            queue: Vec::new(),
        }
    }

    fn identity(&self) -> SparseMatrix {
        SparseMatrix::identity(self.field, self.rank)
    }

    fn add_vertex(&mut self) -> usize {
        self.alive.push(true);
        self.adj.push(Vec::new());
        self.alive.len() - 1
    }

    fn add_edge(&mut self, from: usize, to: usize, label: usize, value: SparseMatrix) {
        let e = self.edges.len();
        self.edges.push(FoldEdge {
            from,
            to,
            label,
            value,
            alive: true,
        });
        self.adj[from].push(e);
        if to != from {
            self.adj[to].push(e);
        }
        self.queue.push(from);
        self.queue.push(to);
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    /// Attaches a closed walk reading `word` at `at` whose evaluation is `value`.
    pub fn add_petal(&mut self, at: usize, word: &[Letter], value: &SparseMatrix) -> Result<(), Conflict> {
        if word.is_empty() {
            return if *value == self.identity() { Ok(()) } else { Err(Conflict) };
        }
        let mut prev = at;
        for (i, l) in word.iter().enumerate() {
            let last = i + 1 == word.len();
            let next = if last { at } else { self.add_vertex() };
            let t = match (last, l.inverse) {
                (false, _) => self.identity(),
                (true, false) => value.clone(),
                (true, true) => value.inverse().ok_or(Conflict)?,
            };
            if l.inverse {
                self.add_edge(next, prev, l.generator, t);
            } else {
                self.add_edge(prev, next, l.generator, t);
            }
            prev = next;
        }
        Ok(())
    }

    fn live_edges(&mut self, v: usize) -> Vec<usize> {
        let mut list: Vec<usize> = self.adj[v].iter().copied().filter(|&e| self.edges[e].alive).collect();
        list.sort_unstable();
        list.dedup();
        self.adj[v] = list.clone();
        list
    }

    fn find(&self, v: usize, label: usize, dir: Dir) -> Option<usize> {
        self.adj[v].iter().copied().find(|&e| {
            let edge = &self.edges[e];
            edge.alive
                && edge.label == label
                && match dir {
                    Dir::Out => edge.from == v,
                    Dir::In => edge.to == v,
                }
        })
    }

    pub fn fold(&mut self) -> Result<(), Conflict> {
        while let Some(v) = self.queue.pop() {
            if !self.alive[v] {
                continue;
            }
            while let Some((dir, keep, drop)) = self.duplicate_at(v) {
                self.merge(dir, keep, drop)?;
                if !self.alive[v] {
                    break;
                }
            }
        }
        Ok(())
    }

    fn duplicate_at(&mut self, v: usize) -> Option<(Dir, usize, usize)> {
        let mut seen: HashMap<(usize, Dir), usize> = HashMap::new();
        for e in self.live_edges(v) {
            let edge = &self.edges[e];
            let mut keys = Vec::with_capacity(2);
            if edge.from == v {
                keys.push((edge.label, Dir::Out));
            }
            if edge.to == v {
                keys.push((edge.label, Dir::In));
            }
            for key in keys {
                if let Some(&first) = seen.get(&key) {
                    return Some((key.1, first, e));
                }
                seen.insert(key, e);
            }
        }
        None
    }

    /// Folds `drop` onto `keep`, two edges with the same label leaving
    /// (`Out`) or entering (`In`) a common vertex.
    fn merge(&mut self, dir: Dir, mut keep: usize, mut drop: usize) -> Result<(), Conflict> {
        let far = |g: &FoldGraph, e: usize| match dir {
            Dir::Out => g.edges[e].to,
            Dir::In => g.edges[e].from,
        };
        if far(self, keep) == far(self, drop) {
            if self.edges[keep].value != self.edges[drop].value {
                return Err(Conflict);
            }
            self.edges[drop].alive = false;
            return Ok(());
        }
        if far(self, drop) == ORIGIN {
            std::mem::swap(&mut keep, &mut drop);
        }
        let (tk, td) = (&self.edges[keep].value, &self.edges[drop].value);
        let c = match dir {
            Dir::Out => tk.mul(&td.inverse().ok_or(Conflict)?),
            Dir::In => tk.inverse().ok_or(Conflict)?.mul(td),
        }
        .expect("square matrices");
        let (gone, stays) = (far(self, drop), far(self, keep));
        self.gauge(gone, &c)?;
        debug_assert_eq!(self.edges[drop].label, self.edges[keep].label);
        self.edges[drop].alive = false;
        self.redirect(gone, stays);
        Ok(())
    }

    fn gauge(&mut self, u: usize, c: &SparseMatrix) -> Result<(), Conflict> {
        let cinv = c.inverse().ok_or(Conflict)?;
        for e in self.live_edges(u) {
            let edge = &mut self.edges[e];
            if edge.to == u {
                edge.value = c.mul(&edge.value).expect("square matrices");
            }
            if edge.from == u {
                edge.value = edge.value.mul(&cinv).expect("square matrices");
            }
        }
        Ok(())
    }

    fn redirect(&mut self, u: usize, k: usize) {
        for e in self.live_edges(u) {
            let edge = &mut self.edges[e];
            if edge.from == u {
                edge.from = k;
            }
            if edge.to == u {
                edge.to = k;
            }
            self.adj[k].push(e);
        }
        self.alive[u] = false;
        self.adj[u].clear();
        self.queue.push(k);
    }

    /// Follows `word` from `v` along existing edges.
    fn trace(&self, v: usize, word: &[Letter]) -> Option<usize> {
        let mut at = v;
        for l in word {
            if l.inverse {
                at = self.edges[self.find(at, l.generator, Dir::In)?].from;
            } else {
                at = self.edges[self.find(at, l.generator, Dir::Out)?].to;
            }
        }
        Some(at)
    }

    /// Attaches every relator at every live vertex where it does not already
    /// close up, then folds.
    pub fn attach_relators(&mut self, relators: &[Vec<Letter>]) -> Result<(), Conflict> {
        let id = self.identity();
        let vertices: Vec<usize> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        for v in vertices {
            if !self.alive[v] {
                continue;
            }
            for r in relators {
                if self.trace(v, r) != Some(v) {
                    self.add_petal(v, r, &id)?;
                }
            }
        }
        self.fold()
    }

    /// Values of the loops at the origin when the graph has folded to a single
    /// vertex carrying every label.
    pub fn bouquet(&self) -> Option<Vec<SparseMatrix>> {
        if self.vertex_count() != 1 {
            return None;
        }
        (0..self.labels)
            .map(|g| self.find(ORIGIN, g, Dir::Out).map(|e| self.edges[e].value.clone()))
            .collect()
    }

    /// True when the graph is a finite covering on which every relator closes
    /// up: it is then the coset graph of a subgroup containing the petals.
    pub fn is_complete(&self, relators: &[Vec<Letter>]) -> bool {
        (0..self.alive.len()).filter(|&v| self.alive[v]).all(|v| {
            (0..self.labels).all(|g| self.find(v, g, Dir::Out).is_some() && self.find(v, g, Dir::In).is_some())
                && relators.iter().all(|r| self.trace(v, r) == Some(v))
        })
    }
}
