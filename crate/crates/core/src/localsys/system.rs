use crate::error::LocalSystemError;
use crate::exact::SparseMatrix;
use crate::field::Field;

use super::{BaseGraph, Letter, Path};

/// A local system of `rank`-dimensional vector spaces over a base graph: an
/// invertible transport matrix per edge, trivial around every relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystem {
    base: BaseGraph,
    field: Field,
    rank: usize,
    transports: Vec<SparseMatrix>,
    inverses: Vec<SparseMatrix>,
}

/// Monodromy at a base point: the free generators of the graph's
/// fundamental group and their transports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monodromy {
    pub base_point: usize,
    pub generators: Vec<Path>,
    pub images: Vec<SparseMatrix>,
}

impl LocalSystem {
    /// Checks shapes, invertibility and triviality around every relation.
    pub fn new(
        base: BaseGraph,
        field: Field,
        rank: usize,
        transports: Vec<SparseMatrix>,
    ) -> Result<Self, LocalSystemError> {
        let ls = LocalSystem::raw(base, field, rank, transports)?;
        if let Err(word) = ls.check_homotopy_invariance() {
            return Err(LocalSystemError::HomotopyViolated {
                word: ls.base.describe(&word),
            });
        }
        Ok(ls)
    }

    /// Like [`Self::new`] but without the relation check, so that
    /// [`Self::check_homotopy_invariance`] can report on it.
    pub fn raw(
        base: BaseGraph,
        field: Field,
        rank: usize,
        transports: Vec<SparseMatrix>,
    ) -> Result<Self, LocalSystemError> {
        if transports.len() != base.edges().len() {
            let missing = base.edges().get(transports.len()).map(|e| e.id.clone()).unwrap_or_default();
            return Err(LocalSystemError::BadTransport(missing));
        }
        let mut inverses = Vec::with_capacity(transports.len());
        for (e, m) in base.edges().iter().zip(&transports) {
            if m.field() != field {
                return Err(LocalSystemError::FieldMismatch);
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(LocalSystemError::BadTransport(e.id.clone()));
            }
            inverses.push(m.inverse().ok_or_else(|| LocalSystemError::BadTransport(e.id.clone()))?);
        }
        Ok(LocalSystem {
            base,
            field,
            rank,
            transports,
            inverses,
        })
    }

    /// Identity transport on every edge.
    pub fn trivial(base: BaseGraph, field: Field, rank: usize) -> Self {
        let id = SparseMatrix::identity(field, rank);
        let n = base.edges().len();
        LocalSystem {
            base,
            field,
            rank,
            transports: vec![id.clone(); n],
            inverses: vec![id; n],
        }
    }

    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edge_transport(&self, e: usize) -> &SparseMatrix {
        &self.transports[e]
    }

    pub fn edge_transports(&self) -> &[SparseMatrix] {
        &self.transports
    }

    /// `Φ_w`: the edge transports composed in traversal order, inverted on
    /// backward steps.
    pub fn transport(&self, path: &Path) -> Result<SparseMatrix, LocalSystemError> {
        let checked = self.base.path(path.start(), path.steps().to_vec())?;
        let mut m = SparseMatrix::identity(self.field, self.rank);
        for s in checked.steps() {
            let t = if s.inverse {
                &self.inverses[s.edge]
            } else {
                &self.transports[s.edge]
            };
            m = t.mul(&m)?;
        }
        Ok(m)
    }

    /// `Ok` if every relation transports to the identity, otherwise the
    /// first relation that does not.
    pub fn check_homotopy_invariance(&self) -> Result<(), Path> {
        let id = SparseMatrix::identity(self.field, self.rank);
        for r in self.base.relations() {
            if self.transport(r).as_ref() != Ok(&id) {
                return Err(r.clone());
            }
        }
        Ok(())
    }

    /// Transports of the free generators of the graph group at `base_point`.
    pub fn monodromy(&self, base_point: usize) -> Result<Monodromy, LocalSystemError> {
        let tree = self.base.spanning_tree(base_point)?;
        let generators = self.base.generator_loops(&tree);
        let images = generators
            .iter()
            .map(|g| self.transport(g))
            .collect::<Result<_, _>>()?;
        Ok(Monodromy {
            base_point,
            generators,
            images,
        })
    }
}

/// Transport of a word in the free generators, given their images.
pub(crate) fn evaluate(
    field: Field,
    rank: usize,
    images: &[SparseMatrix],
    inverses: &[SparseMatrix],
    word: &[Letter],
) -> SparseMatrix {
    let mut m = SparseMatrix::identity(field, rank);
    for l in word {
        let t = if l.inverse {
            &inverses[l.generator]
        } else {
            &images[l.generator]
        };
        m = t.mul(&m).expect("square matrices of the fiber rank");
    }
    m
}
