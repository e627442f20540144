use crate::error::SpecSeqError;
use crate::exact::SparseVec;

use super::filtered::SplitFilteredComplex;

/// Solution of the zig-zag lifting problem for `α ∈ C_p^k` on page `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagWitness {
    /// `β_{p+1} + … + β_{p+r-1}` as one vector of `C^k`.
    pub betas: SparseVec,
    /// `α + β`, an element of `Z_r^p` representing the class of `α`.
    pub lift: SparseVec,
    /// `∂(α + β) ∈ F_{p+r} C^{k+1}`; it represents `d_r[α]`.
    pub image: SparseVec,
    /// The block `p + r` part of `image`:
    /// `∂_r α + ∂_{r-1} β_{p+1} + … + ∂_1 β_{p+r-1}`.
    pub leading: SparseVec,
}

impl SplitFilteredComplex {
    /// Decides whether `α ∈ C_p^k` defines a class in `E_r` by solving
    /// `D_{r-1} α + D_{r-2} β_{p+1} + … + D_0 β_{p+r-1} = 0`, and if so returns
    /// the lift and the image of `d_r`. `None` when the system has no solution.
    pub fn zigzag(&self, r: usize, p: usize, k: i64, alpha: &SparseVec) -> Result<Option<ZigzagWitness>, SpecSeqError> {
        let c = self.complex();
        if alpha.dim() != c.dim(k) {
            return Err(SpecSeqError::Support(format!(
                "vector has length {} but C^{k} has dimension {}",
                alpha.dim(),
                c.dim(k)
            )));
        }
        if let Some((i, _)) = alpha.entries().iter().find(|(i, _)| self.block_in_degree(k, *i) != p) {
            return Err(SpecSeqError::Support(format!(
                "entry {} lies in block {}, not {p}",
                c.basis().generator(c.basis().in_degree(k)[*i]).id,
                self.block_in_degree(k, *i)
            )));
        }
        let d = c.d(k);
        let d_alpha = d.mul_vec(alpha)?;
        // rows that must vanish: blocks p ..= p+r-1 of degree k+1
        let rows = self.positions(k + 1, |b| b >= p && b < p + r);
        let cols = self.positions(k, |b| b > p && b < p + r);
        let system = d.submatrix(&rows, &cols);
        let rhs = SparseVec::from_entries(
            c.field(),
            rows.len(),
            rows.iter().enumerate().map(|(n, &i)| (n, c.field().neg(&d_alpha.get(c.field(), i)))),
        )?;
        let Some(solution) = system.solve(&rhs)? else {
            return Ok(None);
        };
        let betas = solution.reindexed(c.dim(k), |n| cols[n]);
        let lift = alpha.add(c.field(), &betas);
        let image = d.mul_vec(&lift)?;
        let leading = self.restrict(k + 1, &image, |b| b == p + r);
        debug_assert!(self.restrict(k + 1, &image, |b| b < p + r).is_zero());
        Ok(Some(ZigzagWitness {
            betas,
            lift,
            image,
            leading,
        }))
    }
}
