//! Finite cochain complexes with a degree +1 differential, chain maps, and
//! cohomology with canonical representatives.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};

use crate::error::ComplexError;
use crate::exact::{SparseMatrix, SparseVec, Subquotient, Subspace};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(id: impl Into<String>, degree: i64) -> Self {
        Generator {
            id: id.into(),
            degree,
        }
    }
}

/// Generators with integer degrees. Within a degree, generators keep the order
/// in which they were listed; that order fixes the coordinates of `C^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    generators: Vec<Generator>,
    by_id: HashMap<String, usize>,
    per_degree: BTreeMap<i64, Vec<usize>>,
    local: Vec<usize>,
}

impl GradedBasis {
    pub fn new(generators: Vec<Generator>) -> Result<Self, ComplexError> {
        let mut by_id = HashMap::with_capacity(generators.len());
        let mut per_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut local = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if by_id.insert(g.id.clone(), i).is_some() {
                return Err(ComplexError::DuplicateGenerator(g.id.clone()));
            }
            let slot = per_degree.entry(g.degree).or_default();
            local.push(slot.len());
            slot.push(i);
        }
        Ok(GradedBasis {
            generators,
            by_id,
            per_degree,
            local,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    /// Global indices of the generators of degree `k`, in coordinate order.
    pub fn in_degree(&self, k: i64) -> &[usize] {
        self.per_degree.get(&k).map_or(&[], Vec::as_slice)
    }

    /// Position of generator `i` inside its degree.
    pub fn local_index(&self, i: usize) -> usize {
        self.local[i]
    }

    pub fn dim(&self, k: i64) -> usize {
        self.in_degree(k).len()
    }

    /// Degrees carrying at least one generator, increasing.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.per_degree.keys().copied()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = *self.per_degree.keys().next()?;
        let hi = *self.per_degree.keys().next_back()?;
        Some((lo, hi))
    }
}

/// A finite cochain complex `(C^*, d)` with `d: C^k -> C^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    field: Field,
    basis: GradedBasis,
    /// Nonzero blocks only.
    blocks: BTreeMap<i64, SparseMatrix>,
    display_shift: i64,
}

impl CochainComplex {
    /// Builds a complex from per-degree blocks `d^k` of shape
    /// `dim C^{k+1} x dim C^k`, checking `d^{k+1} d^k = 0`.
    pub fn new(
        field: Field,
        basis: GradedBasis,
        blocks: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        let mut kept = BTreeMap::new();
        for (k, m) in blocks {
            if m.field() != field {
                return Err(ComplexError::FieldMismatch);
            }
            if m.cols() != basis.dim(k) || m.rows() != basis.dim(k + 1) {
                return Err(ComplexError::BlockShape { degree: k });
            }
            if !m.is_zero() {
                kept.insert(k, m);
            }
        }
        let complex = CochainComplex {
            field,
            basis,
            blocks: kept,
            display_shift: 0,
        };
        complex.check_square_zero()?;
        Ok(complex)
    }

    /// Builds a complex from global entries `(source, target, coefficient)`:
    /// `coefficient` is the coordinate of generator `target` in `d(source)`.
    pub fn from_entries(
        field: Field,
        basis: GradedBasis,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self, ComplexError> {
        let mut triplets: BTreeMap<i64, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
        for (s, t, a) in entries {
            let (gs, gt) = (basis.generator(s), basis.generator(t));
            if gt.degree != gs.degree + 1 {
                return Err(ComplexError::DegreeJump {
                    source_id: gs.id.clone(),
                    target_id: gt.id.clone(),
                });
            }
            triplets
                .entry(gs.degree)
                .or_default()
                .push((basis.local_index(t), basis.local_index(s), a));
        }
        let mut blocks = BTreeMap::new();
        for (k, ts) in triplets {
            let m = SparseMatrix::from_triplets(field, basis.dim(k + 1), basis.dim(k), ts)?;
            blocks.insert(k, m);
        }
        CochainComplex::new(field, basis, blocks)
    }

    /// Same as [`Self::from_entries`] with generators named by id.
    pub fn from_id_entries(
        field: Field,
        generators: Vec<Generator>,
        entries: impl IntoIterator<Item = (String, String, Scalar)>,
    ) -> Result<Self, ComplexError> {
        let basis = GradedBasis::new(generators)?;
        let mut resolved = Vec::new();
        for (s, t, a) in entries {
            let si = basis.index_of(&s).ok_or(ComplexError::UnknownGenerator(s))?;
            let ti = basis.index_of(&t).ok_or(ComplexError::UnknownGenerator(t))?;
            resolved.push((si, ti, a));
        }
        CochainComplex::from_entries(field, basis, resolved)
    }

    pub fn zero_differential(field: Field, generators: Vec<Generator>) -> Result<Self, ComplexError> {
        CochainComplex::new(field, GradedBasis::new(generators)?, BTreeMap::new())
    }

    fn check_square_zero(&self) -> Result<(), ComplexError> {
        for (k, m) in &self.blocks {
            if let Some(next) = self.blocks.get(&(k + 1)) {
                if !next.mul(m)?.is_zero() {
                    return Err(ComplexError::NotDifferential { degree: *k });
                }
            }
        }
        Ok(())
    }

    pub fn with_display_shift(mut self, shift: i64) -> Self {
        self.display_shift = shift;
        self
    }

    /// Offset added to degrees when reporting; never used in computation.
    pub fn display_shift(&self) -> i64 {
        self.display_shift
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self, k: i64) -> usize {
        self.basis.dim(k)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.len()
    }

    /// Degrees with generators.
    pub fn degrees(&self) -> Vec<i64> {
        self.basis.degrees().collect()
    }

    /// The block `d^k: C^k -> C^{k+1}`.
    pub fn d(&self, k: i64) -> Cow<'_, SparseMatrix> {
        match self.blocks.get(&k) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(SparseMatrix::zero(self.field, self.dim(k + 1), self.dim(k))),
        }
    }

    /// Nonzero blocks, by source degree.
    pub fn blocks(&self) -> &BTreeMap<i64, SparseMatrix> {
        &self.blocks
    }

    /// Differential as global `(source, target, coefficient)` entries, sorted
    /// by source then target.
    pub fn entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (k, m) in &self.blocks {
            let src = self.basis.in_degree(*k);
            let tgt = self.basis.in_degree(k + 1);
            for (j, col) in m.columns().iter().enumerate() {
                for (i, a) in col.entries() {
                    out.push((src[j], tgt[*i], a.clone()));
                }
            }
        }
        out.sort_by_key(|(s, t, _)| (*s, *t));
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .degrees()
            .map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(k) as i64)
            .sum()
    }

    pub fn cohomology(&self) -> CohomologyResult {
        let mut groups = BTreeMap::new();
        if let Some((lo, hi)) = self.basis.degree_range() {
            for k in lo..=hi {
                let cocycles = Subspace::span(self.field, self.dim(k), self.d(k).kernel());
                let coboundaries = Subspace::column_space(&self.d(k - 1));
                let quotient = Subquotient::new(cocycles, coboundaries).expect("d^2 = 0 was checked");
                groups.insert(k, quotient);
            }
        }
        CohomologyResult { groups }
    }

    /// `a ⊗ b` with `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.
    ///
    /// Generators are the pairs `x*y`, ordered by the position of `x` then `y`.
    pub fn tensor_product(&self, other: &CochainComplex) -> Result<CochainComplex, ComplexError> {
        if self.field != other.field {
            return Err(ComplexError::FieldMismatch);
        }
        let f = self.field;
        let (na, nb) = (self.total_dim(), other.total_dim());
        let mut gens = Vec::with_capacity(na * nb);
        for x in self.basis.generators() {
            for y in other.basis.generators() {
                gens.push(Generator::new(format!("{}*{}", x.id, y.id), x.degree + y.degree));
            }
        }
        let basis = GradedBasis::new(gens)?;
        let pair = |i: usize, j: usize| i * nb + j;
        let mut entries = Vec::new();
        for (s, t, a) in self.entries() {
            for j in 0..nb {
                entries.push((pair(s, j), pair(t, j), a.clone()));
            }
        }
        for (s, t, a) in other.entries() {
            for i in 0..na {
                let sign = f.sign(self.basis.generator(i).degree);
                entries.push((pair(i, s), pair(i, t), f.mul(&sign, &a)));
            }
        }
        CochainComplex::from_entries(f, basis, entries)
    }

    /// Vector of `C^k` from `(global index, coefficient)` pairs.
    pub fn vector(&self, k: i64, entries: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
        let local: Vec<_> = entries
            .into_iter()
            .map(|(g, a)| {
                assert_eq!(self.basis.generator(g).degree, k, "generator outside degree {k}");
                (self.basis.local_index(g), a)
            })
            .collect();
        SparseVec::from_entries(self.field, self.dim(k), local).expect("indices in range")
    }
}

/// Cohomology of a complex: every degree between the lowest and highest
/// generator degree, each as a subquotient `ker d / im d` of `C^k`.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    groups: BTreeMap<i64, Subquotient>,
}

impl CohomologyResult {
    pub fn dim(&self, k: i64) -> usize {
        self.groups.get(&k).map_or(0, Subquotient::dimension)
    }

    /// Dimensions for every degree in the complex's range, zeros included.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.groups.iter().map(|(k, g)| (*k, g.dimension())).collect()
    }

    pub fn total(&self) -> usize {
        self.groups.values().map(Subquotient::dimension).sum()
    }

    /// Canonical representative cocycles of a basis of `H^k`.
    pub fn reps(&self, k: i64) -> &[SparseVec] {
        self.groups.get(&k).map_or(&[], |g| g.reps())
    }

    pub fn group(&self, k: i64) -> Option<&Subquotient> {
        self.groups.get(&k)
    }

    /// Coordinates of the class of the cocycle `v` in degree `k`.
    pub fn class_of(&self, k: i64, v: &SparseVec) -> Option<SparseVec> {
        match self.groups.get(&k) {
            Some(g) => g.class_of(v),
            None => v.is_zero().then(|| SparseVec::zero(0)),
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.groups.keys().copied()
    }
}

/// A degree-preserving map of complexes commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    blocks: BTreeMap<i64, SparseMatrix>,
}

impl ChainMap {
    /// `blocks[k]: C_source^k -> C_target^k`; absent degrees are zero.
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        blocks: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        if source.field != target.field {
            return Err(ComplexError::FieldMismatch);
        }
        let mut kept = BTreeMap::new();
        for (k, m) in blocks {
            if m.field() != source.field {
                return Err(ComplexError::FieldMismatch);
            }
            if m.cols() != source.dim(k) || m.rows() != target.dim(k) {
                return Err(ComplexError::BlockShape { degree: k });
            }
            if !m.is_zero() {
                kept.insert(k, m);
            }
        }
        let map = ChainMap {
            source,
            target,
            blocks: kept,
        };
        map.check_commutes()?;
        Ok(map)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let blocks = c
            .degrees()
            .into_iter()
            .map(|k| (k, SparseMatrix::identity(c.field, c.dim(k))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            blocks,
        }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Result<Self, ComplexError> {
        ChainMap::new(source.clone(), target.clone(), BTreeMap::new())
    }

    fn check_commutes(&self) -> Result<(), ComplexError> {
        let mut degrees: Vec<i64> = self.source.degrees();
        degrees.extend(self.target.degrees().iter().map(|k| k - 1));
        degrees.sort_unstable();
        degrees.dedup();
        for k in degrees {
            let lhs = self.target.d(k).mul(&self.block(k))?;
            let rhs = self.block(k + 1).mul(&self.source.d(k))?;
            if lhs != rhs {
                return Err(ComplexError::NotChainMap { degree: k });
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn block(&self, k: i64) -> Cow<'_, SparseMatrix> {
        match self.blocks.get(&k) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(SparseMatrix::zero(
                self.source.field,
                self.target.dim(k),
                self.source.dim(k),
            )),
        }
    }

    /// Induced maps `H^k(source) -> H^k(target)` in the canonical
    /// representative bases, for every degree where both sides are defined.
    pub fn on_cohomology(&self) -> BTreeMap<i64, SparseMatrix> {
        self.on_cohomology_with(&self.source.cohomology(), &self.target.cohomology())
    }

    pub fn on_cohomology_with(
        &self,
        hs: &CohomologyResult,
        ht: &CohomologyResult,
    ) -> BTreeMap<i64, SparseMatrix> {
        let f = self.source.field;
        let mut out = BTreeMap::new();
        for k in hs.degrees() {
            let cols: Vec<SparseVec> = hs
                .reps(k)
                .iter()
                .map(|z| {
                    let image = self.block(k).mul_vec(z).expect("block shape checked");
                    ht.class_of(k, &image).expect("chain maps send cocycles to cocycles")
                })
                .collect();
            let m = SparseMatrix::from_columns(f, ht.dim(k), cols).expect("class lengths agree");
            out.insert(k, m);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn circle(field: Field) -> CochainComplex {
        CochainComplex::zero_differential(field, vec![Generator::new("v", 0), Generator::new("e", 1)]).unwrap()
    }

    fn interval() -> CochainComplex {
        // d(v0*) = -e*, d(v1*) = e*: coboundary of the 1-cell from v0 to v1
        CochainComplex::from_id_entries(
            q(),
            vec![Generator::new("v0", 0), Generator::new("v1", 0), Generator::new("e", 1)],
            [
                ("v0".into(), "e".into(), q().from_i64(-1)),
                ("v1".into(), "e".into(), q().from_i64(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn zero_differential_cohomology() {
        let gens = vec![
            Generator::new("a", 0),
            Generator::new("b", 0),
            Generator::new("c", 1),
            Generator::new("d", 1),
            Generator::new("e", 1),
        ];
        let c = CochainComplex::zero_differential(q(), gens).unwrap();
        assert_eq!(c.cohomology().dims(), BTreeMap::from([(0, 2), (1, 3)]));
    }

    #[test]
    fn circle_and_interval() {
        assert_eq!(circle(q()).cohomology().dims(), BTreeMap::from([(0, 1), (1, 1)]));
        let h = interval().cohomology();
        assert_eq!(h.dims(), BTreeMap::from([(0, 1), (1, 0)]));
        // the constant cochain spans H^0
        assert_eq!(h.reps(0)[0].to_dense(q()), vec![q().one(), q().one()]);
    }

    #[test]
    fn rejects_bad_differentials() {
        let gens = vec![Generator::new("a", 0), Generator::new("b", 1), Generator::new("c", 2)];
        let err = CochainComplex::from_id_entries(
            q(),
            gens.clone(),
            [("a".into(), "b".into(), q().one()), ("b".into(), "c".into(), q().one())],
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::NotDifferential { degree: 0 });
        let err = CochainComplex::from_id_entries(q(), gens.clone(), [("a".into(), "c".into(), q().one())])
            .unwrap_err();
        assert!(matches!(err, ComplexError::DegreeJump { .. }));
        let err = CochainComplex::from_id_entries(q(), gens, [("a".into(), "z".into(), q().one())]).unwrap_err();
        assert_eq!(err, ComplexError::UnknownGenerator("z".into()));
        let dup = GradedBasis::new(vec![Generator::new("a", 0), Generator::new("a", 1)]);
        assert!(matches!(dup, Err(ComplexError::DuplicateGenerator(_))));
    }

    #[test]
    fn tensor_unit_and_torus() {
        let unit = CochainComplex::zero_differential(q(), vec![Generator::new("1", 0)]).unwrap();
        let i = interval();
        let iu = i.tensor_product(&unit).unwrap();
        assert_eq!(iu.cohomology().dims(), i.cohomology().dims());
        assert_eq!(iu.entries().len(), i.entries().len());
        let torus = circle(q()).tensor_product(&circle(q())).unwrap();
        assert_eq!(torus.cohomology().dims(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn tensor_with_acyclic_is_acyclic() {
        let acyclic = CochainComplex::from_id_entries(
            q(),
            vec![Generator::new("x", 0), Generator::new("y", 1)],
            [("x".into(), "y".into(), q().from_i64(3))],
        )
        .unwrap();
        let t = acyclic.tensor_product(&circle(q())).unwrap();
        assert_eq!(t.cohomology().total(), 0);
        assert!(t.tensor_product(&circle(Field::Prime(2))).is_err());
    }

    #[test]
    fn induced_maps() {
        let c = interval();
        let id = ChainMap::identity(&c).on_cohomology();
        for (k, m) in &id {
            assert_eq!(*m, SparseMatrix::identity(q(), c.cohomology().dim(*k)));
        }
        let zero = ChainMap::zero(&c, &c).unwrap().on_cohomology();
        assert!(zero.values().all(SparseMatrix::is_zero));
    }

    #[test]
    fn inclusion_with_acyclic_quotient_is_iso() {
        // C' = interval {v0, v1, e}; C adds a (deg 0), b (deg 1) with d a = b + e,
        // so C' is a subcomplex and C/C' = {a -> b} is acyclic.
        let f = q();
        let big = CochainComplex::from_id_entries(
            f,
            vec![
                Generator::new("v0", 0),
                Generator::new("v1", 0),
                Generator::new("a", 0),
                Generator::new("e", 1),
                Generator::new("b", 1),
            ],
            [
                ("v0".into(), "e".into(), f.from_i64(-1)),
                ("v1".into(), "e".into(), f.one()),
                ("a".into(), "b".into(), f.one()),
                ("a".into(), "e".into(), f.one()),
            ],
        )
        .unwrap();
        let small = interval();
        let blocks = BTreeMap::from([
            (0, SparseMatrix::from_rows_i64(f, &[&[1, 0], &[0, 1], &[0, 0]])),
            (1, SparseMatrix::from_rows_i64(f, &[&[1], &[0]])),
        ]);
        let inc = ChainMap::new(small.clone(), big.clone(), blocks).unwrap();
        let hs = small.cohomology();
        let hb = big.cohomology();
        assert_eq!(hs.dims(), BTreeMap::from([(0, 1), (1, 0)]));
        assert_eq!(hb.dims(), hs.dims());
        for (k, m) in inc.on_cohomology() {
            assert_eq!(m.rank(), hs.dim(k), "degree {k}");
            assert_eq!(m.rank(), hb.dim(k), "degree {k}");
        }
    }

    #[test]
    fn non_chain_map_rejected() {
        let c = interval();
        let blocks = BTreeMap::from([(0, SparseMatrix::from_rows_i64(q(), &[&[1, 0], &[0, 0]]))]);
        assert!(matches!(
            ChainMap::new(c.clone(), c, blocks),
            Err(ComplexError::NotChainMap { .. })
        ));
    }
}
