//! Sharp fine saturated monoids, realized as `σ ∩ Z^r` for a strongly convex
//! rational cone `σ`.
//!
//! A monoid is given by generators of its cone. At construction the
//! inequality description of `σ` is computed with the double description
//! method (the facets of `σ` are the extreme rays of the dual cone), and the
//! whole face lattice is enumerated eagerly. Values are immutable afterwards.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::zlinalg::{
    self, dot, is_zero_vec, primitive, rank, saturate, snf, IntMatrix, Sublattice, ZVec,
};

/// A face of an [`FsMonoid`], identified by the extreme rays it contains.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Face {
    rays: Vec<usize>,
    span: Sublattice,
}

impl Face {
    /// Indices into the parent's [`FsMonoid::extreme_rays`], sorted.
    pub fn ray_indices(&self) -> &[usize] {
        &self.rays
    }

    /// The saturated group `F^gp`.
    pub fn span(&self) -> &Sublattice {
        &self.span
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    pub fn contains_face(&self, other: &Face) -> bool {
        other.rays.iter().all(|r| self.rays.binary_search(r).is_ok())
    }

    /// `{0,2}`-style label used in reports.
    pub fn label(&self) -> String {
        let inner: Vec<String> = self.rays.iter().map(|r| r.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FsMonoid {
    rank: usize,
    generators: Vec<ZVec>,
    /// Saturated span of the input generators inside the input lattice; its
    /// HNF basis identifies `M^gp` with `Z^rank`.
    ambient: Sublattice,
    rays: Vec<ZVec>,
    facets: Vec<ZVec>,
    faces: Vec<Face>,
}

impl FsMonoid {
    /// Validates generators of a cone in `Z^rank`.
    ///
    /// If the generators span a proper subspace, the monoid is re-embedded in
    /// `Z^dim` through a basis of the saturated span; use
    /// [`FsMonoid::to_internal`] to move vectors into the new coordinates.
    pub fn new(rank: usize, generators: Vec<ZVec>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: g.len() });
            }
            if is_zero_vec(g) {
                return Err(Error::ZeroGenerator(i));
            }
        }
        let ambient = saturate(&Sublattice::from_vectors(rank, &generators));
        let dim = ambient.rank();
        let internal: Vec<ZVec> = if dim == rank {
            generators
        } else {
            generators
                .iter()
                .map(|g| ambient.coordinates(g).expect("generator lies in its own span"))
                .collect()
        };
        Self::full_dimensional(dim, internal, ambient)
    }

    fn full_dimensional(dim: usize, generators: Vec<ZVec>, ambient: Sublattice) -> Result<Self> {
        let facets = dual_cone_rays(&generators, dim);
        if facets.len() < dim || rank(&IntMatrix::from_rows(dim, &facets)) < dim {
            return Err(Error::NotSharp);
        }

        let mut candidates: Vec<ZVec> = generators.iter().map(|g| primitive(g)).collect();
        candidates.sort();
        candidates.dedup();
        let rays: Vec<ZVec> = candidates
            .into_iter()
            .filter(|r| {
                let tight: Vec<ZVec> =
                    facets.iter().filter(|f| dot(f, r).is_zero()).cloned().collect();
                rank(&IntMatrix::from_rows(dim, &tight)) + 1 == dim
            })
            .collect();

        let faces = enumerate_faces(dim, &rays, &facets);
        Ok(Self { rank: dim, generators, ambient, rays, facets, faces })
    }

    /// The free monoid `N^n`.
    pub fn free(n: usize) -> Self {
        let gens = IntMatrix::identity(n).row_vecs();
        Self::new(n, gens).expect("N^n is sharp")
    }

    /// The monoid `N`.
    pub fn natural() -> Self {
        Self::free(1)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[ZVec] {
        &self.generators
    }

    /// Rank of the lattice the generators were originally given in.
    pub fn ambient_rank(&self) -> usize {
        self.ambient.ambient_rank()
    }

    /// Coordinates of an input-lattice vector in `M^gp = Z^rank`.
    pub fn to_internal(&self, v: &[BigInt]) -> Result<ZVec> {
        if v.len() != self.ambient_rank() {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank(), found: v.len() });
        }
        self.ambient.coordinates(v).ok_or_else(|| Error::OutsideSpan(fmt_vec(v)))
    }

    /// Inverse of [`FsMonoid::to_internal`].
    pub fn to_ambient(&self, v: &[BigInt]) -> ZVec {
        self.ambient.basis().left_apply(v)
    }

    /// Primitive generators of the 1-dimensional faces, in lexicographic order.
    pub fn extreme_rays(&self) -> &[ZVec] {
        &self.rays
    }

    /// Primitive inward normals of the facets of `σ`.
    pub fn facet_normals(&self) -> &[ZVec] {
        &self.facets
    }

    /// All faces, from `{0}` (first) to `σ` (last), ordered by dimension and
    /// then by ray indices.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn zero_face(&self) -> &Face {
        &self.faces[0]
    }

    pub fn full_face(&self) -> &Face {
        self.faces.last().expect("face lattice is never empty")
    }

    pub fn face_index(&self, face: &Face) -> Option<usize> {
        self.faces.iter().position(|f| f == face)
    }

    fn check_dim(&self, v: &[BigInt]) -> Result<()> {
        if v.len() == self.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.rank, found: v.len() })
        }
    }

    pub fn contains(&self, a: &[BigInt]) -> Result<bool> {
        self.check_dim(a)?;
        Ok(self.facets.iter().all(|f| !dot(f, a).is_negative()))
    }

    /// `a ≤ b` in the order induced by the monoid, i.e. `b - a ∈ M`.
    pub fn leq(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        self.contains(&zlinalg::sub_vec(b, a))
    }

    /// The face containing `b` in its relative interior.
    pub fn face_of(&self, b: &[BigInt]) -> Result<&Face> {
        if !self.contains(b)? {
            return Err(Error::NotInMonoid(fmt_vec(b)));
        }
        let tight: Vec<&ZVec> = self.facets.iter().filter(|f| dot(f, b).is_zero()).collect();
        let rays: Vec<usize> = (0..self.rays.len())
            .filter(|&i| tight.iter().all(|f| dot(f, &self.rays[i]).is_zero()))
            .collect();
        Ok(self
            .faces
            .iter()
            .find(|f| f.rays == rays)
            .expect("face lattice is closed under facet intersections"))
    }

    /// Index of the extreme ray that `b` lies on, if `b` is a nonzero element
    /// of a 1-dimensional face.
    pub fn ray_of(&self, b: &[BigInt]) -> Result<Option<usize>> {
        let face = self.face_of(b)?;
        Ok((face.dim() == 1).then(|| face.rays[0]))
    }

    /// Looks up the face spanned by the given extreme rays.
    pub fn face_from_rays(&self, rays: &[usize]) -> Result<&Face> {
        let set: BTreeSet<usize> = rays.iter().copied().collect();
        let sorted: Vec<usize> = set.into_iter().collect();
        if sorted.iter().any(|&i| i >= self.rays.len()) {
            return Err(Error::NotAFace(rays.to_vec()));
        }
        self.faces.iter().find(|f| f.rays == sorted).ok_or_else(|| Error::NotAFace(rays.to_vec()))
    }

    /// The subgroup of elements `a` with `n b ≤ a ≤ m b` for some integers
    /// `n, m`. It is the group of the smallest face containing `b`.
    pub fn bounded_by_subgroup(&self, b: &[BigInt]) -> Result<Sublattice> {
        Ok(self.face_of(b)?.span.clone())
    }

    /// Projection `M^gp → M^gp / F^gp` and the image monoid `M/F`.
    ///
    /// The complement of `F^gp` is read off the column transform of a Smith
    /// form of the face basis, so the choice is deterministic.
    pub fn quotient_by_face(&self, face: &Face) -> Result<(MonoidHom, FsMonoid)> {
        if self.face_index(face).is_none() {
            return Err(Error::NotAFace(face.rays.clone()));
        }
        let k = face.dim();
        let (_, _, v) = snf(face.span.basis());
        let proj = v.select_cols(&(k..self.rank).collect::<Vec<_>>()).transpose();
        let images: Vec<ZVec> = self
            .generators
            .iter()
            .map(|g| proj.apply(g))
            .filter(|g| !is_zero_vec(g))
            .collect();
        let target = FsMonoid::new(self.rank - k, images)?;
        debug_assert_eq!(target.rank, self.rank - k);
        Ok((MonoidHom { matrix: proj }, target))
    }

    /// A functional that is positive on every nonzero element: the sum of the
    /// facet normals, which generate the dual cone.
    pub fn positive_functional(&self) -> MonoidHom {
        let mut sum = vec![BigInt::zero(); self.rank];
        for f in &self.facets {
            sum = zlinalg::add_vec(&sum, f);
        }
        MonoidHom { matrix: IntMatrix::from_rows(self.rank, &[sum]) }
    }
}

impl fmt::Display for FsMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| fmt_vec(r)).collect();
        write!(f, "cone in Z^{} with extreme rays [{}]", self.rank, rays.join(", "))
    }
}

/// A monoid homomorphism `Z^source → Z^target`, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonoidHom {
    matrix: IntMatrix,
}

impl MonoidHom {
    /// Checks that every generator of `source` lands in `target`.
    pub fn new(matrix: IntMatrix, source: &FsMonoid, target: &FsMonoid) -> Result<Self> {
        if matrix.cols() != source.rank() || matrix.rows() != target.rank() {
            return Err(Error::HomNotMonoidMap);
        }
        for g in source.generators() {
            if !target.contains(&matrix.apply(g))? {
                return Err(Error::HomNotMonoidMap);
            }
        }
        Ok(Self { matrix })
    }

    pub fn identity(m: &FsMonoid) -> Self {
        Self { matrix: IntMatrix::identity(m.rank()) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source_rank(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[BigInt]) -> ZVec {
        self.matrix.apply(v)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MonoidHom) -> MonoidHom {
        MonoidHom { matrix: next.matrix.mul(&self.matrix) }
    }
}

pub(crate) fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Extreme rays of `{y : a · y ≥ 0 for every row a}` by the double
/// description method. The rows must span `Q^dim`, which makes the cone
/// pointed.
fn dual_cone_rays(constraints: &[ZVec], dim: usize) -> Vec<ZVec> {
    if dim == 0 {
        return Vec::new();
    }
    // an initial simplicial cone from dim independent constraints
    let mut chosen: Vec<usize> = Vec::new();
    for (i, a) in constraints.iter().enumerate() {
        let mut trial: Vec<ZVec> = chosen.iter().map(|&j| constraints[j].clone()).collect();
        trial.push(a.clone());
        if rank(&IntMatrix::from_rows(dim, &trial)) == trial.len() {
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), dim, "constraints must span the space");

    let zero_set = |y: &ZVec, processed: &[usize]| -> BTreeSet<usize> {
        processed.iter().copied().filter(|&j| dot(&constraints[j], y).is_zero()).collect()
    };

    let mut processed = chosen.clone();
    let mut rays: Vec<(ZVec, BTreeSet<usize>)> = Vec::with_capacity(dim);
    for j in 0..dim {
        let others: Vec<ZVec> = (0..dim)
            .filter(|&k| k != j)
            .map(|k| constraints[chosen[k]].clone())
            .collect();
        let ker = zlinalg::kernel(&IntMatrix::from_rows(dim, &others));
        let mut y = ker.basis().row(0).to_vec();
        if dot(&constraints[chosen[j]], &y).is_negative() {
            y = y.iter().map(|x| -x).collect();
        }
        let z = zero_set(&y, &processed);
        rays.push((y, z));
    }

    let chosen_set: HashSet<usize> = chosen.iter().copied().collect();
    for (idx, a) in constraints.iter().enumerate() {
        if chosen_set.contains(&idx) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|(y, _)| dot(a, y)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

        let mut next: Vec<(ZVec, BTreeSet<usize>)> = Vec::new();
        for (i, (y, z)) in rays.iter().enumerate() {
            if values[i].is_zero() {
                let mut z = z.clone();
                z.insert(idx);
                next.push((y.clone(), z));
            } else if values[i].is_positive() {
                next.push((y.clone(), z.clone()));
            }
        }
        for &p in &plus {
            for &n in &minus {
                let common: BTreeSet<usize> = rays[p].1.intersection(&rays[n].1).copied().collect();
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, (_, z))| k == p || k == n || !common.is_subset(z));
                if !adjacent {
                    continue;
                }
                let combo: ZVec = rays[n]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(yn, yp)| &values[p] * yn - &values[n] * yp)
                    .collect();
                let mut z = common;
                z.insert(idx);
                next.push((primitive(&combo), z));
            }
        }
        processed.push(idx);
        rays = next;
    }

    let mut out: Vec<ZVec> = rays.into_iter().map(|(y, _)| primitive(&y)).collect();
    out.sort();
    out.dedup();
    out
}

fn enumerate_faces(dim: usize, rays: &[ZVec], facets: &[ZVec]) -> Vec<Face> {
    let on_facet: Vec<BTreeSet<usize>> = facets
        .iter()
        .map(|f| (0..rays.len()).filter(|&i| dot(f, &rays[i]).is_zero()).collect())
        .collect();
    let full: BTreeSet<usize> = (0..rays.len()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = vec![full];
    while let Some(face) = queue.pop() {
        if !seen.insert(face.iter().copied().collect()) {
            continue;
        }
        for f in &on_facet {
            let sub: BTreeSet<usize> = face.intersection(f).copied().collect();
            if !seen.contains(&sub.iter().copied().collect::<Vec<_>>()) {
                queue.push(sub);
            }
        }
    }
    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|rs| {
            let vecs: Vec<ZVec> = rs.iter().map(|&i| rays[i].clone()).collect();
            let span = saturate(&Sublattice::from_vectors(dim, &vecs));
            Face { rays: rs, span }
        })
        .collect();
    faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.rays.cmp(&b.rays)));
    faces
}
