//! Families over a single monoid chart.
//!
//! Strata correspond to faces of the base monoid: the closed stratum is the
//! face `{0}`, where the curve is the input curve, and the fiber over a face
//! `F` is the contraction along `M → M/F`. Generization maps between the
//! Jacobians of the fibers are computed for every inclusion `F ⊆ F′`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fsmonoid::{FsMonoid, MonoidHom};
use crate::jacobian::{induced_map, is_aligned, tropical_jacobian, TropicalJacobian, Witness};
use crate::tropcurve::TropCurve;
use crate::zlinalg::{hnf, quotient, FgAbGroup, IntMatrix, Sublattice, ZVec};

/// Default bound on the order of a torsion group whose subgroups are
/// enumerated.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000;

/// Bound on the number of subgroup systems kept during enumeration.
pub const MAX_SYSTEMS: usize = 200_000;

#[derive(Clone, Debug)]
pub struct Fiber {
    /// Index into `base.faces()`.
    pub face: usize,
    pub projection: MonoidHom,
    pub monoid: FsMonoid,
    pub curve: TropCurve,
    pub jacobian: TropicalJacobian,
}

#[derive(Clone, Debug)]
pub struct StratifiedFamily {
    base: FsMonoid,
    curve: TropCurve,
    fibers: Vec<Fiber>,
    gen_maps: BTreeMap<(usize, usize), IntMatrix>,
}

/// A section `S` of a surjective integer matrix `P` (so `P · S = I`).
fn section(p: &IntMatrix) -> Result<IntMatrix> {
    let k = p.rows();
    let (h, u) = hnf(&p.transpose());
    if h.select_rows(0..k) != IntMatrix::identity(k) {
        return Err(Error::Inconsistent("face projection is not surjective".into()));
    }
    Ok(u.select_rows(0..k).transpose())
}

pub fn build_family(base: &FsMonoid, curve: &TropCurve) -> Result<StratifiedFamily> {
    if curve.monoid() != base {
        return Err(Error::Inconsistent("curve is not metrized by the base monoid".into()));
    }
    let fibers = base
        .faces()
        .iter()
        .enumerate()
        .map(|(i, face)| {
            let (projection, monoid) = base.quotient_by_face(face)?;
            let (fiber_curve, _) = curve.contract(&projection, &monoid)?;
            let jacobian = tropical_jacobian(&fiber_curve)?;
            Ok(Fiber { face: i, projection, monoid, curve: fiber_curve, jacobian })
        })
        .collect::<Result<Vec<_>>>()?;

    let faces = base.faces();
    let mut gen_maps = BTreeMap::new();
    for (i, small) in faces.iter().enumerate() {
        let lift = section(fibers[i].projection.matrix())?;
        for (j, big) in faces.iter().enumerate() {
            if i == j || !big.contains_face(small) {
                continue;
            }
            let (src, tgt) = (&fibers[i], &fibers[j]);
            let relative = tgt.projection.matrix().mul(&lift);
            let relative = MonoidHom::new(relative, &src.monoid, &tgt.monoid)?;
            let (contracted, curve_map) = src.curve.contract(&relative, &tgt.monoid)?;
            if contracted != tgt.curve {
                return Err(Error::Inconsistent(format!(
                    "fiber at {} differs from the contraction of the fiber at {}",
                    big.label(),
                    small.label()
                )));
            }
            let map = induced_map(&src.jacobian, &tgt.jacobian, &curve_map, relative.matrix())?;
            gen_maps.insert((i, j), map);
        }
    }
    Ok(StratifiedFamily { base: base.clone(), curve: curve.clone(), fibers, gen_maps })
}

impl StratifiedFamily {
    pub fn base(&self) -> &FsMonoid {
        &self.base
    }

    pub fn curve(&self) -> &TropCurve {
        &self.curve
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn fiber(&self, face: usize) -> &Fiber {
        &self.fibers[face]
    }

    /// Generization map from the stratum of `from` to that of `to`, for
    /// `from ⊆ to` (identity when equal).
    pub fn gen_map(&self, from: usize, to: usize) -> Option<IntMatrix> {
        if from == to {
            return Some(IntMatrix::identity(self.fibers[from].jacobian.hom_rank()));
        }
        self.gen_maps.get(&(from, to)).cloned()
    }

    pub fn gen_maps(&self) -> &BTreeMap<(usize, usize), IntMatrix> {
        &self.gen_maps
    }

    /// Checks `map(F → F″) = map(F → F′) · map(F′ → F″)` on the quotient
    /// groups for every chain of faces.
    pub fn generization_triangles_commute(&self) -> bool {
        for (&(a, b), ab) in &self.gen_maps {
            for (&(b2, c), bc) in self.gen_maps.range((b, 0)..(b + 1, 0)) {
                debug_assert_eq!(b, b2);
                let ac = &self.gen_maps[&(a, c)];
                let target = &self.fibers[c].jacobian;
                let composed = ab.mul(bc);
                for x in IntMatrix::identity(ab.rows()).row_vecs() {
                    if !target.equal(&composed.left_apply(&x), &ac.left_apply(&x)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceReport {
    pub face: usize,
    pub rays: Vec<usize>,
    pub aligned: bool,
    pub witness: Option<Witness>,
    pub jacobian: FgAbGroup,
    pub torsion: FgAbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub faces: Vec<FaceReport>,
    pub aligned_everywhere: bool,
    /// Alignment at every stratum.
    pub quasi_finite: bool,
    /// Every fiber Jacobian has rank 0.
    pub finite_everywhere: bool,
    /// The torsion system is the whole Jacobian at every stratum.
    pub torsion_is_everything: bool,
    pub failing_faces: Vec<usize>,
}

/// Alignment and Jacobian data per stratum. Alignment is decided on the
/// graph and finiteness on the group; they are computed independently and
/// any disagreement is reported as [`Error::TheoremViolation`].
pub fn check_family(fam: &StratifiedFamily) -> Result<FamilyReport> {
    let mut faces = Vec::with_capacity(fam.fibers.len());
    for fiber in &fam.fibers {
        let alignment = is_aligned(&fiber.curve)?;
        let group = fiber.jacobian.group().clone();
        let rays = fam.base.faces()[fiber.face].ray_indices().to_vec();
        if alignment.aligned != (group.rank == 0) {
            return Err(Error::TheoremViolation { face: rays, aligned: alignment.aligned, rank: group.rank });
        }
        faces.push(FaceReport {
            face: fiber.face,
            rays,
            aligned: alignment.aligned,
            witness: alignment.witness,
            torsion: group.torsion(),
            jacobian: group,
        });
    }
    let aligned_everywhere = faces.iter().all(|f| f.aligned);
    let finite_everywhere = faces.iter().all(|f| f.jacobian.rank == 0);
    let torsion_is_everything = faces.iter().all(|f| f.torsion == f.jacobian);
    if aligned_everywhere != finite_everywhere || finite_everywhere != torsion_is_everything {
        let bad = faces.iter().find(|f| f.aligned != (f.jacobian.rank == 0)).unwrap_or(&faces[0]);
        return Err(Error::TheoremViolation {
            face: bad.rays.clone(),
            aligned: bad.aligned,
            rank: bad.jacobian.rank,
        });
    }
    let failing_faces = faces.iter().filter(|f| !f.aligned).map(|f| f.face).collect();
    Ok(FamilyReport {
        faces,
        aligned_everywhere,
        quasi_finite: aligned_everywhere,
        finite_everywhere,
        torsion_is_everything,
        failing_faces,
    })
}

/// Torsion subgroup of the Jacobian at one stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionFace {
    pub face: usize,
    pub group: FgAbGroup,
    /// Generators in presentation coordinates.
    pub generators: Vec<ZVec>,
}

/// A subgroup of a stratum's torsion group, described by generators given in
/// torsion coordinates (see `TropicalJacobian::torsion_coordinates`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupInfo {
    pub order: u64,
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSystem {
    /// One subgroup per face, indexed like `base.faces()`.
    pub subgroups: Vec<SubgroupInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemPoset {
    pub systems: Vec<SubgroupSystem>,
    /// Hasse diagram: `(lower, upper)` pairs.
    pub covers: Vec<(usize, usize)>,
    pub minimum: usize,
    pub maximum: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelClassification {
    pub torsion_system: Vec<TorsionFace>,
    pub poset: Option<SystemPoset>,
}

/// The torsion system, after checking that every generization map sends
/// torsion into torsion.
pub fn saturated_system(fam: &StratifiedFamily) -> Result<ModelClassification> {
    for (&(a, b), map) in &fam.gen_maps {
        let (src, tgt) = (&fam.fibers[a].jacobian, &fam.fibers[b].jacobian);
        for g in src.torsion_generators() {
            if !tgt.is_torsion(&map.left_apply(&g)) {
                return Err(Error::Inconsistent(format!("torsion of face {a} does not map to torsion of face {b}")));
            }
        }
    }
    let torsion_system = fam
        .fibers
        .iter()
        .map(|f| TorsionFace {
            face: f.face,
            group: f.jacobian.group().torsion(),
            generators: f.jacobian.torsion_generators(),
        })
        .collect();
    Ok(ModelClassification { torsion_system, poset: None })
}

/// Torsion system plus, when `enumerate` is set, every system of subgroups
/// `Ψ_F ⊆ torsion_F` that is closed under the generization maps, ordered by
/// inclusion. The open stratum's Jacobian is trivial, so `Ψ` is trivial there.
pub fn classify_models(fam: &StratifiedFamily, enumerate: bool, limit: u64) -> Result<ModelClassification> {
    let mut out = saturated_system(fam)?;
    if !enumerate {
        return Ok(out);
    }
    let groups = fam
        .fibers
        .iter()
        .map(|f| {
            let order = f.jacobian.group().torsion_order();
            match order.to_u64() {
                Some(o) if o <= limit => {
                    Ok(FiniteGroup::new(f.jacobian.torsion_orders().iter().map(|d| d.to_u64().unwrap()).collect()))
                }
                _ => Err(Error::TooLargeToEnumerate { order: order.to_string(), limit }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let subgroups: Vec<Vec<BitSet>> = groups.iter().map(FiniteGroup::subgroups).collect();

    // element tables of the generization maps
    let mut element_maps: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (&(a, b), map) in &fam.gen_maps {
        let (src, tgt) = (&fam.fibers[a].jacobian, &fam.fibers[b].jacobian);
        let table = (0..groups[a].order())
            .map(|idx| {
                let coords: ZVec = groups[a].coords(idx).into_iter().map(BigInt::from).collect();
                let image = map.left_apply(&src.torsion_element(&coords));
                let tc = tgt
                    .torsion_coordinates(&image)
                    .ok_or_else(|| Error::Inconsistent("torsion image is not torsion".into()))?;
                Ok(groups[b].index(&tc.iter().map(|x| x.to_u64().unwrap()).collect::<Vec<_>>()))
            })
            .collect::<Result<Vec<_>>>()?;
        element_maps.insert((a, b), table);
    }

    let n = fam.fibers.len();
    let mut systems: Vec<Vec<usize>> = Vec::new();
    let mut choice = vec![0usize; n];
    backtrack(0, &mut choice, &subgroups, &element_maps, &mut systems)?;

    let leq = |x: &[usize], y: &[usize]| (0..n).all(|f| subgroups[f][x[f]].is_subset(&subgroups[f][y[f]]));
    let maximum_choice: Vec<usize> = (0..n).map(|f| subgroups[f].len() - 1).collect();
    let maximum = systems
        .iter()
        .position(|s| *s == maximum_choice)
        .ok_or_else(|| Error::Inconsistent("torsion system is not closed under generization".into()))?;
    if !systems.iter().all(|s| leq(s, &maximum_choice)) {
        return Err(Error::Inconsistent("torsion system is not the maximum".into()));
    }
    let minimum = systems.iter().position(|s| s.iter().all(|&i| i == 0)).expect("trivial system is closed");

    let mut covers = Vec::new();
    for (i, x) in systems.iter().enumerate() {
        for (j, y) in systems.iter().enumerate() {
            if i == j || !leq(x, y) {
                continue;
            }
            let between = systems
                .iter()
                .enumerate()
                .any(|(k, z)| k != i && k != j && leq(x, z) && leq(z, y));
            if !between {
                covers.push((i, j));
            }
        }
    }

    let systems = systems
        .iter()
        .map(|s| SubgroupSystem {
            subgroups: s.iter().enumerate().map(|(f, &k)| groups[f].describe(&subgroups[f][k])).collect(),
        })
        .collect();
    out.poset = Some(SystemPoset { systems, covers, minimum, maximum });
    Ok(out)
}

fn backtrack(
    face: usize,
    choice: &mut Vec<usize>,
    subgroups: &[Vec<BitSet>],
    maps: &HashMap<(usize, usize), Vec<usize>>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if face == choice.len() {
        if out.len() >= MAX_SYSTEMS {
            return Err(Error::TooLargeToEnumerate { order: format!("more than {MAX_SYSTEMS} systems"), limit: MAX_SYSTEMS as u64 });
        }
        out.push(choice.clone());
        return Ok(());
    }
    'candidates: for k in 0..subgroups[face].len() {
        let candidate = &subgroups[face][k];
        // faces are ordered by dimension, so every smaller face is decided
        for earlier in 0..face {
            if let Some(table) = maps.get(&(earlier, face)) {
                let chosen = &subgroups[earlier][choice[earlier]];
                if chosen.iter().any(|x| !candidate.contains(table[x])) {
                    continue 'candidates;
                }
            }
        }
        choice[face] = k;
        backtrack(face + 1, choice, subgroups, maps, out)?;
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        Self { words: vec![0; n.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| w * 64 + b))
    }
}

/// `Z/d_1 ⊕ ... ⊕ Z/d_k` with elements indexed in mixed radix.
struct FiniteGroup {
    orders: Vec<u64>,
}

impl FiniteGroup {
    fn new(orders: Vec<u64>) -> Self {
        Self { orders }
    }

    fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    fn coords(&self, mut idx: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&d| {
                let c = idx as u64 % d;
                idx /= d as usize;
                c
            })
            .collect()
    }

    fn index(&self, coords: &[u64]) -> usize {
        let mut idx = 0usize;
        for (c, d) in coords.iter().zip(&self.orders).rev() {
            idx = idx * *d as usize + *c as usize;
        }
        idx
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let sum: Vec<u64> = x.iter().zip(&y).zip(&self.orders).map(|((p, q), d)| (p + q) % d).collect();
        self.index(&sum)
    }

    /// Closure of `set ∪ {g}` under addition.
    fn join(&self, set: &BitSet, g: usize) -> BitSet {
        let mut out = set.clone();
        let mut frontier: Vec<usize> = set.iter().collect();
        while let Some(x) = frontier.pop() {
            let y = self.add(x, g);
            if out.insert(y) {
                frontier.push(y);
            }
        }
        out
    }

    /// All subgroups, sorted by order then by elements; the trivial group is
    /// first and the whole group last.
    fn subgroups(&self) -> Vec<BitSet> {
        let n = self.order();
        let mut trivial = BitSet::new(n);
        trivial.insert(0);
        let cyclic: BTreeSet<BitSet> = (0..n).map(|g| self.join(&trivial, g)).collect();
        let mut seen: BTreeSet<BitSet> = BTreeSet::from([trivial.clone()]);
        let mut stack = vec![trivial];
        while let Some(h) = stack.pop() {
            for c in &cyclic {
                if c.is_subset(&h) {
                    continue;
                }
                let mut joined = h.clone();
                for g in c.iter() {
                    if !joined.contains(g) {
                        joined = self.join(&joined, g);
                    }
                }
                if seen.insert(joined.clone()) {
                    stack.push(joined);
                }
            }
        }
        let mut all: Vec<BitSet> = seen.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    fn describe(&self, h: &BitSet) -> SubgroupInfo {
        let mut span = BitSet::new(self.order());
        span.insert(0);
        let mut gens = Vec::new();
        for x in h.iter() {
            if !span.contains(x) {
                span = self.join(&span, x);
                gens.push(self.coords(x));
            }
        }
        // H = L / D with L spanned by the generators and D = ⊕ d_i Z
        let k = self.orders.len();
        let mut rows: Vec<ZVec> = gens.iter().map(|g| g.iter().map(|&c| BigInt::from(c)).collect()).collect();
        let relations: Vec<ZVec> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { BigInt::from(self.orders[i]) } else { BigInt::zero() }).collect())
            .collect();
        rows.extend(relations.iter().cloned());
        let lattice = Sublattice::from_vectors(k, &rows);
        let rel_coords: Vec<ZVec> =
            relations.iter().map(|r| lattice.coordinates(r).expect("relations lie in L")).collect();
        let group = quotient(lattice.rank(), &Sublattice::from_vectors(lattice.rank(), &rel_coords));
        SubgroupInfo { order: h.len() as u64, invariant_factors: group.invariant_factors, generators: gens }
    }
}
