//! Monodromy pairing, bounded monodromy and the tropical Jacobian
//! `Hom(H_1, M^gp)^† / H_1`, together with alignment, its decomposition,
//! generization maps and the injectivity criterion.
//!
//! Homomorphisms `φ: H_1 → Z^r` are flattened row-major by cycle-basis index:
//! entry `i·r + s` is coordinate `s` of `φ(γ_i)`. Elements of a Jacobian are
//! written as row vectors of coordinates in the HNF basis of the
//! bounded-monodromy lattice, and homomorphisms between Jacobians as
//! matrices acting on the right.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fsmonoid::{Face, FsMonoid, MonoidHom};
use crate::tropcurve::{pushforward_cycles, CurveMap, CycleBasis, EdgeClass, TropCurve};
use crate::zlinalg::{
    hnf, is_zero_vec, kernel, lattice_intersection, preimage_lattice, quotient, snf,
    unimodular_inverse, FgAbGroup, IntMatrix, Sublattice, ZVec,
};

/// Symmetric `h × h` table of `M^gp`-valued pairings of a cycle basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonodromyPairing {
    monoid_rank: usize,
    table: Vec<Vec<ZVec>>,
}

impl MonodromyPairing {
    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn monoid_rank(&self) -> usize {
        self.monoid_rank
    }

    pub fn entry(&self, i: usize, j: usize) -> &ZVec {
        &self.table[i][j]
    }

    /// Self-pairing `γᵀ · table · γ` of the cycle with the given basis
    /// coordinates.
    pub fn cycle_length(&self, coords: &[BigInt]) -> ZVec {
        assert_eq!(coords.len(), self.size());
        let mut out = vec![BigInt::zero(); self.monoid_rank];
        for (i, a) in coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, x) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += &ab * x;
                }
            }
        }
        out
    }

    /// The integer matrix obtained by applying a functional `Z^r → Z` to
    /// every entry.
    pub fn evaluate(&self, functional: &[BigInt]) -> IntMatrix {
        let h = self.size();
        let mut m = IntMatrix::zeros(h, h);
        for i in 0..h {
            for j in 0..h {
                m[(i, j)] = crate::zlinalg::dot(functional, &self.table[i][j]);
            }
        }
        m
    }

    /// Flattened period functional `γ ↦ ⟨γ_j, γ⟩`.
    pub fn period(&self, j: usize) -> ZVec {
        (0..self.size()).flat_map(|i| self.table[i][j].iter().cloned()).collect()
    }
}

pub fn monodromy_pairing(c: &TropCurve, basis: &CycleBasis) -> MonodromyPairing {
    let h = basis.rank();
    let r = c.monoid().rank();
    let mut table = vec![vec![vec![BigInt::zero(); r]; h]; h];
    for (e, edge) in c.edges().iter().enumerate() {
        for i in 0..h {
            let a = &basis.cycles[(i, e)];
            if a.is_zero() {
                continue;
            }
            for j in i..h {
                let b = &basis.cycles[(j, e)];
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, x) in table[i][j].iter_mut().zip(&edge.length) {
                    *o += &ab * x;
                }
            }
        }
    }
    for i in 0..h {
        for j in 0..i {
            table[i][j] = table[j][i].clone();
        }
    }
    MonodromyPairing { monoid_rank: r, table }
}

/// The lattice `Hom(H_1, M^gp)^†` of bounded-monodromy homomorphisms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundedHomLattice {
    pub h: usize,
    pub r: usize,
    pub lattice: Sublattice,
}

impl BoundedHomLattice {
    /// Whether `φ` (an `h × r` matrix, row `i` = `φ(γ_i)`) is bounded.
    pub fn contains_hom(&self, phi: &IntMatrix) -> bool {
        phi.rows() == self.h && phi.cols() == self.r && self.lattice.contains(&flatten(phi))
    }
}

pub fn flatten(phi: &IntMatrix) -> ZVec {
    (0..phi.rows()).flat_map(|i| phi.row(i).to_vec()).collect()
}

pub fn unflatten(v: &[BigInt], h: usize, r: usize) -> IntMatrix {
    let rows: Vec<ZVec> = (0..h).map(|i| v[i * r..(i + 1) * r].to_vec()).collect();
    IntMatrix::from_rows(r, &rows)
}

/// Coordinates (in the cycle basis) of the cycles supported on `edges`.
pub fn cycles_supported_on(basis: &CycleBasis, edges: &[bool]) -> Sublattice {
    let off: Vec<usize> = (0..basis.edge_count()).filter(|&e| !edges[e]).collect();
    kernel(&basis.cycles.select_cols(&off).transpose())
}

/// Bounded monodromy through the face criterion: `φ` is bounded iff for
/// every face `F`, `φ` maps the cycles supported on edges with length in `F`
/// into `F^gp`.
pub fn bounded_monodromy_lattice(c: &TropCurve) -> BoundedHomLattice {
    bounded_lattice_for(c, &c.h1_basis())
}

fn bounded_lattice_for(c: &TropCurve, basis: &CycleBasis) -> BoundedHomLattice {
    let h = basis.rank();
    let monoid = c.monoid();
    let r = monoid.rank();
    let mut lattice = Sublattice::full(h * r);
    for face in monoid.faces() {
        if face.dim() == r {
            continue;
        }
        let inside: Vec<bool> = c.edges().iter().map(|e| face.span().contains(&e.length)).collect();
        let supported = cycles_supported_on(basis, &inside);
        let k = supported.rank();
        if k == 0 {
            continue;
        }
        // (k·r) × (h·r): block t evaluates φ at the t-th supported cycle
        let mut eval = IntMatrix::zeros(k * r, h * r);
        for (t, kappa) in supported.basis_vectors().iter().enumerate() {
            for (i, coeff) in kappa.iter().enumerate() {
                for s in 0..r {
                    eval[(t * r + s, i * r + s)] = coeff.clone();
                }
            }
        }
        let allowed = preimage_lattice(&eval, &face.span().power(k));
        lattice = lattice_intersection(&lattice, &allowed);
    }
    BoundedHomLattice { h, r, lattice }
}

/// Whether `φ: Z^h → Z^r` (row `i` = image of the `i`-th basis cycle) has
/// bounded monodromy.
pub fn is_bounded(c: &TropCurve, phi: &IntMatrix) -> bool {
    bounded_monodromy_lattice(c).contains_hom(phi)
}

/// The tropical Jacobian of a curve over a point, with an explicit
/// presentation `Z^n / periods`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TropicalJacobian {
    basis: CycleBasis,
    pairing: MonodromyPairing,
    hom: BoundedHomLattice,
    group: FgAbGroup,
    periods: IntMatrix,
    /// Smith diagonal of `periods`, padded with zeros to length `n`.
    diag: Vec<BigInt>,
    /// `c = x · v` turns presentation coordinates into Smith coordinates.
    v: IntMatrix,
    v_inv: IntMatrix,
    torsion_indices: Vec<usize>,
}

pub fn tropical_jacobian(c: &TropCurve) -> Result<TropicalJacobian> {
    let basis = c.h1_basis();
    let pairing = monodromy_pairing(c, &basis);
    let hom = bounded_lattice_for(c, &basis);
    let n = hom.lattice.rank();
    let periods = (0..basis.rank())
        .map(|j| {
            hom.lattice
                .coordinates(&pairing.period(j))
                .ok_or_else(|| Error::Inconsistent(format!("period of cycle {j} is not bounded")))
        })
        .collect::<Result<Vec<_>>>()?;
    let periods = IntMatrix::from_rows(n, &periods);
    let group = quotient(n, &Sublattice::from_generators(&periods));
    let (d, _, v) = snf(&periods);
    let mut diag: Vec<BigInt> = (0..n).map(|i| if i < d.rows() { d[(i, i)].clone() } else { BigInt::zero() }).collect();
    diag.truncate(n);
    let v_inv = unimodular_inverse(&v);
    let torsion_indices = (0..n).filter(|&i| diag[i] > BigInt::one()).collect();
    Ok(TropicalJacobian { basis, pairing, hom, group, periods, diag, v, v_inv, torsion_indices })
}

impl TropicalJacobian {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn cycle_basis(&self) -> &CycleBasis {
        &self.basis
    }

    pub fn pairing(&self) -> &MonodromyPairing {
        &self.pairing
    }

    pub fn bounded_lattice(&self) -> &BoundedHomLattice {
        &self.hom
    }

    /// Rank `n` of the bounded-monodromy lattice.
    pub fn hom_rank(&self) -> usize {
        self.hom.lattice.rank()
    }

    /// HNF basis of the bounded-monodromy lattice, flattened homs as rows.
    pub fn hom_basis(&self) -> &IntMatrix {
        self.hom.lattice.basis()
    }

    /// Row `j`: the period functional of cycle `j` in hom-basis coordinates.
    pub fn periods(&self) -> &IntMatrix {
        &self.periods
    }

    /// Smith coordinates of `x`, reduced: torsion coordinates modulo their
    /// order, coordinates with trivial factor set to zero, free ones kept.
    pub fn reduce(&self, x: &[BigInt]) -> ZVec {
        let c = self.v.left_apply(x);
        c.into_iter()
            .zip(&self.diag)
            .map(|(ci, d)| if d.is_zero() { ci } else { ci.mod_floor(d) })
            .collect()
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        is_zero_vec(&self.reduce(x))
    }

    pub fn equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.is_zero(&crate::zlinalg::sub_vec(x, y))
    }

    /// Whether `x` has finite order.
    pub fn is_torsion(&self, x: &[BigInt]) -> bool {
        let c = self.reduce(x);
        c.iter().zip(&self.diag).all(|(ci, d)| !d.is_zero() || ci.is_zero())
    }

    /// Orders of the cyclic torsion factors, in Smith order.
    pub fn torsion_orders(&self) -> Vec<BigInt> {
        self.torsion_indices.iter().map(|&i| self.diag[i].clone()).collect()
    }

    /// Generators of the torsion subgroup, one per invariant factor.
    pub fn torsion_generators(&self) -> Vec<ZVec> {
        self.torsion_indices.iter().map(|&i| self.v_inv.row(i).to_vec()).collect()
    }

    /// Coordinates of a torsion element with respect to
    /// [`TropicalJacobian::torsion_generators`], each reduced modulo its order.
    pub fn torsion_coordinates(&self, x: &[BigInt]) -> Option<ZVec> {
        if !self.is_torsion(x) {
            return None;
        }
        let c = self.reduce(x);
        Some(self.torsion_indices.iter().map(|&i| c[i].clone()).collect())
    }

    /// The torsion element with the given coordinates.
    pub fn torsion_element(&self, coords: &[BigInt]) -> ZVec {
        let gens = self.torsion_generators();
        let mut x = vec![BigInt::zero(); self.hom_rank()];
        for (a, g) in coords.iter().zip(&gens) {
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += a * gi;
            }
        }
        x
    }

    /// The hom `H_1 → Z^r` (as an `h × r` matrix) represented by `x`.
    pub fn hom_of(&self, x: &[BigInt]) -> IntMatrix {
        unflatten(&self.hom_basis().left_apply(x), self.hom.h, self.hom.r)
    }
}

pub fn torsion_subgroup(j: &TropicalJacobian) -> (FgAbGroup, Vec<ZVec>) {
    (j.group().torsion(), j.torsion_generators())
}

/// Matrix (acting on the right) of the homomorphism
/// `Jac(source) → Jac(target)` induced by a curve map and a linear map on
/// values `Z^{r_source} → Z^{r_target}`.
///
/// A hom `φ` is composed with `values` and descended along the surjection
/// `H_1(source) → H_1(target)`. Descent needs `values ∘ φ` to vanish on the
/// kernel of that surjection; this is checked and reported as
/// [`Error::Inconsistent`] if it fails.
pub fn induced_map(
    source: &TropicalJacobian,
    target: &TropicalJacobian,
    map: &CurveMap,
    values: &IntMatrix,
) -> Result<IntMatrix> {
    let (rs, rt) = (source.hom.r, target.hom.r);
    if values.cols() != rs || values.rows() != rt {
        return Err(Error::DimensionMismatch { expected: rs, found: values.cols() });
    }
    let push = pushforward_cycles(map, &source.basis, &target.basis)?;
    let ht = push.cols();
    let (h, u) = hnf(&push);
    if h.select_rows(0..ht) != IntMatrix::identity(ht) {
        return Err(Error::Inconsistent("induced map on H_1 is not surjective".into()));
    }
    let section = u.select_rows(0..ht);
    let push_kernel = kernel(&push.transpose());

    let rows = (0..source.hom_rank())
        .map(|b| {
            let phi = source.hom_of(&unit(source.hom_rank(), b));
            let composed = phi.mul(&values.transpose()); // hs × rt
            for k in push_kernel.basis_vectors() {
                if !is_zero_vec(&composed.left_apply(&k)) {
                    return Err(Error::Inconsistent(
                        "hom does not vanish on cycles killed by the curve map".into(),
                    ));
                }
            }
            let descended = section.mul(&composed);
            debug_assert_eq!(descended.rows(), ht);
            target
                .hom
                .lattice
                .coordinates(&flatten(&descended))
                .ok_or_else(|| Error::Inconsistent("descended hom is not bounded".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_rows(target.hom_rank(), &rows))
}

fn unit(n: usize, i: usize) -> ZVec {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// Result of specializing a curve along a face of its monoid.
#[derive(Clone, Debug)]
pub struct Generization {
    pub projection: MonoidHom,
    pub monoid: FsMonoid,
    pub curve: TropCurve,
    pub curve_map: CurveMap,
    pub jacobian: TropicalJacobian,
    /// `Jac(c) → Jac(c_η)`, acting on the right.
    pub map: IntMatrix,
}

/// The generization map to the stratum where the lengths in `face` vanish.
pub fn generization_map(c: &TropCurve, face: &Face) -> Result<Generization> {
    let source = tropical_jacobian(c)?;
    generization_from(c, &source, face)
}

/// As [`generization_map`], reusing an already computed Jacobian of `c`.
pub fn generization_from(c: &TropCurve, source: &TropicalJacobian, face: &Face) -> Result<Generization> {
    let (projection, monoid) = c.monoid().quotient_by_face(face)?;
    let (curve, curve_map) = c.contract(&projection, &monoid)?;
    let jacobian = tropical_jacobian(&curve)?;
    let map = induced_map(source, &jacobian, &curve_map, projection.matrix())?;
    Ok(Generization { projection, monoid, curve, curve_map, jacobian, map })
}

/// Whether `map` sends the subgroup generated by `gens` injectively into
/// `target`. The subgroup must be finite.
pub(crate) fn injective_on(
    source: &TropicalJacobian,
    target: &TropicalJacobian,
    map: &IntMatrix,
    gens: &[ZVec],
) -> Result<bool> {
    let tgens: Vec<ZVec> = gens
        .iter()
        .map(|g| source.torsion_coordinates(g).ok_or(Error::NotFiniteSubgroup))
        .collect::<Result<_>>()?;
    let orders = source.torsion_orders();
    let mut seen: HashSet<ZVec> = HashSet::new();
    let zero = vec![BigInt::zero(); orders.len()];
    let mut queue = VecDeque::from([zero.clone()]);
    seen.insert(zero);
    while let Some(a) = queue.pop_front() {
        if !is_zero_vec(&a) && target.is_zero(&map.left_apply(&source.torsion_element(&a))) {
            return Ok(false);
        }
        for g in &tgens {
            let next: ZVec = a.iter().zip(g).zip(&orders).map(|((x, y), d)| (x + y).mod_floor(d)).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}

/// Whether the composite `Ψ → Jac(c) → Jac(c_φ)` is injective, where `Ψ`
/// is the finite subgroup generated by `subgroup_gens` and `c_φ` is the
/// curve over `N` obtained by applying `phi` to every length.
pub fn injectivity_test(
    c: &TropCurve,
    j: &TropicalJacobian,
    subgroup_gens: &[ZVec],
    phi: &MonoidHom,
) -> Result<bool> {
    let n = FsMonoid::natural();
    if phi.source_rank() != c.monoid().rank() || phi.target_rank() != 1 {
        return Err(Error::HomNotMonoidMap);
    }
    for e in c.edges() {
        if phi.apply(&e.length)[0].is_zero() {
            return Err(Error::ContractsAnEdge(e.id.clone()));
        }
    }
    for g in subgroup_gens {
        if g.len() != j.hom_rank() {
            return Err(Error::DimensionMismatch { expected: j.hom_rank(), found: g.len() });
        }
        if !j.is_torsion(g) {
            return Err(Error::NotFiniteSubgroup);
        }
    }
    let (image, curve_map) = c.contract(phi, &n)?;
    let target = tropical_jacobian(&image)?;
    let map = induced_map(j, &target, &curve_map, phi.matrix())?;
    injective_on(j, &target, &map, subgroup_gens)
}

/// Why a curve fails to be aligned.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    /// A simple cycle as a signed edge vector.
    pub cycle: ZVec,
    /// One edge whose length is on no extreme ray, or two edges of the cycle
    /// whose lengths lie on distinct extreme rays.
    pub edges: Vec<usize>,
    /// Extreme ray of each listed edge (`None`: not on a ray).
    pub rays: Vec<Option<usize>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlignmentReport {
    pub aligned: bool,
    pub witness: Option<Witness>,
}

/// Alignment, decided per cycle-connected class: a class is aligned iff all
/// its edge lengths lie on one common extreme ray. Any two edges of a class
/// lie on a common simple cycle, so this agrees with the per-cycle
/// definition.
pub fn is_aligned(c: &TropCurve) -> Result<AlignmentReport> {
    let m = c.monoid();
    let rays: Vec<Option<usize>> =
        c.edges().iter().map(|e| m.ray_of(&e.length)).collect::<Result<_>>()?;
    for class in c.cycle_connected_components() {
        if let Some(&e) = class.edges.iter().find(|&&e| rays[e].is_none()) {
            let cycle = c.cycle_through(&class, e).expect("class edges lie on cycles");
            return Ok(AlignmentReport {
                aligned: false,
                witness: Some(Witness { cycle, edges: vec![e], rays: vec![None] }),
            });
        }
        if let Some(w) = mixed_pair(c, &class, &rays) {
            return Ok(AlignmentReport { aligned: false, witness: Some(w) });
        }
    }
    Ok(AlignmentReport { aligned: true, witness: None })
}

/// Two edges of `class` meeting at a vertex with different rays, and a
/// simple cycle through both. Such a pair exists whenever the class is not
/// monochromatic, since a class is connected.
fn mixed_pair(c: &TropCurve, class: &EdgeClass, rays: &[Option<usize>]) -> Option<Witness> {
    for &v in &class.vertices {
        let incident: Vec<usize> = class
            .edges
            .iter()
            .copied()
            .filter(|&e| c.edges()[e].tail == v || c.edges()[e].head == v)
            .collect();
        for (a, &e) in incident.iter().enumerate() {
            for &f in &incident[a + 1..] {
                if rays[e] != rays[f] {
                    let cycle = c.cycle_through_adjacent(class, e, f, v)?;
                    return Some(Witness { cycle, edges: vec![e, f], rays: vec![rays[e], rays[f]] });
                }
            }
        }
    }
    None
}

/// One summand of the decomposition of an aligned curve's Jacobian.
#[derive(Clone, Debug)]
pub struct AlignedComponent {
    pub class: EdgeClass,
    /// Index of the common extreme ray of the class.
    pub ray: usize,
    /// The class as a curve over `N`, lengths in units of the ray generator.
    pub curve: TropCurve,
    pub jacobian: TropicalJacobian,
}

/// Splits the Jacobian of an aligned curve into finite Jacobians of its
/// cycle-connected classes over the monoids `N·ρ`.
pub fn aligned_decomposition(c: &TropCurve) -> Result<Vec<AlignedComponent>> {
    if !is_aligned(c)?.aligned {
        return Err(Error::NotAligned);
    }
    let m = c.monoid();
    c.cycle_connected_components()
        .into_iter()
        .map(|class| {
            let ray = m.ray_of(&c.edges()[class.edges[0]].length)?.expect("aligned class");
            let generator = &m.extreme_rays()[ray];
            let pivot = generator.iter().position(|x| !x.is_zero()).expect("rays are nonzero");
            let lengths: Vec<ZVec> =
                class.edges.iter().map(|&e| vec![&c.edges()[e].length[pivot] / &generator[pivot]]).collect();
            let curve = c.subcurve(&class, FsMonoid::natural(), lengths)?;
            let jacobian = tropical_jacobian(&curve)?;
            Ok(AlignedComponent { class, ray, curve, jacobian })
        })
        .collect()
}

/// Direct sum of the component groups.
pub fn decomposition_group(components: &[AlignedComponent]) -> FgAbGroup {
    components.iter().fold(FgAbGroup::trivial(), |acc, c| acc.direct_sum(c.jacobian.group()))
}

/// Whether `lengths` of a cycle's edges all lie on one extreme ray.
pub fn lengths_on_common_ray(m: &FsMonoid, lengths: &[&ZVec]) -> Result<bool> {
    let mut ray = None;
    for l in lengths {
        match (m.ray_of(l)?, ray) {
            (None, _) => return Ok(false),
            (Some(r), None) => ray = Some(r),
            (Some(r), Some(prev)) if r != prev => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// Leading principal minors of an integer matrix.
pub fn leading_minors(m: &IntMatrix) -> Vec<BigInt> {
    (1..=m.rows())
        .map(|k| crate::zlinalg::determinant(&m.select_rows(0..k).select_cols(&(0..k).collect::<Vec<_>>())))
        .collect()
}

/// Whether an integer symmetric matrix is positive definite (Sylvester).
pub fn is_positive_definite(m: &IntMatrix) -> bool {
    leading_minors(m).iter().all(Signed::is_positive)
}
