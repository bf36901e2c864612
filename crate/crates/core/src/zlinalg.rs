//! Exact integer matrices, sublattices of `Z^n` and finitely generated
//! abelian groups.
//!
//! Everything here works over arbitrary-precision integers. Matrices act on
//! row vectors unless a function says otherwise; lattices are always stored
//! by their row Hermite normal form, so two lattices are equal exactly when
//! their bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An integer vector.
pub type ZVec = Vec<BigInt>;

/// Converts a slice of machine integers into a [`ZVec`].
pub fn zvec(values: &[i64]) -> ZVec {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[BigInt], b: &[BigInt]) -> ZVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[BigInt], b: &[BigInt]) -> ZVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(k: &BigInt, v: &[BigInt]) -> ZVec {
    v.iter().map(|x| k * x).collect()
}

/// Gcd of all entries (zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the content. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> ZVec {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed so that zero-row
    /// matrices keep their width.
    pub fn from_rows(cols: usize, rows: &[ZVec]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
            data.extend(r.iter().cloned());
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<ZVec> = rows.iter().map(|r| zvec(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<ZVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> ZVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix dimensions do not agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> ZVec {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `v · self` for a row vector `v`.
    pub fn left_apply(&self, v: &[BigInt]) -> ZVec {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.row(i)) {
                *o += c * x;
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let rows: Vec<ZVec> = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        Self::from_rows(cols, &rows)
    }

    /// Vertical concatenation.
    pub fn vconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> IntMatrix {
        let rows: Vec<ZVec> = idx.into_iter().map(|i| self.row(i).to_vec()).collect();
        Self::from_rows(self.cols, &rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<ZVec> = (0..self.rows)
            .map(|i| idx.iter().map(|&j| self[(i, j)].clone()).collect())
            .collect();
        Self::from_rows(idx.len(), &rows)
    }

    pub fn neg(&self) -> IntMatrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] -= s;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] -= s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -&*x;
        }
    }

    /// Column index of the first nonzero entry of row `i`.
    pub fn pivot(&self, i: usize) -> Option<usize> {
        self.row(i).iter().position(|x| !x.is_zero())
    }

    /// Whether the matrix is in row Hermite normal form: nonzero rows first,
    /// strictly increasing positive pivots, entries above each pivot reduced
    /// into `[0, pivot)`.
    pub fn is_hnf(&self) -> bool {
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..self.rows {
            match self.pivot(i) {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last.is_some_and(|l| p <= l) {
                        return false;
                    }
                    let piv = &self[(i, p)];
                    if !piv.is_positive() {
                        return false;
                    }
                    for k in 0..i {
                        let x = &self[(k, p)];
                        if x.is_negative() || x >= piv {
                            return false;
                        }
                    }
                    last = Some(p);
                }
            }
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// Row Hermite normal form. Returns `(h, u)` with `u` unimodular and
/// `u · m = h`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut prow = 0;
    for col in 0..m.cols {
        if prow == m.rows {
            break;
        }
        loop {
            let best = (prow..m.rows)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(prow, best);
            u.swap_rows(prow, best);
            let mut done = true;
            for i in prow + 1..m.rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(prow, col)]);
                h.sub_row_multiple(i, prow, &q);
                u.sub_row_multiple(i, prow, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(prow, col)].is_zero() {
            continue;
        }
        if h[(prow, col)].is_negative() {
            h.negate_row(prow);
            u.negate_row(prow);
        }
        for i in 0..prow {
            let q = h[(i, col)].div_floor(&h[(prow, col)]);
            h.sub_row_multiple(i, prow, &q);
            u.sub_row_multiple(i, prow, &q);
        }
        prow += 1;
    }
    (h, u)
}

/// Smith normal form. Returns `(d, u, v)` with `u · m · v = d`, `u` and `v`
/// unimodular, `d` diagonal with nonnegative entries `d_1 | d_2 | ...` and
/// zeros last.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);

        loop {
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
            }
            let col_rest = (t + 1..rows).find(|&i| !d[(i, t)].is_zero());
            let row_rest = (t + 1..cols).find(|&j| !d[(t, j)].is_zero());
            if col_rest.is_some() || row_rest.is_some() {
                // a remainder is smaller than the pivot: move it into place
                let mut min_pos = (t, t);
                for i in t + 1..rows {
                    if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[min_pos].abs() {
                        min_pos = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[min_pos].abs() {
                        min_pos = (t, j);
                    }
                }
                if min_pos.0 != t {
                    d.swap_rows(t, min_pos.0);
                    u.swap_rows(t, min_pos.0);
                } else if min_pos.1 != t {
                    d.swap_cols(t, min_pos.1);
                    v.swap_cols(t, min_pos.1);
                }
                continue;
            }
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match bad {
                Some(i) => {
                    // row_t += row_i, then keep reducing
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Nonzero diagonal entries of a Smith form, in order.
pub fn snf_diagonal(d: &IntMatrix) -> Vec<BigInt> {
    (0..d.rows.min(d.cols))
        .map(|i| d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hnf(m);
    (0..h.rows).filter(|&i| h.pivot(i).is_some()).count()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = val / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

/// Inverse of a unimodular matrix.
///
/// Panics if `m` is not square with determinant ±1.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    assert_eq!(m.rows, m.cols);
    let (h, u) = hnf(m);
    assert!(h == IntMatrix::identity(m.rows), "matrix is not unimodular");
    u
}

/// A sublattice of `Z^n`, stored by its row HNF basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    /// The lattice spanned by the rows of `generators`.
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let (h, _) = hnf(generators);
        let k = (0..h.rows).take_while(|&i| h.pivot(i).is_some()).count();
        Self { ambient_rank: generators.cols, basis: h.select_rows(0..k) }
    }

    pub fn from_vectors(ambient_rank: usize, vectors: &[ZVec]) -> Self {
        Self::from_generators(&IntMatrix::from_rows(ambient_rank, vectors))
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self { ambient_rank, basis: IntMatrix::zeros(0, ambient_rank) }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self { ambient_rank, basis: IntMatrix::identity(ambient_rank) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<ZVec> {
        self.basis.row_vecs()
    }

    /// Coordinates of `v` in the HNF basis, or `None` if `v` is not in the
    /// lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<ZVec> {
        assert_eq!(v.len(), self.ambient_rank);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let p = self.basis.pivot(i).expect("HNF basis rows are nonzero");
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[p].div_rem(&self.basis[(i, p)]);
            if !r.is_zero() {
                return None;
            }
            for (x, b) in rest.iter_mut().zip(self.basis.row(i)) {
                *x -= &q * b;
            }
            coords.push(q);
        }
        is_zero_vec(&rest).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis.row_vecs().iter().all(|r| self.contains(r))
    }

    pub fn is_saturated(&self) -> bool {
        saturate(self) == *self
    }

    /// `self ⊕ other` inside `Z^{n + m}`.
    pub fn direct_sum(&self, other: &Sublattice) -> Sublattice {
        let n = self.ambient_rank + other.ambient_rank;
        let mut rows = Vec::with_capacity(self.rank() + other.rank());
        for r in self.basis.row_vecs() {
            let mut v = r;
            v.resize(n, BigInt::zero());
            rows.push(v);
        }
        for r in other.basis.row_vecs() {
            let mut v = vec![BigInt::zero(); self.ambient_rank];
            v.extend(r);
            rows.push(v);
        }
        Sublattice::from_vectors(n, &rows)
    }

    /// `k`-fold direct sum of `self` with itself.
    pub fn power(&self, k: usize) -> Sublattice {
        (0..k).fold(Sublattice::zero(0), |acc, _| acc.direct_sum(self))
    }
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice(Z^{}, {:?})", self.ambient_rank, self.basis)
    }
}

/// Integer kernel `{x ∈ Z^cols : m · x = 0}`; always saturated.
pub fn kernel(m: &IntMatrix) -> Sublattice {
    let (h, u) = hnf(&m.transpose());
    let r = (0..h.rows).take_while(|&i| h.pivot(i).is_some()).count();
    Sublattice::from_generators(&u.select_rows(r..h.rows))
}

/// Smallest saturated lattice containing `l`.
pub fn saturate(l: &Sublattice) -> Sublattice {
    let orth = kernel(l.basis());
    kernel(orth.basis())
}

/// `{x ∈ Z^cols : m · x ∈ target}`.
pub fn preimage_lattice(m: &IntMatrix, target: &Sublattice) -> Sublattice {
    assert_eq!(target.ambient_rank, m.rows, "target lives in the wrong ambient space");
    let joined = m.hconcat(&target.basis.transpose().neg());
    let ker = kernel(&joined);
    let projected: Vec<ZVec> =
        ker.basis.row_vecs().into_iter().map(|r| r[..m.cols].to_vec()).collect();
    Sublattice::from_vectors(m.cols, &projected)
}

pub fn lattice_intersection(a: &Sublattice, b: &Sublattice) -> Sublattice {
    assert_eq!(a.ambient_rank, b.ambient_rank);
    let joined = a.basis.transpose().hconcat(&b.basis.transpose().neg());
    let ker = kernel(&joined);
    let ka = a.rank();
    let vectors: Vec<ZVec> =
        ker.basis.row_vecs().iter().map(|r| a.basis.left_apply(&r[..ka])).collect();
    Sublattice::from_vectors(a.ambient_rank, &vectors)
}

/// Isomorphism class of a finitely generated abelian group
/// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | ... | d_k` and every `d_i ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FgAbGroup {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self { rank: 0, invariant_factors: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders (zeros and ones allowed)
    /// into invariant-factor form.
    pub fn from_cyclic_orders(free: usize, orders: &[BigInt]) -> Self {
        let n = orders.len();
        let (d, _, _) = snf(&IntMatrix::diagonal(orders));
        let diag = snf_diagonal(&d);
        let extra_free = n - diag.len();
        Self {
            rank: free + extra_free,
            invariant_factors: diag.into_iter().filter(|x| !x.is_one()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let orders: Vec<BigInt> =
            self.invariant_factors.iter().chain(&other.invariant_factors).cloned().collect();
        Self::from_cyclic_orders(self.rank + other.rank, &orders)
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Group order, `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn torsion(&self) -> FgAbGroup {
        Self { rank: 0, invariant_factors: self.invariant_factors.clone() }
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Z^ambient_rank / span(relations)`.
pub fn quotient(ambient_rank: usize, relations: &Sublattice) -> FgAbGroup {
    assert_eq!(relations.ambient_rank, ambient_rank);
    let (d, _, _) = snf(relations.basis());
    let diag = snf_diagonal(&d);
    FgAbGroup {
        rank: ambient_rank - diag.len(),
        invariant_factors: diag.into_iter().filter(|x| !x.is_one()).collect(),
    }
}
