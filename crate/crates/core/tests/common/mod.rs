//! Seeded instance generators and brute-force oracles shared by the
//! integration tests. The oracles avoid the library's cone and graph
//! algorithms: facets come from exhaustive subset search, classes from
//! exhaustive simple-cycle enumeration.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use tropjac::zlinalg::{zvec, ZVec};
use tropjac::{EdgeSpec, FsMonoid, TropCurve};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

/// A sharp full-dimensional monoid of rank `1..=max_rank` with generator
/// entries in `[-1, max_entry]`.
pub fn random_monoid(r: &mut ChaCha8Rng, max_rank: usize, max_entry: i64) -> FsMonoid {
    loop {
        let d = r.gen_range(1..=max_rank);
        let k = r.gen_range(d..=d + 2);
        let gens: Vec<ZVec> = (0..k)
            .map(|_| {
                let v: Vec<i64> = (0..d).map(|_| r.gen_range(-1..=max_entry)).collect();
                zvec(&v)
            })
            .collect();
        if let Ok(m) = FsMonoid::new(d, gens) {
            if m.rank() == d && m.ambient_rank() == d {
                return m;
            }
        }
    }
}

pub fn random_monoid_of_rank(r: &mut ChaCha8Rng, d: usize, max_entry: i64) -> FsMonoid {
    loop {
        let m = random_monoid(r, d, max_entry);
        if m.rank() == d {
            return m;
        }
    }
}

/// Nonzero element of `m`: a nonnegative combination of generators.
pub fn random_element(r: &mut ChaCha8Rng, m: &FsMonoid) -> ZVec {
    loop {
        let mut v = vec![BigInt::zero(); m.rank()];
        for g in m.generators() {
            let c = r.gen_range(0..=2i64);
            for (x, y) in v.iter_mut().zip(g) {
                *x += y * c;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// A positive multiple of an extreme ray.
pub fn random_ray_multiple(r: &mut ChaCha8Rng, m: &FsMonoid, ray: usize) -> ZVec {
    let k = BigInt::from(r.gen_range(1..=3i64));
    m.extreme_rays()[ray].iter().map(|x| x * &k).collect()
}

/// How edge lengths are drawn.
#[derive(Clone, Copy, Debug)]
pub enum Lengths {
    /// Arbitrary nonzero monoid elements.
    Any,
    /// Multiples of extreme rays, chosen independently per edge.
    OnRays,
    /// Multiples of one common extreme ray.
    OneRay,
}

/// Random connected multigraph (loops and parallel edges allowed).
pub fn random_graph(r: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize) -> (usize, Vec<(usize, usize)>) {
    let n = r.gen_range(1..=max_vertices);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((r.gen_range(0..v), v));
    }
    let extra = r.gen_range(0..=max_edges.saturating_sub(edges.len()));
    for _ in 0..extra {
        edges.push((r.gen_range(0..n), r.gen_range(0..n)));
    }
    if edges.is_empty() {
        edges.push((0, 0));
    }
    edges.shuffle(r);
    for e in edges.iter_mut() {
        if r.gen_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    (n, edges)
}

pub fn curve_from(m: &FsMonoid, n: usize, edges: &[(usize, usize)], lengths: Vec<ZVec>) -> TropCurve {
    let vertices: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let specs = edges
        .iter()
        .zip(lengths)
        .enumerate()
        .map(|(i, (&(a, b), l))| EdgeSpec::new(&format!("e{}", i + 1), &format!("v{a}"), &format!("v{b}"), l))
        .collect();
    TropCurve::new(m.clone(), vertices, specs).expect("generated curve is valid")
}

pub fn random_curve(
    r: &mut ChaCha8Rng,
    m: &FsMonoid,
    max_vertices: usize,
    max_edges: usize,
    mode: Lengths,
) -> TropCurve {
    let (n, edges) = random_graph(r, max_vertices, max_edges);
    let rays = m.extreme_rays().len();
    let common = r.gen_range(0..rays);
    let lengths = edges
        .iter()
        .map(|_| match mode {
            Lengths::Any => random_element(r, m),
            Lengths::OnRays => {
                let ray = r.gen_range(0..rays);
                random_ray_multiple(r, m, ray)
            }
            Lengths::OneRay => random_ray_multiple(r, m, common),
        })
        .collect();
    curve_from(m, n, &edges, lengths)
}

/// A mixture of length modes, so that aligned and non-aligned curves both
/// occur often.
pub fn random_mixed_curve(r: &mut ChaCha8Rng, m: &FsMonoid, max_vertices: usize, max_edges: usize) -> TropCurve {
    let mode = match r.gen_range(0..3) {
        0 => Lengths::Any,
        1 => Lengths::OnRays,
        _ => Lengths::OneRay,
    };
    random_curve(r, m, max_vertices, max_edges, mode)
}

// ---------------------------------------------------------------- oracles

pub fn dot64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn primitive64(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Determinant by cofactor expansion; for the tiny matrices used here.
pub fn det64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det64(&minor)
            })
            .sum(),
    }
}

fn rank64(vs: &[Vec<i64>], d: usize) -> usize {
    // fraction-free elimination over i128
    let mut rows: Vec<Vec<i128>> = vs.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    for col in 0..d {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let (a, b) = (rows[rank][col], rows[i][col]);
                for k in 0..d {
                    rows[i][k] = rows[i][k] * a - rows[rank][k] * b;
                }
                let g = rows[i].iter().fold(0i128, |g, &x| {
                    let (mut a, mut b) = (g.abs(), x.abs());
                    while b != 0 {
                        (a, b) = (b, a % b);
                    }
                    a
                });
                if g > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Facet normals of a full-dimensional pointed cone, by exhaustive search
/// over `(d-1)`-subsets of generators.
pub fn brute_facets(gens: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let candidates: Vec<Vec<i64>> = match d {
        1 => vec![vec![1], vec![-1]],
        2 => gens.iter().flat_map(|g| [vec![-g[1], g[0]], vec![g[1], -g[0]]]).collect(),
        3 => {
            let mut c = Vec::new();
            for a in 0..gens.len() {
                for b in a + 1..gens.len() {
                    let (x, y) = (&gens[a], &gens[b]);
                    let n = vec![x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]];
                    c.push(n.iter().map(|v| -v).collect());
                    c.push(n);
                }
            }
            c
        }
        _ => panic!("oracle supports rank <= 3"),
    };
    for n in candidates {
        if n.iter().all(|&x| x == 0) || gens.iter().any(|g| dot64(&n, g) < 0) {
            continue;
        }
        let tight: Vec<Vec<i64>> = gens.iter().filter(|g| dot64(&n, g) == 0).cloned().collect();
        if rank64(&tight, d) + 1 != d {
            continue;
        }
        let n = primitive64(&n);
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out.sort();
    out
}

pub struct ConeOracle {
    pub d: usize,
    pub facets: Vec<Vec<i64>>,
}

impl ConeOracle {
    pub fn new(m: &FsMonoid) -> Self {
        let gens: Vec<Vec<i64>> = m.generators().iter().map(|g| to_i64(g)).collect();
        Self { d: m.rank(), facets: brute_facets(&gens, m.rank()) }
    }

    pub fn tight(&self, v: &[i64]) -> Vec<Vec<i64>> {
        self.facets.iter().filter(|f| dot64(f, v) == 0).cloned().collect()
    }

    /// Primitive ray through `v`, if `v` is nonzero and lies on an extreme ray.
    pub fn ray_of(&self, v: &[i64]) -> Option<Vec<i64>> {
        if v.iter().all(|&x| x == 0) || rank64(&self.tight(v), self.d) + 1 != self.d {
            return None;
        }
        Some(primitive64(v))
    }

    /// Definitional bounded-by test: `a` is sandwiched between integer
    /// multiples of `b` iff every facet vanishing on `b` vanishes on `a`.
    pub fn bounded_by(&self, a: &[i64], b: &[i64]) -> bool {
        self.tight(b).iter().all(|f| dot64(f, a) == 0)
    }
}

/// Edge sets of all simple cycles (a loop alone is one), by subset search.
pub fn simple_cycles(c: &TropCurve) -> Vec<Vec<usize>> {
    let edges: Vec<(usize, usize)> = c.edges().iter().map(|e| (e.tail, e.head)).collect();
    let m = edges.len();
    assert!(m <= 16, "subset search is exponential");
    let n = c.vertices().len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        let sel: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let mut deg = vec![0; n];
        for &e in &sel {
            deg[edges[e].0] += 1;
            deg[edges[e].1] += 1;
        }
        if deg.iter().any(|&x| x != 0 && x != 2) {
            continue;
        }
        // connected?
        let mut reach = vec![false; n];
        let start = edges[sel[0]].0;
        reach[start] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for &e in &sel {
                let (a, b) = edges[e];
                if reach[a] != reach[b] {
                    reach[a] = true;
                    reach[b] = true;
                    changed = true;
                }
            }
        }
        if sel.iter().all(|&e| reach[edges[e].0]) {
            out.push(sel);
        }
    }
    out
}

/// Alignment by the definition: every simple cycle has all its edge lengths
/// on one common extreme ray.
pub fn aligned_by_cycles(c: &TropCurve, cone: &ConeOracle) -> bool {
    let rays: Vec<Option<Vec<i64>>> = c.edges().iter().map(|e| cone.ray_of(&to_i64(&e.length))).collect();
    simple_cycles(c).iter().all(|cyc| {
        let first = &rays[cyc[0]];
        first.is_some() && cyc.iter().all(|&e| &rays[e] == first)
    })
}

/// Edges grouped by "lie on a common simple cycle"; bridges omitted.
pub fn classes_by_cycles(c: &TropCurve) -> Vec<Vec<usize>> {
    let m = c.edges().len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut on_cycle = vec![false; m];
    for cyc in simple_cycles(c) {
        for &e in &cyc {
            on_cycle[e] = true;
            let (a, b) = (find(&mut parent, cyc[0]), find(&mut parent, e));
            parent[b] = a;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for e in 0..m {
        if on_cycle[e] {
            let root = find(&mut parent, e);
            groups.entry(root).or_default().push(e);
        }
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}
