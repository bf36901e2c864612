//! Tropical curves: connected multigraphs whose edges carry lengths in
//! `M \ {0}`.
//!
//! Each edge is stored with an orientation `tail → head`. Loops and parallel
//! edges are allowed. Vertices and edges are indexed in declaration order,
//! and every derived object (spanning trees, cycle bases, contractions) is a
//! deterministic function of that order.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fsmonoid::{fmt_vec, FsMonoid, MonoidHom};
use crate::zlinalg::{add_vec, is_zero_vec, IntMatrix, ZVec};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub length: ZVec,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Edge description by vertex ids, as accepted by [`TropCurve::new`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeSpec {
    pub id: String,
    pub ends: [String; 2],
    pub length: ZVec,
}

impl EdgeSpec {
    pub fn new(id: &str, tail: &str, head: &str, length: ZVec) -> Self {
        Self { id: id.to_string(), ends: [tail.to_string(), head.to_string()], length }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TropCurve {
    monoid: FsMonoid,
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl TropCurve {
    /// Validates a curve given by vertex ids and edge records. Lengths are in
    /// the monoid's internal coordinates.
    pub fn new(monoid: FsMonoid, vertices: Vec<String>, edges: Vec<EdgeSpec>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let resolved = edges
            .into_iter()
            .map(|e| {
                let lookup = |v: &String| {
                    index.get(v).copied().ok_or_else(|| Error::DanglingEndpoint {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    })
                };
                Ok(Edge { tail: lookup(&e.ends[0])?, head: lookup(&e.ends[1])?, id: e.id, length: e.length })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(monoid, vertices, resolved)
    }

    /// Validates a curve whose edges already refer to vertex indices.
    pub fn from_edges(monoid: FsMonoid, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut ids = HashSet::new();
        for v in &vertices {
            if !ids.insert(v.as_str()) {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        for e in &edges {
            if !ids.insert(e.id.as_str()) {
                return Err(Error::DuplicateId(e.id.clone()));
            }
            for end in [e.tail, e.head] {
                if end >= vertices.len() {
                    return Err(Error::DanglingEndpoint { edge: e.id.clone(), vertex: end.to_string() });
                }
            }
            if e.length.len() != monoid.rank() {
                return Err(Error::DimensionMismatch { expected: monoid.rank(), found: e.length.len() });
            }
            if is_zero_vec(&e.length) {
                return Err(Error::ZeroLength(e.id.clone()));
            }
            if !monoid.contains(&e.length)? {
                return Err(Error::LengthNotInMonoid(e.id.clone()));
            }
        }
        let curve = Self { monoid, vertices, edges };
        if curve.vertices.is_empty() || curve.components() != 1 {
            return Err(Error::Disconnected);
        }
        Ok(curve)
    }

    pub fn monoid(&self) -> &FsMonoid {
        &self.monoid
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// First Betti number `E - V + 1`.
    pub fn genus(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        (0..self.vertices.len()).filter(|&v| uf.find(v) == v).count()
    }

    /// `(edge, other endpoint)` pairs at each vertex, edges in id order.
    /// Loops appear once.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((i, e.head));
            if !e.is_loop() {
                adj[e.head].push((i, e.tail));
            }
        }
        adj
    }

    /// Same curve with the orientation of edge `i` reversed.
    pub fn flip_edge(&self, i: usize) -> TropCurve {
        let mut c = self.clone();
        let e = &mut c.edges[i];
        std::mem::swap(&mut e.tail, &mut e.head);
        c
    }

    /// `V × E` matrix whose column for edge `e` is `head - tail`.
    pub fn boundary_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertices.len(), self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                m[(e.tail, j)] -= 1;
                m[(e.head, j)] += 1;
            }
        }
        m
    }

    /// Fundamental cycles of the BFS spanning tree rooted at the first vertex.
    pub fn h1_basis(&self) -> CycleBasis {
        let n = self.vertices.len();
        let adj = self.adjacency();
        // parent[v] = (edge, parent vertex)
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut tree = vec![false; self.edges.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(e, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree[e] = true;
                    parent[w] = Some((e, v));
                    queue.push_back(w);
                }
            }
        }

        // signed tree path from v up to the root
        let path_to_root = |mut v: usize| {
            let mut chain = vec![BigInt::zero(); self.edges.len()];
            while let Some((e, p)) = parent[v] {
                // traverse edge e from v to p
                if self.edges[e].head == v {
                    chain[e] -= 1;
                } else {
                    chain[e] += 1;
                }
                v = p;
            }
            chain
        };

        let mut rows = Vec::new();
        let mut non_tree = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if tree[i] {
                continue;
            }
            // e goes tail -> head; close it up with head -> root -> tail
            let mut cycle = add_vec(&path_to_root(e.head), &path_to_root(e.tail).iter().map(|x| -x).collect::<Vec<_>>());
            cycle[i] += 1;
            rows.push(cycle);
            non_tree.push(i);
        }
        CycleBasis {
            tree_edges: (0..self.edges.len()).filter(|&i| tree[i]).collect(),
            non_tree_edges: non_tree,
            cycles: IntMatrix::from_rows(self.edges.len(), &rows),
        }
    }

    /// Contracts every edge whose length maps to zero under `phi` and
    /// relabels the others by their images.
    ///
    /// A merged vertex keeps the id of its first member.
    pub fn contract(&self, phi: &MonoidHom, target: &FsMonoid) -> Result<(TropCurve, CurveMap)> {
        if phi.source_rank() != self.monoid.rank() || phi.target_rank() != target.rank() {
            return Err(Error::HomNotMonoidMap);
        }
        let images: Vec<ZVec> = self.edges.iter().map(|e| phi.apply(&e.length)).collect();
        for img in &images {
            if !target.contains(img)? {
                return Err(Error::HomNotMonoidMap);
            }
        }
        let mut uf = UnionFind::new(self.vertices.len());
        for (e, img) in self.edges.iter().zip(&images) {
            if is_zero_vec(img) {
                uf.union(e.tail, e.head);
            }
        }
        let mut class_index = HashMap::new();
        let mut vertices = Vec::new();
        let mut vertex_map = Vec::with_capacity(self.vertices.len());
        for v in 0..self.vertices.len() {
            let root = uf.find(v);
            let idx = *class_index.entry(root).or_insert_with(|| {
                vertices.push(self.vertices[v].clone());
                vertices.len() - 1
            });
            vertex_map.push(idx);
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::with_capacity(self.edges.len());
        for (e, img) in self.edges.iter().zip(images) {
            if is_zero_vec(&img) {
                edge_map.push(None);
            } else {
                edge_map.push(Some(edges.len()));
                edges.push(Edge {
                    id: e.id.clone(),
                    tail: vertex_map[e.tail],
                    head: vertex_map[e.head],
                    length: img,
                });
            }
        }
        let target_edges = edges.len();
        let curve = TropCurve::from_edges(target.clone(), vertices, edges)?;
        Ok((curve, CurveMap::Contraction { edge_map, vertex_map, target_edges }))
    }

    /// Replaces edge `edge_id` by a two-edge path `tail → mid → head` with
    /// lengths `first` and `second`.
    ///
    /// The pieces take the place of the old edge in the edge order and are
    /// named `<id>.1` and `<id>.2`; the new vertex is `<id>.mid` and goes last.
    pub fn subdivide(&self, edge_id: &str, first: ZVec, second: ZVec) -> Result<(TropCurve, CurveMap)> {
        let idx = self.edge_index(edge_id).ok_or_else(|| Error::UnknownEdge(edge_id.to_string()))?;
        let old = &self.edges[idx];
        let bad = || Error::BadSplit(edge_id.to_string());
        let r = self.monoid.rank();
        if first.len() != r || second.len() != r {
            return Err(bad());
        }
        if is_zero_vec(&first) || is_zero_vec(&second) || add_vec(&first, &second) != old.length {
            return Err(bad());
        }
        if !self.monoid.contains(&first)? || !self.monoid.contains(&second)? {
            return Err(bad());
        }
        let mut vertices = self.vertices.clone();
        let mid = vertices.len();
        vertices.push(format!("{edge_id}.mid"));
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        let mut edge_map = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            if i == idx {
                edge_map.push(vec![edges.len(), edges.len() + 1]);
                edges.push(Edge { id: format!("{edge_id}.1"), tail: e.tail, head: mid, length: first.clone() });
                edges.push(Edge { id: format!("{edge_id}.2"), tail: mid, head: e.head, length: second.clone() });
            } else {
                edge_map.push(vec![edges.len()]);
                edges.push(e.clone());
            }
        }
        let target_edges = edges.len();
        let curve = TropCurve::from_edges(self.monoid.clone(), vertices, edges)?;
        let vertex_map = (0..self.vertices.len()).collect();
        Ok((curve, CurveMap::Subdivision { edge_map, vertex_map, target_edges }))
    }

    /// Partition of the non-bridge edges into maximal cycle-connected
    /// classes: two edges are in the same class when some simple cycle
    /// passes through both. These are the blocks of the graph with at least
    /// one cycle; a loop is a class of its own. Bridges belong to no class.
    pub fn cycle_connected_components(&self) -> Vec<EdgeClass> {
        let blocks = Blocks::compute(self);
        let mut classes: Vec<EdgeClass> = blocks
            .into_iter()
            .filter(|b| b.len() > 1 || self.edges[b[0]].is_loop())
            .map(|mut edges| {
                edges.sort_unstable();
                let vertices: BTreeSet<usize> =
                    edges.iter().flat_map(|&e| [self.edges[e].tail, self.edges[e].head]).collect();
                EdgeClass { edges, vertices: vertices.into_iter().collect() }
            })
            .collect();
        classes.sort_by(|a, b| a.edges[0].cmp(&b.edges[0]));
        classes
    }

    /// Bridges: edges lying on no cycle.
    pub fn bridges(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Blocks::compute(self)
            .into_iter()
            .filter(|b| b.len() == 1 && !self.edges[b[0]].is_loop())
            .map(|b| b[0])
            .collect();
        out.sort_unstable();
        out
    }

    /// The subgraph spanned by `class`, as a curve over `monoid` with the
    /// given lengths (one per class edge, in class order).
    pub fn subcurve(&self, class: &EdgeClass, monoid: FsMonoid, lengths: Vec<ZVec>) -> Result<TropCurve> {
        let local: HashMap<usize, usize> =
            class.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vertices = class.vertices.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = class
            .edges
            .iter()
            .zip(lengths)
            .map(|(&e, length)| {
                let old = &self.edges[e];
                Edge { id: old.id.clone(), tail: local[&old.tail], head: local[&old.head], length }
            })
            .collect();
        TropCurve::from_edges(monoid, vertices, edges)
    }

    /// A simple cycle through edges `e` and `f` of the same class, which
    /// share the vertex `shared`. Returned as a signed edge vector.
    pub(crate) fn cycle_through_adjacent(&self, class: &EdgeClass, e: usize, f: usize, shared: usize) -> Option<ZVec> {
        let other = |i: usize| {
            let edge = &self.edges[i];
            if edge.tail == shared { edge.head } else { edge.tail }
        };
        let (x, y) = (other(e), other(f));
        // walk: shared -e-> x ~~> y -f-> shared, avoiding `shared` in between
        let mut chain = vec![BigInt::zero(); self.edges.len()];
        self.add_traversal(&mut chain, e, shared);
        if x != y {
            let path = self.path_avoiding(class, x, y, Some(shared), &[e, f])?;
            for (edge, from) in path {
                self.add_traversal(&mut chain, edge, from);
            }
        }
        self.add_traversal(&mut chain, f, y);
        Some(chain)
    }

    /// A simple cycle through edge `e` inside its class.
    pub(crate) fn cycle_through(&self, class: &EdgeClass, e: usize) -> Option<ZVec> {
        let edge = &self.edges[e];
        let mut chain = vec![BigInt::zero(); self.edges.len()];
        chain[e] = BigInt::one();
        if edge.is_loop() {
            return Some(chain);
        }
        for (i, from) in self.path_avoiding(class, edge.head, edge.tail, None, &[e])? {
            self.add_traversal(&mut chain, i, from);
        }
        Some(chain)
    }

    fn add_traversal(&self, chain: &mut ZVec, edge: usize, from: usize) {
        if self.edges[edge].tail == from {
            chain[edge] += 1;
        } else {
            chain[edge] -= 1;
        }
    }

    /// BFS path inside `class` from `start` to `goal` as `(edge, from vertex)`
    /// steps.
    fn path_avoiding(
        &self,
        class: &EdgeClass,
        start: usize,
        goal: usize,
        avoid_vertex: Option<usize>,
        avoid_edges: &[usize],
    ) -> Option<Vec<(usize, usize)>> {
        let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if v == goal {
                let mut steps = Vec::new();
                let mut cur = goal;
                while cur != start {
                    let (e, p) = prev[&cur];
                    steps.push((e, p));
                    cur = p;
                }
                steps.reverse();
                return Some(steps);
            }
            for &i in &class.edges {
                if avoid_edges.contains(&i) {
                    continue;
                }
                let e = &self.edges[i];
                let w = if e.tail == v {
                    e.head
                } else if e.head == v {
                    e.tail
                } else {
                    continue;
                };
                if Some(w) == avoid_vertex || !seen.insert(w) {
                    continue;
                }
                prev.insert(w, (i, v));
                queue.push_back(w);
            }
        }
        None
    }
}

/// A maximal cycle-connected class of edges, with the vertices they touch.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeClass {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// Basis of `H_1 = ker δ` by fundamental cycles of a spanning tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleBasis {
    pub tree_edges: Vec<usize>,
    /// The non-tree edge generating each cycle, in row order.
    pub non_tree_edges: Vec<usize>,
    /// One row per cycle, one column per edge.
    pub cycles: IntMatrix,
}

impl CycleBasis {
    pub fn rank(&self) -> usize {
        self.cycles.rows()
    }

    pub fn edge_count(&self) -> usize {
        self.cycles.cols()
    }

    /// Coordinates of a cycle in this basis: since row `i` is the only one
    /// touching its non-tree edge, they are the coefficients on non-tree
    /// edges. `None` if `z` is not a cycle of the curve.
    pub fn coordinates(&self, z: &[BigInt]) -> Option<ZVec> {
        if z.len() != self.edge_count() {
            return None;
        }
        let coords: ZVec = self.non_tree_edges.iter().map(|&e| z[e].clone()).collect();
        (self.cycles.left_apply(&coords) == z).then_some(coords)
    }

    /// The cycle with the given coordinates, as an edge vector.
    pub fn cycle(&self, coords: &[BigInt]) -> ZVec {
        self.cycles.left_apply(coords)
    }
}

/// Relation between a curve and a contraction or subdivision of it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CurveMap {
    Contraction { edge_map: Vec<Option<usize>>, vertex_map: Vec<usize>, target_edges: usize },
    Subdivision { edge_map: Vec<Vec<usize>>, vertex_map: Vec<usize>, target_edges: usize },
}

impl CurveMap {
    pub fn source_edges(&self) -> usize {
        match self {
            CurveMap::Contraction { edge_map, .. } => edge_map.len(),
            CurveMap::Subdivision { edge_map, .. } => edge_map.len(),
        }
    }

    pub fn target_edges(&self) -> usize {
        match self {
            CurveMap::Contraction { target_edges, .. } | CurveMap::Subdivision { target_edges, .. } => {
                *target_edges
            }
        }
    }

    pub fn vertex_map(&self) -> &[usize] {
        match self {
            CurveMap::Contraction { vertex_map, .. } | CurveMap::Subdivision { vertex_map, .. } => vertex_map,
        }
    }

    /// Image of a 1-chain on the source edges.
    pub fn push_chain(&self, z: &[BigInt]) -> ZVec {
        let mut out = vec![BigInt::zero(); self.target_edges()];
        match self {
            CurveMap::Contraction { edge_map, .. } => {
                for (c, target) in z.iter().zip(edge_map) {
                    if let Some(t) = target {
                        out[*t] += c;
                    }
                }
            }
            CurveMap::Subdivision { edge_map, .. } => {
                for (c, pieces) in z.iter().zip(edge_map) {
                    for &t in pieces {
                        out[t] += c;
                    }
                }
            }
        }
        out
    }

    /// `next ∘ self` for two contractions.
    pub fn compose_contractions(&self, next: &CurveMap) -> Option<CurveMap> {
        match (self, next) {
            (
                CurveMap::Contraction { edge_map: e1, vertex_map: v1, .. },
                CurveMap::Contraction { edge_map: e2, vertex_map: v2, target_edges },
            ) => Some(CurveMap::Contraction {
                edge_map: e1.iter().map(|t| t.and_then(|i| e2[i])).collect(),
                vertex_map: v1.iter().map(|&i| v2[i]).collect(),
                target_edges: *target_edges,
            }),
            _ => None,
        }
    }
}

/// Matrix of `H_1(source) → H_1(target)` in the given bases: row `i` holds
/// the coordinates of the image of source cycle `i`.
pub fn pushforward_cycles(map: &CurveMap, source: &CycleBasis, target: &CycleBasis) -> Result<IntMatrix> {
    if map.source_edges() != source.edge_count() || map.target_edges() != target.edge_count() {
        return Err(Error::BasisMismatch);
    }
    let rows = (0..source.rank())
        .map(|i| target.coordinates(&map.push_chain(source.cycles.row(i))).ok_or(Error::BasisMismatch))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_rows(target.rank(), &rows))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so class order is stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Biconnected blocks of a multigraph by Tarjan's edge-stack algorithm.
/// Each loop is reported as its own block.
struct Blocks {
    adj: Vec<Vec<(usize, usize)>>,
    disc: Vec<Option<usize>>,
    low: Vec<usize>,
    clock: usize,
    stack: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Blocks {
    fn compute(curve: &TropCurve) -> Vec<Vec<usize>> {
        let n = curve.vertices.len();
        let adj = curve
            .adjacency()
            .into_iter()
            .map(|v| v.into_iter().filter(|&(e, _)| !curve.edges[e].is_loop()).collect())
            .collect();
        let mut b = Blocks { adj, disc: vec![None; n], low: vec![0; n], clock: 0, stack: Vec::new(), out: Vec::new() };
        for v in 0..n {
            if b.disc[v].is_none() {
                b.visit(v, None);
            }
        }
        for (i, e) in curve.edges.iter().enumerate() {
            if e.is_loop() {
                b.out.push(vec![i]);
            }
        }
        b.out
    }

    fn visit(&mut self, v: usize, via: Option<usize>) {
        self.disc[v] = Some(self.clock);
        self.low[v] = self.clock;
        self.clock += 1;
        for k in 0..self.adj[v].len() {
            let (e, w) = self.adj[v][k];
            if Some(e) == via {
                continue;
            }
            match self.disc[w] {
                None => {
                    self.stack.push(e);
                    self.visit(w, Some(e));
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.disc[v].unwrap() {
                        let mut block = Vec::new();
                        while let Some(x) = self.stack.pop() {
                            block.push(x);
                            if x == e {
                                break;
                            }
                        }
                        self.out.push(block);
                    }
                }
                Some(d) if d < self.disc[v].unwrap() => {
                    self.stack.push(e);
                    self.low[v] = self.low[v].min(d);
                }
                Some(_) => {}
            }
        }
    }
}

impl std::fmt::Display for TropCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} vertices, {} edges over Z^{}", self.vertices.len(), self.edges.len(), self.monoid.rank())?;
        for e in &self.edges {
            writeln!(
                f,
                "  {}: {} -> {} length {}",
                e.id,
                self.vertices[e.tail],
                self.vertices[e.head],
                fmt_vec(&e.length)
            )?;
        }
        Ok(())
    }
}
