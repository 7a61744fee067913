//! Finite abstract simplicial complexes of dimension at most two, their
//! barycentric subdivision, spanning trees and edge-path group presentations.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::presentation::{Letter, Presentation, Word};

pub type Vertex = usize;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("simplex {0:?} has dimension above 2 (pass truncate to keep its 2-skeleton)")]
    DimensionTooHigh(Vec<Vertex>),
    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertex(Vec<Vertex>),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("{0} is not a vertex of the complex")]
    NotAVertex(Vertex),
    #[error("complex is not connected")]
    Disconnected,
    #[error("{{{0}, {1}}} is not an edge of the complex")]
    NotAnEdge(Vertex, Vertex),
    #[error("edge path has no vertices")]
    EmptyPath,
    #[error("edge path must start and end at the root {root} (runs {start} -> {end})")]
    NotClosedAtRoot { root: Vertex, start: Vertex, end: Vertex },
    #[error("paths do not chain: first ends at {0}, second starts at {1}")]
    PathsDoNotChain(Vertex, Vertex),
}

/// A simplex as its ascending list of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex(vertices));
        }
        Ok(Self(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }
}

/// What face closure added while building a complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub added_vertices: usize,
    pub added_edges: usize,
    /// Simplices of dimension above 2 replaced by their 2-skeleton.
    pub truncated: usize,
}

/// A finite simplicial complex of dimension at most 2.
///
/// Vertices are arbitrary integer ids; simplices are stored sorted, with every
/// face present.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    edges: Vec<[Vertex; 2]>,
    triangles: Vec<[Vertex; 3]>,
    position: HashMap<Vertex, usize>,
    edge_set: HashSet<[Vertex; 2]>,
    triangle_set: HashSet<[Vertex; 3]>,
    neighbors: Vec<Vec<Vertex>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.triangles == other.triangles
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges)
            .field("triangles", &self.triangles)
            .finish()
    }
}

impl SimplicialComplex {
    /// Builds the closure of `simplices` together with the listed
    /// `vertices`. With `truncate`, simplices of dimension above 2 contribute
    /// their 2-skeleton; otherwise they are rejected.
    pub fn from_simplices(
        vertices: &[Vertex],
        simplices: &[Vec<Vertex>],
        truncate: bool,
    ) -> Result<(Self, ClosureReport), ComplexError> {
        let mut report = ClosureReport::default();
        let mut vs: BTreeSet<Vertex> = vertices.iter().copied().collect();
        let mut es: BTreeSet<[Vertex; 2]> = BTreeSet::new();
        let mut ts: BTreeSet<[Vertex; 3]> = BTreeSet::new();
        let mut listed_edges: BTreeSet<[Vertex; 2]> = BTreeSet::new();
        let before = vs.len();
        for s in simplices {
            let s = Simplex::new(s.clone())?;
            let v = s.vertices();
            if v.len() > 3 {
                if !truncate {
                    return Err(ComplexError::DimensionTooHigh(v.to_vec()));
                }
                report.truncated += 1;
            }
            for (i, &a) in v.iter().enumerate() {
                for (j, &b) in v.iter().enumerate().skip(i + 1) {
                    es.insert([a, b]);
                    for &c in &v[j + 1..] {
                        ts.insert([a, b, c]);
                    }
                }
            }
            vs.extend(v.iter().copied());
            if v.len() == 2 {
                listed_edges.insert([v[0], v[1]]);
            }
        }
        report.added_vertices = vs.len() - before;
        let explicit_edges: BTreeSet<[Vertex; 2]> = listed_edges;
        let triangle_edges: BTreeSet<[Vertex; 2]> =
            ts.iter().flat_map(|&[a, b, c]| [[a, b], [a, c], [b, c]]).collect();
        report.added_edges = triangle_edges.difference(&explicit_edges).count();
        Ok((Self::from_sorted(vs.into_iter().collect(), es.into_iter().collect(), ts.into_iter().collect()), report))
    }

    /// Convenience constructor from a list of simplices (closure applied,
    /// higher simplices rejected).
    pub fn build(simplices: &[&[Vertex]]) -> Result<Self, ComplexError> {
        let s: Vec<Vec<Vertex>> = simplices.iter().map(|s| s.to_vec()).collect();
        Ok(Self::from_simplices(&[], &s, false)?.0)
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new(), Vec::new(), Vec::new())
    }

    fn from_sorted(vertices: Vec<Vertex>, edges: Vec<[Vertex; 2]>, triangles: Vec<[Vertex; 3]>) -> Self {
        let position: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut neighbors = vec![Vec::new(); vertices.len()];
        for &[a, b] in &edges {
            neighbors[position[&a]].push(b);
            neighbors[position[&b]].push(a);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }
        Self {
            edge_set: edges.iter().copied().collect(),
            triangle_set: triangles.iter().copied().collect(),
            vertices,
            edges,
            triangles,
            position,
            neighbors,
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[Vertex; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[Vertex; 3]] {
        &self.triangles
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn simplex_count(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        if !self.triangles.is_empty() {
            Some(2)
        } else if !self.edges.is_empty() {
            Some(1)
        } else if !self.vertices.is_empty() {
            Some(0)
        } else {
            None
        }
    }

    /// Position of `v` in the sorted vertex list.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.position.get(&v).copied()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.position.contains_key(&v)
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_set.contains(&[u.min(v), u.max(v)])
    }

    /// Whether the vertex set (any order, no repeats) spans a simplex.
    pub fn contains_simplex(&self, vertices: &[Vertex]) -> bool {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        match v.as_slice() {
            [a] => self.contains_vertex(*a),
            [a, b] => self.edge_set.contains(&[*a, *b]),
            [a, b, c] => self.triangle_set.contains(&[*a, *b, *c]),
            _ => false,
        }
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.position(v).map_or(&[], |p| &self.neighbors[p])
    }

    /// Every simplex: vertices, then edges, then triangles, each ascending.
    pub fn simplices(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self.vertices.iter().map(|&v| Simplex(vec![v])).collect();
        out.extend(self.edges.iter().map(|e| Simplex(e.to_vec())));
        out.extend(self.triangles.iter().map(|t| Simplex(t.to_vec())));
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Full subcomplex spanned by the vertices satisfying `keep`.
    pub fn induced(&self, mut keep: impl FnMut(Vertex) -> bool) -> Self {
        let vs: Vec<Vertex> = self.vertices.iter().copied().filter(|&v| keep(v)).collect();
        let set: HashSet<Vertex> = vs.iter().copied().collect();
        let es = self.edges.iter().copied().filter(|e| e.iter().all(|v| set.contains(v))).collect();
        let ts = self.triangles.iter().copied().filter(|t| t.iter().all(|v| set.contains(v))).collect();
        Self::from_sorted(vs, es, ts)
    }

    /// Standard barycentric subdivision.
    ///
    /// The new vertex of each simplex is its index in [`Self::simplices`]
    /// order; the returned map sends every original simplex to it.
    pub fn barycentric_subdivide(&self) -> (Self, BTreeMap<Simplex, Vertex>) {
        let simplices = self.simplices();
        let bary: BTreeMap<Simplex, Vertex> = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let b = |s: &[Vertex]| bary[&Simplex(s.to_vec())];
        let mut vs = Vec::new();
        let mut es = BTreeSet::new();
        let mut ts = BTreeSet::new();
        for &v in &self.vertices {
            vs.push(b(&[v]));
        }
        for &[u, v] in &self.edges {
            let e = b(&[u, v]);
            vs.push(e);
            for w in [u, v] {
                let x = b(&[w]);
                es.insert([x.min(e), x.max(e)]);
            }
        }
        for &[p, q, r] in &self.triangles {
            let t = b(&[p, q, r]);
            vs.push(t);
            for (v, e) in [(p, [p, q]), (q, [p, q]), (p, [p, r]), (r, [p, r]), (q, [q, r]), (r, [q, r])] {
                let (x, y) = (b(&[v]), b(&e));
                let mut tri = [x, y, t];
                tri.sort_unstable();
                ts.insert(tri);
                es.insert([x.min(t), x.max(t)]);
                es.insert([y.min(t), y.max(t)]);
            }
        }
        vs.sort_unstable();
        (Self::from_sorted(vs, es.into_iter().collect(), ts.into_iter().collect()), bary)
    }

    /// Vertex sets of the connected components, each ascending, ordered by
    /// least vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for (start, &v) in self.vertices.iter().enumerate() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![v];
            let mut queue = VecDeque::from([v]);
            while let Some(x) = queue.pop_front() {
                for &y in self.neighbors(x) {
                    let p = self.position[&y];
                    if !seen[p] {
                        seen[p] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Breadth-first spanning tree of the component of `root`, exploring
    /// neighbors in ascending order.
    pub fn spanning_tree(&self, root: Vertex) -> Result<SpanningTree, ComplexError> {
        self.grow_tree(root, |frontier| frontier.pop_front())
    }

    /// A spanning tree grown from `root` by attaching a uniformly chosen
    /// frontier vertex at each step.
    pub fn random_spanning_tree(&self, root: Vertex, rng: &mut impl Rng) -> Result<SpanningTree, ComplexError> {
        self.grow_tree(root, |frontier| {
            if frontier.is_empty() {
                None
            } else {
                let i = rng.gen_range(0..frontier.len());
                frontier.swap_remove_back(i)
            }
        })
    }

    fn grow_tree(
        &self,
        root: Vertex,
        mut next: impl FnMut(&mut VecDeque<Vertex>) -> Option<Vertex>,
    ) -> Result<SpanningTree, ComplexError> {
        if !self.contains_vertex(root) {
            return Err(ComplexError::NotAVertex(root));
        }
        let mut parent = BTreeMap::new();
        let mut order = vec![root];
        let mut reached: HashSet<Vertex> = HashSet::from([root]);
        let mut frontier = VecDeque::from([root]);
        while let Some(x) = next(&mut frontier) {
            for &y in self.neighbors(x) {
                if reached.insert(y) {
                    parent.insert(y, x);
                    order.push(y);
                    frontier.push_back(y);
                }
            }
        }
        let edges = parent.iter().map(|(&c, &p)| [c.min(p), c.max(p)]).collect();
        Ok(SpanningTree { root, parent, edges, order })
    }
}

/// A spanning tree of the component of its root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    root: Vertex,
    parent: BTreeMap<Vertex, Vertex>,
    edges: BTreeSet<[Vertex; 2]>,
    order: Vec<Vertex>,
}

impl SpanningTree {
    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn edges(&self) -> &BTreeSet<[Vertex; 2]> {
        &self.edges
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent.get(&v).copied()
    }

    /// Spanned vertices in discovery order.
    pub fn spanned(&self) -> &[Vertex] {
        &self.order
    }

    pub fn spans(&self, v: Vertex) -> bool {
        v == self.root || self.parent.contains_key(&v)
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&[u.min(v), u.max(v)])
    }

    /// The tree path from the root to `v`.
    pub fn path_from_root(&self, v: Vertex) -> Option<EdgePath> {
        if !self.spans(v) {
            return None;
        }
        let mut vertices = vec![v];
        let mut x = v;
        while let Some(&p) = self.parent.get(&x) {
            vertices.push(p);
            x = p;
        }
        vertices.reverse();
        Some(EdgePath { vertices })
    }
}

/// A path along edges, recorded as its vertex sequence. A single vertex is
/// the constant path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgePath {
    vertices: Vec<Vertex>,
}

impl EdgePath {
    pub fn new(complex: &SimplicialComplex, vertices: Vec<Vertex>) -> Result<Self, ComplexError> {
        let first = *vertices.first().ok_or(ComplexError::EmptyPath)?;
        if !complex.contains_vertex(first) {
            return Err(ComplexError::NotAVertex(first));
        }
        for w in vertices.windows(2) {
            if !complex.contains_edge(w[0], w[1]) || w[0] == w[1] {
                return Err(ComplexError::NotAnEdge(w[0], w[1]));
            }
        }
        Ok(Self { vertices })
    }

    pub fn constant(v: Vertex) -> Self {
        Self { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        self.vertices[self.vertices.len() - 1]
    }

    /// Number of edge steps.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn steps(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn reversed(&self) -> Self {
        Self { vertices: self.vertices.iter().rev().copied().collect() }
    }

    pub fn concat(&self, other: &EdgePath) -> Result<Self, ComplexError> {
        if self.end() != other.start() {
            return Err(ComplexError::PathsDoNotChain(self.end(), other.start()));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        Ok(Self { vertices })
    }

    /// Image under a vertex map. The caller guarantees the map is simplicial.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Self {
        Self { vertices: self.vertices.iter().map(|&v| f(v)).collect() }
    }
}

/// The edge-path group of a connected complex relative to a spanning tree:
/// one generator per non-tree edge `{u, v}` (`u < v`, oriented `u -> v`) and
/// one relator per triangle boundary.
#[derive(Clone, Debug)]
pub struct EdgePathGroup {
    tree: SpanningTree,
    generators: Vec<[Vertex; 2]>,
    index: HashMap<[Vertex; 2], usize>,
    edges: HashSet<[Vertex; 2]>,
    presentation: Presentation,
}

impl EdgePathGroup {
    pub fn new(complex: &SimplicialComplex, tree: SpanningTree) -> Result<Self, ComplexError> {
        if tree.spanned().len() != complex.vertex_count() {
            return Err(ComplexError::Disconnected);
        }
        let generators: Vec<[Vertex; 2]> =
            complex.edges().iter().copied().filter(|e| !tree.edges().contains(e)).collect();
        let index: HashMap<[Vertex; 2], usize> = generators.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let names = generators.iter().map(|[u, v]| format!("e{u}_{v}")).collect();
        let mut group = Self {
            tree,
            generators,
            index,
            edges: complex.edges().iter().copied().collect(),
            presentation: Presentation::trivial(),
        };
        let relators = complex
            .triangles()
            .iter()
            .map(|&[a, b, c]| {
                [(a, b), (b, c), (c, a)].into_iter().filter_map(|(u, v)| group.edge_letter(u, v)).collect()
            })
            .collect();
        group.presentation = Presentation::new(names, relators).expect("generator indices in range");
        Ok(group)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn root(&self) -> Vertex {
        self.tree.root()
    }

    /// Non-tree edges in generator order.
    pub fn generator_edges(&self) -> &[[Vertex; 2]] {
        &self.generators
    }

    /// Letter contributed by traversing `u -> v`, `None` for tree edges.
    fn edge_letter(&self, u: Vertex, v: Vertex) -> Option<Letter> {
        let key = [u.min(v), u.max(v)];
        self.index.get(&key).map(|&g| if u < v { Letter::pos(g) } else { Letter::neg(g) })
    }

    /// Word of a closed edge path at the root: tree edges vanish, non-tree
    /// edges contribute their generator signed by direction. Freely reduced.
    pub fn loop_word(&self, path: &EdgePath) -> Result<Word, ComplexError> {
        let root = self.root();
        if path.start() != root || path.end() != root {
            return Err(ComplexError::NotClosedAtRoot { root, start: path.start(), end: path.end() });
        }
        let mut w = Word::empty();
        for (u, v) in path.steps() {
            if !self.edges.contains(&[u.min(v), u.max(v)]) {
                return Err(ComplexError::NotAnEdge(u, v));
            }
            if let Some(l) = self.edge_letter(u, v) {
                w.push(l);
            }
        }
        Ok(w)
    }

    /// Closed path realizing generator `i`: tree path to `u`, the edge
    /// `u -> v`, tree path back from `v`.
    pub fn generator_loop(&self, i: usize) -> EdgePath {
        let [u, v] = self.generators[i];
        let to_u = self.tree.path_from_root(u).expect("tree spans the complex");
        let from_v = self.tree.path_from_root(v).expect("tree spans the complex").reversed();
        let mut vertices = to_u.vertices;
        vertices.extend_from_slice(&from_v.vertices);
        EdgePath { vertices }
    }
}

/// Presentation of the fundamental group of a connected complex at the
/// tree's root.
pub fn edge_path_presentation(complex: &SimplicialComplex, tree: &SpanningTree) -> Result<Presentation, ComplexError> {
    Ok(EdgePathGroup::new(complex, tree.clone())?.presentation)
}

/// Serialized complex: `{"vertices":[..], "simplices":[[..], ..]}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ComplexJson {
    #[serde(default)]
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub simplices: Vec<Vec<Vertex>>,
}

impl ComplexJson {
    pub fn build(&self, truncate: bool) -> Result<(SimplicialComplex, ClosureReport), ComplexError> {
        SimplicialComplex::from_simplices(&self.vertices, &self.simplices, truncate)
    }

    /// Vertices plus maximal simplices of `complex`.
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        let in_triangle: HashSet<[Vertex; 2]> =
            complex.triangles().iter().flat_map(|&[a, b, c]| [[a, b], [a, c], [b, c]]).collect();
        let mut simplices: Vec<Vec<Vertex>> =
            complex.edges().iter().filter(|e| !in_triangle.contains(*e)).map(|e| e.to_vec()).collect();
        simplices.extend(complex.triangles().iter().map(|t| t.to_vec()));
        Self { vertices: complex.vertices().to_vec(), simplices }
    }
}
