//! Graphs of groups: the presentation of the fundamental group, and the
//! quotient by all vertex groups, which is the free fundamental group of the
//! underlying graph.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::presentation::{Letter, Presentation, PresentationError, Word};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GogError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("edge {edge}, pair {pair}: word uses a generator outside its vertex group")]
    BadEdgeWord { edge: usize, pair: usize },
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("malformed graph of groups: {0}")]
    Json(String),
}

/// How the spanning tree whose stable letters are killed is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TreeChoice {
    /// Breadth first from the first vertex, edges in input order.
    #[default]
    Bfs,
    /// Uniformly shuffled edges fed to Kruskal's algorithm.
    Random(u64),
}

/// A connected graph with a presented group at each vertex. Each edge
/// carries pairs `(α(a), ω(a))`: the images of one edge-group generator in
/// the source and target vertex groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfGroups {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    vertex_groups: Vec<Presentation>,
    edge_pairs: Vec<Vec<(Word, Word)>>,
}

impl GraphOfGroups {
    /// Vertices missing from `vertex_groups` get the trivial group, edges
    /// missing from `edge_pairs` the trivial edge group.
    pub fn new(
        vertices: Vec<usize>,
        edges: Vec<(usize, usize)>,
        mut vertex_groups: BTreeMap<usize, Presentation>,
        mut edge_pairs: BTreeMap<usize, Vec<(Word, Word)>>,
    ) -> Result<Self, GogError> {
        if vertices.is_empty() {
            return Err(GogError::NoVertices);
        }
        let mut index = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            if index.insert(v, i).is_some() {
                return Err(GogError::DuplicateVertex(v));
            }
        }
        for &(u, v) in &edges {
            for x in [u, v] {
                if !index.contains_key(&x) {
                    return Err(GogError::UnknownVertex(x));
                }
            }
        }
        if let Some(&v) = vertex_groups.keys().find(|v| !index.contains_key(v)) {
            return Err(GogError::UnknownVertex(v));
        }
        if let Some(&e) = edge_pairs.keys().find(|&&e| e >= edges.len()) {
            return Err(GogError::UnknownEdge(e));
        }
        let vertex_groups: Vec<Presentation> =
            vertices.iter().map(|v| vertex_groups.remove(v).unwrap_or_else(Presentation::trivial)).collect();
        let edge_pairs: Vec<Vec<(Word, Word)>> = (0..edges.len()).map(|e| edge_pairs.remove(&e).unwrap_or_default()).collect();
        let fits = |w: &Word, p: &Presentation| w.letters().iter().all(|l| l.gen < p.generator_count());
        for (e, pairs) in edge_pairs.iter().enumerate() {
            let (u, v) = edges[e];
            for (pair, (a, b)) in pairs.iter().enumerate() {
                if !fits(a, &vertex_groups[index[&u]]) || !fits(b, &vertex_groups[index[&v]]) {
                    return Err(GogError::BadEdgeWord { edge: e, pair });
                }
            }
        }
        let g = Self { vertices, edges, vertex_groups, edge_pairs };
        if g.components() != 1 {
            return Err(GogError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_group(&self, v: usize) -> Option<&Presentation> {
        self.position(v).map(|i| &self.vertex_groups[i])
    }

    /// Rank of the free fundamental group of the underlying graph:
    /// `#E - #V + 1`.
    pub fn graph_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    fn endpoints(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.edges[e];
        (self.position(u).expect("validated"), self.position(v).expect("validated"))
    }

    fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        let mut count = self.vertices.len();
        for e in 0..self.edges.len() {
            let (a, b) = self.endpoints(e);
            if uf.union(a, b) {
                count -= 1;
            }
        }
        count
    }

    /// Edges of a spanning tree, sorted.
    pub fn spanning_tree(&self, choice: TreeChoice) -> Vec<usize> {
        let mut tree = match choice {
            TreeChoice::Bfs => {
                let mut seen = vec![false; self.vertices.len()];
                let mut tree = Vec::new();
                let mut queue = VecDeque::from([0]);
                seen[0] = true;
                while let Some(x) = queue.pop_front() {
                    for e in 0..self.edges.len() {
                        let (a, b) = self.endpoints(e);
                        let y = if a == x { b } else if b == x { a } else { continue };
                        if !seen[y] {
                            seen[y] = true;
                            tree.push(e);
                            queue.push_back(y);
                        }
                    }
                }
                tree
            }
            TreeChoice::Random(seed) => {
                let mut order: Vec<usize> = (0..self.edges.len()).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                let mut uf = UnionFind::new(self.vertices.len());
                order
                    .into_iter()
                    .filter(|&e| {
                        let (a, b) = self.endpoints(e);
                        uf.union(a, b)
                    })
                    .collect()
            }
        };
        tree.sort_unstable();
        tree
    }

    /// `{"vertices", "edges", "vertex_groups", "edge_groups"}`; edge words
    /// use the generator names of the respective vertex groups.
    pub fn from_json(value: &Value) -> Result<Self, GogError> {
        let dto: GogJson = serde_json::from_value(value.clone()).map_err(|e| GogError::Json(e.to_string()))?;
        let edges: Vec<(usize, usize)> = dto.edges.iter().map(|&[u, v]| (u, v)).collect();
        let mut edge_pairs = BTreeMap::new();
        for (&e, pairs) in &dto.edge_groups {
            let &(u, v) = edges.get(e).ok_or(GogError::UnknownEdge(e))?;
            let group = |x: usize| dto.vertex_groups.get(&x).cloned().unwrap_or_else(Presentation::trivial);
            let (pu, pv) = (group(u), group(v));
            let words = pairs
                .iter()
                .enumerate()
                .map(|(i, [a, b])| Ok((pu.word_from_json(a, i)?, pv.word_from_json(b, i)?)))
                .collect::<Result<Vec<_>, PresentationError>>()?;
            edge_pairs.insert(e, words);
        }
        Self::new(dto.vertices, edges, dto.vertex_groups, edge_pairs)
    }

    pub fn to_json(&self) -> Value {
        let dto = GogJson {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            vertex_groups: self.vertices.iter().copied().zip(self.vertex_groups.iter().cloned()).collect(),
            edge_groups: self
                .edge_pairs
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_empty())
                .map(|(e, pairs)| {
                    let (a, b) = self.endpoints(e);
                    let (pa, pb) = (&self.vertex_groups[a], &self.vertex_groups[b]);
                    (e, pairs.iter().map(|(x, y)| [pa.word_to_json(x), pb.word_to_json(y)]).collect())
                })
                .collect(),
        };
        serde_json::to_value(dto).expect("graph of groups serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct GogJson {
    vertices: Vec<usize>,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    vertex_groups: BTreeMap<usize, Presentation>,
    #[serde(default)]
    edge_groups: BTreeMap<usize, Vec<[Value; 2]>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    /// Merges the classes of `a` and `b`; false if already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

fn shifted(w: &Word, offset: usize) -> Word {
    w.letters().iter().map(|l| Letter { gen: l.gen + offset, inverse: l.inverse }).collect()
}

/// Generators: each vertex group's generators (named `name_v`) then one
/// stable letter `t_e` per edge. Relators: the vertex relators,
/// `t_e α(a) t_e^-1 ω(a)^-1` per edge pair, and `t_e` for tree edges.
pub fn gog_presentation(g: &GraphOfGroups) -> Presentation {
    gog_presentation_with_tree(g, TreeChoice::Bfs)
}

pub fn gog_presentation_with_tree(g: &GraphOfGroups, tree: TreeChoice) -> Presentation {
    let mut names = Vec::new();
    let mut offsets = Vec::new();
    let mut relators = Vec::new();
    for (i, p) in g.vertex_groups.iter().enumerate() {
        offsets.push(names.len());
        relators.extend(p.relators().iter().map(|r| shifted(r, names.len())));
        names.extend(p.names().iter().map(|n| format!("{n}_{}", g.vertices[i])));
    }
    let stable = names.len();
    names.extend((0..g.edges.len()).map(|e| format!("t{e}")));
    for (e, pairs) in g.edge_pairs.iter().enumerate() {
        let (a, b) = g.endpoints(e);
        let t = Word::gen(stable + e);
        for (x, y) in pairs {
            relators.push(&(&(&t * &shifted(x, offsets[a])) * &t.inverse()) * &shifted(y, offsets[b]).inverse());
        }
    }
    relators.extend(g.spanning_tree(tree).into_iter().map(|e| Word::gen(stable + e)));
    Presentation::new(names, relators).expect("generated names are distinct and relators in range")
}

/// [`gog_presentation`] with every vertex-group generator killed; the
/// result is free of rank [`GraphOfGroups::graph_rank`].
pub fn kill_inertia(g: &GraphOfGroups) -> Presentation {
    kill_inertia_with_tree(g, TreeChoice::Bfs)
}

pub fn kill_inertia_with_tree(g: &GraphOfGroups, tree: TreeChoice) -> Presentation {
    let p = gog_presentation_with_tree(g, tree);
    let vertex_gens: usize = g.vertex_groups.iter().map(Presentation::generator_count).sum();
    p.with_relators((0..vertex_gens).map(Word::gen)).expect("generators in range")
}
