//! Finite groups acting on simplicial complexes by simplicial automorphisms.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, ComplexJson, Simplex, SimplicialComplex, Vertex};
use crate::group::{FiniteGroup, GroupError, PermutationGroup};

/// Default cap on the order of an acting group.
pub const DEFAULT_GROUP_CAP: usize = 4096;
/// Default number of tuple checks allowed for the regularity test before
/// falling back to an unconditional double subdivision.
pub const DEFAULT_REGULARITY_BUDGET: u64 = 10_000_000;
const MAX_SUBDIVISIONS: usize = 2;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("generator {generator} maps {from} to {to}, which is not a vertex")]
    ImageNotAVertex { generator: usize, from: Vertex, to: Vertex },
    #[error("generator {generator} is not injective on vertices")]
    NotBijective { generator: usize },
    #[error("generator {generator} does not map simplex {simplex:?} to a simplex")]
    NotSimplicial { generator: usize, simplex: Vec<Vertex> },
    #[error("group element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("action is still not regular after {0} barycentric subdivisions")]
    StillIrregular(usize),
}

/// A finite group acting on a complex, with every element enumerated.
///
/// Element 0 is the identity; [`FiniteAction::group`] gives the table with
/// `g * h` acting as "first `h`, then `g`".
#[derive(Clone, Debug)]
pub struct FiniteAction {
    complex: SimplicialComplex,
    perms: PermutationGroup,
}

/// Options for [`FiniteAction::regularize`] and [`FiniteAction::quotient_complex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularizeOptions {
    pub budget: u64,
    /// Subdivide exactly this many times instead of testing regularity.
    pub subdivisions: Option<usize>,
}

impl Default for RegularizeOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_REGULARITY_BUDGET, subdivisions: None }
    }
}

/// Result of the regularity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    Irregular,
    BudgetExceeded,
}

/// A regularized action and how the original vertices sit inside it.
#[derive(Clone, Debug)]
pub struct Regularized {
    pub action: FiniteAction,
    pub subdivisions: usize,
    /// Original vertex -> vertex of the subdivided complex.
    pub vertex_map: BTreeMap<Vertex, Vertex>,
}

/// The subcomplex fixed pointwise by one group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSubcomplex {
    pub element: usize,
    pub complex: SimplicialComplex,
}

/// Quotient complex of a regularized action.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub complex: SimplicialComplex,
    /// Vertex of the regularized complex -> orbit label (least vertex of the
    /// orbit).
    pub projection: BTreeMap<Vertex, Vertex>,
    pub subdivisions: usize,
    pub regularized: FiniteAction,
    /// Original vertex -> vertex of the regularized complex.
    pub vertex_map: BTreeMap<Vertex, Vertex>,
}

impl QuotientData {
    /// Image in the quotient of a vertex of the original complex.
    pub fn image_of_original(&self, v: Vertex) -> Option<Vertex> {
        self.vertex_map.get(&v).and_then(|w| self.projection.get(w)).copied()
    }
}

impl FiniteAction {
    /// Closes the group generated by `generators` (vertex maps; unlisted
    /// vertices are fixed) and checks that each generator is a simplicial
    /// automorphism.
    pub fn new(
        complex: SimplicialComplex,
        generators: &[BTreeMap<Vertex, Vertex>],
        cap: usize,
    ) -> Result<Self, ActionError> {
        let n = complex.vertex_count();
        let mut perms = Vec::with_capacity(generators.len());
        for (gi, map) in generators.iter().enumerate() {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut hit = vec![false; n];
            for (&from, &to) in map {
                let p = complex.position(from).ok_or(ComplexError::NotAVertex(from))?;
                let q = complex
                    .position(to)
                    .ok_or(ActionError::ImageNotAVertex { generator: gi, from, to })?;
                perm[p] = q;
            }
            for &q in &perm {
                if std::mem::replace(&mut hit[q], true) {
                    return Err(ActionError::NotBijective { generator: gi });
                }
            }
            perms.push(perm);
        }
        let group = PermutationGroup::generate(n, &perms, cap)?;
        let action = Self { complex, perms: group };
        for (gi, &g) in action.perms.generators().iter().enumerate() {
            for s in action.complex.simplices() {
                let image = action.apply_simplex(g, s.vertices());
                if !action.complex.contains_simplex(&image) {
                    return Err(ActionError::NotSimplicial { generator: gi, simplex: s.vertices().to_vec() });
                }
            }
        }
        Ok(action)
    }

    /// Convenience: generators as lists of `(from, to)` pairs.
    pub fn from_pairs(complex: SimplicialComplex, generators: &[&[(Vertex, Vertex)]]) -> Result<Self, ActionError> {
        let maps: Vec<BTreeMap<Vertex, Vertex>> =
            generators.iter().map(|g| g.iter().copied().collect()).collect();
        Self::new(complex, &maps, DEFAULT_GROUP_CAP)
    }

    /// The identity-only action.
    pub fn trivial(complex: SimplicialComplex) -> Self {
        Self::new(complex, &[], 1).expect("trivial group")
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self) -> &FiniteGroup {
        self.perms.group()
    }

    pub fn order(&self) -> usize {
        self.perms.order()
    }

    /// Element indices of the generators the action was built from.
    pub fn generators(&self) -> &[usize] {
        self.perms.generators()
    }

    pub fn check_element(&self, g: usize) -> Result<(), ActionError> {
        if g < self.order() {
            Ok(())
        } else {
            Err(ActionError::ElementOutOfRange(g))
        }
    }

    #[inline]
    pub fn apply(&self, g: usize, v: Vertex) -> Vertex {
        let p = self.complex.position(v).expect("vertex of the complex");
        self.complex.vertices()[self.perms.apply(g, p)]
    }

    pub fn apply_simplex(&self, g: usize, simplex: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = simplex.iter().map(|&v| self.apply(g, v)).collect();
        out.sort_unstable();
        out
    }

    /// Vertex map of element `g` (only moved vertices listed).
    pub fn vertex_map(&self, g: usize) -> BTreeMap<Vertex, Vertex> {
        self.complex
            .vertices()
            .iter()
            .map(|&v| (v, self.apply(g, v)))
            .filter(|(v, w)| v != w)
            .collect()
    }

    pub fn orbit(&self, v: Vertex) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = (0..self.order()).map(|g| self.apply(g, v)).collect();
        set.into_iter().collect()
    }

    /// Vertex orbits, each ascending, ordered by least element.
    pub fn vertex_orbits(&self) -> Vec<Vec<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &v in self.complex.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let orbit = self.orbit(v);
            seen.extend(orbit.iter().copied());
            out.push(orbit);
        }
        out
    }

    pub fn is_globally_fixed(&self, v: Vertex) -> bool {
        self.generators().iter().all(|&g| self.apply(g, v) == v)
    }

    pub fn globally_fixed_vertices(&self) -> Vec<Vertex> {
        self.complex.vertices().iter().copied().filter(|&v| self.is_globally_fixed(v)).collect()
    }

    /// The full subcomplex on the vertices fixed by `g`.
    pub fn fixed_subcomplex(&self, g: usize) -> Result<FixedSubcomplex, ActionError> {
        self.check_element(g)?;
        Ok(FixedSubcomplex { element: g, complex: self.complex.induced(|v| self.apply(g, v) == v) })
    }

    /// Whether `g` maps `simplex` onto itself as a set.
    pub fn stabilizes(&self, g: usize, simplex: &[Vertex]) -> bool {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        self.apply_simplex(g, &s) == s
    }

    /// Elements with a fixed point in the realization, i.e. stabilizing some
    /// simplex setwise (the barycenter is then fixed).
    pub fn elements_with_fixed_points(&self) -> Vec<usize> {
        let simplices = self.complex.simplices();
        (0..self.order())
            .filter(|&g| simplices.iter().any(|s| self.stabilizes(g, s.vertices())))
            .collect()
    }

    /// Whether every element stabilizing a simplex fixes it pointwise. When
    /// this holds, the fixed point set of `g` in the realization is exactly
    /// the realization of [`Self::fixed_subcomplex`].
    pub fn stabilizers_fix_pointwise(&self) -> bool {
        let simplices = self.complex.simplices();
        (1..self.order()).all(|g| {
            simplices.iter().filter(|s| s.dim() > 0).all(|s| {
                !self.stabilizes(g, s.vertices()) || s.vertices().iter().all(|&v| self.apply(g, v) == v)
            })
        })
    }

    /// Equivariant barycentric subdivision: `g` sends the barycenter of `σ`
    /// to the barycenter of `gσ`. Element indices are preserved.
    pub fn subdivide(&self) -> (FiniteAction, BTreeMap<Simplex, Vertex>) {
        let (complex, bary) = self.complex.barycentric_subdivide();
        let n = complex.vertex_count();
        let elements: Vec<Vec<u32>> = (0..self.order())
            .map(|g| {
                let mut perm = vec![0u32; n];
                for (s, &b) in &bary {
                    let image = Simplex::new(self.apply_simplex(g, s.vertices())).expect("simplex");
                    let pb = complex.position(b).expect("barycenter vertex");
                    perm[pb] = complex.position(bary[&image]).expect("barycenter vertex") as u32;
                }
                perm
            })
            .collect();
        let perms = self.perms.with_permutations(n, elements);
        (FiniteAction { complex, perms }, bary)
    }

    /// Tests the regularity condition: whenever the vertices `w_i = g_i v_i`
    /// of a tuple of orbit points over a simplex `(v_0, ..., v_n)` span a
    /// simplex (repeats allowed), a single `g` has `g v_i = w_i` for all `i`.
    /// At most `budget` tuples are examined.
    pub fn regularity(&self, budget: u64) -> Regularity {
        let mut work = 0u64;
        for s in self.complex.simplices() {
            let vs = s.vertices();
            if vs.len() < 2 {
                continue;
            }
            let orbits: Vec<Vec<Vertex>> = vs.iter().map(|&v| self.orbit(v)).collect();
            let mut tuple = Vec::with_capacity(vs.len());
            match self.check_tuples(vs, &orbits, &mut tuple, &mut work, budget) {
                Regularity::Regular => {}
                other => return other,
            }
        }
        Regularity::Regular
    }

    fn check_tuples(
        &self,
        simplex: &[Vertex],
        orbits: &[Vec<Vertex>],
        tuple: &mut Vec<Vertex>,
        work: &mut u64,
        budget: u64,
    ) -> Regularity {
        if tuple.len() == simplex.len() {
            let witnessed = (0..self.order())
                .any(|g| simplex.iter().zip(tuple.iter()).all(|(&v, &w)| self.apply(g, v) == w));
            return if witnessed { Regularity::Regular } else { Regularity::Irregular };
        }
        for &w in &orbits[tuple.len()] {
            *work += 1;
            if *work > budget {
                return Regularity::BudgetExceeded;
            }
            // Every partial tuple must itself span a simplex.
            let mut span: Vec<Vertex> = tuple.iter().copied().chain([w]).collect();
            span.sort_unstable();
            span.dedup();
            if !self.complex.contains_simplex(&span) {
                continue;
            }
            tuple.push(w);
            let r = self.check_tuples(simplex, orbits, tuple, work, budget);
            tuple.pop();
            if r != Regularity::Regular {
                return r;
            }
        }
        Regularity::Regular
    }

    /// Subdivides equivariantly until the action is regular (at most twice).
    /// When the regularity test exceeds its budget the action is subdivided
    /// twice without further testing.
    pub fn regularize(&self, options: &RegularizeOptions) -> Result<Regularized, ActionError> {
        let mut current = self.clone();
        let mut vertex_map: BTreeMap<Vertex, Vertex> = self.complex.vertices().iter().map(|&v| (v, v)).collect();
        let mut subdivisions = 0;
        let step = |current: &mut FiniteAction, vertex_map: &mut BTreeMap<Vertex, Vertex>| {
            let (next, bary) = current.subdivide();
            for w in vertex_map.values_mut() {
                *w = bary[&Simplex::new(vec![*w]).expect("vertex")];
            }
            *current = next;
        };
        if let Some(k) = options.subdivisions {
            for _ in 0..k {
                step(&mut current, &mut vertex_map);
            }
            return Ok(Regularized { action: current, subdivisions: k, vertex_map });
        }
        loop {
            match current.regularity(options.budget) {
                Regularity::Regular => break,
                Regularity::BudgetExceeded => {
                    while subdivisions < MAX_SUBDIVISIONS {
                        step(&mut current, &mut vertex_map);
                        subdivisions += 1;
                    }
                    break;
                }
                Regularity::Irregular if subdivisions == MAX_SUBDIVISIONS => {
                    return Err(ActionError::StillIrregular(subdivisions));
                }
                Regularity::Irregular => {
                    step(&mut current, &mut vertex_map);
                    subdivisions += 1;
                }
            }
        }
        Ok(Regularized { action: current, subdivisions, vertex_map })
    }

    /// Regularizes, then forms the complex of orbit images of simplices.
    pub fn quotient_complex(&self, options: &RegularizeOptions) -> Result<QuotientData, ActionError> {
        let Regularized { action, subdivisions, vertex_map } = self.regularize(options)?;
        let mut projection = BTreeMap::new();
        for orbit in action.vertex_orbits() {
            for &v in &orbit {
                projection.insert(v, orbit[0]);
            }
        }
        let images: BTreeSet<Vec<Vertex>> = action
            .complex
            .simplices()
            .iter()
            .map(|s| {
                let mut img: Vec<Vertex> = s.vertices().iter().map(|v| projection[v]).collect();
                img.sort_unstable();
                img.dedup();
                img
            })
            .collect();
        let images: Vec<Vec<Vertex>> = images.into_iter().collect();
        let (complex, _) = SimplicialComplex::from_simplices(&[], &images, false)?;
        Ok(QuotientData { complex, projection, subdivisions, regularized: action, vertex_map })
    }

    /// Attaches a cone over the orbit of `x`: a new apex joined by an edge to
    /// every vertex of `G·x`, fixed by the whole group. Returns the extended
    /// action and the apex.
    pub fn cone_over_orbit(&self, x: Vertex) -> Result<(FiniteAction, Vertex), ActionError> {
        if !self.complex.contains_vertex(x) {
            return Err(ComplexError::NotAVertex(x).into());
        }
        let apex = self.complex.vertices().last().map_or(0, |&v| v + 1);
        let mut simplices: Vec<Vec<Vertex>> = self.complex.simplices().into_iter().map(|s| s.vertices().to_vec()).collect();
        simplices.extend(self.orbit(x).into_iter().map(|w| vec![w, apex]));
        let (complex, _) = SimplicialComplex::from_simplices(&[], &simplices, false)?;
        let n = complex.vertex_count();
        // The apex is the largest id, so existing positions are unchanged.
        let elements: Vec<Vec<u32>> = (0..self.order())
            .map(|g| {
                let mut perm: Vec<u32> = (0..n - 1).map(|p| self.perms.apply(g, p) as u32).collect();
                perm.push((n - 1) as u32);
                perm
            })
            .collect();
        let perms = self.perms.with_permutations(n, elements);
        Ok((FiniteAction { complex, perms }, apex))
    }

    pub fn to_json(&self) -> ActionJson {
        ActionJson {
            complex: ComplexJson::from_complex(&self.complex),
            generators: self
                .generators()
                .iter()
                .map(|&g| self.vertex_map(g).into_iter().map(|(k, v)| (k.to_string(), v)).collect())
                .collect(),
        }
    }
}

/// Serialized action: `{"complex": <complex>, "generators": [{"0": 3, ...}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionJson {
    pub complex: ComplexJson,
    #[serde(default)]
    pub generators: Vec<BTreeMap<String, Vertex>>,
}

#[derive(thiserror::Error, Debug)]
pub enum ActionJsonError {
    #[error("generator {generator}: key {key:?} is not a vertex id")]
    BadKey { generator: usize, key: String },
    #[error(transparent)]
    Action(#[from] ActionError),
}

impl ActionJson {
    pub fn build(&self, truncate: bool, cap: usize) -> Result<FiniteAction, ActionJsonError> {
        let (complex, _) = self.complex.build(truncate).map_err(ActionError::from)?;
        let maps = self
            .generators
            .iter()
            .enumerate()
            .map(|(generator, m)| {
                m.iter()
                    .map(|(k, &v)| {
                        k.trim()
                            .parse::<Vertex>()
                            .map(|k| (k, v))
                            .map_err(|_| ActionJsonError::BadKey { generator, key: k.clone() })
                    })
                    .collect::<Result<BTreeMap<_, _>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteAction::new(complex, &maps, cap)?)
    }
}
