//! `π1(X/G)` from the action of `G` on `π1(X)`.
//!
//! With a basepoint `x` fixed by all of `G`, the fundamental group of the
//! coarse quotient is the group of coinvariants `π1(X, x)_G` modulo the
//! normal closure of the loops `λ = γ (gγ)^-1`, one for each element `g` and
//! each component of its fixed set, where `γ` runs from `x` into that
//! component. When no vertex is fixed by the whole group, a cone over the
//! orbit of the basepoint supplies one (the apex).

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{ActionError, FiniteAction};
use crate::complex::{ComplexError, EdgePath, EdgePathGroup, Simplex, Vertex};
use crate::group::NamedGroup;
use crate::presentation::{
    fingerprint, tietze_simplify_with_report, Fingerprint, HomCaps, Presentation, PresentationError, Word,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GhostError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("complex is not connected")]
    Disconnected,
    #[error("basepoint {0} is not fixed by every group element")]
    BasepointNotFixed(Vertex),
    #[error("path ends at {vertex}, which element {element} does not fix")]
    EndpointNotFixed { element: usize, vertex: Vertex },
    #[error("path starts at {start}, not at the basepoint {basepoint}")]
    PathNotRooted { start: Vertex, basepoint: Vertex },
}

/// Knobs for [`pi1_of_quotient`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GhostOptions {
    /// Requested basepoint (a vertex of the input complex). Absent, or not
    /// fixed by the whole group, means the cone trick is applied over its
    /// orbit (over the least vertex when absent).
    pub basepoint: Option<Vertex>,
    /// Keep one fixed-set component per orbit of the centralizer `C(g)`.
    pub center2: bool,
    /// Apply the cone trick even when the basepoint is globally fixed.
    pub force_cone: bool,
    /// Use a random spanning tree drawn from this seed instead of the
    /// breadth-first one.
    pub tree_seed: Option<u64>,
    /// Emit coinvariant relators for every group element rather than only
    /// for the generators.
    pub all_elements: bool,
    /// Fault injection: leave out the λ relator with this index (counting
    /// only nonempty λ relators, in emission order).
    pub drop_lambda: Option<usize>,
}

/// Where a relator of [`GhostResult::raw`] comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelatorSource {
    /// Boundary of a triangle of the complex.
    Original { triangle: [Vertex; 3] },
    /// `w^-1 g(w)` for group element `element` and presentation generator
    /// `generator`.
    Coinvariant { element: usize, generator: usize },
    /// `γ (gγ)^-1` for group element `element` and fixed-set component
    /// `component` (index in ascending least-vertex order).
    Lambda { element: usize, component: usize },
}

/// The path `γ` chosen for one fixed-set component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaPath {
    pub element: usize,
    pub component: usize,
    pub path: EdgePath,
    /// The λ word was nonempty and entered the presentation.
    pub emitted: bool,
}

/// Outcome of [`pi1_of_quotient`].
#[derive(Clone, Debug, Serialize)]
pub struct GhostResult {
    /// Edge-path presentation with coinvariant and λ relators appended,
    /// before simplification.
    pub raw: Presentation,
    /// One entry per relator of `raw`, in order.
    pub provenance: Vec<RelatorSource>,
    pub paths: Vec<LambdaPath>,
    /// Simplified presentation of `π1(X/G)`.
    pub presentation: Presentation,
    /// Basepoint in the complex actually used (the apex after a cone).
    pub basepoint: Vertex,
    pub cone_applied: bool,
    /// The action was subdivided once so that fixed sets are subcomplexes.
    pub subdivided: bool,
    /// Simplification stopped at its iteration cap.
    pub capped: bool,
    /// Vertex count of the complex actually used.
    pub vertices: usize,
    #[serde(skip)]
    pub space: FiniteAction,
}

impl GhostResult {
    /// The coinvariants `π1(X, x)_G`: the result without its λ relators.
    pub fn coinvariants_presentation(&self) -> Presentation {
        let kept = self
            .raw
            .relators()
            .iter()
            .zip(&self.provenance)
            .filter(|(_, s)| !matches!(s, RelatorSource::Lambda { .. }))
            .map(|(w, _)| w.clone())
            .collect();
        Presentation::new(self.raw.names().to_vec(), kept).expect("same generators")
    }

    pub fn relator_count(&self, kind: fn(&RelatorSource) -> bool) -> usize {
        self.provenance.iter().filter(|s| kind(s)).count()
    }

    pub fn lambda_count(&self) -> usize {
        self.relator_count(|s| matches!(s, RelatorSource::Lambda { .. }))
    }
}

/// `loop_word(γ · reverse(g·γ))`: the loop running out along `γ` to a
/// point fixed by `g` and back along the image path.
pub fn lambda_word(action: &FiniteAction, group: &EdgePathGroup, g: usize, gamma: &EdgePath) -> Result<Word, GhostError> {
    action.check_element(g)?;
    let basepoint = group.root();
    if gamma.start() != basepoint {
        return Err(GhostError::PathNotRooted { start: gamma.start(), basepoint });
    }
    if action.apply(g, basepoint) != basepoint {
        return Err(GhostError::BasepointNotFixed(basepoint));
    }
    let y = gamma.end();
    if action.apply(g, y) != y {
        return Err(GhostError::EndpointNotFixed { element: g, vertex: y });
    }
    let image = gamma.map(|v| action.apply(g, v));
    let round = gamma.concat(&image.reversed())?;
    Ok(group.loop_word(&round)?)
}

/// The relators `w^-1 g(w)` for every element in `elements` and every
/// generator `w` of the edge-path group, skipping those that reduce to the
/// empty word. Entries are `(element, generator, relator)`.
pub fn coinvariant_relators(
    action: &FiniteAction,
    group: &EdgePathGroup,
    elements: &[usize],
) -> Result<Vec<(usize, usize, Word)>, GhostError> {
    let basepoint = group.root();
    if !action.is_globally_fixed(basepoint) {
        return Err(GhostError::BasepointNotFixed(basepoint));
    }
    let mut out = Vec::new();
    for &g in elements {
        action.check_element(g)?;
        for i in 0..group.generator_edges().len() {
            let image = group.generator_loop(i).map(|v| action.apply(g, v));
            let w = &Word::gen_inv(i) * &group.loop_word(&image)?;
            if !w.is_empty() {
                out.push((g, i, w));
            }
        }
    }
    Ok(out)
}

/// Components of `X^g` to use, each as its least vertex: all of them, or
/// with `center2` one per orbit of the centralizer.
fn fixed_components(action: &FiniteAction, g: usize, center2: bool) -> Result<Vec<(usize, Vertex)>, GhostError> {
    let comps = action.fixed_subcomplex(g)?.complex.connected_components();
    if !center2 {
        return Ok(comps.iter().enumerate().map(|(i, c)| (i, c[0])).collect());
    }
    let comp_of: BTreeMap<Vertex, usize> =
        comps.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&v| (v, i))).collect();
    let centralizer = action.group().centralizer(g);
    let mut out = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let least_in_orbit = centralizer.elements().iter().map(|&h| comp_of[&action.apply(h, c[0])]).min();
        if least_in_orbit == Some(i) {
            out.push((i, c[0]));
        }
    }
    Ok(out)
}

/// Whether some element stabilizes a simplex without fixing it pointwise.
fn needs_fidelity_subdivision(action: &FiniteAction) -> bool {
    !action.stabilizers_fix_pointwise()
}

/// Presentation of `π1(X/G)` via coinvariants and λ relators.
///
/// Steps: subdivide once if some stabilizer moves the vertices of the
/// simplex it stabilizes (so that each `X^g` is a subcomplex); choose the
/// basepoint, coning off its orbit when it is not globally fixed; take the
/// edge-path presentation at the basepoint; append the coinvariant
/// relators and one λ relator per element and fixed-set component (with `γ`
/// the tree path to the component's least vertex); simplify.
pub fn pi1_of_quotient(action: &FiniteAction, options: &GhostOptions) -> Result<GhostResult, GhostError> {
    if !action.complex().is_connected() || action.complex().is_empty() {
        return Err(GhostError::Disconnected);
    }
    if let Some(x) = options.basepoint {
        if !action.complex().contains_vertex(x) {
            return Err(ComplexError::NotAVertex(x).into());
        }
    }
    let requested = options.basepoint.unwrap_or(action.complex().vertices()[0]);

    let (mut space, mut x, subdivided) = if needs_fidelity_subdivision(action) {
        let (sub, bary) = action.subdivide();
        let x = bary[&Simplex::new(vec![requested])?];
        (sub, x, true)
    } else {
        (action.clone(), requested, false)
    };
    let cone_applied = options.force_cone || options.basepoint.is_none() || !space.is_globally_fixed(x);
    if cone_applied {
        let (coned, apex) = space.cone_over_orbit(x)?;
        space = coned;
        x = apex;
    }

    let tree = match options.tree_seed {
        Some(seed) => space.complex().random_spanning_tree(x, &mut ChaCha8Rng::seed_from_u64(seed))?,
        None => space.complex().spanning_tree(x)?,
    };
    let group = EdgePathGroup::new(space.complex(), tree)?;
    let base = group.presentation();

    let mut relators: Vec<Word> = base.relators().to_vec();
    let mut provenance: Vec<RelatorSource> = space
        .complex()
        .triangles()
        .iter()
        .map(|&triangle| RelatorSource::Original { triangle })
        .collect();
    debug_assert_eq!(relators.len(), provenance.len());

    let elements: Vec<usize> = if options.all_elements {
        (1..space.order()).collect()
    } else {
        space.generators().iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    };
    for (element, generator, w) in coinvariant_relators(&space, &group, &elements)? {
        relators.push(w);
        provenance.push(RelatorSource::Coinvariant { element, generator });
    }

    let mut paths = Vec::new();
    let mut emitted = 0usize;
    for g in 1..space.order() {
        for (component, y) in fixed_components(&space, g, options.center2)? {
            let path = group.tree().path_from_root(y).expect("tree spans the complex");
            let w = lambda_word(&space, &group, g, &path)?;
            let keep = !w.is_empty();
            if keep {
                if options.drop_lambda != Some(emitted) {
                    relators.push(w);
                    provenance.push(RelatorSource::Lambda { element: g, component });
                }
                emitted += 1;
            }
            paths.push(LambdaPath { element: g, component, path, emitted: keep });
        }
    }

    let raw = Presentation::new(base.names().to_vec(), relators)?;
    let report = tietze_simplify_with_report(&raw);
    Ok(GhostResult {
        raw,
        provenance,
        paths,
        presentation: report.presentation,
        basepoint: x,
        cone_applied,
        subdivided,
        capped: report.capped,
        vertices: space.complex().vertex_count(),
        space,
    })
}

/// Outcome of [`armstrong_quotient`].
#[derive(Clone, Debug, Serialize)]
pub struct ArmstrongResult {
    /// Elements with a fixed point (they stabilize some simplex).
    pub fixed_point_elements: Vec<usize>,
    pub normal_closure_order: usize,
    pub quotient_order: usize,
    /// Simplified presentation of `G / <<fixed-point elements>>`.
    pub presentation: Presentation,
}

/// `G` modulo the normal closure of the elements with fixed points, which
/// is `π1(X/G)` when `X` is simply connected.
pub fn armstrong_quotient(action: &FiniteAction) -> ArmstrongResult {
    let group = action.group();
    let fixed_point_elements = action.elements_with_fixed_points();
    let normal = group.normal_closure(&fixed_point_elements);
    let (quotient, _) = group.quotient(&normal);
    let presentation = crate::presentation::tietze_simplify(&quotient.presentation(&quotient.generating_set()));
    ArmstrongResult {
        fixed_point_elements,
        normal_closure_order: normal.order(),
        quotient_order: quotient.order(),
        presentation,
    }
}

/// One row of a [`ProxyReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryMatch {
    pub target: String,
    pub left: u128,
    pub right: u128,
    pub matches: bool,
}

/// Entry-by-entry comparison of two fingerprints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProxyReport {
    pub left: Fingerprint,
    pub right: Fingerprint,
    pub abelian_matches: bool,
    pub entries: Vec<EntryMatch>,
    pub all_match: bool,
}

impl ProxyReport {
    pub fn compare(left: Fingerprint, right: Fingerprint) -> Self {
        let entries: Vec<EntryMatch> = left
            .homs
            .iter()
            .zip(&right.homs)
            .map(|(a, b)| EntryMatch { target: a.target.clone(), left: a.homs, right: b.homs, matches: a.homs == b.homs })
            .collect();
        let abelian_matches = left.abelian == right.abelian;
        let all_match = abelian_matches && entries.iter().all(|e| e.matches) && left.homs.len() == right.homs.len();
        Self { left, right, abelian_matches, entries, all_match }
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &EntryMatch> {
        self.entries.iter().filter(|e| !e.matches)
    }
}

/// Compares `p` and `q` through their fingerprints: equal counts of
/// homomorphisms into every finite group is equality of profinite
/// completions, and the panel is a finite truncation of "every".
pub fn profinite_proxy_equal(
    p: &Presentation,
    q: &Presentation,
    panel: &[NamedGroup],
    caps: &HomCaps,
) -> Result<ProxyReport, PresentationError> {
    Ok(ProxyReport::compare(fingerprint(p, panel, caps)?, fingerprint(q, panel, caps)?))
}
