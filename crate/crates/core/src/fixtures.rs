//! Small complexes and actions used by tests, benchmarks and the example
//! corpus.

use std::collections::BTreeMap;

use crate::action::{FiniteAction, DEFAULT_GROUP_CAP};
use crate::complex::{SimplicialComplex, Vertex};

fn complex(simplices: Vec<Vec<Vertex>>) -> SimplicialComplex {
    SimplicialComplex::from_simplices(&[], &simplices, false).expect("fixture complex").0
}

fn action(c: SimplicialComplex, generators: Vec<Vec<Vertex>>) -> FiniteAction {
    let maps: Vec<BTreeMap<Vertex, Vertex>> =
        generators.into_iter().map(|g| g.into_iter().enumerate().collect()).collect();
    FiniteAction::new(c, &maps, DEFAULT_GROUP_CAP).expect("fixture action")
}

/// Cycle on vertices `0..n` (`n >= 3`).
pub fn polygon(n: usize) -> SimplicialComplex {
    complex((0..n).map(|i| vec![i, (i + 1) % n]).collect())
}

/// Hexagon with the reflection `v -> -v mod 6`, whose axis passes through
/// vertices 0 and 3.
pub fn hexagon_flip() -> FiniteAction {
    action(polygon(6), vec![(0..6).map(|v| (6 - v) % 6).collect()])
}

/// `n`-gon with the cyclic group of the given order acting by rotation
/// (`order` must divide `n`).
pub fn polygon_rotation(n: usize, order: usize) -> FiniteAction {
    assert_eq!(n % order, 0, "rotation order must divide the polygon size");
    let step = n / order;
    action(polygon(n), vec![(0..n).map(|v| (v + step) % n).collect()])
}

/// Dihedral group of order `2n` acting on the `n`-gon.
pub fn polygon_dihedral(n: usize) -> FiniteAction {
    action(polygon(n), vec![(0..n).map(|v| (v + 1) % n).collect(), (0..n).map(|v| (n - v) % n).collect()])
}

/// Hexagonal disk: rim `0..6` coned off to the center 6.
pub fn hex_disk() -> SimplicialComplex {
    complex((0..6).map(|i| vec![i, (i + 1) % 6, 6]).collect())
}

fn rim_map(f: impl Fn(usize) -> usize) -> Vec<Vertex> {
    (0..6).map(f).chain([6]).collect()
}

/// Rotation of the hexagonal disk about its center, of the given order.
pub fn hex_disk_rotation(order: usize) -> FiniteAction {
    assert_eq!(6 % order, 0);
    let step = 6 / order;
    action(hex_disk(), vec![rim_map(|v| (v + step) % 6)])
}

/// Reflection of the hexagonal disk across the axis through 0, 6 and 3.
pub fn hex_disk_flip() -> FiniteAction {
    action(hex_disk(), vec![rim_map(|v| (6 - v) % 6)])
}

/// Boundary of the octahedron. Vertex `k` and `k + 3` are antipodal:
/// 0, 1, 2 are `+x, +y, +z` and 3, 4, 5 are `-x, -y, -z`.
pub fn octahedron() -> SimplicialComplex {
    let mut tris = Vec::new();
    for a in [0, 3] {
        for b in [1, 4] {
            for c in [2, 5] {
                tris.push(vec![a, b, c]);
            }
        }
    }
    complex(tris)
}

/// The antipodal map on the octahedron (free; the quotient is `RP^2`).
pub fn octahedron_antipodal() -> FiniteAction {
    action(octahedron(), vec![(0..6).map(|v| (v + 3) % 6).collect()])
}

/// Octahedron with an arc `2 - 6 - 5` joining the poles `±z` outside the
/// sphere, under the antipodal map, which flips the arc about its midpoint
/// 6. The midpoint is the only globally fixed vertex. Returns the action and
/// the midpoint.
pub fn decorated_antipodal_sphere() -> (FiniteAction, Vertex) {
    let mut simplices: Vec<Vec<Vertex>> = octahedron().triangles().iter().map(|t| t.to_vec()).collect();
    simplices.push(vec![2, 6]);
    simplices.push(vec![5, 6]);
    let perm = (0..6).map(|v| (v + 3) % 6).chain([6]).collect();
    (action(complex(simplices), vec![perm]), 6)
}

/// Quarter turn of the octahedron about the `z` axis (fixes 2 and 5).
pub fn octahedron_quarter_turn() -> FiniteAction {
    action(octahedron(), vec![vec![1, 3, 2, 4, 0, 5]])
}

/// Reflection of the octahedron in the `xy` plane (swaps 2 and 5).
pub fn octahedron_reflection() -> FiniteAction {
    action(octahedron(), vec![vec![0, 1, 5, 3, 4, 2]])
}

/// Boundary of the tetrahedron on `0..4`.
pub fn tetrahedron_boundary() -> SimplicialComplex {
    complex(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
}

/// Rotation group `A4` of the tetrahedron; no vertex is globally fixed.
pub fn tetrahedron_a4() -> FiniteAction {
    action(tetrahedron_boundary(), vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// `S3` permuting vertices 0, 1, 2 of the tetrahedron and fixing 3.
pub fn tetrahedron_s3() -> FiniteAction {
    action(tetrahedron_boundary(), vec![vec![1, 2, 0, 3], vec![1, 0, 2, 3]])
}

/// Torus triangulated from an `m x n` grid (`m, n >= 3`); vertex `(i, j)` is
/// `i * n + j`.
pub fn torus(m: usize, n: usize) -> SimplicialComplex {
    let id = |i: usize, j: usize| (i % m) * n + (j % n);
    let mut tris = Vec::new();
    for i in 0..m {
        for j in 0..n {
            tris.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            tris.push(vec![id(i, j), id(i, j + 1), id(i + 1, j + 1)]);
        }
    }
    complex(tris)
}

fn torus_map(m: usize, n: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Vec<Vertex> {
    (0..m * n)
        .map(|v| {
            let (i, j) = f(v / n, v % n);
            (i % m) * n + (j % n)
        })
        .collect()
}

/// Translation of the `m x n` torus by `step` in the first coordinate
/// (free).
pub fn torus_translation(m: usize, n: usize, step: usize) -> FiniteAction {
    action(torus(m, n), vec![torus_map(m, n, |i, j| (i + step, j))])
}

/// The involution `(i, j) -> (-i, -j)`; the quotient is a sphere.
pub fn torus_negation(m: usize, n: usize) -> FiniteAction {
    action(torus(m, n), vec![torus_map(m, n, |i, j| (m - i, n - j))])
}

/// The coordinate swap `(i, j) -> (j, i)` of the `n x n` torus; the quotient
/// is a Möbius band.
pub fn torus_swap(n: usize) -> FiniteAction {
    action(torus(n, n), vec![torus_map(n, n, |i, j| (j, i))])
}

/// Half turn of the octahedron about the `z` axis (fixes 2 and 5).
pub fn octahedron_half_turn() -> FiniteAction {
    action(octahedron(), vec![vec![3, 4, 2, 0, 1, 5]])
}

/// Named actions with at most 12 elements, covering free and non-free
/// actions on circles, disks, spheres and tori. Each stays below 500
/// simplices after regularization.
pub fn corpus() -> Vec<(&'static str, FiniteAction)> {
    vec![
        ("circle_flip", hexagon_flip()),
        ("circle_rotation_z3", polygon_rotation(6, 3)),
        ("circle_rotation_9_z3", polygon_rotation(9, 3)),
        ("circle_antipodal", polygon_rotation(6, 2)),
        ("circle_dihedral_d6", polygon_dihedral(6)),
        ("disk_rotation_z3", hex_disk_rotation(3)),
        ("disk_flip", hex_disk_flip()),
        ("sphere_antipodal", octahedron_antipodal()),
        ("sphere_antipodal_arc", decorated_antipodal_sphere().0),
        ("sphere_reflection", octahedron_reflection()),
        ("sphere_a4", tetrahedron_a4()),
        ("sphere_s3", tetrahedron_s3()),
        ("torus_translation", torus_translation(9, 3, 3)),
        ("torus_translation_6", torus_translation(6, 3, 3)),
        ("sphere_half_turn", octahedron_half_turn()),
        ("torus_swap", torus_swap(3)),
    ]
}
