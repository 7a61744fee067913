use serde::Serialize;

use crate::action::{ActionError, FiniteAction, RegularizeOptions};
use crate::complex::{ComplexError, EdgePathGroup, Vertex};
use crate::presentation::{tietze_simplify, Presentation};

/// Edge-path presentation of the quotient complex.
#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    /// Unsimplified edge-path presentation of `X/G`.
    pub raw: Presentation,
    pub presentation: Presentation,
    /// Root of the spanning tree, a vertex of the quotient complex.
    pub root: Vertex,
    pub subdivisions: usize,
    /// Simplex counts of the regularized complex and of the quotient.
    pub regularized_simplices: usize,
    pub quotient_simplices: usize,
}

/// Regularizes the action, forms the quotient complex and presents its
/// fundamental group at the image of `basepoint` (the least quotient vertex
/// when absent).
///
/// After regularization the realization of the quotient complex is the
/// orbit space `|X|/G`, so this needs nothing about how `G` acts on loops.
pub fn oracle_pi1_quotient(
    action: &FiniteAction,
    basepoint: Option<Vertex>,
    options: &RegularizeOptions,
) -> Result<OracleResult, ActionError> {
    if !action.complex().is_connected() || action.complex().is_empty() {
        return Err(ComplexError::Disconnected.into());
    }
    let q = action.quotient_complex(options)?;
    let root = match basepoint {
        Some(x) => q.image_of_original(x).ok_or(ComplexError::NotAVertex(x))?,
        None => q.complex.vertices()[0],
    };
    let tree = q.complex.spanning_tree(root)?;
    let raw = EdgePathGroup::new(&q.complex, tree)?.presentation().clone();
    Ok(OracleResult {
        presentation: tietze_simplify(&raw),
        raw,
        root,
        subdivisions: q.subdivisions,
        regularized_simplices: q.regularized.complex().simplex_count(),
        quotient_simplices: q.complex.simplex_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::default_panel;
    use crate::presentation::{fingerprint, Fingerprint, HomCaps};

    fn fp(p: &Presentation) -> Fingerprint {
        fingerprint(p, &default_panel(), &HomCaps::default()).unwrap()
    }

    fn oracle(a: &FiniteAction) -> Presentation {
        oracle_pi1_quotient(a, None, &RegularizeOptions::default()).unwrap().presentation
    }

    #[test]
    fn trivial_group_gives_pi1_of_the_space() {
        let a = FiniteAction::trivial(fixtures::torus(3, 3));
        let z2 = Presentation::with_generators(2, vec![crate::Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)])]);
        assert_eq!(fp(&oracle(&a)), fp(&z2.unwrap()));
    }

    #[test]
    fn flip_quotient_is_an_arc() {
        assert_eq!(fp(&oracle(&fixtures::hexagon_flip())), fp(&Presentation::trivial()));
    }

    #[test]
    fn free_rotation_quotient_is_a_circle() {
        assert_eq!(fp(&oracle(&fixtures::polygon_rotation(9, 3))), fp(&Presentation::free(1)));
    }

    #[test]
    fn invariant_under_extra_subdivision() {
        for a in [fixtures::hexagon_flip(), fixtures::octahedron_antipodal(), fixtures::tetrahedron_s3()] {
            let once = oracle(&a);
            let more = oracle_pi1_quotient(&a.subdivide().0, None, &RegularizeOptions::default()).unwrap();
            assert_eq!(fp(&once), fp(&more.presentation));
        }
    }

    #[test]
    fn rejects_disconnected_complexes() {
        let two = crate::SimplicialComplex::build(&[&[0, 1], &[2, 3]]).unwrap();
        let err = oracle_pi1_quotient(&FiniteAction::trivial(two), None, &RegularizeOptions::default()).unwrap_err();
        assert_eq!(err, ActionError::Complex(ComplexError::Disconnected));
    }
}
