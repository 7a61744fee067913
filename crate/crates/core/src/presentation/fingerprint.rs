use serde::Serialize;

use crate::group::NamedGroup;

use super::{abelianization, count_homs, tietze_simplify, AbelianInvariants, HomCaps, Presentation, PresentationError};

/// Homomorphism count into one panel group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PanelEntry {
    pub target: String,
    pub homs: u128,
}

/// Abelian invariants plus homomorphism counts into a panel of finite
/// groups.
///
/// Isomorphic groups have equal fingerprints; the converse does not hold, so
/// equal fingerprints only mean "indistinguishable by this panel".
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub abelian: AbelianInvariants,
    pub homs: Vec<PanelEntry>,
}

impl Fingerprint {
    /// Fingerprint of the free group of the given rank, computed in closed
    /// form (`|T|^rank` homomorphisms into each `T`).
    pub fn of_free_group(rank: usize, panel: &[NamedGroup]) -> Self {
        Self {
            abelian: AbelianInvariants::free(rank),
            homs: panel
                .iter()
                .map(|t| PanelEntry { target: t.name.clone(), homs: (t.group.order() as u128).pow(rank as u32) })
                .collect(),
        }
    }

    pub fn hom_count(&self, target: &str) -> Option<u128> {
        self.homs.iter().find(|e| e.target == target).map(|e| e.homs)
    }
}

/// Simplifies `p`, then records its abelianization and its homomorphism
/// counts into every group of `panel`, in panel order.
pub fn fingerprint(p: &Presentation, panel: &[NamedGroup], caps: &HomCaps) -> Result<Fingerprint, PresentationError> {
    let simple = tietze_simplify(p);
    let abelian = abelianization(&simple);
    let homs = panel
        .iter()
        .map(|t| Ok(PanelEntry { target: t.name.clone(), homs: count_homs(&simple, &t.group, caps)? }))
        .collect::<Result<Vec<_>, PresentationError>>()?;
    Ok(Fingerprint { abelian, homs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::default_panel;
    use crate::presentation::Word;

    #[test]
    fn trivial_group() {
        let fp = fingerprint(&Presentation::trivial(), &default_panel(), &HomCaps::default()).unwrap();
        assert!(fp.abelian.is_trivial());
        assert!(fp.homs.iter().all(|e| e.homs == 1));
    }

    #[test]
    fn two_presentations_of_z2_agree() {
        let panel = default_panel();
        let a = fingerprint(&Presentation::cyclic(2), &panel, &HomCaps::default()).unwrap();
        let q = Presentation::with_generators(
            2,
            vec![Word::power(0, 2), Word::gen(1), Word::from_pairs(&[(0, 1), (1, 1)])],
        )
        .unwrap();
        // <x, y | x^2, y, xy> kills x as well, so it presents the trivial group.
        let b = fingerprint(&q, &panel, &HomCaps::default()).unwrap();
        assert_ne!(a, b);
        let q = Presentation::with_generators(2, vec![Word::power(0, 2), Word::gen(1)]).unwrap();
        assert_eq!(a, fingerprint(&q, &panel, &HomCaps::default()).unwrap());
    }

    #[test]
    fn z_and_z2_differ_at_z3() {
        let panel = default_panel();
        let z = fingerprint(&Presentation::free(1), &panel, &HomCaps::default()).unwrap();
        let z2 = fingerprint(&Presentation::cyclic(2), &panel, &HomCaps::default()).unwrap();
        assert_eq!(z.hom_count("Z3"), Some(3));
        assert_eq!(z2.hom_count("Z3"), Some(1));
        assert_eq!(z, Fingerprint::of_free_group(1, &panel));
    }
}
