use crate::group::FiniteGroup;

use super::{Presentation, PresentationError, Word};

/// Limits for brute-force homomorphism counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomCaps {
    /// Maximum number of generators that occur in some relator.
    pub max_generators: usize,
    pub max_target_order: usize,
}

impl Default for HomCaps {
    fn default() -> Self {
        Self { max_generators: 4, max_target_order: 24 }
    }
}

/// Number of homomorphisms from the group presented by `p` to `target`.
///
/// Generators that occur in no relator are free and contribute a factor of
/// `|target|` each; only the remaining ones count against
/// [`HomCaps::max_generators`]. Assignments are built generator by
/// generator, and each relator is checked as soon as all its generators have
/// images.
pub fn count_homs(p: &Presentation, target: &FiniteGroup, caps: &HomCaps) -> Result<u128, PresentationError> {
    if target.order() > caps.max_target_order {
        return Err(PresentationError::TargetTooLarge { order: target.order(), cap: caps.max_target_order });
    }
    let relators: Vec<&Word> = p.relators().iter().filter(|w| !w.is_empty()).collect();
    let n = p.generator_count();
    let constrained: Vec<usize> = (0..n).filter(|&g| relators.iter().any(|w| w.mentions(g))).collect();
    if constrained.len() > caps.max_generators {
        return Err(PresentationError::TooManyGenerators { constrained: constrained.len(), cap: caps.max_generators });
    }
    let free = (n - constrained.len()) as u32;

    let mut slot = vec![usize::MAX; n];
    for (k, &g) in constrained.iter().enumerate() {
        slot[g] = k;
    }
    // checks[k] = relators whose last-assigned generator is constrained[k]
    let mut checks: Vec<Vec<Vec<(usize, bool)>>> = vec![Vec::new(); constrained.len()];
    for w in &relators {
        let last = w.letters().iter().map(|l| slot[l.gen]).max().expect("nonempty");
        checks[last].push(w.letters().iter().map(|l| (slot[l.gen], l.inverse)).collect());
    }

    let mut images = vec![0usize; constrained.len()];
    let bound = count_from(0, &mut images, &checks, target);
    let free_factor = (target.order() as u128).checked_pow(free).ok_or(PresentationError::CountOverflow)?;
    bound.checked_mul(free_factor).ok_or(PresentationError::CountOverflow)
}

fn count_from(depth: usize, images: &mut [usize], checks: &[Vec<Vec<(usize, bool)>>], target: &FiniteGroup) -> u128 {
    if depth == images.len() {
        return 1;
    }
    let mut total = 0;
    for t in 0..target.order() {
        images[depth] = t;
        let ok = checks[depth].iter().all(|rel| {
            rel.iter().fold(0usize, |acc, &(k, inverse)| {
                let x = images[k];
                target.mul(acc, if inverse { target.inv(x) } else { x })
            }) == 0
        });
        if ok {
            total += count_from(depth + 1, images, checks, target);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::panel_group;

    fn s3() -> FiniteGroup {
        panel_group("S3").unwrap()
    }

    #[test]
    fn infinite_cyclic_into_s3() {
        assert_eq!(count_homs(&Presentation::free(1), &s3(), &HomCaps::default()).unwrap(), 6);
    }

    #[test]
    fn involutions_of_s3() {
        // identity plus the three transpositions
        assert_eq!(count_homs(&Presentation::cyclic(2), &s3(), &HomCaps::default()).unwrap(), 4);
    }

    #[test]
    fn commutator_into_z2() {
        let p = Presentation::with_generators(2, vec![Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)])]).unwrap();
        assert_eq!(count_homs(&p, &FiniteGroup::cyclic(2), &HomCaps::default()).unwrap(), 4);
    }

    #[test]
    fn caps() {
        let rels: Vec<Word> = (0..5).map(|g| Word::power(g, 2)).collect();
        let p = Presentation::with_generators(5, rels).unwrap();
        assert!(matches!(
            count_homs(&p, &FiniteGroup::cyclic(2), &HomCaps::default()),
            Err(PresentationError::TooManyGenerators { constrained: 5, cap: 4 })
        ));
        assert!(matches!(
            count_homs(&Presentation::free(1), &FiniteGroup::cyclic(25), &HomCaps::default()),
            Err(PresentationError::TargetTooLarge { .. })
        ));
        // Unconstrained generators do not count against the cap.
        assert_eq!(count_homs(&Presentation::free(9), &FiniteGroup::cyclic(2), &HomCaps::default()).unwrap(), 512);
    }
}
