use std::time::{Duration, Instant};

use serde::Serialize;

use crate::action::{ActionError, FiniteAction, RegularizeOptions};
use crate::ghost::{pi1_of_quotient, EntryMatch, GhostError, GhostOptions, ProxyReport};
use crate::group::NamedGroup;
use crate::presentation::{fingerprint, Fingerprint, HomCaps, PresentationError};

use super::quotient::oracle_pi1_quotient;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CompareError {
    #[error("formula: {0}")]
    Ghost(#[from] GhostError),
    #[error("oracle: {0}")]
    Oracle(#[from] ActionError),
    #[error("fingerprint: {0}")]
    Fingerprint(#[from] PresentationError),
}

/// Options shared by both sides of a comparison.
#[derive(Clone, Debug, Default)]
pub struct CompareOptions {
    pub ghost: GhostOptions,
    pub regularize: RegularizeOptions,
    pub caps: HomCaps,
}

/// Generator and relator counts of one side, before and after
/// simplification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub generators_before: usize,
    pub relators_before: usize,
    pub generators_after: usize,
    pub relators_after: usize,
}

/// Formula versus oracle on one action.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub formula: Fingerprint,
    pub oracle: Fingerprint,
    pub abelian_matches: bool,
    pub entries: Vec<EntryMatch>,
    pub all_match: bool,
    pub cone_applied: bool,
    pub formula_size: SizeReport,
    pub oracle_size: SizeReport,
    pub lambda_relators: usize,
    pub oracle_subdivisions: usize,
    pub regularized_simplices: usize,
    /// Wall time for both sides; left out of serialized reports so that
    /// they are reproducible byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Runs the ghost formula and the oracle on the same space and compares
/// their fingerprints. When the formula needs the cone trick, the oracle is
/// given the same coned action.
pub fn compare_formula_vs_oracle(
    action: &FiniteAction,
    panel: &[NamedGroup],
    options: &CompareOptions,
) -> Result<ComparisonReport, CompareError> {
    let start = Instant::now();
    let formula = pi1_of_quotient(action, &options.ghost)?;

    let requested = options.ghost.basepoint.unwrap_or(action.complex().vertices()[0]);
    let needs_cone =
        options.ghost.force_cone || options.ghost.basepoint.is_none() || !action.is_globally_fixed(requested);
    let (space, basepoint) = if needs_cone {
        let (coned, apex) = action.cone_over_orbit(requested)?;
        (coned, apex)
    } else {
        (action.clone(), requested)
    };
    debug_assert_eq!(needs_cone, formula.cone_applied, "both sides decide from the same inputs");
    let oracle = oracle_pi1_quotient(&space, Some(basepoint), &options.regularize)?;

    let formula_fp = fingerprint(&formula.presentation, panel, &options.caps)?;
    let oracle_fp = fingerprint(&oracle.presentation, panel, &options.caps)?;
    let proxy = ProxyReport::compare(formula_fp, oracle_fp);
    Ok(ComparisonReport {
        formula_size: SizeReport {
            generators_before: formula.raw.generator_count(),
            relators_before: formula.raw.relators().len(),
            generators_after: formula.presentation.generator_count(),
            relators_after: formula.presentation.relators().len(),
        },
        oracle_size: SizeReport {
            generators_before: oracle.raw.generator_count(),
            relators_before: oracle.raw.relators().len(),
            generators_after: oracle.presentation.generator_count(),
            relators_after: oracle.presentation.relators().len(),
        },
        lambda_relators: formula.lambda_count(),
        cone_applied: formula.cone_applied,
        oracle_subdivisions: oracle.subdivisions,
        regularized_simplices: oracle.regularized_simplices,
        formula: proxy.left,
        oracle: proxy.right,
        abelian_matches: proxy.abelian_matches,
        entries: proxy.entries,
        all_match: proxy.all_match,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::default_panel;

    fn at(x: usize) -> CompareOptions {
        CompareOptions { ghost: GhostOptions { basepoint: Some(x), ..Default::default() }, ..Default::default() }
    }

    #[test]
    fn corpus_matches() {
        let panel = default_panel();
        for (name, a) in fixtures::corpus() {
            let r = compare_formula_vs_oracle(&a, &panel, &CompareOptions::default()).unwrap();
            assert!(r.all_match, "{name}: {:?} vs {:?}", r.formula, r.oracle);
        }
    }

    #[test]
    fn identity_only_matches() {
        let a = FiniteAction::trivial(fixtures::torus(3, 3));
        assert!(compare_formula_vs_oracle(&a, &default_panel(), &at(0)).unwrap().all_match);
    }

    #[test]
    fn dropped_lambda_is_caught() {
        let mut opts = at(0);
        opts.ghost.drop_lambda = Some(0);
        let r = compare_formula_vs_oracle(&fixtures::hexagon_flip(), &default_panel(), &opts).unwrap();
        assert!(!r.all_match);
        assert!(!r.abelian_matches);
    }
}
