//! Acceptance suite: one PASS/FAIL line per criterion, thresholds pinned
//! below. Exits nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use ghostloop::fixtures;
use ghostloop::ghost::{armstrong_quotient, pi1_of_quotient};
use ghostloop::gog::kill_inertia;
use ghostloop::group::{catalog, default_panel, NamedGroup};
use ghostloop::oracle::{compare_formula_vs_oracle, CompareOptions};
use ghostloop::presentation::{
    abelianization, count_homs, fingerprint, tietze_simplify, AbelianInvariants, Fingerprint, HomCaps, Letter,
    Presentation, Word,
};
use ghostloop::prodiscrete::{correspondence_report, generate_topology, verify_axioms, DEFAULT_ORDER_CAP};
use ghostloop::{EdgePathGroup, FiniteAction, GhostOptions, GraphOfGroups, SubgroupFamily};
use ghostloop_cli::scenario::{self, Payload};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const FLIP_TIME: Duration = Duration::from_secs(1);
const SPHERE_TIME: Duration = Duration::from_secs(5);
const CORPUS_TIME: Duration = Duration::from_secs(60);
const CORPUS_MIN_SCENARIOS: usize = 12;
const CORPUS_MAX_GROUP: usize = 12;
const CORPUS_MAX_SIMPLICES: usize = 500;
const PANEL_SIZE: usize = 11;
const BASS_GRAPHS: usize = 20;
const BASS_MAX_VERTICES: usize = 6;
const BASS_MAX_EDGES: usize = 9;
const COMPLETION_MAX_ORDER: usize = 24;
const FAMILIES_PER_GROUP: usize = 3;
const PROPERTY_SEEDS: [u64; 3] = [1, 2, 3];

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn panel() -> Vec<NamedGroup> {
    default_panel()
}

fn fp(p: &Presentation) -> Fingerprint {
    fingerprint(p, &panel(), &HomCaps::default()).expect("fingerprint within caps")
}

fn trivial_fp() -> Fingerprint {
    Fingerprint::of_free_group(0, &panel())
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ghostloop"))
}

/// Outcome of one criterion: pass flag and a one-line detail.
struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn flip_example() -> Verdict {
    let start = Instant::now();
    let a = fixtures::hexagon_flip();
    let r = pi1_of_quotient(&a, &GhostOptions { basepoint: Some(0), ..Default::default() }).unwrap();
    let quotient = fp(&r.presentation);
    let coinvariants = fp(&r.coinvariants_presentation());
    let elapsed = start.elapsed();
    let z2 = fp(&Presentation::cyclic(2));
    let cli = binary().arg("check").arg(root().join("scenarios/flip_hexagon.json")).output().unwrap();
    let cli_ok = cli.status.code() == Some(0) && String::from_utf8_lossy(&cli.stdout).contains("trivial group: match");
    let pass = quotient == trivial_fp() && coinvariants == z2 && coinvariants != quotient && cli_ok && elapsed < FLIP_TIME;
    verdict(
        pass,
        format!(
            "quotient trivial={}, coinvariants=Z/2: {}, cli check exit {:?}, {elapsed:.2?} (limit {FLIP_TIME:?})",
            quotient == trivial_fp(),
            coinvariants == z2,
            cli.status.code()
        ),
    )
}

fn decorated_sphere() -> Verdict {
    let start = Instant::now();
    let (a, midpoint) = fixtures::decorated_antipodal_sphere();
    let options = CompareOptions { ghost: GhostOptions { basepoint: Some(midpoint), ..Default::default() }, ..Default::default() };
    let r = compare_formula_vs_oracle(&a, &panel(), &options).unwrap();
    let elapsed = start.elapsed();
    let z2 = fp(&Presentation::cyclic(2));
    let pass = r.formula == z2 && r.all_match && !r.cone_applied && elapsed < SPHERE_TIME;
    verdict(
        pass,
        format!(
            "formula=Z/2: {}, formula=oracle: {}, {elapsed:.2?} (limit {SPHERE_TIME:?})",
            r.formula == z2,
            r.all_match
        ),
    )
}

fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(root().join("corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

fn corpus_actions() -> Vec<(String, FiniteAction)> {
    corpus_files()
        .iter()
        .map(|p| {
            let s = scenario::parse(&std::fs::read_to_string(p).unwrap(), None).unwrap();
            let Payload::Action(a) = s.payload else { panic!("{} is not an action", p.display()) };
            (p.file_name().unwrap().to_string_lossy().into_owned(), a)
        })
        .collect()
}

fn oracle_corpus() -> Verdict {
    let start = Instant::now();
    let out = binary().args(["--json", "check", "--dir"]).arg(root().join("corpus")).output().unwrap();
    let elapsed = start.elapsed();
    let report: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    let results = report["results"].as_array().cloned().unwrap_or_default();
    let matched = results.iter().filter(|r| r["status"] == "match").count();
    let within_size = results.iter().all(|r| {
        r["report"]["regularized_simplices"].as_u64().is_some_and(|n| n as usize <= CORPUS_MAX_SIMPLICES)
            && r["report"]["entries"].as_array().is_some_and(|e| e.len() == PANEL_SIZE)
    });
    let small_groups = corpus_actions().iter().all(|(_, a)| a.order() <= CORPUS_MAX_GROUP);
    let pass = out.status.code() == Some(0)
        && results.len() >= CORPUS_MIN_SCENARIOS
        && matched == results.len()
        && within_size
        && small_groups
        && elapsed < CORPUS_TIME;
    verdict(
        pass,
        format!(
            "{matched}/{} match (need >= {CORPUS_MIN_SCENARIOS}), exit {:?}, sizes ok: {within_size}, |G| <= {CORPUS_MAX_GROUP}: {small_groups}, {elapsed:.2?} (limit {CORPUS_TIME:?})",
            results.len(),
            out.status.code()
        ),
    )
}

fn armstrong_consistency() -> Verdict {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (name, a) in corpus_actions() {
        let c = a.complex();
        let pi1 = EdgePathGroup::new(c, c.spanning_tree(c.vertices()[0]).unwrap()).unwrap();
        if fp(pi1.presentation()) != trivial_fp() {
            continue;
        }
        checked += 1;
        let formula = fp(&pi1_of_quotient(&a, &GhostOptions::default()).unwrap().presentation);
        if formula != fp(&armstrong_quotient(&a).presentation) {
            failures.push(name);
        }
    }
    verdict(checked > 0 && failures.is_empty(), format!("{checked} simply connected scenarios, mismatches: {failures:?}"))
}

fn random_vertex_group(rng: &mut ChaCha8Rng) -> Presentation {
    match rng.gen_range(0..5) {
        0 => Presentation::trivial(),
        1 => Presentation::cyclic(2),
        2 => Presentation::cyclic(3),
        3 => Presentation::with_generators(
            2,
            vec![Word::power(0, 2), Word::power(1, 2), Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)])],
        )
        .unwrap(),
        _ => Presentation::free(1),
    }
}

fn random_graph(rng: &mut ChaCha8Rng) -> GraphOfGroups {
    let n = rng.gen_range(1..=BASS_MAX_VERTICES);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let extra = rng.gen_range(0..=BASS_MAX_EDGES - edges.len());
    edges.extend((0..extra).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))));
    let groups: std::collections::BTreeMap<usize, Presentation> = (0..n).map(|v| (v, random_vertex_group(rng))).collect();
    let pairs = edges
        .iter()
        .enumerate()
        .filter(|(_, (u, v))| groups[u].generator_count() > 0 && groups[v].generator_count() > 0)
        .filter(|_| rng.gen_bool(0.5))
        .map(|(e, _)| (e, vec![(Word::gen(0), Word::gen(0))]))
        .collect();
    GraphOfGroups::new((0..n).collect(), edges, groups, pairs).unwrap()
}

fn bass_formula() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0;
    for _ in 0..BASS_GRAPHS {
        let g = random_graph(&mut rng);
        let rank = g.edge_count() + 1 - g.vertex_count();
        let killed = kill_inertia(&g);
        let ab_ok = abelianization(&killed) == AbelianInvariants::free(rank);
        let homs_ok = fp(&killed).homs.iter().zip(panel()).all(|(e, t)| e.homs == (t.group.order() as u128).pow(rank as u32));
        if !(ab_ok && homs_ok) {
            failures += 1;
        }
    }
    verdict(failures == 0, format!("{BASS_GRAPHS} graphs (<= {BASS_MAX_VERTICES} vertices, <= {BASS_MAX_EDGES} edges), {failures} failures"))
}

fn prodiscrete_suite() -> Verdict {
    let s3 = ghostloop::PermutationGroup::generate(3, &[vec![1, 2, 0], vec![1, 0, 2]], 6).unwrap();
    let g = s3.group();
    let a3 = SubgroupFamily::generated_by(g, &[vec![s3.index_of(&[1, 2, 0]).unwrap()]]).unwrap();
    let t12 = SubgroupFamily::generated_by(g, &[vec![s3.index_of(&[1, 0, 2]).unwrap()]]).unwrap();
    let a3_order = ghostloop::prodiscrete::completion(g, &a3, DEFAULT_ORDER_CAP).unwrap().group.order();
    let t12_completion = ghostloop::prodiscrete::completion(g, &t12, DEFAULT_ORDER_CAP).unwrap().group;
    let named = a3_order == 2 && t12_completion.is_isomorphic(g);

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut cases, mut failures) = (0, 0);
    for group in catalog::small_groups(COMPLETION_MAX_ORDER).iter().flatten() {
        let subs = group.all_subgroups();
        for _ in 0..FAMILIES_PER_GROUP {
            let size = rng.gen_range(0..=3);
            let family = SubgroupFamily::from_subgroups(subs.choose_multiple(&mut rng, size).cloned().collect());
            let topology = generate_topology(group, &family, DEFAULT_ORDER_CAP).unwrap();
            cases += 1;
            let ok = verify_axioms(group, &topology, &family).is_ok() && correspondence_report(group, &family).unwrap().ok();
            if !ok {
                failures += 1;
            }
        }
    }
    verdict(
        named && failures == 0,
        format!(
            "S3/A3 order {a3_order}, S3/<(12)> is S3: {}, {cases} random families on groups of order <= {COMPLETION_MAX_ORDER}, {failures} failures",
            t12_completion.is_isomorphic(g)
        ),
    )
}

fn random_presentation(rng: &mut ChaCha8Rng) -> Presentation {
    let n = rng.gen_range(1..=3);
    let rels = (0..rng.gen_range(0..=3))
        .map(|_| (0..rng.gen_range(1..=6)).map(|_| Letter { gen: rng.gen_range(0..n), inverse: rng.gen_bool(0.5) }).collect())
        .collect();
    Presentation::with_generators(n, rels).unwrap()
}

/// Same group with relators permuted and some inverted and generators
/// renumbered: a row/column permutation and row signs of the relator matrix.
fn scrambled(p: &Presentation, rng: &mut ChaCha8Rng) -> Presentation {
    let n = p.generator_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut rels: Vec<Word> = p
        .relators()
        .iter()
        .map(|w| {
            let w: Word = w.letters().iter().map(|l| Letter { gen: perm[l.gen], inverse: l.inverse }).collect();
            if rng.gen_bool(0.5) {
                w.inverse()
            } else {
                w
            }
        })
        .collect();
    rels.shuffle(rng);
    Presentation::with_generators(n, rels).unwrap()
}

fn property_suite() -> Verdict {
    let actions = fixtures::corpus();
    let mut failures: Vec<String> = Vec::new();
    let mut checks = 0;
    let caps = HomCaps::default();
    for seed in PROPERTY_SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, a) in &actions {
            let reference = fp(&pi1_of_quotient(a, &GhostOptions::default()).unwrap().presentation);
            let fixed = a.globally_fixed_vertices();
            let mut variants: Vec<(&str, GhostOptions)> = vec![
                ("cone", GhostOptions { force_cone: true, ..Default::default() }),
                ("center2", GhostOptions { center2: true, ..Default::default() }),
                ("random tree", GhostOptions { tree_seed: Some(rng.gen()), ..Default::default() }),
            ];
            if let Some(&x) = fixed.choose(&mut rng) {
                variants.push(("basepoint", GhostOptions { basepoint: Some(x), ..Default::default() }));
            }
            for (what, options) in variants {
                checks += 1;
                if fp(&pi1_of_quotient(a, &options).unwrap().presentation) != reference {
                    failures.push(format!("seed {seed} {name} {what}"));
                }
            }
        }
        for i in 0..20 {
            let p = random_presentation(&mut rng);
            let q = tietze_simplify(&p);
            checks += 2;
            let homs_ok = panel()
                .iter()
                .take(5)
                .all(|t| count_homs(&p, &t.group, &caps).unwrap() == count_homs(&q, &t.group, &caps).unwrap());
            if abelianization(&p) != abelianization(&q) || !homs_ok {
                failures.push(format!("seed {seed} tietze {i}"));
            }
            if abelianization(&p) != abelianization(&scrambled(&p, &mut rng)) {
                failures.push(format!("seed {seed} snf {i}"));
            }
        }
    }
    verdict(failures.is_empty(), format!("{checks} checks over seeds {PROPERTY_SEEDS:?}, failures: {failures:?}"))
}

fn negative_control() -> Verdict {
    let out = binary().arg("check").arg(root().join("scenarios/negative/flip_hexagon_dropped_lambda.json")).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    verdict(
        out.status.code() == Some(1) && text.starts_with("mismatch"),
        format!("exit {:?}: {}", out.status.code(), text.lines().next().unwrap_or("")),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("flip example", flip_example),
        ("antipodal decorated sphere", decorated_sphere),
        ("oracle corpus", oracle_corpus),
        ("armstrong consistency", armstrong_consistency),
        ("bass formula", bass_formula),
        ("prodiscrete suite", prodiscrete_suite),
        ("property suite", property_suite),
        ("negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!("criterion {} {name}: {} -- {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
