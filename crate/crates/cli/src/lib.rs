//! Command-line front end: reads scenario files, runs one computation and
//! reports it as text or JSON.
//!
//! Exit codes: 0 success, 1 fingerprint mismatch in `check`, 2 malformed or
//! invalid input, 3 a computation cap was hit.

pub mod scenario;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use ghostloop::action::{ActionError, ActionJsonError, RegularizeOptions};
use ghostloop::complex::ComplexError;
use ghostloop::ghost::{armstrong_quotient, pi1_of_quotient, ProxyReport};
use ghostloop::gog::{gog_presentation_with_tree, kill_inertia_with_tree, TreeChoice};
use ghostloop::group::{default_panel, panel_from_names, GroupError, NamedGroup};
use ghostloop::oracle::{compare_formula_vs_oracle, oracle_pi1_quotient, CompareError, CompareOptions};
use ghostloop::presentation::{abelianization, fingerprint, tietze_simplify, Fingerprint, HomCaps, PresentationError};
use ghostloop::prodiscrete::{completion, correspondence_report, generate_topology, ProdiscreteError, LATTICE_CAP};
use ghostloop::{EdgePathGroup, GhostError, GhostOptions, GogError, Presentation};

use scenario::{Payload, Scenario};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;
/// Comma-separated panel names overriding the default fingerprint panel.
pub const PANEL_ENV: &str = "GHOSTLOOP_PANEL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid scenario: {0}")]
    Schema(String),
    #[error("`{command}` does not accept scenarios of kind {kind}")]
    WrongKind { command: &'static str, kind: &'static str },
    #[error("cap exceeded: {0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Cap(_) => EXIT_CAP,
            _ => EXIT_SCHEMA,
        }
    }

    fn classify(message: String, cap: bool) -> Self {
        if cap {
            CliError::Cap(message)
        } else {
            CliError::Schema(message)
        }
    }
}

fn group_cap(e: &GroupError) -> bool {
    matches!(e, GroupError::TooLarge { .. })
}

fn action_cap(e: &ActionError) -> bool {
    match e {
        ActionError::Group(g) => group_cap(g),
        ActionError::StillIrregular(_) => true,
        _ => false,
    }
}

fn presentation_cap(e: &PresentationError) -> bool {
    matches!(
        e,
        PresentationError::TooManyGenerators { .. } | PresentationError::TargetTooLarge { .. } | PresentationError::CountOverflow
    )
}

fn ghost_cap(e: &GhostError) -> bool {
    match e {
        GhostError::Action(a) => action_cap(a),
        GhostError::Presentation(p) => presentation_cap(p),
        _ => false,
    }
}

impl From<ActionError> for CliError {
    fn from(e: ActionError) -> Self {
        let cap = action_cap(&e);
        Self::classify(e.to_string(), cap)
    }
}

impl From<ActionJsonError> for CliError {
    fn from(e: ActionJsonError) -> Self {
        match e {
            ActionJsonError::Action(a) => a.into(),
            other => CliError::Schema(other.to_string()),
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        let cap = presentation_cap(&e);
        Self::classify(e.to_string(), cap)
    }
}

impl From<GhostError> for CliError {
    fn from(e: GhostError) -> Self {
        let cap = ghost_cap(&e);
        Self::classify(e.to_string(), cap)
    }
}

impl From<CompareError> for CliError {
    fn from(e: CompareError) -> Self {
        let cap = match &e {
            CompareError::Ghost(g) => ghost_cap(g),
            CompareError::Oracle(a) => action_cap(a),
            CompareError::Fingerprint(p) => presentation_cap(p),
        };
        Self::classify(e.to_string(), cap)
    }
}

impl From<ProdiscreteError> for CliError {
    fn from(e: ProdiscreteError) -> Self {
        let cap = match &e {
            ProdiscreteError::TooLarge { .. } => true,
            ProdiscreteError::Group(g) => group_cap(g),
            _ => false,
        };
        Self::classify(e.to_string(), cap)
    }
}

impl From<GogError> for CliError {
    fn from(e: GogError) -> Self {
        CliError::Schema(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "ghostloop", version, about = "Fundamental groups of quotients of finite group actions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized spanning trees.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Comma-separated fingerprint panel, e.g. `Z2,S3,A4`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub panel: Option<Vec<String>>,
    /// Cap on enumerated group orders.
    #[arg(long, global = true)]
    pub group_cap: Option<usize>,
    /// Cap on relator-constrained generators when counting homomorphisms.
    #[arg(long, global = true)]
    pub hom_generators: Option<usize>,
    /// Cap on panel group orders when counting homomorphisms.
    #[arg(long, global = true)]
    pub hom_target_order: Option<usize>,
    /// Subdivide exactly this many times instead of testing regularity.
    #[arg(long, global = true)]
    pub subdivisions: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Edge-path presentation of a complex (or of an action's complex).
    Pi1 { file: PathBuf },
    /// π1 of the quotient from the action on loops.
    Quotient { file: PathBuf },
    /// π1 of the quotient from the quotient complex.
    Oracle { file: PathBuf },
    /// Compare a computation with its independent check; exit 1 on mismatch.
    Check {
        #[arg(required_unless_present = "dir", conflicts_with = "dir")]
        file: Option<PathBuf>,
        /// Check every `*.json` file in a directory.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// The group modulo the normal closure of elements with fixed points.
    Armstrong { file: PathBuf },
    /// Graph-of-groups presentation and its quotient by the vertex groups.
    Bass { file: PathBuf },
    /// Completion of a finite group for a subgroup-generated topology.
    Complete { file: PathBuf },
    /// Abelian invariants and homomorphism counts.
    Fingerprint { file: PathBuf },
}

/// Exit code plus what would go to stdout and stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Result of one command on one scenario.
struct Output {
    report: Value,
    text: String,
    /// One-line summary used by `check --dir`.
    summary: String,
    mismatch: bool,
}

/// Effective settings after merging flags, scenario options and the
/// environment.
struct Settings {
    panel: Vec<NamedGroup>,
    caps: HomCaps,
    ghost: GhostOptions,
    regularize: RegularizeOptions,
    seed: Option<u64>,
}

fn settings(global: &GlobalArgs, scenario: &Scenario, env_panel: Option<&str>) -> Result<Settings, CliError> {
    let o = &scenario.options;
    let names: Option<Vec<String>> = global
        .panel
        .clone()
        .or_else(|| o.panel.clone())
        .or_else(|| env_panel.map(|s| s.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect()));
    let panel = match names {
        Some(names) => panel_from_names(names.iter().map(String::as_str))
            .map_err(|n| CliError::Schema(format!("unknown panel group {n:?}")))?,
        None => default_panel(),
    };
    let defaults = HomCaps::default();
    let caps = HomCaps {
        max_generators: global.hom_generators.or(o.caps.hom_generators).unwrap_or(defaults.max_generators),
        max_target_order: global.hom_target_order.or(o.caps.hom_target_order).unwrap_or(defaults.max_target_order),
    };
    let seed = global.seed.or(o.tree_seed);
    Ok(Settings {
        panel,
        caps,
        ghost: GhostOptions {
            basepoint: o.basepoint,
            center2: o.center2,
            force_cone: o.force_cone,
            tree_seed: seed,
            all_elements: o.all_elements,
            drop_lambda: o.drop_lambda,
        },
        regularize: RegularizeOptions { subdivisions: global.subdivisions.or(o.subdivisions), ..Default::default() },
        seed,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(path: &Path, global: &GlobalArgs) -> Result<Scenario, CliError> {
    scenario::parse(&read(path)?, global.group_cap)
}

/// Short description of the group a fingerprint came from.
pub fn describe(fp: &Fingerprint, panel: &[NamedGroup]) -> String {
    if fp.abelian.is_trivial() && fp.homs.iter().all(|e| e.homs == 1) {
        "trivial group".to_string()
    } else if fp.abelian.torsion.is_empty() && *fp == Fingerprint::of_free_group(fp.abelian.free_rank, panel) {
        format!("free rank {}", fp.abelian.free_rank)
    } else {
        format!("abelianization {}", fp.abelian)
    }
}

fn presentation_text(p: &Presentation) -> String {
    format!("{p}\nabelianization: {}", abelianization(p))
}

fn fingerprint_text(fp: &Fingerprint) -> String {
    let homs: Vec<String> = fp.homs.iter().map(|e| format!("{}={}", e.target, e.homs)).collect();
    format!("abelianization: {}\nhoms: {}", fp.abelian, homs.join(" "))
}

fn proxy_output(proxy: ProxyReport, panel: &[NamedGroup], mut report: Value) -> Output {
    let name = describe(&proxy.left, panel);
    let summary = if proxy.all_match {
        format!("{name}: match")
    } else {
        let mut diffs: Vec<String> = proxy.mismatches().map(|e| format!("{} ({} vs {})", e.target, e.left, e.right)).collect();
        if !proxy.abelian_matches {
            diffs.insert(0, format!("abelianization ({} vs {})", proxy.left.abelian, proxy.right.abelian));
        }
        format!("mismatch: {}", diffs.join(", "))
    };
    let text = format!(
        "{summary}\nleft:  {}\nright: {}",
        describe(&proxy.left, panel),
        describe(&proxy.right, panel)
    );
    // A comparison report already carries both fingerprints.
    if report.get("all_match").is_some() {
        return Output { report, text, summary, mismatch: !proxy.all_match };
    }
    report["fingerprints"] = json!({
        "left": proxy.left,
        "right": proxy.right,
        "abelian_matches": proxy.abelian_matches,
        "entries": proxy.entries,
        "all_match": proxy.all_match,
    });
    Output { report, text, summary, mismatch: !proxy.all_match }
}

fn pi1(s: &Scenario) -> Result<Output, CliError> {
    let complex = match &s.payload {
        Payload::Complex(c) => c,
        Payload::Action(a) => a.complex(),
        p => return Err(CliError::WrongKind { command: "pi1", kind: p.kind() }),
    };
    if complex.is_empty() || !complex.is_connected() {
        return Err(ComplexError::Disconnected.into());
    }
    let root = complex.vertices()[0];
    let group = EdgePathGroup::new(complex, complex.spanning_tree(root)?)?;
    let simple = tietze_simplify(group.presentation());
    let text = presentation_text(&simple);
    let summary = format!("π1 = {simple}");
    let report = json!({
        "root": root,
        "euler_characteristic": complex.euler_characteristic(),
        "simplices": complex.simplex_count(),
        "raw": group.presentation(),
        "presentation": simple,
        "abelianization": abelianization(&simple),
    });
    Ok(Output { report, text, summary, mismatch: false })
}

fn quotient(s: &Scenario, st: &Settings) -> Result<Output, CliError> {
    let Payload::Action(a) = &s.payload else {
        return Err(CliError::WrongKind { command: "quotient", kind: s.payload.kind() });
    };
    let r = pi1_of_quotient(a, &st.ghost)?;
    let ab = abelianization(&r.presentation);
    let counts = [
        r.relator_count(|k| matches!(k, ghostloop::ghost::RelatorSource::Original { .. })),
        r.relator_count(|k| matches!(k, ghostloop::ghost::RelatorSource::Coinvariant { .. })),
        r.lambda_count(),
    ];
    let text = format!(
        "π1(X/G) = {}\nabelianization: {ab}\nrelators: {} from triangles, {} coinvariant, {} ghost loops\ncone applied: {}, subdivided: {}",
        r.presentation, counts[0], counts[1], counts[2], r.cone_applied, r.subdivided
    );
    let summary = format!("π1(X/G) = {}", r.presentation);
    let mut report = serde_json::to_value(&r).expect("ghost result serializes");
    report["abelianization"] = json!(ab);
    Ok(Output { report, text, summary, mismatch: false })
}

fn oracle(s: &Scenario, st: &Settings) -> Result<Output, CliError> {
    let Payload::Action(a) = &s.payload else {
        return Err(CliError::WrongKind { command: "oracle", kind: s.payload.kind() });
    };
    let r = oracle_pi1_quotient(a, st.ghost.basepoint, &st.regularize)?;
    let text = format!(
        "π1(X/G) = {}\nabelianization: {}\nsubdivisions: {}, regularized simplices: {}, quotient simplices: {}",
        r.presentation,
        abelianization(&r.presentation),
        r.subdivisions,
        r.regularized_simplices,
        r.quotient_simplices
    );
    let summary = format!("π1(X/G) = {}", r.presentation);
    let mut report = serde_json::to_value(&r).expect("oracle result serializes");
    report["abelianization"] = json!(abelianization(&r.presentation));
    Ok(Output { report, text, summary, mismatch: false })
}

fn tree_choice(st: &Settings) -> TreeChoice {
    st.seed.map_or(TreeChoice::Bfs, TreeChoice::Random)
}

fn check(s: &Scenario, st: &Settings) -> Result<Output, CliError> {
    match &s.payload {
        Payload::Action(a) => {
            let options = CompareOptions { ghost: st.ghost.clone(), regularize: st.regularize, caps: st.caps };
            let r = compare_formula_vs_oracle(a, &st.panel, &options)?;
            let report = serde_json::to_value(&r).expect("comparison serializes");
            let proxy = ProxyReport::compare(r.formula, r.oracle);
            let mut out = proxy_output(proxy, &st.panel, report);
            out.text = out.text.replacen("left: ", "formula:", 1).replacen("right:", "oracle: ", 1);
            Ok(out)
        }
        Payload::Presentation { presentation, compare_to: Some(other) } => {
            let left = fingerprint(presentation, &st.panel, &st.caps)?;
            let right = fingerprint(other, &st.panel, &st.caps)?;
            Ok(proxy_output(ProxyReport::compare(left, right), &st.panel, json!({})))
        }
        Payload::Gog(g) => {
            let killed = kill_inertia_with_tree(g, tree_choice(st));
            let left = fingerprint(&killed, &st.panel, &st.caps)?;
            let right = Fingerprint::of_free_group(g.graph_rank(), &st.panel);
            Ok(proxy_output(ProxyReport::compare(left, right), &st.panel, json!({"graph_rank": g.graph_rank()})))
        }
        Payload::Prodiscrete { group, family } => {
            let r = correspondence_report(group, family)?;
            let summary = if r.ok() {
                format!("completion order {}: correspondence verified", r.completion_order)
            } else {
                format!("completion order {}: correspondence FAILED", r.completion_order)
            };
            let report = serde_json::to_value(&r).expect("report serializes");
            Ok(Output { text: summary.clone(), summary, mismatch: !r.ok(), report })
        }
        p => Err(CliError::WrongKind { command: "check", kind: p.kind() }),
    }
}

fn armstrong(s: &Scenario) -> Result<Output, CliError> {
    let Payload::Action(a) = &s.payload else {
        return Err(CliError::WrongKind { command: "armstrong", kind: s.payload.kind() });
    };
    let r = armstrong_quotient(a);
    let text = format!(
        "G/<<fixed-point elements>> = {}\n|G| = {}, normal closure order {}, quotient order {}",
        r.presentation,
        a.order(),
        r.normal_closure_order,
        r.quotient_order
    );
    let summary = format!("quotient order {}", r.quotient_order);
    Ok(Output { report: serde_json::to_value(&r).expect("serializes"), text, summary, mismatch: false })
}

fn bass(s: &Scenario, st: &Settings) -> Result<Output, CliError> {
    let Payload::Gog(g) = &s.payload else {
        return Err(CliError::WrongKind { command: "bass", kind: s.payload.kind() });
    };
    let tree = tree_choice(st);
    let full = gog_presentation_with_tree(g, tree);
    let killed = tietze_simplify(&kill_inertia_with_tree(g, tree));
    let ab = abelianization(&killed);
    let summary = if killed.generator_count() == 0 {
        "trivial group (free rank 0)".to_string()
    } else if killed.relators().is_empty() {
        format!("free rank {}", killed.generator_count())
    } else {
        format!("quotient by vertex groups: {killed}")
    };
    let text = format!("π1 = {}\nabelianization: {}\n{summary}", tietze_simplify(&full), abelianization(&full));
    let report = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "graph_rank": g.graph_rank(),
        "presentation": full,
        "abelianization": abelianization(&full),
        "kill_inertia": killed,
        "kill_inertia_abelianization": ab,
    });
    Ok(Output { report, text, summary, mismatch: false })
}

fn complete(s: &Scenario, global: &GlobalArgs) -> Result<Output, CliError> {
    let Payload::Prodiscrete { group, family } = &s.payload else {
        return Err(CliError::WrongKind { command: "complete", kind: s.payload.kind() });
    };
    let cap = global.group_cap.or(s.options.caps.group_order).unwrap_or(ghostloop::prodiscrete::DEFAULT_ORDER_CAP);
    let c = completion(group, family, cap)?;
    let topology = generate_topology(group, family, cap)?;
    let summary = format!("completion order {}", c.group.order());
    let mut report = json!({
        "group_order": group.order(),
        "completion_order": c.group.order(),
        "kernel": c.kernel.elements(),
        "basis": topology.basis().iter().map(|h| h.elements().to_vec()).collect::<Vec<_>>(),
        "projection": c.projection,
    });
    let mut text = format!("{summary}\nkernel: {:?}", c.kernel.elements());
    if group.order() <= LATTICE_CAP {
        let r = correspondence_report(group, family)?;
        text.push_str(&format!(
            "\nopen subgroups: {} in G, {} in the completion; correspondence {}",
            r.open_in_group,
            r.open_in_completion,
            if r.ok() { "verified" } else { "FAILED" }
        ));
        report["correspondence"] = serde_json::to_value(&r).expect("serializes");
    }
    Ok(Output { report, text, summary, mismatch: false })
}

fn fingerprint_cmd(s: &Scenario, st: &Settings) -> Result<Output, CliError> {
    let p = match &s.payload {
        Payload::Presentation { presentation, .. } => presentation.clone(),
        Payload::Action(a) => pi1_of_quotient(a, &st.ghost)?.presentation,
        Payload::Gog(g) => gog_presentation_with_tree(g, tree_choice(st)),
        Payload::Complex(_) => {
            let out = pi1(s)?;
            serde_json::from_value(out.report["presentation"].clone()).expect("round trip")
        }
        p => return Err(CliError::WrongKind { command: "fingerprint", kind: p.kind() }),
    };
    let fp = fingerprint(&p, &st.panel, &st.caps)?;
    let summary = describe(&fp, &st.panel);
    let text = format!("{summary}\n{}", fingerprint_text(&fp));
    Ok(Output { report: json!({"fingerprint": fp}), text, summary, mismatch: false })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Pi1 { .. } => "pi1",
        Command::Quotient { .. } => "quotient",
        Command::Oracle { .. } => "oracle",
        Command::Check { .. } => "check",
        Command::Armstrong { .. } => "armstrong",
        Command::Bass { .. } => "bass",
        Command::Complete { .. } => "complete",
        Command::Fingerprint { .. } => "fingerprint",
    }
}

fn run_one(command: &Command, path: &Path, global: &GlobalArgs, env_panel: Option<&str>) -> Result<Output, CliError> {
    let s = load(path, global)?;
    let st = settings(global, &s, env_panel)?;
    match command {
        Command::Pi1 { .. } => pi1(&s),
        Command::Quotient { .. } => quotient(&s, &st),
        Command::Oracle { .. } => oracle(&s, &st),
        Command::Check { .. } => check(&s, &st),
        Command::Armstrong { .. } => armstrong(&s),
        Command::Bass { .. } => bass(&s, &st),
        Command::Complete { .. } => complete(&s, global),
        Command::Fingerprint { .. } => fingerprint_cmd(&s, &st),
    }
}

fn render(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("values serialize") + "\n"
}

fn check_dir(dir: &Path, command: &Command, global: &GlobalArgs, env_panel: Option<&str>) -> Outcome {
    let mut files: Vec<PathBuf> = match fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(source) => {
            let e = CliError::Io { path: dir.to_path_buf(), source };
            return Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    };
    files.sort();
    let results: Vec<(String, Result<Output, CliError>)> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            (name, run_one(command, p, global, env_panel))
        })
        .collect();

    let mut code = EXIT_OK;
    let (mut matched, mut mismatched, mut errors) = (0, 0, 0);
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for (name, r) in &results {
        match r {
            Ok(out) if !out.mismatch => {
                matched += 1;
                lines.push(format!("{name}: {}", out.summary));
                entries.push(json!({"file": name, "status": "match", "report": out.report}));
            }
            Ok(out) => {
                mismatched += 1;
                code = code.max(EXIT_MISMATCH);
                lines.push(format!("{name}: {}", out.summary));
                entries.push(json!({"file": name, "status": "mismatch", "report": out.report}));
            }
            Err(e) => {
                errors += 1;
                code = code.max(e.exit_code());
                lines.push(format!("{name}: error: {e}"));
                entries.push(json!({"file": name, "status": "error", "error": e.to_string(), "exit_code": e.exit_code()}));
            }
        }
    }
    let total = results.len();
    if global.json {
        let report = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "check",
            "results": entries,
            "summary": {"scenarios": total, "match": matched, "mismatch": mismatched, "error": errors},
        });
        Outcome { code, stdout: render(&report), stderr: String::new() }
    } else {
        lines.push(format!("{total} scenarios: {matched} match, {mismatched} mismatch, {errors} error"));
        Outcome { code, stdout: lines.join("\n") + "\n", stderr: String::new() }
    }
}

/// Runs a parsed command line. `env_panel` is the value of [`PANEL_ENV`].
pub fn execute(cli: &Cli, env_panel: Option<&str>) -> Outcome {
    let global = &cli.global;
    let path = match &cli.command {
        Command::Check { dir: Some(dir), .. } => return check_dir(dir, &cli.command, global, env_panel),
        Command::Check { file, .. } => file.clone().expect("clap requires a file or --dir"),
        Command::Pi1 { file }
        | Command::Quotient { file }
        | Command::Oracle { file }
        | Command::Armstrong { file }
        | Command::Bass { file }
        | Command::Complete { file }
        | Command::Fingerprint { file } => file.clone(),
    };
    match run_one(&cli.command, &path, global, env_panel) {
        Ok(out) => {
            let code = if out.mismatch { EXIT_MISMATCH } else { EXIT_OK };
            let stdout = if global.json {
                render(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command_name(&cli.command),
                    "file": path.to_string_lossy(),
                    "status": if out.mismatch { "mismatch" } else { "ok" },
                    "summary": out.summary,
                    "report": out.report,
                }))
            } else {
                out.text + "\n"
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stdout = if global.json {
                render(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command_name(&cli.command),
                    "file": path.to_string_lossy(),
                    "status": "error",
                    "error": e.to_string(),
                    "exit_code": e.exit_code(),
                }))
            } else {
                String::new()
            };
            Outcome { code: e.exit_code(), stdout, stderr: format!("error: {e}\n") }
        }
    }
}

/// Parses `argv` (program name first) and runs it. Usage errors exit 2.
pub fn run<I, T>(argv: I, env_panel: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli, env_panel),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: EXIT_SCHEMA, stdout: String::new(), stderr: text }
            }
        }
    }
}
