//! Scenario files: one JSON object with a `kind` tag, its payload, and
//! optional `options`.

use serde::Deserialize;
use serde_json::Value;

use ghostloop::action::ActionJson;
use ghostloop::complex::{ComplexJson, SimplicialComplex, Vertex};
use ghostloop::prodiscrete::{GroupJson, MemberJson, ProdiscreteJson};
use ghostloop::{FiniteAction, FiniteGroup, GraphOfGroups, Presentation, SubgroupFamily};

use crate::CliError;

/// Per-scenario knobs. Command-line flags override them.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioOptions {
    pub basepoint: Option<Vertex>,
    #[serde(default)]
    pub center2: bool,
    #[serde(default)]
    pub force_cone: bool,
    #[serde(default)]
    pub all_elements: bool,
    pub subdivisions: Option<usize>,
    pub drop_lambda: Option<usize>,
    pub tree_seed: Option<u64>,
    pub panel: Option<Vec<String>>,
    /// Keep the 2-skeleton of higher simplices instead of rejecting them.
    #[serde(default)]
    pub truncate: bool,
    #[serde(default)]
    pub caps: CapOptions,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapOptions {
    pub group_order: Option<usize>,
    pub hom_generators: Option<usize>,
    pub hom_target_order: Option<usize>,
}

/// A validated payload.
#[derive(Clone, Debug)]
pub enum Payload {
    Complex(SimplicialComplex),
    Action(FiniteAction),
    Gog(GraphOfGroups),
    Prodiscrete { group: FiniteGroup, family: SubgroupFamily },
    Presentation { presentation: Presentation, compare_to: Option<Presentation> },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Complex(_) => "complex",
            Payload::Action(_) => "action",
            Payload::Gog(_) => "gog",
            Payload::Prodiscrete { .. } => "prodiscrete",
            Payload::Presentation { .. } => "presentation",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub description: Option<String>,
    pub payload: Payload,
    pub options: ScenarioOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    #[allow(dead_code)]
    kind: String,
    description: Option<String>,
    complex: ComplexJson,
    #[serde(default)]
    options: ScenarioOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    #[allow(dead_code)]
    kind: String,
    description: Option<String>,
    action: ActionJson,
    #[serde(default)]
    options: ScenarioOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GogFile {
    #[allow(dead_code)]
    kind: String,
    description: Option<String>,
    graph: Value,
    #[serde(default)]
    options: ScenarioOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProdiscreteFile {
    #[allow(dead_code)]
    kind: String,
    description: Option<String>,
    group: GroupJson,
    #[serde(default)]
    family: Vec<MemberJson>,
    #[serde(default)]
    options: ScenarioOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    #[allow(dead_code)]
    kind: String,
    description: Option<String>,
    presentation: Presentation,
    compare_to: Option<Presentation>,
    #[serde(default)]
    options: ScenarioOptions,
}

fn schema<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Schema(e.to_string())
}

/// Parses and validates a scenario. `group_cap` bounds action and
/// prodiscrete groups; exceeding it is a cap error.
pub fn parse(text: &str, group_cap: Option<usize>) -> Result<Scenario, CliError> {
    let value: Value = serde_json::from_str(text).map_err(schema)?;
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Schema("missing string field \"kind\"".into()))?
        .to_string();
    match kind.as_str() {
        "complex" => {
            let f: ComplexFile = serde_json::from_value(value).map_err(schema)?;
            let (c, _) = f.complex.build(f.options.truncate).map_err(schema)?;
            Ok(Scenario { description: f.description, payload: Payload::Complex(c), options: f.options })
        }
        "action" => {
            let f: ActionFile = serde_json::from_value(value).map_err(schema)?;
            let cap = group_cap.or(f.options.caps.group_order).unwrap_or(ghostloop::action::DEFAULT_GROUP_CAP);
            let a = f.action.build(f.options.truncate, cap)?;
            Ok(Scenario { description: f.description, payload: Payload::Action(a), options: f.options })
        }
        "gog" => {
            let f: GogFile = serde_json::from_value(value).map_err(schema)?;
            let g = GraphOfGroups::from_json(&f.graph).map_err(schema)?;
            Ok(Scenario { description: f.description, payload: Payload::Gog(g), options: f.options })
        }
        "prodiscrete" => {
            let f: ProdiscreteFile = serde_json::from_value(value).map_err(schema)?;
            let cap = group_cap.or(f.options.caps.group_order).unwrap_or(ghostloop::prodiscrete::DEFAULT_ORDER_CAP);
            let (group, family) = ProdiscreteJson { group: f.group, family: f.family }.build(cap)?;
            Ok(Scenario { description: f.description, payload: Payload::Prodiscrete { group, family }, options: f.options })
        }
        "presentation" => {
            let f: PresentationFile = serde_json::from_value(value).map_err(schema)?;
            Ok(Scenario {
                description: f.description,
                payload: Payload::Presentation { presentation: f.presentation, compare_to: f.compare_to },
                options: f.options,
            })
        }
        other => Err(CliError::Schema(format!(
            "unknown kind {other:?} (expected complex, action, gog, prodiscrete or presentation)"
        ))),
    }
}
