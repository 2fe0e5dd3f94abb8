//! Result documents: the full pipeline on one configuration, serialized for
//! the command line and for other tools.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::{certify, QuantumMethod};
use crate::config::{ComplexPair, ScenarioConfig};
use crate::error::{Error, Result};
use crate::games::{classical_game_value, game_from_scenario, quantum_game_value, QuestionPolicy, Rational};
use crate::registry::{self, RegistryEntry};
use crate::scenario::{party_letter, BellScenario, Event};

pub const TOOL_NAME: &str = "groupbell";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Tolerance of golden comparisons on real values.
pub const GOLDEN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventRow {
    pub event: String,
    pub observables: Vec<usize>,
    pub outcomes: Vec<usize>,
    pub coefficient: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub seed: Vec<String>,
    /// One event per group element, in `group_elements` order.
    pub events: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSummary {
    pub group: String,
    pub group_order: usize,
    pub group_elements: Vec<String>,
    pub local_dim: usize,
    pub parties: usize,
    pub observables: usize,
    pub outcomes: usize,
    pub multiplicity_free: bool,
    pub events: Vec<EventRow>,
    pub orbits: Vec<OrbitRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityRow {
    pub event: String,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub classical_bound: u64,
    /// `[party][observable] = outcome`
    pub classical_witness: Vec<Vec<usize>>,
    pub quantum_value: f64,
    pub quantum_closed_form: Option<String>,
    pub violation: bool,
    pub margin: f64,
    pub top_degeneracy: usize,
    pub spectrum: Vec<f64>,
    pub route_values: BTreeMap<String, f64>,
    pub method_agreement: f64,
    pub projector_agreement: f64,
    pub optimal_state: Vec<ComplexPair>,
    pub probabilities: Vec<ProbabilityRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameDoc {
    pub policy: QuestionPolicy,
    pub questions: Vec<Vec<usize>>,
    pub winning: Vec<Vec<Vec<usize>>>,
    pub classical: Rational,
    pub classical_value: f64,
    pub classical_closed_form: String,
    pub quantum: f64,
    pub quantum_closed_form: Option<String>,
    /// `[party][observable] = answer`
    pub witness_strategy: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub quantity: String,
    pub expected: String,
    pub actual: String,
    pub difference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub tool: ToolInfo,
    pub input: Value,
    pub method: QuantumMethod,
    pub scenario: ScenarioSummary,
    pub certificate: CertificateDoc,
    pub game: Option<GameDoc>,
    pub notes: Vec<String>,
    /// Present when the input is a registry scenario.
    pub golden: Option<Vec<GoldenCheck>>,
}

impl ResultDocument {
    /// True unless some golden check failed.
    pub fn golden_ok(&self) -> bool {
        self.golden.iter().flatten().all(|g| g.pass)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

fn summarize(scenario: &BellScenario) -> ScenarioSummary {
    let group = scenario.joint_rep().group();
    let names = |seed: &[crate::groups::GroupElement]| seed.iter().map(|&g| group.name(g).to_string()).collect();
    ScenarioSummary {
        group: group.family().to_string(),
        group_order: group.order(),
        group_elements: group.names().to_vec(),
        local_dim: scenario.local_dim(),
        parties: scenario.parties(),
        observables: scenario.observables(),
        outcomes: scenario.outcomes(),
        multiplicity_free: scenario.is_multiplicity_free(),
        events: scenario
            .coefficients()
            .iter()
            .map(|(e, &coefficient)| EventRow {
                event: e.to_string(),
                observables: e.observables(),
                outcomes: e.outcomes(),
                coefficient,
            })
            .collect(),
        orbits: scenario
            .provenance()
            .iter()
            .map(|o| OrbitRow {
                seed: names(&o.seed.0),
                events: o.events.iter().map(Event::to_string).collect(),
            })
            .collect(),
    }
}

fn exact_check(quantity: &str, expected: impl ToString, actual: impl ToString, difference: f64, pass: bool) -> GoldenCheck {
    GoldenCheck {
        quantity: quantity.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        difference,
        tolerance: 0.0,
        pass,
    }
}

fn real_check(quantity: &str, expected: f64, closed_form: &str, actual: f64) -> GoldenCheck {
    let difference = (expected - actual).abs();
    GoldenCheck {
        quantity: quantity.into(),
        expected: format!("{closed_form} = {expected}"),
        actual: actual.to_string(),
        difference,
        tolerance: GOLDEN_TOL,
        pass: difference <= GOLDEN_TOL,
    }
}

fn golden_checks(entry: &RegistryEntry, policy: Option<QuestionPolicy>, doc: &ResultDocument) -> Vec<GoldenCheck> {
    let golden = entry.golden();
    let cert = &doc.certificate;
    let mut checks = vec![
        exact_check(
            "classical_bound",
            golden.classical,
            cert.classical_bound,
            golden.classical.abs_diff(cert.classical_bound) as f64,
            golden.classical == cert.classical_bound,
        ),
        real_check(
            "quantum_value",
            golden.quantum,
            golden.quantum_closed_form,
            cert.quantum_value,
        ),
    ];
    if let (Some(g), Some(game)) = (&golden.game, &doc.game) {
        if policy == entry.game {
            checks.push(exact_check(
                "game.classical",
                g.classical,
                game.classical,
                (g.classical.as_f64() - game.classical.as_f64()).abs(),
                g.classical == game.classical,
            ));
            checks.push(real_check("game.quantum", g.quantum, g.quantum_closed_form, game.quantum));
        }
    }
    checks
}

/// Runs classical bound, quantum maximum and (optionally) the game on a
/// validated configuration. `raw` is echoed verbatim.
pub fn analyze(
    raw: &Value,
    config: &ScenarioConfig,
    method: QuantumMethod,
    game: Option<QuestionPolicy>,
) -> Result<ResultDocument> {
    let loaded = config.load()?;
    let scenario = &loaded.scenario;
    let cert = certify(scenario, method)?;
    let entry = registry::matching_entry(config);
    let golden = entry.as_ref().map(RegistryEntry::golden);
    let mut notes = Vec::new();

    let game_doc = match game {
        None => None,
        Some(policy) => match game_from_scenario(scenario, policy) {
            Ok(g) => {
                let classical = classical_game_value(&g)?;
                let quantum = quantum_game_value(&g, scenario, &cert.optimal_state)?;
                let closed = golden
                    .as_ref()
                    .and_then(|x| x.game.as_ref())
                    .filter(|_| entry.as_ref().and_then(|e| e.game) == Some(policy))
                    .map(|x| x.quantum_closed_form.to_string());
                Some(GameDoc {
                    policy,
                    questions: g.questions.clone(),
                    winning: g.winning.clone(),
                    classical: classical.value,
                    classical_value: classical.value.as_f64(),
                    classical_closed_form: classical.value.to_string(),
                    quantum,
                    quantum_closed_form: closed,
                    witness_strategy: classical.witness,
                })
            }
            Err(e @ Error::MultiplicityNotSupported { .. }) => {
                notes.push(format!("no game: {e}"));
                None
            }
            Err(e) => return Err(e),
        },
    };

    let mut doc = ResultDocument {
        tool: ToolInfo {
            name: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
        },
        input: raw.clone(),
        method,
        scenario: summarize(scenario),
        certificate: CertificateDoc {
            classical_bound: cert.classical_bound,
            classical_witness: cert.classical_witness.0.clone(),
            quantum_value: cert.quantum_value,
            quantum_closed_form: golden.as_ref().map(|g| g.quantum_closed_form.to_string()),
            violation: cert.violation,
            margin: cert.quantum_value - cert.classical_bound as f64,
            top_degeneracy: cert.top_degeneracy,
            spectrum: cert.spectrum.clone(),
            route_values: cert
                .route_values
                .iter()
                .map(|(m, v)| (m.to_string(), *v))
                .collect(),
            method_agreement: cert.method_agreement,
            projector_agreement: cert.projector_agreement,
            optimal_state: cert.optimal_state.entries().iter().map(|z| [z.re, z.im]).collect(),
            probabilities: cert
                .optimal_probabilities
                .iter()
                .map(|(e, &p)| ProbabilityRow {
                    event: e.to_string(),
                    probability: p,
                })
                .collect(),
        },
        game: game_doc,
        notes,
        golden: None,
    };
    if let Some(entry) = &entry {
        doc.golden = Some(golden_checks(entry, game, &doc));
    }
    Ok(doc)
}

/// The registry scenario `name`, with method=all and its own game policy.
pub fn reproduce(name: &str) -> Result<ResultDocument> {
    let entry = registry::lookup(name)?;
    let config = entry.config();
    analyze(&config.to_value(), &config, QuantumMethod::All, entry.game)
}

/// Plain-text rendering: orbit table with one row per group element, then
/// the bounds and game values.
pub fn render_table(doc: &ResultDocument) -> String {
    let s = &doc.scenario;
    let c = &doc.certificate;
    let mut out = String::new();
    let title = doc
        .input
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("scenario");
    let _ = writeln!(
        out,
        "{title}: {} on C^{}, N={} M={} K={}",
        s.group, s.local_dim, s.parties, s.observables, s.outcomes
    );
    let width = s
        .orbits
        .iter()
        .flat_map(|o| o.events.iter().map(|e| e.len() + 3))
        .chain(s.orbits.iter().map(|o| o.seed.join(",").len() + 2))
        .max()
        .unwrap_or(8);
    let gw = s.group_elements.iter().map(String::len).max().unwrap_or(1).max(1);
    let _ = write!(out, "{:gw$}", "");
    for o in &s.orbits {
        let _ = write!(out, " | {:width$}", format!("({})", o.seed.join(",")));
    }
    out.push('\n');
    for (i, g) in s.group_elements.iter().enumerate() {
        let _ = write!(out, "{g:gw$}");
        for o in &s.orbits {
            let _ = write!(out, " | {:width$}", format!("p({})", o.events[i]));
        }
        out.push('\n');
    }
    let quantum_form = c
        .quantum_closed_form
        .as_ref()
        .map(|f| format!(" = {f}"))
        .unwrap_or_default();
    let _ = writeln!(out, "S_c = {}", c.classical_bound);
    let _ = writeln!(out, "S_q = {:.12}{quantum_form}", c.quantum_value);
    let _ = writeln!(
        out,
        "violation: {} (margin {:.12}), top degeneracy {}",
        c.violation, c.margin, c.top_degeneracy
    );
    let routes: Vec<String> = c
        .route_values
        .iter()
        .map(|(m, v)| format!("{m}={v:.12}"))
        .collect();
    let _ = writeln!(out, "routes: {}", routes.join(" "));
    let witness: Vec<String> = c
        .classical_witness
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let letter = party_letter(k);
            let parts: Vec<String> = row.iter().enumerate().map(|(m, o)| format!("{letter}{m}={o}")).collect();
            parts.join(" ")
        })
        .collect();
    let _ = writeln!(out, "classical witness: {}", witness.join("; "));
    if let Some(g) = &doc.game {
        let qf = g
            .quantum_closed_form
            .as_ref()
            .map(|f| format!(" = {f}"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "game ({}, {} questions): classical {}, quantum {:.12}{qf}",
            g.policy,
            g.questions.len(),
            g.classical_closed_form,
            g.quantum
        );
    }
    for note in &doc.notes {
        let _ = writeln!(out, "note: {note}");
    }
    for check in doc.golden.iter().flatten() {
        let _ = writeln!(
            out,
            "{} {}: expected {}, got {}",
            if check.pass { "ok  " } else { "FAIL" },
            check.quantity,
            check.expected,
            check.actual
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d3_document_passes_its_goldens() {
        let doc = reproduce("d3").unwrap();
        assert!(doc.golden_ok(), "{:#?}", doc.golden);
        assert_eq!(doc.scenario.orbits.len(), 2);
        let table = render_table(&doc);
        assert!(table.contains("S_c = 5"), "{table}");
    }

    #[test]
    fn unknown_name_is_reported() {
        assert!(matches!(reproduce("d5"), Err(Error::UnknownScenario(_))));
    }
}
