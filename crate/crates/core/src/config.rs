//! Scenario files: parsing, schema validation and construction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::builtin;
use crate::error::{Error, Result};
use crate::games::QuestionPolicy;
use crate::groups::FiniteGroup;
use crate::linalg::{c, ComplexMatrix, StateVector};
use crate::reptheory::Representation;
use crate::scenario::{build_scenario, classify_local_events, BellScenario, LocalEventSet, OrbitSeed};

pub const SCENARIO_SCHEMA: &str = include_str!("../schemas/scenario.schema.json");
pub const RESULT_SCHEMA: &str = include_str!("../schemas/result.schema.json");

/// A complex number as `[re, im]`.
pub type ComplexPair = [f64; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Cyclic,
    Dihedral,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: FamilyName,
    pub n: usize,
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self.family {
            FamilyName::Cyclic => FiniteGroup::cyclic(self.n),
            FamilyName::Dihedral => FiniteGroup::dihedral(self.n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RepresentationSpec {
    Builtin { builtin: String },
    Generators { generators: BTreeMap<String, Vec<Vec<ComplexPair>>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameChoice {
    Restricted,
    Full,
    None,
}

impl GameChoice {
    pub fn policy(self) -> Option<QuestionPolicy> {
        match self {
            GameChoice::Restricted => Some(QuestionPolicy::Restricted),
            GameChoice::Full => Some(QuestionPolicy::Full),
            GameChoice::None => None,
        }
    }
}

impl std::str::FromStr for GameChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "restricted" => Ok(GameChoice::Restricted),
            "full" => Ok(GameChoice::Full),
            "none" => Ok(GameChoice::None),
            other => Err(format!("unknown game policy `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupSpec,
    pub representation: RepresentationSpec,
    pub initial_state: Vec<ComplexPair>,
    pub parties: usize,
    /// Element names, one list per orbit seed.
    pub seeds: Vec<Vec<String>>,
    /// Optional renaming of observables and outcomes: basis `m`, state `o`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_bases: Option<Vec<Vec<Vec<ComplexPair>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub game: Option<GameChoice>,
}

/// Everything built from a validated configuration.
#[derive(Clone, Debug)]
pub struct LoadedScenario {
    pub group: FiniteGroup,
    pub rep: Representation,
    pub init: StateVector,
    pub local: LocalEventSet,
    pub scenario: BellScenario,
}

fn schema_error(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

/// First violation of `schema` by `instance`, as a [`Error::Schema`].
pub fn validate_against(schema: &str, instance: &Value) -> Result<()> {
    let schema: Value = serde_json::from_str(schema).expect("bundled schema is valid JSON");
    let validator = jsonschema::validator_for(&schema).expect("bundled schema compiles");
    let first = validator
        .iter_errors(instance)
        .next()
        .map(|err| schema_error(err.instance_path().as_str(), err.to_string()));
    first.map_or(Ok(()), Err)
}

/// Parses and schema-checks a scenario file. The raw value is kept for
/// echoing into results.
pub fn parse_scenario(text: &str) -> Result<(Value, ScenarioConfig)> {
    let raw: Value = serde_json::from_str(text).map_err(|e| schema_error("", e.to_string()))?;
    let config = config_from_value(&raw)?;
    Ok((raw, config))
}

pub fn config_from_value(raw: &Value) -> Result<ScenarioConfig> {
    validate_against(SCENARIO_SCHEMA, raw)?;
    serde_json::from_value(raw.clone()).map_err(|e| schema_error("", e.to_string()))
}

fn vector(pairs: &[ComplexPair]) -> StateVector {
    StateVector::new(pairs.iter().map(|p| c(p[0], p[1])).collect())
}

fn generator_error(err: Error) -> Error {
    let base = "/representation/generators";
    let pointer = match &err {
        Error::NotUnitary { generator, .. } => format!("{base}/{generator}"),
        Error::UnknownGenerator(name) => format!("{base}/{name}"),
        _ => base.to_string(),
    };
    schema_error(pointer, err.to_string())
}

impl ScenarioConfig {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("configs serialize")
    }

    pub fn build_representation(&self, group: &FiniteGroup) -> Result<Representation> {
        match &self.representation {
            RepresentationSpec::Builtin { builtin: name } => {
                let rep = builtin::by_name(name)?;
                if rep.group().family() != group.family() {
                    return Err(schema_error(
                        "/representation/builtin",
                        format!(
                            "builtin `{name}` represents {}, the file declares {}",
                            rep.group().family(),
                            group.family()
                        ),
                    ));
                }
                Ok(rep)
            }
            RepresentationSpec::Generators { generators } => {
                let mut mats = BTreeMap::new();
                for (name, rows) in generators {
                    let rows = rows
                        .iter()
                        .map(|r| r.iter().map(|p| c(p[0], p[1])).collect())
                        .collect();
                    let m = ComplexMatrix::from_rows(rows).map_err(|e| {
                        schema_error(format!("/representation/generators/{name}"), e.to_string())
                    })?;
                    mats.insert(name.clone(), m);
                }
                Representation::from_generators(group, &mats).map_err(generator_error)
            }
        }
    }

    pub fn parse_seeds(&self, group: &FiniteGroup) -> Result<Vec<OrbitSeed>> {
        self.seeds
            .iter()
            .enumerate()
            .map(|(i, seed)| {
                if seed.len() != self.parties {
                    return Err(schema_error(
                        format!("/seeds/{i}"),
                        format!("seed has {} elements for {} parties", seed.len(), self.parties),
                    ));
                }
                seed.iter()
                    .enumerate()
                    .map(|(k, name)| {
                        group
                            .parse_element(name)
                            .map_err(|e| schema_error(format!("/seeds/{i}/{k}"), e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(OrbitSeed)
            })
            .collect()
    }

    /// Builds group, representation, local events and the scenario. Input
    /// mistakes come back as [`Error::Schema`] with a pointer; an initial
    /// state whose orbit has no basis structure stays
    /// [`Error::UnusableInitialState`].
    pub fn load(&self) -> Result<LoadedScenario> {
        let group = self
            .group
            .build()
            .map_err(|e| schema_error("/group/n", e.to_string()))?;
        let rep = self.build_representation(&group)?;
        let init = vector(&self.initial_state);
        if init.dim() != rep.dim() {
            return Err(schema_error(
                "/initial_state",
                format!("state of dimension {}, representation of dimension {}", init.dim(), rep.dim()),
            ));
        }
        let mut local = classify_local_events(&rep, &init)?;
        if let Some(reference) = &self.reference_bases {
            let reference: Vec<Vec<StateVector>> = reference
                .iter()
                .map(|b| b.iter().map(|v| vector(v)).collect())
                .collect();
            local = local
                .relabel(&reference)
                .map_err(|e| schema_error("/reference_bases", e.to_string()))?;
        }
        let seeds = self.parse_seeds(&group)?;
        let scenario = build_scenario(&local, self.parties, &seeds)?;
        Ok(LoadedScenario {
            group,
            rep,
            init,
            local,
            scenario,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn d3_value() -> Value {
        json!({
            "group": {"family": "dihedral", "n": 3},
            "representation": {"builtin": "d3-qubit"},
            "initial_state": [[FRAC_1_SQRT_2, 0.0], [FRAC_1_SQRT_2, 0.0]],
            "parties": 2,
            "seeds": [["e", "e"], ["s", "r^2"]]
        })
    }

    #[test]
    fn minimal_file_loads() {
        let cfg = config_from_value(&d3_value()).unwrap();
        let loaded = cfg.load().unwrap();
        assert_eq!(loaded.scenario.coefficients().len(), 12);
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let mut v = d3_value();
        v["parties"] = json!(0);
        match config_from_value(&v) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/parties"),
            other => panic!("{other:?}"),
        }
        let mut v = d3_value();
        v["initial_state"][1] = json!([1.0]);
        match config_from_value(&v) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/initial_state/1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_seed_name_points_at_the_seed() {
        let mut v = d3_value();
        v["seeds"][1][0] = json!("t");
        let err = config_from_value(&v).unwrap().load().unwrap_err();
        assert!(
            matches!(&err, Error::Schema { pointer, .. } if pointer == "/seeds/1/0"),
            "{err:?}"
        );
    }

    #[test]
    fn non_unitary_generator_is_named() {
        let v = json!({
            "group": {"family": "cyclic", "n": 2},
            "representation": {"generators": {"r": [[[2.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]}},
            "initial_state": [[1.0, 0.0], [0.0, 0.0]],
            "parties": 2,
            "seeds": [["e", "e"]]
        });
        match config_from_value(&v).unwrap().load() {
            Err(Error::Schema { pointer, message }) => {
                assert_eq!(pointer, "/representation/generators/r");
                assert!(message.contains("not unitary"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn builtin_must_fit_the_group() {
        let mut v = d3_value();
        v["group"] = json!({"family": "cyclic", "n": 6});
        assert!(matches!(
            config_from_value(&v).unwrap().load(),
            Err(Error::Schema { .. })
        ));
    }
}
