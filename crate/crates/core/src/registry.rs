//! The five worked scenarios with their expected values.

use std::f64::consts::SQRT_2;

use crate::builtin;
use crate::config::{FamilyName, GameChoice, GroupSpec, RepresentationSpec, ScenarioConfig};
use crate::error::{Error, Result};
use crate::games::{QuestionPolicy, Rational};
use crate::linalg::StateVector;

pub const REGISTRY_NAMES: [&str; 5] = ["intro-z4", "three-party-z6", "d3", "z6-qubit", "d6"];

#[derive(Clone, Debug)]
pub struct GameGolden {
    pub classical: Rational,
    pub quantum: f64,
    pub quantum_closed_form: &'static str,
}

#[derive(Clone, Debug)]
pub struct Golden {
    pub classical: u64,
    pub quantum: f64,
    pub quantum_closed_form: &'static str,
    /// Only for the games worked out by hand.
    pub game: Option<GameGolden>,
}

#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub family: FamilyName,
    pub n: usize,
    pub builtin: &'static str,
    pub parties: usize,
    pub seeds: &'static [&'static [&'static str]],
    /// Observable `m` measures `Γ(frames[m])` applied to the frame basis.
    pub frames: &'static [&'static str],
    pub game: Option<QuestionPolicy>,
}

fn computational(dim: usize) -> Vec<StateVector> {
    (0..dim).map(|j| StateVector::basis(dim, j)).collect()
}

impl RegistryEntry {
    pub fn initial_state(&self) -> StateVector {
        builtin::default_initial_state(self.builtin).expect("registry builtins exist")
    }

    fn frame_basis(&self) -> Vec<StateVector> {
        match self.builtin {
            "d3-qubit" => vec![builtin::plus_x(), builtin::minus_x()],
            "d6-qutrit" | "z6-qutrit" => computational(3),
            _ => computational(2),
        }
    }

    pub fn reference_bases(&self) -> Vec<Vec<StateVector>> {
        let rep = builtin::by_name(self.builtin).expect("registry builtins exist");
        let frame = self.frame_basis();
        self.frames
            .iter()
            .map(|name| {
                let g = rep.group().parse_element(name).expect("registry names parse");
                frame.iter().map(|v| rep.matrix(g).apply(v)).collect()
            })
            .collect()
    }

    pub fn config(&self) -> ScenarioConfig {
        let pairs = |v: &StateVector| v.entries().iter().map(|z| [z.re, z.im]).collect();
        ScenarioConfig {
            name: Some(self.name.to_string()),
            group: GroupSpec {
                family: self.family,
                n: self.n,
            },
            representation: RepresentationSpec::Builtin {
                builtin: self.builtin.to_string(),
            },
            initial_state: pairs(&self.initial_state()),
            parties: self.parties,
            seeds: self
                .seeds
                .iter()
                .map(|s| s.iter().map(|g| g.to_string()).collect())
                .collect(),
            reference_bases: Some(
                self.reference_bases()
                    .iter()
                    .map(|b| b.iter().map(pairs).collect())
                    .collect(),
            ),
            game: Some(match self.game {
                Some(QuestionPolicy::Restricted) => GameChoice::Restricted,
                Some(QuestionPolicy::Full) => GameChoice::Full,
                None => GameChoice::None,
            }),
        }
    }

    pub fn golden(&self) -> Golden {
        let s3 = 3f64.sqrt();
        match self.name {
            "intro-z4" => Golden {
                classical: 3,
                quantum: 2.0 + SQRT_2,
                quantum_closed_form: "2+sqrt(2)",
                game: None,
            },
            "three-party-z6" => Golden {
                classical: 2,
                quantum: 20.0 / 9.0,
                quantum_closed_form: "20/9",
                game: Some(GameGolden {
                    classical: Rational::new(1, 4),
                    quantum: 5.0 / 18.0,
                    quantum_closed_form: "5/18",
                }),
            },
            "d3" => Golden {
                classical: 5,
                quantum: 21.0 / 4.0,
                quantum_closed_form: "21/4",
                game: Some(GameGolden {
                    classical: Rational::new(5, 9),
                    quantum: 7.0 / 12.0,
                    quantum_closed_form: "7/12",
                }),
            },
            "z6-qubit" => Golden {
                classical: 5,
                quantum: 3.0 + 1.5 * s3,
                quantum_closed_form: "3+3*sqrt(3)/2",
                game: Some(GameGolden {
                    classical: Rational::new(5, 6),
                    quantum: (2.0 + s3) / 4.0,
                    quantum_closed_form: "(2+sqrt(3))/4",
                }),
            },
            "d6" => Golden {
                classical: 6,
                quantum: 20.0 / 3.0,
                quantum_closed_form: "20/3",
                game: None,
            },
            other => unreachable!("no golden values for `{other}`"),
        }
    }
}

pub fn entries() -> Vec<RegistryEntry> {
    vec![
        RegistryEntry {
            name: "intro-z4",
            summary: "Z4 on a qubit, two parties, two orbits",
            family: FamilyName::Cyclic,
            n: 4,
            builtin: "z4-qubit",
            parties: 2,
            seeds: &[&["e", "e"], &["e", "r"]],
            frames: &["e", "r"],
            game: Some(QuestionPolicy::Restricted),
        },
        RegistryEntry {
            name: "three-party-z6",
            summary: "Z6 on a qutrit, three parties, four orbits",
            family: FamilyName::Cyclic,
            n: 6,
            builtin: "z6-qutrit",
            parties: 3,
            seeds: &[
                &["e", "r^4", "r^2"],
                &["e", "e", "r^3"],
                &["e", "r", "e"],
                &["r", "r^4", "e"],
            ],
            frames: &["e", "r"],
            game: Some(QuestionPolicy::Full),
        },
        RegistryEntry {
            name: "d3",
            summary: "D3 on a qubit from |+x>, two parties, two orbits",
            family: FamilyName::Dihedral,
            n: 3,
            builtin: "d3-qubit",
            parties: 2,
            seeds: &[&["e", "e"], &["s", "r^2"]],
            frames: &["e", "r", "r^2"],
            game: Some(QuestionPolicy::Full),
        },
        RegistryEntry {
            name: "z6-qubit",
            summary: "Z6 on a qubit, two parties, two orbits",
            family: FamilyName::Cyclic,
            n: 6,
            builtin: "z6-qubit",
            parties: 2,
            seeds: &[&["e", "e"], &["e", "r"]],
            frames: &["e", "r", "r^2"],
            game: Some(QuestionPolicy::Restricted),
        },
        RegistryEntry {
            name: "d6",
            summary: "D6 on a qutrit, two parties, two orbits",
            family: FamilyName::Dihedral,
            n: 6,
            builtin: "d6-qutrit",
            parties: 2,
            seeds: &[&["r^4", "r^2*s"], &["e", "r^5*s"]],
            frames: &["e", "r", "s", "r*s"],
            game: Some(QuestionPolicy::Restricted),
        },
    ]
}

pub fn lookup(name: &str) -> Result<RegistryEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

/// The entry whose configuration is exactly `config`, if any.
pub fn matching_entry(config: &ScenarioConfig) -> Option<RegistryEntry> {
    let name = config.name.as_deref()?;
    let entry = lookup(name).ok()?;
    (entry.config() == *config).then_some(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_listed_in_order() {
        let names: Vec<&str> = entries().iter().map(|e| e.name).collect();
        assert_eq!(names, REGISTRY_NAMES);
        assert!(matches!(lookup("d7"), Err(Error::UnknownScenario(_))));
    }

    #[test]
    fn registry_configs_match_themselves() {
        for e in entries() {
            assert_eq!(matching_entry(&e.config()).unwrap().name, e.name);
        }
        let mut edited = lookup("d3").unwrap().config();
        edited.parties = 3;
        assert!(matching_entry(&edited).is_none());
    }
}
