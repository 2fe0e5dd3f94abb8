//! Nonlocal games induced by a scenario: the referee asks each party for one
//! of its observables, and the parties win when their answers form an event
//! of the scenario.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{check_space, for_each_digits, DEFAULT_ENUMERATION_LIMIT};
use crate::error::{Error, Result};
use crate::linalg::StateVector;
use crate::scenario::{check_unit, event_probability, BellScenario, Event};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuestionPolicy {
    /// Only the observable tuples that occur in the scenario are asked.
    Restricted,
    /// All `Mᴺ` observable tuples are asked.
    Full,
}

impl FromStr for QuestionPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "restricted" => Ok(QuestionPolicy::Restricted),
            "full" => Ok(QuestionPolicy::Full),
            other => Err(format!("unknown question policy `{other}`")),
        }
    }
}

impl fmt::Display for QuestionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuestionPolicy::Restricted => "restricted",
            QuestionPolicy::Full => "full",
        })
    }
}

/// Exact `num/den`; equality compares the fractions, not the raw fields.
#[derive(Clone, Copy, Debug, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Self { num, den }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn reduced(self) -> Self {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(self.num, self.den).max(1);
        Self::new(self.num / g, self.den / g)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        u128::from(self.num) * u128::from(other.den) == u128::from(other.num) * u128::from(self.den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        write!(f, "{}/{}", r.num, r.den)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonlocalGame {
    pub parties: usize,
    pub observables: usize,
    pub answers: usize,
    pub policy: QuestionPolicy,
    /// Observable tuples, lexicographic; the prior is uniform over them.
    pub questions: Vec<Vec<usize>>,
    /// `winning[q]`: answer tuples with `F = 1` for question `q`, sorted.
    pub winning: Vec<Vec<Vec<usize>>>,
}

impl NonlocalGame {
    pub fn question_count(&self) -> usize {
        self.questions.len()
    }

    pub fn is_winning(&self, question: usize, answers: &[usize]) -> bool {
        self.winning[question].iter().any(|a| a == answers)
    }

    /// Winning `(question, answers)` cells as scenario events.
    pub fn winning_events(&self) -> impl Iterator<Item = Event> + '_ {
        self.questions
            .iter()
            .zip(&self.winning)
            .flat_map(|(q, ws)| ws.iter().map(move |a| Event::from_parts(q, a)))
    }

    /// Number of questions won by the deterministic strategy
    /// `strategy[party][observable]`.
    pub fn strategy_wins(&self, strategy: &[Vec<usize>]) -> u64 {
        self.questions
            .iter()
            .enumerate()
            .filter(|(qi, q)| {
                let answers: Vec<usize> =
                    q.iter().enumerate().map(|(k, &s)| strategy[k][s]).collect();
                self.is_winning(*qi, &answers)
            })
            .count() as u64
    }
}

/// `F(answers; question) = 1` iff the event is in the scenario.
pub fn game_from_scenario(scenario: &BellScenario, policy: QuestionPolicy) -> Result<NonlocalGame> {
    if let Some((event, &multiplicity)) = scenario.coefficients().iter().find(|(_, &c)| c > 1) {
        return Err(Error::MultiplicityNotSupported {
            event: event.to_string(),
            multiplicity,
        });
    }
    let (n, m) = (scenario.parties(), scenario.observables());
    let questions: Vec<Vec<usize>> = match policy {
        QuestionPolicy::Restricted => {
            let mut qs: Vec<Vec<usize>> =
                scenario.coefficients().keys().map(Event::observables).collect();
            qs.sort();
            qs.dedup();
            qs
        }
        QuestionPolicy::Full => {
            let mut qs = Vec::new();
            for_each_digits(n, m, |d| {
                qs.push(d.to_vec());
                true
            });
            qs
        }
    };
    let winning = questions
        .iter()
        .map(|q| {
            let mut ws: Vec<Vec<usize>> = scenario
                .coefficients()
                .keys()
                .filter(|e| &e.observables() == q)
                .map(Event::outcomes)
                .collect();
            ws.sort();
            ws
        })
        .collect();
    Ok(NonlocalGame {
        parties: n,
        observables: m,
        answers: scenario.outcomes(),
        policy,
        questions,
        winning,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalGameValue {
    pub value: Rational,
    /// `witness[party][question component] = answer`
    pub witness: Vec<Vec<usize>>,
}

pub fn classical_game_value(game: &NonlocalGame) -> Result<ClassicalGameValue> {
    classical_game_value_with_limit(game, DEFAULT_ENUMERATION_LIMIT)
}

/// Exhaustive maximum over the `K^{N·M}` deterministic strategies; the
/// lexicographically smallest best strategy is the witness.
pub fn classical_game_value_with_limit(game: &NonlocalGame, limit: f64) -> Result<ClassicalGameValue> {
    let (n, m, k) = (game.parties, game.observables, game.answers);
    check_space(k, n * m, limit)?;
    let mut best = 0u64;
    let mut best_flat: Option<Vec<usize>> = None;
    let mut answers = vec![0usize; n];
    for_each_digits(n * m, k, |flat| {
        let mut wins = 0u64;
        for (qi, q) in game.questions.iter().enumerate() {
            for (party, &s) in q.iter().enumerate() {
                answers[party] = flat[party * m + s];
            }
            if game.is_winning(qi, &answers) {
                wins += 1;
            }
        }
        if best_flat.is_none() || wins > best {
            best = wins;
            best_flat = Some(flat.to_vec());
        }
        true
    });
    let flat = best_flat.expect("at least one strategy");
    Ok(ClassicalGameValue {
        value: Rational::new(best, game.question_count() as u64),
        witness: flat.chunks(m).map(<[usize]>::to_vec).collect(),
    })
}

/// Winning probability when the parties share `state` and answer with the
/// outcome of the asked observable: `(1/|Q|) Σ_winning p(E)`.
pub fn quantum_game_value(
    game: &NonlocalGame,
    scenario: &BellScenario,
    state: &StateVector,
) -> Result<f64> {
    if state.dim() != scenario.joint_dim() {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} for a {}-dimensional scenario",
            state.dim(),
            scenario.joint_dim()
        )));
    }
    check_unit(state)?;
    let total: f64 = game
        .winning_events()
        .map(|e| event_probability(scenario, &e, state))
        .sum();
    Ok(total / game.question_count() as f64)
}

/// Probability mass over all `Kᴺ` answers of one question; 1 for any
/// normalized state.
pub fn question_total_probability(
    game: &NonlocalGame,
    scenario: &BellScenario,
    question: usize,
    state: &StateVector,
) -> f64 {
    let q = &game.questions[question];
    let mut total = 0.0;
    for_each_digits(game.parties, game.answers, |a| {
        total += event_probability(scenario, &Event::from_parts(q, a), state);
        true
    });
    total
}
