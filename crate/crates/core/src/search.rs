//! Random and exhaustive search over orbit-seed tuples for violations.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{classical_bound, quantum_maximum, run_route, QuantumMethod, VIOLATION_TOL};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupElement};
use crate::linalg::StateVector;
use crate::reptheory::Representation;
use crate::scenario::{build_scenario, classify_local_events, LocalEventSet, OrbitSeed};

/// Largest `|G|^(N_o·N_p)` accepted by exhaustive mode.
pub const EXHAUSTIVE_LIMIT: f64 = 1e7;
/// Tolerance for the method=all re-verification of a hit.
pub const REVERIFY_TOL: f64 = 1e-9;

const CHUNK: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Random,
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub rep: Representation,
    pub init: StateVector,
    pub parties: usize,
    pub orbits: usize,
    /// Ignored in exhaustive mode, which visits the whole space.
    pub trials: u64,
    pub rng_seed: u64,
    pub mode: SearchMode,
}

impl SearchConfig {
    /// `|G|^(N_o·N_p)` as a float, so huge spaces do not overflow.
    pub fn space_size(&self) -> f64 {
        (self.rep.group().order() as f64).powi((self.orbits * self.parties) as i32)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchHit {
    /// Canonical form, see [`canonicalize`].
    pub seeds: Vec<OrbitSeed>,
    pub classical: u64,
    pub quantum: f64,
    pub margin: f64,
    /// All three quantum routes agreed with the gram value.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub hits: Vec<SearchHit>,
    /// Tuples drawn (random) or canonical tuples evaluated (exhaustive).
    pub evaluated: u64,
    pub space_size: f64,
}

/// Seeds of trial `trial`: `N_o·N_p` uniform draws from a generator keyed
/// by `(rng_seed, trial)`, independent of evaluation order.
pub fn trial_seeds(group: &FiniteGroup, parties: usize, orbits: usize, rng_seed: u64, trial: u64) -> Vec<OrbitSeed> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(trial);
    (0..orbits)
        .map(|_| {
            OrbitSeed(
                (0..parties)
                    .map(|_| GroupElement(rng.gen_range(0..group.order())))
                    .collect(),
            )
        })
        .collect()
}

/// Smallest form of the seed list over left-translation by a common element
/// and reordering of the seeds. Translations taking some seed's first
/// component to `e` suffice, so the result starts with `e`.
pub fn canonicalize(group: &FiniteGroup, seeds: &[OrbitSeed]) -> Vec<OrbitSeed> {
    seeds
        .iter()
        .map(|anchor| {
            let h = group.inverse(anchor.0[0]);
            let mut moved: Vec<OrbitSeed> = seeds
                .iter()
                .map(|s| OrbitSeed(s.0.iter().map(|&g| group.mul(h, g)).collect()))
                .collect();
            moved.sort();
            moved
        })
        .min()
        .unwrap_or_default()
}

/// Builds the scenario for `seeds` and reports a hit when the gram value
/// beats the classical bound.
pub fn evaluate_seeds(local: &LocalEventSet, parties: usize, seeds: &[OrbitSeed]) -> Result<Option<SearchHit>> {
    let scenario = build_scenario(local, parties, seeds)?;
    let classical = classical_bound(&scenario)?.value;
    let quantum = run_route(&scenario, QuantumMethod::Gram)?.value;
    let margin = quantum - classical as f64;
    if margin <= VIOLATION_TOL {
        return Ok(None);
    }
    let all = quantum_maximum(&scenario, QuantumMethod::All)?;
    let verified = all.method_agreement < REVERIFY_TOL && (all.value - quantum).abs() < REVERIFY_TOL;
    Ok(Some(SearchHit {
        seeds: seeds.to_vec(),
        classical,
        quantum,
        margin,
        verified,
    }))
}

fn margin_key(margin: f64) -> i64 {
    (margin / VIOLATION_TOL).round() as i64
}

fn decode(index: u64, order: usize, parties: usize, orbits: usize) -> Vec<OrbitSeed> {
    let mut digits = vec![0usize; parties * orbits];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = (rest % order as u64) as usize;
        rest /= order as u64;
    }
    digits
        .chunks(parties)
        .map(|c| OrbitSeed(c.iter().map(|&g| GroupElement(g)).collect()))
        .collect()
}

pub fn random_orbit_search(config: &SearchConfig) -> Result<SearchReport> {
    random_orbit_search_streaming(config, |_| {})
}

/// Runs the search, calling `on_hit` for each new canonical hit in trial
/// order. Trials are evaluated in parallel chunks; the callback sequence and
/// the final sorted list do not depend on the thread count.
pub fn random_orbit_search_streaming(
    config: &SearchConfig,
    mut on_hit: impl FnMut(&SearchHit),
) -> Result<SearchReport> {
    if config.parties == 0 || config.orbits == 0 {
        return Err(Error::InvalidSeed("parties and orbits must be positive".into()));
    }
    let local = classify_local_events(&config.rep, &config.init)?;
    let group = config.rep.group();
    let space_size = config.space_size();
    let total = match config.mode {
        SearchMode::Random => config.trials,
        SearchMode::Exhaustive => {
            if space_size > EXHAUSTIVE_LIMIT {
                return Err(Error::SearchSpaceTooLarge {
                    size: space_size,
                    limit: EXHAUSTIVE_LIMIT,
                });
            }
            space_size as u64
        }
    };

    let candidate = |t: u64| -> Option<Vec<OrbitSeed>> {
        match config.mode {
            SearchMode::Random => Some(canonicalize(
                group,
                &trial_seeds(group, config.parties, config.orbits, config.rng_seed, t),
            )),
            SearchMode::Exhaustive => {
                // each class is visited once, through its canonical member
                let seeds = decode(t, group.order(), config.parties, config.orbits);
                (canonicalize(group, &seeds) == seeds).then_some(seeds)
            }
        }
    };

    let mut seen: BTreeSet<Vec<OrbitSeed>> = BTreeSet::new();
    let mut hits = Vec::new();
    let mut evaluated = 0u64;
    let mut start = 0u64;
    while start < total {
        let end = (start + CHUNK as u64).min(total);
        let chunk: Vec<Option<Result<Option<SearchHit>>>> = (start..end)
            .into_par_iter()
            .map(|t| candidate(t).map(|seeds| evaluate_seeds(&local, config.parties, &seeds)))
            .collect();
        for outcome in chunk.into_iter().flatten() {
            evaluated += 1;
            if let Some(hit) = outcome? {
                if seen.insert(hit.seeds.clone()) {
                    on_hit(&hit);
                    hits.push(hit);
                }
            }
        }
        start = end;
    }
    // margins equal to 1e-9 count as ties so float noise cannot reorder them
    hits.sort_by_key(|h| (std::cmp::Reverse(margin_key(h.margin)), h.seeds.clone()));
    Ok(SearchReport {
        hits,
        evaluated,
        space_size,
    })
}
