//! From a representation, an initial local state and orbit seeds to a Bell
//! scenario: measurement bases, events, and the coefficient map of the
//! probability sum.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::linalg::{StateVector, STRUCTURE_TOL};
use crate::reptheory::{tensor_rep, Representation};

/// Overlap magnitude above which two states are the same outcome.
pub const SAME_STATE: f64 = 1.0 - 1e-9;
/// Overlaps within this distance of 0 (or 1) count as exactly 0 (or 1).
pub const CLASSIFY_TOL: f64 = 1e-6;

/// One party's measurement choice and result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalEvent {
    pub observable: usize,
    pub outcome: usize,
}

/// A joint event: one `(observable, outcome)` per party.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Event(pub Vec<LocalEvent>);

pub fn party_letter(party: usize) -> String {
    if party < 26 {
        char::from(b'a' + party as u8).to_string()
    } else {
        format!("p{party}_")
    }
}

impl Event {
    pub fn parties(&self) -> usize {
        self.0.len()
    }

    pub fn observables(&self) -> Vec<usize> {
        self.0.iter().map(|e| e.observable).collect()
    }

    pub fn outcomes(&self) -> Vec<usize> {
        self.0.iter().map(|e| e.outcome).collect()
    }

    pub fn from_parts(observables: &[usize], outcomes: &[usize]) -> Event {
        Event(
            observables
                .iter()
                .zip(outcomes)
                .map(|(&observable, &outcome)| LocalEvent { observable, outcome })
                .collect(),
        )
    }
}

impl fmt::Display for Event {
    /// `a0=2, b2=2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}{}={}", party_letter(k), e.observable, e.outcome)?;
        }
        Ok(())
    }
}

/// One group element per party; the orbit starts at
/// `Γ(g₁)|init⟩ ⊗ … ⊗ Γ(g_N)|init⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrbitSeed(pub Vec<GroupElement>);

/// The orbit `{Γ(g)|init⟩}` sorted into orthonormal measurement bases.
#[derive(Clone, Debug)]
pub struct LocalEventSet {
    rep: Representation,
    init: StateVector,
    /// `[observable][outcome]`
    bases: Vec<Vec<StateVector>>,
    event_of_element: Vec<LocalEvent>,
}

impl LocalEventSet {
    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn init(&self) -> &StateVector {
        &self.init
    }

    pub fn bases(&self) -> &[Vec<StateVector>] {
        &self.bases
    }

    pub fn observables(&self) -> usize {
        self.bases.len()
    }

    pub fn outcomes(&self) -> usize {
        self.bases[0].len()
    }

    pub fn state_count(&self) -> usize {
        self.bases.iter().map(Vec::len).sum()
    }

    pub fn event_of_element(&self, g: GroupElement) -> LocalEvent {
        self.event_of_element[g.0]
    }

    pub fn state(&self, e: LocalEvent) -> &StateVector {
        &self.bases[e.observable][e.outcome]
    }

    /// Rename observables and outcomes to match reference bases: outcome `o`
    /// of observable `m` becomes the orbit state equal (up to phase) to
    /// `reference[m][o]`.
    pub fn relabel(&self, reference: &[Vec<StateVector>]) -> Result<LocalEventSet> {
        let mismatch = |msg: String| Error::LabelingMismatch(msg);
        if reference.len() != self.observables() {
            return Err(mismatch(format!(
                "{} reference bases for {} observables",
                reference.len(),
                self.observables()
            )));
        }
        let mut map: BTreeMap<LocalEvent, LocalEvent> = BTreeMap::new();
        let mut observable_map = vec![None; self.observables()];
        for (m_new, basis) in reference.iter().enumerate() {
            if basis.len() != self.outcomes() {
                return Err(mismatch(format!(
                    "reference basis {m_new} has {} states, expected {}",
                    basis.len(),
                    self.outcomes()
                )));
            }
            for (o_new, reference_state) in basis.iter().enumerate() {
                if reference_state.dim() != self.init.dim() {
                    return Err(mismatch(format!(
                        "reference state {m_new}/{o_new} has wrong dimension"
                    )));
                }
                let found = self.bases.iter().enumerate().find_map(|(m, b)| {
                    b.iter()
                        .position(|s| s.overlap(&reference_state.normalized()) > SAME_STATE)
                        .map(|o| LocalEvent {
                            observable: m,
                            outcome: o,
                        })
                });
                let Some(old) = found else {
                    return Err(mismatch(format!(
                        "reference state {m_new}/{o_new} is not in the orbit"
                    )));
                };
                match observable_map[old.observable] {
                    None => observable_map[old.observable] = Some(m_new),
                    Some(m) if m == m_new => {}
                    Some(_) => {
                        return Err(mismatch(format!(
                            "reference basis {m_new} mixes orbit bases"
                        )))
                    }
                }
                let new = LocalEvent {
                    observable: m_new,
                    outcome: o_new,
                };
                if map.insert(old, new).is_some() {
                    return Err(mismatch(format!("orbit state {old:?} referenced twice")));
                }
            }
        }
        let mut bases = self.bases.clone();
        for (old, new) in &map {
            bases[new.observable][new.outcome] = self.state(*old).clone();
        }
        Ok(LocalEventSet {
            rep: self.rep.clone(),
            init: self.init.clone(),
            bases,
            event_of_element: self.event_of_element.iter().map(|e| map[e]).collect(),
        })
    }
}

/// Sort the orbit of `init` under `rep` into orthonormal bases.
///
/// States equal up to phase are merged. Two distinct states are in the same
/// basis iff they are orthogonal; the orthogonality graph must split into
/// complete bases of size `dim`. Observables and outcomes are numbered by
/// first appearance in group-element order.
pub fn classify_local_events(rep: &Representation, init: &StateVector) -> Result<LocalEventSet> {
    if init.dim() != rep.dim() {
        return Err(Error::DimensionMismatch(format!(
            "initial state has dimension {}, representation {}",
            init.dim(),
            rep.dim()
        )));
    }
    if !init.is_normalized() {
        return Err(Error::UnusableInitialState(format!(
            "initial state has squared norm {}",
            init.norm_sqr()
        )));
    }
    let mut states: Vec<StateVector> = Vec::new();
    let mut state_of = Vec::with_capacity(rep.group().order());
    for g in rep.group().elements() {
        let psi = rep.matrix(g).apply(init);
        match states.iter().position(|s| s.overlap(&psi) > SAME_STATE) {
            Some(i) => state_of.push(i),
            None => {
                state_of.push(states.len());
                states.push(psi);
            }
        }
    }
    let n = states.len();
    let mut orthogonal = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let t = states[i].overlap(&states[j]);
            if t > 1.0 - CLASSIFY_TOL {
                return Err(Error::UnusableInitialState(format!(
                    "orbit states {i} and {j} nearly coincide (|overlap| = {t})"
                )));
            }
            orthogonal[i][j] = t < CLASSIFY_TOL;
            orthogonal[j][i] = orthogonal[i][j];
        }
    }
    // connected components of the orthogonality graph, in first-appearance order
    let mut component = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut stack = vec![start];
        let mut comp = Vec::new();
        component[start] = id;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..n {
                if orthogonal[i][j] && component[j] == usize::MAX {
                    component[j] = id;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        members.push(comp);
    }
    let dim = rep.dim();
    for comp in &members {
        for (a, &i) in comp.iter().enumerate() {
            for &j in &comp[a + 1..] {
                if !orthogonal[i][j] {
                    return Err(Error::UnusableInitialState(format!(
                        "orbit states {i} and {j} share a basis but are not orthogonal"
                    )));
                }
            }
        }
        if comp.len() != dim {
            return Err(Error::UnusableInitialState(format!(
                "a basis has {} states but the local dimension is {dim}",
                comp.len()
            )));
        }
    }
    let position: Vec<usize> = (0..n)
        .map(|i| members[component[i]].iter().position(|&x| x == i).unwrap())
        .collect();
    let bases = members
        .iter()
        .map(|comp| comp.iter().map(|&i| states[i].clone()).collect())
        .collect();
    let event_of_element = state_of
        .iter()
        .map(|&i| LocalEvent {
            observable: component[i],
            outcome: position[i],
        })
        .collect();
    Ok(LocalEventSet {
        rep: rep.clone(),
        init: init.clone(),
        bases,
        event_of_element,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub seed: OrbitSeed,
    /// Events in group-element order: entry `i` comes from element `i`.
    pub events: Vec<Event>,
}

#[derive(Clone, Debug)]
pub struct BellScenario {
    local: LocalEventSet,
    parties: usize,
    joint_rep: Representation,
    coefficients: BTreeMap<Event, u32>,
    provenance: Vec<OrbitRecord>,
    event_states: BTreeMap<Event, StateVector>,
}

/// Each seed `(g₁,…,g_N)` and each `g ∈ G` adds 1 to the event whose
/// party-`k` component is the local event of `g·g_k`.
pub fn build_scenario(
    local: &LocalEventSet,
    parties: usize,
    seeds: &[OrbitSeed],
) -> Result<BellScenario> {
    if parties == 0 {
        return Err(Error::InvalidSeed("a scenario needs at least one party".into()));
    }
    if seeds.is_empty() {
        return Err(Error::InvalidSeed("a scenario needs at least one orbit seed".into()));
    }
    let group = local.rep.group();
    for seed in seeds {
        if seed.0.len() != parties {
            return Err(Error::InvalidSeed(format!(
                "seed has {} elements for {parties} parties",
                seed.0.len()
            )));
        }
        if let Some(bad) = seed.0.iter().find(|g| g.0 >= group.order()) {
            return Err(Error::InvalidSeed(format!("element index {} out of range", bad.0)));
        }
    }
    let joint_rep = tensor_rep(&local.rep, parties)?;
    let mut coefficients = BTreeMap::new();
    let mut provenance = Vec::with_capacity(seeds.len());
    let mut event_states = BTreeMap::new();
    for seed in seeds {
        let events: Vec<Event> = group
            .elements()
            .map(|g| {
                Event(
                    seed.0
                        .iter()
                        .map(|&gk| local.event_of_element(group.mul(g, gk)))
                        .collect(),
                )
            })
            .collect();
        for e in &events {
            *coefficients.entry(e.clone()).or_insert(0) += 1;
            event_states
                .entry(e.clone())
                .or_insert_with(|| product_state(local, e));
        }
        provenance.push(OrbitRecord {
            seed: seed.clone(),
            events,
        });
    }
    Ok(BellScenario {
        local: local.clone(),
        parties,
        joint_rep,
        coefficients,
        provenance,
        event_states,
    })
}

fn product_state(local: &LocalEventSet, event: &Event) -> StateVector {
    event
        .0
        .iter()
        .map(|e| local.state(*e).clone())
        .reduce(|acc, s| acc.kron(&s))
        .expect("events have at least one party")
}

impl BellScenario {
    pub fn local(&self) -> &LocalEventSet {
        &self.local
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn observables(&self) -> usize {
        self.local.observables()
    }

    pub fn outcomes(&self) -> usize {
        self.local.outcomes()
    }

    pub fn local_dim(&self) -> usize {
        self.local.rep.dim()
    }

    pub fn joint_dim(&self) -> usize {
        self.joint_rep.dim()
    }

    pub fn joint_rep(&self) -> &Representation {
        &self.joint_rep
    }

    pub fn group_order(&self) -> usize {
        self.local.rep.group().order()
    }

    pub fn coefficients(&self) -> &BTreeMap<Event, u32> {
        &self.coefficients
    }

    pub fn provenance(&self) -> &[OrbitRecord] {
        &self.provenance
    }

    pub fn seeds(&self) -> Vec<OrbitSeed> {
        self.provenance.iter().map(|o| o.seed.clone()).collect()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.coefficients.values().all(|&c| c == 1)
    }

    pub fn event_state(&self, event: &Event) -> StateVector {
        match self.event_states.get(event) {
            Some(s) => s.clone(),
            None => product_state(&self.local, event),
        }
    }

    /// `Γ(g₁)|init⟩ ⊗ … ⊗ Γ(g_N)|init⟩`
    pub fn seed_state(&self, seed: &OrbitSeed) -> StateVector {
        let rep = &self.local.rep;
        seed.0
            .iter()
            .map(|&g| rep.matrix(g).apply(&self.local.init))
            .reduce(|acc, s| acc.kron(&s))
            .expect("seeds are nonempty")
    }

    /// All `N_o·|G|` vectors `Γ(g)^{⊗N}|Ψ_seed⟩`, seed-major.
    pub fn orbit_vectors(&self) -> Vec<StateVector> {
        self.provenance
            .iter()
            .flat_map(|o| {
                let psi = self.seed_state(&o.seed);
                self.joint_rep
                    .matrices()
                    .iter()
                    .map(move |m| m.apply(&psi))
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// `p(E) = |⟨E|state⟩|²` for every event of the scenario.
pub fn event_probabilities(
    scenario: &BellScenario,
    state: &StateVector,
) -> Result<BTreeMap<Event, f64>> {
    if state.dim() != scenario.joint_dim() {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} for a {}-dimensional scenario",
            state.dim(),
            scenario.joint_dim()
        )));
    }
    Ok(scenario
        .event_states
        .iter()
        .map(|(e, s)| (e.clone(), s.inner(state).norm_sqr()))
        .collect())
}

/// `|⟨E|state⟩|²` for an arbitrary event, in the scenario or not.
pub fn event_probability(scenario: &BellScenario, event: &Event, state: &StateVector) -> f64 {
    scenario.event_state(event).inner(state).norm_sqr()
}

pub(crate) fn check_unit(state: &StateVector) -> Result<()> {
    if (state.norm_sqr() - 1.0).abs() > STRUCTURE_TOL {
        return Err(Error::DimensionMismatch(format!(
            "state is not normalized (squared norm {})",
            state.norm_sqr()
        )));
    }
    Ok(())
}
