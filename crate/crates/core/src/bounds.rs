//! Classical (local-realistic) bound and quantum maximum of a scenario's
//! probability sum.
//!
//! The quantum maximum is the top eigenvalue of the Bell operator
//! `A = Σ_g Γ(g)^{⊗N} L Γ(g)^{†⊗N}`, `L = Σ_seeds |Ψ⟩⟨Ψ|`. Three routes
//! compute it independently:
//!
//! * `dense`: eigendecompose `A` directly;
//! * `gram`: eigensolve the Gram matrix of the `N_o·|G|` orbit vectors, whose
//!   span contains every eigenvector of `A` with nonzero eigenvalue;
//! * `symmetry`: `A` commutes with the joint representation, so it is block
//!   diagonal on the eigenspaces of the generator (cyclic groups) or on the
//!   isotypic components (other groups); each block is solved on its own.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::GroupFamily;
use crate::linalg::{
    cis, hermitian_eigendecompose, projector_onto, projector_range, span_reduced_eigensolve,
    top_eigenspace, ComplexMatrix, EigenPair, StateVector,
};
use crate::reptheory::{character_table_for_family, isotypic_projectors, Representation};
use crate::scenario::{event_probabilities, BellScenario, Event};

/// Default cap on the number of deterministic assignments enumerated.
pub const DEFAULT_ENUMERATION_LIMIT: f64 = 1e8;
/// Eigenvalues within this distance of the maximum span the top eigenspace.
pub const DEGENERACY_TOL: f64 = 1e-8;
/// Slack for declaring `S_q > S_c`.
pub const VIOLATION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuantumMethod {
    Dense,
    Gram,
    Symmetry,
    All,
}

impl QuantumMethod {
    pub const ROUTES: [QuantumMethod; 3] =
        [QuantumMethod::Dense, QuantumMethod::Gram, QuantumMethod::Symmetry];

    pub fn as_str(self) -> &'static str {
        match self {
            QuantumMethod::Dense => "dense",
            QuantumMethod::Gram => "gram",
            QuantumMethod::Symmetry => "symmetry",
            QuantumMethod::All => "all",
        }
    }
}

impl fmt::Display for QuantumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QuantumMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dense" => Ok(QuantumMethod::Dense),
            "gram" => Ok(QuantumMethod::Gram),
            "symmetry" => Ok(QuantumMethod::Symmetry),
            "all" => Ok(QuantumMethod::All),
            other => Err(format!("unknown method `{other}` (dense, gram, symmetry, all)")),
        }
    }
}

/// One outcome per party per observable: `outcomes[party][observable]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeterministicAssignment(pub Vec<Vec<usize>>);

impl DeterministicAssignment {
    pub fn is_consistent_with(&self, event: &Event) -> bool {
        event
            .0
            .iter()
            .enumerate()
            .all(|(k, e)| self.0[k][e.observable] == e.outcome)
    }

    /// `Σ_E coeff(E)·[assignment consistent with E]`.
    pub fn score(&self, scenario: &BellScenario) -> u64 {
        scenario
            .coefficients()
            .iter()
            .filter(|(e, _)| self.is_consistent_with(e))
            .map(|(_, &c)| u64::from(c))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalBound {
    pub value: u64,
    pub witness: DeterministicAssignment,
}

/// Visit every point of `{0..radix}^digits` in lexicographic order.
/// Returns early when `visit` returns `false`.
pub(crate) fn for_each_digits(digits: usize, radix: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut current = vec![0usize; digits];
    loop {
        if !visit(&current) {
            return;
        }
        let mut k = digits;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            current[k] += 1;
            if current[k] < radix {
                break;
            }
            current[k] = 0;
        }
    }
}

pub(crate) fn check_space(radix: usize, digits: usize, limit: f64) -> Result<()> {
    let size = (radix as f64).powi(digits as i32);
    if size > limit {
        return Err(Error::SearchSpaceTooLarge { size, limit });
    }
    Ok(())
}

pub fn classical_bound(scenario: &BellScenario) -> Result<ClassicalBound> {
    classical_bound_with_limit(scenario, DEFAULT_ENUMERATION_LIMIT)
}

/// Exhaustive maximum over all `K^{N·M}` deterministic assignments; the
/// lexicographically smallest maximizer is the witness.
pub fn classical_bound_with_limit(scenario: &BellScenario, limit: f64) -> Result<ClassicalBound> {
    let (n, m, k) = (scenario.parties(), scenario.observables(), scenario.outcomes());
    check_space(k, n * m, limit)?;
    let events: Vec<(Vec<(usize, usize)>, u64)> = scenario
        .coefficients()
        .iter()
        .map(|(e, &c)| {
            let slots = e
                .0
                .iter()
                .enumerate()
                .map(|(party, le)| (party * m + le.observable, le.outcome))
                .collect();
            (slots, u64::from(c))
        })
        .collect();
    let mut best = 0u64;
    let mut best_flat: Option<Vec<usize>> = None;
    for_each_digits(n * m, k, |flat| {
        let score: u64 = events
            .iter()
            .filter(|(slots, _)| slots.iter().all(|&(i, o)| flat[i] == o))
            .map(|(_, c)| c)
            .sum();
        if best_flat.is_none() || score > best {
            best = score;
            best_flat = Some(flat.to_vec());
        }
        true
    });
    let flat = best_flat.expect("at least one assignment");
    Ok(ClassicalBound {
        value: best,
        witness: DeterministicAssignment(flat.chunks(m).map(<[usize]>::to_vec).collect()),
    })
}

/// `L = Σ_seeds |Ψ_seed⟩⟨Ψ_seed|`.
pub fn seed_operator(scenario: &BellScenario) -> ComplexMatrix {
    let states: Vec<StateVector> = scenario
        .seeds()
        .iter()
        .map(|s| scenario.seed_state(s))
        .collect();
    projector_onto(&states).expect("scenario has seeds")
}

/// `A = Σ_g Γ(g)^{⊗N} L Γ(g)^{†⊗N}`.
pub fn build_bell_operator(scenario: &BellScenario) -> ComplexMatrix {
    let l = seed_operator(scenario);
    let d = scenario.joint_dim();
    scenario
        .joint_rep()
        .matrices()
        .iter()
        .fold(ComplexMatrix::zeros(d, d), |acc, g| {
            &acc + &(&(g * &l) * &g.adjoint())
        })
}

/// One invariant subspace of the joint representation with `A` compressed
/// onto it.
#[derive(Clone, Debug)]
pub struct SymmetryBlock {
    pub label: String,
    /// Eigenvalue of the generator for the abelian route.
    pub generator_eigenvalue: Option<Complex64>,
    /// Orthonormal basis of the subspace (columns of `Q`).
    pub basis: Vec<StateVector>,
    /// `Q† A Q`.
    pub block: ComplexMatrix,
    /// Eigenpairs of `block`, lifted back to the joint space.
    pub eigenpairs: Vec<EigenPair>,
    group_order: usize,
}

impl SymmetryBlock {
    /// `Q† (A/|G|) Q`, the per-element average form.
    pub fn normalized_block(&self) -> ComplexMatrix {
        self.block.scale_real(1.0 / self.group_order as f64)
    }
}

fn solve_blocks(
    a: &ComplexMatrix,
    group_order: usize,
    projectors: Vec<(String, Option<Complex64>, ComplexMatrix)>,
) -> Result<Vec<SymmetryBlock>> {
    projectors
        .into_iter()
        .map(|(label, generator_eigenvalue, p)| {
            let basis = projector_range(&p)?;
            let block = a.compress(&basis);
            let eigenpairs = hermitian_eigendecompose(&block)?
                .into_iter()
                .map(|pair| {
                    let lifted = pair
                        .vector
                        .entries()
                        .iter()
                        .zip(&basis)
                        .fold(StateVector::zeros(a.rows()), |acc, (coef, b)| {
                            &acc + &b.scale(*coef)
                        });
                    EigenPair {
                        value: pair.value,
                        vector: lifted.canonical_phase(),
                    }
                })
                .collect();
            Ok(SymmetryBlock {
                label,
                generator_eigenvalue,
                basis,
                block,
                eigenpairs,
                group_order,
            })
        })
        .collect()
}

/// Projectors `P_λ = (1/n) Σₖ λ^{−k} Bᵏ` onto the eigenspaces of the
/// generator `B` of a cyclic joint representation, for each `n`-th root of
/// unity `λ = e^{2πij/n}` that occurs. Returned as `(j, λ, P_λ)`.
pub fn generator_eigenprojectors(
    joint: &Representation,
) -> Result<Vec<(usize, Complex64, ComplexMatrix)>> {
    let GroupFamily::Cyclic(n) = joint.group().family() else {
        return Err(Error::NotCyclic(joint.group().family().to_string()));
    };
    let d = joint.dim();
    let mut out = Vec::new();
    for j in 0..n {
        let lambda = cis(2.0 * std::f64::consts::PI * j as f64 / n as f64);
        let mut p = ComplexMatrix::zeros(d, d);
        for (k, bk) in joint.matrices().iter().enumerate() {
            p = &p + &bk.scale(lambda.powu(k as u32).conj());
        }
        let p = p.scale_real(1.0 / n as f64);
        if p.trace().re > 0.5 {
            out.push((j, lambda, p));
        }
    }
    Ok(out)
}

/// Block-diagonalize `A` on the eigenspaces of the cyclic generator.
pub fn abelian_block_reduce(scenario: &BellScenario) -> Result<Vec<SymmetryBlock>> {
    let joint = scenario.joint_rep();
    let GroupFamily::Cyclic(n) = joint.group().family() else {
        return Err(Error::NotCyclic(joint.group().family().to_string()));
    };
    let projectors = generator_eigenprojectors(joint)?
        .into_iter()
        .map(|(j, lambda, p)| (format!("λ=exp(2πi·{j}/{n})"), Some(lambda), p))
        .collect();
    solve_blocks(&build_bell_operator(scenario), n, projectors)
}

/// Block-diagonalize `A` on the isotypic components of the joint
/// representation.
pub fn isotypic_block_reduce(scenario: &BellScenario) -> Result<Vec<SymmetryBlock>> {
    let joint = scenario.joint_rep();
    let table = character_table_for_family(joint.group()).map_err(|e| match e {
        Error::UnsupportedFamily(reason) => Error::MethodUnavailable {
            method: "symmetry".into(),
            reason: format!("no character table for {reason}"),
        },
        other => other,
    })?;
    let decomposition = isotypic_projectors(joint, &table)?;
    let projectors = decomposition
        .components
        .into_iter()
        .map(|comp| {
            (
                format!("{}x{}", comp.multiplicity, comp.label),
                None,
                comp.projector,
            )
        })
        .collect();
    solve_blocks(
        &build_bell_operator(scenario),
        joint.group().order(),
        projectors,
    )
}

/// Result of one quantum route.
#[derive(Clone, Debug)]
pub struct RouteResult {
    pub method: QuantumMethod,
    pub value: f64,
    /// Eigenvalues found by the route, descending. The gram route only sees
    /// nonzero eigenvalues.
    pub spectrum: Vec<f64>,
    pub top_space: Vec<StateVector>,
}

impl RouteResult {
    fn from_pairs(method: QuantumMethod, pairs: Vec<EigenPair>) -> Self {
        let top_space = top_eigenspace(&pairs, DEGENERACY_TOL);
        Self {
            method,
            value: pairs.first().map_or(0.0, |p| p.value),
            spectrum: pairs.iter().map(|p| p.value).collect(),
            top_space,
        }
    }

    pub fn top_projector(&self) -> Option<ComplexMatrix> {
        projector_onto(&self.top_space)
    }
}

pub fn run_route(scenario: &BellScenario, method: QuantumMethod) -> Result<RouteResult> {
    let pairs = match method {
        QuantumMethod::Dense => hermitian_eigendecompose(&build_bell_operator(scenario))?,
        QuantumMethod::Gram => span_reduced_eigensolve(&scenario.orbit_vectors())?,
        QuantumMethod::Symmetry => {
            let blocks = match scenario.joint_rep().group().family() {
                GroupFamily::Cyclic(_) => abelian_block_reduce(scenario)?,
                _ => isotypic_block_reduce(scenario)?,
            };
            let mut pairs: Vec<EigenPair> =
                blocks.into_iter().flat_map(|b| b.eigenpairs).collect();
            pairs.sort_by(|x, y| y.value.total_cmp(&x.value));
            pairs
        }
        QuantumMethod::All => unreachable!("`all` is expanded by quantum_maximum"),
    };
    Ok(RouteResult::from_pairs(method, pairs))
}

#[derive(Clone, Debug)]
pub struct QuantumMaximum {
    pub value: f64,
    pub optimal_state: StateVector,
    pub top_degeneracy: usize,
    pub spectrum: Vec<f64>,
    /// Routes in fixed order dense, gram, symmetry (those that ran).
    pub routes: Vec<RouteResult>,
    /// Largest pairwise difference of route values (0 for a single route).
    pub method_agreement: f64,
    /// Largest pairwise entrywise difference of top-eigenspace projectors.
    pub projector_agreement: f64,
}

pub fn quantum_maximum(scenario: &BellScenario, method: QuantumMethod) -> Result<QuantumMaximum> {
    let methods: Vec<QuantumMethod> = match method {
        QuantumMethod::All => QuantumMethod::ROUTES.to_vec(),
        single => vec![single],
    };
    let routes = methods
        .iter()
        .map(|&m| run_route(scenario, m))
        .collect::<Result<Vec<_>>>()?;
    let mut method_agreement: f64 = 0.0;
    let mut projector_agreement: f64 = 0.0;
    for (i, a) in routes.iter().enumerate() {
        for b in &routes[i + 1..] {
            method_agreement = method_agreement.max((a.value - b.value).abs());
            if let (Some(pa), Some(pb)) = (a.top_projector(), b.top_projector()) {
                projector_agreement = projector_agreement.max(pa.max_abs_diff(&pb));
            }
        }
    }
    let primary = &routes[0];
    let optimal_state = primary
        .top_space
        .first()
        .cloned()
        .unwrap_or_else(|| StateVector::basis(scenario.joint_dim(), 0));
    Ok(QuantumMaximum {
        value: primary.value,
        optimal_state,
        top_degeneracy: primary.top_space.len(),
        spectrum: primary.spectrum.clone(),
        method_agreement,
        projector_agreement,
        routes,
    })
}

#[derive(Clone, Debug)]
pub struct BellCertificate {
    pub classical_bound: u64,
    pub classical_witness: DeterministicAssignment,
    pub quantum_value: f64,
    pub optimal_state: StateVector,
    pub top_degeneracy: usize,
    pub optimal_probabilities: BTreeMap<Event, f64>,
    pub spectrum: Vec<f64>,
    pub route_values: Vec<(QuantumMethod, f64)>,
    pub method_agreement: f64,
    pub projector_agreement: f64,
    pub violation: bool,
}

/// Classical bound plus quantum maximum.
pub fn certify(scenario: &BellScenario, method: QuantumMethod) -> Result<BellCertificate> {
    let classical = classical_bound(scenario)?;
    let quantum = quantum_maximum(scenario, method)?;
    let optimal_probabilities = event_probabilities(scenario, &quantum.optimal_state)?;
    Ok(BellCertificate {
        classical_bound: classical.value,
        classical_witness: classical.witness,
        quantum_value: quantum.value,
        violation: quantum.value > classical.value as f64 + VIOLATION_TOL,
        optimal_state: quantum.optimal_state,
        top_degeneracy: quantum.top_degeneracy,
        optimal_probabilities,
        spectrum: quantum.spectrum,
        route_values: quantum.routes.iter().map(|r| (r.method, r.value)).collect(),
        method_agreement: quantum.method_agreement,
        projector_agreement: quantum.projector_agreement,
    })
}

/// `⟨φ|A|φ⟩`.
pub fn expectation(a: &ComplexMatrix, state: &StateVector) -> f64 {
    state.inner(&a.apply(state)).re
}

/// `Σ_E coeff(E)·p(E)`.
pub fn probability_sum(scenario: &BellScenario, probabilities: &BTreeMap<Event, f64>) -> f64 {
    scenario
        .coefficients()
        .iter()
        .map(|(e, &c)| f64::from(c) * probabilities[e])
        .sum()
}
