//! Named representations used by the registry and by `--rep builtin:<name>`.
//! All constants come from closed forms (`cos`, `sin`, `e^{iθ}` of rational
//! multiples of π), never from decimal literals.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{c, cis, ComplexMatrix, StateVector};
use crate::reptheory::Representation;

pub const BUILTIN_NAMES: [&str; 5] = ["z4-qubit", "z6-qutrit", "d3-qubit", "z6-qubit", "d6-qutrit"];

pub fn plus_x() -> StateVector {
    StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])
}

pub fn minus_x() -> StateVector {
    StateVector::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2])
}

/// Fourier basis of ℂ³: `|u_j⟩ = (1/√3) Σₖ e^{2πijk/3} |k⟩`.
pub fn fourier3(j: usize) -> StateVector {
    let norm = 1.0 / 3f64.sqrt();
    StateVector::new(
        (0..3)
            .map(|k| cis(2.0 * PI * (j * k) as f64 / 3.0) * norm)
            .collect(),
    )
}

fn build(group: FiniteGroup, gens: Vec<(&str, ComplexMatrix)>) -> Representation {
    let gens: BTreeMap<String, ComplexMatrix> =
        gens.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    Representation::from_generators(&group, &gens).expect("builtin representation is valid")
}

/// `Z₄` on a qubit: `U = |+x⟩⟨+x| − i|−x⟩⟨−x|`.
pub fn z4_qubit() -> Representation {
    let u = &plus_x().projector() + &minus_x().projector().scale(c(0.0, -1.0));
    build(FiniteGroup::cyclic(4).unwrap(), vec![("r", u)])
}

/// `U = |w₀⟩⟨w₀| + e^{−iπ/3}|w₁⟩⟨w₁| + e^{iπ/3}|w₂⟩⟨w₂|` on the Fourier basis.
fn qutrit_rotation() -> ComplexMatrix {
    let phases = [c(1.0, 0.0), cis(-PI / 3.0), cis(PI / 3.0)];
    (0..3).fold(ComplexMatrix::zeros(3, 3), |acc, j| {
        &acc + &fourier3(j).projector().scale(phases[j])
    })
}

/// `Z₆` on a qutrit, `U² = T` (the cyclic shift).
pub fn z6_qutrit() -> Representation {
    build(FiniteGroup::cyclic(6).unwrap(), vec![("r", qutrit_rotation())])
}

/// `D₃` on a qubit: rotation by 2π/3 and `diag(1, −1)`.
pub fn d3_qubit() -> Representation {
    let (cs, sn) = ((2.0 * PI / 3.0).cos(), (2.0 * PI / 3.0).sin());
    let u = ComplexMatrix::from_real_rows(&[&[cs, -sn], &[sn, cs]]).unwrap();
    let v = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
    build(FiniteGroup::dihedral(3).unwrap(), vec![("r", u), ("s", v)])
}

/// `Z₆` on a qubit: `U = |+x⟩⟨+x| + e^{iπ/3}|−x⟩⟨−x|`.
pub fn z6_qubit() -> Representation {
    let u = &plus_x().projector() + &minus_x().projector().scale(cis(PI / 3.0));
    build(FiniteGroup::cyclic(6).unwrap(), vec![("r", u)])
}

/// `D₆` on a qutrit: the `Z₆` rotation above and
/// `V = |u₀⟩⟨u₀| + i(|u₁⟩⟨u₂| − |u₂⟩⟨u₁|)`.
pub fn d6_qutrit() -> Representation {
    let (u0, u1, u2) = (fourier3(0), fourier3(1), fourier3(2));
    let swap = &u1.outer(&u2) - &u2.outer(&u1);
    let v = &u0.projector() + &swap.scale(c(0.0, 1.0));
    build(
        FiniteGroup::dihedral(6).unwrap(),
        vec![("r", qutrit_rotation()), ("s", v)],
    )
}

/// `|+x⟩` for `d3-qubit`, `|0⟩` otherwise.
pub fn default_initial_state(name: &str) -> Result<StateVector> {
    let rep = by_name(name)?;
    Ok(match name {
        "d3-qubit" => plus_x(),
        _ => StateVector::basis(rep.dim(), 0),
    })
}

pub fn by_name(name: &str) -> Result<Representation> {
    match name {
        "z4-qubit" => Ok(z4_qubit()),
        "z6-qutrit" => Ok(z6_qutrit()),
        "d3-qubit" => Ok(d3_qubit()),
        "z6-qubit" => Ok(z6_qubit()),
        "d6-qutrit" => Ok(d6_qutrit()),
        other => Err(Error::Schema {
            pointer: "/representation/builtin".into(),
            message: format!(
                "unknown builtin representation `{other}` (known: {})",
                BUILTIN_NAMES.join(", ")
            ),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupElement;

    #[test]
    fn every_builtin_resolves() {
        for name in BUILTIN_NAMES {
            let rep = by_name(name).unwrap();
            assert!(rep.homomorphism_residual() < 1e-9, "{name}");
        }
        assert!(by_name("nope").is_err());
    }

    #[test]
    fn qutrit_rotation_squares_to_shift() {
        let u = qutrit_rotation();
        let u2 = &u * &u;
        for j in 0..3 {
            let moved = u2.apply(&StateVector::basis(3, j));
            assert!(moved.max_abs_diff(&StateVector::basis(3, (j + 1) % 3)) < 1e-12);
        }
    }

    #[test]
    fn d3_reflection_swaps_x_states() {
        let rep = d3_qubit();
        let v = rep.matrix(GroupElement(3));
        assert!(v.apply(&plus_x()).max_abs_diff(&minus_x()) < 1e-12);
    }

    #[test]
    fn z6_qubit_cube_is_sigma_x() {
        let rep = z6_qubit();
        let sx = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert!(rep.matrix(GroupElement(3)).max_abs_diff(&sx) < 1e-12);
    }
}
