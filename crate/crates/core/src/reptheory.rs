//! Unitary representations, closed-form character tables for `Zₙ`/`Dₙ`,
//! irrep multiplicities and isotypic projectors.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{conjugacy_classes, ConjugacyClasses, FiniteGroup, GroupElement, GroupFamily};
use crate::linalg::{c, cis, kron_all, ComplexMatrix, STRUCTURE_TOL};

/// A verified homomorphism `g ↦ Γ(g)` into unitary `dim × dim` matrices.
#[derive(Clone, Debug)]
pub struct Representation {
    group: FiniteGroup,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
}

impl Representation {
    /// Build every `Γ(rᵃ sᵇ) = Uᵃ Vᵇ` from the generator matrices `r` (and
    /// `s` for dihedral groups), after checking the presentation relations.
    pub fn from_generators(
        group: &FiniteGroup,
        generators: &BTreeMap<String, ComplexMatrix>,
    ) -> Result<Self> {
        let (n, dihedral) = match group.family() {
            GroupFamily::Cyclic(n) => (n, false),
            GroupFamily::Dihedral(n) => (n, true),
            GroupFamily::Table => {
                return Err(Error::UnsupportedFamily(
                    "generator presentation of a table group".into(),
                ))
            }
        };
        let expected: &[&str] = if dihedral { &["r", "s"] } else { &["r"] };
        for name in generators.keys() {
            if !expected.contains(&name.as_str()) {
                return Err(Error::UnknownGenerator(name.clone()));
            }
        }
        let get = |name: &str| {
            generators
                .get(name)
                .ok_or_else(|| Error::MissingGenerator(name.to_string()))
        };
        let u = get("r")?;
        let dim = u.rows();
        for (name, m) in generators {
            if !m.is_square() || m.rows() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator `{name}` is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_finite() || !m.is_unitary() {
                return Err(Error::NotUnitary {
                    generator: name.clone(),
                    residual: m.unitarity_residual(),
                });
            }
        }
        let id = ComplexMatrix::identity(dim);
        let check = |relation: &str, lhs: &ComplexMatrix, rhs: &ComplexMatrix| {
            let residual = lhs.max_abs_diff(rhs);
            if residual > STRUCTURE_TOL {
                Err(Error::RelationViolated {
                    relation: relation.to_string(),
                    residual,
                })
            } else {
                Ok(())
            }
        };
        let powers: Vec<ComplexMatrix> = (0..n).map(|k| u.pow(k)).collect();
        check(&format!("r^{n} = e"), &u.pow(n), &id)?;
        let matrices = if dihedral {
            let v = get("s")?;
            check("s^2 = e", &(v * v), &id)?;
            check("s*r*s = r^-1", &(&(v * u) * v), &u.adjoint())?;
            powers
                .iter()
                .cloned()
                .chain(powers.iter().map(|p| p * v))
                .collect()
        } else {
            powers
        };
        let rep = Self {
            group: group.clone(),
            dim,
            matrices,
        };
        rep.verify()?;
        Ok(rep)
    }

    /// A representation given one matrix per element (in index order).
    pub fn from_element_matrices(group: &FiniteGroup, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].rows();
        for (g, m) in matrices.iter().enumerate() {
            if !m.is_square() || m.rows() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "matrix of `{}` has wrong shape",
                    group.names()[g]
                )));
            }
            if !m.is_unitary() {
                return Err(Error::NotUnitary {
                    generator: group.names()[g].clone(),
                    residual: m.unitarity_residual(),
                });
            }
        }
        let rep = Self {
            group: group.clone(),
            dim,
            matrices,
        };
        rep.verify()?;
        Ok(rep)
    }

    fn verify(&self) -> Result<()> {
        let id_residual = self.matrices[0].max_abs_diff(&ComplexMatrix::identity(self.dim));
        if id_residual > STRUCTURE_TOL {
            return Err(Error::RelationViolated {
                relation: "Γ(e) = I".into(),
                residual: id_residual,
            });
        }
        let residual = self.homomorphism_residual();
        if residual > STRUCTURE_TOL {
            return Err(Error::RelationViolated {
                relation: "Γ(g)Γ(h) = Γ(gh)".into(),
                residual,
            });
        }
        Ok(())
    }

    /// `max_{g,h} ‖Γ(g)Γ(h) − Γ(gh)‖_∞`.
    pub fn homomorphism_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for g in self.group.elements() {
            for h in self.group.elements() {
                let lhs = &self.matrices[g.0] * &self.matrices[h.0];
                worst = worst.max(lhs.max_abs_diff(self.matrix(self.group.mul(g, h))));
            }
        }
        worst
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: GroupElement) -> &ComplexMatrix {
        &self.matrices[g.0]
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn character(&self, g: GroupElement) -> Complex64 {
        self.matrices[g.0].trace()
    }
}

/// `g ↦ Γ(g)^{⊗parties}`.
pub fn tensor_rep(rep: &Representation, parties: usize) -> Result<Representation> {
    if parties == 0 {
        return Err(Error::DimensionMismatch("tensor power needs parties >= 1".into()));
    }
    let matrices = rep
        .matrices
        .iter()
        .map(|m| kron_all(std::iter::repeat_n(m, parties)).expect("parties >= 1"))
        .collect();
    let out = Representation {
        group: rep.group.clone(),
        dim: rep.dim.pow(parties as u32),
        matrices,
    };
    out.verify()?;
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    classes: ConjugacyClasses,
    labels: Vec<String>,
    dims: Vec<usize>,
    /// irreps × classes
    table: Vec<Vec<Complex64>>,
}

impl CharacterTable {
    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn irrep_count(&self) -> usize {
        self.dims.len()
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.table
    }

    pub fn chi(&self, irrep: usize, g: GroupElement) -> Complex64 {
        self.table[irrep][self.classes.class_of(g)]
    }

    /// Entries rounded to integers, when every entry is (near-)integral.
    pub fn integer_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|z| {
                        let r = z.re.round();
                        ((z.re - r).abs() < 1e-9 && z.im.abs() < 1e-9).then_some(r as i64)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Closed-form character table of a cyclic or dihedral group.
///
/// `Zₙ`: `χⱼ(rᵏ) = e^{2πijk/n}`, `j = 0..n`.
/// `Dₙ`: trivial, sign (`s ↦ −1`), for even `n` the two characters with
/// `r ↦ −1`, then the 2-dim irreps `h = 1..⌈n/2⌉−1` with
/// `χ_h(rᵏ) = 2cos(2πhk/n)` and zero on reflections.
pub fn character_table_for_family(group: &FiniteGroup) -> Result<CharacterTable> {
    let classes = conjugacy_classes(group);
    let reps = classes.representatives();
    let mut labels = Vec::new();
    let mut dims = Vec::new();
    let mut table = Vec::new();
    let mut push = |dim: usize, row: Vec<Complex64>| {
        labels.push(format!("Γ{}", labels.len() + 1));
        dims.push(dim);
        table.push(row);
    };
    match group.family() {
        GroupFamily::Cyclic(n) => {
            for j in 0..n {
                let row = reps
                    .iter()
                    .map(|g| cis(2.0 * PI * (j * g.0) as f64 / n as f64))
                    .collect();
                push(1, row);
            }
        }
        GroupFamily::Dihedral(n) => {
            let word = |g: &GroupElement| group.word(*g).expect("dihedral word");
            let one_dim = |rot_sign: f64, refl_sign: f64| -> Vec<Complex64> {
                reps.iter()
                    .map(|g| {
                        let (a, b) = word(g);
                        c(rot_sign.powi(a as i32) * refl_sign.powi(b as i32), 0.0)
                    })
                    .collect()
            };
            push(1, one_dim(1.0, 1.0));
            push(1, one_dim(1.0, -1.0));
            if n % 2 == 0 {
                push(1, one_dim(-1.0, 1.0));
                push(1, one_dim(-1.0, -1.0));
            }
            for h in 1..n.div_ceil(2) {
                let row = reps
                    .iter()
                    .map(|g| match word(g) {
                        (a, 0) => c(2.0 * (2.0 * PI * (h * a) as f64 / n as f64).cos(), 0.0),
                        _ => c(0.0, 0.0),
                    })
                    .collect();
                push(2, row);
            }
        }
        GroupFamily::Table => {
            return Err(Error::UnsupportedFamily(group.family().to_string()));
        }
    }
    Ok(CharacterTable {
        classes,
        labels,
        dims,
        table,
    })
}

/// `n_p = (1/|G|) Σ_g χ(g) χ⁽ᵖ⁾(g)*`, each checked to be a nonnegative integer.
pub fn irrep_multiplicities(rep: &Representation, table: &CharacterTable) -> Result<Vec<usize>> {
    let order = rep.group().order() as f64;
    (0..table.irrep_count())
        .map(|p| {
            let sum: Complex64 = rep
                .group()
                .elements()
                .map(|g| rep.character(g) * table.chi(p, g).conj())
                .sum();
            let n = sum / order;
            let rounded = n.re.round();
            if (n.re - rounded).abs() > STRUCTURE_TOL || n.im.abs() > STRUCTURE_TOL || rounded < 0.0
            {
                return Err(Error::NonIntegerMultiplicity {
                    irrep: p,
                    value: format!("{:.12}{:+.12}i", n.re, n.im),
                });
            }
            Ok(rounded as usize)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct IsotypicComponent {
    pub irrep: usize,
    pub label: String,
    pub irrep_dim: usize,
    pub multiplicity: usize,
    pub projector: ComplexMatrix,
}

#[derive(Clone, Debug)]
pub struct IsotypicDecomposition {
    pub multiplicities: Vec<usize>,
    /// One component per irrep with nonzero multiplicity, in table order.
    pub components: Vec<IsotypicComponent>,
}

/// `P⁽ᵖ⁾ = (d_p/|G|) Σ_g χ⁽ᵖ⁾(g)* Γ(g)` for every irrep present in `rep`.
pub fn isotypic_projectors(
    rep: &Representation,
    table: &CharacterTable,
) -> Result<IsotypicDecomposition> {
    let multiplicities = irrep_multiplicities(rep, table)?;
    let order = rep.group().order() as f64;
    let components = multiplicities
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(p, &m)| {
            let mut proj = ComplexMatrix::zeros(rep.dim(), rep.dim());
            for g in rep.group().elements() {
                proj = &proj + &rep.matrix(g).scale(table.chi(p, g).conj());
            }
            IsotypicComponent {
                irrep: p,
                label: table.labels()[p].clone(),
                irrep_dim: table.dims()[p],
                multiplicity: m,
                projector: proj.scale_real(table.dims()[p] as f64 / order),
            }
        })
        .collect();
    Ok(IsotypicDecomposition {
        multiplicities,
        components,
    })
}
