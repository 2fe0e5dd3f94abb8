//! Dense complex linear algebra for the small dimensions this crate works in
//! (local dimension ≤ 3, at most a few parties, so matrices stay ≤ 32×32 in
//! practice).
//!
//! Everything here is a pure function on immutable values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for unitarity, hermiticity and orthonormality checks.
pub const STRUCTURE_TOL: f64 = 1e-9;
/// Tolerance for eigen-residuals `‖Mv − λv‖`.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Eigenvalues at or below this are treated as zero by the span reduction.
pub const RANK_CUTOFF: f64 = 1e-10;

const TIE_TOL: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{iθ}`.
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// A column vector in ℂᵈ.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    entries: Vec<Complex64>,
}

impl StateVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        assert!(!entries.is_empty(), "state vector must have positive dimension");
        Self { entries }
    }

    pub fn from_real(entries: &[f64]) -> Self {
        Self::new(entries.iter().map(|&x| c(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Complex64::default(); dim])
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = c(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= STRUCTURE_TOL
    }

    pub fn scale(&self, factor: Complex64) -> StateVector {
        StateVector::new(self.entries.iter().map(|z| z * factor).collect())
    }

    pub fn normalized(&self) -> StateVector {
        self.scale(c(1.0 / self.norm(), 0.0))
    }

    pub fn kron(&self, other: &StateVector) -> StateVector {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                out.push(a * b);
            }
        }
        StateVector::new(out)
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &StateVector) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim(), other.dim());
        for (i, a) in self.entries.iter().enumerate() {
            for (j, b) in other.entries.iter().enumerate() {
                m[(i, j)] = a * b.conj();
            }
        }
        m
    }

    pub fn projector(&self) -> ComplexMatrix {
        self.outer(self)
    }

    /// Multiply by a global phase so that the largest-magnitude entry (first
    /// one on ties) is real and positive.
    pub fn canonical_phase(&self) -> StateVector {
        let mut best = 0;
        let mut best_mag = -1.0;
        for (i, z) in self.entries.iter().enumerate() {
            let mag = z.norm();
            if mag > best_mag + TIE_TOL {
                best = i;
                best_mag = mag;
            }
        }
        if best_mag <= 0.0 {
            return self.clone();
        }
        let phase = self.entries[best].conj() / best_mag;
        let mut out = self.scale(phase);
        out.entries[best] = c(out.entries[best].re, 0.0);
        out
    }

    /// `|⟨self|other⟩|` for unit vectors: 1 means equal up to phase.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn lex_cmp(&self, other: &StateVector) -> Ordering {
        for (a, b) in self.entries.iter().zip(&other.entries) {
            let ord = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

impl Add for &StateVector {
    type Output = StateVector;

    fn add(self, rhs: &StateVector) -> StateVector {
        StateVector::new(
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Index<usize> for StateVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.entries[i]
    }
}

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::default(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "ragged or empty matrix rows ({nrows} rows)"
            )));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[StateVector]) -> Result<Self> {
        let rows = columns.first().map_or(0, StateVector::dim);
        if columns.is_empty() || columns.iter().any(|v| v.dim() != rows) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, v) in columns.iter().enumerate() {
            for i in 0..rows {
                m[(i, j)] = v[i];
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> StateVector {
        StateVector::new((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> ComplexMatrix {
        self.scale(c(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.cols, v.dim(), "matrix/vector dimension mismatch");
        StateVector::new(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(v.entries()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// `self^exponent` by repeated squaring.
    pub fn pow(&self, mut exponent: usize) -> ComplexMatrix {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = &result * &base;
            }
            exponent >>= 1;
            if exponent > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_residual() <= STRUCTURE_TOL * self.max_abs().max(1.0)
    }

    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.rows))
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_residual() <= STRUCTURE_TOL
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `Q† self Q` where the columns of `Q` are `basis`.
    pub fn compress(&self, basis: &[StateVector]) -> ComplexMatrix {
        let mut m = Self::zeros(basis.len(), basis.len());
        let images: Vec<StateVector> = basis.iter().map(|b| self.apply(b)).collect();
        for (i, bi) in basis.iter().enumerate() {
            for (j, img) in images.iter().enumerate() {
                m[(i, j)] = bi.inner(img);
            }
        }
        m
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut m = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::default() {
                    continue;
                }
                for j in 0..rhs.cols {
                    m.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        m
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Tensor product of a sequence of matrices, associated left to right.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> Option<ComplexMatrix> {
    factors
        .into_iter()
        .fold(None, |acc: Option<ComplexMatrix>, m| {
            Some(match acc {
                None => m.clone(),
                Some(a) => a.kron(m),
            })
        })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: StateVector,
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// Pairs come back sorted by eigenvalue, largest first. Each eigenvector has
/// its largest entry real and positive; eigenvalues equal within 1e-12 are
/// ordered by their (phase-fixed) eigenvectors, lexicographically descending,
/// so the output is a deterministic function of the input.
pub fn hermitian_eigendecompose(m: &ComplexMatrix) -> Result<Vec<EigenPair>> {
    if !m.is_square() {
        return Err(Error::NotHermitian {
            residual: f64::INFINITY,
        });
    }
    if !m.is_hermitian() {
        return Err(Error::NotHermitian {
            residual: m.hermiticity_residual(),
        });
    }
    let n = m.rows();
    // Symmetrize exactly so the sweeps see a Hermitian matrix bit-for-bit.
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)] = c(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r; // e^{iφ}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / t.hypot(1.0);
                let sn = t * cs;
                // Rotation W acting on coordinates (p, q).
                let w_pp = c(cs, 0.0);
                let w_pq = c(sn, 0.0);
                let w_qp = -phase.conj() * sn;
                let w_qq = phase.conj() * cs;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * w_pp + akq * w_qp;
                    a[(k, q)] = akp * w_pq + akq * w_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = w_pp.conj() * apk + w_qp.conj() * aqk;
                    a[(q, k)] = w_pq.conj() * apk + w_qq.conj() * aqk;
                }
                a[(p, q)] = Complex64::default();
                a[(q, p)] = Complex64::default();
                a[(p, p)] = c(a[(p, p)].re, 0.0);
                a[(q, q)] = c(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * w_pp + vkq * w_qp;
                    v[(k, q)] = vkp * w_pq + vkq * w_qq;
                }
            }
        }
    }

    let pairs = (0..n)
        .map(|i| EigenPair {
            value: a[(i, i)].re,
            vector: v.column(i).canonical_phase(),
        })
        .collect();
    Ok(sort_pairs(pairs))
}

fn sort_pairs(mut pairs: Vec<EigenPair>) -> Vec<EigenPair> {
    pairs.sort_by(|x, y| y.value.total_cmp(&x.value));
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len()
            && (pairs[end - 1].value - pairs[end].value).abs()
                <= TIE_TOL * pairs[start].value.abs().max(1.0)
        {
            end += 1;
        }
        pairs[start..end].sort_by(|x, y| y.vector.lex_cmp(&x.vector));
        start = end;
    }
    pairs
}

/// Nonzero eigenpairs of `Σⱼ |μⱼ⟩⟨μⱼ|` obtained from the Gram matrix
/// `G_kj = ⟨μ_k|μ_j⟩` of the spanning vectors.
///
/// An eigenvector `c` of `G` lifts to `Σⱼ cⱼ|μⱼ⟩`, whose squared norm is the
/// eigenvalue; eigenvalues at or below [`RANK_CUTOFF`] are dropped.
pub fn span_reduced_eigensolve(vectors: &[StateVector]) -> Result<Vec<EigenPair>> {
    let Some(first) = vectors.first() else {
        return Err(Error::DimensionMismatch("no spanning vectors".into()));
    };
    let dim = first.dim();
    if let Some(bad) = vectors.iter().find(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "spanning vectors of dimension {dim} and {}",
            bad.dim()
        )));
    }
    let k = vectors.len();
    let mut gram = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = vectors[i].inner(&vectors[j]);
        }
    }
    let pairs = hermitian_eigendecompose(&gram)?
        .into_iter()
        .filter(|p| p.value > RANK_CUTOFF)
        .map(|p| {
            let mut lifted = StateVector::zeros(dim);
            for (coef, mu) in p.vector.entries().iter().zip(vectors) {
                lifted = &lifted + &mu.scale(*coef);
            }
            EigenPair {
                value: p.value,
                vector: lifted.normalized().canonical_phase(),
            }
        })
        .collect();
    Ok(sort_pairs(pairs))
}

/// `Σᵢ |vᵢ⟩⟨vᵢ|`.
pub fn projector_onto(vectors: &[StateVector]) -> Option<ComplexMatrix> {
    let dim = vectors.first()?.dim();
    let mut p = ComplexMatrix::zeros(dim, dim);
    for v in vectors {
        p = &p + &v.projector();
    }
    Some(p)
}

/// Eigenvectors whose eigenvalue lies within `tol` of the largest one.
pub fn top_eigenspace(pairs: &[EigenPair], tol: f64) -> Vec<StateVector> {
    let Some(top) = pairs.first() else {
        return Vec::new();
    };
    pairs
        .iter()
        .take_while(|p| (top.value - p.value).abs() <= tol)
        .map(|p| p.vector.clone())
        .collect()
}

/// Orthonormal basis of the range of a Hermitian projector.
pub fn projector_range(p: &ComplexMatrix) -> Result<Vec<StateVector>> {
    Ok(hermitian_eigendecompose(p)?
        .into_iter()
        .filter(|pair| pair.value > 0.5)
        .map(|pair| pair.vector)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn residual(m: &ComplexMatrix, pair: &EigenPair) -> f64 {
        let mv = m.apply(&pair.vector);
        mv.max_abs_diff(&pair.vector.scale(c(pair.value, 0.0)))
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_sigma_x_identity_has_block_structure() {
        let m = sigma_x().kron(&ComplexMatrix::identity(2));
        let expected = ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn diagonal_eigendecomposition_sorts_descending() {
        let m = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let pairs = hermitian_eigendecompose(&m).unwrap();
        let values: Vec<f64> = pairs.iter().map(|p| p.value).collect();
        assert_eq!(values, vec![3.0, 2.0, 1.0]);
        assert_eq!(pairs[0].vector, StateVector::basis(3, 0));
        assert_eq!(pairs[1].vector, StateVector::basis(3, 2));
        assert_eq!(pairs[2].vector, StateVector::basis(3, 1));
    }

    #[test]
    fn sigma_x_eigenvalues() {
        let pairs = hermitian_eigendecompose(&sigma_x()).unwrap();
        assert!((pairs[0].value - 1.0).abs() < 1e-12);
        assert!((pairs[1].value + 1.0).abs() < 1e-12);
        for p in &pairs {
            assert!(residual(&sigma_x(), p) < RESIDUAL_TOL);
        }
    }

    #[test]
    fn complex_hermitian_residuals_and_orthonormality() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(0.3, 1.1), c(-0.5, 0.2)],
            vec![c(0.3, -1.1), c(-1.0, 0.0), c(0.0, 0.7)],
            vec![c(-0.5, -0.2), c(0.0, -0.7), c(0.5, 0.0)],
        ])
        .unwrap();
        let pairs = hermitian_eigendecompose(&m).unwrap();
        for (i, p) in pairs.iter().enumerate() {
            assert!(residual(&m, p) < RESIDUAL_TOL);
            for (j, q) in pairs.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((p.vector.inner(&q.vector) - c(expected, 0.0)).norm() < STRUCTURE_TOL);
            }
        }
    }

    #[test]
    fn gram_matrix_of_three_party_projected_seeds_tops_at_ten_27ths() {
        let rows: [[f64; 4]; 4] = [
            [7.0, 2.0, -1.0, -1.0],
            [2.0, 7.0, -1.0, -1.0],
            [-1.0, -1.0, 7.0, -1.0],
            [-1.0, -1.0, -1.0, 7.0],
        ];
        let m = ComplexMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| c(x / 27.0, 0.0)).collect())
                .collect(),
        )
        .unwrap();
        let pairs = hermitian_eigendecompose(&m).unwrap();
        assert!((pairs[0].value - 10.0 / 27.0).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            hermitian_eigendecompose(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn repeated_runs_are_bitwise_identical() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)],
            vec![c(0.0, -1.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(
            hermitian_eigendecompose(&m).unwrap(),
            hermitian_eigendecompose(&m).unwrap()
        );
    }

    #[test]
    fn span_reduction_rank_one() {
        let mu = StateVector::new(vec![c(0.5, 0.0), c(0.0, 0.5)]);
        assert!((mu.norm_sqr() - 0.5).abs() < 1e-15);
        let pairs = span_reduced_eigensolve(std::slice::from_ref(&mu)).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!((pairs[0].value - 0.5).abs() < 1e-12);
        assert!(pairs[0].vector.overlap(&mu.normalized()) > 1.0 - 1e-12);
    }

    #[test]
    fn span_reduction_orthonormal_pair() {
        let vs = [StateVector::basis(3, 0), StateVector::basis(3, 2)];
        let values: Vec<f64> = span_reduced_eigensolve(&vs)
            .unwrap()
            .iter()
            .map(|p| p.value)
            .collect();
        assert_eq!(values.len(), 2);
        assert!(values.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn span_reduction_rejects_mixed_dimensions() {
        let vs = [StateVector::basis(2, 0), StateVector::basis(3, 0)];
        assert!(matches!(
            span_reduced_eigensolve(&vs),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(span_reduced_eigensolve(&[]).is_err());
    }

    #[test]
    fn canonical_phase_makes_largest_entry_positive() {
        let v = StateVector::new(vec![c(0.1, 0.0), c(0.0, -0.9)]).canonical_phase();
        assert!(v[1].im.abs() < 1e-15 && v[1].re > 0.0);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let u = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 1.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), cis(0.3)],
        ])
        .unwrap();
        let mut acc = ComplexMatrix::identity(2);
        for _ in 0..5 {
            acc = &acc * &u;
        }
        assert!(u.pow(5).max_abs_diff(&acc) < 1e-14);
    }
}
