//! Dense complex matrices and the Hermitian eigensolver.
//!
//! Everything here operates on small matrices (dimension 64 at most, usually
//! 2 or 4), so a cyclic Jacobi iteration is plenty: it is simple, numerically
//! gentle, and converges quadratically once the off-diagonal mass is small.

use crate::{tol, Amplitude, Error, Result};
use num_complex::Complex64;

/// Square complex matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix { dim, data: vec![Complex64::ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Build from a row-major slice; length must be a perfect square times itself.
    pub fn from_rows(dim: usize, rows: &[Complex64]) -> Result<Self> {
        if rows.len() != dim * dim {
            return Err(Error::BadDimension { got: rows.len(), reason: "row data does not fill a square matrix" });
        }
        Ok(CMatrix { dim, data: rows.to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate, without transposition.
    pub fn conjugated(&self) -> CMatrix {
        CMatrix { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scaled(&self, factor: Complex64) -> CMatrix {
        CMatrix { dim: self.dim, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise absolute difference to another matrix.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from Hermitian symmetry.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            worst = worst.max(self[(i, i)].im.abs());
            for j in (i + 1)..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest deviation of `U U^dag` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        self.mul(&self.adjoint()).max_abs_diff(&CMatrix::identity(self.dim))
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in descending order and a unitary whose columns are
/// the matching eigenvectors, so that `M = V diag(values) V^dag` holds to
/// [`tol::EIGEN_RECONSTRUCTION`].
///
/// Cyclic Jacobi with complex rotations: each pivot (p, q) is annihilated by
/// the unitary that diagonalises the 2x2 Hermitian block, obtained from the
/// real rotation of the phase-stripped block. Dimension is capped at 64;
/// callers in this crate stay far below that.
pub fn hermitian_eigensystem(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = m.dim();
    if n == 0 || n > 64 {
        return Err(Error::BadDimension { got: n, reason: "eigensolver accepts dimensions 1..=64" });
    }
    let defect = m.hermiticity_defect();
    if defect > tol::HERMITICITY {
        return Err(Error::NotHermitian(defect));
    }

    let mut a = m.clone();
    // Work on the exactly Hermitian average to keep the iteration symmetric.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = CMatrix::identity(n);
    let scale = (0..n)
        .map(|i| a[(i, i)].norm())
        .fold(0.0, f64::max)
        .max(off_norm(&a))
        .max(1.0);

    const MAX_SWEEPS: usize = 100;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= 1e-14 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-18 * scale {
                    continue;
                }
                let phase = apq / r;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                // Smaller-magnitude root of t^2 - 2 tau t - 1 = 0, the zeroing
                // condition for the rotation convention below.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G is the identity outside rows/cols p and q, with
                //   G[p][p] = c*phase, G[p][q] = -s*phase, G[q][p] = s, G[q][q] = c.
                // Column update: A <- A G, V <- V G.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * (phase * c) + aiq * s;
                    a[(i, q)] = -aip * (phase * s) + aiq * c;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * (phase * c) + viq * s;
                    v[(i, q)] = -vip * (phase * s) + viq * c;
                }
                // Row update: A <- G^dag A.
                let phc = phase.conj();
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * (phc * c) + aqj * s;
                    a[(q, j)] = -apj * (phc * s) + aqj * c;
                }
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    if !converged && off_norm(&a) > 1e-12 * scale {
        return Err(Error::EigensolverStalled(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok((values, vectors))
}

fn off_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[PSD_FLOOR, 0)` are clamped to zero; anything below the
/// floor is rejected rather than silently absorbed. The result S is Hermitian
/// and satisfies `S S = M` to [`tol::SQRT_RESIDUAL`].
pub fn matrix_sqrt_psd(m: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = hermitian_eigensystem(m)?;
    if let Some(&worst) = values
        .iter()
        .filter(|&&l| l < tol::PSD_FLOOR)
        .min_by(|a, b| a.partial_cmp(b).unwrap())
    {
        return Err(Error::NotPositiveSemidefinite(worst));
    }
    let n = m.dim();
    let mut out = CMatrix::zeros(n);
    for k in 0..n {
        let root = values[k].max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = vectors[(i, k)] * root;
            for j in 0..n {
                out[(i, j)] += vik * vectors[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

/// Amplitude helper: the complex number `re + i*im`.
pub fn cplx(re: f64, im: f64) -> Amplitude {
    Complex64::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(values: &[f64], vectors: &CMatrix) -> CMatrix {
        let n = vectors.dim();
        let mut lambda = CMatrix::zeros(n);
        for i in 0..n {
            lambda[(i, i)] = Complex64::new(values[i], 0.0);
        }
        vectors.mul(&lambda).mul(&vectors.adjoint())
    }

    #[test]
    fn diagonal_matrix_is_its_own_spectrum() {
        let mut m = CMatrix::zeros(3);
        m[(0, 0)] = cplx(0.25, 0.0);
        m[(1, 1)] = cplx(0.5, 0.0);
        m[(2, 2)] = cplx(0.25, 0.0);
        let (values, vectors) = hermitian_eigensystem(&m).unwrap();
        assert_eq!(values, vec![0.5, 0.25, 0.25]);
        assert!(reconstruct(&values, &vectors).max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn pauli_y_spectrum() {
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = cplx(0.0, -1.0);
        m[(1, 0)] = cplx(0.0, 1.0);
        let (values, vectors) = hermitian_eigensystem(&m).unwrap();
        assert!((values[0] - 1.0).abs() < 1e-14);
        assert!((values[1] + 1.0).abs() < 1e-14);
        assert!(reconstruct(&values, &vectors).max_abs_diff(&m) < tol::EIGEN_RECONSTRUCTION);
        assert!(vectors.unitarity_defect() < 1e-12);
    }

    #[test]
    fn dense_hermitian_reconstructs() {
        // 4x4 Hermitian with irrational entries and nontrivial phases.
        let mut m = CMatrix::zeros(4);
        let entries = [
            (0, 0, 1.3, 0.0),
            (1, 1, -0.2, 0.0),
            (2, 2, 0.7, 0.0),
            (3, 3, 2.1, 0.0),
            (0, 1, 0.31, -0.7),
            (0, 2, -0.45, 0.12),
            (0, 3, 0.05, 0.9),
            (1, 2, 0.66, 0.33),
            (1, 3, -0.18, -0.25),
            (2, 3, 0.4, -0.1),
        ];
        for &(i, j, re, im) in &entries {
            m[(i, j)] = cplx(re, im);
            if i != j {
                m[(j, i)] = cplx(re, -im);
            }
        }
        let (values, vectors) = hermitian_eigensystem(&m).unwrap();
        assert!(reconstruct(&values, &vectors).max_abs_diff(&m) < tol::EIGEN_RECONSTRUCTION);
        assert!(vectors.unitarity_defect() < 1e-12);
        let trace: f64 = values.iter().sum();
        assert!((trace - (1.3 - 0.2 + 0.7 + 2.1)).abs() < 1e-12);
        assert!(values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = cplx(1.0, 0.0);
        assert!(matches!(hermitian_eigensystem(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn sqrt_of_projector_scales_amplitude() {
        // M = 0.5 * |+><+| has square root sqrt(0.5) * |+><+|.
        let mut m = CMatrix::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = cplx(0.25, 0.0);
            }
        }
        let s = matrix_sqrt_psd(&m).unwrap();
        assert!(s.mul(&s).max_abs_diff(&m) < tol::SQRT_RESIDUAL);
        let expect = 0.5f64.sqrt() * 0.5;
        assert!((s[(0, 1)].re - expect).abs() < 1e-12);
    }

    #[test]
    fn sqrt_clamps_rounding_negatives_only() {
        let mut tiny = CMatrix::zeros(2);
        tiny[(0, 0)] = cplx(-1e-12, 0.0);
        tiny[(1, 1)] = cplx(1.0, 0.0);
        let s = matrix_sqrt_psd(&tiny).unwrap();
        assert_eq!(s[(0, 0)], Complex64::ZERO);

        let mut bad = CMatrix::zeros(2);
        bad[(0, 0)] = cplx(-1e-3, 0.0);
        bad[(1, 1)] = cplx(1.0, 0.0);
        assert!(matches!(matrix_sqrt_psd(&bad), Err(Error::NotPositiveSemidefinite(_))));
    }
}
