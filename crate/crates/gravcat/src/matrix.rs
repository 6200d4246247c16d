//! Small dense complex-matrix backbone for dimensions 2 to 4.
//!
//! Everything downstream of the closed forms (Gibbs construction, Kraus
//! application, the quantifier oracles) runs through this module, so it is
//! deliberately self-contained: Hermitian eigendecomposition by cyclic
//! complex Jacobi rotations, the matrix exponential built on top of it,
//! partial trace over the second qubit, and 2x2 Kronecker products.

use num_complex::Complex64;

use crate::error::{GravcatError, Result};

/// Asymmetry above which an input is rejected instead of symmetrized.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Jacobi convergence threshold on the off-diagonal norm.
const JACOBI_TOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 64;

/// Dense complex matrix in row-major order, dimension 2, 3, or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        if !(2..=4).contains(&dim) {
            return Err(GravcatError::BadDimension(dim));
        }
        Ok(Self { dim, entries: vec![Complex64::ZERO; dim * dim] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        Ok(m)
    }

    pub fn from_rows(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if !(2..=4).contains(&dim) {
            return Err(GravcatError::BadDimension(dim));
        }
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        Ok(Self { dim, entries })
    }

    /// Build from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_rows(dim, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self { dim: self.dim, entries: vec![Complex64::ZERO; self.dim * self.dim] };
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self { dim: n, entries: vec![Complex64::ZERO; n * n] };
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

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { dim: self.dim, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { dim: self.dim, entries }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|a| a * s).collect() }
    }

    /// Largest entrywise absolute difference to another matrix.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from Hermiticity.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.asymmetry() <= HERMITIAN_TOL
    }

    /// (M + M^dag)/2, used to absorb round-off before decompositions.
    pub fn symmetrized(&self) -> Self {
        self.add(&self.adjoint()).scale(Complex64::new(0.5, 0.0))
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted descending; `vectors` holds the matching
/// orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Spectrum {
    /// Reassemble V diag(g(lambda)) V^dag for a scalar function g.
    pub fn apply(&self, g: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut out = ComplexMatrix::zeros(n).expect("dim already validated");
        for k in 0..n {
            let gk = g(self.values[k]);
            if gk == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors[(i, k)];
                for j in 0..n {
                    out[(i, j)] += gk * vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|x| x)
    }
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Inputs with asymmetry above [`HERMITIAN_TOL`] are rejected; smaller
/// asymmetry is symmetrized away before iterating.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Spectrum> {
    let asym = m.asymmetry();
    if asym > HERMITIAN_TOL {
        return Err(GravcatError::NonHermitian { max_asymmetry: asym });
    }
    let n = m.dim();
    let mut a = m.symmetrized();
    let mut v = ComplexMatrix::identity(n)?;

    // Convergence is judged relative to the matrix scale so that inputs with
    // large entries (e.g. -H/T at low temperature) terminate.
    let scale = {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += a[(i, j)].norm_sqr();
            }
        }
        s.sqrt().max(1.0)
    };
    let threshold = JACOBI_TOL * scale;

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > threshold {
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(GravcatError::NoConvergence {
                sweeps: MAX_SWEEPS,
                residual: off_diagonal_norm(&a),
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= threshold * 1e-2 {
                    continue;
                }
                // Phase that makes the pivot real, then a real rotation.
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column p of the rotation is (c, -s/phase'), column q is (s*phase, c)
                // acting as A <- G^dag A G with G = P R, P = diag(1, conj(phase)).
                let gpp = Complex64::new(c, 0.0);
                let gpq = phase * s;
                let gqp = -Complex64::new(s, 0.0) * phase.conj();
                let gqq = Complex64::new(c, 0.0);
                // A <- G^dag A G: update columns, then rows.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * gpp + aiq * gqp;
                    a[(i, q)] = aip * gpq + aiq * gqq;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = gpp.conj() * apj + gqp.conj() * aqj;
                    a[(q, j)] = gpq.conj() * apj + gqq.conj() * aqj;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * gpp + viq * gqp;
                    v[(i, q)] = vip * gpq + viq * gqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));

    let values = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n)?;
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new_col)] = v[(i, old_col)];
        }
    }
    Ok(Spectrum { values, vectors })
}

/// exp(M) for Hermitian M, via the eigendecomposition.
pub fn matrix_exp_hermitian(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = hermitian_eig(m)?;
    Ok(spec.apply(f64::exp).symmetrized())
}

/// Trace out the second qubit of a two-qubit operator.
pub fn partial_trace_b(rho: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(rho.dim(), 4, "partial trace defined for two qubits");
    let mut out = ComplexMatrix::zeros(2).expect("dim 2 valid");
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = rho[(2 * i, 2 * j)] + rho[(2 * i + 1, 2 * j + 1)];
        }
    }
    out
}

/// Kronecker product of two single-qubit operators, left factor on qubit A.
pub fn kron2(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(a.dim(), 2);
    assert_eq!(b.dim(), 2);
    let mut out = ComplexMatrix::zeros(4).expect("dim 4 valid");
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// sigma_0 .. sigma_3 = I, sigma_x, sigma_y, sigma_z.
pub fn pauli(index: usize) -> ComplexMatrix {
    let i = Complex64::I;
    let o = Complex64::ZERO;
    let one = Complex64::ONE;
    let entries = match index {
        0 => vec![one, o, o, one],
        1 => vec![o, one, one, o],
        2 => vec![o, -i, i, o],
        3 => vec![one, o, o, -one],
        _ => panic!("Pauli index must be 0..=3"),
    };
    ComplexMatrix::from_rows(2, entries).expect("dim 2 valid")
}
