//! Quantumness measures for the two-qubit state.
//!
//! Three quantities, each with a fast closed form on the X-state and a
//! general path on an arbitrary 4x4 density matrix:
//! * l1-norm coherence: sum of |off-diagonals|, closed form 2(|eta c| + |eta d|);
//! * local quantum Fisher information: 1 - lambda_max of the 3x3 matrix built
//!   from the eigendecomposition, closed form min{F0, F1};
//! * maximal Bell-CHSH value: 2 sqrt(sum of two largest eigenvalues of X^T X)
//!   for the spin correlation matrix X, closed form 2 sqrt(max{M1, M2}).
//!
//! The general paths double as oracles for the closed forms in the test and
//! verification suites.

use crate::error::Result;
use crate::matrix::{hermitian_eig, kron2, pauli, ComplexMatrix};
use crate::state::GravcatXState;

/// Quantum maximum of the CHSH value.
pub const BELL_CEILING: f64 = 2.0 * std::f64::consts::SQRT_2;

/// One evaluated grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantifierRecord {
    pub t: f64,
    pub f: f64,
    pub eta: f64,
    pub coherence: f64,
    pub lqfi: f64,
    pub bell_max: f64,
}

/// Sum of |rho_ij| over i != j in the computational basis.
pub fn coherence_l1_general(rho: &ComplexMatrix) -> f64 {
    let n = rho.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += rho[(i, j)].norm();
            }
        }
    }
    sum
}

/// Closed form on the X-state: 2(|eta c| + |eta d|).
pub fn coherence_l1_closed(s: &GravcatXState) -> f64 {
    2.0 * ((s.eta * s.c).abs() + (s.eta * s.d).abs())
}

/// Terms with q_i + q_j below this are dropped from the LQFI sum, matching
/// the q_i + q_j != 0 restriction.
const EIG_PAIR_TOL: f64 = 1e-12;

/// The symmetric 3x3 matrix whose largest eigenvalue determines the LQFI:
/// M_vu = sum_{ij} 2 q_i q_j / (q_i + q_j) <i| s_v x I |j> <j| s_u x I |i>.
pub fn lqfi_m_matrix(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = hermitian_eig(rho)?;
    let q: Vec<f64> = spec.values.iter().map(|&v| v.max(0.0)).collect();
    let i2 = ComplexMatrix::identity(2)?;
    // matrix elements of s_v x I in the eigenbasis
    let mut elems = Vec::with_capacity(3);
    for v in 1..=3 {
        let op = kron2(&pauli(v), &i2);
        elems.push(spec.vectors.adjoint().mul(&op).mul(&spec.vectors));
    }
    let mut m = ComplexMatrix::zeros(3)?;
    for i in 0..4 {
        for j in 0..4 {
            let denom = q[i] + q[j];
            if denom < EIG_PAIR_TOL {
                continue;
            }
            let w = 2.0 * q[i] * q[j] / denom;
            if w == 0.0 {
                continue;
            }
            for v in 0..3 {
                for u in 0..3 {
                    m[(v, u)] += w * elems[v][(i, j)] * elems[u][(j, i)];
                }
            }
        }
    }
    Ok(m)
}

/// LQFI from the full M-matrix path: 1 - lambda_max(M).
pub fn lqfi_general(rho: &ComplexMatrix) -> Result<f64> {
    let m = lqfi_m_matrix(rho)?;
    let spec = hermitian_eig(&m)?;
    Ok((1.0 - spec.values[0]).clamp(0.0, 1.0))
}

/// Denominator size below which the closed form falls back to the general path.
const DEGENERACY_TOL: f64 = 1e-12;

/// Closed-form LQFI for the X-state: min{F0, F1} with
/// F0 = 1 - M_zz, M_zz = 1 - 4(|eta c|^2/(a- + a+) + |eta d|^2/(2b)), and
/// F1 = 1 - m1 m2 / m3 built from the block eigenvalues. Degenerate m3 falls
/// back to the M-matrix path.
pub fn lqfi_closed(s: &GravcatXState) -> Result<f64> {
    let ec = (s.eta * s.c).abs();
    let ed = (s.eta * s.d).abs();
    let a_sum = s.a_minus + s.a_plus;

    let mut m_zz = 1.0;
    if a_sum > DEGENERACY_TOL {
        m_zz -= 4.0 * ec * ec / a_sum;
    }
    if s.b > DEGENERACY_TOL {
        m_zz -= 4.0 * ed * ed / (2.0 * s.b);
    }
    let f0 = 1.0 - m_zz;

    // (q1, q2): outer block descending; (q3, q4): inner block b +/- eta d.
    let [q1, q2, q3, q4] = s.eigenvalues();
    let m3 = {
        let d12 = (q1 - q2) * (q1 - q2);
        let d34 = (q3 - q4) * (q3 - q4);
        let head = 1.0 - d12 - d34;
        head * head - 4.0 * d12 * d34
    };
    if m3.abs() < DEGENERACY_TOL {
        return lqfi_general(&s.to_matrix());
    }
    let m1 = 64.0 * (s.a_plus * s.b + s.a_minus * s.b + q1 * q2 + q3 * q4 + 2.0 * ec * ed);
    let m2 = a_sum * q3 * q4 + 2.0 * s.b * q1 * q2;
    let f1 = 1.0 - m1 * m2 / m3;

    Ok(f0.min(f1).clamp(0.0, 1.0))
}

/// Spin correlation matrix x_vu = tr(rho s_v x s_u), v,u in {x, y, z}.
pub fn correlation_matrix(rho: &ComplexMatrix) -> [[f64; 3]; 3] {
    let mut x = [[0.0; 3]; 3];
    for v in 0..3 {
        for u in 0..3 {
            let op = kron2(&pauli(v + 1), &pauli(u + 1));
            x[v][u] = op.mul(rho).trace().re;
        }
    }
    x
}

/// 2 sqrt(sum of the two largest eigenvalues of X^T X).
pub fn bell_max_general(rho: &ComplexMatrix) -> Result<f64> {
    let x = correlation_matrix(rho);
    let mut xtx = ComplexMatrix::zeros(3)?;
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0.0;
            for k in 0..3 {
                s += x[k][i] * x[k][j];
            }
            xtx[(i, j)] = s.into();
        }
    }
    let spec = hermitian_eig(&xtx)?;
    let m = (spec.values[0] + spec.values[1]).max(0.0);
    Ok(2.0 * m.sqrt())
}

/// Closed form on the X-state: 2 sqrt(max{M1, M2}) with
/// M1 = 8(|eta c|^2 + |eta d|^2) and
/// M2 = 4(|eta c| + |eta d|)^2 + (a+ + a- - 2b)^2.
pub fn bell_max_closed(s: &GravcatXState) -> f64 {
    let ec = (s.eta * s.c).abs();
    let ed = (s.eta * s.d).abs();
    let m1 = 8.0 * (ec * ec + ed * ed);
    let tzz = s.a_plus + s.a_minus - 2.0 * s.b;
    let m2 = 4.0 * (ec + ed) * (ec + ed) + tzz * tzz;
    2.0 * m1.max(m2).sqrt()
}

/// True iff the classical CHSH bound of 2 is exceeded.
pub fn violation_flag(bell_max: f64) -> bool {
    bell_max > 2.0 + 1e-12
}

/// All three quantifiers on an X-state via the closed forms.
pub fn evaluate_closed(s: &GravcatXState, t: f64, f: f64) -> Result<QuantifierRecord> {
    Ok(QuantifierRecord {
        t,
        f,
        eta: s.eta,
        coherence: coherence_l1_closed(s),
        lqfi: lqfi_closed(s)?,
        bell_max: bell_max_closed(s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::decoherence_factor;
    use crate::state::{gibbs_closed_form, PhysicalParams};
    use num_complex::Complex64;

    fn maximally_mixed() -> ComplexMatrix {
        ComplexMatrix::identity(4).unwrap().scale(Complex64::new(0.25, 0.0))
    }

    fn bell_phi_plus() -> ComplexMatrix {
        ComplexMatrix::from_real(
            4,
            &[
                0.5, 0.0, 0.0, 0.5, //
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0, //
                0.5, 0.0, 0.0, 0.5,
            ],
        )
        .unwrap()
    }

    #[test]
    fn coherence_reference_states() {
        assert!(coherence_l1_general(&maximally_mixed()).abs() <= 1e-15);
        assert!((coherence_l1_general(&bell_phi_plus()) - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn coherence_closed_matches_general() {
        let s = gibbs_closed_form(&PhysicalParams::new(0.5, 1.0, 0.01).unwrap()).unwrap();
        for &eta in &[0.0, 0.3, 0.872, 1.0] {
            let scaled = s.with_eta(eta);
            let closed = coherence_l1_closed(&scaled);
            let general = coherence_l1_general(&scaled.to_matrix());
            assert!((closed - general).abs() <= 1e-14);
        }
        assert!(coherence_l1_closed(&s.with_eta(0.0)).abs() <= 1e-15);
    }

    #[test]
    fn coherence_zero_without_coupling() {
        let s = gibbs_closed_form(&PhysicalParams::new(0.7, 0.0, 0.2).unwrap()).unwrap();
        assert!(coherence_l1_closed(&s).abs() <= 1e-15);
    }

    #[test]
    fn lqfi_reference_states() {
        assert!(lqfi_general(&maximally_mixed()).unwrap().abs() <= 1e-10);
        assert!((lqfi_general(&bell_phi_plus()).unwrap() - 1.0).abs() <= 1e-10);
        // diagonal product state has zero discord
        let s = gibbs_closed_form(&PhysicalParams::new(0.8, 0.0, 0.5).unwrap()).unwrap();
        assert!(lqfi_general(&s.to_matrix()).unwrap().abs() <= 1e-10);
    }

    #[test]
    fn lqfi_closed_matches_general() {
        for &(omega, gamma, t) in &[(0.5, 1.0, 0.01), (0.5, 1.0, 0.5), (2.0, 0.5, 0.1), (0.5, 2.0, 0.01)]
        {
            let s = gibbs_closed_form(&PhysicalParams::new(omega, gamma, t).unwrap()).unwrap();
            for &eta in &[0.05, 0.4, 0.872, 1.0] {
                let scaled = s.with_eta(eta);
                let closed = lqfi_closed(&scaled).unwrap();
                let general = lqfi_general(&scaled.to_matrix()).unwrap();
                assert!(
                    (closed - general).abs() <= 1e-8,
                    "mismatch at omega={omega} gamma={gamma} T={t} eta={eta}: {closed} vs {general}"
                );
            }
        }
    }

    #[test]
    fn lqfi_closed_maximally_mixed_falls_back() {
        let s = GravcatXState::new(0.25, 0.25, 0.25, 0.0, 0.0, 1.0).unwrap();
        assert!(lqfi_closed(&s).unwrap().abs() <= 1e-10);
    }

    #[test]
    fn lqfi_frozen_under_full_correlation() {
        let s = gibbs_closed_form(&PhysicalParams::new(0.5, 1.0, 0.01).unwrap()).unwrap();
        let at = |f: f64| lqfi_closed(&s.with_eta(decoherence_factor(f, 1.0))).unwrap();
        let v0 = at(1.0);
        for &f in &[0.9, 0.3, 0.0] {
            assert!((at(f) - v0).abs() <= 1e-15);
        }
    }

    #[test]
    fn correlation_matrix_reference_states() {
        for row in correlation_matrix(&maximally_mixed()) {
            for v in row {
                assert!(v.abs() <= 1e-14);
            }
        }
        let x = correlation_matrix(&bell_phi_plus());
        let want = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((x[i][j] - want[i][j]).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn correlation_matrix_xstate_diagonal() {
        let s = gibbs_closed_form(&PhysicalParams::new(0.5, 1.0, 0.01).unwrap()).unwrap();
        let x = correlation_matrix(&s.to_matrix());
        let want = [
            2.0 * s.eta * (s.c + s.d),
            2.0 * s.eta * (s.d - s.c),
            s.a_minus + s.a_plus - 2.0 * s.b,
        ];
        for i in 0..3 {
            for j in 0..3 {
                let w = if i == j { want[i] } else { 0.0 };
                assert!((x[i][j] - w).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn bell_reference_states() {
        assert!(bell_max_general(&maximally_mixed()).unwrap().abs() <= 1e-12);
        assert!((bell_max_general(&bell_phi_plus()).unwrap() - BELL_CEILING).abs() <= 1e-12);
    }

    #[test]
    fn bell_closed_matches_general() {
        for &(omega, gamma, t) in &[(0.5, 1.0, 0.01), (0.5, 2.0, 0.01), (1.0, 0.5, 0.3)] {
            let s = gibbs_closed_form(&PhysicalParams::new(omega, gamma, t).unwrap()).unwrap();
            for &eta in &[0.0, 0.4, 1.0] {
                let scaled = s.with_eta(eta);
                let closed = bell_max_closed(&scaled);
                let general = bell_max_general(&scaled.to_matrix()).unwrap();
                assert!((closed - general).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn bell_limits_from_figure_parameters() {
        // 4 omega = gamma = 2, T = 0.01
        let s = gibbs_closed_form(&PhysicalParams::new(0.5, 2.0, 0.01).unwrap()).unwrap();
        let ceiling = bell_max_closed(&s);
        assert!(ceiling > 2.7 && ceiling <= BELL_CEILING);
        assert!(violation_flag(ceiling));
        let floor = bell_max_closed(&s.with_eta(0.0));
        assert!((floor - 2.0).abs() <= 2e-2);
        assert!(
            (floor - 2.0 * (s.a_plus + s.a_minus - 2.0 * s.b).abs()).abs() <= 1e-15
        );
        assert!(!violation_flag(floor));
    }

    #[test]
    fn violation_threshold() {
        assert!(violation_flag(BELL_CEILING));
        assert!(!violation_flag(1.99));
        assert!(!violation_flag(2.0));
    }

    #[test]
    fn eta_scaling_and_ordering() {
        let s = gibbs_closed_form(&PhysicalParams::new(0.5, 1.0, 0.01).unwrap()).unwrap();
        for &eta in &[0.2, 0.5, 0.9] {
            let lhs = coherence_l1_closed(&s.with_eta(eta));
            let rhs = eta * coherence_l1_closed(&s.with_eta(1.0));
            assert!((lhs - rhs).abs() <= 1e-15);
        }
        let etas = [0.0, 0.25, 0.5, 0.75, 1.0];
        for pair in etas.windows(2) {
            let lo = s.with_eta(pair[0]);
            let hi = s.with_eta(pair[1]);
            assert!(coherence_l1_closed(&lo) <= coherence_l1_closed(&hi) + 1e-12);
            assert!(bell_max_closed(&lo) <= bell_max_closed(&hi) + 1e-12);
            assert!(lqfi_closed(&lo).unwrap() <= lqfi_closed(&hi).unwrap() + 1e-12);
        }
    }

    #[test]
    fn range_bounds_on_grid() {
        for &omega in &[0.0, 0.5, 2.0] {
            for &gamma in &[0.0, 1.0, 2.0] {
                for &t in &[0.01, 0.5, 5.0] {
                    let s = gibbs_closed_form(&PhysicalParams::new(omega, gamma, t).unwrap()).unwrap();
                    for &eta in &[0.0, 0.5, 1.0] {
                        let r = evaluate_closed(&s.with_eta(eta), 0.0, 1.0).unwrap();
                        assert!(r.coherence >= -1e-12);
                        assert!((-1e-12..=1.0 + 1e-12).contains(&r.lqfi));
                        assert!((0.0..=BELL_CEILING + 1e-9).contains(&r.bell_max));
                    }
                }
            }
        }
    }
}
