//! Correlated dephasing channel with random-telegraph memory.
//!
//! A telegraph-noise kernel f(t) sets the time-dependent flip probability
//! p = (1 - f)/2 of a sigma_z dephasing channel. Classical correlations of
//! degree mu between the channel's actions on the two qubits enter through
//! the joint probability p_ij = (1 - mu) p_i p_j + mu p_i delta_ij. On the
//! thermal X-state the whole channel collapses to a single scalar
//! eta = f^2 + (1 - f^2) mu multiplying the off-diagonals; the explicit
//! Kraus path is kept as the oracle for that closed form.

use num_complex::Complex64;

use crate::error::{GravcatError, Result};
use crate::matrix::{kron2, pauli, ComplexMatrix};
use crate::state::GravcatXState;

/// Memory regime of the telegraph kernel, split at tau = 1/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Markovian,
    Boundary,
    NonMarkovian,
}

/// Correlation degree and telegraph time-scale of the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub mu: f64,
    pub tau: f64,
}

/// Width of the tau = 1/4 branch cut where the shared analytic limit is used.
const BOUNDARY_TOL: f64 = 1e-10;

impl ChannelSpec {
    pub fn new(mu: f64, tau: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(GravcatError::Domain(format!("mu must lie in [0,1], got {mu}")));
        }
        if !(tau > 0.0) {
            return Err(GravcatError::Domain(format!("tau must be > 0, got {tau}")));
        }
        Ok(Self { mu, tau })
    }

    pub fn regime(&self) -> Regime {
        let disc = 1.0 - 16.0 * self.tau * self.tau;
        if disc.abs() < BOUNDARY_TOL {
            Regime::Boundary
        } else if disc > 0.0 {
            Regime::Markovian
        } else {
            Regime::NonMarkovian
        }
    }
}

/// Telegraph-noise kernel f(t).
///
/// With x = t/(2 tau) and v = sqrt(|1 - 16 tau^2|):
/// Markovian (tau < 1/4):     f = e^{-x} [cosh(vx) + sinh(vx)/v],
/// non-Markovian (tau > 1/4): f = e^{-x} [cos(vx) + sin(vx)/v],
/// boundary (v -> 0):         f = e^{-x} (1 + x).
///
/// The Markovian branch is evaluated as a sum of two decaying exponentials
/// so large t/tau cannot overflow.
pub fn memory_kernel(t: f64, tau: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(GravcatError::Domain(format!("time must be >= 0, got {t}")));
    }
    if !(tau > 0.0) {
        return Err(GravcatError::Domain(format!("tau must be > 0, got {tau}")));
    }
    let x = t / (2.0 * tau);
    let disc = 1.0 - 16.0 * tau * tau;
    let v = disc.abs().sqrt();
    let f = if disc.abs() < BOUNDARY_TOL {
        (-x).exp() * (1.0 + x)
    } else if disc > 0.0 {
        // e^{-x} [cosh(vx) + sinh(vx)/v] with v in (0,1)
        0.5 * ((1.0 + 1.0 / v) * (-x * (1.0 - v)).exp() + (1.0 - 1.0 / v) * (-x * (1.0 + v)).exp())
    } else {
        (-x).exp() * ((v * x).cos() + (v * x).sin() / v)
    };
    Ok(f)
}

/// p = (1 - f(t))/2. Negative kernel values (non-Markovian oscillations)
/// push p above 1/2; p stays within [0, 1] since |f| <= 1.
pub fn flip_probability(t: f64, tau: f64) -> Result<f64> {
    Ok((1.0 - memory_kernel(t, tau)?) / 2.0)
}

/// Single-use Pauli error distribution (p0, p1, p2, p3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliProbability(pub [f64; 4]);

impl PauliProbability {
    /// Dephasing specialization: identity with weight 1 - p, sigma_z with p.
    pub fn dephasing(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(GravcatError::Domain(format!("p must lie in [0,1], got {p}")));
        }
        Ok(Self([1.0 - p, 0.0, 0.0, p]))
    }

    pub fn validate(&self) -> Result<()> {
        let sum: f64 = self.0.iter().sum();
        if self.0.iter().any(|&p| p < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(GravcatError::Domain(format!(
                "invalid probability vector {:?} (sum {sum})",
                self.0
            )));
        }
        Ok(())
    }
}

/// Joint distribution over the two channel uses.
#[derive(Debug, Clone, PartialEq)]
pub struct JointProbability(pub [[f64; 4]; 4]);

/// p_ij = (1 - mu) p_i p_j + mu p_i delta_ij.
pub fn joint_probability(p: &PauliProbability, mu: f64) -> Result<JointProbability> {
    p.validate()?;
    if !(0.0..=1.0).contains(&mu) {
        return Err(GravcatError::Domain(format!("mu must lie in [0,1], got {mu}")));
    }
    let mut pij = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            pij[i][j] = (1.0 - mu) * p.0[i] * p.0[j];
            if i == j {
                pij[i][j] += mu * p.0[i];
            }
        }
    }
    Ok(JointProbability(pij))
}

impl JointProbability {
    pub fn total(&self) -> f64 {
        self.0.iter().flatten().sum()
    }
}

/// Operator-sum application: rho' = sum_ij p_ij (s_i x s_j) rho (s_i x s_j).
pub fn apply_channel_general(rho: &ComplexMatrix, jp: &JointProbability) -> ComplexMatrix {
    assert_eq!(rho.dim(), 4);
    let mut out = ComplexMatrix::zeros(4).expect("dim 4 valid");
    for i in 0..4 {
        for j in 0..4 {
            let w = jp.0[i][j];
            if w == 0.0 {
                continue;
            }
            let op = kron2(&pauli(i), &pauli(j));
            let term = op.mul(rho).mul(&op);
            out = out.add(&term.scale(Complex64::new(w, 0.0)));
        }
    }
    out
}

/// eta = f^2 + (1 - f^2) mu.
pub fn decoherence_factor(f: f64, mu: f64) -> f64 {
    let f2 = f * f;
    f2 + (1.0 - f2) * mu
}

/// Closed-form channel action on the thermal X-state: the diagonal is fixed
/// and the off-diagonals are rescaled by eta.
pub fn evolve_closed_form(s: &GravcatXState, f: f64, mu: f64) -> Result<GravcatXState> {
    if (s.eta - 1.0).abs() > 1e-12 {
        return Err(GravcatError::Domain(
            "closed-form evolution expects a thermal input (eta = 1)".into(),
        ));
    }
    if !(-1.0..=1.0).contains(&f) {
        return Err(GravcatError::Domain(format!("kernel value must lie in [-1,1], got {f}")));
    }
    if !(0.0..=1.0).contains(&mu) {
        return Err(GravcatError::Domain(format!("mu must lie in [0,1], got {mu}")));
    }
    Ok(s.with_eta(decoherence_factor(f, mu)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{gibbs_closed_form, PhysicalParams};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kernel_starts_at_one() {
        for &tau in &[0.05, 0.1, 0.25, 0.3, 5.0] {
            assert!((memory_kernel(0.0, tau).unwrap() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn kernel_boundary_limit() {
        for &t in &[0.0, 0.5, 1.0, 3.0] {
            let f = memory_kernel(t, 0.25).unwrap();
            let want = (-2.0 * t).exp() * (1.0 + 2.0 * t);
            assert!((f - want).abs() <= 1e-14);
        }
    }

    #[test]
    fn kernel_markovian_direct_value() {
        // tau = 0.1, t = 1: direct cosh/sinh evaluation with v = sqrt(0.84)
        let v = 0.84f64.sqrt();
        let x = 1.0f64 / 0.2;
        let want = (-x).exp() * ((v * x).cosh() + (v * x).sinh() / v);
        assert!((memory_kernel(1.0, 0.1).unwrap() - want).abs() <= 1e-12);
    }

    #[test]
    fn kernel_continuous_across_boundary() {
        for &t in &[0.2, 1.0, 2.5] {
            let below = memory_kernel(t, 0.25 - 1e-9).unwrap();
            let above = memory_kernel(t, 0.25 + 1e-9).unwrap();
            let limit = memory_kernel(t, 0.25).unwrap();
            assert!((below - limit).abs() <= 1e-6);
            assert!((above - limit).abs() <= 1e-6);
        }
    }

    #[test]
    fn kernel_bounded_and_no_overflow() {
        for &tau in &[1e-3, 0.1, 0.2, 0.3, 1.0, 5.0, 50.0] {
            for k in 0..=300 {
                let t = k as f64 * 0.1;
                let f = memory_kernel(t, tau).unwrap();
                assert!(f.is_finite());
                assert!(f.abs() <= 1.0 + 1e-12, "|f| > 1 at tau={tau} t={t}: {f}");
            }
        }
    }

    #[test]
    fn kernel_regimes() {
        // Markovian: positive and strictly decreasing.
        let mut prev = memory_kernel(0.0, 0.1).unwrap();
        for k in 1..=2000 {
            let f = memory_kernel(k as f64 * 1e-2, 0.1).unwrap();
            assert!(f > 0.0);
            assert!(f < prev);
            prev = f;
        }
        // Non-Markovian: at least two sign changes on (0, 30].
        let mut signs = 0;
        let mut prev = memory_kernel(1e-2, 5.0).unwrap();
        for k in 2..=3000 {
            let f = memory_kernel(k as f64 * 1e-2, 5.0).unwrap();
            if f.signum() != prev.signum() {
                signs += 1;
            }
            prev = f;
        }
        assert!(signs >= 2, "only {signs} sign changes");
    }

    #[test]
    fn kernel_rejects_negative_time() {
        assert!(memory_kernel(-1.0, 0.1).is_err());
        assert!(memory_kernel(1.0, 0.0).is_err());
    }

    #[test]
    fn regime_classification() {
        assert_eq!(ChannelSpec::new(0.5, 0.1).unwrap().regime(), Regime::Markovian);
        assert_eq!(ChannelSpec::new(0.5, 0.25).unwrap().regime(), Regime::Boundary);
        assert_eq!(ChannelSpec::new(0.5, 5.0).unwrap().regime(), Regime::NonMarkovian);
    }

    #[test]
    fn flip_probability_limits() {
        assert!(flip_probability(0.0, 0.1).unwrap().abs() <= 1e-15);
        // long-time Markovian limit: f -> 0, p -> 1/2
        assert!((flip_probability(1e4, 0.1).unwrap() - 0.5).abs() <= 1e-12);
        let f = memory_kernel(1.0, 5.0).unwrap();
        assert!((flip_probability(1.0, 5.0).unwrap() - (1.0 - f) / 2.0).abs() <= 1e-15);
    }

    #[test]
    fn joint_probability_limits() {
        let p = PauliProbability::dephasing(0.3).unwrap();
        let uncorr = joint_probability(&p, 0.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((uncorr.0[i][j] - p.0[i] * p.0[j]).abs() <= 1e-15);
            }
        }
        let corr = joint_probability(&p, 1.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { p.0[i] } else { 0.0 };
                assert!((corr.0[i][j] - want).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn joint_probability_worked_value() {
        let p = PauliProbability::dephasing(0.3).unwrap();
        let jp = joint_probability(&p, 0.5).unwrap();
        assert!((jp.0[0][0] - 0.595).abs() <= 1e-15);
        assert!((jp.0[0][3] - 0.105).abs() <= 1e-15);
        assert!((jp.0[3][0] - 0.105).abs() <= 1e-15);
        assert!((jp.0[3][3] - 0.195).abs() <= 1e-15);
        assert!((jp.total() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn identity_channel_is_identity() {
        let p = PauliProbability::dephasing(0.0).unwrap();
        let jp = joint_probability(&p, 0.7).unwrap();
        let rho = gibbs_closed_form(&PhysicalParams::new(0.5, 1.0, 0.5).unwrap())
            .unwrap()
            .to_matrix();
        let out = apply_channel_general(&rho, &jp);
        assert!(out.max_diff(&rho) <= 1e-14);
    }

    #[test]
    fn dephasing_preserves_diagonal_and_x_shape() {
        let p = PauliProbability::dephasing(0.35).unwrap();
        let jp = joint_probability(&p, 0.2).unwrap();
        let rho = gibbs_closed_form(&PhysicalParams::new(0.5, 1.0, 0.1).unwrap())
            .unwrap()
            .to_matrix();
        let out = apply_channel_general(&rho, &jp);
        for i in 0..4 {
            assert!((out[(i, i)] - rho[(i, i)]).norm() <= 1e-14);
            for j in 0..4 {
                if i != j && i + j != 3 {
                    assert!(out[(i, j)].norm() <= 1e-15);
                }
            }
        }
    }

    #[test]
    fn cptp_completeness() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let p = rng.gen_range(0.0..1.0);
            let mu = rng.gen_range(0.0..=1.0);
            let jp = joint_probability(&PauliProbability::dephasing(p).unwrap(), mu).unwrap();
            // sum_ij E_ij^dag E_ij = sum p_ij I = I since the s_i are involutions
            assert!((jp.total() - 1.0).abs() <= 1e-12);
            let mut acc = ComplexMatrix::zeros(4).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let op = kron2(&pauli(i), &pauli(j));
                    acc = acc.add(&op.adjoint().mul(&op).scale(Complex64::new(jp.0[i][j], 0.0)));
                }
            }
            assert!(acc.max_diff(&ComplexMatrix::identity(4).unwrap()) <= 1e-12);
        }
    }

    #[test]
    fn decoherence_factor_values() {
        assert!((decoherence_factor(0.3, 1.0) - 1.0).abs() <= 1e-15);
        assert!((decoherence_factor(0.0, 0.7) - 0.7).abs() <= 1e-15);
        assert!((decoherence_factor(0.6, 0.8) - 0.872).abs() <= 1e-15);
    }

    #[test]
    fn closed_form_matches_kraus_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..50 {
            let params = PhysicalParams::new(
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.05..5.0),
            )
            .unwrap();
            let tau = rng.gen_range(0.02..8.0);
            let t = rng.gen_range(0.0..20.0);
            let mu = rng.gen_range(0.0..=1.0);
            let s = gibbs_closed_form(&params).unwrap();
            let f = memory_kernel(t, tau).unwrap();
            let closed = evolve_closed_form(&s, f, mu).unwrap().to_matrix();
            let p = (1.0 - f) / 2.0;
            let jp = joint_probability(&PauliProbability::dephasing(p).unwrap(), mu).unwrap();
            let general = apply_channel_general(&s.to_matrix(), &jp);
            assert!(closed.max_diff(&general) <= 1e-12);
        }
    }

    #[test]
    fn uncorrelated_channel_factorizes() {
        // mu = 0 must equal two independent single-qubit dephasing maps.
        let params = PhysicalParams::new(0.5, 1.0, 0.1).unwrap();
        let rho = gibbs_closed_form(&params).unwrap().to_matrix();
        let p = 0.3;
        let jp = joint_probability(&PauliProbability::dephasing(p).unwrap(), 0.0).unwrap();
        let joint = apply_channel_general(&rho, &jp);

        let i2 = ComplexMatrix::identity(2).unwrap();
        let sz = pauli(3);
        let mut local = ComplexMatrix::zeros(4).unwrap();
        for (wa, oa) in [(1.0 - p, &i2), (p, &sz)] {
            for (wb, ob) in [(1.0 - p, &i2), (p, &sz)] {
                let op = kron2(oa, ob);
                local = local.add(&op.mul(&rho).mul(&op).scale(Complex64::new(wa * wb, 0.0)));
            }
        }
        assert!(joint.max_diff(&local) <= 1e-12);
    }

    #[test]
    fn reduced_state_independent_of_eta() {
        use crate::matrix::partial_trace_b;
        let s = gibbs_closed_form(&PhysicalParams::new(0.5, 1.0, 0.01).unwrap()).unwrap();
        let base = partial_trace_b(&s.with_eta(0.0).to_matrix());
        for &eta in &[0.5, 1.0] {
            let red = partial_trace_b(&s.with_eta(eta).to_matrix());
            assert!(red.max_diff(&base) <= 1e-14);
        }
    }

    #[test]
    fn mu_one_freezes_the_state() {
        let s = gibbs_closed_form(&PhysicalParams::new(0.5, 1.0, 0.01).unwrap()).unwrap();
        for &t in &[0.0, 1.0, 10.0, 100.0] {
            let f = memory_kernel(t, 0.1).unwrap();
            let out = evolve_closed_form(&s, f, 1.0).unwrap();
            assert!(out.to_matrix().max_diff(&s.to_matrix()) <= 1e-15);
        }
    }
}
