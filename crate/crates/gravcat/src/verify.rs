//! End-to-end oracle equivalence checks.
//!
//! Every closed form in the crate has an independent brute-force route:
//! the Gibbs entries against the matrix exponential, the eta-scaling against
//! the explicit Kraus sum, and each quantifier against its general-path
//! evaluation. This module runs all of them over a deterministic grid and
//! reports the worst deviations, for the `verify` subcommand and CI.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::channel::{
    apply_channel_general, decoherence_factor, evolve_closed_form, joint_probability,
    memory_kernel, PauliProbability,
};
use crate::error::Result;
use crate::matrix::{kron2, pauli, ComplexMatrix};
use crate::quantifiers::{
    bell_max_closed, bell_max_general, coherence_l1_closed, coherence_l1_general, lqfi_closed,
    lqfi_general,
};
use crate::state::{gibbs_closed_form, gibbs_oracle, GravcatXState, PhysicalParams};

/// Outcome of one oracle comparison.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Full verification report.
#[derive(Debug, Clone)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// Grid sizes for the comparison runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSize {
    Small,
    Full,
}

impl GridSize {
    fn channel_draws(&self) -> usize {
        match self {
            GridSize::Small => 40,
            GridSize::Full => 200,
        }
    }

    fn quantifier_points(&self) -> usize {
        match self {
            GridSize::Small => 100,
            GridSize::Full => 500,
        }
    }
}

fn thermal_grid() -> Vec<PhysicalParams> {
    let mut out = Vec::new();
    for &omega in &[0.0, 0.25, 0.5, 1.0, 2.0] {
        for &gamma in &[0.0, 0.5, 1.0, 2.0] {
            for &t in &[0.01, 0.1, 1.0, 10.0] {
                out.push(PhysicalParams::new(omega, gamma, t).expect("grid values valid"));
            }
        }
    }
    out
}

/// Deterministic quantifier grid: thermal states scaled by a spread of eta
/// values reached through (tau, t, mu) combinations.
fn quantifier_grid(points: usize) -> Vec<(GravcatXState, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b9);
    let mut out = Vec::with_capacity(points);
    while out.len() < points {
        let p = PhysicalParams::new(
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.02..5.0),
        )
        .expect("sampled values valid");
        let tau = rng.gen_range(0.02..8.0);
        let t = rng.gen_range(0.0..25.0);
        let mu = rng.gen_range(0.0..=1.0);
        let f = memory_kernel(t, tau).expect("valid kernel arguments");
        let s = gibbs_closed_form(&p).expect("valid params");
        out.push((s, decoherence_factor(f, mu)));
    }
    out
}

fn gibbs_check(tol: f64) -> Check {
    let mut worst = 0.0f64;
    for p in thermal_grid() {
        let closed = gibbs_closed_form(&p).expect("grid valid").to_matrix();
        let oracle = gibbs_oracle(&p).expect("grid valid");
        worst = worst.max(closed.max_diff(&oracle));
    }
    Check { name: "gibbs closed form vs matrix exponential", max_deviation: worst, tolerance: tol }
}

fn channel_check(tol: f64, draws: usize) -> (Check, Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    let mut worst_cptp = 0.0f64;
    let identity = ComplexMatrix::identity(4).expect("dim 4 valid");
    for _ in 0..draws {
        let p = PhysicalParams::new(
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.02..5.0),
        )
        .expect("sampled values valid");
        let tau = rng.gen_range(0.02..8.0);
        let t = rng.gen_range(0.0..20.0);
        let mu = rng.gen_range(0.0..=1.0);
        let s = gibbs_closed_form(&p).expect("valid params");
        let f = memory_kernel(t, tau).expect("valid kernel arguments");
        let closed = evolve_closed_form(&s, f, mu).expect("thermal input").to_matrix();
        let flip = (1.0 - f) / 2.0;
        let jp = joint_probability(&PauliProbability::dephasing(flip).expect("p in range"), mu)
            .expect("valid joint distribution");
        let general = apply_channel_general(&s.to_matrix(), &jp);
        worst = worst.max(closed.max_diff(&general));

        let mut acc = ComplexMatrix::zeros(4).expect("dim 4 valid");
        for i in 0..4 {
            for j in 0..4 {
                let op = kron2(&pauli(i), &pauli(j));
                acc = acc.add(&op.adjoint().mul(&op).scale(Complex64::new(jp.0[i][j], 0.0)));
            }
        }
        worst_cptp = worst_cptp.max(acc.max_diff(&identity));
    }
    (
        Check { name: "channel closed form vs Kraus sum", max_deviation: worst, tolerance: tol },
        Check { name: "Kraus completeness (CPTP)", max_deviation: worst_cptp, tolerance: tol },
    )
}

fn quantifier_checks(
    grid: &[(GravcatXState, f64)],
    tol_coherence: f64,
    tol_bell: f64,
    tol_lqfi: f64,
) -> Result<Vec<Check>> {
    let mut worst_c = 0.0f64;
    let mut worst_b = 0.0f64;
    let mut worst_l = 0.0f64;
    for (s, eta) in grid {
        let scaled = s.with_eta(*eta);
        let rho = scaled.to_matrix();
        worst_c = worst_c.max((coherence_l1_closed(&scaled) - coherence_l1_general(&rho)).abs());
        worst_b = worst_b.max((bell_max_closed(&scaled) - bell_max_general(&rho)?).abs());
        worst_l = worst_l.max((lqfi_closed(&scaled)? - lqfi_general(&rho)?).abs());
    }
    Ok(vec![
        Check {
            name: "coherence closed form vs general path",
            max_deviation: worst_c,
            tolerance: tol_coherence,
        },
        Check {
            name: "Bell closed form vs X^T X eigenvalues",
            max_deviation: worst_b,
            tolerance: tol_bell,
        },
        Check {
            name: "LQFI closed form vs M-matrix path",
            max_deviation: worst_l,
            tolerance: tol_lqfi,
        },
    ])
}

/// Run every oracle comparison. `tol_override` replaces all tolerances when
/// given; otherwise the per-check acceptance tolerances apply.
pub fn run(grid: GridSize, tol_override: Option<f64>) -> Result<Report> {
    let tol = |default: f64| tol_override.unwrap_or(default);
    let mut checks = vec![gibbs_check(tol(1e-10))];
    let (chan, cptp) = channel_check(tol(1e-12), grid.channel_draws());
    checks.push(chan);
    checks.push(cptp);
    checks.extend(quantifier_checks(
        &quantifier_grid(grid.quantifier_points()),
        tol(1e-12),
        tol(1e-10),
        tol(1e-8),
    )?);
    Ok(Report { checks })
}
