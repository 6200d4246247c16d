//! Thermal two-qubit gravitational cat states.
//!
//! The system is two qubits coupled by a gravitational term: the Hamiltonian
//! is (omega/2)(sz x I + I x sz) - gamma (sx x sx). Its Gibbs state at
//! temperature T is an X-shaped matrix whose five real entries have closed
//! forms; the matrix-exponential path through [`crate::matrix`] serves as the
//! independent oracle for them.

use num_complex::Complex64;

use crate::error::{GravcatError, Result};
use crate::matrix::{hermitian_eig, kron2, matrix_exp_hermitian, pauli, ComplexMatrix};

/// Smallest accepted temperature.
pub const MIN_TEMPERATURE: f64 = 1e-6;

/// Energy gap, gravitational coupling, and temperature in natural units
/// (k_B = hbar = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub omega: f64,
    pub gamma: f64,
    pub temperature: f64,
}

impl PhysicalParams {
    pub fn new(omega: f64, gamma: f64, temperature: f64) -> Result<Self> {
        if !(omega >= 0.0) {
            return Err(GravcatError::Domain(format!("omega must be >= 0, got {omega}")));
        }
        if !(gamma >= 0.0) {
            return Err(GravcatError::Domain(format!("gamma must be >= 0, got {gamma}")));
        }
        if !(temperature >= MIN_TEMPERATURE) {
            return Err(GravcatError::Domain(format!(
                "temperature must be >= {MIN_TEMPERATURE}, got {temperature}"
            )));
        }
        Ok(Self { omega, gamma, temperature })
    }

    /// alpha = sqrt(omega^2 + gamma^2).
    pub fn alpha(&self) -> f64 {
        self.omega.hypot(self.gamma)
    }
}

/// Double-well geometry behind the coupling strength: two masses m on
/// parallel axes a distance L apart, with x' the separation when the masses
/// sit at different minima and x = sqrt(x'^2 - L^2) when at the same one.
#[derive(Debug, Clone, Copy)]
pub struct Geometry {
    pub mass: f64,
    pub x_prime: f64,
    pub separation_l: f64,
    pub gravitational_constant: f64,
}

/// gamma = G m^2 / 2 * (1/x - 1/x'), all quantities nondimensionalized.
pub fn gravitational_coupling(g: &Geometry) -> Result<f64> {
    if !(g.mass > 0.0) || !(g.gravitational_constant > 0.0) {
        return Err(GravcatError::Domain("mass and G must be positive".into()));
    }
    if !(g.separation_l >= 0.0) || !(g.x_prime > g.separation_l) {
        return Err(GravcatError::Domain(format!(
            "need x_prime > L >= 0, got x_prime = {}, L = {}",
            g.x_prime, g.separation_l
        )));
    }
    let x = (g.x_prime * g.x_prime - g.separation_l * g.separation_l).sqrt();
    Ok(g.gravitational_constant * g.mass * g.mass / 2.0 * (1.0 / x - 1.0 / g.x_prime))
}

/// The five real entries of the X-shaped state together with the decoherence
/// scale eta multiplying its off-diagonals:
///
/// ```text
///   [ a_minus   0       0      eta c  ]
///   [   0       b     eta d      0    ]
///   [   0     eta d     b        0    ]
///   [ eta c     0       0     a_plus  ]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravcatXState {
    pub a_minus: f64,
    pub a_plus: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub eta: f64,
}

impl GravcatXState {
    pub fn new(a_minus: f64, a_plus: f64, b: f64, c: f64, d: f64, eta: f64) -> Result<Self> {
        let s = Self { a_minus, a_plus, b, c, d, eta };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let tol = 1e-12;
        if (self.a_minus + self.a_plus + 2.0 * self.b - 1.0).abs() > tol {
            return Err(GravcatError::Domain(format!(
                "X-state trace is {}, expected 1",
                self.a_minus + self.a_plus + 2.0 * self.b
            )));
        }
        if self.a_minus < -tol || self.a_plus < -tol || self.b < -tol || self.c < -tol || self.d < -tol
        {
            return Err(GravcatError::Domain("X-state entries must be non-negative".into()));
        }
        if !(0.0..=1.0 + tol).contains(&self.eta) {
            return Err(GravcatError::Domain(format!("eta must lie in [0,1], got {}", self.eta)));
        }
        if self.eta * self.c > (self.a_minus * self.a_plus).sqrt() + tol
            || self.eta * self.d > self.b + tol
        {
            return Err(GravcatError::Domain("X-state violates positivity".into()));
        }
        Ok(())
    }

    /// Same entries with the off-diagonal scale replaced.
    pub fn with_eta(&self, eta: f64) -> Self {
        Self { eta, ..*self }
    }

    /// Assemble the 4x4 density matrix.
    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_real(
            4,
            &[
                self.a_minus, 0.0, 0.0, self.eta * self.c, //
                0.0, self.b, self.eta * self.d, 0.0, //
                0.0, self.eta * self.d, self.b, 0.0, //
                self.eta * self.c, 0.0, 0.0, self.a_plus,
            ],
        )
        .expect("dim 4 valid")
    }

    /// Eigenvalues of the assembled matrix, from the two 2x2 blocks:
    /// the outer block gives ((a- + a+) +/- sqrt((a- - a+)^2 + 4 eta^2 c^2))/2,
    /// the inner block b +/- eta d.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let sum = self.a_minus + self.a_plus;
        let diff = self.a_minus - self.a_plus;
        let disc = (diff * diff + 4.0 * self.eta * self.eta * self.c * self.c).sqrt();
        [
            (sum + disc) / 2.0,
            (sum - disc) / 2.0,
            self.b + self.eta * self.d,
            self.b - self.eta * self.d,
        ]
    }
}

/// H = (omega/2)(sz x I + I x sz) - gamma (sx x sx).
pub fn build_hamiltonian(p: &PhysicalParams) -> ComplexMatrix {
    let i2 = ComplexMatrix::identity(2).expect("dim 2 valid");
    let sz = pauli(3);
    let sx = pauli(1);
    let h_omega = kron2(&sz, &i2)
        .add(&kron2(&i2, &sz))
        .scale(Complex64::new(p.omega / 2.0, 0.0));
    let h_gamma = kron2(&sx, &sx).scale(Complex64::new(-p.gamma, 0.0));
    h_omega.add(&h_gamma)
}

/// Closed-form Gibbs X-state.
///
/// Entries are ratios of cosh/sinh terms to Z = 2[cosh(alpha/T) + cosh(gamma/T)];
/// everything is evaluated with exp(alpha/T) factored out so that T down to
/// 1e-4 stays inside double range (alpha >= gamma always).
pub fn gibbs_closed_form(p: &PhysicalParams) -> Result<GravcatXState> {
    PhysicalParams::new(p.omega, p.gamma, p.temperature)?;
    let alpha = p.alpha();
    if alpha < 1e-12 {
        // omega = gamma = 0: H = 0, maximally mixed.
        return GravcatXState::new(0.25, 0.25, 0.25, 0.0, 0.0, 1.0);
    }
    let t = p.temperature;
    // Scaled by exp(-alpha/T): cosh(alpha/T) -> (1 + e^{-2 alpha/T})/2, etc.
    let e2a = (-2.0 * alpha / t).exp();
    let ch_a = (1.0 + e2a) / 2.0;
    let sh_a = (1.0 - e2a) / 2.0;
    let eg = ((p.gamma - alpha) / t).exp();
    let egm = ((-p.gamma - alpha) / t).exp();
    let ch_g = (eg + egm) / 2.0;
    let sh_g = (eg - egm) / 2.0;
    let z = 2.0 * (ch_a + ch_g);

    let a_minus = (alpha * ch_a - p.omega * sh_a) / (z * alpha);
    let a_plus = (alpha * ch_a + p.omega * sh_a) / (z * alpha);
    let b = ch_g / z;
    let c = p.gamma * sh_a / (z * alpha);
    let d = sh_g / z;
    GravcatXState::new(a_minus, a_plus, b, c, d, 1.0)
}

/// Gibbs state via the matrix-exponential oracle: exp(-H/T) normalized by
/// its trace. The Hamiltonian is shifted by its smallest eigenvalue before
/// exponentiating; the shift cancels in the normalization.
pub fn gibbs_oracle(p: &PhysicalParams) -> Result<ComplexMatrix> {
    PhysicalParams::new(p.omega, p.gamma, p.temperature)?;
    let h = build_hamiltonian(p);
    let spec = hermitian_eig(&h)?;
    let lambda_min = spec.values.last().copied().unwrap_or(0.0);
    let shift = ComplexMatrix::identity(4)?.scale(Complex64::new(lambda_min, 0.0));
    let exponent = h.sub(&shift).scale(Complex64::new(-1.0 / p.temperature, 0.0));
    let unnorm = matrix_exp_hermitian(&exponent)?;
    let z = unnorm.trace().re;
    Ok(unnorm.scale(Complex64::new(1.0 / z, 0.0)))
}
