//! Jones-calculus model of the Sagnac-loop realization of the 2-SWITCH.
//!
//! The path qubit is the beam-splitter mode (0 = clockwise arm, 1 =
//! counter-clockwise arm) and the target qubit is the photon polarization in
//! the `(H, V)` basis. Both arms cross the same wave plates in opposite
//! directions; counter-propagation is modeled by negating every fast-axis
//! angle, which leaves on-axis plates untouched and flips the sign of a
//! half-wave plate at 45°.
//!
//! Output ports: port `b` is BS output mode 0 and port `a` is mode 1. With the
//! chosen conventions a calibrated loop (`U₁ = I`, `U₂ = X`, phase 0) sends
//! every photon to port `b`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::{OracleSet, SignedPauli};
use crate::qmath::{c, gates, r, tensor, Complex, ComplexMatrix, StateVector, I, ONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlateKind {
    #[serde(rename = "HWP")]
    Hwp,
    #[serde(rename = "QWP")]
    Qwp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Reverse,
}

/// Folds an angle in degrees into `[-90, 90)`; plates are symmetric under 180° rotation.
pub fn normalize_angle(deg: f64) -> f64 {
    (deg + 90.0).rem_euclid(180.0) - 90.0
}

/// `(cos, sin)` of an angle in degrees, exact at multiples of 45°.
fn cos_sin_deg(deg: f64) -> (f64, f64) {
    let quarter = deg.rem_euclid(360.0);
    if quarter % 90.0 == 0.0 {
        match (quarter / 90.0) as u8 {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    } else if quarter % 45.0 == 0.0 {
        let h = FRAC_1_SQRT_2;
        match (quarter / 45.0) as u8 {
            1 => (h, h),
            3 => (-h, h),
            5 => (-h, -h),
            _ => (h, -h),
        }
    } else {
        let (s, c) = deg.to_radians().sin_cos();
        (c, s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavePlate {
    pub kind: PlateKind,
    /// Fast-axis angle from horizontal, degrees, in `[-90, 90)`.
    angle: f64,
    /// Deviation of the retardation from its nominal value, radians.
    #[serde(default)]
    pub retardance_error: f64,
}

impl WavePlate {
    pub fn new(kind: PlateKind, angle_deg: f64) -> Self {
        Self {
            kind,
            angle: normalize_angle(angle_deg),
            retardance_error: 0.0,
        }
    }

    pub fn hwp(angle_deg: f64) -> Self {
        Self::new(PlateKind::Hwp, angle_deg)
    }

    pub fn qwp(angle_deg: f64) -> Self {
        Self::new(PlateKind::Qwp, angle_deg)
    }

    pub fn with_retardance_error(mut self, delta: f64) -> Self {
        self.retardance_error = delta;
        self
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn set_angle(&mut self, deg: f64) {
        self.angle = normalize_angle(deg);
    }

    /// `e^{iΓ}` for the plate's actual retardation.
    fn retardation_phasor(&self) -> Complex {
        if self.retardance_error == 0.0 {
            return match self.kind {
                PlateKind::Hwp => r(-1.0),
                PlateKind::Qwp => I,
            };
        }
        let nominal = match self.kind {
            PlateKind::Hwp => PI,
            PlateKind::Qwp => PI / 2.0,
        };
        Complex::from_polar(1.0, nominal + self.retardance_error)
    }
}

/// Jones matrix `R(θ) diag(1, e^{iΓ}) R(−θ)`; `Reverse` evaluates it at `−θ`.
///
/// So `QWP(0°) = diag(1, i)` and `HWP(θ) = [[cos 2θ, sin 2θ], [sin 2θ, −cos 2θ]]`.
pub fn jones_matrix(p: &WavePlate, direction: Direction) -> ComplexMatrix {
    let theta = match direction {
        Direction::Forward => p.angle,
        Direction::Reverse => normalize_angle(-p.angle),
    };
    let (cs, sn) = cos_sin_deg(theta);
    let e = p.retardation_phasor();
    let off = r(cs * sn) * (ONE - e);
    ComplexMatrix::from_2x2([
        [r(cs * cs) + e * (sn * sn), off],
        [off, r(sn * sn) + e * (cs * cs)],
    ])
}

/// Plates in the order a forward-propagating photon meets them.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlateStack {
    pub plates: Vec<WavePlate>,
}

impl PlateStack {
    pub fn new(plates: Vec<WavePlate>) -> Self {
        Self { plates }
    }

    /// QWP–HWP–QWP with the given angles.
    pub fn qhq(q1: f64, h: f64, q2: f64) -> Self {
        Self::new(vec![
            WavePlate::qwp(q1),
            WavePlate::hwp(h),
            WavePlate::qwp(q2),
        ])
    }

    /// Plates of `self` followed by plates of `next`.
    pub fn then(mut self, next: &PlateStack) -> Self {
        self.plates.extend_from_slice(&next.plates);
        self
    }
}

/// Forward: last plate's matrix leftmost. Reverse: the photon meets plates
/// back to front, each evaluated with the reversed angle.
pub fn stack_matrix(s: &PlateStack, direction: Direction) -> ComplexMatrix {
    let mut m = gates::identity();
    match direction {
        Direction::Forward => {
            for p in &s.plates {
                m = &jones_matrix(p, direction) * &m;
            }
        }
        Direction::Reverse => {
            for p in s.plates.iter().rev() {
                m = &jones_matrix(p, direction) * &m;
            }
        }
    }
    m
}

/// Gates realized by the three-plate stacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    I,
    MinusI,
    Z,
    MinusZ,
    X,
}

impl Gate {
    pub const ALL: [Gate; 5] = [Gate::I, Gate::MinusI, Gate::Z, Gate::MinusZ, Gate::X];

    /// `(QWP, HWP, QWP)` angles in degrees.
    pub fn angles(self) -> (f64, f64, f64) {
        match self {
            Gate::I => (0.0, 0.0, 0.0),
            Gate::MinusI => (90.0, 0.0, 90.0),
            Gate::Z => (0.0, 90.0, 90.0),
            Gate::MinusZ => (90.0, 0.0, 0.0),
            Gate::X => (0.0, 45.0, 0.0),
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        match self {
            Gate::I => gates::identity(),
            Gate::MinusI => -&gates::identity(),
            Gate::Z => gates::pauli_z(),
            Gate::MinusZ => -&gates::pauli_z(),
            Gate::X => gates::pauli_x(),
        }
    }

    pub fn is_diagonal(self) -> bool {
        self != Gate::X
    }
}

impl From<SignedPauli> for Gate {
    fn from(p: SignedPauli) -> Self {
        match p {
            SignedPauli::PlusI => Gate::I,
            SignedPauli::MinusI => Gate::MinusI,
            SignedPauli::PlusZ => Gate::Z,
            SignedPauli::MinusZ => Gate::MinusZ,
        }
    }
}

pub fn standard_stack(gate: Gate) -> PlateStack {
    let (q1, h, q2) = gate.angles();
    PlateStack::qhq(q1, h, q2)
}

/// `U₁` for an oracle set: one `D(f_i)` stack per function, placed so the
/// forward product reads `D(f_1)···D(f_n)`.
pub fn oracle_stack(s: &OracleSet) -> PlateStack {
    s.functions()
        .iter()
        .rev()
        .fold(PlateStack::default(), |acc, &f| {
            acc.then(&standard_stack(SignedPauli::of(f).into()))
        })
}

/// Symmetric beam splitter `[[√T, i√(1−T)], [i√(1−T), √T]]`.
pub fn beam_splitter(transmittance: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&transmittance) {
        return Err(Error::InvalidTransmittance(transmittance));
    }
    let t = r(transmittance.sqrt());
    let rf = c(0.0, (1.0 - transmittance).sqrt());
    Ok(ComplexMatrix::from_2x2([[t, rf], [rf, t]]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    H,
    V,
    D,
    A,
}

impl Polarization {
    pub const ALL: [Polarization; 4] = [
        Polarization::H,
        Polarization::V,
        Polarization::D,
        Polarization::A,
    ];

    pub fn state(self) -> StateVector {
        let h = FRAC_1_SQRT_2;
        match self {
            Polarization::H => StateVector::zero(),
            Polarization::V => StateVector::one(),
            Polarization::D => StateVector::new(vec![r(h), r(h)]),
            Polarization::A => StateVector::new(vec![r(h), r(-h)]),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Polarization::H => "H",
            Polarization::V => "V",
            Polarization::D => "D",
            Polarization::A => "A",
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Polarization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "H" => Ok(Polarization::H),
            "V" => Ok(Polarization::V),
            "D" => Ok(Polarization::D),
            "A" => Ok(Polarization::A),
            other => Err(format!(
                "unknown polarization {other:?} (expected H, V, D or A)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Port {
    A,
    B,
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Port::A => "a",
            Port::B => "b",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SagnacConfig {
    pub u1_stack: PlateStack,
    pub u2_stack: PlateStack,
    pub input_polarization: StateVector,
    /// Liquid-crystal phase on the counter-clockwise arm, radians.
    pub interferometer_phase: f64,
    pub bs_transmittance: f64,
}

impl SagnacConfig {
    /// Ideal loop: balanced BS, zero phase.
    pub fn ideal(u1_stack: PlateStack, u2_stack: PlateStack, input: Polarization) -> Self {
        Self {
            u1_stack,
            u2_stack,
            input_polarization: input.state(),
            interferometer_phase: 0.0,
            bs_transmittance: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PortAmplitudes {
    pub port_a: StateVector,
    pub port_b: StateVector,
    pub p_a: f64,
    pub p_b: f64,
}

impl PortAmplitudes {
    pub fn probability(&self, port: Port) -> f64 {
        match port {
            Port::A => self.p_a,
            Port::B => self.p_b,
        }
    }
}

/// Jones matrices of the two arms: clockwise meets `U₂` then `U₁`,
/// counter-clockwise meets `U₁` then `U₂` with every plate reversed.
pub fn arm_matrices(u1: &PlateStack, u2: &PlateStack) -> (ComplexMatrix, ComplexMatrix) {
    let cw = &stack_matrix(u1, Direction::Forward) * &stack_matrix(u2, Direction::Forward);
    let ccw = &stack_matrix(u2, Direction::Reverse) * &stack_matrix(u1, Direction::Reverse);
    (cw, ccw)
}

/// Propagates one photon through BS, loop, and BS again.
pub fn simulate_sagnac(c: &SagnacConfig) -> Result<PortAmplitudes> {
    let bs = tensor(&beam_splitter(c.bs_transmittance)?, &gates::identity());
    let (cw, ccw) = arm_matrices(&c.u1_stack, &c.u2_stack);
    let lc = Complex::from_polar(1.0, c.interferometer_phase);
    let loop_op =
        &tensor(&gates::projector(0), &cw) + &tensor(&gates::projector(1), &ccw.scale(lc));

    let input = StateVector::basis(2, 0).tensor(&c.input_polarization);
    let out = bs.apply(&loop_op.apply(&bs.apply(&input)?)?)?;
    let amps = out.amplitudes();
    let port_b = StateVector::new(amps[0..2].to_vec());
    let port_a = StateVector::new(amps[2..4].to_vec());
    Ok(PortAmplitudes {
        p_a: port_a.norm_sqr(),
        p_b: port_b.norm_sqr(),
        port_a,
        port_b,
    })
}

/// Phase that routes every photon to port `b` when `U₁` is the identity stack.
///
/// Port `b` carries `T·M_cw|ψ⟩ − (1−T)·e^{iφ}·M_ccw|ψ⟩`; its norm is largest
/// when `e^{iφ}⟨M_cw ψ|M_ccw ψ⟩` is real and negative. `T` only scales the
/// two terms, so it drops out.
pub fn calibrate_phase(u2_stack: &PlateStack, input: &StateVector) -> Result<f64> {
    let (cw, ccw) = arm_matrices(&standard_stack(Gate::I), u2_stack);
    let a = cw.apply(input)?;
    let b = ccw.apply(input)?;
    const EPS: f64 = 1e-14;
    if a.norm_sqr() < EPS || b.norm_sqr() < EPS {
        return Err(Error::CalibrationImpossible("an arm carries no amplitude"));
    }
    let overlap = a.inner(&b);
    if overlap.norm() < EPS {
        return Err(Error::CalibrationImpossible("arm outputs are orthogonal"));
    }
    let z = -overlap.conj() / overlap.norm();
    Ok(z.arg())
}

/// Imperfection model. Angles in degrees, retardances in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub plate_angle_sigma: f64,
    pub retardance_sigma: f64,
    pub bs_imbalance_sigma: f64,
    pub dark_count_rate: f64,
    pub rng_seed: u64,
}

impl NoiseModel {
    pub fn none(rng_seed: u64) -> Self {
        Self {
            plate_angle_sigma: 0.0,
            retardance_sigma: 0.0,
            bs_imbalance_sigma: 0.0,
            dark_count_rate: 0.0,
            rng_seed,
        }
    }

    /// CALIBRATED defaults, not measured hardware values. Chosen with the
    /// `calibration_sweep` example so the mean success over both tables sits
    /// near 0.997. Gaussian plate errors alone give heavy-tailed losses, so
    /// most of the loss budget is a flat background in `dark_count_rate`.
    pub fn calibrated(rng_seed: u64) -> Self {
        Self {
            plate_angle_sigma: 0.2,
            retardance_sigma: 0.01,
            bs_imbalance_sigma: 0.005,
            dark_count_rate: 5e-3,
            rng_seed,
        }
    }

    pub fn is_noiseless(&self) -> bool {
        self.plate_angle_sigma == 0.0
            && self.retardance_sigma == 0.0
            && self.bs_imbalance_sigma == 0.0
            && self.dark_count_rate == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let sigmas = [
            self.plate_angle_sigma,
            self.retardance_sigma,
            self.bs_imbalance_sigma,
        ];
        if sigmas.iter().any(|s| !(s.is_finite() && *s >= 0.0)) {
            return Err(Error::InvalidNoise(
                "sigmas must be finite and non-negative",
            ));
        }
        if !(0.0..1.0).contains(&self.dark_count_rate) {
            return Err(Error::InvalidNoise("dark_count_rate must lie in [0, 1)"));
        }
        Ok(())
    }
}

/// Random copy of `c` drawn with a generator seeded from `m.rng_seed`.
pub fn perturb(c: &SagnacConfig, m: &NoiseModel) -> Result<SagnacConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(m.rng_seed);
    perturb_with(c, m, &mut rng)
}

/// Jitters every plate angle and retardance and the BS transmittance,
/// drawing from `rng` in a fixed order (U₁ plates, U₂ plates, BS).
pub fn perturb_with<R: Rng + ?Sized>(
    c: &SagnacConfig,
    m: &NoiseModel,
    rng: &mut R,
) -> Result<SagnacConfig> {
    m.validate()?;
    let angle = Normal::new(0.0, m.plate_angle_sigma).expect("validated");
    let retard = Normal::new(0.0, m.retardance_sigma).expect("validated");
    let split = Normal::new(0.0, m.bs_imbalance_sigma).expect("validated");

    let mut out = c.clone();
    for plate in out
        .u1_stack
        .plates
        .iter_mut()
        .chain(out.u2_stack.plates.iter_mut())
    {
        let d_angle = angle.sample(rng);
        let d_retard = retard.sample(rng);
        if d_angle != 0.0 {
            plate.set_angle(plate.angle() + d_angle);
        }
        plate.retardance_error += d_retard;
    }
    let d_t = split.sample(rng);
    if d_t != 0.0 {
        out.bs_transmittance = (c.bs_transmittance + d_t).clamp(1e-9, 1.0 - 1e-9);
    }
    Ok(out)
}
