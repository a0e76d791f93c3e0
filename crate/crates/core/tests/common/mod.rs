#![allow(dead_code)]

use std::f64::consts::PI;

use cswitch::qmath::{c, ComplexMatrix, StateVector};
use cswitch::Complex;
use proptest::prelude::*;

/// `e^{iα} [[a, −b̄], [b, ā]]` with `a = cos θ e^{iφ₁}`, `b = sin θ e^{iφ₂}`.
pub fn su2(alpha: f64, theta: f64, phi1: f64, phi2: f64) -> ComplexMatrix {
    let a = Complex::from_polar(theta.cos(), phi1);
    let b = Complex::from_polar(theta.sin(), phi2);
    let g = Complex::from_polar(1.0, alpha);
    ComplexMatrix::from_2x2([[g * a, -g * b.conj()], [g * b, g * a.conj()]])
}

pub fn unitary2() -> impl Strategy<Value = ComplexMatrix> {
    (0.0..2.0 * PI, 0.0..PI / 2.0, 0.0..2.0 * PI, 0.0..2.0 * PI)
        .prop_map(|(a, t, p1, p2)| su2(a, t, p1, p2))
}

pub fn qubit_state() -> impl Strategy<Value = StateVector> {
    (0.0..PI, 0.0..2.0 * PI).prop_map(|(theta, phi)| {
        StateVector::new(vec![
            c((theta / 2.0).cos(), 0.0),
            Complex::from_polar((theta / 2.0).sin(), phi),
        ])
    })
}

pub fn unit_scalar() -> impl Strategy<Value = Complex> {
    (0.0..2.0 * PI).prop_map(|t| Complex::from_polar(1.0, t))
}
