//! Analytically known transform/original pairs used by `invert-test` and the
//! inversion self-check suite.

use asianpx_core::{Complex64, LaplaceTransform, Result};

/// `1/(z−a) ↔ e^{at}`.
pub struct ExpPair {
    pub a: f64,
}

impl ExpPair {
    pub fn original(&self, t: f64) -> f64 {
        (self.a * t).exp()
    }
}

impl LaplaceTransform for ExpPair {
    fn validity_abscissa(&self) -> f64 {
        self.a
    }
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(1.0 / (z - self.a))
    }
}

/// `1/z² ↔ t`.
pub struct RampPair;

impl RampPair {
    pub fn original(&self, t: f64) -> f64 {
        t
    }
}

impl LaplaceTransform for RampPair {
    fn validity_abscissa(&self) -> f64 {
        0.0
    }
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(1.0 / (z * z))
    }
}

/// `1/(z(z−b)) ↔ (e^{bt}−1)/b`.
pub struct ExpRatioPair {
    pub b: f64,
}

impl ExpRatioPair {
    pub fn original(&self, t: f64) -> f64 {
        if self.b.abs() < 1e-300 {
            t
        } else {
            ((self.b * t).exp() - 1.0) / self.b
        }
    }
}

impl LaplaceTransform for ExpRatioPair {
    fn validity_abscissa(&self) -> f64 {
        self.b.max(0.0)
    }
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(1.0 / (z * (z - self.b)))
    }
}
