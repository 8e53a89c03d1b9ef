//! n-qubit pure-state amplitude vectors.
//!
//! Basis label `i` is read as a binary string with qubit 1 in the most
//! significant bit, so the lower half of the array holds the amplitudes with
//! qubit 1 in `|0>` and the upper half those with qubit 1 in `|1>`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Hard upper bound on the qubit count (2^30 amplitudes = 16 GiB).
pub const MAX_QUBITS: usize = 30;

/// Tolerance on `|sum |a_i|^2 - 1|` for the `normalized` flag.
pub const NORM_TOL: f64 = 1e-12;

/// An immutable n-qubit state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
    normalized: bool,
}

impl StateVector {
    /// Build a state from raw amplitudes. The `normalized` flag is computed
    /// from the data; the amplitudes are not rescaled.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        let expected = 1usize << n;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                n,
                expected,
                got: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("amplitudes"));
        }
        let s = Self::from_parts(n, amplitudes);
        if s.norm_sqr() == 0.0 {
            return Err(Error::AllZero);
        }
        Ok(s)
    }

    /// Infallible constructor for internally produced amplitude arrays whose
    /// length is already known to be `2^n`.
    pub(crate) fn from_parts(n: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << n);
        let normalized = (norm_sqr_of(&amps) - 1.0).abs() <= NORM_TOL;
        Self {
            n,
            amps,
            normalized,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `sum_i |a_i|^2`.
    pub fn norm_sqr(&self) -> f64 {
        norm_sqr_of(&self.amps)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Divide by the Euclidean norm. States already within `1e-15` of unit
    /// norm are returned unchanged.
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::AllZero);
        }
        if (norm - 1.0).abs() <= 1e-15 {
            return Ok(Self {
                n: self.n,
                amps: self.amps.clone(),
                normalized: true,
            });
        }
        let amps = self.amps.iter().map(|z| z / norm).collect();
        Ok(Self {
            n: self.n,
            amps,
            normalized: true,
        })
    }

    /// Multiply every amplitude by `c`.
    pub fn scale(&self, c: Complex64) -> Result<Self> {
        Self::new(self.n, self.amps.iter().map(|z| z * c).collect())
    }

    /// `(|0...0> + |1...1>) / sqrt(2)`.
    pub fn ghz(n: usize) -> Result<Self> {
        check_n(n, 1)?;
        let len = 1usize << n;
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        let h = std::f64::consts::FRAC_1_SQRT_2;
        amps[0] = Complex64::new(h, 0.0);
        amps[len - 1] += Complex64::new(h, 0.0);
        Ok(Self::from_parts(n, amps))
    }

    /// Equal superposition of the `n` single-excitation basis states.
    pub fn w(n: usize) -> Result<Self> {
        check_n(n, 2)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n];
        let c = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        for k in 0..n {
            amps[1usize << k] = c;
        }
        Ok(Self::from_parts(n, amps))
    }

    /// The 4-qubit state `(|3>+|5>+|6>+|9>+|10>+|12>)/sqrt(6)`.
    pub fn cluster_c() -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 16];
        let c = Complex64::new(1.0 / 6f64.sqrt(), 0.0);
        for i in [3, 5, 6, 9, 10, 12] {
            amps[i] = c;
        }
        Self::from_parts(4, amps)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_n(n, 1)?;
        let len = 1usize << n;
        if index >= len {
            return Err(Error::IndexOutOfRange {
                n,
                i: index,
                max: len - 1,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self::from_parts(n, amps))
    }

    /// Seeded random normalized state; real and imaginary parts are drawn
    /// uniformly from `[-1, 1]` before normalization.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(n, &mut rng)
    }

    /// As [`StateVector::random`], drawing from a caller-supplied generator.
    pub fn random_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_n(n, 1)?;
        loop {
            let amps: Vec<Complex64> = (0..1usize << n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
                .collect();
            let norm = norm_sqr_of(&amps).sqrt();
            if norm > 0.0 {
                let amps = amps.into_iter().map(|z| z / norm).collect();
                return Ok(Self::from_parts(n, amps));
            }
        }
    }

    /// Tensor product; `self`'s qubits come first (most significant).
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        let mut amps = Vec::with_capacity(1usize << n);
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Ok(Self::from_parts(n, amps))
    }

    /// Move the amplitude at `i` to `(2^n - 1) XOR i`, i.e. apply sigma_x to
    /// every qubit.
    pub fn complement(&self) -> Self {
        let mask = (1usize << self.n) - 1;
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, z) in self.amps.iter().enumerate() {
            amps[i ^ mask] = *z;
        }
        Self {
            n: self.n,
            amps,
            normalized: self.normalized,
        }
    }
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    Ok(())
}

pub(crate) fn norm_sqr_of(amps: &[Complex64]) -> f64 {
    amps.iter().map(|z| z.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn new_state_flags() {
        let s = StateVector::new(1, vec![c(1.0), c(0.0)]).unwrap();
        assert!(s.is_normalized());
        let s = StateVector::new(2, vec![c(1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        assert!(!s.is_normalized());
        let s = StateVector::new(2, vec![c(0.5); 4]).unwrap();
        assert!(s.is_normalized());
    }

    #[test]
    fn new_state_errors() {
        assert!(matches!(
            StateVector::new(2, vec![c(1.0); 3]),
            Err(Error::LengthMismatch { expected: 4, got: 3, .. })
        ));
        assert_eq!(StateVector::new(1, vec![c(0.0); 2]), Err(Error::AllZero));
        assert!(matches!(
            StateVector::new(0, vec![c(1.0)]),
            Err(Error::QubitCount { .. })
        ));
        assert_eq!(
            StateVector::new(1, vec![c(f64::NAN), c(1.0)]),
            Err(Error::NonFinite("amplitudes"))
        );
    }

    #[test]
    fn normalize_examples() {
        let s = StateVector::new(2, vec![c(1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        let t = s.normalize().unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((t.amplitudes()[0].re - h).abs() < 1e-16);
        assert!((t.amplitudes()[3].re - h).abs() < 1e-16);
        assert!(t.is_normalized());

        let u = StateVector::new(1, vec![c(2.0), c(0.0)]).unwrap().normalize().unwrap();
        assert_eq!(u.amplitudes(), &[c(1.0), c(0.0)]);

        let g = StateVector::ghz(3).unwrap();
        assert_eq!(g.normalize().unwrap().amplitudes(), g.amplitudes());
    }

    #[test]
    fn ghz_examples() {
        let h = c(std::f64::consts::FRAC_1_SQRT_2);
        for (n, last) in [(3, 7), (2, 3), (6, 63)] {
            let g = StateVector::ghz(n).unwrap();
            assert_eq!(g.amplitudes()[0], h);
            assert_eq!(g.amplitudes()[last], h);
            let nonzero = g.amplitudes().iter().filter(|z| z.norm() > 0.0).count();
            assert_eq!(nonzero, 2);
        }
        assert_eq!(StateVector::ghz(1).unwrap().amplitudes()[1], h);
    }

    #[test]
    fn w_examples() {
        let w3 = StateVector::w(3).unwrap();
        for i in 0..8 {
            let expect = if [1, 2, 4].contains(&i) { 1.0 / 3f64.sqrt() } else { 0.0 };
            assert_eq!(w3.amplitudes()[i], c(expect));
        }
        let w4 = StateVector::w(4).unwrap();
        for i in [1, 2, 4, 8] {
            assert_eq!(w4.amplitudes()[i], c(0.5));
        }
        assert!(StateVector::w(1).is_err());
    }

    #[test]
    fn cluster_and_named_states_are_normalized() {
        let cl = StateVector::cluster_c();
        assert!((cl.norm() - 1.0).abs() < 1e-12);
        for n in 2..=10 {
            assert!((StateVector::ghz(n).unwrap().norm() - 1.0).abs() < 1e-12);
            assert!((StateVector::w(n).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tensor_examples() {
        let g2 = StateVector::ghz(2).unwrap();
        let t = g2.tensor(&g2).unwrap();
        assert_eq!(t.n(), 4);
        for (i, z) in t.amplitudes().iter().enumerate() {
            let expect = if [0, 3, 12, 15].contains(&i) { 0.5 } else { 0.0 };
            assert!((z.re - expect).abs() < 1e-15 && z.im == 0.0);
        }

        let g3 = StateVector::ghz(3).unwrap();
        let t = g3.tensor(&g3).unwrap();
        let support: Vec<usize> = (0..64).filter(|&i| t.amplitudes()[i].norm() > 0.0).collect();
        assert_eq!(support, vec![0, 7, 56, 63]);

        let zero = StateVector::basis(1, 0).unwrap();
        let s = StateVector::random(3, 5).unwrap();
        let t = zero.tensor(&s).unwrap();
        assert_eq!(&t.amplitudes()[..8], s.amplitudes());
        assert!(t.amplitudes()[8..].iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn complement_examples() {
        let s = StateVector::basis(3, 1).unwrap().complement();
        assert_eq!(s.amplitudes()[6], c(1.0));
        let g = StateVector::ghz(5).unwrap();
        assert_eq!(g.complement(), g);
        let w = StateVector::w(3).unwrap().complement();
        for i in 0..8 {
            let expect = if [3, 5, 6].contains(&i) { 1.0 / 3f64.sqrt() } else { 0.0 };
            assert_eq!(w.amplitudes()[i], c(expect));
        }
    }

    #[test]
    fn random_is_deterministic_and_normalized() {
        let a = StateVector::random(4, 42).unwrap();
        let b = StateVector::random(4, 42).unwrap();
        assert_eq!(a, b);
        assert!((a.norm() - 1.0).abs() < 1e-12);
        let one = StateVector::random(1, 7).unwrap();
        assert_eq!(one.amplitudes().len(), 2);
        assert!((one.norm() - 1.0).abs() < 1e-12);
        assert_ne!(StateVector::random(4, 43).unwrap(), a);
    }
}
