//! SLOCC invariants and residual entanglement.
//!
//! Even `n`: `IV*(a,n)` is a degree-2 polynomial that picks up the product
//! of the local determinants under `alpha (x) beta (x) ...`, and
//! `tau = 2 |IV*|`.
//!
//! Odd `n`: the combination `IVbar(a,n)^2 - 4 IV*(a,n-1) IV*_{+2^(n-1)}(a,n-1)`
//! picks up the product of squared determinants, and `tau = 4 |.|`. Here
//! `IV*(a,n-1)` is taken over the lower half of the array (qubit 1 in `|0>`)
//! and the shifted term is the same polynomial over the upper half.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signtab::SignTable;
use crate::statevec::StateVector;
use crate::sum::chunked_sum;

/// Default tolerance of the vanishing predicate.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Whether a homogeneous polynomial value of the given degree is zero
/// relative to the state's scale: `|v| <= tol * max(1, sum |a_i|^2)^(degree/2)`.
pub fn is_vanishing(value: f64, degree: u32, norm_sqr: f64, tol: f64) -> bool {
    let scale = norm_sqr.max(1.0).powf(degree as f64 / 2.0);
    value.abs() <= tol * scale
}

#[inline]
fn signed(s: i8, z: Complex64) -> Complex64 {
    if s > 0 {
        z
    } else {
        -z
    }
}

/// `IV*` over an amplitude slice of length `2^m`, `m >= 2`.
pub(crate) fn iv_star_slice(a: &[Complex64]) -> Complex64 {
    let m = a.len().trailing_zeros() as usize;
    debug_assert!(m >= 2 && a.len() == 1 << m);
    let table = SignTable::sign_star(m).expect("m checked by caller");
    let last = a.len() - 1;
    chunked_sum(a.len() / 4, |i| {
        let t = a[2 * i] * a[last - 2 * i] - a[2 * i + 1] * a[last - 1 - 2 * i];
        signed(table.get(i), t)
    })
}

/// Shared body of the two-bracket sums over `sign(n, .)`; `outer` is `+1`
/// for the even-n form and `-1` for `IVbar`.
fn two_bracket_sum(a: &[Complex64], n: usize, outer: f64) -> Complex64 {
    let table = SignTable::sign(n).expect("n checked by caller");
    let last = a.len() - 1;
    let half = a.len() / 2;
    chunked_sum(table.len(), |i| {
        let first = a[2 * i] * a[last - 2 * i] - a[2 * i + 1] * a[last - 1 - 2 * i];
        let second = a[half - 2 - 2 * i] * a[half + 1 + 2 * i] - a[half - 1 - 2 * i] * a[half + 2 * i];
        signed(table.get(i), first + second * outer)
    })
}

fn require_n(op: &'static str, s: &StateVector, min: usize) -> Result<()> {
    if s.n() < min {
        return Err(Error::TooFewQubits { op, min, n: s.n() });
    }
    Ok(())
}

fn require_odd(op: &'static str, s: &StateVector) -> Result<()> {
    if s.n().is_multiple_of(2) || s.n() < 3 {
        return Err(Error::Parity {
            op,
            requirement: "odd n >= 3",
            n: s.n(),
        });
    }
    Ok(())
}

/// `IV*(a,n) = sum_i sign*(n,i) (a_{2i} a_{2^n-1-2i} - a_{2i+1} a_{2^n-2-2i})`.
pub fn iv_star(s: &StateVector) -> Result<Complex64> {
    require_n("iv_star", s, 2)?;
    Ok(iv_star_slice(s.amplitudes()))
}

/// The `sign(n, .)`-indexed two-bracket form of the even-n invariant.
/// Agrees with [`iv_star`] as a polynomial.
pub fn iv_even(s: &StateVector) -> Result<Complex64> {
    if s.n() % 2 == 1 || s.n() < 4 {
        return Err(Error::Parity {
            op: "iv_even",
            requirement: "even n >= 4",
            n: s.n(),
        });
    }
    Ok(two_bracket_sum(s.amplitudes(), s.n(), 1.0))
}

/// `IVbar(a,n)` for odd `n >= 3`.
pub fn iv_bar(s: &StateVector) -> Result<Complex64> {
    require_odd("iv_bar", s)?;
    Ok(two_bracket_sum(s.amplitudes(), s.n(), -1.0))
}

/// `IV*(a,n-1)` on the lower half of an odd-n state.
pub fn iv_star_lower(s: &StateVector) -> Result<Complex64> {
    require_odd("iv_star_lower", s)?;
    let half = s.amplitudes().len() / 2;
    Ok(iv_star_slice(&s.amplitudes()[..half]))
}

/// `IV*_{+2^(n-1)}(a,n-1)`: `IV*(a,n-1)` with `2^(n-1)` added to every
/// subscript, i.e. evaluated on the upper half of the array.
pub fn iv_star_shifted(s: &StateVector) -> Result<Complex64> {
    require_odd("iv_star_shifted", s)?;
    let half = s.amplitudes().len() / 2;
    Ok(iv_star_slice(&s.amplitudes()[half..]))
}

/// `IVbar^2 - 4 IV*(lower) IV*(shifted upper)` for odd `n >= 3`.
pub fn odd_invariant(s: &StateVector) -> Result<Complex64> {
    let bar = iv_bar(s)?;
    let lower = iv_star_lower(s)?;
    let upper = iv_star_shifted(s)?;
    Ok(bar * bar - 4.0 * lower * upper)
}

/// Residual entanglement: `2|IV*|` for even `n`, `4|odd invariant|` for odd.
pub fn tau(s: &StateVector) -> Result<f64> {
    require_n("tau", s, 2)?;
    if s.n().is_multiple_of(2) {
        Ok(2.0 * iv_star(s)?.norm())
    } else {
        Ok(4.0 * odd_invariant(s)?.norm())
    }
}

/// Polynomial degree of `tau` in the amplitudes.
pub fn tau_degree(n: usize) -> u32 {
    if n.is_multiple_of(2) {
        2
    } else {
        4
    }
}

/// Whether `tau(s)` vanishes under the shared tolerance rule.
pub fn tau_vanishes(s: &StateVector, tol: f64) -> Result<bool> {
    Ok(is_vanishing(tau(s)?, tau_degree(s.n()), s.norm_sqr(), tol))
}

/// Parity-dependent invariant values of one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub n: usize,
    pub parity: Parity,
    pub norm_sqr: f64,
    /// `IV*(a,n)` for even n; `IV*(a,n-1)` of the lower half for odd n.
    pub iv_star: Complex64,
    pub iv_bar: Option<Complex64>,
    pub iv_star_shifted: Option<Complex64>,
    pub odd_invariant: Option<Complex64>,
    pub tau: f64,
}

/// Vanishing flags for the fields of an [`InvariantReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantVanishing {
    pub iv_star: bool,
    pub iv_bar: Option<bool>,
    pub iv_star_shifted: Option<bool>,
    pub odd_invariant: Option<bool>,
    pub tau: bool,
}

pub fn invariant_report(s: &StateVector) -> Result<InvariantReport> {
    require_n("invariant_report", s, 2)?;
    let report = match Parity::of(s.n()) {
        Parity::Even => {
            let iv = iv_star(s)?;
            InvariantReport {
                n: s.n(),
                parity: Parity::Even,
                norm_sqr: s.norm_sqr(),
                iv_star: iv,
                iv_bar: None,
                iv_star_shifted: None,
                odd_invariant: None,
                tau: 2.0 * iv.norm(),
            }
        }
        Parity::Odd => {
            let bar = iv_bar(s)?;
            let lower = iv_star_lower(s)?;
            let upper = iv_star_shifted(s)?;
            let odd = bar * bar - 4.0 * lower * upper;
            InvariantReport {
                n: s.n(),
                parity: Parity::Odd,
                norm_sqr: s.norm_sqr(),
                iv_star: lower,
                iv_bar: Some(bar),
                iv_star_shifted: Some(upper),
                odd_invariant: Some(odd),
                tau: 4.0 * odd.norm(),
            }
        }
    };
    Ok(report)
}

impl InvariantReport {
    pub fn vanishing(&self, tol: f64) -> InvariantVanishing {
        let v = |z: Complex64, deg| is_vanishing(z.norm(), deg, self.norm_sqr, tol);
        InvariantVanishing {
            iv_star: v(self.iv_star, 2),
            iv_bar: self.iv_bar.map(|z| v(z, 2)),
            iv_star_shifted: self.iv_star_shifted.map(|z| v(z, 2)),
            odd_invariant: self.odd_invariant.map(|z| v(z, 4)),
            tau: is_vanishing(self.tau, tau_degree(self.n), self.norm_sqr, tol),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn state(n: usize, amps: &[(usize, f64)]) -> StateVector {
        let mut v = vec![c(0.0); 1 << n];
        for &(i, x) in amps {
            v[i] = c(x);
        }
        StateVector::new(n, v).unwrap()
    }

    #[test]
    fn iv_star_examples() {
        assert!(close(iv_star(&StateVector::ghz(4).unwrap()).unwrap(), c(0.5), 1e-15));
        assert!(close(iv_star(&StateVector::cluster_c()).unwrap(), c(0.5), 1e-15));
        assert!(close(iv_star(&StateVector::ghz(2).unwrap()).unwrap(), c(0.5), 1e-15));
        assert!(matches!(
            iv_star(&StateVector::basis(1, 0).unwrap()),
            Err(Error::TooFewQubits { .. })
        ));
    }

    #[test]
    fn iv_star_small_n_literal() {
        // n=2: a0a3 - a1a2; n=3: (a0a7 - a1a6) + (a2a5 - a3a4)
        let s = StateVector::random(2, 3).unwrap();
        let a = s.amplitudes();
        assert!(close(iv_star(&s).unwrap(), a[0] * a[3] - a[1] * a[2], 1e-15));
        let s = StateVector::random(3, 3).unwrap();
        let a = s.amplitudes();
        let expect = (a[0] * a[7] - a[1] * a[6]) + (a[2] * a[5] - a[3] * a[4]);
        assert!(close(iv_star(&s).unwrap(), expect, 1e-15));
    }

    #[test]
    fn iv_even_examples() {
        assert!(close(iv_even(&StateVector::ghz(4).unwrap()).unwrap(), c(0.5), 1e-15));
        assert!(close(iv_even(&StateVector::ghz(6).unwrap()).unwrap(), c(0.5), 1e-15));
        for seed in 0..1000 {
            let s = StateVector::random(6, seed).unwrap();
            let a = iv_even(&s).unwrap();
            let b = iv_star(&s).unwrap();
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-3), "seed {seed}");
        }
        assert!(matches!(iv_even(&StateVector::ghz(5).unwrap()), Err(Error::Parity { .. })));
        assert!(matches!(iv_even(&StateVector::ghz(2).unwrap()), Err(Error::Parity { .. })));
    }

    #[test]
    fn iv_bar_examples() {
        assert!(close(iv_bar(&StateVector::ghz(3).unwrap()).unwrap(), c(0.5), 1e-15));
        assert_eq!(iv_bar(&StateVector::w(3).unwrap()).unwrap(), c(0.0));
        assert!(close(iv_bar(&StateVector::ghz(5).unwrap()).unwrap(), c(0.5), 1e-15));
        assert!(matches!(iv_bar(&StateVector::ghz(4).unwrap()), Err(Error::Parity { .. })));
    }

    #[test]
    fn iv_star_shifted_examples() {
        let s = StateVector::random(3, 11).unwrap();
        let a = s.amplitudes();
        assert!(close(iv_star_shifted(&s).unwrap(), a[4] * a[7] - a[5] * a[6], 1e-15));
        assert_eq!(iv_star_shifted(&StateVector::ghz(3).unwrap()).unwrap(), c(0.0));
        assert_eq!(iv_star_shifted(&StateVector::ghz(5).unwrap()).unwrap(), c(0.0));
    }

    #[test]
    fn odd_invariant_examples() {
        assert!(close(odd_invariant(&StateVector::ghz(3).unwrap()).unwrap(), c(0.25), 1e-15));
        assert_eq!(odd_invariant(&StateVector::w(3).unwrap()).unwrap(), c(0.0));
        assert!(close(odd_invariant(&StateVector::ghz(5).unwrap()).unwrap(), c(0.25), 1e-15));
        assert!(odd_invariant(&StateVector::ghz(4).unwrap()).is_err());
    }

    #[test]
    fn tau_examples() {
        for n in 2..=10 {
            assert!((tau(&StateVector::ghz(n).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        }
        for n in 3..=10 {
            assert!(tau(&StateVector::w(n).unwrap()).unwrap() < 1e-12);
        }
        assert!((tau(&StateVector::cluster_c()).unwrap() - 1.0).abs() < 1e-12);
        let g2 = StateVector::ghz(2).unwrap();
        let g3 = StateVector::ghz(3).unwrap();
        assert!((tau(&g2.tensor(&g2).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        assert!(tau(&g3.tensor(&g3).unwrap()).unwrap() < 1e-12);
        let zero = StateVector::basis(1, 0).unwrap();
        for n in 2..=7 {
            let s = StateVector::random(n, n as u64).unwrap();
            assert!(tau(&zero.tensor(&s).unwrap()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn report_examples() {
        let r = invariant_report(&StateVector::ghz(4).unwrap()).unwrap();
        assert_eq!(r.parity, Parity::Even);
        assert!(close(r.iv_star, c(0.5), 1e-15));
        assert!((r.tau - 1.0).abs() < 1e-15);
        assert!(r.iv_bar.is_none() && r.odd_invariant.is_none());

        let r = invariant_report(&StateVector::ghz(3).unwrap()).unwrap();
        assert_eq!(r.parity, Parity::Odd);
        assert!(close(r.iv_bar.unwrap(), c(0.5), 1e-15));
        assert_eq!(r.iv_star, c(0.0));
        assert_eq!(r.iv_star_shifted, Some(c(0.0)));
        assert!(close(r.odd_invariant.unwrap(), c(0.25), 1e-15));
        assert!((r.tau - 1.0).abs() < 1e-15);
        let v = r.vanishing(DEFAULT_TOL);
        assert!(v.iv_star && !v.tau && v.iv_star_shifted == Some(true));

        let r = invariant_report(&StateVector::w(4).unwrap()).unwrap();
        assert_eq!(r.iv_star, c(0.0));
        assert_eq!(r.tau, 0.0);
        assert!(r.vanishing(DEFAULT_TOL).tau);
    }

    #[test]
    fn vanishing_rule_scales_with_norm() {
        assert!(is_vanishing(5e-11, 2, 1.0, 1e-10));
        assert!(!is_vanishing(2e-10, 2, 1.0, 1e-10));
        assert!(is_vanishing(2e-10, 2, 4.0, 1e-10));
        assert!(!is_vanishing(5e-10, 4, 2.0, 1e-10));
        assert!(is_vanishing(3e-10, 4, 2.0, 1e-10));
        // norms below one do not shrink the threshold
        assert!(is_vanishing(5e-11, 4, 1e-6, 1e-10));
    }

    #[test]
    fn cancellation_heavy_state_is_clean_zero() {
        // Product state |+>^n: every IV* term cancels in pairs.
        for n in [4, 6, 8, 10] {
            let amp = (1.0 / (1usize << n) as f64).sqrt();
            let s = StateVector::new(n, vec![c(amp); 1 << n]).unwrap();
            assert!(iv_star(&s).unwrap().norm() <= 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn tau_scaling_law(n in 2usize..=7, seed in any::<u64>(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
            let cst = Complex64::new(re, im);
            prop_assume!(cst.norm() > 0.05);
            let s = StateVector::random(n, seed).unwrap();
            let t = tau(&s).unwrap();
            let scaled = tau(&s.scale(cst).unwrap()).unwrap();
            let factor = if n % 2 == 0 { cst.norm_sqr() } else { cst.norm_sqr().powi(2) };
            prop_assert!((scaled - factor * t).abs() <= 1e-12 * factor.max(1.0));
        }

        #[test]
        fn tau_bounded_on_normalized_states(n in 2usize..=9, seed in any::<u64>()) {
            let s = StateVector::random(n, seed).unwrap();
            prop_assert!(tau(&s).unwrap() <= 1.0 + 1e-9);
            prop_assert!(iv_star(&s).unwrap().norm() <= 0.5 + 1e-9);
        }

        #[test]
        fn tau_complement_invariant(n in 2usize..=9, seed in any::<u64>()) {
            let s = StateVector::random(n, seed).unwrap();
            let a = tau(&s).unwrap();
            let b = tau(&s.complement()).unwrap();
            prop_assert!((a - b).abs() <= 1e-12);
        }

        #[test]
        fn iv_even_equals_iv_star(n in prop::sample::select(vec![4usize, 6, 8]), seed in any::<u64>()) {
            let s = StateVector::random(n, seed).unwrap();
            let a = iv_even(&s).unwrap();
            let b = iv_star(&s).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-3));
        }
    }

    #[test]
    fn literal_support_examples() {
        // a0 a15 only: IV* = a0 a15
        let s = state(4, &[(0, 0.6), (15, 0.8)]);
        assert!(close(iv_star(&s).unwrap(), c(0.48), 1e-15));
    }
}
