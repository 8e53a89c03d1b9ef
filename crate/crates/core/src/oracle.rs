//! Hand-transcribed invariant expressions for n = 2..6.
//!
//! Every index is written out literally. Nothing here goes through
//! `signtab` or `invariant`, so these serve as an independent check on the
//! general sign-driven formulas.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleLabel {
    Iv2,
    Iv3Main,
    Iv3Alt1,
    Iv3Alt2,
    Iv4,
    AStar5,
    Iv6,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleValue {
    pub label: OracleLabel,
    pub value: Complex64,
}

/// Which printed 3-qubit form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Odd3Form {
    Main,
    Alt1,
    Alt2,
}

fn amps(s: &StateVector, n: usize, op: &str) -> Result<Vec<Complex64>> {
    if s.n() != n {
        return Err(Error::SizeMismatch(format!("{op} needs n = {n}, got {}", s.n())));
    }
    Ok(s.amplitudes().to_vec())
}

/// `a0 a3 - a1 a2`.
pub fn oracle_iv2(s: &StateVector) -> Result<Complex64> {
    let a = amps(s, 2, "oracle_iv2")?;
    Ok(a[0] * a[3] - a[1] * a[2])
}

pub fn oracle_odd3(s: &StateVector, form: Odd3Form) -> Result<Complex64> {
    let a = amps(s, 3, "oracle_odd3")?;
    let v = match form {
        Odd3Form::Main => {
            let x = (a[0] * a[7] - a[1] * a[6]) - (a[2] * a[5] - a[3] * a[4]);
            x * x - 4.0 * (a[0] * a[3] - a[1] * a[2]) * (a[4] * a[7] - a[5] * a[6])
        }
        Odd3Form::Alt1 => {
            let x = (a[0] * a[7] - a[3] * a[4]) + (a[1] * a[6] - a[2] * a[5]);
            x * x - 4.0 * (a[3] * a[5] - a[1] * a[7]) * (a[2] * a[4] - a[0] * a[6])
        }
        Odd3Form::Alt2 => {
            let x = a[0] * a[7] - a[3] * a[4] - (a[1] * a[6] - a[2] * a[5]);
            x * x - 4.0 * (a[1] * a[4] - a[0] * a[5]) * (a[3] * a[6] - a[2] * a[7])
        }
    };
    Ok(v)
}

pub fn oracle_iv4(s: &StateVector) -> Result<Complex64> {
    let a = amps(s, 4, "oracle_iv4")?;
    Ok((a[0] * a[15] - a[1] * a[14]) + (a[6] * a[9] - a[7] * a[8])
        - (a[2] * a[13] - a[3] * a[12])
        - (a[4] * a[11] - a[5] * a[10]))
}

/// The printed 5-qubit `A*`.
pub fn oracle_odd5(s: &StateVector) -> Result<Complex64> {
    let a = amps(s, 5, "oracle_odd5")?;
    let bar = -(a[2] * a[29] - a[3] * a[28] - a[12] * a[19] + a[13] * a[18])
        - (a[4] * a[27] - a[5] * a[26] - a[10] * a[21] + a[11] * a[20])
        + (a[0] * a[31] - a[1] * a[30] - a[14] * a[17] + a[15] * a[16])
        + (a[6] * a[25] - a[7] * a[24] - a[8] * a[23] + a[9] * a[22]);
    let lower = (a[0] * a[15] - a[1] * a[14]) + (a[6] * a[9] - a[7] * a[8])
        - (a[2] * a[13] - a[3] * a[12])
        - (a[4] * a[11] - a[5] * a[10]);
    let upper = (a[16] * a[31] - a[17] * a[30]) + (a[22] * a[25] - a[23] * a[24])
        - (a[18] * a[29] - a[19] * a[28])
        - (a[20] * a[27] - a[21] * a[26]);
    Ok(bar * bar - 4.0 * lower * upper)
}

/// The printed 16-term `IV(a,6)`.
pub fn oracle_iv6(s: &StateVector) -> Result<Complex64> {
    let a = amps(s, 6, "oracle_iv6")?;
    let p = |x: usize, y: usize, u: usize, v: usize| a[x] * a[y] - a[u] * a[v];
    Ok(p(0, 63, 1, 62) + p(30, 33, 31, 32) - p(2, 61, 3, 60) - p(28, 35, 29, 34)
        - p(4, 59, 5, 58) - p(26, 37, 27, 36) + p(6, 57, 7, 56) + p(24, 39, 25, 38)
        - p(8, 55, 9, 54) - p(22, 41, 23, 40) + p(10, 53, 11, 52) + p(20, 43, 21, 42)
        + p(12, 51, 13, 50) + p(18, 45, 19, 44) - p(14, 49, 15, 48) - p(16, 47, 17, 46))
}

/// Every oracle applicable to `s.n()`.
pub fn oracle_values(s: &StateVector) -> Vec<OracleValue> {
    let mut out = Vec::new();
    let mut push = |label, v: Result<Complex64>| {
        if let Ok(value) = v {
            out.push(OracleValue { label, value });
        }
    };
    match s.n() {
        2 => push(OracleLabel::Iv2, oracle_iv2(s)),
        3 => {
            push(OracleLabel::Iv3Main, oracle_odd3(s, Odd3Form::Main));
            push(OracleLabel::Iv3Alt1, oracle_odd3(s, Odd3Form::Alt1));
            push(OracleLabel::Iv3Alt2, oracle_odd3(s, Odd3Form::Alt2));
        }
        4 => push(OracleLabel::Iv4, oracle_iv4(s)),
        5 => push(OracleLabel::AStar5, oracle_odd5(s)),
        6 => push(OracleLabel::Iv6, oracle_iv6(s)),
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::{iv_star, odd_invariant};
    use crate::slocc::{apply_chain, det_product, random_chain};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
    }

    #[test]
    fn named_state_values() {
        assert!((oracle_iv4(&StateVector::ghz(4).unwrap()).unwrap() - c(0.5)).norm() < 1e-15);
        assert!((oracle_iv4(&StateVector::cluster_c()).unwrap() - c(0.5)).norm() < 1e-15);
        assert!((oracle_iv6(&StateVector::ghz(6).unwrap()).unwrap() - c(0.5)).norm() < 1e-15);
        let g3 = StateVector::ghz(3).unwrap();
        assert_eq!(oracle_iv6(&g3.tensor(&g3).unwrap()).unwrap().norm(), 0.0);
        for form in [Odd3Form::Main, Odd3Form::Alt1, Odd3Form::Alt2] {
            assert!((oracle_odd3(&g3, form).unwrap() - c(0.25)).norm() < 1e-15);
        }
        assert_eq!(oracle_odd3(&StateVector::w(3).unwrap(), Odd3Form::Main).unwrap(), c(0.0));
        assert!((oracle_odd5(&StateVector::ghz(5).unwrap()).unwrap() - c(0.25)).norm() < 1e-15);
        let zero = StateVector::basis(1, 0).unwrap();
        let p = zero.tensor(&StateVector::ghz(4).unwrap()).unwrap();
        assert_eq!(oracle_odd5(&p).unwrap(), c(0.0));
    }

    #[test]
    fn size_mismatch() {
        let g = StateVector::ghz(5).unwrap();
        assert!(matches!(oracle_iv4(&g), Err(Error::SizeMismatch(_))));
        assert!(matches!(oracle_iv6(&g), Err(Error::SizeMismatch(_))));
        assert!(matches!(oracle_odd3(&g, Odd3Form::Main), Err(Error::SizeMismatch(_))));
        assert!(oracle_odd5(&g).is_ok());
    }

    #[test]
    fn agrees_with_general_formulas() {
        for seed in 0..1000 {
            let s2 = StateVector::random(2, seed).unwrap();
            assert!(rel(oracle_iv2(&s2).unwrap(), iv_star(&s2).unwrap()) <= 1e-13);
            let s3 = StateVector::random(3, seed).unwrap();
            let main = oracle_odd3(&s3, Odd3Form::Main).unwrap();
            assert!(rel(main, odd_invariant(&s3).unwrap()) <= 1e-13);
            let s4 = StateVector::random(4, seed).unwrap();
            assert!(rel(oracle_iv4(&s4).unwrap(), iv_star(&s4).unwrap()) <= 1e-13);
            let s5 = StateVector::random(5, seed).unwrap();
            assert!(rel(oracle_odd5(&s5).unwrap(), odd_invariant(&s5).unwrap()) <= 1e-12);
            let s6 = StateVector::random(6, seed).unwrap();
            assert!(rel(oracle_iv6(&s6).unwrap(), iv_star(&s6).unwrap()) <= 1e-12);
        }
    }

    #[test]
    fn three_qubit_forms_agree_pointwise() {
        for seed in 0..1000 {
            let s = StateVector::random(3, seed).unwrap();
            let main = oracle_odd3(&s, Odd3Form::Main).unwrap();
            for form in [Odd3Form::Alt1, Odd3Form::Alt2] {
                assert!(rel(main, oracle_odd3(&s, form).unwrap()) <= 1e-13, "seed {seed}");
            }
        }
    }

    #[test]
    fn oracles_obey_transform_laws() {
        for seed in 0..50 {
            let check = |n: usize, f: &dyn Fn(&StateVector) -> Complex64, power: i32| {
                let b = StateVector::random(n, seed).unwrap();
                let chain = random_chain(n, seed + 1000, false);
                let a = apply_chain(&chain, &b).unwrap();
                let d = det_product(&chain).powi(power);
                assert!(rel(f(&a), f(&b) * d) <= 1e-9, "n = {n}, seed = {seed}");
            };
            check(2, &|s| oracle_iv2(s).unwrap(), 1);
            check(4, &|s| oracle_iv4(s).unwrap(), 1);
            check(6, &|s| oracle_iv6(s).unwrap(), 1);
            check(5, &|s| oracle_odd5(s).unwrap(), 2);
            for form in [Odd3Form::Main, Odd3Form::Alt1, Odd3Form::Alt2] {
                check(3, &|s| oracle_odd3(s, form).unwrap(), 2);
            }
        }
    }

    #[test]
    fn values_by_qubit_count() {
        assert_eq!(oracle_values(&StateVector::ghz(3).unwrap()).len(), 3);
        assert_eq!(oracle_values(&StateVector::ghz(7).unwrap()).len(), 0);
        assert_eq!(oracle_values(&StateVector::ghz(6).unwrap())[0].label, OracleLabel::Iv6);
    }
}
