//! Pairwise SLOCC verdicts.
//!
//! The only proof-strength rule is the residual-entanglement test: SLOCC
//! equivalent states have either both `tau = 0` or both `tau != 0`. D/F
//! vanishing-pattern differences are attached as heuristic flags only.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::criteria::{d_criteria, f_enumerate, f_value, F_MAX_QUBITS};
use crate::error::{Error, Result};
use crate::invariant::{invariant_report, InvariantReport};
use crate::slocc::{apply_chain, LocalOperatorChain};
use crate::statevec::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    ProvablyInequivalent,
    Undetermined,
    EquivalentByConstruction,
}

/// One compared quantity: its value on each state and whether it vanishes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub criterion: String,
    pub values: [Complex64; 2],
    pub vanishing: [bool; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub evidence: Vec<Evidence>,
    pub heuristic_flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<LocalOperatorChain>,
}

fn invariant_evidence(r1: &InvariantReport, r2: &InvariantReport, tol: f64) -> Vec<Evidence> {
    let (v1, v2) = (r1.vanishing(tol), r2.vanishing(tol));
    let real = |x: f64| Complex64::new(x, 0.0);
    let mut out = vec![Evidence {
        criterion: "tau".into(),
        values: [real(r1.tau), real(r2.tau)],
        vanishing: [v1.tau, v2.tau],
    }];
    out.push(Evidence {
        criterion: "iv_star".into(),
        values: [r1.iv_star, r2.iv_star],
        vanishing: [v1.iv_star, v2.iv_star],
    });
    if let (Some(a), Some(b), Some(va), Some(vb)) = (r1.odd_invariant, r2.odd_invariant, v1.odd_invariant, v2.odd_invariant) {
        out.push(Evidence {
            criterion: "odd_invariant".into(),
            values: [a, b],
            vanishing: [va, vb],
        });
    }
    out
}

fn heuristic_flags(s1: &StateVector, s2: &StateVector, tol: f64) -> Result<Vec<String>> {
    let n = s1.n();
    let thresholds = [s1, s2].map(|s| (tol * s.norm_sqr().max(1.0).powi(2)).powi(2));
    let vanish = |z: Complex64, k: usize| z.norm_sqr() <= thresholds[k];
    let mut flags = Vec::new();
    if n >= 4 {
        for (a, b) in d_criteria(s1)?.iter().zip(&d_criteria(s2)?) {
            for (k, (x, y)) in a.values().into_iter().zip(b.values()).enumerate() {
                let (vx, vy) = (vanish(x, 0), vanish(y, 1));
                if vx != vy {
                    flags.push(format!("D{}[{}]: vanishing {vx} vs {vy}", k + 1, a.i));
                }
            }
        }
    }
    if (3..=F_MAX_QUBITS).contains(&n) {
        let (a1, a2) = (s1.amplitudes(), s2.amplitudes());
        for t in f_enumerate(n)?.iter() {
            let (vx, vy) = (vanish(f_value(a1, t), 0), vanish(f_value(a2, t), 1));
            if vx != vy {
                let sub: [usize; 8] = (*t).into();
                flags.push(format!("F{sub:?}: vanishing {vx} vs {vy}"));
            }
        }
    }
    Ok(flags)
}

/// Compare two states of equal size. `ProvablyInequivalent` iff exactly one
/// of the two residual entanglements vanishes under `tol`.
pub fn compare(s1: &StateVector, s2: &StateVector, tol: f64) -> Result<Verdict> {
    if s1.n() != s2.n() {
        return Err(Error::SizeMismatch(format!(
            "cannot compare {}-qubit and {}-qubit states",
            s1.n(),
            s2.n()
        )));
    }
    let r1 = invariant_report(s1)?;
    let r2 = invariant_report(s2)?;
    let evidence = invariant_evidence(&r1, &r2, tol);
    let tau_differs = evidence[0].vanishing[0] != evidence[0].vanishing[1];
    Ok(Verdict {
        outcome: if tau_differs {
            Outcome::ProvablyInequivalent
        } else {
            Outcome::Undetermined
        },
        evidence,
        heuristic_flags: heuristic_flags(s1, s2, tol)?,
        witness: None,
    })
}

/// Whether `chain` maps `from` onto `to` within `tol` (relative to `to`'s
/// largest amplitude).
pub fn witness_holds(chain: &LocalOperatorChain, from: &StateVector, to: &StateVector, tol: f64) -> Result<bool> {
    if from.n() != to.n() {
        return Ok(false);
    }
    let image = apply_chain(chain, from)?;
    let scale = to.amplitudes().iter().map(|z| z.norm()).fold(1.0, f64::max);
    Ok(image
        .amplitudes()
        .iter()
        .zip(to.amplitudes())
        .all(|(x, y)| (x - y).norm() <= tol * scale))
}

/// As [`compare`], but first checks a candidate witness with
/// `s1 = witness(s2)`; a valid witness yields `EquivalentByConstruction`.
pub fn compare_with_witness(
    s1: &StateVector,
    s2: &StateVector,
    witness: &LocalOperatorChain,
    tol: f64,
) -> Result<Verdict> {
    let mut verdict = compare(s1, s2, tol)?;
    let invertible = witness.ops.iter().all(|op| op.det().norm() > 1e-12);
    if invertible && witness_holds(witness, s2, s1, tol)? {
        verdict.outcome = Outcome::EquivalentByConstruction;
        verdict.witness = Some(witness.clone());
    }
    Ok(verdict)
}

/// The complement state together with the `sigma_x`-on-every-qubit chain that
/// produces it.
pub fn dual_equivalence(s: &StateVector) -> (StateVector, LocalOperatorChain) {
    (s.complement(), LocalOperatorChain::pauli_x(s.n()))
}
