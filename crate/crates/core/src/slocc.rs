//! Local operators `alpha (x) beta (x) gamma (x) ...` and the theorem harness.
//!
//! Two states are SLOCC equivalent when one is obtained from the other by an
//! n-fold tensor product of invertible 2x2 operators. [`apply_chain`]
//! applies such a product one qubit at a time without building the
//! `2^n x 2^n` matrix.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant::{iv_star, odd_invariant};
use crate::statevec::StateVector;

/// Minimum `|det|` accepted by [`random_chain`].
pub const MIN_RANDOM_DET: f64 = 0.1;

/// Amplitude count above which the per-qubit sweep runs on the rayon pool.
const PARALLEL_LEN: usize = 1 << 16;

/// A 2x2 complex operator stored row-major: `[[o1, o2], [o3, o4]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LocalOperator(pub [Complex64; 4]);

impl LocalOperator {
    pub fn new(o1: Complex64, o2: Complex64, o3: Complex64, o4: Complex64) -> Self {
        Self([o1, o2, o3, o4])
    }

    pub fn identity() -> Self {
        Self::diag(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn pauli_x() -> Self {
        let (z, o) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        Self([z, o, o, z])
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self([d1, z, z, d2])
    }

    pub fn det(&self) -> Complex64 {
        let [a, b, c, d] = self.0;
        a * d - b * c
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &LocalOperator) -> LocalOperator {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        Self([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn scale(&self, k: Complex64) -> LocalOperator {
        Self(self.0.map(|z| z * k))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Ordered operators; position `k` acts on qubit `k + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalOperatorChain {
    pub ops: Vec<LocalOperator>,
}

impl LocalOperatorChain {
    pub fn new(ops: Vec<LocalOperator>) -> Self {
        Self { ops }
    }

    pub fn uniform(n: usize, op: LocalOperator) -> Self {
        Self { ops: vec![op; n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::uniform(n, LocalOperator::identity())
    }

    /// `sigma_x` on every qubit.
    pub fn pauli_x(n: usize) -> Self {
        Self::uniform(n, LocalOperator::pauli_x())
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Per-qubit products `self[k] * first[k]`: the chain equal to applying
    /// `first` and then `self`.
    pub fn after(&self, first: &LocalOperatorChain) -> Result<LocalOperatorChain> {
        if self.len() != first.len() {
            return Err(Error::SizeMismatch(format!(
                "cannot compose chains of length {} and {}",
                self.len(),
                first.len()
            )));
        }
        Ok(Self::new(
            self.ops.iter().zip(&first.ops).map(|(d, c)| d.mul(c)).collect(),
        ))
    }

    pub fn dets(&self) -> Vec<Complex64> {
        self.ops.iter().map(LocalOperator::det).collect()
    }
}

/// Product of the per-qubit determinants.
pub fn det_product(chain: &LocalOperatorChain) -> Complex64 {
    chain.ops.iter().map(LocalOperator::det).product()
}

#[inline]
fn mix(op: &LocalOperator, x0: &mut Complex64, x1: &mut Complex64) {
    let [a, b, c, d] = op.0;
    let (y0, y1) = (*x0, *x1);
    *x0 = a * y0 + b * y1;
    *x1 = c * y0 + d * y1;
}

fn apply_qubit(amps: &mut [Complex64], n: usize, qubit: usize, op: &LocalOperator) {
    // qubit 0 is the most significant bit
    let stride = 1usize << (n - 1 - qubit);
    let block = 2 * stride;
    if amps.len() < PARALLEL_LEN {
        for blk in amps.chunks_mut(block) {
            let (lo, hi) = blk.split_at_mut(stride);
            for (x0, x1) in lo.iter_mut().zip(hi.iter_mut()) {
                mix(op, x0, x1);
            }
        }
    } else if stride >= 4096 {
        for blk in amps.chunks_mut(block) {
            let (lo, hi) = blk.split_at_mut(stride);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .with_min_len(4096)
                .for_each(|(x0, x1)| mix(op, x0, x1));
        }
    } else {
        let per_task = (4096 / block).max(1) * block;
        amps.par_chunks_mut(per_task).for_each(|chunk| {
            for blk in chunk.chunks_mut(block) {
                let (lo, hi) = blk.split_at_mut(stride);
                for (x0, x1) in lo.iter_mut().zip(hi.iter_mut()) {
                    mix(op, x0, x1);
                }
            }
        });
    }
}

/// Apply `chain[0] (x) chain[1] (x) ...` to `s`, sweeping qubit 1 to n.
pub fn apply_chain(chain: &LocalOperatorChain, s: &StateVector) -> Result<StateVector> {
    if chain.len() != s.n() {
        return Err(Error::LengthMismatch {
            n: s.n(),
            expected: s.n(),
            got: chain.len(),
        });
    }
    let mut amps = s.amplitudes().to_vec();
    for (q, op) in chain.ops.iter().enumerate() {
        apply_qubit(&mut amps, s.n(), q, op);
    }
    StateVector::new(s.n(), amps)
}

fn random_entry<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// Draw one operator with entries uniform in `[-1,1] + i[-1,1]`, redrawing
/// until `|det| >= 0.1`. With `unit_det` the operator is divided by the
/// principal square root of its determinant.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, unit_det: bool) -> LocalOperator {
    loop {
        let op = LocalOperator([
            random_entry(rng),
            random_entry(rng),
            random_entry(rng),
            random_entry(rng),
        ]);
        let det = op.det();
        if det.norm() < MIN_RANDOM_DET {
            continue;
        }
        return if unit_det { op.scale(det.sqrt().inv()) } else { op };
    }
}

pub fn random_chain_with<R: Rng + ?Sized>(n: usize, rng: &mut R, unit_det: bool) -> LocalOperatorChain {
    LocalOperatorChain::new((0..n).map(|_| random_operator(rng, unit_det)).collect())
}

/// Seeded random invertible chain of length `n`.
pub fn random_chain(n: usize, seed: u64, unit_det: bool) -> LocalOperatorChain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_chain_with(n, &mut rng, unit_det)
}

/// Below this magnitude the harness switches to an absolute comparison.
pub const REL_FLOOR: f64 = 1e-14;
/// Absolute bound applied to both sides when `|IV(a)| < REL_FLOOR`.
pub const ABS_BOUND: f64 = 1e-12;

/// Outcome of a theorem verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub theorem: u8,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub max_rel_error: f64,
    pub worst_trial: usize,
}

/// `|lhs - rhs| / |lhs|`, or an absolute check when `|lhs|` is tiny.
pub fn relative_error(lhs: Complex64, rhs: Complex64) -> f64 {
    if lhs.norm() < REL_FLOOR {
        if rhs.norm() < ABS_BOUND && lhs.norm() < ABS_BOUND {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (lhs - rhs).norm() / lhs.norm()
    }
}

fn run_trials<F>(theorem: u8, n: usize, trials: usize, seed: u64, trial: F) -> Result<VerifyReport>
where
    F: Fn(&StateVector, &LocalOperatorChain) -> Result<f64> + Sync,
{
    let errors: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
            let b = StateVector::random_with(n, &mut rng)?;
            let chain = random_chain_with(n, &mut rng, false);
            trial(&b, &chain)
        })
        .collect::<Result<_>>()?;
    let (worst_trial, max_rel_error) = errors
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0f64), |(wi, we), (i, e)| if e > we || e.is_nan() { (i, e) } else { (wi, we) });
    Ok(VerifyReport {
        theorem,
        n,
        trials,
        seed,
        max_rel_error,
        worst_trial,
    })
}

/// Check `IV*(a,n) = IV*(b,n) * prod det` on random `(b, chain)` pairs with
/// `a = chain(b)`. Trial `t` draws from a generator seeded with `seed + t`.
pub fn verify_theorem1(n: usize, trials: usize, seed: u64) -> Result<VerifyReport> {
    if n % 2 == 1 || n < 2 {
        return Err(Error::Parity {
            op: "verify_theorem1",
            requirement: "even n >= 2",
            n,
        });
    }
    run_trials(1, n, trials, seed, |b, chain| {
        let a = apply_chain(chain, b)?;
        Ok(relative_error(iv_star(&a)?, iv_star(b)? * det_product(chain)))
    })
}

/// Check the odd invariant picks up `prod det^2` on random pairs.
pub fn verify_theorem2(n: usize, trials: usize, seed: u64) -> Result<VerifyReport> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::Parity {
            op: "verify_theorem2",
            requirement: "odd n >= 3",
            n,
        });
    }
    run_trials(2, n, trials, seed, |b, chain| {
        let a = apply_chain(chain, b)?;
        let d = det_product(chain);
        Ok(relative_error(odd_invariant(&a)?, odd_invariant(b)? * d * d))
    })
}
