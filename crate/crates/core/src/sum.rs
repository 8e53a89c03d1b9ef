//! Compensated summation for complex accumulators.
//!
//! The invariants are sums of up to `2^(n-1)` products whose terms cancel
//! heavily on structured states, so plain left-to-right accumulation loses
//! digits. [`CompensatedSum`] implements Neumaier's variant of Kahan
//! summation independently on the real and imaginary parts.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Running compensated sum of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: Neumaier,
    im: Neumaier,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// Number of terms per chunk when a sum is split for parallel evaluation.
/// The chunking is the same whether or not the chunks run in parallel, so
/// the result depends only on the input.
pub(crate) const CHUNK_TERMS: usize = 1 << 15;

/// Threshold (in terms) above which chunks are evaluated on the rayon pool.
pub(crate) const PARALLEL_TERMS: usize = 1 << 18;

/// Sum `term(i)` for `i in 0..count` with a deterministic chunked
/// compensated reduction.
pub(crate) fn chunked_sum<F>(count: usize, term: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    use rayon::prelude::*;

    let chunk = |c: usize| -> Complex64 {
        let start = c * CHUNK_TERMS;
        let end = (start + CHUNK_TERMS).min(count);
        (start..end).map(&term).collect::<CompensatedSum>().value()
    };
    let chunks = count.div_ceil(CHUNK_TERMS);
    let partials: Vec<Complex64> = if count >= PARALLEL_TERMS {
        (0..chunks).into_par_iter().map(chunk).collect()
    } else {
        (0..chunks).map(chunk).collect()
    };
    partials.into_iter().collect::<CompensatedSum>().value()
}
