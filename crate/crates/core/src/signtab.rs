//! The recursive +/-1 orientation factors `sign(n, i)` and `sign*(n, i)`.
//!
//! `sign(2,0) = sign(3,0) = 1`. For `n >= 4` and `0 <= i < 2^(n-3)`:
//! the lower half `i < 2^(n-4)` copies `sign(n-1, i)`; the upper half mirrors
//! the lower one, `sign(n, i) = +/-sign(n, 2^(n-3)-1-i)` with `+` for odd
//! `n` and `-` for even `n`.
//!
//! `sign*(n, i)` extends the range to `2^(n-2)` by mirroring `sign(n, .)`
//! once more without a sign flip.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::statevec::MAX_QUBITS;

/// Number of valid indices of `sign(n, .)`.
pub fn sign_len(n: usize) -> usize {
    if n <= 3 {
        1
    } else {
        1usize << (n - 3)
    }
}

/// Number of valid indices of `sign*(n, .)`.
pub fn sign_star_len(n: usize) -> usize {
    1usize << (n.max(2) - 2)
}

fn check(n: usize, i: usize, len: usize) -> Result<()> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    if i >= len {
        return Err(Error::IndexOutOfRange { n, i, max: len - 1 });
    }
    Ok(())
}

/// Direct recursive evaluation of `sign(n, i)`.
pub fn sign(n: usize, i: usize) -> Result<i8> {
    check(n, i, sign_len(n))?;
    Ok(sign_rec(n, i))
}

fn sign_rec(n: usize, i: usize) -> i8 {
    if n <= 3 {
        return 1;
    }
    let quarter = 1usize << (n - 4);
    if i < quarter {
        sign_rec(n - 1, i)
    } else {
        let mirrored = sign_rec(n, (1usize << (n - 3)) - 1 - i);
        if n % 2 == 1 {
            mirrored
        } else {
            -mirrored
        }
    }
}

/// Direct recursive evaluation of `sign*(n, i)`.
pub fn sign_star(n: usize, i: usize) -> Result<i8> {
    check(n, i, sign_star_len(n))?;
    if n == 2 {
        return Ok(1);
    }
    let half = 1usize << (n - 3);
    if i < half {
        Ok(sign_rec(n, i))
    } else {
        Ok(sign_rec(n, (1usize << (n - 2)) - 1 - i))
    }
}

static SIGN_TABLES: [OnceLock<Arc<[i8]>>; MAX_QUBITS + 1] = [const { OnceLock::new() }; MAX_QUBITS + 1];

fn sign_values(n: usize) -> Arc<[i8]> {
    SIGN_TABLES[n]
        .get_or_init(|| {
            if n <= 3 {
                return Arc::from(vec![1i8]);
            }
            let prev = sign_values(n - 1);
            let mut v = Vec::with_capacity(prev.len() * 2);
            v.extend_from_slice(&prev);
            if n % 2 == 1 {
                v.extend(prev.iter().rev());
            } else {
                v.extend(prev.iter().rev().map(|s| -s));
            }
            Arc::from(v)
        })
        .clone()
}

/// A memoized `sign(n, .)` or `sign*(n, .)` table.
#[derive(Debug, Clone)]
pub struct SignTable {
    pub n: usize,
    pub star: bool,
    values: Arc<[i8]>,
}

impl SignTable {
    /// `sign(n, .)` for `n >= 2`. Tables are built once per `n` and shared.
    pub fn sign(n: usize) -> Result<Self> {
        check(n, 0, 1)?;
        Ok(Self {
            n,
            star: false,
            values: sign_values(n),
        })
    }

    /// `sign*(n, .)` for `n >= 2`. Stored via the `sign` table; entries in the
    /// mirrored half are resolved on lookup.
    pub fn sign_star(n: usize) -> Result<Self> {
        check(n, 0, 1)?;
        Ok(Self {
            n,
            star: true,
            values: sign_values(n),
        })
    }

    pub fn len(&self) -> usize {
        if self.star {
            sign_star_len(self.n)
        } else {
            sign_len(self.n)
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entry `i`; panics when out of range.
    #[inline]
    pub fn get(&self, i: usize) -> i8 {
        if !self.star {
            return self.values[i];
        }
        if self.n == 2 {
            assert_eq!(i, 0, "sign*(2, i) index out of range");
            return 1;
        }
        let half = self.values.len();
        if i < half {
            self.values[i]
        } else {
            self.values[2 * half - 1 - i]
        }
    }

    pub fn to_vec(&self) -> Vec<i8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize) -> Vec<i8> {
        SignTable::sign(n).unwrap().to_vec()
    }

    fn star(n: usize) -> Vec<i8> {
        SignTable::sign_star(n).unwrap().to_vec()
    }

    #[test]
    fn base_cases() {
        assert_eq!(sign(2, 0), Ok(1));
        assert_eq!(sign(3, 0), Ok(1));
        assert_eq!(sign_star(2, 0), Ok(1));
        assert_eq!(star(2), vec![1]);
        assert_eq!(star(3), vec![1, 1]);
    }

    #[test]
    fn known_patterns() {
        assert_eq!(table(4), vec![1, -1]);
        assert_eq!(table(5), vec![1, -1, -1, 1]);
        assert_eq!(table(6), vec![1, -1, -1, 1, -1, 1, 1, -1]);
        assert_eq!(star(4), vec![1, -1, -1, 1]);
    }

    #[test]
    fn range_errors() {
        assert!(matches!(sign(3, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(sign(2, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(sign(4, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(sign_star(4, 4), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(sign(1, 0), Err(Error::QubitCount { .. })));
        assert!(SignTable::sign(31).is_err());
    }

    #[test]
    fn memoized_matches_recursive() {
        for n in 2..=16 {
            let t = SignTable::sign(n).unwrap();
            for i in 0..sign_len(n) {
                assert_eq!(t.get(i), sign(n, i).unwrap(), "sign({n},{i})");
            }
            let t = SignTable::sign_star(n).unwrap();
            for i in 0..sign_star_len(n) {
                assert_eq!(t.get(i), sign_star(n, i).unwrap(), "sign*({n},{i})");
            }
        }
    }

    #[test]
    fn symmetry_properties() {
        for n in 4..=16 {
            let t = table(n);
            let m = t.len();
            if n % 2 == 0 {
                for i in 0..m {
                    assert_eq!(t[i], -t[m - 1 - i]);
                }
                assert_eq!(t.iter().map(|&s| s as i64).sum::<i64>(), 0);
            } else {
                for i in m / 2..m {
                    assert_eq!(t[i], t[m - 1 - i]);
                }
            }
            let s = star(n);
            assert_eq!(&s[..m], &t[..]);
        }
    }

    #[test]
    fn star_of_previous_matches_sign_for_odd_n() {
        for n in [5, 7, 9] {
            for i in 0..sign_len(n) {
                assert_eq!(sign_star(n - 1, i).unwrap(), sign(n, i).unwrap());
            }
        }
    }
}
