//! D-criteria and F-criteria: degree-4 polynomial families whose vanishing
//! patterns are used as classification evidence.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::StateVector;

/// Largest n for which the F tuple list is enumerated (62160 tuples at n=6;
/// n=7 already has over 1.3 million).
pub const F_MAX_QUBITS: usize = 6;

/// The three D values of block `i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DCriterion {
    pub i: usize,
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
}

impl DCriterion {
    pub fn values(&self) -> [Complex64; 3] {
        [self.d1, self.d2, self.d3]
    }
}

/// `D_1^(i), D_2^(i), D_3^(i)` for `i in 0..2^(n-4)`.
pub fn d_criteria(s: &StateVector) -> Result<Vec<DCriterion>> {
    let n = s.n();
    if n < 4 {
        return Err(Error::TooFewQubits {
            op: "d_criteria",
            min: 4,
            n,
        });
    }
    let a = s.amplitudes();
    let top = a.len();
    let out = (0..1usize << (n - 4))
        .map(|i| {
            // lo(k) = a_{k+8i}, hi(k) = a_{2^n-8i-k}
            let lo = |k: usize| a[k + 8 * i];
            let hi = |k: usize| a[top - 8 * i - k];
            let d1 = (lo(1) * lo(4) - lo(0) * lo(5)) * (hi(5) * hi(2) - hi(6) * hi(1))
                - (lo(3) * lo(6) - lo(2) * lo(7)) * (hi(7) * hi(4) - hi(8) * hi(3));
            let d2 = (lo(4) * lo(7) - lo(5) * lo(6)) * (hi(8) * hi(5) - hi(7) * hi(6))
                - (lo(0) * lo(3) - lo(1) * lo(2)) * (hi(4) * hi(1) - hi(3) * hi(2));
            let d3 = (lo(3) * lo(5) - lo(1) * lo(7)) * (hi(6) * hi(4) - hi(8) * hi(2))
                - (lo(2) * lo(4) - lo(0) * lo(6)) * (hi(5) * hi(3) - hi(7) * hi(1));
            DCriterion { i, d1, d2, d3 }
        })
        .collect();
    Ok(out)
}

/// Subscripts `(i,j,k,l,p,q,r,s)` of one F expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 8]", into = "[usize; 8]")]
pub struct FSubscripts {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
}

impl From<[usize; 8]> for FSubscripts {
    fn from([i, j, k, l, p, q, r, s]: [usize; 8]) -> Self {
        Self { i, j, k, l, p, q, r, s }
    }
}

impl From<FSubscripts> for [usize; 8] {
    fn from(t: FSubscripts) -> Self {
        [t.i, t.j, t.k, t.l, t.p, t.q, t.r, t.s]
    }
}

impl FSubscripts {
    pub fn sum(&self) -> usize {
        self.i + self.j
    }

    /// Subscript shift used by the expression: 1 for odd `i+j`, 2 otherwise.
    pub fn shift(&self) -> usize {
        if self.sum() % 2 == 1 {
            1
        } else {
            2
        }
    }

    /// Every ordering, sum, XOR and range condition for an n-qubit state,
    /// including the shifted subscripts `j-d, l+d, q-d, s+d`.
    pub fn is_valid(&self, n: usize) -> bool {
        let len = 1usize << n;
        let t = self;
        let ordered = t.i < t.j && t.k < t.l && t.p < t.q && t.r < t.s && t.i < t.k && t.k < t.p && t.p < t.r;
        let sum = t.i + t.j;
        let xor = t.i ^ t.j;
        let sums = t.k + t.l == sum && t.p + t.q == sum && t.r + t.s == sum;
        let xors = t.k ^ t.l == xor && t.p ^ t.q == xor && t.r ^ t.s == xor;
        let d = self.shift();
        let in_range = [t.i, t.j, t.k, t.l, t.p, t.q, t.r, t.s].iter().all(|&x| x < len)
            && t.j >= d
            && t.q >= d
            && t.l + d < len
            && t.s + d < len;
        ordered && sums && xors && in_range
    }
}

static F_CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<FSubscripts>>>>> = OnceLock::new();

/// All valid F subscript tuples for `n` qubits, ordered by `(i+j, i, k, p, r)`.
pub fn f_enumerate(n: usize) -> Result<Arc<Vec<FSubscripts>>> {
    if n < 3 {
        return Err(Error::TooFewQubits {
            op: "f_enumerate",
            min: 3,
            n,
        });
    }
    if n > F_MAX_QUBITS {
        return Err(Error::EnumerationTooLarge { n, max: F_MAX_QUBITS });
    }
    let cache = F_CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().expect("F cache poisoned").get(&n) {
        return Ok(v.clone());
    }
    let list = Arc::new(enumerate_uncached(n));
    cache.write().expect("F cache poisoned").insert(n, list.clone());
    Ok(list)
}

fn enumerate_uncached(n: usize) -> Vec<FSubscripts> {
    let len = 1usize << n;
    // Pairs (x, y), x < y, grouped by (x+y, x^y); each group sorted by x.
    let mut groups: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for x in 0..len {
        for y in x + 1..len {
            groups.entry((x + y, x ^ y)).or_default().push((x, y));
        }
    }
    let mut out = Vec::new();
    for pairs in groups.values() {
        let m = pairs.len();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for d in c + 1..m {
                        let t = FSubscripts {
                            i: pairs[a].0,
                            j: pairs[a].1,
                            k: pairs[b].0,
                            l: pairs[b].1,
                            p: pairs[c].0,
                            q: pairs[c].1,
                            r: pairs[d].0,
                            s: pairs[d].1,
                        };
                        if t.is_valid(n) {
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|t| (t.sum(), t.i, t.k, t.p, t.r));
    out
}

/// `(a_i a_j + a_k a_l - a_p a_q - a_r a_s)^2 - 4 (a_i a_{j-d} - a_p a_{q-d})(a_k a_{l+d} - a_r a_{s+d})`
/// with `d = 1` for odd `i+j` and `d = 2` otherwise.
pub fn f_evaluate(s: &StateVector, t: &FSubscripts) -> Result<Complex64> {
    if !t.is_valid(s.n()) {
        let len = 1usize << s.n();
        let worst = [t.i, t.j, t.k, t.l, t.p, t.q, t.r, t.s, t.l + t.shift(), t.s + t.shift()]
            .into_iter()
            .max()
            .unwrap_or(0);
        return Err(Error::IndexOutOfRange {
            n: s.n(),
            i: worst,
            max: len - 1,
        });
    }
    Ok(f_value(s.amplitudes(), t))
}

#[inline]
pub(crate) fn f_value(a: &[Complex64], t: &FSubscripts) -> Complex64 {
    let d = t.shift();
    let head = a[t.i] * a[t.j] + a[t.k] * a[t.l] - a[t.p] * a[t.q] - a[t.r] * a[t.s];
    let left = a[t.i] * a[t.j - d] - a[t.p] * a[t.q - d];
    let right = a[t.k] * a[t.l + d] - a[t.r] * a[t.s + d];
    head * head - 4.0 * left * right
}

/// Which criterion families to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriteriaSet {
    D,
    F,
    All,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DEntry {
    #[serde(flatten)]
    pub values: DCriterion,
    pub vanishing: [bool; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FEntry {
    pub subscripts: FSubscripts,
    pub value: Complex64,
    pub vanishing: bool,
}

/// All requested D/F values of one state with their vanishing flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaSignature {
    pub n: usize,
    pub tol: f64,
    pub d_values: Vec<DEntry>,
    pub f_values: Vec<FEntry>,
    /// Note on which F tuples are included.
    pub f_rule: String,
}

pub const F_RULE_NOTE: &str = "F tuples whose shifted subscripts (j-d, l+d, q-d, s+d; d=1 for odd i+j, d=2 otherwise) fall outside [0, 2^n-1] are excluded";

/// Evaluate the requested families. D entries need `n >= 4`; for `n = 3`
/// only F entries are produced. F entries need `n <= F_MAX_QUBITS`.
pub fn criteria_signature(s: &StateVector, set: CriteriaSet, tol: f64) -> Result<CriteriaSignature> {
    let ns = s.norm_sqr();
    let threshold = tol * ns.max(1.0).powi(2);
    let vanish = |z: Complex64| z.norm() <= threshold;
    let want_d = matches!(set, CriteriaSet::D | CriteriaSet::All);
    let want_f = matches!(set, CriteriaSet::F | CriteriaSet::All);

    let d_values = if want_d && s.n() >= 4 {
        d_criteria(s)?
            .into_iter()
            .map(|d| DEntry {
                vanishing: d.values().map(vanish),
                values: d,
            })
            .collect()
    } else if set == CriteriaSet::D {
        return Err(Error::TooFewQubits {
            op: "d_criteria",
            min: 4,
            n: s.n(),
        });
    } else {
        Vec::new()
    };

    let f_values = if want_f && s.n() >= 3 {
        let a = s.amplitudes();
        f_enumerate(s.n())?
            .iter()
            .map(|t| {
                let value = f_value(a, t);
                FEntry {
                    subscripts: *t,
                    value,
                    vanishing: vanish(value),
                }
            })
            .collect()
    } else {
        Vec::new()
    };

    Ok(CriteriaSignature {
        n: s.n(),
        tol,
        d_values,
        f_values,
        f_rule: F_RULE_NOTE.to_string(),
    })
}

impl CriteriaSignature {
    /// Flattened `(label, vanishing)` pairs in a stable order.
    pub fn pattern(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        for d in &self.d_values {
            for (k, v) in d.vanishing.iter().enumerate() {
                out.push((format!("D{}[{}]", k + 1, d.values.i), *v));
            }
        }
        for f in &self.f_values {
            let t: [usize; 8] = f.subscripts.into();
            out.push((format!("F{t:?}"), f.vanishing));
        }
        out
    }
}
