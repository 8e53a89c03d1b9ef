//! JSON file formats.
//!
//! State file: `{"n": 3, "amplitudes": [[re, im], ...]}` with exactly `2^n`
//! entries in index order.
//!
//! Operator file: `{"ops": [[[re,im],[re,im],[re,im],[re,im]], ...]}`, one
//! row-major 2x2 operator per qubit.
//!
//! All floats are written with 17 significant digits so that a write/read
//! cycle reproduces every amplitude bit for bit.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::slocc::{LocalOperator, LocalOperatorChain};
use crate::statevec::StateVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl From<&StateVector> for StateFile {
    fn from(s: &StateVector) -> Self {
        Self {
            n: s.n(),
            amplitudes: s.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<StateFile> for StateVector {
    type Error = Error;

    fn try_from(f: StateFile) -> Result<Self> {
        if f.amplitudes.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("amplitudes"));
        }
        let amps = f.amplitudes.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        StateVector::new(f.n, amps)
    }
}

pub fn parse_state(json: &str) -> Result<StateVector> {
    let f: StateFile = serde_json::from_str(json)?;
    f.try_into()
}

pub fn state_to_json(s: &StateVector) -> String {
    to_json(&StateFile::from(s))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OpsFile {
    ops: Vec<[[f64; 2]; 4]>,
}

pub fn parse_ops(json: &str) -> Result<LocalOperatorChain> {
    let f: OpsFile = serde_json::from_str(json)?;
    if f.ops.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("operators"));
    }
    Ok(LocalOperatorChain::new(
        f.ops
            .into_iter()
            .map(|m| LocalOperator(m.map(|[re, im]| Complex64::new(re, im))))
            .collect(),
    ))
}

pub fn ops_to_json(chain: &LocalOperatorChain) -> String {
    let f = OpsFile {
        ops: chain.ops.iter().map(|op| op.0.map(|z| [z.re, z.im])).collect(),
    };
    to_json(&f)
}

/// Wraps a serde_json formatter so floats are written as `{:.16e}`
/// (17 significant digits). Non-finite values become `null`.
pub struct PreciseFormatter<F>(pub F);

macro_rules! delegate {
    ($($name:ident $(($arg:ident: $ty:ty))?),* $(,)?) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)?) -> io::Result<()> {
                self.0.$name(w $(, $arg)?)
            }
        )*
    };
}

impl<F: Formatter> Formatter for PreciseFormatter<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    delegate!(
        begin_array,
        end_array,
        begin_array_value(first: bool),
        end_array_value,
        begin_object,
        end_object,
        begin_object_key(first: bool),
        begin_object_value,
        end_object_value,
    );
}

fn write_with<T: Serialize + ?Sized, F: Formatter>(value: &T, f: F) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PreciseFormatter(f));
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Compact JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    write_with(value, CompactFormatter)
}

/// Indented JSON with 17-significant-digit floats.
pub fn to_json_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    write_with(value, PrettyFormatter::new())
}
