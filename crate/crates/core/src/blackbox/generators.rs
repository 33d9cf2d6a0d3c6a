//! Built-in benchmark generators.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::dataset::{Dataset, Sample};
use super::truth_table::{TruthTable, MAX_TABLE_INPUTS};
use crate::error::{GpError, Result};
use crate::rng::{data_stream, derive_rng};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BooleanFamily {
    /// n-bit adder with carry-in: inputs a (n), b (n), cin; outputs sum (n), cout.
    Adder,
    /// n×n-bit multiplier: inputs a (n), b (n); outputs the 2n-bit product.
    Multiplier,
    /// Odd parity of n inputs.
    Parity,
    /// n-bit comparator: inputs a (n), b (n); outputs a<b, a=b, a>b.
    Comparator,
    /// k address bits selecting one of 2^k data inputs.
    Multiplexer,
    /// 1 iff more than half of the (odd) n inputs are set.
    Majority,
}

impl BooleanFamily {
    pub const ALL: [BooleanFamily; 6] = [
        BooleanFamily::Adder,
        BooleanFamily::Multiplier,
        BooleanFamily::Parity,
        BooleanFamily::Comparator,
        BooleanFamily::Multiplexer,
        BooleanFamily::Majority,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BooleanFamily::Adder => "adder",
            BooleanFamily::Multiplier => "multiplier",
            BooleanFamily::Parity => "parity",
            BooleanFamily::Comparator => "comparator",
            BooleanFamily::Multiplexer => "multiplexer",
            BooleanFamily::Majority => "majority",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// (inputs, outputs) for a size parameter, without the size-limit check.
    pub fn shape(self, size: usize) -> (usize, usize) {
        match self {
            BooleanFamily::Adder => (2 * size + 1, size + 1),
            BooleanFamily::Multiplier => (2 * size, 2 * size),
            BooleanFamily::Parity => (size, 1),
            BooleanFamily::Comparator => (2 * size, 3),
            BooleanFamily::Multiplexer => (size.saturating_add(1usize.checked_shl(size as u32).unwrap_or(usize::MAX)), 1),
            BooleanFamily::Majority => (size, 1),
        }
    }
}

pub fn gen_boolean(family: BooleanFamily, size: usize) -> Result<TruthTable> {
    if size == 0 {
        return Err(GpError::config(format!("{} needs a size of at least 1", family.name())));
    }
    if family == BooleanFamily::Majority && size.is_multiple_of(2) {
        return Err(GpError::config("majority needs an odd number of inputs"));
    }
    let (n_inputs, n_outputs) = family.shape(size);
    let name = format!("{}{}", family.name(), size);
    if n_inputs > MAX_TABLE_INPUTS {
        return Err(GpError::SizeLimit {
            what: name,
            requested: n_inputs,
            limit: MAX_TABLE_INPUTS,
        });
    }
    let n = size as u32;
    let mask = |bits: u32| (1u64 << bits) - 1;
    TruthTable::from_fn(name, n_inputs, n_outputs, |r| match family {
        BooleanFamily::Adder => {
            let a = r & mask(n);
            let b = (r >> n) & mask(n);
            let cin = (r >> (2 * n)) & 1;
            a + b + cin
        }
        BooleanFamily::Multiplier => (r & mask(n)) * ((r >> n) & mask(n)),
        BooleanFamily::Parity => u64::from(r.count_ones() % 2 == 1),
        BooleanFamily::Comparator => {
            let a = r & mask(n);
            let b = (r >> n) & mask(n);
            u64::from(a < b) | (u64::from(a == b) << 1) | (u64::from(a > b) << 2)
        }
        BooleanFamily::Multiplexer => {
            let addr = r & mask(n);
            (r >> (n as u64 + addr)) & 1
        }
        BooleanFamily::Majority => u64::from(r.count_ones() > n / 2),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegressionBenchmark {
    /// x^4 + x^3 + x^2 + x
    Koza1,
    /// x^5 - 2x^3 + x
    Koza2,
    /// x^6 - 2x^4 + x^2
    Koza3,
    /// Nguyen-1 through Nguyen-12.
    Nguyen(u8),
}

impl RegressionBenchmark {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "koza1" => Some(Self::Koza1),
            "koza2" => Some(Self::Koza2),
            "koza3" => Some(Self::Koza3),
            _ => {
                let k: u8 = name.strip_prefix("nguyen")?.parse().ok()?;
                (1..=12).contains(&k).then_some(Self::Nguyen(k))
            }
        }
    }

    pub fn name(self) -> String {
        match self {
            Self::Koza1 => "koza1".into(),
            Self::Koza2 => "koza2".into(),
            Self::Koza3 => "koza3".into(),
            Self::Nguyen(k) => format!("nguyen{k}"),
        }
    }

    pub fn all() -> Vec<Self> {
        let mut v = vec![Self::Koza1, Self::Koza2, Self::Koza3];
        v.extend((1..=12).map(Self::Nguyen));
        v
    }

    pub fn formula(self) -> &'static str {
        match self {
            Self::Koza1 => "x^4 + x^3 + x^2 + x",
            Self::Koza2 => "x^5 - 2x^3 + x",
            Self::Koza3 => "x^6 - 2x^4 + x^2",
            Self::Nguyen(1) => "x^3 + x^2 + x",
            Self::Nguyen(2) => "x^4 + x^3 + x^2 + x",
            Self::Nguyen(3) => "x^5 + x^4 + x^3 + x^2 + x",
            Self::Nguyen(4) => "x^6 + x^5 + x^4 + x^3 + x^2 + x",
            Self::Nguyen(5) => "sin(x^2) cos(x) - 1",
            Self::Nguyen(6) => "sin(x) + sin(x + x^2)",
            Self::Nguyen(7) => "log(x + 1) + log(x^2 + 1)",
            Self::Nguyen(8) => "sqrt(x)",
            Self::Nguyen(9) => "sin(x) + sin(y^2)",
            Self::Nguyen(10) => "2 sin(x) cos(y)",
            Self::Nguyen(11) => "x^y",
            Self::Nguyen(_) => "x^4 - x^3 + y^2/2 - y",
        }
    }

    pub fn n_inputs(self) -> usize {
        match self {
            Self::Nguyen(k) if k >= 9 => 2,
            _ => 1,
        }
    }

    pub fn default_range(self) -> (f64, f64) {
        match self {
            Self::Nguyen(7) => (0.0, 2.0),
            Self::Nguyen(8) => (0.0, 4.0),
            Self::Nguyen(k) if k >= 9 => (0.0, 1.0),
            _ => (-1.0, 1.0),
        }
    }

    pub fn target<T: Scalar>(self, x: &[T]) -> T {
        let c = |v: f64| T::from_f64_lossy(v);
        let p = |v: T, k: i32| v.powi(k);
        let x0 = x[0];
        let poly = |deg: i32| (1..=deg).map(|k| p(x0, k)).fold(T::zero(), |a, b| a + b);
        match self {
            Self::Koza1 => poly(4),
            Self::Koza2 => p(x0, 5) - c(2.0) * p(x0, 3) + x0,
            Self::Koza3 => p(x0, 6) - c(2.0) * p(x0, 4) + p(x0, 2),
            Self::Nguyen(1) => poly(3),
            Self::Nguyen(2) => poly(4),
            Self::Nguyen(3) => poly(5),
            Self::Nguyen(4) => poly(6),
            Self::Nguyen(5) => p(x0, 2).sin() * x0.cos() - T::one(),
            Self::Nguyen(6) => x0.sin() + (x0 + p(x0, 2)).sin(),
            Self::Nguyen(7) => (x0 + T::one()).ln() + (p(x0, 2) + T::one()).ln(),
            Self::Nguyen(8) => x0.sqrt(),
            Self::Nguyen(9) => x0.sin() + p(x[1], 2).sin(),
            Self::Nguyen(10) => c(2.0) * x0.sin() * x[1].cos(),
            Self::Nguyen(11) => x0.powf(x[1]),
            Self::Nguyen(_) => p(x0, 4) - p(x0, 3) + p(x[1], 2) / c(2.0) - x[1],
        }
    }
}

/// How inputs are drawn for a regression benchmark.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sampling {
    /// Closed sampling interval; `None` uses the benchmark's usual range.
    pub range: Option<(f64, f64)>,
    pub count: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            range: None,
            count: 20,
            seed: 0,
        }
    }
}

/// Samples inputs uniformly in the range and labels them with the benchmark function.
pub fn gen_regression<T: Scalar>(bench: RegressionBenchmark, sampling: &Sampling) -> Result<Dataset<T>> {
    if sampling.count == 0 {
        return Err(GpError::config("regression sampling needs count ≥ 1"));
    }
    let (lo, hi) = sampling.range.unwrap_or_else(|| bench.default_range());
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(GpError::config(format!("invalid sampling range [{lo}, {hi}]")));
    }
    let mut rng = derive_rng(sampling.seed, data_stream(0));
    let n = bench.n_inputs();
    let rows = (0..sampling.count)
        .map(|_| {
            let x: Vec<T> = (0..n)
                .map(|_| T::from_f64_lossy(if lo == hi { lo } else { rng.gen_range(lo..=hi) }))
                .collect();
            let y = vec![bench.target(&x)];
            Sample { x, y }
        })
        .collect();
    Dataset::new(bench.name(), n, 1, rows)
}
