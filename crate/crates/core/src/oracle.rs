//! Plaintext references: closed forms in double precision, a fixed-point
//! simulation with the protocols' encode and truncate rules, and the
//! comparison report with the versioned per-protocol tolerances.

use std::fmt;

use crate::activations::{ExpConstants, TAYLOR_TERMS};
use crate::error::{Error, Result};
use crate::fixed::FixedPointParams;
use crate::protocol::Protocol;
use crate::runtime::ProtocolConfig;
use crate::sim::PlainMatrix;

/// Bumped whenever a tolerance below changes.
pub const TOLERANCE_VERSION: u32 = 1;

/// A sample passes iff `|got - expected| <= abs + rel * |expected|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0 }
    }

    pub fn admits(&self, expected: f64, got: f64) -> bool {
        (got - expected).abs() <= self.abs + self.rel * expected.abs()
    }
}

/// Tolerance of protocol outputs against [`real_oracle`], in units of the
/// fixed-point resolution where absolute.
pub fn tolerance(protocol: Protocol, config: &ProtocolConfig) -> Tolerance {
    let ulp = config.fixed().ulp();
    let (abs_ulps, rel) = match protocol {
        Protocol::TaylorExp => (8.0, 0.0),
        Protocol::Exp => (2.0, 0.01),
        Protocol::Sigmoid | Protocol::Softmax => (4.0, 0.01),
        Protocol::Tanh => (8.0, 0.01),
        Protocol::DSigmoid => (4.0, 0.02),
        Protocol::DTanh => (16.0, 0.02),
        Protocol::Division | Protocol::MatMul => (4.0, 0.0),
    };
    Tolerance {
        abs: abs_ulps * ulp,
        rel,
    }
}

fn single(protocol: Protocol, inputs: &[PlainMatrix]) -> Result<&[PlainMatrix]> {
    if inputs.len() != protocol.arity() {
        return Err(Error::Usage(format!(
            "{protocol} takes {} input(s), got {}",
            protocol.arity(),
            inputs.len()
        )));
    }
    for pair in inputs.windows(2) {
        let same = (pair[0].rows, pair[0].cols) == (pair[1].rows, pair[1].cols);
        if protocol == Protocol::Division && !same {
            return Err(Error::Usage("division operands differ in shape".into()));
        }
        if protocol == Protocol::MatMul && pair[0].cols != pair[1].rows {
            return Err(Error::Usage("mat_mul inner dimensions differ".into()));
        }
    }
    Ok(inputs)
}

/// The five-term series `1 + x + x^2/2 + x^3/6 + x^4/24`.
pub fn taylor5(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for i in 1..TAYLOR_TERMS {
        term *= x / i as f64;
        sum += term;
    }
    sum
}

fn sigmoid(x: f64) -> f64 {
    x.exp() / (1.0 + x.exp())
}

/// Closed-form outputs in double precision. `name` is a protocol name
/// (`taylor5` selects the series, not `e^x`).
pub fn real_oracle(name: &str, inputs: &[PlainMatrix]) -> Result<PlainMatrix> {
    real(Protocol::from_name(name)?, inputs)
}

pub fn real(protocol: Protocol, inputs: &[PlainMatrix]) -> Result<PlainMatrix> {
    let inputs = single(protocol, inputs)?;
    let x = &inputs[0];
    let map = |f: fn(f64) -> f64| PlainMatrix {
        rows: x.rows,
        cols: x.cols,
        data: x.data.iter().map(|&v| f(v)).collect(),
    };
    let out = match protocol {
        Protocol::TaylorExp => map(taylor5),
        Protocol::Exp => map(f64::exp),
        Protocol::Sigmoid => map(sigmoid),
        Protocol::DSigmoid => map(|v| sigmoid(v) * (1.0 - sigmoid(v))),
        Protocol::Tanh => map(f64::tanh),
        Protocol::DTanh => map(|v| 1.0 - v.tanh().powi(2)),
        Protocol::Softmax => {
            let mut data = Vec::with_capacity(x.data.len());
            for row in x.data.chunks(x.cols.max(1)) {
                let top = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let e: Vec<f64> = row.iter().map(|&v| (v - top).exp()).collect();
                let s: f64 = e.iter().sum();
                data.extend(e.iter().map(|v| v / s));
            }
            PlainMatrix { data, ..x.clone() }
        }
        Protocol::Division => {
            let y = &inputs[1];
            let data = x.data.iter().zip(&y.data).map(|(a, b)| a / b).collect();
            PlainMatrix { data, ..x.clone() }
        }
        Protocol::MatMul => {
            let y = &inputs[1];
            let (m, n, v) = (x.rows, x.cols, y.cols);
            let mut data = vec![0.0; m * v];
            for i in 0..m {
                for k in 0..n {
                    for j in 0..v {
                        data[i * v + j] += x.data[i * n + k] * y.data[k * v + j];
                    }
                }
            }
            PlainMatrix::new(m, v, data)?
        }
    };
    Ok(out)
}

/// Deterministic fixed-point arithmetic on signed raw values, with every
/// intermediate checked against the ring's signed range.
struct FixedSim {
    fixed: FixedPointParams,
    int_bits: u32,
    limit: i128,
}

impl FixedSim {
    fn new(config: &ProtocolConfig) -> Result<Self> {
        let fixed = FixedPointParams::new(config.frac_bits, config.width)?;
        let bits = config.width.bits();
        let limit = if bits >= 128 { i128::MAX } else { (1i128 << (bits - 1)) - 1 };
        Ok(FixedSim {
            fixed,
            int_bits: config.int_bits,
            limit,
        })
    }

    fn f(&self) -> u32 {
        self.fixed.frac_bits()
    }

    fn one(&self) -> i128 {
        1 << self.f()
    }

    fn check(&self, v: Option<i128>, what: &str) -> Result<i128> {
        match v {
            Some(v) if v.abs() <= self.limit => Ok(v),
            _ => Err(Error::Range(format!(
                "{what} overflows the {}-bit ring",
                self.fixed.width().bits()
            ))),
        }
    }

    fn encode(&self, x: f64) -> Result<i128> {
        let raw = self.fixed.encode_raw(x)?;
        Ok(self.fixed.width().to_signed(raw))
    }

    fn decode(&self, v: i128) -> f64 {
        v as f64 / (self.f() as f64).exp2()
    }

    fn add(&self, a: i128, b: i128) -> Result<i128> {
        self.check(a.checked_add(b), "sum")
    }

    fn mul(&self, a: i128, b: i128) -> Result<i128> {
        let p = self.check(a.checked_mul(b), "product")?;
        Ok(p >> self.f())
    }

    fn taylor(&self, x: i128) -> Result<i128> {
        let mut acc = self.add(self.one(), x)?;
        let mut num = x;
        let mut den = 1i128;
        for i in 2..TAYLOR_TERMS as i128 {
            num = self.mul(num, x)?;
            den *= i;
            acc = self.add(acc, num.div_euclid(den))?;
        }
        Ok(acc)
    }

    fn exp(&self, x: i128) -> Result<i128> {
        let f = self.f();
        let int = x >> f;
        if x < 0 || int >= 1i128 << self.int_bits {
            return Err(Error::Range(format!(
                "exponent {} outside [0, 2^{})",
                self.decode(x),
                self.int_bits
            )));
        }
        let table = ExpConstants::new(&self.fixed, self.int_bits)?.table;
        let mut prod = self.one();
        for (i, &e) in table.iter().enumerate() {
            if (int >> i) & 1 == 1 {
                prod = self.mul(prod, self.fixed.width().to_signed(e))?;
            }
        }
        let frac = x - (int << f);
        self.mul(prod, self.taylor(frac)?)
    }

    /// Floor of `x * 2^f / y`; saturates like the protocol when `y = 0`.
    fn div(&self, x: i128, y: i128) -> Result<i128> {
        let f = self.f();
        if x < 0 || y < 0 {
            return Err(Error::Range("division needs nonnegative operands".into()));
        }
        if y == 0 {
            return Ok((1i128 << (2 * f)) - 1);
        }
        let num = self.check(x.checked_shl(f).filter(|v| v >> f == x), "dividend")?;
        Ok((num / y).min((1i128 << (2 * f)) - 1))
    }

    fn sigmoid(&self, x: i128) -> Result<i128> {
        let e = self.exp(x)?;
        self.div(e, self.add(e, self.one())?)
    }

    fn d_sigmoid(&self, x: i128) -> Result<i128> {
        let s = self.sigmoid(x)?;
        self.mul(s, self.one() - s)
    }
}

/// The protocols' arithmetic replayed on one machine without share noise:
/// inputs are encoded, products truncated by flooring, public divisions
/// floored. Unlike the protocols, overflow is detected and reported as a
/// range error.
pub fn fixed_oracle(name: &str, inputs: &[PlainMatrix], config: &ProtocolConfig) -> Result<PlainMatrix> {
    fixed(Protocol::from_name(name)?, inputs, config)
}

pub fn fixed(protocol: Protocol, inputs: &[PlainMatrix], config: &ProtocolConfig) -> Result<PlainMatrix> {
    let inputs = single(protocol, inputs)?;
    let sim = FixedSim::new(config)?;
    let encoded: Vec<Vec<i128>> = inputs
        .iter()
        .map(|m| m.data.iter().map(|&v| sim.encode(v)).collect())
        .collect::<Result<_>>()?;
    let x = &inputs[0];
    let xs = &encoded[0];
    let each = |f: &dyn Fn(i128) -> Result<i128>| -> Result<Vec<i128>> { xs.iter().map(|&v| f(v)).collect() };
    let (rows, cols, raw) = match protocol {
        Protocol::TaylorExp => (x.rows, x.cols, each(&|v| sim.taylor(v))?),
        Protocol::Exp => (x.rows, x.cols, each(&|v| sim.exp(v))?),
        Protocol::Sigmoid => (x.rows, x.cols, each(&|v| sim.sigmoid(v))?),
        Protocol::DSigmoid => (x.rows, x.cols, each(&|v| sim.d_sigmoid(v))?),
        Protocol::Tanh => (
            x.rows,
            x.cols,
            each(&|v| Ok(2 * sim.sigmoid(2 * v)? - sim.one()))?,
        ),
        Protocol::DTanh => (x.rows, x.cols, each(&|v| Ok(4 * sim.d_sigmoid(2 * v)?))?),
        Protocol::Softmax => {
            let e = each(&|v| sim.exp(v))?;
            let mut out = Vec::with_capacity(e.len());
            for row in e.chunks(x.cols.max(1)) {
                let mut s = 0;
                for &v in row {
                    s = sim.add(s, v)?;
                }
                for &v in row {
                    out.push(sim.div(v, s)?);
                }
            }
            (x.rows, x.cols, out)
        }
        Protocol::Division => {
            let out = xs
                .iter()
                .zip(&encoded[1])
                .map(|(&a, &b)| sim.div(a, b))
                .collect::<Result<_>>()?;
            (x.rows, x.cols, out)
        }
        Protocol::MatMul => {
            let (m, n, v) = (x.rows, x.cols, inputs[1].cols);
            let ys = &encoded[1];
            let mut out = Vec::with_capacity(m * v);
            for i in 0..m {
                for j in 0..v {
                    let mut acc = 0i128;
                    for k in 0..n {
                        let p = sim.check(xs[i * n + k].checked_mul(ys[k * v + j]), "product")?;
                        acc = sim.add(acc, p)?;
                    }
                    out.push(acc >> sim.f());
                }
            }
            (m, v, out)
        }
    };
    PlainMatrix::new(rows, cols, raw.into_iter().map(|v| sim.decode(v)).collect())
}

/// One compared element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub expected: f64,
    pub got: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub tolerance: Tolerance,
    pub samples: Vec<Sample>,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub mean_abs_err: f64,
    pub failures: usize,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// `sample,expected,got,abs_err,rel_err` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample,expected,got,abs_err,rel_err\n");
        for (i, s) in self.samples.iter().enumerate() {
            out.push_str(&format!(
                "{i},{},{},{:e},{:e}\n",
                s.expected, s.got, s.abs_err, s.rel_err
            ));
        }
        out
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} samples, {} failures (abs tol {:e}, rel tol {}); max abs err {:e}, max rel err {:e}, mean abs err {:e}",
            self.samples.len(),
            self.failures,
            self.tolerance.abs,
            self.tolerance.rel,
            self.max_abs_err,
            self.max_rel_err,
            self.mean_abs_err
        )
    }
}

/// Element-wise comparison of protocol outputs against oracle outputs.
pub fn compare_runs(got: &[f64], expected: &[f64], tolerance: Tolerance) -> Result<OracleReport> {
    if got.len() != expected.len() {
        return Err(Error::Usage(format!(
            "compare_runs: {} outputs against {} expected values",
            got.len(),
            expected.len()
        )));
    }
    let samples: Vec<Sample> = got
        .iter()
        .zip(expected)
        .map(|(&g, &e)| {
            let abs_err = (g - e).abs();
            let rel_err = if e == 0.0 { abs_err } else { abs_err / e.abs() };
            Sample {
                expected: e,
                got: g,
                abs_err,
                rel_err,
                pass: tolerance.admits(e, g),
            }
        })
        .collect();
    let max_abs_err = samples.iter().map(|s| s.abs_err).fold(0.0, f64::max);
    let max_rel_err = samples.iter().map(|s| s.rel_err).fold(0.0, f64::max);
    let mean_abs_err = if samples.is_empty() {
        0.0
    } else {
        samples.iter().map(|s| s.abs_err).sum::<f64>() / samples.len() as f64
    };
    let failures = samples.iter().filter(|s| !s.pass).count();
    Ok(OracleReport {
        tolerance,
        samples,
        max_abs_err,
        max_rel_err,
        mean_abs_err,
        failures,
    })
}
