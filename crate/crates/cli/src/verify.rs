use std::io::Write;

use actmpc_core::oracle::{compare_runs, real, tolerance};
use actmpc_core::sim::{random_inputs, simulate, PlainMatrix};
use actmpc_core::{Error, Protocol, Result};
use clap::Args;

use crate::options::Settings;

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    /// Number of random samples (per operand element count).
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Lower end of the sample interval; defaults to the protocol's domain.
    #[arg(long, allow_negative_numbers = true)]
    pub lo: Option<f64>,
    /// Upper end (exclusive) of the sample interval.
    #[arg(long, allow_negative_numbers = true)]
    pub hi: Option<f64>,
    /// Comma-separated inputs to use instead of random samples (one-input
    /// protocols only).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub values: Vec<f64>,
    /// Override the absolute tolerance.
    #[arg(long = "abs-tol")]
    pub abs_tol: Option<f64>,
    /// Override the relative tolerance.
    #[arg(long = "rel-tol")]
    pub rel_tol: Option<f64>,
}

fn inputs(s: &Settings, p: Protocol, args: &VerifyArgs) -> Result<Vec<PlainMatrix>> {
    let c = &s.config;
    if !args.values.is_empty() {
        if p.arity() != 1 {
            return Err(Error::Usage(format!("--values needs a one-input protocol, {p} takes two")));
        }
        return Ok(vec![PlainMatrix::row(args.values.clone())]);
    }
    let (rows, cols) = match (s.opts.rows, s.opts.cols, p) {
        (Some(r), Some(k), _) => (r, k),
        (_, _, Protocol::Softmax) => (args.samples.div_ceil(4), 4),
        (_, _, Protocol::MatMul) => (args.samples.div_ceil(4), 4),
        _ => (1, args.samples),
    };
    if rows == 0 || cols == 0 {
        return Err(Error::Usage("need at least one sample".into()));
    }
    let mut ins = random_inputs(p, c, rows, cols, c.seed);
    if args.lo.is_some() || args.hi.is_some() {
        let (dlo, dhi) = p.input_domain(c, cols)[0];
        let (lo, hi) = (args.lo.unwrap_or(dlo), args.hi.unwrap_or(dhi));
        if lo >= hi {
            return Err(Error::Usage(format!("empty sample interval [{lo}, {hi})")));
        }
        // rescale the first operand's samples into [lo, hi)
        for v in &mut ins[0].data {
            *v = lo + (*v - dlo) / (dhi - dlo) * (hi - lo);
        }
    }
    Ok(ins)
}

pub(crate) fn command(s: &Settings, args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let p = s.protocol()?;
    let ins = inputs(s, p, args)?;
    let (lo, hi) = p.input_domain(&s.config, ins[0].cols)[0];
    if let Some(v) = ins[0].data.iter().find(|v| !(lo..hi).contains(*v)) {
        writeln!(err, "warning: {v} is outside the {p} input domain [{lo}, {hi})")?;
    }
    let got = simulate(&s.config, p, &ins)?.output;
    let want = real(p, &ins)?;
    let mut tol = tolerance(p, &s.config);
    if let Some(a) = args.abs_tol {
        tol.abs = a;
    }
    if let Some(r) = args.rel_tol {
        tol.rel = r;
    }
    let report = compare_runs(&got.data, &want.data, tol)?;
    writeln!(out, "{p}: {report}")?;
    if let Some(path) = &s.opts.out {
        std::fs::write(path, report.to_csv())?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}
