use std::io::Write;
use std::time::Duration;

use actmpc_core::sim::{random_inputs, simulate};
use actmpc_core::{Error, Protocol, ProtocolConfig, Result};

use crate::options::Settings;

pub const CSV_HEADER: &str = "Protocol,Dimension,Time(s),Comm.(mb)";

/// Dimensions of the reference benchmark table.
pub const PRESETS: [(usize, usize); 3] = [(64, 16), (128, 128), (576, 20)];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub protocol: Protocol,
    pub rows: usize,
    pub cols: usize,
    /// Median protocol wall time over the repetitions.
    pub seconds: f64,
    /// Total framed bytes of one run, in units of 10^6 bytes.
    pub megabytes: f64,
}

impl BenchRow {
    pub fn dimension(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }
}

/// Runs `protocol` `reps` times on the same random inputs with seeds
/// `config.seed, config.seed + 1, ...`. Fails if the transcript size is not
/// the same in every run.
pub fn bench(protocol: Protocol, rows: usize, cols: usize, reps: usize, config: &ProtocolConfig) -> Result<BenchRow> {
    if rows == 0 || cols == 0 {
        return Err(Error::Usage("dimensions must be positive".into()));
    }
    let inputs = random_inputs(protocol, config, rows, cols, config.seed);
    let mut times = Vec::with_capacity(reps.max(1));
    let mut bytes = None;
    for rep in 0..reps.max(1) {
        let c = config.clone().with_seed(config.seed.wrapping_add(rep as u64));
        let t = simulate(&c, protocol, &inputs)?.transcript;
        match bytes {
            None => bytes = Some(t.total_bytes()),
            Some(b) if b != t.total_bytes() => {
                return Err(Error::Protocol(format!(
                    "{protocol}: transcript size changed between runs ({b} vs {})",
                    t.total_bytes()
                )))
            }
            Some(_) => {}
        }
        times.push(t.wall);
    }
    times.sort();
    let median = median(&times);
    Ok(BenchRow {
        protocol,
        rows,
        cols,
        seconds: median.as_secs_f64(),
        megabytes: bytes.unwrap_or(0) as f64 / 1e6,
    })
}

fn median(sorted: &[Duration]) -> Duration {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2
    }
}

/// Header line plus one line per row.
pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.6},{:.6}\n",
            r.protocol,
            r.dimension(),
            r.seconds,
            r.megabytes
        ));
    }
    out
}

pub(crate) fn command(s: &Settings, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let protocols: Vec<Protocol> = match s.opts.protocol.as_deref() {
        Some("all") => Protocol::TABLE.to_vec(),
        _ => vec![s.protocol()?],
    };
    let dims: Vec<(usize, usize)> = match (s.opts.rows, s.opts.cols) {
        (Some(r), Some(c)) => vec![(r, c)],
        (None, None) => PRESETS.to_vec(),
        _ => return Err(Error::Usage("give both --rows and --cols, or neither".into())),
    };
    let reps = s.opts.reps.unwrap_or(3);
    out.write_all(format!("{CSV_HEADER}\n").as_bytes())?;
    for &p in &protocols {
        for &(r, c) in &dims {
            let row = bench(p, r, c, reps, &s.config)?;
            let line = render_csv(std::slice::from_ref(&row));
            out.write_all(line.lines().nth(1).unwrap_or_default().as_bytes())?;
            out.write_all(b"\n")?;
            out.flush()?;
            if let Some((t, mb)) = p.reference(r, c) {
                writeln!(err, "# reference {p} {}: {t} s, {mb} MB", row.dimension())?;
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_odd_and_even_runs() {
        let ms = Duration::from_millis;
        assert_eq!(median(&[ms(1), ms(5), ms(9)]), ms(5));
        assert_eq!(median(&[ms(2), ms(4)]), ms(3));
    }

    #[test]
    fn csv_rows_have_four_columns() {
        let row = BenchRow {
            protocol: Protocol::Sigmoid,
            rows: 64,
            cols: 16,
            seconds: 0.25,
            megabytes: 2.5,
        };
        let csv = render_csv(&[row]);
        assert_eq!(csv, "Protocol,Dimension,Time(s),Comm.(mb)\nsigmoid,64x16,0.250000,2.500000\n");
    }

    #[test]
    fn transcript_size_is_reported_in_megabytes() {
        let c = ProtocolConfig::default();
        let row = bench(Protocol::Exp, 2, 2, 2, &c).unwrap();
        let t = actmpc_core::sim::simulate(&c, Protocol::Exp, &random_inputs(Protocol::Exp, &c, 2, 2, c.seed))
            .unwrap()
            .transcript;
        assert_eq!(row.megabytes, t.total_bytes() as f64 / 1e6);
        assert!(bench(Protocol::Exp, 0, 2, 1, &c).is_err());
    }
}
