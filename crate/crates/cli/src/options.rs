use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use actmpc_core::{Error, PartyId, Protocol, ProtocolConfig, Result, RingWidth, TransportKind};
use clap::Args;

/// Flags shared by every command. Any of them may also be given as a
/// `key=value` line in the --config file; flags win on conflict.
#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    /// Protocol name (taylorExp, exp, sigmoid, d_sigmoid, tanh, d_tanh,
    /// softmax, division, mat_mul).
    #[arg(long)]
    pub protocol: Option<String>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Ring width in bits: 64 or 128.
    #[arg(long)]
    pub ring: Option<u32>,
    /// Fractional bits f.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Integer-bit budget m of the exponentiation input.
    #[arg(long = "int-bits")]
    pub int_bits: Option<u32>,
    /// local or tcp.
    #[arg(long)]
    pub transport: Option<String>,
    /// Party index 0, 1 or 2.
    #[arg(long)]
    pub role: Option<usize>,
    /// Address P0 listens on.
    #[arg(long)]
    pub peer0: Option<String>,
    /// Address P1 listens on.
    #[arg(long)]
    pub peer1: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// File of `key=value` lines using the long flag names.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Parses a flat `key=value` file. Blank lines and lines starting with `#`
/// are skipped; keys may use `-` or `_`.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("config line {}: expected key=value", n + 1)))?;
        map.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(map)
}

fn fill<T: FromStr>(slot: &mut Option<T>, file: &mut BTreeMap<String, String>, key: &str) -> Result<()> {
    if let Some(v) = file.remove(key) {
        if slot.is_none() {
            let parsed = v
                .parse()
                .map_err(|_| Error::Usage(format!("config key {key}: cannot parse '{v}'")))?;
            *slot = Some(parsed);
        }
    }
    Ok(())
}

fn merge(opts: &mut Opts, path: &Path) -> Result<()> {
    let mut file = parse_config_file(&std::fs::read_to_string(path)?)?;
    fill(&mut opts.protocol, &mut file, "protocol")?;
    fill(&mut opts.rows, &mut file, "rows")?;
    fill(&mut opts.cols, &mut file, "cols")?;
    fill(&mut opts.ring, &mut file, "ring")?;
    fill(&mut opts.precision, &mut file, "precision")?;
    fill(&mut opts.int_bits, &mut file, "int-bits")?;
    fill(&mut opts.transport, &mut file, "transport")?;
    fill(&mut opts.role, &mut file, "role")?;
    fill(&mut opts.peer0, &mut file, "peer0")?;
    fill(&mut opts.peer1, &mut file, "peer1")?;
    fill(&mut opts.seed, &mut file, "seed")?;
    fill(&mut opts.reps, &mut file, "reps")?;
    fill(&mut opts.out, &mut file, "out")?;
    if let Some(key) = file.keys().next() {
        return Err(Error::Usage(format!("unknown config key '{key}'")));
    }
    Ok(())
}

/// Flags merged with the config file and checked.
#[derive(Debug, Clone)]
pub struct Settings {
    pub opts: Opts,
    pub config: ProtocolConfig,
}

impl Settings {
    pub fn resolve(mut opts: Opts) -> Result<Self> {
        if let Some(path) = opts.config.clone() {
            merge(&mut opts, &path)?;
        }
        let mut config = ProtocolConfig::default();
        if let Some(bits) = opts.ring {
            config.width = match bits {
                64 | 128 => RingWidth::from_bits(bits)?,
                other => return Err(Error::Usage(format!("--ring must be 64 or 128, got {other}"))),
            };
        }
        if let Some(f) = opts.precision {
            config.frac_bits = f;
        }
        if let Some(m) = opts.int_bits {
            config.int_bits = m;
        }
        if let Some(t) = &opts.transport {
            config.transport = t.parse::<TransportKind>()?;
        }
        if let Some(seed) = opts.seed {
            config.seed = seed;
        }
        config.validate()?;
        if opts.rows == Some(0) || opts.cols == Some(0) {
            return Err(Error::Usage("dimensions must be positive".into()));
        }
        Ok(Settings { opts, config })
    }

    pub fn protocol(&self) -> Result<Protocol> {
        match &self.opts.protocol {
            Some(name) => Protocol::from_name(name),
            None => Err(Error::Usage("--protocol is required".into())),
        }
    }

    pub fn role(&self) -> Result<PartyId> {
        let r = self.opts.role.ok_or_else(|| Error::Usage("--role is required".into()))?;
        PartyId::from_index(r).ok_or_else(|| Error::Usage(format!("--role must be 0, 1 or 2, got {r}")))
    }

    pub fn peers(&self) -> Result<(SocketAddr, SocketAddr)> {
        let parse = |v: &Option<String>, flag: &str, default: &str| -> Result<SocketAddr> {
            let s = v.as_deref().unwrap_or(default);
            s.parse()
                .map_err(|_| Error::Usage(format!("--{flag}: '{s}' is not a host:port address")))
        };
        Ok((
            parse(&self.opts.peer0, "peer0", "127.0.0.1:7000")?,
            parse(&self.opts.peer1, "peer1", "127.0.0.1:7001")?,
        ))
    }
}
