use std::io::Write;
use std::path::{Path, PathBuf};

use actmpc_core::sharefile::ShareFile;
use actmpc_core::sharing::reconstruct_vec;
use actmpc_core::sim::{share_inputs, PlainMatrix};
use actmpc_core::{Error, FixedPointParams, PartyId, Result, RingWidth};

use crate::options::Settings;

/// Parses one decimal value per line; every value must be encodable.
pub(crate) fn read_csv(path: &Path, fixed: &FixedPointParams) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let field = line.trim();
        if field.is_empty() && n + 1 == text.lines().count() {
            break;
        }
        let row = n + 1;
        let v: f64 = field
            .parse()
            .map_err(|_| Error::Input(format!("row {row}: '{field}' is not a decimal number")))?;
        fixed
            .encode(v)
            .map_err(|e| Error::Input(format!("row {row}: {e}")))?;
        values.push(v);
    }
    Ok(values)
}

pub(crate) fn share_paths(prefix: &Path) -> [PathBuf; 2] {
    let with = |ext: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(ext);
        PathBuf::from(s)
    };
    [with(".p0"), with(".p1")]
}

pub(crate) fn split(s: &Settings, input: &Path, out: &mut dyn Write) -> Result<i32> {
    let prefix = s
        .opts
        .out
        .clone()
        .ok_or_else(|| Error::Usage("--out PREFIX is required".into()))?;
    let values = read_csv(input, &s.config.fixed())?;
    // masks must be fresh unless a seed is given explicitly
    let mut config = s.config.clone();
    if s.opts.seed.is_none() {
        config.seed = rand::random();
    }
    let [s0, s1] = share_inputs(&config, &[PlainMatrix::row(values)])?;
    let paths = share_paths(&prefix);
    for (party, (shares, path)) in [PartyId::P0, PartyId::P1].into_iter().zip([s0, s1].iter().zip(&paths)) {
        ShareFile::new(&config, party, shares[0].data.clone())?.write_to(path)?;
        writeln!(out, "{}", path.display())?;
    }
    Ok(0)
}

pub(crate) fn reconstruct(s: &Settings, inputs: &[PathBuf], out: &mut dyn Write) -> Result<i32> {
    let [a, b] = inputs else {
        return Err(Error::Usage("reconstruct needs exactly two --input share files".into()));
    };
    let (fa, fb) = (ShareFile::read_from(a)?, ShareFile::read_from(b)?);
    if !fa.pairs_with(&fb) {
        return Err(Error::Input(format!(
            "{} and {} are not complementary shares of the same data",
            a.display(),
            b.display()
        )));
    }
    let raw = reconstruct_vec(&fa.shares, &fb.shares, fa.width)?;
    let fixed = FixedPointParams::new(fa.frac_bits as u32, fa.width)?;
    let mut text = String::new();
    for r in raw {
        text.push_str(&format!("{}\n", fixed.decode_raw(r)));
    }
    match &s.opts.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

/// Reads a share file that must match the session parameters.
pub(crate) fn load(path: &Path, party: PartyId, width: RingWidth, f: u32, m: u32) -> Result<ShareFile> {
    let file = ShareFile::read_from(path)?;
    if file.party != party {
        return Err(Error::Input(format!(
            "{} holds {}'s shares, this party is {party}",
            path.display(),
            file.party
        )));
    }
    if (file.width, file.frac_bits as u32, file.int_bits as u32) != (width, f, m) {
        return Err(Error::Input(format!(
            "{}: written for l = {}, f = {}, m = {}; session uses l = {}, f = {f}, m = {m}",
            path.display(),
            file.width.bits(),
            file.frac_bits,
            file.int_bits,
            width.bits()
        )));
    }
    Ok(file)
}
