//! The subcommands, as plain functions over paths so they can be driven from
//! tests as well as from `main`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::ValueEnum;
use cnnc_core::{attack, cipher, oracle, Cells, EquivalentKey, OracleReport, SecretKey, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cipherfile::{CipherFile, PayloadMode};
use crate::{equivfile, keyfile, pgm};

/// How plaintext files are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    /// Any file, taken byte for byte.
    #[default]
    Raw,
    /// Binary 8-bit grayscale PGM; only the pixels are encrypted.
    Pgm,
}

/// Writes through a temporary file in the target directory, then renames, so
/// a failed command never leaves a partial output behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load_key(path: &Path) -> Result<SecretKey> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading key file {}", path.display()))?;
    keyfile::parse(&text).with_context(|| format!("parsing key file {}", path.display()))
}

pub fn load_cipher(path: &Path) -> Result<CipherFile> {
    CipherFile::from_bytes(&read(path)?)
        .with_context(|| format!("parsing ciphertext {}", path.display()))
}

/// Reads a plaintext file, returning its byte stream and how to rebuild it.
pub fn load_plain(path: &Path, format: Format) -> Result<(PayloadMode, Vec<u8>)> {
    let bytes = read(path)?;
    match format {
        Format::Raw => Ok((PayloadMode::Raw, bytes)),
        Format::Pgm => {
            let img =
                pgm::decode(&bytes).with_context(|| format!("parsing PGM {}", path.display()))?;
            let mode = PayloadMode::Pgm {
                width: img.width(),
                height: img.height(),
            };
            Ok((mode, img.into_pixels()))
        }
    }
}

pub fn save_plain(path: &Path, mode: PayloadMode, bytes: Vec<u8>) -> Result<()> {
    match mode {
        PayloadMode::Raw => write_atomic(path, &bytes),
        PayloadMode::Pgm { width, height } => {
            let img = pgm::ImageBuffer::new(width, height, bytes)?;
            write_atomic(path, &pgm::encode(&img))
        }
    }
}

fn format_of(mode: PayloadMode) -> Format {
    match mode {
        PayloadMode::Raw => Format::Raw,
        PayloadMode::Pgm { .. } => Format::Pgm,
    }
}

#[derive(Debug, Clone, Default)]
pub struct KeygenOptions {
    pub seed: Option<u64>,
    pub r: Option<f64>,
    pub x0: Option<f64>,
    pub cells: Option<Cells>,
}

/// Samples `r` in `[1.9, 2.0)`, `x0` in `(0.01, 0.99)` and the cells from the
/// seed (or OS entropy), then applies any explicit overrides.
pub fn generate_key(opts: &KeygenOptions) -> Result<SecretKey> {
    let seed = opts.seed.unwrap_or_else(rand::random);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.gen_range(1.9..2.0);
    let x0 = loop {
        let x: f64 = rng.gen_range(0.01..0.99);
        if x > 0.01 {
            break x;
        }
    };
    let cells = Cells::from_byte(rng.gen());
    Ok(SecretKey::new(
        opts.r.unwrap_or(r),
        opts.x0.unwrap_or(x0),
        opts.cells.unwrap_or(cells),
    )?)
}

pub fn keygen(opts: &KeygenOptions, out: &Path) -> Result<SecretKey> {
    let key = generate_key(opts)?;
    write_atomic(out, keyfile::render(&key).as_bytes())?;
    Ok(key)
}

pub fn encrypt(key: &Path, input: &Path, output: &Path, format: Format) -> Result<usize> {
    let key = load_key(key)?;
    let (mode, plain) = load_plain(input, format)?;
    let values = cipher::encrypt_stream(&key, &plain);
    write_atomic(output, &CipherFile { mode, values }.to_bytes())?;
    Ok(plain.len())
}

pub fn decrypt(key: &Path, input: &Path, output: &Path) -> Result<usize> {
    let key = load_key(key)?;
    let file = load_cipher(input)?;
    let plain = cipher::decrypt_stream(&key, &file.values)
        .context("decryption failed (wrong key or corrupted ciphertext?)")?;
    let n = plain.len();
    save_plain(output, file.mode, plain)?;
    Ok(n)
}

pub fn complement(input: &Path, output: &Path, format: Format) -> Result<()> {
    let (mode, plain) = load_plain(input, format)?;
    save_plain(output, mode, attack::make_chosen_pair(&plain))
}

/// `<prefix>.k1` or `<prefix>.k2`.
pub fn equiv_path(prefix: &Path, variant: Variant) -> PathBuf {
    let mut s = OsString::from(prefix.as_os_str());
    s.push(format!(".k{}", variant.as_u8()));
    PathBuf::from(s)
}

pub struct DeriveInputs<'a> {
    pub plain1: &'a Path,
    pub cipher1: &'a Path,
    pub plain2: &'a Path,
    pub cipher2: &'a Path,
}

/// Derives both candidate equivalent keys and writes `<prefix>.k1` and
/// `<prefix>.k2`. Plaintexts are read in the form recorded in the ciphertext
/// files.
pub fn attack_derive(
    inputs: &DeriveInputs<'_>,
    prefix: &Path,
) -> Result<(EquivalentKey, EquivalentKey)> {
    let c1 = load_cipher(inputs.cipher1)?;
    let c2 = load_cipher(inputs.cipher2)?;
    ensure!(
        c1.mode == c2.mode,
        "ciphertexts were made from different kinds of input ({:?} vs {:?})",
        c1.mode,
        c2.mode
    );
    let (m1, f1) = load_plain(inputs.plain1, format_of(c1.mode))?;
    let (m2, f2) = load_plain(inputs.plain2, format_of(c2.mode))?;
    ensure!(
        m1 == m2,
        "plaintexts have different dimensions ({m1:?} vs {m2:?})"
    );

    let lens = [f1.len(), c1.values.len(), f2.len(), c2.values.len()];
    if lens.iter().any(|&n| n != lens[0]) {
        bail!(
            "length mismatch: plain1={}, cipher1={}, plain2={}, cipher2={}",
            lens[0],
            lens[1],
            lens[2],
            lens[3]
        );
    }
    if let Some(i) = f1.iter().zip(&f2).position(|(a, b)| *b != !*a) {
        bail!(
            "second plaintext is not the complement of the first: byte {i} is {:#04x} vs {:#04x}",
            f1[i],
            f2[i]
        );
    }

    let (k1, k2) = attack::derive_equivalent_key(&f1, &c1.values, &f2, &c2.values)?;
    write_atomic(&equiv_path(prefix, Variant::One), &equivfile::to_bytes(&k1))?;
    write_atomic(&equiv_path(prefix, Variant::Two), &equivfile::to_bytes(&k2))?;
    Ok((k1, k2))
}

/// The first `rows` records of both keys, laid out with one column per
/// position.
pub fn equiv_table(k1: &EquivalentKey, k2: &EquivalentKey, rows: usize) -> String {
    let n = rows.min(k1.len()).min(k2.len());
    let mut out = String::new();
    let mut line = |label: &str, cell: &dyn Fn(usize) -> String| {
        let _ = write!(out, "{label:<8}");
        for i in 0..n {
            let _ = write!(out, " | {:>7}", cell(i));
        }
        out.push('\n');
    };
    line("i", &|i| i.to_string());
    line("B1", &|i| k1.records[i].b.to_string());
    line("B2", &|i| k2.records[i].b.to_string());
    line("x_hat1", &|i| format!("{:.2}", k1.records[i].x_hat));
    line("x_hat2", &|i| format!("{:.2}", k2.records[i].x_hat));
    out
}

/// Decrypts with an equivalent key. With `variant`, `equiv` is a prefix and
/// `<equiv>.k<variant>` is read.
pub fn attack_decrypt(
    equiv: &Path,
    variant: Option<Variant>,
    input: &Path,
    output: &Path,
) -> Result<usize> {
    let path = match variant {
        Some(v) => equiv_path(equiv, v),
        None => equiv.to_path_buf(),
    };
    let key = equivfile::from_bytes(&read(&path)?)
        .with_context(|| format!("parsing equivalent key {}", path.display()))?;
    if let Some(v) = variant {
        ensure!(
            key.variant == v,
            "{} holds variant {}, not {}",
            path.display(),
            key.variant.as_u8(),
            v.as_u8()
        );
    }
    let file = load_cipher(input)?;
    let plain = attack::decrypt_with_equivalent(&file.values, &key)?;
    let n = plain.len();
    save_plain(output, file.mode, plain)?;
    Ok(n)
}

pub fn verify(summary: Option<&Path>) -> Result<Vec<OracleReport>> {
    verify_reports(oracle::run_all(), summary)
}

/// Writes the optional JSON summary for already computed reports.
pub fn verify_reports(
    reports: Vec<OracleReport>,
    summary: Option<&Path>,
) -> Result<Vec<OracleReport>> {
    if let Some(path) = summary {
        let doc = serde_json::json!({
            "passed": all_passed(&reports),
            "reports": reports,
        });
        write_atomic(path, serde_json::to_string_pretty(&doc)?.as_bytes())?;
    }
    Ok(reports)
}

pub fn all_passed(reports: &[OracleReport]) -> bool {
    reports.iter().all(OracleReport::passed)
}
