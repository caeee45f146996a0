//! On-disk formats: catalogue files and single-matroid files.
//!
//! Both formats are line-based text. A catalogue file carries a version
//! header, one block per stratum, and a trailing crc32 line over every
//! preceding byte; loading revalidates each member by recanonicalizing
//! it, so a file that passes is correct by construction, not by trust.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use bmx_core::canon::{canonical_key, CanonicalKey};
use bmx_core::catalogue::Catalogue;
use bmx_core::matroid::BinaryMatroid;

const CATALOGUE_MAGIC: &str = "bmcat";
const CATALOGUE_VERSION: u32 = 1;
const MATROID_MAGIC: &str = "bmx-matroid";
const MATROID_VERSION: u32 = 1;

#[derive(Debug)]
pub enum FileError {
    Io(io::Error),
    Parse { line: usize, message: String },
    Version { found: String },
    Checksum { expected: u32, found: u32 },
    Truncated,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::Io(e) => write!(f, "io error: {e}"),
            FileError::Parse { line, message } => write!(f, "line {line}: {message}"),
            FileError::Version { found } => {
                write!(f, "unsupported format version {found}")
            }
            FileError::Checksum { expected, found } => {
                write!(f, "checksum mismatch: file says {expected:08x}, contents hash to {found:08x}")
            }
            FileError::Truncated => write!(f, "file is truncated (no end line)"),
        }
    }
}

impl std::error::Error for FileError {}

impl From<io::Error> for FileError {
    fn from(e: io::Error) -> Self {
        FileError::Io(e)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> FileError {
    FileError::Parse { line, message: message.into() }
}

/// Serializes a catalogue, empty and incomplete strata included, so a
/// round trip reproduces the exact struct. Keys are written in canonical
/// order; identical catalogues produce byte-identical files.
pub fn catalogue_to_string(cat: &Catalogue) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{CATALOGUE_MAGIC} {CATALOGUE_VERSION} R={} K={} exclusion={}\n",
        cat.max_rank(),
        cat.max_size(),
        if cat.exclusion() { "on" } else { "off" }
    ));
    for (rank, size, st) in cat.strata() {
        out.push_str(&format!(
            "# stratum r={rank} k={size} complete={} n={}\n",
            if st.is_complete() { 1 } else { 0 },
            st.len()
        ));
        for key in st.sorted_keys() {
            let pts: Vec<String> = key.image().iter().map(u16::to_string).collect();
            out.push_str(&pts.join(","));
            out.push('\n');
        }
    }
    let crc = crc32fast::hash(out.as_bytes());
    out.push_str(&format!("# end crc32={crc:08x}\n"));
    out
}

pub fn save_catalogue(cat: &Catalogue, path: &Path) -> Result<(), FileError> {
    fs::write(path, catalogue_to_string(cat))?;
    Ok(())
}

pub fn load_catalogue(path: &Path) -> Result<Catalogue, FileError> {
    catalogue_from_str(&fs::read_to_string(path)?)
}

pub fn catalogue_from_str(text: &str) -> Result<Catalogue, FileError> {
    let body = check_end_line(text)?;
    let mut lines = body.lines().enumerate();

    let (_, header) = lines.next().ok_or(FileError::Truncated)?;
    let mut cat = parse_catalogue_header(header)?;

    let mut pending: Option<(u8, u8, bool, usize)> = None;
    for (i, line) in lines {
        let lineno = i + 1;
        if let Some((rank, size, complete, n)) = pending.take() {
            let key = parse_member(line, lineno, rank, size)?;
            cat.insert(key).map_err(|e| parse_err(lineno, e.to_string()))?;
            if n > 1 {
                pending = Some((rank, size, complete, n - 1));
            } else if complete {
                cat.set_complete(rank, size)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
            }
            continue;
        }
        let (rank, size, complete, n) = parse_stratum_header(line, lineno)?;
        if cat.stratum(rank, size).is_none() {
            return Err(parse_err(
                lineno,
                format!("stratum r={rank} k={size} is outside the declared bounds"),
            ));
        }
        if n > 0 {
            pending = Some((rank, size, complete, n));
        } else if complete {
            cat.set_complete(rank, size)
                .map_err(|e| parse_err(lineno, e.to_string()))?;
        }
    }
    if pending.is_some() {
        return Err(FileError::Truncated);
    }
    Ok(cat)
}

/// Splits off and verifies the `# end crc32=` trailer, returning the body
/// it covers.
fn check_end_line(text: &str) -> Result<&str, FileError> {
    let pos = text.rfind("\n# end crc32=").ok_or(FileError::Truncated)?;
    let body = &text[..pos + 1];
    let trailer = text[pos + 1..].trim_end_matches('\n');
    let lineno = body.lines().count() + 1;
    let hex = trailer
        .strip_prefix("# end crc32=")
        .ok_or(FileError::Truncated)?;
    if hex.len() != 8 || trailer.contains('\n') {
        return Err(parse_err(lineno, "malformed end line"));
    }
    let expected = u32::from_str_radix(hex, 16)
        .map_err(|_| parse_err(lineno, "malformed crc32 hex"))?;
    let found = crc32fast::hash(body.as_bytes());
    if expected != found {
        return Err(FileError::Checksum { expected, found });
    }
    Ok(body)
}

fn parse_catalogue_header(line: &str) -> Result<Catalogue, FileError> {
    let mut parts = line.split(' ');
    if parts.next() != Some(CATALOGUE_MAGIC) {
        return Err(parse_err(1, "not a catalogue file"));
    }
    let version = parts.next().ok_or_else(|| parse_err(1, "missing version"))?;
    if version.parse::<u32>().map_err(|_| parse_err(1, "malformed version"))?
        != CATALOGUE_VERSION
    {
        return Err(FileError::Version { found: version.to_string() });
    }
    let r: u8 = parse_field(parts.next(), "R", 1)?;
    let k: u8 = parse_field(parts.next(), "K", 1)?;
    let exclusion = match parts.next() {
        Some("exclusion=on") => true,
        Some("exclusion=off") => false,
        _ => return Err(parse_err(1, "missing exclusion flag")),
    };
    if parts.next().is_some() {
        return Err(parse_err(1, "trailing tokens in header"));
    }
    if !(1..=8).contains(&r) {
        return Err(parse_err(1, format!("rank bound {r} is outside 1..=8")));
    }
    if k as u32 > (1u32 << r) - 1 {
        return Err(parse_err(1, format!("size bound {k} exceeds the projective bound for rank {r}")));
    }
    Ok(Catalogue::new(r, k, exclusion))
}

fn parse_stratum_header(line: &str, lineno: usize) -> Result<(u8, u8, bool, usize), FileError> {
    let rest = line
        .strip_prefix("# stratum ")
        .ok_or_else(|| parse_err(lineno, "expected a stratum header"))?;
    let mut parts = rest.split(' ');
    let rank: u8 = parse_field(parts.next(), "r", lineno)?;
    let size: u8 = parse_field(parts.next(), "k", lineno)?;
    let complete: u8 = parse_field(parts.next(), "complete", lineno)?;
    let n: usize = parse_field(parts.next(), "n", lineno)?;
    if complete > 1 || parts.next().is_some() {
        return Err(parse_err(lineno, "malformed stratum header"));
    }
    Ok((rank, size, complete == 1, n))
}

fn parse_field<T: std::str::FromStr>(
    token: Option<&str>,
    name: &str,
    lineno: usize,
) -> Result<T, FileError> {
    token
        .and_then(|t| t.strip_prefix(name))
        .and_then(|t| t.strip_prefix('='))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(lineno, format!("missing or malformed field {name}")))
}

/// One member line: the canonical image, comma-separated ascending. The
/// points are rebuilt into a matroid and recanonicalized; anything that
/// is not a verbatim canonical image is rejected.
fn parse_member(line: &str, lineno: usize, rank: u8, size: u8) -> Result<CanonicalKey, FileError> {
    let mut points: Vec<u16> = Vec::new();
    if !line.is_empty() {
        for tok in line.split(',') {
            points.push(
                tok.parse()
                    .map_err(|_| parse_err(lineno, format!("bad point {tok:?}")))?,
            );
        }
    }
    if points.len() != size as usize {
        return Err(parse_err(
            lineno,
            format!("expected {size} points, found {}", points.len()),
        ));
    }
    let m = BinaryMatroid::from_points_checked(rank, points)
        .map_err(|e| parse_err(lineno, e.to_string()))?;
    let key = canonical_key(&m);
    if key.image() != m.points() {
        return Err(parse_err(lineno, "points are not a canonical image"));
    }
    Ok(key)
}

/// Single-matroid file: a version header with the rank, then one line of
/// comma-separated ascending points.
pub fn matroid_to_string(m: &BinaryMatroid) -> String {
    let pts: Vec<String> = m.points().iter().map(u16::to_string).collect();
    format!("{MATROID_MAGIC} {MATROID_VERSION} r={}\n{}\n", m.rank(), pts.join(","))
}

pub fn save_matroid(m: &BinaryMatroid, path: &Path) -> Result<(), FileError> {
    fs::write(path, matroid_to_string(m))?;
    Ok(())
}

pub fn load_matroid(path: &Path) -> Result<BinaryMatroid, FileError> {
    matroid_from_str(&fs::read_to_string(path)?)
}

pub fn matroid_from_str(text: &str) -> Result<BinaryMatroid, FileError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(FileError::Truncated)?;
    let mut parts = header.split(' ');
    if parts.next() != Some(MATROID_MAGIC) {
        return Err(parse_err(1, "not a matroid file"));
    }
    let version = parts.next().ok_or_else(|| parse_err(1, "missing version"))?;
    if version.parse::<u32>().map_err(|_| parse_err(1, "malformed version"))?
        != MATROID_VERSION
    {
        return Err(FileError::Version { found: version.to_string() });
    }
    let rank: u8 = parse_field(parts.next(), "r", 1)?;
    let body = lines.next().ok_or(FileError::Truncated)?;
    let mut points: Vec<u16> = Vec::new();
    if !body.is_empty() {
        for tok in body.split(',') {
            points.push(
                tok.parse()
                    .map_err(|_| parse_err(2, format!("bad point {tok:?}")))?,
            );
        }
    }
    BinaryMatroid::from_points_checked(rank, points).map_err(|e| parse_err(2, e.to_string()))
}
