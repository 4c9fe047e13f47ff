//! `WGF1` gauge-field files and `WUT1` unitary-tuple files.
//!
//! Both start with three text lines terminated by `\n`:
//!
//! ```text
//! WGF1                 WUT1
//! <d> <N> <rank>       <d> <n>
//! # <comment>          # <comment>
//! ```
//!
//! followed by little-endian `f64` values, real and imaginary parts
//! interleaved, every matrix row-major. `WGF1` stores the links ordered by
//! site (lexicographic, first coordinate most significant) then direction;
//! `WUT1` stores the `d` matrices in order. Readers reject anything that is
//! not unitary to `1e-8`.

use std::io::{BufRead, Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gauge::GaugeField;
use crate::ktheory::UnitaryTuple;
use crate::lattice::LatticeGeometry;
use crate::linalg::CMat;

pub const LOAD_UNITARY_TOL: f64 = 1e-8;

fn format_err(format: &'static str, msg: impl Into<String>) -> Error {
    Error::Format { format, msg: msg.into() }
}

fn write_header<W: Write>(w: &mut W, magic: &str, dims: &[usize], comment: &str) -> Result<()> {
    let dims: Vec<String> = dims.iter().map(|x| x.to_string()).collect();
    let comment = comment.replace(['\n', '\r'], " ");
    write!(w, "{magic}\n{}\n# {comment}\n", dims.join(" "))?;
    Ok(())
}

fn read_line<R: BufRead>(r: &mut R, format: &'static str) -> Result<String> {
    let mut s = String::new();
    if r.read_line(&mut s)? == 0 {
        return Err(format_err(format, "truncated header"));
    }
    Ok(s.trim_end_matches(['\n', '\r']).to_string())
}

fn read_header<R: BufRead>(r: &mut R, format: &'static str, fields: usize) -> Result<(Vec<usize>, String)> {
    let magic = read_line(r, format)?;
    if magic != format {
        return Err(format_err(format, format!("bad magic {magic:?}")));
    }
    let dims: Vec<usize> = read_line(r, format)?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| format_err(format, format!("bad dimension {t:?}"))))
        .collect::<Result<_>>()?;
    if dims.len() != fields {
        return Err(format_err(format, format!("expected {fields} dimensions, got {}", dims.len())));
    }
    let comment = read_line(r, format)?;
    let comment = comment
        .strip_prefix('#')
        .ok_or_else(|| format_err(format, "comment line must start with '#'"))?;
    Ok((dims, comment.trim_start().to_string()))
}

fn write_matrix<W: Write>(w: &mut W, m: &CMat) -> Result<()> {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_matrix<R: Read>(r: &mut R, n: usize, format: &'static str) -> Result<CMat> {
    let mut buf = vec![0u8; 16 * n * n];
    r.read_exact(&mut buf)
        .map_err(|_| format_err(format, "payload shorter than the header implies"))?;
    let mut m = CMat::zeros(n, n);
    for (k, chunk) in buf.chunks_exact(16).enumerate() {
        let re = f64::from_le_bytes(chunk[..8].try_into().unwrap());
        let im = f64::from_le_bytes(chunk[8..].try_into().unwrap());
        m[(k / n, k % n)] = Complex64::new(re, im);
    }
    Ok(m)
}

fn expect_eof<R: Read>(r: &mut R, format: &'static str) -> Result<()> {
    let mut extra = [0u8; 1];
    if r.read(&mut extra)? != 0 {
        return Err(format_err(format, "trailing bytes after payload"));
    }
    Ok(())
}

pub fn write_wgf<W: Write>(f: &GaugeField, comment: &str, mut w: W) -> Result<()> {
    let g = f.geometry();
    write_header(&mut w, "WGF1", &[g.d(), g.n(), f.rank()], comment)?;
    for u in f.links() {
        write_matrix(&mut w, u)?;
    }
    Ok(())
}

/// Reads a field; the comment is returned alongside. The field carries no
/// topology information.
pub fn read_wgf<R: BufRead>(mut r: R) -> Result<(GaugeField, String)> {
    let (dims, comment) = read_header(&mut r, "WGF1", 3)?;
    let (d, n, rank) = (dims[0], dims[1], dims[2]);
    if rank == 0 {
        return Err(format_err("WGF1", "rank must be positive"));
    }
    let geom = LatticeGeometry::new(d, n)?;
    let count = geom.num_sites() * d;
    let mut links = Vec::with_capacity(count);
    for _ in 0..count {
        links.push(read_matrix(&mut r, rank, "WGF1")?);
    }
    expect_eof(&mut r, "WGF1")?;
    let f = GaugeField::from_links(geom, rank, links, LOAD_UNITARY_TOL)?;
    Ok((f, comment))
}

pub fn write_wut<W: Write>(t: &UnitaryTuple, comment: &str, mut w: W) -> Result<()> {
    write_header(&mut w, "WUT1", &[t.d(), t.n()], comment)?;
    for u in t.unitaries() {
        write_matrix(&mut w, u)?;
    }
    Ok(())
}

pub fn read_wut<R: BufRead>(mut r: R) -> Result<(UnitaryTuple, String)> {
    let (dims, comment) = read_header(&mut r, "WUT1", 2)?;
    let (d, n) = (dims[0], dims[1]);
    if d == 0 || n == 0 {
        return Err(format_err("WUT1", "empty tuple"));
    }
    let mut us = Vec::with_capacity(d);
    for _ in 0..d {
        us.push(read_matrix(&mut r, n, "WUT1")?);
    }
    expect_eof(&mut r, "WUT1")?;
    Ok((UnitaryTuple::with_tolerance(us, LOAD_UNITARY_TOL)?, comment))
}
