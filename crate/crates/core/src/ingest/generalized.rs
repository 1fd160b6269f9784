//! Plain-text exchange format for spin-resolved densities, including the
//! transverse spin matrices produced by two-component calculations.
//!
//! ```text
//! format generalized-density 1
//! nbf <n>
//! block P
//! <n rows of n values>
//! block PSX
//! ...
//! block PSY
//! ...
//! block PSZ
//! ...
//! ```
//!
//! Matrices are row-major and written with `{:.16e}`, which round-trips
//! every finite f64 exactly. `#` starts a comment.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use crate::data::{parse_field, table_lines};
use crate::error::{Error, Result};
use crate::system::SpinResolvedDensity;

const BLOCKS: [&str; 4] = ["P", "PSX", "PSY", "PSZ"];

pub fn write_generalized_density(density: &SpinResolvedDensity) -> String {
    let n = density.dim();
    let mut out = String::new();
    out.push_str("format generalized-density 1\n");
    let _ = writeln!(out, "nbf {n}");
    for (name, m) in density.matrices() {
        let _ = writeln!(out, "block {name}");
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| format!("{:.16e}", m[(i, j)])).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Parses the generalized format for a basis of `nbf` functions.
pub fn parse_generalized_density(text: &str, nbf: usize) -> Result<SpinResolvedDensity> {
    let mut lines = table_lines(text, "generalized-density", 1)?;
    let declared = match lines.next() {
        Some((n, t)) if t.len() == 2 && t[0] == "nbf" => parse_field::<usize>(t[1], n)?,
        _ => return Err(Error::MalformedFile("expected `nbf <n>` after the format line".into())),
    };
    if declared != nbf {
        return Err(Error::MalformedFile(format!(
            "density has {declared} basis functions, system has {nbf}"
        )));
    }
    let mut mats = Vec::with_capacity(4);
    for name in BLOCKS {
        match lines.next() {
            Some((_, t)) if t.len() == 2 && t[0] == "block" && t[1] == name => {}
            Some((n, _)) => {
                return Err(Error::MalformedFile(format!("line {n}: expected `block {name}`")))
            }
            None => return Err(Error::MalformedFile(format!("missing block {name}"))),
        }
        let mut m = DMatrix::zeros(nbf, nbf);
        for i in 0..nbf {
            let Some((n, row)) = lines.next() else {
                return Err(Error::MalformedFile(format!("block {name} is truncated")));
            };
            if row.len() != nbf {
                return Err(Error::MalformedFile(format!(
                    "line {n}: row of {} values in a {nbf}x{nbf} block",
                    row.len()
                )));
            }
            for (j, tok) in row.iter().enumerate() {
                m[(i, j)] = parse_field(tok, n)?;
            }
        }
        mats.push(m);
    }
    if let Some((n, _)) = lines.next() {
        return Err(Error::MalformedFile(format!("line {n}: trailing data")));
    }
    let psz = mats.pop().unwrap();
    let psy = mats.pop().unwrap();
    let psx = mats.pop().unwrap();
    let p = mats.pop().unwrap();
    let d = SpinResolvedDensity { p, psx, psy, psz };
    d.validate(nbf)?;
    Ok(d)
}

pub fn read_generalized_density(path: impl AsRef<Path>, nbf: usize) -> Result<SpinResolvedDensity> {
    parse_generalized_density(&std::fs::read_to_string(path)?, nbf)
}
