use std::collections::HashMap;
use std::path::Path;

use nalgebra::{DMatrix, Vector3};

use crate::basis::cartesian_powers;
use crate::data::default_mass_number;
use crate::error::{Error, Result};
use crate::system::{Atom, BasisShell, MolecularSystem, SpinResolvedDensity};

/// Component order used by checkpoint files for Cartesian shells, as
/// (lx, ly, lz) powers. Densities are permuted from this order into the
/// canonical lexicographic order on reading.
pub const CHECKPOINT_ORDER: [&[[u8; 3]]; 5] = [
    &[[0, 0, 0]],
    &[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    &[[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]],
    &[
        [3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 2, 0], [2, 1, 0],
        [2, 0, 1], [1, 0, 2], [0, 1, 2], [0, 2, 1], [1, 1, 1],
    ],
    &[
        [0, 0, 4], [0, 1, 3], [0, 2, 2], [0, 3, 1], [0, 4, 0],
        [1, 0, 3], [1, 1, 2], [1, 2, 1], [1, 3, 0], [2, 0, 2],
        [2, 1, 1], [2, 2, 0], [3, 0, 1], [3, 1, 0], [4, 0, 0],
    ],
];

const INT_WIDTH: usize = 12;
const REAL_WIDTH: usize = 16;

#[derive(Debug)]
enum Section {
    Int(i64),
    /// Scalar reals are validated but not needed.
    Real,
    Ints(Vec<i64>),
    Reals(Vec<f64>),
    Other,
}

struct Header<'a> {
    label: &'a str,
    kind: u8,
    count: Option<usize>,
    value: &'a str,
}

fn parse_header(line: &str) -> Option<Header<'_>> {
    let b = line.as_bytes();
    if b.len() < 44 || b[0] == b' ' || &b[40..43] != b"   " || !b"IRCLH".contains(&b[43]) {
        return None;
    }
    let rest = line[44..].trim();
    let (count, value) = match rest.strip_prefix("N=") {
        Some(n) => (Some(n.trim().parse().ok()?), ""),
        None => (None, rest),
    };
    Some(Header { label: line[..40].trim(), kind: b[43], count, value })
}

fn parse_real(tok: &str) -> Option<f64> {
    tok.replace(['D', 'd'], "E").parse().ok()
}

fn read_sections(text: &str) -> Result<HashMap<String, Section>> {
    let mut sections = HashMap::new();
    let mut lines = text.lines().enumerate().peekable();
    while let Some((lineno, line)) = lines.next() {
        let Some(h) = parse_header(line) else { continue };
        let bad = |what: &str| Error::MalformedFile(format!("line {}: {what} in `{}`", lineno + 1, h.label));
        let section = match (h.kind, h.count) {
            (b'I', None) => Section::Int(h.value.parse().map_err(|_| bad("bad integer"))?),
            (b'R', None) => {
                parse_real(h.value).ok_or_else(|| bad("bad real"))?;
                Section::Real
            }
            (kind @ (b'I' | b'R'), Some(n)) => {
                let (width, per_line) = if kind == b'I' { (INT_WIDTH, 6) } else { (REAL_WIDTH, 5) };
                let mut toks = Vec::with_capacity(n);
                while toks.len() < n {
                    let Some((_, data)) = lines.next() else {
                        return Err(bad("unexpected end of file"));
                    };
                    let data = data.trim_end();
                    if data.is_empty() || data.len() > width * per_line {
                        return Err(bad("array line does not fit the fixed layout"));
                    }
                    for chunk in data.as_bytes().chunks(width) {
                        let s = std::str::from_utf8(chunk).map_err(|_| bad("non-ASCII data"))?;
                        toks.push(s.trim().to_string());
                    }
                }
                if toks.len() != n {
                    return Err(bad("array length disagrees with its header"));
                }
                if kind == b'I' {
                    let v: Option<Vec<i64>> = toks.iter().map(|t| t.parse().ok()).collect();
                    Section::Ints(v.ok_or_else(|| bad("bad integer"))?)
                } else {
                    let v: Option<Vec<f64>> = toks.iter().map(|t| parse_real(t)).collect();
                    Section::Reals(v.ok_or_else(|| bad("bad real"))?)
                }
            }
            _ => {
                while lines.peek().is_some_and(|(_, l)| parse_header(l).is_none()) {
                    lines.next();
                }
                Section::Other
            }
        };
        sections.insert(h.label.to_string(), section);
    }
    Ok(sections)
}

struct Sections(HashMap<String, Section>);

impl Sections {
    fn missing(label: &str) -> Error {
        Error::MalformedFile(format!("missing or mistyped section `{label}`"))
    }
    fn int(&self, label: &str) -> Result<i64> {
        match self.0.get(label) {
            Some(Section::Int(v)) => Ok(*v),
            _ => Err(Self::missing(label)),
        }
    }
    fn ints(&self, label: &str) -> Result<&[i64]> {
        match self.0.get(label) {
            Some(Section::Ints(v)) => Ok(v),
            _ => Err(Self::missing(label)),
        }
    }
    fn reals(&self, label: &str) -> Result<&[f64]> {
        match self.0.get(label) {
            Some(Section::Reals(v)) => Ok(v),
            _ => Err(Self::missing(label)),
        }
    }
}

fn count(v: i64, what: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::MalformedFile(format!("negative {what}")))
}

/// Parses a formatted checkpoint file held in memory.
pub fn parse_fchk(text: &str) -> Result<(MolecularSystem, SpinResolvedDensity)> {
    let sec = Sections(read_sections(text)?);

    let shell_types = sec.ints("Shell types")?;
    for (i, &code) in shell_types.iter().enumerate() {
        if !(0..=4).contains(&code) {
            return Err(Error::UnsupportedShell { shell: i + 1, code });
        }
    }

    let n_alpha = count(sec.int("Number of alpha electrons")?, "electron count")?;
    let n_beta = count(sec.int("Number of beta electrons")?, "electron count")?;
    if n_beta > n_alpha {
        return Err(Error::BetaExcess { n_alpha, n_beta });
    }

    let numbers = sec.ints("Atomic numbers")?;
    let coords = sec.reals("Current cartesian coordinates")?;
    if coords.len() != 3 * numbers.len() {
        return Err(Error::MalformedFile("coordinate count is not 3 x atom count".into()));
    }
    let masses: Option<&[i64]> = sec.ints("Integer atomic weights").ok();
    let mut atoms = Vec::with_capacity(numbers.len());
    for (i, &z) in numbers.iter().enumerate() {
        let z = u32::try_from(z)
            .ok()
            .filter(|&z| z >= 1)
            .ok_or_else(|| Error::MalformedFile(format!("atom {}: bad atomic number", i + 1)))?;
        let mass_number = match masses.and_then(|m| m.get(i)) {
            Some(&a) if a >= 1 => a as u32,
            _ => default_mass_number(z)
                .ok_or(Error::UnsupportedElement { z, what: "no default mass number" })?,
        };
        atoms.push(Atom {
            z,
            mass_number,
            position: Vector3::new(coords[3 * i], coords[3 * i + 1], coords[3 * i + 2]),
        });
    }

    let nprim = sec.ints("Number of primitives per shell")?;
    let shell_atom = sec.ints("Shell to atom map")?;
    let exps = sec.reals("Primitive exponents")?;
    let coefs = sec.reals("Contraction coefficients")?;
    if nprim.len() != shell_types.len() || shell_atom.len() != shell_types.len() {
        return Err(Error::MalformedFile("shell arrays have different lengths".into()));
    }
    let total_prims: usize = nprim.iter().map(|&n| n.max(0) as usize).sum();
    if exps.len() != total_prims || coefs.len() != total_prims {
        return Err(Error::MalformedFile("primitive arrays disagree with shell sizes".into()));
    }
    let mut shells = Vec::with_capacity(shell_types.len());
    let mut off = 0;
    for i in 0..shell_types.len() {
        let n = count(nprim[i], "primitive count")?;
        let center = count(shell_atom[i] - 1, "shell centre")?;
        shells.push(BasisShell {
            center,
            l: shell_types[i] as u8,
            exponents: exps[off..off + n].to_vec(),
            coefficients: coefs[off..off + n].to_vec(),
        });
        off += n;
    }
    let system = MolecularSystem::new(atoms, shells, n_alpha, n_beta)?;

    let nbf = system.nbf();
    let perm = checkpoint_to_canonical(&system);
    let p = unpack(sec.reals("Total SCF Density")?, nbf, &perm, "Total SCF Density")?;
    let psz = unpack(sec.reals("Spin SCF Density")?, nbf, &perm, "Spin SCF Density")?;
    Ok((system, SpinResolvedDensity::collinear(p, psz)))
}

/// Reads a formatted checkpoint file from disk.
pub fn read_fchk(path: impl AsRef<Path>) -> Result<(MolecularSystem, SpinResolvedDensity)> {
    parse_fchk(&std::fs::read_to_string(path)?)
}

/// For each checkpoint-ordered basis function, its canonical index.
fn checkpoint_to_canonical(system: &MolecularSystem) -> Vec<usize> {
    let mut perm = Vec::with_capacity(system.nbf());
    let mut off = 0;
    for s in &system.shells {
        let canon = cartesian_powers(s.l);
        for p in CHECKPOINT_ORDER[s.l as usize] {
            perm.push(off + canon.iter().position(|c| c == p).expect("same component set"));
        }
        off += canon.len();
    }
    perm
}

fn unpack(tri: &[f64], n: usize, perm: &[usize], label: &str) -> Result<DMatrix<f64>> {
    if tri.len() != n * (n + 1) / 2 {
        return Err(Error::MalformedFile(format!(
            "`{label}` holds {} values, expected {} for {n} basis functions",
            tri.len(),
            n * (n + 1) / 2
        )));
    }
    let mut m = DMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in 0..=i {
            let (a, b) = (perm[i], perm[j]);
            m[(a, b)] = tri[k];
            m[(b, a)] = tri[k];
            k += 1;
        }
    }
    Ok(m)
}
