//! Shipped tables and their line-oriented text formats.
//!
//! Every table starts with a `format <name> <version>` line; blank lines and
//! `#` comments are ignored everywhere.

use crate::error::{Error, Result};

pub const ERF_FIT_V1: &str = include_str!("../data/erf_fit_v1.dat");
pub const RADIAL_RADII_V1: &str = include_str!("../data/radial_radii_v1.dat");
pub const MASS_NUMBERS_V1: &str = include_str!("../data/mass_numbers_v1.dat");
pub const NUCLEAR_G_V1: &str = include_str!("../data/nuclear_g_v1.dat");

/// Versions of the shipped tables, embedded in result files.
pub const DATA_VERSIONS: &[(&str, u32)] = &[
    ("erf-fit", 1),
    ("radii", 1),
    ("mass-numbers", 1),
    ("nuclear-g", 1),
];

const SYMBOLS: [&str; 86] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl",
    "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
    "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In",
    "Sn", "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb",
    "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl",
    "Pb", "Bi", "Po", "At", "Rn",
];

pub fn element_symbol(z: u32) -> Option<&'static str> {
    SYMBOLS.get((z as usize).checked_sub(1)?).copied()
}

pub fn atomic_number(symbol: &str) -> Option<u32> {
    SYMBOLS
        .iter()
        .position(|s| s.eq_ignore_ascii_case(symbol))
        .map(|i| i as u32 + 1)
}

/// Content lines of a table after checking its `format` header.
pub(crate) fn table_lines<'a>(
    text: &'a str,
    name: &str,
    version: u32,
) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let expected = format!("format {name} {version}");
    match lines.next() {
        Some((_, l)) if l.split_whitespace().collect::<Vec<_>>().join(" ") == expected => {}
        _ => {
            return Err(Error::MalformedFile(format!(
                "table does not start with `{expected}`"
            )))
        }
    }
    Ok(lines.map(|(n, l)| (n, l.split_whitespace().collect())))
}

pub(crate) fn parse_field<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::MalformedFile(format!("line {line}: cannot parse `{tok}`")))
}

/// Parses a two-column `<Z> <value>` table.
pub(crate) fn per_element<T: std::str::FromStr>(
    text: &str,
    name: &str,
    version: u32,
) -> Result<Vec<(u32, T)>> {
    let mut out = Vec::new();
    for (n, toks) in table_lines(text, name, version)? {
        if toks.len() != 2 {
            return Err(Error::MalformedFile(format!("line {n}: expected `<Z> <value>`")));
        }
        out.push((parse_field(toks[0], n)?, parse_field(toks[1], n)?));
    }
    Ok(out)
}

/// Most abundant mass number for element `z`.
pub fn default_mass_number(z: u32) -> Option<u32> {
    per_element::<u32>(MASS_NUMBERS_V1, "mass-numbers", 1)
        .expect("shipped mass-number table is valid")
        .into_iter()
        .find(|&(zz, _)| zz == z)
        .map(|(_, a)| a)
}

/// Shipped radial mapping radius r_m (bohr) for element `z`.
pub fn default_radius(z: u32) -> Option<f64> {
    per_element::<f64>(RADIAL_RADII_V1, "radii", 1)
        .expect("shipped radii table is valid")
        .into_iter()
        .find(|&(zz, _)| zz == z)
        .map(|(_, r)| r)
}

/// Shipped nuclear g-factor for isotope (Z, A).
pub fn nuclear_g_factor(z: u32, a: u32) -> Option<f64> {
    let lines = table_lines(NUCLEAR_G_V1, "nuclear-g", 1).expect("shipped g table is valid");
    for (n, toks) in lines {
        let zz: u32 = parse_field(toks[0], n).ok()?;
        let aa: u32 = parse_field(toks[1], n).ok()?;
        if zz == z && aa == a {
            return parse_field(toks[2], n).ok();
        }
    }
    None
}

/// Isotope label such as `13C`.
pub fn isotope_label(z: u32, a: u32) -> String {
    format!("{a}{}", element_symbol(z).unwrap_or("?"))
}
