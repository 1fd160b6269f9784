use nalgebra::{DMatrix, Vector3};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub z: u32,
    pub mass_number: u32,
    /// Position in bohr.
    pub position: Vector3<f64>,
}

/// A contracted Cartesian shell. Coefficients multiply individually
/// normalized primitives.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisShell {
    pub center: usize,
    pub l: u8,
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
}

impl BasisShell {
    pub fn n_functions(&self) -> usize {
        n_cartesian(self.l)
    }
}

pub fn n_cartesian(l: u8) -> usize {
    let l = l as usize;
    (l + 1) * (l + 2) / 2
}

#[derive(Debug, Clone, PartialEq)]
pub struct MolecularSystem {
    pub atoms: Vec<Atom>,
    pub shells: Vec<BasisShell>,
    pub n_alpha: usize,
    pub n_beta: usize,
}

impl MolecularSystem {
    pub fn new(
        atoms: Vec<Atom>,
        shells: Vec<BasisShell>,
        n_alpha: usize,
        n_beta: usize,
    ) -> Result<Self> {
        let sys = MolecularSystem { atoms, shells, n_alpha, n_beta };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_beta > self.n_alpha {
            return Err(Error::BetaExcess { n_alpha: self.n_alpha, n_beta: self.n_beta });
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if a.z == 0 || a.mass_number == 0 {
                return Err(Error::MalformedFile(format!(
                    "atom {}: atomic and mass numbers must be positive",
                    i + 1
                )));
            }
        }
        for (i, s) in self.shells.iter().enumerate() {
            if s.center >= self.atoms.len() {
                return Err(Error::MalformedFile(format!(
                    "shell {}: centre {} is not an atom",
                    i + 1,
                    s.center + 1
                )));
            }
            if s.l > 4 {
                return Err(Error::UnsupportedShell { shell: i + 1, code: s.l as i64 });
            }
            if s.exponents.len() != s.coefficients.len() || s.exponents.is_empty() {
                return Err(Error::MalformedFile(format!("shell {}: empty or ragged contraction", i + 1)));
            }
            if s.exponents.iter().any(|&e| !(e > 0.0)) {
                return Err(Error::MalformedFile(format!("shell {}: non-positive exponent", i + 1)));
            }
        }
        Ok(())
    }

    pub fn nbf(&self) -> usize {
        self.shells.iter().map(BasisShell::n_functions).sum()
    }

    /// Number of unpaired electrons divided by two.
    pub fn spin(&self) -> f64 {
        (self.n_alpha - self.n_beta) as f64 / 2.0
    }

    pub fn positions(&self) -> Vec<Vector3<f64>> {
        self.atoms.iter().map(|a| a.position).collect()
    }
}

/// Charge density matrix and the three spin density matrices over basis
/// function pairs. `P^σz = P^α − P^β` in collinear calculations.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinResolvedDensity {
    pub p: DMatrix<f64>,
    pub psx: DMatrix<f64>,
    pub psy: DMatrix<f64>,
    pub psz: DMatrix<f64>,
}

impl SpinResolvedDensity {
    pub fn collinear(p: DMatrix<f64>, psz: DMatrix<f64>) -> Self {
        let n = p.nrows();
        SpinResolvedDensity { p, psx: DMatrix::zeros(n, n), psy: DMatrix::zeros(n, n), psz }
    }

    pub fn dim(&self) -> usize {
        self.p.nrows()
    }

    /// True when the transverse spin matrices are exactly zero.
    pub fn is_collinear(&self) -> bool {
        self.psx.iter().all(|&v| v == 0.0) && self.psy.iter().all(|&v| v == 0.0)
    }

    pub fn matrices(&self) -> [(&'static str, &DMatrix<f64>); 4] {
        [("P", &self.p), ("PSX", &self.psx), ("PSY", &self.psy), ("PSZ", &self.psz)]
    }

    /// Checks shapes against the basis size and requires symmetric matrices.
    pub fn validate(&self, nbf: usize) -> Result<()> {
        for (name, m) in self.matrices() {
            if m.nrows() != nbf || m.ncols() != nbf {
                return Err(Error::MalformedFile(format!(
                    "{name} is {}x{}, basis has {nbf} functions",
                    m.nrows(),
                    m.ncols()
                )));
            }
            let scale = m.amax().max(1.0);
            for i in 0..nbf {
                for j in 0..i {
                    if (m[(i, j)] - m[(j, i)]).abs() > 1e-10 * scale {
                        return Err(Error::MalformedFile(format!(
                            "{name} is not symmetric at ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The density of the M_S = −S partner: all spin matrices negated.
    pub fn spin_reversed(&self) -> Self {
        SpinResolvedDensity {
            p: self.p.clone(),
            psx: -&self.psx,
            psy: -&self.psy,
            psz: -&self.psz,
        }
    }

    /// trace(P S).
    pub fn electron_count(&self, overlap: &DMatrix<f64>) -> f64 {
        self.p.component_mul(overlap).sum()
    }
}
