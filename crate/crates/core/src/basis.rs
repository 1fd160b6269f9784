//! Cartesian Gaussian basis functions.
//!
//! A primitive component with powers (l, m, n) and exponent α is
//! `N x^l y^m z^n exp(-α r²)` with
//! `N = (2α/π)^{3/4} (4α)^{L/2} / sqrt((2l-1)!! (2m-1)!! (2n-1)!!)`,
//! so every component of every primitive is normalized on its own.
//! Components are ordered lexicographically: xx, xy, xz, yy, yz, zz for d,
//! and the same pattern for f and g.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Vector3};

use crate::system::{BasisShell, MolecularSystem};

/// Exponent arguments beyond this are treated as exact zeros.
const EXP_CUTOFF: f64 = 80.0;

/// Cartesian powers of a shell in canonical order.
pub fn cartesian_powers(l: u8) -> Vec<[u8; 3]> {
    let mut out = Vec::with_capacity(crate::system::n_cartesian(l));
    for lx in (0..=l).rev() {
        for ly in (0..=l - lx).rev() {
            out.push([lx, ly, l - lx - ly]);
        }
    }
    out
}

/// (2n−1)!! with (−1)!! = 1.
pub fn double_factorial_odd(n: u8) -> f64 {
    let mut k = 2 * n as i32 - 1;
    let mut acc = 1.0;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

/// Radial part of the primitive normalization, shared by all components.
pub fn radial_norm(alpha: f64, l: u8) -> f64 {
    (2.0 * alpha / PI).powf(0.75) * (4.0 * alpha).powf(l as f64 / 2.0)
}

/// Full normalization constant of one primitive component.
pub fn primitive_norm(alpha: f64, powers: [u8; 3]) -> f64 {
    let l = powers.iter().sum();
    radial_norm(alpha, l) * component_factor(powers)
}

fn component_factor(powers: [u8; 3]) -> f64 {
    1.0 / powers.iter().map(|&p| double_factorial_odd(p)).product::<f64>().sqrt()
}

#[derive(Debug, Clone, Default)]
pub struct BasisEvaluation {
    pub values: Vec<f64>,
    pub gradients: Vec<Vector3<f64>>,
}

struct PreparedShell {
    center: Vector3<f64>,
    exponents: Vec<f64>,
    /// Contraction coefficient times radial normalization.
    weights: Vec<f64>,
    min_exponent: f64,
    powers: Vec<[u8; 3]>,
    factors: Vec<f64>,
}

/// Basis functions of a system with normalization folded in, ready for
/// repeated evaluation.
pub struct Basis {
    shells: Vec<PreparedShell>,
    nbf: usize,
}

impl Basis {
    pub fn new(system: &MolecularSystem) -> Self {
        let shells = system
            .shells
            .iter()
            .map(|s| prepare(s, system.atoms[s.center].position))
            .collect::<Vec<_>>();
        let nbf = shells.iter().map(|s| s.powers.len()).sum();
        Basis { shells, nbf }
    }

    pub fn nbf(&self) -> usize {
        self.nbf
    }

    pub fn eval(&self, point: &Vector3<f64>) -> BasisEvaluation {
        let mut out = BasisEvaluation::default();
        self.eval_into(point, &mut out);
        out
    }

    pub fn eval_into(&self, point: &Vector3<f64>, out: &mut BasisEvaluation) {
        out.values.clear();
        out.gradients.clear();
        for sh in &self.shells {
            let d = point - sh.center;
            let r2 = d.norm_squared();
            if sh.min_exponent * r2 > EXP_CUTOFF {
                for _ in 0..sh.powers.len() {
                    out.values.push(0.0);
                    out.gradients.push(Vector3::zeros());
                }
                continue;
            }
            // radial sum and its derivative with respect to r² (times 2)
            let mut rad = 0.0;
            let mut drad = 0.0;
            for (&a, &w) in sh.exponents.iter().zip(&sh.weights) {
                let e = w * (-a * r2).exp();
                rad += e;
                drad -= 2.0 * a * e;
            }
            for (p, &f) in sh.powers.iter().zip(&sh.factors) {
                let px = [pow(d.x, p[0]), pow(d.y, p[1]), pow(d.z, p[2])];
                let dpx = [dpow(d.x, p[0]), dpow(d.y, p[1]), dpow(d.z, p[2])];
                let ang = px[0] * px[1] * px[2];
                out.values.push(f * ang * rad);
                out.gradients.push(Vector3::new(
                    f * (dpx[0] * px[1] * px[2] * rad + ang * d.x * drad),
                    f * (px[0] * dpx[1] * px[2] * rad + ang * d.y * drad),
                    f * (px[0] * px[1] * dpx[2] * rad + ang * d.z * drad),
                ));
            }
        }
    }

    /// Analytic overlap matrix.
    pub fn overlap(&self) -> DMatrix<f64> {
        let mut funcs = Vec::with_capacity(self.nbf);
        for sh in &self.shells {
            for (p, &f) in sh.powers.iter().zip(&sh.factors) {
                funcs.push((sh, *p, f));
            }
        }
        let n = funcs.len();
        let mut s = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let (a, pa, fa) = funcs[i];
                let (b, pb, fb) = funcs[j];
                let mut acc = 0.0;
                for (&ea, &wa) in a.exponents.iter().zip(&a.weights) {
                    for (&eb, &wb) in b.exponents.iter().zip(&b.weights) {
                        acc += wa * wb * gaussian_overlap(ea, pa, &a.center, eb, pb, &b.center);
                    }
                }
                s[(i, j)] = fa * fb * acc;
                s[(j, i)] = s[(i, j)];
            }
        }
        s
    }
}

fn prepare(s: &BasisShell, center: Vector3<f64>) -> PreparedShell {
    let powers = cartesian_powers(s.l);
    let factors = powers.iter().map(|&p| component_factor(p)).collect();
    PreparedShell {
        center,
        weights: s
            .exponents
            .iter()
            .zip(&s.coefficients)
            .map(|(&a, &c)| c * radial_norm(a, s.l))
            .collect(),
        min_exponent: s.exponents.iter().cloned().fold(f64::INFINITY, f64::min),
        exponents: s.exponents.clone(),
        powers,
        factors,
    }
}

fn pow(x: f64, n: u8) -> f64 {
    x.powi(n as i32)
}

fn dpow(x: f64, n: u8) -> f64 {
    if n == 0 {
        0.0
    } else {
        n as f64 * x.powi(n as i32 - 1)
    }
}

/// Overlap of two unnormalized Cartesian Gaussians.
fn gaussian_overlap(
    a: f64,
    pa: [u8; 3],
    ca: &Vector3<f64>,
    b: f64,
    pb: [u8; 3],
    cb: &Vector3<f64>,
) -> f64 {
    let p = a + b;
    let mu = a * b / p;
    let mut out = (PI / p).powf(1.5) * (-mu * (ca - cb).norm_squared()).exp();
    for k in 0..3 {
        let pc = (a * ca[k] + b * cb[k]) / p;
        out *= overlap_1d(pa[k], pc - ca[k], pb[k], pc - cb[k], p);
    }
    out
}

/// ∫ (x+da)^la (x+db)^lb exp(−p x²) dx divided by sqrt(π/p).
fn overlap_1d(la: u8, da: f64, lb: u8, db: f64, p: f64) -> f64 {
    let mut sum = 0.0;
    for i in 0..=la {
        for j in 0..=lb {
            let k = i + j;
            if k % 2 == 1 {
                continue;
            }
            sum += binomial(la, i)
                * binomial(lb, j)
                * da.powi((la - i) as i32)
                * db.powi((lb - j) as i32)
                * gaussian_moment(k, p);
        }
    }
    sum
}

/// ∫ x^k exp(−p x²) dx / sqrt(π/p) for even k.
fn gaussian_moment(k: u8, p: f64) -> f64 {
    double_factorial_odd(k / 2) / (2.0 * p).powi((k / 2) as i32)
}

fn binomial(n: u8, k: u8) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

/// Values and gradients of every basis function at `point`.
pub fn eval_basis(system: &MolecularSystem, point: &Vector3<f64>) -> BasisEvaluation {
    Basis::new(system).eval(point)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        assert_eq!(
            cartesian_powers(2),
            vec![[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]
        );
        assert_eq!(cartesian_powers(4).len(), 15);
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(0), 1.0);
        assert_eq!(double_factorial_odd(1), 1.0);
        assert_eq!(double_factorial_odd(2), 3.0);
        assert_eq!(double_factorial_odd(4), 105.0);
    }

    #[test]
    fn moments() {
        // ∫x² e^{-x²} = sqrt(π)/2
        assert!((gaussian_moment(2, 1.0) - 0.5).abs() < 1e-15);
        assert!((gaussian_moment(4, 1.0) - 0.75).abs() < 1e-15);
    }
}
