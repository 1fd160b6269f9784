//! Charge and spin densities on points, and the reduced spin densities that
//! drive the spin current.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3, Vector4};

use crate::basis::{Basis, BasisEvaluation};
use crate::error::{Error, Result};
use crate::grid::{deterministic_sum, QuadratureGrid};
use crate::system::{MolecularSystem, SpinResolvedDensity};

/// Below this effective spin the input is treated as closed shell.
pub const MIN_EFFECTIVE_SPIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinFieldSample {
    pub gamma: f64,
    /// Spin density vector (Q_x, Q_y, Q_z), in units of ħ.
    pub q: Vector3<f64>,
    /// `grad_q[(a, b)] = ∂_b Q_a`.
    pub grad_q: Matrix3<f64>,
    /// `curl_q[i] = ε_ijk ∂_j Q_k`.
    pub curl_q: Vector3<f64>,
}

/// Curl of an axial field taken from its Jacobian `jac[(a, b)] = ∂_b F_a`.
pub fn curl_from_jacobian(jac: &Matrix3<f64>) -> Vector3<f64> {
    Vector3::new(
        jac[(2, 1)] - jac[(1, 2)],
        jac[(0, 2)] - jac[(2, 0)],
        jac[(1, 0)] - jac[(0, 1)],
    )
}

/// ∇×(f ê_axis) = ∇f × ê_axis.
pub fn curl_along_axis(grad_f: &Vector3<f64>, axis: usize) -> Vector3<f64> {
    grad_f.cross(&Vector3::ith(axis, 1.0))
}

fn contract(m: &DMatrix<f64>, be: &BasisEvaluation, chi: &DVector<f64>) -> (f64, Vector3<f64>) {
    // χᵀMχ and its gradient 2 Σ_p (Mχ)_p ∇χ_p for symmetric M
    let t = m * chi;
    let grad = be
        .gradients
        .iter()
        .zip(t.iter())
        .fold(Vector3::zeros(), |acc, (g, &tp)| acc + g * (2.0 * tp));
    (chi.dot(&t), grad)
}

/// Densities from density matrices given basis values at a point.
pub fn eval_fields(density: &SpinResolvedDensity, be: &BasisEvaluation) -> SpinFieldSample {
    eval_fields_with(density, be, density.is_collinear())
}

fn eval_fields_with(density: &SpinResolvedDensity, be: &BasisEvaluation, collinear: bool) -> SpinFieldSample {
    let chi = DVector::from_column_slice(&be.values);
    let gamma = chi.dot(&(&density.p * &chi));
    let mut q = Vector3::zeros();
    let mut grad_q = Matrix3::zeros();
    let mats = [&density.psx, &density.psy, &density.psz];
    for (a, m) in mats.iter().enumerate() {
        if collinear && a < 2 {
            continue;
        }
        let (v, g) = contract(m, be, &chi);
        q[a] = 0.5 * v;
        grad_q.set_row(a, &(g * 0.5).transpose());
    }
    SpinFieldSample { gamma, q, curl_q: curl_from_jacobian(&grad_q), grad_q }
}

/// A density bound to its basis for point evaluation.
pub struct DensityField {
    basis: Basis,
    density: SpinResolvedDensity,
    collinear: bool,
}

impl DensityField {
    pub fn new(system: &MolecularSystem, density: &SpinResolvedDensity) -> Result<Self> {
        density.validate(system.nbf())?;
        Ok(DensityField {
            basis: Basis::new(system),
            collinear: density.is_collinear(),
            density: density.clone(),
        })
    }

    pub fn is_collinear(&self) -> bool {
        self.collinear
    }

    pub fn sample(&self, point: &Vector3<f64>) -> SpinFieldSample {
        eval_fields_with(&self.density, &self.basis.eval(point), self.collinear)
    }
}

/// Effective spin magnitude and the spin integrals it comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedSpinDensity {
    pub s_eff: f64,
    /// ∫Q_α dV for α = x, y, z.
    pub integrals: Vector3<f64>,
    pub electrons: f64,
}

impl ReducedSpinDensity {
    /// Reduced densities Q_S^β (β = x, y, z) and their gradients from a
    /// field sample: Q_S = Q_z/S, Q_S^x = Q_S + Q_x/S, Q_S^y = Q_S + Q_y/S,
    /// Q_S^z = Q_S. With `include_delta = false` all three equal Q_S.
    pub fn reduce(&self, f: &SpinFieldSample, include_delta: bool) -> ReducedSample {
        let inv = 1.0 / self.s_eff;
        let qs = f.q.z * inv;
        let gs: Vector3<f64> = f.grad_q.row(2).transpose() * inv;
        if !include_delta {
            return ReducedSample { q: [qs; 3], grad: [gs; 3] };
        }
        let gx: Vector3<f64> = f.grad_q.row(0).transpose() * inv;
        let gy: Vector3<f64> = f.grad_q.row(1).transpose() * inv;
        ReducedSample {
            q: [qs + f.q.x * inv, qs + f.q.y * inv, qs],
            grad: [gs + gx, gs + gy, gs],
        }
    }
}

/// Integrates the spin density on `grid` and forms S = |∫Q|.
pub fn build_reduced(field: &DensityField, grid: &QuadratureGrid) -> Result<ReducedSpinDensity> {
    let sums = deterministic_sum(grid.len(), Vector4::zeros(), |i| {
        let s = field.sample(&grid.points[i]);
        Vector4::new(s.gamma, s.q.x, s.q.y, s.q.z) * grid.weights[i]
    });
    let integrals = Vector3::new(sums[1], sums[2], sums[3]);
    let s_eff = integrals.norm();
    if !(s_eff >= MIN_EFFECTIVE_SPIN) {
        return Err(Error::ClosedShellInput { s_eff });
    }
    Ok(ReducedSpinDensity { s_eff, integrals, electrons: sums[0] })
}

/// Q_S^β and ∇Q_S^β for β = x, y, z at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedSample {
    pub q: [f64; 3],
    pub grad: [Vector3<f64>; 3],
}

impl ReducedSample {
    pub fn scaled(&self, lambda: f64) -> Self {
        ReducedSample { q: self.q.map(|v| v * lambda), grad: self.grad.map(|g| g * lambda) }
    }
}

/// Anything that yields reduced spin densities at arbitrary points.
pub trait ReducedSource: Sync {
    fn reduced_at(&self, point: &Vector3<f64>) -> ReducedSample;

    /// Spin density vector Q(r) in units of ħ, for maps.
    fn spin_density_at(&self, point: &Vector3<f64>) -> Vector3<f64>;
}

/// Reduced densities of an ingested density matrix.
pub struct DensitySource {
    pub field: DensityField,
    pub reduced: ReducedSpinDensity,
    pub include_delta: bool,
}

impl ReducedSource for DensitySource {
    fn reduced_at(&self, point: &Vector3<f64>) -> ReducedSample {
        self.reduced.reduce(&self.field.sample(point), self.include_delta)
    }

    fn spin_density_at(&self, point: &Vector3<f64>) -> Vector3<f64> {
        self.field.sample(point).q
    }
}

/// Collinear model spin density built from normalized spherical Gaussians,
/// `Q_S(r) = Σ_k w_k (α_k/π)^{3/2} exp(−α_k |r − C_k|²)`; Q_z = S·Q_S.
#[derive(Debug, Clone)]
pub struct GaussianSpinModel {
    pub terms: Vec<(Vector3<f64>, f64, f64)>,
    pub spin: f64,
}

impl GaussianSpinModel {
    /// One normalized Gaussian of exponent `alpha` at `center`.
    pub fn single(center: Vector3<f64>, alpha: f64, spin: f64) -> Self {
        GaussianSpinModel { terms: vec![(center, alpha, 1.0)], spin }
    }

    fn each(&self, point: &Vector3<f64>) -> impl Iterator<Item = (Vector3<f64>, f64, f64)> + '_ {
        let p = *point;
        self.terms.iter().map(move |&(c, a, w)| {
            let d = p - c;
            (d, a, w * (a / std::f64::consts::PI).powf(1.5) * (-a * d.norm_squared()).exp())
        })
    }

    pub fn value(&self, point: &Vector3<f64>) -> f64 {
        self.each(point).map(|(_, _, g)| g).sum()
    }

    pub fn gradient(&self, point: &Vector3<f64>) -> Vector3<f64> {
        self.each(point).fold(Vector3::zeros(), |acc, (d, a, g)| acc - d * (2.0 * a * g))
    }

    pub fn hessian(&self, point: &Vector3<f64>) -> Matrix3<f64> {
        self.each(point).fold(Matrix3::zeros(), |acc, (d, a, g)| {
            acc + (d * d.transpose() * (4.0 * a * a) - Matrix3::identity() * (2.0 * a)) * g
        })
    }
}

impl ReducedSource for GaussianSpinModel {
    fn reduced_at(&self, point: &Vector3<f64>) -> ReducedSample {
        let q = self.value(point);
        let g = self.gradient(point);
        ReducedSample { q: [q; 3], grad: [g; 3] }
    }

    fn spin_density_at(&self, point: &Vector3<f64>) -> Vector3<f64> {
        Vector3::new(0.0, 0.0, self.spin * self.value(point))
    }
}
