//! Warped convolution of Fock operators with respect to the commuting
//! boost and gauge flows, its Rieffel product, and an oscillatory-integral
//! oracle.
//!
//! With `K` the boost generator and `Q` the charge, both diagonal in the
//! occupation basis, an operator shifting charge by `m` deforms as
//!
//! `F_kappa = sum_n U(kappa n) F U(-kappa (n + m)) E(n)`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::car_fock::{FockOperator, OneParticleModel};
use crate::error::{Error, Result};
use crate::linalg::{phase, CMatrix, C64, ZERO};
use crate::quadrature;

/// Default grid of deformation parameters for sweeps.
pub const KAPPA_GRID: [f64; 7] = [-1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0];

/// The flows `(t, s) -> U(t) V(s)` together with the deformation parameter.
///
/// `basis` is an optional charge-preserving unitary `W` for flows of the form
/// `W U(t) W^*`; `None` means the model's own boost.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformationContext {
    kappa: f64,
    energies: Arc<[f64]>,
    charges: Arc<[i32]>,
    basis: Option<CMatrix>,
}

impl DeformationContext {
    pub fn new(model: &OneParticleModel, kappa: f64) -> Self {
        Self {
            kappa,
            energies: model.boost_energies().into(),
            charges: model.fock_space().charges().to_vec().into(),
            basis: None,
        }
    }

    /// Context for the pushed-forward flow `W U(t) W^*`.
    pub fn transported(&self, w: &FockOperator) -> Result<Self> {
        let n = self.energies.len();
        if w.dim() != n {
            return Err(Error::Dimension { expected: n, got: w.dim() });
        }
        if w.shifts().iter().any(|m| *m != 0) {
            return Err(Error::InvalidModel("transport must commute with the charge".into()));
        }
        let basis = match &self.basis {
            Some(b) => w.matrix() * b,
            None => w.matrix().clone(),
        };
        Ok(Self { basis: Some(basis), ..self.clone() })
    }

    pub fn with_kappa(&self, kappa: f64) -> Self {
        Self { kappa, ..self.clone() }
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn charges(&self) -> &[i32] {
        &self.charges
    }

    fn spectrum(&self) -> (i32, i32) {
        let lo = self.charges.iter().copied().min().unwrap_or(0);
        let hi = self.charges.iter().copied().max().unwrap_or(0);
        (lo, hi)
    }

    fn to_eigenbasis(&self, f: &FockOperator) -> FockOperator {
        match &self.basis {
            Some(w) => f.with_matrix(&(&w.adjoint() * f.matrix()) * w),
            None => f.clone(),
        }
    }

    fn out_of_eigenbasis(&self, f: &FockOperator) -> FockOperator {
        match &self.basis {
            Some(w) => f.with_matrix(&(w * f.matrix()) * &w.adjoint()),
            None => f.clone(),
        }
    }

    /// Diagonal of `U(t)` in the flow's eigenbasis.
    fn boost_phases(&self, t: f64) -> Vec<C64> {
        self.energies.iter().map(|k| phase(t * k)).collect()
    }

    /// `U(t) V(s)` as a Fock operator.
    pub fn flow_unitary(&self, like: &FockOperator, t: f64, s: f64) -> FockOperator {
        let d: Vec<C64> = self
            .energies
            .iter()
            .zip(self.charges.iter())
            .map(|(k, q)| phase(t * k + s * *q as f64))
            .collect();
        self.out_of_eigenbasis(&like.with_matrix(CMatrix::diagonal(&d)))
    }

    /// Sector formula, one charge-shift component at a time.
    pub fn warp(&self, f: &FockOperator) -> FockOperator {
        let g = self.to_eigenbasis(f);
        let n = g.dim();
        let (lo, hi) = self.spectrum();
        let mut out = CMatrix::zeros(n, n);
        for (m, component) in g.shift_components() {
            for sector in lo..=hi {
                let left = self.boost_phases(self.kappa * sector as f64);
                let right: Vec<C64> = self
                    .boost_phases(-self.kappa * (sector + m) as f64)
                    .into_iter()
                    .zip(self.charges.iter())
                    .map(|(u, q)| if *q == sector { u } else { ZERO })
                    .collect();
                out = &out + &component.mul_diag_left(&left).mul_diag_right(&right);
            }
        }
        self.out_of_eigenbasis(&g.with_matrix(out))
    }

    /// Inverse deformation: the warp with `-kappa`.
    pub fn unwarp(&self, f: &FockOperator) -> FockOperator {
        self.with_kappa(-self.kappa).warp(f)
    }

    /// `|| unwarp(warp(F)) - F ||`.
    pub fn warp_inverse_check(&self, f: &FockOperator) -> f64 {
        self.unwarp(&self.warp(f)).distance(f)
    }

    /// Spectral evaluation of the deformed product
    /// `(F x G)_{xz} = sum_y F_{xy} G_{yz} e^{i kappa [(K_x - K_y)(Q_y - Q_z) - (Q_x - Q_y)(K_y - K_z)]}`.
    pub fn rieffel_product(&self, f: &FockOperator, g: &FockOperator) -> FockOperator {
        let (a, b) = (self.to_eigenbasis(f), self.to_eigenbasis(g));
        let n = a.dim();
        let (k, q) = (&self.energies, &self.charges);
        let mut out = CMatrix::zeros(n, n);
        for x in 0..n {
            for y in 0..n {
                let fxy = a.matrix()[(x, y)];
                if fxy == ZERO {
                    continue;
                }
                let (kxy, qxy) = (k[x] - k[y], (q[x] - q[y]) as f64);
                for z in 0..n {
                    let gyz = b.matrix()[(y, z)];
                    if gyz == ZERO {
                        continue;
                    }
                    let (kyz, qyz) = (k[y] - k[z], (q[y] - q[z]) as f64);
                    out[(x, z)] += fxy * gyz * phase(self.kappa * (kxy * qyz - qxy * kyz));
                }
            }
        }
        self.out_of_eigenbasis(&a.with_matrix(out))
    }

    /// Regularized oscillatory integral with cutoff `chi(eps v, eps v')`,
    /// evaluated matrix element by matrix element in the flow eigenbasis.
    pub fn warp_oscillatory(&self, f: &FockOperator, eps: f64, cutoff: Cutoff) -> Result<FockOperator> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Regulator(eps));
        }
        let g = self.to_eigenbasis(f);
        let n = g.dim();
        let (k, q) = (&self.energies, &self.charges);
        let mut cache: BTreeMap<(u64, u64), C64> = BTreeMap::new();
        let mut factor = |b: f64, r: f64| -> C64 {
            *cache
                .entry((b.to_bits(), r.to_bits()))
                .or_insert_with(|| coordinate_integral(cutoff, b, r, eps))
        };
        let mut out = CMatrix::zeros(n, n);
        for x in 0..n {
            for y in 0..n {
                let fxy = g.matrix()[(x, y)];
                if fxy == ZERO {
                    continue;
                }
                let p = (k[x] - k[y], (q[x] - q[y]) as f64);
                let b = (-self.kappa * p.1, self.kappa * p.0);
                out[(x, y)] = fxy * factor(b.0, k[y]) * factor(b.1, q[y] as f64);
            }
        }
        Ok(self.out_of_eigenbasis(&g.with_matrix(out)))
    }

    /// Both sides of the covariance identity for a symmetry of the model.
    pub fn covariance_transform(
        &self,
        model: &OneParticleModel,
        f: &FockOperator,
        symmetry: Symmetry,
    ) -> Result<(FockOperator, FockOperator)> {
        match symmetry {
            Symmetry::Boost(t) => {
                let u = self.flow_unitary(f, t, 0.0);
                Ok((self.warp(f).conjugate_by(&u), self.warp(&f.conjugate_by(&u))))
            }
            Symmetry::Gauge(s) => {
                let v = model.gauge_unitary(s);
                Ok((self.warp(f).conjugate_by(&v), self.warp(&f.conjugate_by(&v))))
            }
            Symmetry::Reflection => {
                let j = model.reflection_j()?;
                Ok((self.warp(f).conjugate_by(&j), self.with_kappa(-self.kappa).warp(&f.conjugate_by(&j))))
            }
            Symmetry::Rotation(phi) => {
                let r = model.clone().with_rotation_angle(phi)?.rotation_r()?;
                let pushed = self.transported(&r)?;
                Ok((self.warp(f).conjugate_by(&r), pushed.warp(&f.conjugate_by(&r))))
            }
        }
    }
}

/// Symmetries for [`DeformationContext::covariance_transform`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Symmetry {
    Boost(f64),
    Gauge(f64),
    Reflection,
    /// Model rotation by the given angle between the first two modes of each species.
    Rotation(f64),
}

/// Cutoff `chi(v, v') = c(v_1) c(v_2) c(v'_1) c(v'_2)` for the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cutoff {
    /// `c(u) = exp(-u^2)`.
    Gaussian,
    /// `c(u) = (1 + cos(pi u / R)) / 2` on `|u| <= R`, zero outside.
    RaisedCosine,
}

/// Support radius of the raised-cosine profile.
pub const RAISED_COSINE_RADIUS: f64 = 6.0;

/// One coordinate of the oscillatory integral,
/// `(1/2pi) int dv dv' e^{-i v v'} e^{i v b} e^{i v' r} c(eps v) c(eps v')`,
/// whose limit as `eps -> 0` is `e^{i b r}`.
pub fn coordinate_integral(cutoff: Cutoff, b: f64, r: f64, eps: f64) -> C64 {
    match cutoff {
        Cutoff::Gaussian => {
            let d = 1.0 + 4.0 * libm::pow(eps, 4.0);
            let z = C64::new(-eps * eps * (b * b + r * r), b * r) / d;
            z.exp() / libm::sqrt(d)
        }
        Cutoff::RaisedCosine => coordinate_integral_quadrature(cutoff, b, r, eps),
    }
}

/// The same integral by quadrature: the `v'` integral is the Fourier
/// transform of the profile, the `v` integral is composite Gauss-Legendre.
pub fn coordinate_integral_quadrature(cutoff: Cutoff, b: f64, r: f64, eps: f64) -> C64 {
    let integrand = |v: f64| -> C64 {
        let inner = profile_transform(cutoff, (r - v) / eps) / eps;
        phase(v * b) * (profile(cutoff, eps * v) * inner)
    };
    let total = match cutoff {
        Cutoff::Gaussian => {
            // the inner transform confines v to a few multiples of eps around r
            let half = 40.0 * eps;
            quadrature::composite(r - half, r + half, 80, 16, ZERO, integrand)
        }
        Cutoff::RaisedCosine => {
            let l = RAISED_COSINE_RADIUS / eps;
            let period = 2.0 * PI * eps / RAISED_COSINE_RADIUS;
            let panels = (libm::ceil(2.0 * l / period) as usize).max(64);
            quadrature::composite(-l, l, panels, 12, ZERO, integrand)
        }
    };
    total / (2.0 * PI)
}

fn profile(cutoff: Cutoff, u: f64) -> f64 {
    match cutoff {
        Cutoff::Gaussian => libm::exp(-u * u),
        Cutoff::RaisedCosine => {
            if u.abs() >= RAISED_COSINE_RADIUS {
                0.0
            } else {
                0.5 * (1.0 + libm::cos(PI * u / RAISED_COSINE_RADIUS))
            }
        }
    }
}

/// `int c(u) e^{i k u} du`.
fn profile_transform(cutoff: Cutoff, k: f64) -> f64 {
    match cutoff {
        Cutoff::Gaussian => libm::sqrt(PI) * libm::exp(-k * k / 4.0),
        Cutoff::RaisedCosine => {
            let rad = RAISED_COSINE_RADIUS;
            let a = PI / rad;
            let k = k.abs();
            if k < 0.5 * a {
                a * a * rad * sinc(k * rad) / (a * a - k * k)
            } else {
                // sin(kR) = -sin((k - a)R), a^2 - k^2 = -(k - a)(k + a)
                let h = k - a;
                a * a * rad * sinc(h * rad) / (k * (2.0 * a + h))
            }
        }
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        libm::sin(x) / x
    }
}

/// Entry-wise phase form of the warp, `F_{xy} e^{i kappa (Q_y K_x - Q_x K_y)}`,
/// for diagonal flows.
pub fn warp_entrywise(ctx: &DeformationContext, f: &FockOperator) -> FockOperator {
    let (k, q) = (ctx.energies(), ctx.charges());
    let n = f.dim();
    let m = CMatrix::from_fn(n, n, |x, y| {
        f.matrix()[(x, y)] * phase(ctx.kappa() * (q[y] as f64 * k[x] - q[x] as f64 * k[y]))
    });
    f.with_matrix(m)
}
