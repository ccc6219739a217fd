//! Quaternionic chart of de Sitter space.
//!
//! Points of the hyperboloid `M = {x in R^5 : eta(x,x) = -1}` are encoded as
//! 2x2 quaternionic matrices. The Clifford generators are
//!
//! ```text
//! g0 = [[1, 0], [0, -1]]   g1 = [[0, 1], [-1, 0]]   g(k+1) = [[0, e_k], [e_k, 0]]  (k = 1, 2, 3)
//! ```
//!
//! with `{1, e1, e2, e3}` the quaternion units (`e1 e2 = e3`). The embedding
//! uses the raised-index generators `g^mu = eta^{mu mu} g_mu`:
//!
//! ```text
//! x~ = sum_mu x^mu g^mu = [[x0, -q], [conj(q), -x0]],   q = x1 + x2 e1 + x3 e2 + x4 e3,
//! ```
//!
//! so that `x^mu = Tr(g_mu x~) / 4` holds verbatim, `x~* g0 x~ g0 = eta(x,x) 1`,
//! and the conjugation action `x~ -> g x~ g^{-1}` of the spin group reproduces
//! the boost `Lambda(t)` with positive `sinh` entries.
//!
//! Traces of quaternionic matrices are taken in the 4x4 complex realization
//! fixed by [`Quaternion::to_complex`]: `1 -> I2`, `e_k -> -i sigma_k`.

use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

/// Ambient Minkowski metric, signature (+,-,-,-,-).
pub const ETA: [f64; 5] = [1.0, -1.0, -1.0, -1.0, -1.0];

/// Tolerance for the on-hyperboloid precondition and geometry identities.
pub const GEOMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const E3: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Unit `e_k`, `k` in 1..=3.
    pub fn unit(k: usize) -> Self {
        match k {
            1 => Self::E1,
            2 => Self::E2,
            3 => Self::E3,
            _ => panic!("quaternion unit index {k} out of range"),
        }
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// `|q|^2 = q conj(q)`.
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn max_abs(self) -> f64 {
        self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs())
    }

    /// 2x2 complex realization, `e_k -> -i sigma_k`.
    pub fn to_complex(self) -> [[C64; 2]; 2] {
        let Self { w, x, y, z } = self;
        [
            [C64::new(w, -z), C64::new(-y, -x)],
            [C64::new(y, -x), C64::new(w, z)],
        ]
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self, o);
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

/// 2x2 matrix over the quaternions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuatMatrix2 {
    pub entries: [[Quaternion; 2]; 2],
}

impl QuatMatrix2 {
    pub const fn new(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Self {
        Self { entries: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        Self::new(Quaternion::ZERO, Quaternion::ZERO, Quaternion::ZERO, Quaternion::ZERO)
    }

    pub fn identity() -> Self {
        Self::real_diag(1.0, 1.0)
    }

    pub fn real_diag(a: f64, d: f64) -> Self {
        Self::new(Quaternion::real(a), Quaternion::ZERO, Quaternion::ZERO, Quaternion::real(d))
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Self::new(
            Quaternion::real(m[0][0]),
            Quaternion::real(m[0][1]),
            Quaternion::real(m[1][0]),
            Quaternion::real(m[1][1]),
        )
    }

    /// Quaternionic conjugate transpose.
    pub fn star(&self) -> Self {
        let e = &self.entries;
        Self::new(e[0][0].conj(), e[1][0].conj(), e[0][1].conj(), e[1][1].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        let e = &self.entries;
        Self::new(e[0][0].scale(s), e[0][1].scale(s), e[1][0].scale(s), e[1][1].scale(s))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|q| q.max_abs()).fold(0.0, f64::max)
    }

    /// 4x4 complex realization (block-wise [`Quaternion::to_complex`]).
    pub fn to_complex(&self) -> CMatrix {
        let mut m = CMatrix::zeros(4, 4);
        for (bi, row) in self.entries.iter().enumerate() {
            for (bj, q) in row.iter().enumerate() {
                let c = q.to_complex();
                for i in 0..2 {
                    for j in 0..2 {
                        m[(2 * bi + i, 2 * bj + j)] = c[i][j];
                    }
                }
            }
        }
        m
    }

    /// Trace in the complex realization: `2 * Re(a + d)`.
    pub fn trace(&self) -> f64 {
        2.0 * (self.entries[0][0].w + self.entries[1][1].w)
    }
}

impl Add for QuatMatrix2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = (&self.entries, &o.entries);
        Self::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for QuatMatrix2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let (a, b) = (&self.entries, &o.entries);
        Self::new(a[0][0] - b[0][0], a[0][1] - b[0][1], a[1][0] - b[1][0], a[1][1] - b[1][1])
    }
}

impl Neg for QuatMatrix2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for QuatMatrix2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (&self.entries, &o.entries);
        let entry = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Self::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }
}

/// Point of ambient R^5, components `x^0 .. x^4`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AmbientVector(pub [f64; 5]);

impl AmbientVector {
    pub const fn new(c: [f64; 5]) -> Self {
        Self(c)
    }

    pub fn basis(mu: usize) -> Self {
        let mut c = [0.0; 5];
        c[mu] = 1.0;
        Self(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(o.0) {
            *x -= y;
        }
        Self(c)
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.0.iter().zip(o.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// `|eta(x,x) + 1|`.
    pub fn hyperboloid_residual(&self) -> f64 {
        (minkowski_form(self, self) + 1.0).abs()
    }
}

/// `eta(a, b) = a0 b0 - sum_k ak bk`.
pub fn minkowski_form(a: &AmbientVector, b: &AmbientVector) -> f64 {
    (0..5).map(|i| ETA[i] * a.0[i] * b.0[i]).sum()
}

/// Clifford generator `gamma_mu`.
pub fn gamma(mu: usize) -> Result<QuatMatrix2> {
    let o = Quaternion::ZERO;
    Ok(match mu {
        0 => QuatMatrix2::real_diag(1.0, -1.0),
        1 => QuatMatrix2::from_real([[0.0, 1.0], [-1.0, 0.0]]),
        2..=4 => {
            let e = Quaternion::unit(mu - 1);
            QuatMatrix2::new(o, e, e, o)
        }
        _ => return Err(Error::GammaIndex(mu)),
    })
}

/// `gamma^mu = eta^{mu mu} gamma_mu`.
pub fn gamma_upper(mu: usize) -> Result<QuatMatrix2> {
    Ok(gamma(mu)?.scale(ETA.get(mu).copied().ok_or(Error::GammaIndex(mu))?))
}

/// The five generators, infallible.
pub fn gammas() -> [QuatMatrix2; 5] {
    core::array::from_fn(|mu| gamma(mu).expect("index in range"))
}

/// Embed a point of `M`; fails if `x` is off the hyperboloid.
pub fn embed_point(x: &AmbientVector) -> Result<QuatMatrix2> {
    let residual = x.hyperboloid_residual();
    if !(residual <= GEOMETRY_TOL * (1.0 + x.0.iter().map(|c| c * c).sum::<f64>())) {
        return Err(Error::OffHyperboloid { residual });
    }
    Ok(embed_vector(x))
}

/// Relaxed embedding `x~ = sum x^mu gamma_mu` of an arbitrary ambient vector.
pub fn embed_vector(x: &AmbientVector) -> QuatMatrix2 {
    let q = Quaternion::new(0.0, x.0[2], x.0[3], x.0[4]);
    QuatMatrix2::new(Quaternion::real(x.0[0]), Quaternion::real(x.0[1]) + q, Quaternion::real(-x.0[1]) + q, Quaternion::real(-x.0[0]))
}

/// `x^mu = Tr(gamma^mu m) / 4` without the image check.
pub fn trace_components(m: &QuatMatrix2) -> AmbientVector {
    AmbientVector(core::array::from_fn(|mu| 0.25 * (gamma_upper(mu).expect("index in range") * *m).trace()))
}

/// Inverse of [`embed_vector`]; rejects matrices outside its image.
pub fn extract_point(m: &QuatMatrix2) -> Result<AmbientVector> {
    let x = trace_components(m);
    let residual = (embed_vector(&x) - *m).max_abs();
    if residual > 1e-10 * (1.0 + m.max_abs()) {
        return Err(Error::NotAPoint { residual });
    }
    Ok(x)
}
