//! Finite-mode selfdual CAR algebra in its Fock representation.
//!
//! Modes `0..d_plus` are particles and `d_plus..d_plus + d_minus`
//! antiparticles; `K = C^D` is the mode space. The selfdual space is `K (+) K`
//! with the first copy feeding creators and the second annihilators:
//!
//! `B(a (+) b) = sum_j a_j c_j^* + b_j c_j`,  `C(a (+) b) = conj(b) (+) conj(a)`.
//!
//! Fock basis vectors are occupation bit patterns, bit `j` for mode `j`, with
//! Jordan-Wigner signs taken in mode order.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{inner, phase, CMatrix, C64, ONE, ZERO};

/// Tolerance for model and operator validity checks.
pub const MODEL_TOL: f64 = 1e-10;

/// Finite one-particle data: boost frequencies, localization, reflection
/// pairing and an optional rotation on the mode space.
#[derive(Debug, Clone, PartialEq)]
pub struct OneParticleModel {
    d_plus: usize,
    d_minus: usize,
    freqs: Vec<f64>,
    localized: Vec<usize>,
    pairing: Option<Vec<usize>>,
    rotation: Option<CMatrix>,
    seed: u64,
}

impl OneParticleModel {
    pub fn new(
        boost_freqs_plus: Vec<f64>,
        boost_freqs_minus: Vec<f64>,
        localized_modes: Vec<usize>,
        reflection_pairing: Option<Vec<usize>>,
        rotation: Option<CMatrix>,
        seed: u64,
    ) -> Result<Self> {
        let d_plus = boost_freqs_plus.len();
        let d_minus = boost_freqs_minus.len();
        let d = d_plus + d_minus;
        if d == 0 || d > 16 {
            return Err(Error::InvalidModel(alloc::format!("{d} modes; need 1..=16")));
        }
        let mut freqs = boost_freqs_plus;
        freqs.extend(boost_freqs_minus);
        if freqs.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidModel("non-finite boost frequency".into()));
        }
        let mut seen = vec![false; d];
        for &m in &localized_modes {
            if m >= d || seen[m] {
                return Err(Error::InvalidModel(alloc::format!("bad localized mode {m}")));
            }
            seen[m] = true;
        }
        let model = Self { d_plus, d_minus, freqs, localized: localized_modes, pairing: None, rotation: None, seed };
        let model = match reflection_pairing {
            Some(p) => model.with_pairing(p)?,
            None => model,
        };
        match rotation {
            Some(r) => model.with_rotation(r),
            None => Ok(model),
        }
    }

    /// Two particle and two antiparticle modes with frequencies (+1, -1),
    /// localized modes {first particle, first antiparticle}, and the pairing
    /// swapping the two modes of each species.
    pub fn default_model() -> Self {
        Self::new(vec![1.0, -1.0], vec![1.0, -1.0], vec![0, 2], Some(vec![1, 0, 3, 2]), None, 0)
            .expect("default model is valid")
    }

    fn with_pairing(mut self, p: Vec<usize>) -> Result<Self> {
        let d = self.modes();
        if p.len() != d || p.iter().any(|&j| j >= d) {
            return Err(Error::InvalidModel("pairing must be a map on the modes".into()));
        }
        for i in 0..d {
            if p[p[i]] != i {
                return Err(Error::InvalidModel("pairing is not an involution".into()));
            }
            if self.is_particle(i) != self.is_particle(p[i]) {
                return Err(Error::InvalidModel("pairing mixes particles and antiparticles".into()));
            }
            if (self.freqs[p[i]] + self.freqs[i]).abs() > MODEL_TOL {
                return Err(Error::InvalidModel("pairing must negate the boost frequencies".into()));
            }
        }
        let mut image: Vec<usize> = self.localized.iter().map(|&i| p[i]).collect();
        image.sort_unstable();
        let complement: Vec<usize> = (0..d).filter(|i| !self.localized.contains(i)).collect();
        if image != complement {
            return Err(Error::InvalidModel("pairing must map localized modes onto their complement".into()));
        }
        self.pairing = Some(p);
        Ok(self)
    }

    pub fn with_rotation(mut self, r: CMatrix) -> Result<Self> {
        let d = self.modes();
        if r.rows() != d || r.cols() != d {
            return Err(Error::Dimension { expected: d, got: r.rows() });
        }
        if (&(&r * &r.adjoint()) - &CMatrix::identity(d)).max_abs() > MODEL_TOL {
            return Err(Error::InvalidModel("rotation is not unitary".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if self.is_particle(i) != self.is_particle(j) && r[(i, j)].norm() > MODEL_TOL {
                    return Err(Error::InvalidModel("rotation does not commute with the charge".into()));
                }
            }
        }
        self.rotation = Some(r);
        Ok(self)
    }

    /// Real rotation by `phi` between the first two modes of each species.
    pub fn with_rotation_angle(self, phi: f64) -> Result<Self> {
        let d = self.modes();
        let mut r = CMatrix::identity(d);
        for (start, len) in [(0, self.d_plus), (self.d_plus, self.d_minus)] {
            if len >= 2 {
                let (c, s) = (libm::cos(phi), libm::sin(phi));
                r[(start, start)] = C64::new(c, 0.0);
                r[(start, start + 1)] = C64::new(-s, 0.0);
                r[(start + 1, start)] = C64::new(s, 0.0);
                r[(start + 1, start + 1)] = C64::new(c, 0.0);
            }
        }
        self.with_rotation(r)
    }

    pub fn d_plus(&self) -> usize {
        self.d_plus
    }

    pub fn d_minus(&self) -> usize {
        self.d_minus
    }

    pub fn modes(&self) -> usize {
        self.d_plus + self.d_minus
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn localized_modes(&self) -> &[usize] {
        &self.localized
    }

    pub fn pairing(&self) -> Option<&[usize]> {
        self.pairing.as_deref()
    }

    pub fn rotation(&self) -> Option<&CMatrix> {
        self.rotation.as_ref()
    }

    pub fn is_particle(&self, mode: usize) -> bool {
        mode < self.d_plus
    }

    /// +1 for particle modes, -1 for antiparticle modes.
    pub fn mode_charge(&self, mode: usize) -> i32 {
        if self.is_particle(mode) {
            1
        } else {
            -1
        }
    }

    /// Dimension of the selfdual space `K (+) K`.
    pub fn selfdual_dim(&self) -> usize {
        2 * self.modes()
    }

    pub fn fock_space(&self) -> FockSpace {
        FockSpace::new(self.d_plus, self.d_minus)
    }

    /// `C(a (+) b) = conj(b) (+) conj(a)`.
    pub fn conj_c(&self, f: &[C64]) -> Vec<C64> {
        let d = self.modes();
        let mut out = Vec::with_capacity(2 * d);
        out.extend(f[d..].iter().map(|z| z.conj()));
        out.extend(f[..d].iter().map(|z| z.conj()));
        out
    }

    /// `w (+) conj(w)`: the selfdual lift of a mode-space unitary.
    pub fn doubled(&self, w: &CMatrix) -> CMatrix {
        let d = self.modes();
        CMatrix::from_fn(2 * d, 2 * d, |i, j| match (i < d, j < d) {
            (true, true) => w[(i, j)],
            (false, false) => w[(i - d, j - d)].conj(),
            _ => ZERO,
        })
    }

    /// Mode-space boost `diag(e^{i t omega})`.
    pub fn boost_modes(&self, t: f64) -> CMatrix {
        CMatrix::diagonal(&self.freqs.iter().map(|w| phase(t * w)).collect::<Vec<_>>())
    }

    /// Mode-space gauge transformation `diag(e^{i s q})`.
    pub fn gauge_modes(&self, s: f64) -> CMatrix {
        let d: Vec<C64> = (0..self.modes()).map(|j| phase(s * self.mode_charge(j) as f64)).collect();
        CMatrix::diagonal(&d)
    }

    pub fn boost_one_particle(&self, t: f64) -> CMatrix {
        self.doubled(&self.boost_modes(t))
    }

    pub fn gauge_one_particle(&self, s: f64) -> CMatrix {
        self.doubled(&self.gauge_modes(s))
    }

    /// Permutation matrix of the reflection pairing.
    pub fn reflection_modes(&self) -> Result<CMatrix> {
        let p = self.pairing.as_ref().ok_or(Error::MissingSymmetry("reflection pairing"))?;
        let d = self.modes();
        Ok(CMatrix::from_fn(d, d, |i, j| if p[j] == i { ONE } else { ZERO }))
    }

    pub fn rotation_modes(&self) -> Result<CMatrix> {
        self.rotation.clone().ok_or(Error::MissingSymmetry("rotation"))
    }

    /// Selfdual vector of the spinor `Psi(f)`, `f = (p, a)` in the mode space.
    pub fn spinor_vector(&self, f: &[C64]) -> Result<Vec<C64>> {
        self.check_mode_vector(f)?;
        let (d, dp) = (self.modes(), self.d_plus);
        let mut v = vec![ZERO; 2 * d];
        v[dp..d].copy_from_slice(&f[dp..]);
        v[d..d + dp].copy_from_slice(&f[..dp]);
        Ok(v)
    }

    /// Selfdual vector of the cospinor `Psi^dagger(f)`.
    pub fn cospinor_vector(&self, f: &[C64]) -> Result<Vec<C64>> {
        self.check_mode_vector(f)?;
        let (d, dp) = (self.modes(), self.d_plus);
        let mut v = vec![ZERO; 2 * d];
        v[..dp].copy_from_slice(&f[..dp]);
        v[d + dp..].copy_from_slice(&f[dp..]);
        Ok(v)
    }

    fn check_mode_vector(&self, f: &[C64]) -> Result<()> {
        if f.len() != self.modes() {
            return Err(Error::Dimension { expected: self.modes(), got: f.len() });
        }
        Ok(())
    }

    /// Orthonormal basis of the selfdual subspace attached to a wedge.
    pub fn wedge_subalgebra_basis(&self, wedge: WedgeTag) -> Result<Vec<Vec<C64>>> {
        let d = self.modes();
        let base: Vec<Vec<C64>> = self
            .localized
            .iter()
            .flat_map(|&i| {
                let mut a = vec![ZERO; 2 * d];
                a[i] = ONE;
                let mut b = vec![ZERO; 2 * d];
                b[d + i] = ONE;
                [a, b]
            })
            .collect();
        let map = match wedge {
            WedgeTag::W0 => return Ok(base),
            WedgeTag::W0Prime => self.doubled(&self.reflection_modes()?),
            WedgeTag::Rotated => self.doubled(&self.rotation_modes()?),
        };
        Ok(base.iter().map(|v| map.mul_vec(v)).collect())
    }
}

/// Wedges for which the model provides a localized subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WedgeTag {
    W0,
    W0Prime,
    /// Image of W0 under the model rotation.
    Rotated,
}

impl WedgeTag {
    pub fn parse(tag: &str) -> Result<Self> {
        match tag {
            "W0" => Ok(Self::W0),
            "W0'" | "W0prime" | "W0Prime" => Ok(Self::W0Prime),
            "rotated" | "Rotated" => Ok(Self::Rotated),
            other => Err(Error::UnsupportedWedge(String::from(other))),
        }
    }
}

/// Fock space over the mode space, basis indexed by occupation patterns.
#[derive(Debug, Clone, PartialEq)]
pub struct FockSpace {
    d_plus: usize,
    d_minus: usize,
    charges: Arc<[i32]>,
}

impl FockSpace {
    pub fn new(d_plus: usize, d_minus: usize) -> Self {
        let d = d_plus + d_minus;
        let pmask = (1usize << d_plus) - 1;
        let charges: Vec<i32> = (0..1usize << d)
            .map(|s| (s & pmask).count_ones() as i32 - (s >> d_plus).count_ones() as i32)
            .collect();
        Self { d_plus, d_minus, charges: charges.into() }
    }

    pub fn dim(&self) -> usize {
        self.charges.len()
    }

    pub fn modes(&self) -> usize {
        self.d_plus + self.d_minus
    }

    /// Charge of each basis vector.
    pub fn charges(&self) -> &[i32] {
        &self.charges
    }

    pub fn max_charge(&self) -> i32 {
        self.d_plus as i32
    }

    pub fn min_charge(&self) -> i32 {
        -(self.d_minus as i32)
    }

    pub fn vacuum(&self) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim()];
        v[0] = ONE;
        v
    }

    pub fn operator(&self, matrix: CMatrix) -> Result<FockOperator> {
        FockOperator::new(self, matrix)
    }

    pub fn identity(&self) -> FockOperator {
        self.diagonal_operator(|_| ONE)
    }

    /// Diagonal operator with entry `f(state)` on each basis vector.
    pub fn diagonal_operator(&self, f: impl Fn(usize) -> C64) -> FockOperator {
        let d: Vec<C64> = (0..self.dim()).map(f).collect();
        FockOperator::from_parts(self, CMatrix::diagonal(&d))
    }

    /// `c_j^*` on a basis state: `Some((sign, target))` unless mode `j` is occupied.
    pub fn create_on(&self, j: usize, state: usize) -> Option<(f64, usize)> {
        if state >> j & 1 == 1 {
            return None;
        }
        let below = (state & ((1 << j) - 1)).count_ones();
        Some((if below.is_multiple_of(2) { 1.0 } else { -1.0 }, state | 1 << j))
    }

    /// `c_j` on a basis state.
    pub fn annihilate_on(&self, j: usize, state: usize) -> Option<(f64, usize)> {
        if state >> j & 1 == 0 {
            return None;
        }
        let below = (state & ((1 << j) - 1)).count_ones();
        Some((if below.is_multiple_of(2) { 1.0 } else { -1.0 }, state & !(1 << j)))
    }

    pub fn creation(&self, j: usize) -> FockOperator {
        self.mode_operator(&[(j, ONE)], &[])
    }

    pub fn annihilation(&self, j: usize) -> FockOperator {
        self.mode_operator(&[], &[(j, ONE)])
    }

    /// `sum a c_j^* + sum b c_k` from sparse coefficient lists.
    fn mode_operator(&self, create: &[(usize, C64)], annihilate: &[(usize, C64)]) -> FockOperator {
        let n = self.dim();
        let mut m = CMatrix::zeros(n, n);
        for s in 0..n {
            for &(j, a) in create {
                if let Some((sign, t)) = self.create_on(j, s) {
                    m[(t, s)] += a * sign;
                }
            }
            for &(j, b) in annihilate {
                if let Some((sign, t)) = self.annihilate_on(j, s) {
                    m[(t, s)] += b * sign;
                }
            }
        }
        FockOperator::from_parts(self, m)
    }

    /// `B(f)` for `f` in the selfdual space `K (+) K`.
    pub fn field_b(&self, f: &[C64]) -> Result<FockOperator> {
        let d = self.modes();
        if f.len() != 2 * d {
            return Err(Error::Dimension { expected: 2 * d, got: f.len() });
        }
        let create: Vec<(usize, C64)> = (0..d).filter(|&j| f[j] != ZERO).map(|j| (j, f[j])).collect();
        let annihilate: Vec<(usize, C64)> =
            (0..d).filter(|&j| f[d + j] != ZERO).map(|j| (j, f[d + j])).collect();
        Ok(self.mode_operator(&create, &annihilate))
    }

    /// Charge operator `Q` (number of particles minus antiparticles).
    pub fn charge_operator(&self) -> FockOperator {
        self.diagonal_operator(|s| C64::new(self.charges[s] as f64, 0.0))
    }

    /// `V(s) = e^{i s Q}`.
    pub fn gauge_unitary(&self, s: f64) -> FockOperator {
        self.diagonal_operator(|x| phase(s * self.charges[x] as f64))
    }

    /// Spectral projection `E(n)` of `Q`.
    pub fn charge_projector(&self, n: i32) -> FockOperator {
        self.diagonal_operator(|x| if self.charges[x] == n { ONE } else { ZERO })
    }

    /// `Y = (-1)^N`.
    pub fn grading_y(&self) -> FockOperator {
        self.diagonal_operator(|s| if s.count_ones() % 2 == 0 { ONE } else { -ONE })
    }

    /// `Z = (1 - iY) / sqrt 2`.
    pub fn twist_z(&self) -> FockOperator {
        self.diagonal_operator(|s| {
            let y = if s.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            C64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2 * y)
        })
    }

    /// Second quantization of a mode-space unitary `w`:
    /// `|s_1 .. s_k> -> c^*(w e_{s_1}) .. c^*(w e_{s_k}) |0>`.
    pub fn second_quantize(&self, w: &CMatrix) -> Result<FockOperator> {
        let d = self.modes();
        if w.rows() != d || w.cols() != d {
            return Err(Error::Dimension { expected: d, got: w.rows() });
        }
        let n = self.dim();
        let mut m = CMatrix::zeros(n, n);
        for s in 0..n {
            let mut v = vec![ZERO; n];
            v[0] = ONE;
            for j in (0..d).rev().filter(|j| s >> j & 1 == 1) {
                let mut next = vec![ZERO; n];
                for (state, amp) in v.iter().enumerate().filter(|(_, a)| **a != ZERO) {
                    for k in 0..d {
                        let c = w[(k, j)];
                        if c == ZERO {
                            continue;
                        }
                        if let Some((sign, t)) = self.create_on(k, state) {
                            next[t] += *amp * c * sign;
                        }
                    }
                }
                v = next;
            }
            for (t, a) in v.into_iter().enumerate() {
                m[(t, s)] = a;
            }
        }
        Ok(FockOperator::from_parts(self, m))
    }
}

/// Operator on a Fock space together with its decomposition into charge
/// shifts: component `m` maps each sector `n` into sector `n + m`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    matrix: CMatrix,
    charges: Arc<[i32]>,
    blocks: Vec<(i32, CMatrix)>,
}

impl FockOperator {
    pub fn new(space: &FockSpace, matrix: CMatrix) -> Result<Self> {
        if matrix.rows() != space.dim() || matrix.cols() != space.dim() {
            return Err(Error::Dimension { expected: space.dim(), got: matrix.rows() });
        }
        Ok(Self::from_parts(space, matrix))
    }

    fn from_parts(space: &FockSpace, matrix: CMatrix) -> Self {
        Self::with_charges(space.charges.clone(), matrix)
    }

    fn with_charges(charges: Arc<[i32]>, matrix: CMatrix) -> Self {
        let n = matrix.rows();
        let mut blocks: Vec<(i32, CMatrix)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let z = matrix[(i, j)];
                if z == ZERO {
                    continue;
                }
                let m = charges[i] - charges[j];
                let idx = match blocks.iter().position(|(k, _)| *k == m) {
                    Some(p) => p,
                    None => {
                        blocks.push((m, CMatrix::zeros(n, n)));
                        blocks.len() - 1
                    }
                };
                blocks[idx].1[(i, j)] = z;
            }
        }
        blocks.sort_by_key(|(m, _)| *m);
        Self { matrix, charges, blocks }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn charges(&self) -> &[i32] {
        &self.charges
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Charge shifts with a nonzero component.
    pub fn shifts(&self) -> Vec<i32> {
        self.blocks.iter().map(|(m, _)| *m).collect()
    }

    /// `sum_n E(n + m) F E(n)`.
    pub fn shift_component(&self, m: i32) -> Self {
        let matrix = self
            .blocks
            .iter()
            .find(|(k, _)| *k == m)
            .map(|(_, b)| b.clone())
            .unwrap_or_else(|| CMatrix::zeros(self.dim(), self.dim()));
        Self::with_charges(self.charges.clone(), matrix)
    }

    pub fn shift_components(&self) -> impl Iterator<Item = (i32, &CMatrix)> {
        self.blocks.iter().map(|(m, b)| (*m, b))
    }

    pub fn adjoint(&self) -> Self {
        Self::with_charges(self.charges.clone(), self.matrix.adjoint())
    }

    pub fn scale(&self, z: C64) -> Self {
        Self::with_charges(self.charges.clone(), self.matrix.scale(z))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::with_charges(self.charges.clone(), &self.matrix * &other.matrix)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::with_charges(self.charges.clone(), &self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::with_charges(self.charges.clone(), &self.matrix - &other.matrix)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self::with_charges(self.charges.clone(), self.matrix.commutator(&other.matrix))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        Self::with_charges(self.charges.clone(), self.matrix.anticommutator(&other.matrix))
    }

    /// `U F U^*`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.adjoint())
    }

    /// Same operator with a new matrix, keeping the charge labels.
    pub fn with_matrix(&self, matrix: CMatrix) -> Self {
        Self::with_charges(self.charges.clone(), matrix)
    }

    pub fn op_norm(&self) -> f64 {
        self.matrix.op_norm()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.matrix.distance(&other.matrix)
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        self.matrix.mul_vec(v)
    }

    /// `<Omega, F Omega>` with `Omega` the first basis vector.
    pub fn vacuum_expectation(&self) -> C64 {
        self.matrix[(0, 0)]
    }

    /// True when every nonzero component changes the particle number by an odd amount.
    pub fn is_odd(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.matrix[(i, j)] == ZERO || (i ^ j).count_ones() % 2 == 1))
    }
}

/// Model-level constructors that need the one-particle data.
impl OneParticleModel {
    pub fn field_b(&self, f: &[C64]) -> Result<FockOperator> {
        self.fock_space().field_b(f)
    }

    pub fn spinor(&self, f: &[C64]) -> Result<FockOperator> {
        self.field_b(&self.spinor_vector(f)?)
    }

    pub fn cospinor(&self, f: &[C64]) -> Result<FockOperator> {
        self.field_b(&self.cospinor_vector(f)?)
    }

    /// Boost generator `K`: sum of the occupied frequencies.
    pub fn boost_energies(&self) -> Vec<f64> {
        let d = self.modes();
        (0..1usize << d)
            .map(|s| (0..d).filter(|j| s >> j & 1 == 1).map(|j| self.freqs[j]).sum())
            .collect()
    }

    /// `U(t) = e^{i t K}`.
    pub fn boost_unitary(&self, t: f64) -> FockOperator {
        let k = self.boost_energies();
        self.fock_space().diagonal_operator(|s| phase(t * k[s]))
    }

    pub fn gauge_unitary(&self, s: f64) -> FockOperator {
        self.fock_space().gauge_unitary(s)
    }

    pub fn charge_projector(&self, n: i32) -> FockOperator {
        self.fock_space().charge_projector(n)
    }

    pub fn grading_y(&self) -> FockOperator {
        self.fock_space().grading_y()
    }

    pub fn twist_z(&self) -> FockOperator {
        self.fock_space().twist_z()
    }

    /// Second-quantized reflection.
    pub fn reflection_j(&self) -> Result<FockOperator> {
        self.fock_space().second_quantize(&self.reflection_modes()?)
    }

    /// Second-quantized model rotation.
    pub fn rotation_r(&self) -> Result<FockOperator> {
        self.fock_space().second_quantize(&self.rotation_modes()?)
    }

    /// Fields `B(f)` for the basis vectors of the wedge's subspace.
    pub fn localized_fields(&self, wedge: WedgeTag) -> Result<Vec<FockOperator>> {
        self.wedge_subalgebra_basis(wedge)?.iter().map(|f| self.field_b(f)).collect()
    }

    /// Projection `P = 1 (+) 0` defining the Fock state.
    pub fn fock_projection(&self) -> QuasifreeOperatorS {
        let d = self.modes();
        let p: Vec<C64> = (0..2 * d).map(|i| if i < d { ONE } else { ZERO }).collect();
        QuasifreeOperatorS { s: CMatrix::diagonal(&p), modes: d }
    }
}

/// Operator `S` on the selfdual space defining a quasifree state.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasifreeOperatorS {
    s: CMatrix,
    modes: usize,
}

impl QuasifreeOperatorS {
    /// Validates `S = S^*`, `0 <= S <= 1` and `C S C = 1 - S`.
    pub fn new(s: CMatrix) -> Result<Self> {
        let n = s.rows();
        if n != s.cols() || !n.is_multiple_of(2) {
            return Err(Error::InvalidTwoPoint("S must be square of even size".into()));
        }
        let d = n / 2;
        if (&s - &s.adjoint()).max_abs() > MODEL_TOL {
            return Err(Error::InvalidTwoPoint("S is not selfadjoint".into()));
        }
        let id = CMatrix::identity(n);
        // for selfadjoint S, 0 <= S <= 1 iff |2S - 1| <= 1
        if (&s.scale_real(2.0) - &id).op_norm() > 1.0 + MODEL_TOL {
            return Err(Error::InvalidTwoPoint("spectrum of S leaves [0, 1]".into()));
        }
        let csc = CMatrix::from_fn(n, n, |i, j| s[((i + d) % n, (j + d) % n)].conj());
        if (&csc - &(&id - &s)).max_abs() > MODEL_TOL {
            return Err(Error::InvalidTwoPoint("C S C != 1 - S".into()));
        }
        Ok(Self { s, modes: d })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.s
    }

    /// `<C f, S g>`.
    pub fn two_point(&self, f: &[C64], g: &[C64]) -> C64 {
        let d = self.modes;
        let cf: Vec<C64> = f[d..].iter().chain(&f[..d]).map(|z| z.conj()).collect();
        inner(&cf, &self.s.mul_vec(g))
    }
}

/// `omega_S(B(f_1) .. B(f_k))` by the signed sum over pairings.
pub fn quasifree_npoint(s: &QuasifreeOperatorS, fs: &[Vec<C64>]) -> Result<C64> {
    for f in fs {
        if f.len() != 2 * s.modes {
            return Err(Error::Dimension { expected: 2 * s.modes, got: f.len() });
        }
    }
    if fs.len() % 2 == 1 {
        return Ok(ZERO);
    }
    let n = fs.len() / 2;
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    let mut used = vec![false; fs.len()];
    let mut total = ZERO;
    pairings(s, fs, &mut used, &mut first, &mut second, &mut total);
    let prefactor = if (n * n.saturating_sub(1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(total * prefactor)
}

fn pairings(
    s: &QuasifreeOperatorS,
    fs: &[Vec<C64>],
    used: &mut [bool],
    first: &mut Vec<usize>,
    second: &mut Vec<usize>,
    total: &mut C64,
) {
    let Some(a) = used.iter().position(|u| !u) else {
        let mut eps: Vec<usize> = first.clone();
        eps.extend_from_slice(second);
        let mut product = ONE;
        for (i, j) in first.iter().zip(second.iter()) {
            product *= s.two_point(&fs[*i], &fs[*j]);
        }
        *total += product * permutation_sign(&eps);
        return;
    };
    used[a] = true;
    for b in a + 1..used.len() {
        if used[b] {
            continue;
        }
        used[b] = true;
        first.push(a);
        second.push(b);
        pairings(s, fs, used, first, second, total);
        first.pop();
        second.pop();
        used[b] = false;
    }
    used[a] = false;
}

fn permutation_sign(p: &[usize]) -> f64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `sigma_s(F) = V(s) F V(s)^*`.
pub fn gauge_action(model: &OneParticleModel, f: &FockOperator, s: f64) -> FockOperator {
    f.conjugate_by(&model.gauge_unitary(s))
}
