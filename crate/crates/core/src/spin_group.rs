//! Sp(1,1) = Spin(1,4), its covering map onto SO(1,4)_0, the wedge boosts and
//! reflections, and the so(1,4) Lie algebra with its two-dimensional Abelian
//! subalgebras.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{gamma, gamma_upper, gammas, QuatMatrix2, Quaternion, ETA};
use crate::linalg::{
    mat5_det, mat5_diag, mat5_identity, mat5_max_diff, mat5_mul, mat5_scale, mat5_sub,
    mat5_transpose, Mat5,
};

/// Tolerance for group-membership checks.
pub const GROUP_TOL: f64 = 1e-10;

/// Element of Sp(1,1): `g* gamma_0 g = gamma_0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinElement {
    matrix: QuatMatrix2,
}

impl SpinElement {
    pub fn new(matrix: QuatMatrix2) -> Result<Self> {
        let residual = spin_residual(&matrix);
        if residual > GROUP_TOL * (1.0 + libm::pow(matrix.max_abs(), 2.0)) {
            return Err(Error::NotInSpinGroup { residual });
        }
        Ok(Self { matrix })
    }

    pub fn identity() -> Self {
        Self { matrix: QuatMatrix2::identity() }
    }

    pub fn matrix(&self) -> &QuatMatrix2 {
        &self.matrix
    }

    pub fn neg(&self) -> Self {
        Self { matrix: -self.matrix }
    }

    /// `g^{-1} = gamma_0 g* gamma_0`.
    pub fn inverse(&self) -> Self {
        let g0 = gamma(0).expect("index in range");
        Self { matrix: g0 * self.matrix.star() * g0 }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { matrix: self.matrix * other.matrix }
    }
}

/// `max |g* gamma_0 g - gamma_0|`.
pub fn spin_residual(g: &QuatMatrix2) -> f64 {
    let g0 = gamma(0).expect("index in range");
    (g.star() * g0 * *g - g0).max_abs()
}

/// Real 5x5 matrix of O(1,4) acting on ambient coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix5(pub Mat5);

impl LorentzMatrix5 {
    pub fn identity() -> Self {
        Self(mat5_identity())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(mat5_mul(&self.0, &other.0))
    }

    /// `Lambda^{-1} = eta Lambda^T eta`.
    pub fn inverse(&self) -> Self {
        let eta = mat5_diag(ETA);
        Self(mat5_mul(&mat5_mul(&eta, &mat5_transpose(&self.0)), &eta))
    }

    pub fn apply(&self, x: &crate::geometry::AmbientVector) -> crate::geometry::AmbientVector {
        crate::geometry::AmbientVector(crate::linalg::mat5_apply(&self.0, &x.0))
    }

    /// `max |Lambda^T eta Lambda - eta|`.
    pub fn lorentz_residual(&self) -> f64 {
        let eta = mat5_diag(ETA);
        mat5_max_diff(&mat5_mul(&mat5_mul(&mat5_transpose(&self.0), &eta), &self.0), &eta)
    }

    /// Member of SO(1,4)_0 within tolerance: Lorentz, det +1, time orientation kept.
    pub fn is_proper_orthochronous(&self) -> bool {
        let scale = 1.0 + libm::pow(self.max_abs(), 2.0);
        self.lorentz_residual() <= GROUP_TOL * scale
            && (mat5_det(&self.0) - 1.0).abs() <= 1e-8 * scale
            && self.0[0][0] >= 1.0 - GROUP_TOL
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        mat5_max_diff(&self.0, &other.0)
    }
}

/// Covering homomorphism `pi(g)^mu_nu = Tr(gamma_mu g gamma^nu g^{-1}) / 4`.
///
/// On embedded points it is the matrix of `x~ -> (g*)^{-1} x~ g*`, see
/// [`crate::geometry::embed_vector`].
pub fn covering_hom(g: &SpinElement) -> LorentzMatrix5 {
    let lower = gammas();
    let inv = g.inverse();
    let mut out = [[0.0; 5]; 5];
    for nu in 0..5 {
        let moved = g.matrix * gamma_upper(nu).expect("index in range") * inv.matrix;
        for mu in 0..5 {
            out[mu][nu] = 0.25 * (lower[mu] * moved).trace();
        }
    }
    LorentzMatrix5(out)
}

/// Checked variant of [`covering_hom`] for raw matrices.
pub fn covering_hom_checked(g: &QuatMatrix2) -> Result<LorentzMatrix5> {
    Ok(covering_hom(&SpinElement::new(*g)?))
}

/// Lift of the wedge boost: `[[cosh(pi t), sinh(pi t)], [sinh(pi t), cosh(pi t)]]`.
pub fn boost_cover(t: f64) -> SpinElement {
    let (c, s) = (libm::cosh(PI * t), libm::sinh(PI * t));
    SpinElement { matrix: QuatMatrix2::from_real([[c, s], [s, c]]) }
}

/// `diag(u, v)` for unit quaternions `u`, `v`; covers the rotations of the
/// last four coordinates.
pub fn rotation_cover(u: Quaternion, v: Quaternion) -> Result<SpinElement> {
    SpinElement::new(QuatMatrix2::new(u, Quaternion::ZERO, Quaternion::ZERO, v))
}

/// Wedge boost `Lambda_{W0}(t)` with rapidity `2 pi t` in the (x0, x1) plane.
pub fn boost_base(t: f64) -> LorentzMatrix5 {
    let (c, s) = (libm::cosh(2.0 * PI * t), libm::sinh(2.0 * PI * t));
    let mut m = mat5_identity();
    m[0][0] = c;
    m[0][1] = s;
    m[1][0] = s;
    m[1][1] = c;
    LorentzMatrix5(m)
}

/// `j_{W0}(x0, x1, x) = (x0, -x1, -x)`.
pub fn reflection_base() -> LorentzMatrix5 {
    LorentzMatrix5(mat5_diag([1.0, -1.0, -1.0, -1.0, -1.0]))
}

/// Lift `diag(1, -1)` of the wedge reflection.
pub fn reflection_cover() -> SpinElement {
    SpinElement { matrix: QuatMatrix2::real_diag(1.0, -1.0) }
}

/// Rotation by `angle` in the `(x^i, x^j)` plane, `1 <= i, j <= 4`.
pub fn rotation_base(i: usize, j: usize, angle: f64) -> LorentzMatrix5 {
    LorentzMatrix5(exp_generator(&lie_generator(i, j), angle))
}

/// `diag(1, -1, -1, 1, 1)`: the reflection in the (x1, x2) plane.
pub fn reflection_12() -> LorentzMatrix5 {
    LorentzMatrix5(mat5_diag([1.0, -1.0, -1.0, 1.0, 1.0]))
}

/// Basis element `M_{mu nu}` of so(1,4) with its 5x5 realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieBasisElement {
    pub mu: usize,
    pub nu: usize,
    pub matrix: Mat5,
}

impl LieBasisElement {
    pub fn new(mu: usize, nu: usize) -> Self {
        Self { mu, nu, matrix: lie_generator(mu, nu) }
    }

    /// The ten independent generators `M_{mu nu}`, `mu < nu`.
    pub fn basis() -> Vec<Self> {
        let mut v = Vec::with_capacity(10);
        for mu in 0..5 {
            for nu in mu + 1..5 {
                v.push(Self::new(mu, nu));
            }
        }
        v
    }
}

/// `M_{mu nu} = eta_{mu mu} E_{nu mu} - eta_{nu nu} E_{mu nu}`, so that
/// `M_{ij} = E_{ij} - E_{ji}` for spatial indices and `M_{0k} = E_{0k} + E_{k0}`.
pub fn lie_generator(mu: usize, nu: usize) -> Mat5 {
    let mut m = [[0.0; 5]; 5];
    if mu == nu {
        return m;
    }
    m[mu][nu] = -ETA[nu];
    m[nu][mu] = ETA[mu];
    m
}

/// Matrix commutator `[A, B] = AB - BA`.
pub fn lie_bracket(a: &LieBasisElement, b: &LieBasisElement) -> Mat5 {
    matrix_commutator(&a.matrix, &b.matrix)
}

pub fn matrix_commutator(a: &Mat5, b: &Mat5) -> Mat5 {
    mat5_sub(&mat5_mul(a, b), &mat5_mul(b, a))
}

/// `eta_{mu rho} M_{nu sigma} + eta_{nu sigma} M_{mu rho} - eta_{nu rho} M_{mu sigma} - eta_{mu sigma} M_{nu rho}`.
pub fn structure_constant_prediction(mu: usize, nu: usize, rho: usize, sigma: usize) -> Mat5 {
    let eta = |a: usize, b: usize| if a == b { ETA[a] } else { 0.0 };
    let terms = [
        (eta(mu, rho), lie_generator(nu, sigma)),
        (eta(nu, sigma), lie_generator(mu, rho)),
        (-eta(nu, rho), lie_generator(mu, sigma)),
        (-eta(mu, sigma), lie_generator(nu, rho)),
    ];
    let mut out = [[0.0; 5]; 5];
    for (c, m) in terms {
        for i in 0..5 {
            for j in 0..5 {
                out[i][j] += c * m[i][j];
            }
        }
    }
    out
}

/// Linear combination `sum c_k M_{mu_k nu_k}`.
pub fn lie_combination(terms: &[(f64, usize, usize)]) -> Mat5 {
    let mut out = [[0.0; 5]; 5];
    for &(c, mu, nu) in terms {
        let m = lie_generator(mu, nu);
        for i in 0..5 {
            for j in 0..5 {
                out[i][j] += c * m[i][j];
            }
        }
    }
    out
}

/// `exp(t G)`. Exact for nilpotent generators and for single-plane
/// rotation/boost generators; scaling-and-squaring Taylor otherwise.
pub fn exp_generator(g: &Mat5, t: f64) -> Mat5 {
    if let Some(m) = exp_plane(g, t) {
        return m;
    }
    if let Some(m) = exp_nilpotent(g, t) {
        return m;
    }
    exp_taylor(&mat5_scale(g, t))
}

fn exp_plane(g: &Mat5, t: f64) -> Option<Mat5> {
    let nonzero: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (0..5).map(move |j| (i, j)))
        .filter(|&(i, j)| g[i][j] != 0.0)
        .collect();
    if nonzero.len() != 2 {
        return None;
    }
    let (i, j) = nonzero[0];
    let (k, l) = nonzero[1];
    if (k, l) != (j, i) || i == j {
        return None;
    }
    let (a, b) = (g[i][j], g[j][i]);
    let mut m = mat5_identity();
    if a == -b {
        // rotation: exp(t a (E_ij - E_ji))
        let (c, s) = (libm::cos(a * t), libm::sin(a * t));
        m[i][i] = c;
        m[j][j] = c;
        m[i][j] = s;
        m[j][i] = -s;
    } else if a == b {
        // boost: exp(t a (E_ij + E_ji))
        let (c, s) = (libm::cosh(a * t), libm::sinh(a * t));
        m[i][i] = c;
        m[j][j] = c;
        m[i][j] = s;
        m[j][i] = s;
    } else {
        return None;
    }
    Some(m)
}

fn exp_nilpotent(g: &Mat5, t: f64) -> Option<Mat5> {
    let mut power = mat5_identity();
    let mut acc = mat5_identity();
    let mut coeff = 1.0;
    for k in 1..=5 {
        power = mat5_mul(&power, g);
        if power.iter().flatten().all(|x| *x == 0.0) {
            return Some(acc);
        }
        coeff *= t / k as f64;
        for i in 0..5 {
            for j in 0..5 {
                acc[i][j] += coeff * power[i][j];
            }
        }
    }
    None
}

fn exp_taylor(a: &Mat5) -> Mat5 {
    let norm = a.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max) * 5.0;
    let mut squarings = 0;
    let mut scaled = *a;
    if norm > 0.25 {
        squarings = libm::ceil(libm::log2(norm / 0.25)) as i32;
        scaled = mat5_scale(a, 1.0 / libm::pow(2.0, squarings as f64));
    }
    let mut acc = mat5_identity();
    let mut term = mat5_identity();
    for k in 1..=20 {
        term = mat5_scale(&mat5_mul(&term, &scaled), 1.0 / k as f64);
        for i in 0..5 {
            for j in 0..5 {
                acc[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        acc = mat5_mul(&acc, &acc);
    }
    acc
}

/// The two-dimensional Abelian subgroups of SO(1,4)_0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AbelianSubgroup {
    /// SO(2) x SO(2): `M12`, `M34`.
    L1,
    /// O(1,1) x SO(2): `M01`, `M23`.
    L2,
    /// R^2 of null rotations about `e0 + e2`: `M12 - M01`, `M23 + M03`.
    L3,
    /// R x SO(2): `M12 - M01`, `M34`.
    L4,
}

impl AbelianSubgroup {
    pub const ALL: [Self; 4] = [Self::L1, Self::L2, Self::L3, Self::L4];

    pub fn parse(tag: &str) -> Option<Self> {
        match tag {
            "L1" | "l1" => Some(Self::L1),
            "L2" | "l2" => Some(Self::L2),
            "L3" | "l3" => Some(Self::L3),
            "L4" | "l4" => Some(Self::L4),
            _ => None,
        }
    }

    pub fn generators(self) -> (Mat5, Mat5) {
        let null = lie_combination(&[(1.0, 1, 2), (-1.0, 0, 1)]);
        match self {
            Self::L1 => (lie_generator(1, 2), lie_generator(3, 4)),
            Self::L2 => (lie_generator(0, 1), lie_generator(2, 3)),
            // The partner `M23 - M03` as printed does not commute with
            // `M12 - M01` (their bracket is 2 M13); `M23 + M03` is the null
            // rotation about the same light ray.
            Self::L3 => (null, lie_combination(&[(1.0, 2, 3), (1.0, 0, 3)])),
            Self::L4 => (null, lie_generator(3, 4)),
        }
    }
}

/// `exp(t G1) exp(s G2)` for the subgroup's generator pair.
pub fn abelian_flow(subgroup: AbelianSubgroup, t: f64, s: f64) -> LorentzMatrix5 {
    let (g1, g2) = subgroup.generators();
    LorentzMatrix5(mat5_mul(&exp_generator(&g1, t), &exp_generator(&g2, s)))
}

/// `max |exp(tG1)exp(sG2) - exp(sG2)exp(tG1)|`.
pub fn abelian_commutativity_residual(subgroup: AbelianSubgroup, t: f64, s: f64) -> f64 {
    let (g1, g2) = subgroup.generators();
    let (a, b) = (exp_generator(&g1, t), exp_generator(&g2, s));
    mat5_max_diff(&mat5_mul(&a, &b), &mat5_mul(&b, &a))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    /// `max |j12 L(t,s) j12 - L(-t,-s)|` over the grid.
    pub reversal_residual: f64,
    /// `max |j12 L(t,s) j12 - L(t,s)|`; nonzero means j12 does not fix the flow.
    pub fixed_residual: f64,
    pub grid: Vec<(f64, f64)>,
}

/// Conjugating the L2 flow by `j12` reverses both parameters.
pub fn reflection_obstruction_check(grid: &[(f64, f64)]) -> ObstructionReport {
    let j = reflection_12();
    let mut reversal: f64 = 0.0;
    let mut fixed: f64 = 0.0;
    for &(t, s) in grid {
        let flow = abelian_flow(AbelianSubgroup::L2, t, s);
        let conj = j.compose(&flow).compose(&j);
        reversal = reversal.max(conj.max_diff(&abelian_flow(AbelianSubgroup::L2, -t, -s)));
        fixed = fixed.max(conj.max_diff(&flow));
    }
    ObstructionReport { reversal_residual: reversal, fixed_residual: fixed, grid: grid.to_vec() }
}

/// 5x5 grid over [-1, 1]^2.
pub fn default_obstruction_grid() -> Vec<(f64, f64)> {
    let pts = [-1.0, -0.5, 0.0, 0.5, 1.0];
    pts.iter().flat_map(|&t| pts.iter().map(move |&s| (t, s))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AmbientVector;

    #[test]
    fn covering_of_identity_and_minus_identity() {
        assert_eq!(covering_hom(&SpinElement::identity()).max_diff(&LorentzMatrix5::identity()), 0.0);
        assert_eq!(
            covering_hom(&SpinElement::identity().neg()).max_diff(&LorentzMatrix5::identity()),
            0.0
        );
    }

    #[test]
    fn covering_doubles_the_rapidity() {
        for t in [0.1, 0.5, 1.0] {
            let pi = covering_hom(&boost_cover(t));
            let scale = boost_base(t).max_abs();
            assert!(pi.max_diff(&boost_base(t)) < 1e-10 * scale, "t = {t}");
        }
        let pi = covering_hom(&boost_cover(1.0));
        assert!((pi.0[0][0] - libm::cosh(2.0 * PI)).abs() < 1e-10 * pi.0[0][0]);
    }

    #[test]
    fn boost_cover_group_law() {
        let (a, b) = (0.3, -0.17);
        let lhs = boost_cover(a).compose(&boost_cover(b));
        assert!((*lhs.matrix() - *boost_cover(a + b).matrix()).max_abs() < 1e-13);
        assert_eq!(*boost_cover(0.0).matrix(), QuatMatrix2::identity());
    }

    #[test]
    fn boost_base_moves_the_wedge_origin() {
        let t = 0.23;
        let y = boost_base(t).apply(&AmbientVector::basis(1));
        let expect = [libm::sinh(2.0 * PI * t), libm::cosh(2.0 * PI * t), 0.0, 0.0, 0.0];
        assert!(y.max_abs_diff(&AmbientVector(expect)) < 1e-14);
        assert!(boost_base(0.7).lorentz_residual() < 1e-10 * boost_base(0.7).max_abs().powi(2));
        assert_eq!(boost_base(0.0), LorentzMatrix5::identity());
    }

    #[test]
    fn reflections() {
        let j = reflection_base();
        assert_eq!(j.compose(&j), LorentzMatrix5::identity());
        let pj = covering_hom(&reflection_cover());
        assert!(pj.max_diff(&j) < 1e-15);
        let y = pj.apply(&AmbientVector::basis(1));
        assert_eq!(y, AmbientVector::new([0.0, -1.0, 0.0, 0.0, 0.0]));
        let t = 0.3;
        let lhs = j.compose(&boost_base(t)).compose(&j);
        assert!(lhs.max_diff(&boost_base(-t)) < 1e-12);
    }

    #[test]
    fn rotation_cover_fixes_time_and_wedge_direction_pairs() {
        let n = libm::sqrt(0.1 * 0.1 + 0.2 * 0.2 + 0.3 * 0.3 + 0.9 * 0.9);
        let u = Quaternion::new(0.1 / n, 0.2 / n, 0.3 / n, 0.9 / n);
        let pi = covering_hom(&rotation_cover(u, u).unwrap());
        assert!(pi.is_proper_orthochronous());
        assert!((pi.0[0][0] - 1.0).abs() < 1e-14);
        // equal diagonal entries act by conjugation, fixing x^1
        assert!((pi.0[1][1] - 1.0).abs() < 1e-14);
        assert!(rotation_cover(u.scale(2.0), u).is_err());
    }

    #[test]
    fn non_group_element_rejected() {
        let m = QuatMatrix2::real_diag(2.0, 1.0);
        assert!(matches!(covering_hom_checked(&m), Err(Error::NotInSpinGroup { .. })));
    }

    #[test]
    fn generators_are_antisymmetric_in_labels() {
        for mu in 0..5 {
            for nu in 0..5 {
                assert_eq!(lie_generator(mu, nu), mat5_scale(&lie_generator(nu, mu), -1.0));
            }
        }
        // boost generator is symmetric, rotation generator antisymmetric
        let b = lie_generator(0, 1);
        assert_eq!((b[0][1], b[1][0]), (1.0, 1.0));
        let r = lie_generator(1, 2);
        assert_eq!((r[1][2], r[2][1]), (1.0, -1.0));
    }

    #[test]
    fn brackets_of_table_pairs() {
        let m = |a, b| LieBasisElement::new(a, b);
        assert_eq!(lie_bracket(&m(1, 2), &m(3, 4)), [[0.0; 5]; 5]);
        assert_eq!(lie_bracket(&m(0, 1), &m(2, 3)), [[0.0; 5]; 5]);
        assert_eq!(lie_bracket(&m(1, 2), &m(2, 3)), structure_constant_prediction(1, 2, 2, 3));
    }

    #[test]
    fn printed_l3_partner_fails_to_commute() {
        let a = lie_combination(&[(1.0, 1, 2), (-1.0, 0, 1)]);
        let printed = lie_combination(&[(1.0, 2, 3), (-1.0, 0, 3)]);
        let br = matrix_commutator(&a, &printed);
        assert_eq!(br, mat5_scale(&lie_generator(1, 3), 2.0));
        let (g1, g2) = AbelianSubgroup::L3.generators();
        assert_eq!(matrix_commutator(&g1, &g2), [[0.0; 5]; 5]);
    }

    #[test]
    fn flows() {
        let l2 = abelian_flow(AbelianSubgroup::L2, 0.8, 0.0);
        assert!(l2.max_diff(&LorentzMatrix5(exp_generator(&lie_generator(0, 1), 0.8))) < 1e-15);
        assert!(l2.max_diff(&boost_base(0.8 / (2.0 * PI))) < 1e-14);
        let l1 = abelian_flow(AbelianSubgroup::L1, 2.0 * PI, 2.0 * PI);
        assert!(l1.max_diff(&LorentzMatrix5::identity()) < 1e-14);
        for sg in AbelianSubgroup::ALL {
            assert!(abelian_commutativity_residual(sg, 0.7, -1.3) < 1e-10, "{sg:?}");
            assert!(abelian_flow(sg, 0.4, 0.9).is_proper_orthochronous(), "{sg:?}");
        }
    }

    #[test]
    fn taylor_matches_closed_form() {
        let g = lie_combination(&[(0.3, 0, 1), (1.1, 2, 3), (-0.4, 1, 4)]);
        let a = exp_taylor(&mat5_scale(&g, 1.7));
        let b = exp_taylor(&mat5_scale(&g, -1.7));
        assert!(mat5_max_diff(&mat5_mul(&a, &b), &mat5_identity()) < 1e-12);
        let r = exp_taylor(&mat5_scale(&lie_generator(1, 2), 0.9));
        assert!(mat5_max_diff(&r, &exp_generator(&lie_generator(1, 2), 0.9)) < 1e-14);
    }

    #[test]
    fn obstruction_on_grid() {
        let rep = reflection_obstruction_check(&default_obstruction_grid());
        assert!(rep.reversal_residual < 1e-10);
        assert!(rep.fixed_residual > 0.1);
        let origin = reflection_obstruction_check(&[(0.0, 0.0)]);
        assert_eq!(origin.reversal_residual, 0.0);
    }

    #[test]
    fn covering_acts_on_embedded_points() {
        use crate::geometry::embed_vector;
        let g = boost_cover(0.3)
            .compose(&rotation_cover(Quaternion::new(0.5, 0.5, 0.5, 0.5), Quaternion::new(0.6, 0.0, 0.8, 0.0)).unwrap())
            .compose(&reflection_cover());
        let x = AmbientVector::new([0.3, 1.2, -0.4, 0.7, 0.1]);
        let star = g.matrix().star();
        let star_inv = g.inverse().matrix().star();
        let moved = star_inv * embed_vector(&x) * star;
        let expect = embed_vector(&covering_hom(&g).apply(&x));
        assert!((moved - expect).max_abs() < 1e-12);
    }
}
