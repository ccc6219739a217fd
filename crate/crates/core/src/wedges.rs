//! Wedges `g W0` in de Sitter space: membership, equality, complements,
//! edges and sampled evidence that no wedge properly contains another.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{minkowski_form, AmbientVector};
use crate::linalg::{mat5_det, Mat5};
use crate::rng::{self, Stream};
use crate::spin_group::{exp_generator, lie_combination, reflection_base, LorentzMatrix5};

/// Points farther than this from the hyperboloid are rejected.
pub const HYPERBOLOID_TOL: f64 = 1e-9;
/// Samples this close to a wedge boundary are redrawn.
pub const BOUNDARY_MARGIN: f64 = 1e-12;
/// Tolerance of the stabilizer block test.
pub const EQUALITY_TOL: f64 = 1e-8;

/// The wedge `frame * W0` with `W0 = { x in M : x^1 > |x^0| }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wedge {
    frame: LorentzMatrix5,
}

impl Wedge {
    pub fn origin() -> Self {
        Self { frame: LorentzMatrix5::identity() }
    }

    pub fn from_frame(frame: LorentzMatrix5) -> Result<Self> {
        if !frame.is_proper_orthochronous() {
            return Err(Error::UnsupportedWedge("frame is not in SO(1,4)_0".into()));
        }
        Ok(Self { frame })
    }

    pub fn frame(&self) -> &LorentzMatrix5 {
        &self.frame
    }

    /// `g W`.
    pub fn transformed(&self, g: &LorentzMatrix5) -> Self {
        Self { frame: g.compose(&self.frame) }
    }

    /// Coordinates of `x` in the wedge's own frame.
    pub fn pull_back(&self, x: &AmbientVector) -> AmbientVector {
        self.frame.inverse().apply(x)
    }

    /// `y^1 - |y^0|` for `y = frame^{-1} x`; positive inside.
    pub fn depth(&self, x: &AmbientVector) -> f64 {
        let y = self.pull_back(x);
        y.0[1] - y.0[0].abs()
    }

    pub fn contains(&self, x: &AmbientVector) -> Result<bool> {
        check_on_hyperboloid(x)?;
        Ok(self.depth(x) > 0.0)
    }

    /// `W' = frame j W0`.
    pub fn causal_complement(&self) -> Self {
        Self { frame: self.frame.compose(&reflection_base()) }
    }

    /// Same wedge iff `frame2^{-1} frame1` is a boost in the (0,1) plane times
    /// a rotation of the last three coordinates.
    pub fn same_as(&self, other: &Self) -> bool {
        is_stabilizer(&other.frame.inverse().compose(&self.frame).0, EQUALITY_TOL)
    }

    /// `n` points of the edge, the image of `{x^0 = x^1 = 0}`.
    pub fn edge_points(&self, n: usize, seed: u64) -> RegionSample {
        let mut rng = rng::substream(seed, "edge");
        let points = (0..n)
            .map(|_| {
                let d = rng::unit_sphere::<3>(&mut rng);
                self.frame.apply(&AmbientVector([0.0, 0.0, d[0], d[1], d[2]]))
            })
            .collect();
        RegionSample { points, seed }
    }

    /// `n` points strictly inside the wedge, at least `BOUNDARY_MARGIN` from its boundary.
    pub fn sample_interior(&self, n: usize, seed: u64) -> RegionSample {
        let mut rng = rng::substream(seed, "wedge-interior");
        let mut points = Vec::with_capacity(n);
        while points.len() < n {
            let y = sample_hyperboloid_point(&mut rng);
            if y.0[1] - y.0[0].abs() > BOUNDARY_MARGIN {
                points.push(self.frame.apply(&y));
            }
        }
        RegionSample { points, seed }
    }
}

fn check_on_hyperboloid(x: &AmbientVector) -> Result<()> {
    let scale = 1.0 + x.0.iter().map(|c| c * c).sum::<f64>();
    let residual = x.hyperboloid_residual();
    if residual > HYPERBOLOID_TOL * scale {
        return Err(Error::OffHyperboloid { residual });
    }
    Ok(())
}

/// Block test for the stabilizer of W0 in SO(1,4)_0.
pub fn is_stabilizer(m: &Mat5, tol: f64) -> bool {
    let scale = 1.0 + m.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
    for i in 0..5 {
        for j in 0..5 {
            if (i < 2) != (j < 2) && m[i][j].abs() > tol * scale {
                return false;
            }
        }
    }
    let det2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let det3 = m[2][2] * (m[3][3] * m[4][4] - m[3][4] * m[4][3])
        - m[2][3] * (m[3][2] * m[4][4] - m[3][4] * m[4][2])
        + m[2][4] * (m[3][2] * m[4][3] - m[3][3] * m[4][2]);
    m[0][0] > 0.0 && m[1][1] > 0.0 && det2 > 0.0 && det3 > 0.0 && mat5_det(m) > 0.0
}

/// Points on the de Sitter hyperboloid, all within `HYPERBOLOID_TOL`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionSample {
    pub points: Vec<AmbientVector>,
    pub seed: u64,
}

/// `x^0 = sinh(rho)`, spatial part `cosh(rho) * u` with `u` uniform on S^3,
/// `rho` uniform in [-2, 2].
pub fn sample_hyperboloid_point(rng: &mut Stream) -> AmbientVector {
    let rho = rng::uniform(rng, -2.0, 2.0);
    let u = rng::unit_sphere::<4>(rng);
    let c = libm::cosh(rho);
    AmbientVector([libm::sinh(rho), c * u[0], c * u[1], c * u[2], c * u[3]])
}

pub fn sample_hyperboloid(n: usize, seed: u64) -> RegionSample {
    let mut rng = rng::substream(seed, "hyperboloid");
    RegionSample { points: (0..n).map(|_| sample_hyperboloid_point(&mut rng)).collect(), seed }
}

/// Random element of SO(1,4)_0: exponential of a random generator with
/// rotation coefficients in [-pi, pi] and boost coefficients in [-1, 1].
pub fn random_lorentz(rng: &mut Stream) -> LorentzMatrix5 {
    let mut terms = Vec::with_capacity(10);
    for mu in 0..5 {
        for nu in mu + 1..5 {
            let range = if mu == 0 { 1.0 } else { core::f64::consts::PI };
            terms.push((rng::uniform(rng, -range, range), mu, nu));
        }
    }
    LorentzMatrix5(exp_generator(&lie_combination(&terms), 1.0))
}

/// True iff `x - y` is spacelike in the ambient metric.
pub fn spacelike_separated(x: &AmbientVector, y: &AmbientVector) -> bool {
    let d = x.sub(y);
    minkowski_form(&d, &d) < 0.0
}

#[derive(Debug, Clone, PartialEq)]
pub enum RigidityVerdict {
    Equal,
    /// A point of `W1` outside the closure of `W2`.
    Witness(AmbientVector),
    Inconclusive,
}

/// Looks for a point of `W1 \ W2`; `Equal` if the wedges coincide.
pub fn inclusion_rigidity_probe(w1: &Wedge, w2: &Wedge, n: usize, seed: u64) -> RigidityVerdict {
    if w1.same_as(w2) {
        return RigidityVerdict::Equal;
    }
    let mut rng = rng::substream(seed, "rigidity");
    for _ in 0..n {
        let y = sample_hyperboloid_point(&mut rng);
        if y.0[1] - y.0[0].abs() <= BOUNDARY_MARGIN {
            continue;
        }
        let x = w1.frame.apply(&y);
        if w2.depth(&x) < -BOUNDARY_MARGIN {
            return RigidityVerdict::Witness(x);
        }
    }
    RigidityVerdict::Inconclusive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_group::{boost_base, rotation_base};

    #[test]
    fn membership_of_basis_points() {
        let w0 = Wedge::origin();
        assert!(w0.contains(&AmbientVector::basis(1)).unwrap());
        assert!(!w0.contains(&AmbientVector::new([0.0, -1.0, 0.0, 0.0, 0.0])).unwrap());
        assert!(w0.causal_complement().contains(&AmbientVector::new([0.0, -1.0, 0.0, 0.0, 0.0])).unwrap());
        assert!(matches!(
            w0.contains(&AmbientVector::new([0.0, 2.0, 0.0, 0.0, 0.0])),
            Err(Error::OffHyperboloid { .. })
        ));
    }

    #[test]
    fn boost_preserves_w0() {
        let w0 = Wedge::origin();
        let b = boost_base(0.4);
        for x in sample_hyperboloid(500, 3).points {
            if w0.depth(&x).abs() < 1e-9 {
                continue;
            }
            assert_eq!(w0.contains(&x).unwrap(), w0.contains(&b.apply(&x)).unwrap());
        }
        assert!(w0.transformed(&b).same_as(&w0));
    }

    #[test]
    fn complement_is_involutive_and_spacelike() {
        let w0 = Wedge::origin();
        let wc = w0.causal_complement();
        assert!(wc.causal_complement().same_as(&w0));
        assert!(!wc.same_as(&w0));
        let a = w0.sample_interior(60, 1).points;
        let b = wc.sample_interior(60, 2).points;
        for x in &a {
            for y in &b {
                assert!(spacelike_separated(x, y));
            }
        }
    }

    #[test]
    fn edges() {
        let w0 = Wedge::origin();
        for p in w0.edge_points(20, 5).points {
            assert_eq!((p.0[0], p.0[1]), (0.0, 0.0));
            assert!(p.hyperboloid_residual() < 1e-12);
            let q = boost_base(0.37).apply(&p);
            assert!(q.max_abs_diff(&p) < 1e-15);
        }
        let mut rng = rng::substream(9, "g");
        let g = random_lorentz(&mut rng);
        let w = w0.transformed(&g);
        let e0 = w0.edge_points(10, 4).points;
        let e = w.edge_points(10, 4).points;
        for (p, q) in e0.iter().zip(&e) {
            assert!(g.apply(p).max_abs_diff(q) < 1e-12);
        }
    }

    #[test]
    fn rigidity_examples() {
        let w0 = Wedge::origin();
        assert_eq!(inclusion_rigidity_probe(&w0, &w0, 10, 0), RigidityVerdict::Equal);
        assert!(matches!(
            inclusion_rigidity_probe(&w0, &w0.causal_complement(), 100, 0),
            RigidityVerdict::Witness(_)
        ));
        let r = w0.transformed(&rotation_base(1, 2, 0.3));
        assert!(matches!(inclusion_rigidity_probe(&w0, &r, 100_000, 0), RigidityVerdict::Witness(_)));
        // rotations of the edge directions stabilize W0
        let s = w0.transformed(&rotation_base(3, 4, 1.1));
        assert_eq!(inclusion_rigidity_probe(&w0, &s, 10, 0), RigidityVerdict::Equal);
    }

    #[test]
    fn random_lorentz_is_proper() {
        let mut rng = rng::substream(1, "g");
        for _ in 0..20 {
            assert!(random_lorentz(&mut rng).is_proper_orthochronous());
        }
    }
}
