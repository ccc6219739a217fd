//! Net-level checks: wedge assignments of deformed field algebras, twisted
//! locality, the causal Borchers axioms, the fixed-point criterion and the
//! inequivalence witness.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::format;
use alloc::vec::Vec;

use crate::car_fock::{FockOperator, OneParticleModel, WedgeTag};
use crate::deformation::DeformationContext;
use crate::error::{Error, Result};
use crate::linalg::{distance_to_span, norm, orthonormal_basis, CMatrix, C64, ZERO};
use crate::rng;
use crate::spin_group::{boost_base, rotation_base};

/// Relative threshold for span membership and rank decisions.
pub const SPAN_TOL: f64 = 1e-9;

/// Which side of the tolerance counts as a pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// pass iff residual <= tolerance
    Upper,
    /// pass iff residual > tolerance (negative controls)
    Lower,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
    pub metadata: Vec<(String, String)>,
}

impl CheckReport {
    pub fn upper(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self::build(name.into(), residual, tolerance, Bound::Upper)
    }

    pub fn lower(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self::build(name.into(), residual, tolerance, Bound::Lower)
    }

    fn build(name: String, residual: f64, tolerance: f64, bound: Bound) -> Self {
        let pass = match bound {
            Bound::Upper => residual <= tolerance,
            Bound::Lower => residual > tolerance,
        };
        Self { name, max_residual: residual, tolerance, bound, pass, metadata: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }
}

/// Ordered products of distinct generators, in list order, of length `1..=degree`.
pub fn monomials(generators: &[FockOperator], degree: usize) -> Vec<FockOperator> {
    let mut out = Vec::new();
    let n = generators.len();
    for mask in 1usize..1 << n {
        if mask.count_ones() as usize > degree {
            continue;
        }
        let mut it = (0..n).filter(|i| mask >> i & 1 == 1);
        let first = it.next().expect("mask is nonzero");
        let product = it.fold(generators[first].clone(), |acc, i| acc.mul(&generators[i]));
        out.push(product);
    }
    out
}

/// Generators of the (deformed) field algebras of the wedges the model supports.
#[derive(Debug, Clone, PartialEq)]
pub struct NetAssignment {
    pub kappa: f64,
    pub degree: usize,
    pub entries: Vec<(WedgeTag, Vec<FockOperator>)>,
}

impl NetAssignment {
    pub fn get(&self, tag: WedgeTag) -> Option<&[FockOperator]> {
        self.entries.iter().find(|(t, _)| *t == tag).map(|(_, v)| v.as_slice())
    }
}

/// `W0 -> warp_kappa(monomials)`, `W0' -> J warp_kappa(F) J^*`, and, with a
/// rotation, `rW0 -> R warp_kappa(F) R^*`.
pub fn build_net(model: &OneParticleModel, kappa: f64, degree: usize) -> Result<NetAssignment> {
    let ctx = DeformationContext::new(model, kappa);
    let base = monomials(&model.localized_fields(WedgeTag::W0)?, degree);
    let w0: Vec<FockOperator> = base.iter().map(|f| ctx.warp(f)).collect();
    let mut entries = Vec::new();
    if let Ok(j) = model.reflection_j() {
        entries.push((WedgeTag::W0Prime, w0.iter().map(|f| f.conjugate_by(&j)).collect()));
    }
    if let Ok(r) = model.rotation_r() {
        entries.push((WedgeTag::Rotated, w0.iter().map(|f| f.conjugate_by(&r)).collect()));
    }
    entries.insert(0, (WedgeTag::W0, w0));
    Ok(NetAssignment { kappa, degree, entries })
}

fn vectorize(ops: &[FockOperator]) -> Vec<Vec<C64>> {
    ops.iter().map(|f| f.matrix().vectorize()).collect()
}

/// Largest relative distance of `map(F)` from the span of the generators.
pub fn span_invariance_residual(gens: &[FockOperator], map: impl Fn(&FockOperator) -> FockOperator) -> f64 {
    let vecs = vectorize(gens);
    let scale = vecs.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let basis = orthonormal_basis(&vecs, SPAN_TOL * scale.max(1.0));
    gens.iter()
        .map(|g| {
            let v = map(g).matrix().vectorize();
            distance_to_span(&basis, &v) / norm(&v).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

/// `max || [Z F Z^*, G] ||_2` over the given pairs. The Frobenius norm
/// bounds the operator norm from above.
pub fn twisted_commutator_residual(z: &FockOperator, fs: &[FockOperator], gs: &[FockOperator]) -> f64 {
    let mut worst: f64 = 0.0;
    for f in fs {
        let twisted = f.conjugate_by(z);
        for g in gs {
            worst = worst.max(twisted.commutator(g).matrix().frobenius_norm());
        }
    }
    worst
}

fn random_combinations(ops: &[FockOperator], count: usize, rng: &mut rng::Stream) -> Vec<FockOperator> {
    (0..count)
        .map(|_| {
            let coeffs = rng::complex_vector(rng, ops.len());
            let mut acc = ops[0].scale(coeffs[0]);
            for (op, c) in ops.iter().zip(&coeffs).skip(1) {
                acc = acc.add(&op.scale(*c));
            }
            acc
        })
        .collect()
}

fn locality_operands(
    model: &OneParticleModel,
    kappa_w0: f64,
    kappa_w0p: f64,
    degree: usize,
    seed: u64,
) -> Result<(Vec<FockOperator>, Vec<FockOperator>)> {
    let ctx = DeformationContext::new(model, 0.0);
    let f0 = monomials(&model.localized_fields(WedgeTag::W0)?, degree);
    let g0 = monomials(&model.localized_fields(WedgeTag::W0Prime)?, degree);
    let mut fs: Vec<FockOperator> = f0.iter().map(|f| ctx.with_kappa(kappa_w0).warp(f)).collect();
    let mut gs: Vec<FockOperator> = g0.iter().map(|g| ctx.with_kappa(kappa_w0p).warp(g)).collect();
    let mut r = rng::substream(seed, "locality");
    let extra_f = random_combinations(&fs, 4, &mut r);
    let extra_g = random_combinations(&gs, 4, &mut r);
    fs.extend(extra_f);
    gs.extend(extra_g);
    Ok((fs, gs))
}

/// Twisted locality of the deformed net: `W0` monomials warped with `kappa`
/// against `W0'` monomials warped with `-kappa`.
pub fn check_twisted_locality(model: &OneParticleModel, kappa: f64, degree: usize, seed: u64) -> Result<CheckReport> {
    let (fs, gs) = locality_operands(model, kappa, -kappa, degree, seed)?;
    let residual = twisted_commutator_residual(&model.twist_z(), &fs, &gs);
    Ok(CheckReport::upper("twisted_locality", residual, 1e-10)
        .with("kappa", kappa)
        .with("degree", degree)
        .with("seed", seed)
        .with("pairs", fs.len() * gs.len()))
}

/// Same check with both wedges warped by `+kappa`; expected to fail for `kappa != 0`.
pub fn twisted_locality_negative_control(
    model: &OneParticleModel,
    kappa: f64,
    degree: usize,
    seed: u64,
) -> Result<CheckReport> {
    let (fs, gs) = locality_operands(model, kappa, kappa, degree, seed)?;
    let residual = twisted_commutator_residual(&model.twist_z(), &fs, &gs);
    Ok(CheckReport::lower("twisted_locality_negative_control", residual, 1e-2)
        .with("kappa", kappa)
        .with("degree", degree)
        .with("seed", seed))
}

/// Axioms a) boost and c) gauge invariance of the deformed `W0` span, and b)
/// twisted commutation of the reflected span with it.
pub fn causal_borchers_axioms(model: &OneParticleModel, kappa: f64) -> Result<Vec<CheckReport>> {
    causal_borchers_axioms_with(model, kappa, &model.reflection_j()?)
}

/// As [`causal_borchers_axioms`] with an explicit operator in place of the reflection.
pub fn causal_borchers_axioms_with(
    model: &OneParticleModel,
    kappa: f64,
    reflection: &FockOperator,
) -> Result<Vec<CheckReport>> {
    let tol = if kappa == 0.0 { 1e-12 } else { 1e-10 };
    let ctx = DeformationContext::new(model, kappa);
    let base = monomials(&model.localized_fields(WedgeTag::W0)?, 4);
    let gens: Vec<FockOperator> = base.iter().map(|f| ctx.warp(f)).collect();
    let mut boost: f64 = 0.0;
    let mut gauge: f64 = 0.0;
    for t in [-0.7, 0.3, 1.9] {
        let u = model.boost_unitary(t);
        boost = boost.max(span_invariance_residual(&gens, |g| g.conjugate_by(&u)));
        let v = model.gauge_unitary(t);
        gauge = gauge.max(span_invariance_residual(&gens, |g| g.conjugate_by(&v)));
    }
    let reflected: Vec<FockOperator> = gens.iter().map(|g| g.conjugate_by(reflection)).collect();
    let locality = twisted_commutator_residual(&model.twist_z(), &gens, &reflected);
    Ok(vec![
        CheckReport::upper("borchers_a_boost_invariance", boost, tol).with("kappa", kappa),
        CheckReport::upper("borchers_b_twisted_commutant", locality, tol).with("kappa", kappa),
        CheckReport::upper("borchers_c_gauge_invariance", gauge, tol).with("kappa", kappa),
    ])
}

/// Spans given to `W0` through two different stabilizer elements coincide.
pub fn net_well_definedness(model: &OneParticleModel, kappa: f64) -> Result<CheckReport> {
    let net = build_net(model, kappa, 4)?;
    let gens = net.get(WedgeTag::W0).expect("W0 is always assigned");
    let g1 = model.boost_unitary(0.3);
    let g2 = model.boost_unitary(-0.7).mul(&model.gauge_unitary(0.4));
    let a: Vec<FockOperator> = gens.iter().map(|g| g.conjugate_by(&g1)).collect();
    let b: Vec<FockOperator> = gens.iter().map(|g| g.conjugate_by(&g2)).collect();
    let residual = containment(&a, &b).max(containment(&b, &a));
    Ok(CheckReport::upper("net_well_definedness", residual, 1e-10).with("kappa", kappa))
}

/// Largest relative distance of elements of `b` from the span of `a`.
fn containment(a: &[FockOperator], b: &[FockOperator]) -> f64 {
    let va = vectorize(a);
    let scale = va.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let basis = orthonormal_basis(&va, SPAN_TOL * scale.max(1.0));
    vectorize(b)
        .iter()
        .map(|v| distance_to_span(&basis, v) / norm(v).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointReport {
    /// `(n, ||[K, A E(n)]||)` for every charge sector.
    pub sector_residuals: Vec<(i32, f64)>,
    /// Norm of `d/dkappa warp_kappa(A)` at zero.
    pub derivative_norm: f64,
}

impl FixedPointReport {
    pub fn max_charged_residual(&self) -> f64 {
        self.sector_residuals.iter().filter(|(n, _)| *n != 0).map(|(_, r)| *r).fold(0.0, f64::max)
    }
}

/// Sector commutators with the boost generator and the kappa-derivative of
/// the warp at zero (central differences with one Richardson step).
pub fn fixed_point_residual(model: &OneParticleModel, a: &FockOperator) -> Result<FixedPointReport> {
    let q = model.fock_space().charge_operator();
    let gauge = q.commutator(a).op_norm();
    if gauge > 1e-10 {
        return Err(Error::NotGaugeInvariant(gauge));
    }
    let fs = model.fock_space();
    let k: Vec<C64> = model.boost_energies().iter().map(|e| C64::new(*e, 0.0)).collect();
    let kop = a.with_matrix(CMatrix::diagonal(&k));
    let sector_residuals = (fs.min_charge()..=fs.max_charge())
        .map(|n| (n, kop.commutator(&a.mul(&fs.charge_projector(n))).op_norm()))
        .collect();
    let ctx = DeformationContext::new(model, 0.0);
    let diff = |h: f64| -> CMatrix {
        let plus = ctx.with_kappa(h).warp(a);
        let minus = ctx.with_kappa(-h).warp(a);
        (plus.matrix() - minus.matrix()).scale_real(0.5 / h)
    };
    let h = 1e-4;
    let coarse = diff(h);
    let fine = diff(h / 2.0);
    let richardson = &fine.scale_real(4.0 / 3.0) - &coarse.scale_real(1.0 / 3.0);
    Ok(FixedPointReport { sector_residuals, derivative_norm: richardson.op_norm() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequivalenceWitness {
    /// `|| Lambda(kappa) r^phi - r^phi Lambda(kappa) ||` in the base group.
    pub group_residual: f64,
    /// `|| Psi(f)_{xi,kappa} - Psi(f)_{r_* xi, kappa} ||` in the Fock model.
    pub fock_residual: f64,
}

/// Evidence that the deformed spinor depends on the rotated flow.
pub fn inequivalence_witness(model: &OneParticleModel, kappa: f64, phi: f64) -> Result<InequivalenceWitness> {
    if model.d_plus() < 2 && model.d_minus() < 2 {
        return Err(Error::MissingSymmetry("rotation"));
    }
    let lambda = boost_base(kappa);
    let r = rotation_base(1, 2, phi);
    let group_residual = lambda.compose(&r).max_diff(&r.compose(&lambda));

    let rotated = model.clone().with_rotation_angle(phi)?;
    let rot = rotated.rotation_r()?;
    let ctx = DeformationContext::new(model, kappa);
    let pushed = ctx.transported(&rot)?;
    let f = witness_vector(model);
    let psi = model.spinor(&f)?;
    let fock_residual = ctx.warp(&psi).distance(&pushed.warp(&psi));
    Ok(InequivalenceWitness { group_residual, fock_residual })
}

/// Normalized vector on the localized modes of W0.
fn witness_vector(model: &OneParticleModel) -> Vec<C64> {
    let mut f = vec![ZERO; model.modes()];
    let loc = model.localized_modes();
    let w = 1.0 / libm::sqrt(loc.len().max(1) as f64);
    for &i in loc {
        f[i] = C64::new(w, 0.0);
    }
    f
}

/// Model with `d_plus = 2 a`, `d_minus = 2 b` modes, random positive
/// frequencies `omega` paired with `-omega`, and one mode of each pair localized.
pub fn random_model(seed: u64, pairs_plus: usize, pairs_minus: usize) -> Result<OneParticleModel> {
    let mut r = rng::substream(seed, "model");
    let mut species = |pairs: usize, offset: usize| {
        let omegas: Vec<f64> = (0..pairs).map(|_| rng::uniform(&mut r, 0.2, 2.0)).collect();
        let mut freqs = omegas.clone();
        freqs.extend(omegas.iter().map(|w| -w));
        let pairing: Vec<usize> = (0..2 * pairs).map(|i| offset + (i + pairs) % (2 * pairs)).collect();
        let flip: Vec<bool> = (0..pairs).map(|_| rng::uniform(&mut r, 0.0, 1.0) < 0.5).collect();
        let localized: Vec<usize> = (0..pairs).map(|i| offset + if flip[i] { i + pairs } else { i }).collect();
        (freqs, pairing, localized)
    };
    let (fp, pp, lp) = species(pairs_plus, 0);
    let (fm, pm, lm) = species(pairs_minus, 2 * pairs_plus);
    OneParticleModel::new(fp, fm, [lp, lm].concat(), Some([pp, pm].concat()), None, seed)
}

/// Random operator commuting with the charge; with `fixed`, also commuting
/// with the boost generator on every charged sector.
pub fn random_gauge_invariant(model: &OneParticleModel, fixed: bool, r: &mut rng::Stream) -> FockOperator {
    let fs = model.fock_space();
    let n = fs.dim();
    let q = fs.charges();
    let k = model.boost_energies();
    let data = rng::complex_vector(r, n * n);
    let m = CMatrix::from_fn(n, n, |i, j| {
        let same_sector = q[i] == q[j];
        let commutes = q[i] == 0 || (k[i] - k[j]).abs() < 1e-12;
        if same_sector && (!fixed || commutes) {
            data[i * n + j]
        } else {
            ZERO
        }
    });
    fs.operator(m).expect("dimension matches")
}

/// `A = Psi^dagger(f) Psi(g)` for particle modes of different frequency, or `None`.
pub fn charged_bilinear(model: &OneParticleModel) -> Option<FockOperator> {
    let freqs = model.freqs();
    let dp = model.d_plus();
    let (i, j) = (0..dp).flat_map(|i| (0..dp).map(move |j| (i, j))).find(|&(i, j)| freqs[i] != freqs[j])?;
    let mut f = vec![ZERO; model.modes()];
    f[i] = C64::new(1.0, 0.0);
    let mut g = vec![ZERO; model.modes()];
    g[j] = C64::new(1.0, 0.0);
    let a = model.cospinor(&f).ok()?;
    let b = model.spinor(&g).ok()?;
    Some(a.mul(&b))
}

pub fn describe(report: &CheckReport) -> String {
    format!(
        "{} {} residual={:.3e} tol={:.1e}",
        if report.pass { "PASS" } else { "FAIL" },
        report.name,
        report.max_residual,
        report.tolerance
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_count() {
        let m = OneParticleModel::default_model();
        let f = m.localized_fields(WedgeTag::W0).unwrap();
        assert_eq!(monomials(&f, 4).len(), 15);
        assert_eq!(monomials(&f, 2).len(), 10);
    }

    #[test]
    fn undeformed_net_and_gauge_invariance() {
        let m = OneParticleModel::default_model();
        let net = build_net(&m, 0.0, 4).unwrap();
        let direct = monomials(&m.localized_fields(WedgeTag::W0).unwrap(), 4);
        assert_eq!(net.get(WedgeTag::W0).unwrap(), direct.as_slice());
        let net = build_net(&m, 0.5, 4).unwrap();
        let gens = net.get(WedgeTag::W0).unwrap();
        let v = m.gauge_unitary(0.8);
        assert!(span_invariance_residual(gens, |g| g.conjugate_by(&v)) < 1e-10);
        let u = m.boost_unitary(0.8);
        assert!(span_invariance_residual(gens, |g| g.conjugate_by(&u)) < 1e-10);
    }

    #[test]
    fn locality_and_control() {
        let m = OneParticleModel::default_model();
        assert!(check_twisted_locality(&m, 0.0, 4, 1).unwrap().max_residual < 1e-12);
        let rep = check_twisted_locality(&m, 0.5, 2, 1).unwrap();
        assert!(rep.pass, "{rep:?}");
        let ctrl = twisted_locality_negative_control(&m, 0.5, 2, 1).unwrap();
        assert!(ctrl.pass, "{ctrl:?}");
    }

    #[test]
    fn borchers_axioms_and_violation() {
        let m = OneParticleModel::default_model();
        for kappa in [0.0, 0.5] {
            for rep in causal_borchers_axioms(&m, kappa).unwrap() {
                assert!(rep.pass, "{rep:?}");
            }
        }
        let id = m.fock_space().identity();
        let reps = causal_borchers_axioms_with(&m, 0.5, &id).unwrap();
        assert!(!reps[1].pass);
        assert!(net_well_definedness(&m, 0.5).unwrap().pass);
    }

    #[test]
    fn fixed_point_examples() {
        let m = OneParticleModel::default_model();
        let one = m.fock_space().identity();
        let rep = fixed_point_residual(&m, &one).unwrap();
        assert!(rep.derivative_norm < 1e-8 && rep.max_charged_residual() == 0.0);
        let e1 = m.charge_projector(1);
        let rep = fixed_point_residual(&m, &e1).unwrap();
        assert!(rep.derivative_norm < 1e-8);
        assert_eq!(rep.sector_residuals.iter().find(|(n, _)| *n == 1).unwrap().1, 0.0);
        let a = charged_bilinear(&m).unwrap();
        let rep = fixed_point_residual(&m, &a).unwrap();
        assert!(rep.derivative_norm > 1e-6);
        let ctx = DeformationContext::new(&m, 0.3);
        assert!(ctx.warp(&a).distance(&a) > 1e-3);
        let psi = m.spinor(&[C64::new(1.0, 0.0), ZERO, ZERO, ZERO]).unwrap();
        assert!(matches!(fixed_point_residual(&m, &psi), Err(Error::NotGaugeInvariant(_))));
    }

    #[test]
    fn witness_examples() {
        let m = OneParticleModel::default_model();
        let w = inequivalence_witness(&m, 0.0, 0.7).unwrap();
        assert!(w.group_residual < 1e-12 && w.fock_residual < 1e-12);
        let w = inequivalence_witness(&m, 0.8, 0.0).unwrap();
        assert!(w.group_residual < 1e-12 && w.fock_residual < 1e-12);
        let w = inequivalence_witness(&m, 1.0, core::f64::consts::FRAC_PI_4).unwrap();
        assert!(w.group_residual > 0.1 && w.fock_residual > 0.1, "{w:?}");
        let small = inequivalence_witness(&m, 0.1, core::f64::consts::FRAC_PI_4).unwrap();
        assert!(w.fock_residual > small.fock_residual);
    }

    #[test]
    fn random_models_are_valid_and_local() {
        for seed in [11, 12] {
            let m = random_model(seed, 1, 1).unwrap();
            assert!(check_twisted_locality(&m, 0.5, 4, seed).unwrap().pass);
        }
    }
}
