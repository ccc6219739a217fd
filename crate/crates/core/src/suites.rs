//! Named check suites. Each suite returns one [`CheckReport`] per property,
//! with residuals, tolerances and the parameters that produced them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;

use crate::car_fock::{quasifree_npoint, FockOperator, OneParticleModel, QuasifreeOperatorS, WedgeTag};
use crate::deformation::{Cutoff, DeformationContext};
use crate::error::{Error, Result};
use crate::geometry::{embed_vector, extract_point, gammas, minkowski_form, QuatMatrix2, Quaternion, ETA};
use crate::linalg::{inner, norm, CMatrix, C64, I, ONE, ZERO};
use crate::rng;
use crate::spin_group::{
    abelian_commutativity_residual, boost_base, boost_cover, covering_hom, default_obstruction_grid, lie_bracket,
    reflection_base, reflection_cover, reflection_obstruction_check, rotation_cover, structure_constant_prediction,
    AbelianSubgroup, LieBasisElement, LorentzMatrix5, SpinElement,
};
use crate::verification::{
    causal_borchers_axioms, check_twisted_locality, fixed_point_residual, inequivalence_witness, monomials,
    net_well_definedness, random_gauge_invariant, twisted_locality_negative_control, CheckReport,
};
use crate::wedges::{inclusion_rigidity_probe, random_lorentz, sample_hyperboloid, RigidityVerdict, Wedge};

/// Suite names in default execution order.
pub const SUITES: [&str; 11] = [
    "geometry",
    "covering",
    "lie",
    "wedges",
    "car",
    "deformation",
    "oracle",
    "locality",
    "fixed_point",
    "inequivalence",
    "borchers",
];

/// Regulator values of the oracle sweep.
pub const ORACLE_EPSILONS: [f64; 3] = [0.1, 0.05, 0.025];

pub struct SuiteParams<'a> {
    pub model: &'a OneParticleModel,
    pub kappas: &'a [f64],
    pub seed: u64,
}

pub fn is_known(name: &str) -> bool {
    SUITES.contains(&name)
}

pub fn run(name: &str, p: &SuiteParams) -> Result<Vec<CheckReport>> {
    match name {
        "geometry" => Ok(geometry(p.seed)),
        "covering" => Ok(covering(p.seed)),
        "lie" => Ok(lie(p.seed)),
        "wedges" => Ok(wedges(p.seed)),
        "car" => car(p.model, p.seed),
        "deformation" => deformation(p),
        "oracle" => oracle(p),
        "locality" => p.kappas.iter().map(|k| check_twisted_locality(p.model, *k, 4, p.seed)).collect(),
        "fixed_point" => fixed_point(p.model, p.seed),
        "inequivalence" => inequivalence(p),
        "borchers" => borchers(p),
        other => Err(Error::InvalidModel(format!("unknown suite {other}"))),
    }
}

pub fn geometry(seed: u64) -> Vec<CheckReport> {
    let g = gammas();
    let mut clifford: f64 = 0.0;
    for mu in 0..5 {
        for nu in 0..5 {
            let ac = g[mu] * g[nu] + g[nu] * g[mu];
            let expect = if mu == nu { QuatMatrix2::identity().scale(2.0 * ETA[mu]) } else { QuatMatrix2::zero() };
            clifford = clifford.max((ac - expect).max_abs());
        }
    }
    let product = (g[0] * g[1] * g[2] * g[3] * g[4]).to_complex();
    let pseudo = product.scale(I).distance(&CMatrix::identity(4));
    let real_unit = product.distance(&CMatrix::identity(4)).min(product.distance(&CMatrix::identity(4).scale_real(-1.0)));
    let g0 = gammas()[0];
    let mut eta: f64 = 0.0;
    let mut roundtrip: f64 = 0.0;
    for x in sample_hyperboloid(1000, seed).points {
        let xt = embed_vector(&x);
        let lhs = xt.star() * g0 * xt * g0;
        eta = eta.max((lhs - QuatMatrix2::identity().scale(minkowski_form(&x, &x))).max_abs());
        roundtrip = roundtrip.max(extract_point(&xt).map(|y| y.max_abs_diff(&x)).unwrap_or(f64::INFINITY));
    }
    vec![
        CheckReport::upper("clifford_anticommutators", clifford, 0.0).with("pairs", 25),
        CheckReport::upper("pseudoscalar_i_gamma0_to_gamma4_is_one", pseudo, 1e-12),
        CheckReport::upper("pseudoscalar_is_plus_or_minus_one", real_unit, 1e-12),
        CheckReport::upper("eta_identity", eta, 1e-12).with("points", 1000).with("seed", seed),
        CheckReport::upper("embed_extract_roundtrip", roundtrip, 1e-10).with("points", 1000),
    ]
}

fn unit_quaternion(r: &mut rng::Stream) -> Quaternion {
    let u = rng::unit_sphere::<4>(r);
    Quaternion::new(u[0], u[1], u[2], u[3])
}

/// Product of 1 to 4 factors drawn from boosts, the reflection and rotations.
pub fn random_spin_word(r: &mut rng::Stream) -> SpinElement {
    let len = 1 + rng::uniform(r, 0.0, 4.0) as usize;
    (0..len).fold(SpinElement::identity(), |g, _| {
        let factor = match rng::uniform(r, 0.0, 3.0) as usize {
            0 => boost_cover(rng::uniform(r, -0.3, 0.3)),
            1 => reflection_cover(),
            _ => rotation_cover(unit_quaternion(r), unit_quaternion(r)).expect("unit quaternions"),
        };
        g.compose(&factor)
    })
}

pub fn covering(seed: u64) -> Vec<CheckReport> {
    let mut r = rng::substream(seed, "words");
    let mut hom: f64 = 0.0;
    for _ in 0..100 {
        let (a, b) = (random_spin_word(&mut r), random_spin_word(&mut r));
        hom = hom.max(covering_hom(&a.compose(&b)).max_diff(&covering_hom(&a).compose(&covering_hom(&b))));
    }
    let id = LorentzMatrix5::identity();
    let kernel = covering_hom(&SpinElement::identity())
        .max_diff(&id)
        .max(covering_hom(&SpinElement::identity().neg()).max_diff(&id));
    let doubling = [0.1, 0.5, 1.0]
        .iter()
        .map(|t| covering_hom(&boost_cover(*t)).max_diff(&boost_base(*t)))
        .fold(0.0, f64::max);
    let reflection = covering_hom(&reflection_cover()).max_diff(&reflection_base());
    vec![
        CheckReport::upper("homomorphism", hom, 1e-10).with("words", 100).with("seed", seed),
        CheckReport::upper("kernel_plus_minus_one", kernel, 0.0),
        CheckReport::upper("boost_rapidity_doubling", doubling, 1e-10).with("t", "0.1,0.5,1.0"),
        CheckReport::upper("reflection_cover", reflection, 1e-10),
    ]
}

pub fn lie(seed: u64) -> Vec<CheckReport> {
    let mut brackets: f64 = 0.0;
    let mut count = 0;
    for a in LieBasisElement::basis() {
        for b in LieBasisElement::basis() {
            let lhs = lie_bracket(&a, &b);
            let rhs = structure_constant_prediction(a.mu, a.nu, b.mu, b.nu);
            for (x, y) in lhs.iter().flatten().zip(rhs.iter().flatten()) {
                brackets = brackets.max((x - y).abs());
            }
            count += 1;
        }
    }
    let mut r = rng::substream(seed, "flows");
    let mut flows: f64 = 0.0;
    for sg in AbelianSubgroup::ALL {
        for _ in 0..25 {
            let (t, s) = (rng::uniform(&mut r, -2.0, 2.0), rng::uniform(&mut r, -2.0, 2.0));
            flows = flows.max(abelian_commutativity_residual(sg, t, s));
        }
    }
    let grid = default_obstruction_grid();
    let obstruction = reflection_obstruction_check(&grid);
    vec![
        CheckReport::upper("structure_constants", brackets, 0.0).with("pairs", count),
        CheckReport::upper("abelian_flows_commute", flows, 1e-10).with("subgroups", 4),
        CheckReport::upper("j12_reverses_l2_flow", obstruction.reversal_residual, 1e-10).with("grid", grid.len()),
    ]
}

pub fn wedges(seed: u64) -> Vec<CheckReport> {
    let mut r = rng::substream(seed, "wedge-pairs");
    let (mut pairs, mut missing) = (0u64, 0usize);
    while pairs < 200 {
        let w1 = Wedge::origin().transformed(&random_lorentz(&mut r));
        let w2 = Wedge::origin().transformed(&random_lorentz(&mut r));
        if w1.same_as(&w2) {
            continue;
        }
        pairs += 1;
        if !matches!(inclusion_rigidity_probe(&w1, &w2, 100_000, seed.wrapping_add(pairs)), RigidityVerdict::Witness(_)) {
            missing += 1;
        }
    }
    let w0 = Wedge::origin();
    let wc = w0.causal_complement();
    let mut mismatches = 0usize;
    for x in sample_hyperboloid(2000, seed).points {
        if w0.depth(&x).abs() < 1e-9 {
            continue;
        }
        let inside = w0.contains(&x).unwrap_or(false);
        for t in [-0.8, 0.25, 1.1] {
            mismatches += usize::from(w0.contains(&boost_base(t).apply(&x)).unwrap_or(!inside) != inside);
        }
        mismatches += usize::from(wc.contains(&reflection_base().apply(&x)).unwrap_or(!inside) != inside);
    }
    vec![
        CheckReport::upper("rigidity_pairs_without_witness", missing as f64, 0.0)
            .with("pairs", pairs)
            .with("samples", 100_000),
        CheckReport::upper("membership_covariance_mismatches", mismatches as f64, 0.0).with("points", 2000),
    ]
}

/// Covector of each basis field as a sparse list `(row, col, value)`.
fn sparse(m: &CMatrix) -> Vec<(usize, usize, C64)> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m[(i, j)] != ZERO {
                out.push((i, j, m[(i, j)]));
            }
        }
    }
    out
}

/// Quasifree formula against Fock vacuum expectations for all words in the
/// selfdual basis up to `max_len`. Returns (words, worst residual).
pub fn quasifree_vs_fock(model: &OneParticleModel, max_len: usize) -> Result<(usize, f64)> {
    struct Walk<'a> {
        basis: Vec<Vec<C64>>,
        ops: Vec<Vec<(usize, usize, C64)>>,
        s: &'a QuasifreeOperatorS,
        max_len: usize,
        words: usize,
        worst: f64,
    }
    fn dfs(w: &mut Walk, word: &mut Vec<usize>, covector: &[C64]) -> Result<()> {
        if !word.is_empty() {
            w.words += 1;
            let fs: Vec<Vec<C64>> = word.iter().map(|i| w.basis[*i].clone()).collect();
            let q = quasifree_npoint(w.s, &fs)?;
            w.worst = w.worst.max((q - covector[0]).norm());
        }
        if word.len() == w.max_len {
            return Ok(());
        }
        for i in 0..w.ops.len() {
            let mut next = vec![ZERO; covector.len()];
            for &(k, j, v) in &w.ops[i] {
                next[j] += covector[k] * v;
            }
            word.push(i);
            dfs(w, word, &next)?;
            word.pop();
        }
        Ok(())
    }
    let n = model.selfdual_dim();
    let basis: Vec<Vec<C64>> = (0..n).map(|i| unit(n, i)).collect();
    let ops = basis.iter().map(|f| model.field_b(f).map(|b| sparse(b.matrix()))).collect::<Result<_>>()?;
    let s = model.fock_projection();
    let mut walk = Walk { basis, ops, s: &s, max_len, words: 0, worst: 0.0 };
    let mut covector = vec![ZERO; model.fock_space().dim()];
    covector[0] = ONE;
    dfs(&mut walk, &mut Vec::new(), &covector)?;
    Ok((walk.words, walk.worst))
}

fn unit(n: usize, i: usize) -> Vec<C64> {
    let mut v = vec![ZERO; n];
    v[i] = ONE;
    v
}

pub fn car(model: &OneParticleModel, seed: u64) -> Result<Vec<CheckReport>> {
    let fs = model.fock_space();
    let n = model.selfdual_dim();
    let mut r = rng::substream(seed, "car");
    let mut anti: f64 = 0.0;
    let mut norm_formula: f64 = 0.0;
    let norm_samples = if fs.dim() <= 64 { 200 } else { 8 };
    for i in 0..200 {
        let f = rng::complex_vector(&mut r, n);
        let g = rng::complex_vector(&mut r, n);
        let (bf, bg) = (model.field_b(&f)?, model.field_b(&g)?);
        let expect = fs.identity().scale(inner(&model.conj_c(&f), &g));
        anti = anti.max(bf.anticommutator(&bg).matrix().distance(expect.matrix()));
        let expect = fs.identity().scale(inner(&f, &g));
        anti = anti.max(bf.adjoint().anticommutator(&bg).matrix().distance(expect.matrix()));
        if i < norm_samples {
            let nf2 = norm(&f) * norm(&f);
            let cross = inner(&f, &model.conj_c(&f)).norm();
            let formula = libm::sqrt(0.5 * (nf2 + libm::sqrt((nf2 * nf2 - cross * cross).max(0.0))));
            norm_formula = norm_formula.max((bf.op_norm() - formula).abs());
        }
    }
    let max_len = if n <= 8 { 6 } else { 4 };
    let (words, quasifree) = quasifree_vs_fock(model, max_len)?;
    let mut out = vec![
        CheckReport::upper("anticommutation_relations", anti, 1e-12).with("pairs", 200).with("seed", seed),
        CheckReport::upper("norm_formula", norm_formula, 1e-9).with("samples", norm_samples),
        CheckReport::upper("quasifree_vs_fock", quasifree, 1e-10).with("words", words).with("max_length", max_len),
    ];
    if let Ok(u) = model.reflection_j() {
        let w = model.doubled(&model.reflection_modes()?);
        let mut bog: f64 = 0.0;
        for _ in 0..20 {
            let f = rng::complex_vector(&mut r, n);
            bog = bog.max(model.field_b(&f)?.conjugate_by(&u).distance(&model.field_b(&w.mul_vec(&f))?));
        }
        let omega = fs.vacuum();
        let moved = u.apply(&omega);
        bog = bog.max(moved.iter().zip(&omega).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
        out.push(CheckReport::upper("bogolyubov_implementation", bog, 1e-10).with("unitary", "reflection"));
    }
    Ok(out)
}

fn random_operator(model: &OneParticleModel, r: &mut rng::Stream) -> FockOperator {
    let fs = model.fock_space();
    let n = fs.dim();
    fs.operator(CMatrix::from_rows(n, n, rng::complex_vector(r, n * n))).expect("square of the Fock dimension")
}

fn combination(ops: &[FockOperator], r: &mut rng::Stream) -> FockOperator {
    let c = rng::complex_vector(r, ops.len());
    ops.iter().zip(&c).skip(1).fold(ops[0].scale(c[0]), |acc, (op, z)| acc.add(&op.scale(*z)))
}

fn deformation(p: &SuiteParams) -> Result<Vec<CheckReport>> {
    let m = p.model;
    let omega = m.fock_space().vacuum();
    let z = m.twist_z();
    let w0 = monomials(&m.localized_fields(WedgeTag::W0)?, 4);
    let w0p = monomials(&m.localized_fields(WedgeTag::W0Prime)?, 4);
    let even: Vec<FockOperator> = w0.iter().filter(|f| !f.is_odd()).cloned().collect();
    let samples = if m.fock_space().dim() <= 64 { 100 } else { 5 };
    let mut out = Vec::new();
    for &kappa in p.kappas {
        let mut r = rng::substream(p.seed, &format!("deformation:{kappa}"));
        let ctx = DeformationContext::new(m, kappa);
        let anti = ctx.with_kappa(-kappa);
        let mut zero_kappa: f64 = 0.0;
        let mut lemma = [0.0f64; 5];
        let (mut vacuum, mut inverse, mut assoc) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..samples {
            let (f, g, h) = (random_operator(m, &mut r), random_operator(m, &mut r), random_operator(m, &mut r));
            zero_kappa = zero_kappa.max(ctx.with_kappa(0.0).warp(&f).matrix().distance(f.matrix()));
            lemma[0] = lemma[0].max(ctx.warp(&f).adjoint().distance(&ctx.warp(&f.adjoint())));
            lemma[1] = lemma[1].max(ctx.warp(&f).mul(&ctx.warp(&g)).distance(&ctx.warp(&ctx.rieffel_product(&f, &g))));
            let gp = combination(&w0p, &mut r);
            if !even.is_empty() {
                let fe = combination(&even, &mut r);
                lemma[2] = lemma[2].max(ctx.warp(&fe).commutator(&anti.warp(&gp)).op_norm());
            }
            let fo = combination(&w0, &mut r);
            lemma[3] = lemma[3].max(ctx.warp(&fo).conjugate_by(&z).commutator(&anti.warp(&gp)).op_norm());
            let (t, s) = (rng::uniform(&mut r, -2.0, 2.0), rng::uniform(&mut r, -2.0, 2.0));
            for x in [m.gauge_unitary(s), m.boost_unitary(t)] {
                lemma[4] = lemma[4].max(ctx.warp(&f).conjugate_by(&x).distance(&ctx.warp(&f.conjugate_by(&x))));
            }
            let a = ctx.warp(&f).apply(&omega);
            let b = f.apply(&omega);
            vacuum = vacuum.max(a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max));
            inverse = inverse.max(ctx.warp_inverse_check(&f));
            let lhs = ctx.rieffel_product(&ctx.rieffel_product(&f, &g), &h);
            assoc = assoc.max(lhs.distance(&ctx.rieffel_product(&f, &ctx.rieffel_product(&g, &h))));
        }
        let names = ["lemma_a_adjoint", "lemma_b_rieffel_homomorphism", "lemma_c_commutant", "lemma_d_twisted_commutant", "lemma_e_unitary_conjugation"];
        out.push(CheckReport::upper("warp_at_zero_is_identity", zero_kappa, 0.0).with("kappa", kappa));
        for (name, res) in names.iter().zip(lemma) {
            out.push(CheckReport::upper(*name, res, 1e-10).with("kappa", kappa).with("samples", samples));
        }
        out.push(CheckReport::upper("vacuum_invariance", vacuum, 1e-12).with("kappa", kappa));
        out.push(CheckReport::upper("warp_inverse", inverse, 1e-12).with("kappa", kappa));
        out.push(CheckReport::upper("rieffel_associativity", assoc, 1e-10).with("kappa", kappa));
    }
    Ok(out)
}

/// `max_i || warp_eps(B(e_i)) - warp(B(e_i)) ||` over the selfdual basis.
pub fn oracle_residual(model: &OneParticleModel, kappa: f64, eps: f64, cutoff: Cutoff) -> Result<f64> {
    let ctx = DeformationContext::new(model, kappa);
    let n = model.selfdual_dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let b = model.field_b(&unit(n, i))?;
        worst = worst.max(ctx.warp_oscillatory(&b, eps, cutoff)?.distance(&ctx.warp(&b)));
    }
    Ok(worst)
}

pub fn cutoff_name(c: Cutoff) -> &'static str {
    match c {
        Cutoff::Gaussian => "gaussian",
        Cutoff::RaisedCosine => "raised_cosine",
    }
}

fn oracle(p: &SuiteParams) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &kappa in p.kappas {
        for cutoff in [Cutoff::Gaussian, Cutoff::RaisedCosine] {
            let errs = ORACLE_EPSILONS
                .iter()
                .map(|eps| oracle_residual(p.model, kappa, *eps, cutoff))
                .collect::<Result<Vec<f64>>>()?;
            let increases = errs.windows(2).map(|w| (w[1] - w[0]).max(0.0)).fold(0.0, f64::max);
            let sweep: String = errs.iter().map(|e| format!("{e:.6e}")).collect::<Vec<_>>().join(",");
            out.push(
                CheckReport::upper("oracle_monotone", increases, 0.0)
                    .with("kappa", kappa)
                    .with("cutoff", cutoff_name(cutoff))
                    .with("residuals", sweep),
            );
            out.push(
                CheckReport::upper("oracle_residual_at_smallest_eps", errs[errs.len() - 1], 1e-3)
                    .with("kappa", kappa)
                    .with("cutoff", cutoff_name(cutoff))
                    .with("eps", ORACLE_EPSILONS[ORACLE_EPSILONS.len() - 1]),
            );
        }
    }
    Ok(out)
}

fn fixed_point(model: &OneParticleModel, seed: u64) -> Result<Vec<CheckReport>> {
    let mut r = rng::substream(seed, "fixed-point");
    let mut disagreements = 0usize;
    for i in 0..100 {
        let a = random_gauge_invariant(model, i % 2 == 0, &mut r);
        let rep = fixed_point_residual(model, &a)?;
        let (d, c) = (rep.derivative_norm, rep.max_charged_residual());
        if !((d < 1e-8 && c < 1e-8) || (d > 1e-6 && c > 1e-6)) {
            disagreements += 1;
        }
    }
    let fs = model.fock_space();
    let e1 = model.charge_projector(1);
    let rep = fixed_point_residual(model, &e1)?;
    let r1 = rep.sector_residuals.iter().find(|(n, _)| *n == 1).map_or(f64::INFINITY, |(_, r)| *r);
    let scalar = fs.identity().scale(e1.matrix().trace() / fs.dim() as f64);
    Ok(vec![
        CheckReport::upper("derivative_commutator_disagreements", disagreements as f64, 0.0)
            .with("operators", 100)
            .with("seed", seed),
        CheckReport::upper("e1_sector_residual", r1, 1e-12),
        CheckReport::upper("e1_derivative", rep.derivative_norm, 1e-8),
        CheckReport::lower("e1_distance_from_scalars", e1.distance(&scalar), 0.1),
    ])
}

fn inequivalence(p: &SuiteParams) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &kappa in p.kappas {
        let w = inequivalence_witness(p.model, kappa, FRAC_PI_4)?;
        let res = w.group_residual.min(w.fock_residual);
        let report = if kappa == 0.0 {
            CheckReport::upper("inequivalence_trivial", w.group_residual.max(w.fock_residual), 1e-12)
        } else {
            CheckReport::lower("inequivalence_witness", res, if kappa.abs() >= 1.0 { 0.1 } else { 0.0 })
        };
        out.push(
            report
                .with("kappa", kappa)
                .with("phi", "pi/4")
                .with("group_residual", format!("{:.6e}", w.group_residual))
                .with("fock_residual", format!("{:.6e}", w.fock_residual)),
        );
    }
    let w = inequivalence_witness(p.model, 1.0, 0.0)?;
    out.push(CheckReport::upper("inequivalence_trivial_phi_zero", w.group_residual.max(w.fock_residual), 1e-12).with("kappa", 1.0));
    Ok(out)
}

fn borchers(p: &SuiteParams) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &kappa in p.kappas {
        out.extend(causal_borchers_axioms(p.model, kappa)?);
        out.push(net_well_definedness(p.model, kappa)?);
        if kappa != 0.0 {
            out.push(twisted_locality_negative_control(p.model, kappa, 4, p.seed)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_runs_on_the_default_model() {
        let m = OneParticleModel::default_model();
        let p = SuiteParams { model: &m, kappas: &[0.0, 0.5], seed: 3 };
        for name in ["covering", "lie", "locality", "fixed_point", "inequivalence", "borchers"] {
            let reports = run(name, &p).unwrap();
            assert!(!reports.is_empty());
            for rep in &reports {
                assert!(rep.pass, "{name}: {rep:?}");
            }
        }
        assert!(run("nope", &p).is_err());
    }

    #[test]
    fn geometry_suite_flags_only_the_pseudoscalar() {
        let reports = geometry(1);
        let failing: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
        assert_eq!(failing, ["pseudoscalar_i_gamma0_to_gamma4_is_one"]);
    }

    #[test]
    fn quasifree_walk_counts_words() {
        let m = OneParticleModel::new(vec![1.0], vec![], vec![], None, None, 0).unwrap();
        let (words, worst) = quasifree_vs_fock(&m, 3).unwrap();
        assert_eq!(words, 2 + 4 + 8);
        assert_eq!(worst, 0.0);
    }
}
