use proptest::prelude::*;

use dsdeform_core::car_fock::{OneParticleModel, WedgeTag};
use dsdeform_core::deformation::DeformationContext;
use dsdeform_core::geometry::{embed_point, embed_vector, extract_point, gamma, minkowski_form, AmbientVector, QuatMatrix2, Quaternion};
use dsdeform_core::linalg::{inner, CMatrix, C64};
use dsdeform_core::rng;
use dsdeform_core::spin_group::{
    abelian_commutativity_residual, boost_base, boost_cover, covering_hom, exp_generator, lie_combination,
    reflection_cover, rotation_cover, AbelianSubgroup, LorentzMatrix5, SpinElement,
};
use dsdeform_core::verification::{check_twisted_locality, random_model};
use dsdeform_core::wedges::{random_lorentz, sample_hyperboloid_point, Wedge};

fn hyperboloid_point() -> impl Strategy<Value = AmbientVector> {
    (-2.0f64..2.0, any::<u64>()).prop_map(|(rho, seed)| {
        let mut r = rng::substream(seed, "direction");
        let u = rng::unit_sphere::<4>(&mut r);
        let c = rho.cosh();
        AmbientVector::new([rho.sinh(), c * u[0], c * u[1], c * u[2], c * u[3]])
    })
}

fn unit_quaternion() -> impl Strategy<Value = Quaternion> {
    any::<u64>().prop_map(|seed| {
        let u = rng::unit_sphere::<4>(&mut rng::substream(seed, "quaternion"));
        Quaternion::new(u[0], u[1], u[2], u[3])
    })
}

fn spin_element() -> impl Strategy<Value = SpinElement> {
    (-0.5f64..0.5, unit_quaternion(), unit_quaternion(), any::<bool>()).prop_map(|(t, u, v, flip)| {
        let g = boost_cover(t).compose(&rotation_cover(u, v).unwrap());
        if flip {
            g.compose(&reflection_cover())
        } else {
            g
        }
    })
}

fn mode_vector(n: usize) -> impl Strategy<Value = Vec<C64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embedding_roundtrip(x in hyperboloid_point()) {
        let back = extract_point(&embed_point(&x).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&x) < 1e-10);
    }

    #[test]
    fn eta_identity_on_all_vectors(c in proptest::array::uniform5(-3.0f64..3.0)) {
        let x = AmbientVector::new(c);
        let xt = embed_vector(&x);
        let g0 = gamma(0).unwrap();
        let lhs = xt.star() * g0 * xt * g0;
        let rhs = QuatMatrix2::identity().scale(minkowski_form(&x, &x));
        prop_assert!((lhs - rhs).max_abs() < 1e-12 * (1.0 + c.iter().map(|v| v * v).sum::<f64>()));
    }

    #[test]
    fn covering_is_a_two_to_one_homomorphism(a in spin_element(), b in spin_element()) {
        let lhs = covering_hom(&a.compose(&b));
        let rhs = covering_hom(&a).compose(&covering_hom(&b));
        prop_assert!(lhs.max_diff(&rhs) < 1e-10);
        prop_assert_eq!(covering_hom(&a.neg()), covering_hom(&a));
        let l = covering_hom(&a);
        prop_assert!(l.lorentz_residual() < 1e-10);
        prop_assert!(l.is_proper_orthochronous());
    }

    #[test]
    fn stabilizer_commutes_with_wedge_boost(s in -1.0f64..1.0, a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0, t in -1.0f64..1.0) {
        let g = LorentzMatrix5(exp_generator(&lie_combination(&[(s, 0, 1), (a, 2, 3), (b, 2, 4), (c, 3, 4)]), 1.0));
        let lhs = g.compose(&boost_base(t));
        let rhs = boost_base(t).compose(&g);
        prop_assert!(lhs.max_diff(&rhs) < 1e-10 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn abelian_flows_commute(t in -4.0f64..4.0, s in -4.0f64..4.0) {
        for sg in AbelianSubgroup::ALL {
            prop_assert!(abelian_commutativity_residual(sg, t, s) < 1e-10);
        }
    }

    #[test]
    fn wedge_membership_is_covariant(seed in any::<u64>()) {
        let mut r = rng::substream(seed, "covariance");
        let g = random_lorentz(&mut r);
        let w = Wedge::origin().transformed(&g);
        for _ in 0..20 {
            let x = sample_hyperboloid_point(&mut r);
            if w.depth(&x).abs() < 1e-9 {
                continue;
            }
            prop_assert_eq!(w.contains(&x).unwrap(), Wedge::origin().contains(&g.inverse().apply(&x)).unwrap());
        }
    }

    #[test]
    fn car_relations(f in mode_vector(8), g in mode_vector(8)) {
        let m = OneParticleModel::default_model();
        let (bf, bg) = (m.field_b(&f).unwrap(), m.field_b(&g).unwrap());
        let id = m.fock_space().identity();
        prop_assert!(bf.anticommutator(&bg).distance(&id.scale(inner(&m.conj_c(&f), &g))) < 1e-12);
        prop_assert!(bf.adjoint().distance(&m.field_b(&m.conj_c(&f)).unwrap()) < 1e-14);
    }

    #[test]
    fn bogolyubov_implementation(phi in -3.0f64..3.0, f in mode_vector(8)) {
        let m = OneParticleModel::default_model().with_rotation_angle(phi).unwrap();
        let u = m.rotation_r().unwrap();
        let w = m.doubled(&m.rotation_modes().unwrap());
        let lhs = m.field_b(&f).unwrap().conjugate_by(&u);
        let rhs = m.field_b(&w.mul_vec(&f)).unwrap();
        prop_assert!(lhs.distance(&rhs) < 1e-10);
        let omega = m.fock_space().vacuum();
        prop_assert_eq!(u.apply(&omega), omega);
    }

    #[test]
    fn warp_is_linear_adjoint_compatible_and_fixes_the_vacuum(kappa in -2.0f64..2.0, seed in any::<u64>()) {
        let m = OneParticleModel::default_model();
        let ctx = DeformationContext::new(&m, kappa);
        let mut r = rng::substream(seed, "warp");
        let op = |r: &mut rng::Stream| m.fock_space().operator(CMatrix::from_rows(16, 16, rng::complex_vector(r, 256))).unwrap();
        let (f, g, z) = (op(&mut r), op(&mut r), rng::complex_scalar(&mut r));
        prop_assert!(ctx.warp(&f.scale(z).add(&g)).distance(&ctx.warp(&f).scale(z).add(&ctx.warp(&g))) < 1e-12);
        prop_assert!(ctx.warp(&f).adjoint().distance(&ctx.warp(&f.adjoint())) < 1e-12);
        let omega = m.fock_space().vacuum();
        let (a, b) = (ctx.warp(&f).apply(&omega), f.apply(&omega));
        prop_assert!(a.iter().zip(&b).all(|(x, y)| (x - y).norm() < 1e-12));
        prop_assert!(ctx.warp_inverse_check(&f) < 1e-12);
    }

    #[test]
    fn wedge_subspaces_are_orthogonal_and_conjugation_invariant(seed in 0u64..1000, a in 1usize..3, b in 0usize..2) {
        let m = random_model(seed, a, b).unwrap();
        let inside = m.wedge_subalgebra_basis(WedgeTag::W0).unwrap();
        let outside = m.wedge_subalgebra_basis(WedgeTag::W0Prime).unwrap();
        for f in &inside {
            for g in &outside {
                prop_assert!(inner(f, g).norm() < 1e-14);
            }
            let cf = m.conj_c(f);
            prop_assert!(inside.iter().any(|g| inner(g, &cf).norm() > 1.0 - 1e-12));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn random_models_are_twisted_local(seed in 0u64..10_000, kappa in -1.5f64..1.5) {
        let m = random_model(seed, 1, 1).unwrap();
        let report = check_twisted_locality(&m, kappa, 4, seed).unwrap();
        prop_assert!(report.pass, "{:?}", report);
    }
}
