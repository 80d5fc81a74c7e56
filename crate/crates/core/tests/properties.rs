use grascurve_core::binform::{split_cohomology, SplittingType};
use grascurve_core::curves::{random_family, CurveKind};
use grascurve_core::field::{Field, PrimeField, Rationals, Q};
use grascurve_core::grassmann::{plucker_relations, wedge2, wedge2_matrix};
use grascurve_core::interp::{vanishing_forms, Locus, Sampler};
use grascurve_core::linalg::{Mat, Subspace};
use grascurve_core::random::{self, Rng};
use grascurve_core::sections::{
    normal_bundle_splitting, plane_fiber, sigma31_planes_at, vertex_fiber, vertex_kernel, FiberKind, LineFlag,
    SectionModel,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn f() -> Rationals {
    Rationals
}

fn point(rng: &mut Rng) -> Subspace<Rationals> {
    Subspace::span(&f(), 5, vec![random::nonzero_vector(&f(), 5, rng)]).unwrap()
}

fn presets() -> Vec<SectionModel<Rationals>> {
    vec![SectionModel::y6(), SectionModel::y5(), SectionModel::y4(), SectionModel::y3()]
}

/// A random line of the section through a random vertex, if there is one.
fn random_line(sec: &SectionModel<Rationals>, rng: &mut Rng) -> Option<LineFlag<Rationals>> {
    let p = point(rng);
    let w = vertex_kernel(p.vector(0), sec);
    if w.dim() < 3 {
        return None;
    }
    let u = w.combine(&random::vector(&f(), w.dim(), rng));
    let v = w.combine(&random::vector(&f(), w.dim(), rng));
    let v3 = Subspace::span(&f(), 5, vec![p.vector(0).to_vec(), u, v]).unwrap();
    (v3.dim() == 3).then(|| LineFlag::new(p, v3).unwrap())
}

fn big_entry(a: i64, b: i64) -> Q {
    Q::from_integer(BigInt::from(a) << 200) + Q::from_integer(BigInt::from(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_equals_transpose_rank(seed in any::<u64>(), r in 1usize..6, c in 1usize..6) {
        let mut rng = random::rng(seed);
        let m = random::matrix(&f(), r, c, &mut rng);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rref_is_idempotent(seed in any::<u64>(), r in 1usize..6, c in 1usize..7) {
        let mut rng = random::rng(seed);
        let low = random::matrix(&f(), r, 2.min(r), &mut rng);
        let high = random::matrix(&f(), 2.min(r), c, &mut rng);
        let m = low.mul(&high).unwrap();
        let (once, p1) = m.rref();
        let (twice, p2) = once.rref();
        prop_assert_eq!(once, twice);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn subspaces_are_canonical(seed in any::<u64>(), k in 1usize..5) {
        let mut rng = random::rng(seed);
        let b = random::full_rank_matrix(&f(), k, 5, &mut rng);
        let g = random::invertible(&f(), k, &mut rng);
        prop_assert_eq!(b.row_space(), g.mul(&b).unwrap().row_space());
    }

    #[test]
    fn rank_and_kernel_are_complementary(seed in any::<u64>(), r in 1usize..8, c in 1usize..8) {
        let mut rng = random::rng(seed);
        let m = random::matrix(&f(), r, c, &mut rng);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), c);
        for v in k.basis_vecs() {
            prop_assert!(m.apply(&v).unwrap().iter().all(|x| f().is_zero(x)));
        }
    }

    #[test]
    fn inverse_of_wide_entries(vals in proptest::collection::vec((-50i64..50, -50i64..50), 9)) {
        let rows: Vec<Vec<Q>> = vals.chunks(3).map(|c| c.iter().map(|&(a, b)| big_entry(a, b)).collect()).collect();
        let m = Mat::from_rows(&f(), 3, rows).unwrap();
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv).unwrap(), Mat::identity(&f(), 3));
        } else {
            prop_assert!(m.rank() < 3);
        }
    }

    #[test]
    fn reduction_does_not_raise_rank(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let mut rng = random::rng(seed);
        let m = random::matrix(&f(), 4, 5, &mut rng);
        let fp = PrimeField::new(p as u64).unwrap();
        let rows = m.row_vecs().iter().map(|r| r.iter().map(|x| fp.reduce(x).unwrap()).collect()).collect();
        prop_assert!(Mat::from_rows(&fp, 5, rows).unwrap().rank() <= m.rank());
    }

    #[test]
    fn riemann_roch(degs in proptest::collection::vec(-4i64..5, 1..6)) {
        let t = SplittingType::new(degs);
        let (h0, h1) = split_cohomology(&t);
        prop_assert_eq!(h0 as i64 - h1 as i64, t.rank() as i64 + t.degree_sum());
    }

    #[test]
    fn pluecker_scales_by_determinant(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = random::matrix(&f(), 2, 5, &mut rng);
        let m = random::invertible(&f(), 2, &mut rng);
        let det = f().sub(&f().mul(m.get(0, 0), m.get(1, 1)), &f().mul(m.get(0, 1), m.get(1, 0)));
        let ma = m.mul(&a).unwrap();
        let lhs = wedge2(&f(), ma.row(0), ma.row(1));
        let rhs: Vec<Q> = wedge2(&f(), a.row(0), a.row(1)).iter().map(|x| f().mul(x, &det)).collect();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(plucker_relations(&f(), &lhs).iter().all(|x| f().is_zero(x)));
    }

    #[test]
    fn wedge_square_is_multiplicative(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = random::invertible(&f(), 5, &mut rng);
        let a = random::vector(&f(), 5, &mut rng);
        let b = random::vector(&f(), 5, &mut rng);
        let ga = Mat::from_rows(&f(), 5, vec![a.clone()]).unwrap().mul(&g).unwrap();
        let gb = Mat::from_rows(&f(), 5, vec![b.clone()]).unwrap().mul(&g).unwrap();
        let lhs = wedge2(&f(), ga.row(0), gb.row(0));
        let p = Mat::from_rows(&f(), 10, vec![wedge2(&f(), &a, &b)]).unwrap();
        prop_assert_eq!(lhs, p.mul(&wedge2_matrix(&g)).unwrap().row(0).to_vec());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn splitting_is_reparametrization_invariant(seed in any::<u64>(), kind in prop::sample::select(CurveKind::ALL.to_vec())) {
        let mut rng = random::rng(seed);
        let c = random_family(kind, &mut rng);
        let m = random::invertible(&f(), 2, &mut rng);
        let sub = [[m.get(0, 0).clone(), m.get(0, 1).clone()], [m.get(1, 0).clone(), m.get(1, 1).clone()]];
        let d = c.reparametrize(&sub).unwrap();
        prop_assert_eq!(c.split(), d.split());
        prop_assert_eq!(c.split(), kind.split());
        prop_assert_eq!(c.split().0 + c.split().1, c.reduced_pluecker_degree());
    }

    #[test]
    fn fibers_are_equivariant(seed in any::<u64>(), which in 1usize..4) {
        let mut rng = random::rng(seed);
        let sec = &presets()[which];
        let g = random::invertible(&f(), 5, &mut rng);
        let sec_g = sec.transform(&g).unwrap();
        let p = point(&mut rng);
        prop_assert_eq!(vertex_fiber(&p, sec).unwrap().k, vertex_fiber(&p.transform(&g).unwrap(), &sec_g).unwrap().k);
        prop_assert_eq!(
            sigma31_planes_at(&p, sec).unwrap().interpretation,
            sigma31_planes_at(&p.transform(&g).unwrap(), &sec_g).unwrap().interpretation
        );
        let v3 = random::full_rank_matrix(&f(), 3, 5, &mut rng).row_space();
        prop_assert_eq!(
            plane_fiber(&v3, sec).unwrap().interpretation,
            plane_fiber(&v3.transform(&g).unwrap(), &sec_g).unwrap().interpretation
        );
        if let Some(z) = random_line(sec, &mut rng) {
            let zg = LineFlag::new(z.vertex.transform(&g).unwrap(), z.plane.transform(&g).unwrap()).unwrap();
            prop_assert_eq!(normal_bundle_splitting(&z, sec).unwrap(), normal_bundle_splitting(&zg, &sec_g).unwrap());
        }
    }

    #[test]
    fn vertex_fiber_pencils_lie_in_section(seed in any::<u64>(), which in 0usize..4) {
        let mut rng = random::rng(seed);
        let sec = &presets()[which];
        if let Some(z) = random_line(sec, &mut rng) {
            prop_assert!(z.family().unwrap().in_section(sec));
        }
    }

    #[test]
    fn y5_plane_fiber_dichotomy(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let sec = SectionModel::y5();
        // Half the samples are forced through the kernel line of the form.
        let mut rows = random::full_rank_matrix(&f(), 3, 5, &mut rng).row_vecs();
        if seed % 2 == 0 {
            rows[0] = vec![f().zero(), f().zero(), f().zero(), f().zero(), f().one()];
        }
        let Ok(v3) = Subspace::span(&f(), 5, rows) else { return Ok(()) };
        if v3.dim() != 3 {
            return Ok(());
        }
        let r = plane_fiber(&v3, &sec).unwrap();
        let s22 = grascurve_core::sections::is_sigma22_plane(&v3, &sec).unwrap();
        prop_assert!(matches!(r.interpretation, FiberKind::UniquePoint | FiberKind::ProjSpace(2)));
        prop_assert_eq!(r.interpretation == FiberKind::ProjSpace(2), s22);
    }

    #[test]
    fn line_normal_bundles_are_unobstructed(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        for (sec, h0) in [(SectionModel::y6(), 8), (SectionModel::y5(), 6), (SectionModel::y4(), 4)] {
            if let Some(z) = random_line(&sec, &mut rng) {
                let st = normal_bundle_splitting(&z, &sec).unwrap();
                prop_assert_eq!(split_cohomology(&st), (h0, 0));
            }
        }
    }
}

#[test]
fn interpolation_is_basis_independent() {
    let mut rng = random::rng(11);
    let g = random::invertible(&f(), 5, &mut rng);
    let l = Subspace::coordinate(&f(), 5, &[0, 1]);
    let a = Sampler::new(&f(), Locus::Sigma20(l.clone()), 4);
    let b = Sampler::new(&f(), Locus::Sigma20(l.transform(&g).unwrap()), 4);
    let la = vanishing_forms(&a, 1, None).unwrap();
    let lb = vanishing_forms(&b, 1, None).unwrap();
    assert_eq!((la.dim(), lb.dim()), (3, 3));
    assert_eq!(vanishing_forms(&a, 2, Some(&la)).unwrap().dim(), vanishing_forms(&b, 2, Some(&lb)).unwrap().dim());
    // The linear forms of the moved locus are the pullback of the original ones.
    let w = wedge2_matrix(&g).inverse().unwrap();
    let moved: Vec<Vec<Q>> = la.space.basis_vecs().iter().map(|h| w.apply(h).unwrap()).collect();
    assert_eq!(Subspace::span(&f(), 10, moved).unwrap(), lb.space);
}

#[test]
fn form_space_shrinks_as_samples_grow() {
    use grascurve_core::interp::evaluation_matrix;
    let s = Sampler::named("y3-vertex", 2).unwrap();
    let pts = s.batch(80, 2).unwrap();
    let mut last = usize::MAX;
    for n in [5, 10, 20, 35, 50, 80] {
        let d = evaluation_matrix(&f(), 5, 3, &pts[..n]).kernel().dim();
        assert!(d <= last);
        last = d;
    }
    assert_eq!(last, 7);
}

#[test]
fn sampling_is_seeded() {
    let a = Sampler::named("c0", 9).unwrap().batch(10, 9).unwrap();
    let b = Sampler::named("c0", 9).unwrap().batch(10, 9).unwrap();
    assert_eq!(a, b);
}
