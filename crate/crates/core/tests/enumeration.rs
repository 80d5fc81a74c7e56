use grascurve_core::ffenum::*;
use grascurve_core::field::{PrimeField, Rationals};
use grascurve_core::grassmann::schubert_table;
use grascurve_core::linalg::Subspace;
use grascurve_core::sections::SectionModel;

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let spec = EnumSpec::new(&SectionModel::y5(), 3, EnumObject::Lines).unwrap().with_witnesses(true);
    let a = in_pool(1, || enumerate_count(&spec).unwrap());
    let b = in_pool(4, || enumerate_count(&spec).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.count, 1690);
    assert_eq!(a.witnesses.len(), 1690);
}

#[test]
fn witnesses_reverify() {
    let y2 = SectionModel::y2(None).unwrap();
    let cases = [
        (SectionModel::y5(), 2, EnumObject::Lines),
        (SectionModel::y5(), 2, EnumObject::LinesDirect),
        (SectionModel::y5(), 3, EnumObject::Planes31),
        (SectionModel::y5(), 3, EnumObject::Planes22),
        (SectionModel::y4(), 3, EnumObject::Subspaces(2)),
        (y2, 11, EnumObject::Lines),
    ];
    for (sec, p, obj) in cases {
        let spec = EnumSpec::new(&sec, p, obj).unwrap().with_witnesses(true);
        let r = enumerate_count(&spec).unwrap();
        assert_eq!(r.witnesses.len() as u64, r.count, "{obj:?}");
        assert!(r.witnesses.iter().all(|w| verify_witness(&spec, w)), "{obj:?}");
    }
}

#[test]
fn y2_lines_at_eleven() {
    let spec = EnumSpec::new(&SectionModel::y2(None).unwrap(), 11, EnumObject::Lines).unwrap();
    assert_eq!(enumerate_count(&spec).unwrap().count, 10);
}

#[test]
fn sigma_and_rank_two_loci_are_cubic_in_p() {
    let r = locus_poly_check(&SectionModel::y5(), EnumObject::Planes22, &[1, 1, 1, 1], &[2, 3, 5], DEFAULT_BUDGET).unwrap();
    assert!(r.holds(), "{r:?}");
    let fp = PrimeField::new(3).unwrap();
    let rank2: Vec<_> = skew_rank_census(&SectionModel::y5().reduce_mod(3).unwrap(), &[0, 0, 0, 0, 1])
        .into_iter()
        .filter(|(_, r, _)| *r == 2)
        .collect();
    assert_eq!(rank2.len(), 40);
    assert!(rank2.iter().all(|(v, _, has)| *has && v.contains(Subspace::coordinate(&fp, 5, &[4]).vector(0))));
}

#[test]
fn mismatch_reports_first_prime() {
    let r = locus_poly_check(&SectionModel::y5(), EnumObject::Planes22, &[1, 1, 1], &[2, 3], DEFAULT_BUDGET).unwrap();
    assert_eq!(r.first_mismatch, Some(2));
}

#[test]
fn schubert_counts_grow_like_p_to_the_dim() {
    for d in schubert_table() {
        for p in [5u32, 7] {
            let c = schubert_count(&d, p).unwrap() as f64;
            let ratio = c / (p as f64).powi(d.dim as i32);
            assert!(ratio > 0.5 && ratio < 2.0, "{} p={p}: {c}", d.name());
        }
    }
}

#[test]
fn bad_reduction_is_reported() {
    let half = vec![num_rational::BigRational::new(1.into(), 2.into()); 10];
    let sec = SectionModel::new(&Rationals, "half", vec![half]).unwrap();
    assert!(EnumSpec::new(&sec, 2, EnumObject::Lines).is_err());
}
