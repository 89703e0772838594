use coble_core::covariants::quadric_equation;
use coble_core::duality::{dual_form, grassmann_dual_point, tangent_check_quadric};
use coble_core::exterior::plucker;
use coble_core::field::{Fp, Ring};
use coble_core::rep::verify_resolution_suite;
use coble_core::schubert::enumerative_suite;
use coble_core::strata::{rank_stratum_g28, sample_quadric, G28Label, PluckerPencil, SamplerConfig};
use coble_core::theta::{regular_form, SampleMode};

type F101 = Fp<101>;

#[test]
fn sampled_quadric_points_satisfy_the_equation_and_dualize() {
    let (v, _) = regular_form::<F101>(11, SampleMode::Uniform, 16).unwrap();
    let dual = dual_form(&v);
    assert_eq!(dual_form(&dual), v);
    let eq = quadric_equation(&v, 4).unwrap();
    let pencil = PluckerPencil::new(&v);
    let (report, hits) = sample_quadric(&v, &SamplerConfig::new(3, 6, 1_000_000)).unwrap();
    assert_eq!(report.hits, 6);
    for h in &hits {
        let b = h.u2.basis();
        assert!(eq.value(&plucker(&b[0], &b[1])).is_zero());
        assert_eq!(rank_stratum_g28(&v, &h.u2).unwrap(), G28Label::Quadric);
        assert!(tangent_check_quadric(&pencil, &h.u2, &h.u6).unwrap());
        let w = grassmann_dual_point(&v, &dual, &h.u2).unwrap();
        assert!(w.dual_member());
        assert_ne!(w.biduality, Some(false));
    }
}

#[test]
fn form_independent_suites_pass() {
    let failed: Vec<String> = verify_resolution_suite().unwrap().into_iter().filter(|c| !c.passed).map(|c| c.name).collect();
    assert!(failed.is_empty(), "{failed:?}");
    let (checks, integrals) = enumerative_suite(5).unwrap();
    assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    assert!(integrals.iter().all(|i| i.specializations.len() == 2));
}
