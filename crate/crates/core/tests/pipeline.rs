use epsilon_core::fundmatrix::epsilon_determinant_check;
use epsilon_core::groupring::GroupParams;
use epsilon_core::kgroup::{
    corrupt_epsilon, epsilon_closed, theorem_verify_from_determinants, theorem_verify_with_epsilon, ArtinParam,
    STEP_UNITS,
};

#[test]
fn pipeline_over_small_grid() {
    for (p, m, d) in [(3, 1, 1), (3, 1, 2), (3, 2, 3), (5, 1, 2), (5, 2, 1), (3, 3, 4)] {
        let params = GroupParams::new(p, d, m).unwrap();
        let det = epsilon_determinant_check(&params, &[1, 2, 3, 4, 5]).unwrap();
        assert!(det.ok(), "({p},{m},{d})");
        assert_eq!(det.delta, Some(1));
        for k4 in 0..p {
            let artin = ArtinParam::new(k4, &params).unwrap();
            let report = theorem_verify_from_determinants(&params, artin, &det).unwrap();
            assert!(report.passed(), "({p},{m},{d}) k4={k4}: {:?}", report.steps);
        }
    }
}

#[test]
fn corrupted_epsilon_is_caught() {
    for (p, m, d) in [(3, 1, 2), (5, 2, 3)] {
        let params = GroupParams::new(p, d, m).unwrap();
        let artin = ArtinParam::new(1, &params).unwrap();
        let eps = epsilon_closed(&params);
        assert!(theorem_verify_with_epsilon(&params, artin, &eps).unwrap().passed());
        for ch in params.characters() {
            let bad = corrupt_epsilon(&eps, &ch).unwrap();
            let report = theorem_verify_with_epsilon(&params, artin, &bad).unwrap();
            assert!(!report.passed(), "corruption at {ch} went unnoticed");
            assert!(!report.step(STEP_UNITS).unwrap().passed);
        }
    }
}
