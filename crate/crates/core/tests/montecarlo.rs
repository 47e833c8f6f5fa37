use extremefim::fim::Variant;
use extremefim::montecarlo::{run_study, StudyConfig};

#[test]
fn empirical_max_variance_sits_near_exact_bound() {
    let config = StudyConfig {
        k_list: vec![15, 30, 50],
        trials: 10_000,
        variants: vec![Variant::Max, Variant::Min],
        ..StudyConfig::new(1.0, 100, 31)
    };
    let report = run_study(&config).unwrap();
    for &k in &config.k_list {
        let max = report.row(k, Variant::Max).unwrap();
        let bound = max.crlb.quadrature.unwrap();
        assert!((max.var_theta_hat / bound - 1.0).abs() < 0.15, "K={k}: {} vs {bound}", max.var_theta_hat);
        let min = report.row(k, Variant::Min).unwrap();
        assert!((min.inv_var_normalized - 1.0).abs() < 0.05, "K={k}");
    }
    // simulated inverse variance at K = 50 is about 14.13
    let inv50 = report.row(50, Variant::Max).unwrap().inv_var_normalized;
    assert!((inv50 - 14.13).abs() < 0.6, "{inv50}");
}

#[test]
fn partial_must_fit_every_k() {
    let config =
        StudyConfig { variants: vec![Variant::Partial(4)], k_list: vec![5], trials: 3, ..StudyConfig::new(1.0, 10, 1) };
    assert!(run_study(&config).is_ok());
    let bad = StudyConfig { k_list: vec![5, 3], ..config };
    assert!(run_study(&bad).is_err());
}
