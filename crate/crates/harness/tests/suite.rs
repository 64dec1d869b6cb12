use qdist_harness::{replay, run_suite, TrialConfig};

fn config(properties: &[&str], trials: u64) -> TrialConfig {
    TrialConfig {
        trials,
        properties: properties.iter().map(|s| s.to_string()).collect(),
        ..TrialConfig::default()
    }
}

#[test]
fn single_trial() {
    let report = run_suite(&config(&["de_symmetry"], 1)).unwrap();
    assert_eq!(report.properties.len(), 1);
    assert_eq!(report.properties[0].trials, 1);
    assert_eq!(report.properties[0].failures, 0);
}

#[test]
fn reports_are_byte_identical() {
    let cfg = config(&["de_triangle", "delta_chaining", "de_symmetry"], 40);
    let a = serde_json::to_string(&run_suite(&cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite(&cfg).unwrap()).unwrap();
    assert_eq!(a, b);
    let ids: Vec<String> = run_suite(&cfg).unwrap().properties.into_iter().map(|p| p.id).collect();
    assert_eq!(ids, ["de_symmetry", "de_triangle", "delta_chaining"]);
}

#[test]
fn impossible_tolerance_fails_with_digests() {
    let cfg = TrialConfig {
        tolerance: 1e-300,
        ..config(&["de_unitary_invariance"], 20)
    };
    let report = run_suite(&cfg).unwrap();
    let p = &report.properties[0];
    assert!(!report.passed());
    assert!(p.failures > 0);
    assert_eq!(p.failing.len() as u64, p.failures);
    let worst = &p.worst;
    let again = replay("de_unitary_invariance", cfg.seed, worst.index, &cfg.dims).unwrap().unwrap();
    assert_eq!(Some(again), worst.margin);
}

#[test]
fn default_suite_passes() {
    let cfg = TrialConfig {
        trials: 100,
        ..TrialConfig::default()
    };
    let report = run_suite(&cfg).unwrap();
    for p in &report.properties {
        println!("{:<32} {:>4} failures  worst {:+.3e}  {:?}", p.id, p.failures, p.worst_margin, p.elapsed);
        if p.failures > 0 {
            println!("    {:?}", p.failing.first());
        }
    }
    assert!(report.passed(), "{} asserted failures", report.asserted_failures);
}
