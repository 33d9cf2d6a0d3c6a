use crossgp::harness::{
    read_report_csv, read_report_json, run_experiment, write_report, Aggregates, ConfigFile, ExperimentSpec,
    ReportFormat,
};

fn parity_spec(reps: usize, base_seed: u64) -> ExperimentSpec {
    let text = format!(
        r#"{{"model": {{"name": "cgp", "n_columns": 40}}, "problem": {{"name": "parity", "size": 4}},
            "hyperparameters": {{"max_evaluations": 3000}}, "run": {{"repetitions": {reps}, "base_seed": {base_seed}}}}}"#
    );
    ConfigFile::parse(&text, &[]).unwrap().experiment().unwrap()
}

#[test]
fn aggregates_recompute_from_runs() {
    let r = run_experiment(&parity_spec(6, 3), Some(3)).unwrap();
    assert_eq!(r.aggregates, Aggregates::from_runs(&r.runs));
    let successes = r.runs.iter().filter(|x| x.success).count();
    assert_eq!(r.aggregates.success_rate, successes as f64 / 6.0);
}

#[test]
fn runs_independent_of_batching() {
    let whole = run_experiment(&parity_spec(4, 20), Some(4)).unwrap().without_wall_time();
    for (i, run) in whole.runs.iter().enumerate() {
        let single = run_experiment(&parity_spec(1, 20 + i as u64), Some(1)).unwrap().without_wall_time();
        assert_eq!(&single.runs[0], run);
    }
}

#[test]
fn json_and_csv_describe_same_runs() {
    let r = run_experiment(&parity_spec(5, 0), None).unwrap();
    let json = read_report_json(&write_report(&r, ReportFormat::Json).unwrap()).unwrap();
    let rows = read_report_csv(&write_report(&r, ReportFormat::Csv).unwrap()).unwrap();
    assert_eq!(rows.len(), json.runs.len());
    for (row, run) in rows.iter().zip(&json.runs) {
        assert_eq!(row.seed, run.seed);
        assert_eq!(row.best_cost, run.best_cost);
        assert_eq!(row.success, run.success);
        assert_eq!(row.evaluations, run.evaluations_used);
        assert_eq!(row.wall_ms, run.wall_ms);
    }
}

#[test]
fn spec_echo_round_trips_into_identical_report() {
    let r = run_experiment(&parity_spec(2, 5), Some(2)).unwrap();
    let again = run_experiment(&r.spec, Some(1)).unwrap();
    assert_eq!(
        write_report(&r.without_wall_time(), ReportFormat::Json).unwrap(),
        write_report(&again.without_wall_time(), ReportFormat::Json).unwrap()
    );
}

#[test]
fn file_problems_load() {
    let dir = std::env::temp_dir().join(format!("crossgp-harness-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let table = crossgp::blackbox::gen_boolean(crossgp::blackbox::BooleanFamily::Majority, 3).unwrap();
    let tpath = dir.join("maj3.tt");
    std::fs::write(&tpath, table.to_text()).unwrap();
    let csv_path = dir.join("line.csv");
    std::fs::write(&csv_path, "x0,y0\n0,1\n1,3\n2,5\n").unwrap();
    for (model, path) in [("cgp", &tpath), ("tgp", &csv_path)] {
        let text = format!(
            r#"{{"model": {{"name": "{model}"}}, "problem": {{"path": {:?}}}, "hyperparameters": {{"max_evaluations": 20000}}}}"#,
            path.to_str().unwrap()
        );
        let spec = ConfigFile::parse(&text, &[]).unwrap().experiment().unwrap();
        let r = run_experiment(&spec, Some(1)).unwrap();
        assert_eq!(r.runs.len(), 1);
        assert!(r.runs[0].success, "{model} on {}: {:?}", path.display(), r.runs[0].best_cost);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
