use super::*;
use crate::models::HostKind;

#[test]
fn k_range_parsing() {
    assert_eq!(parse_k_range("1..30").unwrap(), (1, 30));
    assert_eq!(parse_k_range("1..=3").unwrap(), (1, 3));
    assert_eq!(parse_k_range("4").unwrap(), (4, 4));
    assert!(parse_k_range("5..2").is_err());
    assert!(parse_k_range("a..b").is_err());
}

#[test]
fn mode_choice() {
    let small = crate::hypergraph::named::complete_graph(4);
    assert_eq!(ModeChoice::Auto.resolve(&small), Mode::Exact);
    assert_eq!(ModeChoice::Float.resolve(&small), Mode::float());
    assert_eq!("exact".parse::<ModeChoice>().unwrap(), ModeChoice::Exact);
    assert!("fast".parse::<ModeChoice>().is_err());
}

#[test]
fn config_validation() {
    let c = ExperimentConfig::new(HostKind::Complete, 10, 3);
    assert!(c.validate().is_ok());
    assert!(c.clone().with_trials(0).validate().is_err());
    assert!(ExperimentConfig::new(HostKind::Complete, 2, 3).validate().is_err());
    let mut c = c;
    c.ks.clear();
    assert!(c.validate().is_err());
}

#[test]
fn kout_csv_is_deterministic() {
    let cfg = ExperimentConfig::new(HostKind::Complete, 12, 3).with_k(2).with_trials(4).with_seed(11);
    let a = experiment_kout_pfm(&cfg).unwrap();
    let b = experiment_kout_pfm(&cfg).unwrap();
    assert_eq!(a.csv_string(), b.csv_string());
    assert_eq!(a.summary_text(), b.summary_text());
    let text = a.csv_string();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(lines.count(), 4);
    // elapsed_ms stays empty without timing
    assert!(text.lines().skip(1).all(|l| l.ends_with(',')));
}

#[test]
fn kout_summary_matches_rows() {
    let cfg = ExperimentConfig::new(HostKind::Complete, 9, 3).with_k_range(1, 3).with_trials(6).with_seed(2);
    let out = experiment_kout_pfm(&cfg).unwrap();
    assert_eq!(out.records.len(), 18);
    let yes = out.records.iter().filter(|r| r.perfect == Some(true)).count();
    assert_eq!(out.summary_value("perfect_count"), Some(yes.to_string().as_str()));
    for k in 1..=3 {
        let rows: Vec<_> = out.records.iter().filter(|r| r.k == Some(k)).collect();
        let f = rows.iter().filter(|r| r.perfect == Some(true)).count() as f64 / rows.len() as f64;
        assert_eq!(out.summary_value(&format!("pfm_frequency.k{k}")), Some(format!("{f:.6}").as_str()));
    }
    // small exact instances carry the cover shape
    assert!(out.records.iter().all(|r| r.unique_cover.is_some()));
}

#[test]
fn kout_partite_records_block_constancy() {
    let cfg = ExperimentConfig::new(HostKind::Partite, 3, 2).with_k(2).with_trials(3);
    let out = experiment_kout_pfm(&cfg).unwrap();
    assert!(out.records.iter().all(|r| r.block_constant.is_some()));
    assert!(out.summary_value("block_constant_count").is_some());
}

#[test]
fn kout_rejects_bad_k() {
    let cfg = ExperimentConfig::new(HostKind::Complete, 5, 2).with_k(5);
    assert!(matches!(experiment_kout_pfm(&cfg), Err(Error::Input(_))));
    let cfg = ExperimentConfig::new(HostKind::Complete, 5, 2).with_k(0);
    assert!(experiment_kout_pfm(&cfg).is_err());
}

#[test]
fn stopping_small_run() {
    let cfg = ExperimentConfig::new(HostKind::Complete, 12, 3).with_trials(5).with_seed(3);
    let out = experiment_stopping_time(&cfg).unwrap();
    assert_eq!(out.records.len(), 5);
    assert!(out.records.iter().all(|r| r.stopping_time.unwrap() >= 4));
    assert_eq!(out.summary_value("T_at_least_n_over_r"), Some("true"));
    assert_eq!(out.summary_value("imperfect_before_T"), Some("true"));
    assert_eq!(out.summary_value("errors"), Some("0"));
    assert_eq!(out.csv_string(), experiment_stopping_time(&cfg).unwrap().csv_string());
}

#[test]
fn implication_sweep_small() {
    let cfg = ExperimentConfig::new(HostKind::Complete, 7, 2).with_trials(20).with_seed(5);
    let out = experiment_implication_sweep(&cfg).unwrap();
    assert!(out.counterexamples.is_empty(), "{:?}", out.counterexamples);
    assert_eq!(out.summary_value("errors"), Some("0"));
    let agree = out.summary_value("corollary_agreement").unwrap();
    let (a, b) = agree.split_once('/').unwrap();
    assert_eq!(a, b);

    let cfg = ExperimentConfig::new(HostKind::Partite, 3, 3).with_trials(10);
    let out = experiment_implication_sweep(&cfg).unwrap();
    assert!(out.counterexamples.is_empty());

    let big = ExperimentConfig::new(HostKind::Complete, 40, 3);
    assert!(matches!(experiment_implication_sweep(&big), Err(Error::Budget(_))));
}

#[test]
fn counterexample_dump_format() {
    let out = ExperimentOutput {
        records: Vec::new(),
        summary: Vec::new(),
        counterexamples: vec![Counterexample {
            trial: 4,
            property: "prop3-strict".into(),
            detail: "line one\nline two".into(),
            instance: crate::hypergraph::named::path(3),
        }],
    };
    let dir = tempfile::tempdir().unwrap();
    let paths = out.dump_counterexamples(dir.path()).unwrap();
    let text = std::fs::read_to_string(&paths[0]).unwrap();
    assert!(text.starts_with("# property: prop3-strict\n# trial: 4\n# line one\n# line two\n"));
    assert_eq!(Hypergraph::from_text(&text).unwrap(), crate::hypergraph::named::path(3));
}
