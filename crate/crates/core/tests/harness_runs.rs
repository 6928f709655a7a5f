use overinterp::harness::{run, ExperimentConfig, FunctionSpec, Kind};

fn run_kind(kind: Kind) -> overinterp::harness::RunReport {
    let t = std::time::Instant::now();
    let rep = run(&ExperimentConfig::new(kind)).unwrap();
    eprintln!(
        "{kind}: {:?} tally={:?} errors={:?} in {:?}",
        rep.verdicts,
        rep.tally,
        rep.errors.iter().take(3).collect::<Vec<_>>(),
        t.elapsed()
    );
    rep
}

#[test]
fn every_kind_runs_with_defaults() {
    for kind in Kind::ALL {
        let rep = run_kind(kind);
        assert!(rep.success(), "{kind}");
    }
}

#[test]
fn classify_geom() {
    let rep = run(&ExperimentConfig::new(Kind::ClassifyRational).with_function(FunctionSpec::id("geom"))).unwrap();
    assert_eq!(rep.verdict_of("classify-rational"), Some("RationalQ1"));
}

#[test]
fn shipped_configs_validate() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut kinds = Vec::new();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let cfg = ExperimentConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(path.file_stem().unwrap().to_str(), Some(cfg.kind.name()));
            kinds.push(cfg.kind);
        }
    }
    assert_eq!(kinds.len(), Kind::ALL.len());
}
