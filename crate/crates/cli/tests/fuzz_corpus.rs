use std::fs;
use std::path::Path;

use pullin_cli::config::parse_dims;
use pullin_cli::parse_run_config;

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    out
}

#[test]
fn run_config_seeds_parse_without_panicking() {
    let seeds = seeds("parse_run_config");
    assert!(seeds.len() >= 10);
    let accepted = seeds
        .iter()
        .filter(|s| parse_run_config(std::iter::once("pullin").chain(s.lines())).is_ok())
        .count();
    assert_eq!(accepted, seeds.len() - 2);
}

#[test]
fn dims_seeds() {
    let ok: Vec<_> = seeds("parse_dims").iter().map(|s| parse_dims(s).is_ok()).collect();
    assert_eq!(ok.iter().filter(|&&b| b).count(), 2);
}
