use std::fs;
use std::path::PathBuf;

use ainf::models::{candidate_ring, massey_dga, toy_module, truncated_polynomial};
use ring_r::Precision;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn matches_or_bless(name: &str, expected: String) {
    let path = fixture(name);
    if std::env::var_os("PIN2HOMALG_BLESS").is_some() {
        fs::write(&path, &expected).unwrap();
    }
    assert_eq!(fs::read_to_string(&path).unwrap(), expected, "{name} is stale");
}

#[test]
fn fixtures_are_the_library_models() {
    let a = std::sync::Arc::new(truncated_polynomial());
    matches_or_bless("strict_dga.json", massey_dga().to_json_string());
    matches_or_bless("r_candidate.json", candidate_ring(Precision::new(3).unwrap()).to_json_string());
    matches_or_bless("toy_module.json", toy_module(&a).unwrap().to_json_string());
}
