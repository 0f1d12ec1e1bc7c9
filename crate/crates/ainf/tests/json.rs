use std::sync::Arc;

use ainf::models::{candidate_ring, toy_module, truncated_polynomial};
use ainf::{AInfAlgebra, AInfError, AInfModule};
use ring_r::Precision;

#[test]
fn algebra_round_trip() {
    let a = candidate_ring(Precision::new(3).unwrap());
    let back = AInfAlgebra::from_json_str(&a.to_json_string()).unwrap();
    assert_eq!(back, a);
}

#[test]
fn module_round_trip() {
    let m = toy_module(&Arc::new(truncated_polynomial())).unwrap();
    let back = AInfModule::from_json_str(&m.to_json_string()).unwrap();
    assert_eq!(back, m);
}

#[test]
fn bad_degree_is_rejected() {
    let text = r#"{"name":"bad","basis":[{"label":"1","degree":0},{"label":"a","degree":-1}],
                   "ops":{"2":[{"inputs":[1,1],"output":[1]}]}}"#;
    assert!(matches!(AInfAlgebra::from_json_str(text), Err(AInfError::Degree { .. })));
}
