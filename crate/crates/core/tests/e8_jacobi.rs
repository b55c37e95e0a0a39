use kktlab_core::chevalley::{build_chevalley, Gcm};
use kktlab_core::sampling::{CheckMode, DEFAULT_SEED};

/// Exhaustive Jacobi check on all 248-dim E8 basis triples. Takes hours.
#[test]
#[ignore]
fn e8_full_jacobi() {
    let ch = build_chevalley(&Gcm::named("E8").unwrap()).unwrap();
    let r = ch.algebra().check_jacobi(CheckMode::Full, DEFAULT_SEED);
    assert!(r.passed, "{:?}", r.witness_labels);
}
