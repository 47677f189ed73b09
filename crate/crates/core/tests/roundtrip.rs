mod common;

use common::{arb_document, corpus, round_trip};
use proptest::prelude::*;

#[test]
fn fixtures_round_trip() {
    for path in corpus() {
        let src = std::fs::read_to_string(&path).unwrap();
        if let Err(e) = round_trip(&src) {
            panic!("{}: {e}", path.display());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn random_specifications_round_trip(src in arb_document()) {
        prop_assert_eq!(round_trip(&src), Ok(()));
    }
}
