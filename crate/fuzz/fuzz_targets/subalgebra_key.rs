#![no_main]

use duality_core::document::parse_subalgebra_key;
use duality_core::order::FiniteLattice;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(key) = std::str::from_utf8(data) else { return };
    for l in [FiniteLattice::chain(3), FiniteLattice::boolean2()] {
        if let Ok(set) = parse_subalgebra_key(&l, key) {
            assert_eq!(set.universe(), l.len());
        }
    }
});
