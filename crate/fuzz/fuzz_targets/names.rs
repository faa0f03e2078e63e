#![no_main]

//! Signature, mode and built-in lattice names.

use duality_core::algebra::Signature;
use duality_core::document::builtin_lattice;
use duality_core::duality::Mode;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Some(sig) = Signature::parse(s) {
        assert_eq!(Signature::parse(sig.as_str()), Some(sig));
    }
    if let Ok(mode) = s.parse::<Mode>() {
        assert_eq!(mode.as_str().parse::<Mode>().ok(), Some(mode));
    }
    if let Some(l) = builtin_lattice(s) {
        assert!(l.len() >= 2);
    }
});
