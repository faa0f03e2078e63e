#![no_main]

use duality_core::document::{parse_document, serialize_document};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = parse_document(text) {
        let again = parse_document(&serialize_document(&doc)).expect("serialized documents parse");
        assert_eq!(again, doc);
    }
});
