#![no_main]

use libfuzzer_sys::fuzz_target;
use qga_core::{parse_document, serialize_document};

// Anything that parses must serialize to a fixed point.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = parse_document(text) else {
        return;
    };
    let once = serialize_document(&doc.algebra, doc.truncation_bound);
    let back = parse_document(&once).expect("canonical output parses");
    assert_eq!(back.algebra, doc.algebra);
    assert_eq!(
        serialize_document(&back.algebra, back.truncation_bound),
        once
    );
});
