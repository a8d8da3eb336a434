#![no_main]

use libfuzzer_sys::fuzz_target;
use qga_core::document::{parse_relation_list, parse_vertex_list};
use qga_core::QuadraticMonomialAlgebra;

// Input: a document, a NUL byte, then a vertex or relation list.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (doc, list) = text.split_once('\0').unwrap_or(("", text));
    let _ = parse_vertex_list(list);
    let a = qga_core::parse_algebra(doc).unwrap_or_else(|_| {
        QuadraticMonomialAlgebra::from_parts(
            &["1", "2", "3"],
            &[("α", "1", "2", 0), ("β", "2", "3", 0), ("αβ", "1", "3", 0)],
            &[("α", "β")],
        )
        .expect("fallback algebra")
    });
    if let Ok(pairs) = parse_relation_list(&a, list) {
        assert!(pairs.iter().all(|&(x, y)| a.is_relation(x, y)));
    }
    if let Ok(names) = parse_vertex_list(list) {
        let _ = a.idempotent(&names);
    }
});
