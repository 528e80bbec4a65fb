#![no_main]

use libfuzzer_sys::fuzz_target;

// The parser must never panic, and anything it accepts must serialize to a
// canonical form that reparses to the same diagram.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(diagram) = vknot::gauss::parse(text) else {
        return;
    };
    let canonical = diagram.serialize();
    let reparsed = vknot::gauss::parse(&canonical).expect("canonical form parses");
    assert_eq!(reparsed, diagram);
    assert_eq!(reparsed.serialize(), canonical);
    assert_eq!(diagram.mirror_reflect().mirror_reflect(), diagram);
    let _ = diagram.arcs();
});
