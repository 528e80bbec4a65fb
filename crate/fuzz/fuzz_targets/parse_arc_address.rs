#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(arc) = vknot::gauss::parse_arc_address(text) {
        let rendered = arc.to_string();
        let again = vknot::gauss::parse_arc_address(&rendered).expect("rendered address parses");
        assert_eq!(again, arc);
    }
});
