#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(entries) = vknot::volume::parse_table(text) {
        // accepted tables must round-trip
        let json = serde_json::to_string(&entries).expect("entries serialize");
        let again = vknot::volume::parse_table(&json).expect("serialized table parses");
        assert_eq!(entries.len(), again.len());
    }
});
