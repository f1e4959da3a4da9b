#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(field) = wittloc::parse::parse_field_tag(text) {
            // Printed tags must parse back to the same field.
            let again = wittloc::parse::parse_field_tag(&field.to_string()).unwrap();
            assert_eq!(again, field);
        }
    }
});
