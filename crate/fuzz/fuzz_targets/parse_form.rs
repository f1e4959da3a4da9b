#![no_main]

use libfuzzer_sys::fuzz_target;
use wittloc::field::{FieldDescriptor, FieldElement};

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let field = match selector % 4 {
        0 => FieldDescriptor::Rationals,
        1 => FieldDescriptor::Reals,
        2 => FieldDescriptor::finite(7).unwrap(),
        _ => FieldDescriptor::quad_ext(FieldDescriptor::finite(5).unwrap(), FieldElement::integer(2)).unwrap(),
    };
    if let Ok(class) = wittloc::parse::parse_form(text, &field) {
        let again = wittloc::parse::parse_form(&class.to_string(), &field).unwrap();
        assert_eq!(again, class);
    }
});
