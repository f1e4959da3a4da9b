#![no_main]

use libfuzzer_sys::fuzz_target;
use wittloc::field::{FieldDescriptor, FieldElement};
use wittloc::quad_ext::QuadExtContext;
use wittloc::rings::{CohRing, PresentationId};

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let q = FieldDescriptor::Rationals;
    let presentation = match selector % 5 {
        0 => PresentationId::Bsl2n(2),
        1 => PresentationId::Bn,
        2 => PresentationId::Bnn(2),
        3 => PresentationId::TwistedPoint(QuadExtContext::new(q.clone(), FieldElement::integer(-1)).unwrap()),
        _ => PresentationId::BnTwistedModule,
    };
    let ring = CohRing::new(presentation, q).unwrap();
    if let Ok(x) = wittloc::parse::parse_ring(text, &ring) {
        let again = wittloc::parse::parse_ring(&x.to_string(), &ring).unwrap();
        assert_eq!(again, x);
    }
});
