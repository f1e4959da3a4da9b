//! Replays the fuzz corpus seeds through the same checks as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use wittloc::euler::GroupKind;
use wittloc::field::{FieldDescriptor, FieldElement};
use wittloc::parse::{parse_field_tag, parse_form, parse_rep, parse_ring};
use wittloc::quad_ext::QuadExtContext;
use wittloc::rings::{CohRing, PresentationId};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.display().to_string(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn split(data: &[u8]) -> (u8, &str) {
    let (&selector, rest) = data.split_first().unwrap();
    (selector, std::str::from_utf8(rest).unwrap())
}

#[test]
fn field_tags() {
    for (name, data) in seeds("parse_field_tag") {
        let field = parse_field_tag(std::str::from_utf8(&data).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_field_tag(&field.to_string()).unwrap(), field, "{name}");
    }
}

#[test]
fn forms() {
    for (name, data) in seeds("parse_form") {
        let (selector, text) = split(&data);
        let field = match selector % 4 {
            0 => FieldDescriptor::Rationals,
            1 => FieldDescriptor::Reals,
            2 => FieldDescriptor::finite(7).unwrap(),
            _ => FieldDescriptor::quad_ext(FieldDescriptor::finite(5).unwrap(), FieldElement::integer(2)).unwrap(),
        };
        let class = parse_form(text, &field).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_form(&class.to_string(), &field).unwrap(), class, "{name}");
    }
}

#[test]
fn ring_elements() {
    let q = FieldDescriptor::Rationals;
    for (name, data) in seeds("parse_ring") {
        let (selector, text) = split(&data);
        let presentation = match selector % 5 {
            0 => PresentationId::Bsl2n(2),
            1 => PresentationId::Bn,
            2 => PresentationId::Bnn(2),
            3 => PresentationId::TwistedPoint(QuadExtContext::new(q.clone(), FieldElement::integer(-1)).unwrap()),
            _ => PresentationId::BnTwistedModule,
        };
        let ring = CohRing::new(presentation, q.clone()).unwrap();
        let x = parse_ring(text, &ring).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_ring(&x.to_string(), &ring).unwrap(), x, "{name}");
    }
}

#[test]
fn reps() {
    for (name, data) in seeds("parse_rep") {
        let (selector, text) = split(&data);
        let group = if selector % 2 == 0 { GroupKind::SL2n(3) } else { GroupKind::N };
        let rep = parse_rep(text, group).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_rep(&rep.to_string(), group).unwrap(), rep, "{name}");
    }
}

#[test]
fn problems() {
    for (name, data) in seeds("parse_problem") {
        let text = std::str::from_utf8(&data).unwrap();
        wittloc::engine::problem::parse_problem(text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
