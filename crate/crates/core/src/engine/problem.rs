//! JSON problem files.
//!
//! ```json
//! {
//!   "group": {"kind": "N", "field": "Q"},
//!   "components": [
//!     {"id": "p", "residue": "twisted", "a": "2", "normal": "rho(1)", "restricted": "2*rho(1)"}
//!   ],
//!   "invert": {"M": 2}
//! }
//! ```
//!
//! `restricted` is read as a representation first and otherwise as an element of the component's
//! ring; when omitted it equals `normal`.

use serde::{Deserialize, Serialize};

use super::{FixedComponent, GroupDescriptor, LocalizationProblem, ResidueKind, RestrictedClass};
use crate::error::{Error, Result};
use crate::euler::{GroupKind, NIrrep};
use crate::field::FieldElement;
use crate::parse::{parse_field_tag, parse_rep, parse_ring, parse_scalar};
use crate::quad_ext::QuadExtContext;
use crate::rings::CohRing;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: String,
    #[serde(default)]
    pub n: Option<u32>,
    pub field: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    #[serde(default)]
    pub id: Option<String>,
    #[serde(default = "rational")]
    pub residue: String,
    #[serde(default)]
    pub a: Option<ScalarSpec>,
    pub normal: String,
    #[serde(default)]
    pub restricted: Option<String>,
    #[serde(default)]
    pub twist: Option<String>,
}

fn rational() -> String {
    "rational".into()
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InvertSpec {
    #[serde(rename = "M", default)]
    pub m: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub group: GroupSpec,
    #[serde(default)]
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub invert: InvertSpec,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            // serde reports line/column; convert to a byte offset for uniform errors.
            let offset = text
                .split_inclusive('\n')
                .take(e.line().saturating_sub(1))
                .map(str::len)
                .sum::<usize>()
                + e.column().saturating_sub(1);
            Error::Syntax { offset, message: e.to_string() }
        })
    }

    pub fn to_problem(&self) -> Result<LocalizationProblem> {
        let field = parse_field_tag(&self.group.field)?;
        let kind = match self.group.kind.as_str() {
            "SL2n" | "SL2" => GroupKind::SL2n(self.group.n.unwrap_or(1)),
            "N" => {
                if self.group.n.is_some_and(|n| n != 1) {
                    return Err(bad("group N takes no n"));
                }
                GroupKind::N
            }
            other => return Err(bad(format!("unknown group kind `{other}`"))),
        };
        let group = GroupDescriptor::new(kind, field.clone())?;
        let mut components = Vec::new();
        for (idx, c) in self.components.iter().enumerate() {
            let id = c.id.clone().unwrap_or_else(|| format!("c{}", idx + 1));
            let residue = match (c.residue.as_str(), &c.a) {
                ("rational", None) => ResidueKind::RationalPoint,
                ("rational", Some(_)) => return Err(bad(format!("component {id}: `a` on a rational point"))),
                ("twisted", Some(a)) => {
                    let a = match a {
                        ScalarSpec::Int(n) => FieldElement::integer(*n),
                        ScalarSpec::Text(s) => parse_scalar(s, &field)?,
                    };
                    let a = field.canonical_element(a)?;
                    ResidueKind::TwistedPoint(QuadExtContext::new(field.clone(), a)?)
                }
                ("twisted", None) => return Err(bad(format!("component {id}: twisted point needs `a`"))),
                (other, _) => return Err(bad(format!("component {id}: unknown residue `{other}`"))),
            };
            let normal = parse_rep(&c.normal, kind)?;
            let restricted = match &c.restricted {
                None => RestrictedClass::Rep(normal.clone()),
                Some(text) => match parse_rep(text, kind) {
                    Ok(rep) => RestrictedClass::Rep(rep),
                    Err(rep_err) => {
                        let ring = match &residue {
                            ResidueKind::RationalPoint => group.ring()?,
                            ResidueKind::TwistedPoint(ctx) => CohRing::twisted(ctx)?,
                        };
                        match parse_ring(text, &ring) {
                            Ok(x) => RestrictedClass::Literal(x),
                            Err(_) => return Err(rep_err),
                        }
                    }
                },
            };
            let twist = match c.twist.as_deref() {
                None | Some("trivial") => None,
                Some("rho0") => Some(NIrrep::Rho0),
                Some("rho0-") | Some("rho0_minus") => Some(NIrrep::Rho0Minus),
                Some(other) => return Err(bad(format!("component {id}: unknown twist `{other}`"))),
            };
            if twist.is_some() && kind != GroupKind::N {
                return Err(bad(format!("component {id}: twists only apply to N")));
            }
            components.push(FixedComponent { id, residue, normal, restricted, twist });
        }
        Ok(LocalizationProblem { group, components, multiplier: self.invert.m })
    }
}

/// Reads a problem from JSON text.
pub fn parse_problem(text: &str) -> Result<LocalizationProblem> {
    ProblemSpec::from_json(text)?.to_problem()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::bott_residue;
    use crate::witt::WittClass;

    #[test]
    fn gr24_from_json() {
        let text = r#"{
            "group": {"kind": "SL2n", "n": 2, "field": "Q"},
            "components": [
                {"id": "F1", "normal": "F@1*F@2"},
                {"id": "F2", "normal": "F@2*F@1"}
            ]
        }"#;
        let p = parse_problem(text).unwrap();
        let r = bott_residue(&p).unwrap();
        assert_eq!(r.degree_zero, Some(WittClass::integer(2, &p.group.field)));
    }

    #[test]
    fn twisted_component() {
        let text = r#"{"group": {"kind": "N", "field": "Q"},
            "components": [{"residue": "twisted", "a": 3, "normal": "rho(1)", "restricted": "rho(1)"}]}"#;
        let p = parse_problem(text).unwrap();
        let r = bott_residue(&p).unwrap();
        // pi_*(1) with e inverted is <2> - <6>.
        let expect = WittClass::from_integers(&p.group.field, &[2, -6]).unwrap();
        assert_eq!(r.degree_zero, Some(expect));
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = r#"{"group": {"kind": "N", "field": "Q", "extra": 1}}"#;
        assert!(matches!(parse_problem(text), Err(Error::Syntax { .. })));
        let text = r#"{"group": {"kind": "N", "field": "Q"}, "components": [{"normal": "F@1"}]}"#;
        assert!(matches!(parse_problem(text), Err(Error::Syntax { .. })));
    }
}
