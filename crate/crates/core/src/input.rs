//! JSON input documents shared by the command line and the demo page.
//!
//! Every document carries a `kind` tag and declares its ring inline, e.g.
//! `{"kind": "line_bundles", "ring": {"n": [1, 1]}, "twists": [[3, -2]]}`.

use crate::bgg::presentation_from_image;
use crate::catalog::{p3_quadrics_matrix, point_module, rank_three_bundle_module, structure_sheaf};
use crate::complexes::{matrix_from_json, ComplexJson, EntryJson, FreeEComplex, FreeEModule};
use crate::error::{Result, TateError};
use crate::multigraded::{Multidegree, Ring, RingSpec};
use crate::smodule::{line_bundle_sum, monomial_quotient, SComplex, SMonomial, SPresentation};
use crate::tate::CohomologyTable;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDoc {
    /// A presented module.
    Module(SPresentation),
    /// `⊕ O(c)` for the listed `c`.
    LineBundles { ring: RingSpec, twists: Vec<Multidegree> },
    /// `S / (m_1, …)` for monomials given as exponent vectors.
    MonomialQuotient { ring: RingSpec, monomials: Vec<SMonomial> },
    /// The module whose window has the given linear map as a differential.
    Image { ring: RingSpec, source: Vec<Multidegree>, target: Vec<Multidegree>, entries: Vec<EntryJson> },
    /// A bounded complex of presented modules.
    Complex(SComplex),
    /// A complex of free `E`-modules, such as a computed window.
    Window(ComplexJson),
    /// A cohomology table.
    Table {
        ring: RingSpec,
        #[serde(flatten)]
        table: serde_json::Value,
    },
    /// A named example: `structure_sheaf`, `point`, `rank_three_bundle`
    /// or `p3_subbundle`.
    Catalog {
        name: String,
        #[serde(default)]
        ring: Option<RingSpec>,
    },
}

/// What an input document describes once parsed and validated.
#[derive(Clone, Debug)]
pub enum Source {
    Sheaf(SComplex),
    Window(FreeEComplex),
    Table(RingSpec, CohomologyTable),
}

impl Source {
    pub fn ring(&self) -> &RingSpec {
        match self {
            Source::Sheaf(c) => &c.ring,
            Source::Window(w) => &w.ring,
            Source::Table(r, _) => r,
        }
    }
}

impl InputDoc {
    pub fn parse(text: &str) -> Result<InputDoc> {
        serde_json::from_str(text).map_err(|e| TateError::BadInput(format!("input JSON: {e}")))
    }

    pub fn resolve(&self) -> Result<Source> {
        let sheaf = |m: SPresentation| -> Result<Source> {
            m.validate()?;
            Ok(Source::Sheaf(SComplex::single(m, 0)))
        };
        match self {
            InputDoc::Module(m) => sheaf(m.clone()),
            InputDoc::LineBundles { ring, twists } => {
                ring.validate()?;
                sheaf(line_bundle_sum(ring, twists))
            }
            InputDoc::MonomialQuotient { ring, monomials } => {
                ring.validate()?;
                if let Some(m) = monomials.iter().find(|m| m.len() != ring.nvars()) {
                    return Err(TateError::LengthMismatch { expected: ring.nvars(), found: m.len() });
                }
                sheaf(monomial_quotient(ring, monomials))
            }
            InputDoc::Image { ring, source, target, entries } => {
                let r = Ring::new(ring.clone())?;
                for d in source.iter().chain(target) {
                    ring.check(d)?;
                }
                let m = matrix_from_json(&r, FreeEModule::new(source.clone()), FreeEModule::new(target.clone()), entries)?;
                sheaf(presentation_from_image(&r, &m)?)
            }
            InputDoc::Complex(c) => {
                c.validate()?;
                Ok(Source::Sheaf(c.clone()))
            }
            InputDoc::Window(j) => Ok(Source::Window(FreeEComplex::from_json(j)?)),
            InputDoc::Table { ring, table } => {
                ring.validate()?;
                let t = CohomologyTable::from_json(table)?;
                for c in t.entries.keys() {
                    ring.check(c)?;
                }
                Ok(Source::Table(ring.clone(), t))
            }
            InputDoc::Catalog { name, ring } => {
                let need = |default: &[usize]| -> Result<RingSpec> {
                    let r = ring.clone().unwrap_or_else(|| RingSpec::product(default));
                    r.validate()?;
                    Ok(r)
                };
                match name.as_str() {
                    "structure_sheaf" => sheaf(structure_sheaf(&need(&[1, 1])?)),
                    "point" => sheaf(point_module(&need(&[1, 1])?)),
                    "rank_three_bundle" => sheaf(rank_three_bundle_module()?),
                    "p3_subbundle" => {
                        let r = Ring::new(RingSpec::product(&[3]))?;
                        sheaf(presentation_from_image(&r, &p3_quadrics_matrix(&r))?)
                    }
                    other => Err(TateError::BadInput(format!("unknown catalog entry {other:?}"))),
                }
            }
        }
    }
}

/// `{"kind": "table", "ring": …, "entries": …}`, readable as an input.
pub fn table_doc(ring: &RingSpec, t: &CohomologyTable) -> serde_json::Value {
    let mut v = t.to_json();
    v["kind"] = "table".into();
    v["ring"] = serde_json::to_value(ring).expect("ring serializes");
    v
}

/// `{"kind": "window", …}`, readable as an input.
pub fn window_doc(c: &FreeEComplex) -> Result<serde_json::Value> {
    let ring = Ring::new(c.ring.clone())?;
    let mut v = serde_json::to_value(c.to_json(&ring)).expect("complex serializes");
    v["kind"] = "window".into();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_bundles_parse() {
        let d = InputDoc::parse(r#"{"kind":"line_bundles","ring":{"n":[1,1]},"twists":[[3,-2]]}"#).unwrap();
        let Source::Sheaf(c) = d.resolve().unwrap() else { panic!() };
        assert_eq!(c.modules[&0].generators, vec![Multidegree::from([-3, 2])]);
    }

    #[test]
    fn twist_of_the_wrong_length_is_rejected() {
        let d = InputDoc::parse(r#"{"kind":"line_bundles","ring":{"n":[1,1]},"twists":[[3]]}"#).unwrap();
        assert!(d.resolve().is_err());
    }

    #[test]
    fn unknown_kind_is_a_parse_error() {
        assert!(InputDoc::parse(r#"{"kind":"sheaf"}"#).is_err());
    }

    #[test]
    fn table_document_round_trips() {
        let spec = RingSpec::product(&[1]);
        let t = crate::tate::line_bundle_table(&spec, &Multidegree::from([0]), &Multidegree::from([-2]), &Multidegree::from([1]));
        let v = table_doc(&spec, &t);
        let Source::Table(r, back) = InputDoc::parse(&v.to_string()).unwrap().resolve().unwrap() else { panic!() };
        assert_eq!((r, back), (spec, t));
    }
}
