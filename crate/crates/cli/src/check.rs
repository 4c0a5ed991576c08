//! Single-property dispatch for `check`.

use bilocale_core::atlas::{analyze, bilocale_of};
use bilocale_core::io::Instance;
use bilocale_core::replay::{self, PropositionReport};
use bilocale_core::{Bilocale, Error, Orientation, PseudoMode, Result};
use serde_json::{json, Value};

use crate::Failure;

pub struct Outcome {
    pub verdict: bool,
    pub witness: Value,
    /// A replayed proposition came out refuted.
    pub refuted: bool,
}

fn plain(verdict: bool, witness: Value) -> Outcome {
    Outcome {
        verdict,
        witness,
        refuted: false,
    }
}

fn replayed(reports: Vec<PropositionReport>) -> Outcome {
    let refuted = reports.iter().any(|r| r.is_refuted());
    Outcome {
        verdict: !refuted,
        witness: json!(reports),
        refuted,
    }
}

const BILOCALE: &[&str] = &[
    "baire",
    "boolean",
    "regular",
    "compact",
    "prefit",
    "prefit-nonzero",
    "i-prefit",
    "strongly-prefit",
    "pseudocomplete",
    "pseudocomplete-exhaustive",
    "submaximal",
    "equivalence",
    "replay",
];
const BISPACE: &[&str] = &["almost-baire", "td", "sup-td", "density-lemma"];
const TOPO: &[&str] = &["tau-baire", "identities", "equivalence", "nowhere-dense", "replay"];
const MAP: &[&str] = &[
    "dense",
    "onto",
    "compactification",
    "adjunction",
    "adjoint-meet",
    "transfer",
    "replay",
];

pub fn property_list() -> String {
    format!(
        "frame, bilocale, bispace: {}\nbispace also: {}\ntopobilocale: {}\nmap: {}\n",
        BILOCALE.join(", "),
        BISPACE.join(", "),
        TOPO.join(", "),
        MAP.join(", ")
    )
}

fn unknown(property: &str, inst: &Instance) -> Failure {
    Failure {
        code: 2,
        message: format!("unknown property `{property}` for a {}; try --property list", inst.kind()),
    }
}

fn bilocale_property(b: &Bilocale, property: &str, o: Orientation) -> Result<Option<Outcome>> {
    Ok(Some(match property {
        "baire" => {
            let v = b.is_ij_baire(o);
            plain(v.verdict, json!(v))
        }
        "boolean" => plain(b.is_boolean(), Value::Null),
        "regular" => plain(b.is_regular(), Value::Null),
        "compact" => plain(b.is_compact(), Value::Null),
        "prefit" => plain(b.is_prefit(), Value::Null),
        "prefit-nonzero" => plain(b.is_prefit_nonzero(), Value::Null),
        "i-prefit" => {
            let violation = b.i_prefit_violation(o.i);
            plain(
                violation.is_none(),
                json!({"side": o.i.index(), "violation": violation.map(|x| b.frame().label(x))}),
            )
        }
        "strongly-prefit" => plain(b.is_strongly_prefit(), Value::Null),
        "pseudocomplete" => plain(b.is_i_pseudocomplete(o, PseudoMode::Canonical)?, Value::Null),
        "pseudocomplete-exhaustive" => plain(b.is_i_pseudocomplete(o, PseudoMode::Exhaustive)?, Value::Null),
        "submaximal" => plain(b.is_submaximal(o)?, Value::Null),
        "equivalence" => replayed(vec![replay::main_equivalence(b, o, "input")?]),
        _ => return Ok(None),
    }))
}

pub fn check(inst: &Instance, property: &str, o: Orientation) -> std::result::Result<Outcome, Failure> {
    if property == "replay" {
        return Ok(replayed(analyze("input", inst)?.reports));
    }
    let outcome: Option<Outcome> = match inst {
        Instance::TopoBilocale(t) => match property {
            "tau-baire" => {
                let v = t.is_tau_ij_baire(o);
                Some(plain(v.verdict, json!(v)))
            }
            "identities" => Some(replayed(vec![t.closure_interior_identities("input")])),
            "equivalence" => Some(replayed(vec![t.final_equivalence_replay(o, "input")])),
            "nowhere-dense" => Some(replayed(vec![t.nowhere_dense_replay(o, "input")])),
            _ => None,
        },
        Instance::Map(m) => match property {
            "dense" => Some(plain(m.is_dense(), Value::Null)),
            "onto" => Some(plain(m.is_onto(), Value::Null)),
            "compactification" => Some(plain(m.is_compactification(), Value::Null)),
            "adjunction" => Some(plain(m.adjunction_holds(), json!(m.right_adjoint()))),
            "adjoint-meet" => Some(replayed(vec![m.adjoint_meet_lemma(o, "input")])),
            "transfer" => Some(replayed(m.baire_transfer_check(o, "input")?)),
            _ => None,
        },
        Instance::Bispace(bs) => match property {
            "almost-baire" => {
                let v = bs.is_almost_ij_baire(o);
                Some(plain(v.verdict, json!(v)))
            }
            "td" => Some(plain(bs.is_td(), Value::Null)),
            "sup-td" => Some(plain(bs.is_sup_td(), Value::Null)),
            "density-lemma" => Some(replayed(vec![bs.density_lemma_replay("input")?])),
            "equivalence" => Some(replayed(vec![bs.equivalence_replay(o, "input")?])),
            _ => bilocale_property(bs.bilocale(), property, o)?,
        },
        Instance::Frame(_) | Instance::Bilocale(_) => {
            let b = bilocale_of(inst).ok_or_else(|| Failure::from(Error::Invalid("no bilocale".into())))?;
            bilocale_property(&b, property, o)?
        }
    };
    outcome.ok_or_else(|| unknown(property, inst))
}
