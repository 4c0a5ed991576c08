//! Proposition replays: evaluate hypotheses and conclusion independently on
//! one finite instance and compare. Nothing here hard-codes an expected
//! truth value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::baire::PseudoMode;
use crate::bilocale::{Bilocale, Orientation, Side};
use crate::error::Result;
use crate::frame::Elem;
use crate::sublocale::Sublocale;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Confirmed,
    /// Some hypothesis failed on this instance.
    Vacuous,
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub proposition: String,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orientation: Option<Orientation>,
    pub hypotheses: BTreeMap<String, bool>,
    pub conclusion: bool,
    pub status: Status,
    #[serde(default)]
    pub witness: BTreeMap<String, Value>,
}

impl PropositionReport {
    pub fn new(
        proposition: &str,
        instance: &str,
        orientation: Option<Orientation>,
        hypotheses: BTreeMap<String, bool>,
        conclusion: bool,
    ) -> Self {
        let status = if !hypotheses.values().all(|&h| h) {
            Status::Vacuous
        } else if conclusion {
            Status::Confirmed
        } else {
            Status::Refuted
        };
        PropositionReport {
            proposition: proposition.to_string(),
            instance: instance.to_string(),
            orientation,
            hypotheses,
            conclusion,
            status,
            witness: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.witness.insert(key.to_string(), value);
        self
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }
}

fn hyps<const N: usize>(items: [(&str, bool); N]) -> BTreeMap<String, bool> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn all_equal(values: &[bool]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

/// Proposition ids, stable across releases.
pub mod ids {
    pub const MAIN_EQUIVALENCE: &str = "main-equivalence";
    pub const FIP: &str = "compact-fip";
    pub const COMPACT_PREFIT_BAIRE: &str = "compact-prefit-baire";
    pub const PSEUDOCOMPLETE_BAIRE: &str = "pseudocomplete-baire";
    pub const NU_DENSE: &str = "dense-sub-nu-density";
    pub const DENSE_OPEN_TRACE: &str = "dense-sub-open-trace";
    pub const DENSE_SUBLOCALE: &str = "dense-sub-density";
    pub const DENSE_HEREDITY: &str = "dense-subbilocale-heredity";
    pub const DENSE_SUFFICIENCY: &str = "dense-subbilocale-sufficiency";
    pub const BOOLEANIZATION: &str = "booleanization-heredity";
    pub const SUBMAXIMAL: &str = "submaximal-booleanization";
    pub const OPEN_HEREDITY: &str = "open-subbilocale-heredity";
    pub const RELATIVE_COINCIDENCE: &str = "dense-relative-coincidence";
    pub const RELATIVE_CHARACTERIZATION: &str = "relative-characterization";
}

/// The four-way characterisation of `(i,j)`-Baireness through
/// `(j,i)`-category, gated on complemented `j`-Gδ-sublocales.
pub fn main_equivalence(b: &Bilocale, o: Orientation, instance: &str) -> Result<PropositionReport> {
    let f = b.frame();
    let gate = f.gdeltas_complemented(b.side(o.j()))?;
    let rev = o.reversed();
    let envelope = b.first_category_envelope(rev);
    let lattice = f.sublocales()?;
    let first: Vec<Sublocale> = lattice.iter().filter(|s| s.is_subset(envelope)).collect();
    let void = f.void();

    let s1 = b.is_ij_baire(o).verdict;
    let s2 = b
        .side(o.i)
        .iter()
        .filter(|&u| u != f.bottom())
        .all(|u| !b.is_first_category(rev, f.open(u)));
    let s3 = first.iter().all(|&s| b.interior(o.i, s) == void);
    let mut s4 = true;
    for &s in &first {
        if !b.is_side_dense(o.i, f.supplement(s)?) {
            s4 = false;
            break;
        }
    }
    let statements = [s1, s2, s3, s4];
    Ok(PropositionReport::new(
        ids::MAIN_EQUIVALENCE,
        instance,
        Some(o),
        hyps([("j-gdelta-complemented", gate)]),
        all_equal(&statements),
    )
    .with("statements", json!(statements))
    .with("first_category_count", json!(first.len())))
}

/// Closed-sublocale families with the finite intersection property have a
/// non-void intersection.
///
/// FIP is evaluated literally by induction over subfamilies: a family has
/// it iff its own intersection and every one-smaller subfamily do.
pub fn fip_check(b: &Bilocale, instance: &str) -> Result<PropositionReport> {
    let f = b.frame();
    let n = f.len();
    f.guard_subsets("closed-sublocale families")?;
    let closed: Vec<Sublocale> = (0..n).map(|a| f.closed(a)).collect();
    let void = f.void();
    let count = 1usize << n;
    let mut inter = vec![f.whole(); count];
    let mut fip = vec![true; count];
    let mut families_with_fip = 0usize;
    let mut failure: Option<usize> = None;
    for mask in 1..count {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        inter[mask] = inter[rest].meet(closed[low]);
        let mut ok = inter[mask] != void;
        let mut bits = mask;
        while ok && bits != 0 {
            let k = bits.trailing_zeros();
            bits &= bits - 1;
            let smaller = mask & !(1 << k);
            if smaller != 0 && !fip[smaller] {
                ok = false;
            }
        }
        fip[mask] = ok;
        if ok {
            families_with_fip += 1;
            if inter[mask] == void && failure.is_none() {
                failure = Some(mask);
            }
        }
    }
    let report = PropositionReport::new(
        ids::FIP,
        instance,
        None,
        hyps([("compact", b.is_compact())]),
        failure.is_none(),
    )
    .with("families_with_fip", json!(families_with_fip));
    Ok(match failure {
        Some(mask) => report.with(
            "family",
            json!((0..n).filter(|k| mask >> k & 1 == 1).collect::<Vec<_>>()),
        ),
        None => report,
    })
}

pub fn compact_prefit_implies_baire(b: &Bilocale, o: Orientation, instance: &str) -> PropositionReport {
    let baire = b.is_ij_baire(o);
    let prefit = b.i_prefit_violation(o.i);
    let mut report = PropositionReport::new(
        ids::COMPACT_PREFIT_BAIRE,
        instance,
        Some(o),
        hyps([("compact", b.is_compact()), ("i-prefit", prefit.is_none())]),
        baire.verdict,
    );
    if let Some(x) = prefit {
        report = report.with("prefit_violation", json!(x));
    }
    if baire.verdict && prefit.is_some() {
        // The converse is not claimed; record the separation.
        report = report.with("baire_without_prefit", json!(true));
    }
    report
}

pub fn pseudocomplete_implies_baire(
    b: &Bilocale,
    o: Orientation,
    mode: PseudoMode,
    instance: &str,
) -> Result<PropositionReport> {
    let pseudo = b.is_i_pseudocomplete(o, mode)?;
    Ok(PropositionReport::new(
        ids::PSEUDOCOMPLETE_BAIRE,
        instance,
        Some(o),
        hyps([("i-pseudocomplete", pseudo)]),
        b.is_ij_baire(o).verdict,
    )
    .with("mode", json!(mode)))
}

/// The three density transfer statements for a dense subbilocale `S`,
/// checked for both sides over every element and every sublocale of `S`.
pub fn dense_subbilocale_lemmas(b: &Bilocale, s: Sublocale, instance: &str) -> Result<Vec<PropositionReport>> {
    let f = b.frame();
    let dense = f.is_dense_sublocale(s);
    let gate = hyps([("dense", dense)]);
    let carrier = json!(s.members().to_vec());
    if !dense {
        return Ok([ids::NU_DENSE, ids::DENSE_OPEN_TRACE, ids::DENSE_SUBLOCALE]
            .into_iter()
            .map(|id| PropositionReport::new(id, instance, None, gate.clone(), true).with("carrier", carrier.clone()))
            .collect());
    }
    let sub = b.subbilocale(s)?;
    let local = sub.bilocale();
    let lf = local.frame();

    let mut nu_fail: Option<(Side, Elem)> = None;
    let mut trace_fail: Option<(Side, Elem)> = None;
    for i in Side::BOTH {
        let j = i.other();
        for y in b.side(i) {
            let ny = sub.local_elem(f.nu(s, y)).expect("ν_S lands in S");
            let global = b.is_element_dense_for(j, y);
            if global != local.is_element_dense_for(j, ny) && nu_fail.is_none() {
                nu_fail = Some((i, y));
            }
            let trace = f.open_in(s, y);
            let local_open = lf.open(ny);
            let is_open = sub.globalize_sublocale(local_open) == trace && local.side(i).contains(ny);
            let trace_dense = local.is_side_dense(j, local_open);
            if global != (is_open && trace_dense) && trace_fail.is_none() {
                trace_fail = Some((i, y));
            }
        }
    }
    let mut sublocale_fail: Option<(Side, Sublocale)> = None;
    'outer: for a in f.sublocales()?.iter().filter(|a| a.is_subset(s)) {
        let la = sub.localize_sublocale(a).expect("contained in the carrier");
        for i in Side::BOTH {
            if b.is_side_dense(i, a) != local.is_side_dense(i, la) {
                sublocale_fail = Some((i, a));
                break 'outer;
            }
        }
    }
    let mk = |id: &str, ok: bool, w: Value| {
        PropositionReport::new(id, instance, None, gate.clone(), ok)
            .with("carrier", carrier.clone())
            .with("counterexample", w)
    };
    Ok(vec![
        mk(ids::NU_DENSE, nu_fail.is_none(), json!(nu_fail.map(|(i, y)| (i.index(), y)))),
        mk(
            ids::DENSE_OPEN_TRACE,
            trace_fail.is_none(),
            json!(trace_fail.map(|(i, y)| (i.index(), y))),
        ),
        mk(
            ids::DENSE_SUBLOCALE,
            sublocale_fail.is_none(),
            json!(sublocale_fail.map(|(i, a)| (i.index(), a.members().to_vec()))),
        ),
    ])
}

fn sub_baire(b: &Bilocale, s: Sublocale, o: Orientation) -> Result<bool> {
    Ok(b.subbilocale(s)?.bilocale().is_ij_baire(o).verdict)
}

/// Heredity statements of subbilocales: dense, Booleanization, submaximal,
/// `i`-open, and the relative/plain coincidence on dense carriers.
pub fn heredity_suite(b: &Bilocale, o: Orientation, instance: &str) -> Result<Vec<PropositionReport>> {
    let f = b.frame();
    let baire = b.is_ij_baire(o).verdict;
    let dense: Vec<Sublocale> = f
        .sublocales()?
        .iter()
        .filter(|&s| f.is_dense_sublocale(s))
        .collect();
    let mut dense_baire: Option<Sublocale> = None;
    let mut coincidence_fail: Option<Sublocale> = None;
    for &s in &dense {
        let sub = b.subbilocale(s)?;
        let plain = sub.bilocale().is_ij_baire(o).verdict;
        if plain && dense_baire.is_none() {
            dense_baire = Some(s);
        }
        let relative = b.is_relatively_ij_baire(&sub, o).verdict;
        if relative != plain && coincidence_fail.is_none() {
            coincidence_fail = Some(s);
        }
    }
    let members = |s: Option<Sublocale>| json!(s.map(|s| s.members().to_vec()));

    let heredity = PropositionReport::new(
        ids::DENSE_HEREDITY,
        instance,
        Some(o),
        hyps([("baire", baire)]),
        dense_baire.is_some(),
    )
    .with("dense_baire_carrier", members(dense_baire));
    let sufficiency = PropositionReport::new(
        ids::DENSE_SUFFICIENCY,
        instance,
        Some(o),
        hyps([("dense-baire-subbilocale", dense_baire.is_some())]),
        baire,
    )
    .with("dense_baire_carrier", members(dense_baire));

    let boole = f.booleanization();
    let boole_baire = sub_baire(b, boole, o)?;
    let booleanization = PropositionReport::new(
        ids::BOOLEANIZATION,
        instance,
        Some(o),
        hyps([("baire", baire)]),
        boole_baire,
    )
    .with("converse_holds", json!(!boole_baire || baire));

    let submaximal_holds = b.is_submaximal(o)?;
    // Only the forward direction is argued for; the converse is recorded.
    let submaximal = PropositionReport::new(
        ids::SUBMAXIMAL,
        instance,
        Some(o),
        hyps([("submaximal", submaximal_holds), ("baire", baire)]),
        boole_baire,
    )
    .with(
        "converse_holds",
        json!(!submaximal_holds || !boole_baire || baire),
    );

    let mut open_fail: Option<Elem> = None;
    for u in b.side(o.i).iter().filter(|&u| u != f.bottom()) {
        if !sub_baire(b, f.open(u), o)? {
            open_fail = Some(u);
            break;
        }
    }
    let open = PropositionReport::new(
        ids::OPEN_HEREDITY,
        instance,
        Some(o),
        hyps([("baire", baire)]),
        open_fail.is_none(),
    )
    .with("non_baire_open", json!(open_fail));

    let coincidence = PropositionReport::new(ids::RELATIVE_COINCIDENCE, instance, Some(o), hyps([]), coincidence_fail.is_none())
        .with("dense_carriers", json!(dense.len()))
        .with("counterexample", members(coincidence_fail));

    Ok(vec![heredity, sufficiency, booleanization, submaximal, open, coincidence])
}

/// Four-way characterisation of relative Baireness for one carrier.
pub fn relative_characterization(
    b: &Bilocale,
    s: Sublocale,
    o: Orientation,
    instance: &str,
) -> Result<PropositionReport> {
    let f = b.frame();
    let dense = f.is_dense_sublocale(s);
    let complemented = f.is_complemented_sublocale(s)?;
    let gdelta = f.gdeltas_complemented(b.side(o.j()))?;
    let sub = b.subbilocale(s)?;
    let local = sub.bilocale();
    let lf = local.frame();
    let rev = o.reversed();
    let localize = |t: Sublocale| sub.localize_sublocale(s.meet(t)).expect("meet lies in the carrier");

    let envelope = b.first_category_envelope(rev);
    let first: Vec<Sublocale> = f.sublocales()?.iter().filter(|t| t.is_subset(envelope)).collect();

    let s1 = b.is_relatively_ij_baire(&sub, o).verdict;
    let s2 = b
        .side(o.i)
        .iter()
        .filter(|&u| u != f.bottom())
        .all(|u| !local.is_first_category(rev, localize(f.open(u))));
    let s3 = first.iter().all(|&u| local.interior(o.i, localize(u)) == lf.void());
    let mut s4 = true;
    for &v in &first {
        if !local.is_side_dense(o.i, localize(f.supplement(v)?)) {
            s4 = false;
            break;
        }
    }
    let statements = [s1, s2, s3, s4];
    Ok(PropositionReport::new(
        ids::RELATIVE_CHARACTERIZATION,
        instance,
        Some(o),
        hyps([
            ("dense", dense),
            ("complemented", complemented),
            ("j-gdelta-complemented", gdelta),
        ]),
        all_equal(&statements),
    )
    .with("carrier", json!(s.members().to_vec()))
    .with("statements", json!(statements)))
}

/// Every replay for one bilocale and both orientations, in a fixed order.
pub fn replay_bilocale(b: &Bilocale, instance: &str) -> Result<Vec<PropositionReport>> {
    let f = b.frame();
    let mut out = vec![fip_check(b, instance)?];
    let dense: Vec<Sublocale> = f.sublocales()?.iter().filter(|&s| f.is_dense_sublocale(s)).collect();
    for &s in &dense {
        out.extend(dense_subbilocale_lemmas(b, s, instance)?);
    }
    for o in Orientation::BOTH {
        out.push(main_equivalence(b, o, instance)?);
        out.push(compact_prefit_implies_baire(b, o, instance));
        out.push(pseudocomplete_implies_baire(b, o, PseudoMode::Canonical, instance)?);
        out.extend(heredity_suite(b, o, instance)?);
        for &s in &dense {
            out.push(relative_characterization(b, s, o, instance)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{Frame, RawFrame};

    fn sym(raw: RawFrame) -> Bilocale {
        Bilocale::symmetric(Frame::validate(&raw).unwrap())
    }

    #[test]
    fn status_derivation() {
        let r = PropositionReport::new("x", "i", None, hyps([("h", false)]), false);
        assert_eq!(r.status, Status::Vacuous);
        let r = PropositionReport::new("x", "i", None, hyps([("h", true)]), false);
        assert_eq!(r.status, Status::Refuted);
        let r = PropositionReport::new("x", "i", None, hyps([]), true);
        assert_eq!(r.status, Status::Confirmed);
    }

    #[test]
    fn main_equivalence_on_chain3() {
        let b = sym(RawFrame::chain3());
        for o in Orientation::BOTH {
            let r = main_equivalence(&b, o, "chain3").unwrap();
            assert_eq!(r.status, Status::Confirmed);
            assert_eq!(r.witness["statements"], json!([true, true, true, true]));
        }
    }

    #[test]
    fn fip_confirmed() {
        let b = sym(RawFrame::powerset(2));
        let r = fip_check(&b, "p2").unwrap();
        assert_eq!(r.status, Status::Confirmed);
    }

    #[test]
    fn nothing_refuted_on_small_symmetric_frames() {
        for raw in [RawFrame::chain(2), RawFrame::chain3(), RawFrame::powerset(2), RawFrame::chain(4)] {
            let b = sym(raw);
            for r in replay_bilocale(&b, "sym").unwrap() {
                assert!(!r.is_refuted(), "{r:?}");
            }
        }
    }

    #[test]
    fn report_serializes_with_status_string() {
        let r = PropositionReport::new("p", "inst", Some(Orientation::ONE_TWO), hyps([]), true);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "confirmed");
        assert_eq!(v["orientation"], "1,2");
    }
}
