//! Batch evaluation: replay every proposition over a corpus, tabulate
//! property verdicts, and hunt for separating or refuting instances.
//!
//! Instances are analysed independently (in parallel when available) and
//! the atlas is assembled in instance-id order, so a fixed corpus and seed
//! always serialise to the same bytes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bilocale::{Bilocale, Orientation, Side};
use crate::bispace::Bispace;
use crate::error::{Error, Result};
use crate::frame::{Frame, Guards};
use crate::generate::{self, GenConfig};
use crate::ideal::{ideal_bilocale, ideal_density_transfer, noetherian_transfer_check};
use crate::io::{instance_from_value, Instance, InstanceKind};
use crate::maps::{enumerate_biframe_maps, BiframeMap};
use crate::par::Execution;
use crate::replay::{self, ids, PropositionReport, Status};
use crate::sublocale::Sublocale;
use crate::topo::TopoBilocale;
use crate::baire::PseudoMode;

pub const SYMMETRIC_BAIRE: &str = "symmetric-baire";
pub const IDEAL_ISOMORPHISM: &str = "ideal-isomorphism";
pub const MAP_ADJUNCTION: &str = "map-adjunction";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub confirmed: usize,
    pub vacuous: usize,
    pub refuted: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Confirmed => self.confirmed += 1,
            Status::Vacuous => self.vacuous += 1,
            Status::Refuted => self.refuted += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.confirmed + self.vacuous + self.refuted
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub id: String,
    pub kind: InstanceKind,
    pub size: usize,
    /// Property verdicts; orientation-dependent names carry a `-i,j` suffix.
    pub properties: BTreeMap<String, bool>,
}

/// Separation targets; each names "property A without property B".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// Boolean but not `i`-prefit for some side.
    BooleanNotPrefit,
    /// Strongly prefit but not Boolean.
    StronglyPrefitNotBoolean,
    /// `(i,j)`-Baire but not `i`-pseudocomplete.
    BaireNotPseudocomplete,
    /// A non-dense carrier where relative and plain Baireness differ.
    RelativeVsPlain,
    /// Any refuted replay of the chosen proposition.
    Refutation,
}

impl Target {
    pub const SEPARATIONS: [Target; 4] = [
        Target::BooleanNotPrefit,
        Target::StronglyPrefitNotBoolean,
        Target::BaireNotPseudocomplete,
        Target::RelativeVsPlain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::BooleanNotPrefit => "boolean-not-prefit",
            Target::StronglyPrefitNotBoolean => "strongly-prefit-not-boolean",
            Target::BaireNotPseudocomplete => "baire-not-pseudocomplete",
            Target::RelativeVsPlain => "relative-vs-plain",
            Target::Refutation => "refutation",
        }
    }

    /// The generator a search uses when none is given.
    pub fn default_generator(self) -> Generator {
        match self {
            Target::BooleanNotPrefit => Generator::Bispace,
            Target::StronglyPrefitNotBoolean => Generator::Symmetric,
            _ => Generator::Bilocale,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Target> {
        [Target::Refutation]
            .into_iter()
            .chain(Target::SEPARATIONS)
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown search target `{s}`")))
    }
}

/// A separating or refuting instance, stored with its full JSON so it can be
/// re-validated from scratch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Separation {
    pub target: Target,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orientation: Option<Orientation>,
    /// Carrier of the separating sublocale, for [`Target::RelativeVsPlain`].
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub carrier: Option<Vec<usize>>,
    /// Proposition id, for [`Target::Refutation`].
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub proposition: Option<String>,
    pub data: Value,
}

impl Separation {
    /// Reloads `data` through the validating constructors and re-evaluates
    /// the separating predicate.
    pub fn revalidate(&self, guards: Guards) -> Result<bool> {
        let inst = instance_from_value(self.data.clone(), guards)?;
        let Some(b) = bilocale_of(&inst) else {
            return Ok(false);
        };
        Ok(match self.target {
            Target::BooleanNotPrefit => b.is_boolean() && Side::BOTH.iter().any(|&i| !b.is_i_prefit(i)),
            Target::StronglyPrefitNotBoolean => b.is_strongly_prefit() && !b.is_boolean(),
            Target::BaireNotPseudocomplete => {
                let o = self.orientation.ok_or_else(|| Error::Invalid("separation lacks an orientation".into()))?;
                b.is_ij_baire(o).verdict && !b.is_i_pseudocomplete(o, PseudoMode::Canonical)?
            }
            Target::RelativeVsPlain => {
                let o = self.orientation.ok_or_else(|| Error::Invalid("separation lacks an orientation".into()))?;
                let members = self.carrier.as_ref().ok_or_else(|| Error::Invalid("separation lacks a carrier".into()))?;
                let s = b.frame().sublocale(members.iter().copied().collect())?;
                relative_differs(&b, s, o)?
            }
            Target::Refutation => {
                let prop = self.proposition.as_deref().unwrap_or(ids::MAIN_EQUIVALENCE);
                analyze(&self.instance, &inst)?
                    .reports
                    .iter()
                    .any(|r| r.proposition == prop && r.is_refuted())
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub name: String,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orientation: Option<Orientation>,
    pub detail: Value,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Atlas {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub instances: Vec<InstanceSummary>,
    pub tallies: BTreeMap<String, Tally>,
    /// Every refuted report, in instance order.
    pub refutations: Vec<PropositionReport>,
    pub separations: Vec<Separation>,
    pub observations: Vec<Observation>,
    /// Set when a search stopped at its budget before reaching its hit count.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub budget_exhausted: bool,
}

impl Atlas {
    pub fn has_refutation(&self) -> bool {
        !self.refutations.is_empty()
    }

    pub fn tally(&self, proposition: &str) -> Tally {
        self.tallies.get(proposition).copied().unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("atlas serialises")
    }

    /// A short human-readable digest.
    pub fn to_text(&self) -> String {
        let mut out = format!("instances: {}\n", self.instances.len());
        for (p, t) in &self.tallies {
            out.push_str(&format!(
                "{p}: confirmed {} vacuous {} refuted {}\n",
                t.confirmed, t.vacuous, t.refuted
            ));
        }
        for r in &self.refutations {
            let o = r.orientation.map(|o| format!(" ({o})")).unwrap_or_default();
            out.push_str(&format!("REFUTED {} on {}{o}\n", r.proposition, r.instance));
        }
        for s in &self.separations {
            out.push_str(&format!("separation {} on {}\n", s.target, s.instance));
        }
        for o in &self.observations {
            out.push_str(&format!("observation {} on {}\n", o.name, o.instance));
        }
        if self.budget_exhausted {
            out.push_str("search budget exhausted\n");
        }
        out
    }
}

/// Everything learned from one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub summary: InstanceSummary,
    pub reports: Vec<PropositionReport>,
    pub separations: Vec<Separation>,
    pub observations: Vec<Observation>,
}

/// The bilocale an instance carries, if any: frames are read symmetrically,
/// bispaces through their induced bilocale, maps through their target.
pub fn bilocale_of(inst: &Instance) -> Option<Bilocale> {
    match inst {
        Instance::Frame(f) => Some(Bilocale::symmetric(f.clone())),
        Instance::Bilocale(b) => Some(b.clone()),
        Instance::Bispace(bs) => Some(bs.bilocale().clone()),
        Instance::Map(m) => Some(m.target().clone()),
        Instance::TopoBilocale(_) => None,
    }
}

fn key(name: &str, o: Orientation) -> String {
    format!("{name}-{o}")
}

fn bilocale_properties(b: &Bilocale) -> Result<BTreeMap<String, bool>> {
    let mut p = BTreeMap::new();
    p.insert("boolean".into(), b.is_boolean());
    p.insert("regular".into(), b.is_regular());
    p.insert("compact".into(), b.is_compact());
    p.insert("prefit".into(), b.is_prefit());
    p.insert("prefit-nonzero".into(), b.is_prefit_nonzero());
    p.insert("strongly-prefit".into(), b.is_strongly_prefit());
    for i in Side::BOTH {
        p.insert(format!("{i}-prefit"), b.is_i_prefit(i));
    }
    for o in Orientation::BOTH {
        p.insert(key("baire", o), b.is_ij_baire(o).verdict);
        p.insert(key("pseudocomplete", o), b.is_i_pseudocomplete(o, PseudoMode::Canonical)?);
        p.insert(key("submaximal", o), b.is_submaximal(o)?);
    }
    Ok(p)
}

/// Whether relative and plain `(i,j)`-Baireness differ on carrier `s`.
fn relative_differs(b: &Bilocale, s: Sublocale, o: Orientation) -> Result<bool> {
    let sub = b.subbilocale(s)?;
    Ok(b.is_relatively_ij_baire(&sub, o).verdict != sub.bilocale().is_ij_baire(o).verdict)
}

fn separations_of(id: &str, data: &Value, b: &Bilocale, p: &BTreeMap<String, bool>) -> Result<Vec<Separation>> {
    let sep = |target, orientation| Separation {
        target,
        instance: id.to_string(),
        orientation,
        carrier: None,
        proposition: None,
        data: data.clone(),
    };
    let mut out = Vec::new();
    if p["boolean"] && !(p["1-prefit"] && p["2-prefit"]) {
        out.push(sep(Target::BooleanNotPrefit, None));
    }
    if p["strongly-prefit"] && !p["boolean"] {
        out.push(sep(Target::StronglyPrefitNotBoolean, None));
    }
    for o in Orientation::BOTH {
        if p[&key("baire", o)] && !p[&key("pseudocomplete", o)] {
            out.push(sep(Target::BaireNotPseudocomplete, Some(o)));
        }
    }
    let f = b.frame();
    for o in Orientation::BOTH {
        for s in f.sublocales()?.iter().filter(|&s| !f.is_dense_sublocale(s)) {
            if relative_differs(b, s, o)? {
                out.push(Separation {
                    carrier: Some(s.members().to_vec()),
                    ..sep(Target::RelativeVsPlain, Some(o))
                });
                break;
            }
        }
    }
    Ok(out)
}

/// Witness flags that mark an observation rather than a refutation.
fn observations_of(reports: &[PropositionReport]) -> Vec<Observation> {
    let mut out = Vec::new();
    for r in reports {
        let mut note = |name: String| {
            out.push(Observation {
                name,
                instance: r.instance.clone(),
                orientation: r.orientation,
                detail: json!(r.witness),
            })
        };
        if r.witness.get("converse_holds") == Some(&json!(false)) {
            note(format!("{}-converse-fails", r.proposition));
        }
        if r.witness.get("literal_holds") == Some(&json!(false)) && r.status != Status::Vacuous {
            note(format!("{}-literal-reading-fails", r.proposition));
        }
        if r.proposition == "bispace-baire-equivalence" && r.status == Status::Vacuous && !r.conclusion {
            note("bispace-equivalence-fails-off-gate".into());
        }
    }
    out
}

/// Literal prefit (zero `y` allowed) against the nonzero reading.
fn prefit_observation(id: &str, p: &BTreeMap<String, bool>) -> Option<Observation> {
    (p["prefit"] != p["prefit-nonzero"]).then(|| Observation {
        name: "prefit-readings-differ".into(),
        instance: id.to_string(),
        orientation: None,
        detail: json!({"prefit": p["prefit"], "prefit-nonzero": p["prefit-nonzero"]}),
    })
}

fn symmetric_reports(f: &Frame, id: &str) -> Result<Vec<PropositionReport>> {
    let b = Bilocale::symmetric(f.clone());
    let mut out: Vec<_> = Orientation::BOTH
        .into_iter()
        .map(|o| {
            let v = b.is_ij_baire(o);
            PropositionReport::new(SYMMETRIC_BAIRE, id, Some(o), Default::default(), v.verdict)
                .with("intersection", json!(v.intersection))
        })
        .collect();
    let ideal = ideal_bilocale(&b)?;
    out.push(PropositionReport::new(
        IDEAL_ISOMORPHISM,
        id,
        None,
        Default::default(),
        ideal.verify_isomorphism(&b),
    ));
    Ok(out)
}

fn map_reports(m: &BiframeMap, id: &str) -> Result<Vec<PropositionReport>> {
    let mut out = vec![PropositionReport::new(MAP_ADJUNCTION, id, None, Default::default(), m.adjunction_holds())];
    for o in Orientation::BOTH {
        out.push(m.adjoint_meet_lemma(o, id));
        out.extend(m.baire_transfer_check(o, id)?);
    }
    Ok(out)
}

/// Frames at most this large also replay every enumerated map onto their
/// Booleanization.
pub const MAP_ENUMERATION_LIMIT: usize = 8;

/// Replays for a bilocale beyond the core suite: ideal transfer, and the map
/// lemmas along the identity, onto the Booleanization, and along every
/// biframe map into the Booleanization of a small frame.
fn bilocale_extras(b: &Bilocale, id: &str) -> Result<Vec<PropositionReport>> {
    let mut out = Vec::new();
    for o in Orientation::BOTH {
        out.push(noetherian_transfer_check(b, o, id)?);
    }
    out.push(ideal_density_transfer(b, id)?);
    out.extend(map_reports(&BiframeMap::identity(b), id)?);
    let boole = BiframeMap::onto_subbilocale(b, b.frame().booleanization())?;
    if b.frame().len() <= MAP_ENUMERATION_LIMIT {
        for (k, m) in enumerate_biframe_maps(b, boole.target(), MAP_ENUMERATION_LIMIT)?.iter().enumerate() {
            out.extend(map_reports(m, &format!("{id}#map{k}"))?);
        }
    }
    out.extend(map_reports(&boole, id)?);
    Ok(out)
}

fn topo_reports(t: &TopoBilocale, id: &str) -> Vec<PropositionReport> {
    let mut out = vec![t.closure_interior_identities(id)];
    for o in Orientation::BOTH {
        out.push(t.final_equivalence_replay(o, id));
        out.push(t.nowhere_dense_replay(o, id));
    }
    out
}

fn bispace_properties(bs: &Bispace, p: &mut BTreeMap<String, bool>) {
    p.insert("td".into(), bs.is_td());
    p.insert("sup-td".into(), bs.is_sup_td());
    for o in Orientation::BOTH {
        p.insert(key("almost-baire", o), bs.is_almost_ij_baire(o).verdict);
    }
}

/// Runs every applicable replay and property check on one instance.
pub fn analyze(id: &str, inst: &Instance) -> Result<Analysis> {
    let data = inst.to_json();
    let mut reports = Vec::new();
    let mut separations = Vec::new();
    let mut properties = BTreeMap::new();
    match inst {
        Instance::TopoBilocale(t) => {
            reports.extend(topo_reports(t, id));
            for o in Orientation::BOTH {
                properties.insert(key("tau-baire", o), t.is_tau_ij_baire(o).verdict);
            }
        }
        Instance::Map(m) => {
            reports.extend(map_reports(m, id)?);
            properties.insert("dense".into(), m.is_dense());
            properties.insert("onto".into(), m.is_onto());
            properties.insert("compactification".into(), m.is_compactification());
        }
        _ => {
            let b = bilocale_of(inst).expect("non-topo instances carry a bilocale");
            if let Instance::Frame(f) = inst {
                reports.extend(symmetric_reports(f, id)?);
            }
            reports.extend(replay::replay_bilocale(&b, id)?);
            reports.extend(bilocale_extras(&b, id)?);
            properties = bilocale_properties(&b)?;
            if let Instance::Bispace(bs) = inst {
                for o in Orientation::BOTH {
                    reports.push(bs.equivalence_replay(o, id)?);
                }
                reports.push(bs.density_lemma_replay(id)?);
                bispace_properties(bs, &mut properties);
            }
            separations = separations_of(id, &data, &b, &properties)?;
        }
    }
    for r in reports.iter().filter(|r| r.is_refuted()) {
        separations.push(Separation {
            target: Target::Refutation,
            instance: id.to_string(),
            orientation: r.orientation,
            carrier: None,
            proposition: Some(r.proposition.clone()),
            data: data.clone(),
        });
    }
    separations.dedup();
    let mut observations = observations_of(&reports);
    if matches!(inst.kind(), InstanceKind::Frame | InstanceKind::Bilocale | InstanceKind::Bispace) {
        observations.extend(prefit_observation(id, &properties));
    }
    Ok(Analysis {
        summary: InstanceSummary {
            id: id.to_string(),
            kind: inst.kind(),
            size: inst.size(),
            properties,
        },
        reports,
        separations,
        observations,
    })
}

fn assemble(seed: Option<u64>, mut analyses: Vec<Analysis>) -> Atlas {
    analyses.sort_by(|a, b| a.summary.id.cmp(&b.summary.id));
    let mut atlas = Atlas {
        seed,
        ..Atlas::default()
    };
    for a in analyses {
        for r in a.reports {
            atlas.tallies.entry(r.proposition.clone()).or_default().add(r.status);
            if r.is_refuted() {
                atlas.refutations.push(r);
            }
        }
        atlas.separations.extend(a.separations);
        atlas.observations.extend(a.observations);
        atlas.instances.push(a.summary);
    }
    atlas
}

/// Replays every proposition over `corpus`. The first guard or validation
/// error, in instance order, aborts the run.
pub fn verify_theorems(corpus: &[(String, Instance)], seed: Option<u64>, exec: Execution) -> Result<Atlas> {
    let analyses = exec.map(corpus, |(id, inst)| analyze(id, inst));
    let analyses = analyses.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(assemble(seed, analyses))
}

/// Counts of random instances per kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusSpec {
    pub frames: usize,
    pub bilocales: usize,
    pub bispaces: usize,
    pub topobilocales: usize,
    /// Point bound for random bispaces.
    pub bispace_points: usize,
    pub gen: GenConfig,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            frames: 0,
            bilocales: 0,
            bispaces: 0,
            topobilocales: 0,
            bispace_points: 5,
            gen: GenConfig::default(),
        }
    }
}

/// Seeded random instances with ids `random-<kind>-NNNN`. Each kind draws
/// from its own stream, so changing one count leaves the others unchanged.
pub fn random_corpus(seed: u64, spec: &CorpusSpec) -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    let id = |kind: &str, k: usize| format!("random-{kind}-{k:04}");
    let mut r = generate::rng(seed);
    for k in 0..spec.frames {
        out.push((id("frame", k), Instance::Frame(generate::random_frame(&mut r, &spec.gen))));
    }
    let mut r = generate::rng(seed.wrapping_add(1));
    for k in 0..spec.bilocales {
        out.push((id("bilocale", k), Instance::Bilocale(generate::random_bilocale(&mut r, &spec.gen))));
    }
    let mut r = generate::rng(seed.wrapping_add(2));
    for k in 0..spec.bispaces {
        let bs = generate::random_bispace(&mut r, spec.bispace_points, spec.gen.guards);
        out.push((id("bispace", k), Instance::Bispace(bs)));
    }
    let mut r = generate::rng(seed.wrapping_add(3));
    for k in 0..spec.topobilocales {
        out.push((id("topobilocale", k), Instance::TopoBilocale(generate::random_topobilocale(&mut r, &spec.gen))));
    }
    out
}

/// Instance families a search draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    Bilocale,
    /// `(L, L, L)` over random frames.
    Symmetric,
    Bispace,
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Generator> {
        match s {
            "bilocale" => Ok(Generator::Bilocale),
            "symmetric" | "frame" => Ok(Generator::Symmetric),
            "bispace" => Ok(Generator::Bispace),
            _ => Err(Error::Invalid(format!("unknown generator `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpec {
    pub target: Target,
    pub generator: Generator,
    /// Candidates drawn at most.
    pub budget: usize,
    /// Stop after this many hits.
    pub hits: usize,
    /// Proposition hunted by [`Target::Refutation`].
    pub proposition: String,
    pub bispace_points: usize,
    pub gen: GenConfig,
}

impl SearchSpec {
    pub fn new(target: Target) -> SearchSpec {
        SearchSpec {
            target,
            generator: target.default_generator(),
            budget: 500,
            hits: 1,
            proposition: ids::MAIN_EQUIVALENCE.to_string(),
            bispace_points: 5,
            gen: GenConfig::default(),
        }
    }
}

fn candidate<R: rand::Rng>(r: &mut R, spec: &SearchSpec) -> Instance {
    match spec.generator {
        Generator::Bilocale => Instance::Bilocale(generate::random_bilocale(r, &spec.gen)),
        Generator::Symmetric => Instance::Bilocale(Bilocale::symmetric(generate::random_frame(r, &spec.gen))),
        Generator::Bispace => Instance::Bispace(generate::random_bispace(r, spec.bispace_points, spec.gen.guards)),
    }
}

/// Hits of `spec.target` on one candidate, re-validated from JSON.
fn hits_on(id: &str, inst: &Instance, spec: &SearchSpec) -> Result<Vec<Separation>> {
    let found: Vec<Separation> = match spec.target {
        Target::Refutation => {
            let data = inst.to_json();
            let b = bilocale_of(inst).expect("search generators yield bilocales");
            let mut reports = replay::replay_bilocale(&b, id)?;
            if let Instance::Bispace(bs) = inst {
                for o in Orientation::BOTH {
                    reports.push(bs.equivalence_replay(o, id)?);
                }
            }
            reports
                .iter()
                .filter(|r| r.is_refuted() && r.proposition == spec.proposition)
                .map(|r| Separation {
                    target: Target::Refutation,
                    instance: id.to_string(),
                    orientation: r.orientation,
                    carrier: None,
                    proposition: Some(r.proposition.clone()),
                    data: data.clone(),
                })
                .take(1)
                .collect()
        }
        target => {
            let b = bilocale_of(inst).expect("search generators yield bilocales");
            let props = bilocale_properties(&b)?;
            separations_of(id, &inst.to_json(), &b, &props)?
                .into_iter()
                .filter(|s| s.target == target)
                .take(1)
                .collect()
        }
    };
    for s in &found {
        if !s.revalidate(inst_guards(inst))? {
            return Err(Error::Invalid(format!("search hit on {id} failed re-validation")));
        }
    }
    Ok(found)
}

fn inst_guards(inst: &Instance) -> Guards {
    match inst {
        Instance::Bispace(bs) => bs.bilocale().frame().guards(),
        other => bilocale_of(other).map(|b| b.frame().guards()).unwrap_or_default(),
    }
}

/// Draws candidates in fixed-size batches until `spec.hits` hits or the
/// budget runs out. Batches are evaluated in parallel; hits are taken in
/// draw order, so the result depends only on the seed.
pub fn search(seed: u64, spec: &SearchSpec, exec: Execution) -> Result<Atlas> {
    const BATCH: usize = 64;
    let mut r = generate::rng(seed);
    let mut atlas = Atlas {
        seed: Some(seed),
        ..Atlas::default()
    };
    let mut drawn = 0;
    while drawn < spec.budget && atlas.separations.len() < spec.hits {
        let n = BATCH.min(spec.budget - drawn);
        let batch: Vec<(String, Instance)> = (drawn..drawn + n)
            .map(|k| (format!("search-{}-{k:05}", spec.target), candidate(&mut r, spec)))
            .collect();
        drawn += n;
        let results = exec.map(&batch, |(id, inst)| hits_on(id, inst, spec));
        for ((id, inst), found) in batch.iter().zip(results) {
            let found = found?;
            if found.is_empty() || atlas.separations.len() >= spec.hits {
                continue;
            }
            atlas.instances.push(InstanceSummary {
                id: id.clone(),
                kind: inst.kind(),
                size: inst.size(),
                properties: bilocale_of(inst).map(|b| bilocale_properties(&b)).transpose()?.unwrap_or_default(),
            });
            atlas.separations.extend(found);
        }
    }
    atlas.budget_exhausted = atlas.separations.len() < spec.hits;
    Ok(atlas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::RawFrame;

    fn frame(raw: RawFrame) -> Instance {
        Instance::Frame(Frame::validate(&raw).unwrap())
    }

    #[test]
    fn empty_corpus_gives_empty_atlas() {
        let atlas = verify_theorems(&[], None, Execution::Sequential).unwrap();
        assert!(atlas.instances.is_empty());
        assert!(!atlas.has_refutation());
    }

    #[test]
    fn small_frames_confirm_everything() {
        let corpus = vec![
            ("chain3".to_string(), frame(RawFrame::chain3())),
            ("p2".to_string(), frame(RawFrame::powerset(2))),
        ];
        let atlas = verify_theorems(&corpus, None, Execution::Sequential).unwrap();
        assert!(!atlas.has_refutation(), "{}", atlas.to_text());
        assert_eq!(atlas.tally(SYMMETRIC_BAIRE).confirmed, 4);
        assert_eq!(atlas.instances[0].id, "chain3");
    }

    #[test]
    fn parallel_and_sequential_atlases_match() {
        let spec = CorpusSpec {
            frames: 6,
            bilocales: 6,
            bispaces: 4,
            topobilocales: 6,
            ..CorpusSpec::default()
        };
        let corpus = random_corpus(5, &spec);
        let a = verify_theorems(&corpus, Some(5), Execution::Sequential).unwrap();
        let b = verify_theorems(&corpus, Some(5), Execution::Parallel).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn separations_revalidate() {
        let spec = CorpusSpec {
            bilocales: 30,
            ..CorpusSpec::default()
        };
        let atlas = verify_theorems(&random_corpus(9, &spec), Some(9), Execution::Parallel).unwrap();
        for s in &atlas.separations {
            assert!(s.revalidate(Guards::default()).unwrap(), "{s:?}");
        }
    }

    #[test]
    fn target_names_round_trip() {
        for t in Target::SEPARATIONS.into_iter().chain([Target::Refutation]) {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("nope".parse::<Target>().is_err());
    }
}
