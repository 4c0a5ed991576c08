//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 7 is expected to fail: `i`-open subbilocales of an `(i,j)`-Baire
//! bilocale need not be `(i,j)`-Baire, and the shipped corpus contains the
//! eight-element counterexample. Any other failure, or criterion 7 starting
//! to pass, makes this target exit nonzero.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::ExitCode;

use bilocale_core::atlas::{self, Atlas, CorpusSpec};
use bilocale_core::bispace::Bispace;
use bilocale_core::ideal::{ideal_bilocale, noetherian_transfer_check};
use bilocale_core::io::{self, Instance};
use bilocale_core::replay::ids;
use bilocale_core::{generate, Bilocale, Execution, Guards, Orientation, Side, Status};

const SEED: u64 = 2024;
const EXPECTED_RED: &[u8] = &[7];

fn corpus() -> Vec<(String, Instance)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus");
    io::load_corpus(&dir, Guards::default()).expect("fixture corpus loads")
}

fn random_spec() -> CorpusSpec {
    CorpusSpec {
        frames: 200,
        bilocales: 500,
        bispaces: 300,
        topobilocales: 200,
        ..CorpusSpec::default()
    }
}

struct Run {
    fixtures: Vec<(String, Instance)>,
    atlas: Atlas,
}

fn refuted(atlas: &Atlas, props: &[&str]) -> Vec<String> {
    atlas
        .refutations
        .iter()
        .filter(|r| props.contains(&r.proposition.as_str()))
        .map(|r| format!("{} on {}", r.proposition, r.instance))
        .collect()
}

fn c1_four_point_example(run: &Run) -> Result<String, String> {
    let Some((_, Instance::Bispace(bs))) = run.fixtures.iter().find(|(id, _)| id == "four_point_boolean") else {
        return Err("four_point_boolean fixture missing".into());
    };
    let b = bs.bilocale();
    let got = (b.is_boolean(), b.is_i_prefit(Side::First), b.is_i_prefit(Side::Second));
    if got == (true, false, false) {
        Ok("Boolean=true, 1-prefit=false, 2-prefit=false".into())
    } else {
        Err(format!("got (Boolean, 1-prefit, 2-prefit) = {got:?}"))
    }
}

fn c2_symmetric(_: &Run) -> Result<String, String> {
    let mut r = generate::rng(SEED);
    let cfg = generate::GenConfig::default();
    for k in 0..200 {
        let b = Bilocale::symmetric(generate::random_frame(&mut r, &cfg));
        for o in Orientation::BOTH {
            if !b.is_ij_baire(o).verdict || !common::baire_all_subfamilies(&b, o) {
                return Err(format!("frame {k} is not {o}-Baire"));
            }
        }
    }
    Ok("200 random frames, both orientations".into())
}

fn c3_main_theorem(run: &Run) -> Result<String, String> {
    let bad = refuted(&run.atlas, &[ids::MAIN_EQUIVALENCE]);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    // Gate-passing random bilocales: both orientations confirmed.
    let random: BTreeSet<&str> = run
        .atlas
        .instances
        .iter()
        .filter(|s| s.id.starts_with("random-bilocale-"))
        .map(|s| s.id.as_str())
        .collect();
    let t = run.atlas.tally(ids::MAIN_EQUIVALENCE);
    if random.len() < 500 || t.confirmed < 2 * 500 {
        return Err(format!("only {} random bilocales, {} confirmed", random.len(), t.confirmed));
    }
    Ok(format!("{} confirmed, {} vacuous, 0 refuted", t.confirmed, t.vacuous))
}

fn frames_of(run: &Run) -> Vec<bilocale_core::Frame> {
    run.fixtures
        .iter()
        .filter_map(|(_, inst)| atlas::bilocale_of(inst).map(|b| b.frame().clone()))
        .collect()
}

fn c4_oracles(run: &Run) -> Result<String, String> {
    let mut frames = 0;
    for f in frames_of(run).iter().filter(|f| f.len() <= 12) {
        let mut found: Vec<u64> = f.sublocales().map_err(|e| e.to_string())?.iter().map(|s| s.members().bits()).collect();
        found.sort_unstable();
        if found != common::powerset_sublocales(f) {
            return Err(format!("sublocale enumeration differs on a {}-element frame", f.len()));
        }
        frames += 1;
    }
    let mut r = generate::rng(SEED + 7);
    let mut bilocales: Vec<Bilocale> = run.fixtures.iter().filter_map(|(_, i)| atlas::bilocale_of(i)).collect();
    bilocales.extend((0..300).map(|_| generate::random_bilocale(&mut r, &Default::default())));
    let mut checked = 0;
    for b in &bilocales {
        for o in Orientation::BOTH {
            if common::dense_opens(b, o).len() <= 5 {
                if b.is_ij_baire(o).verdict != common::baire_all_subfamilies(b, o) {
                    return Err(format!("worst-family verdict differs on {:?}", b.to_raw()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{frames} fixture frames enumerated; {checked} Baire verdicts cross-checked"))
}

fn c5_bispaces(run: &Run) -> Result<String, String> {
    let bad = refuted(&run.atlas, &["bispace-baire-equivalence", "bispace-density-lemma"]);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let fixture_bispaces: Vec<&Bispace> = run
        .fixtures
        .iter()
        .filter_map(|(_, i)| match i {
            Instance::Bispace(bs) => Some(bs),
            _ => None,
        })
        .collect();
    let t = run.atlas.tally("bispace-baire-equivalence");
    let gated_instances = t.confirmed / 2;
    if gated_instances < 100 {
        return Err(format!("only {gated_instances} gated bispaces"));
    }
    Ok(format!(
        "{} gated bispace instances confirmed in both orientations ({} fixtures), {} vacuous reports",
        gated_instances,
        fixture_bispaces.len(),
        t.vacuous
    ))
}

fn c6_ideals(run: &Run) -> Result<String, String> {
    let mut n = 0;
    for (id, inst) in &run.fixtures {
        let Some(b) = atlas::bilocale_of(inst) else { continue };
        for o in Orientation::BOTH {
            let r = noetherian_transfer_check(&b, o, id).map_err(|e| e.to_string())?;
            if r.status != Status::Confirmed {
                return Err(format!("{id} ({o}): {:?}", r.status));
            }
        }
        if !ideal_bilocale(&b).map_err(|e| e.to_string())?.verify_isomorphism(&b) {
            return Err(format!("↓-isomorphism fails on {id}"));
        }
        n += 1;
    }
    let iso = run.atlas.tally(atlas::IDEAL_ISOMORPHISM);
    if iso.vacuous + iso.refuted > 0 {
        return Err("↓-isomorphism fails on a random frame".into());
    }
    Ok(format!("{n} fixtures agree; ↓-isomorphism on {} random frames", iso.confirmed))
}

fn c7_heredity(run: &Run) -> Result<String, String> {
    let props = [
        ids::DENSE_HEREDITY,
        ids::DENSE_SUFFICIENCY,
        ids::BOOLEANIZATION,
        ids::SUBMAXIMAL,
        ids::OPEN_HEREDITY,
        ids::RELATIVE_COINCIDENCE,
        ids::NU_DENSE,
        ids::DENSE_OPEN_TRACE,
        ids::DENSE_SUBLOCALE,
    ];
    let bad = refuted(&run.atlas, &props);
    if bad.is_empty() {
        Ok("no refutations".into())
    } else {
        Err(format!("{} refuted: {}", bad.len(), bad.join("; ")))
    }
}

fn c8_topobilocales(run: &Run) -> Result<String, String> {
    let props = ["tau-closure-interior-identities", "tau-baire-equivalence", "tau-nowhere-dense-complement"];
    let bad = refuted(&run.atlas, &props);
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    let n = run.atlas.tally(props[0]).confirmed;
    if n < 200 {
        return Err(format!("only {n} topobilocales"));
    }
    Ok(format!("{n} topobilocales, all three replays confirmed"))
}

fn c9_determinism(run: &Run) -> Result<String, String> {
    let spec = CorpusSpec {
        frames: 40,
        bilocales: 60,
        bispaces: 40,
        topobilocales: 40,
        ..CorpusSpec::default()
    };
    let once = || {
        let mut c = corpus();
        c.extend(atlas::random_corpus(SEED, &spec));
        c
    };
    let a = atlas::verify_theorems(&once(), Some(SEED), Execution::Parallel).map_err(|e| e.to_string())?;
    let b = atlas::verify_theorems(&once(), Some(SEED), Execution::Parallel).map_err(|e| e.to_string())?;
    let c = atlas::verify_theorems(&once(), Some(SEED), Execution::Sequential).map_err(|e| e.to_string())?;
    let (ja, jb, jc) = (a.to_json(), b.to_json(), c.to_json());
    if ja != jb || ja != jc {
        return Err("atlas bytes differ between runs".into());
    }
    let _ = run;
    Ok(format!("three runs, {} identical bytes", ja.len()))
}

type Criterion = fn(&Run) -> Result<String, String>;

fn main() -> ExitCode {
    let fixtures = corpus();
    let mut all = fixtures.clone();
    all.extend(atlas::random_corpus(SEED, &random_spec()));
    let atlas = atlas::verify_theorems(&all, Some(SEED), Execution::Parallel).expect("verify_theorems runs");
    let run = Run { fixtures, atlas };

    let criteria: [(u8, &str, Criterion); 9] = [
        (1, "four-point example reproduction", c1_four_point_example),
        (2, "symmetric bilocales are Baire", c2_symmetric),
        (3, "main-theorem regression", c3_main_theorem),
        (4, "oracle equivalence", c4_oracles),
        (5, "bispace equivalence", c5_bispaces),
        (6, "Noetherian/ideal transfer", c6_ideals),
        (7, "subbilocale heredity suite", c7_heredity),
        (8, "topobilocale suite", c8_topobilocales),
        (9, "determinism", c9_determinism),
    ];
    let mut unexpected = Vec::new();
    for (n, name, check) in criteria {
        let outcome = check(&run);
        match &outcome {
            Ok(detail) => println!("PASS {n} {name}: {detail}"),
            Err(detail) => println!("FAIL {n} {name}: {detail}"),
        }
        if outcome.is_ok() == EXPECTED_RED.contains(&n) {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: outcome matches expectations (expected red: {EXPECTED_RED:?})");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
