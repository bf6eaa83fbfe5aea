//! Built-in corpus of reference polynomial knot representations, and the
//! batch verifier reproducing the path-component tables for the
//! fixed-degree strata of degrees 5, 6 and 7.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::diagram::diagram_from_double_points;
use crate::embedding::{certify_with_projection, classify_stratum, sign_octant, PolyKnot, Stratum};
use crate::error::{Error, Result};
use crate::invariants::{identify, mirror_name, table_lookup};
use crate::resultant::double_points;

/// One reference representation: a named polynomial triple with its
/// expected degree sequence.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub source: String,
    pub knot: PolyKnot,
    pub degrees: (usize, usize, usize),
}

#[derive(Debug, Serialize, Deserialize)]
struct CorpusFile {
    version: u32,
    sha256: String,
    entries: Vec<CorpusFileEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CorpusFileEntry {
    name: String,
    source: String,
    f: String,
    g: String,
    h: String,
    degrees: [usize; 3],
}

const CORPUS_JSON: &str = include_str!("../data/corpus.json");

fn corpus_checksum(entries: &[CorpusFileEntry]) -> String {
    let bytes = serde_json::to_vec(entries).expect("serializable");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    format!("{:x}", hasher.finalize())
}

/// Load the built-in corpus, verifying its checksum.
pub fn load_corpus() -> Result<Vec<CorpusEntry>> {
    let file: CorpusFile =
        serde_json::from_str(CORPUS_JSON).map_err(|e| Error::Parse(e.to_string()))?;
    if corpus_checksum(&file.entries) != file.sha256 {
        return Err(Error::CorpusCorrupt);
    }
    file.entries
        .iter()
        .map(|e| {
            let mut knot = PolyKnot::parse(&e.f, &e.g, &e.h)?;
            knot.name = Some(e.name.clone());
            Ok(CorpusEntry {
                name: e.name.clone(),
                source: e.source.clone(),
                knot,
                degrees: (e.degrees[0], e.degrees[1], e.degrees[2]),
            })
        })
        .collect()
}

/// Expected checksum line for a corpus data blob (regeneration helper).
pub fn compute_corpus_checksum() -> Result<String> {
    let file: CorpusFile =
        serde_json::from_str(CORPUS_JSON).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(corpus_checksum(&file.entries))
}

/// Verification record for a single corpus entry.
#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub embedding: bool,
    pub stratum_ok: bool,
    pub identified: String,
    pub identity_ok: bool,
    pub crossings: usize,
    pub crossing_bound: usize,
    pub crossings_ok: bool,
    pub octants_distinct: bool,
    pub ok: bool,
    pub failure: Option<String>,
}

/// Aggregate verification report, with the per-stratum path-component
/// lower bounds recomputed from the verified knot lists.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
    pub components_deg5: usize,
    pub components_deg6: usize,
    pub components_deg7: usize,
    pub all_ok: bool,
}

/// Is the named knot type amphichiral, judged by its table Jones polynomial?
fn achiral(name: &str) -> bool {
    table_lookup(name).is_some_and(|v| v.is_palindromic())
}

/// Path components contributed by one knot type in a fixed-degree stratum:
/// 8 for the unknot or an amphichiral type, otherwise 4 for each member of
/// the chiral pair (the mirror is counted by its own name).
fn octant_contribution(name: &str) -> usize {
    if name == "0_1" || achiral(name) {
        8
    } else {
        4
    }
}

fn component_count(names: &[String]) -> usize {
    let mut seen: Vec<&str> = Vec::new();
    let mut total = 0;
    for n in names {
        if seen.contains(&n.as_str()) {
            continue;
        }
        seen.push(n);
        total += octant_contribution(n);
    }
    total
}

fn verify_entry(e: &CorpusEntry) -> EntryReport {
    let mut report = EntryReport {
        name: e.name.clone(),
        embedding: false,
        stratum_ok: false,
        identified: String::new(),
        identity_ok: false,
        crossings: 0,
        crossing_bound: 0,
        crossings_ok: false,
        octants_distinct: false,
        ok: false,
        failure: None,
    };
    let fail = |mut r: EntryReport, msg: String| {
        r.failure = Some(msg);
        r
    };

    let (d1, d2, d3) = e.degrees;
    report.stratum_ok = e.knot.degree_sequence()
        == (
            crate::poly::Degree::Finite(d1),
            crate::poly::Degree::Finite(d2),
            crate::poly::Degree::Finite(d3),
        )
        && classify_stratum(&e.knot, d3) == Stratum::InPdTilde;

    // one double-point computation feeds both the embedding certificate
    // and the diagram
    let pts = match double_points(&e.knot.f, &e.knot.g) {
        Ok(pts) => pts,
        Err(err) => return fail(report, format!("projection analysis failed: {}", err)),
    };
    match certify_with_projection(&e.knot, &pts) {
        Ok(cert) => report.embedding = cert.embedding,
        Err(err) => return fail(report, format!("embedding check failed: {}", err)),
    }
    if !report.embedding {
        return fail(report, "not certified as an embedding".to_string());
    }

    let dg = match diagram_from_double_points(&e.knot, &pts) {
        Ok(dg) => dg,
        Err(err) => return fail(report, format!("diagram extraction failed: {}", err)),
    };
    report.crossings = dg.crossing_count();
    report.crossing_bound = (d3 - 2) * (d3 - 3) / 2;
    report.crossings_ok = report.crossings <= report.crossing_bound;

    match identify(&dg) {
        Ok(id) => {
            report.identified = id.name.clone();
            report.identity_ok = id.name == e.name;
        }
        Err(err) => return fail(report, format!("identification failed: {}", err)),
    }

    // the eight sign variants must land in eight distinct octants
    let mut octants = Vec::new();
    for e1 in [1, -1] {
        for e2 in [1, -1] {
            for e3 in [1, -1] {
                match sign_octant(&e.knot.signed(e1, e2, e3)) {
                    Ok(o) => octants.push(o),
                    Err(err) => return fail(report, format!("octant failed: {}", err)),
                }
            }
        }
    }
    octants.sort_by_key(|o| (o.e1, o.e2, o.e3));
    octants.dedup();
    report.octants_distinct = octants.len() == 8;

    report.ok = report.embedding
        && report.stratum_ok
        && report.identity_ok
        && report.crossings_ok
        && report.octants_distinct;
    if !report.ok && report.failure.is_none() {
        report.failure = Some(format!(
            "mismatch: stratum_ok={} identified={} crossings={}/{} octants_distinct={}",
            report.stratum_ok,
            report.identified,
            report.crossings,
            report.crossing_bound,
            report.octants_distinct
        ));
    }
    report
}

/// Verify every corpus entry (in parallel) and rebuild the path-component
/// lower bounds for the fixed-degree strata of degrees 5, 6 and 7.
pub fn verify_corpus() -> Result<CorpusReport> {
    let corpus = load_corpus()?;
    let entries: Vec<EntryReport> = std::thread::scope(|s| {
        let handles: Vec<_> = corpus
            .iter()
            .map(|e| s.spawn(move || verify_entry(e)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    // knot lists per stratum: every verified name whose top degree fits,
    // together with its mirror partner (realizable by negating h), plus
    // the unknot which embeds in every stratum
    let mut names5 = vec!["0_1".to_string()];
    let mut names6 = vec!["0_1".to_string()];
    let mut names7 = vec!["0_1".to_string()];
    for (e, r) in corpus.iter().zip(&entries) {
        if !r.identity_ok {
            continue;
        }
        let mirror = mirror_name(&e.name);
        let push = |names: &mut Vec<String>| {
            names.push(e.name.clone());
            if !achiral(&e.name) {
                names.push(mirror.clone());
            }
        };
        if e.degrees.2 <= 5 {
            push(&mut names5);
        }
        if e.degrees.2 <= 6 {
            push(&mut names6);
        }
        if e.degrees.2 <= 7 {
            push(&mut names7);
        }
    }
    // lower-degree representatives lift into higher strata
    let lift6 = names5.clone();
    let lift7: Vec<String> = names6.iter().chain(names5.iter()).cloned().collect();
    let names6: Vec<String> = names6.into_iter().chain(lift6).collect();
    let names7: Vec<String> = names7.into_iter().chain(lift7).collect();

    let all_ok = entries.iter().all(|r| r.ok);
    Ok(CorpusReport {
        entries,
        components_deg5: component_count(&names5),
        components_deg6: component_count(&names6),
        components_deg7: component_count(&names7),
        all_ok,
    })
}
