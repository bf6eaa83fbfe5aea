//! Diagram invariants: Kauffman bracket, Jones polynomial, determinant,
//! and table-driven knot identification.
//!
//! The identification table is built at startup by running the bracket on
//! canonical planar-diagram codes shipped in `data/pd_codes.json`; mirrors
//! come from the exponent-reversal symmetry of Jones, composites from its
//! multiplicativity under connected sum. No Jones coefficients are
//! hard-coded anywhere.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// State-sum cap: diagrams with more crossings are rejected.
pub const MAX_STATE_SUM_CROSSINGS: usize = 16;

/// Outcome of table identification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnotId {
    /// A table name like `3_1`, `6_2*`, `3_1#3_1*`, or `unknown`.
    pub name: String,
    /// Which invariants agreed with the table entry.
    pub matched_by: Vec<String>,
}

/// Sign of a planar-diagram tuple under the counterclockwise-from-under-in
/// labeling: positive when the over strand leaves at the `b` slot.
pub fn pd_tuple_sign(x: &[usize; 4], edges: usize) -> Result<i8> {
    let next = |e: usize| if e == edges { 1 } else { e + 1 };
    match (x[1] == next(x[3]), x[3] == next(x[1])) {
        (true, false) => Ok(1),
        (false, true) => Ok(-1),
        // two-edge wraparound (a single kink) satisfies both adjacencies;
        // the ccw listing then puts the over-out edge at `b` exactly when
        // it coincides with the under-in edge
        (true, true) => Ok(if x[1] == x[0] { 1 } else { -1 }),
        (false, false) => Err(Error::WrongShape),
    }
}

/// Writhe read off a planar-diagram code.
pub fn writhe_of_pd(pd: &[[usize; 4]]) -> Result<i64> {
    let edges = 2 * pd.len();
    let mut w = 0i64;
    for x in pd {
        w += pd_tuple_sign(x, edges)? as i64;
    }
    Ok(w)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Reduced Kauffman bracket of a planar-diagram code, in the variable `A`:
/// full state sum, loop value `-A^2 - A^-2`, normalized so the unknot is 1.
pub fn kauffman_bracket_pd(pd: &[[usize; 4]]) -> Result<LaurentPoly> {
    let k = pd.len();
    if k > MAX_STATE_SUM_CROSSINGS {
        return Err(Error::TooManyCrossings {
            got: k,
            max: MAX_STATE_SUM_CROSSINGS,
        });
    }
    if k == 0 {
        return Ok(LaurentPoly::one());
    }
    let edges = 2 * k;
    for x in pd {
        pd_tuple_sign(x, edges)?; // validates tuple shape
        if x.iter().any(|&e| e == 0 || e > edges) {
            return Err(Error::WrongShape);
        }
    }

    // delta^m for m = loops - 1 in 0..=k
    let delta = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let mut delta_pow = vec![LaurentPoly::one()];
    for i in 1..=k {
        delta_pow.push(delta_pow[i - 1].mul(&delta));
    }

    let mut bracket = LaurentPoly::zero();
    for state in 0u32..(1 << k) {
        let mut uf = UnionFind::new(edges);
        let mut a_count = 0i64;
        for (i, x) in pd.iter().enumerate() {
            let (a, b, c, d) = (x[0] - 1, x[1] - 1, x[2] - 1, x[3] - 1);
            if state & (1 << i) == 0 {
                // A-smoothing opens the regions swept from the under strand
                // counterclockwise to the over strand
                a_count += 1;
                uf.union(a, b);
                uf.union(c, d);
            } else {
                uf.union(a, d);
                uf.union(b, c);
            }
        }
        let mut loops = 0usize;
        for e in 0..edges {
            if uf.find(e) == e {
                loops += 1;
            }
        }
        let b_count = k as i64 - a_count;
        bracket = bracket.add(&delta_pow[loops - 1].mul_monomial(&BigInt::from(1), a_count - b_count));
    }
    Ok(bracket)
}

/// Jones polynomial in `t` from a planar-diagram code:
/// `V = (-A^3)^{-w} * bracket`, then `A = t^{-1/4}`.
pub fn jones_pd(pd: &[[usize; 4]]) -> Result<LaurentPoly> {
    let w = writhe_of_pd(pd)?;
    let bracket = kauffman_bracket_pd(pd)?;
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = bracket.mul_monomial(&BigInt::from(sign), -3 * w);
    // A-exponent e becomes t-exponent -e/4; knots always land on integers
    normalized.shrink_exponents(-4)
}

/// Reduced Kauffman bracket of a diagram, in the variable `A`.
pub fn kauffman_bracket(dg: &KnotDiagram) -> Result<LaurentPoly> {
    kauffman_bracket_pd(&dg.pd_code())
}

/// Jones polynomial of a diagram, in the variable `t`.
pub fn jones(dg: &KnotDiagram) -> Result<LaurentPoly> {
    jones_pd(&dg.pd_code())
}

/// Knot determinant `|V(-1)|`.
pub fn determinant(dg: &KnotDiagram) -> Result<u64> {
    let v = jones(dg)?;
    Ok(v.eval_at_minus_one().abs().to_u64().unwrap_or(u64::MAX))
}

#[derive(Debug, Serialize, Deserialize)]
struct PdTableFile {
    version: u32,
    sha256: String,
    knots: Vec<PdTableEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PdTableEntry {
    name: String,
    pd: Vec<[usize; 4]>,
}

/// Hex SHA-256 of the canonical serialization of the table entries.
fn table_checksum(knots: &[PdTableEntry]) -> String {
    let bytes = serde_json::to_vec(knots).expect("serializable");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    format!("{:x}", hasher.finalize())
}

const PD_TABLE_JSON: &str = include_str!("../data/pd_codes.json");

fn load_pd_table() -> Result<Vec<PdTableEntry>> {
    let file: PdTableFile =
        serde_json::from_str(PD_TABLE_JSON).map_err(|e| Error::Parse(e.to_string()))?;
    if table_checksum(&file.knots) != file.sha256 {
        return Err(Error::CorpusCorrupt);
    }
    Ok(file.knots)
}

/// Name of the mirror knot type: star-toggle every connected summand.
pub fn mirror_name(name: &str) -> String {
    name.split('#')
        .map(|part| {
            if let Some(stripped) = part.strip_suffix('*') {
                stripped.to_string()
            } else {
                format!("{}*", part)
            }
        })
        .collect::<Vec<_>>()
        .join("#")
}

/// The full name → Jones table: every stored canonical code contributes its
/// own entry, plus a mirror entry by exponent reversal when chiral.
fn reference_table() -> &'static Vec<(String, LaurentPoly)> {
    static TABLE: OnceLock<Vec<(String, LaurentPoly)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let entries = load_pd_table().expect("valid built-in table");
        let mut table = vec![("0_1".to_string(), LaurentPoly::one())];
        for e in &entries {
            let v = jones_pd(&e.pd).expect("valid built-in PD code");
            if !v.is_palindromic() {
                table.push((mirror_name(&e.name), v.invert_variable()));
            }
            table.push((e.name.clone(), v));
        }
        table
    })
}

/// Jones polynomial of a named table entry, if present.
pub fn table_lookup(name: &str) -> Option<LaurentPoly> {
    reference_table()
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, v)| v.clone())
}

/// All names the identification table can return (besides `unknown`).
pub fn table_names() -> Vec<String> {
    reference_table().iter().map(|(n, _)| n.clone()).collect()
}

/// Identify a diagram by exact Jones equality against the reference table.
pub fn identify(dg: &KnotDiagram) -> Result<KnotId> {
    let v = jones(dg)?;
    for (name, table_v) in reference_table() {
        if v == *table_v {
            let mut matched_by = vec!["jones".to_string()];
            let det = v.eval_at_minus_one().abs();
            if det == table_v.eval_at_minus_one().abs() {
                matched_by.push("determinant".to_string());
            }
            return Ok(KnotId {
                name: name.clone(),
                matched_by,
            });
        }
    }
    Ok(KnotId {
        name: "unknown".to_string(),
        matched_by: vec![],
    })
}

/// Render the table data file for a set of named PD codes (regeneration
/// helper; the output is what ships in `data/pd_codes.json`).
pub fn render_pd_table(named: &[(String, Vec<[usize; 4]>)]) -> String {
    let knots: Vec<PdTableEntry> = named
        .iter()
        .map(|(name, pd)| PdTableEntry {
            name: name.clone(),
            pd: pd.clone(),
        })
        .collect();
    let file = PdTableFile {
        version: 1,
        sha256: table_checksum(&knots),
        knots,
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}
