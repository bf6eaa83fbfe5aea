//! Regenerates `data/pd_codes.json`: extracts diagrams from the built-in
//! reference polynomial representatives and prints the checksummed table
//! file to stdout.
//!
//! Usage: `cargo run --release -p polyknot --example gen_pd_table > crates/core/data/pd_codes.json`

use polyknot::corpus::load_corpus;
use polyknot::diagram::extract_diagram;
use polyknot::invariants::render_pd_table;

/// Names whose representatives define the canonical codes; mirrors are
/// derived from these at load time.
const CANONICAL: [&str; 10] = [
    "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "3_1#3_1", "3_1#3_1*", "8_19",
];

fn main() {
    let corpus = load_corpus().expect("built-in corpus loads");
    let mut named = Vec::new();
    for name in CANONICAL {
        let e = corpus
            .iter()
            .find(|e| e.name == name)
            .unwrap_or_else(|| panic!("no representative for {}", name));
        let d = extract_diagram(&e.knot).expect("reference knot has a clean diagram");
        named.push((name.to_string(), d.pd_code()));
    }
    println!("{}", render_pd_table(&named));
}
