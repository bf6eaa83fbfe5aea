//! Prints the expected checksum of the built-in corpus data file; paste the
//! value into the `sha256` field of `data/corpus.json` after editing entries.

fn main() {
    println!("{}", polyknot::corpus::compute_corpus_checksum().unwrap());
}
