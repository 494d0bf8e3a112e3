//! Prints the shared Möbius test vectors: `cargo run -p hexpack --example moebius_vectors > testdata/moebius_vectors.json`

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(hexpack::vectors::DEFAULT_SEED);
    print!("{}", hexpack::json::to_canonical_string(&hexpack::vectors::generate(seed)));
}
