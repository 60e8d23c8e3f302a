//! Seeded instances shared by the benchmarks.

use detcircuit::random;
use detcircuit::{Circuit, Graph, Rational, SkewMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A closed circuit with `depth` stacks, each `width` wires wide.
pub fn circuit(width: usize, depth: usize) -> Circuit<Rational> {
    random::circuit_with_widths(&mut rng(width as u64 * 1000 + depth as u64), &vec![width; depth], 5)
}

pub fn skew(n: usize) -> SkewMatrix<Rational> {
    random::skew(&mut rng(n as u64), n, 5)
}

pub fn graph(n: usize, m: usize) -> Graph {
    random::graph(&mut rng((n * 31 + m) as u64), n, m)
}
