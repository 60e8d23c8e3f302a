//! Random instances for property tests and benchmarks.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Complex, Label, LabeledMatrix, Rational, Scalar};
use crate::circuit::{Circuit, Stack, Wiring};
use crate::graph::Graph;
use crate::pfaffian::{GateKind, PfGate, PfaffianCircuit, SkewMatrix};

/// Scalars that can be drawn from a bounded range.
pub trait RandomScalar: Scalar {
    /// A value with every component in `[-bound, bound]`.
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self;
}

impl RandomScalar for Rational {
    /// `p/q` with `q` in `1..=3`.
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        let q = rng.gen_range(1..=3i64);
        let p = rng.gen_range(-bound * q..=bound * q);
        Rational::new(BigInt::from(p), BigInt::from(q))
    }
}

impl RandomScalar for Complex {
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        let b = bound as f64;
        Complex64::new(rng.gen_range(-b..=b), rng.gen_range(-b..=b))
    }
}

pub fn matrix<S: RandomScalar, R: Rng + ?Sized>(rng: &mut R, rows: Vec<Label>, cols: Vec<Label>, bound: i64) -> LabeledMatrix<S> {
    let n = rows.len() * cols.len();
    let data = (0..n).map(|_| S::sample(rng, bound)).collect();
    LabeledMatrix::new(rows, cols, data).expect("caller supplies distinct labels")
}

/// `count` distinct labels drawn from `0..2 * count + 2`, in random order.
pub fn labels<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<Label> {
    let mut pool: Vec<Label> = (0..(2 * count + 2) as Label).collect();
    pool.shuffle(rng);
    pool.truncate(count);
    pool
}

/// Splits `n` into `parts` nonnegative consecutive group sizes.
fn split<R: Rng + ?Sized>(rng: &mut R, n: usize, parts: usize) -> Vec<usize> {
    let mut cuts: Vec<usize> = (0..parts - 1).map(|_| rng.gen_range(0..=n)).collect();
    cuts.sort_unstable();
    let mut sizes = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain([n]) {
        sizes.push(c - prev);
        prev = c;
    }
    sizes
}

/// A random closed circuit with `1..=max_stacks` stacks and `0..=max_wires`
/// wires per gap, random gate splits and random wirings.
pub fn circuit<S: RandomScalar, R: Rng + ?Sized>(rng: &mut R, max_stacks: usize, max_wires: usize, bound: i64) -> Circuit<S> {
    let m = rng.gen_range(1..=max_stacks);
    let widths: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=max_wires)).collect();
    circuit_with_widths(rng, &widths, bound)
}

/// A random closed circuit whose stack `k` has `widths[k]` incoming wires.
pub fn circuit_with_widths<S: RandomScalar, R: Rng + ?Sized>(rng: &mut R, widths: &[usize], bound: i64) -> Circuit<S> {
    let m = widths.len();
    let mut stacks = Vec::with_capacity(m);
    for k in 0..m {
        let (w_in, w_out) = (widths[k], widths[(k + 1) % m]);
        let parts = rng.gen_range(1..=w_in.max(w_out).max(1));
        let ins = split(rng, w_in, parts);
        let outs = split(rng, w_out, parts);
        let in_labels = labels(rng, w_in);
        let out_labels = labels(rng, w_out);
        let (mut a, mut b) = (0, 0);
        let mut gates = Vec::new();
        for (ci, ro) in ins.into_iter().zip(outs) {
            if ci + ro > 0 {
                gates.push(matrix(rng, out_labels[b..b + ro].to_vec(), in_labels[a..a + ci].to_vec(), bound));
            }
            a += ci;
            b += ro;
        }
        stacks.push(Stack::new(gates));
    }
    let wirings = (0..m)
        .map(|k| {
            let outs = stacks[k].outgoing();
            let mut ins = stacks[(k + 1) % m].incoming();
            ins.shuffle(rng);
            Wiring::new(outs.into_iter().zip(ins).collect())
        })
        .collect();
    Circuit::new(stacks, wirings).expect("generator builds valid circuits")
}

pub fn skew<S: RandomScalar, R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> SkewMatrix<S> {
    let mut upper = vec![S::zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            upper[i * n + j] = S::sample(rng, bound);
        }
    }
    SkewMatrix::from_upper((0..n as Label).collect(), |i, j| upper[i * n + j].clone()).expect("distinct labels")
}

/// A random noncrossing partition of `1..=n` into blocks listed increasingly.
pub fn noncrossing_partition<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    let mut done: Vec<Vec<usize>> = Vec::new();
    let mut open: Vec<Vec<usize>> = Vec::new();
    for e in 1..=n {
        while !open.is_empty() && rng.gen_bool(0.3) {
            done.push(open.pop().unwrap());
        }
        match open.last_mut() {
            Some(top) if rng.gen_bool(0.5) => top.push(e),
            _ => open.push(vec![e]),
        }
    }
    done.extend(open);
    done
}

/// A random Pfaffian circuit whose edge order is planar in the sense of
/// [`PfaffianCircuit::has_planar_ordering`].
pub fn planar_pfaffian<S: RandomScalar, R: Rng + ?Sized>(rng: &mut R, edges: usize, bound: i64) -> PfaffianCircuit<S> {
    let mut gates = Vec::new();
    for kind in [GateKind::State, GateKind::Costate] {
        for block in noncrossing_partition(rng, edges) {
            let m = skew(rng, block.len(), bound);
            gates.push(PfGate::new(kind, m, block).expect("sizes match"));
        }
    }
    gates.shuffle(rng);
    PfaffianCircuit::new(gates, edges).expect("each edge used once per side")
}

/// Multigraph on `n` vertices with `m` random non-loop edges.
pub fn graph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Graph {
    assert!(n >= 2 || m == 0, "edges need two vertices");
    let edges = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    Graph::new(n, edges).expect("endpoints in range")
}
