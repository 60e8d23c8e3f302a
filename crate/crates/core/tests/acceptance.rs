//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use detcircuit::algebra::{compose, determinant, int, principal_minor_sum, LabeledMatrix, Rational, Scalar, COMPLEX_TOLERANCE};
use detcircuit::circuit::{evaluate, Circuit, Stack};
use detcircuit::compiler::{compile, max_gate_dim, skew_embed};
use detcircuit::graph::{
    count_rooted_forests, count_spanning_trees, enumerate_forests, enumerate_trees, forest_polynomial,
    graph_to_circuit, laplacian_cofactors, root_histogram, Graph,
};
use detcircuit::oracle::{contract_circuit, enumerate_multicycles, sdet_expand, tensor_compose, DEFAULT_CAP};
use detcircuit::pfaffian::{anti_transpose, eval_pfaffian_circuit, pfaffian, pfaffian_oracle, SkewMatrix};
use detcircuit::random::{self, RandomScalar};
use detcircuit::Complex;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MINOR_SUM_BUDGET: Duration = Duration::from_secs(30);
const CENSUS_BUDGET: Duration = Duration::from_secs(60);
/// Compiled size may grow by at most this factor times the largest gate dimension.
const SIZE_FACTOR: i64 = 24;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn square(rng: &mut ChaCha8Rng, n: usize) -> LabeledMatrix<Rational> {
    random::matrix(rng, (0..n as u32).collect(), (0..n as u32).collect(), 5)
}

fn minor_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(101);
    for case in 0..200 {
        let n = rng.gen_range(0..=10);
        let m = square(&mut rng, n);
        let explicit: Rational = (0..1usize << n)
            .map(|mask| {
                let pos: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                determinant(&m.submatrix(&pos, &pos)).unwrap()
            })
            .sum();
        ensure!(principal_minor_sum(&m).unwrap() == explicit, "case {case} ({n}x{n}) differs");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < MINOR_SUM_BUDGET, "took {elapsed:.1?}");
    Ok(format!("200 matrices up to 10x10, exact, {elapsed:.1?} (budget {MINOR_SUM_BUDGET:?})"))
}

fn functoriality() -> Outcome {
    let mut rng = rng(102);
    for case in 0..200 {
        let [a, b, c] = [0; 3].map(|_| rng.gen_range(0..=4u32));
        let n: LabeledMatrix<Rational> = random::matrix(&mut rng, (0..a).collect(), (100..100 + b).collect(), 5);
        let m: LabeledMatrix<Rational> = random::matrix(&mut rng, (100..100 + b).collect(), (200..200 + c).collect(), 5);
        let lhs = sdet_expand(&compose(&n, &m).unwrap()).unwrap();
        let rhs = tensor_compose(&sdet_expand(&n).unwrap(), &sdet_expand(&m).unwrap()).unwrap();
        ensure!(lhs == rhs, "case {case} ({a}x{b} by {b}x{c}) differs");
    }
    Ok("200 composable pairs up to 4x4, exact".into())
}

fn fast_vs_oracle() -> Outcome {
    let mut rng = rng(103);
    for case in 0..100 {
        let c: Circuit<Rational> = random::circuit(&mut rng, 4, 4, 5);
        let fast = evaluate(&c).unwrap();
        let slow = contract_circuit(&c).unwrap();
        let cycles = enumerate_multicycles(&c).unwrap().total;
        ensure!(fast == slow && fast == cycles, "rational case {case}: {fast} / {slow} / {cycles}");
    }
    let mut worst = 0.0f64;
    for case in 0..100 {
        let c: Circuit<Complex> = random::circuit(&mut rng, 4, 4, 5);
        let fast = evaluate(&c).unwrap();
        let slow = contract_circuit(&c).unwrap();
        let cycles = enumerate_multicycles(&c).unwrap().total;
        ensure!(fast.approx_eq(&slow) && fast.approx_eq(&cycles), "complex case {case}: {fast} / {slow} / {cycles}");
        let scale = fast.norm().max(1.0);
        worst = worst.max((fast - slow).norm() / scale).max((fast - cycles).norm() / scale);
    }
    Ok(format!(
        "100 rational exact, 100 complex within relative {COMPLEX_TOLERANCE:e} (max relative deviation {worst:.1e})"
    ))
}

fn single_gate_example() -> Outcome {
    let mut rng = rng(104);
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let v = Rational::sample(rng, 5);
        if !v.is_zero() {
            return v;
        }
    };
    let mut done = 0;
    while done < 5 {
        let [a, b, c, d] = [0; 4].map(|_| nonzero(&mut rng));
        let minor = &a * &d - &b * &c;
        if minor.is_zero() {
            continue;
        }
        let g = LabeledMatrix::new(vec![1, 2], vec![1, 2], vec![a.clone(), b, c, d.clone()]).unwrap();
        let circuit = Circuit::with_default_wirings(vec![Stack::new(vec![g])], vec![None]).unwrap();
        let formula = int(1) + &a + &d + &minor;
        let value = evaluate(&circuit).unwrap();
        ensure!(value == formula, "value {value} vs formula {formula}");
        let mut weights: Vec<Rational> = enumerate_multicycles(&circuit).unwrap().entries.into_iter().map(|e| e.weight).collect();
        let mut expected = vec![int(1), a, d, minor];
        weights.sort();
        expected.sort();
        ensure!(weights == expected, "weights {weights:?} vs {expected:?}");
        done += 1;
    }
    Ok("5 instantiations match 1+a+d+ad-bc with weights {1, a, d, ad-bc}".into())
}

fn pfaffian_correctness() -> Outcome {
    let mut rng = rng(105);
    for case in 0..100 {
        let n = rng.gen_range(0..=12);
        let m: SkewMatrix<Rational> = random::skew(&mut rng, n, 5);
        let pf = pfaffian(&m);
        ensure!(pf == pfaffian_oracle(&m).unwrap(), "case {case} ({n}x{n}) differs from pairing sum");
        ensure!(&pf * &pf == determinant(&m.to_labeled()).unwrap(), "case {case}: square is not the determinant");
        ensure!(pfaffian(&anti_transpose(&m)) == pf, "case {case}: anti-transpose changes the value");
    }
    for _ in 0..5 {
        let (a, b) = (Rational::sample(&mut rng, 5), Rational::sample(&mut rng, 5));
        let n = SkewMatrix::from_upper(vec![1, 2, 3, 4], |i, j| match (i, j) {
            (0, 2) => a.clone(),
            (1, 3) => b.clone(),
            _ => int(0),
        })
        .unwrap();
        ensure!(pfaffian(&n) == -(&a * &b), "crossing pair example gives {}", pfaffian(&n));
    }
    Ok("100 skew matrices up to 12x12 exact; square = det; anti-transpose invariant; crossing pair = -ab".into())
}

fn skew_embedding() -> Outcome {
    let mut rng = rng(106);
    for case in 0..100 {
        let n = rng.gen_range(0..=6);
        let m: LabeledMatrix<Rational> = random::matrix(&mut rng, (0..n).collect(), (10..10 + n).collect(), 5);
        ensure!(pfaffian(&skew_embed(&m).unwrap()) == determinant(&m).unwrap(), "case {case} ({n}x{n})");
    }
    let bits = |mask: usize| -> Vec<usize> { (0..3).filter(|i| mask >> (2 - i) & 1 == 1).collect() };
    for case in 0..10 {
        let m: LabeledMatrix<Rational> = random::matrix(&mut rng, vec![0, 1, 2], vec![3, 4, 5], 5);
        let s = skew_embed(&m).unwrap();
        for rmask in 0..8 {
            for cmask in 0..8 {
                let (rows, cols) = (bits(rmask), bits(cmask));
                let mut k = rows.clone();
                k.extend(cols.iter().rev().map(|&j| 5 - j));
                let expected = if rows.len() == cols.len() { determinant(&m.submatrix(&rows, &cols)).unwrap() } else { int(0) };
                ensure!(pfaffian(&s.principal(&k)) == expected, "3x3 case {case}, rows {rows:?} cols {cols:?}");
            }
        }
    }
    Ok("100 squares up to 6x6 exact; all 64 sub-Pfaffians of 10 3x3 embeddings equal minors".into())
}

fn compiler_preserves_value() -> Outcome {
    let mut rng = rng(107);
    let mut worst = int(0);
    let mut checked = 0;
    while checked < 50 {
        let c: Circuit<Rational> = random::circuit(&mut rng, 4, 4, 5);
        if c.total_wires() > DEFAULT_CAP {
            continue;
        }
        let out = compile(&c).unwrap();
        let (fast, target) = (evaluate(&c).unwrap(), eval_pfaffian_circuit(&out.target));
        ensure!(fast == target, "case {checked}: source {fast}, compiled {target}");
        ensure!(out.target.has_planar_ordering(), "case {checked}: layout is not planar");
        let dim = max_gate_dim(&c).max(1);
        ensure!(
            out.size_ratio <= int(SIZE_FACTOR * dim as i64),
            "case {checked}: size ratio {} exceeds {SIZE_FACTOR} x {dim}",
            out.size_ratio
        );
        worst = worst.max(out.size_ratio / int(dim as i64));
        checked += 1;
    }
    let worst = worst.to_f64().unwrap_or(f64::NAN);
    Ok(format!("50 circuits exact; size ratio per unit gate dim at most {worst:.2} (bound {SIZE_FACTOR})"))
}

fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1usize << pairs.len())
        .map(move |mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            Graph::new(n, edges).unwrap()
        })
        .filter(Graph::is_connected)
}

fn graph_counts() -> Outcome {
    let big = BigInt::from;
    let k3 = Graph::complete(3);
    ensure!(count_rooted_forests(&k3) == big(16), "K3 forests {}", count_rooted_forests(&k3));
    ensure!(forest_polynomial(&k3) == [0, 9, 6, 1].map(big), "K3 polynomial {:?}", forest_polynomial(&k3));
    ensure!(count_spanning_trees(&k3) == big(3), "K3 trees");
    let edge = Graph::new(2, vec![(0, 1)]).unwrap();
    ensure!(count_rooted_forests(&edge) == big(3), "single edge forests");
    ensure!(count_spanning_trees(&Graph::complete(4)) == big(16), "K4 trees");

    let start = Instant::now();
    let mut graphs = 0;
    for n in 1..=5 {
        for g in connected_graphs(n) {
            let forests = enumerate_forests(&g).unwrap();
            let count = count_rooted_forests(&g);
            ensure!(count == big(forests.len() as i64), "forest count on {:?}", g.edges());
            ensure!(forest_polynomial(&g) == root_histogram(&forests, n), "polynomial on {:?}", g.edges());
            ensure!(
                count_spanning_trees(&g) == big(enumerate_trees(&g).unwrap().len() as i64),
                "tree count on {:?}",
                g.edges()
            );
            ensure!(evaluate(&graph_to_circuit(&g)).unwrap() == Rational::from_integer(count), "circuit on {:?}", g.edges());
            graphs += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < CENSUS_BUDGET, "census took {elapsed:.1?}");
    Ok(format!(
        "named values hold; census of {graphs} connected graphs on <= 5 vertices exact, {elapsed:.1?} (budget {CENSUS_BUDGET:?})"
    ))
}

fn orientation_and_cofactors() -> Outcome {
    let mut rng = rng(109);
    for case in 0..30 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(0..=9);
        let g = random::graph(&mut rng, n, m);
        let base = (count_rooted_forests(&g), forest_polynomial(&g), count_spanning_trees(&g));
        for _ in 0..10 {
            let h = g.reoriented(&mut rng);
            ensure!(
                (count_rooted_forests(&h), forest_polynomial(&h), count_spanning_trees(&h)) == base,
                "case {case}: re-orientation changes the counts"
            );
        }
        let cof = laplacian_cofactors(&g);
        ensure!(cof.len() == n, "case {case}: {} cofactors for {n} vertices", cof.len());
        ensure!(cof.iter().all(|c| c.abs() == cof[0].abs()), "case {case}: cofactors {cof:?}");
    }
    Ok("30 graphs x 10 re-orientations; all Laplacian cofactors agree in absolute value".into())
}

fn trace_cyclicity() -> Outcome {
    let mut rng = rng(110);
    for case in 0..100 {
        let (a, b) = (rng.gen_range(0..=6u32), rng.gen_range(0..=6u32));
        let x: LabeledMatrix<Rational> = random::matrix(&mut rng, (0..a).collect(), (50..50 + b).collect(), 5);
        let y: LabeledMatrix<Rational> = random::matrix(&mut rng, (50..50 + b).collect(), (0..a).collect(), 5);
        let xy = principal_minor_sum(&compose(&x, &y).unwrap()).unwrap();
        let yx = principal_minor_sum(&compose(&y, &x).unwrap()).unwrap();
        ensure!(xy == yx, "case {case} ({a}x{b}): {xy} vs {yx}");
    }
    Ok("100 rectangular pairs up to 6x6, exact".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("principal minor identity", minor_identity),
        ("minor expansion respects composition", functoriality),
        ("fast evaluation matches both oracles", fast_vs_oracle),
        ("single 2x2 gate closed form", single_gate_example),
        ("Pfaffian correctness", pfaffian_correctness),
        ("Pfaffian of the skew embedding is the determinant", skew_embedding),
        ("compiled circuits keep their value", compiler_preserves_value),
        ("graph counts and census", graph_counts),
        ("orientation and cofactor invariance", orientation_and_cofactors),
        ("det(I+XY) = det(I+YX)", trace_cyclicity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                println!("[FAIL] criterion {}: {name}: {detail}", i + 1);
                failed += 1;
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
