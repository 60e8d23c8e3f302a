//! Rooted spanning forests and spanning trees via incidence matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::algebra::{compose, dagger, determinant, principal_minor_sum, Label, LabeledMatrix, Rational, Scalar};
use crate::circuit::{Circuit, Stack, Wiring};
use crate::error::{Error, Result};

/// Largest edge count the subset enumerators accept.
pub const ENUMERATION_MAX_EDGES: usize = 20;

/// Undirected multigraph; each edge is stored oriented `tail -> head`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Vertices are `0..vertex_count`; edges are oriented as listed.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: x, vertex_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        Ok(Self { vertex_count, edges })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self { vertex_count: n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Same graph with every edge flipped independently with probability 1/2.
    pub fn reoriented<R: Rng>(&self, rng: &mut R) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| if rng.gen::<bool>() { (v, u) } else { (u, v) })
            .collect();
        Self { vertex_count: self.vertex_count, edges }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.vertex_count);
        let mut parts = self.vertex_count;
        for &(u, v) in &self.edges {
            if uf.union(u, v) {
                parts -= 1;
            }
        }
        parts == 1
    }
}

/// `|E| x |V|` matrix with `+1` at each edge's tail and `-1` at its head.
///
/// Rows are labeled by edge index and columns by vertex index.
pub fn incidence_matrix(g: &Graph) -> LabeledMatrix<Rational> {
    let rows = (0..g.edges.len() as Label).collect();
    let cols = (0..g.vertex_count as Label).collect();
    let mut b = LabeledMatrix::zeros(rows, cols).expect("distinct indices");
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        b.set(e, u, Rational::from_i64(1));
        b.set(e, v, Rational::from_i64(-1));
    }
    b
}

/// Vertex Laplacian `B^T B`.
pub fn laplacian(g: &Graph) -> LabeledMatrix<Rational> {
    let b = incidence_matrix(g);
    compose(&dagger(&b), &b).expect("shared edge labels")
}

fn to_integer(r: &BigRational) -> BigInt {
    debug_assert!(r.is_integer());
    r.to_integer()
}

/// Number of rooted spanning forests, `det(I + B B^T)`.
///
/// Computed as `det(I + B^T B)`, which is equal and only `|V| x |V|`.
pub fn count_rooted_forests(g: &Graph) -> BigInt {
    to_integer(&principal_minor_sum(&laplacian(g)).expect("square"))
}

/// Coefficients of `det(x I + L)` in ascending powers of `x`, with `L` the vertex Laplacian.
///
/// The coefficient of `x^k` counts rooted spanning forests with `k` roots.
pub fn forest_polynomial(g: &Graph) -> Vec<BigInt> {
    let l = laplacian(g);
    let n = l.nrows();
    // det(xI + L) is the characteristic polynomial of -L.
    let a: Vec<BigInt> = l.data().iter().map(|x| -to_integer(x)).collect();
    faddeev_leverrier(&a, n)
}

/// Coefficients of `det(x I - A)`, ascending, for an integer matrix.
///
/// Faddeev-LeVerrier recurrence. Every intermediate matrix is integral and
/// each trace is divisible by its step index, so no fractions arise.
pub fn faddeev_leverrier(a: &[BigInt], n: usize) -> Vec<BigInt> {
    assert_eq!(a.len(), n * n, "grid is not n x n");
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    // Holds A M_{k-1}; M_0 = 0.
    let mut am = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut m = am;
        for i in 0..n {
            m[i * n + i] += &coeffs[n - k + 1];
        }
        am = matmul(a, &m, n);
        let trace: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        debug_assert!((&trace % BigInt::from(k)).is_zero());
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    coeffs
}

fn matmul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for t in 0..n {
            let x = &a[i * n + t];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[t * n + j];
                if !y.is_zero() {
                    out[i * n + j] += x * y;
                }
            }
        }
    }
    out
}

/// All principal cofactors of the Laplacian, `det(L)` with row and column `i` removed.
pub fn laplacian_cofactors(g: &Graph) -> Vec<BigInt> {
    let l = laplacian(g);
    let n = l.nrows();
    (0..n)
        .map(|i| {
            let keep: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            to_integer(&determinant(&l.submatrix(&keep, &keep)).expect("square"))
        })
        .collect()
}

/// Spanning tree count as the absolute value of a Laplacian cofactor; 0 for the empty graph.
pub fn count_spanning_trees(g: &Graph) -> BigInt {
    laplacian_cofactors(g).first().map_or_else(BigInt::zero, |c| c.abs())
}

/// Circuit whose value is the rooted forest count.
///
/// Stack 1 holds the transposed edge nodes `[1 -1]^T`, mapping each edge
/// wire to its two endpoint wires. Stack 2 holds, per vertex of degree `d`,
/// the all-ones `d x d` matrix on its ports. Stack 3 holds the edge nodes
/// `[1 -1]`. The loop therefore collapses to `B B^T`.
pub fn graph_to_circuit(g: &Graph) -> Circuit<Rational> {
    let e_count = g.edges.len() as Label;
    let end = |e: usize, side: usize| e_count + 2 * e as Label + side as Label;
    let port_base = 3 * e_count;
    let one = Rational::from_i64(1);
    let minus = Rational::from_i64(-1);

    let mut s1 = Vec::new();
    let mut s3 = Vec::new();
    for e in 0..g.edges.len() {
        let node = |rows: Vec<Label>, cols: Vec<Label>| {
            LabeledMatrix::new(rows, cols, vec![one.clone(), minus.clone()]).expect("distinct labels")
        };
        s1.push(node(vec![end(e, 0), end(e, 1)], vec![e as Label]));
        s3.push(node(vec![e as Label], vec![end(e, 0), end(e, 1)]));
    }

    // Vertex ports: incoming port p carries label port_base + 2p, outgoing port_base + 2p + 1.
    let mut s2 = Vec::new();
    let mut w1 = Vec::new();
    let mut w2 = Vec::new();
    let mut port = 0;
    for v in 0..g.vertex_count {
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        for (e, &(tail, head)) in g.edges.iter().enumerate() {
            for (side, x) in [(0, tail), (1, head)] {
                if x == v {
                    let (pin, pout) = (port_base + 2 * port, port_base + 2 * port + 1);
                    w1.push((end(e, side), pin));
                    w2.push((pout, end(e, side)));
                    ins.push(pin);
                    outs.push(pout);
                    port += 1;
                }
            }
        }
        if !ins.is_empty() {
            let d = ins.len();
            s2.push(LabeledMatrix::new(outs, ins, vec![one.clone(); d * d]).expect("distinct labels"));
        }
    }
    let w3 = (0..e_count).map(|e| (e, e)).collect();
    Circuit::new(
        vec![Stack::new(s1), Stack::new(s2), Stack::new(s3)],
        vec![Wiring::new(w1), Wiring::new(w2), Wiring::new(w3)],
    )
    .expect("construction is well formed")
}

/// A spanning forest with one root per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedForest {
    pub edges: Vec<usize>,
    pub roots: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn check_enumerable(g: &Graph) -> Result<()> {
    if g.edges.len() > ENUMERATION_MAX_EDGES {
        return Err(Error::TooLarge { what: "edge count", size: g.edges.len(), cap: ENUMERATION_MAX_EDGES });
    }
    Ok(())
}

/// Acyclic edge subsets with their vertex components.
fn acyclic_subsets(g: &Graph) -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
    let m = g.edges.len();
    let mut out = Vec::new();
    'subsets: for mask in 0..1usize << m {
        let mut uf = UnionFind::new(g.vertex_count);
        let chosen: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        for &e in &chosen {
            let (u, v) = g.edges[e];
            if !uf.union(u, v) {
                continue 'subsets;
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; g.vertex_count];
        for v in 0..g.vertex_count {
            let r = uf.find(v);
            if index[r] == usize::MAX {
                index[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[index[r]].push(v);
        }
        out.push((chosen, comps));
    }
    out
}

/// Every rooted spanning forest, by exhaustive search over edge subsets.
pub fn enumerate_forests(g: &Graph) -> Result<Vec<RootedForest>> {
    check_enumerable(g)?;
    let mut out = Vec::new();
    for (edges, comps) in acyclic_subsets(g) {
        let mut roots: Vec<Vec<usize>> = vec![vec![]];
        for comp in &comps {
            roots = roots
                .into_iter()
                .flat_map(|r| {
                    comp.iter().map(move |&v| {
                        let mut r = r.clone();
                        r.push(v);
                        r
                    })
                })
                .collect();
        }
        out.extend(roots.into_iter().map(|roots| RootedForest { edges: edges.clone(), roots }));
    }
    Ok(out)
}

/// Every spanning tree, as a sorted list of edge indices.
pub fn enumerate_trees(g: &Graph) -> Result<Vec<Vec<usize>>> {
    check_enumerable(g)?;
    Ok(acyclic_subsets(g)
        .into_iter()
        .filter(|(_, comps)| comps.len() == 1)
        .map(|(edges, _)| edges)
        .collect())
}

/// Forest counts indexed by number of roots.
pub fn root_histogram(forests: &[RootedForest], vertex_count: usize) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero(); vertex_count + 1];
    for f in forests {
        h[f.roots.len()] += 1;
    }
    h
}
