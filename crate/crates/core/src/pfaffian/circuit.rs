//! Bipartite networks of sub-Pfaffian states and costates.
//!
//! Edges carry ids `1..=edge_count`, and the ids double as the global edge
//! order used by the fast evaluator. That evaluator is exact when the slots
//! of each gate are listed in increasing id order and the gates of each kind
//! occupy pairwise noncrossing id sets, see [`PfaffianCircuit::has_planar_ordering`].

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::oracle::{tensor_compose, tensor_product, Tensor, DEFAULT_CAP};

use super::{anti_transpose, pfaffian_of, spf_capped, spf_dual_capped, SkewMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    /// Sub-Pfaffian state.
    State,
    /// Complementary sub-Pfaffian costate.
    Costate,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::State => "state",
            GateKind::Costate => "costate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PfGate<S> {
    pub matrix: SkewMatrix<S>,
    pub kind: GateKind,
    /// Edge id attached to each matrix position.
    pub edges: Vec<usize>,
}

impl<S: Scalar> PfGate<S> {
    pub fn new(kind: GateKind, matrix: SkewMatrix<S>, edges: Vec<usize>) -> Result<Self> {
        if edges.len() != matrix.dim() {
            return Err(Error::ShapeMismatch { expected: matrix.dim(), found: edges.len() });
        }
        Ok(Self { matrix, kind, edges })
    }

    /// Tensor on wires named by edge id.
    pub fn tensor(&self, cap: usize) -> Result<Tensor<S>> {
        let labels = self.edges.iter().map(|&e| e as u32).collect();
        let m = self.matrix.relabel(labels)?;
        match self.kind {
            GateKind::State => spf_capped(&m, cap),
            GateKind::Costate => spf_dual_capped(&m, cap),
        }
    }

    /// The same gate with its slots listed in `order`.
    ///
    /// `order` must be a rotation of the current slot list or of its
    /// reversal; the edge-named tensor is unchanged.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let n = self.edges.len();
        if n == 0 {
            return Ok(self.clone());
        }
        let rotation_of = |edges: &[usize]| -> Option<usize> {
            let t = edges.iter().position(|&e| e == order[0])?;
            (order.len() == n && (0..n).all(|i| edges[(t + i) % n] == order[i])).then_some(t)
        };
        if let Some(t) = rotation_of(&self.edges) {
            return Ok(Self { matrix: self.matrix.rotate_negating(t), kind: self.kind, edges: order.to_vec() });
        }
        let reversed: Vec<usize> = self.edges.iter().rev().copied().collect();
        if let Some(t) = rotation_of(&reversed) {
            let flipped = anti_transpose(&self.matrix);
            return Ok(Self { matrix: flipped.rotate_negating(t), kind: self.kind, edges: order.to_vec() });
        }
        Err(Error::LabelMismatch(format!("{order:?} is not a dihedral reordering of {:?}", self.edges)))
    }

    /// Reorders the slots increasingly by edge id.
    pub fn sorted(&self) -> Result<Self> {
        let mut order = self.edges.clone();
        order.sort_unstable();
        self.reordered(&order)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PfaffianCircuit<S> {
    gates: Vec<PfGate<S>>,
    edge_count: usize,
}

impl<S: Scalar> PfaffianCircuit<S> {
    /// Checks that each edge joins exactly one state to exactly one costate.
    pub fn new(gates: Vec<PfGate<S>>, edge_count: usize) -> Result<Self> {
        let mut states = vec![0usize; edge_count + 1];
        let mut costates = vec![0usize; edge_count + 1];
        for g in &gates {
            for &e in &g.edges {
                if e == 0 || e > edge_count {
                    return Err(Error::EdgeMultiplicity { edge: e, states: 0, costates: 0 });
                }
                match g.kind {
                    GateKind::State => states[e] += 1,
                    GateKind::Costate => costates[e] += 1,
                }
            }
        }
        for e in 1..=edge_count {
            match (states[e], costates[e]) {
                (1, 1) => {}
                (2, 0) | (0, 2) => return Err(Error::NotBipartite(e)),
                (s, c) => return Err(Error::EdgeMultiplicity { edge: e, states: s, costates: c }),
            }
        }
        Ok(Self { gates, edge_count })
    }

    pub fn empty() -> Self {
        Self { gates: vec![], edge_count: 0 }
    }

    pub fn gates(&self) -> &[PfGate<S>] {
        &self.gates
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Total number of matrix entries over all gates.
    pub fn entry_count(&self) -> usize {
        self.gates.iter().map(|g| g.matrix.dim() * g.matrix.dim()).sum()
    }

    /// True when every gate lists its slots in increasing order and the
    /// slot sets of each kind form a noncrossing partition of the edge ids.
    pub fn has_planar_ordering(&self) -> bool {
        [GateKind::State, GateKind::Costate].into_iter().all(|kind| {
            let gates: Vec<&PfGate<S>> = self.gates.iter().filter(|g| g.kind == kind).collect();
            gates.iter().all(|g| g.edges.windows(2).all(|w| w[0] < w[1]))
                && noncrossing(gates.iter().map(|g| g.edges.as_slice()), self.edge_count)
        })
    }

    /// Renames edge `e` to `map(e)` and lists every gate's slots increasingly.
    ///
    /// Useful for changing the global order; the map should be a cyclic
    /// shift or a reversal so that gate slots stay dihedral reorderings.
    pub fn renumbered(&self, map: impl Fn(usize) -> usize) -> Result<Self> {
        let gates = self
            .gates
            .iter()
            .map(|g| {
                let renamed = PfGate { matrix: g.matrix.clone(), kind: g.kind, edges: g.edges.iter().map(|&e| map(e)).collect() };
                renamed.sorted()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(gates, self.edge_count)
    }

    /// Shifts every edge id cyclically by `s` positions.
    pub fn rotated(&self, s: usize) -> Result<Self> {
        let n = self.edge_count;
        if n == 0 {
            return Ok(self.clone());
        }
        self.renumbered(|e| (e - 1 + s) % n + 1)
    }

    /// Reverses the global edge order.
    pub fn reflected(&self) -> Result<Self> {
        let n = self.edge_count;
        self.renumbered(|e| n + 1 - e)
    }
}

fn noncrossing<'a>(blocks: impl Iterator<Item = &'a [usize]>, n: usize) -> bool {
    let mut owner = vec![usize::MAX; n + 1];
    let mut remaining = Vec::new();
    for (b, edges) in blocks.enumerate() {
        for &e in edges {
            owner[e] = b;
        }
        remaining.push(edges.len());
    }
    let mut open: Vec<usize> = Vec::new();
    for &b in owner.iter().skip(1) {
        if b == usize::MAX {
            continue;
        }
        match open.last() {
            Some(&top) if top == b => {}
            _ if open.contains(&b) => return false,
            _ => open.push(b),
        }
        remaining[b] -= 1;
        if remaining[b] == 0 {
            open.pop();
        }
    }
    true
}

/// `Pf(Xi + Theta_check)`: states assembled into `Xi`, costates into
/// `Theta`, which then gets the checkerboard sign `(-1)^(i+j+1)`.
pub fn eval_pfaffian_circuit<S: Scalar>(pc: &PfaffianCircuit<S>) -> S {
    let n = pc.edge_count;
    let mut a = vec![S::zero(); n * n];
    for g in &pc.gates {
        for (x, &ex) in g.edges.iter().enumerate() {
            for (y, &ey) in g.edges.iter().enumerate() {
                let v = g.matrix.get(x, y).clone();
                if v.is_zero() {
                    continue;
                }
                let (i, j) = (ex - 1, ey - 1);
                let v = match g.kind {
                    GateKind::State => v,
                    GateKind::Costate if (i + j) % 2 == 0 => -v,
                    GateKind::Costate => v,
                };
                a[i * n + j] = a[i * n + j].clone() + v;
            }
        }
    }
    pfaffian_of(a, n)
}

/// Full contraction of all gate tensors over the shared edges.
pub fn eval_pfaffian_oracle<S: Scalar>(pc: &PfaffianCircuit<S>) -> Result<S> {
    eval_pfaffian_oracle_capped(pc, DEFAULT_CAP)
}

pub fn eval_pfaffian_oracle_capped<S: Scalar>(pc: &PfaffianCircuit<S>, cap: usize) -> Result<S> {
    if pc.edge_count > cap {
        return Err(Error::TooLarge { what: "edge count", size: pc.edge_count, cap });
    }
    let mut states = Tensor::scalar(S::one());
    let mut costates = Tensor::scalar(S::one());
    for g in &pc.gates {
        let t = g.tensor(cap)?;
        match g.kind {
            GateKind::State => states = tensor_product(&states, &t)?,
            GateKind::Costate => costates = tensor_product(&costates, &t)?,
        }
    }
    let v = tensor_compose(&costates, &states)?;
    Ok(v.as_scalar().expect("closed network").clone())
}
