//! Compilation of determinantal circuits into Pfaffian circuits.
//!
//! Every gate `M` (padded to a square `k x k` matrix `M'`) becomes a state
//! on `S(M')` joined to a costate on `S(I_k)`; contracting the pair over
//! their shared `k` wires reproduces the minor tensor of `M`. Padded rows are
//! closed with `<0|`, built from a `[[0,1],[-1,0]]` costate and a `[0]`
//! state, and padded columns with a `[0]` state, which is `|0>`.
//!
//! Edges are numbered along a curve that walks the stages left to right,
//! crossing each inter-stage bundle top to bottom and each gate-to-gadget
//! bundle bottom to top. Along that curve the gates of each kind occupy
//! noncrossing edge sets, and each gate's slots are a rotation or reversal
//! of its natural order, so every gate is re-expressed with increasing slots.

use num_bigint::BigInt;

use crate::algebra::{int, Label, LabeledMatrix, Rational, Scalar};
use crate::circuit::{validate, Circuit};
use crate::error::{Error, Result};
use crate::pfaffian::{GateKind, PfGate, PfaffianCircuit, SkewMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct CompiledCircuit<S> {
    pub source: Circuit<S>,
    pub target: PfaffianCircuit<S>,
    /// Identity gadgets plus zero closures.
    pub gadget_count: usize,
    /// Target matrix entries over source matrix entries (gates and wiring permutations).
    pub size_ratio: Rational,
}

/// Reverses the column order.
pub fn reflect<S: Scalar>(m: &LabeledMatrix<S>) -> LabeledMatrix<S> {
    let rows: Vec<usize> = (0..m.nrows()).collect();
    let cols: Vec<usize> = (0..m.ncols()).rev().collect();
    m.submatrix(&rows, &cols)
}

/// `[[0, M~], [-M~^T, 0]]` with `M~` the reflected matrix; labels are the
/// rows followed by the reversed columns, so they must not overlap.
pub fn skew_embed<S: Scalar>(m: &LabeledMatrix<S>) -> Result<SkewMatrix<S>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let n = m.nrows();
    let labels: Vec<Label> = m.rows().iter().chain(m.cols().iter().rev()).copied().collect();
    if let Some(&l) = m.cols().iter().find(|l| m.rows().contains(l)) {
        return Err(Error::LabelCollision(l));
    }
    SkewMatrix::from_upper(labels, |i, j| {
        if i < n && j >= n {
            m.get(i, 2 * n - 1 - j).clone()
        } else {
            S::zero()
        }
    })
}

/// A matrix made square by appending zero rows or zero columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Padded<S> {
    pub matrix: LabeledMatrix<S>,
    /// Number of trailing zero rows added.
    pub added_rows: usize,
    /// Number of trailing zero columns added.
    pub added_cols: usize,
}

/// Appends zero rows to a wide matrix or zero columns to a tall one, under fresh labels.
pub fn pad_to_square<S: Scalar>(m: &LabeledMatrix<S>) -> Padded<S> {
    let (n, c) = (m.nrows(), m.ncols());
    let k = n.max(c);
    let fresh_start = m.rows().iter().chain(m.cols()).max().map_or(0, |&l| l + 1);
    let fresh = |count: usize| (0..count as Label).map(|i| fresh_start + i);
    let rows: Vec<Label> = m.rows().iter().copied().chain(fresh(k - n)).collect();
    let cols: Vec<Label> = m.cols().iter().copied().chain(fresh(k - c)).collect();
    let mut out = LabeledMatrix::zeros(rows, cols).expect("fresh labels are distinct");
    for i in 0..n {
        for j in 0..c {
            out.set(i, j, m.get(i, j).clone());
        }
    }
    Padded { matrix: out, added_rows: k - n, added_cols: k - c }
}

struct Pending<S> {
    kind: GateKind,
    matrix: SkewMatrix<S>,
    slots: Vec<usize>,
}

/// Per-gate bookkeeping while edges are laid out.
struct Unit {
    k: usize,
    real_rows: usize,
    real_cols: usize,
    /// Position of the first real row among the stage outputs.
    row_start: usize,
    col_start: usize,
    state: usize,
    costate: usize,
}

struct Builder<S> {
    gates: Vec<Pending<S>>,
    edges: usize,
    gadgets: usize,
}

impl<S: Scalar> Builder<S> {
    fn edge(&mut self) -> usize {
        self.edges += 1;
        self.edges
    }

    fn push(&mut self, kind: GateKind, matrix: SkewMatrix<S>) -> usize {
        let slots = vec![0; matrix.dim()];
        self.gates.push(Pending { kind, matrix, slots });
        self.gates.len() - 1
    }

    /// `|0>` on a fresh singleton state.
    fn zero_state(&mut self, edge: usize) {
        let g = self.push(GateKind::State, SkewMatrix::from_upper(vec![0], |_, _| S::zero()).unwrap());
        self.gates[g].slots[0] = edge;
        self.gadgets += 1;
    }

    /// `<0|` closing `edge`: a `[[0,1],[-1,0]]` costate whose second wire ends in `|0>`.
    fn zero_costate(&mut self, edge: usize) {
        let k = self.push(GateKind::Costate, SkewMatrix::from_upper(vec![0, 1], |_, _| S::one()).unwrap());
        let q = self.edge();
        self.gates[k].slots = vec![edge, q];
        self.gadgets += 1;
        self.zero_state(q);
    }
}

/// Compiles a validated circuit into an equivalent Pfaffian circuit.
pub fn compile<S: Scalar>(c: &Circuit<S>) -> Result<CompiledCircuit<S>> {
    validate(c)?;
    let mut stages: Vec<Vec<LabeledMatrix<S>>> = Vec::new();
    for (k, stack) in c.stacks().iter().enumerate() {
        let gates: Vec<_> = stack.gates.iter().filter(|g| g.nrows() + g.ncols() > 0).cloned().collect();
        if !gates.is_empty() {
            stages.push(gates);
        }
        if !c.wiring_preserves_order(k) {
            stages.push(vec![c.wiring_matrix(k)?]);
        }
    }

    let mut b = Builder { gates: Vec::new(), edges: 0, gadgets: 0 };
    let mut units: Vec<Vec<Unit>> = Vec::with_capacity(stages.len());
    for stage in &stages {
        let (mut row_start, mut col_start) = (0, 0);
        let mut list = Vec::with_capacity(stage.len());
        for g in stage {
            let padded = pad_to_square(g);
            let k = padded.matrix.nrows();
            let lm = padded.matrix.relabel((0..k as Label).collect(), (k as Label..2 * k as Label).collect())?;
            let state = b.push(GateKind::State, skew_embed(&lm)?);
            let ident = LabeledMatrix::identity((0..k as Label).collect())?
                .relabel((0..k as Label).collect(), (k as Label..2 * k as Label).collect())?;
            let costate = b.push(GateKind::Costate, skew_embed(&ident)?);
            b.gadgets += 1;
            list.push(Unit { k, real_rows: g.nrows(), real_cols: g.ncols(), row_start, col_start, state, costate });
            row_start += g.nrows();
            col_start += g.ncols();
        }
        units.push(list);
    }

    let t = stages.len();
    for s in 0..t {
        let prev = (s + t - 1) % t;
        let width: usize = units[s].iter().map(|u| u.real_cols).sum();
        for j in 0..=width {
            for u in units[prev].iter().filter(|u| u.row_start + u.real_rows == j) {
                for i in u.real_rows..u.k {
                    let p = b.edge();
                    b.gates[u.state].slots[i] = p;
                    b.zero_costate(p);
                }
            }
            for u in units[s].iter().filter(|u| u.col_start + u.real_cols == j) {
                for i in u.real_cols..u.k {
                    let y = b.edge();
                    b.gates[u.costate].slots[2 * u.k - 1 - i] = y;
                    b.zero_state(y);
                }
            }
            if j < width {
                let e = b.edge();
                let g = units[prev].iter().find(|u| (u.row_start..u.row_start + u.real_rows).contains(&j)).unwrap();
                b.gates[g.state].slots[j - g.row_start] = e;
                let h = units[s].iter().find(|u| (u.col_start..u.col_start + u.real_cols).contains(&j)).unwrap();
                b.gates[h.costate].slots[2 * h.k - 1 - (j - h.col_start)] = e;
            }
        }
        for u in units[s].iter().rev() {
            for i in (0..u.k).rev() {
                let e = b.edge();
                b.gates[u.state].slots[2 * u.k - 1 - i] = e;
                b.gates[u.costate].slots[i] = e;
            }
        }
    }

    let gates = b
        .gates
        .into_iter()
        .map(|p| PfGate::new(p.kind, p.matrix, p.slots)?.sorted())
        .collect::<Result<Vec<_>>>()?;
    let target = PfaffianCircuit::new(gates, b.edges)?;

    let gate_entries: usize = c.stacks().iter().flat_map(|s| &s.gates).map(|g| g.nrows() * g.ncols()).sum();
    let wiring_entries: usize = c.stacks().iter().map(|s| s.outgoing().len().pow(2)).sum();
    let source_entries = (gate_entries + wiring_entries).max(1);
    let size_ratio = Rational::new(BigInt::from(target.entry_count()), BigInt::from(source_entries));

    Ok(CompiledCircuit { source: c.clone(), target, gadget_count: b.gadgets, size_ratio })
}

/// Largest dimension among the source gates and wiring permutations.
pub fn max_gate_dim<S: Scalar>(c: &Circuit<S>) -> usize {
    let gates = c.stacks().iter().flat_map(|s| &s.gates).map(|g| g.nrows().max(g.ncols()));
    let wirings = c.stacks().iter().map(|s| s.outgoing().len());
    gates.chain(wirings).max().unwrap_or(0)
}

/// Quadratic-cost bound: `size_ratio <= factor * max_gate_dim` for a pinned factor.
pub fn within_quadratic_bound<S: Scalar>(compiled: &CompiledCircuit<S>, factor: i64) -> bool {
    let d = max_gate_dim(&compiled.source).max(1) as i64;
    compiled.size_ratio <= int(factor * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::determinant;
    use crate::circuit::{evaluate, Stack};
    use crate::pfaffian::{eval_pfaffian_circuit, eval_pfaffian_oracle, pfaffian};

    fn m(rows: &[Label], cols: &[Label], v: &[i64]) -> LabeledMatrix<Rational> {
        LabeledMatrix::new(rows.to_vec(), cols.to_vec(), v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn reflect_reverses_columns() {
        let x = m(&[1, 2], &[3, 4], &[1, 2, 3, 4]);
        assert_eq!(reflect(&x), m(&[1, 2], &[4, 3], &[2, 1, 4, 3]));
        assert_eq!(reflect(&reflect(&x)), x);
    }

    #[test]
    fn skew_embed_scalar() {
        let s = skew_embed(&m(&[1], &[2], &[5])).unwrap();
        assert_eq!(s.data(), &[int(0), int(5), int(-5), int(0)]);
        assert_eq!(pfaffian(&s), int(5));
        assert!(matches!(skew_embed(&m(&[1], &[1, 2], &[1, 2])), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn skew_embed_determinant() {
        let x = m(&[1, 2, 3], &[4, 5, 6], &[2, -1, 3, 0, 4, 1, 5, 2, -2]);
        assert_eq!(pfaffian(&skew_embed(&x).unwrap()), determinant(&x).unwrap());
    }

    #[test]
    fn padding() {
        let sq = m(&[1, 2], &[3, 4], &[1, 2, 3, 4]);
        assert_eq!(pad_to_square(&sq).matrix, sq);
        let wide = pad_to_square(&m(&[1], &[2, 3], &[7, 8]));
        assert_eq!((wide.added_rows, wide.added_cols), (1, 0));
        assert_eq!(wide.matrix.data(), &[int(7), int(8), int(0), int(0)]);
        let tall = pad_to_square(&m(&[1, 2], &[], &[]));
        assert_eq!((tall.added_rows, tall.added_cols), (0, 2));
    }

    #[test]
    fn scalar_loop() {
        let c = Circuit::with_default_wirings(vec![Stack::new(vec![m(&[1], &[1], &[3])])], vec![None]).unwrap();
        let out = compile(&c).unwrap();
        assert!(out.target.has_planar_ordering());
        assert_eq!(eval_pfaffian_circuit(&out.target), int(4));
        assert_eq!(eval_pfaffian_oracle(&out.target).unwrap(), int(4));
        assert_eq!(evaluate(&c).unwrap(), int(4));
    }

    #[test]
    fn rectangular_chain() {
        // 1x2 then 2x1 on a loop: value 1 + (a1 b1 + a2 b2).
        let s1 = Stack::new(vec![m(&[5, 6], &[1], &[2, 3])]);
        let s2 = Stack::new(vec![m(&[1], &[7, 8], &[4, 5])]);
        let c = Circuit::with_default_wirings(vec![s1, s2], vec![None, None]).unwrap();
        let out = compile(&c).unwrap();
        assert!(out.target.has_planar_ordering());
        assert_eq!(evaluate(&c).unwrap(), int(1 + 8 + 15));
        assert_eq!(eval_pfaffian_oracle(&out.target).unwrap(), int(24));
        assert_eq!(eval_pfaffian_circuit(&out.target), int(24));
    }
}
