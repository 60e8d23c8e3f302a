//! Closed determinantal circuits and their polynomial-time evaluator.
//!
//! A circuit is a cyclic sequence of stacks. Stack `k` is a tensor product of
//! gates whose direct sum `M_k` maps the stack's incoming labels (columns) to
//! its outgoing labels (rows). Wiring `k` is a bijection from the outgoing
//! labels of stack `k` to the incoming labels of stack `k + 1`, and the last
//! wiring closes the loop back to stack 0.

use std::collections::{HashMap, HashSet};

use crate::algebra::matrix::check_distinct;
use crate::algebra::{compose, direct_sum_all, permutation, principal_minor_sum, Label, LabeledMatrix, Scalar};
use crate::error::{Error, Result};

/// A gate is a labeled matrix: rows outgoing, columns incoming.
pub type Gate<S> = LabeledMatrix<S>;

/// Gates applied side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct Stack<S> {
    pub gates: Vec<Gate<S>>,
}

impl<S: Scalar> Stack<S> {
    pub fn new(gates: Vec<Gate<S>>) -> Self {
        Self { gates }
    }

    /// Outgoing labels in gate order.
    pub fn outgoing(&self) -> Vec<Label> {
        self.gates.iter().flat_map(|g| g.rows().iter().copied()).collect()
    }

    /// Incoming labels in gate order.
    pub fn incoming(&self) -> Vec<Label> {
        self.gates.iter().flat_map(|g| g.cols().iter().copied()).collect()
    }

    /// Direct sum of the gates.
    pub fn matrix(&self) -> Result<LabeledMatrix<S>> {
        direct_sum_all(&self.gates)
    }
}

/// Bijection from one stack's outgoing labels to the next stack's incoming labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Wiring {
    pub pairs: Vec<(Label, Label)>,
}

impl Wiring {
    pub fn new(pairs: Vec<(Label, Label)>) -> Self {
        Self { pairs }
    }

    /// Pairs the sorted outgoing labels with the sorted incoming labels.
    pub fn sorted_identity(outgoing: &[Label], incoming: &[Label]) -> Self {
        let mut a = outgoing.to_vec();
        let mut b = incoming.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        Self { pairs: a.into_iter().zip(b).collect() }
    }

    pub fn target(&self, from: Label) -> Option<Label> {
        self.pairs.iter().find(|p| p.0 == from).map(|p| p.1)
    }
}

/// A closed determinantal circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<S> {
    stacks: Vec<Stack<S>>,
    wirings: Vec<Wiring>,
}

impl<S: Scalar> Circuit<S> {
    /// Builds and validates a circuit; `wirings[k]` leaves stack `k`.
    pub fn new(stacks: Vec<Stack<S>>, wirings: Vec<Wiring>) -> Result<Self> {
        let c = Self { stacks, wirings };
        validate(&c)?;
        Ok(c)
    }

    /// Like [`Circuit::new`], filling absent wirings with [`Wiring::sorted_identity`].
    pub fn with_default_wirings(stacks: Vec<Stack<S>>, wirings: Vec<Option<Wiring>>) -> Result<Self> {
        let m = stacks.len();
        if wirings.len() != m {
            return Err(Error::LabelMismatch(format!("{m} stacks but {} wirings", wirings.len())));
        }
        let filled = wirings
            .into_iter()
            .enumerate()
            .map(|(k, w)| {
                w.unwrap_or_else(|| {
                    Wiring::sorted_identity(&stacks[k].outgoing(), &stacks[(k + 1) % m].incoming())
                })
            })
            .collect();
        Self::new(stacks, filled)
    }

    pub fn empty() -> Self {
        Self { stacks: vec![], wirings: vec![] }
    }

    pub fn stacks(&self) -> &[Stack<S>] {
        &self.stacks
    }

    pub fn wirings(&self) -> &[Wiring] {
        &self.wirings
    }

    pub fn depth(&self) -> usize {
        self.stacks.len()
    }

    /// Total number of wire occurrences over all gaps.
    pub fn total_wires(&self) -> usize {
        self.stacks.iter().map(|s| s.incoming().len()).sum()
    }

    /// Permutation matrix of wiring `k`: rows follow the next stack's
    /// incoming order, columns this stack's outgoing order.
    pub fn wiring_matrix(&self, k: usize) -> Result<LabeledMatrix<S>> {
        let next = &self.stacks[(k + 1) % self.stacks.len()];
        let map: HashMap<Label, Label> = self.wirings[k].pairs.iter().copied().collect();
        permutation(next.incoming(), self.stacks[k].outgoing(), |l| map[&l])
    }

    /// Whether wiring `k` sends the i-th outgoing label to the i-th incoming label.
    pub fn wiring_preserves_order(&self, k: usize) -> bool {
        let next = &self.stacks[(k + 1) % self.stacks.len()];
        let map: HashMap<Label, Label> = self.wirings[k].pairs.iter().copied().collect();
        self.stacks[k].outgoing().iter().zip(next.incoming()).all(|(o, i)| map[o] == i)
    }

    /// The same circuit started at stack `r`.
    pub fn rotated(&self, r: usize) -> Self {
        let m = self.stacks.len();
        if m == 0 {
            return self.clone();
        }
        let idx = (0..m).map(|k| (k + r) % m);
        Self {
            stacks: idx.clone().map(|k| self.stacks[k].clone()).collect(),
            wirings: idx.map(|k| self.wirings[k].clone()).collect(),
        }
    }
}

/// Checks label distinctness per stack and that every wiring is a bijection.
pub fn validate<S: Scalar>(c: &Circuit<S>) -> Result<()> {
    let m = c.stacks.len();
    if c.wirings.len() != m {
        return Err(Error::LabelMismatch(format!("{m} stacks but {} wirings", c.wirings.len())));
    }
    for (k, s) in c.stacks.iter().enumerate() {
        check_distinct(&s.outgoing(), &format!("outgoing labels of stack {}", k + 1))?;
        check_distinct(&s.incoming(), &format!("incoming labels of stack {}", k + 1))?;
    }
    for (k, w) in c.wirings.iter().enumerate() {
        let gap = k + 1;
        let outgoing = c.stacks[k].outgoing();
        let incoming = c.stacks[(k + 1) % m].incoming();
        if outgoing.len() != incoming.len() {
            return Err(Error::SizeMismatch { gap, outgoing: outgoing.len(), incoming: incoming.len() });
        }
        let out_set: HashSet<Label> = outgoing.iter().copied().collect();
        let in_set: HashSet<Label> = incoming.iter().copied().collect();
        let mut seen_from = HashSet::new();
        let mut seen_to = HashSet::new();
        for &(from, to) in &w.pairs {
            if !out_set.contains(&from) {
                return Err(Error::DanglingWire { gap, label: from });
            }
            if !in_set.contains(&to) {
                return Err(Error::DanglingWire { gap, label: to });
            }
            if !seen_from.insert(from) {
                return Err(Error::DuplicateLabel { label: from, place: format!("wiring {gap} sources") });
            }
            if !seen_to.insert(to) {
                return Err(Error::DuplicateLabel { label: to, place: format!("wiring {gap} targets") });
            }
        }
        if let Some(&l) = outgoing.iter().find(|l| !seen_from.contains(l)) {
            return Err(Error::DanglingWire { gap, label: l });
        }
        if let Some(&l) = incoming.iter().find(|l| !seen_to.contains(l)) {
            return Err(Error::DanglingWire { gap, label: l });
        }
    }
    Ok(())
}

/// `P_m M_m ... P_1 M_1`, square with rows and columns in stack 0's incoming order.
pub fn collapse<S: Scalar>(c: &Circuit<S>) -> Result<LabeledMatrix<S>> {
    validate(c)?;
    let mut acc: Option<LabeledMatrix<S>> = None;
    for k in 0..c.stacks.len() {
        let stage = compose(&c.wiring_matrix(k)?, &c.stacks[k].matrix()?)?;
        acc = Some(match acc {
            None => stage,
            Some(a) => compose(&stage, &a)?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        None => LabeledMatrix::zeros(vec![], vec![]),
    }
}

/// Value of the closed circuit, `det(I + collapse(c))`.
pub fn evaluate<S: Scalar>(c: &Circuit<S>) -> Result<S> {
    principal_minor_sum(&collapse(c)?)
}

/// Maximum wires in any gap, and the number of stacks.
pub fn width_depth<S: Scalar>(c: &Circuit<S>) -> (usize, usize) {
    let width = c.stacks.iter().map(|s| s.incoming().len()).max().unwrap_or(0);
    (width, c.stacks.len())
}
