//! Expansion of a circuit value as a sum over multicycles.
//!
//! A multicycle picks a subset `I_k` of the wires entering each stack, all of
//! the same size. Its weight is the product over stacks of the minor of
//! `P_k M_k` with rows `I_{k+1}` and columns `I_k`.

use crate::algebra::{Label, LabeledMatrix, Scalar};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

use super::tensor::DEFAULT_CAP;

#[derive(Debug, Clone, PartialEq)]
pub struct MulticycleEntry<S> {
    /// `subsets[k]`: active wires entering stack `k`, in that stack's column order.
    pub subsets: Vec<Vec<Label>>,
    pub weight: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MulticycleReport<S> {
    pub entries: Vec<MulticycleEntry<S>>,
    pub total: S,
}

/// Lists every multicycle of nonzero weight.
pub fn enumerate_multicycles<S: Scalar>(c: &Circuit<S>) -> Result<MulticycleReport<S>> {
    enumerate_multicycles_capped(c, DEFAULT_CAP)
}

pub fn enumerate_multicycles_capped<S: Scalar>(c: &Circuit<S>, cap: usize) -> Result<MulticycleReport<S>> {
    let total = c.total_wires();
    if total > cap {
        return Err(Error::TooLarge { what: "circuit wire count", size: total, cap });
    }
    let m = c.depth();
    if m == 0 {
        return Ok(MulticycleReport {
            entries: vec![MulticycleEntry { subsets: vec![], weight: S::one() }],
            total: S::one(),
        });
    }
    let mut stages = Vec::with_capacity(m);
    for k in 0..m {
        stages.push(crate::algebra::compose(&c.wiring_matrix(k)?, &c.stacks()[k].matrix()?)?);
    }
    let widths: Vec<usize> = stages.iter().map(|s| s.ncols()).collect();
    let max_size = widths.iter().copied().min().unwrap_or(0);

    let mut entries = Vec::new();
    for size in 0..=max_size {
        let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(m);
        for first in subsets_of_size(widths[0], size) {
            chosen.push(first);
            extend(&stages, &widths, size, &mut chosen, S::one(), &mut entries);
            chosen.pop();
        }
    }
    let total = entries.iter().fold(S::zero(), |acc, e| acc + e.weight.clone());
    Ok(MulticycleReport { entries, total })
}

fn minor<S: Scalar>(m: &LabeledMatrix<S>, rows: &[usize], cols: &[usize]) -> S {
    S::det_kernel(m.submatrix(rows, cols).data().to_vec(), rows.len())
}

fn extend<S: Scalar>(
    stages: &[LabeledMatrix<S>],
    widths: &[usize],
    size: usize,
    chosen: &mut Vec<Vec<usize>>,
    weight: S,
    out: &mut Vec<MulticycleEntry<S>>,
) {
    let k = chosen.len();
    let m = stages.len();
    if k == m {
        let w = weight * minor(&stages[m - 1], &chosen[0], &chosen[m - 1]);
        if !w.is_zero() {
            let subsets = chosen
                .iter()
                .zip(stages)
                .map(|(pos, s)| pos.iter().map(|&j| s.cols()[j]).collect())
                .collect();
            out.push(MulticycleEntry { subsets, weight: w });
        }
        return;
    }
    for next in subsets_of_size(widths[k], size) {
        let f = minor(&stages[k - 1], &next, &chosen[k - 1]);
        if f.is_zero() {
            continue;
        }
        chosen.push(next);
        extend(stages, widths, size, chosen, weight.clone() * f, out);
        chosen.pop();
    }
}

/// All `size`-element subsets of `0..n`, as sorted position lists.
fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}
