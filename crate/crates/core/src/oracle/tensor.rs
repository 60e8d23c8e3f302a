//! Dense tensors over qubit wires.
//!
//! Index convention: output (ket) wires occupy the high bits and input (bra)
//! wires the low bits; within each list the leftmost wire is the most
//! significant bit. A set bit means the wire's label belongs to the subset.

use std::collections::{HashMap, HashSet};

use crate::algebra::{Label, LabeledMatrix, Scalar};
use crate::error::{Error, Result};

/// Default limit on the number of wires an oracle may expand.
pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<S> {
    out_wires: Vec<Label>,
    in_wires: Vec<Label>,
    data: Vec<S>,
}

fn same_set(a: &[Label], b: &[Label]) -> bool {
    a.len() == b.len() && {
        let s: HashSet<_> = a.iter().collect();
        b.iter().all(|l| s.contains(l))
    }
}

/// For each bit pattern over `from`, the same assignment read in `to` order.
fn reorder_table(from: &[Label], to: &[Label]) -> Vec<usize> {
    let n = from.len();
    let pos: HashMap<Label, usize> = to.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let shift: Vec<usize> = from.iter().map(|l| n - 1 - pos[l]).collect();
    (0..1usize << n)
        .map(|x| {
            (0..n)
                .filter(|&i| x >> (n - 1 - i) & 1 == 1)
                .fold(0, |acc, i| acc | 1 << shift[i])
        })
        .collect()
}

impl<S: Scalar> Tensor<S> {
    pub fn new(out_wires: Vec<Label>, in_wires: Vec<Label>, data: Vec<S>) -> Result<Self> {
        crate::algebra::matrix::check_distinct(&out_wires, "output wires")?;
        crate::algebra::matrix::check_distinct(&in_wires, "input wires")?;
        let expected = 1usize << (out_wires.len() + in_wires.len());
        if data.len() != expected {
            return Err(Error::ShapeMismatch { expected, found: data.len() });
        }
        Ok(Self { out_wires, in_wires, data })
    }

    pub fn zeros(out_wires: Vec<Label>, in_wires: Vec<Label>) -> Result<Self> {
        let n = 1usize << (out_wires.len() + in_wires.len());
        Self::new(out_wires, in_wires, vec![S::zero(); n])
    }

    /// Tensor with no wires.
    pub fn scalar(v: S) -> Self {
        Self { out_wires: vec![], in_wires: vec![], data: vec![v] }
    }

    /// Basis state `|bits>` on the given wires.
    pub fn ket(wires: Vec<Label>, bits: &[bool]) -> Result<Self> {
        let mut t = Self::zeros(wires, vec![])?;
        let idx = bits.iter().fold(0, |acc, &b| acc << 1 | b as usize);
        t.data[idx] = S::one();
        Ok(t)
    }

    /// Basis costate `<bits|` on the given wires.
    pub fn bra(wires: Vec<Label>, bits: &[bool]) -> Result<Self> {
        Ok(Self::ket(wires, bits)?.transpose())
    }

    pub fn out_wires(&self) -> &[Label] {
        &self.out_wires
    }

    pub fn in_wires(&self) -> &[Label] {
        &self.in_wires
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    /// Coefficient of `|out_bits><in_bits|`.
    pub fn get(&self, out_bits: usize, in_bits: usize) -> &S {
        &self.data[out_bits << self.in_wires.len() | in_bits]
    }

    /// Value of a tensor without wires.
    pub fn as_scalar(&self) -> Option<&S> {
        (self.out_wires.is_empty() && self.in_wires.is_empty()).then(|| &self.data[0])
    }

    /// Swaps the roles of input and output wires.
    pub fn transpose(&self) -> Self {
        let (no, ni) = (self.out_wires.len(), self.in_wires.len());
        let mut data = vec![S::zero(); self.data.len()];
        for o in 0..1usize << no {
            for i in 0..1usize << ni {
                data[i << no | o] = self.data[o << ni | i].clone();
            }
        }
        Self { out_wires: self.in_wires.clone(), in_wires: self.out_wires.clone(), data }
    }

    /// Same tensor with its wire lists listed in a different order.
    pub fn permuted(&self, out_order: &[Label], in_order: &[Label]) -> Result<Self> {
        if !same_set(out_order, &self.out_wires) || !same_set(in_order, &self.in_wires) {
            return Err(Error::LabelMismatch("reordering must permute the wire lists".into()));
        }
        let to = reorder_table(&self.out_wires, out_order);
        let ti = reorder_table(&self.in_wires, in_order);
        let ni = self.in_wires.len();
        let mut data = vec![S::zero(); self.data.len()];
        for (o, &o2) in to.iter().enumerate() {
            for (i, &i2) in ti.iter().enumerate() {
                data[o2 << ni | i2] = self.data[o << ni | i].clone();
            }
        }
        Ok(Self { out_wires: out_order.to_vec(), in_wires: in_order.to_vec(), data })
    }

    /// Coefficient-wise comparison, aligning wire order first.
    pub fn approx_eq(&self, other: &Self) -> bool {
        match other.permuted(&self.out_wires, &self.in_wires) {
            Ok(o) => self.data.iter().zip(&o.data).all(|(a, b)| a.approx_eq(b)),
            Err(_) => false,
        }
    }
}

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::TooLarge { what, size, cap });
    }
    Ok(())
}

/// Tensor of all minors: the coefficient of `|I><J|` is `det(m[I, J])`.
pub fn sdet_expand<S: Scalar>(m: &LabeledMatrix<S>) -> Result<Tensor<S>> {
    sdet_expand_capped(m, DEFAULT_CAP)
}

pub fn sdet_expand_capped<S: Scalar>(m: &LabeledMatrix<S>, cap: usize) -> Result<Tensor<S>> {
    let (r, c) = (m.nrows(), m.ncols());
    check_cap("matrix wire count", r + c, cap)?;
    let mut t = Tensor::zeros(m.rows().to_vec(), m.cols().to_vec())?;
    let members = |mask: usize, n: usize| -> Vec<usize> {
        (0..n).filter(|&i| mask >> (n - 1 - i) & 1 == 1).collect()
    };
    for rm in 0..1usize << r {
        let rows = members(rm, r);
        for cm in 0..1usize << c {
            if cm.count_ones() as usize != rows.len() {
                continue;
            }
            let cols = members(cm, c);
            let sub = m.submatrix(&rows, &cols);
            t.data[rm << c | cm] = S::det_kernel(sub.data().to_vec(), rows.len());
        }
    }
    Ok(t)
}

/// Contracts `a`'s inputs against `b`'s outputs: the composite `a ∘ b`.
pub fn tensor_compose<S: Scalar>(a: &Tensor<S>, b: &Tensor<S>) -> Result<Tensor<S>> {
    if !same_set(&a.in_wires, &b.out_wires) {
        return Err(Error::LabelMismatch(format!(
            "inputs {:?} vs outputs {:?}",
            a.in_wires, b.out_wires
        )));
    }
    let table = reorder_table(&a.in_wires, &b.out_wires);
    let (ao, s, bi) = (a.out_wires.len(), a.in_wires.len(), b.in_wires.len());
    let mut data = vec![S::zero(); 1usize << (ao + bi)];
    for o in 0..1usize << ao {
        for (x, &y) in table.iter().enumerate() {
            let av = &a.data[o << s | x];
            if av.is_zero() {
                continue;
            }
            for i in 0..1usize << bi {
                let bv = &b.data[y << bi | i];
                if bv.is_zero() {
                    continue;
                }
                let slot = &mut data[o << bi | i];
                *slot = slot.clone() + av.clone() * bv.clone();
            }
        }
    }
    Ok(Tensor { out_wires: a.out_wires.clone(), in_wires: b.in_wires.clone(), data })
}

/// Juxtaposition: outputs `a.out ++ b.out`, inputs `a.in ++ b.in`.
pub fn tensor_product<S: Scalar>(a: &Tensor<S>, b: &Tensor<S>) -> Result<Tensor<S>> {
    for (x, y) in [(&a.out_wires, &b.out_wires), (&a.in_wires, &b.in_wires)] {
        let s: HashSet<_> = x.iter().collect();
        if let Some(&l) = y.iter().find(|l| s.contains(l)) {
            return Err(Error::LabelCollision(l));
        }
    }
    let (ao, ai, bo, bi) = (a.out_wires.len(), a.in_wires.len(), b.out_wires.len(), b.in_wires.len());
    let mut data = vec![S::zero(); 1usize << (ao + ai + bo + bi)];
    for (ia, av) in a.data.iter().enumerate() {
        if av.is_zero() {
            continue;
        }
        let (oa, xa) = (ia >> ai, ia & ((1 << ai) - 1));
        for (ib, bv) in b.data.iter().enumerate() {
            if bv.is_zero() {
                continue;
            }
            let (ob, xb) = (ib >> bi, ib & ((1 << bi) - 1));
            let o = oa << bo | ob;
            let i = xa << bi | xb;
            data[o << (ai + bi) | i] = av.clone() * bv.clone();
        }
    }
    let out_wires = a.out_wires.iter().chain(&b.out_wires).copied().collect();
    let in_wires = a.in_wires.iter().chain(&b.in_wires).copied().collect();
    Ok(Tensor { out_wires, in_wires, data })
}

/// Sum of the coefficients whose input and output subsets coincide.
pub fn tensor_trace<S: Scalar>(t: &Tensor<S>) -> Result<S> {
    if !same_set(&t.in_wires, &t.out_wires) {
        return Err(Error::LabelMismatch("trace needs equal input and output wires".into()));
    }
    let table = reorder_table(&t.out_wires, &t.in_wires);
    let n = t.in_wires.len();
    Ok(table
        .iter()
        .enumerate()
        .fold(S::zero(), |acc, (o, &i)| acc + t.data[o << n | i].clone()))
}
