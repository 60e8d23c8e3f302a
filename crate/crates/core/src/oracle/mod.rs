//! Exponential-time references: minor tensors, network contraction and
//! multicycle enumeration.

mod multicycle;
mod tensor;

pub use multicycle::{enumerate_multicycles, enumerate_multicycles_capped, MulticycleEntry, MulticycleReport};
pub use tensor::{
    sdet_expand, sdet_expand_capped, tensor_compose, tensor_product, tensor_trace, Tensor, DEFAULT_CAP,
};

use crate::algebra::Scalar;
use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// Contracts the circuit as a tensor network.
///
/// Each stack becomes the product of its gates' minor tensors and each
/// wiring the minor tensor of its permutation matrix, so crossings carry the
/// sign of that expansion rather than a plain swap.
pub fn contract_circuit<S: Scalar>(c: &Circuit<S>) -> Result<S> {
    contract_circuit_capped(c, DEFAULT_CAP)
}

pub fn contract_circuit_capped<S: Scalar>(c: &Circuit<S>, cap: usize) -> Result<S> {
    let total = c.total_wires();
    if total > cap {
        return Err(Error::TooLarge { what: "circuit wire count", size: total, cap });
    }
    let mut acc: Option<Tensor<S>> = None;
    for (k, stack) in c.stacks().iter().enumerate() {
        let mut layer = Tensor::scalar(S::one());
        for g in &stack.gates {
            layer = tensor_product(&layer, &sdet_expand_capped(g, cap)?)?;
        }
        let step = tensor_compose(&sdet_expand_capped(&c.wiring_matrix(k)?, cap)?, &layer)?;
        acc = Some(match acc {
            None => step,
            Some(a) => tensor_compose(&step, &a)?,
        });
    }
    match acc {
        None => Ok(S::one()),
        Some(t) => tensor_trace(&t),
    }
}
