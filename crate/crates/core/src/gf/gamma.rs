use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::PrimeField;
use crate::error::{Error, Result};

/// A multiplicative subgroup of GF(p)^*, stored as its sorted elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgroupGamma {
    field: PrimeField,
    elements: Vec<u8>,
}

impl SubgroupGamma {
    pub fn new(field: PrimeField, elements: impl IntoIterator<Item = u8>) -> Result<Self> {
        let set: BTreeSet<u8> = elements.into_iter().collect();
        let elements: Vec<u8> = set.into_iter().collect();
        let bad = || Error::NotASubgroup { p: field.p(), elements: elements.clone() };
        if !elements.contains(&1) || elements.iter().any(|&g| g == 0 || g >= field.p()) {
            return Err(bad());
        }
        for &a in &elements {
            for &b in &elements {
                if elements.binary_search(&field.mul(a, b)).is_err() {
                    return Err(bad());
                }
            }
        }
        Ok(Self { field, elements })
    }

    /// The cyclic subgroup generated by `g`.
    pub fn generated_by(field: PrimeField, g: u8) -> Result<Self> {
        if g == 0 || g >= field.p() {
            return Err(Error::NotASubgroup { p: field.p(), elements: vec![g] });
        }
        let mut els = vec![1u8];
        let mut x = g;
        while x != 1 {
            els.push(x);
            x = field.mul(x, g);
        }
        Self::new(field, els)
    }

    pub fn trivial(field: PrimeField) -> Self {
        Self { field, elements: vec![1] }
    }

    pub fn full(field: PrimeField) -> Self {
        Self { field, elements: field.nonzero().collect() }
    }

    /// The unique subgroup of the given order (GF(p)^* is cyclic).
    pub fn of_order(field: PrimeField, order: usize) -> Result<Self> {
        let n = field.order() - 1;
        if order == 0 || !n.is_multiple_of(order) {
            return Err(Error::Precondition(format!(
                "GF({})^* has no subgroup of order {order}",
                field.p()
            )));
        }
        let gen = field.nonzero().find(|&a| field.mult_order(a) == n).expect("cyclic group");
        Self::generated_by(field, field.pow(gen, (n / order) as u64))
    }

    /// Every subgroup of GF(p)^*, ordered by size.
    pub fn all(field: PrimeField) -> Vec<Self> {
        let n = field.order() - 1;
        (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| Self::of_order(field, d).unwrap()).collect()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn elements(&self) -> &[u8] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, a: u8) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.len() + 1 == self.field.order()
    }

    /// Least element of GF(p)^* outside the subgroup.
    pub fn least_non_member(&self) -> Option<u8> {
        self.field.nonzero().find(|&a| !self.contains(a))
    }
}
