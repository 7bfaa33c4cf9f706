//! Finite groups given by multiplication tables, their subgroups, left
//! cosets and the symmetrized double-coset partition.

mod cosets;
mod perm;
mod spec;
mod subgroup;

pub use cosets::{CosetTable, SymClassPartition};
pub use perm::{coset_action, psl2_projective_action, regular_action, PermutationRep};
pub use spec::{is_prime, GroupSpec, Psl2Element};
pub use subgroup::{Subgroup, SubgroupSpec};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 256;
const SAMPLED_TRIPLES: usize = 10_000;

/// A finite group with elements `0..order`, element `0` the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, validating the
    /// group axioms. Element `0` must be the identity.
    pub fn from_table(order: usize, mul: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if labels.len() != order {
            return Err(Error::InvalidGroup("label count does not match order".into()));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        for g in 0..order {
            if mul[g] as usize != g || mul[g * order] as usize != g {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![u32::MAX; order];
        for r in 0..order {
            for c in 0..order {
                let x = mul[r * order + c] as usize;
                if seen[x] == r as u32 {
                    return Err(Error::InvalidGroup(format!("row {r} is not a permutation")));
                }
                seen[x] = r as u32;
            }
        }
        seen.fill(u32::MAX);
        for c in 0..order {
            for r in 0..order {
                let x = mul[r * order + c] as usize;
                if seen[x] == c as u32 {
                    return Err(Error::InvalidGroup(format!("column {c} is not a permutation")));
                }
                seen[x] = c as u32;
            }
        }
        let mut inv = vec![0u32; order];
        for g in 0..order {
            let row = &mul[g * order..(g + 1) * order];
            // Latin square guarantees exactly one solution of g*x = 1.
            let x = row.iter().position(|&v| v == 0).expect("latin row");
            inv[g] = x as u32;
        }
        let group = FiniteGroup {
            order,
            mul,
            inv,
            labels,
        };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let fail = |a: usize, b: usize, c: usize| {
            Err(Error::InvalidGroup(format!(
                "not associative on ({}, {}, {})",
                self.labels[a], self.labels[b], self.labels[c]
            )))
        };
        if n <= EXHAUSTIVE_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Order of the element `g`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `g^e` for a non-negative exponent.
    pub fn pow(&self, g: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, g))
    }
}
