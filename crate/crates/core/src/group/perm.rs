use super::spec::{psl2, Psl2Element};
use super::{CosetTable, FiniteGroup, Subgroup};
use crate::error::Result;

/// A permutation action of a group: `perms[g][x]` is the image of point `x`
/// under `g`. Actions are left actions, so `perms[g*h] = perms[g] ∘ perms[h]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationRep {
    degree: usize,
    perms: Vec<Vec<u32>>,
}

impl PermutationRep {
    pub fn new(degree: usize, perms: Vec<Vec<u32>>) -> Self {
        debug_assert!(perms.iter().all(|p| p.len() == degree));
        PermutationRep { degree, perms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of group elements the action is defined on.
    pub fn group_order(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, g: usize) -> &[u32] {
        &self.perms[g]
    }

    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.perms[g][x] as usize
    }

    /// Number of points fixed by `g`.
    pub fn fixed_points(&self, g: usize) -> usize {
        self.perms[g]
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x == y as usize)
            .count()
    }

    /// Checks `perm(a*b) = perm(a) ∘ perm(b)` for the given pairs.
    pub fn is_homomorphism_on(&self, group: &FiniteGroup, pairs: impl IntoIterator<Item = (usize, usize)>) -> bool {
        pairs.into_iter().all(|(a, b)| {
            let ab = group.mul(a, b);
            (0..self.degree).all(|x| self.apply(ab, x) == self.apply(a, self.apply(b, x)))
        })
    }
}

/// Right regular action `h: g ↦ g h⁻¹` on the group's own elements.
pub fn regular_action(group: &FiniteGroup) -> PermutationRep {
    let n = group.order();
    let perms = (0..n)
        .map(|h| {
            let hinv = group.inv(h);
            (0..n).map(|g| group.mul(g, hinv) as u32).collect()
        })
        .collect();
    PermutationRep::new(n, perms)
}

/// Action of `G` on the left cosets of `H` by left multiplication.
pub fn coset_action(group: &FiniteGroup, subgroup: &Subgroup) -> PermutationRep {
    let table = CosetTable::new(group, subgroup);
    let perms = (0..group.order())
        .map(|g| {
            table
                .reps()
                .iter()
                .map(|&r| table.coset_of(group.mul(g, r)) as u32)
                .collect()
        })
        .collect();
    PermutationRep::new(table.len(), perms)
}

/// Möbius action of `PSL(2, Z_p)` on the projective line, points ordered
/// `∞, 0, 1, ..., p-1` (point `0` is `∞`, point `1 + x` is `x`).
///
/// Element indices match `GroupSpec::Psl2 { p }.build()`.
pub fn psl2_projective_action(p: u64) -> Result<(FiniteGroup, PermutationRep)> {
    let (group, elements) = psl2(p)?;
    let perms = elements.iter().map(|e| mobius_perm(e, p)).collect();
    Ok((group, PermutationRep::new(p as usize + 1, perms)))
}

fn mobius_perm(e: &Psl2Element, p: u64) -> Vec<u32> {
    let [a, b, c, d] = e.0;
    let inv = |x: u64| pow_mod(x, p - 2, p);
    let image = |point: usize| -> u32 {
        if point == 0 {
            // ∞ ↦ a/c
            if c == 0 {
                0
            } else {
                (1 + a * inv(c) % p) as u32
            }
        } else {
            let z = point as u64 - 1;
            let den = (c * z + d) % p;
            if den == 0 {
                0
            } else {
                (1 + (a * z + b) % p * inv(den) % p) as u32
            }
        }
    };
    (0..=p as usize).map(image).collect()
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}
