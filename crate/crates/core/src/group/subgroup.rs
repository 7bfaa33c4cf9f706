use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// JSON form of a subgroup: either generators (closed under products) or
/// an explicit member list (validated).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    Generators { generators: Vec<usize> },
    Members { members: Vec<usize> },
}

impl SubgroupSpec {
    pub fn trivial() -> Self {
        SubgroupSpec::Generators { generators: vec![0] }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn resolve(&self, group: &FiniteGroup) -> Result<Subgroup> {
        match self {
            SubgroupSpec::Generators { generators } => {
                // an empty generator list means the trivial subgroup here
                Subgroup::closure(group, generators, true)
            }
            SubgroupSpec::Members { members } => Subgroup::from_members(group, members),
        }
    }
}

/// A subgroup stored as a sorted member list plus a membership mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    group_order: usize,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(group.order(), vec![0])
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(group.order(), (0..group.order()).collect())
    }

    fn from_sorted_unchecked(group_order: usize, members: Vec<usize>) -> Self {
        let mut mask = vec![false; group_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup {
            group_order,
            members,
            mask,
        }
    }

    /// Smallest subgroup containing `generators`, found by breadth-first
    /// search over right multiplication by the generators.
    pub fn closure(group: &FiniteGroup, generators: &[usize], allow_empty: bool) -> Result<Self> {
        if generators.is_empty() && !allow_empty {
            return Err(Error::InvalidSubgroup("empty generator set".into()));
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= group.order()) {
            return Err(Error::InvalidSubgroup(format!(
                "generator {g} out of range for a group of order {}",
                group.order()
            )));
        }
        let mut mask = vec![false; group.order()];
        mask[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = group.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let members = (0..group.order()).filter(|&x| mask[x]).collect();
        Ok(Subgroup {
            group_order: group.order(),
            members,
            mask,
        })
    }

    pub fn from_members(group: &FiniteGroup, members: &[usize]) -> Result<Self> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&g) = sorted.iter().find(|&&g| g >= group.order()) {
            return Err(Error::InvalidSubgroup(format!("member {g} out of range")));
        }
        if sorted.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("does not contain the identity".into()));
        }
        let sub = Self::from_sorted_unchecked(group.order(), sorted);
        for &a in &sub.members {
            if !sub.mask[group.inv(a)] {
                return Err(Error::InvalidSubgroup("not closed under inverses".into()));
            }
            for &b in &sub.members {
                if !sub.mask[group.mul(a, b)] {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed: {} * {} leaves the set",
                        group.label(a),
                        group.label(b)
                    )));
                }
            }
        }
        if group.order() % sub.order() != 0 {
            return Err(Error::InvalidSubgroup("order does not divide the group order".into()));
        }
        Ok(sub)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.mask[g]
    }

    pub fn index(&self) -> usize {
        self.group_order / self.members.len()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn closure_in_z6() {
        let g = GroupSpec::Cyclic { n: 6 }.build().unwrap();
        let h = Subgroup::closure(&g, &[3], false).unwrap();
        assert_eq!(h.members(), &[0, 3]);
        assert_eq!(h.index(), 3);
    }

    #[test]
    fn empty_generators_respect_flag() {
        let g = GroupSpec::Cyclic { n: 4 }.build().unwrap();
        assert_eq!(Subgroup::closure(&g, &[], true).unwrap().members(), &[0]);
        assert!(Subgroup::closure(&g, &[], false).is_err());
        assert!(Subgroup::closure(&g, &[4], false).is_err());
    }

    #[test]
    fn unipotent_subgroup_of_psl2_5() {
        let g = GroupSpec::Psl2 { p: 5 }.build().unwrap();
        let a = g.labels().iter().position(|l| l == "[1 1; 0 1]").unwrap();
        let h = Subgroup::closure(&g, &[a], false).unwrap();
        assert_eq!(h.order(), 5);
    }

    #[test]
    fn member_validation() {
        let g = GroupSpec::Cyclic { n: 6 }.build().unwrap();
        assert!(Subgroup::from_members(&g, &[0, 2, 4]).is_ok());
        assert!(Subgroup::from_members(&g, &[0, 1]).is_err());
        assert!(Subgroup::from_members(&g, &[2, 4]).is_err());
    }

    #[test]
    fn spec_json_forms() {
        let g = GroupSpec::Quaternion.build().unwrap();
        let center = SubgroupSpec::from_json(r#"{"generators":[4]}"#).unwrap();
        assert_eq!(center.resolve(&g).unwrap().members(), &[0, 4]);
        let listed = SubgroupSpec::from_json(r#"{"members":[0,4]}"#).unwrap();
        assert_eq!(listed.resolve(&g).unwrap().members(), &[0, 4]);
        let empty = SubgroupSpec::from_json(r#"{"generators":[]}"#).unwrap();
        assert_eq!(empty.resolve(&g).unwrap().order(), 1);
    }
}
