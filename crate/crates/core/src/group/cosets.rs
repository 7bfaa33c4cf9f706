use super::{FiniteGroup, Subgroup};

/// Left cosets `gH`, representatives chosen as the smallest uncovered
/// element index so that `reps[0]` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetTable {
    pub fn new(group: &FiniteGroup, subgroup: &Subgroup) -> Self {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::with_capacity(subgroup.index());
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &h in subgroup.members() {
                coset_of[group.mul(g, h)] = idx;
            }
        }
        CosetTable { reps, coset_of }
    }

    /// Number of cosets `k`.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    #[inline]
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }
}

/// The partition of `G` into the sets `HgH ∪ Hg⁻¹H`.
///
/// Classes are ordered by their smallest member, so class `0` is `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymClassPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl SymClassPartition {
    pub fn new(group: &FiniteGroup, subgroup: &Subgroup) -> Self {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let mut stack = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut members = Vec::new();
            class_of[g] = idx;
            stack.push(g);
            while let Some(x) = stack.pop() {
                members.push(x);
                let mut visit = |y: usize| {
                    if class_of[y] == usize::MAX {
                        class_of[y] = idx;
                        stack.push(y);
                    }
                };
                visit(group.inv(x));
                for &h in subgroup.members() {
                    visit(group.mul(h, x));
                    visit(group.mul(x, h));
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        SymClassPartition { classes, class_of }
    }

    /// Number of classes `|S|`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// The class map `σ`.
    #[inline]
    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }
}
