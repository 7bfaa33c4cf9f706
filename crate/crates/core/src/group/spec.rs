use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// JSON-serializable description of a group.
///
/// ```json
/// {"family": "cyclic", "n": 3}
/// {"family": "direct_sum", "factors": [{"family": "cyclic", "n": 3}, {"family": "cyclic", "n": 3}]}
/// {"family": "dihedral", "order": 6}
/// {"family": "quaternion"}
/// {"family": "psl2", "p": 5}
/// {"family": "table", "table": [[0, 1], [1, 0]]}
/// {"family": "perm", "generators": [[1, 2, 0], [1, 0, 2]]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    DirectSum {
        factors: Vec<GroupSpec>,
    },
    /// Symmetries of a regular polygon; `order` is the group order `2n`.
    Dihedral {
        order: usize,
    },
    Quaternion,
    Psl2 {
        p: u64,
    },
    Table {
        table: Vec<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Perm {
        generators: Vec<Vec<u32>>,
    },
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { n } => cyclic(*n),
            GroupSpec::DirectSum { factors } => {
                let groups = factors.iter().map(GroupSpec::build).collect::<Result<Vec<_>>>()?;
                direct_sum(&groups)
            }
            GroupSpec::Dihedral { order } => dihedral(*order),
            GroupSpec::Quaternion => quaternion(),
            GroupSpec::Psl2 { p } => psl2(*p).map(|(g, _)| g),
            GroupSpec::Table { table, labels } => from_rows(table, labels.clone()),
            GroupSpec::Perm { generators } => from_permutations(generators),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group needs n >= 1".into()));
    }
    let mul = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
        .collect();
    FiniteGroup::from_table(n, mul, (0..n).map(|i| i.to_string()).collect())
}

/// Elements are tuples in lexicographic order with the last factor varying
/// fastest.
fn direct_sum(groups: &[FiniteGroup]) -> Result<FiniteGroup> {
    if groups.is_empty() {
        return Err(Error::InvalidGroup("direct sum of zero factors".into()));
    }
    let order: usize = groups.iter().map(FiniteGroup::order).product();
    let decode = |mut x: usize| -> Vec<usize> {
        let mut out = vec![0; groups.len()];
        for (slot, g) in out.iter_mut().zip(groups).rev() {
            *slot = x % g.order();
            x /= g.order();
        }
        out
    };
    let encode = |v: &[usize]| -> usize {
        v.iter().zip(groups).fold(0, |acc, (&c, g)| acc * g.order() + c)
    };
    let tuples: Vec<Vec<usize>> = (0..order).map(decode).collect();
    let mut mul = Vec::with_capacity(order * order);
    for a in &tuples {
        for b in &tuples {
            let c: Vec<usize> = groups
                .iter()
                .zip(a.iter().zip(b))
                .map(|(g, (&x, &y))| g.mul(x, y))
                .collect();
            mul.push(encode(&c) as u32);
        }
    }
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(groups).map(|(&c, g)| g.label(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    FiniteGroup::from_table(order, mul, labels)
}

/// Element `i < n` is `r^i`, element `n + i` is `s*r^i`.
fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::InvalidGroup(format!(
            "dihedral group order must be even and at least 2, got {order}"
        )));
    }
    let n = order / 2;
    let split = |x: usize| (x / n, x % n);
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            let (f1, i1) = split(a);
            let (f2, i2) = split(b);
            // r^i s = s r^{-i}
            let rot = (if f2 == 1 { n - i1 + i2 } else { i1 + i2 }) % n;
            mul.push((((f1 + f2) % 2) * n + rot) as u32);
        }
    }
    let rot_label = |i: usize| match i {
        0 => String::new(),
        1 => "r".to_string(),
        _ => format!("r^{i}"),
    };
    let labels = (0..order)
        .map(|x| {
            let (f, i) = split(x);
            match (f, i) {
                (0, 0) => "1".to_string(),
                (0, _) => rot_label(i),
                (_, 0) => "s".to_string(),
                _ => format!("s*{}", rot_label(i)),
            }
        })
        .collect();
    FiniteGroup::from_table(order, mul, labels)
}

/// Elements in the order `1, i, j, k, -1, -i, -j, -k`.
fn quaternion() -> Result<FiniteGroup> {
    // unit products: (unit_a, unit_b) -> (sign, unit), units 0=1,1=i,2=j,3=k
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mut mul = Vec::with_capacity(64);
    for a in 0..8 {
        for b in 0..8 {
            let (neg, u) = UNIT[a % 4][b % 4];
            let sign = (a >= 4) ^ (b >= 4) ^ neg;
            mul.push((u + if sign { 4 } else { 0 }) as u32);
        }
    }
    let labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_table(8, mul, labels)
}

/// A normalized representative `[a b; c d]` of an element of `PSL(2, Z_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Psl2Element(pub [u64; 4]);

impl Psl2Element {
    /// Scales by `±1` so the first nonzero entry lies in `1..=(p-1)/2`.
    pub fn normalized(m: [u64; 4], p: u64) -> Self {
        let first = m.iter().copied().find(|&x| x != 0).unwrap_or(0);
        if first > (p - 1) / 2 {
            Psl2Element(m.map(|x| (p - x) % p))
        } else {
            Psl2Element(m)
        }
    }

    fn key(&self, p: u64) -> usize {
        self.0.iter().fold(0u64, |acc, &x| acc * p + x) as usize
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = other.0;
        Self::normalized(
            [
                (a * e + b * g) % p,
                (a * f + b * h) % p,
                (c * e + d * g) % p,
                (c * f + d * h) % p,
            ],
            p,
        )
    }
}

/// `PSL(2, Z_p)` with the identity first and the remaining normalized
/// matrices in row-major lexicographic order.
pub(crate) fn psl2(p: u64) -> Result<(FiniteGroup, Vec<Psl2Element>)> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut set = BTreeSet::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        set.insert(Psl2Element::normalized([a, b, c, d], p));
                    }
                }
            }
        }
    }
    let identity = Psl2Element([1, 0, 0, 1]);
    set.remove(&identity);
    let elements: Vec<Psl2Element> = std::iter::once(identity).chain(set).collect();
    let order = elements.len();
    let mut index = vec![u32::MAX; (p * p * p * p) as usize];
    for (i, e) in elements.iter().enumerate() {
        index[e.key(p)] = i as u32;
    }
    let mut mul = Vec::with_capacity(order * order);
    for x in &elements {
        for y in &elements {
            mul.push(index[x.mul(y, p).key(p)]);
        }
    }
    let labels = elements
        .iter()
        .map(|e| format!("[{} {}; {} {}]", e.0[0], e.0[1], e.0[2], e.0[3]))
        .collect();
    Ok((FiniteGroup::from_table(order, mul, labels)?, elements))
}

fn from_rows(rows: &[Vec<u32>], labels: Option<Vec<String>>) -> Result<FiniteGroup> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidGroup("multiplication table is not square".into()));
    }
    let labels = match labels {
        Some(l) => l,
        None => (0..n).map(|i| i.to_string()).collect(),
    };
    FiniteGroup::from_table(n, rows.concat(), labels)
}

/// Closure of a set of permutations of `0..degree`, with the identity
/// first and the other elements in lexicographic order of their image
/// tuples.
fn from_permutations(generators: &[Vec<u32>]) -> Result<FiniteGroup> {
    let degree = generators.first().map(Vec::len).unwrap_or(0);
    if generators.iter().any(|g| g.len() != degree) {
        return Err(Error::InvalidGroup("permutation generators of mismatched degree".into()));
    }
    for g in generators {
        let mut seen = vec![false; degree];
        for &x in g {
            if x as usize >= degree || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation")));
            }
        }
    }
    let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { b.iter().map(|&x| a[x as usize]).collect() };
    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    // identity is the lexicographic minimum, so BTreeSet order already
    // places it first.
    let elements: Vec<Vec<u32>> = seen.into_iter().collect();
    let index: HashMap<&[u32], u32> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i as u32))
        .collect();
    let order = elements.len();
    let mut mul = Vec::with_capacity(order * order);
    // product a*b acts as "apply b, then a"
    for a in &elements {
        for b in &elements {
            mul.push(index[compose(a, b).as_slice()]);
        }
    }
    let labels = elements
        .iter()
        .map(|e| {
            let parts: Vec<String> = e.iter().map(u32::to_string).collect();
            format!("[{}]", parts.join(" "))
        })
        .collect();
    FiniteGroup::from_table(order, mul, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_three() {
        let g = GroupSpec::from_json(r#"{"family":"cyclic","n":3}"#).unwrap().build().unwrap();
        assert_eq!(g.order(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.mul(i, j), (i + j) % 3);
            }
        }
    }

    #[test]
    fn psl2_orders() {
        for p in [3u64, 5, 7] {
            let g = GroupSpec::Psl2 { p }.build().unwrap();
            assert_eq!(g.order() as u64, p * (p * p - 1) / 2);
            assert_eq!(g.label(0), "[1 0; 0 1]");
        }
    }

    #[test]
    fn psl2_rejects_composite_and_two() {
        assert_eq!(GroupSpec::Psl2 { p: 9 }.build(), Err(Error::NotOddPrime(9)));
        assert_eq!(GroupSpec::Psl2 { p: 2 }.build(), Err(Error::NotOddPrime(2)));
    }

    #[test]
    fn quaternion_has_one_involution() {
        let g = GroupSpec::Quaternion.build().unwrap();
        assert_eq!(g.order(), 8);
        let involutions: Vec<usize> = (0..8).filter(|&x| g.element_order(x) == 2).collect();
        assert_eq!(involutions, vec![4]);
        assert!(!g.is_abelian());
        // i*j = k, j*i = -k
        assert_eq!(g.mul(1, 2), 3);
        assert_eq!(g.mul(2, 1), 7);
    }

    #[test]
    fn dihedral_six() {
        let g = GroupSpec::Dihedral { order: 6 }.build().unwrap();
        assert!(!g.is_abelian());
        assert_eq!(g.labels(), ["1", "r", "r^2", "s", "s*r", "s*r^2"]);
        assert_eq!(g.element_order(1), 3);
        for x in 3..6 {
            assert_eq!(g.element_order(x), 2);
        }
        assert!(GroupSpec::Dihedral { order: 5 }.build().is_err());
    }

    #[test]
    fn direct_sum_orders_last_fastest() {
        let z3 = GroupSpec::Cyclic { n: 3 };
        let g = GroupSpec::DirectSum {
            factors: vec![z3.clone(), z3],
        }
        .build()
        .unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.label(1), "(0,1)");
        assert_eq!(g.label(3), "(1,0)");
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.inv(4), 8);
    }

    #[test]
    fn table_validation() {
        let bad = GroupSpec::Table {
            table: vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]],
            labels: None,
        };
        assert!(bad.build().is_err());
        // a latin square with identity 0 that is not associative (order 5 loop)
        let loop5 = GroupSpec::Table {
            table: vec![
                vec![0, 1, 2, 3, 4],
                vec![1, 0, 3, 4, 2],
                vec![2, 4, 0, 1, 3],
                vec![3, 2, 4, 0, 1],
                vec![4, 3, 1, 2, 0],
            ],
            labels: None,
        };
        let err = loop5.build().unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
        let z2 = GroupSpec::Table {
            table: vec![vec![0, 1], vec![1, 0]],
            labels: Some(vec!["e".into(), "x".into()]),
        };
        assert_eq!(z2.build().unwrap().label(1), "x");
    }

    #[test]
    fn permutation_generators() {
        let s3 = GroupSpec::Perm {
            generators: vec![vec![1, 2, 0], vec![1, 0, 2]],
        }
        .build()
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.label(0), "[0 1 2]");
        let mismatched = GroupSpec::Perm {
            generators: vec![vec![1, 0], vec![1, 2, 0]],
        };
        assert!(mismatched.build().is_err());
    }

    #[test]
    fn json_round_trip() {
        let spec = GroupSpec::DirectSum {
            factors: vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Quaternion],
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(GroupSpec::from_json(&text).unwrap(), spec);
    }
}
