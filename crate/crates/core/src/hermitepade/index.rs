use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Multi-index (n_0, …, n_m).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidIndex("a multi-index needs at least one component".into()));
        }
        Ok(MultiIndex(components))
    }

    /// Parses "2,1,1", "(2,1,1)" or "2 1 1".
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()).collect();
        let comps = parts
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| Error::InvalidIndex(format!("bad component {p:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn norm(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Adds one to component `l`.
    pub fn bump(&self, l: usize) -> Self {
        let mut c = self.0.clone();
        c[l] += 1;
        MultiIndex(c)
    }

    /// Componentwise ≤.
    pub fn le(&self, o: &Self) -> bool {
        self.len() == o.len() && self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for MultiIndex {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.0.serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// n_0 ≥ n_1 ≥ ⋯ ≥ n_m.
    pub decreasing: bool,
    /// No i < j < k with n_i < n_j ≤ n_k.
    pub star: bool,
}

pub fn classify_multiindex(n: &MultiIndex) -> Classification {
    let c = n.components();
    let decreasing = c.windows(2).all(|w| w[0] >= w[1]);
    let mut star = true;
    'outer: for i in 0..c.len() {
        for j in i + 1..c.len() {
            if c[i] >= c[j] {
                continue;
            }
            for k in j + 1..c.len() {
                if c[j] <= c[k] {
                    star = false;
                    break 'outer;
                }
            }
        }
    }
    Classification { decreasing, star }
}

/// (n₁; n₂) with |n₁| = |n₂| + 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinedIndex {
    pub n1: MultiIndex,
    pub n2: MultiIndex,
}

impl CombinedIndex {
    pub fn new(n1: MultiIndex, n2: MultiIndex) -> Result<Self> {
        if n1.norm() != n2.norm() + 1 {
            return Err(Error::InvalidIndex(format!("|{n1}| must equal |{n2}| + 1")));
        }
        Ok(CombinedIndex { n1, n2 })
    }

    /// Parses "((2,1);(2))" or "2,1;2".
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).filter(|r| r.contains(';')).unwrap_or(t);
        let (a, b) = t.split_once(';').ok_or_else(|| Error::InvalidIndex(format!("missing ';' in {s:?}")))?;
        Self::new(MultiIndex::parse(a)?, MultiIndex::parse(b)?)
    }

    /// n^l: one more in component `l1` of n₁ and `l2` of n₂.
    pub fn bump(&self, l1: usize, l2: usize) -> Self {
        CombinedIndex { n1: self.n1.bump(l1), n2: self.n2.bump(l2) }
    }
}

impl fmt::Display for CombinedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.n1, self.n2)
    }
}

impl Serialize for CombinedIndex {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All vectors of `len` non-negative integers summing to `total`, in lexicographic order.
pub fn compositions(len: usize, total: usize) -> Vec<MultiIndex> {
    fn rec(len: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if len == 1 {
            prefix.push(total);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(len - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len > 0 {
        rec(len, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Multi-indices with `len` components and norm in `lo..=hi`, graded then lexicographic.
pub fn multi_indices(len: usize, lo: usize, hi: usize) -> Vec<MultiIndex> {
    (lo..=hi).flat_map(|t| compositions(len, t)).collect()
}

/// Every (n₁; n₂) with n₁ ∈ ℤ₊^{m₁+1}, n₂ ∈ ℤ₊^{m₂+1}, 1 ≤ |n₁| ≤ budget,
/// ordered by |n₁| and then lexicographically on (n₁, n₂).
pub fn combined_indices(m1: usize, m2: usize, budget: usize) -> Vec<CombinedIndex> {
    let mut out = Vec::new();
    for t in 1..=budget {
        for n1 in compositions(m1 + 1, t) {
            for n2 in compositions(m2 + 1, t - 1) {
                out.push(CombinedIndex { n1: n1.clone(), n2 });
            }
        }
    }
    out
}

/// Step-line sequence through decreasing indices: (1,0,…), (1,1,0,…), …, (1,…,1), (2,1,…,1), …
pub fn step_line(len: usize, max_norm: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0; len];
    for t in 0..max_norm {
        cur[t % len] += 1;
        out.push(MultiIndex(cur.clone()));
    }
    out
}

/// Diagonal of combined indices starting at ((1,0,…);(0,…)), stepping n₁ and n₂
/// along their step lines, so every member has decreasing components.
pub fn diagonal(m1: usize, m2: usize, budget: usize) -> Vec<CombinedIndex> {
    let a = step_line(m1 + 1, budget);
    let mut b = vec![MultiIndex(vec![0; m2 + 1])];
    b.extend(step_line(m2 + 1, budget.saturating_sub(1)));
    a.into_iter().zip(b).map(|(n1, n2)| CombinedIndex { n1, n2 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_multiindex(&mi(&[3, 2, 2])), Classification { decreasing: true, star: true });
        assert_eq!(classify_multiindex(&mi(&[1, 2, 2])), Classification { decreasing: false, star: false });
        assert_eq!(classify_multiindex(&mi(&[2, 1, 3])), Classification { decreasing: false, star: true });
        assert!(classify_multiindex(&mi(&[0, 1])).star);
    }

    #[test]
    fn combined_index_norms_and_parsing() {
        assert!(CombinedIndex::new(mi(&[1, 1]), mi(&[2])).is_err());
        let n = CombinedIndex::parse("((2,1);(2))").unwrap();
        assert_eq!(n.n1, mi(&[2, 1]));
        assert_eq!(n.to_string(), "((2,1);(2))");
        assert_eq!(CombinedIndex::parse("1,1;1").unwrap(), CombinedIndex::new(mi(&[1, 1]), mi(&[1])).unwrap());
        assert!(CombinedIndex::parse("1,1").is_err());
        assert!(MultiIndex::parse("1,x").is_err());
        assert_eq!(MultiIndex::parse("(2, 0, 1)").unwrap(), mi(&[2, 0, 1]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(compositions(3, 2).len(), 6);
        let all = combined_indices(2, 0, 6);
        // Σ_{t=1}^{6} C(t+2, 2)
        assert_eq!(all.len(), 3 + 6 + 10 + 15 + 21 + 28);
        assert!(all.windows(2).all(|w| w[0].n1.norm() <= w[1].n1.norm()));
        assert_eq!(combined_indices(0, 0, 1), vec![CombinedIndex::new(mi(&[1]), mi(&[0])).unwrap()]);
    }

    #[test]
    fn diagonal_is_decreasing_and_consecutive() {
        let d = diagonal(2, 0, 6);
        assert_eq!(d.len(), 6);
        assert_eq!(d[0].to_string(), "((1,0,0);(0))");
        assert_eq!(d[3].to_string(), "((2,1,1);(3))");
        for w in d.windows(2) {
            assert!(classify_multiindex(&w[1].n1).decreasing);
            assert!(w[0].n1.le(&w[1].n1) && w[0].n2.le(&w[1].n2));
            assert_eq!(w[1].n1.norm(), w[0].n1.norm() + 1);
        }
    }
}
