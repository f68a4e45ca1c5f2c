use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::ExteriorError;

/// A strictly ascending subset of `[n]`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightIndex(Vec<usize>);

impl WeightIndex {
    /// Sorts the input; rejects zeros and repeats.
    pub fn new(mut elems: Vec<usize>) -> Result<Self, ExteriorError> {
        elems.sort_unstable();
        if elems.first() == Some(&0) || elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(ExteriorError::BadIndex(format!("{elems:?}")));
        }
        Ok(WeightIndex(elems))
    }

    pub fn elems(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn intersection_len(&self, other: &WeightIndex) -> usize {
        self.0.iter().filter(|x| other.contains(**x)).count()
    }

    pub fn without(&self, x: usize) -> WeightIndex {
        WeightIndex(self.0.iter().copied().filter(|&y| y != x).collect())
    }

    pub fn with(&self, x: usize) -> WeightIndex {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&x) {
            v.insert(pos, x);
        }
        WeightIndex(v)
    }

    /// `self ∖ {old} ∪ {new}`.
    pub fn replace(&self, old: usize, new: usize) -> WeightIndex {
        self.without(old).with(new)
    }

    pub fn union(&self, other: &WeightIndex) -> WeightIndex {
        other.0.iter().fold(self.clone(), |acc, &x| acc.with(x))
    }

    pub fn difference(&self, other: &WeightIndex) -> WeightIndex {
        WeightIndex(
            self.0
                .iter()
                .copied()
                .filter(|x| !other.contains(*x))
                .collect(),
        )
    }

    pub fn intersection(&self, other: &WeightIndex) -> WeightIndex {
        WeightIndex(
            self.0
                .iter()
                .copied()
                .filter(|x| other.contains(*x))
                .collect(),
        )
    }

    /// Compact label: digits run together when every element is below 10.
    pub fn label(&self) -> String {
        if self.0.iter().all(|&x| x < 10) {
            self.0.iter().map(|x| x.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for WeightIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for WeightIndex {
    type Err = ExteriorError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(WeightIndex(Vec::new()));
        }
        let elems = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| ExteriorError::BadIndex(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let w = WeightIndex::new(elems.clone())?;
        if w.0 != elems {
            return Err(ExteriorError::BadIndex(format!(
                "{s} is not strictly ascending"
            )));
        }
        Ok(w)
    }
}

impl From<&[usize]> for WeightIndex {
    /// Panics on invalid input; for literals in code.
    fn from(v: &[usize]) -> Self {
        WeightIndex::new(v.to_vec()).expect("valid weight index")
    }
}

#[derive(Debug)]
struct ContextInner {
    n: usize,
    m: usize,
    table: Vec<WeightIndex>,
    rank: HashMap<WeightIndex, usize>,
}

/// The pair `(n, m)` with the lexicographic table of m-subsets of `[n]`.
#[derive(Clone, Debug)]
pub struct ExteriorContext(Arc<ContextInner>);

impl PartialEq for ExteriorContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.n == other.0.n && self.0.m == other.0.m)
    }
}

impl Eq for ExteriorContext {}

impl ExteriorContext {
    pub fn new(n: usize, m: usize) -> Result<Self, ExteriorError> {
        if m == 0 || m > n {
            return Err(ExteriorError::InvalidContext(n, m));
        }
        let table: Vec<WeightIndex> = subsets(&(1..=n).collect::<Vec<_>>(), m)
            .into_iter()
            .map(WeightIndex)
            .collect();
        let rank = table
            .iter()
            .enumerate()
            .map(|(r, w)| (w.clone(), r))
            .collect();
        Ok(ExteriorContext(Arc::new(ContextInner {
            n,
            m,
            table,
            rank,
        })))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    /// `N = C(n, m)`.
    pub fn big_n(&self) -> usize {
        self.0.table.len()
    }

    pub fn indices(&self) -> &[WeightIndex] {
        &self.0.table
    }

    pub fn unrank(&self, r: usize) -> &WeightIndex {
        &self.0.table[r]
    }

    pub fn rank(&self, w: &WeightIndex) -> Option<usize> {
        self.0.rank.get(w).copied()
    }

    /// Validates `elems` as an m-subset of `[n]`.
    pub fn weight(&self, elems: &[usize]) -> Result<WeightIndex, ExteriorError> {
        let w = WeightIndex::new(elems.to_vec())?;
        self.check(&w)?;
        Ok(w)
    }

    pub fn check(&self, w: &WeightIndex) -> Result<(), ExteriorError> {
        if w.len() != self.m() || w.0.last().is_some_and(|&x| x > self.n()) {
            return Err(ExteriorError::BadIndex(format!(
                "{w} is not a {}-subset of [{}]",
                self.m(),
                self.n()
            )));
        }
        Ok(())
    }

    pub fn check_point(&self, i: usize) -> Result<(), ExteriorError> {
        if i == 0 || i > self.n() {
            return Err(ExteriorError::BadIndex(format!(
                "{i} is outside [{}]",
                self.n()
            )));
        }
        Ok(())
    }
}

/// All k-subsets of `from` (which must be ascending), in lexicographic order.
pub fn subsets(from: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(from: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for idx in start..from.len() {
            if from.len() - idx < k - cur.len() {
                break;
            }
            cur.push(from[idx]);
            go(from, k, idx + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(from, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_lexicographic_and_ranked() {
        let ctx = ExteriorContext::new(6, 3).unwrap();
        assert_eq!(ctx.big_n(), binomial(6, 3));
        assert!(ctx.indices().windows(2).all(|w| w[0] < w[1]));
        for r in 0..ctx.big_n() {
            assert_eq!(ctx.rank(ctx.unrank(r)), Some(r));
        }
        assert_eq!(ctx.unrank(0).to_string(), "1,2,3");
    }

    #[test]
    fn parsing() {
        let w: WeightIndex = "1,3,5".parse().unwrap();
        assert_eq!(w.elems(), &[1, 3, 5]);
        assert_eq!(w.label(), "135");
        assert!("3,1".parse::<WeightIndex>().is_err());
        assert!("1,1".parse::<WeightIndex>().is_err());
        let ctx = ExteriorContext::new(4, 2).unwrap();
        assert!(ctx.weight(&[1, 5]).is_err());
        assert!(ctx.weight(&[1, 2, 3]).is_err());
        assert!(ExteriorContext::new(2, 3).is_err());
    }
}
