//! Subsets of the boundary index set {1..n}, n <= 64.

use std::cmp::Ordering;
use std::fmt;

/// A set of boundary points; bit `i-1` stands for point `i`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub fn empty() -> Subset {
        Subset(0)
    }

    pub fn from_bits(bits: u64) -> Subset {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_elems(it: impl IntoIterator<Item = usize>) -> Subset {
        let mut s = 0u64;
        for i in it {
            assert!((1..=64).contains(&i), "point {} out of range", i);
            s |= 1 << (i - 1);
        }
        Subset(s)
    }

    /// The set `{1..n}`.
    pub fn full(n: usize) -> Subset {
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    /// Parses digit strings like `135`; longer labels use `{1,10,12}`.
    pub fn parse(s: &str) -> Option<Subset> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            if inner.trim().is_empty() {
                return Some(Subset::empty());
            }
            let mut v = Vec::new();
            for p in inner.split(',') {
                let x: usize = p.trim().parse().ok()?;
                if x == 0 || x > 64 {
                    return None;
                }
                v.push(x);
            }
            return Some(Subset::from_elems(v));
        }
        let mut v = Vec::new();
        for ch in s.chars() {
            let d = ch.to_digit(10)? as usize;
            if d == 0 {
                return None;
            }
            v.push(d);
        }
        Some(Subset::from_elems(v))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=64).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << (i - 1);
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << (i - 1));
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn elems(self) -> Vec<usize> {
        (1..=64).filter(|&i| self.contains(i)).collect()
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersect(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn minus(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    /// Image under a map of points.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Subset {
        Subset::from_elems(self.elems().into_iter().map(f))
    }

    /// Indicator vector of length `n`.
    pub fn indicator(self, n: usize) -> Vec<i64> {
        (1..=n).map(|i| self.contains(i) as i64).collect()
    }

    /// All `k`-subsets of `{1..n}` in lexicographic order.
    pub fn all_k_subsets(n: usize, k: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Subset>) {
            if cur.len() == k {
                out.push(Subset::from_elems(cur.iter().copied()));
                return;
            }
            for i in start..=n {
                if n - i + 1 < k - cur.len() {
                    break;
                }
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(1, n, k, &mut cur, &mut out);
        out
    }
}

impl Ord for Subset {
    fn cmp(&self, o: &Subset) -> Ordering {
        self.elems().cmp(&o.elems())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, o: &Subset) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.elems();
        if e.iter().all(|&x| x <= 9) && !e.is_empty() {
            for x in e {
                write!(f, "{}", x)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s = Subset::parse("135").unwrap();
        assert_eq!(s.elems(), vec![1, 3, 5]);
        assert_eq!(s.to_string(), "135");
        let t = Subset::parse("{1,10}").unwrap();
        assert_eq!(t.to_string(), "{1,10}");
        assert_eq!(Subset::empty().to_string(), "{}");
        assert!(Subset::parse("102").is_none());
    }

    #[test]
    fn k_subsets_lex() {
        let all = Subset::all_k_subsets(5, 3);
        assert_eq!(all.len(), 10);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all[0].to_string(), "123");
        assert_eq!(all[9].to_string(), "345");
    }

    #[test]
    fn complement() {
        let s = Subset::parse("157").unwrap();
        assert_eq!(s.complement(7).to_string(), "2346");
    }
}
