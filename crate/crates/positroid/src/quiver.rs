//! Ice quivers and multigraph isomorphism.

use crate::graph::{Color, End, PlabicGraph};
use crate::layout::Layout;

/// Quiver on face ids; frozen vertices are the boundary faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IceQuiver {
    frozen: Vec<bool>,
    arrows: Vec<(usize, usize)>,
}

impl IceQuiver {
    pub fn new(frozen: Vec<bool>, arrows: Vec<(usize, usize)>) -> IceQuiver {
        IceQuiver { frozen, arrows }
    }

    /// One arrow per (half-)edge, black endpoint on its left.
    pub fn dual(g: &PlabicGraph, lay: &Layout) -> IceQuiver {
        let frozen = lay.faces().iter().map(|f| f.is_boundary()).collect();
        let mut arrows = Vec::new();
        for e in 0..g.edge_count() {
            let d = match g.ends(e) {
                (End::Node(a), End::Node(_)) => {
                    if g.color(a) == Color::Black {
                        2 * e
                    } else {
                        2 * e + 1
                    }
                }
                (End::Boundary(_), End::Node(v)) => {
                    if g.color(v) == Color::Black {
                        2 * e + 1
                    } else {
                        2 * e
                    }
                }
                _ => unreachable!(),
            };
            let (left, right) = lay.sides(d);
            arrows.push((right, left));
        }
        IceQuiver { frozen, arrows }
    }

    pub fn vertex_count(&self) -> usize {
        self.frozen.len()
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.frozen[v]
    }

    pub fn frozen(&self) -> &[bool] {
        &self.frozen
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.frozen.len()).filter(|&v| !self.frozen[v]).collect()
    }

    pub fn frozen_vertices(&self) -> Vec<usize> {
        (0..self.frozen.len()).filter(|&v| self.frozen[v]).collect()
    }

    /// Arrows joining two frozen vertices; kept but ignored by mutation.
    pub fn frozen_arrows(&self) -> Vec<(usize, usize)> {
        self.arrows
            .iter()
            .copied()
            .filter(|&(a, b)| self.frozen[a] && self.frozen[b])
            .collect()
    }

    /// `counts[i][j]` = number of arrows `i -> j`.
    pub fn counts(&self) -> Vec<Vec<i64>> {
        let nv = self.frozen.len();
        let mut c = vec![vec![0i64; nv]; nv];
        for &(a, b) in &self.arrows {
            c[a][b] += 1;
        }
        c
    }

    /// `b[i][j] = #(j -> i) - #(i -> j)`, zero between frozen vertices.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let c = self.counts();
        let nv = self.frozen.len();
        let mut b = vec![vec![0i64; nv]; nv];
        for i in 0..nv {
            for j in 0..nv {
                if self.frozen[i] && self.frozen[j] {
                    continue;
                }
                b[i][j] = c[j][i] - c[i][j];
            }
        }
        b
    }

    /// Pairs of opposite arrows touching a mutable vertex (from bivalent nodes).
    pub fn two_cycles(&self) -> usize {
        let c = self.counts();
        let nv = self.frozen.len();
        let mut k = 0;
        for i in 0..nv {
            for j in i + 1..nv {
                if self.frozen[i] && self.frozen[j] {
                    continue;
                }
                k += c[i][j].min(c[j][i]) as usize;
            }
        }
        k
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.1 == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.0 == v).count()
    }

    /// Isomorphism onto `other`; with `respect_frozen`, frozen goes to frozen.
    pub fn isomorphism(&self, other: &IceQuiver, respect_frozen: bool) -> Option<Vec<usize>> {
        let colour = |q: &IceQuiver| -> Vec<u32> {
            q.frozen
                .iter()
                .map(|&f| if respect_frozen { f as u32 } else { 0 })
                .collect()
        };
        isomorphism(&self.counts(), &other.counts(), &colour(self), &colour(other))
    }
}

/// Backtracking isomorphism of weighted digraphs given as count matrices,
/// preserving vertex colours. Returns `map` with `a[i][j] == b[map[i]][map[j]]`.
pub fn isomorphism(a: &[Vec<i64>], b: &[Vec<i64>], ca: &[u32], cb: &[u32]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let sig = |m: &[Vec<i64>], c: &[u32], v: usize| -> (u32, Vec<i64>, Vec<i64>, i64) {
        let mut outs: Vec<i64> = (0..n).filter(|&j| j != v).map(|j| m[v][j]).collect();
        let mut ins: Vec<i64> = (0..n).filter(|&j| j != v).map(|j| m[j][v]).collect();
        outs.sort_unstable();
        ins.sort_unstable();
        (c[v], outs, ins, m[v][v])
    };
    let sa: Vec<_> = (0..n).map(|v| sig(a, ca, v)).collect();
    let sb: Vec<_> = (0..n).map(|v| sig(b, cb, v)).collect();
    let mut x = sa.clone();
    let mut y = sb.clone();
    x.sort();
    y.sort();
    if x != y {
        return None;
    }
    // Most constrained vertices first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| sb.iter().filter(|s| **s == sa[v]).count());
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        order: &[usize],
        a: &[Vec<i64>],
        b: &[Vec<i64>],
        sa: &[(u32, Vec<i64>, Vec<i64>, i64)],
        sb: &[(u32, Vec<i64>, Vec<i64>, i64)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..b.len() {
            if used[w] || sa[v] != sb[w] {
                continue;
            }
            let ok = order[..k]
                .iter()
                .all(|&u| a[v][u] == b[w][map[u]] && a[u][v] == b[map[u]][w]);
            if !ok {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if rec(k + 1, order, a, b, sa, sb, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    if rec(0, &order, a, b, &sa, &sb, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(nv: usize, arrows: &[(usize, usize)]) -> IceQuiver {
        IceQuiver::new(vec![false; nv], arrows.to_vec())
    }

    #[test]
    fn self_isomorphic() {
        let c = q(3, &[(0, 1), (1, 2), (2, 0)]);
        let m = c.isomorphism(&c, true).unwrap();
        let mut s = m.clone();
        s.sort();
        assert_eq!(s, vec![0, 1, 2]);
    }

    #[test]
    fn cycle_is_not_path() {
        let c = q(3, &[(0, 1), (1, 2), (2, 0)]);
        let p = q(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(c.isomorphism(&p, false).is_none());
    }

    #[test]
    fn relabelled_multigraph() {
        let a = q(3, &[(0, 1), (0, 1), (1, 2)]);
        let b = q(3, &[(2, 0), (1, 2), (1, 2)]);
        let m = a.isomorphism(&b, false).unwrap();
        assert_eq!(m, vec![1, 2, 0]);
    }

    #[test]
    fn frozen_respected() {
        let a = IceQuiver::new(vec![true, false], vec![(0, 1)]);
        let b = IceQuiver::new(vec![false, true], vec![(0, 1)]);
        assert!(a.isomorphism(&b, true).is_none());
        assert!(a.isomorphism(&b, false).is_some());
    }
}
