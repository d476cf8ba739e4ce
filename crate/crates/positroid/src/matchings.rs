//! Perfect matchings, boundary values, wedge matchings and stable classes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Color, End, PlabicGraph};
use crate::layout::Layout;
use crate::plabic::Plabic;
use crate::subset::Subset;
use crate::Laurent;

/// A set of edge ids covering every internal node exactly once; kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    edges: Vec<usize>,
}

impl PerfectMatching {
    pub fn new(mut edges: Vec<usize>) -> PerfectMatching {
        edges.sort_unstable();
        edges.dedup();
        PerfectMatching { edges }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_perfect(&self, g: &PlabicGraph) -> bool {
        let mut hit = vec![0u32; g.node_count()];
        for &e in &self.edges {
            match g.ends(e) {
                (End::Boundary(_), End::Node(v)) => hit[v] += 1,
                (End::Node(a), End::Node(b)) => {
                    hit[a] += 1;
                    hit[b] += 1;
                }
                _ => unreachable!(),
            }
        }
        hit.iter().all(|&h| h == 1)
    }

    /// Sorted edge names, e.g. `h1 e3 e7`.
    pub fn render(&self, g: &PlabicGraph) -> String {
        let v: Vec<String> = self.edges.iter().map(|&e| g.edge_name(e)).collect();
        v.join(" ")
    }
}

/// All perfect matchings in lexicographic order of their sorted edge lists.
pub fn enumerate_matchings(g: &PlabicGraph) -> Vec<PerfectMatching> {
    let nv = g.node_count();
    let opts: Vec<Vec<(usize, Option<usize>)>> = (0..nv)
        .map(|v| {
            g.rotation(v)
                .iter()
                .map(|&e| match g.other_end(e, v) {
                    End::Node(u) => (e, Some(u)),
                    End::Boundary(_) => (e, None),
                })
                .collect()
        })
        .collect();
    let mut covered = vec![false; nv];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    fn rec(
        opts: &[Vec<(usize, Option<usize>)>],
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<PerfectMatching>,
    ) {
        // Branch on the uncovered node with the fewest live options.
        let mut best: Option<(usize, usize)> = None;
        for v in 0..covered.len() {
            if covered[v] {
                continue;
            }
            let live = opts[v].iter().filter(|(_, u)| u.is_none_or(|u| !covered[u])).count();
            if best.is_none_or(|(_, b)| live < b) {
                best = Some((v, live));
            }
        }
        let Some((v, live)) = best else {
            out.push(PerfectMatching::new(chosen.clone()));
            return;
        };
        if live == 0 {
            return;
        }
        covered[v] = true;
        for &(e, u) in &opts[v] {
            match u {
                Some(u) if covered[u] => continue,
                Some(u) => {
                    covered[u] = true;
                    chosen.push(e);
                    rec(opts, covered, chosen, out);
                    chosen.pop();
                    covered[u] = false;
                }
                None => {
                    chosen.push(e);
                    rec(opts, covered, chosen, out);
                    chosen.pop();
                }
            }
        }
        covered[v] = false;
    }
    rec(&opts, &mut covered, &mut chosen, &mut out);
    out.sort();
    out
}

/// `i` is in the boundary value iff the half-edge at `i` is at a white node
/// and in the matching, or at a black node and not in it.
pub fn boundary_value(g: &PlabicGraph, m: &PerfectMatching) -> Subset {
    let mut s = Subset::empty();
    for p in 1..=g.n() {
        let inside = m.contains(p - 1);
        let white = g.color(g.half_node(p)) == Color::White;
        if inside == white {
            s.insert(p);
        }
    }
    s
}

pub fn positroid(g: &PlabicGraph) -> BTreeSet<Subset> {
    enumerate_matchings(g).iter().map(|m| boundary_value(g, m)).collect()
}

/// Sum over matchings with boundary value `target` of the product of edge
/// weights, edge `e` carrying variable `e` of an `edge_count`-variable ring.
pub fn partition_function(g: &PlabicGraph, matchings: &[PerfectMatching], target: Subset) -> Laurent {
    let nv = g.edge_count();
    let terms = matchings.iter().filter(|m| boundary_value(g, m) == target).map(|m| {
        let mut e = vec![0i32; nv];
        for &x in m.edges() {
            e[x] = 1;
        }
        (e, crate::scalar::int(1))
    });
    Laurent::from_terms(nv, terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Downstream,
    Upstream,
}

/// For every edge, the faces in its downstream and upstream wedges.
#[derive(Clone, Debug)]
pub struct Wedges {
    down: Vec<Vec<bool>>,
    up: Vec<Vec<bool>>,
}

impl Wedges {
    pub fn new(lay: &Layout) -> Result<Wedges> {
        let nf = lay.face_count();
        let ne = lay.edge_count();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf + lay.node_count()];
        for c in 0..lay.corner_count() {
            let v = nf + lay.corner_node(c);
            let f = lay.corner_face(c);
            adj[v].push((f, c));
            adj[f].push((v, c));
        }
        let mut pos = vec![(usize::MAX, 0); 2 * ne];
        for (i, s) in lay.strands().iter().enumerate() {
            for (t, &d) in s.darts.iter().enumerate() {
                pos[d] = (i, t);
            }
        }
        let mut down = Vec::with_capacity(ne);
        let mut up = Vec::with_capacity(ne);
        for e in 0..ne {
            for dir in [Direction::Downstream, Direction::Upstream] {
                let mut barrier = vec![false; lay.corner_count()];
                let mut starts = Vec::new();
                for d in [2 * e, 2 * e + 1] {
                    let (i, t) = pos[d];
                    if i == usize::MAX {
                        return Err(Error::Invalid(format!("edge {} is not crossed by a strand", e)));
                    }
                    let cs = &lay.strands()[i].corners;
                    let part = match dir {
                        Direction::Downstream => &cs[t..],
                        Direction::Upstream => &cs[..t],
                    };
                    for &c in part {
                        barrier[c] = true;
                    }
                    let first = match dir {
                        Direction::Downstream => part.first(),
                        Direction::Upstream => part.last(),
                    };
                    if let Some(&c) = first {
                        starts.push(lay.corner_face(c));
                    }
                }
                starts.dedup();
                if starts.len() != 1 {
                    return Err(Error::Invalid(format!(
                        "strands through edge {} do not bound a wedge",
                        e
                    )));
                }
                let mut seen = vec![false; adj.len()];
                let mut stack = vec![starts[0]];
                while let Some(r) = stack.pop() {
                    if seen[r] {
                        continue;
                    }
                    seen[r] = true;
                    for &(o, c) in &adj[r] {
                        if !barrier[c] && !seen[o] {
                            stack.push(o);
                        }
                    }
                }
                seen.truncate(nf);
                match dir {
                    Direction::Downstream => down.push(seen),
                    Direction::Upstream => up.push(seen),
                }
            }
        }
        Ok(Wedges { down, up })
    }

    pub fn contains(&self, e: usize, face: usize, dir: Direction) -> bool {
        match dir {
            Direction::Downstream => self.down[e][face],
            Direction::Upstream => self.up[e][face],
        }
    }

    /// Edges whose wedge in direction `dir` contains `face`.
    pub fn matching(&self, face: usize, dir: Direction) -> PerfectMatching {
        let v = match dir {
            Direction::Downstream => &self.down,
            Direction::Upstream => &self.up,
        };
        PerfectMatching::new((0..v.len()).filter(|&e| v[e][face]).collect())
    }
}

/// The downstream (source) or upstream (target) wedge matching of a face,
/// certified perfect with the expected boundary value.
pub fn ms_matching(p: &Plabic, face: usize, dir: Direction) -> Result<PerfectMatching> {
    let w = Wedges::new(p.layout())?;
    certified_ms(p, &w, face, dir)
}

pub fn certified_ms(p: &Plabic, w: &Wedges, face: usize, dir: Direction) -> Result<PerfectMatching> {
    let m = w.matching(face, dir);
    if !m.is_perfect(p.graph()) {
        return Err(Error::Invalid(format!(
            "wedge set of face {} is not a perfect matching",
            face
        )));
    }
    let want = match dir {
        Direction::Downstream => p.labels().src[face],
        Direction::Upstream => p.labels().tgt[face],
    };
    let got = boundary_value(p.graph(), &m);
    if got != want {
        return Err(Error::Invalid(format!(
            "wedge matching of face {} has boundary {} not {}",
            face, got, want
        )));
    }
    Ok(m)
}

/// Class in the stable lattice, indexed by the internal faces in face order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableClass {
    pub coeffs: Vec<i64>,
}

/// Both weight formulas for a matching; they must agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableClasses {
    /// From the faces around black nodes.
    pub minus: StableClass,
    /// From the faces around white nodes.
    pub plus: StableClass,
}

/// `sum e_j - wt(mu)` where `wt` counts, for each matched edge, the mutable
/// faces around its endpoint of colour `colour`, minus the two faces beside it.
pub fn weight_class(p: &Plabic, m: &PerfectMatching, colour: Color) -> StableClass {
    let g = p.graph();
    let lay = p.layout();
    let internal = p.internal_faces();
    let mut index = vec![usize::MAX; p.face_count()];
    for (i, &f) in internal.iter().enumerate() {
        index[f] = i;
    }
    let mut coeffs = vec![1i64; internal.len()];
    for &e in m.edges() {
        let node = match g.ends(e) {
            (End::Boundary(_), End::Node(v)) => (g.color(v) == colour).then_some(v),
            (End::Node(a), End::Node(b)) => {
                if g.color(a) == colour {
                    Some(a)
                } else if g.color(b) == colour {
                    Some(b)
                } else {
                    None
                }
            }
            _ => unreachable!(),
        };
        let Some(v) = node else { continue };
        let (l, r) = lay.sides(2 * e);
        let mut faces: BTreeSet<usize> = lay.node_corners(v).map(|c| lay.corner_face(c)).collect();
        faces.remove(&l);
        faces.remove(&r);
        for f in faces {
            if index[f] != usize::MAX {
                coeffs[index[f]] -= 1;
            }
        }
    }
    StableClass { coeffs }
}

pub fn stable_class(p: &Plabic, m: &PerfectMatching) -> Result<StableClasses> {
    let minus = weight_class(p, m, Color::Black);
    let plus = weight_class(p, m, Color::White);
    if minus != plus {
        return Err(Error::Verification(format!(
            "weight classes disagree for matching {}: {:?} vs {:?}",
            m.render(p.graph()),
            minus.coeffs,
            plus.coeffs
        )));
    }
    Ok(StableClasses { minus, plus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn brute_force(g: &PlabicGraph) -> Vec<PerfectMatching> {
        let ne = g.edge_count();
        assert!(ne <= 20);
        (0u32..1 << ne)
            .map(|mask| PerfectMatching::new((0..ne).filter(|&e| mask >> e & 1 == 1).collect()))
            .filter(|m| m.is_perfect(g))
            .collect()
    }

    #[test]
    fn single_edge() {
        let p = corpus::load("single_edge").unwrap();
        let g = p.graph();
        let ms = enumerate_matchings(g);
        assert_eq!(ms.len(), 2);
        let values: Vec<String> = ms.iter().map(|m| boundary_value(g, m).to_string()).collect();
        assert_eq!(positroid(g).len(), 2);
        assert!(values.contains(&"1".to_string()) && values.contains(&"2".to_string()));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for name in ["single_edge", "uniform24", "uniform25", "uniform35"] {
            let g = corpus::load(name).unwrap().graph().clone();
            let mut want = brute_force(&g);
            want.sort();
            assert_eq!(enumerate_matchings(&g), want, "{}", name);
        }
    }

    #[test]
    fn gr37_counts() {
        let p = corpus::load("gr37").unwrap();
        assert_eq!(enumerate_matchings(p.graph()).len(), 46);
        assert_eq!(positroid(p.graph()).len(), 30);
    }

    #[test]
    fn opposite_complements_boundary_values() {
        let p = corpus::load("gr37").unwrap();
        let g = p.graph();
        let o = g.opposite();
        let want: BTreeSet<Subset> = positroid(g).into_iter().map(|s| s.complement(g.n())).collect();
        assert_eq!(positroid(&o), want);
    }

    #[test]
    fn wedge_matchings_and_classes() {
        for name in ["gr37", "split59"] {
            let p = corpus::load(name).unwrap();
            let w = Wedges::new(p.layout()).unwrap();
            let internal = p.internal_faces();
            for f in 0..p.face_count() {
                for dir in [Direction::Downstream, Direction::Upstream] {
                    let m = certified_ms(&p, &w, f, dir).unwrap();
                    let c = stable_class(&p, &m).unwrap().minus.coeffs;
                    let want: Vec<i64> = internal.iter().map(|&j| (j == f) as i64).collect();
                    assert_eq!(c, want, "{} face {}", name, f);
                }
            }
        }
    }

    #[test]
    fn partition_function_counts_matchings() {
        let p = corpus::load("gr37").unwrap();
        let g = p.graph();
        let ms = enumerate_matchings(g);
        let total: usize = positroid(g)
            .into_iter()
            .map(|s| partition_function(g, &ms, s).len())
            .sum();
        assert_eq!(total, ms.len());
    }
}
