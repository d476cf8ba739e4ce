//! Faces, strands and corners of an embedded plabic graph.
//!
//! The boundary circle is added as `n` extra vertices joined by arcs; arc `p`
//! runs clockwise from point `p` to point `p + 1`. Faces are traced with the
//! rule "leave along the clockwise successor", which puts each face on the
//! left of its darts. The outer face (outside the disc) is discarded.

use crate::error::{Error, Result};
use crate::graph::{Color, PlabicGraph};
use crate::subset::Subset;

pub const OUTER: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct Face {
    pub darts: Vec<usize>,
    /// Points `p` such that the boundary arc from `p` to `p + 1` bounds this face.
    pub arcs: Vec<usize>,
}

impl Face {
    pub fn is_boundary(&self) -> bool {
        !self.arcs.is_empty()
    }
}

/// A zig-zag path: turns clockwise at white nodes, anticlockwise at black ones.
#[derive(Clone, Debug)]
pub struct Strand {
    pub source: usize,
    pub target: usize,
    /// Darts in order, starting and ending with half-edge darts.
    pub darts: Vec<usize>,
    /// `corners[i]` is the corner turned between `darts[i]` and `darts[i + 1]`.
    pub corners: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A strand (numbered from 1) crosses itself at an internal edge.
    SelfCrossing { strand: usize, edge: usize },
    /// Two strands meet twice in the same order along both.
    DoubleCrossing { first: usize, second: usize },
    /// An edge joins two nodes of the same colour.
    Monochrome { edge: usize },
    /// A zig-zag cycle that never reaches the boundary.
    ClosedStrand { edge: usize },
}

#[derive(Clone, Debug)]
pub struct Layout {
    n: usize,
    nv: usize,
    tail: Vec<usize>,
    head: Vec<usize>,
    vrot: Vec<Vec<usize>>,
    colors: Vec<Color>,
    face_of_dart: Vec<usize>,
    faces: Vec<Face>,
    strands: Vec<Strand>,
    corner_offset: Vec<usize>,
    corner_node: Vec<usize>,
    corner_face: Vec<usize>,
}

impl Layout {
    pub fn new(g: &PlabicGraph) -> Result<Layout> {
        let n = g.n();
        if n < 2 {
            return Err(Error::Degenerate(format!("n = {} leaves no room for 0 < k < n", n)));
        }
        let nv = g.node_count();
        let m = g.internal_edge_count();
        let segs = 2 * n + m;
        let mut tail = vec![0; segs];
        let mut head = vec![0; segs];
        for p in 1..=n {
            tail[p - 1] = nv + p - 1;
            head[p - 1] = g.half_node(p);
            let a = n + m + p - 1;
            tail[a] = nv + p - 1;
            head[a] = nv + p % n;
        }
        for (j, &(a, b)) in g.internal_edges().iter().enumerate() {
            tail[n + j] = a;
            head[n + j] = b;
        }
        let mut vrot: Vec<Vec<usize>> = (0..nv).map(|v| g.rotation(v).to_vec()).collect();
        for p in 1..=n {
            let prev = if p == 1 { n } else { p - 1 };
            vrot.push(vec![n + m + p - 1, p - 1, n + m + prev - 1]);
        }
        let mut lay = Layout {
            n,
            nv,
            tail,
            head,
            vrot,
            colors: g.colors().to_vec(),
            face_of_dart: vec![OUTER; 2 * segs],
            faces: Vec::new(),
            strands: Vec::new(),
            corner_offset: Vec::new(),
            corner_node: Vec::new(),
            corner_face: Vec::new(),
        };
        lay.trace_faces()?;
        lay.build_corners();
        lay.trace_strands()?;
        Ok(lay)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.nv
    }

    /// Graph edges (half and internal); arcs come after these ids.
    pub fn edge_count(&self) -> usize {
        self.tail.len() - self.n
    }

    pub fn seg(d: usize) -> usize {
        d / 2
    }

    pub fn rev(d: usize) -> usize {
        d ^ 1
    }

    pub fn dart_tail(&self, d: usize) -> usize {
        if d.is_multiple_of(2) {
            self.tail[d / 2]
        } else {
            self.head[d / 2]
        }
    }

    pub fn dart_head(&self, d: usize) -> usize {
        if d.is_multiple_of(2) {
            self.head[d / 2]
        } else {
            self.tail[d / 2]
        }
    }

    /// Whether vertex `x` is an internal node (not a boundary point).
    pub fn is_node(&self, x: usize) -> bool {
        x < self.nv
    }

    pub fn out_dart(&self, s: usize, from: usize) -> usize {
        if self.tail[s] == from {
            2 * s
        } else {
            debug_assert_eq!(self.head[s], from);
            2 * s + 1
        }
    }

    fn pos(&self, x: usize, s: usize) -> usize {
        self.vrot[x]
            .iter()
            .position(|&t| t == s)
            .expect("segment not at vertex")
    }

    fn cw_next(&self, x: usize, s: usize) -> usize {
        let r = &self.vrot[x];
        r[(self.pos(x, s) + 1) % r.len()]
    }

    fn ccw_next(&self, x: usize, s: usize) -> usize {
        let r = &self.vrot[x];
        r[(self.pos(x, s) + r.len() - 1) % r.len()]
    }

    fn trace_faces(&mut self) -> Result<()> {
        let nd = self.face_of_dart.len();
        let mut orbit_of = vec![usize::MAX; nd];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for d0 in 0..nd {
            if orbit_of[d0] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orb = Vec::new();
            let mut d = d0;
            loop {
                orbit_of[d] = id;
                orb.push(d);
                let y = self.dart_head(d);
                let s = self.cw_next(y, Self::seg(d));
                d = self.out_dart(s, y);
                if d == d0 {
                    break;
                }
                if orbit_of[d] != usize::MAX {
                    return Err(Error::Structure("face tracing did not close up".into()));
                }
            }
            orbits.push(orb);
        }
        let (n, nv) = (self.n, self.nv);
        let vertices = nv + n;
        let edges = self.tail.len();
        if vertices + orbits.len() != edges + 2 {
            return Err(Error::Structure("embedding is not planar in the disc".into()));
        }
        let arc0 = self.edge_count();
        let outer = orbit_of[2 * arc0];
        let outer_ok = orbits[outer].len() == n && orbits[outer].iter().all(|&d| d % 2 == 0 && Self::seg(d) >= arc0);
        if !outer_ok {
            return Err(Error::Structure("graph does not sit inside the disc".into()));
        }
        let mut order: Vec<usize> = Vec::new();
        for p in 1..=n {
            let o = orbit_of[2 * (arc0 + p - 1) + 1];
            if !order.contains(&o) {
                order.push(o);
            }
        }
        let mut rest: Vec<usize> = (0..orbits.len())
            .filter(|&o| o != outer && !order.contains(&o))
            .collect();
        rest.sort_by_key(|&o| orbits[o].iter().min().copied());
        order.extend(rest);
        for (f, &o) in order.iter().enumerate() {
            let darts = orbits[o].clone();
            let mut arcs: Vec<usize> = darts
                .iter()
                .filter(|&&d| Self::seg(d) >= arc0)
                .map(|&d| Self::seg(d) - arc0 + 1)
                .collect();
            arcs.sort_unstable();
            for &d in &darts {
                self.face_of_dart[d] = f;
            }
            self.faces.push(Face { darts, arcs });
        }
        Ok(())
    }

    fn build_corners(&mut self) {
        let mut off = 0;
        for v in 0..self.nv {
            self.corner_offset.push(off);
            let deg = self.vrot[v].len();
            for i in 0..deg {
                let s = self.vrot[v][i];
                let into_v = Self::rev(self.out_dart(s, v));
                self.corner_node.push(v);
                self.corner_face.push(self.face_of_dart[into_v]);
            }
            off += deg;
        }
    }

    fn trace_strands(&mut self) -> Result<()> {
        let limit = 2 * self.tail.len() + 2;
        for p in 1..=self.n {
            let mut d = 2 * (p - 1);
            let mut darts = vec![d];
            let mut corners = Vec::new();
            loop {
                let y = self.dart_head(d);
                if !self.is_node(y) {
                    break;
                }
                let s = Self::seg(d);
                let (next, corner) = match self.colors[y] {
                    Color::White => {
                        let t = self.cw_next(y, s);
                        (t, self.corner_offset[y] + self.pos(y, s))
                    }
                    Color::Black => {
                        let t = self.ccw_next(y, s);
                        (t, self.corner_offset[y] + self.pos(y, t))
                    }
                };
                d = self.out_dart(next, y);
                darts.push(d);
                corners.push(corner);
                if darts.len() > limit {
                    return Err(Error::Structure(format!("strand from {} does not terminate", p)));
                }
            }
            let target = self.dart_head(d) - self.nv + 1;
            self.strands.push(Strand {
                source: p,
                target,
                darts,
                corners,
            });
        }
        Ok(())
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of_dart(&self, d: usize) -> usize {
        self.face_of_dart[d]
    }

    /// Face on the left of `d` and face on its right.
    pub fn sides(&self, d: usize) -> (usize, usize) {
        (self.face_of_dart[d], self.face_of_dart[Self::rev(d)])
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    /// The strand starting at boundary point `p`.
    pub fn strand(&self, p: usize) -> &Strand {
        &self.strands[p - 1]
    }

    pub fn corner_count(&self) -> usize {
        self.corner_node.len()
    }

    pub fn corner_node(&self, c: usize) -> usize {
        self.corner_node[c]
    }

    pub fn corner_face(&self, c: usize) -> usize {
        self.corner_face[c]
    }

    /// Corners of node `v` in clockwise order; corner `i` follows edge `rotation[i]`.
    pub fn node_corners(&self, v: usize) -> std::ops::Range<usize> {
        let start = self.corner_offset[v];
        start..start + self.vrot[v].len()
    }

    pub fn node_rotation(&self, v: usize) -> &[usize] {
        &self.vrot[v]
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    /// `pi(p)` for every point, as a vector indexed by `p - 1`.
    pub fn trip_permutation(&self) -> Vec<usize> {
        self.strands.iter().map(|s| s.target).collect()
    }

    /// Which strand traverses each dart (`None` for arcs and closed cycles).
    pub fn dart_strands(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.face_of_dart.len()];
        for (i, s) in self.strands.iter().enumerate() {
            for &d in &s.darts {
                out[d] = Some(i);
            }
        }
        out
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let ne = self.edge_count();
        for e in self.n..ne {
            let (a, b) = (self.tail[e], self.head[e]);
            if self.colors[a] == self.colors[b] {
                out.push(Violation::Monochrome { edge: e });
            }
        }
        let ds = self.dart_strands();
        for e in self.n..ne {
            match (ds[2 * e], ds[2 * e + 1]) {
                (Some(a), Some(b)) if a == b => out.push(Violation::SelfCrossing { strand: a + 1, edge: e }),
                _ => {}
            }
        }
        let mut closed = vec![false; ne];
        for d in 0..2 * ne {
            if ds[d].is_none() && !closed[d / 2] {
                closed[d / 2] = true;
                out.push(Violation::ClosedStrand { edge: d / 2 });
            }
        }
        // Position of each strand along each segment it crosses.
        let mut at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ne];
        for (i, s) in self.strands.iter().enumerate() {
            for (t, &d) in s.darts.iter().enumerate() {
                at[d / 2].push((i, t));
            }
        }
        let ns = self.strands.len();
        let mut shared: Vec<Vec<Vec<(usize, usize)>>> = vec![vec![Vec::new(); ns]; ns];
        for seg in &at {
            if seg.len() == 2 && seg[0].0 != seg[1].0 {
                let (x, y) = if seg[0].0 < seg[1].0 {
                    (seg[0], seg[1])
                } else {
                    (seg[1], seg[0])
                };
                shared[x.0][y.0].push((x.1, y.1));
            }
        }
        for a in 0..ns {
            for b in a + 1..ns {
                let mut v = shared[a][b].clone();
                if v.len() < 2 {
                    continue;
                }
                v.sort_unstable();
                if v.windows(2).any(|w| w[0].1 < w[1].1) {
                    out.push(Violation::DoubleCrossing {
                        first: a + 1,
                        second: b + 1,
                    });
                }
            }
        }
        out
    }

    /// For strand `i`, whether each face lies on its left.
    pub fn strand_sides(&self, i: usize) -> Result<Vec<bool>> {
        let nf = self.faces.len();
        let s = &self.strands[i];
        let ne = self.edge_count();
        let mut on = vec![false; ne];
        for &d in &s.darts {
            on[d / 2] = true;
        }
        let mut side: Vec<Option<bool>> = vec![None; nf];
        let mut stack = Vec::new();
        for &d in &s.darts {
            let (l, r) = self.sides(d);
            if l == r {
                continue;
            }
            for (f, v) in [(l, true), (r, false)] {
                match side[f] {
                    None => {
                        side[f] = Some(v);
                        stack.push(f);
                    }
                    Some(w) if w != v => {
                        return Err(Error::Invalid(format!(
                            "strand from {} does not separate the disc",
                            s.source
                        )))
                    }
                    _ => {}
                }
            }
        }
        if stack.is_empty() {
            // A lollipop: the strand circles its leaf.
            let leaf = self.dart_head(s.darts[0]);
            let left = self.colors[leaf] == Color::White;
            return Ok(vec![left; nf]);
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for e in 0..ne {
            if on[e] {
                continue;
            }
            let (l, r) = self.sides(2 * e);
            if l != r {
                adj[l].push(r);
                adj[r].push(l);
            }
        }
        while let Some(f) = stack.pop() {
            let v = side[f].unwrap();
            for &g in &adj[f] {
                match side[g] {
                    None => {
                        side[g] = Some(v);
                        stack.push(g);
                    }
                    Some(w) if w != v => {
                        return Err(Error::Invalid(format!(
                            "strand from {} does not separate the disc",
                            s.source
                        )))
                    }
                    _ => {}
                }
            }
        }
        side.into_iter()
            .map(|x| x.ok_or_else(|| Error::Invalid("face not reached from any strand".into())))
            .collect()
    }

    /// Source and target labels of every face.
    pub fn labels(&self) -> Result<(Vec<Subset>, Vec<Subset>)> {
        let nf = self.faces.len();
        let mut src = vec![Subset::empty(); nf];
        let mut tgt = vec![Subset::empty(); nf];
        for i in 0..self.strands.len() {
            let sides = self.strand_sides(i)?;
            for f in 0..nf {
                if sides[f] {
                    src[f].insert(self.strands[i].source);
                    tgt[f].insert(self.strands[i].target);
                }
            }
        }
        Ok((src, tgt))
    }
}
