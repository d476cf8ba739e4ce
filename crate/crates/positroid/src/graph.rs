//! Plabic graphs and their text format.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
        }
    }
}

/// One end of an edge: an internal node (by index) or a boundary point (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Node(usize),
    Boundary(usize),
}

/// A bicoloured graph in a disc with one half-edge per boundary point.
///
/// Edge ids are shared by half-edges and internal edges: the half-edge at
/// point `p` has id `p - 1`, internal edge `j` (file order) has id `n + j`.
/// `rotation[v]` lists the edge ids at node `v` in clockwise order; boundary
/// points are numbered clockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlabicGraph {
    n: usize,
    ids: Vec<u32>,
    colors: Vec<Color>,
    edges: Vec<(usize, usize)>,
    half: Vec<usize>,
    rotation: Vec<Vec<usize>>,
}

impl PlabicGraph {
    /// Assembles a graph from index-based parts and checks it is well formed.
    pub fn from_parts(
        n: usize,
        ids: Vec<u32>,
        colors: Vec<Color>,
        edges: Vec<(usize, usize)>,
        half: Vec<usize>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<PlabicGraph> {
        let g = PlabicGraph {
            n,
            ids,
            colors,
            edges,
            half,
            rotation,
        };
        g.check_structure()?;
        Ok(g)
    }

    fn check_structure(&self) -> Result<()> {
        let s = |m: String| Err(Error::Structure(m));
        if self.n == 0 {
            return Err(Error::Degenerate("no boundary points".into()));
        }
        let nv = self.ids.len();
        if self.colors.len() != nv || self.rotation.len() != nv {
            return s("node tables have different lengths".into());
        }
        let mut seen = HashMap::new();
        for (v, &id) in self.ids.iter().enumerate() {
            if seen.insert(id, v).is_some() {
                return s(format!("duplicate node id {}", id));
            }
        }
        if self.half.len() != self.n {
            return s(format!("expected {} half-edges, found {}", self.n, self.half.len()));
        }
        for (p, &v) in self.half.iter().enumerate() {
            if v >= nv {
                return s(format!("half-edge {} attached to unknown node", p + 1));
            }
        }
        for &(a, b) in &self.edges {
            if a >= nv || b >= nv {
                return s("edge with unknown endpoint".into());
            }
            if a == b {
                return s(format!("loop at node {}", self.ids[a]));
            }
        }
        let mut expected: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for e in 0..self.edge_count() {
            match self.ends(e) {
                (End::Boundary(_), End::Node(v)) => expected[v].push(e),
                (End::Node(a), End::Node(b)) => {
                    expected[a].push(e);
                    expected[b].push(e);
                }
                _ => unreachable!(),
            }
        }
        for v in 0..nv {
            let mut got = self.rotation[v].clone();
            got.sort_unstable();
            let mut want = expected[v].clone();
            want.sort_unstable();
            if got != want {
                return s(format!(
                    "embedding of node {} does not list exactly its edges",
                    self.ids[v]
                ));
            }
            if want.is_empty() {
                return s(format!("isolated node {}", self.ids[v]));
            }
        }
        // Every node must reach the boundary.
        let mut reach = vec![false; nv];
        let mut stack: Vec<usize> = self.half.clone();
        while let Some(v) = stack.pop() {
            if reach[v] {
                continue;
            }
            reach[v] = true;
            for &e in &self.rotation[v] {
                if let End::Node(u) = self.other_end(e, v) {
                    if !reach[u] {
                        stack.push(u);
                    }
                }
            }
        }
        if let Some(v) = (0..nv).find(|&v| !reach[v]) {
            return s(format!("node {} is not connected to the boundary", self.ids[v]));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn internal_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Half-edges plus internal edges.
    pub fn edge_count(&self) -> usize {
        self.n + self.edges.len()
    }

    pub fn id(&self, v: usize) -> u32 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn node_index(&self, id: u32) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn internal_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn half_edges(&self) -> &[usize] {
        &self.half
    }

    /// Node carrying the half-edge at boundary point `p`.
    pub fn half_node(&self, p: usize) -> usize {
        self.half[p - 1]
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn is_half_edge(&self, e: usize) -> bool {
        e < self.n
    }

    pub fn ends(&self, e: usize) -> (End, End) {
        if e < self.n {
            (End::Boundary(e + 1), End::Node(self.half[e]))
        } else {
            let (a, b) = self.edges[e - self.n];
            (End::Node(a), End::Node(b))
        }
    }

    pub fn other_end(&self, e: usize, v: usize) -> End {
        match self.ends(e) {
            (End::Boundary(p), End::Node(u)) => {
                debug_assert_eq!(u, v);
                End::Boundary(p)
            }
            (End::Node(a), End::Node(b)) => {
                if a == v {
                    End::Node(b)
                } else {
                    End::Node(a)
                }
            }
            _ => unreachable!(),
        }
    }

    /// `h<p>` for half-edges, `e<j>` (1-based, file order) for internal edges.
    pub fn edge_name(&self, e: usize) -> String {
        if e < self.n {
            format!("h{}", e + 1)
        } else {
            format!("e{}", e - self.n + 1)
        }
    }

    /// Number of half-edges attached to black nodes.
    pub fn black_half_edges(&self) -> usize {
        self.half.iter().filter(|&&v| self.colors[v] == Color::Black).count()
    }

    /// `#white - #black + #half-edges at black nodes`.
    pub fn matching_k(&self) -> i64 {
        let w = self.colors.iter().filter(|&&c| c == Color::White).count() as i64;
        let b = self.colors.len() as i64 - w;
        w - b + self.black_half_edges() as i64
    }

    /// Same graph with every colour flipped.
    pub fn opposite(&self) -> PlabicGraph {
        let mut g = self.clone();
        for c in g.colors.iter_mut() {
            *c = c.flip();
        }
        g
    }

    /// Relabels boundary point `p` as `p + shift` (cyclically).
    pub fn rotate_boundary(&self, shift: usize) -> PlabicGraph {
        let n = self.n;
        let shift = shift % n;
        let new_id = |e: usize| -> usize {
            if e < n {
                (e + shift) % n
            } else {
                e
            }
        };
        let mut half = vec![0; n];
        for (p0, &v) in self.half.iter().enumerate() {
            half[(p0 + shift) % n] = v;
        }
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().map(|&e| new_id(e)).collect())
            .collect();
        PlabicGraph {
            n,
            ids: self.ids.clone(),
            colors: self.colors.clone(),
            edges: self.edges.clone(),
            half,
            rotation,
        }
    }

    /// Parses the line format described in the crate docs.
    pub fn parse(text: &str) -> Result<PlabicGraph> {
        let perr = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut n: Option<usize> = None;
        let mut ids = Vec::new();
        let mut colors = Vec::new();
        let mut raw_edges: Vec<(u32, u32, usize)> = Vec::new();
        let mut raw_half: Vec<(usize, u32, usize)> = Vec::new();
        let mut raw_embed: Vec<(u32, Vec<String>, usize)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().unwrap();
            match head {
                "plabic" => {
                    if n.is_some() {
                        return Err(perr(ln, "repeated header"));
                    }
                    let w = words.next().ok_or_else(|| perr(ln, "missing n="))?;
                    let v = w.strip_prefix("n=").ok_or_else(|| perr(ln, "expected n=<count>"))?;
                    n = Some(v.parse().map_err(|_| perr(ln, "bad boundary count"))?);
                }
                "node" => {
                    let id: u32 = parse_word(words.next(), ln, "node id")?;
                    let c = match words.next() {
                        Some("black") => Color::Black,
                        Some("white") => Color::White,
                        _ => return Err(perr(ln, "node colour must be black or white")),
                    };
                    ids.push(id);
                    colors.push(c);
                }
                "edge" => {
                    let a: u32 = parse_word(words.next(), ln, "edge endpoint")?;
                    let b: u32 = parse_word(words.next(), ln, "edge endpoint")?;
                    raw_edges.push((a, b, ln));
                }
                "half" => {
                    let p: usize = parse_word(words.next(), ln, "boundary point")?;
                    let v: u32 = parse_word(words.next(), ln, "node id")?;
                    raw_half.push((p, v, ln));
                }
                "embed" => {
                    let rest = line["embed".len()..].trim();
                    let (idp, list) = rest
                        .split_once(':')
                        .ok_or_else(|| perr(ln, "expected embed <id>: ..."))?;
                    let id: u32 = idp.trim().parse().map_err(|_| perr(ln, "bad node id"))?;
                    raw_embed.push((id, list.split_whitespace().map(str::to_string).collect(), ln));
                    continue;
                }
                _ => return Err(perr(ln, &format!("unknown directive '{}'", head))),
            }
            if words.next().is_some() {
                return Err(perr(ln, "trailing input"));
            }
        }
        let n = n.ok_or_else(|| perr(1, "missing 'plabic n=<n>' header"))?;
        if n == 0 {
            return Err(Error::Degenerate("no boundary points".into()));
        }
        let index: HashMap<u32, usize> = ids.iter().enumerate().map(|(v, &id)| (id, v)).collect();
        if index.len() != ids.len() {
            return Err(Error::Structure("duplicate node id".into()));
        }
        let lookup = |id: u32, ln: usize| {
            index
                .get(&id)
                .copied()
                .ok_or_else(|| perr(ln, &format!("unknown node {}", id)))
        };
        let mut edges = Vec::new();
        for &(a, b, ln) in &raw_edges {
            edges.push((lookup(a, ln)?, lookup(b, ln)?));
        }
        let mut half = vec![usize::MAX; n];
        for &(p, v, ln) in &raw_half {
            if p == 0 || p > n {
                return Err(perr(ln, "boundary point out of range"));
            }
            if half[p - 1] != usize::MAX {
                return Err(perr(ln, "boundary point has two half-edges"));
            }
            half[p - 1] = lookup(v, ln)?;
        }
        if let Some(p) = half.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Structure(format!("boundary point {} has no half-edge", p + 1)));
        }
        // Parallel edges: the k-th occurrence of a neighbour in an embed list
        // is the k-th edge line joining the pair.
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (j, &(a, b)) in edges.iter().enumerate() {
            between.entry((a.min(b), a.max(b))).or_default().push(n + j);
        }
        let mut rotation: Vec<Option<Vec<usize>>> = vec![None; ids.len()];
        for (id, toks, ln) in &raw_embed {
            let v = lookup(*id, *ln)?;
            if rotation[v].is_some() {
                return Err(perr(*ln, "node embedded twice"));
            }
            let mut used: HashMap<usize, usize> = HashMap::new();
            let mut rot = Vec::new();
            for t in toks {
                if let Some(pt) = t.strip_prefix('b') {
                    let p: usize = pt.parse().map_err(|_| perr(*ln, "bad boundary token"))?;
                    if p == 0 || p > n || half[p - 1] != v {
                        return Err(perr(*ln, &format!("half-edge b{} is not at this node", p)));
                    }
                    rot.push(p - 1);
                } else {
                    let uid: u32 = t.parse().map_err(|_| perr(*ln, &format!("bad token '{}'", t)))?;
                    let u = lookup(uid, *ln)?;
                    let key = (u.min(v), u.max(v));
                    let list = between
                        .get(&key)
                        .ok_or_else(|| perr(*ln, &format!("no edge to {}", uid)))?;
                    let k = used.entry(u).or_insert(0);
                    let e = *list
                        .get(*k)
                        .ok_or_else(|| perr(*ln, &format!("too many occurrences of {}", uid)))?;
                    *k += 1;
                    rot.push(e);
                }
            }
            rotation[v] = Some(rot);
        }
        let mut rot = Vec::new();
        for (v, r) in rotation.into_iter().enumerate() {
            match r {
                Some(r) => rot.push(r),
                None => return Err(Error::Structure(format!("node {} has no embed line", ids[v]))),
            }
        }
        PlabicGraph::from_parts(n, ids, colors, edges, half, rot)
    }

    /// Canonical text form; `parse(&g.to_text()) == g`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "plabic n={}", self.n);
        for (v, &id) in self.ids.iter().enumerate() {
            let _ = writeln!(s, "node {} {}", id, self.colors[v].name());
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "edge {} {}", self.ids[a], self.ids[b]);
        }
        for (p, &v) in self.half.iter().enumerate() {
            let _ = writeln!(s, "half {} {}", p + 1, self.ids[v]);
        }
        for v in 0..self.ids.len() {
            let toks: Vec<String> = self.rotation[v]
                .iter()
                .map(|&e| match self.other_end(e, v) {
                    End::Boundary(p) => format!("b{}", p),
                    End::Node(u) => self.ids[u].to_string(),
                })
                .collect();
            let _ = writeln!(s, "embed {}: {}", self.ids[v], toks.join(" "));
        }
        s
    }
}

fn parse_word<T: std::str::FromStr>(w: Option<&str>, line: usize, what: &str) -> Result<T> {
    let w = w.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {}", what),
    })?;
    w.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {} '{}'", what, w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str =
        "plabic n=2\nnode 1 white\nnode 2 black\nedge 1 2\nhalf 1 1\nhalf 2 2\nembed 1: b1 2\nembed 2: b2 1\n";

    #[test]
    fn round_trip() {
        let g = PlabicGraph::parse(SMALL).unwrap();
        assert_eq!(g.to_text(), SMALL);
        assert_eq!(PlabicGraph::parse(&g.to_text()).unwrap(), g);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.matching_k(), 1);
    }

    #[test]
    fn comments_and_blank_lines() {
        let t = format!(
            "# a comment\n\n{}",
            SMALL.replace("edge 1 2", "edge 1 2   # the only edge")
        );
        assert_eq!(PlabicGraph::parse(&t).unwrap(), PlabicGraph::parse(SMALL).unwrap());
    }

    #[test]
    fn structural_errors() {
        let missing_half = SMALL.replace("half 2 2\n", "");
        assert!(matches!(PlabicGraph::parse(&missing_half), Err(Error::Structure(_))));
        let bad_embed = SMALL.replace("embed 2: b2 1", "embed 2: b2");
        assert!(matches!(PlabicGraph::parse(&bad_embed), Err(Error::Structure(_))));
        let unknown = SMALL.replace("edge 1 2", "edge 1 3");
        assert!(matches!(
            PlabicGraph::parse(&unknown),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(PlabicGraph::parse("plabic n=0\n"), Err(Error::Degenerate(_))));
    }

    #[test]
    fn opposite_is_involution() {
        let g = PlabicGraph::parse(SMALL).unwrap();
        assert_eq!(g.opposite().opposite(), g);
        assert_eq!(g.opposite().color(0), Color::Black);
    }
}
