//! Random valid plabic graphs built by adding bridges to lollipops.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Color, PlabicGraph};
use crate::plabic::Plabic;

#[derive(Clone, Debug)]
struct Builder {
    n: usize,
    colors: Vec<Color>,
    edges: Vec<(usize, usize)>,
    half: Vec<usize>,
    rotation: Vec<Vec<usize>>,
}

impl Builder {
    fn lollipops(colors: Vec<Color>) -> Builder {
        let n = colors.len();
        Builder {
            n,
            colors,
            edges: Vec::new(),
            half: (0..n).collect(),
            rotation: (0..n).map(|p| vec![p]).collect(),
        }
    }

    fn add_node(&mut self, c: Color) -> usize {
        self.colors.push(c);
        self.rotation.push(Vec::new());
        self.colors.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.edges.push((a, b));
        self.n + self.edges.len() - 1
    }

    /// Node of colour `c` on half-edge `p` for a bridge to attach to; a new
    /// bivalent node is inserted unless the current one has that colour.
    fn attach(&mut self, p: usize, c: Color) -> usize {
        let h = p - 1;
        let u = self.half[h];
        if self.colors[u] == c {
            return u;
        }
        let w = self.add_node(c);
        let e = self.add_edge(w, u);
        for x in self.rotation[u].iter_mut() {
            if *x == h {
                *x = e;
            }
        }
        self.half[h] = w;
        self.rotation[w] = vec![h, e];
        w
    }

    /// Bridge between points `i` and `i + 1`, white on the `i` side if `white_first`.
    fn bridge(&mut self, i: usize, white_first: bool) {
        let j = i + 1;
        let (ci, cj) = if white_first {
            (Color::White, Color::Black)
        } else {
            (Color::Black, Color::White)
        };
        let a = self.attach(i, ci);
        let b = self.attach(j, cj);
        let e = self.add_edge(a, b);
        // Clockwise at the i side: h_i, bridge, rest; at the j side the
        // bridge comes just before h_j.
        let ra = &mut self.rotation[a];
        let pa = ra.iter().position(|&x| x == i - 1).unwrap();
        ra.insert(pa + 1, e);
        let rb = &mut self.rotation[b];
        let pb = rb.iter().position(|&x| x == j - 1).unwrap();
        rb.insert(pb, e);
    }

    fn graph(&self) -> Option<PlabicGraph> {
        let ids = (0..self.colors.len() as u32).map(|v| v + 1).collect();
        PlabicGraph::from_parts(
            self.n,
            ids,
            self.colors.clone(),
            self.edges.clone(),
            self.half.clone(),
            self.rotation.clone(),
        )
        .ok()
    }
}

/// A random valid graph with `n` boundary points and at most `max_faces`
/// faces, or `None` if this draw gave a degenerate type.
pub fn random_plabic(rng: &mut impl Rng, n: usize, max_faces: usize, bridges: usize) -> Option<Plabic> {
    let colors = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Color::White } else { Color::Black })
        .collect();
    let mut b = Builder::lollipops(colors);
    let mut current: Option<Plabic> = None;
    for _ in 0..bridges {
        let i = rng.gen_range(1..n);
        let mut trial = b.clone();
        trial.bridge(i, rng.gen_bool(0.5));
        let Some(g) = trial.graph() else { continue };
        match Plabic::new(g) {
            Ok(p) if p.face_count() <= max_faces => {
                b = trial;
                current = Some(p);
            }
            _ => {}
        }
    }
    let p = current?;
    let shift = rng.gen_range(0..n);
    Plabic::new(p.graph().rotate_boundary(shift)).ok()
}

/// `count` graphs drawn deterministically from `seed`, each with a mutable face.
pub fn random_graphs(count: usize, seed: u64, max_faces: usize) -> Vec<Plabic> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=7);
        let bridges = rng.gen_range(2..=14);
        if let Some(p) = random_plabic(&mut rng, n, max_faces, bridges) {
            if !p.internal_faces().is_empty() && p.graph().node_count() > 0 {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a: Vec<String> = random_graphs(5, 3, 12).iter().map(|p| p.graph().to_text()).collect();
        let b: Vec<String> = random_graphs(5, 3, 12).iter().map(|p| p.graph().to_text()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn bounded_faces() {
        for p in random_graphs(20, 11, 12) {
            assert!(p.face_count() <= 12);
            assert!(!p.internal_faces().is_empty());
        }
    }
}
