//! Validated plabic graphs: labels, necklaces, type and the dual quiver.

use crate::error::{Error, Result};
use crate::graph::{End, PlabicGraph};
use crate::layout::{Layout, Violation};
use crate::quiver::IceQuiver;
use crate::subset::Subset;

/// Source and target label of every face, indexed by face id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLabels {
    pub src: Vec<Subset>,
    pub tgt: Vec<Subset>,
    pub boundary: Vec<bool>,
}

/// Which labelling of the faces to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    Source,
    Target,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Source => "src",
            Convention::Target => "tgt",
        }
    }
}

/// Strand-rule violations of a structurally sound graph.
pub fn validate(g: &PlabicGraph) -> Result<Vec<Violation>> {
    Ok(Layout::new(g)?.validate())
}

/// A plabic graph that passed validation, with its derived data.
#[derive(Clone, Debug)]
pub struct Plabic {
    graph: PlabicGraph,
    layout: Layout,
    labels: FaceLabels,
    k: usize,
}

impl Plabic {
    pub fn new(graph: PlabicGraph) -> Result<Plabic> {
        let layout = Layout::new(&graph)?;
        let v = layout.validate();
        if let Some(first) = v.first() {
            return Err(Error::Invalid(format!(
                "{} strand violation(s), first: {:?}",
                v.len(),
                first
            )));
        }
        let (src, tgt) = layout.labels()?;
        let boundary = layout.faces().iter().map(|f| f.is_boundary()).collect();
        let k = src[0].len();
        if src.iter().chain(&tgt).any(|s| s.len() != k) {
            return Err(Error::Invalid("face labels have different sizes".into()));
        }
        if graph.matching_k() != k as i64 {
            return Err(Error::Invalid(format!(
                "label size {} disagrees with node count formula {}",
                k,
                graph.matching_k()
            )));
        }
        if k == 0 || k == graph.n() {
            return Err(Error::Degenerate(format!("type ({}, {})", k, graph.n())));
        }
        Ok(Plabic {
            graph,
            layout,
            labels: FaceLabels { src, tgt, boundary },
            k,
        })
    }

    pub fn parse(text: &str) -> Result<Plabic> {
        Plabic::new(PlabicGraph::parse(text)?)
    }

    pub fn graph(&self) -> &PlabicGraph {
        &self.graph
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn labels(&self) -> &FaceLabels {
        &self.labels
    }

    pub fn label(&self, f: usize, c: Convention) -> Subset {
        match c {
            Convention::Source => self.labels.src[f],
            Convention::Target => self.labels.tgt[f],
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph_type(&self) -> (usize, usize) {
        (self.k, self.graph.n())
    }

    pub fn face_count(&self) -> usize {
        self.layout.face_count()
    }

    pub fn is_boundary_face(&self, f: usize) -> bool {
        self.labels.boundary[f]
    }

    pub fn boundary_faces(&self) -> Vec<usize> {
        (0..self.face_count()).filter(|&f| self.labels.boundary[f]).collect()
    }

    pub fn internal_faces(&self) -> Vec<usize> {
        (0..self.face_count()).filter(|&f| !self.labels.boundary[f]).collect()
    }

    /// `pi(p)` indexed by `p - 1`.
    pub fn trip_permutation(&self) -> Vec<usize> {
        self.layout.trip_permutation()
    }

    /// Labels of the boundary faces under the given convention, in face order.
    pub fn necklace(&self, c: Convention) -> Vec<Subset> {
        self.boundary_faces().into_iter().map(|f| self.label(f, c)).collect()
    }

    pub fn quiver(&self) -> IceQuiver {
        IceQuiver::dual(&self.graph, &self.layout)
    }

    /// Face with the given label, if any.
    pub fn face_with_label(&self, s: Subset, c: Convention) -> Option<usize> {
        (0..self.face_count()).find(|&f| self.label(f, c) == s)
    }

    pub fn opposite(&self) -> Result<Plabic> {
        Plabic::new(self.graph.opposite())
    }

    pub fn is_connected(&self) -> bool {
        components(&self.graph).len() == 1
    }
}

/// A connected component: its nodes and the boundary points it touches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub nodes: Vec<usize>,
    pub points: Vec<usize>,
}

/// Connected components ordered by smallest boundary point.
pub fn components(g: &PlabicGraph) -> Vec<Component> {
    let nv = g.node_count();
    let mut comp = vec![usize::MAX; nv];
    let mut count = 0;
    for p in 1..=g.n() {
        let start = g.half_node(p);
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if comp[v] != usize::MAX {
                continue;
            }
            comp[v] = count;
            for &e in g.rotation(v) {
                if let End::Node(u) = g.other_end(e, v) {
                    stack.push(u);
                }
            }
        }
        count += 1;
    }
    let mut out: Vec<Component> = (0..count)
        .map(|_| Component {
            nodes: Vec::new(),
            points: Vec::new(),
        })
        .collect();
    for v in 0..nv {
        out[comp[v]].nodes.push(v);
    }
    for p in 1..=g.n() {
        out[comp[g.half_node(p)]].points.push(p);
    }
    out
}

/// A subgraph on some nodes, with its boundary points renumbered `1..`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub graph: PlabicGraph,
    /// Ambient boundary points in increasing order; new point `i` is `points[i - 1]`.
    pub points: Vec<usize>,
    /// Ambient edge id to edge id in the restriction.
    pub edge_map: Vec<Option<usize>>,
    /// Ambient node index to node index in the restriction.
    pub node_map: Vec<Option<usize>>,
}

/// Restricts `g` to a union of components (their nodes must be closed under adjacency).
pub fn restrict(g: &PlabicGraph, nodes: &[usize]) -> Result<Restriction> {
    let nv = g.node_count();
    let mut node_map = vec![None; nv];
    let mut keep: Vec<usize> = nodes.to_vec();
    keep.sort_unstable();
    for (i, &v) in keep.iter().enumerate() {
        node_map[v] = Some(i);
    }
    let points: Vec<usize> = (1..=g.n()).filter(|&p| node_map[g.half_node(p)].is_some()).collect();
    let m = points.len();
    let mut edge_map = vec![None; g.edge_count()];
    for (i, &p) in points.iter().enumerate() {
        edge_map[p - 1] = Some(i);
    }
    let mut edges = Vec::new();
    for (j, &(a, b)) in g.internal_edges().iter().enumerate() {
        match (node_map[a], node_map[b]) {
            (Some(x), Some(y)) => {
                edge_map[g.n() + j] = Some(m + edges.len());
                edges.push((x, y));
            }
            (None, None) => {}
            _ => return Err(Error::Structure("restriction cuts an edge".into())),
        }
    }
    let half: Vec<usize> = points.iter().map(|&p| node_map[g.half_node(p)].unwrap()).collect();
    let ids = keep.iter().map(|&v| g.id(v)).collect();
    let colors = keep.iter().map(|&v| g.color(v)).collect();
    let rotation = keep
        .iter()
        .map(|&v| g.rotation(v).iter().map(|&e| edge_map[e].unwrap()).collect())
        .collect();
    let graph = PlabicGraph::from_parts(m, ids, colors, edges, half, rotation)?;
    Ok(Restriction {
        graph,
        points,
        edge_map,
        node_map,
    })
}
