//! Plabic graphs, the positroid cells they parametrise, and exact checks
//! comparing the cluster structures given by source and target face labels.
//!
//! # Graph files
//!
//! A graph is a line-oriented text file. `#` starts a comment.
//!
//! ```text
//! plabic n=2          # number of boundary points
//! node 1 white        # node id and colour
//! node 2 black
//! edge 1 2            # internal edge between two node ids
//! half 1 1            # boundary point 1 is joined to node 1
//! half 2 2
//! embed 1: b1 2       # edges at node 1 in clockwise order
//! embed 2: b2 1
//! ```
//!
//! In an `embed` line, `b<p>` is the half-edge to boundary point `p` and a
//! node id is the edge to that neighbour. With parallel edges, the k-th
//! occurrence of a neighbour is the k-th `edge` line joining the pair.
//! Boundary points are numbered clockwise. Internal edges are numbered from 1
//! in file order and written `e1, e2, ...`; half-edges are `h1, h2, ...`.
//!
//! # Layout
//!
//! - [`graph`], [`layout`] and [`plabic`]: parsing, strands, faces, labels,
//!   necklaces and the dual quiver.
//! - [`matchings`]: perfect matchings, positroids, wedge matchings and their
//!   stable classes.
//! - [`poly`], [`ratfn`], [`linalg`], [`scalar`]: exact Laurent polynomials,
//!   rational functions and linear algebra, generic over the scalar.
//! - [`cluster`]: seeds, mutation, exploration and gradings.
//! - [`cell`]: the cell model by partition functions, and points of the cell.
//! - [`quasi`], [`segre`], [`twist`]: the verification routines.
//! - [`corpus`], [`generate`]: bundled and random graphs.

pub mod cell;
pub mod cluster;
pub mod corpus;
pub mod error;
pub mod generate;
pub mod graph;
pub mod layout;
pub mod linalg;
pub mod matchings;
pub mod plabic;
pub mod poly;
pub mod quasi;
pub mod quiver;
pub mod ratfn;
pub mod scalar;
pub mod segre;
pub mod subset;
pub mod twist;

pub use error::{Error, Result};
pub use graph::{Color, PlabicGraph};
pub use plabic::{Convention, FaceLabels, Plabic};
pub use subset::Subset;

pub type Rational = num::BigRational;
pub type Laurent = poly::LaurentPoly<Rational>;
pub type RatFn = ratfn::RationalFn<Rational>;
