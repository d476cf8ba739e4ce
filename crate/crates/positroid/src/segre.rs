//! Disconnected graphs: splitting off a component, the signed Segre
//! decomposition of Plückers, and quasi-coincidence assembled from the pieces.

use crate::cell::equal_rational;
use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::plabic::{components, restrict, Convention, Plabic, Restriction};
use crate::quasi::{
    assemble, frozen_transition, match_variable, FrozenEntry, FrozenMonomial, QuasiReport, Setup, VariableMatch,
};
use crate::subset::Subset;
use crate::Laurent;

/// Which piece a face of the whole graph belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
    /// The one face touching both pieces.
    Star,
}

/// A two-piece split: the component `D2` on the interval `S2` and the rest `D1`.
#[derive(Clone, Debug)]
pub struct SplitData {
    pub s1: Subset,
    pub s2: Subset,
    pub s1_plus: Subset,
    pub k: [usize; 2],
    pub pieces: [Restriction; 2],
    pub plabics: [Plabic; 2],
    pub star: usize,
    pub side: Vec<Side>,
    /// Face of the whole graph to face of each piece.
    pub local: [Vec<Option<usize>>; 2],
}

impl SplitData {
    pub fn new(p: &Plabic) -> Result<SplitData> {
        let g = p.graph();
        let comps = components(g);
        if comps.len() < 2 {
            return Err(Error::Invalid("graph is connected".into()));
        }
        // An innermost piece: a component away from 1 on a linear interval.
        let inner = comps
            .iter()
            .find(|c| !c.points.contains(&1) && c.points.windows(2).all(|w| w[1] == w[0] + 1))
            .ok_or_else(|| Error::Invalid("no component sits on an interval".into()))?;
        let rest: Vec<usize> = (0..g.node_count()).filter(|v| !inner.nodes.contains(v)).collect();
        let pieces = [restrict(g, &rest)?, restrict(g, &inner.nodes)?];
        let plabics = [
            Plabic::new(pieces[0].graph.clone())?,
            Plabic::new(pieces[1].graph.clone())?,
        ];
        let s2 = Subset::from_elems(inner.points.iter().copied());
        let s1 = s2.complement(p.n());
        let last = *inner.points.last().unwrap();
        let s1_plus = Subset::from_elems((last + 1..=p.n()).filter(|&i| s1.contains(i)));
        let lay = p.layout();
        let nf = p.face_count();
        let mut side = Vec::with_capacity(nf);
        let mut local = [vec![None; nf], vec![None; nf]];
        for f in 0..nf {
            for &d in &lay.faces()[f].darts {
                let e = Layout::seg(d);
                if e >= g.edge_count() {
                    continue;
                }
                for c in 0..2 {
                    if let Some(e2) = pieces[c].edge_map[e] {
                        let lf = plabics[c].layout().face_of_dart(2 * e2 + (d & 1));
                        match local[c][f] {
                            None => local[c][f] = Some(lf),
                            Some(x) if x == lf => {}
                            Some(_) => return Err(Error::Invalid(format!("face {} spans two faces of a piece", f))),
                        }
                    }
                }
            }
            side.push(match (local[0][f], local[1][f]) {
                (Some(_), Some(_)) => Side::Star,
                (Some(_), None) => Side::First,
                (None, Some(_)) => Side::Second,
                (None, None) => return Err(Error::Invalid(format!("face {} has no edges", f))),
            });
        }
        let stars: Vec<usize> = (0..nf).filter(|&f| side[f] == Side::Star).collect();
        if stars.len() != 1 {
            return Err(Error::Invalid(format!(
                "expected one shared face, found {}",
                stars.len()
            )));
        }
        let k = [plabics[0].k(), plabics[1].k()];
        Ok(SplitData {
            s1,
            s2,
            s1_plus,
            k,
            pieces,
            plabics,
            star: stars[0],
            side,
            local,
        })
    }

    fn on(&self, c: usize, f: usize) -> bool {
        self.side[f] == Side::Star || (self.side[f] == Side::First) == (c == 0)
    }

    /// Face of the whole graph corresponding to face `lf` of piece `c`.
    pub fn global_face(&self, c: usize, lf: usize) -> usize {
        (0..self.side.len())
            .find(|&f| self.on(c, f) && self.local[c][f] == Some(lf))
            .unwrap()
    }

    /// Rewrites a polynomial in the faces of the whole graph into the faces
    /// of piece `c`; `None` if it involves faces of the other piece.
    pub fn restrict_poly(&self, c: usize, x: &Laurent) -> Option<Laurent> {
        if x.support().iter().any(|&f| !self.on(c, f)) {
            return None;
        }
        let map: Vec<usize> = (0..self.side.len()).map(|f| self.local[c][f].unwrap_or(0)).collect();
        Some(x.rename(&map, self.plabics[c].face_count()))
    }

    pub fn extend_poly(&self, c: usize, x: &Laurent) -> Laurent {
        let map: Vec<usize> = (0..self.plabics[c].face_count())
            .map(|lf| self.global_face(c, lf))
            .collect();
        x.rename(&map, self.side.len())
    }

    /// Ambient subset to the piece's own numbering.
    pub fn localize(&self, c: usize, s: Subset) -> Subset {
        let pts = &self.pieces[c].points;
        Subset::from_elems(
            s.elems()
                .into_iter()
                .filter_map(|i| pts.iter().position(|&q| q == i).map(|x| x + 1)),
        )
    }

    pub fn globalize(&self, c: usize, s: Subset) -> Subset {
        s.map(|i| self.pieces[c].points[i - 1])
    }
}

/// `(-1)^(k2 |I ∩ S1+|)`.
pub fn segre_sign(i: Subset, split: &SplitData) -> i32 {
    if (split.k[1] * i.intersect(split.s1_plus).len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `D_I -> sign * D_{I∩S1} ⊗ D_{I∩S2}`, or `None` for the zero case.
/// The parts are in ambient numbering.
pub fn segre_decompose(i: Subset, split: &SplitData) -> Option<(i32, Subset, Subset)> {
    let a = i.intersect(split.s1);
    let b = i.intersect(split.s2);
    (a.len() == split.k[0] && b.len() == split.k[1]).then(|| (segre_sign(i, split), a, b))
}

/// A certified variable map for any graph, composing across pieces when
/// the graph is disconnected.
pub fn certify_map(p: &Plabic, seed_bound: usize) -> Result<(Setup, Vec<VariableMatch>)> {
    let s = Setup::new(p, seed_bound)?;
    if p.is_connected() {
        let map = (0..s.tgt.expanded.len())
            .map(|i| {
                let (src, monomial, degenerate) =
                    match_variable(&s.model, &s.tgt.expanded[i], &s.tgt.degrees[i], &s.src)?;
                Ok(VariableMatch {
                    tgt: i,
                    src,
                    monomial,
                    degenerate,
                })
            })
            .collect::<Result<_>>()?;
        return Ok((s, map));
    }
    let split = SplitData::new(p)?;
    let mut sub = Vec::new();
    for c in 0..2 {
        let (setup, map) = certify_map(&split.plabics[c], seed_bound)?;
        let table = frozen_transition(&setup.model, Convention::Source, Convention::Target)?;
        sub.push((setup, map, table));
    }
    let boundary = p.boundary_faces();
    let mut out = Vec::new();
    for (i, x) in s.exploration.variables.iter().enumerate() {
        let c = (0..2)
            .find(|&c| split.restrict_poly(c, x).is_some())
            .ok_or_else(|| Error::Verification(format!("variable {} involves both pieces", i)))?;
        let (setup, map, _) = &sub[c];
        let xc = split.restrict_poly(c, x).unwrap();
        let ic = setup
            .exploration
            .variables
            .binary_search(&xc)
            .map_err(|_| Error::Verification(format!("variable {} is not a variable of its piece", i)))?;
        let mc = map.iter().find(|m| m.tgt == ic).unwrap();
        let xp = split.extend_poly(c, &setup.exploration.variables[mc.src]);
        let j = s
            .exploration
            .variables
            .binary_search(&xp)
            .map_err(|_| Error::Verification(format!("image of variable {} is not a variable", i)))?;
        let deg = setup.tgt.degree(ic, split.k[c]) as i32;
        // x -> x' p q^deg / x_*^deg
        let mut e = vec![0i32; boundary.len()];
        let pos = |f: usize| boundary.iter().position(|&b| b == f).unwrap();
        let local_boundary = split.plabics[c].boundary_faces();
        for (l, &x) in mc.monomial.exponents.iter().enumerate() {
            e[pos(split.global_face(c, local_boundary[l]))] += x;
        }
        let other = 1 - c;
        let star_local = split.local[other][split.star].unwrap();
        let q: &FrozenEntry = sub[other].2.iter().find(|t| t.face == star_local).unwrap();
        let other_boundary = split.plabics[other].boundary_faces();
        for (l, &x) in q.monomial.exponents.iter().enumerate() {
            e[pos(split.global_face(other, other_boundary[l]))] += deg * x;
        }
        e[pos(split.star)] -= deg;
        let monomial = FrozenMonomial { exponents: e };
        let rhs = s.src.expanded[j].mul(&s.model.plucker_monomial(&monomial.factors(&s.src.frozen.labels))?);
        if !equal_rational(&s.tgt.expanded[i], &rhs) {
            return Err(Error::Verification(format!(
                "composed identity fails for target {}: src {} * {}",
                s.tgt.describe(i),
                s.src.describe(j),
                monomial.render(&s.src.frozen.labels)
            )));
        }
        out.push(VariableMatch {
            tgt: i,
            src: j,
            monomial,
            degenerate: false,
        });
    }
    Ok((s, out))
}

pub fn verify_disconnected(p: &Plabic, seed_bound: usize) -> Result<QuasiReport> {
    let (s, map) = certify_map(p, seed_bound)?;
    assemble(&s, map, "segre".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split59() -> (Plabic, SplitData) {
        let p = Plabic::parse(include_str!("../corpus/split59.plabic")).unwrap();
        let s = SplitData::new(&p).unwrap();
        (p, s)
    }

    fn s(x: &str) -> Subset {
        Subset::parse(x).unwrap()
    }

    #[test]
    fn split_shape() {
        let (p, sp) = split59();
        assert_eq!(sp.s2, s("45678"));
        assert_eq!(sp.s1_plus, s("9"));
        assert_eq!(sp.k, [2, 3]);
        assert_eq!(p.labels().src[sp.star], s("23678"));
        assert_eq!(sp.plabics[0].graph_type(), (2, 4));
        assert_eq!(sp.plabics[1].graph_type(), (3, 5));
    }

    #[test]
    fn signs() {
        let (_, sp) = split59();
        assert_eq!(segre_decompose(s("14679"), &sp), Some((-1, s("19"), s("467"))));
        assert_eq!(segre_decompose(s("12345"), &sp), None);
        assert_eq!(segre_sign(s("12456"), &sp), 1);
    }
}
