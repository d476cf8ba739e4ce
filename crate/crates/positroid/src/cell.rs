//! Plücker coordinates of the open positroid cell as matching partition
//! functions in edge weights.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::matchings::{boundary_value, enumerate_matchings};
use crate::plabic::{Convention, Plabic};
use crate::ratfn::substitute_poly;
use crate::scalar::{int, Fp};
use crate::subset::Subset;
use crate::{Laurent, RatFn, Rational};

/// A three-term relation `D(Sac) D(Sbd) = D(Sab) D(Scd) + D(Sad) D(Sbc)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Relation {
    pub s: Subset,
    pub abcd: [usize; 4],
}

impl Relation {
    fn terms(&self) -> [(Subset, Subset); 3] {
        let [a, b, c, d] = self.abcd;
        let w = |x: usize, y: usize| Subset::from_elems([x, y]).union(self.s);
        [(w(a, c), w(b, d)), (w(a, b), w(c, d)), (w(a, d), w(b, c))]
    }
}

/// Outcome of checking every three-term relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCertificate {
    pub checked: usize,
    pub violations: Vec<Relation>,
}

impl RelationCertificate {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All three-term relations for `Gr(k, n)`.
pub fn three_term_relations(k: usize, n: usize) -> Vec<Relation> {
    if k < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in Subset::all_k_subsets(n, k - 2) {
        let rest: Vec<usize> = (1..=n).filter(|&i| !s.contains(i)).collect();
        for quad in Subset::all_k_subsets(rest.len(), 4) {
            let e: Vec<usize> = quad.elems().iter().map(|&i| rest[i - 1]).collect();
            out.push(Relation {
                s,
                abcd: [e[0], e[1], e[2], e[3]],
            });
        }
    }
    out
}

/// The coordinate ring of the cell in one common gauge.
#[derive(Clone, Debug)]
pub struct CellModel {
    plabic: Plabic,
    names: Vec<String>,
    plucker: BTreeMap<Subset, Laurent>,
}

impl CellModel {
    /// Partition functions for every k-subset. Edge `e` carries the weight
    /// variable `w_<name of e>`.
    pub fn build(p: &Plabic) -> CellModel {
        let g = p.graph();
        let nv = g.edge_count();
        let names = (0..nv).map(|e| format!("w_{}", g.edge_name(e))).collect();
        let matchings = enumerate_matchings(g);
        let mut grouped: BTreeMap<Subset, Vec<Vec<i32>>> = BTreeMap::new();
        for m in &matchings {
            let mut e = vec![0i32; nv];
            for &x in m.edges() {
                e[x] = 1;
            }
            grouped.entry(boundary_value(g, m)).or_default().push(e);
        }
        let plucker = Subset::all_k_subsets(p.n(), p.k())
            .into_par_iter()
            .map(|s| {
                let terms = grouped.get(&s).into_iter().flatten().map(|e| (e.clone(), int(1)));
                (s, Laurent::from_terms(nv, terms))
            })
            .collect();
        CellModel {
            plabic: p.clone(),
            names,
            plucker,
        }
    }

    pub fn plabic(&self) -> &Plabic {
        &self.plabic
    }

    pub fn n(&self) -> usize {
        self.plabic.n()
    }

    pub fn k(&self) -> usize {
        self.plabic.k()
    }

    pub fn weight_names(&self) -> &[String] {
        &self.names
    }

    pub fn weight_count(&self) -> usize {
        self.names.len()
    }

    pub fn plucker(&self, s: Subset) -> &Laurent {
        &self.plucker[&s]
    }

    pub fn pluckers(&self) -> &BTreeMap<Subset, Laurent> {
        &self.plucker
    }

    pub fn positroid(&self) -> Vec<Subset> {
        self.plucker
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(s, _)| *s)
            .collect()
    }

    /// `x_j -> plucker(label(j))` for every face `j`.
    pub fn images(&self, c: Convention) -> Vec<RatFn> {
        (0..self.plabic.face_count())
            .map(|f| RatFn::from_poly(self.plucker(self.plabic.label(f, c)).clone()))
            .collect()
    }

    /// Rewrites a Laurent polynomial in the face variables into edge weights.
    pub fn expand(&self, x: &Laurent, c: Convention) -> Result<RatFn> {
        substitute_poly(x, &self.images(c))
    }

    pub fn expand_rational(&self, x: &RatFn, c: Convention) -> Result<RatFn> {
        x.substitute(&self.images(c))
    }

    /// `prod plucker(I)^e` as a rational function.
    pub fn plucker_monomial(&self, factors: &[(Subset, i32)]) -> Result<RatFn> {
        let mut num = Laurent::one(self.weight_count());
        let mut den = Laurent::one(self.weight_count());
        for &(s, e) in factors {
            let p = self.plucker(s);
            if e > 0 {
                num = &num * &p.pow(e).unwrap();
            } else if e < 0 {
                if p.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                den = &den * &p.pow(-e).unwrap();
            }
        }
        RatFn::new(num, den)
    }

    /// Exact equality of functions on the cell.
    pub fn equal_on_cell(&self, f: &RatFn, g: &RatFn) -> bool {
        equal_rational(f, g)
    }

    /// Checks every three-term relation as a polynomial identity.
    pub fn check_plucker_relations(&self) -> RelationCertificate {
        let rels = three_term_relations(self.k(), self.n());
        let mut violations: Vec<Relation> = rels
            .par_iter()
            .filter(|r| {
                let [(a, b), (c, d), (e, f)] = r.terms();
                let lhs = self.plucker(a) * self.plucker(b);
                let rhs = &(self.plucker(c) * self.plucker(d)) + &(self.plucker(e) * self.plucker(f));
                lhs != rhs
            })
            .copied()
            .collect();
        violations.sort();
        RelationCertificate {
            checked: rels.len(),
            violations,
        }
    }

    /// Positive rational edge weights drawn from `rng_seed`.
    pub fn sample_weights(&self, rng_seed: u64) -> Vec<Rational> {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        (0..self.weight_count())
            .map(|_| Rational::new(rng.gen_range(1i64..=12).into(), rng.gen_range(1i64..=12).into()))
            .collect()
    }

    pub fn point_at(&self, weights: &[Rational]) -> CellPoint {
        let pluckers = self
            .plucker
            .iter()
            .map(|(s, p)| (*s, p.eval_with(weights, |c| c.clone()).unwrap()))
            .collect();
        CellPoint {
            n: self.n(),
            k: self.k(),
            pluckers,
        }
    }

    pub fn sample_point(&self, rng_seed: u64) -> CellPoint {
        self.point_at(&self.sample_weights(rng_seed))
    }

    /// Writes `f` as a product of Plücker coordinates of total degree vector
    /// `degvec`, if it is one. Factor lists are tried in lexicographic order
    /// and the first certified one is returned.
    pub fn as_plucker_product(&self, f: &RatFn, degvec: &[i64]) -> Option<Vec<Subset>> {
        let total: i64 = degvec.iter().sum();
        if degvec.iter().any(|&x| x < 0) || total % self.k() as i64 != 0 {
            return None;
        }
        let support = self.positroid();
        let mut acc = Vec::new();
        self.product_search(
            f,
            degvec.to_vec(),
            (total / self.k() as i64) as usize,
            &support,
            0,
            &mut acc,
        )
    }

    fn product_search(
        &self,
        f: &RatFn,
        rest: Vec<i64>,
        left: usize,
        support: &[Subset],
        from: usize,
        acc: &mut Vec<Subset>,
    ) -> Option<Vec<Subset>> {
        if left == 0 {
            let mut p = Laurent::one(self.weight_count());
            for s in acc.iter() {
                p = &p * self.plucker(*s);
            }
            return equal_rational(f, &RatFn::from_poly(p)).then(|| acc.clone());
        }
        for (i, s) in support.iter().enumerate().skip(from) {
            if s.elems().iter().any(|&x| rest[x - 1] == 0) {
                continue;
            }
            let mut r = rest.clone();
            for x in s.elems() {
                r[x - 1] -= 1;
            }
            acc.push(*s);
            if let Some(found) = self.product_search(f, r, left - 1, support, i, acc) {
                return Some(found);
            }
            acc.pop();
        }
        None
    }

    /// Model dump: `I : polynomial` lines sorted by subset.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (s, p) in &self.plucker {
            out.push_str(&format!("{} : {}\n", s, p.render(&self.names)));
        }
        out
    }
}

/// Cross-multiplied equality, with a quick modular evaluation to reject
/// unequal pairs cheaply.
pub fn equal_rational(f: &RatFn, g: &RatFn) -> bool {
    if let (Some(a), Some(b)) = (fingerprint(f), fingerprint(g)) {
        if a != b {
            return false;
        }
    }
    f.equals(g)
}

/// Value of `f` modulo a large prime at a fixed pseudo-random point; `None`
/// if the point hits a pole or a coefficient does not reduce. Equal
/// functions have equal fingerprints.
pub fn fingerprint(f: &RatFn) -> Option<Fp> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let point: Vec<Fp> = (0..f.nvars())
        .map(|_| Fp::new(rng.gen_range(2..(1u64 << 60))))
        .collect();
    let reducible = |p: &Laurent| p.terms().all(|(_, c)| Fp::from_rational(c).is_some());
    if !reducible(f.num()) || !reducible(f.den()) {
        return None;
    }
    let ev = |p: &Laurent| p.eval_with(&point, |c: &Rational| Fp::from_rational(c).unwrap());
    let d = ev(f.den())?;
    if d == Fp::new(0) {
        return None;
    }
    Some(ev(f.num())? / d)
}

/// A point of the cone over the cell, by its Plücker coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CellPoint {
    pub n: usize,
    pub k: usize,
    pub pluckers: BTreeMap<Subset, Rational>,
}

impl CellPoint {
    pub fn plucker(&self, s: Subset) -> &Rational {
        &self.pluckers[&s]
    }

    pub fn satisfies_relations(&self) -> bool {
        three_term_relations(self.k, self.n).iter().all(|r| {
            let [(a, b), (c, d), (e, f)] = r.terms();
            let p = |s| self.plucker(s).clone();
            p(a) * p(b) == p(c) * p(d) + p(e) * p(f)
        })
    }

    /// Whether all the given coordinates are nonzero.
    pub fn nonvanishing(&self, labels: &[Subset]) -> bool {
        labels.iter().all(|s| !self.plucker(*s).is_zero())
    }

    /// A `k x n` matrix whose maximal minors are exactly these coordinates.
    pub fn matrix(&self) -> Result<Matrix<Rational>> {
        let (i0, d0) = self
            .pluckers
            .iter()
            .find(|(_, v)| !v.is_zero())
            .map(|(s, v)| (*s, v.clone()))
            .ok_or(Error::RankDeficient)?;
        let rows = i0.elems();
        let mut m = Matrix::zeros(self.k, self.n);
        for (r, &ir) in rows.iter().enumerate() {
            for c in 1..=self.n {
                if i0.contains(c) {
                    if c == ir {
                        m.set(r, c - 1, Rational::one());
                    }
                    continue;
                }
                let mut j = i0;
                j.remove(ir);
                let (lo, hi) = if ir < c { (ir, c) } else { (c, ir) };
                let between = j.elems().iter().filter(|&&x| x > lo && x < hi).count();
                j.insert(c);
                let mut v = self.plucker(j).clone() / d0.clone();
                if between % 2 == 1 {
                    v = -v;
                }
                m.set(r, c - 1, v);
            }
        }
        m.scale_row(0, &d0);
        Ok(m)
    }
}

/// Maximal minor of `m` on the columns of `s`.
pub fn minor(m: &Matrix<Rational>, s: Subset) -> Rational {
    let cols: Vec<usize> = s.elems().iter().map(|&c| c - 1).collect();
    m.select_columns(&cols).determinant()
}

/// All maximal minors of a `k x n` matrix.
pub fn minors(m: &Matrix<Rational>) -> BTreeMap<Subset, Rational> {
    Subset::all_k_subsets(m.cols(), m.rows())
        .into_iter()
        .map(|s| (s, minor(m, s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const GR37: &str = include_str!("../corpus/gr37.plabic");

    fn model() -> CellModel {
        CellModel::build(&Plabic::parse(GR37).unwrap())
    }

    fn s(x: &str) -> Subset {
        Subset::parse(x).unwrap()
    }

    #[test]
    fn relation_count() {
        // C(n, k-2) * C(n-k+2, 4)
        assert_eq!(three_term_relations(2, 4).len(), 1);
        assert_eq!(three_term_relations(3, 7).len(), 7 * 15);
    }

    #[test]
    fn vanishing_and_necklaces() {
        let m = model();
        for v in ["234", "456", "457", "467", "567"] {
            assert!(m.plucker(s(v)).is_zero(), "{}", v);
        }
        assert_eq!(m.positroid().len(), 30);
        for f in 0..m.plabic().face_count() {
            assert!(!m.plucker(m.plabic().labels().src[f]).is_zero());
            assert!(!m.plucker(m.plabic().labels().tgt[f]).is_zero());
        }
    }

    #[test]
    fn relations_hold() {
        let c = model().check_plucker_relations();
        assert!(c.passed(), "{:?}", c.violations);
    }

    #[test]
    fn frozen_identity() {
        let m = model();
        let lhs = m.plucker_monomial(&[(s("145"), 1)]).unwrap();
        let rhs = m
            .plucker_monomial(&[(s("167"), 1), (s("345"), 1), (s("367"), -1)])
            .unwrap();
        assert!(m.equal_on_cell(&lhs, &rhs));
        let a = m.plucker_monomial(&[(s("135"), 1)]).unwrap();
        let b = m.plucker_monomial(&[(s("137"), 1)]).unwrap();
        assert!(!m.equal_on_cell(&a, &b));
    }

    #[test]
    fn expand_initial_variable() {
        let m = model();
        let nf = m.plabic().face_count();
        for f in 0..nf {
            let x = Laurent::var(f, nf);
            let e = m.expand(&x, Convention::Source).unwrap();
            assert!(e.equals(&RatFn::from_poly(m.plucker(m.plabic().labels().src[f]).clone())));
        }
    }

    #[test]
    fn sampled_point_reconstructs() {
        let m = model();
        let p = m.sample_point(7);
        assert_eq!(p, m.sample_point(7));
        assert!(p.plucker(s("234")).is_zero());
        assert!(p.satisfies_relations());
        let mat = p.matrix().unwrap();
        assert_eq!(mat.rank(), 3);
        assert_eq!(minors(&mat), p.pluckers);
    }

    #[test]
    fn equal_rational_agrees_with_cross_multiplication() {
        let x = |i| Laurent::var(i, 2);
        let num = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let f = RatFn::new(num, &x(0) - &x(1)).unwrap();
        let g = RatFn::from_poly(&x(0) + &x(1));
        assert!(equal_rational(&f, &g));
        let h = RatFn::new(x(0), x(1)).unwrap();
        let hi = RatFn::new(x(1), x(0)).unwrap();
        assert!(!equal_rational(&h, &hi));
    }
}
