//! Seeds with invertible frozen variables, mutation and finite-type closure.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::poly::render_monomial;
use crate::quiver::IceQuiver;
use crate::scalar::int;
use crate::{Laurent, RatFn};

/// An ice quiver (as an exchange matrix) together with its cluster.
///
/// Variables are Laurent polynomials in the initial cluster `x_0..x_{m-1}`;
/// each mutation checks that the exchange quotient really is one.
#[derive(Clone, Debug)]
pub struct Seed {
    b: Vec<Vec<i64>>,
    frozen: Vec<bool>,
    frozen_arrows: Vec<(usize, usize)>,
    vars: Vec<Laurent>,
    word: Vec<usize>,
}

impl Seed {
    /// The initial seed of `q`: vertex `i` carries the variable `x_i`.
    pub fn initial(q: &IceQuiver) -> Seed {
        let m = q.vertex_count();
        Seed {
            b: q.exchange_matrix(),
            frozen: q.frozen().to_vec(),
            frozen_arrows: q.frozen_arrows(),
            vars: (0..m).map(|i| Laurent::var(i, m)).collect(),
            word: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.frozen.len()
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.frozen[v]
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.frozen.len()).filter(|&v| !self.frozen[v]).collect()
    }

    pub fn frozen_vertices(&self) -> Vec<usize> {
        (0..self.frozen.len()).filter(|&v| self.frozen[v]).collect()
    }

    /// `b[i][j] = #(j -> i) - #(i -> j)`.
    pub fn exchange_matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn var(&self, v: usize) -> &Laurent {
        &self.vars[v]
    }

    pub fn vars(&self) -> &[Laurent] {
        &self.vars
    }

    /// Mutation word from the initial seed, with immediate repeats cancelled.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn quiver(&self) -> IceQuiver {
        let m = self.vertex_count();
        let mut arrows = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for _ in 0..self.b[j][i].max(0) {
                    arrows.push((i, j));
                }
            }
        }
        arrows.extend(self.frozen_arrows.iter().copied());
        arrows.sort_unstable();
        IceQuiver::new(self.frozen.clone(), arrows)
    }

    pub fn mutate(&self, k: usize) -> Result<Seed> {
        if self.frozen[k] {
            return Err(Error::FrozenVertex(k));
        }
        let m = self.vertex_count();
        let b = &self.b;
        let mut nb = b.clone();
        for i in 0..m {
            for j in 0..m {
                if i == k || j == k {
                    nb[i][j] = -b[i][j];
                } else if !(self.frozen[i] && self.frozen[j]) {
                    nb[i][j] = b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2;
                }
            }
        }
        let nvars = self.vars[k].nvars();
        let mut plus = Laurent::one(nvars);
        let mut minus = Laurent::one(nvars);
        for i in 0..m {
            let e = b[i][k];
            if e > 0 {
                plus = &plus * &self.vars[i].pow(e as i32).unwrap();
            } else if e < 0 {
                minus = &minus * &self.vars[i].pow(-e as i32).unwrap();
            }
        }
        let num = &plus + &minus;
        let fresh = num
            .div_exact(&self.vars[k])
            .ok_or_else(|| Error::Verification(format!("exchange at vertex {} is not a Laurent polynomial", k)))?;
        let mut vars = self.vars.clone();
        vars[k] = fresh;
        let mut word = self.word.clone();
        if word.last() == Some(&k) {
            word.pop();
        } else {
            word.push(k);
        }
        Ok(Seed {
            b: nb,
            frozen: self.frozen.clone(),
            frozen_arrows: self.frozen_arrows.clone(),
            vars,
            word,
        })
    }

    pub fn mutate_word(&self, word: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in word {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// `prod_i x_i^{b_ij}`.
    pub fn y_hat(&self, j: usize) -> Result<RatFn> {
        if self.frozen[j] {
            return Err(Error::FrozenVertex(j));
        }
        let nvars = self.vars[j].nvars();
        let mut num = Laurent::one(nvars);
        let mut den = Laurent::one(nvars);
        for i in 0..self.vertex_count() {
            let e = self.b[i][j];
            if e > 0 {
                num = &num * &self.vars[i].pow(e as i32).unwrap();
            } else if e < 0 {
                den = &den * &self.vars[i].pow(-e as i32).unwrap();
            }
        }
        RatFn::new(num, den)
    }

    /// The mutable cluster, sorted; two seeds of a finite-type closure are
    /// identified when these agree.
    pub fn cluster_key(&self) -> Vec<Laurent> {
        let mut v: Vec<Laurent> = self
            .mutable_vertices()
            .into_iter()
            .map(|i| self.vars[i].clone())
            .collect();
        v.sort();
        v
    }

    /// Vertex of this seed carrying the (mutable) variable `x`.
    pub fn position(&self, x: &Laurent) -> Option<usize> {
        self.mutable_vertices().into_iter().find(|&i| &self.vars[i] == x)
    }

    /// Whether `other` has the same quiver once vertices are matched by
    /// variable; frozen vertices stay put.
    pub fn same_as(&self, other: &Seed) -> bool {
        let mut map = Vec::with_capacity(self.vertex_count());
        for i in 0..self.vertex_count() {
            if self.frozen[i] {
                map.push(i);
            } else {
                match other.position(&self.vars[i]) {
                    Some(j) => map.push(j),
                    None => return false,
                }
            }
        }
        (0..self.vertex_count()).all(|i| (0..self.vertex_count()).all(|j| self.b[i][j] == other.b[map[i]][map[j]]))
    }

    /// One line of arrows, then one line per vertex.
    pub fn dump(&self, names: &[String]) -> String {
        let q = self.quiver();
        let arrows: Vec<String> = q.arrows().iter().map(|(a, b)| format!("{}->{}", a, b)).collect();
        let mut out = format!("arrows {}\n", arrows.join(" "));
        for (i, x) in self.vars.iter().enumerate() {
            let tag = if self.frozen[i] { "frozen" } else { "mutable" };
            out.push_str(&format!("{} {} {}\n", i, tag, x.render(names)));
        }
        out
    }
}

/// Result of exploring the exchange graph breadth first.
#[derive(Clone, Debug)]
pub struct Exploration {
    /// Distinct seeds in discovery order, the initial seed first.
    pub seeds: Vec<Seed>,
    /// Distinct mutable cluster variables, sorted.
    pub variables: Vec<Laurent>,
    /// Whether the closure completed within the bound.
    pub finite_type: bool,
}

impl Exploration {
    /// Index in `variables` of each mutable vertex of `seed`.
    pub fn cluster_of(&self, seed: &Seed) -> Vec<usize> {
        let mut v: Vec<usize> = seed
            .mutable_vertices()
            .into_iter()
            .map(|i| {
                self.variables
                    .binary_search(seed.var(i))
                    .expect("variable outside the closure")
            })
            .collect();
        v.sort_unstable();
        v
    }

    pub fn clusters(&self) -> Vec<Vec<usize>> {
        self.seeds.iter().map(|s| self.cluster_of(s)).collect()
    }
}

/// Breadth-first closure of seeds, identified by cluster, up to `bound` seeds.
pub fn enumerate_variables(initial: &Seed, bound: usize) -> Result<Exploration> {
    let mut seeds = vec![initial.clone()];
    let mut seen: HashMap<Vec<Laurent>, usize> = HashMap::new();
    seen.insert(initial.cluster_key(), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut finite_type = true;
    while let Some(s) = queue.pop_front() {
        for k in seeds[s].mutable_vertices() {
            let t = seeds[s].mutate(k)?;
            let key = t.cluster_key();
            if let Some(&old) = seen.get(&key) {
                if !seeds[old].same_as(&t) {
                    return Err(Error::Verification(format!(
                        "two seeds share a cluster but not a quiver (words {:?} and {:?})",
                        seeds[old].word(),
                        t.word()
                    )));
                }
                continue;
            }
            if seeds.len() >= bound {
                finite_type = false;
                continue;
            }
            seen.insert(key, seeds.len());
            queue.push_back(seeds.len());
            seeds.push(t);
        }
    }
    let mut variables: Vec<Laurent> = seeds
        .iter()
        .flat_map(|s| s.mutable_vertices().into_iter().map(move |i| s.var(i).clone()))
        .collect();
    variables.sort();
    variables.dedup();
    Ok(Exploration {
        seeds,
        variables,
        finite_type,
    })
}

/// A `Z^d` grading by the degrees of the initial variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    degrees: Vec<Vec<i64>>,
}

impl Grading {
    /// Checks that incoming and outgoing degrees balance at every mutable vertex.
    pub fn new(seed: &Seed, degrees: Vec<Vec<i64>>) -> Result<Grading> {
        assert_eq!(degrees.len(), seed.vertex_count());
        let dim = degrees.first().map(|d| d.len()).unwrap_or(0);
        let b = seed.exchange_matrix();
        for j in seed.mutable_vertices() {
            let mut bal = vec![0i64; dim];
            for (i, d) in degrees.iter().enumerate() {
                for (a, x) in bal.iter_mut().zip(d) {
                    *a += b[i][j] * x;
                }
            }
            if bal.iter().any(|&x| x != 0) {
                return Err(Error::Unbalanced(j));
            }
        }
        Ok(Grading { degrees })
    }

    pub fn degrees(&self) -> &[Vec<i64>] {
        &self.degrees
    }

    /// Degree vector of a homogeneous element, `None` otherwise.
    pub fn degree(&self, x: &Laurent) -> Option<Vec<i64>> {
        x.weighted_degree(&self.degrees)
    }

    /// Degree vectors of all variables; fails on the first inhomogeneous one.
    pub fn check(&self, vars: &[Laurent]) -> Result<Vec<Vec<i64>>> {
        vars.iter()
            .enumerate()
            .map(|(i, x)| {
                self.degree(x)
                    .ok_or_else(|| Error::Verification(format!("variable {} is not homogeneous", i)))
            })
            .collect()
    }
}

/// `(1/k) * sum of the entries`.
pub fn total_degree(degvec: &[i64], k: usize) -> Option<i64> {
    let s: i64 = degvec.iter().sum();
    (k > 0 && s % k as i64 == 0).then(|| s / k as i64)
}

/// Sum of the entries indexed by `S` (1-based).
pub fn partial_degree(degvec: &[i64], s: crate::Subset) -> i64 {
    s.elems().into_iter().map(|i| degvec[i - 1]).sum()
}

/// The monomial `prod x_i^{e_i}` as a Laurent polynomial.
pub fn monomial(exps: Vec<i32>) -> Laurent {
    Laurent::monomial(exps, int(1))
}

/// Renders an exponent vector as `x^a*y^-b`, or `1`.
pub fn render_exponents(e: &[i32], names: &[String]) -> String {
    render_monomial(e, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_n(n: usize) -> Seed {
        let arrows = (0..n - 1).map(|i| (i, i + 1)).collect();
        Seed::initial(&IceQuiver::new(vec![false; n], arrows))
    }

    #[test]
    fn a2_has_five_variables() {
        let e = enumerate_variables(&a_n(2), 100).unwrap();
        assert!(e.finite_type);
        assert_eq!(e.variables.len(), 5);
        assert_eq!(e.seeds.len(), 5);
    }

    #[test]
    fn a3_has_fourteen_clusters() {
        let e = enumerate_variables(&a_n(3), 100).unwrap();
        assert_eq!(e.seeds.len(), 14);
        assert_eq!(e.variables.len(), 9);
    }

    #[test]
    fn bound_reports_partial() {
        let e = enumerate_variables(&a_n(3), 4).unwrap();
        assert!(!e.finite_type);
        assert_eq!(e.seeds.len(), 4);
    }

    #[test]
    fn kronecker_is_infinite() {
        let s = Seed::initial(&IceQuiver::new(vec![false; 2], vec![(0, 1), (0, 1)]));
        let e = enumerate_variables(&s, 12).unwrap();
        assert!(!e.finite_type);
    }

    #[test]
    fn empty_mutable_part() {
        let s = Seed::initial(&IceQuiver::new(vec![true; 2], vec![(0, 1)]));
        let e = enumerate_variables(&s, 10).unwrap();
        assert!(e.finite_type && e.variables.is_empty());
    }

    #[test]
    fn mutation_is_involutive() {
        let q = IceQuiver::new(vec![false, false, true], vec![(0, 1), (1, 2), (2, 0), (2, 0)]);
        let s = Seed::initial(&q);
        for k in 0..2 {
            let t = s.mutate(k).unwrap().mutate(k).unwrap();
            assert_eq!(t.exchange_matrix(), s.exchange_matrix());
            assert_eq!(t.vars(), s.vars());
            assert!(t.word().is_empty());
        }
        assert_eq!(s.mutate(2).unwrap_err(), Error::FrozenVertex(2));
    }

    #[test]
    fn exchange_relation_by_hand() {
        // 0 -> 1 -> 2 frozen: mutating 1 gives (x0 + x2)/x1.
        let q = IceQuiver::new(vec![false, false, true], vec![(0, 1), (1, 2)]);
        let t = Seed::initial(&q).mutate(1).unwrap();
        let x = |i| Laurent::var(i, 3);
        let want = (&x(0) + &x(2)).div_exact(&x(1)).unwrap();
        assert_eq!(t.var(1), &want);
        let b = t.exchange_matrix();
        // Arrows become 1 -> 0, 2 -> 1 and 0 -> 2.
        assert_eq!((b[1][0], b[0][1], b[2][1], b[0][2]), (-1, 1, -1, -1));
    }

    #[test]
    fn isolated_vertex() {
        let q = IceQuiver::new(vec![false], vec![]);
        let s = Seed::initial(&q);
        let t = s.mutate(0).unwrap();
        assert_eq!(
            t.var(0),
            &(&Laurent::one(1) + &Laurent::one(1)).mul_monomial(&[-1], &int(1))
        );
        let y = s.y_hat(0).unwrap();
        assert!(y.equals(&RatFn::from_poly(Laurent::one(1))));
    }

    #[test]
    fn y_hat_mutation_rule() {
        // y_k' = y_k^{-1}, y_j' = y_j (1 + y_k^{-sgn b_kj})^{-b_kj} style check via recomputation.
        let q = IceQuiver::new(vec![false, false, true], vec![(0, 1), (1, 2), (2, 0)]);
        let s = Seed::initial(&q);
        let t = s.mutate(0).unwrap();
        let y0 = s.y_hat(0).unwrap();
        let y0t = t.y_hat(0).unwrap();
        assert!(y0t.equals(&y0.inv().unwrap()));
        let b = s.exchange_matrix();
        let y1 = s.y_hat(1).unwrap();
        let one = RatFn::from_poly(Laurent::one(3));
        let bkj = b[0][1];
        let corr = if bkj > 0 {
            one.add(&y0.inv().unwrap()).pow(-bkj as i32).unwrap()
        } else {
            one.add(&y0).pow(-bkj as i32).unwrap()
        };
        assert!(t.y_hat(1).unwrap().equals(&y1.mul(&corr)));
    }

    #[test]
    fn grading_balance() {
        let q = IceQuiver::new(vec![false, true, true], vec![(1, 0), (0, 2)]);
        let s = Seed::initial(&q);
        assert!(Grading::new(&s, vec![vec![1], vec![2], vec![2]]).is_ok());
        assert_eq!(
            Grading::new(&s, vec![vec![1], vec![2], vec![3]]).unwrap_err(),
            Error::Unbalanced(0)
        );
        let g = Grading::new(&s, vec![vec![1], vec![2], vec![2]]).unwrap();
        let e = enumerate_variables(&s, 10).unwrap();
        assert_eq!(g.check(&e.variables).unwrap(), vec![vec![1], vec![1]]);
    }

    #[test]
    fn degree_helpers() {
        let s = crate::Subset::parse("135").unwrap();
        assert_eq!(total_degree(&[1, 1, 1, 0, 1, 1, 1], 3), Some(2));
        assert_eq!(partial_degree(&[1, 0, 2, 0, 1], s), 4);
        let full = crate::Subset::full(5);
        let v = [1, 0, 2, 0, 1];
        assert_eq!(partial_degree(&v, full), 2 * total_degree(&v, 2).unwrap());
    }
}
