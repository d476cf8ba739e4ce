//! The left twist on matrices, and pointwise checks of its identities.

use num::Zero;
use rayon::prelude::*;

use crate::cell::{minors, CellModel, CellPoint};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::plabic::Convention;
use crate::quasi::{FrozenMonomial, Setup};
use crate::subset::Subset;
use crate::Rational;

/// Columns `i, i-1, i-2, ...` (cyclically, 0-based) kept greedily while
/// independent, until `k` are kept.
pub fn backward_greedy_basis(m: &Matrix<Rational>, i: usize) -> Result<Vec<usize>> {
    let (k, n) = (m.rows(), m.cols());
    let mut kept = Vec::new();
    for step in 0..n {
        let j = (i + n - step) % n;
        let mut trial = kept.clone();
        trial.push(j);
        if m.select_columns(&trial).rank() == trial.len() {
            kept = trial;
            if kept.len() == k {
                return Ok(kept);
            }
        }
    }
    Err(Error::RankDeficient)
}

/// Column `i` of the result pairs to `delta_ij` with the columns `j` of the
/// backward greedy basis at `i`.
pub fn left_twist_matrix(m: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let (k, n) = (m.rows(), m.cols());
    let cols: Vec<Vec<Rational>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let basis = backward_greedy_basis(m, i)?;
            let nt = m.select_columns(&basis).transpose();
            let rhs: Vec<Rational> = basis
                .iter()
                .map(|&j| {
                    if j == i {
                        Rational::from_integer(1.into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            nt.solve(&rhs).ok_or(Error::RankDeficient)
        })
        .collect::<Result<_>>()?;
    let mut out = Matrix::zeros(k, n);
    for (i, c) in cols.iter().enumerate() {
        out.set_column(i, c);
    }
    Ok(out)
}

/// A target variable and the source data its twist equals at every sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistMatch {
    /// Index into the exploration's variables, or `None` for a frozen target.
    pub tgt: Option<usize>,
    pub tgt_face: Option<usize>,
    pub src: Option<usize>,
    pub monomial: FrozenMonomial,
}

/// Counts of samples passing each pointwise check, and the variable matches.
#[derive(Clone, Debug)]
pub struct TwistReport {
    pub samples: usize,
    pub necklace_inversion: usize,
    pub in_cell: usize,
    pub relations: usize,
    pub matches: Vec<TwistMatch>,
    pub unmatched: Vec<String>,
    pub lines: Vec<String>,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.necklace_inversion == self.samples
            && self.in_cell == self.samples
            && self.relations == self.samples
            && self.unmatched.is_empty()
    }
}

struct Target {
    tgt: Option<usize>,
    face: Option<usize>,
    x: crate::Laurent,
    deg: Vec<i64>,
    name: String,
}

/// One sample: the cell point, its matrix and the twisted matrix's minors.
pub struct TwistSample {
    pub point: CellPoint,
    pub twisted: CellPoint,
}

pub fn twist_sample(m: &CellModel, rng_seed: u64) -> Result<TwistSample> {
    let point = m.sample_point(rng_seed);
    let mat = point.matrix()?;
    let tw = left_twist_matrix(&mat)?;
    let twisted = CellPoint {
        n: point.n,
        k: point.k,
        pluckers: minors(&tw),
    };
    Ok(TwistSample { point, twisted })
}

/// Evaluates the twist identities at `samples` points drawn from
/// `rng_seed, rng_seed + 1, ...`.
pub fn twist_check_variables(s: &Setup, samples: usize, rng_seed: u64) -> Result<TwistReport> {
    let m = &s.model;
    let p = m.plabic();
    let pts: Vec<TwistSample> = (0..samples)
        .into_par_iter()
        .map(|t| twist_sample(m, rng_seed + t as u64))
        .collect::<Result<_>>()?;
    let src_neck = p.necklace(Convention::Source);
    let tgt_neck = p.necklace(Convention::Target);
    let positroid = m.positroid();
    let all = Subset::all_k_subsets(p.n(), p.k());
    let one = Rational::from_integer(1.into());
    let mut necklace_inversion = 0;
    let mut in_cell = 0;
    let mut relations = 0;
    for t in &pts {
        if src_neck
            .iter()
            .all(|&i| t.twisted.plucker(i).clone() * t.point.plucker(i).clone() == one)
        {
            necklace_inversion += 1;
        }
        let vanish = all
            .iter()
            .filter(|i| positroid.binary_search(i).is_err())
            .all(|&i| t.twisted.plucker(i).is_zero());
        if vanish && t.twisted.nonvanishing(&src_neck) && t.twisted.nonvanishing(&tgt_neck) {
            in_cell += 1;
        }
        if t.twisted.satisfies_relations() {
            relations += 1;
        }
    }

    // Face values: source labels at the point, target labels at its twist.
    let face_values = |pt: &CellPoint, c: Convention| -> Vec<Rational> {
        (0..p.face_count()).map(|f| pt.plucker(p.label(f, c)).clone()).collect()
    };
    let src_vals: Vec<Vec<Rational>> = pts.iter().map(|t| face_values(&t.point, Convention::Source)).collect();
    let tgt_vals: Vec<Vec<Rational>> = pts
        .iter()
        .map(|t| face_values(&t.twisted, Convention::Target))
        .collect();
    let eval = |x: &crate::Laurent, v: &[Rational]| x.eval_with(v, |c| c.clone());
    let frozen = &s.src.frozen;
    let mono_at = |mono: &[i64], t: usize| -> Rational {
        let mut acc = one.clone();
        for (e, &f) in mono.iter().zip(&frozen.faces) {
            if *e != 0 {
                let b = num::pow::pow(src_vals[t][f].clone(), e.unsigned_abs() as usize);
                acc = if *e > 0 { acc * b } else { acc / b };
            }
        }
        acc
    };
    let ex = &s.exploration;
    let mut matches = Vec::new();
    let mut unmatched = Vec::new();
    let mut lines = Vec::new();
    // Frozen faces first, then mutable variables.
    let mut targets = Vec::new();
    let nf = p.face_count();
    for &f in &s.tgt.frozen.faces {
        let label = p.label(f, Convention::Target);
        targets.push(Target {
            tgt: None,
            face: Some(f),
            x: crate::Laurent::var(f, nf),
            deg: label.indicator(p.n()),
            name: format!("D{}", label),
        });
    }
    for i in 0..ex.variables.len() {
        targets.push(Target {
            tgt: Some(i),
            face: None,
            x: ex.variables[i].clone(),
            deg: s.tgt.degrees[i].clone(),
            name: s.tgt.describe(i),
        });
    }
    for Target {
        tgt,
        face: tgt_face,
        x,
        deg,
        name,
    } in targets
    {
        let lhs: Vec<Option<Rational>> = tgt_vals.iter().map(|v| eval(&x, v)).collect();
        let mut cands: Vec<(Option<usize>, Vec<i64>)> = Vec::new();
        // The twist reverses torus weights.
        let neg: Vec<i64> = deg.iter().map(|d| -d).collect();
        cands.push((None, neg.clone()));
        for j in 0..ex.variables.len() {
            cands.push((Some(j), neg.iter().zip(&s.src.degrees[j]).map(|(a, b)| a - b).collect()));
        }
        let mut hits = Vec::new();
        for (src, target) in cands {
            let (sols, _) = frozen.solve(&target);
            for v in sols {
                let ok = (0..pts.len()).all(|t| {
                    let y = match src {
                        Some(j) => eval(&ex.variables[j], &src_vals[t]),
                        None => Some(one.clone()),
                    };
                    match (&lhs[t], y) {
                        (Some(a), Some(b)) => *a == b * mono_at(&v, t),
                        _ => false,
                    }
                });
                if ok {
                    hits.push((
                        src,
                        FrozenMonomial {
                            exponents: v.iter().map(|&e| e as i32).collect(),
                        },
                    ));
                    break;
                }
            }
        }
        if hits.len() == 1 {
            let (src, monomial) = hits.pop().unwrap();
            let src_name = src.map_or("1".to_string(), |j| s.src.describe(j));
            lines.push(format!(
                "twist tgt {} = src {} * {}",
                name,
                src_name,
                monomial.render(&frozen.labels)
            ));
            matches.push(TwistMatch {
                tgt,
                tgt_face,
                src,
                monomial,
            });
        } else {
            unmatched.push(format!("{} ({} candidates)", name, hits.len()));
        }
    }
    Ok(TwistReport {
        samples,
        necklace_inversion,
        in_cell,
        relations,
        matches,
        unmatched,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn rank_one_inverts_entries() {
        let m = Matrix::from_rows(vec![vec![rational(2, 1), rational(-1, 3), rational(5, 7)]]);
        let t = left_twist_matrix(&m).unwrap();
        for c in 0..3 {
            assert_eq!(t.get(0, c).clone(), rational(1, 1) / m.get(0, c).clone());
        }
    }

    #[test]
    fn greedy_basis_skips_dependent_columns() {
        let r = |a: i64| rational(a, 1);
        let m = Matrix::from_rows(vec![vec![r(1), r(2), r(0), r(0)], vec![r(0), r(0), r(1), r(1)]]);
        assert_eq!(backward_greedy_basis(&m, 1).unwrap(), vec![1, 3]);
        assert_eq!(backward_greedy_basis(&m, 3).unwrap(), vec![3, 1]);
    }

    #[test]
    fn loop_column_gives_zero() {
        let r = |a: i64| rational(a, 1);
        let m = Matrix::from_rows(vec![vec![r(1), r(0), r(1)], vec![r(0), r(0), r(1)]]);
        let t = left_twist_matrix(&m).unwrap();
        assert!(t.column(1).iter().all(|x| x.is_zero()));
        // Pairing condition on the basis at 0, which is {0, 2}.
        let dot = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x * y).sum::<Rational>();
        assert_eq!(dot(&t.column(0), &m.column(0)), r(1));
        assert_eq!(dot(&t.column(0), &m.column(2)), r(0));
    }
}
