//! Quasi-coincidence of the source- and target-labelled cluster structures.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::cell::{equal_rational, fingerprint, CellModel};
use crate::cluster::{enumerate_variables, Exploration, Grading, Seed};
use crate::error::{Error, Result};
use crate::linalg::solve_integer_linear;
use crate::plabic::{Convention, Plabic};
use crate::subset::Subset;
use crate::{Laurent, RatFn};

/// Largest coefficient tried along each kernel direction when the degree
/// system does not pin down a monomial.
pub const KERNEL_SEARCH: i64 = 4;

/// Exponents over the frozen faces (boundary faces in face order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrozenMonomial {
    pub exponents: Vec<i32>,
}

impl FrozenMonomial {
    pub fn trivial(len: usize) -> FrozenMonomial {
        FrozenMonomial {
            exponents: vec![0; len],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// A single frozen variable to the first power.
    pub fn is_unit(&self) -> bool {
        self.exponents.iter().filter(|&&e| e != 0).count() == 1 && self.exponents.contains(&1)
    }

    pub fn factors(&self, labels: &[Subset]) -> Vec<(Subset, i32)> {
        self.exponents
            .iter()
            .zip(labels)
            .filter(|(e, _)| **e != 0)
            .map(|(e, s)| (*s, *e))
            .collect()
    }

    /// `D167*D345/D367`, or `1`.
    pub fn render(&self, labels: &[Subset]) -> String {
        let f = self.factors(labels);
        let side = |sign: i32| -> Vec<String> {
            f.iter()
                .filter(|(_, e)| e.signum() == sign)
                .map(|(s, e)| {
                    if e.abs() == 1 {
                        format!("D{}", s)
                    } else {
                        format!("D{}^{}", s, e.abs())
                    }
                })
                .collect()
        };
        let (top, bottom) = (side(1), side(-1));
        let mut out = if top.is_empty() { "1".to_string() } else { top.join("*") };
        if !bottom.is_empty() {
            out.push('/');
            if bottom.len() > 1 {
                out.push_str(&format!("({})", bottom.join("*")));
            } else {
                out.push_str(&bottom[0]);
            }
        }
        out
    }
}

/// Frozen Plückers of one labelling and their degree vectors.
#[derive(Clone, Debug)]
pub struct FrozenBasis {
    pub faces: Vec<usize>,
    pub labels: Vec<Subset>,
    n: usize,
}

impl FrozenBasis {
    pub fn new(p: &Plabic, c: Convention) -> FrozenBasis {
        let faces = p.boundary_faces();
        let labels = faces.iter().map(|&f| p.label(f, c)).collect();
        FrozenBasis {
            faces,
            labels,
            n: p.n(),
        }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Integer exponent vectors `v` with `sum v_i deg(label_i) = target`,
    /// and whether the system left free parameters.
    pub fn solve(&self, target: &[i64]) -> (Vec<Vec<i64>>, bool) {
        let a: Vec<Vec<i64>> = (0..self.n)
            .map(|r| self.labels.iter().map(|s| s.contains(r + 1) as i64).collect())
            .collect();
        let Some(sol) = solve_integer_linear(&a, target) else {
            return (Vec::new(), false);
        };
        if sol.kernel.is_empty() {
            return (vec![sol.solution], false);
        }
        let d = sol.kernel.len();
        let width = (2 * KERNEL_SEARCH + 1) as usize;
        let mut out = Vec::new();
        for code in 0..width.pow(d as u32) {
            let mut v = sol.solution.clone();
            let mut c = code;
            for k in &sol.kernel {
                let t = (c % width) as i64 - KERNEL_SEARCH;
                c /= width;
                for (x, y) in v.iter_mut().zip(k) {
                    *x += t * y;
                }
            }
            out.push(v);
        }
        // Small monomials first.
        out.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
        (out, true)
    }
}

/// One frozen variable of one labelling written in the other's frozens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrozenEntry {
    pub face: usize,
    pub label: Subset,
    pub monomial: FrozenMonomial,
    /// The degree system had free parameters.
    pub degenerate: bool,
}

/// Writes each frozen Plücker of `to` as a certified monomial in those of `from`.
pub fn frozen_transition(m: &CellModel, from: Convention, to: Convention) -> Result<Vec<FrozenEntry>> {
    let p = m.plabic();
    let basis = FrozenBasis::new(p, from);
    p.boundary_faces()
        .into_iter()
        .map(|f| {
            let label = p.label(f, to);
            let want = RatFn::from_poly(m.plucker(label).clone());
            let (cands, degenerate) = basis.solve(&label.indicator(p.n()));
            for v in cands {
                let mono = FrozenMonomial {
                    exponents: v.iter().map(|&x| x as i32).collect(),
                };
                let got = m.plucker_monomial(&mono.factors(&basis.labels))?;
                if equal_rational(&want, &got) {
                    return Ok(FrozenEntry {
                        face: f,
                        label,
                        monomial: mono,
                        degenerate,
                    });
                }
            }
            Err(Error::Verification(format!(
                "frozen D{} ({}) is not a monomial in the {} frozens",
                label,
                to.name(),
                from.name()
            )))
        })
        .collect()
}

/// Cluster variables of one labelling, expanded into edge weights.
#[derive(Clone, Debug)]
pub struct ClusterStructure {
    pub convention: Convention,
    pub expanded: Vec<RatFn>,
    pub degrees: Vec<Vec<i64>>,
    /// Plücker factorisation where one was found.
    pub products: Vec<Option<Vec<Subset>>>,
    pub frozen: FrozenBasis,
}

impl ClusterStructure {
    pub fn new(m: &CellModel, seed: &Seed, ex: &Exploration, c: Convention) -> Result<ClusterStructure> {
        let p = m.plabic();
        let degs = (0..p.face_count()).map(|f| p.label(f, c).indicator(p.n())).collect();
        let grading = Grading::new(seed, degs)?;
        let degrees = grading.check(&ex.variables)?;
        let expanded: Vec<RatFn> = ex
            .variables
            .par_iter()
            .map(|x| m.expand(x, c))
            .collect::<Result<Vec<_>>>()?;
        let products = expanded
            .par_iter()
            .zip(&degrees)
            .map(|(f, d)| m.as_plucker_product(f, d))
            .collect();
        Ok(ClusterStructure {
            convention: c,
            expanded,
            degrees,
            products,
            frozen: FrozenBasis::new(p, c),
        })
    }

    /// `D125*D367`, or `?` when the variable is not a Plücker product.
    pub fn describe(&self, i: usize) -> String {
        match &self.products[i] {
            Some(v) => v.iter().map(|s| format!("D{}", s)).collect::<Vec<_>>().join("*"),
            None => "?".into(),
        }
    }

    pub fn degree(&self, i: usize, k: usize) -> i64 {
        self.degrees[i].iter().sum::<i64>() / k as i64
    }
}

/// A target variable and the source variable it equals up to a frozen monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableMatch {
    pub tgt: usize,
    pub src: usize,
    pub monomial: FrozenMonomial,
    pub degenerate: bool,
}

/// The unique source variable `x'` and monomial `q` with `x = x' q`.
pub fn match_variable(
    m: &CellModel,
    x: &RatFn,
    deg: &[i64],
    src: &ClusterStructure,
) -> Result<(usize, FrozenMonomial, bool)> {
    let mut hits = Vec::new();
    for (j, y) in src.expanded.iter().enumerate() {
        let target: Vec<i64> = deg.iter().zip(&src.degrees[j]).map(|(a, b)| a - b).collect();
        let (cands, degenerate) = src.frozen.solve(&target);
        for v in cands {
            let mono = FrozenMonomial {
                exponents: v.iter().map(|&e| e as i32).collect(),
            };
            let q = m.plucker_monomial(&mono.factors(&src.frozen.labels))?;
            if equal_rational(x, &y.mul(&q)) {
                hits.push((j, mono, degenerate));
                break;
            }
        }
    }
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        0 => Err(Error::Verification("no source variable matches".into())),
        _ => Err(Error::Verification(format!(
            "several source variables match ({:?}), contradicting independence of cluster monomials",
            hits.iter().map(|h| h.0).collect::<Vec<_>>()
        ))),
    }
}

/// Seed and vertex bijection at which the hat-y variables agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YHatWitness {
    pub seed: usize,
    pub word: Vec<usize>,
    /// Pairs (target initial vertex, vertex of the source seed).
    pub bijection: Vec<(usize, usize)>,
}

/// Everything established about one graph.
#[derive(Clone, Debug)]
pub struct QuasiReport {
    pub k: usize,
    pub n: usize,
    pub finite_type: bool,
    pub clusters: usize,
    pub frozen_table: Vec<FrozenEntry>,
    pub reverse_table: Vec<FrozenEntry>,
    pub transitions_inverse: bool,
    pub variable_map: Vec<VariableMatch>,
    pub bijective: bool,
    pub compatible: bool,
    pub stable_iso: Option<Vec<(usize, usize)>>,
    pub yhat: Option<YHatWitness>,
    pub src: ClusterStructure,
    pub tgt: ClusterStructure,
    /// How the variable map was obtained.
    pub method: String,
}

impl QuasiReport {
    pub fn passed(&self) -> bool {
        self.finite_type
            && self.transitions_inverse
            && self.bijective
            && self.compatible
            && self.stable_iso.is_some()
            && self.yhat.is_some()
    }

    /// Sorted, line-oriented rendering.
    pub fn render(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.push(format!("type {} {}", self.k, self.n));
        out.push(format!("finite_type {}", self.finite_type));
        out.push(format!("clusters {}", self.clusters));
        out.push(format!("method {}", self.method));
        for e in &self.frozen_table {
            out.push(format!(
                "frozen tgt D{} = src {}",
                e.label,
                e.monomial.render(&self.src.frozen.labels)
            ));
        }
        for e in &self.reverse_table {
            out.push(format!(
                "frozen src D{} = tgt {}",
                e.label,
                e.monomial.render(&self.tgt.frozen.labels)
            ));
        }
        out.push(format!("transitions_inverse {}", self.transitions_inverse));
        let mut lines: Vec<String> = self
            .variable_map
            .iter()
            .map(|v| {
                format!(
                    "tgt {} = src {} * {}",
                    self.tgt.describe(v.tgt),
                    self.src.describe(v.src),
                    v.monomial.render(&self.src.frozen.labels)
                )
            })
            .collect();
        lines.sort();
        out.extend(lines);
        out.push(format!(
            "bijective {} entries {}",
            self.bijective,
            self.variable_map.len()
        ));
        out.push(format!("compatible {}", self.compatible));
        match &self.stable_iso {
            Some(b) => out.push(format!("stable_iso {}", pairs(b))),
            None => out.push("stable_iso none".into()),
        }
        match &self.yhat {
            Some(w) => out.push(format!(
                "yhat seed {} word {:?} map {}",
                w.seed,
                w.word,
                pairs(&w.bijection)
            )),
            None => out.push("yhat none".into()),
        }
        out.push(format!("verdict {}", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

fn pairs(v: &[(usize, usize)]) -> String {
    v.iter()
        .map(|(a, b)| format!("{}:{}", a, b))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Shared data for verifying one graph.
pub struct Setup {
    pub model: CellModel,
    pub seed: Seed,
    pub exploration: Exploration,
    pub src: ClusterStructure,
    pub tgt: ClusterStructure,
}

impl Setup {
    pub fn new(p: &Plabic, seed_bound: usize) -> Result<Setup> {
        let model = CellModel::build(p);
        let seed = Seed::initial(&p.quiver());
        let exploration = enumerate_variables(&seed, seed_bound)?;
        let src = ClusterStructure::new(&model, &seed, &exploration, Convention::Source)?;
        let tgt = ClusterStructure::new(&model, &seed, &exploration, Convention::Target)?;
        Ok(Setup {
            model,
            seed,
            exploration,
            src,
            tgt,
        })
    }
}

/// Runs every check on a connected graph; disconnected graphs go through
/// [`crate::segre::verify_disconnected`].
pub fn verify_quasi_coincidence(p: &Plabic, seed_bound: usize) -> Result<QuasiReport> {
    if !p.is_connected() {
        return crate::segre::verify_disconnected(p, seed_bound);
    }
    let s = Setup::new(p, seed_bound)?;
    let matches: Vec<VariableMatch> = (0..s.tgt.expanded.len())
        .into_par_iter()
        .map(|i| {
            let (src, monomial, degenerate) =
                match_variable(&s.model, &s.tgt.expanded[i], &s.tgt.degrees[i], &s.src)
                    .map_err(|e| Error::Verification(format!("target variable {}: {}", s.tgt.describe(i), e)))?;
            Ok(VariableMatch {
                tgt: i,
                src,
                monomial,
                degenerate,
            })
        })
        .collect::<Result<_>>()?;
    assemble(&s, matches, "direct".into())
}

/// Builds the report from a variable map certified by the caller.
pub fn assemble(s: &Setup, variable_map: Vec<VariableMatch>, method: String) -> Result<QuasiReport> {
    let p = s.model.plabic();
    let frozen_table = frozen_transition(&s.model, Convention::Source, Convention::Target)?;
    let reverse_table = frozen_transition(&s.model, Convention::Target, Convention::Source)?;
    let transitions_inverse = mutually_inverse(&frozen_table, &reverse_table);
    let ex = &s.exploration;
    let image: Vec<usize> = {
        let mut v = vec![usize::MAX; ex.variables.len()];
        for m in &variable_map {
            v[m.tgt] = m.src;
        }
        v
    };
    let bijective = variable_map.len() == ex.variables.len()
        && image.iter().all(|&x| x != usize::MAX)
        && image.iter().collect::<BTreeSet<_>>().len() == image.len();
    let clusters: BTreeSet<Vec<usize>> = ex.clusters().into_iter().collect();
    let compatible = bijective
        && clusters.iter().all(|c| {
            let mut im: Vec<usize> = c.iter().map(|&i| image[i]).collect();
            im.sort_unstable();
            clusters.contains(&im)
        });
    let (stable_iso, yhat) = if bijective {
        (stable_isomorphism(s, &image), yhat_witness(s, &image)?)
    } else {
        (None, None)
    };
    Ok(QuasiReport {
        k: p.k(),
        n: p.n(),
        finite_type: ex.finite_type,
        clusters: ex.seeds.len(),
        frozen_table,
        reverse_table,
        transitions_inverse,
        variable_map,
        bijective,
        compatible,
        stable_iso,
        yhat,
        src: s.src.clone(),
        tgt: s.tgt.clone(),
        method,
    })
}

/// Whether the two monomial transformations compose to the identity.
pub fn mutually_inverse(a: &[FrozenEntry], b: &[FrozenEntry]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    (0..n).all(|i| {
        (0..n).all(|j| {
            let s: i64 = (0..n)
                .map(|l| a[i].monomial.exponents[l] as i64 * b[l].monomial.exponents[j] as i64)
                .sum();
            s == (i == j) as i64
        })
    })
}

/// Source seed holding the images of the initial target cluster.
fn image_seed(s: &Setup, image: &[usize]) -> Option<(usize, Vec<(usize, usize)>)> {
    let ex = &s.exploration;
    let init = ex.cluster_of(&s.seed);
    let mutable = s.seed.mutable_vertices();
    for (si, seed) in ex.seeds.iter().enumerate() {
        let mut pairs = Vec::new();
        for &v in &mutable {
            let i = ex.variables.binary_search(s.seed.var(v)).ok()?;
            let w = seed.position(&ex.variables[image[i]]);
            match w {
                Some(w) => pairs.push((v, w)),
                None => break,
            }
        }
        if pairs.len() == init.len() {
            return Some((si, pairs));
        }
    }
    None
}

/// Mutable exchange matrices of the initial target seed and the image seed
/// agree under the variable bijection.
fn stable_isomorphism(s: &Setup, image: &[usize]) -> Option<Vec<(usize, usize)>> {
    let (si, pairs) = image_seed(s, image)?;
    let a = s.seed.exchange_matrix();
    let b = s.exploration.seeds[si].exchange_matrix();
    let ok = pairs
        .iter()
        .all(|&(i, i2)| pairs.iter().all(|&(j, j2)| a[i][j] == b[i2][j2]));
    ok.then_some(pairs)
}

/// A source seed whose hat-y variables equal those of the initial target seed.
fn yhat_witness(s: &Setup, image: &[usize]) -> Result<Option<YHatWitness>> {
    let m = &s.model;
    let mutable = s.seed.mutable_vertices();
    let targets: Vec<RatFn> = mutable
        .iter()
        .map(|&j| m.expand_rational(&s.seed.y_hat(j)?, Convention::Target))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..s.exploration.seeds.len()).collect();
    if let Some((si, _)) = image_seed(s, image) {
        order.retain(|&x| x != si);
        order.insert(0, si);
    }
    for si in order {
        let seed = &s.exploration.seeds[si];
        let mut prints: HashMap<Option<u64>, Vec<(usize, RatFn)>> = HashMap::new();
        for j in seed.mutable_vertices() {
            let y = m.expand_rational(&seed.y_hat(j)?, Convention::Source)?;
            prints
                .entry(fingerprint(&y).map(|f| f.value()))
                .or_default()
                .push((j, y));
        }
        let mut used = BTreeSet::new();
        let mut bijection = Vec::new();
        for (t, &j) in targets.iter().zip(&mutable) {
            let cands = prints.get(&fingerprint(t).map(|f| f.value()));
            let hit = cands
                .into_iter()
                .flatten()
                .find(|(v, y)| !used.contains(v) && equal_rational(t, y));
            match hit {
                Some((v, _)) => {
                    used.insert(*v);
                    bijection.push((j, *v));
                }
                None => break,
            }
        }
        if bijection.len() == mutable.len() {
            return Ok(Some(YHatWitness {
                seed: si,
                word: seed.word().to_vec(),
                bijection,
            }));
        }
    }
    Ok(None)
}

/// The initial-variable polynomial of variable `i`, for dumps.
pub fn variable(s: &Setup, i: usize) -> &Laurent {
    &s.exploration.variables[i]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn s(x: &str) -> Subset {
        Subset::parse(x).unwrap()
    }

    #[test]
    fn monomial_rendering() {
        let labels = [s("167"), s("345"), s("367")];
        let m = |e: Vec<i32>| FrozenMonomial { exponents: e };
        assert_eq!(m(vec![1, 1, -1]).render(&labels), "D167*D345/D367");
        assert_eq!(m(vec![-1, -1, 0]).render(&labels), "1/(D167*D345)");
        assert_eq!(m(vec![0, 0, 0]).render(&labels), "1");
        assert!(m(vec![0, 0, 0]).is_trivial());
    }

    #[test]
    fn gr37_report() {
        let p = corpus::load("gr37").unwrap();
        let r = verify_quasi_coincidence(&p, 200).unwrap();
        assert!(r.passed());
        assert_eq!(r.clusters, 14);
        assert_eq!(r.variable_map.len(), 9);
        let lines = r.render();
        assert!(lines.contains(&"tgt D157 = src D357 * D167/D367".to_string()));
        assert!(lines.contains(&"frozen tgt D145 = src D167*D345/D367".to_string()));
        assert_eq!(lines.last().unwrap(), "verdict pass");
    }

    #[test]
    fn transitions_invert_each_other() {
        let p = corpus::load("gr37").unwrap();
        let m = CellModel::build(&p);
        let a = frozen_transition(&m, Convention::Source, Convention::Target).unwrap();
        let b = frozen_transition(&m, Convention::Target, Convention::Source).unwrap();
        assert!(mutually_inverse(&a, &b));
        assert!(!mutually_inverse(&a, &a) || a.iter().all(|e| e.monomial.is_unit()));
    }
}
