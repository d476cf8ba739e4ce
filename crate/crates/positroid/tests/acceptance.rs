//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are printed by `cargo test`; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use positroid::cell::{equal_rational, minors, CellModel};
use positroid::cluster::{enumerate_variables, Grading, Seed};
use positroid::linalg::Matrix;
use positroid::matchings::{certified_ms, enumerate_matchings, positroid, stable_class, Direction, Wedges};
use positroid::plabic::validate;
use positroid::quasi::{frozen_transition, verify_quasi_coincidence, Setup};
use positroid::segre::{segre_decompose, SplitData};
use positroid::twist::twist_check_variables;
use positroid::{corpus, generate, Convention, Plabic, RatFn, Rational, Subset};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const SEED_BOUND: usize = 500;

fn s(x: &str) -> Subset {
    Subset::parse(x).unwrap()
}

fn set(xs: &[&str]) -> BTreeSet<Subset> {
    xs.iter().map(|x| s(x)).collect()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn gr37() -> Plabic {
    corpus::load("gr37").unwrap()
}

fn criterion_1() -> Check {
    let got = positroid(gr37().graph());
    let missing = set(&["234", "456", "457", "467", "567"]);
    let want: BTreeSet<Subset> = Subset::all_k_subsets(7, 3)
        .into_iter()
        .filter(|x| !missing.contains(x))
        .collect();
    ensure(got == want, format!("got {} subsets", got.len()))?;
    Ok(format!("{} subsets", got.len()))
}

fn criterion_2() -> Check {
    let p = gr37();
    let src: BTreeSet<Subset> = p.necklace(Convention::Source).into_iter().collect();
    let tgt: BTreeSet<Subset> = p.necklace(Convention::Target).into_iter().collect();
    ensure(
        src == set(&["134", "123", "127", "167", "367", "356", "345"]),
        "source necklace differs",
    )?;
    ensure(
        tgt == set(&["123", "235", "345", "145", "156", "167", "127"]),
        "target necklace differs",
    )?;
    Ok("both necklaces".into())
}

/// Each expected product equals exactly one expanded variable and vice versa.
fn table_matches(m: &CellModel, expanded: &[RatFn], table: &[&[&str]]) -> Result<(), String> {
    let want: Vec<RatFn> = table
        .iter()
        .map(|fs| {
            m.plucker_monomial(&fs.iter().map(|x| (s(x), 1)).collect::<Vec<_>>())
                .map_err(err)
        })
        .collect::<Result<_, _>>()?;
    ensure(
        want.len() == expanded.len(),
        format!("{} variables, table has {}", expanded.len(), want.len()),
    )?;
    let mut used = vec![false; expanded.len()];
    for (w, fs) in want.iter().zip(table) {
        let hits: Vec<usize> = (0..expanded.len())
            .filter(|&i| m.equal_on_cell(w, &expanded[i]))
            .collect();
        ensure(
            hits.len() == 1,
            format!("{} matches {} variables", fs.join("*"), hits.len()),
        )?;
        ensure(!used[hits[0]], format!("{} matched twice", fs.join("*")))?;
        used[hits[0]] = true;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let p = gr37();
    let st = Setup::new(&p, SEED_BOUND).map_err(err)?;
    let ex = &st.exploration;
    ensure(ex.finite_type, "exploration hit the bound")?;
    ensure(ex.seeds.len() == 14, format!("{} clusters", ex.seeds.len()))?;
    let src: &[&[&str]] = &[
        &["357"],
        &["347"],
        &["137"],
        &["346"],
        &["136"],
        &["126"],
        &["135"],
        &["125", "367"],
        &["124", "367"],
    ];
    let tgt: &[&[&str]] = &[
        &["137"],
        &["136"],
        &["135"],
        &["126"],
        &["125"],
        &["245"],
        &["157"],
        &["147", "235"],
        &["145", "236"],
    ];
    table_matches(&st.model, &st.src.expanded, src).map_err(|e| format!("source: {}", e))?;
    table_matches(&st.model, &st.tgt.expanded, tgt).map_err(|e| format!("target: {}", e))?;
    Ok(format!(
        "{} clusters, {} variables per structure",
        ex.seeds.len(),
        ex.variables.len()
    ))
}

fn criterion_4() -> Check {
    let m = CellModel::build(&gr37());
    let lhs = RatFn::from_poly(m.plucker(s("145")).clone());
    let rhs = m
        .plucker_monomial(&[(s("167"), 1), (s("345"), 1), (s("367"), -1)])
        .map_err(err)?;
    ensure(equal_rational(&lhs, &rhs), "D145 differs from D167*D345/D367")?;
    Ok("D145 = D167*D345/D367".into())
}

fn criterion_5() -> Check {
    let r = verify_quasi_coincidence(&gr37(), SEED_BOUND).map_err(err)?;
    let lines = r.render();
    ensure(
        r.variable_map.len() == 9 && r.bijective,
        format!("{} entries", r.variable_map.len()),
    )?;
    ensure(
        lines.iter().any(|l| l == "tgt D157 = src D357 * D167/D367"),
        "D157 line missing",
    )?;
    ensure(r.yhat.is_some(), "no yhat witness")?;
    ensure(r.stable_iso.is_some(), "no stable isomorphism")?;
    ensure(r.passed(), "report fails")?;
    Ok(format!("9 entries, yhat at seed {}", r.yhat.as_ref().unwrap().seed))
}

fn criterion_6() -> Check {
    let p = corpus::load("split59").unwrap();
    let sp = SplitData::new(&p).map_err(err)?;
    ensure(
        segre_decompose(s("14679"), &sp) == Some((-1, s("19"), s("467"))),
        "decomposition of 14679",
    )?;

    // Cell model of the whole graph is the product of the pieces' models.
    let whole = CellModel::build(&p);
    let pieces = [CellModel::build(&sp.plabics[0]), CellModel::build(&sp.plabics[1])];
    let global_edges: Vec<Vec<usize>> = (0..2)
        .map(|c| {
            let mut v = vec![0; sp.plabics[c].graph().edge_count()];
            for (e, x) in sp.pieces[c].edge_map.iter().enumerate() {
                if let Some(x) = x {
                    v[*x] = e;
                }
            }
            v
        })
        .collect();
    let nv = whole.weight_count();
    for (&i, poly) in whole.pluckers() {
        let expect = match segre_decompose(i, &sp) {
            None => positroid::Laurent::zero(nv),
            Some((_, a, b)) => {
                let pa = pieces[0].plucker(sp.localize(0, a)).rename(&global_edges[0], nv);
                let pb = pieces[1].plucker(sp.localize(1, b)).rename(&global_edges[1], nv);
                &pa * &pb
            }
        };
        ensure(*poly == expect, format!("cell model of D{} is not the product", i))?;
    }

    // On matrices: the block matrix of two pieces has the signed minors.
    let mats: Vec<Matrix<Rational>> = (0..2)
        .map(|c| pieces[c].sample_point(11 + c as u64).matrix())
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut block = Matrix::zeros(p.k(), p.n());
    let mut row = 0;
    for c in 0..2 {
        for r in 0..mats[c].rows() {
            for (j, &q) in sp.pieces[c].points.iter().enumerate() {
                block.set(row, q - 1, mats[c].get(r, j).clone());
            }
            row += 1;
        }
    }
    let piece_minors = [minors(&mats[0]), minors(&mats[1])];
    for (i, v) in minors(&block) {
        let expect = match segre_decompose(i, &sp) {
            None => Rational::from_integer(0.into()),
            Some((sign, a, b)) => {
                let x = piece_minors[0][&sp.localize(0, a)].clone() * piece_minors[1][&sp.localize(1, b)].clone();
                if sign < 0 {
                    -x
                } else {
                    x
                }
            }
        };
        ensure(v == expect, format!("block minor {} has the wrong sign", i))?;
    }

    let lhs = RatFn::from_poly(whole.plucker(s("14679")).clone());
    let rhs = whole
        .plucker_monomial(&[(s("23467"), 1), (s("16789"), 1), (s("23678"), -1)])
        .map_err(err)?;
    ensure(equal_rational(&lhs, &rhs), "D14679 identity fails")?;
    let r = verify_quasi_coincidence(&p, SEED_BOUND).map_err(err)?;
    ensure(r.method == "segre" && r.passed(), "composed verification fails")?;
    Ok(format!(
        "sign -1, identity certified, {} entries composed",
        r.variable_map.len()
    ))
}

fn criterion_7() -> Check {
    let p = gr37();
    let w = Wedges::new(p.layout()).map_err(err)?;
    let internal = p.internal_faces();
    for f in 0..p.face_count() {
        let e: Vec<i64> = internal.iter().map(|&j| (j == f) as i64).collect();
        for dir in [Direction::Downstream, Direction::Upstream] {
            let m = certified_ms(&p, &w, f, dir).map_err(err)?;
            let c = stable_class(&p, &m).map_err(err)?;
            ensure(
                c.minus.coeffs == e,
                format!("face {} {:?}: class {:?}", f, dir, c.minus.coeffs),
            )?;
        }
    }
    let all = enumerate_matchings(p.graph());
    for m in &all {
        stable_class(&p, m).map_err(err)?;
    }
    Ok(format!("{} faces, {} matchings", p.face_count(), all.len()))
}

fn battery(p: &Plabic) -> Result<(), String> {
    let g = p.graph();
    ensure(validate(g).map_err(err)?.is_empty(), "validation")?;
    let w = Wedges::new(p.layout()).map_err(err)?;
    for f in 0..p.face_count() {
        for dir in [Direction::Downstream, Direction::Upstream] {
            certified_ms(p, &w, f, dir).map_err(err)?;
        }
    }
    ensure(
        CellModel::build(p).check_plucker_relations().passed(),
        "Plücker relations",
    )?;
    let seed = Seed::initial(&p.quiver());
    let ex = enumerate_variables(&seed, 60).map_err(err)?;
    for c in [Convention::Source, Convention::Target] {
        let degs = (0..p.face_count()).map(|f| p.label(f, c).indicator(p.n())).collect();
        Grading::new(&seed, degs)
            .map_err(err)?
            .check(&ex.variables)
            .map_err(err)?;
    }
    let o = p.opposite().map_err(err)?;
    let n = p.n();
    ensure(o.graph_type() == (n - p.k(), n), "opposite type")?;
    let comp: BTreeSet<Subset> = positroid(g).into_iter().map(|x| x.complement(n)).collect();
    ensure(positroid(o.graph()) == comp, "opposite positroid")?;
    let wo = Wedges::new(o.layout()).map_err(err)?;
    for f in 0..p.face_count() {
        ensure(
            o.label(f, Convention::Source) == p.label(f, Convention::Target).complement(n),
            "opposite labels",
        )?;
        ensure(
            o.label(f, Convention::Target) == p.label(f, Convention::Source).complement(n),
            "opposite labels",
        )?;
        let a = certified_ms(&o, &wo, f, Direction::Downstream).map_err(err)?;
        ensure(
            a == certified_ms(p, &w, f, Direction::Upstream).map_err(err)?,
            "opposite wedge matchings",
        )?;
        let b = certified_ms(&o, &wo, f, Direction::Upstream).map_err(err)?;
        ensure(
            b == certified_ms(p, &w, f, Direction::Downstream).map_err(err)?,
            "opposite wedge matchings",
        )?;
    }
    let mut rev: Vec<(usize, usize)> = p.quiver().arrows().iter().map(|&(a, b)| (b, a)).collect();
    let mut oq = o.quiver().arrows().to_vec();
    rev.sort_unstable();
    oq.sort_unstable();
    ensure(rev == oq, "opposite quiver")
}

fn criterion_8() -> Check {
    let graphs = generate::random_graphs(60, 2024, 12);
    let failures: Vec<String> = graphs
        .iter()
        .enumerate()
        .filter_map(|(i, p)| battery(p).err().map(|e| format!("graph {}: {}", i, e)))
        .collect();
    ensure(failures.is_empty(), failures.join("; "))?;
    let types: BTreeSet<(usize, usize)> = graphs.iter().map(|p| p.graph_type()).collect();
    Ok(format!("{} graphs, {} types, 0 failures", graphs.len(), types.len()))
}

fn criterion_9() -> Check {
    let mut out = Vec::new();
    for name in corpus::names() {
        let p = corpus::load(name).unwrap();
        let st = Setup::new(&p, SEED_BOUND).map_err(err)?;
        let r = twist_check_variables(&st, 100, 1).map_err(err)?;
        ensure(
            r.necklace_inversion == 100,
            format!("{}: inversion at {}/100", name, r.necklace_inversion),
        )?;
        ensure(r.in_cell == 100, format!("{}: in cell at {}/100", name, r.in_cell))?;
        ensure(
            r.relations == 100,
            format!("{}: relations at {}/100", name, r.relations),
        )?;
        ensure(r.unmatched.is_empty(), format!("{}: unmatched {:?}", name, r.unmatched))?;
        if name == "gr37" {
            ensure(
                r.lines.iter().any(|l| l == "twist tgt D157 = src D346 * 1/(D167*D345)"),
                "no consistent match for the twist of D157",
            )?;
        }
        out.push(name);
    }
    Ok(format!("100 samples on {}", out.join(", ")))
}

fn criterion_10() -> Check {
    for name in ["uniform24", "uniform25", "uniform35"] {
        let p = corpus::load(name).unwrap();
        let st = Setup::new(&p, SEED_BOUND).map_err(err)?;
        let m = &st.model;
        for x in &st.src.expanded {
            ensure(
                st.tgt.expanded.iter().any(|y| m.equal_on_cell(x, y)),
                format!("{}: variable sets differ", name),
            )?;
        }
        ensure(
            st.src.expanded.len() == st.tgt.expanded.len(),
            format!("{}: variable counts differ", name),
        )?;
        let r = verify_quasi_coincidence(&p, SEED_BOUND).map_err(err)?;
        ensure(r.passed(), format!("{}: report fails", name))?;
        ensure(
            r.variable_map.iter().all(|v| v.monomial.is_trivial()),
            format!("{}: nontrivial monomial", name),
        )?;
        let table = frozen_transition(m, Convention::Source, Convention::Target).map_err(err)?;
        let targets: BTreeSet<usize> = table
            .iter()
            .filter(|e| e.monomial.is_unit())
            .map(|e| e.monomial.exponents.iter().position(|&x| x == 1).unwrap())
            .collect();
        ensure(
            targets.len() == table.len(),
            format!("{}: frozen map is not a permutation", name),
        )?;
    }
    Ok("(2,4) (2,5) (3,5)".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("positroid of the (3,7) example", criterion_1),
        ("source and target necklaces", criterion_2),
        ("cluster variable tables", criterion_3),
        ("frozen identity for D145", criterion_4),
        ("quasi-coincidence on the (3,7) example", criterion_5),
        ("disconnected (5,9) example", criterion_6),
        ("stable classes of matchings", criterion_7),
        ("random graph battery", criterion_8),
        ("twist suite", criterion_9),
        ("uniform sanity", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {:2} PASS {} [{}] ({:.1}s)", i + 1, name, detail, secs),
            Err(e) => {
                failed += 1;
                println!("criterion {:2} FAIL {} [{}] ({:.1}s)", i + 1, name, e, secs);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
