//! `positroid-lab`: analyses and verifications for plabic graphs.
//!
//! Every command takes a graph file or the name of a bundled graph and
//! prints a deterministic report. The exit code is 0 when all requested
//! checks pass, 1 when one fails and 2 on bad input.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use positroid::layout::Violation;
use positroid::matchings::{boundary_value, enumerate_matchings, positroid};
use positroid::plabic::{components, validate};
use positroid::quasi::{verify_quasi_coincidence, ClusterStructure, Setup};
use positroid::twist::twist_check_variables;
use positroid::{corpus, Convention, Plabic, PlabicGraph};

const HEADER: &str = "positroid-lab/1";

#[derive(Parser, Debug)]
#[command(
    name = "positroid-lab",
    version,
    about = "Plabic graphs, positroids and their two cluster structures"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Labelling {
    Src,
    Tgt,
}

impl From<Labelling> for Convention {
    fn from(l: Labelling) -> Convention {
        match l {
            Labelling::Src => Convention::Source,
            Labelling::Tgt => Convention::Target,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Type, trip permutation, face labels, necklaces, positroid size and quiver.
    Analyze { graph: String },
    /// Cluster variables of one labelling as Plücker products, by degree.
    Variables {
        graph: String,
        #[arg(long, value_enum, default_value_t = Labelling::Src)]
        convention: Labelling,
        #[arg(long, default_value_t = 500)]
        seed_bound: usize,
    },
    /// Full quasi-coincidence check of the source and target structures.
    Verify {
        graph: String,
        #[arg(long, default_value_t = 500)]
        seed_bound: usize,
    },
    /// Pointwise twist identities at random points of the cell.
    #[command(alias = "twist-report")]
    Twist {
        graph: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        rng_seed: u64,
        #[arg(long, default_value_t = 500)]
        seed_bound: usize,
    },
    /// All perfect matchings as sorted edge lists with boundary values.
    Matchings { graph: String },
    /// Sorted boundary values of the perfect matchings.
    Positroid { graph: String },
    /// Strand-rule violations of a graph file.
    Validate { graph: String },
    /// Names of the bundled graphs.
    Corpus,
}

/// Ordered `key value` records and a verdict.
struct Report {
    command: &'static str,
    input: String,
    records: Vec<(String, String)>,
    ok: bool,
}

impl Report {
    fn new(command: &'static str, input: &str) -> Report {
        Report {
            command,
            input: input.to_string(),
            records: Vec::new(),
            ok: true,
        }
    }

    fn push(&mut self, key: &str, value: impl ToString) {
        self.records.push((key.to_string(), value.to_string()));
    }

    /// A `key rest` line as produced by the library's renderers.
    fn push_line(&mut self, line: &str) {
        let (k, v) = line.split_once(' ').unwrap_or((line, ""));
        self.push(k, v);
    }

    fn fail(&mut self, why: impl ToString) {
        self.ok = false;
        self.push("failure", why);
    }

    fn render(&self, format: Format) -> String {
        let status = if self.ok { "pass" } else { "fail" };
        let mut out = String::new();
        match format {
            Format::Machine => {
                writeln!(out, "{}", HEADER).unwrap();
                writeln!(out, "command {}", self.command).unwrap();
                writeln!(out, "input {}", self.input).unwrap();
                for (k, v) in &self.records {
                    if v.is_empty() {
                        writeln!(out, "{}", k).unwrap();
                    } else {
                        writeln!(out, "{} {}", k, v).unwrap();
                    }
                }
                writeln!(out, "status {}", status).unwrap();
            }
            Format::Text => {
                writeln!(out, "{} {}", self.command, self.input).unwrap();
                let w = self.records.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.records {
                    writeln!(out, "  {:<w$}  {}", k, v, w = w).unwrap();
                }
                writeln!(out, "result: {}", status).unwrap();
            }
        }
        out
    }
}

fn read_graph_text(input: &str) -> Result<String, String> {
    let path = Path::new(input);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| format!("{}: {}", input, e));
    }
    corpus::source(input)
        .map(str::to_string)
        .ok_or_else(|| format!("{}: no such file or bundled graph (try `positroid-lab corpus`)", input))
}

fn load(input: &str) -> Result<Plabic, String> {
    let text = read_graph_text(input)?;
    Plabic::parse(&text).map_err(|e| format!("{}: {}", input, e))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn analyze(input: &str) -> Result<Report, String> {
    let p = load(input)?;
    let g = p.graph();
    let mut r = Report::new("analyze", input);
    let (k, n) = p.graph_type();
    r.push("type", format!("{} {}", k, n));
    r.push("trip_permutation", join(p.trip_permutation()));
    r.push("nodes", g.node_count());
    r.push("edges", g.edge_count());
    let comps = components(g);
    r.push("components", comps.len());
    for c in &comps {
        r.push(
            "component",
            format!("points {} nodes {}", join(&c.points), c.nodes.len()),
        );
    }
    r.push("faces", p.face_count());
    for f in 0..p.face_count() {
        let kind = if p.is_boundary_face(f) { "boundary" } else { "internal" };
        r.push(
            "face",
            format!(
                "{} {} src {} tgt {}",
                f,
                kind,
                p.label(f, Convention::Source),
                p.label(f, Convention::Target)
            ),
        );
    }
    r.push("necklace_src", join(p.necklace(Convention::Source)));
    r.push("necklace_tgt", join(p.necklace(Convention::Target)));
    r.push("positroid_size", positroid(g).len());
    let q = p.quiver();
    r.push("mutable", join(q.mutable_vertices()));
    r.push("frozen", join(q.frozen_vertices()));
    // Cancelled in the exchange matrix.
    r.push("two_cycles", q.two_cycles());
    let mut arrows = q.arrows().to_vec();
    arrows.sort_unstable();
    for (a, b) in arrows {
        r.push("arrow", format!("{} {}", a, b));
    }
    Ok(r)
}

fn variables(input: &str, c: Convention, bound: usize) -> Result<Report, String> {
    let p = load(input)?;
    let mut r = Report::new("variables", input);
    r.push("convention", c.name());
    let setup = Setup::new(&p, bound).map_err(|e| e.to_string())?;
    let ex = &setup.exploration;
    r.push("finite_type", ex.finite_type);
    r.push("clusters", ex.seeds.len());
    r.push("frozen", join(p.necklace(c).iter().map(|s| format!("D{}", s))));
    let st: &ClusterStructure = match c {
        Convention::Source => &setup.src,
        Convention::Target => &setup.tgt,
    };
    let mut by_degree: std::collections::BTreeMap<i64, Vec<String>> = Default::default();
    for i in 0..ex.variables.len() {
        by_degree.entry(st.degree(i, p.k())).or_default().push(st.describe(i));
    }
    for (d, mut names) in by_degree {
        names.sort();
        r.push("degree", format!("{} {}", d, names.join(" ")));
    }
    if !ex.finite_type {
        r.fail(format!("exploration stopped at {} seeds", bound));
    }
    Ok(r)
}

fn verify(input: &str, bound: usize) -> Result<Report, String> {
    let p = load(input)?;
    let mut r = Report::new("verify", input);
    match verify_quasi_coincidence(&p, bound) {
        Ok(q) => {
            for line in q.render() {
                if line.starts_with("verdict ") {
                    continue;
                }
                r.push_line(&line);
            }
            if !q.passed() {
                r.fail("quasi-coincidence not established");
            }
        }
        Err(e) => r.fail(e),
    }
    Ok(r)
}

fn twist(input: &str, samples: usize, rng_seed: u64, bound: usize) -> Result<Report, String> {
    let p = load(input)?;
    let mut r = Report::new("twist", input);
    r.push("samples", samples);
    r.push("rng_seed", rng_seed);
    let setup = Setup::new(&p, bound).map_err(|e| e.to_string())?;
    let t = match twist_check_variables(&setup, samples, rng_seed) {
        Ok(t) => t,
        Err(e) => {
            r.fail(e);
            return Ok(r);
        }
    };
    let verdict = |x: usize| format!("{}/{} {}", x, samples, if x == samples { "pass" } else { "fail" });
    r.push("necklace_inversion", verdict(t.necklace_inversion));
    r.push("in_cell", verdict(t.in_cell));
    r.push("relations", verdict(t.relations));
    for line in &t.lines {
        r.push_line(line);
    }
    for u in &t.unmatched {
        r.push("unmatched", u);
    }
    if !t.passed() {
        r.fail("twist identities not established");
    }
    Ok(r)
}

fn matchings(input: &str) -> Result<Report, String> {
    let p = load(input)?;
    let g = p.graph();
    let mut r = Report::new("matchings", input);
    let ms = enumerate_matchings(g);
    r.push("count", ms.len());
    for m in &ms {
        r.push("matching", format!("{} boundary {}", m.render(g), boundary_value(g, m)));
    }
    Ok(r)
}

fn positroid_cmd(input: &str) -> Result<Report, String> {
    let p = load(input)?;
    let mut r = Report::new("positroid", input);
    let set = positroid(p.graph());
    r.push("size", set.len());
    r.push("subsets", join(set.iter()));
    Ok(r)
}

fn describe(g: &PlabicGraph, v: &Violation) -> String {
    match v {
        Violation::SelfCrossing { strand, edge } => {
            format!("strand {} crosses itself at edge {}", strand, g.edge_name(*edge))
        }
        Violation::DoubleCrossing { first, second } => format!("strands {} and {} cross twice", first, second),
        Violation::Monochrome { edge } => format!("edge {} joins nodes of one colour", g.edge_name(*edge)),
        Violation::ClosedStrand { edge } => format!("closed strand through edge {}", g.edge_name(*edge)),
    }
}

fn validate_cmd(input: &str) -> Result<Report, String> {
    let text = read_graph_text(input)?;
    let mut r = Report::new("validate", input);
    let g = match PlabicGraph::parse(&text) {
        Ok(g) => g,
        Err(e) => {
            r.fail(e);
            return Ok(r);
        }
    };
    match validate(&g) {
        Ok(vs) if vs.is_empty() => {
            let p = Plabic::new(g).map_err(|e| e.to_string())?;
            let (k, n) = p.graph_type();
            r.push("type", format!("{} {}", k, n));
        }
        Ok(vs) => {
            for v in &vs {
                r.push("violation", describe(&g, v));
            }
            r.fail(format!("{} violations", vs.len()));
        }
        Err(e) => r.fail(e),
    }
    Ok(r)
}

fn corpus_cmd() -> Report {
    let mut r = Report::new("corpus", "bundled");
    for name in corpus::names() {
        let p = corpus::load(name).expect("bundled graphs are valid");
        let (k, n) = p.graph_type();
        r.push("graph", format!("{} {} {}", name, k, n));
    }
    r
}

fn init_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("POSITROID_LAB_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| format!("POSITROID_LAB_THREADS: not a number: {}", v))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Report, String> {
    init_threads()?;
    match cli.command {
        Command::Analyze { graph } => analyze(&graph),
        Command::Variables {
            graph,
            convention,
            seed_bound,
        } => variables(&graph, convention.into(), seed_bound),
        Command::Verify { graph, seed_bound } => verify(&graph, seed_bound),
        Command::Twist {
            graph,
            samples,
            rng_seed,
            seed_bound,
        } => twist(&graph, samples, rng_seed, seed_bound),
        Command::Matchings { graph } => matchings(&graph),
        Command::Positroid { graph } => positroid_cmd(&graph),
        Command::Validate { graph } => validate_cmd(&graph),
        Command::Corpus => Ok(corpus_cmd()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(r) => {
            print!("{}", r.render(format));
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match format {
                Format::Machine => println!("{}\nerror {}\nstatus error", HEADER, e),
                Format::Text => eprintln!("error: {}", e),
            }
            ExitCode::from(2)
        }
    }
}
