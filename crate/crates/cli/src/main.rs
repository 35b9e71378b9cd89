use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sisinv::fixtures;
use sisinv::plumbing::{
    canonical_k2s, determinant, homology, minimal_cycle, minimize, pairing_with_vertices, star_shape, PlumbingGraph,
};
use sisinv::seifert::{
    brieskorn_mu, brieskorn_pg, brieskorn_seifert, pinkham_pg, seifert_to_graph, uac_brieskorn, BrieskornTriple,
};
use sisinv::splice::{semigroup_condition, splice_diagram};
use sisinv::superisolated::{format_table, sw_verdict, table, table_json, SisInput};
use sisinv::{Error, Result};

#[derive(Parser)]
#[command(name = "sisinv", version, about = "Exact invariants of superisolated surface singularities and plumbed 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Superisolated singularities given by a degree and a cusp list.
    #[command(subcommand)]
    Sis(SisCommand),
    /// Invariants of a plumbing graph read from a JSON or DOT file.
    Plumbing {
        #[arg(value_enum)]
        what: PlumbingQuery,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        json: bool,
        /// Emit graphs as DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Splice diagram of a plumbing graph.
    #[command(subcommand)]
    Splice(SpliceCommand),
    /// Brieskorn sphere Σ(a₁,a₂,a₃).
    Brieskorn {
        #[arg(value_enum)]
        what: BrieskornQuery,
        a1: u64,
        a2: u64,
        a3: u64,
        #[arg(long)]
        dot: bool,
    },
    /// Star-shaped graphs.
    #[command(subcommand)]
    Seifert(SeifertCommand),
    /// Brieskorn model of the universal abelian cover (one cusp with one Newton pair).
    Uac {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        cusp: String,
        #[arg(long)]
        json: bool,
    },
    /// Bundled example graphs.
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

#[derive(Subcommand)]
enum SisCommand {
    Report {
        #[arg(long)]
        d: u32,
        /// e.g. "[3],[2_3]"
        #[arg(long)]
        cusps: String,
        #[arg(long)]
        json: bool,
    },
    Table {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PlumbingQuery {
    Det,
    Homology,
    K2s,
    Zmin,
    Minimize,
    Seifert,
}

#[derive(Subcommand)]
enum SpliceCommand {
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BrieskornQuery {
    Graph,
    Pg,
    Mu,
}

#[derive(Subcommand)]
enum SeifertCommand {
    /// Pinkham's geometric genus of a star-shaped graph.
    Pg {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// Check every fixture against its expected values.
    Verify {
        #[arg(long)]
        json: bool,
    },
    /// Write each fixture graph to DIR/NAME.json.
    Dump {
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
    List,
}

enum Failure {
    Core(Error),
    Io(String),
    /// Already reported; only the exit code is left.
    Silent,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Silent) => ExitCode::from(1),
    }
}

fn read_graph(path: &Path) -> std::result::Result<PlumbingGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let g = if text.trim_start().starts_with('{') { PlumbingGraph::from_json(&text) } else { PlumbingGraph::from_dot(&text) };
    Ok(g?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn print_graph(g: &PlumbingGraph, dot: bool) {
    if dot {
        print!("{}", g.to_dot());
    } else {
        println!("{}", g.to_json_pretty());
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn run(command: Command) -> std::result::Result<(), Failure> {
    match command {
        Command::Sis(SisCommand::Report { d, cusps, json }) => {
            let report = sw_verdict(&SisInput::parse(d, &cusps)?)?;
            if json {
                print_json(&report.to_json());
            } else {
                println!("{report}");
            }
        }
        Command::Sis(SisCommand::Table { d, json }) => {
            let rows = table(d)?;
            if json {
                print_json(&table_json(&rows));
            } else {
                print!("{}", format_table(&rows));
            }
        }
        Command::Plumbing { what, graph, json, dot } => plumbing(what, &read_graph(&graph)?, json, dot)?,
        Command::Splice(SpliceCommand::Check { graph, json }) => {
            let sd = splice_diagram(&read_graph(&graph)?)?;
            let verdict = semigroup_condition(&sd);
            if json {
                print_json(&json!({ "diagram": sd.to_json(), "verdict": verdict.to_json() }));
            } else {
                for (node, ends) in &sd.nodes {
                    let w: Vec<String> = ends.iter().map(|e| format!("{}->{}", e.weight, e.toward)).collect();
                    println!("node {node}: {}", w.join(", "));
                }
                println!("{verdict}");
            }
        }
        Command::Brieskorn { what, a1, a2, a3, dot } => {
            let t = BrieskornTriple::new(a1, a2, a3)?;
            match what {
                BrieskornQuery::Graph => print_graph(&seifert_to_graph(&brieskorn_seifert(t)?), dot),
                BrieskornQuery::Pg => println!("{}", brieskorn_pg(t)),
                BrieskornQuery::Mu => println!("{}", brieskorn_mu(t)),
            }
        }
        Command::Seifert(SeifertCommand::Pg { graph }) => {
            let s = star_shape(&read_graph(&graph)?)?;
            println!("{}", pinkham_pg(&s)?);
        }
        Command::Uac { d, cusp, json } => {
            let input = SisInput::parse(d, &cusp)?;
            let t = uac_brieskorn(u64::from(d), input.cusps())?;
            let g = seifert_to_graph(&brieskorn_seifert(t)?);
            if json {
                print_json(&json!({
                    "brieskorn": t.as_array(),
                    "mu": brieskorn_mu(t),
                    "pg": brieskorn_pg(t),
                    "homology": homology(&g)?.to_string(),
                    "graph": serde_json::to_value(&g).expect("graph"),
                }));
            } else {
                println!("Sigma{t}");
                println!("H = {}", homology(&g)?);
                println!("mu = {}", brieskorn_mu(t));
                println!("p_g = {}", brieskorn_pg(t));
            }
        }
        Command::Fixtures(FixturesCommand::Verify { json }) => {
            let out = fixtures::verify_all()?;
            if json {
                print_json(&Value::Array(
                    out.iter()
                        .map(|o| json!({"fixture": o.fixture, "check": o.check, "expected": o.expected, "actual": o.actual, "pass": o.pass}))
                        .collect(),
                ));
            } else {
                for o in &out {
                    let mark = if o.pass { "ok  " } else { "FAIL" };
                    println!("{mark} {:<22} {:<24} {}", o.fixture, o.check, o.actual);
                }
                println!("{}/{} checks passed", out.iter().filter(|o| o.pass).count(), out.len());
            }
            if !fixtures::all_pass(&out) {
                return Err(Failure::Silent);
            }
        }
        Command::Fixtures(FixturesCommand::Dump { dir }) => {
            fs::create_dir_all(&dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
            for (name, text) in fixtures::dump()? {
                let path = dir.join(format!("{name}.json"));
                fs::write(&path, text + "\n").map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                println!("{}", path.display());
            }
        }
        Command::Fixtures(FixturesCommand::List) => {
            for f in fixtures::all()? {
                println!("{:<22} {}", f.name, f.description);
            }
        }
    }
    Ok(())
}

fn plumbing(what: PlumbingQuery, g: &PlumbingGraph, json: bool, dot: bool) -> Result<()> {
    let ids: Vec<u32> = g.vertices().iter().map(|v| v.id).collect();
    match what {
        PlumbingQuery::Det => {
            let d = determinant(g);
            if json { print_json(&json!({ "determinant": d.to_string() })) } else { println!("{d}") }
        }
        PlumbingQuery::Homology => {
            let h = homology(g)?;
            if json {
                print_json(&json!({ "factors": strings(&h.factors), "order": h.order().to_string(), "group": h.to_string() }));
            } else {
                println!("H = {h}");
                println!("|H| = {}", h.order());
            }
        }
        PlumbingQuery::K2s => {
            let (k, k2s) = canonical_k2s(g)?;
            if json {
                print_json(&json!({ "k2s": k2s.to_string(), "ids": ids, "k": strings(&k.values()) }));
            } else {
                println!("K^2+s = {k2s}");
                println!("K = ({})", strings(&k.values()).join(", "));
            }
        }
        PlumbingQuery::Zmin => {
            let z = minimal_cycle(g)?;
            let pairing = pairing_with_vertices(g, &z)?;
            if json {
                print_json(&json!({ "ids": ids, "zmin": strings(&z.values()), "pairing": strings(&pairing) }));
            } else {
                println!("ids     = ({})", strings(&ids).join(", "));
                println!("Z_min   = ({})", strings(&z.values()).join(", "));
                println!("Z_min.E = ({})", strings(&pairing).join(", "));
            }
        }
        PlumbingQuery::Minimize => print_graph(&minimize(g), dot),
        PlumbingQuery::Seifert => {
            let s = star_shape(g)?;
            if json {
                print_json(&json!({ "b": s.b, "legs": s.legs, "e": s.e().to_string() }));
            } else {
                println!("{s}");
                println!("e = {}", s.e());
            }
        }
    }
    Ok(())
}
