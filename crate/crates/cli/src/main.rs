//! `isor`: solve, verify, generate and analyze reconfiguration instances.
//!
//! Reports go to standard output as `key: value` lines after a `v1` line.
//! Exit codes: 0 yes / valid, 1 no / invalid, 2 error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use isor::analysis::{components, diameter, find_holes, is_bipartite, is_perfect, Parity};
use isor::bruteforce::{solve_bfs_with, Limits};
use isor::io;
use isor::reductions::{reduce_isiso_to_isisor, reduce_mbb_to_isr, reduce_word_to_isisor};
use isor::rules::{kts_sequence_to_ts, verify_sequence, FailureReason};
use isor::xp::{mu_of, solve_xp_with};
use isor::{BacktrackOracle, Error, ReconfigSequence, Rule, RuleKind, Verification};

#[derive(Parser)]
#[command(
    name = "isor",
    version,
    about = "Induced subgraph isomorphism reconfiguration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap on reconfiguration-graph or clique-compressed nodes.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_nodes: usize,

    /// Cap on word-reachability states.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_states: usize,

    /// Worker threads for graph construction.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Bfs,
    Xp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gadget {
    Word,
    Isiso,
    Mbb,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance and print a shortest sequence when one exists.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "bfs")]
        solver: Solver,
        /// |V(H)| - k for the xp solver; checked against the instance.
        #[arg(long)]
        mu: Option<usize>,
        /// Also write the sequence file here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a sequence file against an instance.
    Verify {
        instance: PathBuf,
        sequence: PathBuf,
    },
    /// Build a hardness gadget instance from a source file.
    Reduce {
        #[arg(value_enum)]
        kind: Gadget,
        source: PathBuf,
        /// Pattern unit for word gadgets, e.g. K1 or K2.
        #[arg(long, default_value = "K1")]
        f: String,
        /// Move budget for word gadgets (default 2|V(f)|).
        #[arg(long)]
        k: Option<usize>,
        /// Rule for word gadgets: tj or ts.
        #[arg(long, default_value = "tj")]
        rule: String,
        /// mu for isiso gadgets.
        #[arg(long)]
        mu: Option<usize>,
        /// Pattern for isiso gadgets when the source holds no `h` lines.
        #[arg(long)]
        hp: Option<String>,
        /// Biclique size for mbb gadgets.
        #[arg(long)]
        b: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report graph-class predicates.
    Analyze { graph: PathBuf },
    /// Turn a k-token sliding sequence of independent sets into single slides.
    ConvertTs {
        instance: PathBuf,
        sequence: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Report {
    lines: String,
    code: u8,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            lines: format!("v1\ncommand: {command}\n"),
            code: 0,
        }
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.lines, "{key}: {value}");
        self
    }

    fn sequence(&mut self, seq: &ReconfigSequence) {
        self.kv("length", seq.len());
        for s in seq.steps() {
            self.kv("step", s);
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn reason_text(r: FailureReason) -> &'static str {
    match r {
        FailureReason::WrongSource => "first set is not the source",
        FailureReason::WrongTarget => "last set is not the target",
        FailureReason::NotPatternCopy => "set does not induce the pattern",
        FailureReason::NotAdjacent => "consecutive sets are not adjacent under the rule",
        FailureReason::SizeMismatch => "set size differs from the endpoints",
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let limits = Limits {
        max_nodes: cli.max_nodes,
        max_states: cli.max_states,
        workers: cli.workers.max(1),
    };
    match &cli.command {
        Command::Solve {
            instance,
            solver,
            mu,
            output,
        } => {
            let inst = io::parse_instance(&read(instance)?)?;
            let mut r = Report::new("solve");
            let start = Instant::now();
            let (name, sol) = match solver {
                Solver::Bfs => ("bfs", solve_bfs_with(&inst, &limits)?),
                Solver::Xp => {
                    let derived = mu_of(&inst)?;
                    if let Some(m) = mu {
                        if *m != derived {
                            return Err(Error::InvalidInput(format!(
                                "--mu {m} does not match |V(H)| - k = {derived}"
                            )));
                        }
                    }
                    r.kv("mu", derived);
                    ("xp", solve_xp_with(&inst, &BacktrackOracle, &limits)?)
                }
            };
            let elapsed = start.elapsed();
            r.kv("solver", name)
                .kv("rule", inst.rule)
                .kv("host_vertices", inst.host.n())
                .kv("pattern_vertices", inst.pattern.n())
                .kv("nodes", sol.nodes)
                .kv("edges", sol.edges)
                .kv("elapsed_ms", format!("{:.3}", elapsed.as_secs_f64() * 1e3));
            match &sol.sequence {
                Some(seq) => {
                    if let Verification::Invalid { index, reason } = verify_sequence(&inst, seq) {
                        return Err(Error::Precondition(format!(
                            "solver produced an invalid sequence at set {index}: {}",
                            reason_text(reason)
                        )));
                    }
                    r.kv("verdict", "yes");
                    r.sequence(seq);
                    if let Some(path) = output {
                        write_out(path, &io::write_sequence(seq))?;
                    }
                }
                None => {
                    r.kv("verdict", "no");
                    r.code = 1;
                }
            }
            Ok(r)
        }
        Command::Verify { instance, sequence } => {
            let inst = io::parse_instance(&read(instance)?)?;
            let seq = io::parse_sequence(&read(sequence)?)?;
            let mut r = Report::new("verify");
            r.kv("rule", inst.rule).kv("length", seq.len());
            match verify_sequence(&inst, &seq) {
                Verification::Valid => {
                    r.kv("verdict", "valid");
                }
                Verification::Invalid { index, reason } => {
                    r.kv("verdict", "invalid")
                        .kv("index", index)
                        .kv("reason", reason_text(reason));
                    r.code = 1;
                }
            }
            Ok(r)
        }
        Command::Reduce {
            kind,
            source,
            f,
            k,
            rule,
            mu,
            hp,
            b,
            output,
        } => {
            let text = read(source)?;
            let mut r = Report::new("reduce");
            let out = match kind {
                Gadget::Word => {
                    let w = io::parse_word_instance(&text)?;
                    let f = io::named_graph(f)?;
                    let kind: RuleKind = rule.parse()?;
                    let k = k.unwrap_or(2 * f.n());
                    r.kv("gadget", "word");
                    reduce_word_to_isisor(&w, &f, Rule::new(kind, k)?)?
                }
                Gadget::Isiso => {
                    let (gp, hp) = match hp {
                        Some(name) => (io::parse_graph(&text)?, io::named_graph(name)?),
                        None => io::parse_graph_pair(&text)?,
                    };
                    let mu = mu.ok_or_else(|| Error::InvalidInput("isiso needs --mu".into()))?;
                    r.kv("gadget", "isiso");
                    reduce_isiso_to_isisor(&gp, &hp, mu)?
                }
                Gadget::Mbb => {
                    let (g, sides) = io::parse_bipartite(&text)?;
                    let b = b.ok_or_else(|| Error::InvalidInput("mbb needs --b".into()))?;
                    r.kv("gadget", "mbb");
                    reduce_mbb_to_isr(&g, &sides, b)?
                }
            };
            for (key, value) in &out.parameters {
                r.kv(key, value);
            }
            let inst = &out.instance;
            r.kv("host_vertices", inst.host.n())
                .kv("host_edges", inst.host.edge_count())
                .kv("pattern_vertices", inst.pattern.n())
                .kv("rule", inst.rule);
            let text = io::write_instance(inst);
            match output {
                Some(path) => {
                    write_out(path, &text)?;
                    r.kv("written", path.display());
                }
                None => r.lines.push_str(&text),
            }
            Ok(r)
        }
        Command::Analyze { graph } => {
            let g = io::parse_graph(&read(graph)?)?;
            let holes = find_holes(&g, Parity::Any, false)?;
            let mut r = Report::new("analyze");
            r.kv("vertices", g.n())
                .kv("edges", g.edge_count())
                .kv("components", components(&g).len())
                .kv("bipartite", is_bipartite(&g).is_some())
                .kv("even_hole_free", holes.even == 0)
                .kv("odd_hole_free", holes.odd == 0)
                .kv("perfect", is_perfect(&g)?)
                .kv("even_holes", holes.even)
                .kv("odd_holes", holes.odd);
            match diameter(&g) {
                Ok(d) => r.kv("diameter", d),
                Err(_) => r.kv("diameter", "undefined"),
            };
            Ok(r)
        }
        Command::ConvertTs {
            instance,
            sequence,
            output,
        } => {
            let inst = io::parse_instance(&read(instance)?)?;
            if inst.pattern.edge_count() > 0 {
                return Err(Error::InvalidInput(
                    "conversion needs an edgeless pattern".into(),
                ));
            }
            let seq = io::parse_sequence(&read(sequence)?)?;
            let ts = kts_sequence_to_ts(&inst.host, &seq)?;
            let mut r = Report::new("convert-ts");
            r.kv("input_length", seq.len());
            r.sequence(&ts);
            if let Some(path) = output {
                write_out(path, &io::write_sequence(&ts))?;
            }
            Ok(r)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.lines);
            ExitCode::from(r.code)
        }
        Err(e) => {
            println!("v1\nverdict: error\nerror: {e}");
            eprintln!("isor: {e}");
            ExitCode::from(2)
        }
    }
}
