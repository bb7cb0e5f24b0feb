//! `multicat`: command-line driver for concatenation experiments.

mod report;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multicat::automata::{format, minimize, Dfa, DEFAULT_CAP};
use multicat::bounds::{
    count_valid_k3_closed, count_valid_states, enumerate_valid_states, interval_bound, intervals, sandwich_bounds,
    SizeVector,
};
use multicat::concat::{build_concat_nfa, determinize_concat, label_table_json, ConcatInput};
use multicat::grid::SweepGrid;
use multicat::unary::{
    cyclic_concat_size, frobenius, modified_frobenius, search_best_unary_pair, tails_final_bound, unary_concat_all,
    UnaryLang, UnarySize, DEFAULT_SPLIT_BUDGET,
};
use multicat::witness::WitnessFamily;
use multicat::Error;
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::report::{run_cases, Report};

#[derive(Parser, Debug)]
#[command(name = "multicat", version, about = "State complexity experiments for concatenating several DFAs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Largest number of subset states a determinization may create.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output directory; results go to stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format written to stdout.
    #[arg(long, global = true, value_enum)]
    format: Option<ReportFormat>,
    /// Record wall-clock time per case. Reports are then no longer reproducible.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count valid states and evaluate the upper bounds for a size vector.
    Bound {
        #[arg(long)]
        n: SizeVector,
        /// Also evaluate the closed form for three automata.
        #[arg(long)]
        closed_k3: bool,
        /// Also count valid states by brute force.
        #[arg(long)]
        enumerate: bool,
    },
    /// Write the automata of a witness family.
    Witness {
        #[arg(long)]
        family: WitnessFamily,
        #[arg(long)]
        n: Option<SizeVector>,
    },
    /// Concatenate automata read from files and report the resulting sizes.
    Concat {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Include the decoded tuple of every reachable subset state.
        #[arg(long)]
        labels: bool,
    },
    /// Minimize an automaton read from a file.
    Minimize { file: PathBuf },
    /// Check a witness family against its expected minimal size.
    Verify {
        #[arg(long)]
        family: WitnessFamily,
        #[arg(long)]
        n: Option<SizeVector>,
    },
    /// Verify every case of a parameter grid such as `families=kp1;k=2..3;n=2..3`.
    Sweep {
        #[arg(long)]
        grid: SweepGrid,
    },
    /// Unary automata computations.
    #[command(subcommand)]
    Unary(UnaryCommand),
    /// Convert automaton files between formats.
    Export {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, group = "target")]
        dot: bool,
        #[arg(long, group = "target")]
        json: bool,
        #[arg(long, group = "target")]
        text: bool,
    },
}

#[derive(Subcommand, Debug)]
enum UnaryCommand {
    /// Frobenius number and its positive-coefficient variant.
    Frobenius {
        #[arg(required = true, value_delimiter = ',')]
        nums: Vec<u64>,
    },
    /// Minimal size of a concatenation of cyclic unary languages.
    Cyclic {
        #[arg(long)]
        n: SizeVector,
    },
    /// Bound for automata with final states in their tails, given as
    /// `lambda:mu` pairs. With `--finals` the concatenation is also computed.
    Tails {
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_unary_size)]
        sizes: Vec<UnarySize>,
        /// Final states of each automaton, `;` between automata, `,` within one.
        #[arg(long)]
        finals: Option<String>,
    },
    /// Best way to split two state budgets into tails and cycles.
    Search {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
}

fn parse_unary_size(s: &str) -> Result<UnarySize, String> {
    let (l, m) = s.split_once(':').ok_or_else(|| format!("expected lambda:mu, found `{s}`"))?;
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("expected an integer, found `{t}`"));
    Ok(UnarySize { lambda: num(l)?, mu: num(m)? })
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::Guard(_) => 3,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, msg: e.to_string() }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Bound { n, closed_k3, enumerate } => cmd_bound(g, n, *closed_k3, *enumerate),
        Command::Witness { family, n } => cmd_witness(g, *family, n.as_ref()),
        Command::Concat { files, labels } => cmd_concat(g, files, *labels),
        Command::Minimize { file } => {
            let dfa = minimize(&read_dfa(file)?);
            emit(g, "minimal.txt", &render(&dfa, g.format))?;
            Ok(0)
        }
        Command::Verify { family, n } => {
            let n = match n {
                Some(n) => n.clone(),
                None => family.default_sizes().ok_or_else(|| Failure {
                    code: 2,
                    msg: format!("family {family} needs --n"),
                })?,
            };
            family.check(&n)?;
            write_report(g, &run_cases(&[(*family, n)], g.cap, g.timing)?)
        }
        Command::Sweep { grid } => write_report(g, &run_cases(&grid.cases()?, g.cap, g.timing)?),
        Command::Unary(u) => cmd_unary(g, u),
        Command::Export { files, dot, json, .. } => cmd_export(g, files, *dot, *json),
    }
}

fn read_dfa(path: &Path) -> Result<Dfa, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure { code: 2, msg: format!("{}: {e}", path.display()) })?;
    format::parse_any(&text).map_err(|e| Failure { code: 2, msg: format!("{}: {e}", path.display()) })
}

fn render(dfa: &Dfa, fmt: Option<ReportFormat>) -> String {
    match fmt {
        Some(ReportFormat::Json) => format::to_json(dfa),
        _ => format::to_text(dfa),
    }
}

/// Writes to stdout. A closed pipe ends the process quietly, as it does for
/// other command-line tools.
fn write_stdout(body: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        r => Ok(r?),
    }
}

/// Writes `body` to `<out>/<name>` when an output directory is set and to
/// stdout otherwise.
fn emit(g: &Global, name: &str, body: &str) -> Result<(), Failure> {
    match &g.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(name), body)?;
        }
        None => write_stdout(body)?,
    }
    Ok(())
}

fn print_json(g: &Global, name: &str, v: &Value) -> Result<(), Failure> {
    emit(g, name, &(serde_json::to_string_pretty(v).expect("json value") + "\n"))
}

fn cmd_bound(g: &Global, n: &SizeVector, closed_k3: bool, enumerate: bool) -> CmdResult {
    let mut out = json!({ "n": n.as_slice() });
    let runs: Vec<[usize; 2]> = intervals(n).into_iter().map(|(i, j)| [i, j]).collect();
    if n.as_slice().iter().all(|&x| x >= 2) {
        let r = count_valid_states(n)?;
        let (lo, hi) = sandwich_bounds(n)?;
        out["tau"] = big(&r.tau);
        out["U"] = serde_json::to_value(&r).expect("json")["U"].clone();
        out["V"] = serde_json::to_value(&r).expect("json")["V"].clone();
        out["sandwich"] = json!({ "lower": big(&lo), "upper": big(&hi) });
    } else {
        out["intervals"] = json!(runs);
        out["interval_bound"] = big(&interval_bound(n)?);
    }
    if closed_k3 {
        let s = n.as_slice();
        if s.len() != 3 {
            return Err(Failure { code: 2, msg: "--closed-k3 needs exactly three sizes".into() });
        }
        out["closed_k3"] = big(&count_valid_k3_closed(s[0], s[1], s[2])?);
    }
    if enumerate {
        out["tau_enum"] = json!(enumerate_valid_states(n)?);
    }
    print_json(g, "bound.json", &out)?;
    Ok(0)
}

fn big(x: &BigUint) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn cmd_witness(g: &Global, family: WitnessFamily, n: Option<&SizeVector>) -> CmdResult {
    let n = match n {
        Some(n) => n.clone(),
        None => family
            .default_sizes()
            .ok_or_else(|| Failure { code: 2, msg: format!("family {family} needs --n") })?,
    };
    let dfas = family.generate(&n)?;
    let expected = family.expected(&n)?;
    match &g.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for (i, d) in dfas.iter().enumerate() {
                fs::write(dir.join(format!("A{}.txt", i + 1)), format::to_text(d))?;
            }
            let manifest = json!({ "family": family, "n": n.as_slice(), "expected": expected });
            fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest).expect("json") + "\n")?;
        }
        None => {
            for (i, d) in dfas.iter().enumerate() {
                write_stdout(&format!("# A{}\n{}", i + 1, format::to_text(d)))?;
            }
        }
    }
    Ok(0)
}

fn cmd_concat(g: &Global, files: &[PathBuf], labels: bool) -> CmdResult {
    let dfas = files.iter().map(|f| read_dfa(f)).collect::<Result<Vec<_>, _>>()?;
    let input = ConcatInput::new(dfas)?;
    let nfa = build_concat_nfa(&input)?;
    let det = determinize_concat(&input, g.cap)?;
    let minimal = minimize(&det.dfa);
    let mut out = json!({
        "sizes": input.sizes(),
        "nfa_states": nfa.nfa.state_count(),
        "epsilon_fallback": det.epsilon_fallback,
        "reachable": det.dfa.state_count(),
        "minimal": minimal.state_count(),
    });
    if labels {
        out["labels"] = label_table_json(&det.labels);
    }
    print_json(g, "concat.json", &out)?;
    Ok(0)
}

fn write_report(g: &Global, report: &Report) -> CmdResult {
    match &g.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("report.csv"), report.to_csv())?;
            fs::write(dir.join("report.json"), report.to_json())?;
        }
        None => match g.format.unwrap_or(ReportFormat::Csv) {
            ReportFormat::Csv => write_stdout(&report.to_csv())?,
            ReportFormat::Json => write_stdout(&report.to_json())?,
        },
    }
    Ok(report.exit_code())
}

fn cmd_unary(g: &Global, u: &UnaryCommand) -> CmdResult {
    let out = match u {
        UnaryCommand::Frobenius { nums } => json!({
            "nums": nums,
            "g": frobenius(nums)?,
            "f": modified_frobenius(nums)?,
        }),
        UnaryCommand::Cyclic { n } => {
            let s = cyclic_concat_size(n)?;
            json!({ "n": n.as_slice(), "size": s })
        }
        UnaryCommand::Tails { sizes, finals } => {
            let bound = tails_final_bound(sizes)?;
            let mut out = json!({ "sizes": sizes, "bound": bound });
            if let Some(finals) = finals {
                let lists: Vec<&str> = finals.split(';').collect();
                if lists.len() != sizes.len() {
                    return Err(Failure {
                        code: 2,
                        msg: format!("{} final-state lists for {} automata", lists.len(), sizes.len()),
                    });
                }
                let langs = sizes
                    .iter()
                    .zip(&lists)
                    .map(|(s, f)| {
                        let states = f
                            .split(',')
                            .map(str::trim)
                            .filter(|t| !t.is_empty())
                            .map(|t| t.parse::<u64>())
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| Failure { code: 2, msg: format!("bad final state list `{f}`: {e}") })?;
                        Ok(UnaryLang::from_shape(*s, &states)?)
                    })
                    .collect::<Result<Vec<_>, Failure>>()?;
                out["observed"] = json!(unary_concat_all(&langs)?.size());
            }
            out
        }
        UnaryCommand::Search { m, n } => json!(search_best_unary_pair(*m, *n, DEFAULT_SPLIT_BUDGET)?),
    };
    print_json(g, "unary.json", &out)?;
    Ok(0)
}

/// Text is the default target when neither `--dot` nor `--json` is given.
fn cmd_export(g: &Global, files: &[PathBuf], dot: bool, json_out: bool) -> CmdResult {
    for f in files {
        let dfa = read_dfa(f)?;
        let stem = f.file_stem().and_then(|s| s.to_str()).unwrap_or("A").to_string();
        let (ext, body) = if dot {
            ("dot", format::to_dot(&dfa, &stem))
        } else if json_out {
            ("json", format::to_json(&dfa))
        } else {
            ("txt", format::to_text(&dfa))
        };
        emit(g, &format!("{stem}.{ext}"), &body)?;
    }
    Ok(0)
}
