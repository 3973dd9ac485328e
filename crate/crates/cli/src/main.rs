mod plot;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use knotcalc::kirby::{procedure1, procedure2, MoveLog, ReplayError};
use knotcalc::knotspec::{evaluate, parse, EvalError, InvariantReport, KnotTable};
use knotcalc::twobridge::{
    bf_obstruction, mod5_shortcut, BfVerdict, ShortcutResult, TwoBridgeFraction,
};

/// Exact knot invariants, two-bridge obstructions and Kirby move bookkeeping.
#[derive(Parser)]
#[command(name = "knotcalc", version)]
struct Cli {
    /// Knot table JSON file; overrides KNOTCALC_TABLE and the bundled table.
    #[arg(long, global = true, value_name = "FILE")]
    table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a knot expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Signature segments as CSV rows (s_lo, s_hi, value).
        #[arg(long)]
        csv: bool,
    },
    /// Linking-form obstruction for the two-bridge knot with fraction p/q.
    Bf {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Kirby move procedures and log replay.
    Kirby {
        #[command(subcommand)]
        command: KirbyCommand,
    },
    /// Re-derive the pretzel family results and the supporting checks.
    VerifyPaper {
        #[arg(long, default_value_t = 50)]
        n_max: u64,
    },
    /// Plot the signature function over t in (0, 1/2].
    Plot {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit (t_lo, t_hi, value) rows instead of SVG.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Subcommand)]
enum KirbyCommand {
    /// Replace a sign/(2k+1)-framed unknot by a +1, -1 pair.
    Proc1(ProcArgs),
    /// Replace a sign/(2k)-framed unknot, with a sign-framed helper, by three unknots.
    Proc2(ProcArgs),
    /// Re-execute a move log and check its final diagram.
    Replay { file: PathBuf },
}

#[derive(Args)]
struct ProcArgs {
    #[arg(long)]
    k: u64,
    #[arg(long, value_enum, allow_hyphen_values = true)]
    sign: Sign,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sign {
    #[value(name = "+", alias = "+1", alias = "1")]
    Plus,
    #[value(name = "-", alias = "-1")]
    Minus,
}

impl Sign {
    fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Process outcome: 0 success, 1 negative verdict, 2 usage error, 3 data error.
#[derive(Debug)]
pub enum Failure {
    Verdict(String),
    Usage(String),
    Data(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verdict(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Data(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verdict(m) | Failure::Usage(m) | Failure::Data(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("knotcalc: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Eval { expr, csv, .. } => cmd_eval(&expr, &load_table(cli.table.as_deref())?, csv),
        Command::Bf { p, q } => cmd_bf(p, q),
        Command::Kirby { command } => cmd_kirby(command),
        Command::VerifyPaper { n_max } => verify::run(n_max, &load_table(cli.table.as_deref())?),
        Command::Plot { expr, output, csv } => {
            let table = load_table(cli.table.as_deref())?;
            cmd_plot(&expr, &table, output.as_deref(), csv)
        }
    }
}

fn load_table(flag: Option<&Path>) -> Result<KnotTable, Failure> {
    let env = std::env::var_os("KNOTCALC_TABLE").map(PathBuf::from);
    match flag.map(Path::to_path_buf).or(env) {
        Some(path) => KnotTable::load(&path).map_err(|e| Failure::Data(e.to_string())),
        None => Ok(KnotTable::bundled()),
    }
}

/// Serializes `value`, checks that it reads back to itself and holds no floats.
fn emit_json<T>(value: &T) -> Outcome
where
    T: Serialize + for<'de> Deserialize<'de> + PartialEq,
{
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Data(format!("cannot serialize output: {e}")))?;
    let back: T = serde_json::from_str(&text)
        .map_err(|e| Failure::Data(format!("output does not match its schema: {e}")))?;
    let tree: serde_json::Value = serde_json::from_str(&text).expect("just serialized");
    if back != *value || has_float(&tree) {
        return Err(Failure::Data("output failed validation".into()));
    }
    out(&format!("{text}\n"));
    Ok(())
}

/// Writes to standard output, ignoring a closed pipe.
pub fn out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn has_float(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(n) => n.is_f64(),
        serde_json::Value::Array(a) => a.iter().any(has_float),
        serde_json::Value::Object(o) => o.values().any(has_float),
        _ => false,
    }
}

#[derive(Serialize, Deserialize, PartialEq)]
struct EvalOutput {
    expression: String,
    alexander_text: String,
    #[serde(flatten)]
    report: InvariantReport,
}

fn evaluate_text(expr: &str, table: &KnotTable) -> Result<(String, InvariantReport), Failure> {
    let e = parse(expr).map_err(|err| {
        Failure::Usage(format!(
            "{err}\n  {expr}\n  {:>w$}",
            "^",
            w = err.position + 1
        ))
    })?;
    let report = evaluate(&e, table).map_err(|err| match err {
        EvalError::InvalidParameter(_) => Failure::Usage(err.to_string()),
        _ => Failure::Data(err.to_string()),
    })?;
    Ok((e.to_string(), report))
}

fn cmd_eval(expr: &str, table: &KnotTable, csv: bool) -> Outcome {
    let (expression, report) = evaluate_text(expr, table)?;
    if csv {
        let sf = report
            .signature
            .available()
            .ok_or_else(|| Failure::Data(format!("signature unavailable for {expression}")))?;
        let mut text = String::from("s_lo,s_hi,value\n");
        for seg in &sf.segments {
            let hi = seg
                .hi
                .as_ref()
                .map_or("inf".to_string(), knotcalc::rational_to_string);
            let lo = knotcalc::rational_to_string(&seg.lo);
            text += &format!("{lo},{hi},{}\n", seg.value);
        }
        text += &format!("inf,inf,{}\n", sf.value_at_minus_one);
        out(&text);
        return Ok(());
    }
    emit_json(&EvalOutput {
        expression,
        alexander_text: report.alexander.to_string(),
        report,
    })
}

#[derive(Serialize, Deserialize, PartialEq)]
struct BfOutput {
    fraction: String,
    #[serde(flatten)]
    verdict: BfVerdict,
    mod5_shortcut: ShortcutResult,
}

fn cmd_bf(p: i64, q: i64) -> Outcome {
    let f = TwoBridgeFraction::new(p, q).map_err(|e| Failure::Usage(e.to_string()))?;
    let verdict = bf_obstruction(&f);
    emit_json(&BfOutput {
        fraction: f.to_string(),
        verdict,
        mod5_shortcut: mod5_shortcut(p, q),
    })?;
    if verdict.is_obstructed() {
        Err(Failure::Verdict(format!(
            "{f}: algebraic unknotting number at least 2"
        )))
    } else {
        Ok(())
    }
}

fn cmd_kirby(command: KirbyCommand) -> Outcome {
    let usage = |e: knotcalc::kirby::KirbyError| Failure::Usage(e.to_string());
    match command {
        KirbyCommand::Proc1(a) => emit_json(&procedure1(a.k, a.sign.value()).map_err(usage)?),
        KirbyCommand::Proc2(a) => emit_json(&procedure2(a.k, a.sign.value()).map_err(usage)?),
        KirbyCommand::Replay { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Data(format!("cannot read {}: {e}", file.display())))?;
            let log: MoveLog = serde_json::from_str(&text)
                .map_err(|e| Failure::Data(format!("malformed move log: {e}")))?;
            match log.verify() {
                Ok(()) => emit_json(&ReplayOutput {
                    verified: true,
                    moves: log.moves.len(),
                    final_diagram: log.final_diagram,
                }),
                Err(e) => {
                    let index = match &e {
                        ReplayError::Illegal { index, .. } | ReplayError::Snapshot { index } => {
                            *index
                        }
                        ReplayError::Final => log.moves.len(),
                    };
                    Err(Failure::Data(format!(
                        "replay diverges at move {index}: {e}"
                    )))
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq)]
struct ReplayOutput {
    verified: bool,
    moves: usize,
    #[serde(rename = "final")]
    final_diagram: knotcalc::kirby::SurgeryDiagram,
}

fn cmd_plot(expr: &str, table: &KnotTable, output: Option<&Path>, csv: bool) -> Outcome {
    let (expression, report) = evaluate_text(expr, table)?;
    let sf = report
        .signature
        .available()
        .ok_or_else(|| Failure::Data(format!("signature unavailable for {expression}")))?;
    let steps = plot::steps(sf);
    let text = if csv {
        plot::csv(&steps)
    } else {
        plot::svg(&expression, &steps)
    };
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Data(format!("cannot write {}: {e}", path.display()))),
        None => {
            out(&text);
            Ok(())
        }
    }
}
