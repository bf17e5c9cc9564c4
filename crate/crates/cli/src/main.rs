mod args;
mod report;
mod run;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use pcf_core::pcf::Budget;
use pcf_core::Error;
use serde_json::{Map, Value};

use args::{BelyiCmd, Cli, Command, Format, IdfCmd, PcfCmd, ValdynCmd};
use report::{to_value, Outcome, Report, Table, Timings, SCHEMA_VERSION};

const USAGE_EXIT: u8 = 2;

fn inputs(args: impl serde::Serialize, budget: Option<u64>) -> Value {
    let mut v = to_value(args);
    if let (Some(b), Value::Object(map)) = (budget, &mut v) {
        map.insert("budget".into(), b.into());
    }
    v
}

fn dispatch(cli: &Cli) -> pcf_core::Result<(String, Value, Outcome)> {
    let budget = cli.budget.map_or_else(Budget::default, Budget::with_monomials);
    let b = cli.budget;
    let (name, inp, out) = match &cli.command {
        Command::Belyi(BelyiCmd::Coeffs(a)) => ("belyi coeffs", inputs(a, None), run::belyi_coeffs_cmd(a)),
        Command::Belyi(BelyiCmd::Ncrit(a)) => ("belyi ncrit", inputs(a, None), run::belyi_ncrit_cmd(a)),
        Command::Idf(IdfCmd::Find(a)) => ("idf find", inputs(a, None), run::idf_find_cmd(a)),
        Command::Idf(IdfCmd::Scan(a)) => ("idf scan", inputs(a, None), run::idf_scan_cmd(a)),
        Command::Idf(IdfCmd::Mordell(a)) => ("idf mordell", inputs(a, None), run::idf_mordell_cmd(a)),
        Command::Idf(IdfCmd::Conjecture(a)) => ("idf conjecture", inputs(a, None), run::idf_conjecture_cmd(a)),
        Command::Valdyn(ValdynCmd::Orbit(a)) => ("valdyn orbit", inputs(a, None), run::valdyn_orbit_cmd(a)),
        Command::Valdyn(ValdynCmd::Classify(a)) => {
            ("valdyn classify", inputs(a, None), run::valdyn_classify_cmd(a))
        }
        Command::Pcf(PcfCmd::Locus(a)) => ("pcf locus", inputs(a, b), run::pcf_locus_cmd(a, &budget)),
        Command::Pcf(PcfCmd::Integrality(a)) => {
            ("pcf integrality", inputs(a, b), run::pcf_integrality_cmd(a, &budget))
        }
        Command::Pcf(PcfCmd::Transversality(a)) => {
            ("pcf transversality", inputs(a, b), run::pcf_transversality_cmd(a, &budget))
        }
        Command::Pcf(PcfCmd::Counterexamples(a)) => {
            ("pcf counterexamples", inputs(a, None), run::pcf_counterexamples_cmd())
        }
        Command::Replay(_) => unreachable!("replay is expanded before dispatch"),
    };
    let out = match out {
        Err(Error::Degenerate(msg)) => {
            let mut o = Outcome::new("DEGENERATE", Table::default()).exit(1);
            o.detail = Some(msg);
            o
        }
        other => other?,
    };
    Ok((name.to_string(), inp, out))
}

/// Rebuilds an argument vector from a report's `command` and `inputs`.
fn replay_argv(path: &std::path::Path, format: Format) -> Result<Vec<String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let report: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let command = report["command"].as_str().ok_or("report has no command")?;
    let inputs: &Map<String, Value> = report["inputs"].as_object().ok_or("report has no inputs object")?;
    let mut argv = vec!["pcfcert".to_string()];
    argv.extend(command.split_whitespace().map(String::from));
    for (key, value) in inputs {
        let flag = format!("--{key}");
        match value {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => argv.push(flag),
            Value::Array(items) => {
                if !items.is_empty() {
                    let joined: Vec<String> = items.iter().map(scalar).collect();
                    argv.push(flag);
                    argv.push(joined.join(","));
                }
            }
            other => {
                argv.push(flag);
                argv.push(scalar(other));
            }
        }
    }
    if format == Format::Csv {
        argv.extend(["--format".into(), "csv".into()]);
    }
    Ok(argv)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn execute(cli: Cli) -> ExitCode {
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} worker threads: {e}");
            return ExitCode::from(USAGE_EXIT);
        }
    }
    let start = Instant::now();
    let (command, inputs, out) = match dispatch(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_EXIT);
        }
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        inputs,
        witness: out.witness,
        certificate: out.certificate,
        verdict: out.verdict,
        detail: out.detail,
        table: out.table,
        timings: Timings { elapsed_ms: start.elapsed().as_millis() },
    };
    let mut stdout = std::io::stdout().lock();
    let written = match cli.format {
        Format::Json => report.write_json(&mut stdout),
        Format::Csv => report.write_csv(&mut stdout),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(USAGE_EXIT);
    }
    ExitCode::from(out.exit as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Replay(r) = &cli.command {
        let argv = match replay_argv(&r.report, cli.format) {
            Ok(a) => a,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(USAGE_EXIT);
            }
        };
        let mut replayed = Cli::parse_from(argv);
        replayed.jobs = replayed.jobs.or(cli.jobs);
        if let Command::Replay(_) = replayed.command {
            eprintln!("error: a report cannot replay another replay");
            return ExitCode::from(USAGE_EXIT);
        }
        return execute(replayed);
    }
    execute(cli)
}
