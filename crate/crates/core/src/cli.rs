// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Command-line front end. All output is a pure function of the command and
//! its inputs; `--jobs` never changes a byte.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::checker::is_admissible_graph;
use crate::enumerator::{sweep_parallel, CountLedger, SweepMode, SweepPartition};
use crate::error::{Error, Result};
use crate::geometry::{rank_complex, Complex};
use crate::linalg::{incidence_determinant, incidence_rank};
use crate::scrapbook::{build_scrapbook, parse_cplx, parse_inline};
use crate::taxonomy::{classify, formula_ledger, verify_lemmas, ComplexProfile};
use crate::transform::{kernel_basis, round_trip_suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "admissible",
    version,
    about = "Enumerate, verify and classify admissible line complexes on the 8-point space F_2^3"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for sweeps; output does not depend on this.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub jobs: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Graph oracle only. Non-authoritative; rejected by `verify`.
    #[arg(long, global = true)]
    pub fast: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep every complex and print the count ledger.
    Enumerate,
    /// Full dual-oracle sweep plus every closed-form count; exit 1 on any mismatch.
    Verify,
    /// Classify one complex, given as a .cplx file or inline as "0 1,1 2,...".
    Classify { input: String },
    /// Write representatives of every class as .dot, .tex and .cplx files.
    Scrapbook {
        #[arg(long, default_value = "scrapbook")]
        out: PathBuf,
        #[arg(long = "per-label", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        per_label: u64,
    },
    /// Seeded reconstruction and kernel property suite.
    Recon {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Print every closed-form count with its expression.
    Formulas,
}

/// A rectangular result: rendered as a JSON array of objects or as a
/// delimited table with a header row.
struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn key_value(rows: Vec<(String, String)>) -> Self {
        Table {
            headers: vec!["key", "value"],
            rows: rows.into_iter().map(|(k, v)| vec![k, v]).collect(),
        }
    }

    fn write(&self, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
        match format {
            OutputFormat::Json => {
                let items: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let m: Map<String, Value> = self
                            .headers
                            .iter()
                            .zip(r)
                            .map(|(h, v)| (h.to_string(), json_scalar(v)))
                            .collect();
                        Value::Object(m)
                    })
                    .collect();
                write_json(&Value::Array(items), out)
            }
            OutputFormat::Csv | OutputFormat::Tsv => {
                let delimiter = if format == OutputFormat::Csv { b',' } else { b'\t' };
                let mut w = csv::WriterBuilder::new().delimiter(delimiter).from_writer(out);
                w.write_record(&self.headers).map_err(csv_err)?;
                for r in &self.rows {
                    w.write_record(r).map_err(csv_err)?;
                }
                w.flush()?;
                Ok(())
            }
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Integers stay integers in JSON; everything else is a string.
fn json_scalar(v: &str) -> Value {
    match v {
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => v
            .parse::<u64>()
            .map(Value::from)
            .or_else(|_| v.parse::<i64>().map(Value::from))
            .unwrap_or_else(|_| Value::String(v.to_string())),
    }
}

fn write_json(v: &Value, out: &mut dyn Write) -> Result<()> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn write_ledger(ledger: &CountLedger, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        OutputFormat::Json => write_json(&ledger.to_json(), out),
        _ => Table::key_value(ledger.rows()).write(format, out),
    }
}

fn read_complex(input: &str) -> Result<Complex> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        Ok(parse_cplx(&text)?.complex)
    } else {
        parse_inline(input)
    }
}

fn classify_rows(c: Complex) -> Vec<(String, String)> {
    let profile = ComplexProfile::new(c);
    let verdict = is_admissible_graph(c);
    let omitted: Vec<String> = verdict.omitted_points.iter().map(u8::to_string).collect();
    let components: Vec<String> = profile
        .components
        .iter()
        .map(|s| {
            let pts: Vec<String> = s.points().iter().map(|p| p.value().to_string()).collect();
            match s.cycle_length {
                Some(len) => format!("{:?}[{}] cycle {len}", s.kind, pts.join(" ")),
                None => format!("{:?}[{}]", s.kind, pts.join(" ")),
            }
        })
        .collect();
    let mut rows = vec![
        ("admissible".to_string(), verdict.admissible.to_string()),
        ("bipartite_components".to_string(), verdict.bipartite_components.to_string()),
        ("complex".to_string(), c.to_string()),
        ("components".to_string(), components.join("; ")),
        ("determinant".to_string(), incidence_determinant(c).to_string()),
        ("diagnosis".to_string(), verdict.diagnosis()),
        ("kernel_dimension".to_string(), kernel_basis(c).len().to_string()),
        ("label".to_string(), classify(c).to_string()),
        ("omitted_points".to_string(), omitted.join(" ")),
        ("rank".to_string(), rank_complex(c).to_string()),
        ("incidence_rank".to_string(), incidence_rank(c).to_string()),
    ];
    rows.sort();
    rows
}

fn object(rows: Vec<(String, String)>) -> Value {
    Value::Object(rows.into_iter().map(|(k, v)| (k, json_scalar(&v))).collect())
}

fn write_rows(rows: Vec<(String, String)>, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        OutputFormat::Json => write_json(&object(rows), out),
        _ => Table::key_value(rows).write(format, out),
    }
}

fn run_verify(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let ledger = sweep_parallel(SweepPartition::full(), cli.jobs as usize, SweepMode::DualOracle);
    let report = verify_lemmas(&ledger);
    let opt = |v: Option<u64>| v.map_or(String::new(), |v| v.to_string());
    let table = Table {
        headers: vec!["check", "reported", "formula", "scale", "expected", "observed", "status"],
        rows: report
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.id.clone(),
                    opt(c.reported),
                    opt(c.formula),
                    c.scale.to_string(),
                    c.expected().to_string(),
                    c.observed.to_string(),
                    if c.passed() { "PASS" } else { "FAIL" }.to_string(),
                ]
            })
            .collect(),
    };
    let passed = report.all_passed();
    match cli.format {
        OutputFormat::Json => {
            let mut buf = Vec::new();
            table.write(OutputFormat::Json, &mut buf)?;
            let checks: Value =
                serde_json::from_slice(&buf).map_err(|e| Error::Io(e.to_string()))?;
            write_json(
                &json!({
                    "admissible": ledger.admissible,
                    "checks": checks,
                    "ledger": ledger.to_json(),
                    "passed": passed,
                    "total": ledger.total,
                }),
                out,
            )?;
        }
        _ => table.write(cli.format, out)?,
    }
    Ok(if passed { EXIT_OK } else { EXIT_MISMATCH })
}

/// Executes a parsed command, writing its result to `out`. Returns the exit
/// status; errors map to [`EXIT_USAGE`] in [`main_with_args`].
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let mode = if cli.fast {
        SweepMode::GraphOnly
    } else {
        SweepMode::DualOracle
    };
    match &cli.command {
        Command::Enumerate => {
            let ledger = sweep_parallel(SweepPartition::full(), cli.jobs as usize, mode);
            write_ledger(&ledger, cli.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify => {
            if cli.fast {
                return Err(Error::Parse {
                    line: 0,
                    message: "--fast is not allowed with verify".into(),
                });
            }
            run_verify(cli, out)
        }
        Command::Classify { input } => {
            let c = read_complex(input)?;
            let rows = classify_rows(c);
            if cli.format == OutputFormat::Json {
                let mut v = object(rows);
                v["omitted_points"] = json!(is_admissible_graph(c).omitted_points);
                write_json(&v, out)?;
            } else {
                write_rows(rows, cli.format, out)?;
            }
            Ok(EXIT_OK)
        }
        Command::Scrapbook { out: dir, per_label } => {
            let summary = build_scrapbook(dir, *per_label as usize)?;
            let table = Table {
                headers: vec!["label", "population", "representatives", "note"],
                rows: summary
                    .populations
                    .iter()
                    .zip(&summary.emitted)
                    .map(|(&(label, population), &(_, emitted))| {
                        let note = if (population as usize) < *per_label as usize {
                            format!("truncated: population {population} < {per_label}")
                        } else {
                            String::new()
                        };
                        vec![label.to_string(), population.to_string(), emitted.to_string(), note]
                    })
                    .collect(),
            };
            table.write(cli.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Recon { seed, samples } => {
            let r = round_trip_suite(*seed, *samples, *samples, *samples * 10);
            let rows = vec![
                ("admissible_sampled".to_string(), r.admissible_sampled.to_string()),
                ("cycle8_kernel_alternating".to_string(), r.cycle8_kernel_alternating.to_string()),
                ("inadmissible_sampled".to_string(), r.inadmissible_sampled.to_string()),
                ("kernel_dim_failures".to_string(), r.kernel_dim_failures.to_string()),
                ("kernel_dim_sampled".to_string(), r.kernel_dim_sampled.to_string()),
                ("kernel_failures".to_string(), r.kernel_failures.to_string()),
                ("passed".to_string(), r.passed().to_string()),
                ("round_trip_failures".to_string(), r.round_trip_failures.to_string()),
                ("seed".to_string(), r.seed.to_string()),
            ];
            write_rows(rows, cli.format, out)?;
            Ok(if r.passed() { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Formulas => {
            let table = Table {
                headers: vec!["id", "description", "expression", "value", "reported"],
                rows: formula_ledger()
                    .into_iter()
                    .map(|r| {
                        vec![
                            r.lemma_id.to_string(),
                            r.description.to_string(),
                            r.expression,
                            r.value.to_string(),
                            r.reported.to_string(),
                        ]
                    })
                    .collect(),
            };
            table.write(cli.format, out)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args`, runs, and reports errors on `err`. Returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(
            std::iter::once("admissible").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classify_eight_cycle() {
        let (code, out, _) = run_args(&["classify", "0 1,1 2,2 3,3 4,4 5,5 6,6 7,0 7"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["label"], "CYCLE_8");
        assert_eq!(v["admissible"], false);
        assert_eq!(v["determinant"], 0);
        assert_eq!(v["kernel_dimension"], 1);
    }

    #[test]
    fn classify_rejects_bad_lists() {
        let (code, _, err) = run_args(&["classify", "0 1,0 1,2 3,3 4,4 5,5 6,6 7,0 7"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("more than once"));
        let (code, _, _) = run_args(&["classify", "0 1,1 2"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_args(&["classify", "0 9,1 2,2 3,3 4,4 5,5 6,6 7,0 7"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn verify_rejects_fast() {
        let (code, _, err) = run_args(&["verify", "--fast"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--fast"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["enumerate", "--jobs", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["formulas", "--format", "xml"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn formulas_csv_quotes_expressions() {
        let (code, out, _) = run_args(&["formulas", "--format", "csv"]);
        assert_eq!(code, EXIT_OK);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("id,description,expression,value,reported"));
        assert_eq!(lines.count(), formula_ledger().len());
        assert!(out.contains("\"C(8,2)"));
    }

    #[test]
    fn json_scalars() {
        assert_eq!(json_scalar("12"), json!(12));
        assert_eq!(json_scalar("-2"), json!(-2));
        assert_eq!(json_scalar("true"), json!(true));
        assert_eq!(json_scalar("0 1"), json!("0 1"));
    }
}
