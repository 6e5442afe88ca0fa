use std::io::Write;

use clap::{Args, Subcommand};

use crate::fixtures::{cases, check_case, find, golden, Check};
use crate::output::{fixed, Cell, Report, Table};
use crate::{CliError, Ctx};

#[derive(Debug, Args)]
pub struct FixturesArgs {
    #[command(subcommand)]
    pub action: Action,
}

#[derive(Debug, Subcommand)]
pub enum Action {
    /// Fixture ids with their titles.
    List,
    /// Inputs and golden values of one fixture.
    Show { id: String },
    /// Recompute fixtures and compare them with the golden values.
    Run {
        /// Every fixture (the default when no id is given).
        #[arg(long)]
        all: bool,
        ids: Vec<String>,
    },
}

fn unknown(id: &str) -> CliError {
    CliError::usage(format!("unknown fixture `{id}`; see `geotopo fixtures list`"))
}

fn num(v: f64) -> String {
    format!("{v:.17e}")
}

pub fn run(ctx: &Ctx, a: &FixturesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let golden = golden()?;
    match &a.action {
        Action::List => {
            let mut t = Table::new("fixtures", &["id", "keys", "title"]);
            for c in cases() {
                let n = golden.iter().filter(|g| g.id == c.id).count();
                t.push(vec![Cell::text(c.id), Cell::Int(n as i64), Cell::text(c.title)]);
            }
            write(ctx, &Report::single(t), out)
        }
        Action::Show { id } => {
            let case = find(id).ok_or_else(|| unknown(id))?;
            let mut inputs = Table::new("inputs", &["name", "value"]);
            for (k, v) in case.inputs {
                inputs.push(vec![Cell::text(*k), Cell::text(*v)]);
            }
            let mut values = Table::new("golden", &["key", "value", "tolerance", "provenance", "oracle"]);
            for g in golden.iter().filter(|g| g.id == case.id) {
                values.push(vec![
                    Cell::text(&g.key),
                    Cell::text(num(g.value)),
                    Cell::text(format!("{:e}", g.tolerance)),
                    Cell::text(&g.provenance),
                    Cell::text(&g.oracle),
                ]);
            }
            write(ctx, &Report { tables: vec![inputs, values] }, out)
        }
        Action::Run { all, ids } => {
            let selected: Vec<_> = if *all || ids.is_empty() {
                cases().iter().collect()
            } else {
                ids.iter().map(|id| find(id).ok_or_else(|| unknown(id))).collect::<Result<_, _>>()?
            };
            let checks: Vec<Check> = selected.iter().flat_map(|c| check_case(c, &golden)).collect();
            if ctx.json {
                let mut t = Table::new("checks", &["status", "id", "key", "got", "expected", "tolerance", "provenance", "error"]);
                for c in &checks {
                    t.push(vec![
                        Cell::text(status(c)),
                        Cell::text(&c.id),
                        Cell::text(&c.key),
                        c.got.map_or(Cell::Empty, |g| Cell::Sci(g, 16)),
                        Cell::Sci(c.expected, 16),
                        Cell::Sci(c.tolerance, 3),
                        Cell::text(&c.provenance),
                        c.error.as_ref().map_or(Cell::Empty, Cell::text),
                    ]);
                }
                Report::single(t).write_json(out)?;
            } else {
                for c in &checks {
                    let got = c.got.map_or_else(|| "-".to_string(), num);
                    write!(out, "{} {} {} {} {} {}", status(c), c.id, c.key, got, num(c.expected), fixed_tol(c.tolerance))?;
                    if let Some(e) = &c.error {
                        write!(out, " ({e})")?;
                    }
                    writeln!(out)?;
                }
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            if !ctx.json {
                writeln!(out, "{} checks, {} passed, {} failed", checks.len(), checks.len() - failed, failed)?;
            }
            if failed > 0 {
                return Err(CliError::FixturesFailed { failed, total: checks.len() });
            }
            Ok(())
        }
    }
}

fn status(c: &Check) -> &'static str {
    if c.passed() {
        "PASS"
    } else {
        "FAIL"
    }
}

fn fixed_tol(t: f64) -> String {
    if t == 0.0 {
        fixed(0.0, 0)
    } else {
        format!("{t:e}")
    }
}

fn write(ctx: &Ctx, r: &Report, out: &mut dyn Write) -> Result<(), CliError> {
    if ctx.json {
        r.write_json(out)
    } else {
        r.write_csv(out)
    }
}
