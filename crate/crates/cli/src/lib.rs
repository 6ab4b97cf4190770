//! Library side of the `semitoric` command-line tool.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use anyhow::Result;

use config::{resolve, Cli, Command, CommandKind};

/// Exit codes of the binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok = 0,
    ConfigError = 1,
    Degenerate = 2,
    VerifyFailed = 3,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let (kind, args) = match &cli.command {
        Command::Verify(v) => {
            let checks = verify::run_checks(v.quick, v.inject_fault);
            for c in &checks {
                println!("{c}");
            }
            let failed: Vec<&str> = checks
                .iter()
                .filter(|c| !c.passed())
                .map(|c| c.name)
                .collect();
            if failed.is_empty() {
                println!("all {} checks passed", checks.len());
                return Ok(Outcome::Ok);
            }
            eprintln!("failed checks: {}", failed.join(", "));
            return Ok(Outcome::VerifyFailed);
        }
        Command::Classify(a) => (CommandKind::Classify, a),
        Command::Sweep(a) => (CommandKind::Sweep, a),
        Command::Gamma(a) => (CommandKind::Gamma, a),
        Command::Image(a) => (CommandKind::Image, a),
        Command::Polygon(a) => (CommandKind::Polygon, a),
    };
    let cfg = resolve(kind, args)?;
    let mut outcome = Outcome::Ok;
    let table = match kind {
        CommandKind::Classify => {
            let (table, degenerate) = commands::cmd_classify(&cfg)?;
            if degenerate {
                outcome = Outcome::Degenerate;
            }
            table
        }
        CommandKind::Sweep => commands::cmd_sweep(&cfg)?,
        CommandKind::Gamma => commands::cmd_gamma(&cfg)?,
        CommandKind::Image => commands::cmd_image(&cfg)?,
        CommandKind::Polygon => commands::cmd_polygon(&cfg)?,
    };
    let bytes = output::render(&table, &cfg)?;
    output::emit(&bytes, cfg.out.as_deref())?;
    Ok(outcome)
}
