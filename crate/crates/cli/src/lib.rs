// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: argument definitions, CSV emitters, run
//! manifests, decoder timing and SVG charts.

pub mod args;
pub mod bench;
pub mod commands;
pub mod grid;
pub mod manifest;
pub mod plot;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use surfham_core::Execution;

use crate::args::{Cli, Command};
use crate::manifest::{command_seed, default_manifest_path, RunManifest};

/// Worker count with 0 meaning every available core.
pub fn resolve_workers(workers: usize) -> usize {
    if workers == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        workers
    }
}

/// Runs one command and returns the text it produces.
pub fn execute(command: &Command, execution: Execution) -> Result<String> {
    match command {
        Command::Sweep(a) => commands::to_csv(&commands::sweep_rows(a, execution)?),
        Command::Threshold(a) => commands::threshold(a),
        Command::Correlations(a) => commands::correlations(a, execution),
        Command::Decay(a) => commands::decay(a, execution),
        Command::Perqubit(a) => commands::perqubit(a, execution),
        Command::Overhead(a) => commands::overhead_csv(a),
        Command::Logicals(a) => commands::logicals(a),
        Command::SurfaceRate(a) => commands::to_csv(&commands::surface_rate_rows(a, execution)?),
        Command::Bench(a) => {
            let pairs = bench::parse_pairs(&a.pairs)?;
            commands::to_csv(&bench::bench_decoders(&pairs, a.p, a.trials, a.warmup, a.seed)?)
        }
        Command::Plot(a) => {
            let text = std::fs::read_to_string(&a.input)
                .with_context(|| format!("reading {}", a.input.display()))?;
            plot::emit_svg(&text, &a.x, &a.y, a.group.as_deref())
        }
        Command::Replay(_) => bail!("replay cannot be nested"),
    }
}

/// Executes the parsed command line, writing output and, when an output
/// file is given, a manifest next to it.
pub fn run(cli: Cli) -> Result<()> {
    let workers = resolve_workers(cli.workers);
    let execution = Execution::with_workers(workers);
    let (command, out) = match cli.command {
        Command::Replay(r) => {
            let recorded = RunManifest::load(&r.manifest)?;
            let out = cli.out.or_else(|| recorded.outputs.first().cloned());
            (recorded.command, out)
        }
        other => (other, cli.out),
    };
    let started = chrono::Utc::now().to_rfc3339();
    let text = execute(&command, execution)?;
    let finished = chrono::Utc::now().to_rfc3339();
    let Some(out) = out else {
        std::io::stdout().write_all(text.as_bytes())?;
        if let Some(path) = cli.manifest {
            manifest_for(command, workers, started, finished, Vec::new()).save(&path)?;
        }
        return Ok(());
    };
    commands::write_text(&out, &text)?;
    let path: PathBuf = cli.manifest.unwrap_or_else(|| default_manifest_path(&out));
    manifest_for(command, workers, started, finished, vec![out]).save(&path)
}

fn manifest_for(
    command: Command,
    workers: usize,
    started: String,
    finished: String,
    outputs: Vec<PathBuf>,
) -> RunManifest {
    RunManifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        seed: command_seed(&command),
        command,
        workers,
        started,
        finished,
        outputs,
    }
}
