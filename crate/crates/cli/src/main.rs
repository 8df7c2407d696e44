//! `origami-lab` command-line front end.

mod args;
mod commands;
mod manifest;
mod sources;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use commands::{Context, Failure, Outcome, Output};
use manifest::{differing, reproducible_argv, sha256_hex, Manifest};
use sources::Inputs;

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let raw: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&raw) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = configure_threads(cli.threads).and_then(|()| execute(&cli, &raw[1..]));
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            1
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("error: ManifestMismatch: {m}");
            1
        }
    }
}

fn configure_threads(threads: Option<usize>) -> Outcome<()> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(Failure::Usage("--threads must be positive".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    Ok(())
}

fn command_name(argv: &[String]) -> String {
    argv.iter().filter(|a| !a.starts_with('-')).take(2).cloned().collect::<Vec<_>>().join(" ")
}

fn hashes(out: &Output) -> BTreeMap<String, String> {
    out.artifacts.iter().map(|(n, c)| (n.clone(), sha256_hex(c.as_bytes()))).collect()
}

fn print_summary(s: &str) {
    if s.ends_with('\n') {
        print!("{s}");
    } else {
        println!("{s}");
    }
}

fn write_artifacts(dir: &Path, out: &Output, manifest: &Manifest) -> Outcome<std::path::PathBuf> {
    let io = |e: std::io::Error| Failure::Domain(origami_lab::Error::Io(format!("{}: {e}", dir.display())));
    std::fs::create_dir_all(dir).map_err(io)?;
    for (name, content) in &out.artifacts {
        std::fs::write(dir.join(name), content).map_err(io)?;
    }
    let path = dir.join(manifest::FILE_NAME);
    std::fs::write(&path, manifest.to_json()).map_err(io)?;
    Ok(path)
}

fn execute(cli: &Cli, raw_args: &[String]) -> Outcome<()> {
    if let Command::Rerun(r) = &cli.command {
        return rerun(cli, &r.manifest);
    }
    if matches!(cli.command, Command::Export(_)) && cli.out.is_none() {
        return Err(Failure::Usage("export needs --out".into()));
    }
    let start = Instant::now();
    let mut ctx = Context { seed: cli.seed, format: cli.format, inputs: Inputs::default() };
    let out = ctx.run(&cli.command)?;
    let argv = reproducible_argv(raw_args);
    let manifest = Manifest {
        schema: manifest::SCHEMA.into(),
        command: command_name(&argv),
        parameters: serde_json::to_value(&cli.command).expect("arguments serialize"),
        argv,
        seed: cli.seed,
        threads: cli.threads,
        version: env!("CARGO_PKG_VERSION").into(),
        inputs: ctx.inputs.hashes,
        outputs: hashes(&out),
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    print_summary(&out.summary);
    if let Some(dir) = &cli.out {
        let path = write_artifacts(dir, &out, &manifest)?;
        eprintln!("manifest: {}", path.display());
    }
    Ok(())
}

fn rerun(cli: &Cli, path: &Path) -> Outcome<()> {
    let start = Instant::now();
    let old = Manifest::load(path).map_err(|e| Failure::Domain(origami_lab::Error::Parse(e)))?;
    let program = std::iter::once("origami-lab".to_string());
    let inner = Cli::try_parse_from(program.chain(old.argv.iter().cloned()))
        .map_err(|e| Failure::Mismatch(format!("recorded arguments no longer parse: {e}")))?;
    if matches!(inner.command, Command::Rerun(_)) {
        return Err(Failure::Mismatch("manifest records a rerun".into()));
    }
    let mut ctx = Context { seed: inner.seed, format: inner.format, inputs: Inputs::default() };
    let out = ctx.run(&inner.command)?;
    let outputs = hashes(&out);
    let manifest = Manifest {
        wall_time_seconds: start.elapsed().as_secs_f64(),
        threads: cli.threads,
        inputs: ctx.inputs.hashes,
        outputs,
        ..old.clone()
    };
    if let Some(dir) = &cli.out {
        let p = write_artifacts(dir, &out, &manifest)?;
        eprintln!("manifest: {}", p.display());
    }
    let mut bad = differing(&old.inputs, &manifest.inputs);
    bad.extend(differing(&old.outputs, &manifest.outputs));
    if !bad.is_empty() {
        return Err(Failure::Mismatch(format!("hashes differ for {}", bad.join(", "))));
    }
    println!("identical: {} outputs match {}", manifest.outputs.len(), path.display());
    Ok(())
}
