mod args;
mod error;
mod input;
mod run;
mod sink;

use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;

use args::{Args, Mode};
use error::CliError;
use run::{derive_seed, Record, Settings};
use sink::{Cache, Row};

const EXIT_VIOLATION: u8 = 1;
const EXIT_ERROR: u8 = 2;

fn execute(args: &Args) -> Result<bool, CliError> {
    let (mode, files) = args.resolve().map_err(CliError::Usage)?;
    if !args.random.len().is_multiple_of(2) {
        return Err(CliError::Usage("--random takes N and COUNT".into()));
    }
    let (inputs, skipped) = input::collect(args, &files)?;
    for e in &skipped {
        eprintln!("skipped {e}");
    }
    if inputs.is_empty() {
        return Err(CliError::Usage("no input graphs".into()));
    }
    let settings = Settings { exact_cap: args.exact_cap, time_budget: args.time_budget, restarts: args.restarts };
    let cache = if args.no_cache { None } else { Some(Cache::open(&args.out, &settings)?) };

    let work = || -> Vec<(Record, bool)> {
        inputs
            .par_iter()
            .enumerate()
            .map(|(i, input)| {
                let seed = derive_seed(args.seed, i);
                let key = cache.as_ref().map(|c| c.key(&cubic_cover::graph6::encode(&input.graph), mode.name(), seed));
                if let (Some(c), Some(k)) = (&cache, &key) {
                    if let Some(hit) = c.get(k) {
                        return (hit, true);
                    }
                }
                let rec = run::run(input, mode, seed, &settings);
                if let (Some(c), Some(k)) = (&cache, &key) {
                    if let Err(e) = c.put(k, &rec) {
                        eprintln!("cache write failed: {e}");
                    }
                }
                (rec, false)
            })
            .collect()
    };
    let done = match args.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(work),
        None => work(),
    };

    let rows: Vec<Row> = inputs.iter().zip(&done).map(|(inp, (rec, cached))| Row { source: &inp.source, record: rec, cached: *cached }).collect();
    let csv = sink::write_reports(&args.out, &rows)?;
    print!("{csv}");
    if mode == Mode::Generate {
        let path = sink::write_graph6(&args.out, &done.iter().map(|(r, _)| r).collect::<Vec<_>>())?;
        eprintln!("wrote {}", path.display());
    }

    let mut clean = true;
    for (inp, (rec, _)) in inputs.iter().zip(&done) {
        if rec.bound_violation {
            eprintln!("bound violation: {} ({}), record in results.jsonl", inp.source, rec.graph6);
            clean = false;
        }
        if let Some(f) = &rec.invariant_failure {
            eprintln!("invariant failure: {} ({}): {f}", inp.source, rec.graph6);
            clean = false;
        }
    }
    Ok(clean)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VIOLATION),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
