use std::io::Read;
use std::path::PathBuf;

use cubic_cover::enumerate::{enumerate_cubic_vec, EnumMode};
use cubic_cover::generators::{self, GadgetMap};
use cubic_cover::{graph6, Graph};

use crate::args::{Args, Named};
use crate::error::CliError;

pub struct Input {
    pub source: String,
    pub graph: Graph,
    pub gadget: Option<GadgetMap>,
}

impl Input {
    fn plain(source: String, graph: Graph) -> Self {
        Input { source, graph, gadget: None }
    }
}

pub fn named(which: Named) -> (&'static str, Graph) {
    match which {
        Named::Petersen => ("petersen", generators::petersen()),
        Named::K4 => ("k4", generators::k4()),
        Named::K33 => ("k33", generators::k33()),
        Named::Prism => ("prism", generators::prism()),
    }
}

/// Reads graph6 lines; malformed lines go to `skipped` unless `strict`.
pub fn read_graph6(path: &PathBuf, strict: bool, out: &mut Vec<Input>, skipped: &mut Vec<CliError>) -> Result<(), CliError> {
    let mut text = String::new();
    let shown = path.display().to_string();
    if shown == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(CliError::io(path))?;
    } else {
        text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    }
    for (line, parsed) in graph6::decode_lines(&text) {
        match parsed {
            Ok(g) => out.push(Input::plain(format!("{shown}:{line}"), g)),
            Err(source) => {
                let err = CliError::Malformed { path: shown.clone(), line, source };
                if strict {
                    return Err(err);
                }
                skipped.push(err);
            }
        }
    }
    Ok(())
}

/// All inputs in a fixed order: files, builtins, gadgets, rings, random,
/// enumerated.
pub fn collect(args: &Args, files: &[PathBuf]) -> Result<(Vec<Input>, Vec<CliError>), CliError> {
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for f in files {
        read_graph6(f, args.strict, &mut out, &mut skipped)?;
    }
    for &b in &args.builtin {
        let (name, g) = named(b);
        out.push(Input::plain(format!("builtin:{name}"), g));
    }
    for &b in &args.gadget {
        let (name, base) = named(b);
        let (h, map) = generators::k4minus_blowup(&base)?;
        out.push(Input { source: format!("gadget:{name}"), graph: h, gadget: Some(map) });
    }
    for &k in &args.ring {
        out.push(Input::plain(format!("ring:{k}"), generators::petersen_ring(k)?));
    }
    for (n, count) in args.random_specs() {
        for i in 0..count {
            let seed = args.seed.wrapping_add(i as u64);
            out.push(Input::plain(format!("random:{n}:{seed}"), generators::random_cubic(n, seed)?));
        }
    }
    for &n in &args.enumerate {
        for (i, g) in enumerate_cubic_vec(n, EnumMode::BreadthFirst, args.biconnected)?.into_iter().enumerate() {
            out.push(Input::plain(format!("enumerate:{n}:{i}"), g));
        }
    }
    Ok((out, skipped))
}
