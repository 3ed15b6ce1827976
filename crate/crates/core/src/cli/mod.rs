//! Command-line front end. [`run`] returns the process exit code:
//! 0 when every requested check passed, 1 when a check failed, 2 on bad input.

pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand};

use crate::catalog;
use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::format::{read_model_file, write_model};
use crate::harness::{run_harness, HarnessConfig};
use crate::jet::{char_variety_test, degree_bounds, solve_jet_system, truncation_report, two_jet_kernel_dimension, Route};
use crate::model::QuadricModel;
use crate::nondegeneracy::{classify, ClassifyOptions};
use crate::random::random_model;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "quadric-cr", version, about = "Exact analysis of quadric CR models")]
pub struct RunConfig {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for `harness` and `random`.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Largest degree searched for a relation on the sesquilinear image.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub relation_degree: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every nondegeneracy condition.
    Classify {
        /// Model file path or `catalog:NAME`.
        input: String,
    },
    /// Solve for infinitesimal automorphisms up to a total degree.
    Aut {
        input: String,
        #[arg(long, default_value_t = 5)]
        cap: usize,
        #[arg(long, default_value = "direct")]
        route: String,
    },
    /// Decide whether a covector is characteristic.
    Charvar {
        input: String,
        /// Comma-separated Gaussian rationals, e.g. "1,0,1/2-i".
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
    },
    /// Built-in example models.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check the implications between conditions on random models.
    Harness {
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        d_max: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
        bound: i64,
    },
    /// Print a random model file.
    Random {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
        bound: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Show { name: String },
}

/// `catalog:NAME` or a path to a model file.
pub fn load_input(input: &str) -> Result<QuadricModel> {
    match input.strip_prefix("catalog:") {
        Some(name) => catalog::get(name).map(|e| e.model),
        None => read_model_file(Path::new(input)),
    }
}

pub fn parse_zeta(s: &str) -> Result<Vec<GaussianRational>> {
    s.split(',')
        .map(|c| c.parse().map_err(|e| Error::Usage(format!("malformed zeta component `{}`: {e}", c.trim()))))
        .collect()
}

fn emit(out: &mut dyn Write, json: bool, value: &serde_json::Value, text: impl FnOnce(&serde_json::Value) -> String) {
    let s = if json {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        text(value)
    };
    // a closed stdout is not worth a panic
    let _ = writeln!(out, "{s}");
}

fn execute(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match &cfg.command {
        Command::Classify { input } => {
            let model = load_input(input)?;
            let options = ClassifyOptions {
                relation_degree: cfg.relation_degree as usize,
            };
            let report = classify(&model, options);
            emit(out, cfg.json, &render::classification(&report), render::classification_text);
            Ok(EXIT_OK)
        }
        Command::Aut { input, cap, route } => {
            let route: Route = route.parse()?;
            if *cap < 2 {
                return Err(Error::Usage(format!("--cap must be at least 2, got {cap}")));
            }
            let model = load_input(input)?;
            let space = solve_jet_system(&model, *cap, route);
            let previous = solve_jet_system(&model, cap - 1, route).dimension;
            let stabilization = [(cap - 1, previous), (*cap, space.dimension)];
            let report = render::AutReport {
                space: &space,
                bounds: &degree_bounds(&space),
                stabilization: &stabilization,
                truncation: &truncation_report(&space),
                two_jet_kernel: two_jet_kernel_dimension(&space),
            };
            let ok = report.bounds.passes() && report.stable();
            emit(out, cfg.json, &render::aut(&report), render::aut_text);
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Charvar { input, zeta } => {
            let zeta = parse_zeta(zeta)?;
            let model = load_input(input)?;
            let characteristic = char_variety_test(&model, &zeta).map_err(|e| Error::Usage(format!("zeta: {e}")))?;
            emit(out, cfg.json, &render::charvar(&zeta, characteristic), render::charvar_text);
            Ok(EXIT_OK)
        }
        Command::Catalog { action } => {
            match action {
                CatalogAction::List => {
                    emit(out, cfg.json, &render::catalog_list(&catalog::entries()), render::catalog_list_text);
                }
                CatalogAction::Show { name } => {
                    let entry = catalog::get(name)?;
                    let _ = write!(out, "{}", write_model(&entry.model));
                }
            }
            Ok(EXIT_OK)
        }
        Command::Harness {
            count,
            n_max,
            d_max,
            bound,
        } => {
            let summary = run_harness(&HarnessConfig {
                count: *count as usize,
                n_max: *n_max as usize,
                d_max: *d_max as usize,
                bound: *bound,
                seed: cfg.seed,
            });
            emit(out, cfg.json, &render::harness(&summary), |_| summary.to_string());
            Ok(if summary.total_violations() == 0 { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Random { n, d, bound } => {
            let model = random_model(*n as usize, *d as usize, *bound, cfg.seed);
            let _ = write!(out, "{}", write_model(&model));
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cfg, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("quadric-cr").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn zeta_parsing() {
        assert_eq!(parse_zeta("1, 0 ,1/2-i").unwrap().len(), 3);
        assert!(matches!(parse_zeta("1,,2"), Err(Error::Usage(_))));
    }

    #[test]
    fn classify_text_and_json_agree() {
        let (code, text, _) = call(&["classify", "catalog:beloshapka-c6-codim3"]);
        assert_eq!(code, 0);
        let (_, json, _) = call(&["--json", "classify", "catalog:beloshapka-c6-codim3"]);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(render::classification_text(&v), text.trim_end());
        assert_eq!(v["tumanov"]["holds"], false);
        assert_eq!(v["beloshapka_nondegenerate"], true);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["aut", "catalog:hyperquadric-c2", "--cap", "1"]).0, 2);
        assert_eq!(call(&["aut", "catalog:hyperquadric-c2", "--route", "sideways"]).0, 2);
        assert_eq!(call(&["charvar", "catalog:hyperquadric-c2", "--zeta", "x"]).0, 2);
        assert_eq!(call(&["charvar", "catalog:hyperquadric-c2", "--zeta", "1,2"]).0, 2);
        assert_eq!(call(&["catalog", "show", "nosuch"]).0, 2);
        assert_eq!(call(&["classify", "/nonexistent/model.json"]).0, 2);
        assert_eq!(call(&["harness", "--count", "0"]).0, 2);
        assert_eq!(call(&["--bogus"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
