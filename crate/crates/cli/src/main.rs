use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use robinhood_cli::{
    engine_with_cap, eval_report, hotstrat_listing, parse_expr, path_listing, thermograph_json,
    thermograph_of, EvalFlags,
};
use robinhood_core::svg::render_svg;
use robinhood_core::verify::{self, hotstrat_demo, Suite, VerifyOptions};
use robinhood_core::{Player, RHPosition};

/// Robin Hood and Little John heaps: values, thermographs and checks.
#[derive(Parser)]
#[command(name = "robinhood", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a sum such as `9;3,2 + lj:4;2,1 + 3/2`.
    Eval {
        expr: String,
        #[arg(long)]
        stops: bool,
        #[arg(long)]
        outcome: bool,
        #[arg(long)]
        canonical: bool,
        #[arg(long)]
        temp: bool,
        #[arg(long)]
        mean: bool,
        /// Print a JSON object instead of `key: value` lines.
        #[arg(long)]
        json: bool,
    },
    /// Thermograph of a single heap or number.
    Thermo {
        expr: String,
        #[arg(long)]
        json: bool,
        /// Write an SVG rendering to this file.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Run a verification suite; exits nonzero if any check fails.
    Verify {
        /// table1, table2, main-theorem, stops, monotonicity, hotstrat or all
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_wealth: u32,
        #[arg(long, default_value_t = 12)]
        margin: u32,
        #[arg(long, default_value_t = 5)]
        window: u32,
        #[arg(long)]
        json: bool,
    },
    /// Follow the Little John line of play from a position.
    Path {
        position: String,
        #[arg(long, value_enum)]
        start: Side,
    },
    /// Show a sum where moving in the hotter heap loses.
    HotstratDemo,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "L", alias = "left")]
    L,
    #[value(name = "R", alias = "right")]
    R,
}

fn store_cap() -> Option<String> {
    std::env::var("RH_STORE_CAP").ok()
}

fn run(cli: Cli) -> Result<bool> {
    let cap = store_cap();
    match cli.command {
        Command::Eval {
            expr,
            stops,
            outcome,
            canonical,
            temp,
            mean,
            json,
        } => {
            let expr = parse_expr(&expr)?;
            let mut engine = engine_with_cap(cap.as_deref())?;
            let flags = EvalFlags {
                stops,
                outcome,
                canonical,
                temp,
                mean,
            };
            let lines = eval_report(&mut engine, &expr, flags)?;
            if json {
                let map: serde_json::Map<String, serde_json::Value> = lines
                    .into_iter()
                    .map(|(k, v)| (k, serde_json::Value::String(v)))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&map)?);
            } else {
                for (k, v) in lines {
                    println!("{k}: {v}");
                }
            }
        }
        Command::Thermo { expr, json, svg } => {
            let expr = parse_expr(&expr)?;
            let mut engine = engine_with_cap(cap.as_deref())?;
            let t = thermograph_of(&mut engine, &expr)?;
            if let Some(path) = svg {
                std::fs::write(&path, render_svg(&t))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if json {
                println!("{}", thermograph_json(&t));
            } else {
                println!("temperature: {}\nmean: {}\nclass: {}", t.temperature, t.mean, t.classify());
                let fmt = |pts: Vec<_>| {
                    pts.iter()
                        .map(|(p, x)| format!("({x},{p})"))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                println!("left wall (x,p): {}", fmt(t.left.points()));
                println!("right wall (x,p): {}", fmt(t.right.points()));
            }
        }
        Command::Verify {
            suite,
            max_wealth,
            margin,
            window,
            json,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(anyhow::Error::msg)?]
            };
            let cap = match cap {
                Some(text) => Some(
                    text.trim()
                        .parse::<usize>()
                        .with_context(|| format!("RH_STORE_CAP must be a positive integer, got {text:?}"))?,
                ),
                None => None,
            };
            let opts = VerifyOptions {
                max_wealth,
                margin,
                window,
                store_cap: cap,
            };
            let mut all_passed = true;
            let mut reports = Vec::new();
            for s in suites {
                let report = verify::run(s, &opts)?;
                all_passed &= report.passed();
                if !json {
                    println!("{report}");
                }
                reports.push(report);
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&reports)?);
            }
            return Ok(all_passed);
        }
        Command::Path { position, start } => {
            let pos: RHPosition = position.parse().map_err(anyhow::Error::msg)?;
            let starter = match start {
                Side::L => Player::Left,
                Side::R => Player::Right,
            };
            print!("{}", path_listing(pos, starter).1);
        }
        Command::HotstratDemo => {
            let mut engine = engine_with_cap(cap.as_deref())?;
            let demo = hotstrat_demo(&mut engine)?;
            print!("{}", hotstrat_listing(&demo));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
