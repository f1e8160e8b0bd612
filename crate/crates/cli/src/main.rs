//! `realexp`: construct complexes, compute cellwise homology, issue
//! certificates and query exponent groups from the command line.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format};
use realexp::boxmod::FieldConfig;
use realexp::{Error, Result};

const SCHEMA_VERSION: &str = "1";

fn provenance(field: &FieldConfig, command: &str, parameters: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "engine_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "field": field.to_string(),
        "parameters": parameters,
    })
}

fn dispatch(cli: &Cli, field: FieldConfig) -> Result<(&'static str, Value, commands::Output)> {
    Ok(match &cli.command {
        Command::Construct(a) => ("construct", to(a), commands::construct(a)?),
        Command::Homology(a) => ("homology", to(a), commands::homology(a, field)?),
        Command::Tor(a) => ("tor", to(a), commands::tor(a)?),
        Command::ExtCert(a) => ("ext-cert", to(a), commands::ext_cert(a, field)?),
        Command::Presolve(a) => ("presolve", to(a), commands::presolve(a)?),
        Command::Group(a) => ("group", to(a), commands::group(a)?),
        Command::Selftest(a) => ("selftest", to(a), commands::selftest(a, cli.global.seed)?),
    })
}

fn to<T: serde::Serialize>(args: &T) -> Value {
    serde_json::to_value(args).unwrap_or(Value::Null)
}

fn render(cli: &Cli, field: FieldConfig) -> Result<(String, bool)> {
    let (command, parameters, out) = dispatch(cli, field)?;
    let mut parameters = parameters;
    if let Value::Object(map) = &mut parameters {
        map.insert("seed".into(), json!(cli.global.seed));
    }
    let header = provenance(&field, command, parameters);
    let text = match cli.global.format {
        Format::Json => {
            let doc = json!({"provenance": header, "result": out.json});
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv | Format::Grid => {
            let body = if cli.global.format == Format::Csv {
                out.csv
            } else {
                out.grid
            };
            let body = body.ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "format {:?} is not available for {command}",
                    cli.global.format
                ))
            })?;
            format!("# {}\n{body}", serde_json::to_string(&header)?)
        }
    };
    Ok((text, out.success))
}

fn run(cli: &Cli) -> Result<bool> {
    let field: FieldConfig = cli.global.field.parse()?;
    if cli.global.jobs > 0 {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.jobs)
            .build_global();
    }
    let (text, success) = render(cli, field)?;
    match &cli.global.output {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))
        })?,
        None => print!("{text}"),
    }
    Ok(success)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let err = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            eprintln!("{err}");
            ExitCode::from(1)
        }
    }
}
