//! Drives the command layer in-process: a classify sweep written as a
//! `twistgab/1` report.

use std::io::Write;

use clap::Parser;
use twistgab::cli::{execute, Cli};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let field = dir.path().join("field.json");
    let sweep = dir.path().join("sweep.json");
    std::fs::write(&field, r#"{"p": 3, "m": 3}"#)?;
    std::fs::write(
        &sweep,
        r#"{"n": 3, "k": [1, 2], "h": [0, 1], "ts": [[0]], "etas": "all"}"#,
    )?;

    let cli = Cli::try_parse_from([
        "twistgab".as_ref(),
        "classify".as_ref(),
        "--field".as_ref(),
        field.as_os_str(),
        "--sweep".as_ref(),
        sweep.as_os_str(),
    ])?;
    let (report, code) = execute(&cli)?;
    let rows = report["table"].as_array().map_or(0, Vec::len);
    let mrd = report["table"]
        .as_array()
        .into_iter()
        .flatten()
        .filter(|r| r["is_mrd"] == true)
        .count();
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "schema {}, exit {code}, {rows} codes, {mrd} MRD",
        report["schema"]
    )?;
    Ok(())
}
