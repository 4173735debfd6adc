//! Parsing of command-line values and input files.

use std::path::Path;

use durfee_core::catalog::catalog_system;
use durfee_core::rational::parse_rat;
use durfee_core::system::RatJson;
use durfee_core::ucpf::UcpfSpec;
use durfee_core::{Bound, DurfeeSystem, Rat, RationalMatrix};
use serde::Deserialize;

use crate::Failure;

/// Reads `arg` as a file when one exists, otherwise as inline JSON.
fn read_json_text(arg: &str) -> Result<String, Failure> {
    if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("cannot read {arg}: {e}")))
    } else if arg.trim_start().starts_with(['{', '[']) {
        Ok(arg.to_string())
    } else {
        Err(Failure::Input(format!("`{arg}` is neither a catalog name, a file, nor inline JSON")))
    }
}

pub fn is_catalog_name(arg: &str) -> bool {
    arg.starts_with("theorem") || arg == "expansion"
}

/// A catalog name such as `theorem3.3:2`, a JSON file, or inline JSON.
pub fn load_system(arg: &str) -> Result<DurfeeSystem, Failure> {
    if is_catalog_name(arg) {
        return catalog_system(arg).map_err(Failure::from);
    }
    DurfeeSystem::from_json_str(&read_json_text(arg)?).map_err(Failure::from)
}

pub enum UcpfInput {
    Spec(UcpfSpec),
    System(DurfeeSystem),
}

/// A UCPF spec (recognized by its `u` field) or anything [`load_system`] takes.
pub fn load_ucpf_input(arg: &str) -> Result<UcpfInput, Failure> {
    if is_catalog_name(arg) {
        return load_system(arg).map(UcpfInput::System);
    }
    let text = read_json_text(arg)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))?;
    if value.get("u").is_some() {
        UcpfSpec::from_json_str(&text).map(UcpfInput::Spec).map_err(Failure::from)
    } else {
        DurfeeSystem::from_json_str(&text).map(UcpfInput::System).map_err(Failure::from)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixJson {
    Bare(Vec<Vec<RatJson>>),
    Wrapped {
        #[serde(rename = "K")]
        k: Vec<Vec<RatJson>>,
    },
}

/// `[[1,1],[1,2]]` or `{"K": [[1,1],[1,2]]}`, from a file or inline.
pub fn load_matrix(arg: &str) -> Result<RationalMatrix, Failure> {
    let text = read_json_text(arg)?;
    let json: MatrixJson = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid matrix: {e}")))?;
    let rows = match json {
        MatrixJson::Bare(r) | MatrixJson::Wrapped { k: r } => r,
    };
    let rows = rows
        .iter()
        .map(|r| r.iter().map(RatJson::value).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    RationalMatrix::new(rows).map_err(Failure::from)
}

pub fn parse_cutoff(s: &str) -> Result<Rat, String> {
    let r = parse_rat(s).map_err(|e| e.to_string())?;
    if r < Rat::from_integer(0) {
        return Err(format!("cutoff must be non-negative, got {s}"));
    }
    Ok(r)
}

/// One M-vector such as `inf,2`.
pub fn parse_bounds(s: &str) -> Result<Vec<Bound>, String> {
    s.split(',').map(|t| t.trim().parse::<Bound>().map_err(|e| e.to_string())).collect()
}

/// `a,b` with both positive.
pub fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let v: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| format!("`{t}` is not a non-negative integer")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a, b] if a > 0 && b > 0 => Ok((a, b)),
        _ => Err(format!("expected two positive integers a,b, got `{s}`")),
    }
}
