//! Reading command inputs from JSON files or shorthand strings.

use std::fs;
use std::path::Path;

use serde_json::Value;
use toric_workbench::io::{int_matrix_from_json, rat_matrix_from_json};
use toric_workbench::{
    boundary_of_simplex, cyclic_polytope_boundary, IntMatrix, RatMatrix, SimplicialComplex,
    Subtorus,
};

use crate::CliError;

fn read_json(path: &str) -> Result<Value, CliError> {
    let text =
        fs::read_to_string(Path::new(path)).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// A complex from a JSON file, or `cyclic:N:M` / `simplex-boundary:N`.
pub fn complex(source: &str) -> Result<SimplicialComplex, CliError> {
    let bad = |msg: String| CliError::Input(format!("{source}: {msg}"));
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad(format!("{s:?} is not a non-negative integer")))
    };
    if let Some(rest) = source.strip_prefix("cyclic:") {
        let (n, m) = rest
            .split_once(':')
            .ok_or_else(|| bad("expected cyclic:N:M".into()))?;
        return cyclic_polytope_boundary(parse(n)?, parse(m)?).map_err(|e| bad(e.to_string()));
    }
    if let Some(n) = source.strip_prefix("simplex-boundary:") {
        return Ok(boundary_of_simplex(parse(n)?));
    }
    serde_json::from_value(read_json(source)?).map_err(|e| bad(e.to_string()))
}

pub fn int_matrix(path: &str) -> Result<IntMatrix, CliError> {
    int_matrix_from_json(&read_json(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

pub fn rat_matrix(path: &str) -> Result<RatMatrix, CliError> {
    rat_matrix_from_json(&read_json(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

pub fn subtorus(path: &str) -> Result<Subtorus, CliError> {
    serde_json::from_value(read_json(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

pub fn entry_set(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Input(format!("entry set: {s:?} is not an integer")))
        })
        .collect()
}
