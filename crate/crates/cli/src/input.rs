//! Argument loading: each document argument is inline JSON or a file path.

use std::fs;

use qmat_core::io::{MatrixDoc, QMatroidDoc, SubspaceDoc};
use qmat_core::{Budget, Error, ExtField, Matrix, QMatroid, Subspace};

use crate::commands::Failure;

pub fn parse_budget(s: &str) -> Result<Budget, Failure> {
    match s {
        "cli" => Ok(Budget::CLI),
        "default" => Ok(Budget::DEFAULT),
        "vamos" => Ok(Budget::VAMOS),
        "unlimited" => Ok(Budget::UNLIMITED),
        n => n
            .replace('_', "")
            .parse()
            .map(Budget::new)
            .map_err(|_| Failure::input(format!("bad budget {s:?}"))),
    }
}

fn load(arg: &str) -> Result<serde_json::Value, Failure> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{arg}: {e}")))
}

pub fn qmatroid_doc(arg: &str) -> Result<QMatroidDoc, Failure> {
    serde_json::from_value(load(arg)?).map_err(|e| Failure::input(format!("{arg}: {e}")))
}

pub fn qmatroid(arg: &str, budget: Budget) -> Result<QMatroid, Failure> {
    Ok(qmatroid_doc(arg)?.build(budget)?)
}

/// A subspace document, or a bare list of spanning vectors in the ambient
/// space of `m`.
pub fn subspace(arg: &str, m: &QMatroid) -> Result<Subspace, Failure> {
    let value = load(arg)?;
    let s = if value.is_array() {
        let vectors: Vec<Vec<u8>> =
            serde_json::from_value(value).map_err(|e| Failure::input(format!("{arg}: {e}")))?;
        Subspace::span(m.q(), m.n(), &vectors)?
    } else {
        let doc: SubspaceDoc =
            serde_json::from_value(value).map_err(|e| Failure::input(format!("{arg}: {e}")))?;
        doc.build()?
    };
    s.check_same_ambient(&m.ground())?;
    Ok(s)
}

pub fn matrix(arg: &str, modulus: Option<&[u32]>) -> Result<(ExtField, Matrix), Failure> {
    let mut doc: MatrixDoc =
        serde_json::from_value(load(arg)?).map_err(|e| Failure::input(format!("{arg}: {e}")))?;
    if let Some(c) = modulus {
        doc.field.modulus = c.to_vec();
    }
    Ok(doc.build()?)
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_budget() { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}
