//! Quandle and coefficient aliases, and input files.

use std::fs;
use std::path::Path;

use qcoh::algebra::coeff::CoefficientModule;
use qcoh::algebra::rational::{q_from_json, RationalMatrix, QVec};
use qcoh::quandle::{make_alexander, make_conjugation, make_dihedral, make_gm, make_trivial, GroupTable, QuandleTable};
use serde_json::Value;

use crate::CliError;

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim().parse().map_err(|_| CliError::Input(format!("bad {what} {s:?}")))
}

/// `Name(a,b)` -> `("name", ["a", "b"])`
fn call(s: &str) -> Option<(String, Vec<&str>)> {
    let (name, rest) = s.split_once('(')?;
    let args = rest.strip_suffix(')')?;
    Some((name.trim().to_lowercase(), args.split(',').map(str::trim).collect()))
}

/// `Z<n>`, `D<n>` (order `2n`) or `S<k>`.
pub fn group(s: &str) -> Result<GroupTable, CliError> {
    let bad = || CliError::Input(format!("unknown group {s:?}; use Z<n>, D<n> or S<k>"));
    let (kind, n) = s.split_at(1.min(s.len()));
    let n: usize = n.parse().map_err(|_| bad())?;
    match kind {
        "Z" if n >= 1 => Ok(GroupTable::cyclic(n)),
        "D" if n >= 3 => Ok(GroupTable::dihedral(n)),
        "S" if (1..=6).contains(&n) => Ok(GroupTable::symmetric(n)),
        _ => Err(bad()),
    }
}

/// `R<n>`, `trivial<n>`, `Alexander(m,u)`, `Conj(G)`, `GM(G,m)`, or a JSON
/// table file.
pub fn quandle(s: &str) -> Result<QuandleTable, CliError> {
    if let Some(n) = s.strip_prefix('R').and_then(|n| n.parse::<usize>().ok()) {
        if n == 0 {
            return Err(CliError::Input("R0 has no elements".into()));
        }
        return Ok(make_dihedral(n));
    }
    if let Some(n) = s.strip_prefix("trivial").and_then(|n| n.parse::<usize>().ok()) {
        return Ok(make_trivial(n));
    }
    if let Some((name, args)) = call(s) {
        return match (name.as_str(), &args[..]) {
            ("alexander", [m, u]) => Ok(make_alexander(number(m, "modulus")?, number(u, "unit")?)?),
            ("conj", [g]) => Ok(make_conjugation(&group(g)?)),
            ("gm", [g, m]) => Ok(make_gm(&group(g)?, number(m, "power")?)?),
            _ => Err(CliError::Input(format!("unknown quandle {s:?}"))),
        };
    }
    let path = Path::new(s);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "{s:?} is neither a quandle alias (R<n>, trivial<n>, Alexander(m,u), Conj(G), GM(G,m)) nor a file"
        )));
    }
    Ok(serde_json::from_value(read_json(path)?)?)
}

/// `Z<m>` (untwisted), `Z<m>:<u>` (T = u), or a JSON file `{"torsion", "T"}`.
pub fn coefficients(s: &str) -> Result<CoefficientModule, CliError> {
    if let Some(rest) = s.strip_prefix('Z') {
        let (m, u) = rest.split_once(':').unwrap_or((rest, "1"));
        if let (Ok(m), Ok(u)) = (m.parse::<u64>(), u.parse::<i64>()) {
            return Ok(CoefficientModule::cyclic(m, u)?);
        }
    }
    let path = Path::new(s);
    if !path.exists() {
        return Err(CliError::Input(format!("{s:?} is neither a coefficient alias (Z<m>, Z<m>:<u>) nor a file")));
    }
    Ok(serde_json::from_value(read_json(path)?)?)
}

/// A nested array of entries, or `{"rows", "cols", "entries"}`.
pub fn matrix(v: &Value, name: &str) -> Result<RationalMatrix, CliError> {
    match v {
        Value::Array(rows) => {
            let rows = rows
                .iter()
                .map(|r| vector(r, name))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(RationalMatrix::from_rows(rows)?)
        }
        Value::Object(_) => Ok(serde_json::from_value(v.clone())?),
        _ => Err(CliError::Input(format!("{name} must be a matrix"))),
    }
}

pub fn vector(v: &Value, name: &str) -> Result<QVec, CliError> {
    let entries = v.as_array().ok_or_else(|| CliError::Input(format!("{name} must be an array")))?;
    Ok(entries.iter().map(q_from_json).collect::<qcoh::Result<Vec<_>>>()?)
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| CliError::Input(format!("missing {key:?}")))
}

pub fn optional_vector(v: &Value, key: &str) -> Result<Option<QVec>, CliError> {
    v.get(key).map(|x| vector(x, key)).transpose()
}
