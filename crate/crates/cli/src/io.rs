//! Input loading. Anything that fails here is a usage error (exit 2).

use std::fs;
use std::path::Path;

use coxquot::exactla::{IntMat, RatVec};
use coxquot::fan::Fan;
use coxquot::gb::Ideal;
use coxquot::m0n::{self, M0nData};
use coxquot::poly::Ring;
use coxquot::quotient::QuotientSetup;

use crate::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    let s = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    if s.trim().is_empty() {
        return Err(Failure::usage(format!("{} is empty", path.display())));
    }
    Ok(s)
}

pub fn ideal(path: &Path) -> Result<Ideal, Failure> {
    Ideal::from_json_str(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn matrix(path: &Path) -> Result<IntMat, Failure> {
    IntMat::parse_any(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn fan(path: &Path) -> Result<Fan, Failure> {
    Fan::from_json_str(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn setup(path: &Path) -> Result<QuotientSetup, Failure> {
    let v: serde_json::Value =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    QuotientSetup::from_json(&v).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn rat_vec(s: &str) -> Result<Vec<coxquot::num::BigRational>, Failure> {
    RatVec::parse_csv(s).map(|v| v.0).map_err(|e| Failure::usage(format!("bad vector {s:?}: {e}")))
}

pub fn int_vec(s: &str) -> Result<Vec<coxquot::num::BigInt>, Failure> {
    coxquot::git::parse_int_vec(s).map_err(|e| Failure::usage(e.to_string()))
}

/// `m0nN` for `4 <= N`.
pub fn preset(name: &str) -> Result<M0nData, Failure> {
    let n: usize = name
        .strip_prefix("m0n")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Failure::usage(format!("unknown preset {name:?} (expected m0nN)")))?;
    m0n::build(n).map_err(|e| Failure::usage(e.to_string()))
}

/// Ring `prefix1..prefixN` unless names are given.
pub fn names(given: &Option<String>, prefix: &str, n: usize) -> Result<Vec<String>, Failure> {
    match given {
        Some(s) => {
            let v: Vec<String> = s.split(',').map(|t| t.trim().to_string()).collect();
            if v.len() != n {
                return Err(Failure::usage(format!("{} names given, {n} needed", v.len())));
            }
            Ok(v)
        }
        None => Ok(coxquot::quotient::default_names(prefix, n)),
    }
}

pub fn ring(names: Vec<String>) -> Result<Ring, Failure> {
    Ring::new(names, false).map_err(|e| Failure::usage(e.to_string()))
}
