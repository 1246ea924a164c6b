//! Verification harness over `nilsheet`: named checks, reports and the
//! command implementations behind the `nilsheet` binary.

use std::collections::BTreeMap;
use std::path::PathBuf;

use nilsheet::liealg::{LieAlgebra, Realization};
use nilsheet::orbits::{build, SEEDS};
use nilsheet::walg::NaturalLevelTable;
use serde::{Deserialize, Serialize};

pub mod checks;
pub mod commands;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const NATURAL_LEVELS_ENV: &str = "NILSHEET_NATURAL_LEVELS";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub witness: serde_json::Value,
}

impl CheckResult {
    pub fn new(check_id: impl Into<String>, ok: bool, witness: serde_json::Value) -> Self {
        CheckResult { check_id: check_id.into(), status: Status::from_bool(ok), witness }
    }

    pub fn error(check_id: impl Into<String>, e: impl std::fmt::Display) -> Self {
        CheckResult { check_id: check_id.into(), status: Status::Fail, witness: serde_json::json!({ "error": e.to_string() }) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdicts: Vec<CheckResult>,
    pub seed: u64,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str, inputs: BTreeMap<String, String>, seed: u64) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs,
            verdicts: Vec::new(),
            seed,
            timing_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    pub fn has_unknown(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Unknown)
    }

    pub fn exit_code(&self, strict: bool) -> i32 {
        if !self.passed() {
            EXIT_FAIL
        } else if strict && self.has_unknown() {
            EXIT_UNKNOWN
        } else {
            EXIT_PASS
        }
    }

    /// Sorts verdicts by check id, keeping the order of equal ids.
    pub fn normalize(&mut self) {
        self.verdicts.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    }
}

/// A sign flip injected into the structure constants of one algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub realization: Realization,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug)]
pub struct Ctx {
    pub seed: Option<u64>,
    pub max_rank: usize,
    pub natural_levels: NaturalLevelTable,
    pub mutation: Option<Mutation>,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { seed: None, max_rank: 6, natural_levels: NaturalLevelTable::shipped(), mutation: None }
    }
}

impl Ctx {
    pub fn algebra(&self, r: Realization) -> nilsheet::Result<LieAlgebra> {
        let mut g = build(r)?;
        if let Some(m) = self.mutation.filter(|m| m.realization == r) {
            g.flip_structure_constant(m.i, m.j);
        }
        Ok(g)
    }

    pub fn seeds(&self) -> Vec<u64> {
        match self.seed {
            Some(s) => (0..SEEDS.len() as u64).map(|k| s.wrapping_add(k)).collect(),
            None => SEEDS.to_vec(),
        }
    }

    pub fn report_seed(&self) -> u64 {
        self.seed.unwrap_or(SEEDS[0])
    }
}

/// Natural level table from a path, or the environment variable, or the shipped copy.
pub fn load_natural_levels(path: Option<PathBuf>) -> nilsheet::Result<NaturalLevelTable> {
    let path = path.or_else(|| std::env::var_os(NATURAL_LEVELS_ENV).map(PathBuf::from));
    match path {
        Some(p) => NaturalLevelTable::load(&p),
        None => Ok(NaturalLevelTable::shipped()),
    }
}

/// `A` with rank `r` is `sl_{r+1}`, `D` with rank `r` is `so_{2r}`.
pub fn parse_realization(t: &str, rank: usize) -> Option<Realization> {
    match t.trim().to_ascii_uppercase().as_str() {
        "A" if rank >= 1 => Some(Realization::Sl(rank + 1)),
        "D" if rank >= 3 => Some(Realization::SoEven(rank)),
        _ => None,
    }
}

pub fn q_str(x: &nilsheet::Q) -> String {
    x.to_string()
}

pub fn q_strs(v: &[nilsheet::Q]) -> Vec<String> {
    v.iter().map(q_str).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(statuses: &[Status]) -> Report {
        let mut r = Report::new("verify", BTreeMap::new(), 7);
        r.verdicts = statuses
            .iter()
            .enumerate()
            .map(|(i, &status)| CheckResult { check_id: format!("c{}", 9 - i), status, witness: serde_json::json!({}) })
            .collect();
        r
    }

    #[test]
    fn exit_codes() {
        assert_eq!(report(&[Status::Pass]).exit_code(true), EXIT_PASS);
        assert_eq!(report(&[Status::Pass, Status::Unknown]).exit_code(false), EXIT_PASS);
        assert_eq!(report(&[Status::Pass, Status::Unknown]).exit_code(true), EXIT_UNKNOWN);
        assert_eq!(report(&[Status::Unknown, Status::Fail]).exit_code(true), EXIT_FAIL);
    }

    #[test]
    fn normalize_sorts_by_id() {
        let mut r = report(&[Status::Pass, Status::Fail, Status::Pass]);
        r.normalize();
        let ids: Vec<&str> = r.verdicts.iter().map(|v| v.check_id.as_str()).collect();
        assert_eq!(ids, ["c7", "c8", "c9"]);
    }

    #[test]
    fn status_serializes_lowercase() {
        assert_eq!(serde_json::to_string(&Status::Unknown).unwrap(), "\"unknown\"");
    }

    #[test]
    fn realizations() {
        assert_eq!(parse_realization("a", 3), Some(Realization::Sl(4)));
        assert_eq!(parse_realization("D", 5), Some(Realization::SoEven(5)));
        assert_eq!(parse_realization("D", 2), None);
        assert_eq!(parse_realization("E", 6), None);
    }

    #[test]
    fn seeds_offset_from_base() {
        let ctx = Ctx { seed: Some(100), ..Ctx::default() };
        assert_eq!(&ctx.seeds()[..3], &[100, 101, 102]);
        assert_eq!(Ctx::default().seeds(), SEEDS.to_vec());
    }
}
