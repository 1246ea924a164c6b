//! Subcommand implementations. Each returns a [`Report`].

use std::collections::BTreeMap;
use std::time::Instant;

use nilsheet::charvar::{
    classify_components, dominant_integral_points, solve_on_cartan, system_a_minus_one, system_d, system_hat,
    system_zero, verify_components, Generator,
};
use nilsheet::liealg::Realization;
use nilsheet::orbits::{
    all_orbits, enumerate_sheets, FactorOrbit, is_rigid, weighted_dynkin_diagram, OrbitDatum, Partition, VeryEvenLabel,
};
use nilsheet::rational::{parse_q, Q};
use nilsheet::rootdata::{build_root_datum, CartanType, Weight};
use nilsheet::walg::{central_charge, minimal_diagram, WParams};
use serde_json::json;
use thiserror::Error;

use crate::checks::{self, Params};
use crate::{parse_realization, q_str, q_strs, CheckResult, Ctx, Report};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] nilsheet::Error),
}

pub type CommandResult = Result<Report, CommandError>;

fn usage(msg: impl Into<String>) -> CommandError {
    CommandError::Usage(msg.into())
}

fn inputs<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn finish(mut r: Report, verdicts: Vec<CheckResult>, start: Instant) -> Report {
    r.verdicts = verdicts;
    r.normalize();
    r.timing_ms = start.elapsed().as_millis() as u64;
    r
}

/// Rank limits for orbit listings: type A up to 9, type D up to 8, unless `--max-rank` is given.
fn checked_realization(ty: &str, rank: usize, explicit_max: Option<usize>) -> Result<Realization, CommandError> {
    let r = parse_realization(ty, rank).ok_or_else(|| usage(format!("unsupported type/rank {ty} {rank}")))?;
    let bound = explicit_max.unwrap_or(match r {
        Realization::Sl(_) => 9,
        Realization::SoEven(_) => 8,
    });
    if rank > bound {
        return Err(usage(format!("rank {rank} exceeds the bound {bound}")));
    }
    Ok(r)
}

pub fn parse_partition(s: &str) -> Result<Partition, CommandError> {
    Partition::parse(s).ok_or_else(|| usage(format!("bad partition {s:?}")))
}

fn parse_label(s: Option<&str>) -> Result<Option<VeryEvenLabel>, CommandError> {
    match s.map(|x| x.trim().to_ascii_uppercase()) {
        None => Ok(None),
        Some(x) if x == "I" => Ok(Some(VeryEvenLabel::I)),
        Some(x) if x == "II" => Ok(Some(VeryEvenLabel::II)),
        Some(x) => Err(usage(format!("bad label {x:?}, expected I or II"))),
    }
}

fn orbit_json(g: &nilsheet::liealg::LieAlgebra, o: &OrbitDatum) -> nilsheet::Result<serde_json::Value> {
    Ok(json!({
        "partition": o.partition.to_string(),
        "label": o.label.map(|l| format!("{l:?}")),
        "dimension": o.dimension(),
        "diagram": weighted_dynkin_diagram(o),
        "rigid": is_rigid(g, o)?,
    }))
}

pub fn orbits(ctx: &Ctx, ty: &str, rank: usize, partition: Option<&str>, max_rank: Option<usize>) -> CommandResult {
    let start = Instant::now();
    let r = checked_realization(ty, rank, max_rank)?;
    let g = ctx.algebra(r)?;
    let mut list = all_orbits(r);
    let mut inp = inputs([("type", ty.to_string()), ("rank", rank.to_string())]);
    if let Some(p) = partition {
        let p = parse_partition(p)?;
        inp.insert("partition".into(), p.to_string());
        list.retain(|o| o.partition == p);
        if list.is_empty() {
            return Err(usage(format!("{p} is not a nilpotent orbit of {r:?}")));
        }
    }
    let items = list.iter().map(|o| orbit_json(&g, o)).collect::<nilsheet::Result<Vec<_>>>()?;
    let v = CheckResult::new("orbits", true, json!({ "count": items.len(), "orbits": items }));
    Ok(finish(Report::new("orbits", inp, ctx.report_seed()), vec![v], start))
}

pub fn verify(ctx: &Ctx, id: &str, params: &Params) -> CommandResult {
    let start = Instant::now();
    let mut inp = inputs([("check_id", id.to_string()), ("max_rank", ctx.max_rank.to_string())]);
    for (k, v) in [("n", params.n), ("m", params.m), ("r", params.r)] {
        if let Some(v) = v {
            inp.insert(k.into(), v.to_string());
        }
    }
    if let Some(c) = &params.case {
        inp.insert("case".into(), c.clone());
    }
    let verdicts = if id == "all" {
        checks::run_all(ctx)
    } else {
        let f = checks::family(id).ok_or_else(|| {
            let known: Vec<&str> = checks::FAMILIES.iter().map(|f| f.id).collect();
            usage(format!("unknown check id {id:?}; known: all, {}", known.join(", ")))
        })?;
        (f.run)(ctx, params)
    };
    if verdicts.is_empty() {
        return Err(usage(format!("no cases of {id} match the given parameters")));
    }
    Ok(finish(Report::new("verify", inp, ctx.report_seed()), verdicts, start))
}

/// A named generator system together with its root datum and classification targets.
pub struct SystemSpec {
    pub generators: Vec<Generator>,
    pub cartan: CartanType,
    pub rank: usize,
    pub targets: Vec<usize>,
    /// The components are affine rather than linear; classification is skipped.
    pub affine: bool,
}

pub fn system(id: &str, params: &Params) -> Result<SystemSpec, CommandError> {
    let need = |x: Option<usize>, name: &str, min: usize| -> Result<usize, CommandError> {
        let v = x.ok_or_else(|| usage(format!("{id} needs --{name}")))?;
        if v < min {
            return Err(usage(format!("--{name} must be at least {min}")));
        }
        Ok(v)
    };
    Ok(match id {
        "typeA-level-minus1" => {
            let n = need(params.n, "n", 4)?;
            SystemSpec { generators: system_a_minus_one(n), cartan: CartanType::A, rank: n - 1, targets: vec![0], affine: false }
        }
        "typeA-hat" => {
            let m = need(params.m, "m", 2)?;
            SystemSpec { generators: system_hat(m), cartan: CartanType::A, rank: 2 * m - 1, targets: vec![m - 1], affine: true }
        }
        "typeA-zero" => {
            let m = need(params.m, "m", 2)?;
            SystemSpec { generators: system_zero(m), cartan: CartanType::A, rank: 2 * m - 1, targets: vec![m - 1], affine: false }
        }
        "typeD" => {
            let r = need(params.r, "r", 4)?;
            SystemSpec { generators: system_d(r), cartan: CartanType::D, rank: r, targets: vec![r - 2, r - 1], affine: false }
        }
        _ => return Err(usage(format!("unknown system {id:?}; known: typeA-level-minus1, typeA-hat, typeA-zero, typeD"))),
    })
}

pub fn charvar(ctx: &Ctx, id: &str, params: &Params) -> CommandResult {
    let start = Instant::now();
    let s = system(id, params)?;
    let comps = solve_on_cartan(&s.generators, s.rank)?;
    let d = build_root_datum(s.cartan, s.rank)?;
    let targets: Vec<Weight> = s.targets.iter().map(|&i| d.fundamental_weight(i)).collect();
    let classification = if s.affine {
        json!(null)
    } else {
        serde_json::to_value(classify_components(&d, &comps, &targets)?).expect("serializable")
    };
    let points: Vec<Vec<String>> =
        if s.affine { dominant_integral_points(&comps, s.rank, 4).iter().map(|p| q_strs(p)).collect() } else { Vec::new() };
    let verified = verify_components(&s.generators, &comps);
    let v = CheckResult::new(
        "charvar",
        verified,
        json!({
            "generators": s.generators.len(),
            "components": comps.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "targets": s.targets.iter().map(|i| format!("w{}", i + 1)).collect::<Vec<_>>(),
            "classification": classification,
            "dominant_integral_points": points,
        }),
    );
    let mut inp = inputs([("system", id.to_string())]);
    for (k, v) in [("n", params.n), ("m", params.m), ("r", params.r)] {
        if let Some(v) = v {
            inp.insert(k.into(), v.to_string());
        }
    }
    Ok(finish(Report::new("charvar", inp, ctx.report_seed()), vec![v], start))
}

/// `orbit` is a partition for types A and D, or `min` for the minimal nilpotent orbit of any type.
pub fn central_charge_cmd(ctx: &Ctx, ty: &str, rank: usize, orbit: &str, level: &str, label: Option<&str>) -> CommandResult {
    let start = Instant::now();
    let k: Q = parse_q(level).ok_or_else(|| usage(format!("bad level {level:?}")))?;
    let cartan = CartanType::parse(ty).ok_or_else(|| usage(format!("unknown type {ty:?}")))?;
    let d = build_root_datum(cartan, rank).map_err(|e| usage(e.to_string()))?;
    let params = if orbit.trim().eq_ignore_ascii_case("min") {
        WParams::new(d, minimal_diagram(&build_root_datum(cartan, rank)?), k.clone())?
    } else {
        let r = parse_realization(ty, rank)
            .ok_or_else(|| usage(format!("partitions are supported for types A and D only, got {ty}")))?;
        let o = OrbitDatum::new(r, parse_partition(orbit)?, parse_label(label)?).map_err(|e| usage(e.to_string()))?;
        WParams::from_integer_diagram(d, &weighted_dynkin_diagram(&o), k.clone())?
    };
    let t = params.terms();
    let c = central_charge(&params)?;
    let v = CheckResult::new(
        "central-charge",
        true,
        json!({
            "c": q_str(&c),
            "diagram": q_strs(&params.diagram),
            "dim_g0": t.dim0,
            "dim_g1": t.dim1,
            "rho_rho": q_str(&t.rho_rho),
            "rho_h": q_str(&t.rho_h),
            "h_h": q_str(&t.h_h),
            "shifted_level": q_str(&t.shifted_level),
        }),
    );
    let mut inp = inputs([
        ("type", ty.to_string()),
        ("rank", rank.to_string()),
        ("orbit", orbit.to_string()),
        ("k", q_str(&k)),
    ]);
    if let Some(l) = label {
        inp.insert("label".into(), l.to_string());
    }
    Ok(finish(Report::new("central-charge", inp, ctx.report_seed()), vec![v], start))
}

pub fn sheets(ctx: &Ctx, ty: &str, rank: usize, max_rank: Option<usize>) -> CommandResult {
    let start = Instant::now();
    let r = checked_realization(ty, rank, max_rank)?;
    let g = ctx.algebra(r)?;
    let list = enumerate_sheets(&g)?;
    let items: Vec<serde_json::Value> = list
        .iter()
        .map(|s| {
            json!({
                "levi": s.levi.simple.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "rigid_orbit": s.rigid_orbit.factors.iter().map(|(_, o)| factor_orbit_str(o)).collect::<Vec<_>>(),
                "induced": s.induced.to_string(),
                "rank": s.rank,
                "dimension": s.dimension,
            })
        })
        .collect();
    let v = CheckResult::new("sheets", true, json!({ "count": items.len(), "sheets": items }));
    let inp = inputs([("type", ty.to_string()), ("rank", rank.to_string())]);
    Ok(finish(Report::new("sheets", inp, ctx.report_seed()), vec![v], start))
}

fn factor_orbit_str(o: &FactorOrbit) -> String {
    match o {
        FactorOrbit::A(p) => p.to_string(),
        FactorOrbit::D(o) => o.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(parse_label(Some("ii")).unwrap(), Some(VeryEvenLabel::II));
        assert_eq!(parse_label(None).unwrap(), None);
        assert!(parse_label(Some("III")).is_err());
    }

    #[test]
    fn systems_need_parameters() {
        assert!(matches!(system("typeD", &Params::default()), Err(CommandError::Usage(_))));
        assert!(matches!(system("typeA-zero", &Params { m: Some(1), ..Params::default() }), Err(CommandError::Usage(_))));
        let s = system("typeD", &Params { r: Some(5), ..Params::default() }).unwrap();
        assert_eq!((s.rank, s.targets), (5, vec![3, 4]));
    }

    #[test]
    fn rank_bounds() {
        assert!(checked_realization("A", 9, None).is_ok());
        assert!(checked_realization("A", 10, None).is_err());
        assert!(checked_realization("D", 9, None).is_err());
        assert!(checked_realization("D", 9, Some(9)).is_ok());
    }

    #[test]
    fn minimal_orbit_central_charge_for_exceptional_types() {
        let r = central_charge_cmd(&Ctx::default(), "G", 2, "min", "-5/3", None).unwrap();
        assert_eq!(r.verdicts[0].status, crate::Status::Pass);
        assert!(central_charge_cmd(&Ctx::default(), "G", 2, "2,1", "1", None).is_err());
    }
}
