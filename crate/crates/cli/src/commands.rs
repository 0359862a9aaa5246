use std::io::Write as _;
use std::path::Path;

use ansatz_core::exact::to_f64;
use ansatz_core::geometry::{self, q_f64, Reconstruction, Residual};
use ansatz_core::profile::{solvability_with, SolvabilityReport, DEFAULT_SAMPLES};
use ansatz_core::scenario::{ConstantSet, Scenario};
use ansatz_core::verify::{self, CHECK_IDS};
use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{build_scenario, ConstantsArgs, ExportArgs, PlotArgs, PrecisionArgs, SolveArgs, SweepArgs, VerifyArgs};
use crate::svg::{self, Series};
use crate::{render, Status};

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn constants(a: &ConstantsArgs) -> Result<Status> {
    let s = a.scenario.resolve()?;
    let width = a.precision.width()?;
    let c = ConstantSet::compute(&s)?;
    let text = if a.json {
        pretty(&c.to_json(&s, &width))?
    } else {
        render::constants(&c, &s.to_string(), &width, a.precision.digits())
    };
    emit(a.out.as_deref(), &text)?;
    Ok(Status::Success)
}

fn reconstruction(r: &SolvabilityReport, p: &PrecisionArgs) -> Result<Option<(Reconstruction, Residual)>> {
    let Some(profile) = &r.profile else { return Ok(None) };
    let rec = geometry::reconstruct(profile, &p.eps()?, &p.tol()?)?;
    let res = geometry::pde_residual(&rec, &r.q.poly);
    Ok(Some((rec, res)))
}

fn write_csv(path: &Path, rows: &[geometry::Row]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn solve(a: &SolveArgs) -> Result<Status> {
    let s = a.scenario.resolve()?;
    let width = a.precision.width()?;
    let r = solvability_with(&s, a.samples)?;
    let geo = reconstruction(&r, &a.precision)?;
    let text = if a.json {
        let mut v = r.to_json(&width)?;
        v["reconstruction"] = match &geo {
            Some((rec, res)) => serde_json::json!({
                "nodes": rec.len(),
                "eps": a.precision.eps()?.to_string(),
                "tol": a.precision.tol()?.to_string(),
                "s_increasing": rec.s_increasing(),
                "max_rho_rel_dev": res.max_rel_dev,
            }),
            None => serde_json::Value::Null,
        };
        pretty(&v)?
    } else {
        let mut t = render::report(&r, &width, a.precision.digits());
        if let Some((rec, res)) = &geo {
            t.push_str(&format!(
                "reconstruction: {} nodes on [{}, 2 - {}], max |rho/rho(1) - 1| = {:.3e}\n",
                rec.len(),
                a.precision.eps()?,
                a.precision.eps()?,
                res.max_rel_dev
            ));
        }
        t
    };
    emit(a.out.as_deref(), &text)?;
    if let (Some(path), Some((rec, res))) = (&a.csv, &geo) {
        write_csv(path, &geometry::rows(rec, res))?;
    }
    if r.is_solvable() {
        Ok(Status::Success)
    } else {
        if let Some(w) = render::witness(&r) {
            eprintln!("{w}");
        }
        Ok(Status::NoSolution)
    }
}

pub fn verify(a: &VerifyArgs) -> Result<Status> {
    let ids: Vec<&str> = if a.all || a.ids.is_empty() {
        if !a.all {
            bail!("name check ids or pass --all; known: {}", CHECK_IDS.join(", "));
        }
        CHECK_IDS.to_vec()
    } else {
        a.ids.iter().map(String::as_str).collect()
    };
    for id in &ids {
        if !CHECK_IDS.contains(id) {
            bail!("unknown check id {id:?}; known: {}", CHECK_IDS.join(", "));
        }
    }
    let outcomes = ids.par_iter().map(|id| verify::run_check(id)).collect::<ansatz_core::Result<Vec<_>>>()?;
    let failed = outcomes.iter().filter(|c| !c.pass).count();
    let text = if a.json {
        pretty(&serde_json::json!({ "checks": outcomes, "failed": failed }))?
    } else {
        let mut t = String::new();
        for c in &outcomes {
            t.push_str(&render::check_line(c));
            t.push('\n');
            if a.verbose || !c.pass {
                for d in &c.details {
                    t.push_str("    ");
                    t.push_str(d);
                    t.push('\n');
                }
            }
        }
        t.push_str(&format!("{} of {} checks passed\n", outcomes.len() - failed, outcomes.len()));
        t
    };
    emit(None, &text)?;
    Ok(if failed == 0 { Status::Success } else { Status::Failed })
}

#[derive(Serialize)]
struct SweepRow {
    case: &'static str,
    k: u32,
    m1: i64,
    m2: i64,
    verdict: &'static str,
    alpha0_over_alpha1: String,
    lo: String,
    hi: String,
}

pub fn sweep(a: &SweepArgs) -> Result<Status> {
    if a.k_min > a.k_max {
        bail!("--k-min {} exceeds --k-max {}", a.k_min, a.k_max);
    }
    let width = a.precision.width()?;
    let digits = a.precision.digits();
    let mut scenarios: Vec<Scenario> = (a.k_min..=a.k_max)
        .filter_map(|k| build_scenario(a.case, k, a.m1, a.m2, &a.alpha1).ok())
        .collect();
    if scenarios.is_empty() {
        bail!("no valid scenario for k in {}..={}", a.k_min, a.k_max);
    }
    scenarios.sort_by_key(Scenario::sort_key);
    let reports = scenarios
        .par_iter()
        .map(|s| solvability_with(s, DEFAULT_SAMPLES))
        .collect::<ansatz_core::Result<Vec<_>>>()?;
    let rows: Vec<SweepRow> = reports
        .iter()
        .map(|r| {
            let (lo, hi) = r.constraint.enclose(&width).decimal_bounds(digits);
            SweepRow {
                case: r.scenario.case.tag(),
                k: r.scenario.k,
                m1: r.scenario.m1(),
                m2: r.scenario.m2(),
                verdict: r.verdict(),
                alpha0_over_alpha1: render::symbolic(&r.constraint),
                lo,
                hi,
            }
        })
        .collect();
    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        for row in &rows {
            w.serialize(row)?;
        }
        w.flush()?;
    }
    let text = if a.json {
        pretty(&serde_json::to_value(&rows)?)?
    } else {
        rows.iter()
            .map(|r| {
                format!(
                    "{} k={} (m1,m2)=({},{}) {} alpha0/alpha1 = {} in [{}, {}]\n",
                    r.case, r.k, r.m1, r.m2, r.verdict, r.alpha0_over_alpha1, r.lo, r.hi
                )
            })
            .collect()
    };
    emit(a.out.as_deref(), &text)?;
    Ok(Status::Success)
}

const PLOT_POINTS: usize = 401;

pub fn plot(a: &PlotArgs) -> Result<Status> {
    let s = a.scenario.resolve()?;
    let r = solvability_with(&s, DEFAULT_SAMPLES)?;
    let Some(profile) = &r.profile else {
        eprintln!("{}: no solution, nothing to plot", s);
        if let Some(w) = render::witness(&r) {
            eprintln!("{w}");
        }
        return Ok(Status::NoSolution);
    };
    let phi = profile.phi_f64();
    let q = q_f64(&r.q.poly);
    let taus: Vec<f64> = (0..PLOT_POINTS).map(|i| 2.0 * i as f64 / (PLOT_POINTS - 1) as f64).collect();
    let phi_pts: Vec<(f64, f64)> = taus.iter().map(|&t| (t, phi(t))).collect();
    let phi_max = phi_pts.iter().fold(0.0f64, |m, p| m.max(p.1));
    let q_raw: Vec<f64> = taus.iter().map(|&t| q(t)).collect();
    let q_max = q_raw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let q_scale = if q_max > 0.0 { phi_max / q_max } else { 1.0 };
    let mut series = vec![
        Series { label: "phi".into(), color: "#1f77b4", points: phi_pts },
        Series {
            label: format!("Q (x{q_scale:.3e})"),
            color: "#d62728",
            points: taus.iter().zip(&q_raw).map(|(&t, &v)| (t, v * q_scale)).collect(),
        },
    ];
    if a.with_s {
        let rec = geometry::reconstruct(profile, &a.precision.eps()?, &a.precision.tol()?)?;
        let s_max = rec.s.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let k = if s_max > 0.0 { phi_max / s_max } else { 1.0 };
        series.push(Series {
            label: format!("s (x{k:.3e})"),
            color: "#2ca02c",
            points: rec.tau.iter().zip(&rec.s).map(|(&t, &v)| (t, v * k)).collect(),
        });
    }
    let title = format!("{s}: alpha0/alpha1 = {}", render::symbolic(&r.constraint));
    emit(a.out.as_deref(), &svg::chart(&title, &series))?;
    Ok(Status::Success)
}

pub fn export(a: &ExportArgs) -> Result<Status> {
    let s = a.scenario.resolve()?;
    let width = a.precision.width()?;
    let c = ConstantSet::compute(&s)?;
    let r = solvability_with(&s, DEFAULT_SAMPLES)?;
    let mut doc = c.to_json(&s, &width);
    doc["report"] = r.to_json(&width)?;
    doc["precision"] = serde_json::json!({ "width": width.to_string(), "width_f64": to_f64(&width) });
    emit(a.out.as_deref(), &pretty(&doc)?)?;
    Ok(if r.is_solvable() { Status::Success } else { Status::NoSolution })
}
