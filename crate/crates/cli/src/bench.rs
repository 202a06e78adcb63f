//! Experiment runner: one row per generated instance, written as
//! `results.csv` plus a log-log growth plot.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;

use geodome::constructions::{greedy_direction, InstanceRecipe, GREEDY_DIRECTIONS};
use geodome::escape::{self, greedy_escape, Method};
use geodome::{distortion, random_family, Family, Point, PolygonalDomain, SamplerConfig};

use crate::{svg, Failure};

pub const COLUMNS: [&str; 13] = [
    "instance_id",
    "family",
    "h",
    "delta",
    "lambda",
    "diam2",
    "geod_lb",
    "rho_lb",
    "greedy_len",
    "escape_len",
    "certificate",
    "method",
    "wall_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    K,
    H,
    Delta,
    Lambda,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Sweep {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

/// Parameter sweep over one instance family.
///
/// Fields not swept are taken from the template (`k`, `h`, `lambda`,
/// `delta`). Instance `i` uses seed `seed + i`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: String,
    pub family: Family,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_h")]
    pub h: usize,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default)]
    pub delta: Option<f64>,
    pub sweep: Sweep,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default)]
    pub seed: u64,
    /// Escape method for the `escape_len` column; `auto` when absent.
    #[serde(default)]
    pub method: Option<String>,
    /// Greedy directions per instance for `greedy_len` (the maximum is
    /// reported).
    #[serde(default = "default_directions")]
    pub greedy_directions: usize,
}

fn default_k() -> usize {
    3
}

fn default_h() -> usize {
    10
}

fn default_lambda() -> f64 {
    0.5
}

fn default_repeats() -> usize {
    1
}

fn default_directions() -> usize {
    16
}

impl ExperimentSpec {
    pub fn check(&self) -> Result<(), Failure> {
        if self.sweep.values.is_empty() {
            return Err(Failure::usage("sweep has no values"));
        }
        if self.repeats == 0 {
            return Err(Failure::usage("repeats must be at least 1"));
        }
        if self.name.is_empty() || self.name.contains(',') {
            return Err(Failure::usage("name must be non-empty and free of commas"));
        }
        if !(1..=GREEDY_DIRECTIONS).contains(&self.greedy_directions) {
            return Err(Failure::usage(format!("greedy_directions must be in 1..={GREEDY_DIRECTIONS}")));
        }
        if let Some(m) = &self.method {
            if m != "auto" {
                m.parse::<Method>()?;
            }
        }
        Ok(())
    }

    /// Recipes in sweep order.
    pub fn recipes(&self) -> Vec<InstanceRecipe> {
        let mut out = Vec::new();
        for &v in &self.sweep.values {
            for _ in 0..self.repeats {
                let mut r = InstanceRecipe {
                    family: self.family,
                    k: self.k,
                    h: self.h,
                    lambda: self.lambda,
                    delta: self.delta,
                    seed: self.seed.wrapping_add(out.len() as u64),
                };
                match self.sweep.param {
                    SweepParam::K => r.k = v as usize,
                    SweepParam::H => r.h = v as usize,
                    SweepParam::Delta => r.delta = Some(v),
                    SweepParam::Lambda => r.lambda = v,
                }
                out.push(r);
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub instance_id: String,
    pub family: Family,
    pub values: Option<Measured>,
    pub method: String,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct Measured {
    pub h: usize,
    pub delta: f64,
    pub lambda: f64,
    pub diam2: f64,
    pub geod_lb: f64,
    pub rho_lb: f64,
    pub greedy_len: f64,
    pub escape_len: f64,
    pub certificate: f64,
}

pub struct Summary {
    pub rows: usize,
    pub failures: usize,
    pub slope: Option<f64>,
}

/// Start point of the escape measurements: the center for the nested
/// families, otherwise a free point near the center of the bounding box.
pub fn start_point(domain: &PolygonalDomain, family: Family) -> Option<Point> {
    match family {
        Family::Nested | Family::GreedyHard => Some(Point::new(0.0, 0.0)),
        _ => {
            let bb = domain.bbox();
            domain.free_point_near(bb.min.midpoint(bb.max))
        }
    }
}

fn measure(recipe: &InstanceRecipe, method: Option<&str>, directions: usize) -> Result<(Measured, Method), String> {
    let d = random_family(recipe).map_err(|e| e.to_string())?;
    let s = start_point(&d, recipe.family).ok_or("no free start point")?;
    let cfg = SamplerConfig { extra_points: vec![s], ..SamplerConfig::default() };
    let rep = distortion(&d, &cfg).map_err(|e| e.to_string())?;
    let mut greedy_len = 0.0f64;
    for j in 0..directions {
        let u = greedy_direction(j * GREEDY_DIRECTIONS / directions);
        greedy_len = greedy_len.max(greedy_escape(&d, s, u).map_err(|e| e.to_string())?.total_length);
    }
    let esc = match method {
        None | Some("auto") => escape::auto_escape(&d, s),
        Some(m) => escape::escape(&d, s, m.parse().map_err(|e: geodome::Error| e.to_string())?, None),
    }
    .map_err(|e| e.to_string())?;
    let lambda = d.holes().iter().map(|h| h.fatness().lambda).fold(1.0, f64::min);
    Ok((
        Measured {
            h: d.hole_count(),
            delta: d.max_hole_diameter_ratio(),
            lambda,
            diam2: rep.euclidean_diameter,
            geod_lb: rep.geodesic_diameter_lb,
            rho_lb: rep.rho_lb,
            greedy_len,
            escape_len: esc.length,
            certificate: esc.bound_certificate,
        },
        esc.method,
    ))
}

pub fn run_rows(spec: &ExperimentSpec, timing: bool) -> Vec<Row> {
    let recipes = spec.recipes();
    let width = recipes.len().to_string().len().max(4);
    let mut rows: Vec<Row> = recipes
        .par_iter()
        .enumerate()
        .map(|(i, r)| {
            let start = Instant::now();
            let result = measure(r, spec.method.as_deref(), spec.greedy_directions);
            let wall_ms = if timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
            let instance_id = format!("{}-{:0width$}", spec.name, i);
            match result {
                Ok((m, method)) => {
                    let ok = m.escape_len <= m.certificate + 1e-9 * m.diam2;
                    Row {
                        instance_id,
                        family: r.family,
                        values: Some(m),
                        method: if ok { method.to_string() } else { format!("FAIL:{method}") },
                        wall_ms,
                    }
                }
                Err(e) => Row { instance_id, family: r.family, values: None, method: format!("FAIL:{e}"), wall_ms },
            }
        })
        .collect();
    rows.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    rows
}

/// `x` rounded to 12 significant digits, printed without exponent noise.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:?}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("round trip");
    format!("{rounded:?}")
}

pub fn write_csv(rows: &[Row], path: &Path) -> Result<(), Failure> {
    let io = |e: csv::Error| Failure { code: 1, message: format!("{}: {e}", path.display()) };
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path).map_err(io)?;
    w.write_record(COLUMNS).map_err(io)?;
    for r in rows {
        let mut rec = vec![r.instance_id.clone(), r.family.to_string()];
        match &r.values {
            Some(m) => {
                rec.push(m.h.to_string());
                rec.extend(
                    [m.delta, m.lambda, m.diam2, m.geod_lb, m.rho_lb, m.greedy_len, m.escape_len, m.certificate]
                        .map(sig12),
                );
            }
            None => rec.extend(std::iter::repeat_n(String::new(), 9)),
        }
        rec.push(r.method.clone());
        rec.push(sig12(r.wall_ms));
        w.write_record(&rec).map_err(io)?;
    }
    w.flush().map_err(|e| Failure { code: 1, message: e.to_string() })?;
    Ok(())
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two
/// distinct abscissae.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|p| p.0 > 0.0 && p.1 > 0.0).map(|p| (p.0.ln(), p.1.ln())).collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn run_benchmark(spec: &ExperimentSpec, out: &Path, timing: bool) -> Result<Summary, Failure> {
    spec.check()?;
    std::fs::create_dir_all(out).map_err(|e| Failure { code: 1, message: format!("{}: {e}", out.display()) })?;
    let rows = run_rows(spec, timing);
    write_csv(&rows, &out.join("results.csv"))?;
    let points: Vec<(f64, f64)> =
        rows.iter().filter_map(|r| r.values.filter(|m| m.h > 0).map(|m| (m.h as f64, m.rho_lb))).collect();
    let slope = loglog_slope(&points);
    let doc = svg::growth_plot(&spec.name, &points, slope);
    let path = out.join("growth.svg");
    std::fs::write(&path, doc).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })?;
    Ok(Summary { rows: rows.len(), failures: rows.iter().filter(|r| r.method.starts_with("FAIL")).count(), slope })
}
