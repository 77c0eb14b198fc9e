use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use super::aggregate::aggregate;
use super::rank::{kendall_tau, ranking, RankKey};
use super::table::{write_table, ReportRow};
use crate::datamodel::{
    parse_weights, AttributeMode, EvalConfig, ForegroundMode, RelationMode, RunManifest,
};
use crate::error::{Error, Result};
use crate::pipeline::{Evaluator, Roots, Scope};

/// A parameter that can vary across a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridParam {
    TauSem,
    ApIouThreshold,
    AttributeMode,
    RelationMode,
    ForegroundMode,
    Alpha,
    Beta,
    GraphDir,
    /// May contain `{box}` and `{text}`, filled from the detection thresholds.
    MaskDir,
    BoxThreshold,
    TextThreshold,
}

impl GridParam {
    pub const ALL: [GridParam; 11] = [
        GridParam::TauSem,
        GridParam::ApIouThreshold,
        GridParam::AttributeMode,
        GridParam::RelationMode,
        GridParam::ForegroundMode,
        GridParam::Alpha,
        GridParam::Beta,
        GridParam::GraphDir,
        GridParam::MaskDir,
        GridParam::BoxThreshold,
        GridParam::TextThreshold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GridParam::TauSem => "tau_sem",
            GridParam::ApIouThreshold => "ap_iou_threshold",
            GridParam::AttributeMode => "attribute_mode",
            GridParam::RelationMode => "relation_mode",
            GridParam::ForegroundMode => "foreground_mode",
            GridParam::Alpha => "alpha",
            GridParam::Beta => "beta",
            GridParam::GraphDir => "graph_dir",
            GridParam::MaskDir => "mask_dir",
            GridParam::BoxThreshold => "box_threshold",
            GridParam::TextThreshold => "text_threshold",
        }
    }

    fn apply(self, value: &str, cfg: &mut EvalConfig, roots: &mut Roots) -> Result<()> {
        let bad = |msg: String| Error::InvalidConfig(format!("{}={value}: {msg}", self.name()));
        let num = || value.parse::<f64>().map_err(|e| bad(e.to_string()));
        let mode = |json: &str| format!("\"{json}\"");
        match self {
            GridParam::TauSem => cfg.tau_sem = num()?,
            GridParam::ApIouThreshold => cfg.ap_iou_threshold = num()?,
            GridParam::BoxThreshold => cfg.box_threshold = num()?,
            GridParam::TextThreshold => cfg.text_threshold = num()?,
            GridParam::AttributeMode => {
                cfg.attribute_mode = serde_json::from_str::<AttributeMode>(&mode(value))
                    .map_err(|e| bad(e.to_string()))?
            }
            GridParam::RelationMode => {
                cfg.relation_mode = serde_json::from_str::<RelationMode>(&mode(value))
                    .map_err(|e| bad(e.to_string()))?
            }
            GridParam::ForegroundMode => {
                cfg.foreground_mode = serde_json::from_str::<ForegroundMode>(&mode(value))
                    .map_err(|e| bad(e.to_string()))?
            }
            GridParam::Alpha => {
                cfg.alpha = parse_weights(value)
                    .map_err(bad)?
                    .try_into()
                    .map_err(|_| bad("expected three weights".into()))?
            }
            GridParam::Beta => {
                cfg.beta = parse_weights(value)
                    .map_err(bad)?
                    .try_into()
                    .map_err(|_| bad("expected four weights".into()))?
            }
            GridParam::GraphDir => roots.graph_dir = Some(PathBuf::from(value)),
            GridParam::MaskDir => roots.mask_dir = Some(PathBuf::from(value)),
        }
        Ok(())
    }
}

impl FromStr for GridParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GridParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown grid parameter `{s}`")))
    }
}

/// One swept parameter with its values, written `name=v1,v2,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridAxis {
    pub param: GridParam,
    pub values: Vec<String>,
}

impl FromStr for GridAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, values) = s
            .split_once('=')
            .ok_or_else(|| Error::InvalidConfig(format!("grid axis `{s}` is not name=values")))?;
        let values: Vec<String> = values
            .split(',')
            .map(str::trim)
            .filter(|v| !v.is_empty())
            .map(String::from)
            .collect();
        Ok(GridAxis {
            param: name.trim().parse()?,
            values,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    /// (parameter, value) in axis order.
    pub settings: Vec<(String, String)>,
    pub config: EvalConfig,
    pub roots: Roots,
}

/// Cartesian product of the axes applied on top of `base`. The last axis
/// varies fastest.
pub fn expand_grid(
    base: &EvalConfig,
    base_roots: &Roots,
    axes: &[GridAxis],
) -> Result<Vec<GridPoint>> {
    if axes.is_empty() || axes.iter().any(|a| a.values.is_empty()) {
        return Err(Error::InvalidConfig("empty grid".into()));
    }
    let mut points = vec![Vec::new()];
    for axis in axes {
        points = points
            .into_iter()
            .flat_map(|prefix: Vec<(GridParam, String)>| {
                axis.values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push((axis.param, v.clone()));
                    p
                })
            })
            .collect();
    }
    points
        .into_iter()
        .map(|settings| {
            let mut config = base.clone();
            let mut roots = base_roots.clone();
            for (param, value) in &settings {
                param.apply(value, &mut config, &mut roots)?;
            }
            if let Some(dir) = &roots.mask_dir {
                let filled = dir
                    .to_string_lossy()
                    .replace("{box}", &config.box_threshold.to_string())
                    .replace("{text}", &config.text_threshold.to_string());
                roots.mask_dir = Some(PathBuf::from(filled));
            }
            config.validate()?;
            Ok(GridPoint {
                settings: settings
                    .into_iter()
                    .map(|(p, v)| (p.name().to_string(), v))
                    .collect(),
                config,
                roots,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub settings: Vec<(String, String)>,
    pub rows: Vec<ReportRow>,
    pub failures: usize,
    /// Rank agreement with the base configuration.
    pub tau: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub axes: Vec<String>,
    pub base: Vec<ReportRow>,
    pub points: Vec<SweepPoint>,
}

fn rows_for(
    ev: &Evaluator,
    manifest: &RunManifest,
    roots: &Roots,
    scope: Scope,
    workers: usize,
) -> Result<(Vec<ReportRow>, usize)> {
    let outcome = ev.evaluate_manifest(manifest, roots, scope, workers)?;
    let scores: Vec<_> = outcome.results.iter().map(|r| r.scores.clone()).collect();
    let rows = aggregate(&scores, &ev.config)
        .iter()
        .map(ReportRow::from)
        .collect();
    Ok((rows, outcome.failures.len()))
}

fn tau_against(base: &[ReportRow], rows: &[ReportRow]) -> Result<f64> {
    let key = RankKey::for_rows(base)
        .filter(|k| RankKey::for_rows(rows).is_some_and(|r| r == *k))
        .ok_or_else(|| Error::MismatchedSets("no common ranking score".into()))?;
    kendall_tau(&ranking(base, key), &ranking(rows, key))
}

/// Evaluates the manifest at the base configuration and at every grid point.
pub fn run_sweep(
    ev: &Evaluator,
    manifest: &RunManifest,
    base_roots: &Roots,
    axes: &[GridAxis],
    scope: Scope,
    workers: usize,
) -> Result<SweepResult> {
    let grid = expand_grid(&ev.config, base_roots, axes)?;
    let (base, _) = rows_for(ev, manifest, base_roots, scope, workers)?;
    let mut points = Vec::with_capacity(grid.len());
    for point in grid {
        log::info!("sweep point {:?}", point.settings);
        let (rows, failures) = rows_for(
            &ev.with_config(point.config),
            manifest,
            &point.roots,
            scope,
            workers,
        )?;
        let tau = tau_against(&base, &rows)?;
        points.push(SweepPoint {
            settings: point.settings,
            rows,
            failures,
            tau,
        });
    }
    Ok(SweepResult {
        axes: axes.iter().map(|a| a.param.name().to_string()).collect(),
        base,
        points,
    })
}

impl SweepResult {
    /// Long-form table: one line per grid point and method.
    pub fn render_csv(&self) -> String {
        write_table(
            &self.axes,
            self.points.iter().flat_map(|p| {
                let settings: Vec<String> = p.settings.iter().map(|(_, v)| v.clone()).collect();
                p.rows.iter().map(move |r| (settings.clone(), r))
            }),
        )
    }

    pub fn render_tau_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = self
            .axes
            .iter()
            .map(String::as_str)
            .chain(["tau", "failures"]);
        w.write_record(header).expect("writing to memory");
        for p in &self.points {
            let record = p
                .settings
                .iter()
                .map(|(_, v)| v.clone())
                .chain([format!("{:.4}", p.tau), p.failures.to_string()]);
            w.write_record(record).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("utf-8 input")
    }
}
