//! Parameter sweeps over the closed-form pipeline and the figure presets,
//! with CSV and SVG emitters.
//!
//! A sweep fixes a quantity (coherence, LQFI, or Bell), varies one or two
//! parameters over a grid, and evaluates the closed-form pipeline at every
//! point. The figure presets bundle the sweeps behind the published panels:
//! time/temperature, time/correlation, time/energy-gap, and time/coupling
//! surfaces in both memory regimes, fixed-correlation time traces, and the
//! correlation-dependence curves at fixed kernel value.

use std::fmt;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::channel::{decoherence_factor, memory_kernel};
use crate::error::{GravcatError, Result};
use crate::quantifiers::{bell_max_closed, coherence_l1_closed, lqfi_closed};
use crate::state::{gibbs_closed_form, PhysicalParams};

/// Which quantifier a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Coherence,
    Lqfi,
    Bell,
}

impl Quantity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quantity::Coherence => "coherence",
            Quantity::Lqfi => "lqfi",
            Quantity::Bell => "bell",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "coherence" => Ok(Quantity::Coherence),
            "lqfi" => Ok(Quantity::Lqfi),
            "bell" => Ok(Quantity::Bell),
            other => Err(GravcatError::Sweep(format!(
                "unknown quantity {other:?} (expected coherence, lqfi, or bell)"
            ))),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sweepable parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamName {
    Omega,
    Gamma,
    Temp,
    Mu,
    Tau,
    Time,
    Kernel,
}

impl ParamName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ParamName::Omega => "omega",
            ParamName::Gamma => "gamma",
            ParamName::Temp => "temp",
            ParamName::Mu => "mu",
            ParamName::Tau => "tau",
            ParamName::Time => "t",
            ParamName::Kernel => "f",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "omega" => Ok(ParamName::Omega),
            "gamma" => Ok(ParamName::Gamma),
            "temp" => Ok(ParamName::Temp),
            "mu" => Ok(ParamName::Mu),
            "tau" => Ok(ParamName::Tau),
            "t" => Ok(ParamName::Time),
            "f" => Ok(ParamName::Kernel),
            other => Err(GravcatError::Sweep(format!(
                "unknown parameter {other:?} (expected omega, gamma, temp, mu, tau, t, or f)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// One sweep axis: a parameter name with a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: ParamName,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub scale: Scale,
}

impl Axis {
    pub fn linear(name: ParamName, min: f64, max: f64, steps: usize) -> Self {
        Self { name, min, max, steps, scale: Scale::Linear }
    }

    pub fn log(name: ParamName, min: f64, max: f64, steps: usize) -> Self {
        Self { name, min, max, steps, scale: Scale::Log }
    }

    fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(GravcatError::Sweep(format!(
                "axis {} needs at least 2 steps, got {}",
                self.name.as_str(),
                self.steps
            )));
        }
        if !(self.min < self.max) {
            return Err(GravcatError::Sweep(format!(
                "axis {} needs min < max, got {}..{}",
                self.name.as_str(),
                self.min,
                self.max
            )));
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return Err(GravcatError::Sweep(format!(
                "log axis {} needs min > 0",
                self.name.as_str()
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                let frac = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.min + frac * (self.max - self.min),
                    Scale::Log => (self.min.ln() + frac * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

/// Fixed values for the parameters not carried by an axis.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FixedParams {
    pub omega: Option<f64>,
    pub gamma: Option<f64>,
    pub temp: Option<f64>,
    pub mu: Option<f64>,
    pub tau: Option<f64>,
    pub t: Option<f64>,
    pub f: Option<f64>,
}

impl FixedParams {
    fn get(&self, name: ParamName) -> Option<f64> {
        match name {
            ParamName::Omega => self.omega,
            ParamName::Gamma => self.gamma,
            ParamName::Temp => self.temp,
            ParamName::Mu => self.mu,
            ParamName::Tau => self.tau,
            ParamName::Time => self.t,
            ParamName::Kernel => self.f,
        }
    }

    pub fn set(&mut self, name: ParamName, value: f64) {
        match name {
            ParamName::Omega => self.omega = Some(value),
            ParamName::Gamma => self.gamma = Some(value),
            ParamName::Temp => self.temp = Some(value),
            ParamName::Mu => self.mu = Some(value),
            ParamName::Tau => self.tau = Some(value),
            ParamName::Time => self.t = Some(value),
            ParamName::Kernel => self.f = Some(value),
        }
    }
}

/// A fully specified sweep: quantity, one or two axes, and the remaining
/// parameters pinned.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub x_axis: Axis,
    pub y_axis: Option<Axis>,
    pub fixed: FixedParams,
}

/// A fully resolved parameter point.
#[derive(Debug, Clone, Copy)]
struct Point {
    omega: f64,
    gamma: f64,
    temp: f64,
    mu: f64,
    /// Some(t, tau) when time-parameterized, None when f is given directly.
    time: Option<(f64, f64)>,
    f_direct: Option<f64>,
}

impl SweepSpec {
    fn axis_names(&self) -> Vec<ParamName> {
        let mut names = vec![self.x_axis.name];
        if let Some(y) = &self.y_axis {
            names.push(y.name);
        }
        names
    }

    fn lookup(&self, name: ParamName, x: f64, y: f64) -> Option<f64> {
        if self.x_axis.name == name {
            return Some(x);
        }
        if let Some(ya) = &self.y_axis {
            if ya.name == name {
                return Some(y);
            }
        }
        self.fixed.get(name)
    }

    /// Check axis and fixed-parameter consistency before evaluating anything.
    pub fn validate(&self) -> Result<()> {
        self.x_axis.validate()?;
        if let Some(y) = &self.y_axis {
            y.validate()?;
            if y.name == self.x_axis.name {
                return Err(GravcatError::Sweep(format!(
                    "axes must reference distinct parameters, both are {}",
                    y.name.as_str()
                )));
            }
        }
        let axes = self.axis_names();
        for name in [
            ParamName::Omega,
            ParamName::Gamma,
            ParamName::Temp,
            ParamName::Mu,
            ParamName::Tau,
            ParamName::Time,
            ParamName::Kernel,
        ] {
            if axes.contains(&name) && self.fixed.get(name).is_some() {
                return Err(GravcatError::Sweep(format!(
                    "parameter {} is both an axis and fixed",
                    name.as_str()
                )));
            }
        }
        let has = |n: ParamName| axes.contains(&n) || self.fixed.get(n).is_some();
        for required in [ParamName::Omega, ParamName::Gamma, ParamName::Temp, ParamName::Mu] {
            if !has(required) {
                return Err(GravcatError::Sweep(format!(
                    "parameter {} is undetermined",
                    required.as_str()
                )));
            }
        }
        let kernel_given = has(ParamName::Kernel);
        let time_given = has(ParamName::Time) || has(ParamName::Tau);
        if kernel_given && time_given {
            return Err(GravcatError::Sweep(
                "t/tau and f are mutually exclusive; give either a kernel value or a time".into(),
            ));
        }
        if !kernel_given && !(has(ParamName::Time) && has(ParamName::Tau)) {
            return Err(GravcatError::Sweep(
                "either f, or both t and tau, must be determined".into(),
            ));
        }
        Ok(())
    }

    fn point(&self, x: f64, y: f64) -> Point {
        let get = |n| self.lookup(n, x, y);
        Point {
            omega: get(ParamName::Omega).expect("validated"),
            gamma: get(ParamName::Gamma).expect("validated"),
            temp: get(ParamName::Temp).expect("validated"),
            mu: get(ParamName::Mu).expect("validated"),
            time: get(ParamName::Time).zip(get(ParamName::Tau)),
            f_direct: get(ParamName::Kernel),
        }
    }
}

/// One evaluated grid point as it appears in the CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    /// x-axis value of this point.
    pub x: f64,
    /// Evolution time, NaN when the sweep is parameterized by f directly.
    pub t: f64,
    pub f: f64,
    pub eta: f64,
    pub value: f64,
}

/// One series of rows sharing a second-parameter value (a y grid line or a
/// preset curve); `None` means the series is the plain x grid and the
/// second-parameter column repeats the x value.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub param2_value: Option<f64>,
    pub rows: Vec<Row>,
}

/// Evaluated sweep output in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub quantity: Quantity,
    /// Metadata lines emitted as `# ...` comments ahead of the CSV header.
    pub meta: Vec<String>,
    pub x_axis: Axis,
    pub y_axis: Option<Axis>,
    pub param2_name: &'static str,
    pub series: Vec<Series>,
}

fn evaluate_point(p: &Point, quantity: Quantity, x: f64) -> Result<Row> {
    let params = PhysicalParams::new(p.omega, p.gamma, p.temp)?;
    let state = gibbs_closed_form(&params)?;
    let (t, f) = match (p.f_direct, p.time) {
        (Some(f), _) => {
            if !(-1.0..=1.0).contains(&f) {
                return Err(GravcatError::Domain(format!("f must lie in [-1,1], got {f}")));
            }
            (f64::NAN, f)
        }
        (None, Some((t, tau))) => (t, memory_kernel(t, tau)?),
        (None, None) => unreachable!("spec validated"),
    };
    if !(0.0..=1.0).contains(&p.mu) {
        return Err(GravcatError::Domain(format!("mu must lie in [0,1], got {}", p.mu)));
    }
    let out = state.with_eta(decoherence_factor(f, p.mu));
    let value = match quantity {
        Quantity::Coherence => coherence_l1_closed(&out),
        Quantity::Lqfi => lqfi_closed(&out)?,
        Quantity::Bell => bell_max_closed(&out),
    };
    Ok(Row { x, t, f, eta: out.eta, value })
}

fn run_sweep_impl(spec: &SweepSpec, parallel: bool) -> Result<SweepTable> {
    spec.validate()?;
    let xs = spec.x_axis.values();
    let ys = spec.y_axis.as_ref().map(|a| a.values());

    // Reject invalid fixed parameters before any evaluation.
    let probe_y = ys.as_ref().map_or(0.0, |v| v[0]);
    evaluate_point(&spec.point(xs[0], probe_y), spec.quantity, xs[0])?;

    let grid: Vec<(f64, f64)> = match &ys {
        Some(ys) => ys.iter().flat_map(|&y| xs.iter().map(move |&x| (x, y))).collect(),
        None => xs.iter().map(|&x| (x, 0.0)).collect(),
    };
    let eval = |&(x, y): &(f64, f64)| evaluate_point(&spec.point(x, y), spec.quantity, x);
    let rows: Vec<Row> = if parallel {
        grid.par_iter().map(eval).collect::<Result<_>>()?
    } else {
        grid.iter().map(eval).collect::<Result<_>>()?
    };

    let (param2_name, series) = match &ys {
        Some(yv) => {
            let name = spec.y_axis.as_ref().expect("y values imply y axis").name.as_str();
            let series = yv
                .iter()
                .enumerate()
                .map(|(k, &y)| Series {
                    param2_value: Some(y),
                    rows: rows[k * xs.len()..(k + 1) * xs.len()].to_vec(),
                })
                .collect();
            (name, series)
        }
        None => {
            let name = spec.x_axis.name.as_str();
            (name, vec![Series { param2_value: None, rows }])
        }
    };

    Ok(SweepTable {
        quantity: spec.quantity,
        meta: Vec::new(),
        x_axis: spec.x_axis.clone(),
        y_axis: spec.y_axis.clone(),
        param2_name,
        series,
    })
}

/// Evaluate a sweep with grid points fanned out across worker threads.
/// Output ordering is row-major over (y, x) regardless of scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    run_sweep_impl(spec, true)
}

/// Serial evaluation, used to cross-check that parallel fan-out does not
/// change the output.
pub fn run_sweep_serial(spec: &SweepSpec) -> Result<SweepTable> {
    run_sweep_impl(spec, false)
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

/// Default number of grid points per axis.
pub const DEFAULT_AXIS_STEPS: usize = 201;

/// One output panel: a name (used as the file stem) and either a single
/// 1-D/2-D sweep or a family of curve sweeps tagged by a parameter.
#[derive(Debug, Clone)]
pub struct Panel {
    pub name: String,
    pub meta: Vec<String>,
    specs: Vec<(Option<f64>, SweepSpec)>,
    curve_param: Option<ParamName>,
}

/// A named set of panels matching one published figure.
#[derive(Debug, Clone)]
pub struct FigurePreset {
    pub id: String,
    pub panels: Vec<Panel>,
}

/// All panel ids accepted by [`figure_preset`].
pub fn known_figure_ids() -> Vec<String> {
    let mut ids = Vec::new();
    for fig in 2..=7 {
        for panel in ["a", "b", "c", "d"] {
            ids.push(format!("{fig}{panel}"));
        }
    }
    for fig in 8..=10 {
        for panel in ["a", "b", "c"] {
            ids.push(format!("{fig}{panel}"));
        }
        ids.push(format!("{fig}abc"));
    }
    ids
}

fn surface_panel(fig: u32, panel: char, steps: usize) -> Panel {
    let quantity = match fig {
        2 | 3 => Quantity::Coherence,
        4 | 5 => Quantity::Lqfi,
        _ => Quantity::Bell,
    };
    let tau = if fig.is_multiple_of(2) { 0.1 } else { 5.0 };
    let t_max = if fig.is_multiple_of(2) { 20.0 } else { 30.0 };
    let mut fixed = FixedParams { tau: Some(tau), ..Default::default() };
    let y_axis = match panel {
        'a' => {
            fixed.omega = Some(0.5);
            fixed.gamma = Some(1.0);
            fixed.mu = Some(0.8);
            Axis::log(ParamName::Temp, 0.01, 2.0, steps)
        }
        'b' => {
            fixed.omega = Some(0.5);
            fixed.gamma = Some(1.0);
            fixed.temp = Some(0.01);
            Axis::linear(ParamName::Mu, 0.0, 1.0, steps)
        }
        'c' => {
            fixed.gamma = Some(1.0);
            fixed.temp = Some(0.01);
            fixed.mu = Some(0.8);
            Axis::linear(ParamName::Omega, 0.0, 2.0, steps)
        }
        _ => {
            fixed.omega = Some(0.5);
            fixed.temp = Some(0.01);
            fixed.mu = Some(0.8);
            Axis::linear(ParamName::Gamma, 0.0, 2.0, steps)
        }
    };
    let spec = SweepSpec {
        quantity,
        x_axis: Axis::linear(ParamName::Time, 0.0, t_max, steps),
        y_axis: Some(y_axis),
        fixed,
    };
    Panel {
        name: format!("{fig}{panel}"),
        meta: vec![format!("preset={fig}{panel}")],
        specs: vec![(None, spec)],
        curve_param: None,
    }
}

fn mu_curve_panel(fig: u32, panel: char, steps: usize) -> Panel {
    let quantity = match panel {
        'a' => Quantity::Coherence,
        'b' => Quantity::Lqfi,
        _ => Quantity::Bell,
    };
    let tau = if fig == 8 { 0.1 } else { 5.0 };
    let t_max = if fig == 8 { 20.0 } else { 30.0 };
    let specs = [0.0, 0.4, 0.8, 1.0]
        .iter()
        .map(|&mu| {
            let spec = SweepSpec {
                quantity,
                x_axis: Axis::linear(ParamName::Time, 0.0, t_max, steps),
                y_axis: None,
                fixed: FixedParams {
                    omega: Some(0.5),
                    gamma: Some(2.0),
                    temp: Some(0.01),
                    mu: Some(mu),
                    tau: Some(tau),
                    ..Default::default()
                },
            };
            (Some(mu), spec)
        })
        .collect();
    Panel {
        name: format!("{fig}{panel}"),
        meta: vec![format!("preset={fig}{panel}")],
        specs,
        curve_param: Some(ParamName::Mu),
    }
}

fn f_curve_panel(panel: char, steps: usize) -> Panel {
    let quantity = match panel {
        'a' => Quantity::Coherence,
        'b' => Quantity::Lqfi,
        _ => Quantity::Bell,
    };
    // The per-curve f lands in the CSV's own f column, so the param2 column
    // keeps carrying the swept mu; no series re-tagging here.
    let specs = [0.8, 0.6, 0.4, 0.2, 0.0]
        .iter()
        .map(|&f| {
            let spec = SweepSpec {
                quantity,
                x_axis: Axis::linear(ParamName::Mu, 0.0, 1.0, steps),
                y_axis: None,
                fixed: FixedParams {
                    omega: Some(0.5),
                    gamma: Some(2.0),
                    temp: Some(0.01),
                    f: Some(f),
                    ..Default::default()
                },
            };
            (None, spec)
        })
        .collect();
    Panel {
        name: format!("10{panel}"),
        // The published caption leaves (omega, gamma, T) open; the adjacent
        // comparative figures fix 4 omega = gamma = 2, T = 0.01, so that is
        // adopted here and recorded in the output.
        meta: vec![
            format!("preset=10{panel}"),
            "assumed_params=omega=0.5,gamma=2,temp=0.01".to_string(),
        ],
        specs,
        curve_param: None,
    }
}

/// Resolve a figure id ("2a".."7d", "8a".."10c", or the grouped "8abc",
/// "9abc", "10abc") into its panels with the given per-axis resolution.
pub fn figure_preset_with_steps(id: &str, steps: usize) -> Result<FigurePreset> {
    let panels: Vec<Panel> = match id {
        "8abc" | "9abc" => {
            let fig = if id.starts_with('8') { 8 } else { 9 };
            "abc".chars().map(|p| mu_curve_panel(fig, p, steps)).collect()
        }
        "10abc" => "abc".chars().map(|p| f_curve_panel(p, steps)).collect(),
        _ => {
            let (fig, panel) = parse_panel_id(id)?;
            vec![match fig {
                2..=7 => surface_panel(fig, panel, steps),
                8 | 9 => mu_curve_panel(fig, panel, steps),
                _ => f_curve_panel(panel, steps),
            }]
        }
    };
    Ok(FigurePreset { id: id.to_string(), panels })
}

/// [`figure_preset_with_steps`] at the default resolution.
pub fn figure_preset(id: &str) -> Result<FigurePreset> {
    figure_preset_with_steps(id, DEFAULT_AXIS_STEPS)
}

fn parse_panel_id(id: &str) -> Result<(u32, char)> {
    let bad = || GravcatError::UnknownFigure(id.to_string(), known_figure_ids().join(", "));
    let split = id.len().checked_sub(1).ok_or_else(bad)?;
    let (num, letter) = id.split_at(split);
    let fig: u32 = num.parse().map_err(|_| bad())?;
    let panel = letter.chars().next().ok_or_else(bad)?;
    let ok = match fig {
        2..=7 => ('a'..='d').contains(&panel),
        8..=10 => ('a'..='c').contains(&panel),
        _ => false,
    };
    if !ok {
        return Err(bad());
    }
    Ok((fig, panel))
}

impl Panel {
    fn run(&self, parallel: bool) -> Result<SweepTable> {
        let mut merged: Option<SweepTable> = None;
        for (curve_value, spec) in &self.specs {
            let mut table =
                if parallel { run_sweep(spec)? } else { run_sweep_serial(spec)? };
            if let (Some(v), Some(param)) = (curve_value, self.curve_param) {
                for s in &mut table.series {
                    s.param2_value = Some(*v);
                }
                table.param2_name = param.as_str();
            }
            match &mut merged {
                None => merged = Some(table),
                Some(m) => m.series.extend(table.series),
            }
        }
        let mut table = merged.expect("panel has at least one spec");
        table.meta = self.meta.clone();
        Ok(table)
    }
}

/// Run every panel of a preset, returning (panel name, table) pairs.
pub fn run_figure(preset: &FigurePreset) -> Result<Vec<(String, SweepTable)>> {
    run_figure_impl(preset, true)
}

/// Serial twin of [`run_figure`] for determinism checks.
pub fn run_figure_serial(preset: &FigurePreset) -> Result<Vec<(String, SweepTable)>> {
    run_figure_impl(preset, false)
}

fn run_figure_impl(preset: &FigurePreset, parallel: bool) -> Result<Vec<(String, SweepTable)>> {
    preset
        .panels
        .iter()
        .map(|p| Ok((p.name.clone(), p.run(parallel)?)))
        .collect()
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

/// Serialize with 17 significant digits so parsing reproduces the exact bits.
fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Render a table as CSV: optional `# key=value` metadata lines, then the
/// header `t,f,eta,param2_name,param2_value,quantity,value`, then one row per
/// grid point in (series, x) order.
pub fn csv_string(table: &SweepTable) -> String {
    let mut out = String::new();
    for line in &table.meta {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str("t,f,eta,param2_name,param2_value,quantity,value\n");
    for series in &table.series {
        for row in &series.rows {
            let param2 = series.param2_value.unwrap_or(row.x);
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                fmt_num(row.t),
                fmt_num(row.f),
                fmt_num(row.eta),
                table.param2_name,
                fmt_num(param2),
                table.quantity,
                fmt_num(row.value),
            ));
        }
    }
    out
}

/// Write [`csv_string`] output to a file.
pub fn emit_csv(table: &SweepTable, destination: &Path) -> Result<()> {
    if table.series.iter().all(|s| s.rows.is_empty()) {
        return Err(GravcatError::EmptyTable);
    }
    let mut file = std::fs::File::create(destination)?;
    file.write_all(csv_string(table).as_bytes())?;
    Ok(())
}

/// Plot dimensions and labels for the SVG emitter.
#[derive(Debug, Clone)]
pub struct SvgStyle {
    pub width: f64,
    pub height: f64,
    pub title: String,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self { width: 640.0, height: 480.0, title: String::new() }
    }
}

const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 45.0;

const SERIES_COLORS: [&str; 8] =
    ["#000000", "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];

fn fmt_coord(x: f64) -> String {
    format!("{x:.3}")
}

fn fmt_tick(x: f64) -> String {
    format!("{x:.4}")
}

/// Render a table as a standalone SVG document: a line plot (one polyline
/// per series) for 1-D tables, a heatmap (one rect per cell, monotone
/// grayscale-to-blue ramp) for 2-D grids. Byte output is deterministic for
/// identical input.
pub fn svg_string(table: &SweepTable, style: &SvgStyle) -> Result<String> {
    if table.series.iter().all(|s| s.rows.is_empty()) {
        return Err(GravcatError::EmptyTable);
    }
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        style.width, style.height, style.width, style.height
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");
    if !style.title.is_empty() {
        out.push_str(&format!(
            "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n",
            fmt_coord(style.width / 2.0),
            style.title
        ));
    }
    let plot_w = style.width - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = style.height - MARGIN_TOP - MARGIN_BOTTOM;

    if table.y_axis.is_some() {
        heatmap_body(table, &mut out, plot_w, plot_h)?;
    } else {
        line_plot_body(table, &mut out, plot_w, plot_h);
    }

    // axes frame and labels
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\"/>\n",
        fmt_coord(MARGIN_LEFT),
        fmt_coord(MARGIN_TOP),
        fmt_coord(plot_w),
        fmt_coord(plot_h)
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
        fmt_coord(MARGIN_LEFT + plot_w / 2.0),
        fmt_coord(MARGIN_TOP + plot_h + 35.0),
        table.x_axis.name.as_str()
    ));
    let y_label = table
        .y_axis
        .as_ref()
        .map(|a| a.name.as_str())
        .unwrap_or(table.quantity.as_str());
    out.push_str(&format!(
        "<text x=\"15\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 15 {})\">{}</text>\n",
        fmt_coord(MARGIN_TOP + plot_h / 2.0),
        fmt_coord(MARGIN_TOP + plot_h / 2.0),
        y_label
    ));
    out.push_str("</svg>\n");
    Ok(out)
}

fn data_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !(hi > lo) {
        // flat data: open a symmetric window so the polyline stays visible
        hi = lo + 1.0;
        lo -= 1.0;
    }
    (lo, hi)
}

fn line_plot_body(table: &SweepTable, out: &mut String, plot_w: f64, plot_h: f64) {
    let (x_lo, x_hi) = (table.x_axis.min, table.x_axis.max);
    let (v_lo, v_hi) =
        data_range(table.series.iter().flat_map(|s| s.rows.iter().map(|r| r.value)));
    let sx = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |v: f64| MARGIN_TOP + (v_hi - v) / (v_hi - v_lo) * plot_h;

    for k in 0..=4 {
        let xv = x_lo + (x_hi - x_lo) * k as f64 / 4.0;
        let vv = v_lo + (v_hi - v_lo) * k as f64 / 4.0;
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">{}</text>\n",
            fmt_coord(sx(xv)),
            fmt_coord(MARGIN_TOP + plot_h + 15.0),
            fmt_tick(xv)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">{}</text>\n",
            fmt_coord(MARGIN_LEFT - 5.0),
            fmt_coord(sy(vv) + 3.0),
            fmt_tick(vv)
        ));
    }

    for (idx, series) in table.series.iter().enumerate() {
        let color = SERIES_COLORS[idx % SERIES_COLORS.len()];
        let points: Vec<String> = series
            .rows
            .iter()
            .map(|r| format!("{},{}", fmt_coord(sx(r.x)), fmt_coord(sy(r.value))))
            .collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
    }
}

fn heatmap_body(table: &SweepTable, out: &mut String, plot_w: f64, plot_h: f64) -> Result<()> {
    let xs = table.x_axis.values();
    let y_axis = table.y_axis.as_ref().expect("heatmap requires a y axis");
    let (v_lo, v_hi) =
        data_range(table.series.iter().flat_map(|s| s.rows.iter().map(|r| r.value)));
    let ny = table.series.len();
    let nx = xs.len();
    let cell_w = plot_w / nx as f64;
    let cell_h = plot_h / ny as f64;
    for (yi, series) in table.series.iter().enumerate() {
        for (xi, row) in series.rows.iter().enumerate() {
            // monotone ramp: white at the minimum, saturated blue at the maximum
            let frac = (row.value - v_lo) / (v_hi - v_lo);
            let ch = |from: f64, to: f64| (from + frac * (to - from)).round() as u8;
            let (r, g, b) = (ch(255.0, 8.0), ch(255.0, 48.0), ch(255.0, 107.0));
            out.push_str(&format!(
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#{r:02x}{g:02x}{b:02x}\"/>\n",
                fmt_coord(MARGIN_LEFT + xi as f64 * cell_w),
                fmt_coord(MARGIN_TOP + plot_h - (yi + 1) as f64 * cell_h),
                fmt_coord(cell_w),
                fmt_coord(cell_h)
            ));
        }
    }
    for (k, label) in [(0usize, table.x_axis.min), (nx - 1, table.x_axis.max)] {
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">{}</text>\n",
            fmt_coord(MARGIN_LEFT + (k as f64 + 0.5) * cell_w),
            fmt_coord(MARGIN_TOP + plot_h + 15.0),
            fmt_tick(label)
        ));
    }
    for (k, label) in [(0usize, y_axis.min), (ny - 1, y_axis.max)] {
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">{}</text>\n",
            fmt_coord(MARGIN_LEFT - 5.0),
            fmt_coord(MARGIN_TOP + plot_h - (k as f64 + 0.5) * cell_h + 3.0),
            fmt_tick(label)
        ));
    }
    Ok(())
}

/// Write [`svg_string`] output to a file.
pub fn emit_svg(table: &SweepTable, style: &SvgStyle, destination: &Path) -> Result<()> {
    let mut file = std::fs::File::create(destination)?;
    file.write_all(svg_string(table, style)?.as_bytes())?;
    Ok(())
}
