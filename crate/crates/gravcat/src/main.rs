//! Command-line frontend: state construction, single-shot evolution,
//! parameter sweeps, figure reproduction, and oracle verification.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gravcat::channel::{evolve_closed_form, memory_kernel};
use gravcat::quantifiers::{evaluate_closed, violation_flag};
use gravcat::state::{gibbs_closed_form, PhysicalParams};
use gravcat::sweep::{
    csv_string, emit_csv, emit_svg, figure_preset, run_figure, run_figure_serial, run_sweep,
    run_sweep_serial, Axis, FixedParams, ParamName, Quantity, Scale, SvgStyle, SweepSpec,
};
use gravcat::verify::{GridSize, Report};
use gravcat::GravcatError;

#[derive(Parser)]
#[command(name = "gravcat", version, about = "Thermal gravcat states in correlated dephasing channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ThermalFlags {
    /// Energy gap
    #[arg(long, default_value_t = 0.5)]
    omega: f64,
    /// Gravitational coupling strength
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Temperature
    #[arg(long, default_value_t = 0.01)]
    temp: f64,
}

#[derive(Args)]
struct ChannelFlags {
    /// Classical correlation degree of the channel
    #[arg(long, default_value_t = 0.8)]
    mu: f64,
    /// Telegraph time-scale
    #[arg(long, default_value_t = 0.1)]
    tau: f64,
    /// Evolution time
    #[arg(long, default_value_t = 0.0, conflicts_with = "f")]
    t: f64,
    /// Kernel value, bypassing the time evolution (for infinite-time studies)
    #[arg(long)]
    f: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the thermal X-state entries and eigenvalues
    State(ThermalFlags),
    /// Evolve through the channel and print all three quantifiers
    Evolve {
        #[command(flatten)]
        thermal: ThermalFlags,
        #[command(flatten)]
        channel: ChannelFlags,
    },
    /// Run a parameter sweep and emit CSV (and optionally SVG)
    Sweep {
        /// Quantity to evaluate: coherence, lqfi, or bell
        #[arg(long, default_value = "coherence")]
        quantity: String,
        /// Swept axis, `name:min:max:steps[:log]`
        #[arg(long)]
        x: String,
        /// Optional second axis, same grammar
        #[arg(long)]
        y: Option<String>,
        #[command(flatten)]
        thermal: ThermalFlags,
        #[command(flatten)]
        channel: ChannelFlags,
        /// CSV destination (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot here
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Evaluate the grid serially instead of across workers
        #[arg(long)]
        serial: bool,
    },
    /// Reproduce a published figure panel as CSV (and optionally SVG)
    Figure {
        /// Panel id such as 2a, 7d, 8abc, 10c
        id: String,
        /// Output directory
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Also write SVG plots
        #[arg(long)]
        svg: bool,
        /// Grid points per axis
        #[arg(long)]
        steps: Option<usize>,
        /// Evaluate the grids serially instead of across workers
        #[arg(long)]
        serial: bool,
    },
    /// Run all closed-form vs oracle comparisons and report deviations
    Verify {
        /// Override every tolerance with this value
        #[arg(long)]
        tol: Option<f64>,
        /// Grid size: small or full
        #[arg(long, default_value = "full")]
        grid: String,
    },
}

/// Parse `name:min:max:steps[:log]`.
fn parse_axis(s: &str) -> Result<Axis, GravcatError> {
    let err = || {
        GravcatError::Sweep(format!(
            "bad axis spec {s:?}; expected name:min:max:steps[:log], e.g. t:0:20:201"
        ))
    };
    let parts: Vec<&str> = s.split(':').collect();
    if !(4..=5).contains(&parts.len()) {
        return Err(err());
    }
    let name = ParamName::parse(parts[0])?;
    let min: f64 = parts[1].parse().map_err(|_| err())?;
    let max: f64 = parts[2].parse().map_err(|_| err())?;
    let steps: usize = parts[3].parse().map_err(|_| err())?;
    let scale = match parts.get(4) {
        None => Scale::Linear,
        Some(&"log") => Scale::Log,
        Some(_) => return Err(err()),
    };
    Ok(Axis { name, min, max, steps, scale })
}

fn cmd_state(flags: &ThermalFlags) -> Result<(), GravcatError> {
    let p = PhysicalParams::new(flags.omega, flags.gamma, flags.temp)?;
    let s = gibbs_closed_form(&p)?;
    let alpha = p.alpha();
    let z = 2.0 * ((alpha / p.temperature).cosh() + (p.gamma / p.temperature).cosh());
    println!("alpha   = {:.12}", alpha);
    println!("Z       = {:.6e}", z);
    println!("a_minus = {:.12}", s.a_minus);
    println!("a_plus  = {:.12}", s.a_plus);
    println!("b       = {:.12}", s.b);
    println!("c       = {:.12}", s.c);
    println!("d       = {:.12}", s.d);
    let ev = s.eigenvalues();
    println!("eigenvalues = [{:.12}, {:.12}, {:.12}, {:.12}]", ev[0], ev[1], ev[2], ev[3]);
    Ok(())
}

fn cmd_evolve(thermal: &ThermalFlags, channel: &ChannelFlags) -> Result<(), GravcatError> {
    let p = PhysicalParams::new(thermal.omega, thermal.gamma, thermal.temp)?;
    let s = gibbs_closed_form(&p)?;
    let (t, f) = match channel.f {
        Some(f) => {
            if !(-1.0..=1.0).contains(&f) {
                return Err(GravcatError::Domain(format!("f must lie in [-1,1], got {f}")));
            }
            (f64::NAN, f)
        }
        None => (channel.t, memory_kernel(channel.t, channel.tau)?),
    };
    let out = evolve_closed_form(&s, f, channel.mu)?;
    let record = evaluate_closed(&out, t, f)?;
    println!("f         = {:.12}", record.f);
    println!("eta       = {:.12}", record.eta);
    println!("coherence = {:.12}", record.coherence);
    println!("lqfi      = {:.12}", record.lqfi);
    println!("bell_max  = {:.12}", record.bell_max);
    println!("violation = {}", violation_flag(record.bell_max));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    quantity: &str,
    x: &str,
    y: Option<&str>,
    thermal: &ThermalFlags,
    channel: &ChannelFlags,
    out: Option<&PathBuf>,
    svg: Option<&PathBuf>,
    serial: bool,
) -> Result<(), GravcatError> {
    let x_axis = parse_axis(x)?;
    let y_axis = y.map(parse_axis).transpose()?;
    let mut fixed = FixedParams::default();
    // Flags only pin parameters that no axis claims; axis names win.
    let axis_names: Vec<ParamName> = std::iter::once(x_axis.name)
        .chain(y_axis.iter().map(|a| a.name))
        .collect();
    let mut pin = |name: ParamName, value: f64| {
        if !axis_names.contains(&name) {
            fixed.set(name, value);
        }
    };
    pin(ParamName::Omega, thermal.omega);
    pin(ParamName::Gamma, thermal.gamma);
    pin(ParamName::Temp, thermal.temp);
    pin(ParamName::Mu, channel.mu);
    match channel.f {
        Some(f) => pin(ParamName::Kernel, f),
        None => {
            if !axis_names.contains(&ParamName::Kernel) {
                pin(ParamName::Tau, channel.tau);
                pin(ParamName::Time, channel.t);
            }
        }
    }
    let spec = SweepSpec { quantity: Quantity::parse(quantity)?, x_axis, y_axis, fixed };
    let table = if serial { run_sweep_serial(&spec)? } else { run_sweep(&spec)? };
    match out {
        Some(path) => emit_csv(&table, path)?,
        None => print!("{}", csv_string(&table)),
    }
    if let Some(path) = svg {
        emit_svg(&table, &SvgStyle::default(), path)?;
    }
    Ok(())
}

fn cmd_figure(
    id: &str,
    out_dir: &PathBuf,
    svg: bool,
    steps: Option<usize>,
    serial: bool,
) -> Result<(), GravcatError> {
    let preset = match steps {
        Some(n) => gravcat::sweep::figure_preset_with_steps(id, n)?,
        None => figure_preset(id)?,
    };
    std::fs::create_dir_all(out_dir)?;
    let tables = if serial { run_figure_serial(&preset)? } else { run_figure(&preset)? };
    for (name, table) in tables {
        let csv_path = out_dir.join(format!("{name}.csv"));
        emit_csv(&table, &csv_path)?;
        println!("wrote {}", csv_path.display());
        if svg {
            let svg_path = out_dir.join(format!("{name}.svg"));
            let style = SvgStyle { title: format!("figure {name}"), ..Default::default() };
            emit_svg(&table, &style, &svg_path)?;
            println!("wrote {}", svg_path.display());
        }
    }
    Ok(())
}

fn print_report(report: &Report) {
    for check in &report.checks {
        println!(
            "{:5} {:45} max deviation {:.3e} (tolerance {:.1e})",
            if check.passed() { "PASS" } else { "FAIL" },
            check.name,
            check.max_deviation,
            check.tolerance
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::State(flags) => cmd_state(flags),
        Command::Evolve { thermal, channel } => cmd_evolve(thermal, channel),
        Command::Sweep { quantity, x, y, thermal, channel, out, svg, serial } => cmd_sweep(
            quantity,
            x,
            y.as_deref(),
            thermal,
            channel,
            out.as_ref(),
            svg.as_ref(),
            *serial,
        ),
        Command::Figure { id, out_dir, svg, steps, serial } => {
            cmd_figure(id, out_dir, *svg, *steps, *serial)
        }
        Command::Verify { tol, grid } => {
            let size = match grid.as_str() {
                "small" => GridSize::Small,
                "full" => GridSize::Full,
                other => {
                    eprintln!("error: unknown grid {other:?} (expected small or full)");
                    return ExitCode::from(2);
                }
            };
            match gravcat::verify::run(size, *tol) {
                Ok(report) => {
                    print_report(&report);
                    return if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
                }
                Err(e) => Err(e),
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
