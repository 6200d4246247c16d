//! Drive the sweep engine directly: LQFI over a (temperature, coupling)
//! surface, printed as CSV to stdout.

use gravcat::sweep::{
    csv_string, run_sweep, Axis, FixedParams, ParamName, Quantity, Scale, SweepSpec,
};

fn main() -> Result<(), gravcat::GravcatError> {
    let mut fixed = FixedParams::default();
    fixed.set(ParamName::Omega, 0.5);
    fixed.set(ParamName::Mu, 0.8);
    fixed.set(ParamName::Tau, 0.1);
    fixed.set(ParamName::Time, 2.0);
    let spec = SweepSpec {
        quantity: Quantity::Lqfi,
        x_axis: Axis { name: ParamName::Temp, min: 0.01, max: 2.0, steps: 21, scale: Scale::Log },
        y_axis: Some(Axis { name: ParamName::Gamma, min: 0.0, max: 2.0, steps: 5, scale: Scale::Linear }),
        fixed,
    };
    let table = run_sweep(&spec)?;
    print!("{}", csv_string(&table));
    Ok(())
}
