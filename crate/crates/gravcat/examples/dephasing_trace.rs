//! Trace all three quantifiers through the correlated dephasing channel in
//! both telegraph regimes: monotone decay (tau < 1/4) versus collapse and
//! revival (tau > 1/4).

use gravcat::channel::{decoherence_factor, evolve_closed_form, memory_kernel, ChannelSpec};
use gravcat::quantifiers::{bell_max_closed, coherence_l1_closed, lqfi_closed};
use gravcat::state::{gibbs_closed_form, PhysicalParams};

fn main() -> Result<(), gravcat::GravcatError> {
    let s = gibbs_closed_form(&PhysicalParams::new(0.5, 1.0, 0.01)?)?;
    let mu = 0.8;
    for tau in [0.1, 5.0] {
        let spec = ChannelSpec::new(mu, tau)?;
        println!("tau = {tau} ({:?} regime), mu = {mu}:", spec.regime());
        println!("{:>6} {:>10} {:>10} {:>11} {:>9} {:>10}", "t", "f", "eta", "coherence", "lqfi", "bell_max");
        for k in 0..=10 {
            let t = k as f64 * 2.0;
            let f = memory_kernel(t, tau)?;
            let out = evolve_closed_form(&s, f, mu)?;
            println!(
                "{t:>6.1} {f:>10.5} {:>10.5} {:>11.6} {:>9.6} {:>10.6}",
                decoherence_factor(f, mu),
                coherence_l1_closed(&out),
                lqfi_closed(&out)?,
                bell_max_closed(&out),
            );
        }
        println!();
    }
    Ok(())
}
