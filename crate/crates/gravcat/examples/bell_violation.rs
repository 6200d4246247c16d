//! Where does the evolved state still violate the CHSH bound?  Scan the
//! channel correlation mu at the long-time limit and report the threshold.

use gravcat::channel::evolve_closed_form;
use gravcat::quantifiers::{bell_max_closed, violation_flag, BELL_CEILING};
use gravcat::state::{gibbs_closed_form, PhysicalParams};

fn main() -> Result<(), gravcat::GravcatError> {
    let s = gibbs_closed_form(&PhysicalParams::new(0.5, 2.0, 0.01)?)?;
    println!("initial bell_max = {:.6} (ceiling 2*sqrt(2) = {BELL_CEILING:.6})", bell_max_closed(&s));
    println!();
    println!("long-time limit (f = 0), bell_max as a function of mu:");
    let mut threshold = None;
    for k in 0..=20 {
        let mu = k as f64 / 20.0;
        let out = evolve_closed_form(&s, 0.0, mu)?;
        let b = bell_max_closed(&out);
        let violated = violation_flag(b);
        if violated && threshold.is_none() {
            threshold = Some(mu);
        }
        println!("  mu = {mu:>4.2}  bell_max = {b:.6}  violation = {violated}");
    }
    match threshold {
        Some(mu) => println!("\nnonlocality survives the channel for mu >= {mu}"),
        None => println!("\nno violation at any mu on this grid"),
    }
    Ok(())
}
