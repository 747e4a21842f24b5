//! Sweeping with the closed-form cross-check on: every row is recomputed
//! analytically and the worst per-amplitude deviation is reported.

use qisim::schemes::closed_form_scheme_state;
use qisim::{run, run_sweep, SchemeConfig, SchemeOutput, SweepJob};

fn main() -> Result<(), qisim::Error> {
    // The sweep itself aborts (exit path, not a row) if any row diverges
    // past the oracle tolerance; this run is expected to stay quiet.
    let mut job = SweepJob::new(SchemeConfig::ghz(1, 3), 1, 64, 1)?;
    job.oracle_check = true;
    let rows = run_sweep(&job)?;
    println!("ghz sweep with oracle check: {} rows, no divergence", rows.len());

    // The same comparison by hand at one cycle count, for the record.
    let config = SchemeConfig::ghz(48, 3);
    let report = run(&config)?;
    let (probability, reference) = closed_form_scheme_state(&config)?;
    let SchemeOutput::Pure(state) = &report.output else {
        unreachable!("ghz yields a conditioned pure state");
    };
    let worst = qisim::worst_amplitude_difference(state, &reference.expect("nonempty at N=48"));
    println!("N = 48: |P_sim - P_closed| = {:.3e}", (report.probability - probability).abs());
    println!("        worst amplitude deviation = {worst:.3e}");
    Ok(())
}
