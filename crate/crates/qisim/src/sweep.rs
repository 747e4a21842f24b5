//! Cycle-count sweeps and the serialised forms the command line emits.
//!
//! A sweep runs one scheme at every N in a range and collects per-row
//! numbers. Rows are independent pure computations, so they may be evaluated
//! in parallel; the assembled output is ordered by N and formatted with
//! shortest round-trip floats, which makes repeated runs byte-identical
//! whether or not they were parallel.
//!
//! Row schemas are fixed per scheme. Columns that do not apply (three-atom
//! measures at other register sizes) hold NaN in CSV and null in JSON. An N
//! whose conditioned state is empty keeps its computed probability and
//! reports zero for fidelity and measures rather than aborting the sweep.

use crate::label::BasisLabel;
use crate::measures::MeasureResult;
use crate::schemes::{self, SchemeConfig, SchemeKind, SchemeOutput};
use crate::state::PureState;
use crate::{tol, Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

/// One sweep: a scheme configuration swept over an inclusive cycle range.
#[derive(Debug, Clone)]
pub struct SweepJob {
    /// Template configuration; its `cycles` field is overridden per row.
    pub config: SchemeConfig,
    pub n_min: u32,
    pub n_max: u32,
    pub step: u32,
    /// Re-derive every row from the closed form and fail on divergence.
    pub oracle_check: bool,
    /// Evaluate rows on worker threads. Output is identical either way.
    pub parallel: bool,
}

impl SweepJob {
    pub fn new(config: SchemeConfig, n_min: u32, n_max: u32, step: u32) -> Result<Self> {
        let job = SweepJob { config, n_min, n_max, step, oracle_check: false, parallel: true };
        job.validate()?;
        Ok(job)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_min < 1 || self.n_min > self.n_max || self.step < 1 {
            return Err(Error::InvalidConfig(format!(
                "bad cycle range {}..{} step {}",
                self.n_min, self.n_max, self.step
            )));
        }
        if self.oracle_check && self.config.scheme == SchemeKind::Photon {
            return Err(Error::InvalidConfig(
                "the measured-atom scheme has no closed form to check against".into(),
            ));
        }
        let mut probe = self.config.clone();
        probe.cycles = self.n_min;
        probe.validate()
    }

    pub fn cycle_counts(&self) -> Vec<u32> {
        (self.n_min..=self.n_max).step_by(self.step as usize).collect()
    }
}

/// One evaluated sweep row.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub cycles: u32,
    pub probability: f64,
    pub fidelity: f64,
    pub measures: MeasureResult,
    /// True when the conditioned state had no support at this N; fidelity and
    /// measures are reported as zero in that case.
    pub empty: bool,
}

/// Evaluate every row of a sweep. Row order follows the cycle range
/// regardless of evaluation order.
pub fn run_sweep(job: &SweepJob) -> Result<Vec<SweepRow>> {
    job.validate()?;
    let counts = job.cycle_counts();
    if job.parallel {
        counts.par_iter().map(|&n| evaluate_row(job, n)).collect()
    } else {
        counts.iter().map(|&n| evaluate_row(job, n)).collect()
    }
}

fn evaluate_row(job: &SweepJob, cycles: u32) -> Result<SweepRow> {
    let mut config = job.config.clone();
    config.cycles = cycles;
    match schemes::run(&config) {
        Ok(report) => {
            if job.oracle_check {
                check_against_closed_form(&config, report.probability, &report.output)?;
            }
            Ok(SweepRow {
                cycles,
                probability: report.probability,
                fidelity: report.fidelity,
                measures: report.measures,
                empty: false,
            })
        }
        Err(Error::EmptyConditionedState(probability)) => {
            if job.oracle_check {
                let (oracle_p, oracle_state) = schemes::closed_form_scheme_state(&config)?;
                if oracle_state.is_some() || (oracle_p - probability).abs() > tol::ORACLE_DIVERGENCE {
                    return Err(Error::OracleDivergence {
                        cycles,
                        detail: format!(
                            "simulation found no support (p = {probability:e}) but the closed form gives p = {oracle_p:e}"
                        ),
                    });
                }
            }
            Ok(SweepRow {
                cycles,
                probability,
                fidelity: 0.0,
                measures: MeasureResult::FidelityOnly,
                empty: true,
            })
        }
        Err(other) => Err(other),
    }
}

fn check_against_closed_form(
    config: &SchemeConfig,
    probability: f64,
    output: &SchemeOutput,
) -> Result<()> {
    let cycles = config.cycles;
    let (oracle_p, oracle_state) = schemes::closed_form_scheme_state(config)?;
    if (oracle_p - probability).abs() > tol::ORACLE_DIVERGENCE {
        return Err(Error::OracleDivergence {
            cycles,
            detail: format!("probability {probability} vs closed form {oracle_p}"),
        });
    }
    let oracle_state = oracle_state.ok_or(Error::OracleDivergence {
        cycles,
        detail: "closed form has no support but the simulation does".into(),
    })?;
    let simulated = match output {
        SchemeOutput::Pure(state) => state,
        SchemeOutput::Mixed(_) => unreachable!("oracle checks run on atom schemes only"),
    };
    let worst = worst_amplitude_difference(simulated, &oracle_state);
    if worst > tol::ORACLE_DIVERGENCE {
        return Err(Error::OracleDivergence {
            cycles,
            detail: format!("largest amplitude deviation {worst:e}"),
        });
    }
    Ok(())
}

/// Largest per-amplitude deviation between two phase-aligned states.
pub fn worst_amplitude_difference(a: &PureState, b: &PureState) -> f64 {
    let mut worst = 0.0f64;
    for (label, &amp) in a.terms() {
        worst = worst.max((amp - b.amplitude(label)).norm());
    }
    for (label, &amp) in b.terms() {
        worst = worst.max((amp - a.amplitude(label)).norm());
    }
    worst
}

fn row_columns(config: &SchemeConfig, row: &SweepRow) -> Vec<f64> {
    let three_atom = config.atoms == 3;
    match config.scheme {
        SchemeKind::Bell => {
            let tangle = match row.measures {
                MeasureResult::Tangle(t) => t,
                _ => 0.0,
            };
            vec![row.probability, row.fidelity, tangle]
        }
        SchemeKind::W => {
            let pairs = match row.measures {
                MeasureResult::PairwiseTangles(p) => [p.tangle_12, p.tangle_13, p.tangle_23],
                _ if three_atom => [0.0; 3],
                _ => [f64::NAN; 3],
            };
            vec![row.probability, row.fidelity, pairs[0], pairs[1], pairs[2]]
        }
        SchemeKind::Ghz => {
            let three_tangle = match row.measures {
                MeasureResult::ThreeTangle(t) => t,
                _ if three_atom => 0.0,
                _ => f64::NAN,
            };
            vec![row.probability, row.fidelity, three_tangle]
        }
        SchemeKind::Photon => vec![row.fidelity],
    }
}

fn header(scheme: SchemeKind) -> &'static str {
    match scheme {
        SchemeKind::Bell => "scheme,N,prob_success,fidelity,tangle",
        SchemeKind::W => "scheme,N,prob_success,fidelity,tangle_12,tangle_13,tangle_23",
        SchemeKind::Ghz => "scheme,N,prob_success,fidelity,three_tangle",
        SchemeKind::Photon => "scheme,N,fidelity",
    }
}

/// Render sweep rows as CSV with LF line endings and shortest round-trip
/// floats. Inapplicable columns render as NaN.
pub fn render_csv(config: &SchemeConfig, rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(header(config.scheme));
    out.push('\n');
    for row in rows {
        out.push_str(config.scheme.name());
        out.push(',');
        out.push_str(&row.cycles.to_string());
        for value in row_columns(config, row) {
            out.push(',');
            out.push_str(&value.to_string());
        }
        out.push('\n');
    }
    out
}

#[derive(serde::Serialize)]
struct JsonSweep<'a> {
    scheme: &'a str,
    atoms: usize,
    photons: usize,
    rows: Vec<JsonRow>,
}

#[derive(serde::Serialize)]
struct JsonRow {
    #[serde(rename = "N")]
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    prob_success: Option<f64>,
    fidelity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tangle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tangle_12: Option<Option<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tangle_13: Option<Option<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tangle_23: Option<Option<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    three_tangle: Option<Option<f64>>,
}

/// Render sweep rows as JSON. Column layout matches the CSV schema; NaN
/// becomes null.
pub fn render_json(config: &SchemeConfig, rows: &[SweepRow]) -> String {
    let nullable = |v: f64| if v.is_nan() { None } else { Some(v) };
    let json_rows = rows
        .iter()
        .map(|row| {
            let columns = row_columns(config, row);
            let mut json = JsonRow {
                n: row.cycles,
                prob_success: None,
                fidelity: 0.0,
                tangle: None,
                tangle_12: None,
                tangle_13: None,
                tangle_23: None,
                three_tangle: None,
            };
            match config.scheme {
                SchemeKind::Bell => {
                    json.prob_success = Some(columns[0]);
                    json.fidelity = columns[1];
                    json.tangle = Some(columns[2]);
                }
                SchemeKind::W => {
                    json.prob_success = Some(columns[0]);
                    json.fidelity = columns[1];
                    json.tangle_12 = Some(nullable(columns[2]));
                    json.tangle_13 = Some(nullable(columns[3]));
                    json.tangle_23 = Some(nullable(columns[4]));
                }
                SchemeKind::Ghz => {
                    json.prob_success = Some(columns[0]);
                    json.fidelity = columns[1];
                    json.three_tangle = Some(nullable(columns[2]));
                }
                SchemeKind::Photon => {
                    json.fidelity = columns[0];
                }
            }
            json
        })
        .collect();
    let doc = JsonSweep {
        scheme: config.scheme.name(),
        atoms: config.atoms,
        photons: config.photons,
        rows: json_rows,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("sweep rows always serialise");
    text.push('\n');
    text
}

/// Serialised conditioned register state, as emitted by the `state` command.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct StateDump {
    pub scheme: String,
    pub cycles: u32,
    /// Probability of the detection pattern that produced the state.
    pub probability: f64,
    /// Phase-aligned amplitudes over atom bit patterns, largest first in
    /// label order, below [`tol::DISPLAY_AMPLITUDE`] omitted.
    pub amplitudes: Vec<AmplitudeEntry>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct AmplitudeEntry {
    /// Atom bits as a string, most significant atom first, e.g. "01".
    pub label: String,
    pub re: f64,
    pub im: f64,
}

/// Capture a conditioned atom-register state for serialisation.
pub fn state_dump(config: &SchemeConfig, probability: f64, state: &PureState) -> StateDump {
    let amplitudes = state
        .terms()
        .filter(|(_, amp)| amp.norm() >= tol::DISPLAY_AMPLITUDE)
        .map(|(label, amp)| AmplitudeEntry {
            label: (0..state.num_atoms()).map(|i| char::from(b'0' + label.atom(i))).collect(),
            re: amp.re,
            im: amp.im,
        })
        .collect();
    StateDump {
        scheme: config.scheme.name().to_string(),
        cycles: config.cycles,
        probability,
        amplitudes,
    }
}

impl StateDump {
    /// Rebuild the pure state this dump describes.
    pub fn to_state(&self) -> Result<PureState> {
        let atoms = self.amplitudes.first().map_or(0, |e| e.label.len());
        let mut terms = Vec::with_capacity(self.amplitudes.len());
        for entry in &self.amplitudes {
            if entry.label.len() != atoms || !entry.label.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::MalformedLabel);
            }
            let bits: Vec<u8> = entry.label.bytes().map(|b| b - b'0').collect();
            terms.push((BasisLabel::logical(&bits, &[])?, Complex64::new(entry.re, entry.im)));
        }
        PureState::from_terms(atoms, 0, terms)
    }

    pub fn render_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("state dumps always serialise");
        text.push('\n');
        text
    }

    pub fn parse_json(text: &str) -> Result<StateDump> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("bad state dump: {e}")))
    }

    /// Amplitude table with LF line endings: `label,re,im` per row.
    pub fn render_csv(&self) -> String {
        let mut out = String::from("label,re,im\n");
        for entry in &self.amplitudes {
            out.push_str(&format!("{},{},{}\n", entry.label, entry.re, entry.im));
        }
        out
    }
}

/// Analytic large-N values for one atom scheme, plus the published reference
/// number that does not match the computed norm limit.
#[derive(Debug, Clone, Copy)]
pub struct LimitsTable {
    pub scheme: SchemeKind,
    /// Limit of the detection probability for the balanced preparation.
    pub probability: f64,
    pub fidelity: f64,
    /// Which entanglement measure the scheme converges in.
    pub measure_name: &'static str,
    pub measure_value: f64,
    /// Reference value published alongside the scheme; it disagrees with the
    /// computed probability limit and is reported unreconciled.
    pub reference_probability: f64,
}

/// The large-N limits of one atom scheme with the balanced preparation.
pub fn limits(scheme: SchemeKind) -> Result<LimitsTable> {
    match scheme {
        SchemeKind::Bell => Ok(LimitsTable {
            scheme,
            probability: 0.5,
            fidelity: 1.0,
            measure_name: "tangle",
            measure_value: 1.0,
            reference_probability: 0.25,
        }),
        SchemeKind::W => Ok(LimitsTable {
            scheme,
            probability: 0.375,
            fidelity: 1.0,
            measure_name: "pairwise tangle",
            measure_value: 4.0 / 9.0,
            reference_probability: 9.0 / 64.0,
        }),
        SchemeKind::Ghz => Ok(LimitsTable {
            scheme,
            probability: 0.25,
            fidelity: 1.0,
            measure_name: "three-tangle",
            measure_value: 1.0,
            reference_probability: 2.0 / 64.0,
        }),
        SchemeKind::Photon => Err(Error::InvalidConfig(
            "limits cover the conditioned atom schemes".into(),
        )),
    }
}

impl LimitsTable {
    pub fn render_text(&self) -> String {
        format!(
            "scheme: {}\n\
             probability limit (computed): {}\n\
             fidelity limit: {}\n\
             {} limit: {}\n\
             published reference value (unreconciled): {}\n",
            self.scheme.name(),
            self.probability,
            self.fidelity,
            self.measure_name,
            self.measure_value,
            self.reference_probability,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell_job(n_min: u32, n_max: u32) -> SweepJob {
        SweepJob::new(SchemeConfig::bell(1), n_min, n_max, 1).unwrap()
    }

    #[test]
    fn parallel_and_sequential_rows_render_identically() {
        for scheme in [
            SchemeConfig::bell(1),
            SchemeConfig::w(1, 3),
            SchemeConfig::ghz(1, 3),
            SchemeConfig::photon(1, 2),
        ] {
            let mut job = SweepJob::new(scheme, 1, 12, 1).unwrap();
            job.parallel = true;
            let parallel = run_sweep(&job).unwrap();
            job.parallel = false;
            let sequential = run_sweep(&job).unwrap();
            assert_eq!(
                render_csv(&job.config, &parallel),
                render_csv(&job.config, &sequential)
            );
            assert_eq!(
                render_json(&job.config, &parallel),
                render_json(&job.config, &sequential)
            );
        }
    }

    #[test]
    fn bell_csv_has_expected_first_row() {
        let rows = run_sweep(&bell_job(1, 3)).unwrap();
        let csv = render_csv(&SchemeConfig::bell(1), &rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "scheme,N,prob_success,fidelity,tangle");
        let first = lines.next().unwrap();
        let fields: Vec<&str> = first.split(',').collect();
        assert_eq!(fields[0], "bell");
        assert_eq!(fields[1], "1");
        assert!((fields[2].parse::<f64>().unwrap() - 0.5).abs() < 1e-12);
        assert!((fields[3].parse::<f64>().unwrap() - 0.5).abs() < 1e-12);
        assert!(fields[4].parse::<f64>().unwrap() < 1e-12);
    }

    #[test]
    fn empty_rows_keep_the_sweep_alive() {
        let job = SweepJob::new(SchemeConfig::w(1, 3), 1, 3, 1).unwrap();
        let rows = run_sweep(&job).unwrap();
        assert!(rows[0].empty);
        assert!(rows[0].probability < 1e-14);
        assert_eq!(rows[0].fidelity, 0.0);
        assert!(!rows[2].empty);
        let csv = render_csv(&job.config, &rows);
        assert_eq!(csv.lines().count(), 4);
        let zero_row = csv.lines().nth(1).unwrap();
        assert!(zero_row.ends_with(",0,0,0,0"));
    }

    #[test]
    fn oracle_check_passes_on_canonical_plans() {
        let mut job = SweepJob::new(SchemeConfig::ghz(1, 3), 1, 10, 1).unwrap();
        job.oracle_check = true;
        run_sweep(&job).unwrap();

        let mut w_job = SweepJob::new(SchemeConfig::w(1, 3), 1, 10, 1).unwrap();
        w_job.oracle_check = true;
        run_sweep(&w_job).unwrap();
    }

    #[test]
    fn oracle_check_rejects_the_measured_atom_scheme() {
        let mut job = SweepJob::new(SchemeConfig::photon(1, 2), 1, 4, 1).unwrap();
        job.oracle_check = true;
        assert!(matches!(run_sweep(&job), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn four_atom_sweep_marks_unavailable_columns() {
        let job = SweepJob::new(SchemeConfig::ghz(1, 4), 2, 2, 1).unwrap();
        let rows = run_sweep(&job).unwrap();
        let csv = render_csv(&job.config, &rows);
        assert!(csv.lines().nth(1).unwrap().ends_with(",NaN"));
        let json = render_json(&job.config, &rows);
        assert!(json.contains("\"three_tangle\": null"));
    }

    #[test]
    fn state_dump_round_trips() {
        let report = schemes::run(&SchemeConfig::bell(7)).unwrap();
        let state = match &report.output {
            SchemeOutput::Pure(s) => s.clone(),
            _ => unreachable!(),
        };
        let dump = state_dump(&SchemeConfig::bell(7), report.probability, &state);
        let json = dump.render_json();
        let parsed = StateDump::parse_json(&json).unwrap();
        let rebuilt = parsed.to_state().unwrap();
        assert!(worst_amplitude_difference(&state, &rebuilt) < 1e-15);
        assert_eq!(parsed.cycles, 7);

        let csv = dump.render_csv();
        assert!(csv.starts_with("label,re,im\n"));
        assert_eq!(csv.lines().count(), 1 + dump.amplitudes.len());
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        assert!(SweepJob::new(SchemeConfig::bell(1), 0, 5, 1).is_err());
        assert!(SweepJob::new(SchemeConfig::bell(1), 5, 2, 1).is_err());
        assert!(SweepJob::new(SchemeConfig::bell(1), 1, 5, 0).is_err());
    }

    #[test]
    fn limits_tables_carry_the_reference_values() {
        let bell = limits(SchemeKind::Bell).unwrap();
        assert_eq!(bell.probability, 0.5);
        assert_eq!(bell.reference_probability, 0.25);
        assert!(bell.render_text().contains("unreconciled"));

        let w = limits(SchemeKind::W).unwrap();
        assert_eq!(w.probability, 0.375);
        assert_eq!(w.reference_probability, 0.140625);

        let ghz = limits(SchemeKind::Ghz).unwrap();
        assert_eq!(ghz.probability, 0.25);
        assert_eq!(ghz.reference_probability, 0.03125);

        assert!(limits(SchemeKind::Photon).is_err());
    }
}
