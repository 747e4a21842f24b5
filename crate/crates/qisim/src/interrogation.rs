//! The N-cycle interrogation gate and its closed-form map.
//!
//! One interrogation couples one atom to one photon. The photon enters the
//! cycle loop after a half-wave phase on its upper mode, is rotated by
//! theta = pi/(2N) each cycle, and meets the atom's absorber after every
//! rotation; a final mode swap closes the gate. An atom in its transparent
//! state (bit 0) leaves the photon exactly unchanged. An absorbing atom
//! (bit 1) either flips the photon to mode1 with amplitude cos^N(theta) or
//! scatters it: the photon is lost under a cycle-stamped tag and the atom
//! decays to bit 0.
//!
//! `closed_form_map` provides the same gate as an explicit amplitude table,
//! derived independently of the cycle loop; the two routes are held together
//! by tests and by the `--oracle-check` sweep mode.

use crate::label::{BasisLabel, PhotonMode, PhotonSlot, Register, ScatterEvent};
use crate::state::{Matrix2, PureState};
use crate::{Amplitude, Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Which port convention the gate uses. `QR` is the same physical gate with
/// both photon ports relabelled, i.e. conjugation by a mode swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PortVariant {
    Q,
    QR,
}

/// One interrogation: which atom and photon it couples, how many cycles, the
/// port convention, and the index that stamps its scatter tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterrogationSpec {
    pub atom: usize,
    pub photon: usize,
    pub cycles: u32,
    pub variant: PortVariant,
    /// Unique per interrogation within a run; keeps scatter tags distinct.
    pub index: u32,
}

impl InterrogationSpec {
    pub fn new(atom: usize, photon: usize, cycles: u32, variant: PortVariant, index: u32) -> Self {
        InterrogationSpec { atom, photon, cycles, variant, index }
    }

    /// Per-cycle splitting angle, pi/(2N).
    pub fn theta(&self) -> f64 {
        PI / (2.0 * f64::from(self.cycles))
    }

    /// Beam splitter reflectivity cos^2(theta).
    pub fn reflectivity(&self) -> f64 {
        self.theta().cos().powi(2)
    }
}

/// Rotate one photon's logical modes by `theta`:
/// mode0 -> cos(theta) mode0 + sin(theta) mode1,
/// mode1 -> cos(theta) mode1 - sin(theta) mode0.
/// Lost terms pass through untouched.
pub fn beam_splitter(state: &PureState, photon: usize, theta: f64) -> Result<PureState> {
    state.apply_single_qubit_gate(Register::Photon(photon), &Matrix2::rotation(theta))
}

/// Apply one absorber pass: every term with the atom at bit 1 and the photon
/// in mode1 becomes atom bit 0 with the photon lost under `event`. All other
/// terms are unchanged. The event triple must be unique within the run.
pub fn absorber(state: &PureState, atom: usize, photon: usize, event: ScatterEvent) -> Result<PureState> {
    state.absorb(atom, photon, event)
}

/// Numerically evolved action of one full interrogation on the interrogated
/// photon: a 2x2 logical block plus, for the absorbing atom, one scatter
/// amplitude pair per cycle. Built by running the actual cycle loop on the
/// two logical basis inputs; every term then receives the map by linearity.
struct GateTable {
    /// `logical[out][in]` over photon modes.
    logical: [[Amplitude; 2]; 2],
    /// `scatter[cycle][in]`; empty for the transparent atom.
    scatter: Vec<[Amplitude; 2]>,
}

fn cycle_table(spec: &InterrogationSpec, absorbing: bool) -> GateTable {
    let theta = spec.theta();
    let (c, s) = (theta.cos(), theta.sin());
    let swap_rows = |m: &mut [[Amplitude; 2]; 2]| m.swap(0, 1);

    // Columns of `m` track where each logical basis input currently sits.
    let mut m = [
        [Complex64::ONE, Complex64::ZERO],
        [Complex64::ZERO, Complex64::ONE],
    ];
    let mut scatter = Vec::new();
    if spec.variant == PortVariant::QR {
        swap_rows(&mut m);
    }
    // Half-wave phase on mode1.
    m[1] = [-m[1][0], -m[1][1]];
    for _ in 0..spec.cycles {
        let (top, bottom) = (m[0], m[1]);
        for i in 0..2 {
            m[0][i] = c * top[i] - s * bottom[i];
            m[1][i] = s * top[i] + c * bottom[i];
        }
        if absorbing {
            // The absorber takes the whole mode1 amplitude out of the loop.
            scatter.push(m[1]);
            m[1] = [Complex64::ZERO; 2];
        }
    }
    // Closing mode swap.
    swap_rows(&mut m);
    if spec.variant == PortVariant::QR {
        swap_rows(&mut m);
    }
    GateTable { logical: m, scatter }
}

/// Run the full N-cycle interrogation.
///
/// Terms whose photon is already lost are untouched. The amplitude pattern on
/// basis inputs matches [`closed_form_map`]; superpositions follow by
/// linearity.
pub fn interrogate(state: &PureState, spec: &InterrogationSpec) -> Result<PureState> {
    if spec.cycles == 0 {
        return Err(Error::ZeroCycles);
    }
    state.check_register(Register::Atom(spec.atom))?;
    state.check_register(Register::Photon(spec.photon))?;

    let transparent = cycle_table(spec, false);
    let absorbing = cycle_table(spec, true);

    let mut out: BTreeMap<BasisLabel, Amplitude> = BTreeMap::new();
    let mut push = |label: BasisLabel, value: Amplitude| -> Result<()> {
        if !value.is_finite() {
            return Err(Error::NonFiniteAmplitude("interrogation"));
        }
        if value != Complex64::ZERO {
            *out.entry(label).or_insert(Complex64::ZERO) += value;
        }
        Ok(())
    };

    for (label, &amp) in state.terms() {
        let slot = label.photon(spec.photon);
        let Some(mode) = slot.mode() else {
            push(label.clone(), amp)?;
            continue;
        };
        let input = mode.bit() as usize;
        let table = if label.atom(spec.atom) == 1 { &absorbing } else { &transparent };
        for (out_bit, out_mode) in [(0usize, PhotonMode::Mode0), (1, PhotonMode::Mode1)] {
            push(label.with_photon(spec.photon, out_mode), table.logical[out_bit][input] * amp)?;
        }
        if !table.scatter.is_empty() {
            let decayed = label.with_atom(spec.atom, 0);
            for (cycle, pair) in table.scatter.iter().enumerate() {
                let event =
                    ScatterEvent { photon: spec.photon, interrogation: spec.index, cycle: cycle as u32 };
                push(decayed.with_scatter(event), pair[input] * amp)?;
            }
        }
    }
    out.retain(|_, a| *a != Complex64::ZERO);
    Ok(PureState::from_map(state.num_atoms(), state.num_photons(), out))
}

/// The interrogation gate in its many-cycle limit, as an exact logic table:
/// a transparent atom changes nothing; an absorbing atom flips the photon
/// mode0 -> mode1, while mode1 is scattered with amplitude -1 (tagged with
/// cycle 0). `QR` is the port-swapped relabelling.
pub fn interrogate_ideal(state: &PureState, spec: &InterrogationSpec) -> Result<PureState> {
    state.check_register(Register::Atom(spec.atom))?;
    state.check_register(Register::Photon(spec.photon))?;
    let flip = spec.variant == PortVariant::QR;
    let mut terms: BTreeMap<BasisLabel, Amplitude> = BTreeMap::new();
    for (label, &amp) in state.terms() {
        let slot = label.photon(spec.photon);
        let (out_label, out_amp) = match (label.atom(spec.atom), slot.mode()) {
            (1, Some(mode)) => {
                let logical_in = if flip { mode.flipped() } else { mode };
                match logical_in {
                    PhotonMode::Mode0 => {
                        let out_mode = if flip { PhotonMode::Mode0 } else { PhotonMode::Mode1 };
                        (label.with_photon(spec.photon, out_mode), amp)
                    }
                    PhotonMode::Mode1 => {
                        let event = ScatterEvent {
                            photon: spec.photon,
                            interrogation: spec.index,
                            cycle: 0,
                        };
                        (label.with_atom(spec.atom, 0).with_scatter(event), -amp)
                    }
                }
            }
            _ => (label.clone(), amp),
        };
        *terms.entry(out_label).or_insert(Complex64::ZERO) += out_amp;
    }
    terms.retain(|_, a| *a != Complex64::ZERO);
    Ok(PureState::from_map(state.num_atoms(), state.num_photons(), terms))
}

/// One output term of the closed-form interrogation map. `Scattered` means
/// the atom ends at bit 0 and the photon is lost in the given cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapTerm {
    Logical { atom: u8, photon: PhotonMode },
    Scattered { cycle: u32 },
}

/// Closed-form amplitude table of one interrogation on a basis input, with
/// c = cos(pi/2N) and s = sin(pi/2N):
///
/// * transparent atom: identity on either mode;
/// * absorbing atom, mode0 in: mode1 out with c^N, scatter in cycle j with s c^j;
/// * absorbing atom, mode1 in: mode1 out with s c^(N-1), scatter in cycle 0
///   with -c, scatter in cycle j >= 1 with s^2 c^(j-1).
///
/// The `QR` table is the `Q` table of the flipped input with flipped logical
/// outputs; scatter cycles are unchanged by the relabelling.
pub fn closed_form_map(
    atom_in: u8,
    photon_in: PhotonMode,
    cycles: u32,
    variant: PortVariant,
) -> Result<Vec<(MapTerm, Amplitude)>> {
    if cycles == 0 {
        return Err(Error::ZeroCycles);
    }
    if atom_in > 1 {
        return Err(Error::MalformedLabel);
    }
    if variant == PortVariant::QR {
        let inner = closed_form_map(atom_in, photon_in.flipped(), cycles, PortVariant::Q)?;
        return Ok(inner
            .into_iter()
            .map(|(term, amp)| match term {
                MapTerm::Logical { atom, photon } => {
                    (MapTerm::Logical { atom, photon: photon.flipped() }, amp)
                }
                scattered => (scattered, amp),
            })
            .collect());
    }

    let n = cycles;
    let theta = PI / (2.0 * f64::from(n));
    let (c, s) = (theta.cos(), theta.sin());
    let amp = |x: f64| Complex64::new(x, 0.0);

    let mut out = Vec::new();
    match (atom_in, photon_in) {
        (0, p) => out.push((MapTerm::Logical { atom: 0, photon: p }, Complex64::ONE)),
        (1, PhotonMode::Mode0) => {
            out.push((MapTerm::Logical { atom: 1, photon: PhotonMode::Mode1 }, amp(c.powi(n as i32))));
            for j in 0..n {
                out.push((MapTerm::Scattered { cycle: j }, amp(s * c.powi(j as i32))));
            }
        }
        (1, PhotonMode::Mode1) => {
            out.push((
                MapTerm::Logical { atom: 1, photon: PhotonMode::Mode1 },
                amp(s * c.powi(n as i32 - 1)),
            ));
            out.push((MapTerm::Scattered { cycle: 0 }, amp(-c)));
            for j in 1..n {
                out.push((MapTerm::Scattered { cycle: j }, amp(s * s * c.powi(j as i32 - 1))));
            }
        }
        _ => unreachable!(),
    }
    Ok(out)
}

/// Closed-form output instantiated as a one-atom, one-photon state, with
/// scatter tags stamped by `spec.index`. Register indices in `spec` must be
/// zero. Useful as the oracle side of a gate-level comparison.
pub fn closed_form_state(atom_in: u8, photon_in: PhotonMode, spec: &InterrogationSpec) -> Result<PureState> {
    if spec.atom != 0 || spec.photon != 0 {
        return Err(Error::InvalidConfig(
            "closed_form_state describes a single atom-photon pair; register indices must be 0".into(),
        ));
    }
    let map = closed_form_map(atom_in, photon_in, spec.cycles, spec.variant)?;
    let mut terms = Vec::with_capacity(map.len());
    for (term, amp) in map {
        let label = match term {
            MapTerm::Logical { atom, photon } => BasisLabel::logical(&[atom], &[photon])?,
            MapTerm::Scattered { cycle } => BasisLabel::new(
                vec![0],
                vec![PhotonSlot::Lost],
                vec![ScatterEvent { photon: 0, interrogation: spec.index, cycle }],
            )?,
        };
        terms.push((label, amp));
    }
    PureState::from_terms(1, 1, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cplx;
    use crate::tol;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn basis_input(atom: u8, photon: PhotonMode) -> PureState {
        let amps = if atom == 0 {
            (Complex64::ONE, Complex64::ZERO)
        } else {
            (Complex64::ZERO, Complex64::ONE)
        };
        PureState::product(&[amps], &[photon]).unwrap()
    }

    fn spec(cycles: u32, variant: PortVariant) -> InterrogationSpec {
        InterrogationSpec::new(0, 0, cycles, variant, 0)
    }

    fn assert_states_close(a: &PureState, b: &PureState, tolerance: f64) {
        for (label, amp) in a.terms() {
            assert!(
                (amp - b.amplitude(label)).norm() <= tolerance,
                "amplitude mismatch at {label}: {amp} vs {}",
                b.amplitude(label)
            );
        }
        for (label, amp) in b.terms() {
            assert!((amp - a.amplitude(label)).norm() <= tolerance, "extra term {label} = {amp}");
        }
    }

    #[test]
    fn beam_splitter_mixes_modes() {
        let s = basis_input(0, PhotonMode::Mode0);
        let out = beam_splitter(&s, 0, PI / 4.0).unwrap();
        let m0 = BasisLabel::logical(&[0], &[PhotonMode::Mode0]).unwrap();
        let m1 = BasisLabel::logical(&[0], &[PhotonMode::Mode1]).unwrap();
        assert!((out.amplitude(&m0).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((out.amplitude(&m1).re - FRAC_1_SQRT_2).abs() < 1e-15);

        let s1 = basis_input(0, PhotonMode::Mode1);
        let out1 = beam_splitter(&s1, 0, PI / 6.0).unwrap();
        assert!((out1.amplitude(&m0).re + 0.5).abs() < 1e-15);
        assert!((out1.amplitude(&m1).re - (PI / 6.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn beam_splitter_leaves_lost_terms() {
        let e = ScatterEvent { photon: 0, interrogation: 0, cycle: 0 };
        let lost = BasisLabel::new(vec![0], vec![PhotonSlot::Lost], vec![e]).unwrap();
        let s = PureState::from_terms(1, 1, [(lost.clone(), Complex64::ONE)]).unwrap();
        let out = beam_splitter(&s, 0, 0.3).unwrap();
        assert_eq!(out.amplitude(&lost), Complex64::ONE);
    }

    #[test]
    fn absorber_moves_excited_mode1_terms_only() {
        let h = cplx(FRAC_1_SQRT_2, 0.0);
        let s = PureState::product(&[(h, h)], &[PhotonMode::Mode1]).unwrap();
        let event = ScatterEvent { photon: 0, interrogation: 3, cycle: 2 };
        let out = absorber(&s, 0, 0, event).unwrap();
        let stay = BasisLabel::logical(&[0], &[PhotonMode::Mode1]).unwrap();
        let gone = BasisLabel::new(vec![0], vec![PhotonSlot::Lost], vec![event]).unwrap();
        assert!((out.amplitude(&stay).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((out.amplitude(&gone).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((out.norm_sqr() - 1.0).abs() < tol::NORM_CONSERVATION);

        // Mode0 never absorbs, whatever the atom is doing.
        let s0 = basis_input(1, PhotonMode::Mode0);
        let out0 = absorber(&s0, 0, 0, event).unwrap();
        let keep = BasisLabel::logical(&[1], &[PhotonMode::Mode0]).unwrap();
        assert_eq!(out0.amplitude(&keep), Complex64::ONE);
    }

    #[test]
    fn transparent_atom_leaves_photon_exactly() {
        for n in [1u32, 2, 5, 38] {
            for mode in [PhotonMode::Mode0, PhotonMode::Mode1] {
                let out = interrogate(&basis_input(0, mode), &spec(n, PortVariant::Q)).unwrap();
                let expect = BasisLabel::logical(&[0], &[mode]).unwrap();
                assert!((out.amplitude(&expect) - Complex64::ONE).norm() < 1e-12);
                assert!(out.num_terms() <= 2);
            }
        }
    }

    #[test]
    fn single_cycle_scatters_mode0_probe_entirely() {
        let out = interrogate(&basis_input(1, PhotonMode::Mode0), &spec(1, PortVariant::Q)).unwrap();
        let lost = BasisLabel::new(
            vec![0],
            vec![PhotonSlot::Lost],
            vec![ScatterEvent { photon: 0, interrogation: 0, cycle: 0 }],
        )
        .unwrap();
        assert!((out.amplitude(&lost) - Complex64::ONE).norm() < 1e-12);

        // The mode1 probe survives in place: the phase and the swap cancel.
        let out1 = interrogate(&basis_input(1, PhotonMode::Mode1), &spec(1, PortVariant::Q)).unwrap();
        let stay = BasisLabel::logical(&[1], &[PhotonMode::Mode1]).unwrap();
        assert!((out1.amplitude(&stay) - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn survival_amplitude_follows_cosine_power() {
        let n = 10u32;
        let out = interrogate(&basis_input(1, PhotonMode::Mode0), &spec(n, PortVariant::Q)).unwrap();
        let survived = BasisLabel::logical(&[1], &[PhotonMode::Mode1]).unwrap();
        let survival = out.amplitude(&survived).norm_sqr();
        let expect = (PI / 20.0).cos().powi(20);
        assert!((survival - expect).abs() < 1e-12);
        assert!((survival - 0.781).abs() < 1e-3);
        assert!((out.norm_sqr() - 1.0).abs() < tol::NORM_CONSERVATION);
    }

    #[test]
    fn interrogate_matches_closed_form_on_all_basis_inputs() {
        for n in [1u32, 2, 3, 7, 16] {
            for variant in [PortVariant::Q, PortVariant::QR] {
                for atom in 0..2u8 {
                    for mode in [PhotonMode::Mode0, PhotonMode::Mode1] {
                        let sim = interrogate(&basis_input(atom, mode), &spec(n, variant)).unwrap();
                        let oracle = closed_form_state(atom, mode, &spec(n, variant)).unwrap();
                        assert_states_close(&sim, &oracle, 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn interrogate_matches_naive_gate_composition() {
        let h = cplx(FRAC_1_SQRT_2, 0.0);
        let input = PureState::product(&[(h, h)], &[PhotonMode::Mode0]).unwrap();
        let n = 5u32;
        let sp = spec(n, PortVariant::Q);

        let mut naive = input
            .apply_single_qubit_gate(Register::Photon(0), &Matrix2::pauli_z())
            .unwrap();
        for cycle in 0..n {
            naive = beam_splitter(&naive, 0, sp.theta()).unwrap();
            naive = absorber(&naive, 0, 0, ScatterEvent { photon: 0, interrogation: 0, cycle }).unwrap();
        }
        naive = naive
            .apply_single_qubit_gate(Register::Photon(0), &Matrix2::pauli_x())
            .unwrap();

        let fast = interrogate(&input, &sp).unwrap();
        assert_states_close(&fast, &naive, 1e-13);
    }

    #[test]
    fn closed_form_map_conserves_probability() {
        for n in 1..=40u32 {
            for variant in [PortVariant::Q, PortVariant::QR] {
                for atom in 0..2u8 {
                    for mode in [PhotonMode::Mode0, PhotonMode::Mode1] {
                        let total: f64 = closed_form_map(atom, mode, n, variant)
                            .unwrap()
                            .iter()
                            .map(|(_, a)| a.norm_sqr())
                            .sum();
                        assert!((total - 1.0).abs() < 1e-12, "norm {total} at N={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn port_swap_exchanges_roles() {
        // Under QR the mode1 probe is the one that interrogates: it survives
        // to mode0 with c^N, while mode0 is the fragile input.
        let n = 9u32;
        let out = interrogate(&basis_input(1, PhotonMode::Mode1), &spec(n, PortVariant::QR)).unwrap();
        let survived = BasisLabel::logical(&[1], &[PhotonMode::Mode0]).unwrap();
        let c = (PI / (2.0 * f64::from(n))).cos();
        assert!((out.amplitude(&survived).re - c.powi(n as i32)).abs() < 1e-12);
    }

    #[test]
    fn ideal_gate_logic_table() {
        let sp = spec(1, PortVariant::Q);
        let flip = interrogate_ideal(&basis_input(1, PhotonMode::Mode0), &sp).unwrap();
        let expect = BasisLabel::logical(&[1], &[PhotonMode::Mode1]).unwrap();
        assert_eq!(flip.amplitude(&expect), Complex64::ONE);

        let boom = interrogate_ideal(&basis_input(1, PhotonMode::Mode1), &sp).unwrap();
        let lost = BasisLabel::new(
            vec![0],
            vec![PhotonSlot::Lost],
            vec![ScatterEvent { photon: 0, interrogation: 0, cycle: 0 }],
        )
        .unwrap();
        assert_eq!(boom.amplitude(&lost), -Complex64::ONE);

        let idle = interrogate_ideal(&basis_input(0, PhotonMode::Mode1), &sp).unwrap();
        let same = BasisLabel::logical(&[0], &[PhotonMode::Mode1]).unwrap();
        assert_eq!(idle.amplitude(&same), Complex64::ONE);
    }

    #[test]
    fn interrogation_is_linear() {
        let n = 6u32;
        let sp = spec(n, PortVariant::Q);
        let a = cplx(0.6, 0.0);
        let b = cplx(0.0, 0.8);
        let input = PureState::product(&[(a, b)], &[PhotonMode::Mode0]).unwrap();
        let sim = interrogate(&input, &sp).unwrap();
        let combo = PureState::from_terms(
            1,
            1,
            closed_form_state(0, PhotonMode::Mode0, &sp)
                .unwrap()
                .terms()
                .map(|(l, amp)| (l.clone(), amp * a))
                .chain(
                    closed_form_state(1, PhotonMode::Mode0, &sp)
                        .unwrap()
                        .terms()
                        .map(|(l, amp)| (l.clone(), amp * b)),
                )
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_states_close(&sim, &combo, 1e-12);
    }
}
