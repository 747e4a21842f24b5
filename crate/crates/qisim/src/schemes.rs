//! The entanglement schemes built from chained interrogations.
//!
//! Three schemes entangle atoms that never interact: a photon carries
//! correlations between them and is then detected, post-selecting the atom
//! register.
//!
//! * Bell: one photon meets two atoms, once through each port convention;
//!   detecting it in mode0 leaves the pair near (|00> + |11>)/sqrt(2).
//! * W: one photon meets every atom in turn through the same port; detecting
//!   it in mode1 heralds exactly one shared excitation.
//! * GHZ: a chain of photons, each linking neighbouring atoms; detecting all
//!   of them in mode0 leaves the all-ground and all-excited components.
//!
//! A fourth scheme inverts the roles: one atom interrogates several photons,
//! is rotated and measured, and the heralded correction leaves the photons
//! entangled with unit probability. Its output is a density matrix because
//! the two measurement outcomes are averaged after correction.
//!
//! Every scheme improves as the cycle count N grows; the conditioning
//! probability approaches a scheme-specific limit while the fidelity to the
//! ideal target approaches 1.

use crate::density::{reduced_density_matrix, DensityMatrix};
use crate::interrogation::{interrogate, interrogate_ideal, InterrogationSpec, PortVariant};
use crate::label::{BasisLabel, PhotonMode, Register};
use crate::measures::{
    fidelity_mixed, fidelity_pure, pairwise_tangles, tangle, three_tangle, MeasureResult,
};
use crate::state::{Matrix2, PureState};
use crate::{tol, Amplitude, Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Which entanglement scheme to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Bell,
    W,
    Ghz,
    Photon,
}

impl SchemeKind {
    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Bell => "bell",
            SchemeKind::W => "w",
            SchemeKind::Ghz => "ghz",
            SchemeKind::Photon => "photon",
        }
    }
}

/// Single-qubit Pauli correction applied after conditioning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    fn matrix(self) -> Matrix2 {
        match self {
            Pauli::X => Matrix2::pauli_x(),
            Pauli::Y => Matrix2::pauli_y(),
            Pauli::Z => Matrix2::pauli_z(),
        }
    }
}

/// One interrogation in a scheme plan. Steps run in order; the step position
/// stamps the scatter tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterrogationStep {
    pub atom: usize,
    pub photon: usize,
    pub variant: PortVariant,
}

/// Complete description of one scheme run.
#[derive(Debug, Clone)]
pub struct SchemeConfig {
    pub scheme: SchemeKind,
    pub cycles: u32,
    pub atoms: usize,
    pub photons: usize,
    /// Initial (ground, excited) amplitude pair per atom.
    pub atom_amplitudes: Vec<(Amplitude, Amplitude)>,
    pub plan: Vec<InterrogationStep>,
    /// Photon modes the run post-selects on; must cover every photon for the
    /// atom schemes so the register can be reduced to atoms alone.
    pub condition_on: Vec<(usize, PhotonMode)>,
    /// Pauli corrections applied to atoms after conditioning. The reported
    /// target is transformed the same way, so corrections redirect the scheme
    /// toward a different member of the same entanglement class.
    pub post_paulis: Vec<(usize, Pauli)>,
    /// Replace every interrogation by its many-cycle limit. The run then
    /// shows the asymptotic behaviour exactly, at any `cycles` value.
    pub ideal_gate: bool,
    /// Measured-atom scheme only: keep just the branch with this outcome
    /// instead of averaging both. Diagnostic; the averaged protocol is the
    /// deterministic one.
    pub branch_select: Option<u8>,
}

fn balanced(n: usize) -> Vec<(Amplitude, Amplitude)> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    vec![(h, h); n]
}

impl SchemeConfig {
    /// Two atoms, one photon, opposite port conventions, detection in mode0.
    pub fn bell(cycles: u32) -> Self {
        SchemeConfig {
            scheme: SchemeKind::Bell,
            cycles,
            atoms: 2,
            photons: 1,
            atom_amplitudes: balanced(2),
            plan: vec![
                InterrogationStep { atom: 0, photon: 0, variant: PortVariant::Q },
                InterrogationStep { atom: 1, photon: 0, variant: PortVariant::QR },
            ],
            condition_on: vec![(0, PhotonMode::Mode0)],
            post_paulis: Vec::new(),
            ideal_gate: false,
            branch_select: None,
        }
    }

    /// `atoms` atoms sharing one photon through the same port, detection in
    /// mode1.
    pub fn w(cycles: u32, atoms: usize) -> Self {
        SchemeConfig {
            scheme: SchemeKind::W,
            cycles,
            atoms,
            photons: 1,
            atom_amplitudes: balanced(atoms),
            plan: (0..atoms)
                .map(|atom| InterrogationStep { atom, photon: 0, variant: PortVariant::Q })
                .collect(),
            condition_on: vec![(0, PhotonMode::Mode1)],
            post_paulis: Vec::new(),
            ideal_gate: false,
            branch_select: None,
        }
    }

    /// `atoms` atoms in a chain, one photon per neighbouring pair, detection
    /// of every photon in mode0.
    pub fn ghz(cycles: u32, atoms: usize) -> Self {
        let mut plan = Vec::new();
        for link in 0..atoms.saturating_sub(1) {
            plan.push(InterrogationStep { atom: link, photon: link, variant: PortVariant::Q });
            plan.push(InterrogationStep { atom: link + 1, photon: link, variant: PortVariant::QR });
        }
        SchemeConfig {
            scheme: SchemeKind::Ghz,
            cycles,
            atoms,
            photons: atoms.saturating_sub(1),
            atom_amplitudes: balanced(atoms),
            plan,
            condition_on: (0..atoms.saturating_sub(1)).map(|p| (p, PhotonMode::Mode0)).collect(),
            post_paulis: Vec::new(),
            ideal_gate: false,
            branch_select: None,
        }
    }

    /// One atom interrogating `photons` photons, then rotated, measured and
    /// corrected away.
    pub fn photon(cycles: u32, photons: usize) -> Self {
        SchemeConfig {
            scheme: SchemeKind::Photon,
            cycles,
            atoms: 1,
            photons,
            atom_amplitudes: balanced(1),
            plan: (0..photons)
                .map(|photon| InterrogationStep { atom: 0, photon, variant: PortVariant::Q })
                .collect(),
            condition_on: Vec::new(),
            post_paulis: Vec::new(),
            ideal_gate: false,
            branch_select: None,
        }
    }

    pub fn with_amplitudes(mut self, amps: Vec<(Amplitude, Amplitude)>) -> Self {
        self.atom_amplitudes = amps;
        self
    }

    pub fn with_ideal_gate(mut self, ideal: bool) -> Self {
        self.ideal_gate = ideal;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.cycles == 0 {
            return Err(Error::ZeroCycles);
        }
        if self.atoms > 16 || self.photons > 16 {
            return Err(Error::InvalidConfig("register counts above 16 are not supported".into()));
        }
        if self.atom_amplitudes.len() != self.atoms {
            return Err(Error::InvalidConfig(format!(
                "expected {} amplitude pairs, got {}",
                self.atoms,
                self.atom_amplitudes.len()
            )));
        }
        let shape_ok = match self.scheme {
            SchemeKind::Bell => self.atoms == 2 && self.photons == 1,
            SchemeKind::W => self.atoms >= 2 && self.photons == 1,
            SchemeKind::Ghz => self.atoms >= 2 && self.photons == self.atoms - 1,
            SchemeKind::Photon => self.atoms == 1 && self.photons >= 1,
        };
        if !shape_ok {
            return Err(Error::InvalidConfig(format!(
                "scheme {} cannot run with {} atoms and {} photons",
                self.scheme.name(),
                self.atoms,
                self.photons
            )));
        }
        for step in &self.plan {
            if step.atom >= self.atoms || step.photon >= self.photons {
                return Err(Error::InvalidConfig("plan step addresses a missing register".into()));
            }
        }
        for &(photon, _) in &self.condition_on {
            if photon >= self.photons {
                return Err(Error::InvalidConfig("conditioning addresses a missing photon".into()));
            }
        }
        if self.scheme != SchemeKind::Photon {
            let mut covered: Vec<usize> = self.condition_on.iter().map(|&(p, _)| p).collect();
            covered.sort_unstable();
            covered.dedup();
            if covered.len() != self.photons {
                return Err(Error::InvalidConfig(
                    "atom schemes must condition on every photon exactly once".into(),
                ));
            }
            if self.condition_on.len() != self.photons {
                return Err(Error::DuplicateRegister);
            }
        } else if !self.condition_on.is_empty() || !self.post_paulis.is_empty() {
            return Err(Error::InvalidConfig(
                "the photon scheme has no conditioning or atom corrections".into(),
            ));
        }
        match self.branch_select {
            Some(outcome) if self.scheme != SchemeKind::Photon => {
                return Err(Error::InvalidConfig(format!(
                    "branch selection (outcome {outcome}) applies to the measured-atom scheme only"
                )));
            }
            Some(outcome) if outcome > 1 => {
                return Err(Error::InvalidConfig(format!("no measurement outcome {outcome}")));
            }
            _ => {}
        }
        for &(atom, _) in &self.post_paulis {
            if atom >= self.atoms {
                return Err(Error::InvalidConfig("correction addresses a missing atom".into()));
            }
        }
        Ok(())
    }

    /// The state the scheme approaches as the cycle count grows, with any
    /// Pauli corrections folded in.
    pub fn target_state(&self) -> Result<PureState> {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let base = match self.scheme {
            SchemeKind::Bell => {
                // Detection port picks the Bell pair: mode0 pairs the equal
                // patterns, mode1 the anti-correlated ones.
                let pair: [[u8; 2]; 2] = match self.condition_on.first() {
                    Some(&(_, PhotonMode::Mode1)) => [[0, 1], [1, 0]],
                    _ => [[0, 0], [1, 1]],
                };
                PureState::from_terms(
                    2,
                    0,
                    pair.iter()
                        .map(|bits| Ok((BasisLabel::logical(bits, &[])?, h)))
                        .collect::<Result<Vec<_>>>()?,
                )?
            }
            SchemeKind::W => {
                let scale = Complex64::new(1.0 / (self.atoms as f64).sqrt(), 0.0);
                let mut terms = Vec::new();
                for excited in 0..self.atoms {
                    let mut bits = vec![0u8; self.atoms];
                    bits[excited] = 1;
                    terms.push((BasisLabel::logical(&bits, &[])?, scale));
                }
                PureState::from_terms(self.atoms, 0, terms)?
            }
            SchemeKind::Ghz => PureState::from_terms(
                self.atoms,
                0,
                vec![
                    (BasisLabel::logical(&vec![0u8; self.atoms], &[])?, h),
                    (BasisLabel::logical(&vec![1u8; self.atoms], &[])?, h),
                ],
            )?,
            SchemeKind::Photon => PureState::from_terms(
                0,
                self.photons,
                vec![
                    (BasisLabel::logical(&[], &vec![PhotonMode::Mode0; self.photons])?, h),
                    (BasisLabel::logical(&[], &vec![PhotonMode::Mode1; self.photons])?, h),
                ],
            )?,
        };
        let mut target = base;
        for &(atom, pauli) in &self.post_paulis {
            target = target.apply_single_qubit_gate(Register::Atom(atom), &pauli.matrix())?;
        }
        Ok(target.phase_aligned())
    }
}

/// What a scheme run leaves behind.
#[derive(Debug, Clone)]
pub enum SchemeOutput {
    /// Conditioned and corrected register state, normalised and phase aligned.
    Pure(PureState),
    /// Outcome-averaged photon register of the measured-atom scheme.
    Mixed(DensityMatrix),
}

/// Result of one scheme run at a fixed cycle count.
#[derive(Debug, Clone)]
pub struct SchemeReport {
    pub cycles: u32,
    /// Probability that the run's detection pattern occurs.
    pub probability: f64,
    /// Fidelity of the output against [`SchemeConfig::target_state`].
    pub fidelity: f64,
    pub measures: MeasureResult,
    pub output: SchemeOutput,
}

/// Run one scheme at its configured cycle count.
pub fn run(config: &SchemeConfig) -> Result<SchemeReport> {
    config.validate()?;
    match config.scheme {
        SchemeKind::Photon => run_photon(config),
        _ => run_atom_scheme(config),
    }
}

fn evolve(config: &SchemeConfig) -> Result<PureState> {
    let modes = vec![PhotonMode::Mode0; config.photons];
    let mut state = PureState::product(&config.atom_amplitudes, &modes)?;
    for (index, step) in config.plan.iter().enumerate() {
        let spec =
            InterrogationSpec::new(step.atom, step.photon, config.cycles, step.variant, index as u32);
        state = if config.ideal_gate {
            interrogate_ideal(&state, &spec)?
        } else {
            interrogate(&state, &spec)?
        };
    }
    Ok(state)
}

fn run_atom_scheme(config: &SchemeConfig) -> Result<SchemeReport> {
    let evolved = evolve(config)?;
    let projection = evolved.project_photons(&config.condition_on)?;
    let conditioned = projection
        .state
        .ok_or(Error::EmptyConditionedState(projection.probability))?;
    let photons: Vec<usize> = (0..config.photons).collect();
    let mut register = conditioned.remove_photons(&photons)?;
    for &(atom, pauli) in &config.post_paulis {
        register = register.apply_single_qubit_gate(Register::Atom(atom), &pauli.matrix())?;
    }
    let register = register.phase_aligned();
    let fidelity = fidelity_pure(&register, &config.target_state()?)?;
    let measures = match (config.scheme, config.atoms) {
        (SchemeKind::Bell, _) => {
            MeasureResult::Tangle(tangle(&DensityMatrix::from_pure(&register)?)?)
        }
        (SchemeKind::W, 3) => MeasureResult::PairwiseTangles(pairwise_tangles(&register)?),
        (SchemeKind::Ghz, 3) => MeasureResult::ThreeTangle(three_tangle(&register)?),
        _ => MeasureResult::FidelityOnly,
    };
    Ok(SchemeReport {
        cycles: config.cycles,
        probability: projection.probability,
        fidelity,
        measures,
        output: SchemeOutput::Pure(register),
    })
}

fn run_photon(config: &SchemeConfig) -> Result<SchemeReport> {
    let evolved = evolve(config)?;
    let rotated = evolved.apply_single_qubit_gate(Register::Atom(0), &Matrix2::hadamard())?;
    let branches = rotated.measure_atom_branches(0)?;
    let photons: Vec<Register> = (0..config.photons).map(Register::Photon).collect();
    let mut probability = 1.0;
    let mut parts = Vec::with_capacity(branches.len());
    for branch in branches {
        if let Some(selected) = config.branch_select {
            if branch.outcome != selected {
                continue;
            }
            probability = branch.probability;
        }
        // The odd outcome flips the sign of the all-mode1 component; a phase
        // flip on the first photon undoes it.
        let corrected = if branch.outcome == 1 {
            branch.state.apply_single_qubit_gate(Register::Photon(0), &Matrix2::pauli_z())?
        } else {
            branch.state
        };
        let weight = if config.branch_select.is_some() { 1.0 } else { branch.probability };
        parts.push((weight, reduced_density_matrix(&corrected, &photons)?));
    }
    if parts.is_empty() {
        return Err(Error::EmptyConditionedState(0.0));
    }
    let mixed = DensityMatrix::mix(&parts)?;
    let fidelity = fidelity_mixed(&mixed, &config.target_state()?)?;
    Ok(SchemeReport {
        cycles: config.cycles,
        probability,
        fidelity,
        measures: MeasureResult::FidelityOnly,
        output: SchemeOutput::Mixed(mixed),
    })
}

/// Conditioned register state predicted by the closed-form interrogation
/// tables, bypassing the cycle loop entirely.
///
/// Returns the detection probability and, unless the conditioned component is
/// empty, the normalised register state with corrections applied. Available
/// for the canonical atom-scheme plans at any register size; the measured
/// -atom scheme and the ideal gate have no closed form here.
pub fn closed_form_scheme_state(config: &SchemeConfig) -> Result<(f64, Option<PureState>)> {
    config.validate()?;
    if config.ideal_gate {
        return Err(Error::UnsupportedClosedForm("the ideal gate replaces it"));
    }
    let theta = PI / (2.0 * f64::from(config.cycles));
    let (c, s) = (theta.cos(), theta.sin());
    let n = config.cycles as i32;

    let canonical = match config.scheme {
        SchemeKind::Bell => {
            let mode1 = matches!(config.condition_on.first(), Some(&(_, PhotonMode::Mode1)));
            let expected = if mode1 {
                vec![
                    InterrogationStep { atom: 0, photon: 0, variant: PortVariant::Q },
                    InterrogationStep { atom: 1, photon: 0, variant: PortVariant::Q },
                ]
            } else {
                SchemeConfig::bell(config.cycles).plan
            };
            config.plan == expected
        }
        SchemeKind::W => config.plan == SchemeConfig::w(config.cycles, config.atoms).plan,
        SchemeKind::Ghz => config.plan == SchemeConfig::ghz(config.cycles, config.atoms).plan,
        SchemeKind::Photon => {
            return Err(Error::UnsupportedClosedForm("the measured-atom scheme mixes outcomes"))
        }
    };
    if !canonical {
        return Err(Error::UnsupportedClosedForm("the plan is not the canonical one"));
    }

    // Per-pattern conditioned amplitude, before the atom preparation factors.
    let pattern_amp = |bits: &[u8]| -> f64 {
        let excited = bits.iter().filter(|&&b| b == 1).count() as i32;
        match config.scheme {
            SchemeKind::Bell if matches!(config.condition_on[0].1, PhotonMode::Mode0) => {
                match (bits[0], bits[1]) {
                    (0, 0) => 1.0,
                    (0, 1) => s * c.powi(n - 1),
                    (1, 0) => 0.0,
                    (1, 1) => c.powi(2 * n),
                    _ => unreachable!(),
                }
            }
            // The mode1 Bell detection obeys the shared-excitation formula,
            // so it merges with the W case below.
            SchemeKind::Bell | SchemeKind::W => {
                if excited == 0 {
                    0.0
                } else {
                    s.powi(excited - 1) * c.powi(excited * n - (excited - 1))
                }
            }
            SchemeKind::Ghz => bits
                .windows(2)
                .map(|link| match (link[0], link[1]) {
                    (0, 0) => 1.0,
                    (0, 1) => s * c.powi(n - 1),
                    (1, 0) => 0.0,
                    (1, 1) => c.powi(2 * n),
                    _ => unreachable!(),
                })
                .product(),
            SchemeKind::Photon => unreachable!(),
        }
    };

    let mut probability = 0.0;
    let mut terms: Vec<(BasisLabel, Amplitude)> = Vec::new();
    for pattern in 0..1usize << config.atoms {
        let bits: Vec<u8> = (0..config.atoms)
            .map(|i| ((pattern >> (config.atoms - 1 - i)) & 1) as u8)
            .collect();
        let mut amp = Complex64::new(pattern_amp(&bits), 0.0);
        for (i, &bit) in bits.iter().enumerate() {
            let (alpha, beta) = config.atom_amplitudes[i];
            amp *= if bit == 0 { alpha } else { beta };
        }
        if amp == Complex64::ZERO {
            continue;
        }
        probability += amp.norm_sqr();
        terms.push((BasisLabel::logical(&bits, &[])?, amp));
    }
    if probability < tol::EMPTY_PROJECTION {
        return Ok((probability, None));
    }
    let mut state = PureState::from_terms(config.atoms, 0, terms)?.normalised()?;
    for &(atom, pauli) in &config.post_paulis {
        state = state.apply_single_qubit_gate(Register::Atom(atom), &pauli.matrix())?;
    }
    Ok((probability, Some(state.phase_aligned())))
}

/// Build a scheme configuration for a requested detection port and local
/// Pauli corrections.
///
/// The Bell scheme supports both detection ports (mode1 switches to the
/// same-port plan whose natural output is the anti-correlated pair) and any
/// correction list. The other schemes run only in their native form.
pub fn variant_map(
    scheme: SchemeKind,
    cycles: u32,
    atoms: usize,
    photons: usize,
    condition: PhotonMode,
    local_ops: &[(usize, Pauli)],
) -> Result<SchemeConfig> {
    let config = match scheme {
        SchemeKind::Bell => {
            let mut config = SchemeConfig::bell(cycles);
            if condition == PhotonMode::Mode1 {
                config.plan = vec![
                    InterrogationStep { atom: 0, photon: 0, variant: PortVariant::Q },
                    InterrogationStep { atom: 1, photon: 0, variant: PortVariant::Q },
                ];
                config.condition_on = vec![(0, PhotonMode::Mode1)];
            }
            config.post_paulis = local_ops.to_vec();
            config
        }
        SchemeKind::W if condition == PhotonMode::Mode1 && local_ops.is_empty() => {
            SchemeConfig::w(cycles, atoms)
        }
        SchemeKind::Ghz if condition == PhotonMode::Mode0 && local_ops.is_empty() => {
            SchemeConfig::ghz(cycles, atoms)
        }
        SchemeKind::Photon if local_ops.is_empty() => SchemeConfig::photon(cycles, photons),
        _ => {
            return Err(Error::UnsupportedVariant(format!(
                "scheme {} runs only in its native detection pattern",
                scheme.name()
            )))
        }
    };
    config.validate()?;
    Ok(config)
}
