//! Sparse pure states over atom and photon registers.
//!
//! A state is a map from [`BasisLabel`] to amplitude. Only occupied terms are
//! stored; a `BTreeMap` keeps iteration order canonical so that downstream
//! output is deterministic. All operations are pure: they take `&self` and
//! return a fresh state.

use crate::label::{BasisLabel, PhotonMode, PhotonSlot, Register, ScatterEvent};
use crate::{tol, Amplitude, Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// 2x2 complex matrix for single-register gates, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub fn pauli_x() -> Self {
        Matrix2([[Complex64::ZERO, Complex64::ONE], [Complex64::ONE, Complex64::ZERO]])
    }

    pub fn pauli_y() -> Self {
        Matrix2([
            [Complex64::ZERO, Complex64::new(0.0, -1.0)],
            [Complex64::new(0.0, 1.0), Complex64::ZERO],
        ])
    }

    pub fn pauli_z() -> Self {
        Matrix2([[Complex64::ONE, Complex64::ZERO], [Complex64::ZERO, -Complex64::ONE]])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Matrix2([[h, h], [h, -h]])
    }

    /// Real rotation sending |0> to cos(theta)|0> + sin(theta)|1>.
    pub fn rotation(theta: f64) -> Self {
        let c = Complex64::new(theta.cos(), 0.0);
        let s = Complex64::new(theta.sin(), 0.0);
        Matrix2([[c, -s], [s, c]])
    }

    /// Largest deviation of `M M^dag` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.0;
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let mut dot = Complex64::ZERO;
                for k in 0..2 {
                    dot += m[i][k] * m[j][k].conj();
                }
                let expect = if i == j { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((dot - expect).norm());
            }
        }
        worst
    }
}

/// Outcome of projecting photons onto required modes.
#[derive(Debug, Clone)]
pub struct Projection {
    /// Squared norm of the matching component before renormalisation.
    pub probability: f64,
    /// Renormalised conditioned state; `None` when the probability fell below
    /// [`tol::EMPTY_PROJECTION`].
    pub state: Option<PureState>,
}

/// One branch of an atom measurement.
#[derive(Debug, Clone)]
pub struct AtomBranch {
    pub outcome: u8,
    pub probability: f64,
    pub state: PureState,
}

/// Sparse pure state with a fixed register signature.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_atoms: usize,
    num_photons: usize,
    terms: BTreeMap<BasisLabel, Amplitude>,
}

impl PureState {
    /// Product state: each atom in `a|0> + b|1>`, each photon in a definite
    /// logical mode. Every amplitude pair must be normalised.
    pub fn product(atom_amps: &[(Amplitude, Amplitude)], photons: &[PhotonMode]) -> Result<Self> {
        for &(a, b) in atom_amps {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::NonFiniteAmplitude("product state construction"));
            }
            let norm = a.norm_sqr() + b.norm_sqr();
            if (norm - 1.0).abs() > tol::AMPLITUDE_NORM {
                return Err(Error::NotNormalised(norm));
            }
        }
        let mut terms = BTreeMap::new();
        let n = atom_amps.len();
        for bits in 0..(1usize << n) {
            let mut amp = Complex64::ONE;
            let mut atoms = Vec::with_capacity(n);
            for (i, &(a, b)) in atom_amps.iter().enumerate() {
                let bit = ((bits >> i) & 1) as u8;
                amp *= if bit == 0 { a } else { b };
                atoms.push(bit);
            }
            if amp != Complex64::ZERO {
                terms.insert(BasisLabel::logical(&atoms, photons)?, amp);
            }
        }
        Ok(PureState { num_atoms: n, num_photons: photons.len(), terms })
    }

    /// State from explicit terms. Labels must share the given signature and
    /// amplitudes must be finite; the norm is taken as given.
    pub fn from_terms(
        num_atoms: usize,
        num_photons: usize,
        entries: impl IntoIterator<Item = (BasisLabel, Amplitude)>,
    ) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (label, amp) in entries {
            if label.num_atoms() != num_atoms || label.num_photons() != num_photons {
                return Err(Error::MalformedLabel);
            }
            if !amp.is_finite() {
                return Err(Error::NonFiniteAmplitude("from_terms"));
            }
            if amp != Complex64::ZERO {
                *terms.entry(label).or_insert(Complex64::ZERO) += amp;
            }
        }
        Ok(PureState { num_atoms, num_photons, terms })
    }

    pub fn num_atoms(&self) -> usize {
        self.num_atoms
    }

    pub fn num_photons(&self) -> usize {
        self.num_photons
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, &Amplitude)> {
        self.terms.iter()
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Amplitude {
        self.terms.get(label).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    /// Inner product `<self|other>`. Signatures must match.
    pub fn inner(&self, other: &PureState) -> Result<Amplitude> {
        self.check_same_signature(other)?;
        let mut dot = Complex64::ZERO;
        for (label, amp) in self.terms() {
            if let Some(b) = other.terms.get(label) {
                dot += amp.conj() * b;
            }
        }
        Ok(dot)
    }

    /// Copy scaled to unit norm.
    pub fn normalised(&self) -> Result<PureState> {
        let norm = self.norm_sqr().sqrt();
        if norm < tol::EMPTY_PROJECTION {
            return Err(Error::EmptyConditionedState(norm * norm));
        }
        Ok(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, factor: Amplitude) -> PureState {
        PureState {
            num_atoms: self.num_atoms,
            num_photons: self.num_photons,
            terms: self.terms.iter().map(|(l, a)| (l.clone(), a * factor)).collect(),
        }
    }

    /// Global-phase alignment: multiplies by the phase that makes the
    /// largest-magnitude amplitude real and positive. Ties break on label
    /// order, so the result is deterministic.
    pub fn phase_aligned(&self) -> PureState {
        let mut best: Option<(&BasisLabel, Amplitude)> = None;
        for (label, &amp) in self.terms() {
            match best {
                Some((_, a)) if amp.norm_sqr() <= a.norm_sqr() => {}
                _ => best = Some((label, amp)),
            }
        }
        match best {
            Some((_, amp)) if amp.norm() > 0.0 => self.scaled(amp.conj() / amp.norm()),
            _ => self.clone(),
        }
    }

    /// Apply a unitary 2x2 gate to one register. On a photon register the gate
    /// acts on the logical subspace; terms where that photon is lost pass
    /// through untouched.
    pub fn apply_single_qubit_gate(&self, target: Register, gate: &Matrix2) -> Result<PureState> {
        let defect = gate.unitarity_defect();
        if defect > tol::UNITARITY {
            return Err(Error::NotUnitary(defect));
        }
        self.check_register(target)?;
        let m = &gate.0;
        let mut terms: BTreeMap<BasisLabel, Amplitude> = BTreeMap::new();
        for (label, &amp) in self.terms() {
            let value = match target {
                Register::Atom(i) => label.atom(i),
                Register::Photon(i) => match label.photon(i).mode() {
                    Some(mode) => mode.bit(),
                    None => {
                        accumulate(&mut terms, label.clone(), amp)?;
                        continue;
                    }
                },
            };
            for out_bit in 0..2u8 {
                let coeff = m[out_bit as usize][value as usize];
                if coeff == Complex64::ZERO {
                    continue;
                }
                let out_label = match target {
                    Register::Atom(i) => label.with_atom(i, out_bit),
                    Register::Photon(i) => label.with_photon(
                        i,
                        if out_bit == 0 { PhotonMode::Mode0 } else { PhotonMode::Mode1 },
                    ),
                };
                accumulate(&mut terms, out_label, coeff * amp)?;
            }
        }
        Ok(PureState { num_atoms: self.num_atoms, num_photons: self.num_photons, terms })
    }

    /// Project photons onto required logical modes. The probability is the
    /// squared norm of the matching component; the conditioned state is
    /// renormalised, or absent when the probability is negligible.
    pub fn project_photons(&self, required: &[(usize, PhotonMode)]) -> Result<Projection> {
        for &(idx, _) in required {
            if idx >= self.num_photons {
                return Err(Error::RegisterOutOfRange(Register::Photon(idx)));
            }
        }
        let mut kept: BTreeMap<BasisLabel, Amplitude> = BTreeMap::new();
        let mut probability = 0.0;
        for (label, &amp) in self.terms() {
            let matches = required
                .iter()
                .all(|&(idx, mode)| label.photon(idx) == PhotonSlot::from(mode));
            if matches {
                probability += amp.norm_sqr();
                kept.insert(label.clone(), amp);
            }
        }
        if probability < tol::EMPTY_PROJECTION {
            return Ok(Projection { probability, state: None });
        }
        let scale = Complex64::new(1.0 / probability.sqrt(), 0.0);
        let state = PureState {
            num_atoms: self.num_atoms,
            num_photons: self.num_photons,
            terms: kept.into_iter().map(|(l, a)| (l, a * scale)).collect(),
        };
        Ok(Projection { probability, state: Some(state) })
    }

    /// Measure one atom in the computational basis. Returns the branches with
    /// non-negligible weight, each renormalised; probabilities sum to the
    /// squared norm of the input.
    pub fn measure_atom_branches(&self, atom: usize) -> Result<Vec<AtomBranch>> {
        if atom >= self.num_atoms {
            return Err(Error::RegisterOutOfRange(Register::Atom(atom)));
        }
        let mut branches = Vec::new();
        for outcome in 0..2u8 {
            let mut terms: BTreeMap<BasisLabel, Amplitude> = BTreeMap::new();
            let mut probability = 0.0;
            for (label, &amp) in self.terms() {
                if label.atom(atom) == outcome {
                    probability += amp.norm_sqr();
                    terms.insert(label.clone(), amp);
                }
            }
            if probability < tol::EMPTY_PROJECTION {
                continue;
            }
            let scale = Complex64::new(1.0 / probability.sqrt(), 0.0);
            branches.push(AtomBranch {
                outcome,
                probability,
                state: PureState {
                    num_atoms: self.num_atoms,
                    num_photons: self.num_photons,
                    terms: terms.into_iter().map(|(l, a)| (l, a * scale)).collect(),
                },
            });
        }
        Ok(branches)
    }

    /// Remove photon registers that are in one known logical mode across every
    /// term (the situation after projecting on them). Indices may come in any
    /// order; remaining photon indices and scatter tags shift down.
    pub fn remove_photons(&self, indices: &[usize]) -> Result<PureState> {
        let mut sorted: Vec<usize> = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != indices.len() {
            return Err(Error::DuplicateRegister);
        }
        let mut out = self.clone();
        for &idx in sorted.iter().rev() {
            if idx >= out.num_photons {
                return Err(Error::RegisterOutOfRange(Register::Photon(idx)));
            }
            let mut seen: Option<PhotonSlot> = None;
            for (label, _) in out.terms() {
                let slot = label.photon(idx);
                if slot.is_lost() || *seen.get_or_insert(slot) != slot {
                    return Err(Error::PhotonNotUniform(idx));
                }
            }
            out = PureState {
                num_atoms: out.num_atoms,
                num_photons: out.num_photons - 1,
                terms: out
                    .terms
                    .iter()
                    .map(|(l, &a)| (l.without_photon(idx), a))
                    .collect(),
            };
        }
        Ok(out)
    }

    /// Total weight in each sector of one photon: (mode0, mode1, lost).
    pub fn photon_sector_weights(&self, photon: usize) -> Result<(f64, f64, f64)> {
        if photon >= self.num_photons {
            return Err(Error::RegisterOutOfRange(Register::Photon(photon)));
        }
        let mut w = (0.0, 0.0, 0.0);
        for (label, amp) in self.terms() {
            let p = amp.norm_sqr();
            match label.photon(photon) {
                PhotonSlot::Mode0 => w.0 += p,
                PhotonSlot::Mode1 => w.1 += p,
                PhotonSlot::Lost => w.2 += p,
            }
        }
        Ok(w)
    }

    /// True when every term is free of lost photons and scatter tags.
    pub fn is_fully_logical(&self) -> bool {
        self.terms.keys().all(|l| l.is_logical())
    }

    pub(crate) fn check_register(&self, reg: Register) -> Result<()> {
        let ok = match reg {
            Register::Atom(i) => i < self.num_atoms,
            Register::Photon(i) => i < self.num_photons,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::RegisterOutOfRange(reg))
        }
    }

    pub(crate) fn check_same_signature(&self, other: &PureState) -> Result<()> {
        if self.num_atoms != other.num_atoms || self.num_photons != other.num_photons {
            return Err(Error::SignatureMismatch(
                format!("{} atoms, {} photons", self.num_atoms, self.num_photons),
                format!("{} atoms, {} photons", other.num_atoms, other.num_photons),
            ));
        }
        Ok(())
    }

    pub(crate) fn from_map(
        num_atoms: usize,
        num_photons: usize,
        terms: BTreeMap<BasisLabel, Amplitude>,
    ) -> PureState {
        PureState { num_atoms, num_photons, terms }
    }

    /// Apply a scatter event to every matching term: absorbing atom (bit 1)
    /// with the photon in mode1 decays to bit 0 and the photon is lost.
    pub(crate) fn absorb(&self, atom: usize, photon: usize, event: ScatterEvent) -> Result<PureState> {
        self.check_register(Register::Atom(atom))?;
        self.check_register(Register::Photon(photon))?;
        let mut terms: BTreeMap<BasisLabel, Amplitude> = BTreeMap::new();
        for (label, &amp) in self.terms() {
            let out = if label.atom(atom) == 1 && label.photon(photon) == PhotonSlot::Mode1 {
                label.with_atom(atom, 0).with_scatter(event)
            } else {
                label.clone()
            };
            accumulate(&mut terms, out, amp)?;
        }
        Ok(PureState { num_atoms: self.num_atoms, num_photons: self.num_photons, terms })
    }
}

// Terms that cancel exactly are dropped; near-cancellations are kept so the
// norm stays faithful.
fn accumulate(
    terms: &mut BTreeMap<BasisLabel, Amplitude>,
    label: BasisLabel,
    amp: Amplitude,
) -> Result<()> {
    if !amp.is_finite() {
        return Err(Error::NonFiniteAmplitude("amplitude accumulation"));
    }
    use std::collections::btree_map::Entry;
    match terms.entry(label) {
        Entry::Vacant(slot) => {
            if amp != Complex64::ZERO {
                slot.insert(amp);
            }
        }
        Entry::Occupied(mut slot) => {
            let total = *slot.get() + amp;
            if total == Complex64::ZERO {
                slot.remove();
            } else {
                slot.insert(total);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cplx;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell_pair() -> PureState {
        // (|00> + |11>)/sqrt(2) over two atoms, no photons.
        let h = cplx(FRAC_1_SQRT_2, 0.0);
        PureState::from_terms(
            2,
            0,
            [
                (BasisLabel::logical(&[0, 0], &[]).unwrap(), h),
                (BasisLabel::logical(&[1, 1], &[]).unwrap(), h),
            ],
        )
        .unwrap()
    }

    #[test]
    fn product_state_of_superposed_atoms() {
        let h = cplx(FRAC_1_SQRT_2, 0.0);
        let s = PureState::product(&[(h, h), (h, h)], &[PhotonMode::Mode0]).unwrap();
        assert_eq!(s.num_terms(), 4);
        assert!((s.norm_sqr() - 1.0).abs() < tol::NORM_CONSERVATION);
        let l = BasisLabel::logical(&[1, 0], &[PhotonMode::Mode0]).unwrap();
        assert!((s.amplitude(&l).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn product_state_rejects_unnormalised_pair() {
        let bad = PureState::product(&[(cplx(1.0, 0.0), cplx(0.5, 0.0))], &[]);
        assert!(matches!(bad, Err(Error::NotNormalised(_))));
    }

    #[test]
    fn single_basis_product_state_has_one_term() {
        let s = PureState::product(
            &[(Complex64::ONE, Complex64::ZERO)],
            &[PhotonMode::Mode1, PhotonMode::Mode0],
        )
        .unwrap();
        assert_eq!(s.num_terms(), 1);
        let l = BasisLabel::logical(&[0], &[PhotonMode::Mode1, PhotonMode::Mode0]).unwrap();
        assert_eq!(s.amplitude(&l), Complex64::ONE);
    }

    #[test]
    fn hadamard_on_atom_splits_and_recombines() {
        let s = PureState::product(&[(Complex64::ONE, Complex64::ZERO)], &[]).unwrap();
        let h = s.apply_single_qubit_gate(Register::Atom(0), &Matrix2::hadamard()).unwrap();
        assert_eq!(h.num_terms(), 2);
        let back = h.apply_single_qubit_gate(Register::Atom(0), &Matrix2::hadamard()).unwrap();
        let zero = BasisLabel::logical(&[0], &[]).unwrap();
        assert!((back.amplitude(&zero).re - 1.0).abs() < 1e-15);
        let one = BasisLabel::logical(&[1], &[]).unwrap();
        assert!(back.amplitude(&one).norm() < 1e-15);
    }

    #[test]
    fn photon_gate_skips_lost_terms() {
        let e = ScatterEvent { photon: 0, interrogation: 0, cycle: 0 };
        let h = cplx(FRAC_1_SQRT_2, 0.0);
        let lost = BasisLabel::new(vec![0], vec![PhotonSlot::Lost], vec![e]).unwrap();
        let live = BasisLabel::logical(&[0], &[PhotonMode::Mode0]).unwrap();
        let s = PureState::from_terms(1, 1, [(lost.clone(), h), (live, h)]).unwrap();
        let out = s.apply_single_qubit_gate(Register::Photon(0), &Matrix2::pauli_x()).unwrap();
        assert_eq!(out.amplitude(&lost), h);
        let flipped = BasisLabel::logical(&[0], &[PhotonMode::Mode1]).unwrap();
        assert_eq!(out.amplitude(&flipped), h);
        assert!((out.norm_sqr() - 1.0).abs() < tol::NORM_CONSERVATION);
    }

    #[test]
    fn non_unitary_gate_is_rejected() {
        let s = PureState::product(&[(Complex64::ONE, Complex64::ZERO)], &[]).unwrap();
        let m = Matrix2([[Complex64::ONE, Complex64::ONE], [Complex64::ZERO, Complex64::ONE]]);
        assert!(matches!(
            s.apply_single_qubit_gate(Register::Atom(0), &m),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn projection_splits_weight_between_modes() {
        let h = cplx(FRAC_1_SQRT_2, 0.0);
        let s = PureState::from_terms(
            0,
            1,
            [
                (BasisLabel::logical(&[], &[PhotonMode::Mode0]).unwrap(), h),
                (BasisLabel::logical(&[], &[PhotonMode::Mode1]).unwrap(), h),
            ],
        )
        .unwrap();
        let p0 = s.project_photons(&[(0, PhotonMode::Mode0)]).unwrap();
        assert!((p0.probability - 0.5).abs() < 1e-15);
        let conditioned = p0.state.unwrap();
        let l = BasisLabel::logical(&[], &[PhotonMode::Mode0]).unwrap();
        assert!((conditioned.amplitude(&l).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_on_empty_component_flags_empty() {
        let s = PureState::product(&[], &[PhotonMode::Mode0]).unwrap();
        let p = s.project_photons(&[(0, PhotonMode::Mode1)]).unwrap();
        assert_eq!(p.probability, 0.0);
        assert!(p.state.is_none());
    }

    #[test]
    fn measurement_branches_after_hadamard() {
        // (|0>_a|00>_p + |1>_a|11>_p)/sqrt(2), H on the atom, then measure it.
        let h = cplx(FRAC_1_SQRT_2, 0.0);
        let s = PureState::from_terms(
            1,
            2,
            [
                (BasisLabel::logical(&[0], &[PhotonMode::Mode0, PhotonMode::Mode0]).unwrap(), h),
                (BasisLabel::logical(&[1], &[PhotonMode::Mode1, PhotonMode::Mode1]).unwrap(), h),
            ],
        )
        .unwrap();
        let mixed = s.apply_single_qubit_gate(Register::Atom(0), &Matrix2::hadamard()).unwrap();
        let branches = mixed.measure_atom_branches(0).unwrap();
        assert_eq!(branches.len(), 2);
        for branch in &branches {
            assert!((branch.probability - 0.5).abs() < 1e-12);
            let zz = BasisLabel::logical(
                &[branch.outcome],
                &[PhotonMode::Mode0, PhotonMode::Mode0],
            )
            .unwrap();
            let oo = BasisLabel::logical(
                &[branch.outcome],
                &[PhotonMode::Mode1, PhotonMode::Mode1],
            )
            .unwrap();
            let expect_sign = if branch.outcome == 0 { 1.0 } else { -1.0 };
            assert!((branch.state.amplitude(&zz).re - FRAC_1_SQRT_2).abs() < 1e-12);
            assert!((branch.state.amplitude(&oo).re - expect_sign * FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn definite_atom_gives_single_branch() {
        let s = PureState::product(&[(Complex64::ONE, Complex64::ZERO)], &[]).unwrap();
        let branches = s.measure_atom_branches(0).unwrap();
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].outcome, 0);
        assert!((branches[0].probability - 1.0).abs() < 1e-15);
    }

    #[test]
    fn remove_photon_requires_uniform_mode() {
        let h = cplx(FRAC_1_SQRT_2, 0.0);
        let mixed = PureState::from_terms(
            0,
            1,
            [
                (BasisLabel::logical(&[], &[PhotonMode::Mode0]).unwrap(), h),
                (BasisLabel::logical(&[], &[PhotonMode::Mode1]).unwrap(), h),
            ],
        )
        .unwrap();
        assert!(matches!(mixed.remove_photons(&[0]), Err(Error::PhotonNotUniform(0))));

        let uniform = PureState::product(&[(h, h)], &[PhotonMode::Mode1]).unwrap();
        let dropped = uniform.remove_photons(&[0]).unwrap();
        assert_eq!(dropped.num_photons(), 0);
        assert_eq!(dropped.num_terms(), 2);
    }

    #[test]
    fn inner_product_distinguishes_scatter_tags() {
        let e0 = ScatterEvent { photon: 0, interrogation: 0, cycle: 0 };
        let e1 = ScatterEvent { photon: 0, interrogation: 0, cycle: 1 };
        let a = PureState::from_terms(
            0,
            1,
            [(BasisLabel::new(vec![], vec![PhotonSlot::Lost], vec![e0]).unwrap(), Complex64::ONE)],
        )
        .unwrap();
        let b = PureState::from_terms(
            0,
            1,
            [(BasisLabel::new(vec![], vec![PhotonSlot::Lost], vec![e1]).unwrap(), Complex64::ONE)],
        )
        .unwrap();
        assert_eq!(a.inner(&b).unwrap(), Complex64::ZERO);
        assert_eq!(a.inner(&a).unwrap(), Complex64::ONE);
    }

    #[test]
    fn phase_alignment_makes_leading_amplitude_real() {
        let s = bell_pair().scaled(cplx(0.0, 1.0));
        let aligned = s.phase_aligned();
        let zz = BasisLabel::logical(&[0, 0], &[]).unwrap();
        let amp = aligned.amplitude(&zz);
        assert!(amp.re > 0.0 && amp.im.abs() < 1e-15);
    }
}
